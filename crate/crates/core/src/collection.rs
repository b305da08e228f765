//! The expanded read collection: every read followed by its reverse
//! complement, each string terminated by a sentinel.
//!
//! String `2i` is read `i` and string `2i + 1` its reverse complement, so the
//! mate of a string is `id ^ 1`.

use std::io::BufRead;
use std::ops::Range;

use crate::alphabet::BaseSym;
use crate::error::{Error, Result};
use crate::succinct::RsBitVector;

/// Id of the reverse-complement partner of string `id`.
#[inline]
pub fn mate_of(id: usize) -> usize {
    id ^ 1
}

pub fn reverse_complement(seq: &[BaseSym]) -> Vec<BaseSym> {
    seq.iter().rev().map(|s| s.complement()).collect()
}

/// Converts ASCII bases of FASTA record `record` into symbols.
pub fn parse_read(record: usize, bytes: &[u8]) -> Result<Vec<BaseSym>> {
    bytes
        .iter()
        .enumerate()
        .map(|(offset, &b)| {
            BaseSym::from_ascii(b).ok_or(Error::InvalidBase {
                record,
                offset,
                byte: b as char,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqCollection {
    text: Vec<BaseSym>,
    sentinels: RsBitVector,
    starts: Vec<usize>,
}

impl SeqCollection {
    pub fn from_reads<I, S>(reads: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[BaseSym]>,
    {
        let mut text = Vec::new();
        let mut starts = Vec::new();
        for (i, read) in reads.into_iter().enumerate() {
            let read = read.as_ref();
            if read.is_empty() {
                return Err(Error::EmptyRead(i));
            }
            if read.iter().any(|s| s.is_sentinel()) {
                return Err(Error::InvalidSymbol(BaseSym::SENTINEL.code()));
            }
            starts.push(text.len());
            text.extend_from_slice(read);
            text.push(BaseSym::SENTINEL);
            starts.push(text.len());
            text.extend(reverse_complement(read));
            text.push(BaseSym::SENTINEL);
        }
        if starts.is_empty() {
            return Err(Error::EmptyCollection);
        }
        Ok(Self::from_text_unchecked(text, starts))
    }

    /// Parses ASCII reads, naming the offending record and offset on error.
    pub fn from_ascii_reads<I, S>(reads: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let parsed = reads
            .into_iter()
            .enumerate()
            .map(|(i, r)| parse_read(i, r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_reads(parsed)
    }

    /// Rebuilds a collection from a concatenated, sentinel-terminated text.
    /// The mate structure is validated.
    pub fn from_text(text: Vec<BaseSym>) -> Result<Self> {
        let mut starts = vec![0];
        for (i, s) in text.iter().enumerate() {
            if s.is_sentinel() && i + 1 < text.len() {
                starts.push(i + 1);
            }
        }
        if text.is_empty() {
            return Err(Error::EmptyCollection);
        }
        if !text.last().unwrap().is_sentinel() || starts.len() % 2 != 0 {
            return Err(Error::Corrupt(
                "text is not a list of read/mate pairs".into(),
            ));
        }
        let c = Self::from_text_unchecked(text, starts);
        for id in (0..c.num_strings()).step_by(2) {
            if c.string(id).is_empty() || reverse_complement(c.string(id)) != c.string(id + 1) {
                return Err(Error::Corrupt(format!(
                    "string {} is not the mate of {id}",
                    id + 1
                )));
            }
        }
        Ok(c)
    }

    fn from_text_unchecked(text: Vec<BaseSym>, starts: Vec<usize>) -> Self {
        let sentinels = RsBitVector::from_bools(text.iter().map(|s| s.is_sentinel()));
        SeqCollection {
            text,
            sentinels,
            starts,
        }
    }

    /// Total length `n`, sentinels included.
    #[inline]
    pub fn len(&self) -> usize {
        self.text.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[BaseSym] {
        &self.text
    }

    /// Read count `k`; the collection holds `2k` strings.
    pub fn num_reads(&self) -> usize {
        self.starts.len() / 2
    }

    pub fn num_strings(&self) -> usize {
        self.starts.len()
    }

    /// Text range of string `id`, sentinel excluded.
    pub fn string_range(&self, id: usize) -> Range<usize> {
        let end = self.starts.get(id + 1).copied().unwrap_or(self.text.len());
        self.starts[id]..end - 1
    }

    pub fn string(&self, id: usize) -> &[BaseSym] {
        &self.text[self.string_range(id)]
    }

    /// Id of the string holding text position `pos`; a sentinel belongs to
    /// the string it terminates.
    pub fn string_id_of(&self, pos: usize) -> Result<usize> {
        if pos >= self.text.len() {
            return Err(Error::OutOfRange {
                pos,
                len: self.text.len(),
            });
        }
        Ok(self.sentinels.rank1(pos))
    }
}

/// One FASTA entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastaRecord {
    pub name: String,
    pub seq: Vec<u8>,
}

/// Reads multi-line FASTA. Blank lines are skipped; data before the first
/// header is rejected.
pub fn read_fasta<R: BufRead>(reader: R) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end();
        if let Some(header) = line.strip_prefix('>') {
            records.push(FastaRecord {
                name: header.split_whitespace().next().unwrap_or("").to_string(),
                seq: Vec::new(),
            });
        } else if !line.is_empty() {
            match records.last_mut() {
                Some(rec) => rec.seq.extend_from_slice(line.as_bytes()),
                None => {
                    return Err(Error::Fasta(format!(
                        "sequence data before first header at line {}",
                        lineno + 1
                    )))
                }
            }
        }
    }
    Ok(records)
}
