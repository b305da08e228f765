//! Homopolymer compression of the expanded collection.
//!
//! Every maximal run of `l > 1` equal bases becomes one run symbol (`A*`,
//! `C*`, ...) and `l` is appended to the run-length list in text order.
//! Runs of length one keep their plain symbol and add nothing to the list.
//! A rank-enabled marker bit vector over the compressed text maps run-symbol
//! positions to their list entry.

use std::ops::Range;

use crate::alphabet::{BaseSym, HpSym};
use crate::collection::SeqCollection;
use crate::error::{Error, Result};
use crate::succinct::RsBitVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlcCollection {
    text: Vec<HpSym>,
    runs: Vec<u32>,
    meta: RsBitVector,
    sentinels: RsBitVector,
    starts: Vec<usize>,
    // exp_prefix[p] = expanded position of the first base encoded by p
    exp_prefix: Vec<u64>,
}

impl RlcCollection {
    pub fn compress(c: &SeqCollection) -> Result<Self> {
        let (text, runs) = compress_seq(c.text())?;
        Self::from_parts(text, runs)
    }

    /// Assembles a collection from a compressed text and its run lengths,
    /// validating the run structure.
    pub fn from_parts(text: Vec<HpSym>, runs: Vec<u32>) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyCollection);
        }
        if !text.last().unwrap().is_sentinel() {
            return Err(Error::Corrupt("text does not end with a sentinel".into()));
        }
        if text.contains(&HpSym::SENTINEL_RUN) {
            return Err(Error::Corrupt("sentinel run symbol in text".into()));
        }
        for (p, w) in text.windows(2).enumerate() {
            if w[0].is_sentinel() && w[1].is_sentinel() {
                return Err(Error::Corrupt(format!(
                    "empty string at position {}",
                    p + 1
                )));
            }
            if !w[0].is_sentinel() && w[0].base() == w[1].base() {
                return Err(Error::Corrupt(format!("unmerged run at position {p}")));
            }
        }
        if text[0].is_sentinel() {
            return Err(Error::Corrupt("empty string at position 0".into()));
        }
        let meta = RsBitVector::from_bools(text.iter().map(|s| s.is_meta()));
        if meta.count_ones() != runs.len() {
            return Err(Error::Corrupt(format!(
                "{} run symbols but {} run lengths",
                meta.count_ones(),
                runs.len()
            )));
        }
        if let Some(bad) = runs.iter().find(|&&l| l < 2) {
            return Err(Error::Corrupt(format!("stored run length {bad} < 2")));
        }
        let sentinels = RsBitVector::from_bools(text.iter().map(|s| s.is_sentinel()));
        let mut starts = vec![0];
        starts.extend(
            text.iter()
                .enumerate()
                .filter(|(i, s)| s.is_sentinel() && i + 1 < text.len())
                .map(|(i, _)| i + 1),
        );
        let mut exp_prefix = Vec::with_capacity(text.len() + 1);
        let mut acc = 0u64;
        let mut next_run = runs.iter();
        for s in &text {
            exp_prefix.push(acc);
            acc += if s.is_meta() {
                *next_run.next().unwrap() as u64
            } else {
                1
            };
        }
        exp_prefix.push(acc);
        Ok(RlcCollection {
            text,
            runs,
            meta,
            sentinels,
            starts,
            exp_prefix,
        })
    }

    pub fn decompress(&self) -> Result<SeqCollection> {
        let mut out = Vec::with_capacity(self.expanded_len() as usize);
        let mut next_run = self.runs.iter();
        for s in &self.text {
            let len = if s.is_meta() {
                *next_run
                    .next()
                    .ok_or_else(|| Error::Corrupt("run lengths exhausted".into()))?
            } else {
                1
            };
            out.extend(std::iter::repeat_n(s.base(), len as usize));
        }
        if next_run.next().is_some() {
            return Err(Error::Corrupt("unused run lengths".into()));
        }
        SeqCollection::from_text(out)
    }

    /// Compressed length `n_h`.
    #[inline]
    pub fn len(&self) -> usize {
        self.text.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[HpSym] {
        &self.text
    }

    #[inline]
    pub fn symbol(&self, p: usize) -> HpSym {
        self.text[p]
    }

    /// Run lengths greater than one, in text order.
    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    pub fn meta(&self) -> &RsBitVector {
        &self.meta
    }

    /// Uncompressed length `n`.
    pub fn expanded_len(&self) -> u64 {
        *self.exp_prefix.last().unwrap()
    }

    pub fn num_strings(&self) -> usize {
        self.starts.len()
    }

    pub fn num_reads(&self) -> usize {
        self.starts.len() / 2
    }

    #[inline]
    pub fn string_start(&self, id: usize) -> usize {
        self.starts[id]
    }

    /// Compressed range of string `id`, sentinel excluded.
    pub fn string_range(&self, id: usize) -> Range<usize> {
        let end = self.starts.get(id + 1).copied().unwrap_or(self.text.len());
        self.starts[id]..end - 1
    }

    pub fn string(&self, id: usize) -> &[HpSym] {
        &self.text[self.string_range(id)]
    }

    /// Expanded length of string `id`, sentinel excluded.
    pub fn expanded_string_len(&self, id: usize) -> u64 {
        let r = self.string_range(id);
        self.exp_prefix[r.end] - self.exp_prefix[r.start]
    }

    #[inline]
    pub fn string_id_of(&self, p: usize) -> Result<usize> {
        self.check(p)?;
        Ok(self.sentinels.rank1(p))
    }

    /// Length of the run encoded at `p` (1 for plain symbols).
    #[inline]
    pub fn run_length_at(&self, p: usize) -> Result<u32> {
        self.check(p)?;
        Ok(self.run_length_unchecked(p))
    }

    #[inline]
    pub(crate) fn run_length_unchecked(&self, p: usize) -> u32 {
        if self.meta.get(p) {
            self.runs[self.meta.rank1(p)]
        } else {
            1
        }
    }

    /// Expanded position of the first base of the run encoded at `p`.
    pub fn expanded_coord(&self, p: usize) -> Result<u64> {
        self.check(p)?;
        Ok(self.exp_prefix[p])
    }

    /// Expanded span `[start, end)` of the compressed span `[p, p + len)`.
    pub fn expanded_span(&self, p: usize, len: usize) -> (u64, u64) {
        (self.exp_prefix[p], self.exp_prefix[p + len])
    }

    fn check(&self, p: usize) -> Result<()> {
        if p < self.text.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                pos: p,
                len: self.text.len(),
            })
        }
    }
}

/// Compresses one plain sequence into symbols and run lengths. Sentinels
/// are never merged.
pub fn compress_seq(seq: &[BaseSym]) -> Result<(Vec<HpSym>, Vec<u32>)> {
    let mut syms = Vec::with_capacity(seq.len());
    let mut runs = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let mut j = i + 1;
        if !seq[i].is_sentinel() {
            while j < seq.len() && seq[j] == seq[i] {
                j += 1;
            }
        }
        let len = j - i;
        syms.push(HpSym::for_run(seq[i], len));
        if len > 1 {
            runs.push(u32::try_from(len).map_err(|_| Error::RunTooLong(len))?);
        }
        i = j;
    }
    Ok((syms, runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::parse_read;

    fn collection(reads: &[&str]) -> SeqCollection {
        SeqCollection::from_ascii_reads(reads).unwrap()
    }

    fn labels(syms: &[HpSym]) -> Vec<&'static str> {
        syms.iter().map(|s| s.label()).collect()
    }

    #[test]
    fn compress_examples() {
        let r = RlcCollection::compress(&collection(&["AACGT"])).unwrap();
        assert_eq!(labels(r.string(0)), ["A*", "C", "G", "T"]);
        assert_eq!(labels(r.string(1)), ["A", "C", "G", "T*"]);
        assert_eq!(r.runs(), &[2, 2]);
        let r = RlcCollection::compress(&collection(&["AAAA"])).unwrap();
        assert_eq!(labels(r.text()), ["A*", "$", "T*", "$"]);
        assert_eq!(r.runs(), &[4, 4]);
    }

    #[test]
    fn sentinels_never_merge() {
        let (syms, runs) = compress_seq(&[BaseSym::SENTINEL, BaseSym::SENTINEL]).unwrap();
        assert_eq!(labels(&syms), ["$", "$"]);
        assert!(runs.is_empty());
    }

    #[test]
    fn decompress_examples() {
        let c = collection(&["AACGT"]);
        let r = RlcCollection::compress(&c).unwrap();
        assert_eq!(r.decompress().unwrap(), c);

        let r = RlcCollection::from_parts(
            vec![HpSym::A_RUN, HpSym::SENTINEL, HpSym::T_RUN, HpSym::SENTINEL],
            vec![3, 3],
        )
        .unwrap();
        let d = r.decompress().unwrap();
        assert_eq!(d.string(0), parse_read(0, b"AAA").unwrap());

        let r = RlcCollection::from_parts(
            vec![
                HpSym::A,
                HpSym::C,
                HpSym::G,
                HpSym::SENTINEL,
                HpSym::C,
                HpSym::G,
                HpSym::T,
                HpSym::SENTINEL,
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(
            r.decompress().unwrap().string(0),
            parse_read(0, b"ACG").unwrap()
        );
    }

    #[test]
    fn corrupt_parts() {
        let text = vec![HpSym::A_RUN, HpSym::SENTINEL, HpSym::T_RUN, HpSym::SENTINEL];
        assert!(matches!(
            RlcCollection::from_parts(text.clone(), vec![3]),
            Err(Error::Corrupt(_))
        ));
        assert!(RlcCollection::from_parts(text, vec![3, 1]).is_err());
        let unmerged = vec![HpSym::A, HpSym::A_RUN, HpSym::SENTINEL];
        assert!(RlcCollection::from_parts(unmerged, vec![2]).is_err());
        let no_sentinel = vec![HpSym::A];
        assert!(RlcCollection::from_parts(no_sentinel, vec![]).is_err());
        // mates are only validated when expanding
        let not_mates = vec![HpSym::A, HpSym::SENTINEL, HpSym::A, HpSym::SENTINEL];
        let r = RlcCollection::from_parts(not_mates, vec![]).unwrap();
        assert!(r.decompress().is_err());
    }

    #[test]
    fn run_lengths() {
        let r = RlcCollection::compress(&collection(&["AACGT", "AAAA"])).unwrap();
        assert_eq!(r.run_length_at(0).unwrap(), 2);
        assert_eq!(r.run_length_at(1).unwrap(), 1);
        let aaaa = r.string_start(2);
        assert_eq!(r.run_length_at(aaaa).unwrap(), 4);
        assert!(r.run_length_at(r.len()).is_err());
        let total: u64 = (0..r.len())
            .map(|p| r.run_length_at(p).unwrap() as u64)
            .sum();
        assert_eq!(total, r.expanded_len());
        assert_eq!(r.expanded_len(), 2 * (6 + 5));
    }

    #[test]
    fn expanded_coords() {
        let r = RlcCollection::compress(&collection(&["AACGT"])).unwrap();
        assert_eq!(r.expanded_coord(0).unwrap(), 0);
        assert_eq!(r.expanded_coord(1).unwrap(), 2);
        assert_eq!(r.expanded_coord(4).unwrap(), 5);
        assert_eq!(r.expanded_string_len(0), 5);
        assert!(r.expanded_coord(99).is_err());
    }

    #[test]
    fn string_bookkeeping() {
        let r = RlcCollection::compress(&collection(&["AACGT", "G"])).unwrap();
        assert_eq!(r.num_strings(), 4);
        assert_eq!(r.num_reads(), 2);
        assert_eq!(r.string_id_of(4).unwrap(), 0);
        assert_eq!(r.string_id_of(5).unwrap(), 1);
        assert_eq!(r.string_range(2), 10..11);
    }
}
