//! Binary index file.
//!
//! All integers are little-endian.
//!
//! | field      | encoding                                              |
//! |------------|-------------------------------------------------------|
//! | magic      | 8 bytes, `RLMEMIDX`                                   |
//! | version    | u32                                                   |
//! | n_h        | u64, number of compressed symbols                     |
//! | sigma      | u32, alphabet size (10)                               |
//! | C          | sigma + 1 u64 values, `C[c]` for `c = 1..=sigma + 1`  |
//! | BWT        | `ceil(n_h / 2)` bytes, two 4-bit codes per byte, low nibble first, zero padded |
//! | SA         | n_h u32 values                                        |
//! | H          | u64 count, then one u32 per run length                |
//! | run marks  | `ceil(n_h / 64)` u64 words, bit `i` of word `w` marks position `64 w + i` |
//!
//! The compressed text is not stored: `text[SA[j]]` is the bucket symbol of
//! row `j`, which the loader recovers from `C`.

use std::io::{Read, Write};

use super::{FmIndex, MemIndex, SIGMA};
use crate::alphabet::HpSym;
use crate::error::{Error, Result};
use crate::rle::RlcCollection;

pub const MAGIC: &[u8; 8] = b"RLMEMIDX";
pub const FORMAT_VERSION: u32 = 1;

pub fn write_index<W: Write>(index: &MemIndex, mut w: W) -> Result<()> {
    let fm = index.fm();
    let rlc = index.rlc();
    let n = fm.len();
    w.write_all(MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(n as u64).to_le_bytes())?;
    w.write_all(&(SIGMA as u32).to_le_bytes())?;
    for &c in fm.counts() {
        w.write_all(&(c as u64).to_le_bytes())?;
    }
    let bwt = fm.bwt_symbols();
    let packed: Vec<u8> = bwt
        .chunks(2)
        .map(|pair| pair[0].code() | pair.get(1).map_or(0, |s| s.code() << 4))
        .collect();
    w.write_all(&packed)?;
    let mut buf = Vec::with_capacity(4 * n);
    for &p in fm.suffix_array() {
        buf.extend_from_slice(&p.to_le_bytes());
    }
    w.write_all(&buf)?;
    w.write_all(&(rlc.runs().len() as u64).to_le_bytes())?;
    buf.clear();
    for &l in rlc.runs() {
        buf.extend_from_slice(&l.to_le_bytes());
    }
    w.write_all(&buf)?;
    buf.clear();
    for &word in rlc.meta().words() {
        buf.extend_from_slice(&word.to_le_bytes());
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

struct Reader<R> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn bytes(&mut self, n: usize) -> Result<Vec<u8>> {
        let mut buf = vec![0u8; n];
        self.inner
            .read_exact(&mut buf)
            .map_err(|e| match e.kind() {
                std::io::ErrorKind::UnexpectedEof => Error::Format("truncated file".into()),
                _ => Error::Io(e),
            })?;
        Ok(buf)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().unwrap()))
    }

    fn len(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format("length overflow".into()))
    }
}

pub fn read_index<R: Read>(r: R) -> Result<MemIndex> {
    let mut r = Reader { inner: r };
    if r.bytes(8)? != MAGIC {
        return Err(Error::Format("not an index file (bad magic)".into()));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format version {version}, expected {FORMAT_VERSION}"
        )));
    }
    let n = r.len()?;
    let sigma = r.u32()?;
    if sigma as usize != SIGMA {
        return Err(Error::Format(format!(
            "alphabet size {sigma}, expected {SIGMA}"
        )));
    }
    if n == 0 || n > u32::MAX as usize {
        return Err(Error::Format(format!("invalid length {n}")));
    }
    let mut counts = [0usize; SIGMA + 2];
    for c in counts.iter_mut().skip(1) {
        *c = r.len()?;
    }
    if counts[1] != 0 || counts.windows(2).skip(1).any(|w| w[0] > w[1]) || counts[SIGMA + 1] != n {
        return Err(Error::Format("inconsistent C array".into()));
    }

    let packed = r.bytes(n.div_ceil(2))?;
    let bwt = (0..n)
        .map(|j| {
            let code = packed[j / 2] >> (4 * (j % 2)) & 0xf;
            HpSym::new(code).map_err(|_| Error::Format(format!("bad BWT code {code} at {j}")))
        })
        .collect::<Result<Vec<_>>>()?;

    let raw = r.bytes(4 * n)?;
    let sa: Vec<u32> = raw
        .chunks_exact(4)
        .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
        .collect();

    let runs_len = r.len()?;
    if runs_len > n {
        return Err(Error::Format("more run lengths than symbols".into()));
    }
    let raw = r.bytes(4 * runs_len)?;
    let runs: Vec<u32> = raw
        .chunks_exact(4)
        .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
        .collect();

    let raw = r.bytes(8 * n.div_ceil(64))?;
    let meta_words: Vec<u64> = raw
        .chunks_exact(8)
        .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
        .collect();
    let mut rest = Vec::new();
    r.inner.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::Format(format!("{} trailing bytes", rest.len())));
    }

    // rebuild the text from SA and the bucket boundaries
    let mut text: Vec<Option<HpSym>> = vec![None; n];
    let mut code = 1usize;
    for (row, &p) in sa.iter().enumerate() {
        while counts[code + 1] <= row {
            code += 1;
        }
        let slot = text
            .get_mut(p as usize)
            .ok_or_else(|| Error::Format(format!("SA entry {p} out of range")))?;
        if slot.replace(HpSym::new(code as u8).unwrap()).is_some() {
            return Err(Error::Format(format!("SA entry {p} repeated")));
        }
    }
    let text: Vec<HpSym> = text.into_iter().map(Option::unwrap).collect();
    let rlc = RlcCollection::from_parts(text, runs).map_err(|e| Error::Format(e.to_string()))?;
    if rlc.meta().words() != meta_words.as_slice() {
        return Err(Error::Format("run marks disagree with the text".into()));
    }
    let fm = FmIndex::from_parts(&bwt, sa);
    if fm.counts() != &counts[1..] {
        return Err(Error::Format("C array disagrees with the BWT".into()));
    }
    for j in 0..n {
        let p = fm.sa(j);
        let expected = if p == rlc.string_start(rlc.string_id_of(p)?) {
            HpSym::SENTINEL
        } else {
            rlc.symbol(p - 1)
        };
        if bwt[j] != expected {
            return Err(Error::Format(format!("BWT disagrees with SA at row {j}")));
        }
    }
    Ok(MemIndex::from_parts(rlc, fm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::SeqCollection;

    fn index() -> MemIndex {
        let c = SeqCollection::from_ascii_reads(["AACGTTTG", "CCCATG", "GATTACA"]).unwrap();
        MemIndex::build(&c).unwrap()
    }

    fn bytes(index: &MemIndex) -> Vec<u8> {
        let mut out = Vec::new();
        index.save(&mut out).unwrap();
        out
    }

    #[test]
    fn round_trip() {
        let idx = index();
        let raw = bytes(&idx);
        let back = MemIndex::load(&raw[..]).unwrap();
        assert_eq!(back, idx);
        assert_eq!(bytes(&back), raw);
    }

    #[test]
    fn layout_header() {
        let idx = index();
        let raw = bytes(&idx);
        let n = idx.fm().len();
        assert_eq!(&raw[..8], MAGIC);
        assert_eq!(
            u32::from_le_bytes(raw[8..12].try_into().unwrap()),
            FORMAT_VERSION
        );
        assert_eq!(
            u64::from_le_bytes(raw[12..20].try_into().unwrap()),
            n as u64
        );
        let runs = idx.rlc().runs().len();
        let expected =
            8 + 4 + 8 + 4 + 8 * 11 + n.div_ceil(2) + 4 * n + 8 + 4 * runs + 8 * n.div_ceil(64);
        assert_eq!(raw.len(), expected);
    }

    #[test]
    fn rejects_bad_magic() {
        let mut raw = bytes(&index());
        raw[0] = b'X';
        assert!(matches!(MemIndex::load(&raw[..]), Err(Error::Format(_))));
    }

    #[test]
    fn rejects_version_mismatch() {
        let mut raw = bytes(&index());
        raw[8] = 9;
        let err = MemIndex::load(&raw[..]).unwrap_err();
        assert!(err.to_string().contains("version"), "{err}");
    }

    #[test]
    fn rejects_truncation_and_trailing_bytes() {
        let raw = bytes(&index());
        assert!(MemIndex::load(&raw[..raw.len() - 1]).is_err());
        let mut longer = raw.clone();
        longer.push(0);
        assert!(MemIndex::load(&longer[..]).is_err());
    }

    #[test]
    fn rejects_corrupted_bwt() {
        let raw = bytes(&index());
        let bwt_at = 8 + 4 + 8 + 4 + 8 * 11;
        let mut bad = raw.clone();
        bad[bwt_at] ^= 0x03;
        assert!(MemIndex::load(&bad[..]).is_err());
    }
}
