//! Suffix array, BWT and backward search over the compressed collection.
//!
//! Suffixes are ordered with one sentinel per string: a sentinel is smaller
//! than every other symbol and two sentinels compare by string id. The BWT
//! symbol preceding a string's first suffix is that string's own sentinel.
//! This reproduces the BWT of a string collection as produced by BCR-style
//! construction, built here by plain comparison sorting.

mod serialize;

use std::ops::Range;

use crate::alphabet::{HpSym, SIGMA_HP};
use crate::collection::SeqCollection;
use crate::error::{Error, Result};
use crate::rle::RlcCollection;
use crate::succinct::WaveletTree;

pub use serialize::{read_index, write_index, FORMAT_VERSION, MAGIC};

const SIGMA: usize = SIGMA_HP as usize;

/// Half-open interval of suffix-array rows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SaRange {
    pub start: usize,
    pub end: usize,
}

impl SaRange {
    #[inline]
    pub fn new(start: usize, end: usize) -> Self {
        SaRange { start, end }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    #[inline]
    pub fn rows(&self) -> Range<usize> {
        self.start..self.end.max(self.start)
    }

    /// True if `other` lies within `self`.
    pub fn contains(&self, other: &SaRange) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmIndex {
    bwt: WaveletTree,
    // counts[c] = number of text symbols with code < c, for c in 1..=SIGMA + 1
    counts: [usize; SIGMA + 2],
    sa: Vec<u32>,
}

impl FmIndex {
    pub fn build(r: &RlcCollection) -> Result<Self> {
        let text = r.text();
        if text.is_empty() {
            return Err(Error::EmptyCollection);
        }
        if text.len() > u32::MAX as usize {
            return Err(Error::InvalidParam(format!(
                "collection of {} symbols exceeds 32-bit suffix array",
                text.len()
            )));
        }
        let mut owner = Vec::with_capacity(text.len());
        let mut end = Vec::with_capacity(text.len());
        for id in 0..r.num_strings() {
            let range = r.string_range(id);
            for _ in range.start..=range.end {
                owner.push(id as u32);
                end.push(range.end as u32);
            }
        }
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_unstable_by(|&a, &b| {
            let (a, b) = (a as usize, b as usize);
            text[a..end[a] as usize]
                .cmp(&text[b..end[b] as usize])
                .then(owner[a].cmp(&owner[b]))
        });
        let bwt: Vec<HpSym> = sa
            .iter()
            .map(|&p| {
                let p = p as usize;
                if p == r.string_start(owner[p] as usize) {
                    HpSym::SENTINEL
                } else {
                    text[p - 1]
                }
            })
            .collect();
        Ok(Self::from_parts(&bwt, sa))
    }

    pub(crate) fn from_parts(bwt: &[HpSym], sa: Vec<u32>) -> Self {
        let mut freq = [0usize; SIGMA + 2];
        for s in bwt {
            freq[s.code() as usize] += 1;
        }
        let mut counts = [0usize; SIGMA + 2];
        for c in 2..=SIGMA + 1 {
            counts[c] = counts[c - 1] + freq[c - 1];
        }
        let codes: Vec<u32> = bwt.iter().map(|s| s.code() as u32).collect();
        FmIndex {
            bwt: WaveletTree::with_max_symbol(&codes, SIGMA as u32),
            counts,
            sa,
        }
    }

    /// Number of rows `n_h`.
    #[inline]
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    #[inline]
    pub fn full_range(&self) -> SaRange {
        SaRange::new(0, self.len())
    }

    #[inline]
    pub fn sa(&self, row: usize) -> usize {
        self.sa[row] as usize
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    pub fn wavelet(&self) -> &WaveletTree {
        &self.bwt
    }

    #[inline]
    pub fn bwt_symbol(&self, row: usize) -> HpSym {
        let code = self.bwt.access(row).expect("row in range");
        HpSym::new(code as u8).expect("valid code in BWT")
    }

    pub fn bwt_symbols(&self) -> Vec<HpSym> {
        (0..self.len()).map(|j| self.bwt_symbol(j)).collect()
    }

    /// Number of text symbols smaller than `c`.
    #[inline]
    pub fn count_less(&self, c: HpSym) -> usize {
        self.counts[c.code() as usize]
    }

    /// The cumulative count array, indexed by code `1..=SIGMA + 1`.
    pub fn counts(&self) -> &[usize] {
        &self.counts[1..]
    }

    /// Rows of suffixes starting with `c`.
    #[inline]
    pub fn bucket(&self, c: HpSym) -> SaRange {
        let k = c.code() as usize;
        SaRange::new(self.counts[k], self.counts[k + 1])
    }

    /// First symbol of the suffix at `row`.
    pub fn row_symbol(&self, row: usize) -> HpSym {
        debug_assert!(row < self.len());
        let k = self.counts[1..=SIGMA + 1].partition_point(|&c| c <= row);
        HpSym::new(k as u8).expect("row inside some bucket")
    }

    /// Occurrences of `c` in `bwt[0, i)`.
    #[inline]
    pub fn rank(&self, c: HpSym, i: usize) -> usize {
        self.bwt.rank(c.code() as u32, i)
    }

    /// Occurrences of symbols `lo..=hi` in `bwt[range]`.
    #[inline]
    pub fn range_count(&self, range: SaRange, lo: u8, hi: u8) -> usize {
        self.bwt.range_count(range.rows(), lo as u32, hi as u32)
    }

    pub fn lf(&self, j: usize) -> Result<usize> {
        self.check_row(j)?;
        let c = self.bwt_symbol(j);
        Ok(self.count_less(c) + self.rank(c, j))
    }

    pub fn lf_inverse(&self, j: usize) -> Result<usize> {
        self.check_row(j)?;
        let c = self.row_symbol(j);
        let k = j - self.count_less(c);
        Ok(self
            .bwt
            .select(c.code() as u32, k)
            .expect("bucket size equals symbol frequency"))
    }

    /// Range of `cX` given the range of `X`; empty when `cX` does not occur.
    #[inline]
    pub fn backward_step(&self, range: SaRange, c: HpSym) -> SaRange {
        if range.is_empty() {
            return SaRange::default();
        }
        let base = self.count_less(c);
        SaRange::new(
            base + self.rank(c, range.start),
            base + self.rank(c, range.end),
        )
    }

    pub fn backward_search(&self, pattern: &[HpSym]) -> SaRange {
        pattern
            .iter()
            .rev()
            .fold(self.full_range(), |r, &c| self.backward_step(r, c))
    }

    fn check_row(&self, j: usize) -> Result<()> {
        if j < self.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                pos: j,
                len: self.len(),
            })
        }
    }
}

/// A compressed collection together with its FM-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemIndex {
    rlc: RlcCollection,
    fm: FmIndex,
}

impl MemIndex {
    pub fn build(c: &SeqCollection) -> Result<Self> {
        Self::from_rlc(RlcCollection::compress(c)?)
    }

    pub fn from_rlc(rlc: RlcCollection) -> Result<Self> {
        let fm = FmIndex::build(&rlc)?;
        Ok(MemIndex { rlc, fm })
    }

    pub(crate) fn from_parts(rlc: RlcCollection, fm: FmIndex) -> Self {
        MemIndex { rlc, fm }
    }

    #[inline]
    pub fn rlc(&self) -> &RlcCollection {
        &self.rlc
    }

    #[inline]
    pub fn fm(&self) -> &FmIndex {
        &self.fm
    }

    pub fn save<W: std::io::Write>(&self, w: W) -> Result<()> {
        write_index(self, w)
    }

    pub fn load<R: std::io::Read>(r: R) -> Result<Self> {
        read_index(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::SeqCollection;

    fn hp(labels: &str) -> Vec<HpSym> {
        labels
            .split_whitespace()
            .map(|l| HpSym::all().find(|s| s.label() == l).unwrap())
            .collect()
    }

    fn rlc_from(labels: &str) -> RlcCollection {
        RlcCollection::from_parts(hp(labels), vec![]).unwrap()
    }

    // Naive sort of explicit suffix keys; the sentinel becomes (1, string id).
    fn naive_sa(r: &RlcCollection) -> Vec<u32> {
        let mut keys: Vec<(Vec<(u8, usize)>, u32)> = Vec::new();
        for id in 0..r.num_strings() {
            let range = r.string_range(id);
            for p in range.start..=range.end {
                let mut key: Vec<(u8, usize)> = r.text()[p..range.end]
                    .iter()
                    .map(|s| (s.code(), 0))
                    .collect();
                key.push((1, id));
                keys.push((key, p as u32));
            }
        }
        keys.sort();
        keys.into_iter().map(|(_, p)| p).collect()
    }

    #[test]
    fn sentinel_bucket_ordered_by_string_id() {
        let r = rlc_from("A $ C $");
        let fm = FmIndex::build(&r).unwrap();
        // rows: $0, $1, A$0, C$1
        assert_eq!(fm.suffix_array(), &[1, 3, 0, 2]);
        assert_eq!(naive_sa(&r), fm.suffix_array());
        let bwt: Vec<_> = fm.bwt_symbols().iter().map(|s| s.label()).collect();
        assert_eq!(bwt, ["A", "C", "$", "$"]);
        assert_eq!(fm.bucket(HpSym::SENTINEL), SaRange::new(0, 2));
    }

    #[test]
    fn single_string_bwt() {
        // suffixes of ACA$: $ (3), A$ (2), ACA$ (0), CA$ (1)
        let r = rlc_from("A C A $");
        let fm = FmIndex::build(&r).unwrap();
        assert_eq!(fm.suffix_array(), &[3, 2, 0, 1]);
        let bwt: Vec<_> = fm.bwt_symbols().iter().map(|s| s.label()).collect();
        assert_eq!(bwt, ["A", "C", "$", "A"]);
        assert_eq!(fm.counts(), &[0, 1, 3, 3, 4, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn lf_on_single_string() {
        let r = rlc_from("A C A $");
        let fm = FmIndex::build(&r).unwrap();
        // row 2 (ACA$) holds the sentinel; LF sends it to the sentinel row 0
        assert_eq!(fm.lf(2).unwrap(), 0);
        // from the sentinel row, LF spells the string right to left
        let mut row = 0;
        let mut spelled = Vec::new();
        loop {
            let c = fm.bwt_symbol(row);
            if c.is_sentinel() {
                break;
            }
            spelled.push(c);
            row = fm.lf(row).unwrap();
        }
        assert_eq!(spelled, hp("A C A"));
        for j in 0..fm.len() {
            assert_eq!(fm.lf_inverse(fm.lf(j).unwrap()).unwrap(), j);
            assert_eq!(fm.lf(fm.lf_inverse(j).unwrap()).unwrap(), j);
        }
        assert!(fm.lf(4).is_err());
        assert!(fm.lf_inverse(4).is_err());
    }

    #[test]
    fn lf_inverse_spells_forward() {
        let c = SeqCollection::from_ascii_reads(["GATTACA", "CCAGT"]).unwrap();
        let rlc = RlcCollection::compress(&c).unwrap();
        let fm = FmIndex::build(&rlc).unwrap();
        for id in 0..rlc.num_strings() {
            let start = rlc.string_start(id) as u32;
            let mut row = fm.suffix_array().iter().position(|&p| p == start).unwrap();
            let mut spelled = Vec::new();
            loop {
                let c = fm.row_symbol(row);
                if c.is_sentinel() {
                    break;
                }
                spelled.push(c);
                row = fm.lf_inverse(row).unwrap();
            }
            assert_eq!(spelled, rlc.string(id));
            // the step past the last symbol lands on this string's sentinel row
            assert_eq!(rlc.string_id_of(fm.sa(row)).unwrap(), id);
        }
    }

    #[test]
    fn backward_steps() {
        let r = rlc_from("A C A $");
        let fm = FmIndex::build(&r).unwrap();
        assert_eq!(
            fm.backward_step(fm.full_range(), HpSym::A),
            fm.bucket(HpSym::A)
        );
        assert!(fm.backward_step(fm.full_range(), HpSym::G).is_empty());
        // "CA" occurs once, at text position 1
        let range = fm.backward_search(&hp("C A"));
        assert_eq!(range.len(), 1);
        assert_eq!(fm.sa(range.start), 1);
        assert!(fm.backward_search(&hp("A A")).is_empty());
        assert_eq!(fm.backward_search(&[]), fm.full_range());
    }

    #[test]
    fn matches_naive_sort() {
        let c = SeqCollection::from_ascii_reads(["AACGTTTGCA", "ACGT", "GGGCAT", "ACGT"]).unwrap();
        let rlc = RlcCollection::compress(&c).unwrap();
        let fm = FmIndex::build(&rlc).unwrap();
        assert_eq!(fm.suffix_array(), naive_sa(&rlc).as_slice());
    }

    #[test]
    fn row_symbols() {
        let r = rlc_from("A C A $");
        let fm = FmIndex::build(&r).unwrap();
        let got: Vec<_> = (0..4).map(|j| fm.row_symbol(j).label()).collect();
        assert_eq!(got, ["$", "A", "A", "C"]);
    }
}
