use std::ops::Range;

use super::RsBitVector;

/// One entry of [`WaveletTree::range_list`]: a symbol present in the queried
/// range with its rank before the range start and at the range end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeSymbol {
    pub symbol: u32,
    pub rank_start: usize,
    pub rank_end: usize,
}

impl RangeSymbol {
    #[inline]
    pub fn count(&self) -> usize {
        self.rank_end - self.rank_start
    }
}

/// Balanced, pointer-free wavelet tree over symbols of a fixed bit width.
///
/// Level `l` stores bit `width - 1 - l` of every symbol, with the sequence
/// stably sorted by the `l` most significant bits, so every tree node is a
/// contiguous interval of its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletTree {
    len: usize,
    width: u32,
    levels: Vec<RsBitVector>,
}

impl WaveletTree {
    /// Builds a tree able to hold symbols `0..=max_symbol`.
    pub fn with_max_symbol(values: &[u32], max_symbol: u32) -> Self {
        let width = (u32::BITS - max_symbol.leading_zeros()).max(1);
        Self::new(values, width)
    }

    pub fn new(values: &[u32], width: u32) -> Self {
        assert!((1..=32).contains(&width));
        if width < 32 {
            if let Some(v) = values.iter().find(|&&v| v >> width != 0) {
                panic!("symbol {v} does not fit in {width} bits");
            }
        }
        let mut cur = values.to_vec();
        let mut levels = Vec::with_capacity(width as usize);
        for level in 0..width {
            let shift = width - 1 - level;
            levels.push(RsBitVector::from_bools(
                cur.iter().map(|v| v >> shift & 1 == 1),
            ));
            cur.sort_by_key(|v| (*v as u64) >> shift);
        }
        WaveletTree {
            len: values.len(),
            width,
            levels,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    fn bit(&self, symbol: u32, level: usize) -> bool {
        symbol >> (self.width as usize - 1 - level) & 1 == 1
    }

    #[inline]
    fn fits(&self, symbol: u32) -> bool {
        self.width == 32 || symbol >> self.width == 0
    }

    pub fn access(&self, i: usize) -> Option<u32> {
        if i >= self.len {
            return None;
        }
        let (mut b, mut e, mut p) = (0, self.len, i);
        let mut v = 0u32;
        for bv in &self.levels {
            let r0b = bv.rank0(b);
            let z = bv.rank0(e) - r0b;
            if bv.get(b + p) {
                p = bv.rank1(b + p) - bv.rank1(b);
                b += z;
                v = v << 1 | 1;
            } else {
                p = bv.rank0(b + p) - r0b;
                e = b + z;
                v <<= 1;
            }
        }
        Some(v)
    }

    /// Occurrences of `symbol` in `[0, i)`. Panics if `i > len`.
    pub fn rank(&self, symbol: u32, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} out of range {}", self.len);
        if !self.fits(symbol) {
            return 0;
        }
        let (mut b, mut e, mut p) = (0, self.len, i);
        for (level, bv) in self.levels.iter().enumerate() {
            if p == 0 {
                return 0;
            }
            let r0b = bv.rank0(b);
            let r0p = bv.rank0(b + p);
            let z = bv.rank0(e) - r0b;
            if self.bit(symbol, level) {
                p -= r0p - r0b;
                b += z;
            } else {
                p = r0p - r0b;
                e = b + z;
            }
        }
        p
    }

    /// Node starts along the path of `symbol`, plus the leaf interval.
    fn path(&self, symbol: u32) -> (Vec<usize>, usize, usize) {
        let mut starts = Vec::with_capacity(self.levels.len());
        let (mut b, mut e) = (0, self.len);
        for (level, bv) in self.levels.iter().enumerate() {
            starts.push(b);
            let z = bv.rank0(e) - bv.rank0(b);
            if self.bit(symbol, level) {
                b += z;
            } else {
                e = b + z;
            }
        }
        (starts, b, e)
    }

    /// Maps the `k`-th leaf entry of `symbol` back to a sequence position.
    fn lift(&self, symbol: u32, starts: &[usize], mut k: usize) -> usize {
        for level in (0..self.levels.len()).rev() {
            let bv = &self.levels[level];
            let b = starts[level];
            let pos = if self.bit(symbol, level) {
                bv.select1(bv.rank1(b) + k)
            } else {
                bv.select0(bv.rank0(b) + k)
            };
            k = pos.expect("wavelet tree levels are consistent") - b;
        }
        k
    }

    /// Position of the `k`-th occurrence (0-based) of `symbol`.
    pub fn select(&self, symbol: u32, k: usize) -> Option<usize> {
        if !self.fits(symbol) {
            return None;
        }
        let (starts, b, e) = self.path(symbol);
        (k < e - b).then(|| self.lift(symbol, &starts, k))
    }

    /// Distinct symbols of `range`, ascending, with their boundary ranks.
    pub fn range_list(&self, range: Range<usize>) -> Vec<RangeSymbol> {
        self.check_range(&range);
        let mut out = Vec::new();
        if !range.is_empty() {
            self.list_node(0, 0, self.len, range.start, range.end, 0, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn list_node(
        &self,
        level: usize,
        b: usize,
        e: usize,
        qi: usize,
        qj: usize,
        prefix: u32,
        out: &mut Vec<RangeSymbol>,
    ) {
        if level == self.levels.len() {
            out.push(RangeSymbol {
                symbol: prefix,
                rank_start: qi - b,
                rank_end: qj - b,
            });
            return;
        }
        let bv = &self.levels[level];
        let (r0b, r0i, r0j) = (bv.rank0(b), bv.rank0(qi), bv.rank0(qj));
        let z = bv.rank0(e) - r0b;
        let (li, lj) = (b + r0i - r0b, b + r0j - r0b);
        if lj > li {
            self.list_node(level + 1, b, b + z, li, lj, prefix << 1, out);
        }
        let rb = b + z;
        let (ri, rj) = (rb + (qi - b) - (r0i - r0b), rb + (qj - b) - (r0j - r0b));
        if rj > ri {
            self.list_node(level + 1, rb, e, ri, rj, prefix << 1 | 1, out);
        }
    }

    /// Number of positions in `range` whose symbol lies in `lo..=hi`.
    pub fn range_count(&self, range: Range<usize>, lo: u32, hi: u32) -> usize {
        self.check_range(&range);
        if lo > hi || range.is_empty() {
            return 0;
        }
        self.count_less(&range, hi as u64 + 1) - self.count_less(&range, lo as u64)
    }

    fn count_less(&self, range: &Range<usize>, bound: u64) -> usize {
        if bound >> self.width != 0 {
            return range.len();
        }
        let (mut b, mut e, mut qi, mut qj) = (0, self.len, range.start, range.end);
        let mut acc = 0;
        for (level, bv) in self.levels.iter().enumerate() {
            let (r0b, r0i, r0j) = (bv.rank0(b), bv.rank0(qi), bv.rank0(qj));
            let z = bv.rank0(e) - r0b;
            if bound >> (self.width as usize - 1 - level) & 1 == 1 {
                acc += r0j - r0i;
                let rb = b + z;
                qi = rb + (qi - b) - (r0i - r0b);
                qj = rb + (qj - b) - (r0j - r0b);
                b = rb;
            } else {
                qi = b + r0i - r0b;
                qj = b + r0j - r0b;
                e = b + z;
            }
            if qi == qj {
                break;
            }
        }
        acc
    }

    /// All `(position, symbol)` pairs in `range` with symbol in `lo..=hi`,
    /// sorted by position.
    pub fn range_report(&self, range: Range<usize>, lo: u32, hi: u32) -> Vec<(usize, u32)> {
        self.check_range(&range);
        let mut out = Vec::new();
        if lo <= hi && !range.is_empty() {
            let mut starts = Vec::with_capacity(self.levels.len());
            self.report_node(
                0,
                0,
                self.len,
                range.start,
                range.end,
                0,
                (lo, hi),
                &mut starts,
                &mut out,
            );
        }
        out.sort_unstable();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn report_node(
        &self,
        level: usize,
        b: usize,
        e: usize,
        qi: usize,
        qj: usize,
        prefix: u32,
        bounds: (u32, u32),
        starts: &mut Vec<usize>,
        out: &mut Vec<(usize, u32)>,
    ) {
        let rem = self.width as usize - level;
        let node_lo = (prefix as u64) << rem;
        let node_hi = node_lo + (1u64 << rem) - 1;
        if node_hi < bounds.0 as u64 || node_lo > bounds.1 as u64 {
            return;
        }
        if level == self.levels.len() {
            for k in qi - b..qj - b {
                out.push((self.lift(prefix, starts, k), prefix));
            }
            return;
        }
        let bv = &self.levels[level];
        let (r0b, r0i, r0j) = (bv.rank0(b), bv.rank0(qi), bv.rank0(qj));
        let z = bv.rank0(e) - r0b;
        starts.push(b);
        let (li, lj) = (b + r0i - r0b, b + r0j - r0b);
        if lj > li {
            self.report_node(
                level + 1,
                b,
                b + z,
                li,
                lj,
                prefix << 1,
                bounds,
                starts,
                out,
            );
        }
        let rb = b + z;
        let (ri, rj) = (rb + (qi - b) - (r0i - r0b), rb + (qj - b) - (r0j - r0b));
        if rj > ri {
            self.report_node(
                level + 1,
                rb,
                e,
                ri,
                rj,
                prefix << 1 | 1,
                bounds,
                starts,
                out,
            );
        }
        starts.pop();
    }

    fn check_range(&self, range: &Range<usize>) {
        assert!(
            range.start <= range.end && range.end <= self.len,
            "range {range:?} out of bounds for length {}",
            self.len
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // A=2, C=4 in the homopolymer alphabet
    fn aca() -> WaveletTree {
        WaveletTree::with_max_symbol(&[2, 4, 2], 10)
    }

    #[test]
    fn access_examples() {
        let w = aca();
        assert_eq!(w.width(), 4);
        assert_eq!(w.access(1), Some(4));
        assert_eq!(w.access(3), None);
        let single = WaveletTree::with_max_symbol(&[7], 10);
        assert_eq!(single.access(0), Some(7));
    }

    #[test]
    fn rank_examples() {
        let w = aca();
        assert_eq!(w.rank(2, 3), 2);
        assert_eq!(w.rank(9, 0), 0);
        assert_eq!(w.rank(7, 3), 0);
        assert_eq!(w.rank(200, 3), 0);
    }

    #[test]
    #[should_panic]
    fn rank_past_end_panics() {
        aca().rank(2, 4);
    }

    #[test]
    fn select_examples() {
        let w = aca();
        assert_eq!(w.select(2, 1), Some(2));
        assert_eq!(w.select(4, 1), None);
        assert_eq!(w.select(4, 0), Some(1));
    }

    #[test]
    fn range_list_examples() {
        let w = aca();
        let got: Vec<_> = w
            .range_list(0..3)
            .iter()
            .map(|t| (t.symbol, t.rank_start, t.rank_end))
            .collect();
        assert_eq!(got, vec![(2, 0, 2), (4, 0, 1)]);
        let single = w.range_list(1..2);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].symbol, 4);
        assert!(w.range_list(2..2).is_empty());
    }

    #[test]
    fn range_count_examples() {
        let w = aca();
        assert_eq!(w.range_count(0..3, 2, 2), 2);
        assert_eq!(w.range_count(0..3, 1, 10), 3);
        assert_eq!(w.range_count(0..3, 5, 4), 0);
        assert_eq!(w.range_count(0..3, 0, u32::MAX), 3);
    }

    #[test]
    fn report_examples() {
        let w = aca();
        assert_eq!(w.range_report(0..3, 2, 2), vec![(0, 2), (2, 2)]);
        assert_eq!(w.range_report(0..3, 3, 3), vec![]);
    }

    fn seq_and_queries() -> impl Strategy<Value = (Vec<u32>, u32, Vec<(usize, usize, u32, u32)>)> {
        (1u32..40).prop_flat_map(|max| {
            (proptest::collection::vec(0..=max, 1..300), Just(max)).prop_flat_map(|(s, max)| {
                let n = s.len();
                let q = (0..=n, 0..=n, 0..=max + 1, 0..=max + 1);
                (Just(s), Just(max), proptest::collection::vec(q, 1..30))
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_scan((s, max, queries) in seq_and_queries()) {
            let w = WaveletTree::with_max_symbol(&s, max);
            for (i, &v) in s.iter().enumerate() {
                prop_assert_eq!(w.access(i), Some(v));
            }
            for c in 0..=max {
                let mut seen = 0;
                for (i, &v) in s.iter().enumerate() {
                    prop_assert_eq!(w.rank(c, i), seen);
                    if v == c {
                        prop_assert_eq!(w.select(c, seen), Some(i));
                        seen += 1;
                    }
                }
                prop_assert_eq!(w.select(c, seen), None);
            }
            for (a, b, lo, hi) in queries {
                let (i, j) = (a.min(b), a.max(b));
                let slice = &s[i..j];
                let want = slice.iter().filter(|&&v| lo <= v && v <= hi).count();
                prop_assert_eq!(w.range_count(i..j, lo, hi), want);
                let mut distinct: Vec<u32> = slice.to_vec();
                distinct.sort_unstable();
                distinct.dedup();
                let list = w.range_list(i..j);
                prop_assert_eq!(list.iter().map(|t| t.symbol).collect::<Vec<_>>(), distinct);
                prop_assert_eq!(list.iter().map(RangeSymbol::count).sum::<usize>(), j - i);
                for t in &list {
                    prop_assert!(t.count() >= 1);
                    prop_assert_eq!(t.rank_start, w.rank(t.symbol, i));
                    prop_assert_eq!(t.rank_end, w.rank(t.symbol, j));
                }
                let report: Vec<(usize, u32)> = (i..j)
                    .filter(|&p| lo <= s[p] && s[p] <= hi)
                    .map(|p| (p, s[p]))
                    .collect();
                prop_assert_eq!(w.range_report(i..j, lo, hi), report);
            }
        }
    }
}
