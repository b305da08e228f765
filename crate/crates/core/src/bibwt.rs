//! Implicit bi-directional BWT.
//!
//! The collection holds every read together with its reverse complement, so
//! for any string `X` the occurrences of `cX` pair up one-to-one with the
//! occurrences of `X^ c^` (`^` = reverse complement). A [`BiRange`] keeps the
//! suffix-array range of `X` next to the range of `X^`, both in the single
//! suffix array of the collection, and keeps them synchronized through range
//! counts on the one BWT.
//!
//! Sentinels need care: a string start (left context `$`) pairs with a
//! string end (right context `$`) of the mate, so for synchronization the
//! sentinel is its own partner. All other symbols pair up as `c <-> 11 - c`.
//! Each sentinel is also treated as distinct from every other sentinel when
//! deciding maximality, since a match cannot extend past any string end.

use crate::alphabet::{HpSym, SIGMA_HP};
use crate::error::{Error, Result};
use crate::fmindex::{FmIndex, SaRange};

/// Synchronized ranges of a string and of its reverse complement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiRange {
    pub fwd: SaRange,
    pub rc: SaRange,
    pub depth: usize,
}

impl BiRange {
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    /// The same string seen from its reverse complement.
    #[inline]
    pub fn swapped(self) -> Self {
        BiRange {
            fwd: self.rc,
            rc: self.fwd,
            depth: self.depth,
        }
    }

    fn empty(depth: usize) -> Self {
        BiRange {
            depth,
            ..Default::default()
        }
    }
}

/// Partner of a context symbol across strands.
#[inline]
pub fn strand_partner(c: HpSym) -> HpSym {
    // `$*` never occurs; keep it out of the way
    if c.base().is_sentinel() {
        c
    } else {
        c.complement()
    }
}

impl FmIndex {
    pub fn root_range(&self) -> BiRange {
        BiRange {
            fwd: self.full_range(),
            rc: self.full_range(),
            depth: 0,
        }
    }

    /// Number of rows in `range` whose BWT symbol has a partner smaller than
    /// `strand_partner(c)`.
    fn partners_below(&self, range: SaRange, c: HpSym) -> usize {
        if c.is_sentinel() {
            0
        } else {
            // partner(x) < partner(c) <=> x == $ or x > c
            let sentinels = self.range_count(range, 1, 1);
            sentinels + self.range_count(range, c.code() + 1, SIGMA_HP)
        }
    }

    /// `X -> cX`, with the partner range moved from `X^` to `X^ c^`.
    pub fn extend_left(&self, b: BiRange, c: HpSym) -> BiRange {
        if b.is_empty() {
            return BiRange::empty(b.depth + 1);
        }
        let fwd = self.backward_step(b.fwd, c);
        if fwd.is_empty() {
            return BiRange::empty(b.depth + 1);
        }
        let start = b.rc.start + self.partners_below(b.fwd, c);
        BiRange {
            fwd,
            rc: SaRange::new(start, start + fwd.len()),
            depth: b.depth + 1,
        }
    }

    /// `X -> Xc`, computed as a backward step on the partner range.
    pub fn extend_right(&self, b: BiRange, c: HpSym) -> BiRange {
        self.extend_left(b.swapped(), strand_partner(c)).swapped()
    }

    /// Distinct left-context symbols of the string, ascending.
    pub fn enumerate_left(&self, b: BiRange) -> Vec<HpSym> {
        if b.is_empty() {
            return Vec::new();
        }
        self.wavelet()
            .range_list(b.fwd.rows())
            .iter()
            .map(|t| HpSym::new(t.symbol as u8).expect("BWT code"))
            .collect()
    }

    /// Distinct right-context symbols of the string, ascending.
    pub fn enumerate_right(&self, b: BiRange) -> Vec<HpSym> {
        let mut out: Vec<HpSym> = self
            .enumerate_left(b.swapped())
            .into_iter()
            .map(strand_partner)
            .collect();
        out.sort_unstable();
        out
    }

    /// At least two occurrences that cannot both be extended left by the
    /// same symbol. Each sentinel counts as a distinct symbol.
    pub fn is_left_maximal(&self, b: BiRange) -> bool {
        self.has_distinct_contexts(b.fwd)
    }

    pub fn is_right_maximal(&self, b: BiRange) -> bool {
        self.has_distinct_contexts(b.rc)
    }

    fn has_distinct_contexts(&self, range: SaRange) -> bool {
        if range.len() < 2 {
            return false;
        }
        let first = self.bwt_symbol(range.start);
        first.is_sentinel()
            || self.rank(first, range.end) - self.rank(first, range.start) < range.len()
    }

    /// Proper ancestors of the suffix-tree node `v`, shallowest first.
    ///
    /// The label of `v` is spelled left to right with `lf_inverse` from the
    /// first row of `v`. In lockstep the reverse complement of the spelled
    /// prefix is grown by backward steps; whenever it is left-maximal the
    /// prefix is right-maximal, so the synchronized partner range is a node.
    pub fn ancestors(&self, v: BiRange) -> Result<Vec<BiRange>> {
        if v.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        // fwd = reverse complement of the spelled prefix, rc = the prefix
        let mut w = self.root_range();
        let mut row = v.fwd.start;
        for k in 0..v.depth {
            if self.is_left_maximal(w) {
                out.push(w.swapped());
            }
            let c = self.row_symbol(row);
            if c.is_sentinel() {
                return Err(Error::InvalidParam(format!(
                    "depth {} runs past the end of the string at row {}",
                    v.depth, v.fwd.start
                )));
            }
            w = self.extend_left(w, strand_partner(c));
            row = self.lf_inverse(row)?;
            debug_assert_eq!(w.depth, k + 1);
        }
        Ok(out)
    }
}
