//! DNA and homopolymer alphabets.
//!
//! Plain DNA uses codes `1..=5` (`$ A C G T`). The homopolymer alphabet uses
//! codes `1..=10` ordered as `$ A A* C C* G* G T* T $*`, where `c*` stands for
//! a run of two or more copies of `c`. With this order the DNA complement is
//! the reversal `k -> 11 - k`, which keeps both alphabets symmetric.

use std::fmt;

use crate::error::{Error, Result};

/// Number of symbols in the plain DNA alphabet, sentinel included.
pub const SIGMA_BASE: u8 = 5;
/// Number of symbols in the homopolymer alphabet.
pub const SIGMA_HP: u8 = 10;

/// A plain DNA symbol (`1 = $`, `2 = A`, `3 = C`, `4 = G`, `5 = T`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseSym(u8);

impl BaseSym {
    pub const SENTINEL: BaseSym = BaseSym(1);
    pub const A: BaseSym = BaseSym(2);
    pub const C: BaseSym = BaseSym(3);
    pub const G: BaseSym = BaseSym(4);
    pub const T: BaseSym = BaseSym(5);

    pub fn new(code: u8) -> Result<Self> {
        if (1..=SIGMA_BASE).contains(&code) {
            Ok(BaseSym(code))
        } else {
            Err(Error::InvalidSymbol(code))
        }
    }

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_sentinel(self) -> bool {
        self.0 == 1
    }

    /// Case-insensitive `ACGT` only; everything else (including `N`) is `None`.
    pub fn from_ascii(byte: u8) -> Option<Self> {
        match byte.to_ascii_uppercase() {
            b'A' => Some(Self::A),
            b'C' => Some(Self::C),
            b'G' => Some(Self::G),
            b'T' => Some(Self::T),
            _ => None,
        }
    }

    pub fn to_ascii(self) -> u8 {
        b"$ACGT"[(self.0 - 1) as usize]
    }

    /// DNA complement; the sentinel is fixed.
    #[inline]
    pub fn complement(self) -> Self {
        match self.0 {
            1 => self,
            c => BaseSym(7 - c),
        }
    }
}

impl fmt::Display for BaseSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ascii() as char)
    }
}

/// A symbol of the homopolymer alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HpSym(u8);

impl HpSym {
    pub const SENTINEL: HpSym = HpSym(1);
    pub const A: HpSym = HpSym(2);
    pub const A_RUN: HpSym = HpSym(3);
    pub const C: HpSym = HpSym(4);
    pub const C_RUN: HpSym = HpSym(5);
    pub const G_RUN: HpSym = HpSym(6);
    pub const G: HpSym = HpSym(7);
    pub const T_RUN: HpSym = HpSym(8);
    pub const T: HpSym = HpSym(9);
    pub const SENTINEL_RUN: HpSym = HpSym(10);

    pub fn new(code: u8) -> Result<Self> {
        if (1..=SIGMA_HP).contains(&code) {
            Ok(HpSym(code))
        } else {
            Err(Error::InvalidSymbol(code))
        }
    }

    /// All symbols in ascending order.
    pub fn all() -> impl Iterator<Item = HpSym> {
        (1..=SIGMA_HP).map(HpSym)
    }

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_sentinel(self) -> bool {
        self.0 == 1
    }

    /// True for the run symbols `A* C* G* T* $*`.
    #[inline]
    pub fn is_meta(self) -> bool {
        matches!(self.0, 3 | 5 | 6 | 8 | 10)
    }

    #[inline]
    pub fn complement(self) -> Self {
        HpSym(SIGMA_HP + 1 - self.0)
    }

    /// The nucleotide a symbol stands for, run marker dropped.
    pub fn base(self) -> BaseSym {
        BaseSym(match self.0 {
            1 | 10 => 1,
            2 | 3 => 2,
            4 | 5 => 3,
            6 | 7 => 4,
            _ => 5,
        })
    }

    /// Symbol encoding a maximal run of `base` with the given length.
    pub fn for_run(base: BaseSym, run_len: usize) -> Self {
        let (plain, meta) = match base.0 {
            1 => (1, 10),
            2 => (2, 3),
            3 => (4, 5),
            4 => (7, 6),
            _ => (9, 8),
        };
        HpSym(if run_len > 1 { meta } else { plain })
    }

    pub fn label(self) -> &'static str {
        ["$", "A", "A*", "C", "C*", "G*", "G", "T*", "T", "$*"][(self.0 - 1) as usize]
    }
}

impl fmt::Display for HpSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Complement of a raw DNA code.
pub fn complement_base(code: u8) -> Result<u8> {
    BaseSym::new(code).map(|s| s.complement().code())
}

/// Complement of a raw homopolymer code.
pub fn complement_hp(code: u8) -> Result<u8> {
    HpSym::new(code).map(|s| s.complement().code())
}

/// Maps a raw homopolymer code back to its DNA code.
pub fn hp_to_base(code: u8) -> Result<u8> {
    HpSym::new(code).map(|s| s.base().code())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_complement() {
        assert_eq!(BaseSym::A.complement(), BaseSym::T);
        assert_eq!(BaseSym::SENTINEL.complement(), BaseSym::SENTINEL);
        assert_eq!(BaseSym::C.complement().complement(), BaseSym::C);
        assert_eq!(BaseSym::C.complement(), BaseSym::G);
        assert!(complement_base(0).is_err());
        assert!(complement_base(6).is_err());
    }

    #[test]
    fn hp_complement() {
        assert_eq!(complement_hp(2).unwrap(), 9);
        assert_eq!(complement_hp(3).unwrap(), 8);
        assert_eq!(complement_hp(1).unwrap(), 10);
        assert!(complement_hp(11).is_err());
        assert!(complement_hp(0).is_err());
    }

    #[test]
    fn hp_to_base_map() {
        assert_eq!(HpSym::A_RUN.base(), BaseSym::A);
        assert_eq!(HpSym::G.base(), BaseSym::G);
        assert_eq!(HpSym::SENTINEL_RUN.base(), BaseSym::SENTINEL);
        assert!(hp_to_base(42).is_err());
    }

    #[test]
    fn alphabet_symmetry() {
        for s in HpSym::all() {
            assert_eq!(s.complement().complement(), s);
            assert_eq!(s.complement().base(), s.base().complement());
            if !s.base().is_sentinel() {
                assert_eq!(s.is_meta(), s.complement().is_meta());
            }
        }
        let metas: Vec<u8> = HpSym::all()
            .filter(|s| s.is_meta())
            .map(HpSym::code)
            .collect();
        assert_eq!(metas, vec![3, 5, 6, 8, 10]);
    }

    #[test]
    fn run_symbols() {
        for b in [BaseSym::A, BaseSym::C, BaseSym::G, BaseSym::T] {
            assert_eq!(HpSym::for_run(b, 1).base(), b);
            assert!(!HpSym::for_run(b, 1).is_meta());
            assert_eq!(HpSym::for_run(b, 3).base(), b);
            assert!(HpSym::for_run(b, 3).is_meta());
        }
    }

    #[test]
    fn ascii() {
        assert_eq!(BaseSym::from_ascii(b'g'), Some(BaseSym::G));
        assert_eq!(BaseSym::from_ascii(b'N'), None);
        assert_eq!(BaseSym::T.to_ascii(), b'T');
    }
}
