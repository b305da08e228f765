//! Rank/select bit vectors and wavelet trees.
//!
//! Positions are 0-based. `rank(i)` counts over the prefix `[0, i)` and
//! `select(k)` returns the position of the `k`-th occurrence, counting from 0.

mod bitvec;
mod wavelet;

pub use bitvec::RsBitVector;
pub use wavelet::{RangeSymbol, WaveletTree};
