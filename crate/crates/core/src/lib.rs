//! Maximal exact matches between all pairs of DNA reads, computed on
//! homopolymer-compressed reads with tolerance on run lengths.

pub mod alphabet;
pub mod bibwt;
pub mod collection;
pub mod error;
pub mod fmindex;
pub mod grid;
pub mod memfinder;
pub mod oracle;
pub mod rle;
pub mod succinct;

pub use alphabet::{BaseSym, HpSym};
pub use bibwt::BiRange;
pub use collection::{read_fasta, FastaRecord, SeqCollection};
pub use error::{Error, Result};
pub use fmindex::{FmIndex, MemIndex, SaRange};
pub use grid::MemGrid;
pub use memfinder::{
    canonicalize, find_mems, rl_excess, CoordSpace, MemFinder, MemParams, MemRecord, MemReport,
    MemSink, ReportMode, TraversalStats,
};
pub use rle::RlcCollection;
