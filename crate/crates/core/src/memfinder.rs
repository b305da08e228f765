//! All-vs-all MEM enumeration over the implicit bi-directional BWT.
//!
//! The suffix-link tree is walked depth first from the root by following
//! explicit Weiner links. Every node that is both left- and right-maximal
//! and at least `min_len` deep encodes a group of MEMs. Its occurrences are
//! split by right context (children) and left context (Weiner links of the
//! children); occurrence pairs whose contexts differ on both sides are MEMs.
//! Pairs within one string or between mates are dropped, and the remaining
//! ones are kept only if their run-length excess is within the threshold.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::alphabet::HpSym;
use crate::bibwt::BiRange;
use crate::collection::mate_of;
use crate::error::{Error, Result};
use crate::fmindex::MemIndex;
use crate::grid::MemGrid;
use crate::rle::RlcCollection;

/// How text positions of MEM occurrences are recovered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ReportMode {
    /// Scan suffix-array ranges of the Weiner links.
    #[default]
    Sa,
    /// Query the 2-D point grid with SA payloads.
    Grid,
}

/// Which coordinates an output writer should print.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CoordSpace {
    #[default]
    Rle,
    Expanded,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemParams {
    /// Minimum MEM length, in compressed symbols.
    pub min_len: usize,
    /// Maximum run-length excess, inclusive.
    pub max_excess: u32,
    pub mode: ReportMode,
    pub coords: CoordSpace,
}

impl MemParams {
    pub fn new(min_len: usize, max_excess: u32) -> Result<Self> {
        let p = MemParams {
            min_len,
            max_excess,
            mode: ReportMode::Sa,
            coords: CoordSpace::Rle,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_mode(mut self, mode: ReportMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_coords(mut self, coords: CoordSpace) -> Self {
        self.coords = coords;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_len == 0 {
            return Err(Error::InvalidParam(
                "minimum MEM length must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One MEM occurrence pair.
///
/// Compressed coordinates are 0-based offsets within each string; a MEM
/// covers `[start, start + len)`. Expanded spans are half-open offsets within
/// the uncompressed string and cover whole runs. Records order by
/// `(id_a, start_a, id_b, start_b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MemRecord {
    pub id_a: usize,
    pub start_a: usize,
    pub id_b: usize,
    pub start_b: usize,
    pub len: usize,
    pub excess: u32,
    pub exp_a: (u64, u64),
    pub exp_b: (u64, u64),
}

impl MemRecord {
    /// Builds a record from in-string offsets, filling expanded spans.
    pub fn new(
        rlc: &RlcCollection,
        (id_a, start_a): (usize, usize),
        (id_b, start_b): (usize, usize),
        len: usize,
        excess: u32,
    ) -> Self {
        let span = |id: usize, start: usize| {
            let base = rlc.string_start(id);
            let origin = rlc.expanded_span(base, 0).0;
            let (s, e) = rlc.expanded_span(base + start, len);
            (s - origin, e - origin)
        };
        MemRecord {
            id_a,
            start_a,
            id_b,
            start_b,
            len,
            excess,
            exp_a: span(id_a, start_a),
            exp_b: span(id_b, start_b),
        }
    }

    #[inline]
    pub fn end_a(&self) -> usize {
        self.start_a + self.len
    }

    #[inline]
    pub fn end_b(&self) -> usize {
        self.start_b + self.len
    }

    fn swapped(self) -> Self {
        MemRecord {
            id_a: self.id_b,
            start_a: self.start_b,
            id_b: self.id_a,
            start_b: self.start_a,
            exp_a: self.exp_b,
            exp_b: self.exp_a,
            ..self
        }
    }

    fn oriented(self) -> Self {
        if self.id_a > self.id_b {
            self.swapped()
        } else {
            self
        }
    }
}

/// Picks one representative among a MEM, its swap and its reverse-complement
/// mirror: `id_a < id_b`, then the smallest `(id_a, id_b, start_a, start_b)`.
pub fn canonicalize(rec: MemRecord, rlc: &RlcCollection) -> MemRecord {
    let flip =
        |id: usize, start: usize| (mate_of(id), rlc.string_range(id).len() - start - rec.len);
    let mirror = MemRecord::new(
        rlc,
        flip(rec.id_a, rec.start_a),
        flip(rec.id_b, rec.start_b),
        rec.len,
        rec.excess,
    )
    .oriented();
    let rec = rec.oriented();
    let key = |r: &MemRecord| (r.id_a, r.id_b, r.start_a, r.start_b);
    if key(&mirror) < key(&rec) {
        mirror
    } else {
        rec
    }
}

/// Largest difference between aligned run lengths of
/// `[pos_a, pos_a + len)` and `[pos_b, pos_b + len)`.
pub fn rl_excess(rlc: &RlcCollection, pos_a: usize, pos_b: usize, len: usize) -> Result<u32> {
    for p in [pos_a, pos_b] {
        let id = rlc.string_id_of(p)?;
        if p + len > rlc.string_range(id).end {
            return Err(Error::CrossesBoundary { pos: p, len });
        }
    }
    Ok(rl_excess_unchecked(rlc, pos_a, pos_b, len))
}

fn rl_excess_unchecked(rlc: &RlcCollection, pos_a: usize, pos_b: usize, len: usize) -> u32 {
    (0..len)
        .map(|i| {
            debug_assert_eq!(rlc.symbol(pos_a + i).base(), rlc.symbol(pos_b + i).base());
            rlc.run_length_unchecked(pos_a + i)
                .abs_diff(rlc.run_length_unchecked(pos_b + i))
        })
        .max()
        .unwrap_or(0)
}

/// Receives MEM records in arbitrary order.
pub trait MemSink {
    fn emit(&mut self, rec: MemRecord);
}

impl MemSink for Vec<MemRecord> {
    fn emit(&mut self, rec: MemRecord) {
        self.push(rec);
    }
}

/// Counters collected during a traversal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TraversalStats {
    /// Suffix-link-tree nodes visited, root included.
    pub nodes: usize,
    /// Nodes handed to MEM reporting.
    pub reporting_nodes: usize,
    /// Largest number of extend calls made while reporting one node.
    pub max_extensions_per_node: usize,
    /// Occurrence pairs examined.
    pub candidate_pairs: usize,
    /// Points extracted from the grid.
    pub grid_points: usize,
    /// Nodes where the grid returned more points than the node has
    /// occurrences.
    pub grid_overflow_nodes: usize,
}

impl TraversalStats {
    fn merge(&mut self, other: &TraversalStats) {
        self.nodes += other.nodes;
        self.reporting_nodes += other.reporting_nodes;
        self.max_extensions_per_node = self
            .max_extensions_per_node
            .max(other.max_extensions_per_node);
        self.candidate_pairs += other.candidate_pairs;
        self.grid_points += other.grid_points;
        self.grid_overflow_nodes += other.grid_overflow_nodes;
    }
}

/// Occurrences of a node label sharing one left and one right context.
#[derive(Clone, Debug)]
pub(crate) struct OccGroup {
    pub left: HpSym,
    pub right: HpSym,
    /// Text positions where the label starts.
    pub positions: Vec<usize>,
}

/// Two occurrence groups form MEMs when both contexts differ. Sentinels are
/// all distinct, so a shared `$` context never blocks maximality.
#[inline]
fn groups_diverge(g: &OccGroup, h: &OccGroup) -> bool {
    (g.left != h.left || g.left.is_sentinel()) && (g.right != h.right || g.right.is_sentinel())
}

/// Final sorted, canonical, duplicate-free output of a search.
#[derive(Clone, Debug, Default)]
pub struct MemReport {
    pub records: Vec<MemRecord>,
    pub stats: TraversalStats,
}

pub struct MemFinder<'a> {
    index: &'a MemIndex,
    params: MemParams,
    grid: Option<MemGrid>,
}

impl<'a> MemFinder<'a> {
    pub fn new(index: &'a MemIndex, params: MemParams) -> Result<Self> {
        params.validate()?;
        let grid = match params.mode {
            ReportMode::Sa => None,
            ReportMode::Grid => Some(MemGrid::build(index.fm())),
        };
        Ok(MemFinder {
            index,
            params,
            grid,
        })
    }

    pub fn params(&self) -> &MemParams {
        &self.params
    }

    /// Sequential traversal from the root, emitting raw records.
    pub fn traverse<S: MemSink>(&self, sink: &mut S) -> TraversalStats {
        let mut stats = TraversalStats::default();
        self.walk(vec![self.index.fm().root_range()], sink, &mut stats);
        stats
    }

    /// Runs the traversal on `threads` workers and returns canonical,
    /// sorted, deduplicated records. Output does not depend on `threads`.
    pub fn run(&self, threads: usize) -> Result<MemReport> {
        let threads = threads.max(1);
        let mut stats = TraversalStats::default();
        let mut records = Vec::new();
        if threads == 1 {
            stats = self.traverse(&mut records);
        } else {
            // split into disjoint subtrees before going parallel
            let target = threads * 8;
            let mut frontier = VecDeque::from([self.index.fm().root_range()]);
            while frontier.len() < target {
                let Some(v) = frontier.pop_front() else { break };
                self.visit(v, &mut records, &mut stats, |u| frontier.push_back(u));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?;
            let parts: Vec<(Vec<MemRecord>, TraversalStats)> = pool.install(|| {
                frontier
                    .into_par_iter()
                    .map(|v| {
                        let mut local = Vec::new();
                        let mut s = TraversalStats::default();
                        self.walk(vec![v], &mut local, &mut s);
                        (local, s)
                    })
                    .collect()
            });
            for (part, s) in parts {
                records.extend(part);
                stats.merge(&s);
            }
        }
        Ok(MemReport {
            records: finalize(records, self.index.rlc()),
            stats,
        })
    }

    fn walk<S: MemSink>(&self, mut stack: Vec<BiRange>, sink: &mut S, stats: &mut TraversalStats) {
        while let Some(v) = stack.pop() {
            self.visit(v, sink, stats, |u| stack.push(u));
        }
    }

    /// Reports MEMs at `v` if it qualifies and hands its explicit Weiner
    /// links to `push`.
    fn visit<S: MemSink>(
        &self,
        v: BiRange,
        sink: &mut S,
        stats: &mut TraversalStats,
        mut push: impl FnMut(BiRange),
    ) {
        let fm = self.index.fm();
        stats.nodes += 1;
        if v.depth >= self.params.min_len && fm.is_left_maximal(v) && fm.is_right_maximal(v) {
            stats.reporting_nodes += 1;
            let groups = match &self.grid {
                None => self.groups_from_sa(v, stats),
                Some(grid) => grid.occurrence_groups(fm, v, stats),
            };
            self.report_groups(&groups, v.depth, sink, stats);
        }
        for c in fm.enumerate_left(v) {
            if c.is_sentinel() {
                continue;
            }
            let u = fm.extend_left(v, c);
            if fm.is_right_maximal(u) {
                push(u);
            }
        }
    }

    /// Children by right context, then their Weiner links; positions come
    /// from the SA entries of the Weiner-link ranges, one past the link
    /// symbol.
    fn groups_from_sa(&self, v: BiRange, stats: &mut TraversalStats) -> Vec<OccGroup> {
        let fm = self.index.fm();
        let mut extensions = 0;
        let mut groups = Vec::new();
        for right in fm.enumerate_right(v) {
            let child = fm.extend_right(v, right);
            extensions += 1;
            for left in fm.enumerate_left(child) {
                let link = fm.extend_left(child, left);
                extensions += 1;
                let positions = link
                    .fwd
                    .rows()
                    .map(|q| {
                        if left.is_sentinel() {
                            // a sentinel row's successor is the string start
                            fm.sa(fm.lf_inverse(q).expect("row in range"))
                        } else {
                            fm.sa(q) + 1
                        }
                    })
                    .collect();
                groups.push(OccGroup {
                    left,
                    right,
                    positions,
                });
            }
        }
        stats.max_extensions_per_node = stats.max_extensions_per_node.max(extensions);
        groups
    }

    fn report_groups<S: MemSink>(
        &self,
        groups: &[OccGroup],
        depth: usize,
        sink: &mut S,
        stats: &mut TraversalStats,
    ) {
        for (gi, g) in groups.iter().enumerate() {
            for h in &groups[gi..] {
                if !groups_diverge(g, h) {
                    continue;
                }
                let same = std::ptr::eq(g, h);
                for (i, &pa) in g.positions.iter().enumerate() {
                    let others = if same {
                        &h.positions[i + 1..]
                    } else {
                        &h.positions[..]
                    };
                    for &pb in others {
                        stats.candidate_pairs += 1;
                        self.emit_pair(pa, pb, depth, sink);
                    }
                }
            }
        }
    }

    fn emit_pair<S: MemSink>(&self, pa: usize, pb: usize, len: usize, sink: &mut S) {
        let rlc = self.index.rlc();
        let id_a = rlc.string_id_of(pa).expect("position in text");
        let id_b = rlc.string_id_of(pb).expect("position in text");
        if id_a == id_b || id_b == mate_of(id_a) {
            return;
        }
        let excess = rl_excess_unchecked(rlc, pa, pb, len);
        if excess > self.params.max_excess {
            return;
        }
        debug_assert!(
            is_maximal_match(rlc, pa, pb, len),
            "non-maximal match at ({pa}, {pb}, {len})"
        );
        sink.emit(MemRecord::new(
            rlc,
            (id_a, pa - rlc.string_start(id_a)),
            (id_b, pb - rlc.string_start(id_b)),
            len,
            excess,
        ));
    }
}

/// Canonicalizes, sorts and deduplicates raw records.
pub fn finalize(records: Vec<MemRecord>, rlc: &RlcCollection) -> Vec<MemRecord> {
    let mut out: Vec<MemRecord> = records.into_iter().map(|r| canonicalize(r, rlc)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Convenience wrapper: builds a finder and runs it.
pub fn find_mems(index: &MemIndex, params: MemParams, threads: usize) -> Result<MemReport> {
    MemFinder::new(index, params)?.run(threads)
}

/// Direct text check that `[pa, pa + len)` and `[pb, pb + len)` form a
/// maximal exact match.
fn is_maximal_match(rlc: &RlcCollection, pa: usize, pb: usize, len: usize) -> bool {
    let t = rlc.text();
    let equal =
        t[pa..pa + len] == t[pb..pb + len] && !t[pa..pa + len].iter().any(|s| s.is_sentinel());
    let at_start = |p: usize| p == 0 || t[p - 1].is_sentinel();
    let left = at_start(pa) || at_start(pb) || t[pa - 1] != t[pb - 1];
    let (ea, eb) = (pa + len, pb + len);
    let right = t[ea].is_sentinel() || t[eb].is_sentinel() || t[ea] != t[eb];
    equal && left && right
}
