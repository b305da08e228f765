//! Point grid for MEM reporting.
//!
//! Row `j` of the suffix array holds the point `(j, LF(j))` with payload
//! `SA[j]`. For a node `v`, the points in rows `v` and columns of a Weiner
//! link `av` are exactly the occurrences of `v` preceded by `a`, and their
//! payloads are the occurrence positions. Splitting them by the child ranges
//! of `v` yields the same occurrence groups as scanning the Weiner links of
//! the children.

use crate::bibwt::BiRange;
use crate::fmindex::{FmIndex, SaRange};
use crate::memfinder::{OccGroup, TraversalStats};
use crate::succinct::WaveletTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub row: usize,
    pub col: usize,
    /// Text position of the suffix at `row`.
    pub pos: usize,
}

pub struct MemGrid {
    cols: WaveletTree,
    payload: Vec<u32>,
}

impl MemGrid {
    pub fn build(fm: &FmIndex) -> Self {
        let n = fm.len();
        let cols: Vec<u32> = (0..n)
            .map(|j| fm.lf(j).expect("row in range") as u32)
            .collect();
        MemGrid {
            cols: WaveletTree::with_max_symbol(&cols, n.saturating_sub(1) as u32),
            payload: fm.suffix_array().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payload.is_empty()
    }

    /// Points with row in `rows` and column in `cols`, sorted by row.
    pub fn report_area(&self, rows: SaRange, cols: SaRange) -> Vec<GridPoint> {
        if rows.is_empty() || cols.is_empty() {
            return Vec::new();
        }
        self.cols
            .range_report(rows.rows(), cols.start as u32, (cols.end - 1) as u32)
            .into_iter()
            .map(|(row, col)| GridPoint {
                row,
                col: col as usize,
                pos: self.payload[row] as usize,
            })
            .collect()
    }

    /// Occurrence groups of node `v`, one per (Weiner link, child) pair.
    pub(crate) fn occurrence_groups(
        &self,
        fm: &FmIndex,
        v: BiRange,
        stats: &mut TraversalStats,
    ) -> Vec<OccGroup> {
        let links: Vec<_> = fm
            .enumerate_left(v)
            .into_iter()
            .map(|a| (a, fm.extend_left(v, a).fwd))
            .collect();
        let children: Vec<_> = fm
            .enumerate_right(v)
            .into_iter()
            .map(|b| (b, fm.extend_right(v, b).fwd))
            .collect();
        stats.max_extensions_per_node = stats
            .max_extensions_per_node
            .max(links.len() + children.len());

        let mut groups = Vec::new();
        let mut points = 0;
        for &(left, cols) in &links {
            let pts = self.report_area(v.fwd, cols);
            points += pts.len();
            // children partition v.fwd in row order
            let mut it = pts.iter().peekable();
            for &(right, range) in &children {
                let mut positions = Vec::new();
                while let Some(p) = it.next_if(|p| p.row < range.end) {
                    debug_assert!(range.start <= p.row);
                    positions.push(p.pos);
                }
                if !positions.is_empty() {
                    groups.push(OccGroup {
                        left,
                        right,
                        positions,
                    });
                }
            }
        }
        stats.grid_points += points;
        if points > v.len() {
            stats.grid_overflow_nodes += 1;
        }
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::SeqCollection;
    use crate::fmindex::MemIndex;

    #[test]
    fn area_matches_scan() {
        let idx =
            MemIndex::build(&SeqCollection::from_ascii_reads(["ACGTTAGGCA", "TTAGCAAC"]).unwrap())
                .unwrap();
        let fm = idx.fm();
        let grid = MemGrid::build(fm);
        let n = fm.len();
        for (r0, r1, c0, c1) in [(0, n, 0, n), (3, 17, 5, 20), (10, 11, 0, n), (4, 4, 0, n)] {
            let rows = SaRange::new(r0, r1.min(n));
            let cols = SaRange::new(c0, c1.min(n));
            let got = grid.report_area(rows, cols);
            let want: Vec<_> = rows
                .rows()
                .filter_map(|j| {
                    let c = fm.lf(j).unwrap();
                    cols.rows().contains(&c).then(|| GridPoint {
                        row: j,
                        col: c,
                        pos: fm.sa(j),
                    })
                })
                .collect();
            assert_eq!(got, want);
        }
    }
}
