//! Brute-force reference implementations used by the tests.
//!
//! Nothing here touches the suffix-array, BWT or succinct modules; every
//! answer comes from direct scans of the compressed text.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{BaseSym, HpSym};
use crate::memfinder::MemRecord;
use crate::rle::RlcCollection;

/// Run length at every text position, read off by walking the text and the
/// run array side by side. Sentinels and plain symbols get 1.
pub fn run_lengths(rlc: &RlcCollection) -> Vec<u32> {
    let mut cursor = rlc.runs().iter();
    rlc.text()
        .iter()
        .map(|s| {
            if s.is_meta() {
                *cursor.next().expect("run per metasymbol")
            } else {
                1
            }
        })
        .collect()
}

/// Homopolymer compression of one plain sequence, written out directly.
pub fn naive_compress(seq: &[BaseSym]) -> (Vec<HpSym>, Vec<u32>) {
    let mut text = Vec::new();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let mut j = i + 1;
        while j < seq.len() && seq[j] == seq[i] && !seq[i].is_sentinel() {
            j += 1;
        }
        let len = (j - i) as u32;
        let sym = HpSym::for_run(seq[i], len as usize);
        if sym.is_meta() {
            runs.push(len);
        }
        text.push(sym);
        i = j;
    }
    (text, runs)
}

/// Start and end (exclusive, sentinel excluded) of every string.
fn strings(text: &[HpSym]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut s = 0;
    for (p, c) in text.iter().enumerate() {
        if c.is_sentinel() {
            out.push((s, p));
            s = p + 1;
        }
    }
    out
}

fn owner(text: &[HpSym], p: usize) -> usize {
    text[..p].iter().filter(|c| c.is_sentinel()).count()
}

/// Sort key of the suffix at `p`: symbols up to the string end, with the
/// sentinel encoded as `(1, string id)` and symbols as `(code, 0)`.
fn suffix_key(text: &[HpSym], p: usize) -> Vec<(u8, usize)> {
    let id = owner(text, p);
    let mut key = Vec::new();
    for c in &text[p..] {
        if c.is_sentinel() {
            key.push((1, id));
            break;
        }
        key.push((c.code(), 0));
    }
    key
}

/// Suffix array by explicit key comparison.
pub fn naive_suffix_array(text: &[HpSym]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..text.len()).collect();
    sa.sort_by_cached_key(|&p| suffix_key(text, p));
    sa
}

/// BWT from a suffix array; the first suffix of a string gets its own
/// string's sentinel.
pub fn naive_bwt(text: &[HpSym], sa: &[usize]) -> Vec<HpSym> {
    sa.iter()
        .map(|&p| {
            if p == 0 || text[p - 1].is_sentinel() {
                HpSym::SENTINEL
            } else {
                text[p - 1]
            }
        })
        .collect()
}

/// Rows of `sa` whose suffix starts with `pattern` (no sentinels in
/// `pattern`), as a half-open interval.
pub fn naive_sa_range(text: &[HpSym], sa: &[usize], pattern: &[HpSym]) -> (usize, usize) {
    let rows: Vec<usize> = (0..sa.len())
        .filter(|&j| text[sa[j]..].starts_with(pattern))
        .collect();
    match (rows.first(), rows.last()) {
        (Some(&a), Some(&b)) => {
            assert_eq!(b - a + 1, rows.len(), "matching rows not contiguous");
            (a, b + 1)
        }
        _ => (0, 0),
    }
}

/// Text positions where `pattern` occurs without crossing a sentinel.
pub fn naive_occurrences(text: &[HpSym], pattern: &[HpSym]) -> Vec<usize> {
    if pattern.iter().any(|c| c.is_sentinel()) {
        return Vec::new();
    }
    (0..text.len())
        .filter(|&p| text[p..].starts_with(pattern))
        .collect()
}

/// Symbol before each occurrence, `$` at string starts.
pub fn left_contexts(text: &[HpSym], pattern: &[HpSym]) -> Vec<HpSym> {
    naive_occurrences(text, pattern)
        .into_iter()
        .map(|p| if p == 0 { HpSym::SENTINEL } else { text[p - 1] })
        .collect()
}

/// Symbol after each occurrence, `$` at string ends.
pub fn right_contexts(text: &[HpSym], pattern: &[HpSym]) -> Vec<HpSym> {
    naive_occurrences(text, pattern)
        .into_iter()
        .map(|p| text[p + pattern.len()])
        .collect()
}

/// Reverse complement of a compressed string.
pub fn reverse_complement(s: &[HpSym]) -> Vec<HpSym> {
    s.iter().rev().map(|c| c.complement()).collect()
}

pub fn naive_rank(seq: &[u32], c: u32, i: usize) -> usize {
    seq[..i].iter().filter(|&&x| x == c).count()
}

pub fn naive_select(seq: &[u32], c: u32, k: usize) -> Option<usize> {
    seq.iter()
        .enumerate()
        .filter(|(_, &x)| x == c)
        .nth(k)
        .map(|(p, _)| p)
}

/// `(symbol, rank before range, rank at range end)` for each distinct
/// symbol of `seq[i..j]`, ascending.
pub fn naive_range_list(seq: &[u32], i: usize, j: usize) -> Vec<(u32, usize, usize)> {
    let distinct: BTreeSet<u32> = seq[i..j].iter().copied().collect();
    distinct
        .into_iter()
        .map(|c| (c, naive_rank(seq, c, i), naive_rank(seq, c, j)))
        .collect()
}

pub fn naive_range_count(seq: &[u32], i: usize, j: usize, lo: u32, hi: u32) -> usize {
    seq[i..j].iter().filter(|&&x| lo <= x && x <= hi).count()
}

pub fn naive_range_report(seq: &[u32], i: usize, j: usize, lo: u32, hi: u32) -> Vec<(usize, u32)> {
    (i..j)
        .filter(|&p| lo <= seq[p] && seq[p] <= hi)
        .map(|p| (p, seq[p]))
        .collect()
}

/// Every substring (no sentinels) that is right-maximal when each string
/// end counts as a distinct context. Maps label to occurrence count.
pub fn right_maximal_substrings(text: &[HpSym]) -> BTreeMap<Vec<HpSym>, usize> {
    let mut contexts: BTreeMap<Vec<HpSym>, (usize, BTreeSet<(u8, usize)>)> = BTreeMap::new();
    for (s, e) in strings(text) {
        for i in s..=e {
            for j in i..=e {
                let ctx = if j == e { (1, j) } else { (text[j].code(), 0) };
                let entry = contexts.entry(text[i..j].to_vec()).or_default();
                entry.0 += 1;
                entry.1.insert(ctx);
            }
        }
    }
    contexts
        .into_iter()
        .filter(|(_, (n, ctx))| *n >= 2 && ctx.len() >= 2)
        .map(|(k, (n, _))| (k, n))
        .collect()
}

/// Proper ancestors of node `label` in the generalized suffix tree: its
/// right-maximal proper prefixes, shallowest first.
pub fn naive_ancestors(label: &[HpSym], nodes: &BTreeMap<Vec<HpSym>, usize>) -> Vec<Vec<HpSym>> {
    (0..label.len())
        .map(|k| label[..k].to_vec())
        .filter(|s| nodes.contains_key(s))
        .collect()
}

fn oriented(r: MemRecord) -> MemRecord {
    if r.id_a < r.id_b {
        r
    } else {
        MemRecord {
            id_a: r.id_b,
            start_a: r.start_b,
            id_b: r.id_a,
            start_b: r.start_a,
            exp_a: r.exp_b,
            exp_b: r.exp_a,
            ..r
        }
    }
}

/// All MEMs with length at least `min_len` and excess at most `max_excess`,
/// found by scanning every diagonal of every non-mate string pair. Output is
/// canonical, sorted and duplicate-free.
pub fn naive_mems(rlc: &RlcCollection, min_len: usize, max_excess: u32) -> Vec<MemRecord> {
    let text = rlc.text();
    let runs = run_lengths(rlc);
    let spans = strings(text);
    // expanded offset of each position inside its string
    let mut exp = vec![0u64; text.len() + 1];
    for &(s, e) in &spans {
        let mut acc = 0;
        for p in s..=e {
            exp[p] = acc;
            acc += runs[p] as u64;
        }
    }
    let record = |x: usize, i: usize, y: usize, j: usize, len: usize| {
        let (sx, sy) = (spans[x].0, spans[y].0);
        let excess = (0..len)
            .map(|t| runs[sx + i + t].abs_diff(runs[sy + j + t]))
            .max()
            .unwrap_or(0);
        let span = |s: usize, k: usize| (exp[s + k], exp[s + k + len]);
        MemRecord {
            id_a: x,
            start_a: i,
            id_b: y,
            start_b: j,
            len,
            excess,
            exp_a: span(sx, i),
            exp_b: span(sy, j),
        }
    };
    let mirror = |r: MemRecord| {
        let n = |id: usize| spans[id].1 - spans[id].0;
        record(
            r.id_a ^ 1,
            n(r.id_a) - r.start_a - r.len,
            r.id_b ^ 1,
            n(r.id_b) - r.start_b - r.len,
            r.len,
        )
    };

    let mut out = Vec::new();
    for x in 0..spans.len() {
        for y in x + 1..spans.len() {
            if y == x ^ 1 {
                continue;
            }
            let a = &text[spans[x].0..spans[x].1];
            let b = &text[spans[y].0..spans[y].1];
            for delta in -(a.len() as isize - 1)..b.len() as isize {
                let mut i = (-delta).max(0) as usize;
                let mut run_start = None;
                loop {
                    let j = (i as isize + delta) as usize;
                    let inside = i < a.len() && j < b.len();
                    if inside && a[i] == b[j] {
                        run_start.get_or_insert(i);
                    } else if let Some(s) = run_start.take() {
                        let len = i - s;
                        if len >= min_len {
                            let r = record(x, s, y, (s as isize + delta) as usize, len);
                            if r.excess <= max_excess {
                                out.push(r);
                            }
                        }
                    }
                    if !inside {
                        break;
                    }
                    i += 1;
                }
            }
        }
    }
    let key = |r: &MemRecord| (r.id_a, r.id_b, r.start_a, r.start_b);
    let mut out: Vec<MemRecord> = out
        .into_iter()
        .map(|r| {
            let m = oriented(mirror(r));
            if key(&m) < key(&r) {
                m
            } else {
                r
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
