//! Random read collections shaped like noisy long reads: a genome built
//! from homopolymer runs, reads cut from it on either strand, and run
//! lengths perturbed by up to `noise`.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rlmem::{MemIndex, SeqCollection};

pub const BASES: [u8; 4] = *b"ACGT";

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Runs `(base, length)` with lengths in `1..=6`, adjacent bases distinct.
pub fn random_genome(rng: &mut StdRng, min_bases: usize) -> Vec<(u8, usize)> {
    let mut runs: Vec<(u8, usize)> = Vec::new();
    let mut total = 0;
    while total < min_bases {
        let base = loop {
            let b = BASES[rng.random_range(0..4)];
            if runs.last().is_none_or(|r| r.0 != b) {
                break b;
            }
        };
        let len = if rng.random_bool(0.5) {
            1
        } else {
            rng.random_range(2..=6)
        };
        runs.push((base, len));
        total += len;
    }
    runs
}

fn expand(runs: &[(u8, usize)]) -> Vec<u8> {
    runs.iter()
        .flat_map(|&(b, n)| std::iter::repeat_n(b, n))
        .collect()
}

pub fn revcomp(s: &[u8]) -> Vec<u8> {
    s.iter()
        .rev()
        .map(|&b| match b {
            b'A' => b'T',
            b'C' => b'G',
            b'G' => b'C',
            _ => b'A',
        })
        .collect()
}

/// One read of 10..=60 bases from a random window, with each run length
/// shifted by up to `noise` (never below 1) and a random strand.
pub fn random_read(rng: &mut StdRng, genome: &[(u8, usize)], noise: usize) -> Vec<u8> {
    let target = rng.random_range(10..=60);
    let first = rng.random_range(0..genome.len());
    let mut runs = Vec::new();
    let mut total = 0;
    let mut i = first;
    while total < target {
        let (b, mut n) = genome[i % genome.len()];
        if noise > 0 && rng.random_bool(0.3) {
            let d = rng.random_range(1..=noise);
            n = if rng.random_bool(0.5) {
                n + d
            } else {
                n.saturating_sub(d).max(1)
            };
        }
        let n = n.min(target - total);
        runs.push((b, n));
        total += n;
        i += 1;
    }
    let read = expand(&runs);
    if rng.random_bool(0.5) {
        revcomp(&read)
    } else {
        read
    }
}

/// `2..=max_reads` reads from one genome.
pub fn random_reads(rng: &mut StdRng, max_reads: usize, noise: usize) -> Vec<Vec<u8>> {
    let size = rng.random_range(40..=200);
    let genome = random_genome(rng, size);
    let n = rng.random_range(2..=max_reads);
    (0..n).map(|_| random_read(rng, &genome, noise)).collect()
}

pub fn collection(reads: &[Vec<u8>]) -> SeqCollection {
    SeqCollection::from_ascii_reads(reads).expect("valid reads")
}

pub fn index(reads: &[Vec<u8>]) -> MemIndex {
    MemIndex::build(&collection(reads)).expect("index builds")
}
