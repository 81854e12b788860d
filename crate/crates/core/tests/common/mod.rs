#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum Σ weight·depth over every full binary tree whose leaves are the
/// given weights, found by trying every split of every leaf subset into a
/// left and a right subtree. A lone leaf sits at depth 1.
pub fn brute_force_min_cost(weights: &[u64]) -> u64 {
    assert!(!weights.is_empty() && weights.len() <= 16);
    if weights.len() == 1 {
        return weights[0];
    }
    let full = (1u32 << weights.len()) - 1;
    let mut memo = HashMap::new();
    subtree_cost(full, weights, &mut memo)
}

// Cost of the subtree holding exactly the leaves in `set`, measured from the
// subtree root: each merge adds the weight of everything below it.
fn subtree_cost(set: u32, weights: &[u64], memo: &mut HashMap<u32, u64>) -> u64 {
    if set.count_ones() == 1 {
        return 0;
    }
    if let Some(&c) = memo.get(&set) {
        return c;
    }
    let weight: u64 = (0..weights.len())
        .filter(|i| set & (1 << i) != 0)
        .map(|i| weights[i])
        .sum();
    let mut best = u64::MAX;
    // Enumerate proper nonempty subsets; halve by pinning the lowest leaf left.
    let low = set & set.wrapping_neg();
    let mut left = (set - 1) & set;
    while left > 0 {
        if left & low != 0 {
            let right = set & !left;
            let c = subtree_cost(left, weights, memo) + subtree_cost(right, weights, memo);
            best = best.min(c);
        }
        left = (left - 1) & set;
    }
    let cost = best + weight;
    memo.insert(set, cost);
    cost
}

pub const MSG1: &[u8] = b"ABAABDADAAWXXZXWXYZXXYPQPSQSPR";

#[derive(Debug, Clone, Copy)]
pub enum Shape {
    Uniform,
    Skewed,
    Constant,
    Locality,
}

pub const SHAPES: [Shape; 4] = [
    Shape::Uniform,
    Shape::Skewed,
    Shape::Constant,
    Shape::Locality,
];

/// Random input of the given shape.
pub fn generate(rng: &mut ChaCha8Rng, shape: Shape, len: usize) -> Vec<u8> {
    match shape {
        Shape::Uniform => (0..len).map(|_| rng.random()).collect(),
        Shape::Skewed => {
            let hot: u8 = rng.random();
            (0..len)
                .map(|_| match rng.random_range(0..100) {
                    0..=69 => hot,
                    70..=89 => hot.wrapping_add(rng.random_range(1..4)),
                    _ => rng.random(),
                })
                .collect()
        }
        Shape::Constant => vec![rng.random(); len],
        Shape::Locality => {
            let mut out = Vec::with_capacity(len);
            while out.len() < len {
                let base: u8 = rng.random();
                let spread = rng.random_range(1..=40u16);
                let run = rng.random_range(1..600);
                for _ in 0..run.min(len - out.len()) {
                    let step = rng.random_range(0..spread) as u8;
                    out.push(base.saturating_add(step));
                }
            }
            out
        }
    }
}

/// Lengths spread over 0..=65536, denser at the short end.
pub fn random_len(rng: &mut ChaCha8Rng) -> usize {
    match rng.random_range(0..20) {
        0 => 0,
        1 => 65_536,
        2..=9 => rng.random_range(1..256),
        10..=16 => rng.random_range(256..4096),
        _ => rng.random_range(4096..=65_536),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_files() -> Vec<std::path::PathBuf> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    files
}
