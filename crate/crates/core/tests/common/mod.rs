#![allow(dead_code)]

use dfa_decomp::families::random_dfa;
use dfa_decomp::Dfa;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64, n: usize, s: usize) -> Dfa {
    random_dfa(&mut ChaCha8Rng::seed_from_u64(seed), n, s).unwrap()
}

/// A random automaton restricted to its reachable part.
pub fn seeded_reachable(seed: u64, n: usize, s: usize) -> Dfa {
    seeded(seed, n, s).trim().0
}

/// Every word over `0..s` of length at most `max_len`.
pub fn words(s: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for c in 0..s {
                let mut w = out[i].clone();
                w.push(c);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Word over the named alphabet of `dfa`, rendered as symbol names.
pub fn names(dfa: &Dfa, w: &[usize]) -> Vec<String> {
    w.iter().map(|&c| dfa.symbol_name(c).to_string()).collect()
}
