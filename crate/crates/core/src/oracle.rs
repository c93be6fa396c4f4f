//! Brute-force ground truth.
//!
//! Everything here is deliberately naive: S.P. partitions come from
//! enumerating every set partition, final-state separation from trying every
//! pair of block subsets, and undecomposability from trying every small
//! candidate automaton. The lattice-based code in [`crate::partition`] and
//! [`crate::decompose`] is checked against these.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::decompose::{verify, DecompError, Decomposition, DecompositionKind, Verdict};
use crate::dfa::{Dfa, StateId};
use crate::partition::{is_sp, Partition, SeparationWitness};

/// Largest state count [`brute_sp_partitions`] accepts (Bell(9) = 21147).
pub const MAX_BRUTE_STATES: usize = 9;
/// Largest total block count [`brute_separates_finals`] accepts.
pub const MAX_SEPARATION_BLOCKS: usize = 20;
/// Candidate pairs beyond this are refused by [`certify_undecomposable`].
pub const FEASIBILITY_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{states} states exceed the brute-force bound of {limit}")]
    StateBound { states: usize, limit: usize },
    #[error("{blocks} blocks exceed the exhaustive separation bound of {limit}")]
    SizeLimit { blocks: usize, limit: usize },
    #[error("search space of about {estimate} candidate pairs exceeds the limit of {limit}")]
    Infeasible { estimate: u128, limit: u128 },
    #[error("budget bounds must be at least 1")]
    InvalidBudget,
    #[error("the oracle certifies only AI, SI and wAI, not {0}")]
    UnsupportedKind(DecompositionKind),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == n {
            out.push(labels.clone());
            return;
        }
        let limit = if labels.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            labels.push(b);
            rec(labels, n, max.max(b), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, 0, &mut out);
    out
}

/// All S.P. partitions of `a`, by testing every partition of its states.
pub fn brute_sp_partitions(a: &Dfa) -> Result<Vec<Partition>, OracleError> {
    if a.num_states() > MAX_BRUTE_STATES {
        return Err(OracleError::StateBound {
            states: a.num_states(),
            limit: MAX_BRUTE_STATES,
        });
    }
    let mut found: Vec<Partition> = set_partitions(a.num_states())
        .iter()
        .map(|labels| Partition::from_labels(labels))
        .filter(|p| is_sp(a, p))
        .collect();
    found.sort();
    Ok(found)
}

/// Final-state separation by trying every pair of block subsets.
pub fn brute_separates_finals(
    p1: &Partition,
    p2: &Partition,
    finals: &[bool],
) -> Result<Option<SeparationWitness>, OracleError> {
    let (b1, b2) = (p1.num_blocks(), p2.num_blocks());
    if b1 + b2 > MAX_SEPARATION_BLOCKS {
        return Err(OracleError::SizeLimit {
            blocks: b1 + b2,
            limit: MAX_SEPARATION_BLOCKS,
        });
    }
    for m1 in 0u32..(1 << b1) {
        for m2 in 0u32..(1 << b2) {
            let hit = (0..p1.len()).all(|q| {
                let inside = m1 & (1 << p1.block_of(q)) != 0 && m2 & (1 << p2.block_of(q)) != 0;
                inside == finals[q]
            });
            if hit {
                let bits = |m: u32, b: usize| (0..b).filter(|i| m & (1 << i) != 0).collect();
                return Ok(Some(SeparationWitness {
                    blocks_from_1: bits(m1, b1),
                    blocks_from_2: bits(m2, b2),
                }));
            }
        }
    }
    Ok(None)
}

/// Minimality by brute force: every state is reachable and every two states
/// disagree on some word of length below `|K|`.
pub fn brute_is_minimal(a: &Dfa) -> bool {
    if a.has_unreachable_states() {
        return false;
    }
    let n = a.num_states();
    let s = a.num_symbols();
    // All words of length < n, in length-lexicographic order.
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = 0;
    for _ in 1..n {
        let end = words.len();
        for i in frontier..end {
            for c in 0..s {
                let mut w = words[i].clone();
                w.push(c);
                words.push(w);
            }
        }
        frontier = end;
    }
    let signature = |q: StateId| -> Vec<bool> {
        words
            .iter()
            .map(|w| a.is_accepting(a.run_from(q, w)))
            .collect()
    };
    let mut seen = std::collections::HashSet::new();
    (0..n).all(|q| seen.insert(signature(q)))
}

/// Bounds for the exhaustive candidate search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_states_1: usize,
    pub max_states_2: usize,
    /// Enumerate one representative per isomorphism class only.
    pub canonical_only: bool,
}

impl SearchBudget {
    pub fn new(max_states_1: usize, max_states_2: usize) -> Result<Self, OracleError> {
        if max_states_1 == 0 || max_states_2 == 0 {
            return Err(OracleError::InvalidBudget);
        }
        Ok(SearchBudget {
            max_states_1,
            max_states_2,
            canonical_only: true,
        })
    }

    pub fn with_canonical_only(self, canonical_only: bool) -> Self {
        SearchBudget {
            canonical_only,
            ..self
        }
    }
}

/// Transition tables (row-major, `k·s` entries) of every `k`-state automaton
/// with initial state 0 whose states are all reachable and numbered in BFS
/// order. Each isomorphism class of such automata appears exactly once.
pub fn canonical_tables(k: usize, s: usize) -> Vec<Vec<StateId>> {
    fn rec(pos: usize, max_seen: usize, k: usize, s: usize, table: &mut Vec<StateId>, out: &mut Vec<Vec<StateId>>) {
        if pos == k * s {
            if max_seen + 1 == k {
                out.push(table.clone());
            }
            return;
        }
        if pos % s == 0 && pos / s > max_seen {
            return;
        }
        for t in 0..=(max_seen + 1).min(k - 1) {
            table[pos] = t;
            rec(pos + 1, max_seen.max(t), k, s, table, out);
        }
    }
    let mut out = Vec::new();
    if k > 0 && s > 0 {
        rec(0, 0, k, s, &mut vec![0; k * s], &mut out);
    }
    out
}

/// `canonical_tables(k, s).len()` without building the tables.
pub fn count_canonical_tables(k: usize, s: usize) -> u128 {
    if k == 0 || s == 0 {
        return 0;
    }
    fn rec(pos: usize, max_seen: usize, k: usize, s: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
        if pos == k * s {
            return u128::from(max_seen + 1 == k);
        }
        if pos % s == 0 && pos / s > max_seen {
            return 0;
        }
        if let Some(&c) = memo.get(&(pos, max_seen)) {
            return c;
        }
        let c = (0..=(max_seen + 1).min(k - 1))
            .map(|t| rec(pos + 1, max_seen.max(t), k, s, memo))
            .sum();
        memo.insert((pos, max_seen), c);
        c
    }
    rec(0, 0, k, s, &mut HashMap::new())
}

/// BFS-canonical form of the reachable part: the transition table and
/// accepting mask after renumbering states in order of discovery.
pub fn canonical_form(a: &Dfa) -> (Vec<StateId>, Vec<bool>) {
    let mut number = vec![usize::MAX; a.num_states()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([a.initial()]);
    number[a.initial()] = 0;
    order.push(a.initial());
    while let Some(q) = queue.pop_front() {
        for c in 0..a.num_symbols() {
            let r = a.next(q, c);
            if number[r] == usize::MAX {
                number[r] = order.len();
                order.push(r);
                queue.push_back(r);
            }
        }
    }
    let table = order
        .iter()
        .flat_map(|&q| (0..a.num_symbols()).map(move |c| (q, c)))
        .map(|(q, c)| number[a.next(q, c)])
        .collect();
    let accepting = order.iter().map(|&q| a.is_accepting(q)).collect();
    (table, accepting)
}

fn pow(base: usize, exp: usize) -> u128 {
    (base as u128).saturating_pow(exp as u32)
}

fn structures_of_size(k: usize, s: usize, canonical_only: bool) -> u128 {
    if canonical_only {
        count_canonical_tables(k, s)
    } else {
        pow(k, s * k).saturating_mul(k as u128)
    }
}

/// Upper bound on the candidate pairs examined for `kind` over an alphabet
/// of `s` symbols: `Σₖ Σₗ (kˢᵏ·k)·(lˢˡ·l)`, times `2ᵏ·2ˡ` for AI. With
/// `canonical_only` the per-size factor is the exact number of canonical
/// transition structures instead.
pub fn estimate_search_space(s: usize, budget: &SearchBudget, kind: DecompositionKind) -> u128 {
    let side = |max: usize| -> u128 {
        (1..=max)
            .map(|k| {
                let base = structures_of_size(k, s, budget.canonical_only);
                if kind == DecompositionKind::Ai {
                    base.saturating_mul(pow(2, k))
                } else {
                    base
                }
            })
            .fold(0u128, u128::saturating_add)
    };
    side(budget.max_states_1).saturating_mul(side(budget.max_states_2))
}

/// Exhaustion certificate: no pair within the bounds decomposes the
/// automaton nontrivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: DecompositionKind,
    /// Effective bounds, capped at `|K| − 1`.
    pub max_states_1: usize,
    pub max_states_2: usize,
    pub candidates_examined: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Undecomposable(Certificate),
    Decomposable(Decomposition),
}

fn candidates(a: &Dfa, k: usize, kind: DecompositionKind, canonical_only: bool) -> Vec<Dfa> {
    let s = a.num_symbols();
    let states: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let structures: Vec<(Vec<StateId>, StateId)> = if canonical_only {
        canonical_tables(k, s).into_iter().map(|t| (t, 0)).collect()
    } else {
        let total = pow(k, s * k) as usize;
        (0..total)
            .flat_map(|code| {
                let mut code = code;
                let table: Vec<StateId> = (0..k * s)
                    .map(|_| {
                        let t = code % k;
                        code /= k;
                        t
                    })
                    .collect();
                (0..k).map(move |init| (table.clone(), init))
            })
            .collect()
    };
    let accepting_sets: Vec<Vec<StateId>> = if kind == DecompositionKind::Ai {
        (0u32..(1 << k))
            .map(|m| (0..k).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    } else {
        vec![vec![]]
    };
    let mut out = Vec::with_capacity(structures.len() * accepting_sets.len());
    for (table, init) in &structures {
        for acc in &accepting_sets {
            out.push(
                Dfa::new(
                    format!("cand{k}"),
                    states.iter().cloned(),
                    a.alphabet().to_vec(),
                    table.chunks(s).map(<[StateId]>::to_vec).collect(),
                    *init,
                    acc.iter().copied(),
                )
                .expect("enumerated candidates are complete"),
            );
        }
    }
    out
}

/// Searches every candidate pair `(A₁, A₂)` with `|K₁| ≤ max₁`,
/// `|K₂| ≤ max₂` (both capped at `|K| − 1`, so every candidate is
/// nontrivial) for a `kind`-decomposition of `a`.
///
/// Sizes are tried in lexicographic order, then candidates in enumeration
/// order; the first verified pair in that order is returned regardless of
/// how the work is scheduled.
pub fn certify_undecomposable(
    kind: DecompositionKind,
    a: &Dfa,
    budget: &SearchBudget,
) -> Result<Certification, OracleError> {
    if !matches!(
        kind,
        DecompositionKind::Ai | DecompositionKind::Si | DecompositionKind::Wai
    ) {
        return Err(OracleError::UnsupportedKind(kind));
    }
    if kind.needs_reachable() && a.has_unreachable_states() {
        // Surface the same error verify would.
        verify(kind, a, a, a)?;
    }
    let cap = a.num_states() - 1;
    let effective = SearchBudget {
        max_states_1: budget.max_states_1.min(cap),
        max_states_2: budget.max_states_2.min(cap),
        canonical_only: budget.canonical_only,
    };
    let estimate = estimate_search_space(a.num_symbols(), &effective, kind);
    if estimate > FEASIBILITY_LIMIT {
        return Err(OracleError::Infeasible {
            estimate,
            limit: FEASIBILITY_LIMIT,
        });
    }
    let per_size = |max: usize| -> Vec<Vec<Dfa>> {
        (1..=max)
            .map(|k| candidates(a, k, kind, effective.canonical_only))
            .collect()
    };
    let side1 = per_size(effective.max_states_1);
    let side2 = per_size(effective.max_states_2);
    let mut examined: u128 = 0;
    for c1 in &side1 {
        for c2 in &side2 {
            let found = c1.par_iter().find_map_first(|x| {
                c2.iter().find_map(|y| match verify(kind, a, x, y) {
                    Ok(Verdict::Verified(d)) => Some(Ok(d)),
                    Ok(Verdict::Refuted(_)) => None,
                    Err(e) => Some(Err(e)),
                })
            });
            match found {
                Some(Ok(d)) => return Ok(Certification::Decomposable(d)),
                Some(Err(e)) => return Err(e.into()),
                None => examined += (c1.len() * c2.len()) as u128,
            }
        }
    }
    Ok(Certification::Undecomposable(Certificate {
        kind,
        max_states_1: effective.max_states_1,
        max_states_2: effective.max_states_2,
        candidates_examined: examined,
    }))
}
