//! Complete deterministic finite automata.
//!
//! A [`Dfa`] owns a dense transition table indexed by `state * |alphabet| +
//! symbol`. States and symbols carry opaque names for I/O; every algorithm in
//! the crate works on the dense indices. Values are immutable once built.

use std::borrow::Cow;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::partition::Partition;

/// Dense index of a state.
pub type StateId = usize;
/// Dense index of an alphabet symbol.
pub type SymbolId = usize;

/// Characters that may not appear in state names or symbols. They are
/// reserved by the text format and the partition literal syntax.
const RESERVED: &[char] = &['#', ',', '|', '{', '}'];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DfaError {
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate state name '{0}'")]
    DuplicateState(String),
    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(String),
    #[error("invalid name '{0}': names must be non-empty and free of whitespace and #,|{{}}")]
    InvalidName(String),
    #[error("state index {state} out of range (automaton has {len} states)")]
    StateOutOfRange { state: StateId, len: usize },
    #[error("transition table row for state {state} has {found} entries, expected {expected}")]
    RowLength {
        state: StateId,
        expected: usize,
        found: usize,
    },
    #[error("transition table has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("symbol '{0}' is not in the alphabet")]
    UnknownSymbol(String),
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("partition covers {found} states but the automaton has {expected}")]
    PartitionSize { expected: usize, found: usize },
    #[error("partition does not have the substitution property")]
    NotSubstitutionProperty,
    #[error("block index {block} out of range (partition has {len} blocks)")]
    BlockOutOfRange { block: usize, len: usize },
}

fn check_name(name: &str) -> Result<(), DfaError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(DfaError::InvalidName(name.to_string()));
    }
    Ok(())
}

/// A complete DFA `(K, Σ, δ, q₀, F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    name: String,
    states: Vec<String>,
    alphabet: Vec<String>,
    delta: Vec<StateId>,
    initial: StateId,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds an automaton from a full transition table (`table[q][a]`).
    pub fn new<S, T>(
        name: impl Into<String>,
        states: impl IntoIterator<Item = S>,
        alphabet: impl IntoIterator<Item = T>,
        table: Vec<Vec<StateId>>,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, DfaError>
    where
        S: Into<String>,
        T: Into<String>,
    {
        let name = name.into();
        check_name(&name)?;
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(DfaError::NoStates);
        }
        if alphabet.is_empty() {
            return Err(DfaError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for s in &states {
            check_name(s)?;
            if !seen.insert(s.as_str()) {
                return Err(DfaError::DuplicateState(s.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &alphabet {
            check_name(a)?;
            if !seen.insert(a.as_str()) {
                return Err(DfaError::DuplicateSymbol(a.clone()));
            }
        }
        let n = states.len();
        if table.len() != n {
            return Err(DfaError::RowCount {
                expected: n,
                found: table.len(),
            });
        }
        let mut delta = Vec::with_capacity(n * alphabet.len());
        for (q, row) in table.into_iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(DfaError::RowLength {
                    state: q,
                    expected: alphabet.len(),
                    found: row.len(),
                });
            }
            for target in row {
                if target >= n {
                    return Err(DfaError::StateOutOfRange {
                        state: target,
                        len: n,
                    });
                }
                delta.push(target);
            }
        }
        if initial >= n {
            return Err(DfaError::StateOutOfRange {
                state: initial,
                len: n,
            });
        }
        let mut mask = vec![false; n];
        for q in accepting {
            if q >= n {
                return Err(DfaError::StateOutOfRange { state: q, len: n });
            }
            mask[q] = true;
        }
        Ok(Dfa {
            name,
            states,
            alphabet,
            delta,
            initial,
            accepting: mask,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Returns a copy carrying a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Result<Dfa, DfaError> {
        let name = name.into();
        check_name(&name)?;
        Ok(Dfa {
            name,
            ..self.clone()
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn symbol_name(&self, a: SymbolId) -> &str {
        &self.alphabet[a]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<SymbolId> {
        self.alphabet.iter().position(|s| s == symbol)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    #[inline]
    pub fn next(&self, q: StateId, a: SymbolId) -> StateId {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_mask(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accepting_states(&self) -> Vec<StateId> {
        (0..self.num_states()).filter(|&q| self.accepting[q]).collect()
    }

    /// The transition table as rows, one per state.
    pub fn table(&self) -> Vec<Vec<StateId>> {
        self.delta
            .chunks(self.alphabet.len())
            .map(<[StateId]>::to_vec)
            .collect()
    }

    /// Structural identity of this automaton, stable within a process.
    pub fn fingerprint(&self) -> u64 {
        let mut hasher = DefaultHasher::new();
        self.hash(&mut hasher);
        hasher.finish()
    }

    /// Translates symbol names into indices.
    pub fn symbols<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<SymbolId>, DfaError> {
        word.iter()
            .map(|s| {
                self.symbol_index(s.as_ref())
                    .ok_or_else(|| DfaError::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect()
    }

    /// Splits a textual word into symbols. Whitespace-separated tokens are
    /// used when the text contains whitespace, otherwise each character is
    /// one symbol.
    pub fn word(&self, text: &str) -> Result<Vec<SymbolId>, DfaError> {
        if text.chars().any(char::is_whitespace) {
            let tokens: Vec<&str> = text.split_whitespace().collect();
            self.symbols(&tokens)
        } else {
            let chars: Vec<String> = text.chars().map(String::from).collect();
            self.symbols(&chars)
        }
    }

    /// Renders a word of symbol indices, space-separated when any symbol is
    /// longer than one character.
    pub fn format_word(&self, word: &[SymbolId]) -> String {
        let single = word.iter().all(|&a| self.alphabet[a].chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&a| self.alphabet[a].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn run_from(&self, q: StateId, word: &[SymbolId]) -> StateId {
        word.iter().fold(q, |q, &a| self.next(q, a))
    }

    /// `δ(q₀, w)` for a word given as symbol indices.
    pub fn run_ids(&self, word: &[SymbolId]) -> StateId {
        self.run_from(self.initial, word)
    }

    /// `δ(q₀, w)` for a word given as symbol names.
    pub fn run<S: AsRef<str>>(&self, word: &[S]) -> Result<StateId, DfaError> {
        Ok(self.run_ids(&self.symbols(word)?))
    }

    pub fn accepts_ids(&self, word: &[SymbolId]) -> bool {
        self.accepting[self.run_ids(word)]
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> Result<bool, DfaError> {
        Ok(self.accepting[self.run(word)?])
    }

    /// Convenience wrapper over [`Dfa::word`] and [`Dfa::accepts_ids`].
    pub fn accepts_str(&self, text: &str) -> Result<bool, DfaError> {
        Ok(self.accepts_ids(&self.word(text)?))
    }

    /// Reachability mask from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for a in 0..self.num_symbols() {
                let r = self.next(q, a);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    pub fn has_unreachable_states(&self) -> bool {
        self.reachable().iter().any(|&r| !r)
    }

    /// Drops unreachable states, keeping the relative order of the rest.
    /// The returned vector maps old indices to new ones.
    pub fn trim(&self) -> (Dfa, Vec<Option<StateId>>) {
        let reach = self.reachable();
        let mut index = vec![None; self.num_states()];
        let mut kept = Vec::new();
        for q in 0..self.num_states() {
            if reach[q] {
                index[q] = Some(kept.len());
                kept.push(q);
            }
        }
        let dfa = Dfa {
            name: self.name.clone(),
            states: kept.iter().map(|&q| self.states[q].clone()).collect(),
            alphabet: self.alphabet.clone(),
            delta: kept
                .iter()
                .flat_map(|&q| {
                    (0..self.num_symbols()).map(move |a| (q, a))
                })
                .map(|(q, a)| index[self.next(q, a)].expect("successor of a reachable state"))
                .collect(),
            initial: index[self.initial].expect("initial state is reachable"),
            accepting: kept.iter().map(|&q| self.accepting[q]).collect(),
        };
        (dfa, index)
    }

    /// Returns the same automaton with its alphabet listed in `order`.
    pub fn with_alphabet_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Dfa, DfaError> {
        if order.len() != self.num_symbols() {
            return Err(DfaError::AlphabetMismatch);
        }
        let perm: Vec<SymbolId> = order
            .iter()
            .map(|s| self.symbol_index(s.as_ref()).ok_or(DfaError::AlphabetMismatch))
            .collect::<Result<_, _>>()?;
        let mut delta = Vec::with_capacity(self.delta.len());
        for q in 0..self.num_states() {
            for &a in &perm {
                delta.push(self.next(q, a));
            }
        }
        Ok(Dfa {
            alphabet: perm.iter().map(|&a| self.alphabet[a].clone()).collect(),
            delta,
            ..self.clone()
        })
    }

    /// Same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = StateId>) -> Result<Dfa, DfaError> {
        let n = self.num_states();
        let mut mask = vec![false; n];
        for q in accepting {
            if q >= n {
                return Err(DfaError::StateOutOfRange { state: q, len: n });
            }
            mask[q] = true;
        }
        Ok(Dfa {
            accepting: mask,
            ..self.clone()
        })
    }
}

/// Brings `other` onto the alphabet order of `reference`.
pub(crate) fn align<'a>(reference: &Dfa, other: &'a Dfa) -> Result<Cow<'a, Dfa>, DfaError> {
    if reference.alphabet == other.alphabet {
        return Ok(Cow::Borrowed(other));
    }
    other
        .with_alphabet_order(&reference.alphabet)
        .map(Cow::Owned)
}

/// A total map from the states of one automaton to the states of another.
/// Entries are `None` for source states the map says nothing about (the
/// unreachable states dropped by [`minimize`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMap {
    targets: Vec<Option<StateId>>,
}

impl StateMap {
    pub fn new(targets: Vec<Option<StateId>>) -> Self {
        StateMap { targets }
    }

    pub fn get(&self, q: StateId) -> Option<StateId> {
        self.targets.get(q).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Whether every source state has an image.
    pub fn is_total(&self) -> bool {
        self.targets.iter().all(Option::is_some)
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, Option<StateId>)> + '_ {
        self.targets.iter().copied().enumerate()
    }
}

/// Reachable configurations of a product of automata sharing an alphabet,
/// each with a shortest access word (BFS order, symbols in alphabet order).
pub(crate) struct ProductGraph {
    pub tuples: Vec<Vec<StateId>>,
    parent: Vec<Option<(usize, SymbolId)>>,
}

impl ProductGraph {
    /// All automata must already share the alphabet order of the first.
    pub fn explore(dfas: &[&Dfa]) -> ProductGraph {
        let symbols = dfas[0].num_symbols();
        let start: Vec<StateId> = dfas.iter().map(|d| d.initial()).collect();
        let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
        let mut tuples = vec![start.clone()];
        let mut parent = vec![None];
        index.insert(start, 0);
        let mut head = 0;
        while head < tuples.len() {
            for a in 0..symbols {
                let succ: Vec<StateId> = tuples[head]
                    .iter()
                    .zip(dfas)
                    .map(|(&q, d)| d.next(q, a))
                    .collect();
                if !index.contains_key(&succ) {
                    index.insert(succ.clone(), tuples.len());
                    tuples.push(succ);
                    parent.push(Some((head, a)));
                }
            }
            head += 1;
        }
        ProductGraph { tuples, parent }
    }

    pub fn word(&self, mut i: usize) -> Vec<SymbolId> {
        let mut word = Vec::new();
        while let Some((p, a)) = self.parent[i] {
            word.push(a);
            i = p;
        }
        word.reverse();
        word
    }
}

/// The parallel connection `A₁ || A₂`: product states, accepting `F₁ × F₂`.
/// State `(p, q)` has index `p * |K₂| + q` and is named `p:q`.
pub fn parallel_connection(a1: &Dfa, a2: &Dfa) -> Result<Dfa, DfaError> {
    let a2 = align(a1, a2)?;
    let (n1, n2) = (a1.num_states(), a2.num_states());
    let mut states = Vec::with_capacity(n1 * n2);
    let mut table = Vec::with_capacity(n1 * n2);
    let mut accepting = Vec::new();
    for p in 0..n1 {
        for q in 0..n2 {
            states.push(format!("{}:{}", a1.state_name(p), a2.state_name(q)));
            table.push(
                (0..a1.num_symbols())
                    .map(|a| a1.next(p, a) * n2 + a2.next(q, a))
                    .collect(),
            );
            if a1.is_accepting(p) && a2.is_accepting(q) {
                accepting.push(p * n2 + q);
            }
        }
    }
    Dfa::new(
        format!("{}_x_{}", a1.name(), a2.name()),
        states,
        a1.alphabet().to_vec(),
        table,
        a1.initial() * n2 + a2.initial(),
        accepting,
    )
}

/// A shortest word on which the two automata disagree, if any.
pub fn distinguishing_word(a: &Dfa, b: &Dfa) -> Result<Option<Vec<SymbolId>>, DfaError> {
    let b = align(a, b)?;
    let graph = ProductGraph::explore(&[a, &b]);
    Ok(graph
        .tuples
        .iter()
        .position(|t| a.is_accepting(t[0]) != b.is_accepting(t[1]))
        .map(|i| graph.word(i)))
}

/// Language equivalence by reachability over the pair graph.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool, DfaError> {
    Ok(distinguishing_word(a, b)?.is_none())
}

/// All triples `(δ(q₀,w), δ₁(q₁,w), δ₂(q₂,w))` over all words `w`.
pub fn reachable_triples(
    a: &Dfa,
    a1: &Dfa,
    a2: &Dfa,
) -> Result<BTreeSet<(StateId, StateId, StateId)>, DfaError> {
    let a1 = align(a, a1)?;
    let a2 = align(a, a2)?;
    let graph = ProductGraph::explore(&[a, &a1, &a2]);
    Ok(graph.tuples.iter().map(|t| (t[0], t[1], t[2])).collect())
}

/// Name of a block: member state names joined with `+`, in index order.
pub(crate) fn block_name(dfa: &Dfa, members: &[StateId]) -> String {
    members
        .iter()
        .map(|&q| dfa.state_name(q))
        .collect::<Vec<_>>()
        .join("+")
}

/// Quotient automaton on the blocks of an S.P. partition:
/// `δ([q], a) = [δ(q, a)]`, initial `[q₀]`, accepting `accepting_blocks`.
pub fn quotient(
    dfa: &Dfa,
    pi: &Partition,
    accepting_blocks: &BTreeSet<usize>,
) -> Result<Dfa, DfaError> {
    if pi.len() != dfa.num_states() {
        return Err(DfaError::PartitionSize {
            expected: dfa.num_states(),
            found: pi.len(),
        });
    }
    if !crate::partition::is_sp(dfa, pi) {
        return Err(DfaError::NotSubstitutionProperty);
    }
    if let Some(&b) = accepting_blocks.iter().find(|&&b| b >= pi.num_blocks()) {
        return Err(DfaError::BlockOutOfRange {
            block: b,
            len: pi.num_blocks(),
        });
    }
    let blocks = pi.blocks();
    let states: Vec<String> = blocks.iter().map(|b| block_name(dfa, b)).collect();
    let table = blocks
        .iter()
        .map(|b| {
            (0..dfa.num_symbols())
                .map(|a| pi.block_of(dfa.next(b[0], a)))
                .collect()
        })
        .collect();
    Dfa::new(
        format!("{}_q{}", dfa.name(), pi.num_blocks()),
        states,
        dfa.alphabet().to_vec(),
        table,
        pi.block_of(dfa.initial()),
        accepting_blocks.iter().copied(),
    )
}

/// Myhill–Nerode equivalence of a DFA by Moore-style refinement.
pub fn nerode_partition(dfa: &Dfa) -> Partition {
    let n = dfa.num_states();
    let mut current = Partition::from_labels(
        &dfa.accepting_mask()
            .iter()
            .map(|&f| usize::from(f))
            .collect::<Vec<_>>(),
    );
    loop {
        let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
        let labels: Vec<usize> = (0..n)
            .map(|q| {
                let mut sig = Vec::with_capacity(dfa.num_symbols() + 1);
                sig.push(current.block_of(q));
                sig.extend((0..dfa.num_symbols()).map(|a| current.block_of(dfa.next(q, a))));
                let next = signatures.len();
                *signatures.entry(sig).or_insert(next)
            })
            .collect();
        let refined = Partition::from_labels(&labels);
        if refined.num_blocks() == current.num_blocks() {
            return refined;
        }
        current = refined;
    }
}

/// Minimal DFA for `L(A)` plus the map `f` from reachable states of `A`.
///
/// Unreachable states are dropped first, then Nerode-equivalent states are
/// merged. Merged states are named by joining their member names with `+`,
/// so an already-minimal automaton comes back unchanged.
pub fn minimize(dfa: &Dfa) -> (Dfa, StateMap) {
    let (trimmed, index) = dfa.trim();
    let nerode = nerode_partition(&trimmed);
    let accepting: BTreeSet<usize> = (0..trimmed.num_states())
        .filter(|&q| trimmed.is_accepting(q))
        .map(|q| nerode.block_of(q))
        .collect();
    let min = quotient(&trimmed, &nerode, &accepting)
        .expect("Nerode equivalence has the substitution property")
        .renamed(format!("{}_min", dfa.name()))
        .expect("derived name is valid");
    let map = index
        .iter()
        .map(|slot| slot.map(|q| nerode.block_of(q)))
        .collect();
    (min, StateMap::new(map))
}

/// Whether the automaton has no unreachable states and no two equivalent
/// states.
pub fn is_minimal(dfa: &Dfa) -> bool {
    !dfa.has_unreachable_states() && nerode_partition(dfa).is_zero()
}

/// Whether the reachable parts of two automata are equal up to a renaming of
/// states.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    let Ok(b) = align(a, b) else {
        return false;
    };
    let (a, _) = a.trim();
    let (b, _) = b.trim();
    if a.num_states() != b.num_states() {
        return false;
    }
    let mut map = vec![None; a.num_states()];
    let mut queue = VecDeque::from([(a.initial(), b.initial())]);
    map[a.initial()] = Some(b.initial());
    let mut used = vec![false; b.num_states()];
    used[b.initial()] = true;
    while let Some((p, q)) = queue.pop_front() {
        if a.is_accepting(p) != b.is_accepting(q) {
            return false;
        }
        for s in 0..a.num_symbols() {
            let (p2, q2) = (a.next(p, s), b.next(q, s));
            match map[p2] {
                Some(m) if m != q2 => return false,
                Some(_) => {}
                None if used[q2] => return false,
                None => {
                    map[p2] = Some(q2);
                    used[q2] = true;
                    queue.push_back((p2, q2));
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> Dfa {
        Dfa::new(
            "parity",
            ["even", "odd"],
            ["a", "b"],
            vec![vec![1, 0], vec![0, 1]],
            0,
            [0],
        )
        .unwrap()
    }

    #[test]
    fn rejects_partial_tables() {
        let err = Dfa::new("x", ["p", "q"], ["a"], vec![vec![1]], 0, []).unwrap_err();
        assert_eq!(err, DfaError::RowCount { expected: 2, found: 1 });
        let err = Dfa::new("x", ["p"], ["a", "b"], vec![vec![0]], 0, []).unwrap_err();
        assert!(matches!(err, DfaError::RowLength { .. }));
    }

    #[test]
    fn rejects_reserved_names() {
        let err = Dfa::new("x", ["p,q"], ["a"], vec![vec![0]], 0, []).unwrap_err();
        assert_eq!(err, DfaError::InvalidName("p,q".into()));
        let err = Dfa::new("x", ["p", "p"], ["a"], vec![vec![0], vec![0]], 0, []).unwrap_err();
        assert_eq!(err, DfaError::DuplicateState("p".into()));
    }

    #[test]
    fn run_and_accept() {
        let d = parity();
        assert_eq!(d.run::<&str>(&[]).unwrap(), 0);
        assert_eq!(d.run(&["a", "b", "a"]).unwrap(), 0);
        assert!(d.accepts_str("aa").unwrap());
        assert!(!d.accepts_str("ab").unwrap());
        assert_eq!(d.run(&["c"]).unwrap_err(), DfaError::UnknownSymbol("c".into()));
    }

    #[test]
    fn trim_drops_unreachable() {
        let d = Dfa::new(
            "t",
            ["s", "dead", "x"],
            ["a"],
            vec![vec![0], vec![2], vec![1]],
            0,
            [0],
        )
        .unwrap();
        let (t, index) = d.trim();
        assert_eq!(t.num_states(), 1);
        assert_eq!(index, vec![Some(0), None, None]);
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        // Two copies of the parity automaton glued together.
        let d = Dfa::new(
            "p2",
            ["e0", "o0", "e1", "o1"],
            ["a"],
            vec![vec![3], vec![0], vec![1], vec![2]],
            0,
            [0, 2],
        )
        .unwrap();
        let (m, f) = minimize(&d);
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.state_name(0), "e0+e1");
        assert_eq!(f.get(0), f.get(2));
        assert!(equivalent(&d, &m).unwrap());
    }

    #[test]
    fn parallel_connection_size_and_language() {
        let p = parity();
        let q = p.with_accepting([1]).unwrap();
        let prod = parallel_connection(&p, &q).unwrap();
        assert_eq!(prod.num_states(), 4);
        // even and odd at once is impossible
        let empty = Dfa::new("e", ["z"], ["a", "b"], vec![vec![0, 0]], 0, []).unwrap();
        assert!(equivalent(&prod, &empty).unwrap());
    }

    #[test]
    fn alphabet_order_is_aligned() {
        let p = parity();
        let swapped = p.with_alphabet_order(&["b", "a"]).unwrap();
        assert_eq!(swapped.alphabet(), &["b".to_string(), "a".to_string()]);
        assert!(equivalent(&p, &swapped).unwrap());
        assert!(isomorphic(&p, &swapped));
        let other = Dfa::new("o", ["z"], ["a", "c"], vec![vec![0, 0]], 0, []).unwrap();
        assert_eq!(equivalent(&p, &other).unwrap_err(), DfaError::AlphabetMismatch);
    }

    #[test]
    fn distinguishing_word_is_shortest() {
        let p = parity();
        let q = p.with_accepting([1]).unwrap();
        assert_eq!(distinguishing_word(&p, &q).unwrap(), Some(vec![]));
        let all = Dfa::new("all", ["z"], ["a", "b"], vec![vec![0, 0]], 0, [0]).unwrap();
        assert_eq!(distinguishing_word(&p, &all).unwrap(), Some(vec![0]));
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let p = parity();
        let zero = Partition::zero(2);
        let q = quotient(&p, &zero, &BTreeSet::from([0])).unwrap();
        assert!(isomorphic(&p, &q));
        let one = Partition::one(2);
        let q = quotient(&p, &one, &BTreeSet::from([0])).unwrap();
        assert_eq!(q.num_states(), 1);
        assert!(q.accepts_str("abba").unwrap());
    }

    #[test]
    fn quotient_rejects_non_sp() {
        let d = Dfa::new(
            "c",
            ["0", "1", "2"],
            ["a"],
            vec![vec![1], vec![2], vec![2]],
            0,
            [],
        )
        .unwrap();
        let pi = Partition::from_labels(&[0, 0, 1]);
        assert_eq!(
            quotient(&d, &pi, &BTreeSet::new()).unwrap_err(),
            DfaError::NotSubstitutionProperty
        );
    }
}
