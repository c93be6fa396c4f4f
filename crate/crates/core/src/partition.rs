//! Partitions of a state set and the lattice of S.P. partitions.
//!
//! A [`Partition`] is stored as a restricted growth string: `labels[q]` is
//! the index of the block containing `q`, and blocks are numbered by their
//! least member. Two partitions are therefore equal exactly when their label
//! vectors are equal.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::dfa::{Dfa, StateId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("partitions are over sets of different sizes ({left} and {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("state {0} appears in more than one block")]
    Overlap(StateId),
    #[error("state {0} is not covered by any block")]
    Uncovered(StateId),
    #[error("state {state} out of range (set has {len} elements)")]
    OutOfRange { state: StateId, len: usize },
    #[error("blocks must be non-empty")]
    EmptyBlock,
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// The partition `0` (all singletons).
    pub fn zero(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            blocks: n,
        }
    }

    /// The partition `1` (a single block).
    pub fn one(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    /// Canonicalizes arbitrary labels: elements with equal labels share a
    /// block.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let labels: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            blocks: seen.len(),
            labels,
        }
    }

    /// Builds a partition of `0..n` from explicit blocks, which must be
    /// non-empty, disjoint and cover the set.
    pub fn from_blocks<B: AsRef<[StateId]>>(n: usize, blocks: &[B]) -> Result<Self, PartitionError> {
        let mut labels = vec![None; n];
        for (i, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &q in block {
                if q >= n {
                    return Err(PartitionError::OutOfRange { state: q, len: n });
                }
                if labels[q].replace(i).is_some() {
                    return Err(PartitionError::Overlap(q));
                }
            }
        }
        let labels: Vec<usize> = labels
            .into_iter()
            .enumerate()
            .map(|(q, l)| l.ok_or(PartitionError::Uncovered(q)))
            .collect::<Result<_, _>>()?;
        Ok(Partition::from_labels(&labels))
    }

    /// Size of the underlying set.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, q: StateId) -> usize {
        self.labels[q]
    }

    pub fn same_block(&self, p: StateId, q: StateId) -> bool {
        self.labels[p] == self.labels[q]
    }

    /// Blocks in canonical order, members ascending.
    pub fn blocks(&self) -> Vec<Vec<StateId>> {
        let mut blocks = vec![Vec::new(); self.blocks];
        for (q, &b) in self.labels.iter().enumerate() {
            blocks[b].push(q);
        }
        blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks == self.labels.len()
    }

    pub fn is_one(&self) -> bool {
        self.blocks <= 1
    }

    /// Neither `0` nor `1`.
    pub fn is_nontrivial(&self) -> bool {
        !self.is_zero() && !self.is_one()
    }

    fn check_size(&self, other: &Partition) -> Result<(), PartitionError> {
        if self.len() != other.len() {
            return Err(PartitionError::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// `π₁ · π₂`: common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.check_size(other)?;
        Ok(self.meet_unchecked(other))
    }

    /// `π₁ + π₂`: transitive closure of being co-block in either argument.
    pub fn join(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.check_size(other)?;
        Ok(self.join_unchecked(other))
    }

    /// `π₁ ⪯ π₂`: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        self.check_size(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&pairs)
    }

    pub(crate) fn join_unchecked(&self, other: &Partition) -> Partition {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for labels in [&self.labels, &other.labels] {
            let mut first = vec![usize::MAX; n];
            for (q, &b) in labels.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = q;
                } else {
                    uf.union(first[b], q);
                }
            }
        }
        uf.into_partition()
    }

    pub(crate) fn leq_unchecked(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.blocks];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            if image[a] == usize::MAX {
                image[a] = b;
            } else if image[a] != b {
                return false;
            }
        }
        true
    }
}

/// Whether `pi` has the substitution property with respect to `dfa`:
/// co-block states have co-block successors under every symbol. A partition
/// of a set of the wrong size never qualifies.
pub fn is_sp(dfa: &Dfa, pi: &Partition) -> bool {
    if pi.len() != dfa.num_states() {
        return false;
    }
    let mut representative = vec![usize::MAX; pi.num_blocks()];
    for q in 0..dfa.num_states() {
        let b = pi.block_of(q);
        if representative[b] == usize::MAX {
            representative[b] = q;
            continue;
        }
        let r = representative[b];
        if (0..dfa.num_symbols()).any(|a| !pi.same_block(dfa.next(q, a), dfa.next(r, a))) {
            return false;
        }
    }
    true
}

/// The least S.P. partition in which `p` and `t` share a block (`π^m_{p,t}`).
///
/// Congruence closure: merging two classes forces their successors under
/// every symbol to merge as well.
pub fn min_sp_merging(dfa: &Dfa, p: StateId, t: StateId) -> Partition {
    let mut uf = UnionFind::new(dfa.num_states());
    let mut pending = vec![(p, t)];
    while let Some((x, y)) = pending.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for a in 0..dfa.num_symbols() {
            pending.push((dfa.next(x, a), dfa.next(y, a)));
        }
    }
    uf.into_partition()
}

/// All S.P. partitions of one automaton.
#[derive(Clone, Debug)]
pub struct SpLattice {
    elements: Vec<Partition>,
    atoms: BTreeMap<(StateId, StateId), Partition>,
    fingerprint: u64,
    num_states: usize,
}

impl SpLattice {
    /// Elements in canonical order.
    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    /// `π^m_{p,t}` for every unordered pair `p < t`.
    pub fn atoms(&self) -> &BTreeMap<(StateId, StateId), Partition> {
        &self.atoms
    }

    pub fn atom(&self, p: StateId, t: StateId) -> Option<&Partition> {
        if p == t {
            return None;
        }
        self.atoms.get(&(p.min(t), p.max(t)))
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, pi: &Partition) -> bool {
        self.elements.binary_search(pi).is_ok()
    }

    /// Elements other than `0` and `1`.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Partition> {
        self.elements.iter().filter(|p| p.is_nontrivial())
    }

    /// Join of the atoms `π^m_{p,t}` over all pairs that `pi` merges.
    pub fn join_of_atoms(&self, pi: &Partition) -> Partition {
        let mut acc = Partition::zero(self.num_states);
        for (&(p, t), atom) in &self.atoms {
            if pi.same_block(p, t) {
                acc = acc.join_unchecked(atom);
            }
        }
        acc
    }

    /// Whether the element set is closed under meet and join.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|x| {
            self.elements.iter().all(|y| {
                self.contains(&x.meet_unchecked(y)) && self.contains(&x.join_unchecked(y))
            })
        })
    }
}

/// Builds the S.P. lattice: all atoms, then `{0} ∪ atoms` closed under join.
pub fn sp_lattice(dfa: &Dfa) -> SpLattice {
    let n = dfa.num_states();
    let mut atoms = BTreeMap::new();
    for p in 0..n {
        for t in p + 1..n {
            atoms.insert((p, t), min_sp_merging(dfa, p, t));
        }
    }
    let generators: Vec<Partition> = atoms
        .values()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut seen: HashSet<Partition> = HashSet::new();
    seen.insert(Partition::zero(n));
    let mut worklist = Vec::new();
    for g in &generators {
        if seen.insert(g.clone()) {
            worklist.push(g.clone());
        }
    }
    while let Some(x) = worklist.pop() {
        for g in &generators {
            let j = x.join_unchecked(g);
            if !seen.contains(&j) {
                seen.insert(j.clone());
                worklist.push(j);
            }
        }
    }
    let mut elements: Vec<Partition> = seen.into_iter().collect();
    elements.sort();
    SpLattice {
        elements,
        atoms,
        fingerprint: dfa.fingerprint(),
        num_states: n,
    }
}

/// Block choices whose unions intersect exactly in the final states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    pub blocks_from_1: BTreeSet<usize>,
    pub blocks_from_2: BTreeSet<usize>,
}

impl SeparationWitness {
    /// `(∪ chosen blocks of p1) ∩ (∪ chosen blocks of p2)` as a mask.
    pub fn intersection(&self, p1: &Partition, p2: &Partition) -> Vec<bool> {
        (0..p1.len())
            .map(|q| {
                self.blocks_from_1.contains(&p1.block_of(q))
                    && self.blocks_from_2.contains(&p2.block_of(q))
            })
            .collect()
    }
}

/// Decides whether `p1` and `p2` separate the final states `finals`.
///
/// Any witness must pick every block meeting `F` on both sides, and adding
/// blocks can only grow the intersection, so the blocks meeting `F` form a
/// witness whenever one exists.
pub fn separates_finals(
    p1: &Partition,
    p2: &Partition,
    finals: &[bool],
) -> Result<Option<SeparationWitness>, PartitionError> {
    p1.check_size(p2)?;
    if finals.len() != p1.len() {
        return Err(PartitionError::SizeMismatch {
            left: p1.len(),
            right: finals.len(),
        });
    }
    let witness = SeparationWitness {
        blocks_from_1: (0..p1.len()).filter(|&q| finals[q]).map(|q| p1.block_of(q)).collect(),
        blocks_from_2: (0..p2.len()).filter(|&q| finals[q]).map(|q| p2.block_of(q)).collect(),
    };
    Ok((witness.intersection(p1, p2) == finals).then_some(witness))
}

/// Whether `x · (y + z) = x·y + x·z` for all elements.
pub fn is_distributive(lattice: &SpLattice) -> bool {
    let els = lattice.elements();
    els.iter().all(|x| {
        els.iter().all(|y| {
            let xy = x.meet_unchecked(y);
            els.iter().all(|z| {
                x.meet_unchecked(&y.join_unchecked(z)) == xy.join_unchecked(&x.meet_unchecked(z))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(blocks: &[&[usize]], n: usize) -> Partition {
        Partition::from_blocks(n, blocks).unwrap()
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = Partition::from_labels(&[7, 7, 3, 9]);
        let b = p(&[&[3], &[0, 1], &[2]], 4);
        assert_eq!(a, b);
        assert_eq!(a.blocks(), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn from_blocks_validates() {
        assert_eq!(
            Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).unwrap_err(),
            PartitionError::Overlap(1)
        );
        assert_eq!(
            Partition::from_blocks(3, &[vec![0, 1]]).unwrap_err(),
            PartitionError::Uncovered(2)
        );
        assert_eq!(
            Partition::from_blocks(2, &[vec![0, 1], vec![]]).unwrap_err(),
            PartitionError::EmptyBlock
        );
    }

    #[test]
    fn join_follows_chains() {
        // {{1,2},{3},{4}} + {{2,3},{1},{4}} over 1..=4, shifted to 0..4
        let x = p(&[&[0, 1], &[2], &[3]], 4);
        let y = p(&[&[1, 2], &[0], &[3]], 4);
        assert_eq!(x.join(&y).unwrap(), p(&[&[0, 1, 2], &[3]], 4));
        assert_eq!(x.join(&Partition::zero(4)).unwrap(), x);
        assert_eq!(x.join(&Partition::one(4)).unwrap(), Partition::one(4));
    }

    #[test]
    fn meet_and_order_against_bounds() {
        let x = p(&[&[0, 3], &[1, 2]], 4);
        assert_eq!(x.meet(&Partition::one(4)).unwrap(), x);
        assert!(x.meet(&Partition::zero(4)).unwrap().is_zero());
        assert!(Partition::zero(4).leq(&x).unwrap());
        assert!(x.leq(&x).unwrap());
        assert!(!Partition::one(4).leq(&x).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let err = Partition::zero(3).meet(&Partition::zero(4)).unwrap_err();
        assert_eq!(err, PartitionError::SizeMismatch { left: 3, right: 4 });
        assert!(Partition::zero(3).join(&Partition::one(2)).is_err());
        assert!(Partition::zero(3).leq(&Partition::one(2)).is_err());
    }

    #[test]
    fn merging_a_state_with_itself_is_zero() {
        let d = Dfa::new("c", ["0", "1"], ["a"], vec![vec![1], vec![0]], 0, [0]).unwrap();
        assert!(min_sp_merging(&d, 1, 1).is_zero());
        assert!(min_sp_merging(&d, 0, 1).is_one());
    }

    #[test]
    fn one_state_lattice() {
        let d = Dfa::new("one", ["s"], ["a"], vec![vec![0]], 0, [0]).unwrap();
        let l = sp_lattice(&d);
        assert_eq!(l.elements(), &[Partition::zero(1)]);
        assert!(is_distributive(&l));
        assert!(l.atoms().is_empty());
    }

    #[test]
    fn separation_of_trivial_partitions() {
        let finals = [true, false, true];
        let zero = Partition::zero(3);
        let w = separates_finals(&zero, &zero, &finals).unwrap().unwrap();
        assert_eq!(w.blocks_from_1, BTreeSet::from([0, 2]));
        let one = Partition::one(3);
        assert!(separates_finals(&one, &one, &finals).unwrap().is_none());
    }
}
