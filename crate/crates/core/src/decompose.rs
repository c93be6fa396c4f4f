//! Verification and construction of the five decomposition types.
//!
//! A pair `(A₁, A₂)` decomposes `A` in one of these senses:
//!
//! * **AI**: `L(A) = L(A₁) ∩ L(A₂)`.
//! * **SI**: the pair of states reached by `A₁` and `A₂` on `w` determines
//!   the state reached by `A` (through a map `β`).
//! * **wAI**: the pair of states determines whether `A` accepts (through a
//!   relation `R`).
//! * **SB**: `A₁ || A₂` realizes the state behavior of `A` through an
//!   injective homomorphism `α`.
//! * **ASB**: SB where `α` also preserves acceptance.
//!
//! Verification works on the reachable part of the triple product
//! `A × A₁ × A₂`, so SI, wAI, SB and ASB checks require `A` to have no
//! unreachable states. Constructions go through the lattice of S.P.
//! partitions: each lattice element yields a quotient automaton.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dfa::{
    align, distinguishing_word, minimize, parallel_connection, quotient, Dfa, DfaError,
    ProductGraph, StateId, SymbolId,
};
use crate::partition::{
    is_distributive, separates_finals, sp_lattice, Partition, SeparationWitness, SpLattice,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecompositionKind {
    Ai,
    Si,
    Wai,
    Sb,
    Asb,
}

impl DecompositionKind {
    pub const ALL: [DecompositionKind; 5] = [
        DecompositionKind::Ai,
        DecompositionKind::Si,
        DecompositionKind::Wai,
        DecompositionKind::Sb,
        DecompositionKind::Asb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionKind::Ai => "AI",
            DecompositionKind::Si => "SI",
            DecompositionKind::Wai => "wAI",
            DecompositionKind::Sb => "SB",
            DecompositionKind::Asb => "ASB",
        }
    }

    /// Whether verification needs an automaton without unreachable states.
    pub fn needs_reachable(self) -> bool {
        self != DecompositionKind::Ai
    }
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown decomposition kind '{0}' (expected one of ai, si, wai, sb, asb)")]
pub struct UnknownKind(pub String);

impl FromStr for DecompositionKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ai" => Ok(DecompositionKind::Ai),
            "si" => Ok(DecompositionKind::Si),
            "wai" => Ok(DecompositionKind::Wai),
            "sb" => Ok(DecompositionKind::Sb),
            "asb" => Ok(DecompositionKind::Asb),
            _ => Err(UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompError {
    #[error(transparent)]
    Dfa(#[from] DfaError),
    #[error("automaton has unreachable states: {}", .0.join(", "))]
    UnreachableStates(Vec<String>),
    #[error("decomposition was not built from S.P. partitions")]
    MissingSourcePartitions,
    #[error("{0} decompositions are not supported by this operation")]
    UnsupportedKind(DecompositionKind),
    #[error("the S.P. lattice is not distributive, so the decomposition need not project onto the minimal automaton")]
    NotDistributive,
    #[error("decomposition does not verify against the automaton: {0}")]
    DoesNotVerify(Refutation),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

/// The certificate attached to a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// AI: optional final-state separation the factors were built from.
    Separation(Option<SeparationWitness>),
    /// SI: `β(p₁, p₂)` stored at `p₁ * |K₂| + p₂`; `q₀` off the reachable pairs.
    StateMap(Vec<StateId>),
    /// wAI: `R(p₁, p₂)` stored at `p₁ * |K₂| + p₂`.
    Relation(Vec<bool>),
    /// SB/ASB: `α(q) = (p₁, p₂)` for every state `q` of `A`.
    Embedding(Vec<(StateId, StateId)>),
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::Separation(_) => "separation",
            Witness::StateMap(_) => "beta",
            Witness::Relation(_) => "relation",
            Witness::Embedding(_) => "alpha",
        }
    }
}

/// A verified pair `(A₁, A₂)` with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub a1: Dfa,
    pub a2: Dfa,
    pub witness: Witness,
    pub source_partitions: Option<(Partition, Partition)>,
}

impl Decomposition {
    pub fn sizes(&self) -> (usize, usize) {
        (self.a1.num_states(), self.a2.num_states())
    }

    /// Both factors are strictly smaller than `a`.
    pub fn is_nontrivial(&self, a: &Dfa) -> bool {
        let (k, l) = self.sizes();
        k < a.num_states() && l < a.num_states()
    }

    /// `|K| = |K₁|·|K₂|`.
    pub fn is_perfect(&self, a: &Dfa) -> bool {
        let (k, l) = self.sizes();
        k * l == a.num_states()
    }
}

/// Why a candidate pair is not a decomposition. Words are symbol indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// `A` and `A₁ || A₂` disagree on this word.
    Language { word: Vec<SymbolId> },
    /// Both words lead the factors to the same pair but `A` to different
    /// states.
    StateConflict {
        first: Vec<SymbolId>,
        second: Vec<SymbolId>,
    },
    /// Both words lead the factors to the same pair but exactly one of them
    /// is accepted by `A`.
    AcceptanceConflict {
        first: Vec<SymbolId>,
        second: Vec<SymbolId>,
    },
    /// Both words lead `A` to the same state but the factors to different
    /// pairs, so `β` is not injective on reachable pairs.
    NotInjective {
        first: Vec<SymbolId>,
        second: Vec<SymbolId>,
    },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |w: &[SymbolId]| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
            }
        };
        match self {
            Refutation::Language { word } => {
                write!(f, "languages differ on word {}", w(word))
            }
            Refutation::StateConflict { first, second } => write!(
                f,
                "words {} and {} reach the same factor pair but different states",
                w(first),
                w(second)
            ),
            Refutation::AcceptanceConflict { first, second } => write!(
                f,
                "words {} and {} reach the same factor pair but differ in acceptance",
                w(first),
                w(second)
            ),
            Refutation::NotInjective { first, second } => write!(
                f,
                "words {} and {} reach the same state but different factor pairs",
                w(first),
                w(second)
            ),
        }
    }
}

impl Refutation {
    /// The counterexample words rendered with `dfa`'s symbol names.
    pub fn describe(&self, dfa: &Dfa) -> String {
        let w = |w: &[SymbolId]| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                format!("\"{}\"", dfa.format_word(w))
            }
        };
        match self {
            Refutation::Language { word } => format!("languages differ on {}", w(word)),
            Refutation::StateConflict { first, second } => format!(
                "{} and {} reach the same factor pair but different states",
                w(first),
                w(second)
            ),
            Refutation::AcceptanceConflict { first, second } => format!(
                "{} and {} reach the same factor pair but differ in acceptance",
                w(first),
                w(second)
            ),
            Refutation::NotInjective { first, second } => format!(
                "{} and {} reach the same state but different factor pairs",
                w(first),
                w(second)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified(Decomposition),
    Refuted(Refutation),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified(_))
    }

    pub fn decomposition(self) -> Option<Decomposition> {
        match self {
            Verdict::Verified(d) => Some(d),
            Verdict::Refuted(_) => None,
        }
    }
}

fn require_reachable(a: &Dfa) -> Result<(), DecompError> {
    let reach = a.reachable();
    let unreachable: Vec<String> = (0..a.num_states())
        .filter(|&q| !reach[q])
        .map(|q| a.state_name(q).to_string())
        .collect();
    if unreachable.is_empty() {
        Ok(())
    } else {
        Err(DecompError::UnreachableStates(unreachable))
    }
}

/// Joint behavior of `A`, `A₁`, `A₂` on the reachable triples.
struct TripleAnalysis {
    graph: ProductGraph,
    /// reachable pair -> first triple index carrying it
    by_pair: HashMap<(StateId, StateId), usize>,
    si_conflict: Option<(usize, usize)>,
    wai_conflict: Option<(usize, usize)>,
    /// state of A -> first triple index carrying it
    by_state: HashMap<StateId, usize>,
    injectivity_conflict: Option<(usize, usize)>,
}

impl TripleAnalysis {
    fn run(a: &Dfa, a1: &Dfa, a2: &Dfa) -> TripleAnalysis {
        let graph = ProductGraph::explore(&[a, a1, a2]);
        let mut by_pair = HashMap::new();
        let mut by_state = HashMap::new();
        let mut si_conflict = None;
        let mut wai_conflict = None;
        let mut injectivity_conflict = None;
        for (i, t) in graph.tuples.iter().enumerate() {
            let (q, pair) = (t[0], (t[1], t[2]));
            match by_pair.get(&pair) {
                None => {
                    by_pair.insert(pair, i);
                }
                Some(&j) => {
                    let other = graph.tuples[j][0];
                    if other != q && si_conflict.is_none() {
                        si_conflict = Some((j, i));
                    }
                    if a.is_accepting(other) != a.is_accepting(q) && wai_conflict.is_none() {
                        wai_conflict = Some((j, i));
                    }
                }
            }
            match by_state.get(&q) {
                None => {
                    by_state.insert(q, i);
                }
                Some(&j) => {
                    let other = &graph.tuples[j];
                    if (other[1], other[2]) != pair && injectivity_conflict.is_none() {
                        injectivity_conflict = Some((j, i));
                    }
                }
            }
        }
        TripleAnalysis {
            graph,
            by_pair,
            si_conflict,
            wai_conflict,
            by_state,
            injectivity_conflict,
        }
    }

    fn words(&self, (i, j): (usize, usize)) -> (Vec<SymbolId>, Vec<SymbolId>) {
        (self.graph.word(i), self.graph.word(j))
    }
}

/// Checks whether `(a1, a2)` is a decomposition of `a` of the given kind.
///
/// Factors with a differently ordered alphabet are re-ordered to match `a`;
/// the returned decomposition holds the re-ordered copies.
pub fn verify(
    kind: DecompositionKind,
    a: &Dfa,
    a1: &Dfa,
    a2: &Dfa,
) -> Result<Verdict, DecompError> {
    let a1 = align(a, a1)?;
    let a2 = align(a, a2)?;
    let (a1, a2) = (a1.as_ref(), a2.as_ref());
    if kind.needs_reachable() {
        require_reachable(a)?;
    }
    if matches!(kind, DecompositionKind::Ai | DecompositionKind::Asb) {
        let product = parallel_connection(a1, a2)?;
        if let Some(word) = distinguishing_word(a, &product)? {
            return Ok(Verdict::Refuted(Refutation::Language { word }));
        }
        if kind == DecompositionKind::Ai {
            return Ok(Verdict::Verified(Decomposition {
                kind,
                a1: a1.clone(),
                a2: a2.clone(),
                witness: Witness::Separation(None),
                source_partitions: None,
            }));
        }
    }

    let analysis = TripleAnalysis::run(a, a1, a2);
    let n2 = a2.num_states();
    let witness = match kind {
        DecompositionKind::Wai => {
            if let Some(c) = analysis.wai_conflict {
                let (first, second) = analysis.words(c);
                return Ok(Verdict::Refuted(Refutation::AcceptanceConflict { first, second }));
            }
            let mut relation = vec![false; a1.num_states() * n2];
            for (&(p1, p2), &i) in &analysis.by_pair {
                relation[p1 * n2 + p2] = a.is_accepting(analysis.graph.tuples[i][0]);
            }
            Witness::Relation(relation)
        }
        DecompositionKind::Si => {
            if let Some(c) = analysis.si_conflict {
                let (first, second) = analysis.words(c);
                return Ok(Verdict::Refuted(Refutation::StateConflict { first, second }));
            }
            let mut beta = vec![a.initial(); a1.num_states() * n2];
            for (&(p1, p2), &i) in &analysis.by_pair {
                beta[p1 * n2 + p2] = analysis.graph.tuples[i][0];
            }
            Witness::StateMap(beta)
        }
        DecompositionKind::Sb | DecompositionKind::Asb => {
            if let Some(c) = analysis.si_conflict {
                let (first, second) = analysis.words(c);
                return Ok(Verdict::Refuted(Refutation::StateConflict { first, second }));
            }
            if let Some(c) = analysis.injectivity_conflict {
                let (first, second) = analysis.words(c);
                return Ok(Verdict::Refuted(Refutation::NotInjective { first, second }));
            }
            let mut alpha = vec![(0, 0); a.num_states()];
            for (&q, &i) in &analysis.by_state {
                let t = &analysis.graph.tuples[i];
                alpha[q] = (t[1], t[2]);
            }
            if kind == DecompositionKind::Asb {
                let preserved = (0..a.num_states()).all(|q| {
                    let (p1, p2) = alpha[q];
                    a.is_accepting(q) == (a1.is_accepting(p1) && a2.is_accepting(p2))
                });
                if !preserved {
                    return Err(DecompError::InternalInvariant(
                        "SB and AI hold but α does not preserve acceptance".into(),
                    ));
                }
            }
            Witness::Embedding(alpha)
        }
        DecompositionKind::Ai => unreachable!("handled above"),
    };
    Ok(Verdict::Verified(Decomposition {
        kind,
        a1: a1.clone(),
        a2: a2.clone(),
        witness,
        source_partitions: None,
    }))
}

/// Builds the quotient pair for `(pi1, pi2)` if the partitions satisfy the
/// sufficient condition of `kind`:
///
/// * SB: `π₁ · π₂ = 0`; factors have no accepting states.
/// * ASB: SB plus final-state separation; accepting blocks from the witness.
/// * AI: final-state separation; accepting blocks from the witness.
/// * wAI: `π₁ · π₂ ⪯ {F, K − F}`; `R(D₁, D₂) ⇔ D₁ ∩ D₂ ⊆ F`.
///
/// Both partitions must be S.P. partitions of `a`.
pub fn from_partitions(
    kind: DecompositionKind,
    a: &Dfa,
    pi1: &Partition,
    pi2: &Partition,
) -> Result<Option<Decomposition>, DecompError> {
    let meet = pi1
        .meet(pi2)
        .map_err(|_| DfaError::PartitionSize {
            expected: pi1.len(),
            found: pi2.len(),
        })?;
    let finals = a.accepting_mask();
    let none = BTreeSet::new();
    let decomposition = match kind {
        DecompositionKind::Sb => {
            if !meet.is_zero() {
                return Ok(None);
            }
            Decomposition {
                kind,
                a1: quotient(a, pi1, &none)?,
                a2: quotient(a, pi2, &none)?,
                witness: embedding(pi1, pi2),
                source_partitions: None,
            }
        }
        DecompositionKind::Asb | DecompositionKind::Ai => {
            if kind == DecompositionKind::Asb && !meet.is_zero() {
                return Ok(None);
            }
            let Some(sep) = separates_finals(pi1, pi2, finals).ok().flatten() else {
                return Ok(None);
            };
            let a1 = quotient(a, pi1, &sep.blocks_from_1)?;
            let a2 = quotient(a, pi2, &sep.blocks_from_2)?;
            let witness = if kind == DecompositionKind::Asb {
                embedding(pi1, pi2)
            } else {
                Witness::Separation(Some(sep))
            };
            Decomposition {
                kind,
                a1,
                a2,
                witness,
                source_partitions: None,
            }
        }
        DecompositionKind::Wai => {
            let saturated = meet.blocks().iter().all(|b| {
                b.iter().all(|&q| finals[q] == finals[b[0]])
            });
            if !saturated {
                return Ok(None);
            }
            let (n1, n2) = (pi1.num_blocks(), pi2.num_blocks());
            // R(D₁, D₂) holds unless some state of D₁ ∩ D₂ is non-final.
            let mut relation = vec![true; n1 * n2];
            for q in 0..a.num_states() {
                if !finals[q] {
                    relation[pi1.block_of(q) * n2 + pi2.block_of(q)] = false;
                }
            }
            Decomposition {
                kind,
                a1: quotient(a, pi1, &none)?,
                a2: quotient(a, pi2, &none)?,
                witness: Witness::Relation(relation),
                source_partitions: None,
            }
        }
        DecompositionKind::Si => return Err(DecompError::UnsupportedKind(kind)),
    };
    Ok(Some(Decomposition {
        source_partitions: Some((pi1.clone(), pi2.clone())),
        ..decomposition
    }))
}

fn embedding(pi1: &Partition, pi2: &Partition) -> Witness {
    Witness::Embedding(
        (0..pi1.len())
            .map(|q| (pi1.block_of(q), pi2.block_of(q)))
            .collect(),
    )
}

/// One decomposition in a report, with its flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub decomposition: Decomposition,
    pub nontrivial: bool,
    pub perfect: bool,
    /// Only defined for SB and ASB decompositions.
    pub redundant: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub fingerprint: u64,
    pub kind: DecompositionKind,
    pub entries: Vec<ReportEntry>,
}

impl DecompositionReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Drops entries flagged redundant.
    pub fn nonredundant(mut self) -> Self {
        self.entries.retain(|e| e.redundant != Some(true));
        self
    }

    pub fn perfect_only(mut self) -> Self {
        self.entries.retain(|e| e.perfect);
        self
    }

    /// Factor sizes of every entry, in report order.
    pub fn sizes(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|e| e.decomposition.sizes()).collect()
    }
}

/// Whether some strictly coarser pair of lattice elements still meets in `0`
/// (and, for ASB, still separates the final states).
///
/// Both conditions survive refining either partition, so if `(x, y)` works
/// then so do `(x, π₂)` and `(π₁, y)`; coarsening one side at a time is
/// enough.
fn redundant_in(
    lattice: &SpLattice,
    kind: DecompositionKind,
    finals: &[bool],
    pi1: &Partition,
    pi2: &Partition,
) -> bool {
    let works = |x: &Partition, y: &Partition| {
        x.meet_unchecked(y).is_zero()
            && (kind != DecompositionKind::Asb
                || separates_finals(x, y, finals).ok().flatten().is_some())
    };
    lattice.elements().iter().any(|x| {
        (x != pi1 && pi1.leq_unchecked(x) && works(x, pi2))
            || (x != pi2 && pi2.leq_unchecked(x) && works(pi1, x))
    })
}

/// Redundancy of an SB or ASB decomposition built from S.P. partitions.
pub fn is_redundant(a: &Dfa, d: &Decomposition) -> Result<bool, DecompError> {
    if !matches!(d.kind, DecompositionKind::Sb | DecompositionKind::Asb) {
        return Err(DecompError::UnsupportedKind(d.kind));
    }
    let (pi1, pi2) = d
        .source_partitions
        .as_ref()
        .ok_or(DecompError::MissingSourcePartitions)?;
    let lattice = sp_lattice(a);
    Ok(redundant_in(&lattice, d.kind, a.accepting_mask(), pi1, pi2))
}

/// All decompositions of `kind` obtainable from unordered pairs of
/// nontrivial S.P. partitions, canonically sorted.
///
/// For SB and ASB the report is complete: `A` has a nontrivial
/// decomposition of that kind iff the report is non-empty. For AI and wAI
/// an empty report only means the sufficient condition found nothing.
pub fn decompose(kind: DecompositionKind, a: &Dfa) -> Result<DecompositionReport, DecompError> {
    if kind == DecompositionKind::Si {
        return Err(DecompError::UnsupportedKind(kind));
    }
    let lattice = sp_lattice(a);
    Ok(decompose_with(kind, a, &lattice))
}

pub(crate) fn decompose_with(
    kind: DecompositionKind,
    a: &Dfa,
    lattice: &SpLattice,
) -> DecompositionReport {
    let mut candidates: Vec<&Partition> = lattice.nontrivial().collect();
    candidates.sort_by(|x, y| x.num_blocks().cmp(&y.num_blocks()).then_with(|| x.cmp(y)));
    let finals = a.accepting_mask();
    let mut entries: Vec<ReportEntry> = (0..candidates.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let candidates = &candidates;
            (i..candidates.len()).filter_map(move |j| {
                let (pi1, pi2) = (candidates[i], candidates[j]);
                let d = from_partitions(kind, a, pi1, pi2)
                    .expect("lattice elements are S.P. partitions of the same automaton")?;
                let redundant = matches!(kind, DecompositionKind::Sb | DecompositionKind::Asb)
                    .then(|| redundant_in(lattice, kind, finals, pi1, pi2));
                Some(ReportEntry {
                    nontrivial: d.is_nontrivial(a),
                    perfect: d.is_perfect(a),
                    redundant,
                    decomposition: d,
                })
            })
        })
        .collect();
    entries.sort_by(|x, y| {
        let key = |e: &ReportEntry| {
            (
                e.decomposition.sizes(),
                e.decomposition.source_partitions.clone(),
            )
        };
        key(x).cmp(&key(y))
    });
    DecompositionReport {
        fingerprint: a.fingerprint(),
        kind,
        entries,
    }
}

pub fn decompose_sb(a: &Dfa) -> DecompositionReport {
    decompose_with(DecompositionKind::Sb, a, &sp_lattice(a))
}

pub fn decompose_asb(a: &Dfa) -> DecompositionReport {
    decompose_with(DecompositionKind::Asb, a, &sp_lattice(a))
}

pub fn decompose_ai_sufficient(a: &Dfa) -> DecompositionReport {
    decompose_with(DecompositionKind::Ai, a, &sp_lattice(a))
}

pub fn decompose_wai_sufficient(a: &Dfa) -> DecompositionReport {
    decompose_with(DecompositionKind::Wai, a, &sp_lattice(a))
}

/// Carries an SB decomposition of `a` over to the minimal automaton of
/// `L(a)`, provided the S.P. lattice of `a` is distributive.
///
/// With `f` the minimization map and `ρ` its kernel, the new partitions are
/// `f(p) ≡ f(q) ⇔ p ≡ q (mod ρ + πᵢ)`; each has at most as many blocks as
/// `πᵢ`.
pub fn project_to_minimal(a: &Dfa, d: &Decomposition) -> Result<Decomposition, DecompError> {
    if !matches!(d.kind, DecompositionKind::Sb | DecompositionKind::Asb) {
        return Err(DecompError::UnsupportedKind(d.kind));
    }
    let (pi1, pi2) = d
        .source_partitions
        .as_ref()
        .ok_or(DecompError::MissingSourcePartitions)?;
    require_reachable(a)?;
    if !is_distributive(&sp_lattice(a)) {
        return Err(DecompError::NotDistributive);
    }
    let (min, f) = minimize(a);
    let images: Vec<StateId> = (0..a.num_states())
        .map(|q| f.get(q).expect("all states are reachable"))
        .collect();
    let rho = Partition::from_labels(&images);
    let project = |pi: &Partition| {
        let coarse = rho.join_unchecked(pi);
        let mut labels = vec![0; min.num_states()];
        for q in 0..a.num_states() {
            labels[images[q]] = coarse.block_of(q);
        }
        Partition::from_labels(&labels)
    };
    let (proj1, proj2) = (project(pi1), project(pi2));
    match from_partitions(DecompositionKind::Sb, &min, &proj1, &proj2)? {
        Some(projected) => Ok(projected),
        None => Err(DecompError::InternalInvariant(
            "projected partitions do not meet in 0 despite distributivity".into(),
        )),
    }
}

/// Re-verifies an AI, SI or wAI decomposition of `a` against the minimal
/// automaton of `L(a)`. For SI the witness is `β` composed with the
/// minimization map.
pub fn transfer_to_minimal(
    kind: DecompositionKind,
    a: &Dfa,
    d: &Decomposition,
) -> Result<Decomposition, DecompError> {
    if !matches!(
        kind,
        DecompositionKind::Ai | DecompositionKind::Si | DecompositionKind::Wai
    ) {
        return Err(DecompError::UnsupportedKind(kind));
    }
    let original = match verify(kind, a, &d.a1, &d.a2)? {
        Verdict::Verified(v) => v,
        Verdict::Refuted(r) => return Err(DecompError::DoesNotVerify(r)),
    };
    let (min, f) = minimize(a);
    let transferred = match verify(kind, &min, &original.a1, &original.a2)? {
        Verdict::Verified(v) => v,
        Verdict::Refuted(r) => {
            return Err(DecompError::InternalInvariant(format!(
                "{kind} decomposition does not transfer to the minimal automaton: {r}"
            )))
        }
    };
    if let Witness::StateMap(beta) = &original.witness {
        let composed: Vec<StateId> = beta
            .iter()
            .map(|&q| f.get(q).expect("β only hits reachable states"))
            .collect();
        if transferred.witness != Witness::StateMap(composed.clone()) {
            return Err(DecompError::InternalInvariant(
                "composed β disagrees with the β of the minimal automaton".into(),
            ));
        }
        return Ok(Decomposition {
            witness: Witness::StateMap(composed),
            ..transferred
        });
    }
    Ok(transferred)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mod_counter(name: &str, k: usize) -> Dfa {
        Dfa::new(
            name,
            (0..k).map(|i| format!("c{i}")),
            ["a"],
            (0..k).map(|i| vec![(i + 1) % k]).collect(),
            0,
            [0],
        )
        .unwrap()
    }

    #[test]
    fn kind_round_trips_through_strings() {
        for k in DecompositionKind::ALL {
            assert_eq!(k.as_str().parse::<DecompositionKind>().unwrap(), k);
        }
        assert!("xy".parse::<DecompositionKind>().is_err());
    }

    #[test]
    fn cyclic_six_splits_into_two_and_three() {
        let a = mod_counter("c6", 6);
        let report = decompose_asb(&a);
        assert_eq!(report.sizes(), vec![(2, 3)]);
        let e = &report.entries[0];
        assert!(e.perfect && e.nontrivial);
        assert_eq!(e.redundant, Some(false));
        let d = &e.decomposition;
        assert!(verify(DecompositionKind::Asb, &a, &d.a1, &d.a2).unwrap().is_verified());
    }

    #[test]
    fn si_refutation_carries_words() {
        let a = mod_counter("c4", 4);
        let one = mod_counter("c1", 1);
        let two = mod_counter("c2", 2);
        match verify(DecompositionKind::Si, &a, &two, &one).unwrap() {
            Verdict::Refuted(Refutation::StateConflict { first, second }) => {
                assert_eq!(a.run_ids(&first), 0);
                assert_eq!(a.run_ids(&second), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unreachable_states_are_rejected() {
        let a = Dfa::new("u", ["s", "x"], ["a"], vec![vec![0], vec![0]], 0, [0]).unwrap();
        let err = verify(DecompositionKind::Sb, &a, &a, &a).unwrap_err();
        assert_eq!(err, DecompError::UnreachableStates(vec!["x".into()]));
        assert!(verify(DecompositionKind::Ai, &a, &a, &a).unwrap().is_verified());
    }

    #[test]
    fn si_is_not_decomposed_by_partitions() {
        let a = mod_counter("c6", 6);
        assert_eq!(
            decompose(DecompositionKind::Si, &a).unwrap_err(),
            DecompError::UnsupportedKind(DecompositionKind::Si)
        );
    }

    #[test]
    fn redundancy_requires_source_partitions() {
        let a = mod_counter("c6", 6);
        let d = verify(DecompositionKind::Sb, &a, &a, &mod_counter("c1", 1))
            .unwrap()
            .decomposition()
            .unwrap();
        assert_eq!(is_redundant(&a, &d).unwrap_err(), DecompError::MissingSourcePartitions);
    }
}
