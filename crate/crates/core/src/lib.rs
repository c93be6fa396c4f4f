//! Decompositions of deterministic finite automata.
//!
//! A complete DFA `A` is decomposed into a pair `(A₁, A₂)` running in
//! parallel. Five notions are supported: AI, SI, wAI, SB and ASB (see
//! [`decompose`]). SB and ASB decompositions are enumerated exactly through
//! the lattice of S.P. partitions of `A`; the weaker notions are verified
//! directly on candidate pairs and certified absent by bounded exhaustive
//! search in [`oracle`].
//!
//! ```
//! use dfa_decomp::{decompose_sb, families::gen_grid};
//!
//! let grid = gen_grid(3, 5).unwrap();
//! let report = decompose_sb(&grid).nonredundant();
//! assert_eq!(report.sizes(), vec![(3, 5)]);
//! ```

pub mod decompose;
pub mod dfa;
pub mod families;
pub mod io;
pub mod oracle;
pub mod partition;

pub use decompose::{
    decompose, decompose_ai_sufficient, decompose_asb, decompose_sb, decompose_wai_sufficient,
    from_partitions, is_redundant, project_to_minimal, transfer_to_minimal, verify, DecompError,
    Decomposition, DecompositionKind, DecompositionReport, Refutation, ReportEntry, Verdict,
    Witness,
};
pub use dfa::{
    distinguishing_word, equivalent, is_minimal, isomorphic, minimize, nerode_partition,
    parallel_connection, quotient, reachable_triples, Dfa, DfaError, StateId, StateMap, SymbolId,
};
pub use partition::{
    is_distributive, is_sp, min_sp_merging, separates_finals, sp_lattice, Partition,
    PartitionError, SeparationWitness, SpLattice,
};
