//! Generators for the named automata used throughout the crate's tests and
//! the `gen` subcommand.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::dfa::{minimize, Dfa, DfaError, StateId};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("parameter {name} = {value} out of range (need {name} >= {min})")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("no fresh symbol available for the extension")]
    NoFreshSymbol,
    #[error("symbol '{0}' already belongs to the alphabet")]
    SymbolInUse(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family {family} needs parameter {param}")]
    MissingParameter {
        family: &'static str,
        param: &'static str,
    },
    #[error(transparent)]
    Dfa(#[from] DfaError),
}

fn at_least(name: &'static str, value: usize, min: usize) -> Result<(), FamilyError> {
    if value < min {
        return Err(FamilyError::OutOfRange { name, value, min });
    }
    Ok(())
}

/// `L⁽ⁿ⁾ = { aᵏ | k ≥ n − 1 }`: a chain of `n` states, the last one
/// accepting with a self-loop.
pub fn gen_ln(n: usize) -> Result<Dfa, FamilyError> {
    at_least("n", n, 1)?;
    Ok(Dfa::new(
        format!("ln_{n}"),
        (0..n).map(|i| format!("q{i}")),
        ["a"],
        (0..n).map(|i| vec![(i + 1).min(n - 1)]).collect(),
        0,
        [n - 1],
    )?)
}

/// Residue-pair counter over `{a, b}` with `k·l` states `q{i}_{j}`
/// (`i = #a mod k`, `j = #b mod l`) accepting the listed residue pairs.
fn residue_counter(
    name: String,
    alphabet: &[&str],
    k: usize,
    l: usize,
    accepting: &[(usize, usize)],
) -> Result<Dfa, FamilyError> {
    let idx = |i: usize, j: usize| i * l + j;
    let mut states = Vec::new();
    let mut table = Vec::new();
    for i in 0..k {
        for j in 0..l {
            states.push(format!("q{i}_{j}"));
            let mut row = vec![idx((i + 1) % k, j), idx(i, (j + 1) % l)];
            row.extend(std::iter::repeat_n(idx(i, j), alphabet.len() - 2));
            table.push(row);
        }
    }
    Ok(Dfa::new(
        name,
        states,
        alphabet.iter().copied(),
        table,
        0,
        accepting.iter().map(|&(i, j)| idx(i, j)),
    )?)
}

/// `L⁽ᵏ'ˡ⁾ = { w ∈ {a,b}* | #a(w) mod k = 0 ∧ #b(w) mod l = 0 }`.
pub fn gen_lkl(k: usize, l: usize) -> Result<Dfa, FamilyError> {
    at_least("k", k, 2)?;
    at_least("l", l, 2)?;
    residue_counter(format!("lkl_{k}_{l}"), &["a", "b"], k, l, &[(0, 0)])
}

/// The grid automaton `A_{r,s}`: `a` advances the row counter and `b` the
/// column counter, both saturating; state `q{i}_{j}` has index `i·s + j`
/// and the only accepting state is `q{r-1}_{s-1}`.
pub fn gen_grid(r: usize, s: usize) -> Result<Dfa, FamilyError> {
    at_least("r", r, 2)?;
    at_least("s", s, 2)?;
    let idx = |i: usize, j: usize| i * s + j;
    let mut states = Vec::new();
    let mut table = Vec::new();
    for i in 0..r {
        for j in 0..s {
            states.push(format!("q{i}_{j}"));
            table.push(vec![idx((i + 1).min(r - 1), j), idx(i, (j + 1).min(s - 1))]);
        }
    }
    Ok(Dfa::new(
        format!("grid_{r}_{s}"),
        states,
        ["a", "b"],
        table,
        0,
        [idx(r - 1, s - 1)],
    )?)
}

/// Rows of `A_{r,s}` (`π₁`): states with equal `i`.
pub fn grid_rows(r: usize, s: usize) -> Partition {
    Partition::from_labels(&(0..r * s).map(|q| q / s).collect::<Vec<_>>())
}

/// Columns of `A_{r,s}` (`π₂`): states with equal `j`.
pub fn grid_cols(r: usize, s: usize) -> Partition {
    Partition::from_labels(&(0..r * s).map(|q| q % s).collect::<Vec<_>>())
}

const FRESH_SYMBOLS: &str = "cdefghijklmnopqrstuvwxyz";

/// The `k`-extension of `a` with a fresh symbol: a chain `p0 … p{k-1}` on
/// that symbol leading into the old initial state. Old states loop on the
/// new symbol, chain states loop on the old symbols, and `p0` becomes
/// initial. Old states keep their indices; chain states follow them.
///
/// When `symbol` is `None` the first of `c, d, e, …` not in the alphabet is
/// used.
pub fn gen_k_extension(a: &Dfa, k: usize, symbol: Option<&str>) -> Result<Dfa, FamilyError> {
    at_least("k", k, 1)?;
    let fresh = match symbol {
        Some(s) if a.symbol_index(s).is_some() => {
            return Err(FamilyError::SymbolInUse(s.to_string()))
        }
        Some(s) => s.to_string(),
        None => FRESH_SYMBOLS
            .chars()
            .map(String::from)
            .find(|c| a.symbol_index(c).is_none())
            .ok_or(FamilyError::NoFreshSymbol)?,
    };
    let mut prefix = String::from("p");
    while (0..k).any(|i| a.state_index(&format!("{prefix}{i}")).is_some()) {
        prefix.push('_');
    }
    let n = a.num_states();
    let sigma = a.num_symbols();
    let mut states: Vec<String> = a.states().to_vec();
    states.extend((0..k).map(|i| format!("{prefix}{i}")));
    let mut table: Vec<Vec<StateId>> = a
        .table()
        .into_iter()
        .enumerate()
        .map(|(q, mut row)| {
            row.push(q);
            row
        })
        .collect();
    for i in 0..k {
        let p = n + i;
        let mut row = vec![p; sigma];
        row.push(if i + 1 < k { p + 1 } else { a.initial() });
        table.push(row);
    }
    let mut alphabet = a.alphabet().to_vec();
    alphabet.push(fresh);
    Ok(Dfa::new(
        format!("{}_ext{k}", a.name()),
        states,
        alphabet,
        table,
        n,
        a.accepting_states(),
    )?)
}

/// The two automata of the `a^{2k} b^{2l}` example: the 5-state minimal
/// automaton and a 6-state equivalent one whose S.P. lattice does split.
/// Both accept in `a0` and `b0`.
pub fn gen_example31() -> (Dfa, Dfa) {
    // states: a0 a1 b0 b1 R ; symbols a b
    let min = Dfa::new(
        "example31_min",
        ["a0", "a1", "b0", "b1", "R"],
        ["a", "b"],
        vec![
            vec![1, 3], // a0
            vec![0, 4], // a1
            vec![4, 3], // b0
            vec![4, 2], // b1
            vec![4, 4], // R
        ],
        0,
        [0, 2],
    )
    .expect("fixture is well formed");
    // states: a0 a1 b0 b1 R0 R1 ; the sink is split by the parity of b
    let prime = Dfa::new(
        "example31_prime",
        ["a0", "a1", "b0", "b1", "R0", "R1"],
        ["a", "b"],
        vec![
            vec![1, 3], // a0
            vec![0, 5], // a1
            vec![4, 3], // b0
            vec![5, 2], // b1
            vec![4, 5], // R0
            vec![5, 4], // R1
        ],
        0,
        [0, 2],
    )
    .expect("fixture is well formed");
    (min, prime)
}

/// `π₁ = {{a0},{a1},{b0,b1},{R0,R1}}` and `π₂ = {{a0,a1,b0,R0},{b1,R1}}`
/// on the 6-state automaton of [`gen_example31`].
pub fn example31_partitions() -> (Partition, Partition) {
    let pi1 = Partition::from_blocks(6, &[vec![0], vec![1], vec![2, 3], vec![4, 5]])
        .expect("fixture is well formed");
    let pi2 = Partition::from_blocks(6, &[vec![0, 1, 2, 4], vec![3, 5]])
        .expect("fixture is well formed");
    (pi1, pi2)
}

/// Minimal automata for `L = {a^{4k} b^{4l} | k ≥ 0, l ≥ 1}`,
/// `L₁ = {a^{4k} b^l | k ≥ 0, l ≥ 1}` and `L₂ = {w | #b(w) ≡ 0 mod 4}`.
pub fn gen_a4b4_triple() -> (Dfa, Dfa, Dfa) {
    // a-phase counter a0..a3, b-phase counter b1 b2 b3 b0, sink R
    let l = Dfa::new(
        "a4b4",
        ["a0", "a1", "a2", "a3", "b1", "b2", "b3", "b0", "R"],
        ["a", "b"],
        vec![
            vec![1, 4],
            vec![2, 8],
            vec![3, 8],
            vec![0, 8],
            vec![8, 5],
            vec![8, 6],
            vec![8, 7],
            vec![8, 4],
            vec![8, 8],
        ],
        0,
        [7],
    )
    .expect("fixture is well formed");
    let l1 = Dfa::new(
        "a4b",
        ["a0", "a1", "a2", "a3", "B", "R"],
        ["a", "b"],
        vec![
            vec![1, 4],
            vec![2, 5],
            vec![3, 5],
            vec![0, 5],
            vec![5, 4],
            vec![5, 5],
        ],
        0,
        [4],
    )
    .expect("fixture is well formed");
    let l2 = Dfa::new(
        "b4",
        ["b0", "b1", "b2", "b3"],
        ["a", "b"],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        0,
        [0],
    )
    .expect("fixture is well formed");
    let named = |d: Dfa, name: &str| {
        minimize(&d).0.renamed(name).expect("fixture name is valid")
    };
    (named(l, "a4b4"), named(l1, "a4b"), named(l2, "b4"))
}

/// Minimal automaton over `{a, b, c}` for
/// `{#a ≡ 0 mod 3 ∧ #b ≡ 0 mod 5} ∪ {#a ≡ 2 mod 3 ∧ #b ≡ 4 mod 5}`.
pub fn gen_sb_not_asb() -> Dfa {
    residue_counter(
        "sb_not_asb".to_string(),
        &["a", "b", "c"],
        3,
        5,
        &[(0, 0), (2, 4)],
    )
    .expect("fixture is well formed")
}

/// Uniformly random complete automaton with `n` states `q0…` over the
/// symbols `a, b, …` (then `x26, x27, …`), initial state `q0`, each state accepting
/// with probability ½.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, n: usize, s: usize) -> Result<Dfa, FamilyError> {
    at_least("n", n, 1)?;
    at_least("s", s, 1)?;
    let table = (0..n)
        .map(|_| (0..s).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let accepting: Vec<StateId> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Ok(Dfa::new(
        format!("rand_{n}_{s}"),
        (0..n).map(|i| format!("q{i}")),
        (0..s).map(|i| match u8::try_from(i) {
            Ok(i) if i < 26 => char::from(b'a' + i).to_string(),
            _ => format!("x{i}"),
        }),
        table,
        0,
        accepting,
    )?)
}

/// A named family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Ln { n: usize },
    Lkl { k: usize, l: usize },
    Grid { r: usize, s: usize },
    /// `k`-extension of `A_{r,s}`.
    Kext { r: usize, s: usize, k: usize },
    Example31Min,
    Example31Prime,
    /// Member 0 is `A`, 1 is `A₁`, 2 is `A₂`.
    A4b4Triple { member: usize },
    SbNotAsb,
}

impl FamilySpec {
    pub const NAMES: [&'static str; 8] = [
        "ln",
        "lkl",
        "grid",
        "kext",
        "example31_min",
        "example31_prime",
        "a4b4_triple",
        "sb_not_asb",
    ];

    /// Builds a spec from a family name and a parameter lookup.
    pub fn from_params(
        family: &str,
        param: impl Fn(&'static str) -> Option<usize>,
    ) -> Result<FamilySpec, FamilyError> {
        let need = |family: &'static str, p: &'static str| {
            param(p).ok_or(FamilyError::MissingParameter { family, param: p })
        };
        Ok(match family {
            "ln" => FamilySpec::Ln { n: need("ln", "n")? },
            "lkl" => FamilySpec::Lkl {
                k: need("lkl", "k")?,
                l: need("lkl", "l")?,
            },
            "grid" => FamilySpec::Grid {
                r: need("grid", "r")?,
                s: need("grid", "s")?,
            },
            "kext" => FamilySpec::Kext {
                r: need("kext", "r")?,
                s: need("kext", "s")?,
                k: need("kext", "k")?,
            },
            "example31_min" => FamilySpec::Example31Min,
            "example31_prime" => FamilySpec::Example31Prime,
            "a4b4_triple" => FamilySpec::A4b4Triple {
                member: param("member").unwrap_or(0),
            },
            "sb_not_asb" => FamilySpec::SbNotAsb,
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        })
    }

    pub fn build(&self) -> Result<Dfa, FamilyError> {
        match *self {
            FamilySpec::Ln { n } => gen_ln(n),
            FamilySpec::Lkl { k, l } => gen_lkl(k, l),
            FamilySpec::Grid { r, s } => gen_grid(r, s),
            FamilySpec::Kext { r, s, k } => gen_k_extension(&gen_grid(r, s)?, k, None),
            FamilySpec::Example31Min => Ok(gen_example31().0),
            FamilySpec::Example31Prime => Ok(gen_example31().1),
            FamilySpec::A4b4Triple { member } => {
                let (a, a1, a2) = gen_a4b4_triple();
                match member {
                    0 => Ok(a),
                    1 => Ok(a1),
                    2 => Ok(a2),
                    m => Err(FamilyError::OutOfRange {
                        name: "member",
                        value: m,
                        min: 0,
                    }),
                }
            }
            FamilySpec::SbNotAsb => Ok(gen_sb_not_asb()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Ln { n } => write!(f, "ln(n={n})"),
            FamilySpec::Lkl { k, l } => write!(f, "lkl(k={k}, l={l})"),
            FamilySpec::Grid { r, s } => write!(f, "grid(r={r}, s={s})"),
            FamilySpec::Kext { r, s, k } => write!(f, "kext(r={r}, s={s}, k={k})"),
            FamilySpec::Example31Min => f.write_str("example31_min"),
            FamilySpec::Example31Prime => f.write_str("example31_prime"),
            FamilySpec::A4b4Triple { member } => write!(f, "a4b4_triple(member={member})"),
            FamilySpec::SbNotAsb => f.write_str("sb_not_asb"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses the parameterless families by name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilySpec::from_params(s, |_| None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_thresholds() {
        let one = gen_ln(1).unwrap();
        assert_eq!(one.num_states(), 1);
        assert!(one.accepts_str("").unwrap());
        let four = gen_ln(4).unwrap();
        assert!(!four.accepts_str("aa").unwrap());
        assert!(four.accepts_str("aaa").unwrap());
        assert!(four.accepts_str("aaaaaaa").unwrap());
        assert!(matches!(gen_ln(0), Err(FamilyError::OutOfRange { .. })));
    }

    #[test]
    fn lkl_counts_residues() {
        let d = gen_lkl(3, 5).unwrap();
        assert_eq!(d.num_states(), 15);
        assert!(d.accepts_str("").unwrap());
        assert!(d.accepts_str("aaabbbbb").unwrap());
        assert!(d.accepts_str("abababbb").unwrap());
        assert!(!d.accepts_str("aabbbbb").unwrap());
        assert!(gen_lkl(1, 5).is_err());
    }

    #[test]
    fn grid_moves() {
        let d = gen_grid(2, 2).unwrap();
        let q = d.run(&["a", "b"]).unwrap();
        assert_eq!(d.state_name(q), "q1_1");
        assert!(d.is_accepting(q));
        assert_eq!(d.state_name(d.run(&["a", "a", "a"]).unwrap()), "q1_0");
        assert!(gen_grid(1, 3).is_err());
    }

    #[test]
    fn extension_adds_chain() {
        let g = gen_grid(2, 2).unwrap();
        let e = gen_k_extension(&g, 2, None).unwrap();
        assert_eq!(e.num_states(), 6);
        assert_eq!(e.alphabet().last().unwrap(), "c");
        assert_eq!(e.state_name(e.initial()), "p0");
        assert!(e.accepts_str("ccab").unwrap());
        assert!(!e.accepts_str("cab").unwrap());
        assert!(e.accepts_str("accbcca").unwrap());
        assert_eq!(
            gen_k_extension(&g, 1, Some("a")).unwrap_err(),
            FamilyError::SymbolInUse("a".into())
        );
        let e = gen_k_extension(&g, 1, Some("z")).unwrap();
        assert_eq!(e.alphabet().last().unwrap(), "z");
    }

    #[test]
    fn example31_words() {
        let (min, prime) = gen_example31();
        assert!(min.accepts_str("aabb").unwrap());
        assert!(!min.accepts_str("ab").unwrap());
        assert!(prime.accepts_str("aabbbb").unwrap());
        assert!(!prime.accepts_str("abba").unwrap());
    }

    #[test]
    fn sb_not_asb_words() {
        let d = gen_sb_not_asb();
        assert_eq!(d.num_states(), 15);
        assert!(d.accepts_str("aabbbb").unwrap());
        assert!(!d.accepts_str("cacbcbbbbc").unwrap());
        assert!(d.accepts_str("aaacbbbbb").unwrap());
    }

    #[test]
    fn family_spec_lookup() {
        let spec = FamilySpec::from_params("grid", |p| match p {
            "r" => Some(3),
            "s" => Some(5),
            _ => None,
        })
        .unwrap();
        assert_eq!(spec, FamilySpec::Grid { r: 3, s: 5 });
        assert_eq!(spec.build().unwrap().num_states(), 15);
        assert!(matches!(
            FamilySpec::from_params("grid", |_| None),
            Err(FamilyError::MissingParameter { .. })
        ));
        assert!("sb_not_asb".parse::<FamilySpec>().is_ok());
        assert!("nope".parse::<FamilySpec>().is_err());
    }
}
