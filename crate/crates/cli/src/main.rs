use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dfa_decomp::decompose::{decompose, verify, DecompositionKind, Verdict, Witness};
use dfa_decomp::dfa::{minimize, Dfa};
use dfa_decomp::families::FamilySpec;
use dfa_decomp::io::{
    export_dot, format_partition, parse_dfa, parse_partition, print_dfa, report_json,
    report_table,
};
use dfa_decomp::oracle::{certify_undecomposable, Certification, OracleError, SearchBudget};
use dfa_decomp::partition::{is_distributive, sp_lattice};

#[derive(Parser)]
#[command(name = "decomp", version, about = "Decompose finite automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a member of a built-in family.
    Gen {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FamilySpec::NAMES))]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// For a4b4_triple: 0 = A, 1 = A1, 2 = A2.
        #[arg(long)]
        member: Option<usize>,
    },
    /// Print the minimal equivalent automaton.
    Minimize { input: Option<PathBuf> },
    /// List the S.P. partitions.
    Lattice { input: Option<PathBuf> },
    /// Enumerate decompositions.
    Decompose {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        nonredundant: bool,
        #[arg(long)]
        perfect_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        input: Option<PathBuf>,
    },
    /// Check whether A1, A2 decompose A.
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
        a: PathBuf,
        a1: PathBuf,
        a2: PathBuf,
    },
    /// Search all small factor pairs exhaustively.
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long)]
        max1: usize,
        #[arg(long)]
        max2: usize,
        /// Enumerate every labelled automaton, not one per isomorphism class.
        #[arg(long)]
        all_structures: bool,
        input: Option<PathBuf>,
    },
    /// Render as Graphviz DOT.
    Dot {
        #[arg(long)]
        partition: Option<String>,
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Sb,
    Asb,
    Ai,
    Wai,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Sb,
    Asb,
    Ai,
    Si,
    Wai,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Ai,
    Si,
    Wai,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

impl From<ConstructKind> for DecompositionKind {
    fn from(k: ConstructKind) -> Self {
        match k {
            ConstructKind::Sb => DecompositionKind::Sb,
            ConstructKind::Asb => DecompositionKind::Asb,
            ConstructKind::Ai => DecompositionKind::Ai,
            ConstructKind::Wai => DecompositionKind::Wai,
        }
    }
}

impl From<VerifyKind> for DecompositionKind {
    fn from(k: VerifyKind) -> Self {
        match k {
            VerifyKind::Sb => DecompositionKind::Sb,
            VerifyKind::Asb => DecompositionKind::Asb,
            VerifyKind::Ai => DecompositionKind::Ai,
            VerifyKind::Si => DecompositionKind::Si,
            VerifyKind::Wai => DecompositionKind::Wai,
        }
    }
}

impl From<OracleKind> for DecompositionKind {
    fn from(k: OracleKind) -> Self {
        match k {
            OracleKind::Ai => DecompositionKind::Ai,
            OracleKind::Si => DecompositionKind::Si,
            OracleKind::Wai => DecompositionKind::Wai,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

/// What a successful run prints and how it exits.
struct Outcome {
    stdout: String,
    found: bool,
}

fn display_path(path: Option<&Path>) -> String {
    match path {
        Some(p) if p != Path::new("-") => p.display().to_string(),
        _ => "<stdin>".to_string(),
    }
}

fn load(path: Option<&Path>) -> Result<Dfa, CliError> {
    let name = display_path(path);
    let text = match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p),
        _ => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map(|_| buf)
        }
    }
    .map_err(|source| CliError::Read {
        path: name.clone(),
        source,
    })?;
    parse_dfa(&text).map_err(|e| CliError::Input {
        path: name,
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Gen {
            family,
            n,
            k,
            l,
            r,
            s,
            member,
        } => {
            let spec = FamilySpec::from_params(&family, |p| match p {
                "n" => n,
                "k" => k,
                "l" => l,
                "r" => r,
                "s" => s,
                "member" => member,
                _ => None,
            })
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let dfa = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Outcome {
                stdout: print_dfa(&dfa),
                found: true,
            })
        }
        Command::Minimize { input } => {
            let a = load(input.as_deref())?;
            Ok(Outcome {
                stdout: print_dfa(&minimize(&a).0),
                found: true,
            })
        }
        Command::Lattice { input } => {
            let a = load(input.as_deref())?;
            let lattice = sp_lattice(&a);
            let mut out = String::new();
            for pi in lattice.elements() {
                out.push_str(&format_partition(&a, pi));
                out.push('\n');
            }
            out.push_str(&format!("elements: {}\n", lattice.len()));
            out.push_str(&format!(
                "distributive: {}\n",
                if is_distributive(&lattice) { "yes" } else { "no" }
            ));
            Ok(Outcome {
                stdout: out,
                found: true,
            })
        }
        Command::Decompose {
            kind,
            nonredundant,
            perfect_only,
            format,
            input,
        } => {
            let path = display_path(input.as_deref());
            let a = load(input.as_deref())?;
            let mut report = decompose(kind.into(), &a).map_err(|e| CliError::Input {
                path,
                message: e.to_string(),
            })?;
            if nonredundant {
                report = report.nonredundant();
            }
            if perfect_only {
                report = report.perfect_only();
            }
            let stdout = match format {
                Format::Json => report_json(&a, &report),
                Format::Table => report_table(&a, &report),
            };
            Ok(Outcome {
                stdout,
                found: !report.is_empty(),
            })
        }
        Command::Verify { kind, a, a1, a2 } => {
            let dfas = [&a, &a1, &a2]
                .into_iter()
                .map(|p| load(Some(p)))
                .collect::<Result<Vec<_>, _>>()?;
            let kind: DecompositionKind = kind.into();
            let verdict = verify(kind, &dfas[0], &dfas[1], &dfas[2]).map_err(|e| {
                CliError::Input {
                    path: display_path(Some(&a)),
                    message: e.to_string(),
                }
            })?;
            Ok(match verdict {
                Verdict::Verified(d) => {
                    let (k, l) = d.sizes();
                    let mut out = format!("verified: {kind} ({k},{l})\n");
                    out.push_str(&describe_witness(&dfas[0], &d.a1, &d.a2, &d.witness));
                    Outcome {
                        stdout: out,
                        found: true,
                    }
                }
                Verdict::Refuted(why) => Outcome {
                    stdout: format!("refuted: {}\n", why.describe(&dfas[0])),
                    found: false,
                },
            })
        }
        Command::Oracle {
            kind,
            max1,
            max2,
            all_structures,
            input,
        } => {
            let path = display_path(input.as_deref());
            let a = load(input.as_deref())?;
            let budget = SearchBudget::new(max1, max2)
                .map_err(|e| CliError::Usage(e.to_string()))?
                .with_canonical_only(!all_structures);
            let kind: DecompositionKind = kind.into();
            match certify_undecomposable(kind, &a, &budget) {
                Ok(Certification::Undecomposable(c)) => Ok(Outcome {
                    stdout: format!(
                        "undecomposable: no nontrivial {} decomposition with |K1| <= {}, |K2| <= {} ({} candidate pairs examined)\n",
                        c.kind, c.max_states_1, c.max_states_2, c.candidates_examined
                    ),
                    found: false,
                }),
                Ok(Certification::Decomposable(d)) => {
                    let (k, l) = d.sizes();
                    let mut out = format!("found: {kind} ({k},{l})\n");
                    out.push_str(&print_dfa(&d.a1));
                    out.push_str(&print_dfa(&d.a2));
                    Ok(Outcome {
                        stdout: out,
                        found: true,
                    })
                }
                Err(e @ OracleError::Infeasible { .. }) => Err(CliError::Budget(e.to_string())),
                Err(e) => Err(CliError::Input {
                    path,
                    message: e.to_string(),
                }),
            }
        }
        Command::Dot { partition, input } => {
            let path = display_path(input.as_deref());
            let a = load(input.as_deref())?;
            let pi = partition
                .map(|lit| parse_partition(&a, &lit))
                .transpose()
                .map_err(|e| CliError::Input {
                    path,
                    message: e.to_string(),
                })?;
            Ok(Outcome {
                stdout: export_dot(&a, pi.as_ref()),
                found: true,
            })
        }
    }
}

fn describe_witness(a: &Dfa, a1: &Dfa, a2: &Dfa, witness: &Witness) -> String {
    let pair = |p: usize| {
        format!(
            "({}, {})",
            a1.state_name(p / a2.num_states()),
            a2.state_name(p % a2.num_states())
        )
    };
    let mut out = String::new();
    match witness {
        Witness::Separation(_) => {}
        Witness::StateMap(beta) => {
            for (p, &q) in beta.iter().enumerate() {
                out.push_str(&format!("beta {} = {}\n", pair(p), a.state_name(q)));
            }
        }
        Witness::Relation(rel) => {
            for (p, _) in rel.iter().enumerate().filter(|(_, &r)| r) {
                out.push_str(&format!("accepting pair {}\n", pair(p)));
            }
        }
        Witness::Embedding(alpha) => {
            for (q, &(p1, p2)) in alpha.iter().enumerate() {
                out.push_str(&format!(
                    "alpha {} = ({}, {})\n",
                    a.state_name(q),
                    a1.state_name(p1),
                    a2.state_name(p2)
                ));
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.found { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("decomp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
