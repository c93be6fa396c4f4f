//! Text format, partition literals, DOT export and report rendering.
//!
//! ```text
//! dfa ln_2
//! alphabet a
//! states q0 q1
//! initial q0
//! accepting q1
//! trans q0 a q1
//! trans q1 a q1
//! end
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::decompose::DecompositionReport;
use crate::dfa::{Dfa, DfaError, StateId};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("duplicate transition for ({state}, {symbol})")]
    DuplicateTransition { state: String, symbol: String },
    #[error("missing transition for ({state}, {symbol})")]
    MissingTransition { state: String, symbol: String },
    #[error("no initial state declared")]
    MissingInitial,
    #[error(transparent)]
    Invalid(#[from] DfaError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    err(line, ParseErrorKind::Syntax(msg.into()))
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    alphabet: Option<Vec<String>>,
    states: Option<Vec<String>>,
    initial: Option<(String, usize)>,
    accepting: Option<(Vec<String>, usize)>,
}

/// Parses one automaton in the text format. Errors carry 1-based line
/// numbers.
pub fn parse_dfa(text: &str) -> Result<Dfa, ParseError> {
    let mut header = Header::default();
    let mut transitions: Vec<(usize, String, String, String)> = Vec::new();
    let mut end_line = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let rest: Vec<String> = tokens.map(str::to_string).collect();
        if end_line.is_some() {
            return syntax(line, "content after 'end'");
        }
        if header.name.is_none() && keyword != "dfa" {
            return syntax(line, "expected 'dfa <name>' first");
        }
        let once = |slot_taken: bool| {
            if slot_taken {
                syntax(line, format!("repeated '{keyword}' line"))
            } else {
                Ok(())
            }
        };
        match keyword {
            "dfa" => {
                once(header.name.is_some())?;
                match rest.as_slice() {
                    [name] => header.name = Some(name.clone()),
                    _ => return syntax(line, "expected 'dfa <name>'"),
                }
            }
            "alphabet" => {
                once(header.alphabet.is_some())?;
                if rest.is_empty() {
                    return syntax(line, "alphabet needs at least one symbol");
                }
                header.alphabet = Some(rest);
            }
            "states" => {
                once(header.states.is_some())?;
                if rest.is_empty() {
                    return syntax(line, "states needs at least one state");
                }
                header.states = Some(rest);
            }
            "initial" => {
                once(header.initial.is_some())?;
                match rest.as_slice() {
                    [q] => header.initial = Some((q.clone(), line)),
                    _ => return syntax(line, "expected 'initial <state>'"),
                }
            }
            "accepting" => {
                once(header.accepting.is_some())?;
                header.accepting = Some((rest, line));
            }
            "trans" => match rest.as_slice() {
                [p, a, q] => transitions.push((line, p.clone(), a.clone(), q.clone())),
                _ => return syntax(line, "expected 'trans <state> <symbol> <state>'"),
            },
            "end" => {
                if !rest.is_empty() {
                    return syntax(line, "unexpected tokens after 'end'");
                }
                end_line = Some(line);
            }
            other => return syntax(line, format!("unknown keyword '{other}'")),
        }
    }

    let Some(end_line) = end_line else {
        return syntax(last_line.max(1), "missing 'end'");
    };
    let Some(name) = header.name else {
        return syntax(1, "empty document");
    };
    let Some(alphabet) = header.alphabet else {
        return syntax(end_line, "missing 'alphabet' line");
    };
    let Some(states) = header.states else {
        return syntax(end_line, "missing 'states' line");
    };
    let Some((initial, initial_line)) = header.initial else {
        return err(end_line, ParseErrorKind::MissingInitial);
    };
    let (accepting, accepting_line) = header.accepting.unwrap_or((Vec::new(), end_line));

    let state_ix: HashMap<&str, StateId> =
        states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let symbol_ix: HashMap<&str, usize> =
        alphabet.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let lookup_state = |name: &str, line: usize| {
        state_ix
            .get(name)
            .copied()
            .ok_or_else(|| ParseError {
                line,
                kind: ParseErrorKind::UnknownState(name.to_string()),
            })
    };

    let s = alphabet.len();
    let mut table: Vec<Option<StateId>> = vec![None; states.len() * s];
    for (line, p, a, q) in &transitions {
        let p_ix = lookup_state(p, *line)?;
        let Some(&a_ix) = symbol_ix.get(a.as_str()) else {
            return err(*line, ParseErrorKind::UnknownSymbol(a.clone()));
        };
        let q_ix = lookup_state(q, *line)?;
        let slot = &mut table[p_ix * s + a_ix];
        if slot.is_some() {
            return err(
                *line,
                ParseErrorKind::DuplicateTransition {
                    state: p.clone(),
                    symbol: a.clone(),
                },
            );
        }
        *slot = Some(q_ix);
    }
    if let Some(pos) = table.iter().position(Option::is_none) {
        return err(
            end_line,
            ParseErrorKind::MissingTransition {
                state: states[pos / s].clone(),
                symbol: alphabet[pos % s].clone(),
            },
        );
    }
    let initial = lookup_state(&initial, initial_line)?;
    let accepting = accepting
        .iter()
        .map(|q| lookup_state(q, accepting_line))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = table
        .chunks(s)
        .map(|row| row.iter().map(|t| t.expect("checked complete")).collect())
        .collect();
    Dfa::new(name, states, alphabet, rows, initial, accepting).map_err(|e| ParseError {
        line: 1,
        kind: e.into(),
    })
}

/// Canonical text form: states and symbols in index order, one `trans`
/// line per pair.
pub fn print_dfa(a: &Dfa) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dfa {}", a.name());
    let _ = writeln!(out, "alphabet {}", a.alphabet().join(" "));
    let _ = writeln!(out, "states {}", a.states().join(" "));
    let _ = writeln!(out, "initial {}", a.state_name(a.initial()));
    let accepting: Vec<&str> = a.accepting_states().into_iter().map(|q| a.state_name(q)).collect();
    if accepting.is_empty() {
        out.push_str("accepting\n");
    } else {
        let _ = writeln!(out, "accepting {}", accepting.join(" "));
    }
    for q in 0..a.num_states() {
        for c in 0..a.num_symbols() {
            let _ = writeln!(
                out,
                "trans {} {} {}",
                a.state_name(q),
                a.symbol_name(c),
                a.state_name(a.next(q, c))
            );
        }
    }
    out.push_str("end\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionLiteralError {
    #[error("partition literal must be enclosed in braces")]
    Braces,
    #[error("empty block in partition literal")]
    EmptyBlock,
    #[error("unknown state '{0}' in partition literal")]
    UnknownState(String),
    #[error(transparent)]
    Invalid(#[from] crate::partition::PartitionError),
}

/// Parses `{a0,a1|b0,R0}` against the state names of `a`. Every state must
/// appear in exactly one block.
pub fn parse_partition(a: &Dfa, literal: &str) -> Result<Partition, PartitionLiteralError> {
    let inner = literal
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or(PartitionLiteralError::Braces)?;
    let blocks = inner
        .split('|')
        .map(|block| {
            let members: Vec<&str> = block.split(',').map(str::trim).collect();
            if members.iter().any(|m| m.is_empty()) {
                return Err(PartitionLiteralError::EmptyBlock);
            }
            members
                .into_iter()
                .map(|m| {
                    a.state_index(m)
                        .ok_or_else(|| PartitionLiteralError::UnknownState(m.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::from_blocks(a.num_states(), &blocks)?)
}

/// The literal form of `pi` using the state names of `a`.
pub fn format_partition(a: &Dfa, pi: &Partition) -> String {
    let blocks: Vec<String> = pi
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&q| a.state_name(q)).collect::<Vec<_>>().join(","))
        .collect();
    format!("{{{}}}", blocks.join("|"))
}

fn block_lists(a: &Dfa, pi: &Partition) -> Vec<Vec<String>> {
    pi.blocks()
        .iter()
        .map(|b| b.iter().map(|&q| a.state_name(q).to_string()).collect())
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. The initial state gets an edge from a point node,
/// accepting states are double circles, parallel edges are merged into one
/// labelled edge, and the blocks of `highlight` become clusters.
pub fn export_dot(a: &Dfa, highlight: Option<&Partition>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(a.name()));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  __start [shape=point];\n");
    let node = |q: StateId| {
        let shape = if a.is_accepting(q) { "doublecircle" } else { "circle" };
        format!("{} [shape={}];", quote(a.state_name(q)), shape)
    };
    match highlight.filter(|p| p.len() == a.num_states()) {
        Some(pi) => {
            for (i, block) in pi.blocks().iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{i} {{");
                let _ = writeln!(out, "    label=\"B{i}\";");
                for &q in block {
                    let _ = writeln!(out, "    {}", node(q));
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for q in 0..a.num_states() {
                let _ = writeln!(out, "  {}", node(q));
            }
        }
    }
    let _ = writeln!(out, "  __start -> {};", quote(a.state_name(a.initial())));
    for q in 0..a.num_states() {
        let mut edges: BTreeMap<StateId, Vec<&str>> = BTreeMap::new();
        for c in 0..a.num_symbols() {
            edges.entry(a.next(q, c)).or_default().push(a.symbol_name(c));
        }
        for (t, labels) in edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(a.state_name(q)),
                quote(a.state_name(t)),
                quote(&labels.join(","))
            );
        }
    }
    out.push_str("}\n");
    out
}

/// One flat JSON record per decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub kind: String,
    pub a1_states: usize,
    pub a2_states: usize,
    pub nontrivial: bool,
    pub perfect: bool,
    pub redundant: Option<bool>,
    /// Source partitions of `A` as lists of blocks of state names.
    pub partitions: Option<[Vec<Vec<String>>; 2]>,
    pub witness_kind: String,
}

pub fn report_records(a: &Dfa, report: &DecompositionReport) -> Vec<ReportRecord> {
    report
        .entries
        .iter()
        .map(|e| {
            let d = &e.decomposition;
            let (k, l) = d.sizes();
            ReportRecord {
                kind: d.kind.to_string(),
                a1_states: k,
                a2_states: l,
                nontrivial: e.nontrivial,
                perfect: e.perfect,
                redundant: e.redundant,
                partitions: d
                    .source_partitions
                    .as_ref()
                    .map(|(p1, p2)| [block_lists(a, p1), block_lists(a, p2)]),
                witness_kind: d.witness.name().to_string(),
            }
        })
        .collect()
}

/// The report as a pretty-printed JSON array.
pub fn report_json(a: &Dfa, report: &DecompositionReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_records(a, report))
        .expect("report records serialize");
    s.push('\n');
    s
}

/// The report as an aligned plain-text table.
pub fn report_table(a: &Dfa, report: &DecompositionReport) -> String {
    let flag = |b: bool| if b { "yes" } else { "no" };
    let header = ["kind", "sizes", "nontrivial", "perfect", "redundant", "partitions"];
    let rows: Vec<[String; 6]> = report
        .entries
        .iter()
        .map(|e| {
            let d = &e.decomposition;
            let (k, l) = d.sizes();
            [
                d.kind.to_string(),
                format!("({k},{l})"),
                flag(e.nontrivial).to_string(),
                flag(e.perfect).to_string(),
                e.redundant.map_or("-", flag).to_string(),
                d.source_partitions.as_ref().map_or("-".to_string(), |(p1, p2)| {
                    format!("{} {}", format_partition(a, p1), format_partition(a, p2))
                }),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        let mut text = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i == last {
                text.push_str(cell);
            } else {
                let _ = write!(text, "{:<w$}  ", cell, w = widths[i]);
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_grid, gen_ln};

    #[test]
    fn ln1_document() {
        let text = "dfa ln_1\nalphabet a\nstates q0\ninitial q0\naccepting q0\ntrans q0 a q0\nend\n";
        let d = parse_dfa(text).unwrap();
        assert_eq!(d.num_states(), 1);
        assert!(d.accepts_str("aaa").unwrap());
    }

    #[test]
    fn missing_transition_names_the_pair() {
        let text = "dfa x\nalphabet a b\nstates p q\ninitial p\naccepting\n\
                    trans p a q\ntrans p b p\ntrans q a q\nend\n";
        let e = parse_dfa(text).unwrap_err();
        assert_eq!(e.line, 9);
        assert_eq!(
            e.kind,
            ParseErrorKind::MissingTransition {
                state: "q".into(),
                symbol: "b".into()
            }
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let base = "dfa x\nalphabet a\nstates p\ninitial p\naccepting\n";
        let e = parse_dfa(&format!("{base}trans p z p\nend\n")).unwrap_err();
        assert_eq!((e.line, e.kind), (6, ParseErrorKind::UnknownSymbol("z".into())));
        let e = parse_dfa(&format!("{base}trans p a r\nend\n")).unwrap_err();
        assert_eq!((e.line, e.kind), (6, ParseErrorKind::UnknownState("r".into())));
        let e = parse_dfa(&format!("{base}trans p a p\n# again\ntrans p a p\nend\n")).unwrap_err();
        assert_eq!(e.line, 8);
        assert!(matches!(e.kind, ParseErrorKind::DuplicateTransition { .. }));
        let e = parse_dfa("dfa x\nalphabet a\nstates p\ntrans p a p\nend\n").unwrap_err();
        assert_eq!((e.line, e.kind), (5, ParseErrorKind::MissingInitial));
        let e = parse_dfa("dfa x\nalphabet a\nbogus\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn print_parse_round_trip() {
        let g = gen_grid(2, 2).unwrap();
        let text = print_dfa(&g);
        assert_eq!(parse_dfa(&text).unwrap(), g);
        assert_eq!(print_dfa(&parse_dfa(&text).unwrap()), text);
    }

    #[test]
    fn partition_literals() {
        let g = gen_grid(2, 2).unwrap();
        let p = parse_partition(&g, "{q0_0,q0_1|q1_0,q1_1}").unwrap();
        assert_eq!(p.num_blocks(), 2);
        assert_eq!(format_partition(&g, &p), "{q0_0,q0_1|q1_0,q1_1}");
        assert_eq!(
            parse_partition(&g, "{q0_0|q1_0,q1_1}").unwrap_err(),
            PartitionLiteralError::Invalid(crate::partition::PartitionError::Uncovered(1))
        );
        assert_eq!(
            parse_partition(&g, "q0_0").unwrap_err(),
            PartitionLiteralError::Braces
        );
    }

    #[test]
    fn dot_single_accepting_state() {
        let d = gen_ln(1).unwrap();
        let dot = export_dot(&d, None);
        assert_eq!(dot.matches("doublecircle").count(), 1);
        assert!(dot.contains("__start -> \"q0\""));
    }
}
