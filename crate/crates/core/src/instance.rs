//! Instance file format shared by the CLI and the generators.
//!
//! ASCII lines, newline-terminated, fields space-separated:
//!   c <comment>
//!   p <stc|cd> <n> <m>
//!   e <u> <v>        (1-indexed endpoints, m lines)
//!
//! Vertices are 1-indexed on disk and 0-indexed in memory; the conversion
//! happens here and only here.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Stc,
    Cd,
}

impl ProblemKind {
    pub fn token(self) -> &'static str {
        match self {
            ProblemKind::Stc => "stc",
            ProblemKind::Cd => "cd",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stc" => Ok(ProblemKind::Stc),
            "cd" => Ok(ProblemKind::Cd),
            other => Err(format!("unknown problem: {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub problem: ProblemKind,
    pub graph: Graph,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `p <stc|cd> <n> <m>` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("malformed edge line: {0}")]
    BadEdge(String),
    #[error("unrecognized line: {0}")]
    UnknownLine(String),
    #[error("edge before header")]
    EdgeBeforeHeader,
    #[error("declared {declared} edges but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex {0} out of range 1..={1}")]
    EndpointOutOfRange(usize, usize),
    #[error("{0}")]
    Graph(GraphError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(ProblemKind, usize, usize, usize)> = None; // + header line
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields.first() {
            Some(&"p") => {
                if header.is_some() {
                    return Err(err(lineno, ParseErrorKind::BadHeader("duplicate".into())));
                }
                if fields.len() != 4 {
                    return Err(err(lineno, ParseErrorKind::BadHeader(line.into())));
                }
                let problem = fields[1]
                    .parse::<ProblemKind>()
                    .map_err(|e| err(lineno, ParseErrorKind::BadHeader(e)))?;
                let n = fields[2]
                    .parse::<usize>()
                    .map_err(|_| err(lineno, ParseErrorKind::BadHeader(line.into())))?;
                let m = fields[3]
                    .parse::<usize>()
                    .map_err(|_| err(lineno, ParseErrorKind::BadHeader(line.into())))?;
                header = Some((problem, n, m, lineno));
            }
            Some(&"e") => {
                let Some((_, n, _, _)) = header else {
                    return Err(err(lineno, ParseErrorKind::EdgeBeforeHeader));
                };
                if fields.len() != 3 {
                    return Err(err(lineno, ParseErrorKind::BadEdge(line.into())));
                }
                let parse_endpoint = |s: &str| -> Result<usize, ParseError> {
                    let v: usize = s
                        .parse()
                        .map_err(|_| err(lineno, ParseErrorKind::BadEdge(line.into())))?;
                    if v == 0 || v > n {
                        return Err(err(lineno, ParseErrorKind::EndpointOutOfRange(v, n)));
                    }
                    Ok(v - 1)
                };
                let u = parse_endpoint(fields[1])?;
                let v = parse_endpoint(fields[2])?;
                // build incrementally so duplicate/self-loop errors carry
                // this line number
                let mut probe = pairs.clone();
                probe.push((u, v));
                if let Err(e) = Graph::from_edge_list(n, probe.iter().copied()) {
                    return Err(err(lineno, ParseErrorKind::Graph(e)));
                }
                pairs.push((u, v));
            }
            _ => return Err(err(lineno, ParseErrorKind::UnknownLine(line.into()))),
        }
    }
    let Some((problem, n, m, header_line)) = header else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if pairs.len() != m {
        return Err(err(
            header_line,
            ParseErrorKind::EdgeCountMismatch {
                declared: m,
                found: pairs.len(),
            },
        ));
    }
    let graph = Graph::from_edge_list(n, pairs)
        .map_err(|e| err(header_line, ParseErrorKind::Graph(e)))?;
    Ok(Instance { problem, graph })
}

/// Emits the exact on-disk form: header plus one `e` line per edge in index
/// order, every line newline-terminated.
pub fn emit(problem: ProblemKind, g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {} {}", problem, g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_graphs;

    #[test]
    fn parse_examples() {
        let text = "c demo\np stc 3 2\ne 1 2\ne 2 3\n";
        let inst = parse(text).unwrap();
        assert_eq!(inst.problem, ProblemKind::Stc);
        assert_eq!(inst.graph.vertex_count(), 3);
        assert_eq!(inst.graph.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("p stc 3 1\ne 1 4\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::EndpointOutOfRange(4, 3)));

        let e = parse("p stc 3 2\ne 1 2\n").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::EdgeCountMismatch { declared: 2, found: 1 }
        ));

        let e = parse("e 1 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::EdgeBeforeHeader));

        let e = parse("p stc 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Graph(_)));

        let e = parse("hello\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnknownLine(_)));
    }

    #[test]
    fn roundtrip_preserves_graph_and_problem() {
        for g in random_graphs(107, 40, 9) {
            for problem in [ProblemKind::Stc, ProblemKind::Cd] {
                let text = emit(problem, &g);
                let inst = parse(&text).unwrap();
                assert_eq!(inst.problem, problem);
                assert_eq!(inst.graph, g);
            }
        }
    }
}
