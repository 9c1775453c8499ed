//! Plain-text graph files.
//!
//! ```text
//! # optional comments
//! vertices 4
//! edge 1 2
//! edge 1 2
//! ```
//!
//! Repeated `edge` lines are parallel edges. The degree profile is inferred.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::block::BlockSolution;
use crate::dag::{Dag, DegreeProfile, Edge, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Parses and validates a graph file; on failure every problem found is
/// reported with the line it refers to.
pub fn parse_graph(text: &str) -> Result<Dag, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut n: Option<(usize, usize)> = None;
    let mut edges: Vec<(Edge, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let mut err = |message: String| diags.push(Diagnostic { line, message });
        match words.as_slice() {
            ["vertices", count] => match count.parse::<usize>() {
                Ok(c) if n.is_none() => n = Some((c, line)),
                Ok(_) => err("duplicate `vertices` line".into()),
                Err(_) => err(format!("bad vertex count {count:?}")),
            },
            ["edge", u, v] => match (u.parse::<usize>(), v.parse::<usize>()) {
                (Ok(u), Ok(v)) => {
                    if n.is_none() {
                        err("`edge` before `vertices`".into());
                    }
                    edges.push(((u, v), line));
                }
                _ => err(format!("bad edge endpoints {u:?} {v:?}")),
            },
            _ => err(format!("unrecognised line {content:?}")),
        }
    }
    let Some((count, count_line)) = n else {
        diags.push(Diagnostic {
            line: text.lines().count().max(1),
            message: "missing `vertices` line".into(),
        });
        return Err(diags);
    };
    if !diags.is_empty() {
        return Err(diags);
    }
    let list: Vec<Edge> = edges.iter().map(|(e, _)| *e).collect();
    match Dag::with_inferred_profile(count, list) {
        Ok(d) => Ok(d),
        Err(crate::error::Error::InvalidGraph(violations)) => Err(violations
            .into_iter()
            .map(|v| {
                let edge_line = |e: &Edge| edges.iter().find(|(x, _)| x == e).map(|(_, l)| *l);
                let line = match &v {
                    Violation::EdgeOutOfRange(e) | Violation::BackwardEdge(e) => edge_line(e),
                    Violation::SelfLoop(u) => edge_line(&(*u, *u)),
                    _ => None,
                }
                .unwrap_or(count_line);
                Diagnostic {
                    line,
                    message: v.to_string(),
                }
            })
            .collect()),
        Err(e) => Err(vec![Diagnostic {
            line: count_line,
            message: e.to_string(),
        }]),
    }
}

/// Renders a graph file; every line in `comments` becomes a `#` line.
pub fn write_graph(dag: &Dag, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    out.push_str(&format!("vertices {}\n", dag.vertex_count()));
    for (u, v) in dag.edges() {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    out
}

/// The real part of a block solution as a graph file; arcs to or from the
/// dummy vertices `0` and `k + 1` appear only as comments.
pub fn write_block_solution(sol: &BlockSolution) -> String {
    let k = sol.k;
    let all = sol.assignment.edges();
    let mut comments = vec![
        format!("block k={k} f={} proven_optimal={}", sol.f, sol.proven_optimal),
        format!("dummy vertices 0 and {}", k + 1),
    ];
    let mut real = Vec::new();
    for &(u, v) in &all {
        if u == 0 || v == k + 1 {
            comments.push(format!("dummy edge {u} {v}"));
        } else {
            real.push((u, v));
        }
    }
    let profile = DegreeProfile::infer(k, &real);
    let dag = Dag::new_unchecked(k, real, profile);
    write_graph(&dag, &comments)
}
