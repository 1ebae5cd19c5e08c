//! Edge-list text format and its JSON mirror.
//!
//! ```text
//! # comment
//! n 3
//! 0 1
//! 1 2
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Digraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, GraphError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(
            line,
            format!("expected a decimal integer, got {token:?}"),
        ));
    }
    token
        .parse()
        .map_err(|_| parse_err(line, format!("integer {token:?} out of range")))
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, GraphError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != 2 {
            return Err(parse_err(
                line_no,
                "expected two fields separated by one space",
            ));
        }
        match n {
            None => {
                if fields[0] != "n" {
                    return Err(parse_err(line_no, "first line must be `n <N>`"));
                }
                n = Some(parse_index(fields[1], line_no)?);
            }
            Some(_) => {
                let u = parse_index(fields[0], line_no)?;
                let v = parse_index(fields[1], line_no)?;
                edges.push((line_no, u, v));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing `n <N>` header"))?;
    // validate edge by edge so errors carry the offending line
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(edges.len());
    for &(line_no, u, v) in &edges {
        let err = if u >= n || v >= n {
            Some(GraphError::VertexOutOfRange {
                vertex: u.max(v),
                n,
            })
        } else if u == v {
            Some(GraphError::SelfLoop(u))
        } else if seen.contains(&(u, v)) {
            Some(GraphError::DuplicateEdge(u, v))
        } else if seen.contains(&(v, u)) {
            Some(GraphError::Digon(u.min(v), u.max(v)))
        } else {
            None
        };
        if let Some(e) = err {
            return Err(parse_err(line_no, e.to_string()));
        }
        seen.insert((u, v));
    }
    Ok(
        Digraph::from_edge_list(n, edges.into_iter().map(|(_, u, v)| (u, v)))
            .expect("validated above"),
    )
}

pub fn to_edge_list(d: &Digraph) -> String {
    let mut out = String::with_capacity(8 + 8 * d.edge_count());
    writeln!(out, "n {}", d.n()).unwrap();
    for (u, v) in d.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_json(d: &Digraph) -> String {
    let mirror = EdgeListJson {
        n: d.n(),
        edges: d.edges().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&mirror).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<Digraph, GraphError> {
    let mirror: EdgeListJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    Digraph::from_edge_list(mirror.n, mirror.edges.into_iter().map(|[u, v]| (u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circulant;
    use proptest::prelude::*;

    #[test]
    fn canonical_text_and_json() {
        let d = Digraph::from_edge_list(3, [(2, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(to_edge_list(&d), "n 3\n0 1\n1 2\n2 0\n");
        assert_eq!(to_json(&d), r#"{"n":3,"edges":[[0,1],[1,2],[2,0]]}"#);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let d = parse_edge_list("# five cycle\nn 5\n0 1\n1 2\n\n# mid\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!(d.edge_count(), 5);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_edge_list("n 3\n0 1\n1  2\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("n 3\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }), "{err}");
        let err = parse_edge_list("# nothing\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { .. }));
        let err = parse_edge_list("n 2\n0 -1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(n in 3usize..40, k in 1usize..6) {
            prop_assume!(2 * k < n);
            let d = circulant(n, &(1..=k).collect::<Vec<_>>()).unwrap();
            let text = to_edge_list(&d);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(to_edge_list(&back), text);
            prop_assert_eq!(from_json(&to_json(&d)).unwrap(), d);
        }
    }
}
