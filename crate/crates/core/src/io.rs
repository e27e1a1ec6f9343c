//! Text and JSON graph formats.
//!
//! Text: a header line `n <order>`, then one `u v` line per arrow with
//! 0-based vertices. `#` starts a comment; blank lines are ignored.
//!
//! JSON: `{"n": <order>, "arrows": [[u, v], ...]}`.
//!
//! Writers emit arrows in lexicographic order, so writing then reading
//! reproduces the adjacency exactly.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Arrow, Digraph};

/// A parse that succeeded, possibly with non-fatal remarks.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Digraph,
    /// Human-readable warnings, e.g. duplicate arrows that were merged.
    pub warnings: Vec<String>,
}

pub fn to_text(g: &Digraph) -> String {
    let mut s = format!("n {}\n", g.order());
    for (u, v) in g.arrows() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_text(src: &str) -> Result<Parsed> {
    let mut order: Option<usize> = None;
    let mut graph: Option<Digraph> = None;
    let mut warnings = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let perr = |msg: String| Error::Parse { line, msg };
        match (order, fields.as_slice()) {
            (None, ["n", k]) => {
                let n: usize = k.parse().map_err(|_| perr(format!("bad order {k:?}")))?;
                let g = Digraph::new(n).map_err(|e| perr(e.to_string()))?;
                order = Some(n);
                graph = Some(g);
            }
            (None, _) => return Err(perr(format!("expected header \"n <order>\", found {body:?}"))),
            (Some(_), [a, b]) => {
                let u: usize = a.parse().map_err(|_| perr(format!("bad vertex {a:?}")))?;
                let v: usize = b.parse().map_err(|_| perr(format!("bad vertex {b:?}")))?;
                let g = graph.as_mut().expect("header seen");
                if u == v {
                    return Err(perr(format!("loop \"{u} {v}\" is not allowed")));
                }
                let fresh = g.insert(u, v).map_err(|e| perr(e.to_string()))?;
                if !fresh {
                    warnings.push(format!("line {line}: duplicate arrow ({u},{v}) ignored"));
                }
            }
            (Some(_), _) => return Err(perr(format!("expected \"u v\", found {body:?}"))),
        }
    }
    let graph = graph.ok_or(Error::Parse {
        line: src.lines().count().max(1),
        msg: "missing header \"n <order>\"".into(),
    })?;
    Ok(Parsed { graph, warnings })
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    arrows: Vec<[usize; 2]>,
}

fn json_graph(g: &Digraph) -> JsonGraph {
    JsonGraph {
        n: g.order(),
        arrows: g.arrows().map(|(u, v)| [u, v]).collect(),
    }
}

pub fn to_json_value(g: &Digraph) -> serde_json::Value {
    serde_json::to_value(json_graph(g)).expect("graph serialises")
}

pub fn to_json(g: &Digraph) -> String {
    serde_json::to_string(&json_graph(g)).expect("graph serialises")
}

pub fn parse_json(src: &str) -> Result<Parsed> {
    let jg: JsonGraph = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let mut g = Digraph::new(jg.n).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
    let mut warnings = Vec::new();
    for (i, [u, v]) in jg.arrows.into_iter().enumerate() {
        let fresh = g.insert(u, v).map_err(|e| Error::Parse {
            line: 1,
            msg: format!("arrow #{i}: {e}"),
        })?;
        if !fresh {
            warnings.push(format!("arrow #{i}: duplicate arrow ({u},{v}) ignored"));
        }
    }
    Ok(Parsed { graph: g, warnings })
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_any(src: &str) -> Result<Parsed> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

/// Convenience for tests and builders.
pub fn arrows_of(g: &Digraph) -> Vec<Arrow> {
    g.arrows().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cycle() {
        let p = parse_text("n 3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(arrows_of(&p.graph), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_text("# a graph\n\nn 2 # order\n0 1 # arrow\n\n").unwrap();
        assert_eq!(arrows_of(&p.graph), vec![(0, 1)]);
    }

    #[test]
    fn loop_names_line() {
        let e = parse_text("n 3\n0 1\n1 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "loop \"1 1\" is not allowed".into() });
    }

    #[test]
    fn duplicates_warn() {
        let p = parse_text("n 2\n0 1\n0 1\n").unwrap();
        assert_eq!(p.graph.arrow_count(), 1);
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].contains("line 3"));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_text("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_text("n 2\n0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_text("n 2\n0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_text("n 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_text(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_form() {
        let g = parse_text("n 3\n0 1\n1 2\n2 0").unwrap().graph;
        let s = to_json(&g);
        assert_eq!(s, r#"{"n":3,"arrows":[[0,1],[1,2],[2,0]]}"#);
        assert_eq!(parse_any(&s).unwrap().graph, g);
        assert!(parse_json(r#"{"n":2,"arrows":[[1,1]]}"#).is_err());
    }
}
