//! Reading and writing system digraphs.
//!
//! Three formats are supported:
//!
//! * edge list: optional `n=<count>` header, then one `<src> <dst>` pair per
//!   line; `#` starts a comment;
//! * JSON: `{"n": 6, "edges": [[1, 2], ...], "labels": {"1": "name"}}`,
//!   where `labels` is optional;
//! * a DOT subset: `digraph { 1 -> 2; 2 -> 3; }` with integer node ids.
//!
//! Without a declared count, the node count is the largest referenced index.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    EdgeList,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "txt" => Ok(Format::EdgeList),
            "json" => Ok(Format::Json),
            "dot" | "dot-subset" => Ok(Format::Dot),
            other => Err(Error::argument(format!("unknown graph format `{other}`"))),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Digraph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Json => parse_json(text),
        Format::Dot => parse_dot(text),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a node index, found `{token}`")))?;
    if v == 0 {
        return Err(Error::parse(line, "node indices start at 1"));
    }
    Ok(v)
}

fn build(declared: Option<(usize, usize)>, edges: Vec<(usize, usize, usize)>) -> Result<Digraph> {
    let max_seen = edges.iter().map(|&(i, j, _)| i.max(j)).max().unwrap_or(0);
    let n = match declared {
        Some((n, line)) => {
            if let Some(&(i, j, at)) = edges.iter().find(|&&(i, j, _)| i > n || j > n) {
                return Err(Error::parse(
                    at,
                    format!("edge ({i}, {j}) exceeds the declared node count {n}"),
                ));
            }
            if n == 0 {
                return Err(Error::parse(line, "node count must be positive"));
            }
            n
        }
        None => max_seen,
    };
    if n == 0 {
        return Err(Error::parse(
            1,
            "graph has no nodes; declare one with `n=<count>`",
        ));
    }
    Digraph::new(n, edges.into_iter().map(|(i, j, _)| (i, j)))
}

fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("n=") {
            if declared.is_some() || !edges.is_empty() {
                return Err(Error::parse(
                    line,
                    "the `n=` header must come before any edge",
                ));
            }
            let n = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(line, format!("bad node count `{}`", rest.trim())))?;
            declared = Some((n, line));
            continue;
        }
        let mut tokens = content.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::parse(line, "expected `<src> <dst>`"));
        };
        edges.push((parse_index(a, line)?, parse_index(b, line)?, line));
    }
    build(declared, edges)
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, String>,
}

fn parse_json(text: &str) -> Result<Digraph> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if let Some(&[i, j]) = doc.edges.iter().find(|e| e[0] == 0 || e[1] == 0) {
        return Err(Error::parse(
            1,
            format!("edge ({i}, {j}): node indices start at 1"),
        ));
    }
    let mut labels = BTreeMap::new();
    for (key, name) in doc.labels {
        let node = key
            .parse::<usize>()
            .map_err(|_| Error::parse(1, format!("label key `{key}` is not a node index")))?;
        labels.insert(node, name);
    }
    let edges = doc.edges.into_iter().map(|[i, j]| (i, j, 1)).collect();
    build(Some((doc.n, 1)), edges)?.with_labels(labels)
}

fn parse_dot(text: &str) -> Result<Digraph> {
    // Strip `//` comments, then walk statements between the outer braces.
    let cleaned: Vec<String> = text
        .lines()
        .map(|l| l.split("//").next().unwrap_or("").to_string())
        .collect();
    let joined = cleaned.join("\n");
    let open = joined
        .find('{')
        .ok_or_else(|| Error::parse(1, "expected `digraph {`"))?;
    let header = joined[..open].trim();
    let mut words = header.split_whitespace();
    if words.next() != Some("digraph") {
        return Err(Error::parse(1, "expected `digraph {`"));
    }
    let close = joined
        .rfind('}')
        .ok_or_else(|| Error::parse(cleaned.len().max(1), "missing closing `}`"))?;
    if close < open {
        return Err(Error::parse(1, "missing closing `}`"));
    }
    if !joined[close + 1..].trim().is_empty() {
        let line = joined[..close].matches('\n').count() + 1;
        return Err(Error::parse(line, "unexpected text after `}`"));
    }

    let body_start_line = joined[..open].matches('\n').count() + 1;
    let body = &joined[open + 1..close];
    let mut edges = Vec::new();
    let mut max_node = 0;
    let mut line = body_start_line;
    for segment in body.split_inclusive(['\n', ';']) {
        let stmt_line = line;
        line += segment.matches('\n').count();
        let stmt = segment.trim_end_matches(['\n', ';']).trim();
        if stmt.is_empty() {
            continue;
        }
        let parts: Vec<&str> = stmt.split("->").map(str::trim).collect();
        let mut nodes = Vec::with_capacity(parts.len());
        for part in parts {
            let node = parse_index(part, stmt_line)?;
            max_node = max_node.max(node);
            nodes.push(node);
        }
        for pair in nodes.windows(2) {
            edges.push((pair[0], pair[1], stmt_line));
        }
    }
    let declared = (max_node > 0).then_some((max_node, body_start_line));
    build(declared, edges)
}

pub fn to_edge_list(g: &Digraph) -> String {
    let mut out = format!("n={}\n", g.node_count());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

pub fn to_json(g: &Digraph) -> String {
    let doc = GraphJson {
        n: g.node_count(),
        edges: g.edges().map(|(i, j)| [i, j]).collect(),
        labels: g
            .labels()
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph json serialization")
}

/// DOT export. Isolated nodes are listed as bare statements so the node
/// count survives a round trip.
pub fn to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph {\n");
    let mut touched = vec![false; g.node_count()];
    for (i, j) in g.edges() {
        touched[i - 1] = true;
        touched[j - 1] = true;
    }
    for (v, _) in touched.iter().enumerate().filter(|(_, t)| !**t) {
        let _ = writeln!(out, "  {};", v + 1);
    }
    for (i, j) in g.edges() {
        let _ = writeln!(out, "  {i} -> {j};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const G1: &str = "1 2\n2 1\n2 3\n2 4\n1 5\n1 6";

    #[test]
    fn edge_list_g1() {
        let g = parse_graph(G1, Format::EdgeList).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn edge_list_header_only() {
        let g = parse_graph("n=1\n", Format::EdgeList).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn edge_list_dedup_and_comments() {
        let g = parse_graph("# two copies\n1 2\n1 2   # again\n", Format::EdgeList).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let err = parse_graph("1 2\n2 x\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_graph("1 2\n0 1\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_graph("n=2\n1 3\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_graph("1 2 3\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err:?}");
        assert!(parse_graph("", Format::EdgeList).is_err());
    }

    #[test]
    fn json_with_labels() {
        let text = r#"{"n": 3, "edges": [[1, 2], [2, 3], [1, 2]], "labels": {"2": "pump"}}"#;
        let g = parse_graph(text, Format::Json).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        assert_eq!(g.label(2), Some("pump"));
        assert!(parse_graph(r#"{"n": 2, "edges": [[1, 3]]}"#, Format::Json).is_err());
        assert!(parse_graph(r#"{"n": 2, "edges": [[0, 1]]}"#, Format::Json).is_err());
    }

    #[test]
    fn dot_subset() {
        let text = "digraph g {\n  1 -> 2;\n  2 -> 3 -> 1;\n  5;\n}\n";
        let g = parse_graph(text, Format::Dot).unwrap();
        assert_eq!(g.node_count(), 5);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 2), (2, 3), (3, 1)]);

        let err = parse_graph("digraph {\n 1 -> 2;\n 2 -> b;\n}", Format::Dot).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(parse_graph("graph { 1 -- 2 }", Format::Dot).is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!("edge-list".parse::<Format>().unwrap(), Format::EdgeList);
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
        assert!("yaml".parse::<Format>().is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Digraph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((1..=n, 1..=n), 0..30)
                .prop_map(move |edges| Digraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn writers_round_trip(g in arb_graph()) {
            prop_assert_eq!(&parse_graph(&to_edge_list(&g), Format::EdgeList).unwrap(), &g);
            prop_assert_eq!(&parse_graph(&to_json(&g), Format::Json).unwrap(), &g);
            prop_assert_eq!(&parse_graph(&to_dot(&g), Format::Dot).unwrap(), &g);
        }
    }
}
