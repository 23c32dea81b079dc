//! Plain-text formats for graphs and tree decompositions, and DOT export.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! v 4
//! e 0 1
//! e 1 2
//! rot 1 0.1 1.0
//! ```
//!
//! `e` lines list edges in id order. `rot v` gives the rotation at `v` as
//! darts `edge.end`, where end 0 is the edge's first endpoint. Rotations are
//! optional but must be given for every vertex or for none.
//!
//! Decomposition files start with `td <nodes> <width> <host vertices>`,
//! followed by one `b <node> <vertices..>` line per node and one `t a b`
//! line per tree edge.

use std::fmt::Write;

use crate::decomp::TreeDecomposition;
use crate::embed::{Dart, EmbeddedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub rotation: Option<Vec<Vec<Dart>>>,
}

impl GraphFile {
    /// The embedding, when the file carries a rotation system.
    pub fn embedded(&self) -> Result<Option<EmbeddedGraph>> {
        match &self.rotation {
            None => Ok(None),
            Some(r) => EmbeddedGraph::new(self.graph.clone(), r.clone()).map(Some),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

/// Lines with comments and blanks removed, numbered from 1.
fn content(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub fn write_graph(g: &Graph, rotation: Option<&[Vec<Dart>]>) -> String {
    let mut s = String::new();
    writeln!(s, "v {}", g.n()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    if let Some(rot) = rotation {
        for (v, darts) in rot.iter().enumerate() {
            write!(s, "rot {v}").unwrap();
            for d in darts {
                write!(s, " {}.{}", d.edge(), d.end()).unwrap();
            }
            s.push('\n');
        }
    }
    s
}

pub fn write_embedded(e: &EmbeddedGraph) -> String {
    write_graph(e.graph(), Some(e.rotations()))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut rot: Vec<Option<Vec<Dart>>> = Vec::new();
    for (line, toks) in content(text) {
        match toks[0] {
            "v" => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate `v` line"));
                }
                let count = number(toks.get(1).copied(), line, "vertex count")?;
                n = Some(count);
                rot = vec![None; count];
            }
            "e" => {
                let count = n.ok_or_else(|| parse_err(line, "`e` before `v`"))?;
                let u = number(toks.get(1).copied(), line, "endpoint")?;
                let v = number(toks.get(2).copied(), line, "endpoint")?;
                if u >= count || v >= count {
                    return Err(parse_err(line, format!("endpoint out of range for {count} vertices")));
                }
                edges.push((u, v));
            }
            "rot" => {
                let count = n.ok_or_else(|| parse_err(line, "`rot` before `v`"))?;
                let v = number(toks.get(1).copied(), line, "vertex")?;
                if v >= count {
                    return Err(parse_err(line, format!("vertex {v} out of range")));
                }
                if rot[v].is_some() {
                    return Err(parse_err(line, format!("second rotation for vertex {v}")));
                }
                let mut darts = Vec::new();
                for tok in &toks[2..] {
                    let (e, end) = tok.split_once('.').ok_or_else(|| parse_err(line, format!("bad dart `{tok}`")))?;
                    let e = number(Some(e), line, "dart edge")?;
                    let end = number(Some(end), line, "dart end")?;
                    if end > 1 {
                        return Err(parse_err(line, format!("dart end must be 0 or 1, got {end}")));
                    }
                    darts.push(Dart::new(e, end));
                }
                rot[v] = Some(darts);
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `v` line"))?;
    let graph = Graph::new(n, &edges)?;
    let given = rot.iter().filter(|r| r.is_some()).count();
    let rotation = if given == 0 {
        None
    } else if given == n {
        Some(rot.into_iter().map(Option::unwrap).collect())
    } else {
        return Err(parse_err(0, format!("rotations given for {given} of {n} vertices")));
    };
    Ok(GraphFile { graph, rotation })
}

pub fn write_decomposition(td: &TreeDecomposition) -> String {
    let mut s = String::new();
    writeln!(s, "td {} {} {}", td.len(), td.width(), td.host_n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(s, "b {i}").unwrap();
        for v in bag {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    for &(a, b) in &td.tree_edges {
        writeln!(s, "t {a} {b}").unwrap();
    }
    s
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree_edges = Vec::new();
    for (line, toks) in content(text) {
        match toks[0] {
            "td" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate `td` line"));
                }
                let nodes = number(toks.get(1).copied(), line, "node count")?;
                let width = number(toks.get(2).copied(), line, "width")?;
                let host = number(toks.get(3).copied(), line, "host vertex count")?;
                header = Some((nodes, width, host));
                bags = vec![None; nodes];
            }
            "b" => {
                let (nodes, _, host) = header.ok_or_else(|| parse_err(line, "`b` before `td`"))?;
                let node = number(toks.get(1).copied(), line, "node")?;
                if node >= nodes || bags[node].is_some() {
                    return Err(parse_err(line, format!("bad or repeated node {node}")));
                }
                let mut bag = Vec::with_capacity(toks.len() - 2);
                for tok in &toks[2..] {
                    let v = number(Some(tok), line, "vertex")?;
                    if v >= host {
                        return Err(parse_err(line, format!("vertex {v} out of range")));
                    }
                    bag.push(v);
                }
                bags[node] = Some(bag);
            }
            "t" => {
                let (nodes, _, _) = header.ok_or_else(|| parse_err(line, "`t` before `td`"))?;
                let a = number(toks.get(1).copied(), line, "node")?;
                let b = number(toks.get(2).copied(), line, "node")?;
                if a >= nodes || b >= nodes {
                    return Err(parse_err(line, "tree edge endpoint out of range"));
                }
                tree_edges.push((a, b));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let (_, width, host) = header.ok_or_else(|| parse_err(0, "missing `td` line"))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(0, format!("node {i} has no `b` line"))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(host, bags, tree_edges);
    if td.width() != width {
        return Err(parse_err(0, format!("header width {width} but bags give {}", td.width())));
    }
    Ok(td)
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn decomposition_to_dot(td: &TreeDecomposition) -> String {
    let mut s = String::from("graph TD {\n  node [shape=box];\n");
    for (i, bag) in td.bags.iter().enumerate() {
        let label: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        writeln!(s, "  b{i} [label=\"{}\"];", label.join(" ")).unwrap();
    }
    for &(a, b) in &td.tree_edges {
        writeln!(s, "  b{a} -- b{b};").unwrap();
    }
    s.push_str("}\n");
    s
}
