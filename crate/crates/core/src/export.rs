//! File formats: graph dumps (JSON, DOT) and tree sets (JSON, DOT).
//!
//! Every writer sorts what it emits, so equal inputs give equal bytes. Tree
//! sets read back through [`read_tree_set`] are re-verified before use.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cayley::GodanGraph;
use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Vertex};
use crate::idst::{godan_graph, SteinerTreeSet};
use crate::verify::{verify_idst, VerificationReport};
use crate::Edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?} (json, dot, csv)"))),
        }
    }
}

/// `{n, vertices, edges}` with vertex strings and both lists sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDump {
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphDump {
    pub fn of(g: &GodanGraph) -> Self {
        let mut vertices: Vec<String> = (0..g.order() as Vertex).map(|v| g.label(v)).collect();
        vertices.sort();
        let mut edges: Vec<[String; 2]> = g.edges().into_iter().map(|(a, b)| label_pair(g, a, b)).collect();
        edges.sort();
        GraphDump { n: g.n(), vertices, edges }
    }
}

fn label_pair(g: &dyn Graph, a: Vertex, b: Vertex) -> [String; 2] {
    let (x, y) = (g.label(a), g.label(b));
    if x <= y {
        [x, y]
    } else {
        [y, x]
    }
}

pub fn graph_json(g: &GodanGraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GraphDump::of(g))? + "\n")
}

/// DOT with one `subgraph cluster_…` per symbol at position `m`.
pub fn graph_dot(g: &GodanGraph, m: usize) -> Result<String> {
    g.check_position(m)?;
    let mut members: BTreeMap<u8, Vec<String>> = BTreeMap::new();
    for v in 0..g.order() as Vertex {
        members.entry(g.symbol_at(v, m)).or_default().push(g.label(v));
    }
    let mut out = format!("graph EA{} {{\n  node [shape=circle, fontsize=10];\n", g.n());
    for (sym, mut labels) in members {
        labels.sort();
        let _ = writeln!(out, "  subgraph cluster_{m}_{sym} {{\n    label=\"position {m} = {sym}\";");
        for l in labels {
            let _ = writeln!(out, "    \"{l}\";");
        }
        out.push_str("  }\n");
    }
    for [a, b] in GraphDump::of(g).edges {
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    Ok(out)
}

/// The on-disk tree-set record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSetRecord {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: [String; 4],
    pub case: String,
    pub trees: Vec<Vec<[String; 2]>>,
}

impl TreeSetRecord {
    pub fn of(g: &GodanGraph, set: &SteinerTreeSet) -> Self {
        let trees = set
            .trees
            .iter()
            .map(|t| {
                let mut es: Vec<[String; 2]> = t.iter().map(|&(a, b)| label_pair(g, a, b)).collect();
                es.sort();
                es
            })
            .collect();
        TreeSetRecord { n: g.n(), s: set.terminals.map(|v| g.label(v)), case: set.case.to_string(), trees }
    }
}

pub fn tree_set_json(g: &GodanGraph, set: &SteinerTreeSet) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TreeSetRecord::of(g, set))? + "\n")
}

const PALETTE: [&str; 8] = ["red", "blue", "forestgreen", "darkorange", "purple", "brown", "deeppink", "cyan4"];

/// Only the vertices the trees touch; terminals drawn as double circles.
pub fn tree_set_dot(g: &GodanGraph, set: &SteinerTreeSet) -> String {
    let rec = TreeSetRecord::of(g, set);
    let mut out = format!("graph IDST_EA{} {{\n  label=\"{}\";\n", rec.n, rec.case);
    let mut terms = rec.s.to_vec();
    terms.sort();
    for t in &terms {
        let _ = writeln!(out, "  \"{t}\" [shape=doublecircle];");
    }
    for (i, tree) in rec.trees.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, "  subgraph tree_{} {{\n    edge [color={color}, label=\"T{}\"];", i + 1, i + 1);
        for [a, b] in tree {
            let _ = writeln!(out, "    \"{a}\" -- \"{b}\";");
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// A tree set read from JSON together with its fresh verification.
#[derive(Clone, Debug)]
pub struct LoadedTreeSet {
    pub n: usize,
    pub terminals: [Vertex; 4],
    pub trees: Vec<Vec<Edge>>,
    pub case: String,
    pub report: VerificationReport,
}

impl LoadedTreeSet {
    pub fn is_valid(&self) -> bool {
        self.report.overall && self.trees.len() + 1 == self.n
    }
}

/// Parses a tree-set record and re-verifies it against `EA_n`.
pub fn read_tree_set(text: &str) -> Result<LoadedTreeSet> {
    let rec: TreeSetRecord = serde_json::from_str(text)?;
    let g = godan_graph(rec.n)?;
    let parse = |s: &str| g.parse_vertex(s);
    let terminals = [parse(&rec.s[0])?, parse(&rec.s[1])?, parse(&rec.s[2])?, parse(&rec.s[3])?];
    let trees = rec
        .trees
        .iter()
        .map(|t| t.iter().map(|[a, b]| Ok(ordered(parse(a)?, parse(b)?))).collect::<Result<Vec<Edge>>>())
        .collect::<Result<Vec<_>>>()?;
    let report = verify_idst(g, &trees, &terminals);
    Ok(LoadedTreeSet { n: rec.n, terminals, trees, case: rec.case, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_dump_of_ea3() {
        let g = GodanGraph::new(3).unwrap();
        let d = GraphDump::of(&g);
        assert_eq!(d.vertices, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(d.edges.len(), 9);
        assert!(d.edges.windows(2).all(|w| w[0] < w[1]));
        assert!(d.edges.iter().all(|[a, b]| a < b));
    }

    #[test]
    fn dot_groups_clusters() {
        let g = GodanGraph::new(4).unwrap();
        let dot = graph_dot(&g, 4).unwrap();
        assert_eq!(dot.matches("subgraph cluster_4_").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 48);
        assert!(graph_dot(&g, 3).is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
