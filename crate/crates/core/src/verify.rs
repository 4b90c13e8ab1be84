//! Certification of tree sets and the structural property suite.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::{AltNetwork, AnPart, ClusterRef, GodanGraph};
use crate::connectivity::{max_internally_disjoint_paths, vertex_connectivity};
use crate::graph::{ordered, Graph, Vertex, View};
use crate::perm::factorial;
use crate::Edge;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), checks: Vec::new(), overall: true }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.overall &= pass;
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Details of every failing check, one per line.
    pub fn summary(&self) -> String {
        self.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("\n")
    }

    fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.push(format!("{prefix}{}", c.name), c.pass, c.detail);
        }
    }
}

fn tree_vertices(tree: &[Edge], s: &[Vertex]) -> BTreeSet<Vertex> {
    let mut vs: BTreeSet<Vertex> = tree.iter().flat_map(|&(a, b)| [a, b]).collect();
    if tree.is_empty() && s.len() == 1 {
        vs.insert(s[0]);
    }
    vs
}

/// Checks that `tree` is a tree of `g` containing every vertex of `s`.
pub fn verify_stree(g: &dyn Graph, tree: &[Edge], s: &[Vertex]) -> VerificationReport {
    let mut report = VerificationReport::new("S-tree");
    let absent: Vec<String> = tree
        .iter()
        .filter(|&&(a, b)| {
            (a as usize) >= g.order() || (b as usize) >= g.order() || !g.has_edge(a, b)
        })
        .map(|&(a, b)| format!("{}-{}", label(g, a), label(g, b)))
        .collect();
    report.push(
        "edges exist",
        absent.is_empty(),
        if absent.is_empty() { String::new() } else { format!("edge absent: {}", absent.join(", ")) },
    );
    let unique: HashSet<Edge> = tree.iter().map(|&(a, b)| ordered(a, b)).collect();
    report.push(
        "no repeated edges",
        unique.len() == tree.len(),
        if unique.len() == tree.len() { String::new() } else { "repeated edge".into() },
    );
    let vs = tree_vertices(tree, s);
    let acyclic = unique.len() + 1 == vs.len() || vs.is_empty();
    let connected = is_connected(&vs, &unique);
    report.push("acyclic", acyclic || !connected, if acyclic { "" } else { "cycle present" });
    report.push("connected", connected, if connected { "" } else { "tree is disconnected" });
    let missing: Vec<String> = s.iter().filter(|v| !vs.contains(v)).map(|&v| label(g, v)).collect();
    report.push(
        "S covered",
        missing.is_empty(),
        if missing.is_empty() { String::new() } else { format!("S not covered: {}", missing.join(", ")) },
    );
    report
}

fn label(g: &dyn Graph, v: Vertex) -> String {
    if (v as usize) < g.order() {
        g.label(v)
    } else {
        format!("#{v}")
    }
}

fn is_connected(vs: &BTreeSet<Vertex>, edges: &HashSet<Edge>) -> bool {
    let Some(&first) = vs.iter().next() else { return true };
    let mut parent: std::collections::HashMap<Vertex, Vertex> = vs.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut std::collections::HashMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let mut r = v;
        while p[&r] != r {
            r = p[&r];
        }
        let mut c = v;
        while p[&c] != r {
            let next = p[&c];
            p.insert(c, r);
            c = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent.insert(ra, rb);
    }
    let root = find(&mut parent, first);
    vs.iter().all(|&v| find(&mut parent, v) == root)
}

/// Checks every tree individually and then pairwise: vertex sets meet
/// exactly in `s` and edge sets are disjoint.
pub fn verify_idst(g: &dyn Graph, trees: &[Vec<Edge>], s: &[Vertex]) -> VerificationReport {
    let mut report = VerificationReport::new(format!("{} trees", trees.len()));
    let sset: BTreeSet<Vertex> = s.iter().copied().collect();
    report.push(
        "distinct terminals",
        sset.len() == s.len(),
        if sset.len() == s.len() { String::new() } else { "terminal repeated".into() },
    );
    for (i, tree) in trees.iter().enumerate() {
        report.absorb(&format!("tree {i}: "), verify_stree(g, tree, s));
    }
    let vertex_sets: Vec<BTreeSet<Vertex>> = trees.iter().map(|t| tree_vertices(t, s)).collect();
    let edge_sets: Vec<HashSet<Edge>> =
        trees.iter().map(|t| t.iter().map(|&(a, b)| ordered(a, b)).collect()).collect();
    let mut shared_vertices = Vec::new();
    let mut shared_edges = Vec::new();
    for i in 0..trees.len() {
        for j in i + 1..trees.len() {
            let inner: Vec<Vertex> =
                vertex_sets[i].intersection(&vertex_sets[j]).filter(|v| !sset.contains(v)).copied().collect();
            if !inner.is_empty() {
                shared_vertices.push(format!(
                    "trees {i},{j} share {}",
                    inner.iter().map(|&v| label(g, v)).collect::<Vec<_>>().join(" ")
                ));
            }
            let common = edge_sets[i].intersection(&edge_sets[j]).count();
            if common > 0 {
                shared_edges.push(format!("trees {i},{j} share {common} edges"));
            }
        }
    }
    report.push(
        "vertex intersection is S",
        shared_vertices.is_empty(),
        if shared_vertices.is_empty() {
            String::new()
        } else {
            format!("internal vertex shared: {}", shared_vertices.join("; "))
        },
    );
    report.push(
        "edge intersection is empty",
        shared_edges.is_empty(),
        if shared_edges.is_empty() { String::new() } else { format!("shared edges: {}", shared_edges.join("; ")) },
    );
    report
}

/// Scale knobs for [`structural_suite_on`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteScale {
    /// Pairs examined by the flow checks when not exhaustive.
    pub sampled_pairs: usize,
    /// Exhaustive flow checks up to this `n`.
    pub exhaustive_up_to: usize,
    pub seed: u64,
}

impl Default for SuiteScale {
    fn default() -> Self {
        SuiteScale { sampled_pairs: 500, exhaustive_up_to: 4, seed: 1 }
    }
}

/// The structural checks for `EA_n`, `3 <= n <= 6`.
pub fn structural_suite(n: usize) -> crate::Result<VerificationReport> {
    if !(3..=6).contains(&n) {
        return Err(crate::Error::UnsupportedDimension(n));
    }
    let g = GodanGraph::new(n)?;
    Ok(structural_suite_on(&g, SuiteScale::default()))
}

/// Runs the suite against a possibly mutated graph; the graph's generator
/// arithmetic is used as the reference wherever a check compares against it.
pub fn structural_suite_on(g: &GodanGraph, scale: SuiteScale) -> VerificationReport {
    let n = g.n();
    let mut report = VerificationReport::new(format!("structural suite EA_{n}"));
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed);
    let order = g.order();
    let exhaustive = n <= scale.exhaustive_up_to;
    let all: Vec<Vertex> = (0..order as Vertex).collect();

    let expect_edges = n * order / 2;
    report.push(
        "vertex count",
        order as u64 == factorial(n),
        format!("{order} vertices, expected {}", factorial(n)),
    );
    report.push(
        "edge count",
        g.edge_count() == expect_edges,
        format!("{} edges, expected {expect_edges}", g.edge_count()),
    );
    let irregular: Vec<String> = all.iter().filter(|&&v| g.degree(v) != n).map(|&v| g.label(v)).collect();
    report.push(
        "regularity",
        irregular.is_empty(),
        if irregular.is_empty() { format!("{n}-regular") } else { format!("wrong degree at {}", irregular.join(" ")) },
    );

    let symmetric = all.iter().all(|&v| g.neighbors(v).iter().all(|&u| g.has_edge(u, v)));
    report.push("adjacency symmetric", symmetric, "");

    let mut matching_ok = true;
    for &v in &all {
        let across: Vec<Vertex> =
            g.neighbors(v).iter().copied().filter(|&u| g.an_part_of(u) != g.an_part_of(v)).collect();
        if across != [g.parity_neighbor(v)] {
            matching_ok = false;
        }
    }
    report.push("perfect matching between parts", matching_ok, "");

    let an = AltNetwork::new(n).expect("dimension already validated");
    let even = g.an_part_view(AnPart::Even);
    let part_ok = even.len() == an.order() && even.edge_count() == an.edge_count();
    report.push("even part is AN_n", part_ok, format!("{} vertices, {} edges", even.len(), even.edge_count()));

    if n <= 5 {
        let mut ok = true;
        for &x in &all {
            let part = g.an_part_of(x);
            let xt = g.parity_neighbor(x);
            let mut mapped: Vec<Vertex> = g
                .neighbors(x)
                .iter()
                .filter(|&&b| g.an_part_of(b) == part)
                .map(|&b| g.parity_neighbor(b))
                .collect();
            mapped.sort_unstable();
            let direct: Vec<Vertex> =
                g.neighbors(xt).iter().copied().filter(|&u| g.an_part_of(u) != part).collect();
            ok &= mapped == direct;
        }
        report.push("parity-neighbor adjacency", ok, "exhaustive");
    }

    if n >= 4 {
        let expect = factorial(n - 2) as usize;
        let mut bad = Vec::new();
        for m in 4..=n {
            for i in 1..=n as u8 {
                for j in i + 1..=n as u8 {
                    let count = g.cross_edges(m, i, j).map(|e| e.len()).unwrap_or(0);
                    if count != expect {
                        bad.push(format!("({m}:{i},{j})={count}"));
                    }
                }
            }
        }
        report.push(
            "cross-edge counts",
            bad.is_empty(),
            if bad.is_empty() { format!("all equal {expect}") } else { bad.join(" ") },
        );

        let mut ordering_ok = true;
        for &x in &all {
            for m in 4..=n {
                let map = g.ordered_neighbors(x, m);
                ordering_ok &= map.len() == n - 1;
            }
        }
        report.push("neighbor ordering", ordering_ok, "");
    }

    let mut triangles_ok = true;
    if exhaustive {
        for x in 0..order as Vertex {
            for y in x + 1..order as Vertex {
                for z in y + 1..order as Vertex {
                    let induced = g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z);
                    triangles_ok &= induced == g.is_generator_triangle(x, y, z);
                }
            }
        }
    } else {
        for &x in all.choose_multiple(&mut rng, 200.min(order)) {
            let ns = g.neighbors(x).to_vec();
            for (a, &y) in ns.iter().enumerate() {
                for &z in &ns[a + 1..] {
                    let induced = g.has_edge(y, z);
                    triangles_ok &= induced == g.is_generator_triangle(x, y, z);
                }
            }
            for _ in 0..20 {
                let y = rng.gen_range(0..order as Vertex);
                let z = rng.gen_range(0..order as Vertex);
                if x != y && y != z && x != z {
                    let induced = g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z);
                    triangles_ok &= induced == g.is_generator_triangle(x, y, z);
                }
            }
        }
    }
    report.push("triangle characterization", triangles_ok, if exhaustive { "exhaustive" } else { "sampled" });

    let full = View::full(g);
    flow_checks(&mut report, "EA", &full, n, exhaustive, scale.sampled_pairs, &mut rng);
    flow_checks(&mut report, "AN", &View::full(&an), n - 1, exhaustive, scale.sampled_pairs, &mut rng);

    if n >= 4 {
        let mut ok = true;
        for _ in 0..100 {
            let x = rng.gen_range(0..order as Vertex);
            let xt = g.parity_neighbor(x);
            let mut bs: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|&b| b != xt).collect();
            bs.shuffle(&mut rng);
            bs.truncate(n - 2);
            let vs: Vec<Vertex> = g.neighbors(xt).iter().copied().filter(|&v| v != x).collect();
            let v = *vs.choose(&mut rng).expect("degree is at least 3");
            bs.extend([xt, v]);
            ok &= full.clone().without(bs).is_connected();
        }
        report.push("deletion connectivity", ok, "100 sampled deletion sets");

        let mut worst = usize::MAX;
        let mut unions: Vec<Vec<u8>> = Vec::new();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                unions.push(vec![i, j]);
            }
        }
        if !exhaustive {
            unions.shuffle(&mut rng);
            unions.truncate(4);
            let mut wide: Vec<u8> = (1..=n as u8).collect();
            wide.shuffle(&mut rng);
            wide.truncate(3);
            unions.push(wide);
        }
        for symbols in &unions {
            let h = g.cluster_union_view(n, symbols);
            let k = if exhaustive {
                vertex_connectivity(&h).unwrap_or(0)
            } else {
                sampled_min_connectivity(&h, 40, &mut rng)
            };
            worst = worst.min(k);
        }
        report.push(
            "cluster-union connectivity",
            worst >= n - 2,
            format!("min over {} unions = {worst}", unions.len()),
        );

        let mut iso_ok = true;
        if n >= 4 {
            let small = GodanGraph::new(n - 1).expect("n - 1 >= 3");
            for symbol in 1..=n as u8 {
                let c = ClusterRef { m: n as u8, symbol };
                let iso = g.cluster_isomorphism(c).expect("valid cluster");
                for x in g.cluster_members(c) {
                    for &y in g.neighbors(x) {
                        if g.symbol_at(y, n) == symbol {
                            iso_ok &= small.has_edge(iso.to_sub(g, x), iso.to_sub(g, y));
                        }
                    }
                }
            }
        }
        report.push("cluster isomorphism", iso_ok, "");
    }
    report
}

fn flow_checks(
    report: &mut VerificationReport,
    name: &str,
    view: &View<'_>,
    expect: usize,
    exhaustive: bool,
    samples: usize,
    rng: &mut ChaCha8Rng,
) {
    let vs: Vec<Vertex> = view.vertices().collect();
    let mut pairs = Vec::new();
    if exhaustive {
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                pairs.push((x, y));
            }
        }
    } else {
        while pairs.len() < samples {
            let (x, y) = (*vs.choose(rng).unwrap(), *vs.choose(rng).unwrap());
            if x != y {
                pairs.push((x, y));
            }
        }
    }
    let mut min_paths = usize::MAX;
    let mut duality = true;
    for &(x, y) in &pairs {
        let (family, cut) = max_internally_disjoint_paths(view, x, y, usize::MAX).expect("present vertices");
        duality &= family.is_valid_in(view);
        if let Some(cut) = cut {
            duality &= cut.len() == family.len();
            duality &= !view.clone().without(cut).connects(&[x, y]);
            min_paths = min_paths.min(family.len());
        }
    }
    let kind = if exhaustive { "exhaustive" } else { "sampled" };
    report.push(
        format!("Menger duality {name}"),
        duality,
        format!("{} {kind} pairs", pairs.len()),
    );
    let kappa = if exhaustive { vertex_connectivity(view).unwrap_or(0) } else { min_paths };
    report.push(format!("connectivity {name}"), kappa == expect, format!("kappa = {kappa}, expected {expect}"));
}

fn sampled_min_connectivity(view: &View<'_>, samples: usize, rng: &mut ChaCha8Rng) -> usize {
    let vs: Vec<Vertex> = view.vertices().collect();
    let mut best = usize::MAX;
    let mut taken = 0;
    while taken < samples {
        let (x, y) = (*vs.choose(rng).unwrap(), *vs.choose(rng).unwrap());
        if x == y || view.has_edge(x, y) {
            continue;
        }
        taken += 1;
        let (family, _) = max_internally_disjoint_paths(view, x, y, usize::MAX).expect("present vertices");
        best = best.min(family.len());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stree_checks() {
        let g = GodanGraph::new(3).unwrap();
        let (a, b) = (g.parse_vertex("123").unwrap(), g.parse_vertex("213").unwrap());
        assert!(verify_stree(&g, &[ordered(a, b)], &[a, b]).overall);
        let c = g.parse_vertex("321").unwrap();
        let r = verify_stree(&g, &[ordered(a, b)], &[a, b, c]);
        assert!(!r.overall);
        assert!(r.summary().contains("S not covered"));
        let r = verify_stree(&g, &[ordered(a, c)], &[a, c]);
        assert!(r.summary().contains("edge absent"));
    }

    #[test]
    fn idst_checks() {
        let g = GodanGraph::new(3).unwrap();
        let v = |s: &str| g.parse_vertex(s).unwrap();
        let s = [v("123"), v("213")];
        let t1 = vec![ordered(s[0], s[1])];
        let r = verify_idst(&g, &[t1.clone(), t1.clone()], &s);
        assert!(r.summary().contains("shared edges"));
        let path = |mid: &str, mid2: &str| {
            vec![ordered(s[0], v(mid)), ordered(v(mid), v(mid2)), ordered(v(mid2), s[1])]
        };
        let r = verify_idst(&g, &[path("231", "321"), path("231", "321")], &s);
        assert!(r.summary().contains("internal vertex shared"));
        let ok = verify_idst(&g, &[t1, path("231", "321")], &s);
        assert!(ok.overall, "{}", ok.summary());
    }

    #[test]
    fn suite_small() {
        let r = structural_suite(3).unwrap();
        assert!(r.overall, "{}", r.summary());
        let r = structural_suite(4).unwrap();
        assert!(r.overall, "{}", r.summary());
        assert!(structural_suite(7).is_err());
    }

    #[test]
    fn suite_catches_a_removed_edge() {
        let g = GodanGraph::new(4).unwrap();
        let mutated = g.with_edge_removed(0, g.neighbors(0)[0]);
        let r = structural_suite_on(&mutated, SuiteScale::default());
        assert!(!r.overall);
        assert!(r.failures().any(|c| c.name == "regularity"));
    }
}
