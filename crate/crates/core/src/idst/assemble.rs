//! Tree plans and their assembly into concrete edge sets.
//!
//! A construction describes each tree as fixed edges (two-step connectors,
//! paths, single links) plus Steiner parts: "a tree on these terminals inside
//! this region, avoiding these vertices". Assembly realizes the parts one at
//! a time and keeps every non-terminal vertex owned by one tree only.

use std::collections::VecDeque;

use crate::cayley::{AnPart, ClusterRef, GodanGraph};
use crate::connectivity::steiner_tree;
use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Vertex, View};
use crate::packing::prune_leaves;
use crate::Edge;

const NOBODY: u16 = u16::MAX;

/// Where a Steiner part may live.
#[derive(Clone, Debug)]
pub(crate) enum Region {
    Clusters(Vec<u8>),
    Part(AnPart),
}

#[derive(Clone, Debug)]
pub(crate) struct Part {
    region: Region,
    terminals: Vec<Vertex>,
    avoid: Vec<Vertex>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct TreePlan {
    edges: Vec<Edge>,
    parts: Vec<Part>,
}

impl TreePlan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge(&mut self, a: Vertex, b: Vertex) -> &mut Self {
        self.edges.push(ordered(a, b));
        self
    }

    /// Consecutive vertices become edges; a single vertex adds nothing.
    pub fn path(&mut self, vs: &[Vertex]) -> &mut Self {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
        self
    }

    pub fn edges(&mut self, es: &[Edge]) -> &mut Self {
        for &(a, b) in es {
            self.edge(a, b);
        }
        self
    }

    pub fn append(&mut self, other: &TreePlan) -> &mut Self {
        self.edges.extend(&other.edges);
        self.parts.extend(other.parts.iter().cloned());
        self
    }

    pub fn part(&mut self, region: Region, terminals: &[Vertex], avoid: &[Vertex]) -> &mut Self {
        self.parts.push(Part { region, terminals: terminals.to_vec(), avoid: avoid.to_vec() });
        self
    }

    /// A Steiner part inside one position-`m` cluster.
    pub fn within(&mut self, cluster: u8, terminals: &[Vertex], avoid: &[Vertex]) -> &mut Self {
        self.part(Region::Clusters(vec![cluster]), terminals, avoid)
    }
}

/// Cluster arithmetic at a fixed position `m`, in the notation of the
/// constructions: `v'` is [`Ctx::out`], `v_c` is [`Ctx::nb`], `v_c'` is
/// [`Ctx::nbo`] and `P[v, v_c']` is [`Ctx::p2`].
#[derive(Clone, Copy)]
pub(crate) struct Ctx<'g> {
    pub g: &'g GodanGraph,
    pub m: usize,
    pub s: [Vertex; 4],
}

impl<'g> Ctx<'g> {
    pub fn new(g: &'g GodanGraph, m: usize, s: [Vertex; 4]) -> Self {
        Ctx { g, m, s }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn cl(&self, v: Vertex) -> u8 {
        self.g.symbol_at(v, self.m)
    }

    pub fn out(&self, v: Vertex) -> Vertex {
        self.g.out_neighbor(v, self.m)
    }

    pub fn nb(&self, v: Vertex, c: u8) -> Vertex {
        debug_assert_ne!(self.cl(v), c);
        self.g.ordered_neighbor(v, c, self.m).expect("every foreign cluster has an ordered neighbor")
    }

    pub fn nbo(&self, v: Vertex, c: u8) -> Vertex {
        self.out(self.nb(v, c))
    }

    pub fn p2(&self, v: Vertex, c: u8) -> [Vertex; 3] {
        let u = self.nb(v, c);
        [v, u, self.out(u)]
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.g.has_edge(a, b)
    }

    /// Neighbors of `v` inside its own cluster.
    pub fn inner_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.g.ordered_neighbors(v, self.m).into_values().collect();
        out.sort_unstable();
        out
    }

    /// Every cluster symbol except the listed ones, ascending.
    pub fn others(&self, except: &[u8]) -> Vec<u8> {
        (1..=self.n() as u8).filter(|c| !except.contains(c)).collect()
    }

    pub fn cluster(&self, c: u8) -> ClusterRef {
        ClusterRef { m: self.m as u8, symbol: c }
    }
}

fn conflict(g: &GodanGraph, what: &str, v: Vertex) -> Error {
    Error::Construction(format!("{what} {}", g.label(v)))
}

/// Realizes the plans. Returns one pruned tree per plan, or an error naming
/// the first clash (a vertex wanted by two trees, an absent edge, a part
/// whose terminals cannot be joined).
pub(crate) fn assemble(ctx: &Ctx<'_>, plans: &[TreePlan]) -> Result<Vec<Vec<Edge>>> {
    let g = ctx.g;
    let order = g.order();
    let mut in_s = vec![false; order];
    for &v in &ctx.s {
        in_s[v as usize] = true;
    }
    let mut owner = vec![NOBODY; order];
    let mut terminal_edges: Vec<(Edge, usize)> = Vec::new();
    let claim = |owner: &mut Vec<u16>, v: Vertex, i: usize| -> Result<()> {
        if in_s[v as usize] {
            return Ok(());
        }
        let slot = &mut owner[v as usize];
        if *slot != NOBODY && *slot as usize != i {
            return Err(conflict(g, &format!("trees {} and {i} both claim", *slot), v));
        }
        *slot = i as u16;
        Ok(())
    };
    for (i, plan) in plans.iter().enumerate() {
        for &(a, b) in &plan.edges {
            if !g.has_edge(a, b) {
                return Err(Error::Construction(format!("{} {} is not an edge", g.label(a), g.label(b))));
            }
            claim(&mut owner, a, i)?;
            claim(&mut owner, b, i)?;
            if in_s[a as usize] && in_s[b as usize] {
                if terminal_edges.iter().any(|&(e, j)| e == (a, b) && j != i) {
                    return Err(conflict(g, "terminal edge used twice at", a));
                }
                terminal_edges.push(((a, b), i));
            }
        }
        for part in &plan.parts {
            for &v in &part.terminals {
                claim(&mut owner, v, i)?;
            }
        }
    }

    let mut edge_sets: Vec<Vec<Edge>> = plans.iter().map(|p| p.edges.clone()).collect();
    for (i, plan) in plans.iter().enumerate() {
        for part in &plan.parts {
            if part.terminals.iter().any(|t| part.avoid.contains(t)) {
                return Err(Error::Construction("a part terminal lies in its own deletion set".into()));
            }
            let region = |v: Vertex| match &part.region {
                Region::Clusters(cs) => cs.contains(&ctx.cl(v)),
                Region::Part(p) => g.an_part_of(v) == *p,
            };
            let mut view = View::from_predicate(g, |v| {
                region(v)
                    && (in_s[v as usize] || owner[v as usize] == NOBODY || owner[v as usize] as usize == i)
                    && !part.avoid.contains(&v)
            });
            for &(e, j) in &terminal_edges {
                if j != i {
                    view.ban_edge(e.0, e.1);
                }
            }
            let found = steiner_tree(&view, &part.terminals).map_err(|_| {
                Error::Construction(format!(
                    "no tree on {:?} in its region",
                    part.terminals.iter().map(|&v| g.label(v)).collect::<Vec<_>>()
                ))
            })?;
            for &(a, b) in &found {
                claim(&mut owner, a, i)?;
                claim(&mut owner, b, i)?;
                if in_s[a as usize] && in_s[b as usize] {
                    terminal_edges.push(((a, b), i));
                }
            }
            edge_sets[i].extend(found);
        }
    }

    edge_sets.into_iter().map(|edges| reduce(g, edges, &ctx.s, &in_s)).collect()
}

/// A spanning tree of the component of `s[0]` in the union of `edges`, with
/// non-terminal leaves pruned. Errors when that component misses a terminal.
pub(crate) fn reduce(g: &dyn Graph, mut edges: Vec<Edge>, s: &[Vertex], in_s: &[bool]) -> Result<Vec<Edge>> {
    edges.sort_unstable();
    edges.dedup();
    let mut adj: std::collections::BTreeMap<Vertex, Vec<Vertex>> = std::collections::BTreeMap::new();
    for &(a, b) in &edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = std::collections::BTreeSet::from([s[0]]);
    let mut queue = VecDeque::from([s[0]]);
    let mut tree = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &u in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(u) {
                tree.push(ordered(v, u));
                queue.push_back(u);
            }
        }
    }
    if let Some(&missing) = s.iter().find(|v| !seen.contains(v)) {
        return Err(Error::Construction(format!("assembled tree misses {}", g.label(missing))));
    }
    Ok(prune_leaves(tree, in_s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_breaks_cycles_and_prunes() {
        let g = crate::graph::AdjacencyGraph::complete(6);
        let in_s = [true, true, false, false, false, false];
        let edges = vec![(0, 2), (2, 1), (1, 3), (3, 0), (3, 4), (4, 5)];
        let t = reduce(&g, edges, &[0, 1], &in_s).unwrap();
        assert_eq!(t.len(), 2);
        assert!(reduce(&g, vec![(0, 2)], &[0, 1], &in_s).is_err());
    }

    #[test]
    fn assembly_rejects_shared_vertices() {
        let g = GodanGraph::new(4).unwrap();
        let s = [0, 5, 10, 23];
        let ctx = Ctx::new(&g, 4, s);
        let x = s[0];
        let u = g.neighbors(x)[0];
        let mut a = TreePlan::new();
        a.edge(x, u);
        let mut b = TreePlan::new();
        b.edge(x, u);
        let err = assemble(&ctx, &[a, b]).unwrap_err();
        assert!(err.to_string().contains("both claim"));
    }
}
