//! Menger-type primitives on views: internally disjoint paths, vertex cuts,
//! vertex connectivity, fans, disjoint set-to-set paths and Steiner trees.
//!
//! All path primitives reduce to unit vertex-capacity maximum flow on the
//! split-vertex digraph. Augmenting paths are found by BFS over neighbor
//! lists sorted by rank, so every result is deterministic.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ordered, Vertex, View};
use crate::Edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    /// Common endpoints, pairwise disjoint interiors.
    InternallyDisjoint,
    /// Common start, distinct ends in a target set, disjoint interiors.
    Fan,
    /// Fully vertex-disjoint.
    SetDisjoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub kind: PathKind,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks adjacency along every path and the kind-specific disjointness.
    pub fn is_valid_in(&self, view: &View<'_>) -> bool {
        for p in &self.paths {
            if p.is_empty() || p.iter().any(|&v| !view.contains(v)) {
                return false;
            }
            if p.windows(2).any(|w| !view.has_edge(w[0], w[1])) {
                return false;
            }
            let mut sorted = p.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != p.len() {
                return false;
            }
        }
        let mut seen = std::collections::HashSet::new();
        match self.kind {
            PathKind::InternallyDisjoint => {
                let Some(first) = self.paths.first() else { return true };
                let (s, t) = (first[0], *first.last().unwrap());
                for p in &self.paths {
                    if p[0] != s || *p.last().unwrap() != t {
                        return false;
                    }
                    if p.len() == 2 && self.paths.iter().filter(|q| q.len() == 2).count() > 1 {
                        return false;
                    }
                    for &v in &p[1..p.len() - 1] {
                        if !seen.insert(v) {
                            return false;
                        }
                    }
                }
                true
            }
            PathKind::Fan => {
                let Some(first) = self.paths.first() else { return true };
                let s = first[0];
                let mut ends = std::collections::HashSet::new();
                for p in &self.paths {
                    if p[0] != s || p.len() < 2 || !ends.insert(*p.last().unwrap()) {
                        return false;
                    }
                    for &v in &p[1..] {
                        if !seen.insert(v) {
                            return false;
                        }
                    }
                }
                true
            }
            PathKind::SetDisjoint => self.paths.iter().flatten().all(|&v| seen.insert(v)),
        }
    }

    /// Edges of all paths, each once, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> =
            self.paths.iter().flat_map(|p| p.windows(2).map(|w| ordered(w[0], w[1]))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Residual network with paired arcs (`a`, `a ^ 1`).
struct FlowNet {
    out: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

const UNBOUNDED: u32 = u32::MAX / 2;

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { out: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, cap: u32) {
        self.out[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(cap);
        self.out[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            if a == t {
                break;
            }
            for &e in &self.out[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !seen[b] {
                    seen[b] = true;
                    via[b] = e;
                    queue.push_back(b);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut b = t;
        while b != s {
            let e = via[b];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            b = self.to[e ^ 1];
        }
        true
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &e in &self.out[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    /// Arc `e` carries flow iff it is a forward arc (even id) whose twin has capacity.
    fn flow_on(&self, e: usize) -> bool {
        e.is_multiple_of(2) && self.cap[e ^ 1] > 0
    }
}

/// Split-vertex network over a view: `v_in = 2v`, `v_out = 2v + 1`, plus a
/// super source and sink at the end.
struct Split {
    net: FlowNet,
    source: usize,
    sink: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Normal,
    /// No vertex capacity; arcs into it are omitted.
    Origin,
    /// No vertex capacity; only arc out is to the sink.
    Target,
    /// Capacity one; only arc out is to the sink.
    CappedTarget,
    /// Capacity one; entered only from the source.
    CappedOrigin,
    /// Capacity one; entered only from the source, left only to the sink.
    Both,
}

impl Split {
    fn build(view: &View<'_>, role: impl Fn(Vertex) -> Role) -> Self {
        let order = view.graph().order();
        let source = 2 * order;
        let sink = source + 1;
        let mut net = FlowNet::new(2 * order + 2);
        for v in view.vertices() {
            let r = role(v);
            let vi = 2 * v as usize;
            let cap = if matches!(r, Role::Origin | Role::Target) { UNBOUNDED } else { 1 };
            net.arc(vi, vi + 1, cap);
            match r {
                Role::Origin | Role::CappedOrigin => net.arc(source, vi, UNBOUNDED),
                Role::Target | Role::CappedTarget => net.arc(vi + 1, sink, UNBOUNDED),
                Role::Both => {
                    net.arc(source, vi, UNBOUNDED);
                    net.arc(vi + 1, sink, UNBOUNDED);
                }
                Role::Normal => {}
            }
            if matches!(r, Role::Target | Role::CappedTarget | Role::Both) {
                continue;
            }
            for u in view.neighbors(v) {
                let ru = role(u);
                if matches!(ru, Role::Origin | Role::CappedOrigin | Role::Both) {
                    continue;
                }
                // Edge arcs are unbounded so that minimum cuts consist of
                // vertices; only a direct origin-target edge is capped.
                let cap = if r == Role::Origin && ru == Role::Target { 1 } else { UNBOUNDED };
                net.arc(vi + 1, 2 * u as usize, cap);
            }
        }
        Split { net, source, sink }
    }

    fn paths(&self) -> Vec<Vec<Vertex>> {
        let mut used = vec![false; self.net.to.len()];
        let mut paths = Vec::new();
        for &first in &self.net.out[self.source] {
            if !self.net.flow_on(first) {
                continue;
            }
            let mut copies = self.net.cap[first ^ 1];
            while copies > 0 {
                copies -= 1;
                let mut path = Vec::new();
                let mut node = self.net.to[first];
                while node != self.sink {
                    if node.is_multiple_of(2) {
                        path.push((node / 2) as Vertex);
                    }
                    let next = self.net.out[node]
                        .iter()
                        .copied()
                        .find(|&e| self.net.flow_on(e) && !used[e] && self.net.to[e] != self.source)
                        .expect("flow is conserved");
                    if self.net.to[next] != self.sink && !(node.is_multiple_of(2) && self.net.to[next] == node + 1) {
                        used[next] = true;
                    }
                    node = self.net.to[next];
                }
                paths.push(path);
            }
        }
        paths.sort();
        paths
    }
}

fn require(view: &View<'_>, v: Vertex) -> Result<()> {
    if view.contains(v) {
        Ok(())
    } else {
        Err(Error::VertexAbsent(view.graph().label(v)))
    }
}

/// Maximum family of internally disjoint `(x, y)`-paths. For non-adjacent
/// pairs the second component is a minimum cut of the same size.
pub fn max_internally_disjoint_paths(
    view: &View<'_>,
    x: Vertex,
    y: Vertex,
    limit: usize,
) -> Result<(PathFamily, Option<Vec<Vertex>>)> {
    require(view, x)?;
    require(view, y)?;
    if x == y {
        return Err(Error::InvalidArgument("endpoints must differ".into()));
    }
    let mut split = Split::build(view, |v| {
        if v == x {
            Role::Origin
        } else if v == y {
            Role::Target
        } else {
            Role::Normal
        }
    });
    let (s, t) = (split.source, split.sink);
    split.net.max_flow(s, t, limit);
    let paths = split.paths();
    let cut = if view.has_edge(x, y) {
        None
    } else {
        let reach = split.net.residual_reachable(s);
        let cut: Vec<Vertex> =
            view.vertices().filter(|&v| reach[2 * v as usize] && !reach[2 * v as usize + 1]).collect();
        Some(cut)
    };
    Ok((PathFamily { kind: PathKind::InternallyDisjoint, paths }, cut))
}

/// `k` internally disjoint `(x, y)`-paths; an adjacent pair counts the direct
/// edge as one path.
pub fn internally_disjoint_paths(view: &View<'_>, x: Vertex, y: Vertex, k: usize) -> Result<PathFamily> {
    let (family, _) = max_internally_disjoint_paths(view, x, y, k)?;
    if family.len() < k {
        let (full, cut) = max_internally_disjoint_paths(view, x, y, usize::MAX)?;
        let cut = cut.unwrap_or_default().iter().map(|&v| view.graph().label(v)).collect();
        return Err(Error::TooFewPaths { wanted: k, found: full.len(), cut });
    }
    Ok(family)
}

/// Minimum vertex set separating non-adjacent `x` and `y`.
pub fn min_vertex_cut(view: &View<'_>, x: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
    require(view, x)?;
    require(view, y)?;
    if view.has_edge(x, y) {
        let g = view.graph();
        return Err(Error::AdjacentPair(g.label(x), g.label(y)));
    }
    let (_, cut) = max_internally_disjoint_paths(view, x, y, usize::MAX)?;
    Ok(cut.expect("non-adjacent pairs have a cut"))
}

fn local_connectivity(view: &View<'_>, x: Vertex, y: Vertex, limit: usize) -> usize {
    max_internally_disjoint_paths(view, x, y, limit).map(|(f, _)| f.len()).unwrap_or(0)
}

/// `κ` of the view by pairwise cuts: the least cut over non-adjacent pairs,
/// or `|V| - 1` when every pair is adjacent. A disconnected view gives 0.
pub fn vertex_connectivity(view: &View<'_>) -> Result<usize> {
    let vs: Vec<Vertex> = view.vertices().collect();
    if vs.len() < 2 {
        return Err(Error::InvalidArgument("connectivity needs at least two vertices".into()));
    }
    if !view.is_connected() {
        return Ok(0);
    }
    let mut best = vs.len() - 1;
    let mut i = 0;
    while i <= best && i < vs.len() {
        for &vj in &vs[i + 1..] {
            if !view.has_edge(vs[i], vj) {
                best = best.min(local_connectivity(view, vs[i], vj, best));
            }
        }
        i += 1;
    }
    Ok(best)
}

/// `k` paths from `x` to distinct vertices of `targets`, disjoint apart from
/// `x` and avoiding `targets` internally.
pub fn k_fan(view: &View<'_>, x: Vertex, targets: &[Vertex], k: usize) -> Result<PathFamily> {
    require(view, x)?;
    if targets.contains(&x) {
        return Err(Error::InvalidArgument("fan source lies in the target set".into()));
    }
    if targets.len() < k {
        return Err(Error::InvalidArgument(format!("{} targets for a {k}-fan", targets.len())));
    }
    let mut split = Split::build(view, |v| {
        if v == x {
            Role::Origin
        } else if targets.contains(&v) {
            Role::CappedTarget
        } else {
            Role::Normal
        }
    });
    let (s, t) = (split.source, split.sink);
    let found = split.net.max_flow(s, t, k);
    if found < k {
        return Err(Error::TooFewPaths { wanted: k, found, cut: Vec::new() });
    }
    Ok(PathFamily { kind: PathKind::Fan, paths: split.paths() })
}

/// `k` vertex-disjoint paths from `from` to `to`, internally avoiding both sets.
pub fn disjoint_set_paths(view: &View<'_>, from: &[Vertex], to: &[Vertex], k: usize) -> Result<PathFamily> {
    if from.len() < k || to.len() < k {
        return Err(Error::InvalidArgument("set paths need |X|, |Y| >= k".into()));
    }
    for &v in from.iter().chain(to) {
        require(view, v)?;
    }
    let mut split = Split::build(view, |v| match (from.contains(&v), to.contains(&v)) {
        (true, true) => Role::Both,
        (true, false) => Role::CappedOrigin,
        (false, true) => Role::CappedTarget,
        (false, false) => Role::Normal,
    });
    let (s, t) = (split.source, split.sink);
    let found = split.net.max_flow(s, t, k);
    if found < k {
        return Err(Error::TooFewPaths { wanted: k, found, cut: Vec::new() });
    }
    Ok(PathFamily { kind: PathKind::SetDisjoint, paths: split.paths() })
}

/// A tree in the view containing every terminal: grown from the smallest
/// terminal by repeatedly attaching the nearest remaining terminal along a
/// BFS shortest path. Returns sorted edges.
pub fn steiner_tree(view: &View<'_>, terminals: &[Vertex]) -> Result<Vec<Edge>> {
    let mut sorted = terminals.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &v in &sorted {
        require(view, v)?;
    }
    let Some(&root) = sorted.first() else { return Ok(Vec::new()) };
    let mut in_tree = vec![false; view.graph().order()];
    in_tree[root as usize] = true;
    let mut members = vec![root];
    let mut edges = Vec::new();
    let mut remaining: Vec<Vertex> = sorted[1..].to_vec();
    while !remaining.is_empty() {
        let path = view
            .shortest_path_to(&members, |v| !in_tree[v as usize] && remaining.contains(&v))
            .ok_or(Error::Disconnected)?;
        for w in path.windows(2) {
            edges.push(ordered(w[0], w[1]));
            if !in_tree[w[1] as usize] {
                in_tree[w[1] as usize] = true;
                members.push(w[1]);
            }
        }
        let reached = *path.last().unwrap();
        remaining.retain(|&v| v != reached);
        remaining.retain(|&v| !in_tree[v as usize]);
    }
    edges.sort_unstable();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{AltNetwork, GodanGraph};
    use crate::graph::{AdjacencyGraph, Graph};

    #[test]
    fn paths_in_ea3() {
        let g = GodanGraph::new(3).unwrap();
        let view = View::full(&g);
        let (x, y) = (g.parse_vertex("123").unwrap(), g.parse_vertex("321").unwrap());
        let family = internally_disjoint_paths(&view, x, y, 3).unwrap();
        assert_eq!(family.len(), 3);
        assert!(family.is_valid_in(&view));
        assert_eq!(internally_disjoint_paths(&view, x, y, 1).unwrap().len(), 1);
        assert!(matches!(
            internally_disjoint_paths(&view, x, y, 4),
            Err(Error::TooFewPaths { found: 3, .. })
        ));
    }

    #[test]
    fn adjacent_pair_counts_direct_edge_once() {
        let g = AdjacencyGraph::complete(4);
        let view = View::full(&g);
        let family = internally_disjoint_paths(&view, 0, 1, 3).unwrap();
        assert_eq!(family.paths, vec![vec![0, 1], vec![0, 2, 1], vec![0, 3, 1]]);
        assert!(matches!(min_vertex_cut(&view, 0, 1), Err(Error::AdjacentPair(..))));
    }

    #[test]
    fn cut_separates() {
        let g = GodanGraph::new(4).unwrap();
        let view = View::full(&g);
        let x = 0;
        for y in 1..g.order() as Vertex {
            if g.has_edge(x, y) {
                continue;
            }
            let cut = min_vertex_cut(&view, x, y).unwrap();
            assert_eq!(cut.len(), 4);
            assert!(!view.clone().without(cut).connects(&[x, y]));
        }
    }

    #[test]
    fn connectivity_values() {
        let g3 = GodanGraph::new(3).unwrap();
        let g4 = GodanGraph::new(4).unwrap();
        let a4 = AltNetwork::new(4).unwrap();
        assert_eq!(vertex_connectivity(&View::full(&g3)).unwrap(), 3);
        assert_eq!(vertex_connectivity(&View::full(&g4)).unwrap(), 4);
        assert_eq!(vertex_connectivity(&View::full(&a4)).unwrap(), 3);
        assert_eq!(vertex_connectivity(&View::full(&AdjacencyGraph::complete(5))).unwrap(), 4);
        let single = AdjacencyGraph::complete(1);
        assert!(vertex_connectivity(&View::full(&single)).is_err());
    }

    #[test]
    fn fans() {
        let g = GodanGraph::new(4).unwrap();
        let view = View::full(&g);
        let x = g.parse_vertex("1234").unwrap();
        let ns = g.neighbors(x).to_vec();
        let fan = k_fan(&view, x, &ns, 4).unwrap();
        assert!(fan.paths.iter().all(|p| p.len() == 2));
        assert!(fan.is_valid_in(&view));
        let g3 = GodanGraph::new(3).unwrap();
        let v3 = View::full(&g3);
        let targets = [g3.parse_vertex("321").unwrap(), g3.parse_vertex("132").unwrap()];
        let fan = k_fan(&v3, 0, &targets, 2).unwrap();
        assert_eq!(fan.len(), 2);
        assert!(fan.is_valid_in(&v3));
        for p in &fan.paths {
            assert!(p[1..p.len() - 1].iter().all(|v| !targets.contains(v)));
        }
        assert_eq!(k_fan(&v3, 0, &targets, 1).unwrap().len(), 1);
    }

    #[test]
    fn set_paths() {
        let g = GodanGraph::new(4).unwrap();
        let view = View::full(&g);
        let xs = [0, 5, 9];
        let same = disjoint_set_paths(&view, &xs, &xs, 3).unwrap();
        assert!(same.paths.iter().all(|p| p.len() == 1));
        let h = g.cluster_union_view(4, &[1, 2]);
        let from: Vec<Vertex> = g.cluster_members(crate::ClusterRef { m: 4, symbol: 1 }).take(2).collect();
        let to: Vec<Vertex> = g.cluster_members(crate::ClusterRef { m: 4, symbol: 2 }).skip(3).take(2).collect();
        let family = disjoint_set_paths(&h, &from, &to, 2).unwrap();
        assert!(family.is_valid_in(&h));
        let mut ends: Vec<Vertex> = family.paths.iter().map(|p| *p.last().unwrap()).collect();
        ends.sort_unstable();
        assert_eq!(ends, to);
    }

    #[test]
    fn steiner_trees() {
        let g = GodanGraph::new(3).unwrap();
        let view = View::full(&g);
        assert!(steiner_tree(&view, &[3]).unwrap().is_empty());
        let (a, b) = (g.parse_vertex("123").unwrap(), g.parse_vertex("213").unwrap());
        assert_eq!(steiner_tree(&view, &[b, a]).unwrap(), vec![ordered(a, b)]);
        let s = ["123", "321", "132"].map(|t| g.parse_vertex(t).unwrap());
        let tree = steiner_tree(&view, &s).unwrap();
        assert!(tree.len() <= 4);
        assert_eq!(tree, steiner_tree(&view, &s).unwrap());
        let cut = view.clone().without(g.neighbors(a).iter().copied());
        assert!(matches!(steiner_tree(&cut, &[a, g.parse_vertex("321").unwrap()]), Err(Error::Disconnected)));
    }
}
