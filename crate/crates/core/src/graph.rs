//! Graph abstraction shared by the Cayley graphs and the test fixtures, plus
//! [`View`], a vertex-masked restriction of a graph.

use std::collections::VecDeque;
use std::fmt;

/// Dense vertex id. For Cayley graphs this is the lexicographic rank.
pub type Vertex = u32;

/// Largest `n` for which `EA_n` is materialized.
pub const MAX_DIMENSION: usize = 9;

pub trait Graph: Send + Sync {
    fn order(&self) -> usize;

    /// Neighbors of `v`, sorted by id.
    fn neighbors(&self, v: Vertex) -> &[Vertex];

    fn label(&self, v: Vertex) -> String {
        v.to_string()
    }

    fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    fn edge_count(&self) -> usize {
        (0..self.order() as Vertex).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Every edge once as `(u, v)` with `u < v`, sorted.
    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() as Vertex {
            out.extend(self.neighbors(u).iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }
}

/// Plain adjacency-list graph on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adj: Vec<Vec<Vertex>>,
}

impl AdjacencyGraph {
    pub fn from_edges(order: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        AdjacencyGraph { adj }
    }

    /// Copies any graph, optionally dropping one edge.
    pub fn copy_of(graph: &dyn Graph, drop: Option<(Vertex, Vertex)>) -> Self {
        let drop = drop.map(|(a, b)| ordered(a, b));
        let edges: Vec<_> = graph.edges().into_iter().filter(|&e| Some(e) != drop).collect();
        Self::from_edges(graph.order(), &edges)
    }

    pub fn complete(order: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..order as Vertex {
            for v in u + 1..order as Vertex {
                edges.push((u, v));
            }
        }
        Self::from_edges(order, &edges)
    }
}

impl Graph for AdjacencyGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }
}

/// `(a, b)` with the smaller endpoint first.
pub fn ordered(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A graph restricted to a vertex subset, with optionally some edges banned.
///
/// A vertex is present iff the mask says so; an edge is present iff both
/// ends are present and it is not banned. Deletions, cluster unions and
/// parity parts all compose into the one mask.
#[derive(Clone)]
pub struct View<'g> {
    graph: &'g dyn Graph,
    present: Vec<bool>,
    len: usize,
    banned: Vec<(Vertex, Vertex)>,
}

impl fmt::Debug for View<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("View")
            .field("order", &self.graph.order())
            .field("present", &self.len)
            .field("banned", &self.banned.len())
            .finish()
    }
}

impl<'g> View<'g> {
    pub fn full(graph: &'g dyn Graph) -> Self {
        let n = graph.order();
        View { graph, present: vec![true; n], len: n, banned: Vec::new() }
    }

    pub fn from_predicate(graph: &'g dyn Graph, pred: impl Fn(Vertex) -> bool) -> Self {
        let present: Vec<bool> = (0..graph.order() as Vertex).map(pred).collect();
        let len = present.iter().filter(|&&p| p).count();
        View { graph, present, len, banned: Vec::new() }
    }

    pub fn graph(&self) -> &'g dyn Graph {
        self.graph
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present.iter().enumerate().filter(|(_, &p)| p).map(|(v, _)| v as Vertex)
    }

    pub fn is_banned(&self, u: Vertex, v: Vertex) -> bool {
        !self.banned.is_empty() && self.banned.contains(&ordered(u, v))
    }

    /// Present neighbors of `v` reachable over non-banned edges.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| self.present[u as usize] && !self.is_banned(u, v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.contains(v) && self.graph.has_edge(u, v) && !self.is_banned(u, v)
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            out.extend(self.neighbors(u).filter(|&v| u < v).map(|v| (u, v)));
        }
        out
    }

    pub fn delete(&mut self, v: Vertex) {
        if let Some(slot) = self.present.get_mut(v as usize) {
            if *slot {
                *slot = false;
                self.len -= 1;
            }
        }
    }

    pub fn without(mut self, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        for v in vertices {
            self.delete(v);
        }
        self
    }

    pub fn restrict(mut self, pred: impl Fn(Vertex) -> bool) -> Self {
        for v in 0..self.present.len() {
            if self.present[v] && !pred(v as Vertex) {
                self.present[v] = false;
                self.len -= 1;
            }
        }
        self
    }

    pub fn ban_edge(&mut self, u: Vertex, v: Vertex) {
        let e = ordered(u, v);
        if !self.banned.contains(&e) {
            self.banned.push(e);
        }
    }

    /// Membership mask of the component containing `start`.
    pub fn component(&self, start: Vertex) -> Vec<bool> {
        let mut seen = vec![false; self.present.len()];
        if !self.contains(start) {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen[start as usize] = true;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(start) => self.component(start).iter().filter(|&&s| s).count() == self.len,
        }
    }

    /// True when every listed vertex is present and all lie in one component.
    pub fn connects(&self, vertices: &[Vertex]) -> bool {
        let Some(&first) = vertices.first() else { return true };
        if vertices.iter().any(|&v| !self.contains(v)) {
            return false;
        }
        let comp = self.component(first);
        vertices.iter().all(|&v| comp[v as usize])
    }

    /// BFS shortest path from `from` to the nearest vertex satisfying `goal`.
    pub fn shortest_path_to(&self, from: &[Vertex], goal: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
        let mut parent = vec![u32::MAX; self.present.len()];
        let mut queue = VecDeque::new();
        for &s in from {
            if self.contains(s) && parent[s as usize] == u32::MAX {
                parent[s as usize] = s;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if goal(v) {
                let mut path = vec![v];
                let mut cur = v;
                while parent[cur as usize] != cur {
                    cur = parent[cur as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for u in self.neighbors(v) {
                if parent[u as usize] == u32::MAX {
                    parent[u as usize] = v;
                    queue.push_back(u);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> AdjacencyGraph {
        let edges: Vec<_> = (0..n as Vertex - 1).map(|i| (i, i + 1)).collect();
        AdjacencyGraph::from_edges(n, &edges)
    }

    #[test]
    fn view_deletion_and_connectivity() {
        let g = path_graph(5);
        let view = View::full(&g);
        assert!(view.is_connected());
        assert_eq!(view.edge_count(), 4);
        let cut = view.clone().without([2]);
        assert_eq!(cut.len(), 4);
        assert!(!cut.is_connected());
        assert!(cut.connects(&[0, 1]));
        assert!(!cut.connects(&[0, 4]));
    }

    #[test]
    fn banned_edges_disappear() {
        let g = AdjacencyGraph::complete(3);
        let mut view = View::full(&g);
        view.ban_edge(2, 0);
        assert!(!view.has_edge(0, 2));
        assert_eq!(view.edge_count(), 2);
        assert_eq!(view.neighbors(0).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn shortest_path_prefers_small_ids_on_ties() {
        // square 0-1-3, 0-2-3
        let g = AdjacencyGraph::from_edges(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let view = View::full(&g);
        assert_eq!(view.shortest_path_to(&[0], |v| v == 3), Some(vec![0, 1, 3]));
    }

    #[test]
    fn copy_can_drop_an_edge() {
        let g = AdjacencyGraph::complete(4);
        let h = AdjacencyGraph::copy_of(&g, Some((3, 1)));
        assert_eq!(h.edge_count(), 5);
        assert!(!h.has_edge(1, 3));
    }
}
