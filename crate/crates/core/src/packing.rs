//! Exact branch-and-bound search for packings of internally edge-disjoint
//! Steiner trees.
//!
//! Every non-terminal vertex belongs to at most one tree, and so does every
//! edge joining two terminals; all other edges follow from vertex ownership.
//! Trees are grown one at a time from the smallest terminal `s0`. A tree is
//! opened by choosing its smallest `s0`-slot (a neighbor of `s0` or a
//! terminal edge at `s0`); opening slots strictly increase from tree to tree,
//! which removes the `t!` relabelings of any packing. After that the search
//! branches on assigning or forbidding the free item nearest to the
//! terminals the tree still misses.

use std::collections::VecDeque;

use crate::graph::{ordered, Vertex, View};
use crate::Edge;

const FREE: u8 = u8::MAX;

/// Largest number of trees the engine accepts.
pub const MAX_TREES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A packing of the requested size, each tree as sorted edges.
    Found(Vec<Vec<Edge>>),
    /// No packing of the requested size exists.
    Infeasible,
    /// The node budget ran out before the question was settled.
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

struct Search<'a, 'g> {
    view: &'a View<'g>,
    order: usize,
    terms: Vec<Vertex>,
    is_term: Vec<bool>,
    tt: Vec<Edge>,
    t: usize,
    owner: Vec<u8>,
    forbid: Vec<u32>,
    trail: Vec<(usize, u8, u32)>,
    slots0: Vec<usize>,
    start: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Member,
    Avail,
}

impl<'a, 'g> Search<'a, 'g> {
    fn new(view: &'a View<'g>, terminals: &[Vertex], t: usize, budget: u64) -> Self {
        let order = view.graph().order();
        let mut terms = terminals.to_vec();
        terms.sort_unstable();
        terms.dedup();
        let mut is_term = vec![false; order];
        for &s in &terms {
            is_term[s as usize] = true;
        }
        let mut tt = Vec::new();
        for (i, &a) in terms.iter().enumerate() {
            for &b in &terms[i + 1..] {
                if view.has_edge(a, b) {
                    tt.push((a, b));
                }
            }
        }
        let s0 = terms[0];
        let mut slots0: Vec<(Vertex, usize)> = Vec::new();
        for u in view.neighbors(s0) {
            let item = if is_term[u as usize] {
                order + tt.iter().position(|&e| e == ordered(s0, u)).unwrap()
            } else {
                u as usize
            };
            slots0.push((u, item));
        }
        slots0.sort_unstable();
        Search {
            view,
            order,
            terms,
            is_term,
            t,
            owner: vec![FREE; order + tt.len()],
            forbid: vec![0; order + tt.len()],
            tt,
            trail: Vec::new(),
            slots0: slots0.into_iter().map(|(_, item)| item).collect(),
            start: vec![None; t],
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn set(&mut self, item: usize, owner: u8, forbid: u32) {
        self.trail.push((item, self.owner[item], self.forbid[item]));
        self.owner[item] = owner;
        self.forbid[item] = forbid;
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (item, o, f) = self.trail.pop().unwrap();
            self.owner[item] = o;
            self.forbid[item] = f;
        }
    }

    fn item_open(&self, item: usize, tree: usize) -> bool {
        self.owner[item] == tree as u8 || (self.owner[item] == FREE && self.forbid[item] & (1 << tree) == 0)
    }

    fn vertex_ok(&self, v: Vertex, tree: usize, mode: Mode) -> bool {
        if self.is_term[v as usize] {
            return true;
        }
        match mode {
            Mode::Member => self.owner[v as usize] == tree as u8,
            Mode::Avail => self.item_open(v as usize, tree),
        }
    }

    fn tt_item(&self, a: Vertex, b: Vertex) -> usize {
        self.order + self.tt.iter().position(|&e| e == ordered(a, b)).unwrap()
    }

    fn edge_ok(&self, a: Vertex, b: Vertex, tree: usize, mode: Mode) -> bool {
        if self.is_term[a as usize] && self.is_term[b as usize] {
            let item = self.tt_item(a, b);
            match mode {
                Mode::Member => self.owner[item] == tree as u8,
                Mode::Avail => self.item_open(item, tree),
            }
        } else {
            true
        }
    }

    /// BFS over the tree's member or available graph; returns distances.
    fn bfs(&self, tree: usize, from: &[Vertex], mode: Mode) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.order];
        let mut queue = VecDeque::new();
        for &s in from {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for u in self.view.neighbors(v) {
                if dist[u as usize] == u32::MAX && self.vertex_ok(u, tree, mode) && self.edge_ok(v, u, tree, mode) {
                    dist[u as usize] = dist[v as usize] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn complete(&self, tree: usize) -> bool {
        let d = self.bfs(tree, &self.terms[..1], Mode::Member);
        self.terms.iter().all(|&s| d[s as usize] != u32::MAX)
    }

    fn feasible(&self) -> bool {
        for tree in 0..self.t {
            let d = self.bfs(tree, &self.terms[..1], Mode::Avail);
            if self.terms.iter().any(|&s| d[s as usize] == u32::MAX) {
                return false;
            }
        }
        for &s in &self.terms {
            let mut needing = 0u32;
            for tree in 0..self.t {
                let has = self
                    .view
                    .neighbors(s)
                    .any(|u| self.vertex_ok(u, tree, Mode::Member) && self.edge_ok(s, u, tree, Mode::Member));
                if !has {
                    needing |= 1 << tree;
                }
            }
            let need = needing.count_ones();
            if need == 0 {
                continue;
            }
            let mut free = 0;
            for u in self.view.neighbors(s) {
                let item = if self.is_term[u as usize] { self.tt_item(s, u) } else { u as usize };
                if self.owner[item] == FREE && self.forbid[item] & needing != needing {
                    free += 1;
                }
            }
            if free < need {
                return false;
            }
        }
        true
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        if !self.feasible() {
            return false;
        }
        let Some(tree) = (0..self.t).find(|&i| self.start[i].is_none() || !self.complete(i)) else {
            return true;
        };
        if self.start[tree].is_none() {
            return self.open(tree);
        }
        self.grow(tree)
    }

    fn open(&mut self, tree: usize) -> bool {
        let first = match tree {
            0 => 0,
            _ => self.start[tree - 1].unwrap() + 1,
        };
        let bit = 1u32 << tree;
        for idx in first..self.slots0.len() {
            if self.slots0.len() - idx < self.t - tree {
                break;
            }
            let item = self.slots0[idx];
            if !self.item_open(item, tree) {
                continue;
            }
            let mark = self.trail.len();
            self.set(item, tree as u8, self.forbid[item]);
            for j in 0..idx {
                let lower = self.slots0[j];
                if self.owner[lower] == FREE {
                    self.set(lower, FREE, self.forbid[lower] | bit);
                }
            }
            self.start[tree] = Some(idx);
            if self.run() {
                return true;
            }
            self.start[tree] = None;
            self.undo(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn grow(&mut self, tree: usize) -> bool {
        let comp = self.bfs(tree, &self.terms[..1], Mode::Member);
        let missing: Vec<Vertex> =
            self.terms.iter().copied().filter(|&s| comp[s as usize] == u32::MAX).collect();
        let dist = self.bfs(tree, &missing, Mode::Avail);
        let mut best: Option<(u32, usize)> = None;
        for v in self.view.vertices() {
            if comp[v as usize] == u32::MAX {
                continue;
            }
            for u in self.view.neighbors(v) {
                if comp[u as usize] != u32::MAX {
                    continue;
                }
                let item = if self.is_term[u as usize] {
                    if !self.is_term[v as usize] {
                        continue;
                    }
                    self.tt_item(v, u)
                } else {
                    u as usize
                };
                if self.owner[item] != FREE || !self.item_open(item, tree) {
                    continue;
                }
                let score = (dist[u as usize], item);
                if best.is_none_or(|b| score < b) {
                    best = Some(score);
                }
            }
        }
        let Some((_, item)) = best else { return false };
        let mark = self.trail.len();
        self.set(item, tree as u8, self.forbid[item]);
        if self.run() {
            return true;
        }
        self.undo(mark);
        if self.exhausted {
            return false;
        }
        self.set(item, FREE, self.forbid[item] | (1 << tree));
        if self.run() {
            return true;
        }
        self.undo(mark);
        false
    }

    fn extract(&self, tree: usize) -> Vec<Edge> {
        let s0 = self.terms[0];
        let mut parent = vec![u32::MAX; self.order];
        parent[s0 as usize] = s0;
        let mut queue = VecDeque::from([s0]);
        let mut edges = Vec::new();
        while let Some(v) = queue.pop_front() {
            for u in self.view.neighbors(v) {
                if parent[u as usize] == u32::MAX
                    && self.vertex_ok(u, tree, Mode::Member)
                    && self.edge_ok(v, u, tree, Mode::Member)
                {
                    parent[u as usize] = v;
                    edges.push(ordered(u, v));
                    queue.push_back(u);
                }
            }
        }
        prune_leaves(edges, &self.is_term)
    }
}

/// Repeatedly removes leaves that are not terminals; returns sorted edges.
pub(crate) fn prune_leaves(mut edges: Vec<Edge>, keep: &[bool]) -> Vec<Edge> {
    loop {
        let mut degree = std::collections::HashMap::new();
        for &(a, b) in &edges {
            *degree.entry(a).or_insert(0) += 1;
            *degree.entry(b).or_insert(0) += 1;
        }
        let before = edges.len();
        edges.retain(|&(a, b)| {
            let leaf = |v: Vertex| degree[&v] == 1 && !keep[v as usize];
            !(leaf(a) || leaf(b))
        });
        if edges.len() == before {
            break;
        }
    }
    edges.sort_unstable();
    edges
}

/// Searches for `t` internally edge-disjoint trees in `view` connecting
/// `terminals`, visiting at most `budget` search nodes.
pub fn find_packing(view: &View<'_>, terminals: &[Vertex], t: usize, budget: u64) -> SearchReport {
    assert!(t <= MAX_TREES, "at most {MAX_TREES} trees");
    assert!(!terminals.is_empty(), "terminal set is empty");
    if t == 0 {
        return SearchReport { outcome: SearchOutcome::Found(Vec::new()), nodes: 0 };
    }
    if terminals.iter().any(|&s| !view.contains(s)) {
        return SearchReport { outcome: SearchOutcome::Infeasible, nodes: 0 };
    }
    let mut search = Search::new(view, terminals, t, budget);
    if search.terms.len() == 1 {
        return SearchReport { outcome: SearchOutcome::Found(vec![Vec::new(); t]), nodes: 0 };
    }
    if search.terms.iter().any(|&s| view.degree(s) < t) {
        return SearchReport { outcome: SearchOutcome::Infeasible, nodes: 0 };
    }
    let found = search.run();
    let outcome = if found {
        SearchOutcome::Found((0..t).map(|i| search.extract(i)).collect())
    } else if search.exhausted {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::Infeasible
    };
    SearchReport { outcome, nodes: search.nodes }
}

/// Randomized greedy packing: trees are grown one after another as
/// nearest-terminal Steiner trees over vertices no earlier tree owns, with
/// seeded random vertex weights that steer paths away from the neighborhoods
/// of terminals. Deterministic for a given `seed`; `None` after `rounds`
/// failed rounds. Never proves infeasibility.
pub fn greedy_packing(view: &View<'_>, terminals: &[Vertex], t: usize, rounds: usize, seed: u64) -> Option<Vec<Vec<Edge>>> {
    use rand::{Rng, SeedableRng};
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let order = view.graph().order();
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    let mut is_term = vec![false; order];
    for &s in &terms {
        is_term[s as usize] = true;
    }
    let near: Vec<u32> = (0..order as Vertex).map(|v| view.neighbors(v).filter(|&u| is_term[u as usize]).count() as u32).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    'round: for round in 0..rounds {
        let mut owned = vec![false; order];
        let mut used_tt: Vec<Edge> = Vec::new();
        let weight: Vec<u32> = (0..order)
            .map(|v| if round == 0 { 4 + 8 * near[v] } else { 4 + rng.gen_range(0..4) + rng.gen_range(4..12) * near[v] })
            .collect();
        let mut trees = Vec::with_capacity(t);
        for _ in 0..t {
            let mut in_tree = vec![false; order];
            in_tree[terms[0] as usize] = true;
            let mut members = vec![terms[0]];
            let mut edges: Vec<Edge> = Vec::new();
            while terms.iter().any(|&s| !in_tree[s as usize]) {
                // Dijkstra from the current tree to the nearest missing terminal.
                let mut dist = vec![u32::MAX; order];
                let mut prev = vec![Vertex::MAX; order];
                let mut heap = BinaryHeap::new();
                for &m in &members {
                    dist[m as usize] = 0;
                    heap.push(Reverse((0u32, m)));
                }
                let mut reached = None;
                while let Some(Reverse((d, v))) = heap.pop() {
                    if d > dist[v as usize] {
                        continue;
                    }
                    if is_term[v as usize] && !in_tree[v as usize] {
                        reached = Some(v);
                        break;
                    }
                    for u in view.neighbors(v) {
                        let ui = u as usize;
                        if in_tree[ui] || (!is_term[ui] && owned[ui]) {
                            continue;
                        }
                        if is_term[v as usize] && is_term[ui] && used_tt.contains(&ordered(v, u)) {
                            continue;
                        }
                        let nd = d + if is_term[ui] { 1 } else { weight[ui] };
                        if nd < dist[ui] {
                            dist[ui] = nd;
                            prev[ui] = v;
                            heap.push(Reverse((nd, u)));
                        }
                    }
                }
                let Some(mut v) = reached else { continue 'round };
                while !in_tree[v as usize] {
                    let p = prev[v as usize];
                    edges.push(ordered(p, v));
                    in_tree[v as usize] = true;
                    members.push(v);
                    v = p;
                }
            }
            let edges = prune_leaves(edges, &is_term);
            for &(a, b) in &edges {
                for v in [a, b] {
                    if !is_term[v as usize] {
                        owned[v as usize] = true;
                    }
                }
                if is_term[a as usize] && is_term[b as usize] {
                    used_tt.push((a, b));
                }
            }
            trees.push(edges);
        }
        return Some(trees);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{AnPart, GodanGraph};
    use crate::graph::AdjacencyGraph;
    use crate::verify::verify_idst;

    #[test]
    fn cycle_packs_two_paths() {
        let g = AdjacencyGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let view = View::full(&g);
        let r = find_packing(&view, &[0, 2], 2, 1000);
        let SearchOutcome::Found(trees) = r.outcome else { panic!("expected a packing") };
        assert_eq!(trees, vec![vec![(0, 1), (1, 2)], vec![(0, 3), (2, 3)]]);
        assert_eq!(find_packing(&view, &[0, 2], 3, 1000).outcome, SearchOutcome::Infeasible);
    }

    #[test]
    fn terminal_edges_are_not_shared() {
        let g = AdjacencyGraph::from_edges(2, &[(0, 1)]);
        let view = View::full(&g);
        assert!(matches!(find_packing(&view, &[0, 1], 1, 10).outcome, SearchOutcome::Found(_)));
        assert_eq!(find_packing(&view, &[0, 1], 2, 10).outcome, SearchOutcome::Infeasible);
        let k4 = AdjacencyGraph::complete(4);
        let view = View::full(&k4);
        let r = find_packing(&view, &[0, 1, 2, 3], 2, 1000);
        let SearchOutcome::Found(trees) = r.outcome else { panic!("K4 holds two spanning trees") };
        assert_eq!(trees.len(), 2);
        assert_eq!(find_packing(&view, &[0, 1, 2, 3], 3, 10_000).outcome, SearchOutcome::Infeasible);
    }

    #[test]
    fn ea3_and_an_parts() {
        let g = GodanGraph::new(3).unwrap();
        let view = View::full(&g);
        let s = [0, 1, 2, 3];
        let SearchOutcome::Found(trees) = find_packing(&view, &s, 2, 10_000).outcome else { panic!() };
        assert!(verify_idst(&g, &trees, &s).overall);
        let g5 = GodanGraph::new(5).unwrap();
        let part = g5.an_part_view(AnPart::Even);
        let s: Vec<Vertex> = part.vertices().step_by(13).take(4).collect();
        let SearchOutcome::Found(trees) = find_packing(&part, &s, 3, 100_000).outcome else { panic!() };
        assert!(verify_idst(&g5, &trees, &s).overall);
    }

    #[test]
    fn budget_is_reported() {
        let g = GodanGraph::new(4).unwrap();
        let view = View::full(&g);
        assert_eq!(find_packing(&view, &[0, 7, 14, 21], 4, 3).outcome, SearchOutcome::Exhausted);
    }
}
