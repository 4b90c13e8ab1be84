//! The godan graph `EA_n` and the alternating group network `AN_n`.
//!
//! Both are Cayley graphs with right multiplication: `u ~ v` iff `u = v ∘ s`
//! for a connection-set element `s`. Vertices of `EA_n` are identified by
//! lexicographic rank, so `Vertex` ids and one-line strings convert freely.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, View, MAX_DIMENSION};
use crate::perm::{apply_in_place, factorial, rank_image, unrank_into, Generator, Permutation};

/// The cluster `EA_n^{m:i}`: vertices whose `m`-th symbol is `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClusterRef {
    pub m: u8,
    pub symbol: u8,
}

impl fmt::Display for ClusterRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EA^{{{}:{}}}", self.m, self.symbol)
    }
}

/// One of the two copies of `AN_n` inside `EA_n`: part 1 holds the even
/// permutations, part 2 the odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AnPart {
    Even = 1,
    Odd = 2,
}

impl AnPart {
    pub fn other(self) -> AnPart {
        match self {
            AnPart::Even => AnPart::Odd,
            AnPart::Odd => AnPart::Even,
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }
}

pub struct GodanGraph {
    n: usize,
    symbols: Vec<u8>,
    by_generator: Vec<Vertex>,
    sorted: Vec<Vertex>,
    degree: Vec<u8>,
}

impl fmt::Debug for GodanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GodanGraph(EA_{})", self.n)
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if !(3..=MAX_DIMENSION).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

impl GodanGraph {
    pub fn new(n: usize) -> Result<Self> {
        check_dimension(n)?;
        let order = factorial(n) as usize;
        let gens = Generator::godan_set(n);
        let mut symbols = vec![0u8; order * n];
        let mut by_generator = vec![0 as Vertex; order * n];
        let mut sorted = vec![0 as Vertex; order * n];
        let mut scratch = vec![0u8; n];
        for v in 0..order {
            unrank_into(n, v as u64, &mut symbols[v * n..(v + 1) * n]);
            for (gi, &g) in gens.iter().enumerate() {
                scratch.copy_from_slice(&symbols[v * n..(v + 1) * n]);
                apply_in_place(&mut scratch, g);
                by_generator[v * n + gi] = rank_image(&scratch) as Vertex;
            }
            let row = &mut sorted[v * n..(v + 1) * n];
            row.copy_from_slice(&by_generator[v * n..(v + 1) * n]);
            row.sort_unstable();
        }
        Ok(GodanGraph { n, symbols, by_generator, sorted, degree: vec![n as u8; order] })
    }

    /// A copy with the edge `uv` removed from the adjacency lists (generator
    /// arithmetic is unaffected). Only useful as a negative control.
    pub fn with_edge_removed(&self, u: Vertex, v: Vertex) -> GodanGraph {
        let mut sorted = self.sorted.clone();
        let mut degree = self.degree.clone();
        for (a, b) in [(u, v), (v, u)] {
            let row = &mut sorted[a as usize * self.n..(a as usize + 1) * self.n];
            let d = degree[a as usize] as usize;
            if let Some(pos) = row[..d].iter().position(|&x| x == b) {
                row[pos..d].rotate_left(1);
                degree[a as usize] -= 1;
            }
        }
        GodanGraph {
            n: self.n,
            symbols: self.symbols.clone(),
            by_generator: self.by_generator.clone(),
            sorted,
            degree,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, v: Vertex) -> &[u8] {
        &self.symbols[v as usize * self.n..(v as usize + 1) * self.n]
    }

    pub fn perm(&self, v: Vertex) -> Permutation {
        Permutation::new(self.image(v).to_vec()).expect("table holds valid permutations")
    }

    pub fn vertex(&self, p: &Permutation) -> Result<Vertex> {
        if p.n() != self.n {
            return Err(Error::OrderMismatch { left: self.n, right: p.n() });
        }
        Ok(p.rank() as Vertex)
    }

    pub fn parse_vertex(&self, s: &str) -> Result<Vertex> {
        self.vertex(&s.parse()?)
    }

    /// `v ∘ g`.
    pub fn step(&self, v: Vertex, g: Generator) -> Vertex {
        self.by_generator[v as usize * self.n + g.index()]
    }

    /// Position `pos` (1-based) symbol of `v`.
    pub fn symbol_at(&self, v: Vertex, pos: usize) -> u8 {
        self.symbols[v as usize * self.n + pos - 1]
    }

    pub fn is_even(&self, v: Vertex) -> bool {
        let img = self.image(v);
        let mut inv = 0;
        for i in 0..img.len() {
            for j in i + 1..img.len() {
                if img[i] > img[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }

    /// `x̃ = x ∘ (12)`, the unique neighbor in the other AN part.
    pub fn parity_neighbor(&self, v: Vertex) -> Vertex {
        self.step(v, Generator::Swap12)
    }

    pub fn check_position(&self, m: usize) -> Result<()> {
        if m < 4 || m > self.n {
            return Err(Error::PositionOutOfRange { m, n: self.n });
        }
        Ok(())
    }

    /// `x' = x ∘ (12)(3m)`, the unique neighbor outside the position-`m` cluster of `x`.
    pub fn out_neighbor(&self, v: Vertex, m: usize) -> Vertex {
        self.step(v, Generator::DoubleSwap(m as u8))
    }

    pub fn cluster_of(&self, v: Vertex, m: usize) -> ClusterRef {
        ClusterRef { m: m as u8, symbol: self.symbol_at(v, m) }
    }

    /// Generators that keep a vertex inside its position-`m` cluster.
    pub fn in_cluster_generators(&self, m: usize) -> impl Iterator<Item = Generator> {
        Generator::godan_set(self.n).into_iter().filter(move |g| *g != Generator::DoubleSwap(m as u8))
    }

    /// The `n - 1` in-cluster neighbors of `v`, keyed by the cluster their
    /// out-neighbor lands in.
    pub fn ordered_neighbors(&self, v: Vertex, m: usize) -> BTreeMap<u8, Vertex> {
        let mut map = BTreeMap::new();
        for g in self.in_cluster_generators(m) {
            let u = self.step(v, g);
            let key = self.symbol_at(self.out_neighbor(u, m), m);
            let previous = map.insert(key, u);
            assert!(previous.is_none(), "ordered neighbors of {} are not unique", self.label(v));
        }
        assert!(!map.contains_key(&self.symbol_at(v, m)));
        map
    }

    /// `x_j`: the in-cluster neighbor of `v` whose out-neighbor lies in cluster `(m, j)`.
    pub fn ordered_neighbor(&self, v: Vertex, j: u8, m: usize) -> Option<Vertex> {
        self.in_cluster_generators(m)
            .map(|g| self.step(v, g))
            .find(|&u| self.symbol_at(self.out_neighbor(u, m), m) == j)
    }

    /// `P[x, x_j'] = x - x_j - x_j'`.
    pub fn two_step_path(&self, v: Vertex, j: u8, m: usize) -> Result<[Vertex; 3]> {
        self.check_position(m)?;
        if self.symbol_at(v, m) == j {
            return Err(Error::InvalidArgument(format!("{} already lies in cluster {j}", self.label(v))));
        }
        let xj = self
            .ordered_neighbor(v, j, m)
            .ok_or_else(|| Error::InvalidArgument(format!("symbol {j} out of range")))?;
        Ok([v, xj, self.out_neighbor(xj, m)])
    }

    /// All edges between clusters `(m, i)` and `(m, j)`, as `(end in i, end in j)`.
    pub fn cross_edges(&self, m: usize, i: u8, j: u8) -> Result<Vec<(Vertex, Vertex)>> {
        self.check_position(m)?;
        if i == j {
            return Err(Error::InvalidArgument("cross edges need two distinct clusters".into()));
        }
        let mut edges = Vec::new();
        for v in self.cluster_members(ClusterRef { m: m as u8, symbol: i }) {
            for &u in self.neighbors(v) {
                if self.symbol_at(u, m) == j {
                    edges.push((v, u));
                }
            }
        }
        Ok(edges)
    }

    pub fn cluster_members(&self, c: ClusterRef) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.order() as Vertex).filter(move |&v| self.symbol_at(v, c.m as usize) == c.symbol)
    }

    /// True iff `{x, y, z}` induces a 3-cycle.
    pub fn is_triangle(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<bool> {
        if x == y || y == z || x == z {
            return Err(Error::InvalidArgument("triangle test needs three distinct vertices".into()));
        }
        Ok(self.has_edge(x, y) && self.has_edge(y, z) && self.has_edge(x, z))
    }

    /// The closed-form test `{y, z} = {x ∘ (123), x ∘ (132)}`.
    pub fn is_generator_triangle(&self, x: Vertex, y: Vertex, z: Vertex) -> bool {
        let a = self.step(x, Generator::Cycle123);
        let b = self.step(x, Generator::Cycle132);
        (y == a && z == b) || (y == b && z == a)
    }

    pub fn an_part_of(&self, v: Vertex) -> AnPart {
        if self.is_even(v) {
            AnPart::Even
        } else {
            AnPart::Odd
        }
    }

    pub fn an_part_view(&self, part: AnPart) -> View<'_> {
        View::from_predicate(self, |v| self.an_part_of(v) == part)
    }

    pub fn cluster_view(&self, c: ClusterRef) -> View<'_> {
        View::from_predicate(self, |v| self.symbol_at(v, c.m as usize) == c.symbol)
    }

    pub fn cluster_union_view(&self, m: usize, symbols: &[u8]) -> View<'_> {
        View::from_predicate(self, |v| symbols.contains(&self.symbol_at(v, m)))
    }

    /// `σ ∘ v`; an automorphism mapping cluster `(m, i)` to `(m, σ(i))`.
    pub fn left_translate(&self, sigma: &Permutation, v: Vertex) -> Vertex {
        let img: Vec<u8> = self.image(v).iter().map(|&s| sigma.at(s as usize)).collect();
        rank_image(&img) as Vertex
    }

    /// The explicit isomorphism between a cluster and `EA_{n-1}`.
    pub fn cluster_isomorphism(&self, c: ClusterRef) -> Result<ClusterIsomorphism> {
        self.check_position(c.m as usize)?;
        if c.symbol == 0 || c.symbol as usize > self.n {
            return Err(Error::InvalidArgument(format!("symbol {} out of range", c.symbol)));
        }
        Ok(ClusterIsomorphism::new(self.n, c))
    }
}

impl Graph for GodanGraph {
    fn order(&self) -> usize {
        self.degree.len()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let start = v as usize * self.n;
        &self.sorted[start..start + self.degree[v as usize] as usize]
    }

    fn label(&self, v: Vertex) -> String {
        self.perm(v).to_string()
    }
}

/// Bijection between cluster `(m, i)` of `EA_n` and `EA_{n-1}`: drop position
/// `m`, then relabel the remaining symbols onto `[n-1]`. For `i ≥ 4` symbol
/// `n` takes the place of `i` and every other symbol is fixed; for `i ≤ 3`
/// the relabeling is order-preserving. Any symbol relabeling is a left
/// multiplication, so adjacency is preserved either way.
#[derive(Clone, Debug)]
pub struct ClusterIsomorphism {
    n: usize,
    cluster: ClusterRef,
    down: Vec<u8>,
    up: Vec<u8>,
}

impl ClusterIsomorphism {
    fn new(n: usize, cluster: ClusterRef) -> Self {
        let i = cluster.symbol;
        let mut down = vec![0u8; n + 1];
        for s in 1..=n as u8 {
            if s == i {
                continue;
            }
            down[s as usize] = if i >= 4 {
                if s == n as u8 {
                    i
                } else {
                    s
                }
            } else if s > i {
                s - 1
            } else {
                s
            };
        }
        let mut up = vec![0u8; n];
        for s in 1..=n as u8 {
            if s != i {
                up[down[s as usize] as usize] = s;
            }
        }
        ClusterIsomorphism { n, cluster, down, up }
    }

    pub fn cluster(&self) -> ClusterRef {
        self.cluster
    }

    /// Maps a member of the cluster (vertex of `EA_n`) to a vertex of `EA_{n-1}`.
    pub fn to_sub(&self, big: &GodanGraph, v: Vertex) -> Vertex {
        let m = self.cluster.m as usize;
        debug_assert_eq!(big.symbol_at(v, m), self.cluster.symbol);
        let img: Vec<u8> = big
            .image(v)
            .iter()
            .enumerate()
            .filter(|(pos, _)| pos + 1 != m)
            .map(|(_, &s)| self.down[s as usize])
            .collect();
        rank_image(&img) as Vertex
    }

    pub fn from_sub(&self, small: &GodanGraph, u: Vertex) -> Vertex {
        debug_assert_eq!(small.n() + 1, self.n);
        let m = self.cluster.m as usize;
        let mut img = Vec::with_capacity(self.n);
        for (pos, &s) in small.image(u).iter().enumerate() {
            if pos + 1 == m {
                img.push(self.cluster.symbol);
            }
            img.push(self.up[s as usize]);
        }
        if img.len() < self.n {
            img.push(self.cluster.symbol);
        }
        rank_image(&img) as Vertex
    }
}

/// `AN_n` as a standalone graph on the even permutations, ids dense in
/// lexicographic order of the even permutations.
pub struct AltNetwork {
    n: usize,
    ranks: Vec<Vertex>,
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for AltNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AltNetwork(AN_{})", self.n)
    }
}

impl AltNetwork {
    pub fn new(n: usize) -> Result<Self> {
        check_dimension(n)?;
        let total = factorial(n) as usize;
        let mut local = vec![u32::MAX; total];
        let mut ranks = Vec::with_capacity(total / 2);
        let mut img = vec![0u8; n];
        for r in 0..total {
            unrank_into(n, r as u64, &mut img);
            if Permutation::new(img.clone()).expect("valid").is_even() {
                local[r] = ranks.len() as Vertex;
                ranks.push(r as Vertex);
            }
        }
        let gens = Generator::alternating_set(n);
        let mut adj = Vec::with_capacity(ranks.len());
        for &r in &ranks {
            unrank_into(n, r as u64, &mut img);
            let mut row: Vec<Vertex> = gens
                .iter()
                .map(|&g| {
                    let mut next = img.clone();
                    apply_in_place(&mut next, g);
                    local[rank_image(&next) as usize]
                })
                .collect();
            row.sort_unstable();
            adj.push(row);
        }
        Ok(AltNetwork { n, ranks, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self, v: Vertex) -> Permutation {
        Permutation::unrank(self.n, self.ranks[v as usize] as u64).expect("stored rank is valid")
    }

    pub fn vertex(&self, p: &Permutation) -> Option<Vertex> {
        let r = p.rank() as Vertex;
        self.ranks.binary_search(&r).ok().map(|i| i as Vertex)
    }

    /// Rank of the vertex in `EA_n`.
    pub fn godan_rank(&self, v: Vertex) -> Vertex {
        self.ranks[v as usize]
    }
}

impl Graph for AltNetwork {
    fn order(&self) -> usize {
        self.ranks.len()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    fn label(&self, v: Vertex) -> String {
        self.perm(v).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(g: &GodanGraph, s: &str) -> Vertex {
        g.parse_vertex(s).unwrap()
    }

    fn labels(g: &GodanGraph, vs: impl IntoIterator<Item = Vertex>) -> Vec<String> {
        let mut out: Vec<String> = vs.into_iter().map(|x| g.label(x)).collect();
        out.sort();
        out
    }

    #[test]
    fn counts_match_regularity() {
        for n in 3..=6 {
            let g = GodanGraph::new(n).unwrap();
            let order = factorial(n) as usize;
            assert_eq!(g.order(), order);
            assert_eq!(g.edge_count(), n * order / 2);
            assert!((0..order as Vertex).all(|x| g.degree(x) == n));
            let an = AltNetwork::new(n).unwrap();
            assert_eq!(an.order(), order / 2);
            assert_eq!(an.edge_count(), order * (n - 1) / 4);
        }
        assert_eq!(GodanGraph::new(4).unwrap().edge_count(), 48);
        assert_eq!(AltNetwork::new(4).unwrap().edge_count(), 18);
    }

    #[test]
    fn dimension_is_checked() {
        assert!(matches!(GodanGraph::new(2), Err(Error::UnsupportedDimension(2))));
        assert!(AltNetwork::new(2).is_err());
    }

    #[test]
    fn neighbor_examples() {
        let g = GodanGraph::new(3).unwrap();
        let x = v(&g, "123");
        assert_eq!(labels(&g, g.neighbors(x).iter().copied()), ["213", "231", "312"]);
        let view = View::full(&g).without([v(&g, "213")]);
        assert_eq!(labels(&g, view.neighbors(x)), ["231", "312"]);
        let an = AltNetwork::new(3).unwrap();
        let id = an.vertex(&Permutation::identity(3)).unwrap();
        let mut ns: Vec<String> = an.neighbors(id).iter().map(|&u| an.label(u)).collect();
        ns.sort();
        assert_eq!(ns, ["231", "312"]);
    }

    #[test]
    fn parity_and_out_neighbors() {
        let g3 = GodanGraph::new(3).unwrap();
        assert_eq!(g3.label(g3.parity_neighbor(v(&g3, "123"))), "213");
        let g = GodanGraph::new(4).unwrap();
        assert_eq!(g.label(g.parity_neighbor(v(&g, "1234"))), "2134");
        assert_eq!(g.label(g.out_neighbor(v(&g, "1234"), 4)), "2143");
        for x in 0..g.order() as Vertex {
            assert_eq!(g.parity_neighbor(g.parity_neighbor(x)), x);
            assert_ne!(g.an_part_of(g.parity_neighbor(x)), g.an_part_of(x));
            let o = g.out_neighbor(x, 4);
            assert_eq!(g.out_neighbor(o, 4), x);
            assert_ne!(g.cluster_of(o, 4), g.cluster_of(x, 4));
        }
        assert!(g.check_position(3).is_err());
        assert!(g.check_position(5).is_err());
    }

    #[test]
    fn clusters() {
        let g = GodanGraph::new(4).unwrap();
        assert_eq!(g.cluster_of(v(&g, "1234"), 4), ClusterRef { m: 4, symbol: 4 });
        assert_eq!(g.cluster_of(v(&g, "2143"), 4), ClusterRef { m: 4, symbol: 3 });
        assert_eq!(g.cluster_members(ClusterRef { m: 4, symbol: 1 }).count(), 6);
    }

    #[test]
    fn ordered_neighbor_examples() {
        let g = GodanGraph::new(4).unwrap();
        let map = g.ordered_neighbors(v(&g, "1234"), 4);
        let shown: Vec<(u8, String)> = map.iter().map(|(&j, &u)| (j, g.label(u))).collect();
        assert_eq!(
            shown,
            vec![(1, "2314".to_string()), (2, "3124".to_string()), (3, "2134".to_string())]
        );
        for x in 0..g.order() as Vertex {
            assert_eq!(g.ordered_neighbors(x, 4).len(), 3);
        }
        let path = g.two_step_path(v(&g, "1234"), 1, 4).unwrap();
        assert_eq!(labels(&g, []), Vec::<String>::new());
        assert_eq!(path.map(|x| g.label(x)), ["1234", "2314", "3241"]);
        let path = g.two_step_path(v(&g, "1234"), 3, 4).unwrap();
        assert_eq!(path.map(|x| g.label(x)), ["1234", "2134", "1243"]);
        assert!(g.two_step_path(v(&g, "1234"), 4, 4).is_err());
    }

    #[test]
    fn two_step_paths_land_in_target_cluster() {
        let g = GodanGraph::new(5).unwrap();
        for m in 4..=5 {
            for x in 0..g.order() as Vertex {
                let own = g.symbol_at(x, m);
                for j in (1..=5u8).filter(|&j| j != own) {
                    let [a, b, c] = g.two_step_path(x, j, m).unwrap();
                    assert!(g.has_edge(a, b) && g.has_edge(b, c));
                    assert_eq!(g.symbol_at(b, m), own);
                    assert_eq!(g.symbol_at(c, m), j);
                }
            }
        }
    }

    #[test]
    fn same_cluster_out_neighbors_iff_swap12() {
        let g = GodanGraph::new(5).unwrap();
        let m = 5;
        for x in 0..g.order() as Vertex {
            let xo = g.out_neighbor(x, m);
            for (_, xj) in g.ordered_neighbors(x, m) {
                let same = g.symbol_at(g.out_neighbor(xj, m), m) == g.symbol_at(xo, m);
                let is_swap = xj == g.parity_neighbor(x);
                assert_eq!(same, is_swap);
                if is_swap {
                    assert_eq!(g.out_neighbor(xj, m), g.parity_neighbor(xo));
                }
            }
        }
    }

    #[test]
    fn cross_edge_counts() {
        let g4 = GodanGraph::new(4).unwrap();
        assert_eq!(g4.cross_edges(4, 4, 3).unwrap().len(), 2);
        let g5 = GodanGraph::new(5).unwrap();
        assert_eq!(g5.cross_edges(5, 1, 2).unwrap().len(), 6);
        for (u, w) in g5.cross_edges(5, 1, 2).unwrap() {
            assert_eq!(g5.out_neighbor(u, 5), w);
        }
        assert!(g5.cross_edges(5, 2, 2).is_err());
    }

    #[test]
    fn triangle_examples_and_exhaustive_agreement() {
        let g3 = GodanGraph::new(3).unwrap();
        let (a, b, c) = (v(&g3, "123"), v(&g3, "231"), v(&g3, "312"));
        assert!(g3.is_triangle(a, b, c).unwrap());
        assert!(!g3.is_triangle(a, v(&g3, "213"), b).unwrap());
        assert!(g3.is_triangle(a, a, b).is_err());
        let g = GodanGraph::new(4).unwrap();
        let n = g.order() as Vertex;
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    assert_eq!(g.is_triangle(x, y, z).unwrap(), g.is_generator_triangle(x, y, z));
                }
            }
        }
    }

    #[test]
    fn an_parts() {
        let g = GodanGraph::new(4).unwrap();
        assert_eq!(g.an_part_of(v(&g, "1234")), AnPart::Even);
        assert_eq!(g.an_part_of(v(&g, "2134")), AnPart::Odd);
        for part in [AnPart::Even, AnPart::Odd] {
            let view = g.an_part_view(part);
            assert_eq!(view.len(), 12);
            assert_eq!(view.edge_count(), 18);
        }
    }

    #[test]
    fn even_part_is_alt_network() {
        let g = GodanGraph::new(5).unwrap();
        let an = AltNetwork::new(5).unwrap();
        let view = g.an_part_view(AnPart::Even);
        for a in 0..an.order() as Vertex {
            let x = an.godan_rank(a);
            let mut mapped: Vec<Vertex> = an.neighbors(a).iter().map(|&b| an.godan_rank(b)).collect();
            mapped.sort_unstable();
            assert_eq!(mapped, view.neighbors(x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cluster_isomorphism_preserves_adjacency() {
        let big = GodanGraph::new(4).unwrap();
        let small = GodanGraph::new(3).unwrap();
        let c = ClusterRef { m: 4, symbol: 4 };
        let iso = big.cluster_isomorphism(c).unwrap();
        assert_eq!(small.label(iso.to_sub(&big, v(&big, "1234"))), "123");
        for symbol in 1..=4u8 {
            let c = ClusterRef { m: 4, symbol };
            let iso = big.cluster_isomorphism(c).unwrap();
            let members: Vec<Vertex> = big.cluster_members(c).collect();
            let mut images: Vec<Vertex> = members.iter().map(|&x| iso.to_sub(&big, x)).collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len(), 6);
            for &x in &members {
                assert_eq!(iso.from_sub(&small, iso.to_sub(&big, x)), x);
                for &y in &members {
                    assert_eq!(big.has_edge(x, y), small.has_edge(iso.to_sub(&big, x), iso.to_sub(&big, y)));
                }
            }
        }
    }

    #[test]
    fn cluster_isomorphism_other_positions() {
        let big = GodanGraph::new(5).unwrap();
        let small = GodanGraph::new(4).unwrap();
        for m in 4..=5u8 {
            for symbol in 1..=5u8 {
                let c = ClusterRef { m, symbol };
                let iso = big.cluster_isomorphism(c).unwrap();
                for x in big.cluster_members(c) {
                    let sx = iso.to_sub(&big, x);
                    assert_eq!(iso.from_sub(&small, sx), x);
                    for &y in big.neighbors(x) {
                        if big.symbol_at(y, m as usize) == symbol {
                            assert!(small.has_edge(sx, iso.to_sub(&big, y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn left_translation_is_an_automorphism() {
        let g = GodanGraph::new(4).unwrap();
        let sigma: Permutation = "3142".parse().unwrap();
        for x in 0..g.order() as Vertex {
            for &y in g.neighbors(x) {
                assert!(g.has_edge(g.left_translate(&sigma, x), g.left_translate(&sigma, y)));
            }
            let tx = g.left_translate(&sigma, x);
            assert_eq!(g.out_neighbor(tx, 4), g.left_translate(&sigma, g.out_neighbor(x, 4)));
            assert_eq!(g.symbol_at(tx, 4), sigma.at(g.symbol_at(x, 4) as usize));
        }
        let x = v(&g, "2413");
        let inv = g.perm(x).inverse();
        assert_eq!(g.left_translate(&inv, x), v(&g, "1234"));
    }

    #[test]
    fn removing_an_edge_breaks_regularity() {
        let g = GodanGraph::new(3).unwrap();
        let (a, b) = (v(&g, "123"), v(&g, "213"));
        let h = g.with_edge_removed(a, b);
        assert_eq!(h.degree(a), 2);
        assert!(!h.has_edge(a, b));
        assert_eq!(h.edge_count(), 8);
    }
}
