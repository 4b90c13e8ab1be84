//! Exact ground truth for small graphs: maximum tree packings per terminal
//! set, generalized connectivity by minimization, the minimum-degree upper
//! bound, and an independent pairwise computation of vertex connectivity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, View};
use crate::packing::{find_packing, SearchOutcome};
use crate::verify::verify_idst;
use crate::Edge;

/// Largest graph `kappa_s_exact` accepts by default.
pub const DEFAULT_MAX_VERTICES: usize = 120;

/// Largest graph for which every `k`-subset may be enumerated.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 24;

/// Subsets solved exactly before the bulk pass of [`kappa_k_exact`].
const PROBE: usize = 32;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Packing size tried first.
    pub warm_start: Option<usize>,
    /// Search nodes per packing question.
    pub budget: u64,
    pub max_vertices: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { warm_start: None, budget: 20_000_000, max_vertices: DEFAULT_MAX_VERTICES }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub terminals: Vec<Vertex>,
    /// Largest size for which a packing was found.
    pub max_t: usize,
    pub witness: Option<Vec<Vec<Edge>>>,
    pub explored: u64,
    /// False when the search ran out of budget: the value is then only
    /// known to be at least `max_t`.
    pub exact: bool,
}

/// The maximum number of internally edge-disjoint trees connecting `terminals`.
pub fn kappa_s_exact(g: &dyn Graph, terminals: &[Vertex], opts: OracleOptions) -> Result<PackingResult> {
    if g.order() > opts.max_vertices {
        return Err(Error::InvalidArgument(format!(
            "{} vertices exceed the oracle bound of {}",
            g.order(),
            opts.max_vertices
        )));
    }
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.len() != terminals.len() || terms.len() < 2 {
        return Err(Error::InvalidArgument("need at least two distinct terminals".into()));
    }
    if let Some(&v) = terms.iter().find(|&&v| v as usize >= g.order()) {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
    }
    let view = View::full(g);
    let ceiling = terms.iter().map(|&s| g.degree(s)).min().unwrap_or(0);
    let mut explored = 0;
    let mut ask = |t: usize| {
        let r = find_packing(&view, &terms, t, opts.budget);
        explored += r.nodes;
        r.outcome
    };
    let mut t = opts.warm_start.unwrap_or(1).clamp(1, ceiling.max(1));
    let mut best: Option<(usize, Vec<Vec<Edge>>)> = None;
    let mut exact = true;
    // Walk down until a packing is found.
    loop {
        match ask(t) {
            SearchOutcome::Found(trees) => {
                best = Some((t, trees));
                break;
            }
            SearchOutcome::Infeasible => {}
            SearchOutcome::Exhausted => exact = false,
        }
        if t == 1 {
            break;
        }
        t -= 1;
    }
    // Then up until a size is refuted.
    if let Some((found, _)) = &best {
        let mut next = found + 1;
        while next <= ceiling {
            match ask(next) {
                SearchOutcome::Found(trees) => {
                    best = Some((next, trees));
                    next += 1;
                }
                SearchOutcome::Infeasible => break,
                SearchOutcome::Exhausted => {
                    exact = false;
                    break;
                }
            }
        }
    }
    let (max_t, witness) = match best {
        Some((t, trees)) => {
            debug_assert!(verify_idst(g, &trees, &terms).overall);
            (t, Some(trees))
        }
        None => (0, None),
    };
    Ok(PackingResult { terminals: terms, max_t, witness, explored, exact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Policy {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaResult {
    pub k: usize,
    /// Exact minimum when exhaustive; otherwise the least value among the
    /// sampled sets, an upper bound on the true minimum.
    pub value: usize,
    pub minimizer: Vec<Vertex>,
    pub subsets: usize,
    pub seed: Option<u64>,
    pub exact: bool,
    pub explored: u64,
}

/// All `k`-subsets of `0..order` in lexicographic order.
pub fn k_subsets(order: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    if k > order {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| i as Vertex).collect());
        let mut i = k;
        while i > 0 && idx[i - 1] == order - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `count` uniformly random sorted `k`-subsets of `0..order`, reproducible from `seed`.
pub fn sample_subsets(order: usize, k: usize, count: usize, seed: u64) -> Vec<Vec<Vertex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut s: Vec<Vertex> =
                rand::seq::index::sample(&mut rng, order, k).into_iter().map(|v| v as Vertex).collect();
            s.sort_unstable();
            s
        })
        .collect()
}

/// `κ_k(G)`: the minimum of [`kappa_s_exact`] over `k`-subsets.
///
/// The least exact value over the first few subsets fixes a candidate `U`;
/// every other subset is then checked for a packing of size `U` in
/// parallel, and only those that fail are solved exactly.
pub fn kappa_k_exact(g: &dyn Graph, k: usize, policy: Policy, opts: OracleOptions) -> Result<KappaResult> {
    if k < 2 || k > g.order() {
        return Err(Error::InvalidArgument(format!("k = {k} is out of range")));
    }
    let (subsets, seed) = match policy {
        Policy::Exhaustive => {
            if g.order() > EXHAUSTIVE_MAX_VERTICES {
                return Err(Error::InvalidArgument(format!(
                    "exhaustive policy needs at most {EXHAUSTIVE_MAX_VERTICES} vertices"
                )));
            }
            (k_subsets(g.order(), k), None)
        }
        Policy::Sample { count, seed } => (sample_subsets(g.order(), k, count, seed), Some(seed)),
    };
    // Exact values for a few subsets give a candidate that is usually already
    // the minimum, so the bulk pass rarely has to refute a packing. Probing
    // stops early once the degree bound is met; this only saves time, since
    // the bulk pass checks every subset regardless.
    let bound = upper_bound_min_degree_rule(g, k);
    let mut probed: Vec<PackingResult> = Vec::new();
    for s in subsets.iter().take(PROBE) {
        let r = kappa_s_exact(g, s, opts)?;
        let enough = bound.is_some_and(|b| r.max_t <= b);
        probed.push(r);
        if enough {
            break;
        }
    }
    let (best, first) = probed.iter().enumerate().min_by_key(|&(i, r)| (r.max_t, i)).expect("at least one subset");
    let candidate = first.max_t;
    let view = View::full(g);
    let checks: Vec<(usize, SearchOutcome, u64)> = subsets
        .par_iter()
        .enumerate()
        .skip(probed.len())
        .map(|(i, s)| {
            let r = find_packing(&view, s, candidate, opts.budget);
            (i, r.outcome, r.nodes)
        })
        .collect();
    let mut explored = probed.iter().map(|r| r.explored).sum::<u64>() + checks.iter().map(|c| c.2).sum::<u64>();
    let mut exact = probed.iter().all(|r| r.exact);
    let mut value = candidate;
    let mut minimizer = subsets[best].clone();
    let failing: Vec<usize> = checks
        .iter()
        .filter_map(|(i, outcome, _)| match outcome {
            SearchOutcome::Found(_) => None,
            SearchOutcome::Infeasible => Some(*i),
            SearchOutcome::Exhausted => Some(*i),
        })
        .collect();
    let solved: Vec<Result<PackingResult>> = failing
        .par_iter()
        .map(|&i| kappa_s_exact(g, &subsets[i], OracleOptions { warm_start: Some(candidate), ..opts }))
        .collect();
    for (r, &i) in solved.into_iter().zip(&failing) {
        let r = r?;
        explored += r.explored;
        exact &= r.exact;
        if r.max_t < value {
            value = r.max_t;
            minimizer = subsets[i].clone();
        }
    }
    Ok(KappaResult {
        k,
        value,
        minimizer,
        subsets: subsets.len(),
        seed,
        exact: exact && matches!(policy, Policy::Exhaustive),
        explored,
    })
}

/// `δ(G) - 1` when two adjacent vertices both attain the minimum degree.
pub fn upper_bound_min_degree_rule(g: &dyn Graph, k: usize) -> Option<usize> {
    if k < 3 || k > g.order() {
        return None;
    }
    let delta = (0..g.order() as Vertex).map(|v| g.degree(v)).min()?;
    let hit = (0..g.order() as Vertex)
        .filter(|&v| g.degree(v) == delta)
        .any(|v| g.neighbors(v).iter().any(|&u| g.degree(u) == delta));
    hit.then(|| delta - 1)
}

/// Vertex connectivity from Whitney's characterization: the least number of
/// internally disjoint paths over all pairs, computed by a plain dense
/// augmenting-path flow independent of [`crate::connectivity`].
pub fn whitney_kappa(g: &dyn Graph) -> usize {
    let n = g.order();
    if n < 2 {
        return 0;
    }
    let mut best = usize::MAX;
    for x in 0..n {
        for y in x + 1..n {
            best = best.min(dense_local_connectivity(g, x, y, best));
        }
    }
    best
}

fn dense_local_connectivity(g: &dyn Graph, x: usize, y: usize, limit: usize) -> usize {
    let n = g.order();
    let size = 2 * n;
    let mut cap = vec![vec![0u8; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == x || v == y { n as u8 } else { 1 };
        for &u in g.neighbors(v as Vertex) {
            cap[2 * v + 1][2 * u as usize] = 1;
        }
    }
    let (s, t) = (2 * x + 1, 2 * y);
    let mut flow = 0;
    while flow < limit {
        let mut prev = vec![usize::MAX; size];
        prev[s] = s;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            if a == t {
                break;
            }
            for b in 0..size {
                if cap[a][b] > 0 && prev[b] == usize::MAX {
                    prev[b] = a;
                    stack.push(b);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut b = t;
        while b != s {
            let a = prev[b];
            cap[a][b] -= 1;
            cap[b][a] += 1;
            b = a;
        }
        flow += 1;
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{AltNetwork, GodanGraph};
    use crate::graph::AdjacencyGraph;

    #[test]
    fn subsets_enumerate() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(24, 4).len(), 10_626);
        assert_eq!(k_subsets(6, 4)[0], vec![0, 1, 2, 3]);
        assert_eq!(sample_subsets(120, 4, 5, 7), sample_subsets(120, 4, 5, 7));
    }

    #[test]
    fn min_degree_rule() {
        assert_eq!(upper_bound_min_degree_rule(&GodanGraph::new(4).unwrap(), 4), Some(3));
        assert_eq!(upper_bound_min_degree_rule(&GodanGraph::new(5).unwrap(), 4), Some(4));
        // No two leaves are adjacent, so the rule does not apply; the true
        // value is 1, which a bound of 0 would contradict.
        let star = AdjacencyGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(upper_bound_min_degree_rule(&star, 3), None);
        let r = kappa_k_exact(&star, 3, Policy::Exhaustive, OracleOptions::default()).unwrap();
        assert_eq!(r.value, 1);
        let path = AdjacencyGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(upper_bound_min_degree_rule(&path, 3), None);
        assert_eq!(upper_bound_min_degree_rule(&path, 2), None);
    }

    #[test]
    fn whitney_small() {
        assert_eq!(whitney_kappa(&GodanGraph::new(3).unwrap()), 3);
        assert_eq!(whitney_kappa(&AltNetwork::new(4).unwrap()), 3);
        assert_eq!(whitney_kappa(&AdjacencyGraph::complete(5)), 4);
    }

    #[test]
    fn ea3_values() {
        let g = GodanGraph::new(3).unwrap();
        let r = kappa_k_exact(&g, 4, Policy::Exhaustive, OracleOptions::default()).unwrap();
        assert_eq!(r.value, 2);
        assert!(r.exact);
        for s in k_subsets(6, 4) {
            let p = kappa_s_exact(&g, &s, OracleOptions::default()).unwrap();
            assert!(p.exact && p.max_t >= 2);
            assert!(verify_idst(&g, p.witness.as_ref().unwrap(), &s).overall);
        }
    }

    #[test]
    fn bad_arguments() {
        let g = GodanGraph::new(6).unwrap();
        assert!(kappa_s_exact(&g, &[0, 1, 2, 3], OracleOptions::default()).is_err());
        let g4 = GodanGraph::new(4).unwrap();
        assert!(kappa_s_exact(&g4, &[0, 0, 1, 2], OracleOptions::default()).is_err());
        let g5 = GodanGraph::new(5).unwrap();
        assert!(kappa_k_exact(&g5, 4, Policy::Exhaustive, OracleOptions::default()).is_err());
    }
}
