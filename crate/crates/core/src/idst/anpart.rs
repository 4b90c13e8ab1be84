//! Constructions through the two copies of `AN_n`: all of `S` in one part,
//! or three terminals in one part and the fourth across.

use super::assemble::{Ctx, Region, TreePlan};
use super::{Attempts, CaseTag, Lemma, SteinerTreeSet, SEARCH_BUDGET};
use crate::cayley::GodanGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, View};
use crate::packing::{find_packing, greedy_packing, SearchOutcome};
use crate::Edge;

/// Seeded greedy rounds tried before the exact search.
const GREEDY_ROUNDS: usize = 400;

/// `t` internally edge-disjoint trees on `terminals` inside `view`: seeded
/// greedy rounds first, exact packing search if they all fail. Used for the
/// `n - 2` trees inside one part.
pub fn an_idst_pack(view: &View<'_>, terminals: &[Vertex], t: usize) -> Result<Vec<Vec<Edge>>> {
    if let Some(trees) = greedy_packing(view, terminals, t, GREEDY_ROUNDS, 0) {
        return Ok(trees);
    }
    match find_packing(view, terminals, t, SEARCH_BUDGET).outcome {
        SearchOutcome::Found(trees) => Ok(trees),
        SearchOutcome::Infeasible => Err(Error::Construction(format!("the part holds fewer than {t} trees"))),
        SearchOutcome::Exhausted => Err(Error::BudgetExhausted(SEARCH_BUDGET)),
    }
}

/// All of `S` in one part: `n - 2` trees inside it, and one tree on the
/// parity neighbors in the other part joined by the matching edges.
pub fn lemma_s4(g: &GodanGraph, s: [Vertex; 4]) -> Result<SteinerTreeSet> {
    let part = g.an_part_of(s[0]);
    if s.iter().any(|&v| g.an_part_of(v) != part) {
        return Err(Error::InvalidArgument("terminals span both parts".into()));
    }
    let n = g.n();
    let inner = an_idst_pack(&g.an_part_view(part), &s, n - 2)?;
    let ctx = Ctx::new(g, n, s);
    let mut plans: Vec<TreePlan> = inner
        .iter()
        .map(|t| {
            let mut p = TreePlan::new();
            p.edges(t);
            p
        })
        .collect();
    let tilde = s.map(|v| g.parity_neighbor(v));
    let mut outer = TreePlan::new();
    for (&v, &t) in s.iter().zip(&tilde) {
        outer.edge(v, t);
    }
    outer.part(Region::Part(part.other()), &tilde, &[]);
    plans.push(outer);
    let mut att = Attempts::new(g, s);
    att.offer_plans(&ctx, CaseTag::new(Lemma::S4, ""), &plans);
    att.finish("S4")
}

/// `x, y, z` in one part and `w` in the other, with `w̃ ∉ {x, y, z}` and at
/// most one edge from `w̃` to `{x, y, z}`.
///
/// The `n - 2` inner trees are packed on `{x, y, z, w̃}`. One of them (the
/// keeper) keeps `w̃` and gains `ww̃`; in every other tree each edge `w̃ũ` is
/// replaced by the detour `w - u - ũ` through the parity neighbors. The last
/// tree joins `x̃, ỹ, z̃, w` in the other part away from those detours.
pub fn lemma_ans3(g: &GodanGraph, s: [Vertex; 4]) -> Result<SteinerTreeSet> {
    let n = g.n();
    let even = s.iter().filter(|&&v| g.is_even(v)).count();
    let odd_one = match even {
        1 => s.iter().position(|&v| g.is_even(v)),
        3 => s.iter().position(|&v| !g.is_even(v)),
        _ => None,
    }
    .ok_or_else(|| Error::InvalidArgument("expected a 3+1 split over the parts".into()))?;
    let w = s[odd_one];
    let trio: Vec<Vertex> = s.iter().copied().filter(|&v| v != w).collect();
    let wt = g.parity_neighbor(w);
    if trio.contains(&wt) {
        return Err(Error::InvalidArgument("the parity neighbor of w is a terminal".into()));
    }
    let touching: Vec<Vertex> = trio.iter().copied().filter(|&v| g.has_edge(v, wt)).collect();
    if touching.len() > 1 {
        return Err(Error::InvalidArgument("w̃ has two terminal neighbors".into()));
    }
    let part = g.an_part_of(wt);
    let inner_s = [trio[0], trio[1], trio[2], wt];
    let inner = an_idst_pack(&g.an_part_view(part), &inner_s, n - 2)?;
    let nbrs: Vec<Vec<Vertex>> = inner
        .iter()
        .map(|t| t.iter().filter_map(|&(a, b)| if a == wt { Some(b) } else if b == wt { Some(a) } else { None }).collect())
        .collect();
    let branch = if touching.is_empty() { "Case1" } else { "Case2" };

    // The keeper must own the terminal edge at w̃, if any tree uses it;
    // otherwise prefer the tree where w̃ has degree 2, then the last.
    let forced = touching.first().and_then(|&x| nbrs.iter().position(|ns| ns.contains(&x)));
    let wide = nbrs.iter().position(|ns| ns.len() >= 2);
    let mut keepers: Vec<usize> = Vec::new();
    keepers.extend(forced.or(wide));
    keepers.extend((0..inner.len()).rev());
    keepers.dedup();

    let ctx = Ctx::new(g, n, s);
    let mut att = Attempts::new(g, s);
    for keeper in keepers {
        if forced.is_some_and(|f| f != keeper) {
            continue;
        }
        let mut plans = Vec::new();
        let mut detours = Vec::new();
        for (i, t) in inner.iter().enumerate() {
            let mut p = TreePlan::new();
            if i == keeper {
                p.edges(t).edge(w, wt);
            } else {
                p.edges(&t.iter().copied().filter(|&(a, b)| a != wt && b != wt).collect::<Vec<_>>());
                for &ut in &nbrs[i] {
                    let u = g.parity_neighbor(ut);
                    p.path(&[w, u, ut]);
                    detours.push(u);
                }
            }
            plans.push(p);
        }
        let tilde: Vec<Vertex> = trio.iter().map(|&v| g.parity_neighbor(v)).collect();
        let mut last = TreePlan::new();
        for (&v, &t) in trio.iter().zip(&tilde) {
            last.edge(v, t);
        }
        last.part(Region::Part(part.other()), &[tilde[0], tilde[1], tilde[2], w], &detours);
        plans.push(last);
        if att.offer_plans(&ctx, CaseTag::new(Lemma::Ans3, branch), &plans) {
            break;
        }
    }
    att.finish("ANS3")
}
