//! `n = 3` by exact search, and the case of `S` inside one cluster.

use super::assemble::{assemble, Ctx, Region, TreePlan};
use super::{build_idsts_with, godan_graph, split, BuildOptions, CaseTag, Lemma, SteinerTreeSet, SEARCH_BUDGET};
use crate::cayley::GodanGraph;
use crate::error::{Error, Result};
use crate::graph::{ordered, Vertex, View};
use crate::packing::{find_packing, SearchOutcome};
use crate::verify::verify_idst;

/// Two trees in `EA_3` (6 vertices, a 6-cycle plus a perfect matching),
/// found by exact packing search.
pub fn base_ea3(g: &GodanGraph, s: [Vertex; 4]) -> Result<SteinerTreeSet> {
    if g.n() != 3 {
        return Err(Error::InvalidArgument("the base case is EA_3".into()));
    }
    let view = View::full(g);
    match find_packing(&view, &s, 2, SEARCH_BUDGET).outcome {
        SearchOutcome::Found(trees) => {
            let in_ab = s.iter().filter(|&&v| g.is_even(v)).count();
            let branch = if in_ab == 2 { "Case2" } else { "Case1" };
            Ok(SteinerTreeSet::new(g, s, trees, CaseTag::new(Lemma::Base, branch)))
        }
        SearchOutcome::Infeasible => Err(Error::Construction("EA_3 holds no two trees for this set".into())),
        SearchOutcome::Exhausted => Err(Error::BudgetExhausted(SEARCH_BUDGET)),
    }
}

/// `S` inside cluster `(m, i)`: `n - 2` trees from `EA_{n-1}` carried back
/// through the cluster isomorphism, plus one tree on the out-neighbors in
/// the other clusters joined by the four out-edges.
pub fn recurse_case(g: &GodanGraph, s: [Vertex; 4], m: usize, opts: &BuildOptions) -> Result<SteinerTreeSet> {
    g.check_position(m)?;
    if split(g, &s, m).len() != 1 {
        return Err(Error::InvalidArgument("terminals span more than one cluster".into()));
    }
    let ctx = Ctx::new(g, m, s);
    let home = ctx.cl(s[0]);
    let iso = g.cluster_isomorphism(ctx.cluster(home))?;
    let small = godan_graph(g.n() - 1)?;
    let inner_s: Vec<Vertex> = s.iter().map(|&v| iso.to_sub(g, v)).collect();
    let inner = build_idsts_with(small, &inner_s, &BuildOptions { m: None, ..opts.clone() })?;

    let mut plans: Vec<TreePlan> = inner
        .trees
        .iter()
        .map(|t| {
            let mut p = TreePlan::new();
            for &(a, b) in t {
                let (a, b) = ordered(iso.from_sub(small, a), iso.from_sub(small, b));
                p.edge(a, b);
            }
            p
        })
        .collect();
    let outs = s.map(|v| ctx.out(v));
    let mut outer = TreePlan::new();
    for (&v, &o) in s.iter().zip(&outs) {
        outer.edge(v, o);
    }
    outer.part(Region::Clusters(ctx.others(&[home])), &outs, &[]);
    plans.push(outer);

    let trees = assemble(&ctx, &plans)?;
    let branch = format!("via {}", inner.case.path());
    let set = SteinerTreeSet::new(g, s, trees, CaseTag::new(Lemma::Recurse, branch).at(m));
    if !verify_idst(g, &set.trees, &s).overall {
        return Err(Error::Construction("recursive case did not verify".into()));
    }
    Ok(set)
}
