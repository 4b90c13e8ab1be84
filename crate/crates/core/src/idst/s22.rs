//! Two terminals `x, y` in cluster `A` and two more `z, w` in cluster `B`.
//!
//! `n - 1` internally disjoint `(x, y)`-paths `P_c` inside `A`, keyed by the
//! cluster `c` that the out-neighbor of their first inner vertex `x_c` lands
//! in, and likewise `(z, w)`-paths `Q_c` inside `B`. The tree through `P_B`
//! enters `B` at `x_B'` and walks to the first vertex `u` on any `Q`; the
//! path holding `u` is its `Q`. The remaining `Q`s are matched to the
//! remaining `P`s by vertex-disjoint connectors through the other clusters.

use std::collections::BTreeMap;

use super::assemble::{Ctx, TreePlan};
use super::{labelings, split, Attempts, CaseTag, Lemma, SteinerTreeSet};
use crate::cayley::GodanGraph;
use crate::connectivity::{disjoint_set_paths, internally_disjoint_paths};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Paths from `from` to `to`, keyed by the out-cluster of their second vertex.
fn keyed_paths(ctx: &Ctx<'_>, from: Vertex, to: Vertex) -> Result<BTreeMap<u8, Vec<Vertex>>> {
    let view = ctx.g.cluster_view(ctx.cluster(ctx.cl(from)));
    let family = internally_disjoint_paths(&view, from, to, ctx.n() - 1)?;
    let mut out = BTreeMap::new();
    for mut p in family.paths {
        if p[0] != from {
            p.reverse();
        }
        out.insert(ctx.cl(ctx.out(p[1])), p);
    }
    Ok(out)
}

struct Frame<'g> {
    ctx: Ctx<'g>,
    a: u8,
    b: u8,
    rest: Vec<u8>,
    p: BTreeMap<u8, Vec<Vertex>>,
    q: BTreeMap<u8, Vec<Vertex>>,
}

impl Frame<'_> {
    /// `x_c'`, the end of `P_c`'s exit into cluster `c`.
    fn exit_p(&self, c: u8) -> Vertex {
        self.ctx.out(self.p[&c][1])
    }

    fn exit_q(&self, k: u8) -> Vertex {
        self.ctx.out(self.q[&k][1])
    }

    fn with_p(&self, t: &mut TreePlan, c: u8) {
        t.path(&self.p[&c]).edge(self.p[&c][1], self.exit_p(c));
    }

    fn with_q(&self, t: &mut TreePlan, k: u8) {
        t.path(&self.q[&k]).edge(self.q[&k][1], self.exit_q(k));
    }

    /// Matches `P_c` (for `c` in `ps`) to `Q_k` (for `k` in `qs`) by disjoint
    /// connectors through the clusters other than `A` and `B`. `extra`
    /// stands in for one `Q` endpoint with a replacement target.
    fn connect(
        &self,
        plans: &mut BTreeMap<u8, TreePlan>,
        ps: &[u8],
        qs: &[u8],
        extra: Option<(Vertex, &TreePlan)>,
    ) -> Result<()> {
        let xs: Vec<Vertex> = ps.iter().map(|&c| self.exit_p(c)).collect();
        let mut zs: Vec<Vertex> = qs.iter().map(|&k| self.exit_q(k)).collect();
        if let Some((v, _)) = extra {
            zs.push(v);
        }
        if xs.is_empty() {
            return Ok(());
        }
        let view = self.ctx.g.cluster_union_view(self.ctx.m, &self.rest);
        let family = disjoint_set_paths(&view, &xs, &zs, xs.len())?;
        for mut path in family.paths {
            if !xs.contains(&path[0]) {
                path.reverse();
            }
            let c = ps[xs.iter().position(|&v| v == path[0]).expect("path starts in X")];
            let end = *path.last().unwrap();
            let mut t = TreePlan::new();
            self.with_p(&mut t, c);
            t.path(&path);
            match qs.iter().position(|&k| self.exit_q(k) == end) {
                Some(i) => self.with_q(&mut t, qs[i]),
                None => {
                    let (_, tail) = extra.expect("path ends in Z");
                    t = merge(t, tail);
                }
            }
            plans.insert(c, t);
        }
        Ok(())
    }
}

fn merge(mut a: TreePlan, b: &TreePlan) -> TreePlan {
    a.append(b);
    a
}

/// `n - 1` trees for a 2+2 split at position `m`.
pub fn lemma_s22(g: &GodanGraph, s: [Vertex; 4], m: usize) -> Result<SteinerTreeSet> {
    g.check_position(m)?;
    let groups = split(g, &s, m);
    if groups.iter().map(Vec::len).collect::<Vec<_>>() != [2, 2] {
        return Err(Error::InvalidArgument("expected two terminals in each of two clusters".into()));
    }
    let mut att = Attempts::new(g, s);
    let pairs_ok = |r: &[u8; 4]| {
        let first = [r[0], r[1]];
        groups.iter().any(|grp| grp.len() == 2 && first.contains(&grp[0]) && first.contains(&grp[1]))
    };
    for roles in labelings().filter(pairs_ok) {
        let [x, y, z, w] = att.label(roles);
        let ctx = Ctx::new(g, m, s);
        let (a, b) = (ctx.cl(x), ctx.cl(z));
        let (p, q) = match (keyed_paths(&ctx, x, y), keyed_paths(&ctx, z, w)) {
            (Ok(p), Ok(q)) => (p, q),
            (Err(e), _) | (_, Err(e)) => {
                att.fail(e);
                continue;
            }
        };
        let f = Frame { ctx, a, b, rest: ctx.others(&[a, b]), p, q };
        attempt(&f, &mut att);
        if att.done() {
            break;
        }
    }
    att.finish("S22")
}

fn attempt(f: &Frame<'_>, att: &mut Attempts<'_>) {
    let ctx = &f.ctx;
    let (a, b) = (f.a, f.b);
    let entry = f.exit_p(b);
    let mut on_q = vec![false; ctx.g.order()];
    for path in f.q.values() {
        for &v in path {
            on_q[v as usize] = true;
        }
    }
    let view = ctx.g.cluster_view(ctx.cluster(b));
    let Some(walk) = view.shortest_path_to(&[entry], |v| on_q[v as usize]) else { return };
    let u = *walk.last().unwrap();
    let holders: Vec<u8> = {
        let inner: Vec<u8> = f.q.iter().filter(|(_, p)| p[1..p.len() - 1].contains(&u)).map(|(&k, _)| k).collect();
        if inner.is_empty() {
            // `u` is z or w: any Q will do; prefer the one that exits into A.
            let mut all: Vec<u8> = f.q.keys().copied().collect();
            all.sort_by_key(|&k| (k != a, k));
            all
        } else {
            inner
        }
    };
    let tag = |branch: &str| CaseTag::new(Lemma::S22, branch).at(ctx.m);

    for held in holders {
        let mut tb = TreePlan::new();
        f.with_p(&mut tb, b);
        tb.path(&walk).path(&f.q[&held]);
        let remaining: Vec<u8> = f.q.keys().copied().filter(|&k| k != held).collect();
        if !remaining.contains(&a) {
            let mut plans = BTreeMap::from([(b, tb.clone())]);
            match f.connect(&mut plans, &f.rest, &remaining, None) {
                Ok(()) => {
                    if att.offer_plans(ctx, tag("Case1"), &plans.into_values().collect::<Vec<_>>()) {
                        return;
                    }
                }
                Err(e) => att.fail(e),
            }
            continue;
        }

        let star = f.exit_q(a);
        let others: Vec<u8> = remaining.iter().copied().filter(|&k| k != a).collect();
        let on_p = |v: Vertex| -> Vec<u8> { f.p.iter().filter(|(_, p)| p.contains(&v)).map(|(&c, _)| c).collect() };
        // Attach Q_A to the P-tree `owner` through `hook` (`z(A)'` itself or
        // a neighbor of it on that P).
        let mut hooks: Vec<(Vertex, Option<Vertex>, u8)> = Vec::new();
        hooks.extend(on_p(star).into_iter().map(|c| (star, None, c)));
        if hooks.is_empty() {
            for nbr in ctx.inner_neighbors(star) {
                hooks.extend(on_p(nbr).into_iter().map(|c| (star, Some(nbr), c)));
            }
        }
        for (hook, via, owner) in hooks {
            let mut tq = TreePlan::new();
            f.with_q(&mut tq, a);
            if let Some(v) = via {
                tq.edge(hook, v);
            }
            let sub = match (via.is_some(), owner == b) {
                (false, true) => "Case2/Subcase2.1.1",
                (false, false) => "Case2/Subcase2.1.2",
                (true, _) => "Case2/Subcase2.2/hook",
            };
            let mut plans = BTreeMap::new();
            let result = if owner == b {
                let mut t = TreePlan::new();
                f.with_p(&mut t, b);
                plans.insert(b, merge(t, &tq));
                let mut qs = others.clone();
                qs.push(held);
                qs.sort_unstable();
                f.connect(&mut plans, &f.rest, &qs, None)
            } else {
                plans.insert(b, tb.clone());
                let mut t = TreePlan::new();
                f.with_p(&mut t, owner);
                plans.insert(owner, merge(t, &tq));
                let ps: Vec<u8> = f.rest.iter().copied().filter(|&c| c != owner).collect();
                f.connect(&mut plans, &ps, &others, None)
            };
            match result {
                Ok(()) => {
                    if att.offer_plans(ctx, tag(sub), &plans.into_values().collect::<Vec<_>>()) {
                        return;
                    }
                }
                Err(e) => att.fail(e),
            }
        }
        if !on_p(star).is_empty() {
            continue;
        }
        // No neighbor of z(A)' on a P: leave A through a neighbor u1 whose
        // out-neighbor lies in one of the other clusters.
        for u1 in ctx.inner_neighbors(star) {
            if !f.rest.contains(&ctx.cl(ctx.out(u1))) || !on_p(u1).is_empty() {
                continue;
            }
            let mut tail = TreePlan::new();
            f.with_q(&mut tail, a);
            tail.path(&[star, u1, ctx.out(u1)]);
            let mut plans = BTreeMap::from([(b, tb.clone())]);
            match f.connect(&mut plans, &f.rest, &others, Some((ctx.out(u1), &tail))) {
                Ok(()) => {
                    if att.offer_plans(ctx, tag("Case2/Subcase2.2"), &plans.into_values().collect::<Vec<_>>()) {
                        return;
                    }
                }
                Err(e) => att.fail(e),
            }
        }
    }
}
