//! `x, y` in cluster `A`, `z` alone in cluster `Zc`, `w` alone in `Wc`.
//!
//! `n - 1` internally disjoint `(x, y)`-paths `P_c` inside `A` are keyed by
//! the out-cluster of their first inner vertex. For every other cluster `c`
//! the tree through `P_c` joins `x_c', z_c', w_c'` inside `c`; the trees for
//! `Zc` and `Wc` pick up `z` and `w` directly. The delicate configuration is
//! the cross edge `w_Zc = z_Wc'`, resolved by where `z'` lies.

use std::collections::BTreeMap;

use super::assemble::{Ctx, TreePlan};
use super::{labelings, split, Attempts, CaseTag, Lemma, SteinerTreeSet};
use crate::cayley::GodanGraph;
use crate::connectivity::internally_disjoint_paths;
use crate::error::{Error, Result};
use crate::graph::Vertex;

struct Frame<'g> {
    ctx: Ctx<'g>,
    x: Vertex,
    z: Vertex,
    w: Vertex,
    zc: u8,
    wc: u8,
    rest: Vec<u8>,
    p: BTreeMap<u8, Vec<Vertex>>,
}

impl Frame<'_> {
    fn with_p(&self, t: &mut TreePlan, c: u8) {
        let p = &self.p[&c];
        t.path(p).edge(p[1], self.ctx.out(p[1]));
    }

    fn exit(&self, c: u8) -> Vertex {
        self.ctx.out(self.p[&c][1])
    }

    fn base(&self, c: u8) -> TreePlan {
        let ctx = &self.ctx;
        let mut t = TreePlan::new();
        self.with_p(&mut t, c);
        t.path(&ctx.p2(self.z, c)).path(&ctx.p2(self.w, c));
        t.within(c, &[self.exit(c), ctx.nbo(self.z, c), ctx.nbo(self.w, c)], &[]);
        t
    }

    fn plans(&self) -> BTreeMap<u8, TreePlan> {
        self.rest.iter().map(|&c| (c, self.base(c))).collect()
    }

    fn z_rest(&self) -> Vec<Vertex> {
        self.rest.iter().map(|&c| self.ctx.nb(self.z, c)).collect()
    }

    /// `Z`: the neighbors of `z` used by other trees' connectors.
    fn z_set(&self) -> Vec<Vertex> {
        let mut v = self.z_rest();
        v.push(self.ctx.nb(self.z, self.wc));
        v
    }

    fn w_set(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.rest.iter().map(|&c| self.ctx.nb(self.w, c)).collect();
        v.push(self.ctx.nb(self.w, self.zc));
        v
    }

    /// The `Zc` tree through `P[w, w_Zc']`, avoiding `deleted`.
    fn zc_tree(&self, deleted: &[Vertex]) -> TreePlan {
        let ctx = &self.ctx;
        let mut t = TreePlan::new();
        self.with_p(&mut t, self.zc);
        t.path(&ctx.p2(self.w, self.zc));
        t.within(self.zc, &[self.exit(self.zc), self.z, ctx.nbo(self.w, self.zc)], deleted);
        t
    }

    /// The `Wc` tree reaching `z` along `route` (which ends at `entry ∈ Wc`).
    fn wc_tree(&self, route: &[Vertex], entry: Vertex) -> TreePlan {
        let mut t = TreePlan::new();
        self.with_p(&mut t, self.wc);
        t.path(route);
        t.within(self.wc, &[self.exit(self.wc), entry, self.w], &self.w_set());
        t
    }

    fn tag(&self, branch: &str) -> CaseTag {
        CaseTag::new(Lemma::S211, branch).at(self.ctx.m)
    }
}

/// `n - 1` trees for a 2+1+1 split at position `m`.
pub fn lemma_s211(g: &GodanGraph, s: [Vertex; 4], m: usize) -> Result<SteinerTreeSet> {
    g.check_position(m)?;
    let groups = split(g, &s, m);
    if groups.iter().map(Vec::len).collect::<Vec<_>>() != [2, 1, 1] {
        return Err(Error::InvalidArgument("expected a 2+1+1 split".into()));
    }
    let pair = groups[0].clone();
    let mut att = Attempts::new(g, s);
    for roles in labelings().filter(|r| pair.contains(&r[0]) && pair.contains(&r[1])) {
        let [x, y, z, w] = att.label(roles);
        let ctx = Ctx::new(g, m, s);
        let a = ctx.cl(x);
        let view = g.cluster_view(ctx.cluster(a));
        let family = match internally_disjoint_paths(&view, x, y, ctx.n() - 1) {
            Ok(f) => f,
            Err(e) => {
                att.fail(e);
                continue;
            }
        };
        let mut p = BTreeMap::new();
        for mut path in family.paths {
            if path[0] != x {
                path.reverse();
            }
            p.insert(ctx.cl(ctx.out(path[1])), path);
        }
        let (zc, wc) = (ctx.cl(z), ctx.cl(w));
        let f = Frame { ctx, x, z, w, zc, wc, rest: ctx.others(&[a, zc, wc]), p };
        attempt(&f, a, &mut att);
        if att.done() {
            break;
        }
    }
    att.finish("S211")
}

fn attempt(f: &Frame<'_>, a: u8, att: &mut Attempts<'_>) {
    let ctx = &f.ctx;
    let (z, w, zc, wc) = (f.z, f.w, f.zc, f.wc);
    let offer = |att: &mut Attempts<'_>, plans: BTreeMap<u8, TreePlan>, branch: &str| {
        att.offer_plans(ctx, f.tag(branch), &plans.into_values().collect::<Vec<_>>())
    };
    let z_wc = ctx.nb(z, wc);
    let w_zc = ctx.nb(w, zc);
    if w_zc != ctx.out(z_wc) {
        let mut plans = f.plans();
        plans.insert(zc, f.zc_tree(&f.z_set()));
        let zp = ctx.p2(z, wc);
        plans.insert(wc, f.wc_tree(&zp, zp[2]));
        offer(att, plans, "Case1");
        return;
    }

    let zo = ctx.out(z);
    let cz = ctx.cl(zo);
    if f.rest.contains(&cz) {
        // z' in a third cluster c: the Wc tree leaves c through a gateway
        // (z' or z_c') and its neighbor toward Wc; the c tree takes the other.
        let c = cz;
        let zc_gate = ctx.nbo(z, c);
        for (k, (gate, other)) in [(zo, zc_gate), (zc_gate, zo)].into_iter().enumerate() {
            let u = ctx.nb(gate, wc);
            let mut plans = f.plans();
            plans.insert(zc, f.zc_tree(&f.z_rest()));
            let mut route = if gate == zo { vec![z, zo] } else { ctx.p2(z, c).to_vec() };
            route.extend([u, ctx.out(u)]);
            plans.insert(wc, f.wc_tree(&route, ctx.out(u)));
            let mut tc = TreePlan::new();
            f.with_p(&mut tc, c);
            if other == zo {
                tc.edge(z, zo);
            } else {
                tc.path(&ctx.p2(z, c));
            }
            tc.path(&ctx.p2(w, c));
            tc.within(c, &[f.exit(c), other, ctx.nbo(w, c)], &[gate, u]);
            plans.insert(c, tc);
            let branch = if k == 0 { "Case2/Subcase2.1" } else { "Case2/Subcase2.1/alt" };
            if offer(att, plans, branch) {
                return;
            }
        }
    } else if cz == wc {
        let mut plans = f.plans();
        // z_Wc is unused here, and it is w_Zc' (a terminal of the Zc tree),
        // so only the neighbors of z toward the other clusters are deleted.
        plans.insert(zc, f.zc_tree(&f.z_rest()));
        plans.insert(wc, f.wc_tree(&[z, zo], zo));
        offer(att, plans, "Case2/Subcase2.2");
    } else if cz == a {
        case23(f, att);
    }
}

/// `z' ∈ A`. Then `z_A = z∘(12)` and its neighbor `v` toward `Wc` gives `z`
/// a second way out of `Zc`.
fn case23(f: &Frame<'_>, att: &mut Attempts<'_>) {
    let ctx = &f.ctx;
    let (x, z, w, zc, wc) = (f.x, f.z, f.w, f.zc, f.wc);
    let zo = ctx.out(z);
    let a = ctx.cl(x);
    let za = ctx.nb(z, a);
    let v = ctx.nb(za, wc);
    let w_zc_out = ctx.nbo(w, zc);
    let offer = |att: &mut Attempts<'_>, plans: BTreeMap<u8, TreePlan>, branch: &str| {
        att.offer_plans(ctx, f.tag(branch), &plans.into_values().collect::<Vec<_>>())
    };
    let on_p = |u: Vertex| -> Vec<u8> { f.p.iter().filter(|(_, p)| p.contains(&u)).map(|(&c, _)| c).collect() };

    let mut hooks: Vec<(Option<Vertex>, u8)> = on_p(zo).into_iter().map(|k| (None, k)).collect();
    let direct = !hooks.is_empty();
    if !direct {
        for u1 in ctx.inner_neighbors(zo) {
            hooks.extend(on_p(u1).into_iter().map(|k| (Some(u1), k)));
        }
    }
    for (via, k) in hooks {
        // The tree through P_k picks up z by z - z' (- u1) and w by
        // P[w, w_Zc'] closed with the edge z - w_Zc'.
        let mut tk = TreePlan::new();
        tk.path(&f.p[&k]).edge(z, zo).path(&ctx.p2(w, zc)).edge(z, w_zc_out);
        if let Some(u1) = via {
            tk.edge(zo, u1);
        }
        let escape = [z, za, v, ctx.out(v)];
        let mut plans = f.plans();
        let sub = if k == zc {
            plans.insert(wc, f.wc_tree(&escape, ctx.out(v)));
            "Subcase2.3.1.1"
        } else if k == wc {
            let mut t = TreePlan::new();
            f.with_p(&mut t, zc);
            t.edge(v, ctx.out(v));
            t.within(zc, &[f.exit(zc), z, za, v], &f.z_set());
            t.part(super::assemble::Region::Clusters(vec![wc]), &[w, ctx.out(v)], &f.w_set());
            plans.insert(zc, t);
            "Subcase2.3.1.2"
        } else {
            let c = k;
            let zc_c = ctx.nb(z, c);
            let mut deleted: Vec<Vertex> = f.rest.iter().filter(|&&r| r != c).map(|&r| ctx.nb(z, r)).collect();
            deleted.extend([ctx.nb(z, wc), za, v]);
            let mut t = TreePlan::new();
            f.with_p(&mut t, zc);
            t.within(zc, &[f.exit(zc), zc_c, z], &deleted);
            t.edge(zc_c, ctx.out(zc_c)).path(&ctx.p2(w, c));
            t.within(c, &[ctx.out(zc_c), ctx.nbo(w, c)], &[]);
            plans.insert(zc, t);
            plans.insert(wc, f.wc_tree(&escape, ctx.out(v)));
            "Subcase2.3.1.3"
        };
        plans.insert(k, tk);
        let branch = if direct { format!("Case2/{sub}") } else { format!("Case2/Subcase2.3.2/{sub}") };
        if offer(att, plans, &branch) {
            return;
        }
    }
    // No neighbor of z' lies on a P: leave A toward Wc.
    let u = ctx.nb(zo, wc);
    if on_p(zo).is_empty() && on_p(u).is_empty() {
        let mut plans = f.plans();
        plans.insert(zc, f.zc_tree(&f.z_rest()));
        plans.insert(wc, f.wc_tree(&[z, zo, u, ctx.out(u)], ctx.out(u)));
        offer(att, plans, "Case2/Subcase2.3.2");
    }
}
