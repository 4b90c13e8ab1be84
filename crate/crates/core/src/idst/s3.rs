//! Three terminals `x, y, z` in cluster `A`, the fourth `w` in cluster `B`.
//!
//! Trees are keyed by the cluster they mostly live in: one per cluster other
//! than `A`. The base tree for `c ∉ {A, B}` joins `x_c', y_c', z_c', w_c'`
//! inside `c` and hangs the four two-step connectors off it; the tree for
//! `B` joins `x_B', y_B', z_B', w` inside `B` minus `W = {w_c}`. Edges among
//! `x, y, z` force local repairs, split by how many there are and where the
//! out-neighbors land.

use std::collections::BTreeMap;

use super::anpart::{lemma_ans3, lemma_s4};
use super::assemble::{Ctx, TreePlan};
use super::{labelings, split, Attempts, CaseTag, Lemma, SteinerTreeSet};
use crate::cayley::GodanGraph;
use crate::error::{Error, Result};
use crate::graph::Vertex;

struct Frame<'g> {
    ctx: Ctx<'g>,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    w: Vertex,
    b: u8,
    rest: Vec<u8>,
}

impl Frame<'_> {
    fn w_set(&self) -> Vec<Vertex> {
        self.rest.iter().map(|&c| self.ctx.nb(self.w, c)).collect()
    }

    /// The terminal `w` stands for inside cluster `c`.
    fn w_in(&self, c: u8) -> Vertex {
        if c == self.b {
            self.w
        } else {
            self.ctx.nbo(self.w, c)
        }
    }

    /// `P[w, w_c']` when `c ≠ B`; nothing inside `B` itself.
    fn w_link(&self, t: &mut TreePlan, c: u8) {
        if c != self.b {
            t.path(&self.ctx.p2(self.w, c));
        }
    }

    /// Deletion set for a part in cluster `c`.
    fn deleted(&self, c: u8, extra: &[Vertex]) -> Vec<Vertex> {
        let mut v = extra.to_vec();
        if c == self.b {
            v.extend(self.w_set());
        }
        v
    }

    fn base(&self, c: u8) -> TreePlan {
        let ctx = &self.ctx;
        let mut t = TreePlan::new();
        let mut terms = Vec::new();
        for v in [self.x, self.y, self.z] {
            t.path(&ctx.p2(v, c));
            terms.push(ctx.nbo(v, c));
        }
        self.w_link(&mut t, c);
        terms.push(self.w_in(c));
        t.within(c, &terms, &self.deleted(c, &[]));
        t
    }

    fn plans(&self) -> BTreeMap<u8, TreePlan> {
        self.rest.iter().chain([&self.b]).map(|&c| (c, self.base(c))).collect()
    }

    /// `v - v'` or `P[v, v_c']`, whichever ends at `target`.
    fn route(&self, t: &mut TreePlan, v: Vertex, target: Vertex) {
        if self.ctx.out(v) == target {
            t.edge(v, target);
        } else {
            let c = self.ctx.cl(target);
            debug_assert_eq!(self.ctx.nbo(v, c), target);
            t.path(&self.ctx.p2(v, c));
        }
    }

    /// `v'` and `v_c'`, the two gateways from `v` into `c = cl(v')`, with the
    /// plain out-neighbor first.
    fn gateways(&self, v: Vertex) -> [(Vertex, Vertex); 2] {
        let o = self.ctx.out(v);
        let alt = self.ctx.nbo(v, self.ctx.cl(o));
        [(o, alt), (alt, o)]
    }
}

/// `n - 1` trees for a 3+1 split at position `m`.
pub fn lemma_s3(g: &GodanGraph, s: [Vertex; 4], m: usize) -> Result<SteinerTreeSet> {
    g.check_position(m)?;
    let groups = split(g, &s, m);
    if groups.iter().map(Vec::len).collect::<Vec<_>>() != [3, 1] {
        return Err(Error::InvalidArgument("expected three terminals in one cluster".into()));
    }
    let single = groups[1][0];
    let mut att = Attempts::new(g, s);
    for roles in labelings().filter(|r| r[3] == single) {
        let [x, y, z, w] = att.label(roles);
        let ctx = Ctx::new(g, m, s);
        let a = ctx.cl(x);
        let b = ctx.cl(w);
        let f = Frame { ctx, x, y, z, w, b, rest: ctx.others(&[a, b]) };
        let (xy, xz, yz) = (ctx.adjacent(x, y), ctx.adjacent(x, z), ctx.adjacent(y, z));
        match (xy as u8 + xz as u8 + yz as u8, xy, xz, yz) {
            (0, ..) if roles[0] < roles[1] && roles[1] < roles[2] => {
                let plans: Vec<TreePlan> = f.plans().into_values().collect();
                att.offer_plans(&ctx, CaseTag::new(Lemma::S3, "Case1").at(m), &plans);
            }
            (1, true, ..) if roles[0] < roles[1] => case2(&f, &mut att),
            (1, true, ..) => case2_gateways(&f, &mut att),
            (2, true, true, false) => case3(&f, &mut att),
            (3, ..) => {
                let set = if g.an_part_of(w) == g.an_part_of(x) { lemma_s4(g, s) } else { lemma_ans3(g, s) };
                return set.map(|mut set| {
                    set.case.branch = format!("from S3/Case4{}", if set.case.branch.is_empty() { "" } else { "/" })
                        + &set.case.branch;
                    set.case.m = Some(m as u8);
                    set
                });
            }
            _ => {}
        }
        if att.done() {
            break;
        }
    }
    att.finish("S3")
}

fn tag(f: &Frame<'_>, branch: &str) -> CaseTag {
    CaseTag::new(Lemma::S3, branch).at(f.ctx.m)
}

/// One edge `xy`. Same out-cluster: the base trees already work (the
/// shared cluster's tree gains a cycle that assembly removes).
fn case2(f: &Frame<'_>, att: &mut Attempts<'_>) {
    let ctx = &f.ctx;
    if ctx.cl(ctx.out(f.x)) == ctx.cl(ctx.out(f.y)) {
        let plans: Vec<TreePlan> = f.plans().into_values().collect();
        att.offer_plans(ctx, tag(f, "Case2/Subcase2.1"), &plans);
    } else {
        case2_gateways(f, att);
    }
}

/// `x' ∈ c1`, `y' ∈ c2`, `c1 ≠ c2`. The `c2` tree reaches `x` through a
/// gateway in `c1` and its neighbor `u` with `u' ∈ c2`; the `c1` tree takes
/// `xy` and avoids the gateway and `u`.
fn case2_gateways(f: &Frame<'_>, att: &mut Attempts<'_>) {
    let ctx = &f.ctx;
    let (x, y, z) = (f.x, f.y, f.z);
    let c1 = ctx.cl(ctx.out(x));
    let c2 = ctx.cl(ctx.out(y));
    if c1 == c2 {
        return;
    }
    let a = ctx.cl(x);
    // Both gateways, each first as drawn and then with `z` joined some other
    // way: `x_c1` may also be `z_c1`, and then the `c2` tree routing `x`
    // through it collides with `P[z, z_c1']`.
    for (k, (gate, other)) in f.gateways(x).into_iter().enumerate() {
        for z_join in [Join::Connector, Join::Inside, Join::Out] {
            let u = ctx.nb(gate, c2);
            let mut plans = f.plans();
            let mut t2 = TreePlan::new();
            f.route(&mut t2, x, gate);
            t2.path(&[gate, u, ctx.out(u)]).edge(y, ctx.out(y)).path(&ctx.p2(z, c2));
            f.w_link(&mut t2, c2);
            t2.within(c2, &[ctx.out(u), ctx.out(y), ctx.nbo(z, c2), f.w_in(c2)], &f.deleted(c2, &[]));
            let mut t1 = TreePlan::new();
            f.route(&mut t1, x, other);
            t1.edge(x, y);
            f.w_link(&mut t1, c1);
            match z_join {
                Join::Connector => {
                    t1.path(&ctx.p2(z, c1));
                    t1.within(c1, &[other, ctx.nbo(z, c1), f.w_in(c1)], &f.deleted(c1, &[gate, u]));
                }
                Join::Inside => {
                    t1.within(a, &[x, y, z], &[]);
                    t1.within(c1, &[other, f.w_in(c1)], &f.deleted(c1, &[gate, u]));
                }
                Join::Out => {
                    let zo = ctx.out(z);
                    let entry = if ctx.cl(zo) == c1 {
                        t1.edge(z, zo);
                        zo
                    } else {
                        let v = ctx.nb(zo, c1);
                        t1.path(&[z, zo, v, ctx.out(v)]);
                        ctx.out(v)
                    };
                    t1.within(c1, &[other, entry, f.w_in(c1)], &f.deleted(c1, &[gate, u]));
                }
            }
            plans.insert(c1, t1);
            plans.insert(c2, t2);
            let branch = match (k, z_join) {
                (0, Join::Connector) => "Case2/Subcase2.2",
                (0, Join::Inside) => "Case2/Subcase2.2/z-in-A",
                (0, Join::Out) => "Case2/Subcase2.2/z-out",
                (_, Join::Connector) => "Case2/Subcase2.2/alt",
                (_, Join::Inside) => "Case2/Subcase2.2/alt/z-in-A",
                (_, Join::Out) => "Case2/Subcase2.2/alt/z-out",
            };
            let plans: Vec<TreePlan> = plans.into_values().collect();
            if att.offer_plans(ctx, tag(f, branch), &plans) {
                return;
            }
        }
    }
}

/// How the tree keyed by `cl(x')` picks up `z` in Subcase 2.2.
#[derive(Clone, Copy)]
enum Join {
    /// `P[z, z_c1']`, as drawn.
    Connector,
    /// A path inside `A` to `x` or `y`.
    Inside,
    /// `z - z'`, then on to `c1` through the neighbor of `z'` toward it.
    Out,
}

/// Edges `xy` and `xz`, so `y' ∈ cy` and `z' ∈ cz` differ.
fn case3(f: &Frame<'_>, att: &mut Attempts<'_>) {
    let ctx = &f.ctx;
    let (x, y, z, b) = (f.x, f.y, f.z, f.b);
    let cx = ctx.cl(ctx.out(x));
    let cy = ctx.cl(ctx.out(y));
    let cz = ctx.cl(ctx.out(z));
    let (xo, yo, zo) = (ctx.out(x), ctx.out(y), ctx.out(z));
    if cz == b {
        let mut plans = f.plans();
        if cx == b {
            let mut ty = TreePlan::new();
            ty.path(&ctx.p2(z, cy)).edge(x, z).edge(y, yo);
            f.w_link(&mut ty, cy);
            ty.within(cy, &[yo, ctx.nbo(z, cy), f.w_in(cy)], &[]);
            let mut tb = TreePlan::new();
            tb.edge(x, y).edge(x, xo).edge(z, zo);
            tb.within(b, &[xo, zo, f.w], &f.deleted(b, &[]));
            plans.insert(cy, ty);
            plans.insert(b, tb);
            att.offer_plans(ctx, tag(f, "Case3/Subcase3.1.1"), &plans.into_values().collect::<Vec<_>>());
        } else if cx == cy {
            let mut ty = TreePlan::new();
            ty.edge(x, xo).edge(x, z).edge(y, yo);
            f.w_link(&mut ty, cy);
            ty.within(cy, &[xo, yo, f.w_in(cy)], &[]);
            let mut tb = TreePlan::new();
            tb.path(&ctx.p2(y, b)).edge(x, y).edge(z, zo);
            tb.within(b, &[ctx.nbo(y, b), zo, f.w], &f.deleted(b, &[]));
            plans.insert(cy, ty);
            plans.insert(b, tb);
            att.offer_plans(ctx, tag(f, "Case3/Subcase3.1.2"), &plans.into_values().collect::<Vec<_>>());
        } else {
            let c3 = cx;
            let v = ctx.nb(yo, c3);
            for (k, (gate, other)) in f.gateways(x).into_iter().enumerate() {
                let u = ctx.nb(gate, b);
                let mut plans = f.plans();
                let mut t3 = TreePlan::new();
                f.route(&mut t3, x, other);
                t3.edge(x, z).path(&[y, yo, v, ctx.out(v)]);
                f.w_link(&mut t3, c3);
                t3.within(c3, &[other, ctx.out(v), f.w_in(c3)], &[gate, u]);
                let mut ty = TreePlan::new();
                ty.path(&ctx.p2(y, cy)).path(&ctx.p2(z, cy)).edge(x, y);
                f.w_link(&mut ty, cy);
                ty.within(cy, &[ctx.nbo(y, cy), ctx.nbo(z, cy), f.w_in(cy)], &[yo, v]);
                let mut tb = TreePlan::new();
                tb.path(&ctx.p2(y, b));
                f.route(&mut tb, x, gate);
                tb.path(&[gate, u, ctx.out(u)]).edge(z, zo);
                tb.within(b, &[ctx.nbo(y, b), zo, f.w, ctx.out(u)], &f.deleted(b, &[]));
                plans.insert(c3, t3);
                plans.insert(cy, ty);
                plans.insert(b, tb);
                let branch = if k == 0 { "Case3/Subcase3.1.3" } else { "Case3/Subcase3.1.3/alt" };
                if att.offer_plans(ctx, tag(f, branch), &plans.into_values().collect::<Vec<_>>()) {
                    return;
                }
            }
        }
    } else if cy != b {
        if cx == cy {
            let mut plans = f.plans();
            let mut tz = TreePlan::new();
            tz.path(&ctx.p2(y, cz)).edge(x, y).edge(z, zo);
            f.w_link(&mut tz, cz);
            tz.within(cz, &[ctx.nbo(y, cz), zo, f.w_in(cz)], &[]);
            let mut ty = TreePlan::new();
            ty.edge(x, xo).edge(x, z).edge(y, yo);
            f.w_link(&mut ty, cy);
            ty.within(cy, &[xo, yo, f.w_in(cy)], &[]);
            plans.insert(cz, tz);
            plans.insert(cy, ty);
            att.offer_plans(ctx, tag(f, "Case3/Subcase3.2.1"), &plans.into_values().collect::<Vec<_>>());
        } else if cx != cz {
            for (ky, (gy, oy)) in f.gateways(y).into_iter().enumerate() {
                for (kz, (gz, oz)) in f.gateways(z).into_iter().enumerate() {
                    let u = ctx.nb(gy, cx);
                    let v = ctx.nb(gz, cx);
                    let mut plans = f.plans();
                    let mut tz = TreePlan::new();
                    tz.path(&ctx.p2(y, cz)).edge(x, z);
                    f.route(&mut tz, z, oz);
                    f.w_link(&mut tz, cz);
                    tz.within(cz, &[ctx.nbo(y, cz), oz, f.w_in(cz)], &f.deleted(cz, &[gz, v]));
                    let mut ty = TreePlan::new();
                    ty.path(&ctx.p2(z, cy)).edge(x, y);
                    f.route(&mut ty, y, oy);
                    f.w_link(&mut ty, cy);
                    ty.within(cy, &[oy, ctx.nbo(z, cy), f.w_in(cy)], &f.deleted(cy, &[gy, u]));
                    let mut tx = TreePlan::new();
                    tx.edge(x, xo);
                    f.route(&mut tx, y, gy);
                    f.route(&mut tx, z, gz);
                    tx.path(&[gy, u, ctx.out(u)]).path(&[gz, v, ctx.out(v)]);
                    f.w_link(&mut tx, cx);
                    tx.within(cx, &[xo, ctx.out(u), ctx.out(v), f.w_in(cx)], &f.deleted(cx, &[]));
                    plans.insert(cz, tz);
                    plans.insert(cy, ty);
                    plans.insert(cx, tx);
                    let branch = match (ky, kz) {
                        (0, 0) => "Case3/Subcase3.2.2",
                        _ => "Case3/Subcase3.2.2/alt",
                    };
                    if att.offer_plans(ctx, tag(f, branch), &plans.into_values().collect::<Vec<_>>()) {
                        return;
                    }
                }
            }
        }
    }
}
