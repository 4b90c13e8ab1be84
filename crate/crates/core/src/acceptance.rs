//! The ten acceptance criteria as runnable checks with structured verdicts.
//!
//! Each criterion recomputes its evidence from scratch: exact oracles,
//! builder sweeps, the structural suite and the property checks. A verdict
//! passes only when the evidence holds and the run stayed inside its time
//! limit.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::{AltNetwork, GodanGraph};
use crate::connectivity::vertex_connectivity;
use crate::error::Result;
use crate::graph::{ordered, Graph, Vertex, View};
use crate::idst::{build_idsts, godan_graph};
use crate::oracle::{k_subsets, kappa_k_exact, kappa_s_exact, sample_subsets, whitney_kappa, OracleOptions, Policy};
use crate::perm::Permutation;
use crate::sweep::{run_sweep, Subsets, SweepOptions};
use crate::verify::{structural_suite, structural_suite_on, verify_idst, SuiteScale, VerificationReport};

/// Sample sizes and seeds for the sampled criteria.
pub const N5_SAMPLES: usize = 10_000;
pub const N5_SEED: u64 = 7;
pub const N6_SAMPLES: usize = 10_000;
pub const N6_SEED: u64 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub detail: String,
    pub millis: u64,
    pub limit_secs: u64,
}

impl Verdict {
    /// `[PASS] 3 title (12 ms): detail`.
    pub fn line(&self) -> String {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        format!("[{mark}] {:>2} {} ({} ms): {}", self.id, self.title, self.millis, self.detail)
    }
}

pub const TITLES: [&str; 10] = [
    "kappa_4(EA_3) = 2 and the builder covers EA_3",
    "builder total coverage at n = 4",
    "upper bound realized at n = 4",
    "builder on sampled 4-sets of EA_5",
    "builder on sampled 4-sets of EA_6 with the Claim 2 branch",
    "structural suite for n = 3, 4, 5",
    "kappa_4(AN_4) = 2",
    "kappa_3(EA_3) = 2 and kappa_3(EA_4) = 3",
    "whitney_kappa equals vertex_connectivity",
    "property suite",
];

const LIMITS_SECS: [u64; 10] = [5, 300, 600, 900, 1800, 600, 60, 600, 600, 600];

/// Runs criterion `id` (1 to 10).
pub fn run_criterion(id: u8) -> Verdict {
    let idx = usize::from(id.clamp(1, 10)) - 1;
    let start = Instant::now();
    let outcome = match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(),
        10 => criterion10(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(LIMITS_SECS[idx]);
    let (ok, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > limit {
        detail.push_str(&format!("; over the {} s limit", limit.as_secs()));
    }
    Verdict {
        id,
        title: TITLES[idx].to_string(),
        pass: ok && elapsed <= limit,
        detail,
        millis: elapsed.as_millis() as u64,
        limit_secs: limit.as_secs(),
    }
}

pub fn run_all() -> Vec<Verdict> {
    (1..=10).map(run_criterion).collect()
}

type Outcome = Result<(bool, String)>;

fn criterion1() -> Outcome {
    let g = godan_graph(3)?;
    let k = kappa_k_exact(g, 4, Policy::Exhaustive, OracleOptions::default())?;
    let sweep = run_sweep(3, Subsets::Exhaustive, &SweepOptions::default())?;
    let built = sweep.rows.iter().filter(|r| r.verified && r.trees == 2).count();
    Ok((
        k.value == 2 && k.exact && k.subsets == 15 && built == 15,
        format!("oracle min {} over {} sets (exact {}); builder gave 2 verified trees for {built}/15", k.value, k.subsets, k.exact),
    ))
}

fn criterion2() -> Outcome {
    let r = run_sweep(4, Subsets::Exhaustive, &SweepOptions::default())?;
    let ok = r.rows.len() == 10_626 && r.failures() == 0 && r.min_trees() == Some(3) && r.max_trees() == Some(3);
    Ok((ok, format!("{} sets, {} failures, {} case branches", r.rows.len(), r.failures(), r.histogram().len())))
}

/// The first 4-set of `EA_4` (in lexicographic order) whose packing number
/// is proven to be 3.
pub fn upper_bound_witness() -> Result<Option<(Vec<Vertex>, u64)>> {
    let g = godan_graph(4)?;
    let opts = OracleOptions { warm_start: Some(3), ..OracleOptions::default() };
    for s in k_subsets(g.order(), 4) {
        let r = kappa_s_exact(g, &s, opts)?;
        if r.exact && r.max_t == 3 {
            return Ok(Some((s, r.explored)));
        }
    }
    Ok(None)
}

fn criterion3() -> Outcome {
    let g = godan_graph(4)?;
    let bound = crate::oracle::upper_bound_min_degree_rule(g, 4);
    Ok(match upper_bound_witness()? {
        Some((s, nodes)) => {
            let labels: Vec<String> = s.iter().map(|&v| g.label(v)).collect();
            (bound == Some(3), format!("S = {{{}}} has exactly 3 ({nodes} search nodes); delta - 1 = {bound:?}", labels.join(",")))
        }
        None => (false, "every 4-set admits 4 trees".into()),
    })
}

fn sampled(n: usize, count: usize, seed: u64) -> Result<crate::sweep::SweepReport> {
    run_sweep(n, Subsets::Sample { count, seed }, &SweepOptions::default())
}

fn criterion4() -> Outcome {
    let r = sampled(5, N5_SAMPLES, N5_SEED)?;
    let ok = r.rows.len() == N5_SAMPLES && r.failures() == 0 && r.min_trees() == Some(4) && r.max_trees() == Some(4);
    Ok((ok, format!("{} sets (seed {N5_SEED}), {} failures", r.rows.len(), r.failures())))
}

fn criterion5() -> Outcome {
    let r = sampled(6, N6_SAMPLES, N6_SEED)?;
    let claim2 = r.rows.iter().filter(|row| row.case.as_ref().is_some_and(|c| c.path().contains("Claim2"))).count();
    let ok = r.rows.len() >= 1000 && r.failures() == 0 && r.min_trees() == Some(5) && r.max_trees() == Some(5) && claim2 > 0;
    Ok((ok, format!("{} sets (seed {N6_SEED}), {} failures, Claim 2 branch on {claim2} sets", r.rows.len(), r.failures())))
}

fn criterion6() -> Outcome {
    let mut failed = Vec::new();
    let mut checks = 0;
    for n in 3..=5 {
        let rep = structural_suite(n)?;
        checks += rep.checks.len();
        if !rep.overall {
            failed.push(format!("n = {n}: {}", rep.summary()));
        }
    }
    Ok((failed.is_empty(), if failed.is_empty() { format!("{checks} checks passed") } else { failed.join("; ") }))
}

fn criterion7() -> Outcome {
    let an = AltNetwork::new(4)?;
    let k = kappa_k_exact(&an, 4, Policy::Exhaustive, OracleOptions::default())?;
    Ok((k.value == 2 && k.exact, format!("min {} over {} sets", k.value, k.subsets)))
}

fn criterion8() -> Outcome {
    let a = kappa_k_exact(godan_graph(3)?, 3, Policy::Exhaustive, OracleOptions::default())?;
    let b = kappa_k_exact(godan_graph(4)?, 3, Policy::Exhaustive, OracleOptions::default())?;
    Ok((
        a.value == 2 && b.value == 3 && a.exact && b.exact,
        format!("kappa_3(EA_3) = {} over {} sets; kappa_3(EA_4) = {} over {} sets", a.value, a.subsets, b.value, b.subsets),
    ))
}

fn criterion9() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let mut compare = |name: String, g: &dyn Graph| -> Result<()> {
        let w = whitney_kappa(g);
        let f = vertex_connectivity(&View::full(g))?;
        ok &= w == f;
        parts.push(format!("{name}: {w}/{f}"));
        Ok(())
    };
    for n in [3, 4] {
        compare(format!("EA_{n}"), godan_graph(n)?)?;
    }
    for n in [3, 4, 5] {
        compare(format!("AN_{n}"), &AltNetwork::new(n)?)?;
    }
    Ok((ok, parts.join(", ")))
}

fn criterion10() -> Outcome {
    let report = property_suite()?;
    let detail = if report.overall {
        format!("{} properties hold", report.checks.len())
    } else {
        report.summary().replace('\n', "; ")
    };
    Ok((report.overall, detail))
}

/// The cross-module properties: verifier negative controls, determinism,
/// translation soundness, oracle/builder agreement, monotonicity and
/// adjacency preservation under translation.
pub fn property_suite() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("property suite");
    for (name, pass, detail) in negative_controls()? {
        rep.push(format!("negative control: {name}"), pass, detail);
    }

    let opts = SweepOptions::default();
    let sub = Subsets::Sample { count: 500, seed: 11 };
    let first = run_sweep(5, sub.clone(), &opts)?.to_csv()?;
    let second = run_sweep(5, sub, &SweepOptions { jobs: Some(1), ..opts })?.to_csv()?;
    rep.push("sweep reruns are byte-identical", first == second, format!("{} bytes", first.len()));

    let (bad, total) = translation_soundness(5, 200, 3)?;
    rep.push("translation soundness", bad == 0, format!("{bad} of {total} translated builds invalid"));

    let (bad, total) = oracle_agreement()?;
    rep.push("oracle/builder agreement", bad.is_empty(), format!("{} of {total} disagree {}", bad.len(), bad.join(" ")));

    let (bad, total) = monotonicity_ea3()?;
    rep.push("monotonicity on EA_3", bad == 0, format!("{bad} of {total} extensions increase the value"));

    let g = godan_graph(4)?;
    let mut broken = 0;
    for sigma in (0..24).map(|r| Permutation::unrank(4, r)) {
        let sigma = sigma?;
        broken += g.edges().iter().filter(|&&(a, b)| !g.has_edge(g.left_translate(&sigma, a), g.left_translate(&sigma, b))).count();
    }
    rep.push("left translation preserves adjacency on EA_4", broken == 0, format!("{broken} edges broken"));
    Ok(rep)
}

/// Seeded corruptions of a valid tree set and of `EA_4`, each paired with
/// whether the matching check caught it.
pub fn negative_controls() -> Result<Vec<(&'static str, bool, String)>> {
    let g = godan_graph(4)?;
    let s: Vec<Vertex> = ["1234", "2341", "3412", "4123"].iter().map(|l| g.parse_vertex(l)).collect::<Result<_>>()?;
    let set = build_idsts(g, &s)?;
    let caught = |trees: &[Vec<(Vertex, Vertex)>], check: &str| {
        let r = verify_idst(g, trees, &s);
        let hit = !r.overall && r.failures().any(|c| c.name.ends_with(check));
        (hit, r.summary().replace('\n', "; "))
    };
    let mut out = Vec::new();

    let mut t = set.trees.clone();
    let (a, _) = t[0][0];
    let non_nb = (0..g.order() as Vertex).find(|&v| v != a && !g.has_edge(a, v)).expect("EA_4 is not complete");
    t[0][0] = ordered(a, non_nb);
    let (hit, d) = caught(&t, "edges exist");
    out.push(("edge absent", hit, d));

    let mut t = set.trees.clone();
    let leaf = (0..t[0].len())
        .find(|&i| {
            let (a, b) = t[0][i];
            let deg = |v: Vertex| t[0].iter().filter(|&&(x, y)| x == v || y == v).count();
            (s.contains(&a) && deg(a) == 1) || (s.contains(&b) && deg(b) == 1)
        })
        .expect("a tree has a terminal leaf");
    t[0].remove(leaf);
    let (hit, d) = caught(&t, "S covered");
    out.push(("terminal dropped", hit, d));

    let mut t = set.trees.clone();
    t[1] = t[0].clone();
    let (hit, d) = caught(&t, "edge intersection is empty");
    out.push(("duplicate tree", hit, d));

    let mut t = set.trees.clone();
    let inner0: Vec<Vertex> = t[0].iter().flat_map(|&(a, b)| [a, b]).filter(|v| !s.contains(v)).collect();
    let in1: Vec<Vertex> = t[1].iter().flat_map(|&(a, b)| [a, b]).collect();
    let link = in1.iter().find_map(|&a| inner0.iter().find(|&&u| g.has_edge(a, u)).map(|&u| ordered(a, u)));
    match link {
        Some(e) => {
            t[1].push(e);
            let (hit, d) = caught(&t, "vertex intersection is S");
            out.push(("internal vertex shared", hit, d));
        }
        None => out.push(("internal vertex shared", false, "no linking edge found".into())),
    }

    let (a, b) = g.edges()[0];
    let mutated = GodanGraph::with_edge_removed(g, a, b);
    let r = structural_suite_on(&mutated, SuiteScale::default());
    let hit = r.failures().any(|c| c.name == "regularity");
    out.push(("edge removed from EA_4", hit, format!("{} checks failed", r.failures().count())));
    Ok(out)
}

/// Builds on `σ∘S` for random `σ`, maps the trees back by `σ⁻¹` and checks
/// them against `S`. Returns `(invalid, total)`.
pub fn translation_soundness(n: usize, count: usize, seed: u64) -> Result<(usize, usize)> {
    let g = godan_graph(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for s in sample_subsets(g.order(), 4, count, seed) {
        let sigma = Permutation::unrank(n, rng.gen_range(0..g.order() as u64))?;
        let moved: Vec<Vertex> = s.iter().map(|&v| g.left_translate(&sigma, v)).collect();
        let back = build_idsts(g, &moved)?.left_translate(g, &sigma.inverse());
        let mut got = back.terminals.to_vec();
        got.sort_unstable();
        if got != s || !back.is_valid_in(g) {
            bad += 1;
        }
    }
    Ok((bad, count))
}

/// Every 4-set of `EA_3` and 500 sampled 4-sets of `EA_4`: the oracle finds
/// at least `n - 1` trees and the builder returns exactly `n - 1`; the
/// minimum over `EA_3` is exactly 2. Returns the disagreeing sets.
pub fn oracle_agreement() -> Result<(Vec<String>, usize)> {
    let mut bad = Vec::new();
    let mut total = 0;
    for (n, sets) in [(3, k_subsets(6, 4)), (4, sample_subsets(24, 4, 500, 5))] {
        let g = godan_graph(n)?;
        let opts = OracleOptions { warm_start: Some(n - 1), ..OracleOptions::default() };
        let mut min = usize::MAX;
        for s in sets {
            total += 1;
            let oracle = kappa_s_exact(g, &s, opts)?;
            let built = build_idsts(g, &s).map(|t| t.trees.len()).unwrap_or(0);
            min = min.min(oracle.max_t);
            if oracle.max_t < n - 1 || built != n - 1 {
                bad.push(format!("n={n} {:?}: oracle {} builder {built}", s, oracle.max_t));
            }
        }
        if n == 3 && min != 2 {
            bad.push(format!("EA_3 minimum is {min}"));
        }
    }
    Ok((bad, total))
}

/// For every 3-set `S` of `EA_3` and every extra vertex `v`, the packing
/// number of `S ∪ {v}` is at most that of `S`. Returns `(violations, pairs)`.
pub fn monotonicity_ea3() -> Result<(usize, usize)> {
    let g = godan_graph(3)?;
    let opts = OracleOptions::default();
    let mut bad = 0;
    let mut total = 0;
    for s in k_subsets(6, 3) {
        let base = kappa_s_exact(g, &s, opts)?.max_t;
        for v in (0..6).filter(|v| !s.contains(v)) {
            let mut bigger = s.clone();
            bigger.push(v);
            total += 1;
            if kappa_s_exact(g, &bigger, opts)?.max_t > base {
                bad += 1;
            }
        }
    }
    Ok((bad, total))
}
