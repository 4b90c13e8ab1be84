//! Constructive packings of `n - 1` internally edge-disjoint Steiner trees for
//! any four vertices of `EA_n`.
//!
//! [`build_idsts`] splits `S` over the clusters of some position `m` and
//! hands it to the matching construction: all four in one cluster recurse
//! into `EA_{n-1}`, and the splits 3+1, 2+2, 2+1+1 and 1+1+1+1 each have
//! their own module. Every construction labels the terminals `x, y, z, w`;
//! labelings are tried in lexicographic order and the first one whose
//! preconditions hold and whose assembled trees verify is returned.

mod anpart;
mod assemble;
mod base;
mod s1111;
mod s211;
mod s22;
mod s3;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cayley::GodanGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, MAX_DIMENSION};
use crate::packing::{find_packing, SearchOutcome};
use crate::perm::Permutation;
use crate::verify::verify_idst;
use crate::Edge;

pub use anpart::{an_idst_pack, lemma_ans3, lemma_s4};
pub use base::{base_ea3, recurse_case};
pub use s1111::{lemma_s1111, CLAIM2_Y, CLAIM3_Y};
pub use s211::lemma_s211;
pub use s22::lemma_s22;
pub use s3::lemma_s3;

/// Which construction produced a tree set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lemma {
    /// `n = 3`, by exact search.
    Base,
    /// `S` inside one cluster.
    Recurse,
    /// `S` inside one AN part.
    S4,
    /// Three terminals in one AN part, the fourth across.
    Ans3,
    S3,
    S22,
    S211,
    S1111,
    /// Generic exact packing after the constructions failed.
    Fallback,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::Base => "Base",
            Lemma::Recurse => "Recurse",
            Lemma::S4 => "S4",
            Lemma::Ans3 => "ANS3",
            Lemma::S3 => "S3",
            Lemma::S22 => "S22",
            Lemma::S211 => "S211",
            Lemma::S1111 => "S1111",
            Lemma::Fallback => "Fallback",
        }
    }
}

/// The proof branch behind a tree set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseTag {
    pub lemma: Lemma,
    /// Case path inside the lemma, e.g. `Case3/Subcase3.1.2`; empty when the
    /// lemma has no cases.
    pub branch: String,
    /// Cluster position used for the split, when there is one.
    pub m: Option<u8>,
    /// `roles[k]` is the index into `S` (as given) of the terminal labelled
    /// `x`, `y`, `z`, `w` for `k = 0..4`.
    pub roles: [u8; 4],
    /// The instance was left-translated before the construction ran.
    pub translated: bool,
    /// Set only on fallback results: the named branch failed verification.
    pub suspect: Option<String>,
}

impl CaseTag {
    pub(crate) fn new(lemma: Lemma, branch: impl Into<String>) -> Self {
        CaseTag { lemma, branch: branch.into(), m: None, roles: [0, 1, 2, 3], translated: false, suspect: None }
    }

    pub(crate) fn at(mut self, m: usize) -> Self {
        self.m = Some(m as u8);
        self
    }

    pub(crate) fn roles(mut self, roles: [u8; 4]) -> Self {
        self.roles = roles;
        self
    }

    /// `lemma/branch`, the key used for coverage counts.
    pub fn path(&self) -> String {
        if self.branch.is_empty() {
            self.lemma.name().to_string()
        } else {
            format!("{}/{}", self.lemma.name(), self.branch)
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.path())?;
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        let r = self.roles;
        write!(f, " roles={}{}{}{}", r[0], r[1], r[2], r[3])?;
        if self.translated {
            f.write_str(" translated")?;
        }
        if let Some(s) = &self.suspect {
            write!(f, " suspect={s}")?;
        }
        Ok(())
    }
}

/// `n - 1` trees for a 4-set, each as sorted edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTreeSet {
    pub n: usize,
    pub terminals: [Vertex; 4],
    pub trees: Vec<Vec<Edge>>,
    pub case: CaseTag,
}

impl SteinerTreeSet {
    pub(crate) fn new(g: &GodanGraph, terminals: [Vertex; 4], mut trees: Vec<Vec<Edge>>, case: CaseTag) -> Self {
        for t in &mut trees {
            t.sort_unstable();
        }
        SteinerTreeSet { n: g.n(), terminals, trees, case }
    }

    /// Images under `v ↦ σ∘v`, which is an automorphism of `EA_n`.
    pub fn left_translate(&self, g: &GodanGraph, sigma: &Permutation) -> SteinerTreeSet {
        let map = |v: Vertex| g.left_translate(sigma, v);
        let trees = self
            .trees
            .iter()
            .map(|t| t.iter().map(|&(a, b)| crate::graph::ordered(map(a), map(b))).collect())
            .collect();
        let terminals = self.terminals.map(map);
        SteinerTreeSet::new(g, terminals, trees, self.case.clone())
    }

    pub fn is_valid_in(&self, g: &GodanGraph) -> bool {
        self.trees.len() + 1 == g.n() && verify_idst(g, &self.trees, &self.terminals).overall
    }
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Rerun by exact packing when every construction fails.
    pub fallback_search: bool,
    /// First cluster position to split at; defaults to `n`.
    pub m: Option<usize>,
}

impl BuildOptions {
    pub fn with_fallback(mut self, on: bool) -> Self {
        self.fallback_search = on;
        self
    }

    pub fn with_position(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }
}

/// `EA_n` built once per process; the recursive case needs `EA_{n-1}`.
pub fn godan_graph(n: usize) -> Result<&'static GodanGraph> {
    static CACHE: [OnceLock<GodanGraph>; MAX_DIMENSION + 1] = [const { OnceLock::new() }; MAX_DIMENSION + 1];
    if !(3..=MAX_DIMENSION).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(CACHE[n].get_or_init(|| GodanGraph::new(n).expect("dimension checked")))
}

pub fn build_idsts(g: &GodanGraph, s: &[Vertex]) -> Result<SteinerTreeSet> {
    build_idsts_with(g, s, &BuildOptions::default())
}

pub fn build_idsts_with(g: &GodanGraph, s: &[Vertex], opts: &BuildOptions) -> Result<SteinerTreeSet> {
    let s = check_terminals(g, s)?;
    if let Some(m) = opts.m {
        g.check_position(m)?;
    }
    let built = if g.n() == 3 { base_ea3(g, s) } else { dispatch(g, s, opts) };
    let set = match built {
        Ok(set) => set,
        Err(e) if opts.fallback_search => fallback(g, s, e.to_string())?,
        Err(e) => return Err(e),
    };
    let report = verify_idst(g, &set.trees, &s);
    if set.trees.len() + 1 != g.n() || !report.overall {
        return Err(Error::Construction(format!("{} produced an invalid set: {}", set.case, report.summary())));
    }
    Ok(set)
}

pub(crate) fn check_terminals(g: &GodanGraph, s: &[Vertex]) -> Result<[Vertex; 4]> {
    let arr: [Vertex; 4] =
        s.try_into().map_err(|_| Error::InvalidArgument(format!("expected 4 terminals, got {}", s.len())))?;
    for (i, &v) in arr.iter().enumerate() {
        if v as usize >= g.order() {
            return Err(Error::InvalidArgument(format!("vertex id {v} out of range")));
        }
        if arr[..i].contains(&v) {
            return Err(Error::InvalidArgument(format!("terminal {} repeated", g.label(v))));
        }
    }
    Ok(arr)
}

/// Sizes of `S` per position-`m` cluster, largest first, with the indices
/// into `S` of each group.
pub(crate) fn split(g: &GodanGraph, s: &[Vertex; 4], m: usize) -> Vec<Vec<u8>> {
    let mut groups: Vec<(u8, Vec<u8>)> = Vec::new();
    for (i, &v) in s.iter().enumerate() {
        let c = g.symbol_at(v, m);
        match groups.iter_mut().find(|(sym, _)| *sym == c) {
            Some((_, idx)) => idx.push(i as u8),
            None => groups.push((c, vec![i as u8])),
        }
    }
    let mut out: Vec<Vec<u8>> = groups.into_iter().map(|(_, idx)| idx).collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

fn positions(g: &GodanGraph, opts: &BuildOptions) -> Vec<usize> {
    let n = g.n();
    let first = opts.m.unwrap_or(n);
    std::iter::once(first).chain((4..=n).rev().filter(|&m| m != first)).collect()
}

fn dispatch(g: &GodanGraph, s: [Vertex; 4], opts: &BuildOptions) -> Result<SteinerTreeSet> {
    let mut last = None;
    for m in positions(g, opts) {
        let shape: Vec<usize> = split(g, &s, m).iter().map(Vec::len).collect();
        let attempt = match shape.as_slice() {
            [4] => recurse_case(g, s, m, opts),
            [3, 1] => lemma_s3(g, s, m),
            [2, 2] => lemma_s22(g, s, m),
            [2, 1, 1] => lemma_s211(g, s, m),
            _ => continue,
        };
        match attempt {
            Ok(set) => return Ok(set),
            Err(e) => last = Some(e),
        }
    }
    match last {
        None => lemma_s1111(g, s),
        Some(e) => by_parts(g, s).map_err(|_| e),
    }
}

/// The part lemmas apply whatever the cluster split, whenever the parity
/// split is 4+0 or 3+1 and their own preconditions hold.
fn by_parts(g: &GodanGraph, s: [Vertex; 4]) -> Result<SteinerTreeSet> {
    match s.iter().filter(|&&v| g.is_even(v)).count() {
        0 | 4 => lemma_s4(g, s),
        1 | 3 => lemma_ans3(g, s),
        _ => Err(Error::InvalidArgument("terminals split 2+2 over the parts".into())),
    }
}

/// Default node budget for searches standing in for a drawn or cited packing.
pub(crate) const SEARCH_BUDGET: u64 = 50_000_000;

fn fallback(g: &GodanGraph, s: [Vertex; 4], reason: String) -> Result<SteinerTreeSet> {
    let view = crate::graph::View::full(g);
    match find_packing(&view, &s, g.n() - 1, SEARCH_BUDGET).outcome {
        SearchOutcome::Found(trees) => {
            let mut case = CaseTag::new(Lemma::Fallback, "");
            case.suspect = Some(reason);
            Ok(SteinerTreeSet::new(g, s, trees, case))
        }
        SearchOutcome::Infeasible => Err(Error::Construction("no packing exists".into())),
        SearchOutcome::Exhausted => Err(Error::BudgetExhausted(SEARCH_BUDGET)),
    }
}

/// All 24 labelings of `S` as `(x, y, z, w)`, lexicographic in the indices.
/// With `S` given in ascending vertex order this is lexicographic by rank.
pub(crate) fn labelings() -> impl Iterator<Item = [u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                if a != b && a != c && b != c {
                    out.push([a, b, c, 6 - a - b - c]);
                }
            }
        }
    }
    out.into_iter()
}

pub(crate) fn relabel(s: &[Vertex; 4], roles: [u8; 4]) -> [Vertex; 4] {
    roles.map(|i| s[i as usize])
}

/// Collects candidate constructions for one instance and keeps the first
/// that verifies. Failures are remembered so a total miss names a reason.
pub(crate) struct Attempts<'g> {
    g: &'g GodanGraph,
    s: [Vertex; 4],
    roles: [u8; 4],
    found: Option<SteinerTreeSet>,
    last: Option<Error>,
}

impl<'g> Attempts<'g> {
    pub fn new(g: &'g GodanGraph, s: [Vertex; 4]) -> Self {
        Attempts { g, s, roles: [0, 1, 2, 3], found: None, last: None }
    }

    /// Terminals in the order `x, y, z, w` for the given labeling.
    pub fn label(&mut self, roles: [u8; 4]) -> [Vertex; 4] {
        self.roles = roles;
        relabel(&self.s, roles)
    }

    pub fn done(&self) -> bool {
        self.found.is_some()
    }

    pub fn offer_plans(&mut self, ctx: &assemble::Ctx<'_>, case: CaseTag, plans: &[assemble::TreePlan]) -> bool {
        if self.done() {
            return true;
        }
        match assemble::assemble(ctx, plans) {
            Ok(trees) => self.offer(trees, case),
            Err(e) => {
                self.last = Some(Error::Construction(format!("{}: {e}", case.path())));
                false
            }
        }
    }

    pub fn offer(&mut self, trees: Vec<Vec<Edge>>, case: CaseTag) -> bool {
        if self.done() {
            return true;
        }
        if trees.len() + 1 == self.g.n() && verify_idst(self.g, &trees, &self.s).overall {
            let case = case.roles(self.roles);
            self.found = Some(SteinerTreeSet::new(self.g, self.s, trees, case));
            true
        } else {
            self.last = Some(Error::Construction(format!("{} did not verify", case.path())));
            false
        }
    }

    pub fn fail(&mut self, e: Error) {
        self.last = Some(e);
    }

    pub fn finish(self, what: &str) -> Result<SteinerTreeSet> {
        match self.found {
            Some(set) => Ok(set),
            None => Err(self
                .last
                .unwrap_or_else(|| Error::Construction(format!("no labeling meets the {what} preconditions")))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelings_are_the_24_permutations() {
        let all: Vec<[u8; 4]> = labelings().collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], [0, 1, 2, 3]);
        assert_eq!(all[23], [3, 2, 1, 0]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn split_sorts_groups_by_size() {
        let g = GodanGraph::new(4).unwrap();
        let s = ["1234", "2134", "3124", "1243"].map(|l| g.parse_vertex(l).unwrap());
        assert_eq!(split(&g, &s, 4), vec![vec![0, 1, 2], vec![3]]);
    }
}
