//! Batch runs of the builder over many terminal sets.
//!
//! Subsets are evaluated in parallel and collected in input order, so a
//! report depends only on `(n, subsets, options)`. Wall-clock times are kept
//! out of the CSV unless asked for, which keeps reruns byte-identical.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::idst::{build_idsts_with, check_terminals, godan_graph, BuildOptions, CaseTag};
use crate::oracle::{k_subsets, sample_subsets};

/// Largest `n` whose 4-subsets may be enumerated.
pub const EXHAUSTIVE_MAX_N: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsets {
    Exhaustive,
    Sample { count: usize, seed: u64 },
    Explicit(Vec<[Vertex; 4]>),
}

impl Subsets {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Subsets::Sample { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// The terminal sets, each ascending; errors on exhaustive runs above
    /// [`EXHAUSTIVE_MAX_N`].
    pub fn expand(&self, n: usize) -> Result<Vec<[Vertex; 4]>> {
        let g = godan_graph(n)?;
        let arr = |v: Vec<Vertex>| -> [Vertex; 4] { v.try_into().expect("4-subsets") };
        match self {
            Subsets::Exhaustive if n > EXHAUSTIVE_MAX_N => Err(Error::InvalidArgument(format!(
                "exhaustive sweeps need n <= {EXHAUSTIVE_MAX_N}; use a sample"
            ))),
            Subsets::Exhaustive => Ok(k_subsets(g.order(), 4).into_iter().map(arr).collect()),
            Subsets::Sample { count, seed } => Ok(sample_subsets(g.order(), 4, *count, *seed).into_iter().map(arr).collect()),
            Subsets::Explicit(sets) => sets.iter().map(|s| check_terminals(g, s)).collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub build: BuildOptions,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Record per-subset milliseconds (makes output time-dependent).
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub terminals: [Vertex; 4],
    pub trees: usize,
    pub case: Option<CaseTag>,
    pub verified: bool,
    pub millis: Option<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub subsets: Subsets,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.verified).count()
    }

    pub fn min_trees(&self) -> Option<usize> {
        self.rows.iter().map(|r| r.trees).min()
    }

    pub fn max_trees(&self) -> Option<usize> {
        self.rows.iter().map(|r| r.trees).max()
    }

    /// Rows per case path; failed rows count under `FAILED`.
    pub fn histogram(&self) -> BTreeMap<String, usize> {
        let mut h = BTreeMap::new();
        for r in &self.rows {
            let key = r.case.as_ref().map_or_else(|| "FAILED".to_string(), CaseTag::path);
            *h.entry(key).or_insert(0) += 1;
        }
        h
    }

    /// Whether some row went through a branch whose path contains `needle`.
    pub fn exercised(&self, needle: &str) -> bool {
        self.rows.iter().any(|r| r.case.as_ref().is_some_and(|c| c.path().contains(needle)))
    }

    /// Columns `n, S, trees, case_tag, verify, millis`.
    pub fn to_csv(&self) -> Result<String> {
        let g = godan_graph(self.n)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.into());
        w.write_record(["n", "S", "trees", "case_tag", "verify", "millis"]).map_err(io)?;
        for r in &self.rows {
            let s = r.terminals.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(";");
            let case = match (&r.case, &r.error) {
                (Some(c), _) => c.to_string(),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => String::new(),
            };
            let millis = r.millis.map(|m| m.to_string()).unwrap_or_default();
            let verify = if r.verified { "pass" } else { "fail" };
            w.write_record([self.n.to_string(), s, r.trees.to_string(), case, verify.into(), millis]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    /// A short JSON summary: counts, extremes, seed and the case histogram.
    pub fn summary_json(&self) -> Result<String> {
        let v = serde_json::json!({
            "n": self.n,
            "subsets": self.rows.len(),
            "seed": self.subsets.seed(),
            "exhaustive": matches!(self.subsets, Subsets::Exhaustive),
            "min_trees": self.min_trees(),
            "max_trees": self.max_trees(),
            "failures": self.failures(),
            "cases": self.histogram(),
        });
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }
}

fn run_one(n: usize, s: [Vertex; 4], opts: &SweepOptions) -> SweepRow {
    let g = godan_graph(n).expect("dimension checked by the caller");
    let start = Instant::now();
    let built = build_idsts_with(g, &s, &opts.build);
    let millis = opts.timing.then(|| start.elapsed().as_millis() as u64);
    match built {
        Ok(set) => SweepRow { terminals: s, trees: set.trees.len(), case: Some(set.case), verified: true, millis, error: None },
        Err(e) => SweepRow { terminals: s, trees: 0, case: None, verified: false, millis, error: Some(e.to_string()) },
    }
}

/// Builds and verifies a packing for every subset.
pub fn run_sweep(n: usize, subsets: Subsets, opts: &SweepOptions) -> Result<SweepReport> {
    let sets = subsets.expand(n)?;
    let work = || sets.par_iter().map(|&s| run_one(n, s, opts)).collect::<Vec<_>>();
    let rows = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    Ok(SweepReport { n, subsets, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ea3_sweep_is_total() {
        let r = run_sweep(3, Subsets::Exhaustive, &SweepOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 15);
        assert_eq!((r.min_trees(), r.max_trees(), r.failures()), (Some(2), Some(2), 0));
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 16);
        assert!(csv.starts_with("n,S,trees,case_tag,verify,millis\n"));
    }

    #[test]
    fn exhaustive_limited() {
        assert!(run_sweep(5, Subsets::Exhaustive, &SweepOptions::default()).is_err());
    }

    #[test]
    fn explicit_sets_are_checked() {
        assert!(Subsets::Explicit(vec![[0, 0, 1, 2]]).expand(4).is_err());
    }
}
