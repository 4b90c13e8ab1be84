//! Godan graphs `EA_n`, alternating group networks `AN_n`, and constructive
//! packings of `n - 1` internally edge-disjoint Steiner trees for any four
//! vertices of `EA_n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations in one-line notation and the generator sets.
//! * [`graph`], [`cayley`]: the graphs, clusters and vertex-masked views.
//! * [`connectivity`]: Menger-type path families, cuts, Steiner trees.
//! * [`packing`]: exact branch-and-bound search for tree packings.
//! * [`idst`]: the case-by-case constructive builder.
//! * [`verify`], [`oracle`]: independent certification and exact ground truth.
//! * [`sweep`], [`export`], [`acceptance`]: batch runs, file formats, the
//!   acceptance suite shared by the CLI and the test target.

pub mod acceptance;
pub mod cayley;
pub mod connectivity;
pub mod error;
pub mod export;
pub mod graph;
pub mod idst;
pub mod oracle;
pub mod packing;
pub mod perm;
pub mod sweep;
pub mod verify;

pub use cayley::{AltNetwork, AnPart, ClusterIsomorphism, ClusterRef, GodanGraph};
pub use error::{Error, Result};
pub use graph::{AdjacencyGraph, Graph, Vertex, View};

pub use perm::{Generator, Parity, Permutation};
pub use idst::{build_idsts, build_idsts_with, BuildOptions, CaseTag, Lemma, SteinerTreeSet};
pub use verify::{verify_idst, verify_stree, VerificationReport};

/// An undirected edge stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);
