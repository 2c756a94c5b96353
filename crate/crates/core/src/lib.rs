//! Partitioning highly connected tournaments.
//!
//! This crate turns a family of constructive combinatorial arguments about
//! tournaments into executable, self-verifying algorithms:
//!
//! - robust partition of a tournament into `t` vertex classes that stay
//!   strongly k-connected under any augmentation by leftover vertices
//!   ([`partitioner::partition_robust`]), and
//! - partition of a tournament into `t` vertex-disjoint cycles of prescribed
//!   lengths ([`cycles::cycle_factor`]),
//!
//! together with the supporting machinery: greedy transitive dominating sets
//! with exponentially small exceptional sets, exact vertex-disjoint path
//! packing, backwards-transitive path reduction and robust reach sets,
//! constructive Hamilton cycles, and two-cycle splitting.
//!
//! Every construction emits a certificate that an independent audit module
//! ([`verify`]) checks against brute-force oracles. Constructions that do not
//! fit a given instance fail with a named stage and witness instead of
//! returning unverified output.

pub mod cli;
pub mod connectivity;
pub mod cycles;
pub mod domination;
pub mod partitioner;
pub mod paths;
pub mod safety;
pub mod io;
pub mod linkage;
pub mod tournament;
pub mod verify;
pub mod vset;

pub use tournament::{DirPath, Tournament};
pub use vset::VertexSet;
