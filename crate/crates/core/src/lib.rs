//! Exact computation of the finite index set `B` of the GIT stratification
//! for tensor and exterior-power representations of products of `GL_n`:
//! every chamber-canonical closest point to the origin of the convex hull of
//! a subset of weights, together with the coordinate sets `Z` and `W`.
//!
//! The pipeline is [`weyl::weyl_list`] → [`sieve::sieve`] per simplex size
//! `R` → [`solver::solve_candidates`] → [`stratify::dedup_and_classify`];
//! [`pipeline::compute`] runs all of it.

pub mod case;
pub mod combinadic;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod output;
pub mod pipeline;
pub mod sieve;
pub mod solver;
pub mod stratify;
pub mod weyl;

pub use case::{builtin_case, parse_case_config, CaseDescriptor, Slot, SlotKind};
pub use combinadic::{Combination, RankTables};
pub use error::{Error, Result};
pub use linalg::{RatMatrix, RatVector, Rational};
pub use pipeline::{compute, ComputeOptions, RankRange, RunReport};
pub use stratify::{DedupStrategy, StrataSet, StratumRecord};
