//! Exact-arithmetic workbench for finite cycle sets.
//!
//! A cycle set is a finite set `X` with a binary operation `x * y` whose left
//! translations are bijections satisfying `(x*y)*(x*z) = (y*x)*(y*z)`. Every
//! such set encodes an involutive non-degenerate set-theoretic solution of the
//! Yang–Baxter equation. This crate constructs the associated objects —
//! the permutation group, the structure group in brace coordinates, the finite
//! Coxeter-like quotients and their monomial matrix representations — and
//! decides irreducibility of those representations both by theorem and by
//! exact character-norm computation over cyclotomic fields.
//!
//! All arithmetic is exact: big-rational coefficients modulo cyclotomic
//! polynomials, no floating point. Hot loops (character norms, induced
//! character sums, the root-of-unity identity) have data-parallel variants
//! behind the `parallel` feature (enabled by default), prefixed `par_`.

pub mod cycleset;
pub mod cyclo;
pub mod monomial;
pub mod numutil;
pub mod perm;
pub mod report;
pub mod selftest;
pub mod structure;

pub use cycleset::CycleSet;
pub use cyclo::Cyclo;
pub use monomial::{Character, Decision, IdentityCheck, MonoMatrix, Source};
pub use perm::Perm;
pub use report::AnalysisReport;
pub use structure::{CoxElem, GroupElem, PermGroup};

use serde::{Deserialize, Serialize};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("row {0} of the table is not a bijection")]
    RowNotBijective(usize),
    #[error("cycle-set law fails at x={0}, y={1}, z={2}")]
    LawViolation(usize, usize, usize),
    #[error("the square map x -> x*x is not bijective")]
    DegenerateSquareMap,
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("size {n} exceeds the enumeration bound {bound}")]
    SizeBoundExceeded { n: usize, bound: usize },
    #[error("group enumeration exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("negative coordinate at index {0}")]
    NegativeCoordinate(usize),
    #[error("trace of a generic (unspecialized) monomial matrix is not supported")]
    GenericTraceUnsupported,
    #[error("cycle set is decomposable")]
    NotIndecomposable,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Resource caps. These are configuration, not constants: every operation
/// that enumerates a search space or a group takes them explicitly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` accepted by [`cycleset::enumerate`]. Default 4; raising it
    /// to 5 is supported but slow.
    pub enumerate_bound: usize,
    /// Cap on the number of elements materialized or streamed when closing a
    /// permutation group or walking a Coxeter-like group.
    pub group_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumerate_bound: 4,
            group_cap: 1_000_000,
        }
    }
}
