//! Exact machinery for linear rank inequalities.
//!
//! The crate revolves around a handful of exact-rational structures:
//!
//! - [`expr::EntropyExpr`]: linear combinations of joint-entropy
//!   coordinates indexed by variable subsets in binary order;
//! - [`expr::LinearInequality`]: canonicalized statements `expr >= 0`;
//! - [`shannon::ProofCertificate`]: nonnegative multipliers over the
//!   elemental Shannon inequalities (plus free multipliers over equality
//!   hypotheses) that reconstitute a target inequality exactly;
//! - [`rank::RankVector`]: candidate polymatroid points;
//! - [`polymatroid::SubspaceRepresentation`]: integer matrices whose row
//!   spaces realize a rank vector.
//!
//! On top of these sit a certificate-producing prover over the Shannon
//! cone with optional common-information hypotheses ([`shannon`]),
//! constructive inequality generators and a built-in catalog
//! ([`generators`]), rank/representability tools ([`polymatroid`]), and a
//! combinatorial search for subspace representations ([`search`]). All
//! arithmetic is exact; no floating point is used anywhere.

pub mod expr;
pub mod generators;
pub mod io;
pub mod polymatroid;
pub mod rank;
pub mod search;
pub mod shannon;
pub mod vars;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer used by the matrix machinery.
pub type Int = num_bigint::BigInt;

pub use expr::{
    expand_info_term, linear_identical, permute_inequality, substitute, EntropyExpr, InfoTerm,
    LinearInequality,
};
pub use rank::{evaluate, orbit_canonical, permute_vector, RankVector};
pub use vars::{Permutation, VarSet, VarUniverse};

/// Convenience constructor for integer rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
