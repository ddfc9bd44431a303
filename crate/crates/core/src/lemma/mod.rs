//! Verification of the closed-form inequalities behind the girth bounds.
//!
//! - [`newineq`]: the three quadratic lower bounds and a numeric minimiser
//!   that checks them independently.
//! - [`applied`]: the summation inequality and its on-graph version with
//!   edge sets `R` and `S`, plus the big in-degree audit.
//! - [`threshold`]: the large-`k` threshold polynomial.
//! - [`facts`]: grid scans of the one-variable numeric facts.
//! - [`delta`]: the table of out-degree constants.
//!
//! Scans are exact at grid points. They are evidence at the stated
//! resolution, not proofs.

pub mod applied;
pub mod delta;
pub mod facts;
pub mod newineq;
pub mod threshold;

use serde::Serialize;
use thiserror::Error;

use crate::Scalar;

pub use applied::{
    appliedineq_check, appliedineq_stress, audit_bigindeg, bellsandwhistles_check,
    measured_bells_params, AppliedParams, AppliedStress, BigindegAudit,
};
pub use delta::{delta_table, DeltaEntry, DeltaSource, KCondition};
pub use facts::{
    catalog, f1_root_bracket, fact_scan, scan, Axis, Claim, Expr, FactPart, FactReport, GridPoint,
    NumericFact, Rel,
};
pub use newineq::{
    check_newineq, f_value, newineq_bound, newineq_min_oracle, newineq_stress, Case,
    FeasibleTriple, NewineqInstance, NewineqStress,
};
pub use threshold::{bigk_simplify_check, threshold_k, BigkCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("triple is not feasible: {0}")]
    InfeasibleTriple(String),
    #[error("case ({0}) does not apply to this instance")]
    CaseNotApplicable(Case),
    #[error("hypothesis {bullet} violated: {detail}")]
    HypothesisViolated { bullet: u8, detail: String },
    #[error("bad edge sets: {0}")]
    BadEdgeSets(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown fact `{0}`")]
    UnknownFact(String),
}

/// Outcome of checking an inequality whose hypotheses held.
///
/// `slack` is positive when the conclusion holds with room to spare.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub conclusion_held: bool,
    pub slack: T,
}

/// `num / den`, or zero when `den` is zero: a zero denominator comes with a
/// zero numerator and the quotient is taken to be zero.
pub(crate) fn zdiv<T: Scalar>(num: T, den: T) -> T {
    if den.is_zero() {
        T::zero()
    } else {
        num / den
    }
}

/// Comparison slack used by the checks: zero for exact types, `1e-9`
/// otherwise.
pub(crate) fn check_tolerance<T: Scalar>() -> T {
    if T::EXACT {
        T::zero()
    } else {
        T::from_f64(1e-9).expect("tolerance is representable")
    }
}
