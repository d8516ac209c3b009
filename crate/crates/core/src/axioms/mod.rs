//! Coefficientwise checks of the vertex-algebra identities.
//!
//! Every check compares two independently assembled sides and only counts a
//! coefficient when all intermediate vectors provably stay within the
//! truncation level; anything else is tallied as skipped.

pub mod conjugation;
pub mod identities;
pub mod jacobi;
pub mod s3;

pub use conjugation::check_conjugation;
pub use identities::{check_commutators, check_creation, check_skew_symmetry};
pub use jacobi::{check_jacobi, check_module_jacobi, run_jacobi, JacobiSides};
pub use s3::{s3_transform_check, Perm};

use std::collections::BTreeSet;

use crate::report::VerificationReport;
use crate::voa::{GradedVector, Partition};

/// Records one vector-valued comparison at `exponent` (counted once).
pub fn compare_vectors(report: &mut VerificationReport, exponent: &[i64], lhs: &GradedVector, rhs: &GradedVector) {
    report.checked += 1;
    if lhs == rhs {
        return;
    }
    let labels: BTreeSet<&Partition> = lhs.terms().chain(rhs.terms()).map(|(p, _)| p).collect();
    for p in labels {
        report.compare(exponent, p, lhs.coeff(p), rhs.coeff(p));
    }
}

/// Weight of a homogeneous vector, or `None` (zero or mixed weight).
pub fn weight_of(v: &GradedVector) -> Option<usize> {
    v.homogeneous_weight()
}

pub fn window_label(bounds: &[(i64, i64)]) -> String {
    bounds
        .iter()
        .map(|(lo, hi)| format!("[{lo},{hi}]"))
        .collect::<Vec<_>>()
        .join("x")
}
