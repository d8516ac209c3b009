//! Genus-zero moduli data `K(n)`, sewing on the Möbius-compatible subclass, the partial-operad
//! axioms, and the evaluation maps `ν_n` for standard coordinates.

mod element;
mod series;
mod sewing;
mod axioms;
mod nu;

use thiserror::Error;

pub use element::{parse_elements, LocalCoordinate, ModuliElement};
pub use series::{compose, coordinate_series, flow_coefficients, flow_series, PowerSeries};
pub use nu::{check_sewing_axiom, dual_pairing, nu_evaluate, nu_vector, NuValue};
pub use sewing::{sew, SewingResult};
pub use axioms::{
    associativity_instance, associativity_regime, block_permutation, check_associativity,
    check_equivariance, check_identity_axiom, check_operad_axioms, check_scaling_composition,
    compose_perm, inserted_permutation, invert_perm, random_element, random_perm, sampling_rng,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("unsupported sewing: {0}")]
    UnsupportedSewing(String),
    #[error("sewing undefined: {0}")]
    SewingUndefined(String),
    #[error("outside the expansion domain: {0}")]
    DomainViolation(String),
}
