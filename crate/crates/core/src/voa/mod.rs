//! The truncated rank-one Heisenberg vertex operator algebra and its Fock modules.

pub mod fock;
pub mod instance;
pub mod partition;
pub mod vector;

pub use fock::FockSpace;
pub use instance::{build_fock_module, build_heisenberg, VOAInstance};
pub use partition::{partitions, partitions_up_to, Partition};
pub use vector::{GradedVector, VectorSeries};

use num::Zero;

use crate::rational::{q_frac, Q};

/// A module for the Heisenberg algebra whose basis is labelled by partitions,
/// graded by partition weight (the level above the lowest weight space).
pub trait VertexModule: Send + Sync {
    /// Truncation level: weights above it are outside the modelled space.
    fn cap(&self) -> usize;

    fn describe(&self) -> String;

    /// `u_n w` for an algebra basis label `u` and a module basis label `w`.
    fn act_basis(&self, u: &Partition, n: i64, w: &Partition) -> GradedVector;

    /// Conformal weight of the level-0 space.
    fn lowest_weight(&self) -> Q {
        Q::zero()
    }

    fn basis(&self, level: usize) -> Vec<Partition> {
        partitions(level)
    }

    fn act(&self, u: &GradedVector, n: i64, w: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (pu, cu) in u.terms() {
            for (pw, cw) in w.terms() {
                out.add_scaled(&self.act_basis(pu, n, pw), &(cu * cw));
            }
        }
        out
    }

    /// `L(n) = ω_{n+1}` on the module.
    fn virasoro(&self, n: i64, w: &GradedVector) -> GradedVector {
        self.act(&omega(), n + 1, w)
    }
}

pub fn vacuum() -> GradedVector {
    GradedVector::basis(Partition::empty())
}

/// `α(-n_1)…α(-n_k)1`.
pub fn monomial(parts: &[u32]) -> GradedVector {
    GradedVector::basis(Partition::new(parts.to_vec()))
}

/// Conformal vector `(1/2) α(-1)² 1`.
pub fn omega() -> GradedVector {
    GradedVector::term(Partition::new(vec![1, 1]), q_frac(1, 2))
}
