use super::{
    omega, partitions, partitions_up_to, vacuum, FockSpace, GradedVector, Partition,
    VectorSeries, VertexModule,
};
use crate::rational::{q, Q};

/// The Heisenberg vertex operator algebra truncated at weight `level`.
#[derive(Debug, Clone)]
pub struct VOAInstance {
    level: usize,
    space: FockSpace,
    vacuum: GradedVector,
    omega: GradedVector,
    central_charge: Q,
}

pub fn build_heisenberg(level: usize) -> VOAInstance {
    VOAInstance {
        level,
        space: FockSpace::new(q(0), level),
        vacuum: vacuum(),
        omega: omega(),
        central_charge: q(1),
    }
}

/// The Fock module of momentum `lambda`, truncated at level `level`.
pub fn build_fock_module(level: usize, lambda: Q) -> FockSpace {
    FockSpace::new(lambda, level)
}

impl VOAInstance {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn vacuum(&self) -> &GradedVector {
        &self.vacuum
    }

    pub fn omega(&self) -> &GradedVector {
        &self.omega
    }

    pub fn central_charge(&self) -> &Q {
        &self.central_charge
    }

    pub fn basis(&self, weight: usize) -> Vec<Partition> {
        partitions(weight)
    }

    pub fn basis_up_to(&self, weight: usize) -> Vec<Partition> {
        partitions_up_to(weight.min(self.level))
    }

    /// Weight-space dimensions for weights `0..=level`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.level).map(|n| partitions(n).len()).collect()
    }

    /// `u_n v` truncated to the modelled space, with an overflow flag.
    pub fn apply_mode_flagged(&self, u: &GradedVector, n: i64, v: &GradedVector) -> (GradedVector, bool) {
        self.space.act(u, n, v).truncate(self.level)
    }

    pub fn apply_mode(&self, u: &GradedVector, n: i64, v: &GradedVector) -> GradedVector {
        self.apply_mode_flagged(u, n, v).0
    }

    /// Coefficients of `x^e` in `Y(u, x)v` for `e` in `[lo, hi]`.
    pub fn vertex_operator(&self, u: &GradedVector, v: &GradedVector, lo: i64, hi: i64) -> VectorSeries {
        (lo..=hi)
            .map(|e| (e, self.apply_mode(u, -e - 1, v)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn virasoro_mode(&self, n: i64, v: &GradedVector) -> GradedVector {
        self.apply_mode(&self.omega, n + 1, v)
    }

    pub fn alpha(&self, m: i64, v: &GradedVector) -> GradedVector {
        self.space.alpha(m, v).truncate(self.level).0
    }
}

impl VertexModule for VOAInstance {
    fn cap(&self) -> usize {
        self.level
    }

    fn describe(&self) -> String {
        format!("V(L={})", self.level)
    }

    fn act_basis(&self, u: &Partition, n: i64, w: &Partition) -> GradedVector {
        self.space.act_basis(u, n, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;
    use crate::voa::monomial;

    #[test]
    fn heisenberg_basics() {
        let v = build_heisenberg(4);
        assert_eq!(v.dims(), vec![1, 1, 2, 3, 5]);
        let a = monomial(&[1]);
        assert_eq!(v.alpha(1, &a), vacuum());
        assert_eq!(v.virasoro_mode(2, v.omega()), vacuum().scale(&q_frac(1, 2)));
        assert!(v.apply_mode(&a, 0, &a).is_zero());
        assert!(v.virasoro_mode(-1, &vacuum()).is_zero());
        let u = monomial(&[2, 1]);
        assert_eq!(v.virasoro_mode(0, &u), u.scale(&q(3)));
    }

    #[test]
    fn vacuum_modes() {
        let v = build_heisenberg(4);
        let w = monomial(&[2, 1]);
        assert_eq!(v.apply_mode(&vacuum(), -1, &w), w);
        for n in [-3, -2, 0, 1, 2] {
            assert!(v.apply_mode(&vacuum(), n, &w).is_zero());
        }
    }

    #[test]
    fn overflow_is_flagged() {
        let v = build_heisenberg(2);
        let a = monomial(&[1]);
        let (out, overflow) = v.apply_mode_flagged(&a, -3, &a);
        assert!(out.is_zero());
        assert!(overflow);
    }

    #[test]
    fn fock_module_lowest_weight() {
        let m = build_fock_module(3, q(2));
        let top = vacuum();
        assert_eq!(m.virasoro(0, &top), top.scale(&q(2)));
        assert_eq!(m.lowest_weight(), q(2));
        assert_eq!(m.alpha(0, &top), top.scale(&q(2)));
    }
}
