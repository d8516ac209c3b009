//! Contragredient modules, invariant bilinear forms, and the `V ⊕ W` vertex map.

pub mod direct_sum;
pub mod form;
pub mod module;

pub use direct_sum::{combine_direct_sum, DirectSum, SumVector};
pub use form::{build_invariant_form, BilinearForm};
pub use module::{conjugate_vector, pair, ContragredientModule};

use thiserror::Error;

use crate::axioms::{check_module_jacobi, compare_vectors};
use crate::formal::Window;
use crate::rational::q;
use crate::report::VerificationReport;
use crate::voa::{partitions_up_to, GradedVector, VOAInstance, VertexModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContragredientError {
    #[error("module is not self-dual at this truncation: {0}")]
    NotSelfDual(String),
    #[error("module weights are not integral: {0}")]
    GradingViolation(String),
    #[error("bilinear form on the module is not symmetric")]
    AsymmetricForm,
}

pub fn build_contragredient<'a>(alg: &'a VOAInstance, module: &'a dyn VertexModule) -> ContragredientModule<'a> {
    ContragredientModule::new(alg, module)
}

/// `⟨Y'(v,x)w', w⟩ = ⟨w', Y(e^{xL(1)}(-x^{-2})^{L(0)}v, x^{-1})w⟩` for basis `w', w`,
/// coefficients `x^k` with `k` in `[lo, hi]`.
pub fn check_defining_relation(
    alg: &VOAInstance,
    dual: &ContragredientModule<'_>,
    v: &GradedVector,
    lo: i64,
    hi: i64,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "contragredient-definition",
        format!("module={},v={v},window=[{lo},{hi}]", dual.describe()),
    );
    let base = dual.base();
    let cap = base.cap() as i64;
    for (d, vh) in v.components() {
        let conj = conjugate_vector(alg, &vh);
        for phi in partitions_up_to(base.cap()) {
            let phi_v = GradedVector::basis(phi.clone());
            for k in lo..=hi {
                // both sides vanish unless w has weight d + wt φ + k
                let level = d as i64 + phi.weight() as i64 + k;
                if level < 0 {
                    continue;
                }
                if level > cap {
                    report.skipped += 1;
                    continue;
                }
                let image = dual.act(&vh, -k - 1, &phi_v);
                for w in base.basis(level as usize) {
                    let w_v = GradedVector::basis(w.clone());
                    let lhs = pair(&image, &w_v);
                    let mut rhs = q(0);
                    for (e, y) in &conj {
                        rhs += pair(&phi_v, &base.act(y, k - e - 1, &w_v));
                    }
                    report.checked += 1;
                    report.compare(&[k, phi.weight() as i64, w.weight() as i64], format!("<{phi}|..|{w}>"), lhs, rhs);
                }
            }
        }
    }
    report
}

/// `⟨L'(n)w', w⟩ = ⟨w', L(-n)w⟩` for `|n| ≤ bound`.
pub fn check_virasoro_adjoint(dual: &ContragredientModule<'_>, bound: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "contragredient-virasoro-adjoint",
        format!("module={},bound={bound}", dual.describe()),
    );
    let base = dual.base();
    let cap = base.cap();
    for phi in partitions_up_to(cap) {
        let phi_v = GradedVector::basis(phi.clone());
        for n in -bound..=bound {
            let out_level = phi.weight() as i64 - n;
            if out_level < 0 || out_level > cap as i64 {
                report.skipped += 1;
                continue;
            }
            let lhs = dual.virasoro(n, &phi_v);
            let mut rhs = GradedVector::zero();
            for w in base.basis(out_level as usize) {
                let c = pair(&phi_v, &base.virasoro(-n, &GradedVector::basis(w.clone())));
                rhs.add_term(w, c);
            }
            compare_vectors(&mut report, &[n, phi.weight() as i64], &lhs, &rhs);
        }
    }
    report
}

/// `Y'(L(-1)v, x) = d/dx Y'(v, x)`, i.e. `(L(-1)v)'_n = -n v'_{n-1}`.
pub fn check_dual_derivative(
    alg: &VOAInstance,
    dual: &ContragredientModule<'_>,
    v: &GradedVector,
    lo: i64,
    hi: i64,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "contragredient-derivative",
        format!("module={},v={v},window=[{lo},{hi}]", dual.describe()),
    );
    let lv = alg.space().virasoro(-1, v);
    let top = v.max_weight().unwrap_or(0) as i64;
    for phi in partitions_up_to(dual.cap()) {
        let phi_v = GradedVector::basis(phi.clone());
        for n in lo..=hi {
            if top + phi.weight() as i64 - n > dual.cap() as i64 {
                report.skipped += 1;
                continue;
            }
            let lhs = dual.act(&lv, n, &phi_v);
            let rhs = dual.act(v, n - 1, &phi_v).scale(&q(-n));
            compare_vectors(&mut report, &[n, phi.weight() as i64], &lhs, &rhs);
        }
    }
    report
}

/// Jacobi identity for the contragredient vertex operators.
pub fn check_contragredient_jacobi(
    alg: &VOAInstance,
    dual: &ContragredientModule<'_>,
    v1: &GradedVector,
    v2: &GradedVector,
    w_dual: &GradedVector,
    win: &Window,
) -> VerificationReport {
    let mut r = check_module_jacobi(alg, dual, v1, v2, w_dual, win);
    r.identity = "contragredient-jacobi".into();
    r
}

/// `Y''` equals `Y` on every basis triple whose output stays in the truncation.
pub fn check_double_contragredient(
    alg: &VOAInstance,
    module: &dyn VertexModule,
    max_u_weight: usize,
    mode_bound: i64,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "double-contragredient",
        format!("module={},u-weight<={max_u_weight},modes<={mode_bound}", module.describe()),
    );
    let dual = ContragredientModule::new(alg, module);
    let double = ContragredientModule::new(alg, &dual);
    let cap = module.cap() as i64;
    for u in partitions_up_to(max_u_weight) {
        for w in partitions_up_to(module.cap()) {
            for n in -mode_bound..=mode_bound {
                let out = u.weight() as i64 + w.weight() as i64 - n - 1;
                if out > cap {
                    report.skipped += 1;
                    continue;
                }
                let lhs = double.act_basis(&u, n, &w);
                let rhs = module.act_basis(&u, n, &w);
                compare_vectors(&mut report, &[n, u.weight() as i64, w.weight() as i64], &lhs, &rhs);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::identities::check_virasoro;
    use crate::voa::{build_fock_module, build_heisenberg, monomial, vacuum, Partition};

    #[test]
    fn conjugates() {
        let v = build_heisenberg(4);
        let c1 = conjugate_vector(&v, &vacuum());
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[&0], vacuum());
        let c2 = conjugate_vector(&v, v.omega());
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[&-4], v.omega().clone());
        let c3 = conjugate_vector(&v, &monomial(&[1]));
        assert_eq!(c3.len(), 1);
        assert_eq!(c3[&-2], monomial(&[1]).scale(&q(-1)));
    }

    #[test]
    fn contragredient_of_v() {
        let v = build_heisenberg(4);
        let d = build_contragredient(&v, &v);
        assert!(check_defining_relation(&v, &d, &monomial(&[1]), -3, 3).passed());
        assert!(check_virasoro_adjoint(&d, 3).passed());
        assert!(check_dual_derivative(&v, &d, &monomial(&[1]), -3, 3).passed());
        assert!(check_virasoro(&d, &q(1), 2, 2).passed());
        let x = GradedVector::basis(Partition::new(vec![1]));
        for n in -3..3 {
            assert_eq!(d.act(&vacuum(), n, &x), if n == -1 { x.clone() } else { GradedVector::zero() });
        }
        let r = check_contragredient_jacobi(&v, &d, &monomial(&[1]), &monomial(&[1]), &vacuum(), &Window::symmetric(3, 2));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn double_dual_of_fock_module() {
        let v = build_heisenberg(3);
        let m = build_fock_module(3, q(3));
        let r = check_double_contragredient(&v, &m, 2, 3);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrupted_adjoint_breaks_jacobi() {
        let v = build_heisenberg(4);
        let d = build_contragredient(&v, &v);
        let p = Partition::new(vec![1]);
        d.corrupt(&p, -1, &Partition::empty(), Partition::new(vec![1]), q(1));
        let r = check_contragredient_jacobi(&v, &d, &monomial(&[1]), &monomial(&[1]), &vacuum(), &Window::symmetric(3, 2));
        assert!(!r.passed());
    }
}
