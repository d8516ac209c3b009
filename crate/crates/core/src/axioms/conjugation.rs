//! `sl(2)` conjugation identities, expanded as power series in an auxiliary
//! variable `x` (with `f(x) = x`) and compared coefficientwise.

use super::compare_vectors;
use crate::rational::{binomial, factorial, q, sign, Q};
use crate::report::VerificationReport;
use crate::voa::{partitions_up_to, GradedVector, VOAInstance, VertexModule};

fn inv_fact(n: i64) -> Q {
    if n < 0 {
        Q::from_integer(0.into())
    } else {
        factorial(n as u32).recip()
    }
}

/// `[v, L(k)v, L(k)^2 v, …]` up to `L(k)^n v`.
fn powers(v_alg: &VOAInstance, k: i64, v: &GradedVector, n: i64) -> Vec<GradedVector> {
    let mut out = vec![v.clone()];
    for _ in 0..n.max(0) {
        let next = v_alg.space().virasoro(k, out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// Lemma-style `sl(2)` identities as operator series on every basis vector of weight `< level`.
fn check_sl2(v_alg: &VOAInstance, order: i64, report: &mut VerificationReport) {
    let sp = v_alg.space();
    let lm = |x: &GradedVector| sp.virasoro(-1, x);
    let l0 = |x: &GradedVector| sp.virasoro(0, x);
    let l1 = |x: &GradedVector| sp.virasoro(1, x);
    for w in partitions_up_to(v_alg.level().saturating_sub(1)) {
        let lw = w.weight() as i64;
        let w = GradedVector::basis(w);
        let p0 = powers(v_alg, 0, &w, order);
        let lmw = lm(&w);
        let l1w = l1(&w);
        let p0_lm = powers(v_alg, 0, &lmw, order);
        let p0_l1 = powers(v_alg, 0, &l1w, order);
        let p1 = powers(v_alg, 1, &w, order);
        let p1_lm = powers(v_alg, 1, &lmw, order);
        let p1_l0 = powers(v_alg, 1, &l0(&w), order);
        let p1_l1 = powers(v_alg, 1, &l1w, order);
        for i in 0..=order {
            // L(-1) e^{xL(0)} = e^{xL(0)} L(-1) e^{-x}
            let lhs = lm(&p0[i as usize]).scale(&inv_fact(i));
            let mut rhs = GradedVector::zero();
            for a in 0..=i {
                rhs.add_scaled(&p0_lm[a as usize], &(inv_fact(a) * inv_fact(i - a) * sign(i - a)));
            }
            compare_vectors(report, &[0, i, lw], &lhs, &rhs);

            // L(1) e^{xL(0)} = e^{xL(0)} L(1) e^{x}
            let lhs = l1(&p0[i as usize]).scale(&inv_fact(i));
            let mut rhs = GradedVector::zero();
            for a in 0..=i {
                rhs.add_scaled(&p0_l1[a as usize], &(inv_fact(a) * inv_fact(i - a)));
            }
            compare_vectors(report, &[1, i, lw], &lhs, &rhs);

            // L(-1) e^{xL(1)} = e^{xL(1)}L(-1) - 2x L(0) e^{xL(1)} - x² L(1) e^{xL(1)}
            //                 = e^{xL(1)}L(-1) - 2x e^{xL(1)} L(0) + x² e^{xL(1)} L(1)
            let at = |v: &[GradedVector], j: i64| -> GradedVector {
                if j < 0 {
                    GradedVector::zero()
                } else {
                    v[j as usize].scale(&inv_fact(j))
                }
            };
            let lhs = lm(&at(&p1, i));
            let mut middle = at(&p1_lm, i);
            middle.add_scaled(&l0(&at(&p1, i - 1)), &q(-2));
            middle.add_scaled(&l1(&at(&p1, i - 2)), &q(-1));
            let mut outer = at(&p1_lm, i);
            outer.add_scaled(&at(&p1_l0, i - 1), &q(-2));
            outer.add_assign(&at(&p1_l1, i - 2));
            compare_vectors(report, &[2, i, lw], &lhs, &middle);
            compare_vectors(report, &[3, i, lw], &middle, &outer);
        }
    }
}

/// Eigenvalue of `L(0)` on a weight-homogeneous vector, read off from the operator.
fn l0_eigen(v_alg: &VOAInstance, x: &GradedVector) -> Option<Q> {
    let (p, c) = x.terms().next()?;
    let image = v_alg.space().virasoro(0, x);
    let e = image.coeff(p) / c;
    (image == x.scale(&e)).then_some(e)
}

/// `x^{L(0)} Y(v,x0) x^{-L(0)} = Y(x^{L(0)}v, x x0)` on basis vectors.
fn check_scaling(v_alg: &VOAInstance, v: &GradedVector, order: i64, report: &mut VerificationReport) {
    let sp = v_alg.space();
    let cap = v_alg.level() as i64;
    for (dv, vh) in v.components() {
        let dv_eig = l0_eigen(v_alg, &vh).expect("homogeneous component");
        for w in partitions_up_to(v_alg.level()) {
            let lw = w.weight() as i64;
            let w = GradedVector::basis(w);
            let w_eig = l0_eigen(v_alg, &w).expect("basis vector");
            for m in -order..=order {
                if dv as i64 + lw + m > cap {
                    report.skipped += 1;
                    continue;
                }
                let n = -m - 1;
                let y = sp.act(&vh, n, &w);
                // left: split v_n w into L(0)-eigencomponents; exponent of x is eigenvalue shift
                for i in -order..=order + dv as i64 {
                    let mut lhs = GradedVector::zero();
                    for (_, comp) in y.components() {
                        let e = l0_eigen(v_alg, &comp).expect("homogeneous image");
                        if e - &w_eig == q(i) {
                            lhs.add_assign(&comp);
                        }
                    }
                    // right: x^{dv} v_n (x x0)^{-n-1} contributes to x^{dv+m} x0^m
                    let rhs = if dv_eig.clone() + q(m) == q(i) {
                        y.clone()
                    } else {
                        GradedVector::zero()
                    };
                    compare_vectors(report, &[4, i, m, lw], &lhs, &rhs);
                }
            }
        }
    }
}

/// `e^{xL(1)} Y(v,x0) e^{-xL(1)} = Y(e^{x(1-x x0)L(1)} (1-x x0)^{-2L(0)} v, x0/(1-x x0))`.
fn check_l1_conjugation(v_alg: &VOAInstance, v: &GradedVector, order: i64, report: &mut VerificationReport) {
    let sp = v_alg.space();
    let cap = v_alg.level() as i64;
    for (dv, vh) in v.components() {
        let dv = dv as i64;
        let l1v = powers(v_alg, 1, &vh, order);
        for w in partitions_up_to(v_alg.level()) {
            let lw = w.weight() as i64;
            let w = GradedVector::basis(w);
            let l1w = powers(v_alg, 1, &w, order);
            for m in -order..=order {
                if dv + lw + m > cap {
                    report.skipped += order as usize + 1;
                    continue;
                }
                for i in 0..=order {
                    let n = -m - 1;
                    let mut lhs = GradedVector::zero();
                    for a in 0..=i {
                        let b = i - a;
                        let inner = sp.act(&vh, n, &l1w[b as usize]);
                        let mut outer = inner;
                        for _ in 0..a {
                            outer = sp.virasoro(1, &outer);
                        }
                        lhs.add_scaled(&outer, &(inv_fact(a) * inv_fact(b) * sign(b)));
                    }
                    let mut rhs = GradedVector::zero();
                    for j in 0..=i {
                        let t = i - j;
                        let nn = t - m - 1;
                        let c = inv_fact(j) * binomial(j - 2 * dv + nn + 1, t) * sign(t);
                        rhs.add_scaled(&sp.act(&l1v[j as usize], nn, &w), &c);
                    }
                    compare_vectors(report, &[5, i, m, lw], &lhs, &rhs);
                }
            }
        }
    }
}

/// `e^{x0 L(-1)} Y(v,x) e^{-x0 L(-1)} = Y(v, x + x0)`.
fn check_translation(v_alg: &VOAInstance, v: &GradedVector, order: i64, report: &mut VerificationReport) {
    let sp = v_alg.space();
    let cap = v_alg.level() as i64;
    let dv = v.max_weight().unwrap_or(0) as i64;
    for w in partitions_up_to(v_alg.level()) {
        let lw = w.weight() as i64;
        let w = GradedVector::basis(w);
        let lmw = powers(v_alg, -1, &w, order);
        for m in -order..=order {
            for i in 0..=order {
                if dv + lw + i + m > cap || lw + i > cap {
                    report.skipped += 1;
                    continue;
                }
                let n = -m - 1;
                let mut lhs = GradedVector::zero();
                for a in 0..=i {
                    let b = i - a;
                    let mut outer = sp.act(v, n, &lmw[b as usize]);
                    for _ in 0..a {
                        outer = sp.virasoro(-1, &outer);
                    }
                    lhs.add_scaled(&outer, &(inv_fact(a) * inv_fact(b) * sign(b)));
                }
                let nn = -m - 1 - i;
                let rhs = sp.act(v, nn, &w).scale(&binomial(-nn - 1, i));
                compare_vectors(report, &[6, i, m, lw], &lhs, &rhs);
            }
        }
    }
}

/// All conjugation identities for `v`, to order `order` in the auxiliary variable.
///
/// Exponent tags in the difference list: 0–3 the `sl(2)` identities, 4 the
/// `x^{L(0)}` formula, 5 the `e^{xL(1)}` formula, 6 the `e^{x0 L(-1)}` formula.
pub fn check_conjugation(v_alg: &VOAInstance, v: &GradedVector, order: i64) -> VerificationReport {
    let mut report = VerificationReport::new("conjugation", format!("v={v},order={order}"));
    check_sl2(v_alg, order, &mut report);
    check_scaling(v_alg, v, order, &mut report);
    check_l1_conjugation(v_alg, v, order, &mut report);
    check_translation(v_alg, v, order, &mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voa::{build_heisenberg, monomial};

    #[test]
    fn conjugation_on_small_vectors() {
        let v = build_heisenberg(5);
        for x in [monomial(&[1]), v.omega().clone(), monomial(&[2])] {
            let r = check_conjugation(&v, &x, 3);
            assert!(r.passed(), "{r}");
        }
    }
}
