//! Skew-symmetry, creation, and the `L(-1)`, `L(0)`, `L(1)` bracket formulas.

use super::compare_vectors;
use crate::rational::{factorial, q, sign, Q};
use crate::report::VerificationReport;
use crate::voa::{partitions_up_to, GradedVector, VOAInstance, VertexModule};

/// `L(-1)^j v / j!` computed by repeated application.
pub(crate) fn translate_power(v_alg: &VOAInstance, j: i64, v: &GradedVector) -> GradedVector {
    let mut x = v.clone();
    for _ in 0..j {
        x = v_alg.space().virasoro(-1, &x);
    }
    x.scale(&factorial(j as u32).recip())
}

/// `Y(u,x)v = e^{xL(-1)}Y(v,-x)u` on coefficients of `x^k`, `|k| ≤ order`.
pub fn check_skew_symmetry(v_alg: &VOAInstance, u: &GradedVector, v: &GradedVector, order: i64) -> VerificationReport {
    let mut report = VerificationReport::new("skew-symmetry", format!("u={u},v={v},order={order}"));
    let space = v_alg.space();
    let cap = v_alg.level() as i64;
    let top = |x: &GradedVector| x.max_weight().unwrap_or(0) as i64;
    let (lu, lv) = (top(u), top(v));
    for k in -order..=order {
        if lu + lv + k > cap {
            report.skipped += 1;
            continue;
        }
        let lhs = space.act(u, -k - 1, v);
        let mut rhs = GradedVector::zero();
        for j in 0..=(k + lu + lv).max(-1) {
            let m = j - k - 1;
            let inner = space.act(v, m, u);
            rhs.add_scaled(&translate_power(v_alg, j, &inner), &sign(m + 1));
        }
        compare_vectors(&mut report, &[k], &lhs, &rhs);
    }
    report
}

/// `Y(v,x)1` has no negative powers and its `x^k` coefficient is `L(-1)^k v / k!`.
pub fn check_creation(v_alg: &VOAInstance, v: &GradedVector, order: i64) -> VerificationReport {
    let mut report = VerificationReport::new("creation", format!("v={v},order={order}"));
    let space = v_alg.space();
    let one = v_alg.vacuum();
    let lv = v.max_weight().unwrap_or(0) as i64;
    for k in -order..=order {
        if lv + k > v_alg.level() as i64 {
            report.skipped += 1;
            continue;
        }
        let lhs = space.act(v, -k - 1, one);
        let rhs = if k < 0 {
            GradedVector::zero()
        } else {
            translate_power(v_alg, k, v)
        };
        compare_vectors(&mut report, &[k], &lhs, &rhs);
    }
    report
}

/// The three bracket formulas on every basis vector within budget, for modes `v_n`
/// with `x`-exponent `-n-1` in `[lo, hi]`.
///
/// * `[L(-1), v_n] = (L(-1)v)_n`
/// * `[L(0), v_n] = (L(0)v)_n + (L(-1)v)_{n+1}`
/// * `[L(1), v_n] = (L(1)v)_n + 2(L(0)v)_{n+1} + (L(-1)v)_{n+2}`
pub fn check_commutators(v_alg: &VOAInstance, v: &GradedVector, lo: i64, hi: i64) -> VerificationReport {
    let mut report = VerificationReport::new("commutators", format!("v={v},window=[{lo},{hi}]"));
    let space = v_alg.space();
    let cap = v_alg.level() as i64;
    let lv = v.max_weight().unwrap_or(0) as i64;
    let lm1v = space.virasoro(-1, v);
    let l0v = space.virasoro(0, v);
    let l1v = space.virasoro(1, v);
    for w in partitions_up_to(v_alg.level()) {
        let lw = w.weight() as i64;
        let w = GradedVector::basis(w);
        for e in lo..=hi {
            let n = -e - 1;
            // output weight of v_n w is lv + lw + e; the brackets go one higher
            if lv + lw + e + 1 > cap || lw + 1 > cap || lv + 1 > cap {
                report.skipped += 3;
                continue;
            }
            let vn = |x: &GradedVector| space.act(v, n, x);
            let vnw = vn(&w);
            for (idx, k) in [-1i64, 0, 1].into_iter().enumerate() {
                let lhs = space
                    .virasoro(k, &vnw)
                    .minus(&vn(&space.virasoro(k, &w)));
                let rhs = match k {
                    -1 => space.act(&lm1v, n, &w),
                    0 => space.act(&l0v, n, &w).plus(&space.act(&lm1v, n + 1, &w)),
                    _ => {
                        let mut r = space.act(&l1v, n, &w);
                        r.add_scaled(&space.act(&l0v, n + 1, &w), &q(2));
                        r.add_assign(&space.act(&lm1v, n + 2, &w));
                        r
                    }
                };
                compare_vectors(&mut report, &[idx as i64 - 1, e, lw], &lhs, &rhs);
            }
        }
    }
    report
}

/// `[L(m), L(n)]w = (m-n)L(m+n)w + c/12 (m³-m) δ_{m+n,0} w` for one basis vector.
pub fn virasoro_bracket_defect(module: &dyn VertexModule, c: &Q, m: i64, n: i64, w: &GradedVector) -> (GradedVector, GradedVector) {
    let lhs = module
        .virasoro(m, &module.virasoro(n, w))
        .minus(&module.virasoro(n, &module.virasoro(m, w)));
    let mut rhs = module.virasoro(m + n, w).scale(&q(m - n));
    if m + n == 0 {
        rhs.add_scaled(w, &(c * q(m * m * m - m) / q(12)));
    }
    (lhs, rhs)
}

/// Virasoro relations for `|m|, |n| ≤ bound` on basis vectors of weight `≤ max_weight`,
/// skipping instances whose intermediate weights leave the truncation.
pub fn check_virasoro(module: &dyn VertexModule, c: &Q, bound: i64, max_weight: usize) -> VerificationReport {
    let mut report = VerificationReport::new(
        "virasoro-bracket",
        format!("module={},bound={bound},weight<={max_weight}", module.describe()),
    );
    let cap = module.cap() as i64;
    for w in partitions_up_to(max_weight) {
        let lw = w.weight() as i64;
        let w = GradedVector::basis(w);
        for m in -bound..=bound {
            for n in -bound..=bound {
                let peak = lw + (-m).max(0) + (-n).max(0);
                if peak > cap {
                    report.skipped += 1;
                    continue;
                }
                let (lhs, rhs) = virasoro_bracket_defect(module, c, m, n, &w);
                compare_vectors(&mut report, &[m, n, lw], &lhs, &rhs);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voa::{build_heisenberg, monomial, vacuum};

    #[test]
    fn skew_and_creation() {
        let v = build_heisenberg(6);
        let a = monomial(&[1]);
        let om = v.omega().clone();
        for (x, y) in [(vacuum(), vacuum()), (a.clone(), om.clone()), (om.clone(), om.clone())] {
            let r = check_skew_symmetry(&v, &x, &y, 4);
            assert!(r.passed(), "{r}");
        }
        assert!(check_creation(&v, &monomial(&[2, 1]), 4).passed());
    }

    #[test]
    fn commutators_and_virasoro() {
        let v = build_heisenberg(5);
        for x in [vacuum(), monomial(&[1]), v.omega().clone()] {
            let r = check_commutators(&v, &x, -3, 3);
            assert!(r.passed(), "{r}");
        }
        let r = check_virasoro(v.space(), &q(1), 3, 3);
        assert!(r.passed(), "{r}");
        assert!(r.checked > 0);
    }
}
