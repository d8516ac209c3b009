//! Permutations of the Jacobi triple and the two transposition steps that generate them.

use std::fmt;

use super::identities::translate_power;
use super::jacobi::check_jacobi;
use super::{compare_vectors, window_label};
use crate::formal::Window;
use crate::rational::{binomial, sign};
use crate::report::VerificationReport;
use crate::voa::{GradedVector, VOAInstance, VertexModule};

/// A permutation of `(u, v, w)`: slot `i` of the permuted triple holds entry `self.0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Perm(pub [usize; 3]);

impl Perm {
    pub const ALL: [Perm; 6] = [
        Perm([0, 1, 2]),
        Perm([1, 0, 2]),
        Perm([0, 2, 1]),
        Perm([2, 1, 0]),
        Perm([1, 2, 0]),
        Perm([2, 0, 1]),
    ];

    pub fn apply<'a, T>(&self, t: [&'a T; 3]) -> [&'a T; 3] {
        [t[self.0[0]], t[self.0[1]], t[self.0[2]]]
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            [0, 1, 2] => "id",
            [1, 0, 2] => "(uv)",
            [0, 2, 1] => "(vw)",
            [2, 1, 0] => "(uw)",
            [1, 2, 0] => "(uvw)",
            _ => "(uwv)",
        })
    }
}

fn level(x: &GradedVector) -> i64 {
    x.max_weight().unwrap_or(0) as i64
}

/// `Y(Y(u,x0)v,x2)w = Y(e^{x0L(-1)}Y(v,-x0)u,x2)w = Y(Y(v,-x0)u,x2+x0)w`
/// on coefficients `x0^a x2^c`.
fn check_uv_step(
    v_alg: &VOAInstance,
    u: &GradedVector,
    v: &GradedVector,
    w: &GradedVector,
    win: &Window,
    report: &mut VerificationReport,
) {
    let sp = v_alg.space();
    let cap = v_alg.level() as i64;
    let (lu, lv, lw) = (level(u), level(v), level(w));
    let b = win.bounds();
    for a in b[0].0..=b[0].1 {
        for c in b[2].0..=b[2].1 {
            if lu + lv + a > cap || lu + lv + lw + a + c + 1 > cap {
                report.skipped += 1;
                continue;
            }
            let e1 = sp.act(&sp.act(u, -a - 1, v), -c - 1, w);
            let mut e2 = GradedVector::zero();
            for j in 0..=(a + lu + lv).max(-1) {
                let m = j - a - 1;
                let inner = translate_power(v_alg, j, &sp.act(v, m, u));
                e2.add_scaled(&sp.act(&inner, -c - 1, w), &sign(m + 1));
            }
            let mut e3 = GradedVector::zero();
            for t in 0..=(a + lu + lv).max(-1) {
                let m = t - a - 1;
                let s = -c - 1 - t;
                let coef = binomial(-s - 1, t) * sign(m + 1);
                e3.add_scaled(&sp.act(&sp.act(v, m, u), s, w), &coef);
            }
            compare_vectors(report, &[0, a, c], &e1, &e2);
            compare_vectors(report, &[1, a, c], &e2, &e3);
        }
    }
}

/// The Jacobi identity for `(u, v, w)` after multiplying by `e^{-x2 L(-1)}` and
/// applying skew-symmetry:
/// `x0^{-1}δ((x1-x2)/x0) Y(u,x1-x2)Y(w,-x2)v - x0^{-1}δ((x2-x1)/(-x0)) Y(Y(u,x1)w,-x2)v
///   = x2^{-1}δ((x1-x0)/x2) Y(w,-x2)Y(u,x0)v`.
fn check_vw_step(
    v_alg: &VOAInstance,
    u: &GradedVector,
    v: &GradedVector,
    w: &GradedVector,
    win: &Window,
    report: &mut VerificationReport,
) {
    let sp = v_alg.space();
    let cap = v_alg.level() as i64;
    let (lu, lv, lw) = (level(u), level(v), level(w));
    for e in win.points() {
        let [e0, e1, e2] = [e[0], e[1], e[2]];
        if lw + lv + e2 > cap
            || lu + lw + e1 > cap
            || lu + lv + e0 > cap
            || lu + lv + lw + e0 + e1 + e2 + 1 > cap
        {
            report.skipped += 1;
            continue;
        }
        let n = -e0 - 1;
        let mut lhs = GradedVector::zero();
        let kt_max = e2 + lw + lv;
        for k in 0..=kt_max.max(-1) {
            for t in 0..=(kt_max - k) {
                let q = k + t - e2 - 1;
                let p = n - k - e1 - 1 - t;
                let coef = binomial(n, k) * sign(k) * binomial(-p - 1, t) * sign(t) * sign(q + 1);
                lhs.add_scaled(&sp.act(u, p, &sp.act(w, q, v)), &coef);
            }
        }
        for k in 0..=(e1 + lu + lw).max(-1) {
            let r = k - e1 - 1;
            let s = n - k - e2 - 1;
            let coef = -(sign(n) * binomial(n, k) * sign(k) * sign(s + 1));
            lhs.add_scaled(&sp.act(&sp.act(u, r, w), s, v), &coef);
        }
        let mut rhs = GradedVector::zero();
        for k in 0..=(e0 + lu + lv).max(-1) {
            let nn = e1 + k;
            let p = k - e0 - 1;
            let q = -nn - 2 - e2;
            let coef = binomial(nn, k) * sign(k) * sign(q + 1);
            rhs.add_scaled(&sp.act(w, q, &sp.act(u, p, v)), &coef);
        }
        compare_vectors(report, &[2, e0, e1, e2], &lhs, &rhs);
    }
}

/// Jacobi identity for the permuted triple, plus the intermediate step for each
/// generating transposition.
pub fn s3_transform_check(
    v_alg: &VOAInstance,
    u: &GradedVector,
    v: &GradedVector,
    w: &GradedVector,
    perm: Perm,
    win: &Window,
) -> VerificationReport {
    let [a, b, c] = perm.apply([u, v, w]);
    let mut report = VerificationReport::new(
        "s3",
        format!("perm={perm},u={u},v={v},w={w},window={}", window_label(win.bounds())),
    );
    let direct = check_jacobi(v_alg, a, b, c, win);
    report.checked += direct.checked;
    report.skipped += direct.skipped;
    report.differences.extend(direct.differences);
    match perm.0 {
        [1, 0, 2] => check_uv_step(v_alg, u, v, w, win, &mut report),
        [0, 2, 1] => check_vw_step(v_alg, u, v, w, win, &mut report),
        _ => {}
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voa::{build_heisenberg, monomial, vacuum};

    #[test]
    fn transpositions() {
        let v = build_heisenberg(6);
        let a = monomial(&[1]);
        let win = Window::symmetric(3, 2);
        let r = s3_transform_check(&v, &a, v.omega(), &vacuum(), Perm([1, 0, 2]), &win);
        assert!(r.passed(), "{r}");
        let r = s3_transform_check(&v, &a, &vacuum(), &a, Perm([0, 2, 1]), &win);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn identity_matches_jacobi() {
        let v = build_heisenberg(5);
        let a = monomial(&[1]);
        let win = Window::symmetric(3, 2);
        let s = s3_transform_check(&v, &a, &a, &vacuum(), Perm::ALL[0], &win);
        let j = check_jacobi(&v, &a, &a, &vacuum(), &win);
        assert_eq!((s.checked, s.skipped, s.status()), (j.checked, j.skipped, j.status()));
    }
}
