//! The Jacobi identity
//! `x0^{-1}δ((x1-x2)/x0) Y(a,x1)Y(b,x2)w - x0^{-1}δ((x2-x1)/(-x0)) Y(b,x2)Y(a,x1)w
//!   = x2^{-1}δ((x1-x0)/x2) Y(Y(a,x0)b,x2)w`,
//! compared coefficient by coefficient in `(x0, x1, x2)`.

use super::{compare_vectors, window_label};
use crate::formal::Window;
use crate::rational::{binomial, sign};
use crate::report::VerificationReport;
use crate::voa::{GradedVector, VOAInstance, VertexModule};

type ModeFn<'a> = dyn Fn(i64, i64) -> GradedVector + Sync + 'a;

/// The three operator orderings of a Jacobi identity for homogeneous `a`, `b`, `w`.
pub struct JacobiSides<'a> {
    /// Levels of `a`, `b`, `w`.
    pub levels: [i64; 3],
    pub cap: i64,
    /// `(p, q) ↦ a_p b_q w`
    pub ab: &'a ModeFn<'a>,
    /// `(p, q) ↦ b_q a_p w`
    pub ba: &'a ModeFn<'a>,
    /// `(r, s) ↦ (a_r b)_s w`
    pub iterate: &'a ModeFn<'a>,
}

impl JacobiSides<'_> {
    /// Every intermediate vector needed at `e` lies within the cap.
    pub fn in_budget(&self, e: [i64; 3]) -> bool {
        let [la, lb, lw] = self.levels;
        let l = self.cap;
        lb + lw + e[2] <= l
            && la + lw + e[1] <= l
            && la + lb + e[0] <= l
            && la + lb + lw + e[0] + e[1] + e[2] + 1 <= l
    }

    /// Both sides at the coefficient of `x0^e0 x1^e1 x2^e2`.
    pub fn coefficient(&self, e: [i64; 3]) -> (GradedVector, GradedVector) {
        let [la, lb, lw] = self.levels;
        let [e0, e1, e2] = e;
        let n = -e0 - 1;
        let mut lhs = GradedVector::zero();
        for k in 0..=(e2 + lb + lw).max(-1) {
            let c = binomial(n, k) * sign(k);
            let (p, q) = (n - k - e1 - 1, k - e2 - 1);
            lhs.add_scaled(&(self.ab)(p, q), &c);
        }
        for k in 0..=(e1 + la + lw).max(-1) {
            let c = -(sign(n) * binomial(n, k) * sign(k));
            let (p, q) = (k - e1 - 1, n - k - e2 - 1);
            lhs.add_scaled(&(self.ba)(p, q), &c);
        }
        let mut rhs = GradedVector::zero();
        for k in 0..=(e0 + la + lb).max(-1) {
            let c = binomial(e1 + k, k) * sign(k);
            let (r, s) = (k - e0 - 1, -e1 - k - 2 - e2);
            rhs.add_scaled(&(self.iterate)(r, s), &c);
        }
        (lhs, rhs)
    }
}

/// Accumulates every in-budget coefficient of `win` (three variables) into `report`.
pub fn run_jacobi(sides: &[JacobiSides<'_>], win: &Window, report: &mut VerificationReport) {
    for e in win.points() {
        let e = [e[0], e[1], e[2]];
        if !sides.iter().all(|s| s.in_budget(e)) {
            report.skipped += 1;
            continue;
        }
        let mut lhs = GradedVector::zero();
        let mut rhs = GradedVector::zero();
        for s in sides {
            let (l, r) = s.coefficient(e);
            lhs.add_assign(&l);
            rhs.add_assign(&r);
        }
        compare_vectors(report, &e, &lhs, &rhs);
    }
}

/// Jacobi identity for `u, v ∈ V` acting on `w ∈ M`.
pub fn check_module_jacobi(
    v_alg: &VOAInstance,
    module: &dyn VertexModule,
    u: &GradedVector,
    v: &GradedVector,
    w: &GradedVector,
    win: &Window,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "jacobi",
        format!(
            "module={},u={u},v={v},w={w},window={}",
            module.describe(),
            window_label(win.bounds())
        ),
    );
    let cap = v_alg.level().min(module.cap()) as i64;
    let (uc, vc, wc) = (u.components(), v.components(), w.components());
    let mut closures = Vec::new();
    for (lu, a) in &uc {
        for (lv, b) in &vc {
            for (lw, x) in &wc {
                closures.push(([*lu as i64, *lv as i64, *lw as i64], a, b, x));
            }
        }
    }
    type Triple<'b> = (
        [i64; 3],
        Box<ModeFn<'b>>,
        Box<ModeFn<'b>>,
        Box<ModeFn<'b>>,
    );
    let fns: Vec<Triple<'_>> = closures
        .iter()
        .map(|&(levels, a, b, x)| {
            let ab: Box<ModeFn<'_>> =
                Box::new(move |p, q| module.act(a, p, &module.act(b, q, x)));
            let ba: Box<ModeFn<'_>> =
                Box::new(move |p, q| module.act(b, q, &module.act(a, p, x)));
            let it: Box<ModeFn<'_>> =
                Box::new(move |r, s| module.act(&v_alg.space().act(a, r, b), s, x));
            (levels, ab, ba, it)
        })
        .collect();
    let sides: Vec<JacobiSides<'_>> = fns
        .iter()
        .map(|(levels, ab, ba, it)| JacobiSides {
            levels: *levels,
            cap,
            ab: ab.as_ref(),
            ba: ba.as_ref(),
            iterate: it.as_ref(),
        })
        .collect();
    run_jacobi(&sides, win, &mut report);
    report
}

/// Jacobi identity for the ordered triple `(u, v, w)` in `V`.
pub fn check_jacobi(
    v_alg: &VOAInstance,
    u: &GradedVector,
    v: &GradedVector,
    w: &GradedVector,
    win: &Window,
) -> VerificationReport {
    check_module_jacobi(v_alg, v_alg, u, v, w, win)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::voa::{build_heisenberg, monomial, vacuum, Partition};

    #[test]
    fn vacuum_triple() {
        let v = build_heisenberg(4);
        let one = vacuum();
        let r = check_jacobi(&v, &one, &one, &one, &Window::symmetric(3, 3));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn alpha_pair_on_vacuum_and_corruption() {
        let v = build_heisenberg(6);
        let a = monomial(&[1]);
        let one = vacuum();
        let win = Window::symmetric(3, 3);
        let r = check_jacobi(&v, &a, &a, &one, &win);
        assert!(r.passed(), "{r}");
        assert!(r.checked > 0);

        let bad = build_heisenberg(6);
        let p1 = Partition::new(vec![1]);
        bad.space().corrupt(&p1, -1, &p1, Partition::new(vec![1, 1]), q(1));
        let r = check_jacobi(&bad, &a, &a, &one, &win);
        assert!(!r.passed());
        assert!(!r.differences.is_empty());
    }
}
