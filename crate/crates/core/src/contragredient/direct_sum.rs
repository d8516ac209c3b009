//! The vertex map on `V ⊕ W` determined by `Y_V`, `Y_W` and the two invariant forms:
//!
//! * `Y(w,x)v = e^{xL(-1)} Y_W(v,-x) w`
//! * `(w3, Y(w1,x)w2)_W = 0`
//! * `(v, Y(w1,x)w2)_V = (Y_W(v,-x^{-1}) e^{xL(1)} (-x^2)^{-L(0)} w1, e^{x^{-1}L(1)} w2)_W`

use num::Zero;

use super::form::BilinearForm;
use super::ContragredientError;
use crate::axioms::compare_vectors;
use crate::linalg::solve_square;
use crate::rational::{factorial, sign, Q};
use crate::report::VerificationReport;
use crate::voa::{partitions, partitions_up_to, GradedVector, VOAInstance, VertexModule};

/// A vector `(v, w)` of `V ⊕ W`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SumVector {
    pub v: GradedVector,
    pub w: GradedVector,
}

impl SumVector {
    pub fn in_v(v: GradedVector) -> Self {
        SumVector { v, w: GradedVector::zero() }
    }

    pub fn in_w(w: GradedVector) -> Self {
        SumVector { v: GradedVector::zero(), w }
    }

    /// The involution `+1` on `V`, `-1` on `W`.
    pub fn involution(&self) -> Self {
        SumVector {
            v: self.v.clone(),
            w: self.w.scale(&-Q::from_integer(1.into())),
        }
    }
}

pub struct DirectSum<'a> {
    alg: &'a VOAInstance,
    module: &'a dyn VertexModule,
    form_v: BilinearForm,
    form_w: BilinearForm,
    shift: i64,
}

pub fn combine_direct_sum<'a>(
    alg: &'a VOAInstance,
    module: &'a dyn VertexModule,
    form_v: BilinearForm,
    form_w: BilinearForm,
) -> Result<DirectSum<'a>, ContragredientError> {
    let h = module.lowest_weight();
    if !h.is_integer() {
        return Err(ContragredientError::GradingViolation(format!(
            "{} has lowest weight {h}",
            module.describe()
        )));
    }
    if !form_w.symmetric {
        return Err(ContragredientError::AsymmetricForm);
    }
    let shift = h.to_integer().try_into().expect("small lowest weight");
    Ok(DirectSum {
        alg,
        module,
        form_v,
        form_w,
        shift,
    })
}

fn l1_powers(module: &dyn VertexModule, w: &GradedVector) -> Vec<GradedVector> {
    let mut out = vec![w.clone()];
    loop {
        let next = module.virasoro(1, out.last().expect("nonempty"));
        if next.is_zero() {
            return out;
        }
        out.push(next);
    }
}

impl DirectSum<'_> {
    pub fn cap(&self) -> usize {
        self.alg.level().min(self.module.cap())
    }

    /// `a_n b` for the combined vertex map.
    pub fn mode(&self, a: &SumVector, n: i64, b: &SumVector) -> SumVector {
        let sp = self.alg.space();
        let mut v = sp.act(&a.v, n, &b.v);
        v.add_assign(&self.w_w_to_v(&a.w, n, &b.w));
        let mut w = self.module.act(&a.v, n, &b.w);
        w.add_assign(&self.w_v(&a.w, n, &b.v));
        SumVector { v, w }
    }

    /// `w_n v` from `e^{xL(-1)} Y_W(v,-x) w`.
    fn w_v(&self, w: &GradedVector, n: i64, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        if w.is_zero() || v.is_zero() {
            return out;
        }
        let top = (v.max_weight().unwrap_or(0) + w.max_weight().unwrap_or(0)) as i64;
        for j in 0..=(top - 1 - n).max(-1) {
            let m = n + j;
            let mut x = self.module.act(v, m, w);
            for _ in 0..j {
                x = self.module.virasoro(-1, &x);
            }
            out.add_scaled(&x, &(sign(m + 1) * factorial(j as u32).recip()));
        }
        out
    }

    /// The `V`-component of `(w1)_n w2`, solved from its pairings with every basis vector of `V`.
    fn w_w_to_v(&self, w1: &GradedVector, n: i64, w2: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (l1, w1h) in w1.components() {
            for (l2, w2h) in w2.components() {
                let d1 = l1 as i64 + self.shift;
                let d2 = l2 as i64 + self.shift;
                let dv = d1 + d2 - n - 1;
                if dv < 0 || dv as usize > self.alg.level() {
                    continue;
                }
                let p1 = l1_powers(self.module, &w1h);
                let p2 = l1_powers(self.module, &w2h);
                let basis = partitions(dv as usize);
                let rhs: Vec<Q> = basis
                    .iter()
                    .map(|b| {
                        let bv = GradedVector::basis(b.clone());
                        let mut acc = Q::zero();
                        for (i, x1) in p1.iter().enumerate() {
                            for (j, x2) in p2.iter().enumerate() {
                                let (i, j) = (i as i64, j as i64);
                                let m = dv + d1 - i - d2 + j - 1;
                                let c = sign(d1 + m + 1)
                                    / (factorial(i as u32) * factorial(j as u32));
                                acc += c * self.form_w.pair(&self.module.act(&bv, m, x1), x2);
                            }
                        }
                        acc
                    })
                    .collect();
                let gram = &self.form_v.blocks[dv as usize];
                let y = solve_square(gram, &rhs).expect("nondegenerate form block");
                for (b, c) in basis.into_iter().zip(y) {
                    out.add_term(b, c);
                }
            }
        }
        out
    }
}

fn basis_sum_vectors(cap: usize) -> Vec<(bool, SumVector)> {
    let mut out = Vec::new();
    for p in partitions_up_to(cap) {
        out.push((false, SumVector::in_v(GradedVector::basis(p.clone()))));
        out.push((true, SumVector::in_w(GradedVector::basis(p))));
    }
    out
}

/// Structural checks: `V ⊗ V` reproduces `Y_V`, `W ⊗ W` has no `W`-part, and the
/// involution commutes with every mode, for output weights within the truncation.
pub fn check_direct_sum(ds: &DirectSum<'_>, mode_bound: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "direct-sum",
        format!("module={},modes<={mode_bound}", ds.module.describe()),
    );
    let cap = ds.cap();
    let sp = ds.alg.space();
    let basis = basis_sum_vectors(cap);
    for (ia, (a_in_w, a)) in basis.iter().enumerate() {
        for (ib, (b_in_w, b)) in basis.iter().enumerate() {
            let la = a.v.plus(&a.w).max_weight().unwrap_or(0);
            let lb = b.v.plus(&b.w).max_weight().unwrap_or(0);
            for n in -mode_bound..=mode_bound {
                if la as i64 + lb as i64 - n - 1 > cap as i64 {
                    report.skipped += 1;
                    continue;
                }
                let tag = [ia as i64, ib as i64, n];
                let y = ds.mode(a, n, b);
                match (a_in_w, b_in_w) {
                    (false, false) => {
                        compare_vectors(&mut report, &tag, &y.v, &sp.act(&a.v, n, &b.v));
                        compare_vectors(&mut report, &tag, &y.w, &GradedVector::zero());
                    }
                    (true, true) => {
                        compare_vectors(&mut report, &tag, &y.w, &GradedVector::zero());
                    }
                    _ => {
                        compare_vectors(&mut report, &tag, &y.v, &GradedVector::zero());
                    }
                }
                let lhs = y.involution();
                let rhs = ds.mode(&a.involution(), n, &b.involution());
                compare_vectors(&mut report, &tag, &lhs.v, &rhs.v);
                compare_vectors(&mut report, &tag, &lhs.w, &rhs.w);
            }
        }
    }
    report.notes.push(
        "W x W -> V pairing contributes only at x^(wt v - wt w1 - wt w2); each power is matched separately"
            .into(),
    );
    report
}

/// With `W` a second copy of `V` (same forms), every block of the combined map
/// must coincide with `Y_V`.
pub fn check_copy_of_v(ds: &DirectSum<'_>, mode_bound: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "direct-sum-copy",
        format!("module={},modes<={mode_bound}", ds.module.describe()),
    );
    let cap = ds.cap();
    let sp = ds.alg.space();
    let basis = partitions_up_to(cap);
    for (ia, a) in basis.iter().enumerate() {
        for (ib, b) in basis.iter().enumerate() {
            for n in -mode_bound..=mode_bound {
                if (a.weight() + b.weight()) as i64 - n - 1 > cap as i64 {
                    report.skipped += 1;
                    continue;
                }
                let (av, bv) = (GradedVector::basis(a.clone()), GradedVector::basis(b.clone()));
                let expected = sp.act(&av, n, &bv);
                let tag = [ia as i64, ib as i64, n];
                let wv = ds.mode(&SumVector::in_w(av.clone()), n, &SumVector::in_v(bv.clone()));
                compare_vectors(&mut report, &tag, &wv.w, &expected);
                let vw = ds.mode(&SumVector::in_v(av.clone()), n, &SumVector::in_w(bv.clone()));
                compare_vectors(&mut report, &tag, &vw.w, &expected);
                let ww = ds.mode(&SumVector::in_w(av), n, &SumVector::in_w(bv));
                compare_vectors(&mut report, &tag, &ww.v, &expected);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contragredient::build_invariant_form;
    use crate::rational::{q, q_frac};
    use crate::voa::{build_fock_module, build_heisenberg};

    #[test]
    fn copy_of_v_reproduces_y() {
        let v = build_heisenberg(3);
        let w = build_heisenberg(3);
        let fv = build_invariant_form(&v, &v, &q(1)).unwrap();
        let fw = build_invariant_form(&v, &w, &q(1)).unwrap();
        let ds = combine_direct_sum(&v, &w, fv, fw).unwrap();
        let r = check_direct_sum(&ds, 3);
        assert!(r.passed(), "{r}");
        let r = check_copy_of_v(&ds, 3);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn errors() {
        let v = build_heisenberg(2);
        let fv = build_invariant_form(&v, &v, &q(1)).unwrap();
        let m = build_fock_module(2, q(1));
        assert!(matches!(
            combine_direct_sum(&v, &m, fv.clone(), fv.clone()),
            Err(ContragredientError::GradingViolation(_))
        ));
        let mut bad = fv.clone();
        bad.blocks[2][0][1] += q_frac(1, 3);
        bad.symmetric = false;
        assert!(matches!(
            combine_direct_sum(&v, &v, fv, bad),
            Err(ContragredientError::AsymmetricForm)
        ));
    }
}
