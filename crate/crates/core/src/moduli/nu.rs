//! `ν_n` on elements with standard coordinates: the correlation function
//! `⟨v', Y(a_1^{-L(0)} v_1, z_1) ⋯ Y(a_{n-1}^{-L(0)} v_{n-1}, z_{n-1}) a_n^{-L(0)} v_n⟩`
//! summed over intermediate weights up to a cutoff, and the sewing-axiom comparison
//! against the contraction `Σ_k ν(Q1)(…, P_k ν(Q2)(…), …)`.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::element::ModuliElement;
use super::sewing::sew;
use super::ModuliError;
use crate::rational::{fmt_cx, pow_q, to_f64, Cx, Q};
use crate::report::VerificationReport;
use crate::voa::{GradedVector, VOAInstance, VertexModule};

/// A partial sum and whether the last two cutoff increments left it unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuValue {
    pub value: Q,
    pub stable: bool,
}

fn real(z: &Cx, what: &str) -> Result<Q, ModuliError> {
    if z.im.is_zero() {
        Ok(z.re.clone())
    } else {
        Err(ModuliError::DomainViolation(format!("{what} {} is not real", fmt_cx(z))))
    }
}

/// `a^{-L(0)} v`.
fn rescale(v: &GradedVector, a: &Q) -> GradedVector {
    GradedVector::from_terms(v.terms().map(|(p, c)| (p.clone(), c * pow_q(a, -(p.weight() as i64)))))
}

/// `⟨v', w⟩` in the dual basis of the partition basis.
pub fn dual_pairing(dual: &GradedVector, w: &GradedVector) -> Q {
    dual.terms().map(|(p, c)| c * w.coeff(p)).sum()
}

/// `Σ_{k ≤ cutoff} P_k Y(a_1^{-L(0)} v_1, z_1) ⋯ a_n^{-L(0)} v_n`, projecting after every vertex
/// operator; the outermost projection keeps only `outer` weights when given.
pub fn nu_vector(
    alg: &VOAInstance,
    q: &ModuliElement,
    vectors: &[GradedVector],
    cutoff: usize,
    outer: Option<&BTreeSet<usize>>,
) -> Result<GradedVector, ModuliError> {
    let n = q.arity();
    if n == 0 {
        return Err(ModuliError::DomainViolation("no positive punctures".into()));
    }
    if vectors.len() != n {
        return Err(ModuliError::BadIndex(format!("{} vectors for arity {n}", vectors.len())));
    }
    if !q.is_standard() {
        return Err(ModuliError::DomainViolation("coordinates are not standard".into()));
    }
    let z: Vec<Q> = q.z.iter().map(|z| real(z, "puncture")).collect::<Result<_, _>>()?;
    let scales: Vec<Q> = q.coords.iter().map(|c| real(&c.scale, "scale")).collect::<Result<_, _>>()?;
    for w in z.windows(2) {
        if w[0].abs() <= w[1].abs() {
            return Err(ModuliError::DomainViolation(format!(
                "|z| must decrease along the punctures: |{}| <= |{}|",
                w[0], w[1]
            )));
        }
    }
    let sp = alg.space();
    let mut x = rescale(&vectors[n - 1], &scales[n - 1]).truncate(cutoff).0;
    for j in (0..n - 1).rev() {
        let u = rescale(&vectors[j], &scales[j]);
        let keep = |k: usize| k <= cutoff && (j > 0 || outer.is_none_or(|o| o.contains(&k)));
        let mut next = GradedVector::zero();
        for (du, uh) in u.components() {
            for (dx, xh) in x.components() {
                for k in (0..=cutoff).filter(|&k| keep(k)) {
                    let m = (du + dx) as i64 - k as i64 - 1;
                    let y = sp.act(&uh, m, &xh);
                    if !y.is_zero() {
                        next.add_scaled(&y, &pow_q(&z[j], -m - 1));
                    }
                }
            }
        }
        x = next;
    }
    Ok(x)
}

/// `⟨v', ν_n(Q)(v_1 ⊗ ⋯ ⊗ v_n)⟩` with intermediate weights at most `cutoff`.
pub fn nu_evaluate(
    alg: &VOAInstance,
    q: &ModuliElement,
    vectors: &[GradedVector],
    dual: &GradedVector,
    cutoff: usize,
) -> Result<NuValue, ModuliError> {
    let outer: BTreeSet<usize> = dual.terms().map(|(p, _)| p.weight()).collect();
    let at = |n: usize| nu_vector(alg, q, vectors, n, Some(&outer)).map(|v| dual_pairing(dual, &v));
    let value = at(cutoff)?;
    let stable = cutoff >= 2 && at(cutoff - 1)? == value && at(cutoff - 2)? == value;
    Ok(NuValue { value, stable })
}

/// Compares `ν(Q1 _i∞_0 Q2)` with the contraction of `ν(Q1)` and `ν(Q2)` at each cutoff;
/// `vectors` follow the punctures of the sewn element. Passes when every difference is zero or
/// their magnitudes strictly decrease along the schedule.
pub fn check_sewing_axiom(
    alg: &VOAInstance,
    q1: &ModuliElement,
    i: usize,
    q2: &ModuliElement,
    vectors: &[GradedVector],
    dual: &GradedVector,
    cutoffs: &[usize],
) -> Result<(VerificationReport, Vec<Q>), ModuliError> {
    let sewn = sew(q1, i, q2)?.element;
    let n = q2.arity();
    if vectors.len() != sewn.arity() {
        return Err(ModuliError::BadIndex(format!(
            "{} vectors for the arity-{} sewn element",
            vectors.len(),
            sewn.arity()
        )));
    }
    let inner = &vectors[i - 1..i - 1 + n];
    let mut report = VerificationReport::new(
        "sewing-axiom",
        format!("i={i},arity=({},{n}),cutoffs={cutoffs:?}", q1.arity()),
    );
    let outer: BTreeSet<usize> = dual.terms().map(|(p, _)| p.weight()).collect();
    let mut diffs = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let lhs = dual_pairing(dual, &nu_vector(alg, &sewn, vectors, cutoff, Some(&outer))?);
        let g = nu_vector(alg, q2, inner, cutoff, None)?;
        let mut outer_vectors: Vec<GradedVector> = vectors[..i - 1].to_vec();
        outer_vectors.push(g);
        outer_vectors.extend_from_slice(&vectors[i - 1 + n..]);
        let rhs = dual_pairing(dual, &nu_vector(alg, q1, &outer_vectors, cutoff, Some(&outer))?);
        let d = &lhs - &rhs;
        report.notes.push(format!("N={cutoff}: difference {d} (~{:.3e})", to_f64(&d)));
        diffs.push(d);
    }
    if diffs.iter().all(Zero::is_zero) {
        report.record(true, &[], "difference identically zero");
    } else {
        for (s, w) in diffs.windows(2).enumerate() {
            report.record(
                w[1].is_zero() || w[1].abs() < w[0].abs(),
                &[cutoffs[s] as i64, cutoffs[s + 1] as i64],
                "difference magnitude shrinks",
            );
        }
    }
    Ok((report, diffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{cx, cx_int, q, q_frac};
    use crate::voa::{build_heisenberg, monomial, vacuum};

    const M: usize = 8;

    #[test]
    fn grading_axiom() {
        let v = build_heisenberg(4);
        let a = q_frac(2, 3);
        let w = monomial(&[2, 1]);
        let r = nu_evaluate(&v, &ModuliElement::scaling(cx(a.clone()), M), &[w.clone()], &w, 4).unwrap();
        assert_eq!(r.value, pow_q(&a, -3));
    }

    #[test]
    fn two_point_matches_vertex_operator() {
        let v = build_heisenberg(6);
        let z = q(3);
        let (v1, v2) = (monomial(&[1]), monomial(&[2]));
        let p = ModuliElement::p(cx(z.clone()), M).unwrap();
        let got = nu_vector(&v, &p, &[v1.clone(), v2.clone()], 6, None).unwrap();
        let mut expected = GradedVector::zero();
        for (e, c) in v.vertex_operator(&v1, &v2, -8, 8) {
            expected.add_scaled(&c.truncate(6).0, &pow_q(&z, e));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn vacuum_insertion_is_invisible() {
        let v = build_heisenberg(4);
        let p = ModuliElement::standard(vec![cx_int(5), cx_int(2)], vec![cx_int(1); 3], M).unwrap();
        let with = nu_evaluate(&v, &p, &[vacuum(), monomial(&[1]), monomial(&[1])], &vacuum(), 6).unwrap();
        let without = nu_evaluate(&v, &ModuliElement::p(cx_int(2), M).unwrap(), &[monomial(&[1]), monomial(&[1])], &vacuum(), 6).unwrap();
        assert_eq!(with.value, without.value);
        assert!(with.stable);
    }

    #[test]
    fn sewing_axiom() {
        let v = build_heisenberg(6);
        let a = monomial(&[1]);
        let p2 = ModuliElement::p(cx_int(2), M).unwrap();
        let p1 = ModuliElement::p(cx_int(1), M).unwrap();
        let (r, d) = check_sewing_axiom(&v, &p2, 1, &p1, &[a.clone(), a.clone(), vacuum()], &vacuum(), &[4, 8, 12]).unwrap();
        assert!(r.passed(), "{r}");
        assert!(d.iter().all(|x| !x.is_zero()));
        // the product side is the partial sum of Σ k 2^{k-1} 3^{-k-1} → 1/(3-2)^2
        let sewn = sew(&p2, 1, &p1).unwrap().element;
        let got = nu_evaluate(&v, &sewn, &[a.clone(), a.clone(), vacuum()], &vacuum(), 8).unwrap().value;
        let oracle: Q = (1..=8).map(|k| q(k) * pow_q(&q(2), k - 1) * pow_q(&q(3), -k - 1)).sum();
        assert_eq!(got, oracle);
        let id = ModuliElement::identity(M);
        let (r, d) = check_sewing_axiom(&v, &p2, 2, &id, &[a.clone(), a], &vacuum(), &[4, 8, 12]).unwrap();
        assert!(r.passed());
        assert!(d.iter().all(Zero::is_zero));
    }

    #[test]
    fn domain_violation() {
        let v = build_heisenberg(2);
        let q = ModuliElement::standard(vec![cx_int(1), cx_int(2)], vec![cx_int(1); 3], M).unwrap();
        assert!(matches!(
            nu_evaluate(&v, &q, &[vacuum(), vacuum(), vacuum()], &vacuum(), 2),
            Err(ModuliError::DomainViolation(_))
        ));
    }
}
