//! The sewing operation `Q1 _i∞_0 Q2` on the Möbius-compatible subclass.
//!
//! When the `i`-th coordinate of `Q1` is affine, `w ↦ a (w - z_i)`, and the `∞` coordinate of
//! `Q2` is `w ↦ 1/(w - t)`, the identification `φ_i ∘ γ ∘ ψ_0^{-1}` is the affine map
//! `w2 ↦ z_i + (w2 - t)/a`, so the glued sphere is `Q1`'s sphere with `Q2`'s punctures
//! transported into the cut-out disc. A curved coordinate at puncture `i` is allowed when `Q2`
//! is a reparametrization (one puncture, at the pole of its `∞` coordinate): the result is
//! `Q1` with that coordinate precomposed.

use std::fmt;

use num::Zero;

use super::element::{LocalCoordinate, ModuliElement};
use super::series::{compose, flow_coefficients};
use super::ModuliError;
use crate::rational::{fmt_cx, norm_sqr, pow_cx, Cx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SewingResult {
    pub element: ModuliElement,
    /// The transition `w2 ↦ center + (w2 - pole)/scale` from `Q2`'s frame into `Q1`'s.
    pub center: Cx,
    pub scale: Cx,
    pub pole: Cx,
}

impl fmt::Display for SewingResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w2 -> {} + (w2 - {}) / {}",
            fmt_cx(&self.center),
            fmt_cx(&self.pole),
            fmt_cx(&self.scale)
        )
    }
}

/// `Q1 _i∞_0 Q2` with `i` 1-based; punctures are ordered `p_1 … p_{i-1}, q_1 … q_n, p_{i+1} … p_m`.
pub fn sew(q1: &ModuliElement, i: usize, q2: &ModuliElement) -> Result<SewingResult, ModuliError> {
    let m = q1.arity();
    if i == 0 || i > m {
        return Err(ModuliError::BadIndex(format!("puncture {i} of an arity-{m} element")));
    }
    if q1.order != q2.order {
        return Err(ModuliError::InvalidElement(format!(
            "truncation orders differ ({} vs {})",
            q1.order, q2.order
        )));
    }
    let coord = &q1.coords[i - 1];
    let pole = q2.infinity_pole().ok_or_else(|| {
        ModuliError::UnsupportedSewing("coordinate at ∞ of the second element is not a Möbius map".into())
    })?;
    if !coord.is_affine() {
        return reparametrize(q1, i, q2, pole);
    }
    let a = coord.scale.clone();
    let p1 = q1.positions();
    let zi = p1[i - 1].clone();
    let p2 = q2.positions();

    // need r with |ζ - t| < r for every puncture ζ of Q2 and r/|a| < |z_k - z_i| for k ≠ i
    let outer = p2.iter().map(|p| norm_sqr(&(p - &pole))).max();
    let inner = p1
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i - 1)
        .map(|(_, p)| norm_sqr(&(p - &zi)) * norm_sqr(&a))
        .min();
    if let (Some(outer), Some(inner)) = (&outer, &inner) {
        if outer >= inner {
            return Err(ModuliError::SewingUndefined(format!(
                "no radius separates puncture {i} from the others: |ζ - t|^2 = {outer} ≥ {inner}"
            )));
        }
    }

    let mut positions = p1[..i - 1].to_vec();
    let mut coords = q1.coords[..i - 1].to_vec();
    for (p, c) in p2.iter().zip(&q2.coords) {
        positions.push(&zi + (p - &pole) / &a);
        coords.push(LocalCoordinate {
            scale: &c.scale * &a,
            a: c.a
                .iter()
                .enumerate()
                .map(|(k, ak)| if ak.is_zero() { ak.clone() } else { ak * pow_cx(&a, k as i64 + 1) })
                .collect(),
        });
    }
    positions.extend_from_slice(&p1[i..]);
    coords.extend_from_slice(&q1.coords[i..]);
    let element = ModuliElement::normalize(
        q1.order,
        positions,
        q1.infinity.clone(),
        coords,
        &q1.det * &q2.det,
    );
    element.validate().map_err(|e| ModuliError::SewingUndefined(e.to_string()))?;
    Ok(SewingResult {
        element,
        center: zi,
        scale: a,
        pole,
    })
}

/// `Q2 ∈ K(1)` with the pole of its `∞` coordinate at its puncture: the transition is
/// `w2 = t + f(w1 - z_i)`, so the puncture stays at `z_i` and its coordinate becomes `g ∘ f`.
fn reparametrize(q1: &ModuliElement, i: usize, q2: &ModuliElement, pole: Cx) -> Result<SewingResult, ModuliError> {
    let p2 = q2.positions();
    if q2.arity() != 1 || p2[0] != pole {
        return Err(ModuliError::UnsupportedSewing(format!(
            "coordinate at puncture {i} is not a Möbius map and the second element is not a reparametrization"
        )));
    }
    let order = q1.order + 1;
    let f = q1.coords[i - 1].series(order);
    let h = compose(&q2.coords[0].series(order), &f, order);
    let scale = h[1].clone();
    if scale.is_zero() {
        return Err(ModuliError::SewingUndefined("composite coordinate is degenerate".into()));
    }
    let normalized: Vec<Cx> = h.iter().map(|c| c / &scale).collect();
    let mut element = q1.clone();
    element.coords[i - 1] = LocalCoordinate {
        scale: scale.clone(),
        a: flow_coefficients(&normalized, order),
    };
    element.det = &q1.det * &q2.det;
    element.validate().map_err(|e| ModuliError::SewingUndefined(e.to_string()))?;
    Ok(SewingResult {
        element,
        center: q1.positions()[i - 1].clone(),
        scale,
        pole,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{cx, cx_int, q_frac};

    const M: usize = 8;

    #[test]
    fn identity_sewing() {
        let q = ModuliElement::standard(vec![cx_int(3), cx_int(-2)], vec![cx_int(2), cx(q_frac(1, 3)), cx_int(1)], M).unwrap();
        let id = ModuliElement::identity(M);
        for i in 1..=3 {
            assert_eq!(sew(&q, i, &id).unwrap().element, q);
        }
        assert_eq!(sew(&id, 1, &q).unwrap().element, q);
    }

    #[test]
    fn scalings_compose() {
        let (a, b) = (cx(q_frac(2, 3)), cx_int(-5));
        let r = sew(&ModuliElement::scaling(a.clone(), M), 1, &ModuliElement::scaling(b.clone(), M)).unwrap();
        assert_eq!(r.element, ModuliElement::scaling(a * b, M));
    }

    #[test]
    fn p1_with_j_is_identity() {
        let r = sew(&ModuliElement::p(cx_int(1), M).unwrap(), 1, &ModuliElement::j(M)).unwrap();
        assert_eq!(r.element, ModuliElement::identity(M));
    }

    #[test]
    fn p2_with_p1_places_punctures() {
        let r = sew(&ModuliElement::p(cx_int(2), M).unwrap(), 1, &ModuliElement::p(cx_int(1), M).unwrap()).unwrap();
        assert_eq!(r.element.z, vec![cx_int(3), cx_int(2)]);
        assert!(r.element.is_standard());
    }

    #[test]
    fn removing_the_last_puncture_renormalizes() {
        let r = sew(&ModuliElement::p(cx_int(1), M).unwrap(), 2, &ModuliElement::j(M)).unwrap();
        // the remaining puncture moves to 0; the coordinate at ∞ becomes 1/(w + 1)
        assert!(r.element.z.is_empty());
        assert_eq!(r.element.infinity_pole(), Some(cx_int(-1)));
    }

    #[test]
    fn transported_coordinates_are_rescaled() {
        let a = cx(q_frac(-3, 2));
        let mut q2 = ModuliElement::p(cx_int(1), M).unwrap();
        q2.coords[0].a = (1..=M as i64).map(|k| cx(q_frac(k, k + 2))).collect();
        let r = sew(&ModuliElement::scaling(a.clone(), M), 1, &q2).unwrap().element;
        // the new coordinate is the old one precomposed with x -> a x
        let mut ax = vec![cx_int(0); M + 2];
        ax[1] = a;
        assert_eq!(
            r.coords[0].series(M + 1),
            crate::moduli::compose(&q2.coords[0].series(M + 1), &ax, M + 1)
        );
    }

    #[test]
    fn curved_coordinates_are_reparametrized() {
        let mut q = ModuliElement::p(cx_int(3), M).unwrap();
        q.coords[0].a = (1..=M as i64).map(|k| cx(q_frac(1, k + 1))).collect();
        q.coords[1].a[0] = cx_int(-2);
        for i in 1..=2 {
            assert_eq!(sew(&q, i, &ModuliElement::identity(M)).unwrap().element, q);
        }
        // Q(b) rescales the coordinate: the new series is b · f
        let b = cx(q_frac(-2, 5));
        let r = sew(&q, 1, &ModuliElement::scaling(b.clone(), M)).unwrap().element;
        let f = q.coords[0].series(M + 1);
        assert_eq!(r.coords[0].series(M + 1), f.iter().map(|c| c * &b).collect::<Vec<_>>());
        assert_eq!(r.z, q.z);
    }

    #[test]
    fn failures() {
        let p = ModuliElement::p(cx_int(1), M).unwrap();
        let far = ModuliElement::p(cx_int(5), M).unwrap();
        assert!(matches!(sew(&p, 1, &far), Err(ModuliError::SewingUndefined(_))));
        let mut bent = p.clone();
        bent.coords[0].a[1] = cx_int(1);
        assert!(matches!(sew(&bent, 1, &p), Err(ModuliError::UnsupportedSewing(_))));
        let mut shifted = ModuliElement::scaling(cx_int(2), M);
        shifted.infinity[0] = cx_int(1);
        assert!(matches!(sew(&bent, 1, &shifted), Err(ModuliError::UnsupportedSewing(_))));
        let mut curved = p.clone();
        curved.infinity[2] = cx_int(1);
        assert!(matches!(sew(&p, 1, &curved), Err(ModuliError::UnsupportedSewing(_))));
        assert!(matches!(sew(&p, 3, &p), Err(ModuliError::BadIndex(_))));
    }
}
