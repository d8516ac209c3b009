//! Truncated power series `Σ_{k≥0} c_k x^k` and the coordinate map
//! `(a_0, A) ↦ a_0 · exp(Σ_j A_j x^{j+1} d/dx) x`.

use num::{One, Zero};

use crate::rational::{cx, cx_int, factorial, Cx};

/// Coefficients `c_0, …, c_M` of a power series truncated after `x^M`.
pub type PowerSeries = Vec<Cx>;

fn truncate(mut s: PowerSeries, order: usize) -> PowerSeries {
    s.resize(order + 1, Cx::zero());
    s
}

pub fn series_mul(a: &PowerSeries, b: &PowerSeries, order: usize) -> PowerSeries {
    let mut out = vec![Cx::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `f(g(x))` for `g(0) = 0`.
pub fn compose(f: &PowerSeries, g: &PowerSeries, order: usize) -> PowerSeries {
    let g = truncate(g.clone(), order);
    let mut out = vec![Cx::zero(); order + 1];
    let mut power = truncate(vec![Cx::one()], order);
    for c in f.iter().take(order + 1) {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += c * p;
        }
        power = series_mul(&power, &g, order);
    }
    out
}

/// `exp(Σ_j A_j x^{j+1} d/dx) x`, summing `D^k x / k!` termwise; `D` raises degree, so
/// `k ≤ order - 1` suffices.
pub fn flow_series(a: &[Cx], order: usize) -> PowerSeries {
    let derivation = |s: &PowerSeries| {
        let mut out = vec![Cx::zero(); order + 1];
        for (k, c) in s.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let dc = c * cx_int(k as i64);
            for (j, aj) in a.iter().enumerate() {
                let deg = k + j + 1;
                if deg > order {
                    break;
                }
                out[deg] += &dc * aj;
            }
        }
        out
    };
    let mut term = truncate(vec![Cx::zero(), Cx::one()], order);
    let mut out = term.clone();
    for k in 1..order {
        term = derivation(&term);
        if term.iter().all(Zero::is_zero) {
            break;
        }
        let inv = cx(factorial(k as u32).recip());
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t * &inv;
        }
    }
    out
}

/// `a_0 · exp(Σ_j A_j x^{j+1} d/dx) x` up to `x^order`.
pub fn coordinate_series(scale: &Cx, a: &[Cx], order: usize) -> PowerSeries {
    flow_series(a, order).into_iter().map(|c| c * scale).collect()
}

/// Recovers `A_1, …, A_{order-1}` from a series `x + O(x^2)`: the `x^{k+1}` coefficient of the
/// flow is `A_k` plus a polynomial in `A_1, …, A_{k-1}`.
pub fn flow_coefficients(s: &PowerSeries, order: usize) -> Vec<Cx> {
    let s = truncate(s.clone(), order);
    let mut a: Vec<Cx> = Vec::with_capacity(order.saturating_sub(1));
    for k in 1..order {
        let mut trial = a.clone();
        trial.push(Cx::zero());
        let f = flow_series(&trial, order);
        a.push(&s[k + 1] - &f[k + 1]);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn identity_and_scaling() {
        assert_eq!(coordinate_series(&cx_int(1), &[], 4), vec![cx_int(0), cx_int(1), cx_int(0), cx_int(0), cx_int(0)]);
        let a = Cx::from(q_frac(3, 2));
        assert_eq!(coordinate_series(&a, &vec![cx_int(0); 3], 3)[1], a);
    }

    #[test]
    fn geometric_series() {
        // exp(x^2 d/dx) x = x / (1 - x)
        let s = coordinate_series(&cx_int(1), &[cx_int(1), cx_int(0), cx_int(0)], 3);
        assert_eq!(s, vec![cx_int(0), cx_int(1), cx_int(1), cx_int(1)]);
        // exp(t x^2 d/dx) x = x / (1 - t x)
        let t = Cx::from(q(-3));
        let s = flow_series(&[t.clone()], 6);
        for (k, c) in s.iter().enumerate().skip(1) {
            assert_eq!(*c, crate::rational::pow_cx(&t, k as i64 - 1));
        }
    }

    #[test]
    fn flow_round_trip() {
        let a = vec![Cx::from(q_frac(1, 2)), cx_int(-1), Cx::from(q_frac(2, 3)), cx_int(0), cx_int(5)];
        let s = flow_series(&a, 6);
        assert_eq!(flow_coefficients(&s, 6), a);
    }

    #[test]
    fn flows_of_x2_compose_additively() {
        let f = flow_series(&[cx_int(2)], 7);
        let g = flow_series(&[cx_int(-5)], 7);
        assert_eq!(compose(&f, &g, 7), flow_series(&[cx_int(-3)], 7));
    }
}
