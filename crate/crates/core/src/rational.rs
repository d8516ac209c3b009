//! Exact scalar types shared by every module.

use num::bigint::BigInt;
use num::complex::Complex;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Exact complex rational scalar (Gaussian rational), used for puncture data.
pub type Cx = Complex<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn cx(re: Q) -> Cx {
    Complex::new(re, Q::zero())
}

pub fn cx_int(n: i64) -> Cx {
    cx(q(n))
}

/// Squared modulus, exact.
pub fn norm_sqr(z: &Cx) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial(n: i64, k: i64) -> Q {
    if k < 0 {
        return Q::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Q::new(num, den)
}

/// `(-1)^n` as a rational.
pub fn sign(n: i64) -> Q {
    if n.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Integer power with negative exponents allowed; panics on `0^negative`.
pub fn pow_q(base: &Q, exp: i64) -> Q {
    let r = num::pow::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        r.recip()
    } else {
        r
    }
}

pub fn pow_cx(base: &Cx, exp: i64) -> Cx {
    let mut acc = Cx::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc * base.clone();
    }
    if exp < 0 {
        Cx::one() / acc
    } else {
        acc
    }
}

/// Parse `a`, `-a`, or `a/b` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Parse a complex rational written as `re` or `(re,im)`.
pub fn parse_cx(s: &str) -> Option<Cx> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (re, im) = inner.split_once(',')?;
        Some(Complex::new(parse_q(re)?, parse_q(im)?))
    } else {
        parse_q(s).map(cx)
    }
}

pub fn fmt_cx(z: &Cx) -> String {
    if z.im.is_zero() {
        z.re.to_string()
    } else {
        format!("({},{})", z.re, z.im)
    }
}

/// Crude decimal magnitude for reporting shrinking differences.
pub fn to_f64(x: &Q) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(-1, 3), q(-1));
        assert_eq!(binomial(-2, 2), q(3));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(binomial(4, -1), q(0));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_q("-3/6"), Some(q_frac(-1, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_cx("(1,-2)"), Some(Complex::new(q(1), q(-2))));
        assert_eq!(parse_cx("7"), Some(cx_int(7)));
    }
}
