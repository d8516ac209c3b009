//! Sparse multivariate formal Laurent series with exact rational coefficients.
//!
//! Every series carries a finite box [`Window`] of exponents and a per-variable
//! [`Support`] descriptor recording whether the stored terms are the whole
//! series in that variable or a truncation of an infinite one. Products are only
//! formed when every coefficient of the result is a finite sum, and the result
//! window is clipped to the exponents whose coefficients are fully determined by
//! the stored terms.
//!
//! Binomial convention: `(x_a ± x_b)^n` is expanded in nonnegative powers of the
//! second-listed variable.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::rational::{binomial, pow_q, q, Q};
use crate::report::VerificationReport;

/// Exponents of a monomial, one entry per variable of the owning series.
pub type ExponentVector = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormalError {
    #[error("product is not well defined: infinite sum in variable `{0}`")]
    IllDefinedProduct(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("series are over different variable sets")]
    VariableMismatch,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("expansion direction must name two distinct variables of the expansion")]
    BadDirection,
}

/// Per-variable inclusive exponent bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    bounds: Vec<(i64, i64)>,
}

impl Window {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self, FormalError> {
        if let Some((lo, hi)) = bounds.iter().find(|(lo, hi)| lo > hi) {
            return Err(FormalError::InvalidWindow(format!("lower {lo} > upper {hi}")));
        }
        Ok(Window { bounds })
    }

    /// The same `[lo, hi]` range in each of `nvars` variables.
    pub fn cube(nvars: usize, lo: i64, hi: i64) -> Self {
        Window::new(vec![(lo, hi); nvars]).expect("cube window with lo > hi")
    }

    pub fn symmetric(nvars: usize, radius: i64) -> Self {
        Window::cube(nvars, -radius, radius)
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn nvars(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        e.len() == self.bounds.len()
            && e.iter().zip(&self.bounds).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Intersection, or `None` when empty in some variable.
    pub fn intersect(&self, other: &Window) -> Option<Window> {
        let bounds: Vec<_> = self
            .bounds
            .iter()
            .zip(&other.bounds)
            .map(|(a, b)| (a.0.max(b.0), a.1.min(b.1)))
            .collect();
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            None
        } else {
            Some(Window { bounds })
        }
    }

    /// Every exponent vector in the box, in lexicographic order.
    pub fn points(&self) -> Vec<ExponentVector> {
        let mut out = vec![Vec::new()];
        for &(lo, hi) in &self.bounds {
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for prefix in &out {
                for e in lo..=hi {
                    let mut p = prefix.clone();
                    p.push(e);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

/// What the stored terms represent in one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Support {
    /// All nonzero terms are stored.
    Finite,
    /// Terms below the window are zero; terms above it are cut off.
    LowerTruncated,
    /// Terms are cut off on both sides of the window.
    DoublyInfinite,
}

/// `(dominant, subordinate)`: the subordinate variable appears with nonnegative powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionDirection {
    pub dominant: String,
    pub subordinate: String,
}

impl ExpansionDirection {
    pub fn new(dominant: &str, subordinate: &str) -> Result<Self, FormalError> {
        if dominant == subordinate {
            return Err(FormalError::BadDirection);
        }
        Ok(ExpansionDirection {
            dominant: dominant.to_string(),
            subordinate: subordinate.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    vars: Vec<String>,
    coeffs: BTreeMap<ExponentVector, Q>,
    window: Window,
    support: Vec<Support>,
}

impl FormalSeries {
    pub fn zero(vars: &[&str], window: Window) -> Self {
        let n = vars.len();
        assert_eq!(n, window.nvars(), "window arity does not match variables");
        FormalSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            coeffs: BTreeMap::new(),
            window,
            support: vec![Support::Finite; n],
        }
    }

    /// Builds a series from terms; terms outside the window are dropped.
    pub fn from_terms(
        vars: &[&str],
        window: Window,
        support: Vec<Support>,
        terms: impl IntoIterator<Item = (ExponentVector, Q)>,
    ) -> Self {
        let mut s = FormalSeries::zero(vars, window);
        assert_eq!(support.len(), s.vars.len());
        s.support = support;
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// A Laurent polynomial; the window is the tight box around its terms.
    pub fn polynomial(vars: &[&str], terms: impl IntoIterator<Item = (ExponentVector, Q)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let n = vars.len();
        let bounds = (0..n)
            .map(|i| {
                let lo = terms.iter().map(|(e, _)| e[i]).min().unwrap_or(0);
                let hi = terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0);
                (lo, hi)
            })
            .collect();
        FormalSeries::from_terms(
            vars,
            Window { bounds },
            vec![Support::Finite; n],
            terms,
        )
    }

    /// The one-variable formal delta function `Σ_n x^n`, truncated to `[lo, hi]`.
    pub fn delta(var: &str, lo: i64, hi: i64) -> Self {
        FormalSeries::from_terms(
            &[var],
            Window::cube(1, lo, hi),
            vec![Support::DoublyInfinite],
            (lo..=hi).map(|n| (vec![n], Q::one())),
        )
    }

    fn add_term(&mut self, e: ExponentVector, c: Q) {
        if c.is_zero() || !self.window.contains(&e) {
            return;
        }
        let entry = self.coeffs.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn support(&self) -> &[Support] {
        &self.support
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, e: &[i64]) -> Q {
        self.coeffs.get(e).cloned().unwrap_or_else(Q::zero)
    }

    fn var_index(&self, name: &str) -> Result<usize, FormalError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| FormalError::UnknownVariable(name.to_string()))
    }

    /// Coefficient lookup by variable name; unspecified variables have exponent 0.
    pub fn coeff_named(&self, exps: &[(&str, i64)]) -> Result<Q, FormalError> {
        let mut e = vec![0; self.vars.len()];
        for (name, k) in exps {
            e[self.var_index(name)?] = *k;
        }
        Ok(self.coeff(&e))
    }

    /// Same series, restricted to a smaller window.
    pub fn restrict(&self, w: &Window) -> FormalSeries {
        let window = self.window.intersect(w).unwrap_or_else(|| w.clone());
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| window.contains(e))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        FormalSeries {
            vars: self.vars.clone(),
            coeffs,
            window,
            support: self.support.clone(),
        }
    }

    fn check_vars(&self, other: &FormalSeries) -> Result<(), FormalError> {
        if self.vars != other.vars {
            Err(FormalError::VariableMismatch)
        } else {
            Ok(())
        }
    }

    fn combine(&self, other: &FormalSeries, scale: Q) -> Result<FormalSeries, FormalError> {
        self.check_vars(other)?;
        let window = self
            .window
            .intersect(&other.window)
            .ok_or_else(|| FormalError::InvalidWindow("disjoint windows".into()))?;
        let support = self
            .support
            .iter()
            .zip(&other.support)
            .map(|(a, b)| (*a).max(*b))
            .collect();
        let mut out = FormalSeries {
            vars: self.vars.clone(),
            coeffs: BTreeMap::new(),
            window,
            support,
        };
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), c * &scale);
        }
        Ok(out)
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries, FormalError> {
        self.combine(other, Q::one())
    }

    pub fn sub(&self, other: &FormalSeries) -> Result<FormalSeries, FormalError> {
        self.combine(other, -Q::one())
    }

    pub fn scale(&self, c: &Q) -> FormalSeries {
        let mut out = self.clone();
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// `(min, max)` of stored exponents in variable `i`.
    fn extent(&self, i: usize) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().map(|e| e[i]).min()?;
        let hi = self.coeffs.keys().map(|e| e[i]).max()?;
        Some((lo, hi))
    }
}

/// Range of product exponents (in one variable) whose coefficient is fully
/// determined by the stored terms of both factors.
fn exact_range(
    a: &FormalSeries,
    b: &FormalSeries,
    i: usize,
) -> Result<(Option<i64>, Option<i64>, Support), FormalError> {
    use Support::*;
    let (sa, sb) = (a.support[i], b.support[i]);
    let (wa, wb) = (a.window.bounds[i], b.window.bounds[i]);
    match (sa, sb) {
        (Finite, Finite) => Ok((None, None, Finite)),
        (Finite, _) | (_, Finite) => {
            let (fin, other, wo, so) = if sa == Finite { (a, b, wb, sb) } else { (b, a, wa, sa) };
            let _ = other;
            let Some((fmin, fmax)) = fin.extent(i) else {
                return Ok((None, None, Finite));
            };
            match so {
                LowerTruncated => Ok((None, Some(wo.1 + fmin), LowerTruncated)),
                DoublyInfinite => Ok((Some(wo.0 + fmax), Some(wo.1 + fmin), DoublyInfinite)),
                Finite => unreachable!(),
            }
        }
        (LowerTruncated, LowerTruncated) => {
            Ok((None, Some((wa.1 + wb.0).min(wb.1 + wa.0)), LowerTruncated))
        }
        _ => Err(FormalError::IllDefinedProduct(a.vars[i].clone())),
    }
}

/// Product of two series, restricted to `w` and further clipped to the
/// exponents whose coefficients are exact.
pub fn series_multiply(
    a: &FormalSeries,
    b: &FormalSeries,
    w: &Window,
) -> Result<FormalSeries, FormalError> {
    a.check_vars(b)?;
    let n = a.vars.len();
    if w.nvars() != n {
        return Err(FormalError::InvalidWindow("window arity".into()));
    }
    let mut bounds = Vec::with_capacity(n);
    let mut support = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi, s) = exact_range(a, b, i)?;
        let (wlo, whi) = w.bounds[i];
        bounds.push((lo.map_or(wlo, |l| l.max(wlo)), hi.map_or(whi, |h| h.min(whi))));
        support.push(s);
    }
    let vars: Vec<&str> = a.vars.iter().map(|s| s.as_str()).collect();
    let mut out = FormalSeries::zero(&vars, w.clone());
    out.support = support;
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(FormalError::InvalidWindow(
            "no coefficient in the requested window is determined by the factors".into(),
        ));
    }
    out.window = Window { bounds };
    let mut acc: BTreeMap<ExponentVector, Q> = BTreeMap::new();
    for (ea, ca) in &a.coeffs {
        for (eb, cb) in &b.coeffs {
            let e: ExponentVector = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if out.window.contains(&e) {
                *acc.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    out.coeffs = acc;
    Ok(out)
}

/// Expands `(x_i - x_j)^n` in nonnegative powers of `dir.subordinate`,
/// as a series in `vars` restricted to `w`.
pub fn binomial_expand(
    vars: &[&str],
    x_i: &str,
    x_j: &str,
    n: i64,
    dir: &ExpansionDirection,
    w: &Window,
) -> Result<FormalSeries, FormalError> {
    signed_binomial(vars, (x_i, 1), (x_j, -1), n, dir, w)
}

/// Expands `(s_a x_a + s_b x_b)^n` with the given direction; signs are ±1.
pub fn signed_binomial(
    vars: &[&str],
    (x_a, s_a): (&str, i64),
    (x_b, s_b): (&str, i64),
    n: i64,
    dir: &ExpansionDirection,
    w: &Window,
) -> Result<FormalSeries, FormalError> {
    let idx = |name: &str| {
        vars.iter()
            .position(|v| *v == name)
            .ok_or_else(|| FormalError::UnknownVariable(name.to_string()))
    };
    let (ia, ib) = (idx(x_a)?, idx(x_b)?);
    let ((dom, sd), (sub, ss)) = if dir.subordinate == x_b && dir.dominant == x_a {
        ((ia, s_a), (ib, s_b))
    } else if dir.subordinate == x_a && dir.dominant == x_b {
        ((ib, s_b), (ia, s_a))
    } else {
        return Err(FormalError::BadDirection);
    };
    let mut support = vec![Support::Finite; vars.len()];
    if n < 0 {
        support[sub] = Support::LowerTruncated;
        support[dom] = Support::DoublyInfinite;
    }
    let (sub_lo, sub_hi) = w.bounds()[sub];
    let kmax = if n >= 0 { n.min(sub_hi) } else { sub_hi };
    let mut terms = Vec::new();
    for k in sub_lo.max(0)..=kmax {
        let mut e = vec![0; vars.len()];
        e[dom] = n - k;
        e[sub] = k;
        let c = binomial(n, k) * pow_q(&q(sd), n - k) * pow_q(&q(ss), k);
        terms.push((e, c));
    }
    Ok(FormalSeries::from_terms(vars, w.clone(), support, terms))
}

/// A delta term `(s_p x_d)^{-1} δ((s_a x_a + s_b x_b) / (s_d x_d))`
/// in the variables `(x0, x1, x2)`; `x_b` is subordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub denominator: usize,
    pub prefactor_sign: i64,
    pub denominator_sign: i64,
    pub first: (usize, i64),
    pub second: (usize, i64),
}

pub const DELTA_VARS: [&str; 3] = ["x0", "x1", "x2"];

/// The four delta patterns that appear in the two- and three-term identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaPattern {
    /// `x1^{-1} δ((x2 + x0)/x1)`
    X2PlusX0OverX1,
    /// `x2^{-1} δ((x1 - x0)/x2)`
    X1MinusX0OverX2,
    /// `x0^{-1} δ((x1 - x2)/x0)`
    X1MinusX2OverX0,
    /// `x0^{-1} δ((x2 - x1)/(-x0))`
    X2MinusX1OverMinusX0,
}

impl DeltaPattern {
    pub fn term(self) -> DeltaTerm {
        match self {
            DeltaPattern::X2PlusX0OverX1 => DeltaTerm {
                denominator: 1,
                prefactor_sign: 1,
                denominator_sign: 1,
                first: (2, 1),
                second: (0, 1),
            },
            DeltaPattern::X1MinusX0OverX2 => DeltaTerm {
                denominator: 2,
                prefactor_sign: 1,
                denominator_sign: 1,
                first: (1, 1),
                second: (0, -1),
            },
            DeltaPattern::X1MinusX2OverX0 => DeltaTerm {
                denominator: 0,
                prefactor_sign: 1,
                denominator_sign: 1,
                first: (1, 1),
                second: (2, -1),
            },
            DeltaPattern::X2MinusX1OverMinusX0 => DeltaTerm {
                denominator: 0,
                prefactor_sign: 1,
                denominator_sign: -1,
                first: (2, 1),
                second: (1, -1),
            },
        }
    }
}

impl DeltaTerm {
    /// Coefficient of `x0^e0 x1^e1 x2^e2`.
    pub fn coeff(&self, e: &[i64]) -> Q {
        let n = -e[self.denominator] - 1;
        let k = e[self.second.0];
        if k < 0 || e[self.first.0] != n - k {
            return Q::zero();
        }
        binomial(n, k)
            * pow_q(&q(self.prefactor_sign), -1)
            * pow_q(&q(self.denominator_sign), -n)
            * pow_q(&q(self.first.1), n - k)
            * pow_q(&q(self.second.1), k)
    }
}

/// Expansion of a delta pattern over `(x0, x1, x2)` restricted to `w`.
pub fn delta_expansion(pattern: DeltaPattern, w: &Window) -> FormalSeries {
    let t = pattern.term();
    let (d, b) = (t.denominator, t.second.0);
    let a = t.first.0;
    let mut terms = Vec::new();
    let bnd = w.bounds();
    for ed in bnd[d].0..=bnd[d].1 {
        for eb in bnd[b].0.max(0)..=bnd[b].1 {
            let n = -ed - 1;
            let mut e = vec![0; 3];
            e[d] = ed;
            e[b] = eb;
            e[a] = n - eb;
            let c = t.coeff(&e);
            terms.push((e, c));
        }
    }
    FormalSeries::from_terms(
        &DELTA_VARS,
        w.clone(),
        vec![Support::DoublyInfinite; 3],
        terms,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeltaIdentity {
    /// `f(x) δ(x) = f(1) δ(x)` for a one-variable Laurent polynomial `f`.
    Fundamental(FormalSeries),
    TwoTerm,
    ThreeTerm,
}

impl fmt::Display for DeltaIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaIdentity::Fundamental(_) => "delta-fundamental",
            DeltaIdentity::TwoTerm => "delta-two-term",
            DeltaIdentity::ThreeTerm => "delta-three-term",
        })
    }
}

fn window_label(w: &Window) -> String {
    w.bounds()
        .iter()
        .map(|(lo, hi)| format!("[{lo},{hi}]"))
        .collect::<Vec<_>>()
        .join("x")
}

fn compare_series(report: &mut VerificationReport, lhs: &FormalSeries, rhs: &FormalSeries, w: &Window) {
    for e in w.points() {
        report.checked += 1;
        report.compare(&e, "coeff", lhs.coeff(&e), rhs.coeff(&e));
    }
}

/// Checks a delta-function identity coefficientwise on `w`.
pub fn check_delta_identity(id: &DeltaIdentity, w: &Window) -> Result<VerificationReport, FormalError> {
    let mut report = VerificationReport::new(id.to_string(), format!("window={}", window_label(w)));
    match id {
        DeltaIdentity::Fundamental(f) => {
            if f.vars().len() != 1 || w.nvars() != 1 {
                return Err(FormalError::VariableMismatch);
            }
            let var = f.vars()[0].clone();
            let (lo, hi) = w.bounds()[0];
            let (fmin, fmax) = f.extent(0).unwrap_or((0, 0));
            // Enlarge the delta window so every coefficient in `w` is exact.
            let delta = FormalSeries::delta(&var, lo - fmax, hi - fmin);
            let lhs = series_multiply(f, &delta, w)?;
            let f_at_one: Q = f.terms().map(|(_, c)| c.clone()).sum();
            let rhs = FormalSeries::delta(&var, lo, hi).scale(&f_at_one);
            compare_series(&mut report, &lhs, &rhs, w);
        }
        DeltaIdentity::TwoTerm => {
            let lhs = delta_expansion(DeltaPattern::X2PlusX0OverX1, w);
            let rhs = delta_expansion(DeltaPattern::X1MinusX0OverX2, w);
            compare_series(&mut report, &lhs, &rhs, w);
        }
        DeltaIdentity::ThreeTerm => return check_three_term(-1, w),
    }
    Ok(report)
}

/// Three-term identity with a configurable sign on the second delta term;
/// the true identity has `middle_sign = -1`.
pub fn check_three_term(middle_sign: i64, w: &Window) -> Result<VerificationReport, FormalError> {
    let mut report = VerificationReport::new(
        DeltaIdentity::ThreeTerm.to_string(),
        format!("window={},sign={middle_sign}", window_label(w)),
    );
    let a = delta_expansion(DeltaPattern::X1MinusX2OverX0, w);
    let b = delta_expansion(DeltaPattern::X2MinusX1OverMinusX0, w);
    let lhs = a.add(&b.scale(&q(middle_sign)))?;
    let rhs = delta_expansion(DeltaPattern::X1MinusX0OverX2, w);
    compare_series(&mut report, &lhs, &rhs, w);
    Ok(report)
}

/// Coefficient of `v^{-1}`, as a series in the remaining variables.
pub fn residue(s: &FormalSeries, v: &str) -> Result<FormalSeries, FormalError> {
    let i = s.var_index(v)?;
    let drop = |xs: &[i64]| -> Vec<i64> {
        xs.iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, x)| *x)
            .collect()
    };
    let vars: Vec<&str> = s
        .vars
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, v)| v.as_str())
        .collect();
    let bounds: Vec<_> = s
        .window
        .bounds
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, b)| *b)
        .collect();
    let support: Vec<_> = s
        .support
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, b)| *b)
        .collect();
    let terms = s
        .coeffs
        .iter()
        .filter(|(e, _)| e[i] == -1)
        .map(|(e, c)| (drop(e), c.clone()));
    Ok(FormalSeries::from_terms(&vars, Window { bounds }, support, terms))
}
