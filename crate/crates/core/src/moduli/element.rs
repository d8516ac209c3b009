//! Elements of `K(n) = M^{n-1} × H × H_c^n` in canonical form: `∞` carries a coordinate of
//! scale 1, the `n`-th positive puncture sits at 0, and for `n = 0` the `∞` coordinate has
//! `B_1 = 0`.

use std::fmt;

use num::{One, Zero};

use super::series::{compose, coordinate_series, flow_coefficients, flow_series};
use super::ModuliError;
use crate::rational::{fmt_cx, parse_cx, Cx};

/// `(a_0, A)`: the coordinate `x ↦ a_0 · exp(Σ_j A_j x^{j+1} d/dx) x` at a positive puncture.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalCoordinate {
    pub scale: Cx,
    pub a: Vec<Cx>,
}

impl LocalCoordinate {
    pub fn standard(scale: Cx, order: usize) -> Self {
        LocalCoordinate {
            scale,
            a: vec![Cx::zero(); order],
        }
    }

    /// `A = 0`: the coordinate is the affine map `w ↦ a_0 (w - z)`.
    pub fn is_affine(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn series(&self, order: usize) -> Vec<Cx> {
        coordinate_series(&self.scale, &self.a, order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliElement {
    pub order: usize,
    /// `z_1, …, z_{n-1}`; the `n`-th positive puncture is at 0.
    pub z: Vec<Cx>,
    /// `A^{(0)}` (or `B` for `n = 0`): the coordinate at `∞` is `w ↦ F(1/w)` with `F = exp(…) x`.
    pub infinity: Vec<Cx>,
    pub coords: Vec<LocalCoordinate>,
    /// Opaque determinant-line scalar, multiplied under sewing (trivial cocycle).
    pub det: Cx,
}

impl ModuliElement {
    /// Standard coordinates at every puncture, with the given positions and scales.
    pub fn standard(z: Vec<Cx>, scales: Vec<Cx>, order: usize) -> Result<Self, ModuliError> {
        let coords = scales.into_iter().map(|s| LocalCoordinate::standard(s, order)).collect();
        let e = ModuliElement {
            order,
            z,
            infinity: vec![Cx::zero(); order],
            coords,
            det: Cx::one(),
        };
        e.validate()?;
        Ok(e)
    }

    /// `I = (0, (1, 0)) ∈ K(1)`.
    pub fn identity(order: usize) -> Self {
        Self::scaling(Cx::one(), order)
    }

    /// `Q(a) = (0, (a, 0)) ∈ K(1)`.
    pub fn scaling(a: Cx, order: usize) -> Self {
        Self::standard(vec![], vec![a], order).expect("nonzero scale")
    }

    /// `P(z) ∈ K(2)`: punctures `z` and 0 with the standard coordinates.
    pub fn p(z: Cx, order: usize) -> Result<Self, ModuliError> {
        Self::standard(vec![z], vec![Cx::one(), Cx::one()], order)
    }

    /// `J ∈ K(0)`: the sphere with the standard coordinate `w ↦ 1/w` at `∞` only.
    pub fn j(order: usize) -> Self {
        ModuliElement {
            order,
            z: vec![],
            infinity: vec![Cx::zero(); order],
            coords: vec![],
            det: Cx::one(),
        }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    /// Positions of the positive punctures `1..=n` (the last is 0).
    pub fn positions(&self) -> Vec<Cx> {
        let mut p = self.z.clone();
        if self.arity() > 0 {
            p.push(Cx::zero());
        }
        p
    }

    /// All coordinates affine and the coordinate at `∞` exactly `1/w`.
    pub fn is_standard(&self) -> bool {
        self.infinity.iter().all(Zero::is_zero) && self.coords.iter().all(LocalCoordinate::is_affine)
    }

    /// The `∞` coordinate is `w ↦ 1/(w - t)`, i.e. `A^{(0)} = (t, 0, 0, …)`; returns `t`.
    pub fn infinity_pole(&self) -> Option<Cx> {
        if self.infinity.iter().skip(1).all(Zero::is_zero) {
            Some(self.infinity.first().cloned().unwrap_or_else(Cx::zero))
        } else {
            None
        }
    }

    pub fn validate(&self) -> Result<(), ModuliError> {
        let n = self.arity();
        let bad = |m: String| Err(ModuliError::InvalidElement(m));
        if self.order == 0 {
            return bad("truncation order must be at least 1".into());
        }
        if n > 0 && self.z.len() != n - 1 {
            return bad(format!("arity {n} needs {} puncture positions, got {}", n - 1, self.z.len()));
        }
        if n == 0 && !self.z.is_empty() {
            return bad("arity 0 has no puncture positions".into());
        }
        if self.infinity.len() != self.order || self.coords.iter().any(|c| c.a.len() != self.order) {
            return bad(format!("coefficient sequences must have length {}", self.order));
        }
        if self.coords.iter().any(|c| c.scale.is_zero()) {
            return bad("coordinate scales must be nonzero".into());
        }
        for (i, zi) in self.z.iter().enumerate() {
            if zi.is_zero() {
                return bad(format!("z_{} is zero", i + 1));
            }
            if self.z[..i].contains(zi) {
                return bad(format!("z_{} repeats an earlier puncture", i + 1));
            }
        }
        if n == 0 && !self.infinity[0].is_zero() {
            return bad("arity-0 elements need B_1 = 0".into());
        }
        Ok(())
    }

    /// Canonical form of a sphere given in an affine frame whose `∞` coordinate has scale 1:
    /// translates so the last puncture is at 0 (or, without punctures, so that `B_1 = 0`).
    pub(crate) fn normalize(
        order: usize,
        positions: Vec<Cx>,
        infinity: Vec<Cx>,
        coords: Vec<LocalCoordinate>,
        det: Cx,
    ) -> Self {
        let c = match positions.last() {
            Some(p) => p.clone(),
            None => infinity[0].clone(),
        };
        let infinity = if c.is_zero() {
            infinity
        } else {
            // in w' = w - c: 1/w = x/(1 + c x) with x = 1/w'
            let f = flow_series(&infinity, order + 1);
            let shift = flow_series(&[-c.clone()], order + 1);
            flow_coefficients(&compose(&f, &shift, order + 1), order + 1)
        };
        let mut z: Vec<Cx> = positions.iter().map(|p| p - &c).collect();
        z.pop();
        ModuliElement {
            order,
            z,
            infinity,
            coords,
            det,
        }
    }

    /// The left action `σ(Q)`: old puncture `k` becomes puncture `σ(k)` (1-based images).
    pub fn permute(&self, sigma: &[usize]) -> Result<Self, ModuliError> {
        let n = self.arity();
        let mut seen = vec![false; n];
        if sigma.len() != n || sigma.iter().any(|&s| s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true)) {
            return Err(ModuliError::BadIndex(format!("{sigma:?} is not a permutation of 1..={n}")));
        }
        let old_pos = self.positions();
        let mut pos = vec![Cx::zero(); n];
        let mut coords = self.coords.clone();
        for k in 0..n {
            pos[sigma[k] - 1] = old_pos[k].clone();
            coords[sigma[k] - 1] = self.coords[k].clone();
        }
        Ok(Self::normalize(self.order, pos, self.infinity.clone(), coords, self.det.clone()))
    }

    /// Parses one element from the plain-text format (see [`parse_elements`]).
    pub fn parse(text: &str) -> Result<Self, ModuliError> {
        let mut all = parse_elements(text)?;
        match all.len() {
            1 => Ok(all.remove(0)),
            k => Err(ModuliError::Parse(0, format!("expected one element, found {k}"))),
        }
    }
}

fn parse_list(lineno: usize, s: &str, order: usize) -> Result<Vec<Cx>, ModuliError> {
    let mut out = s
        .split_whitespace()
        .map(|t| parse_cx(t).ok_or_else(|| ModuliError::Parse(lineno, format!("bad number `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if out.len() > order {
        return Err(ModuliError::Parse(lineno, format!("more than {order} coefficients")));
    }
    out.resize(order, Cx::zero());
    Ok(out)
}

/// Parses every element of a file:
///
/// ```text
/// arity 2
/// order 8
/// z: 2
/// coord 0: 0 0
/// coord 1: 1 ; 0 0
/// coord 2: (1,1) ;
/// ```
///
/// Numbers are exact rationals `p/q`, complex ones written `(re,im)`; omitted coordinates are
/// standard, omitted coefficients zero; `#` starts a comment; each `arity` line starts a new element.
pub fn parse_elements(text: &str) -> Result<Vec<ModuliElement>, ModuliError> {
    struct Draft {
        line: usize,
        arity: usize,
        order: Option<usize>,
        z: Option<(usize, String)>,
        infinity: Option<(usize, String)>,
        coords: Vec<(usize, usize, String)>,
        det: Option<(usize, String)>,
    }
    let mut drafts: Vec<Draft> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("arity") {
            let arity = rest
                .trim()
                .parse()
                .map_err(|_| ModuliError::Parse(lineno, format!("bad arity `{}`", rest.trim())))?;
            drafts.push(Draft {
                line: lineno,
                arity,
                order: None,
                z: None,
                infinity: None,
                coords: vec![],
                det: None,
            });
            continue;
        }
        let d = drafts
            .last_mut()
            .ok_or_else(|| ModuliError::Parse(lineno, "expected `arity n` first".into()))?;
        if let Some(rest) = line.strip_prefix("order") {
            d.order = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| ModuliError::Parse(lineno, format!("bad order `{}`", rest.trim())))?,
            );
        } else if let Some(rest) = line.strip_prefix("z:") {
            d.z = Some((lineno, rest.to_string()));
        } else if let Some(rest) = line.strip_prefix("det:") {
            d.det = Some((lineno, rest.to_string()));
        } else if let Some(rest) = line.strip_prefix("coord") {
            let (idx, body) = rest
                .split_once(':')
                .ok_or_else(|| ModuliError::Parse(lineno, "expected `coord i: …`".into()))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| ModuliError::Parse(lineno, format!("bad coordinate index `{}`", idx.trim())))?;
            if idx == 0 {
                d.infinity = Some((lineno, body.to_string()));
            } else {
                d.coords.push((lineno, idx, body.to_string()));
            }
        } else {
            return Err(ModuliError::Parse(lineno, format!("unrecognised line `{line}`")));
        }
    }
    drafts
        .into_iter()
        .map(|d| {
            let order = d.order.ok_or_else(|| ModuliError::Parse(d.line, "missing `order`".into()))?;
            let z: Vec<Cx> = match &d.z {
                Some((l, s)) => s
                    .split_whitespace()
                    .map(|t| parse_cx(t).ok_or_else(|| ModuliError::Parse(*l, format!("bad number `{t}`"))))
                    .collect::<Result<_, _>>()?,
                None => vec![],
            };
            let infinity = match &d.infinity {
                Some((l, s)) => parse_list(*l, s, order)?,
                None => vec![Cx::zero(); order],
            };
            let mut coords = vec![LocalCoordinate::standard(Cx::one(), order); d.arity];
            for (l, idx, body) in &d.coords {
                if *idx > d.arity {
                    return Err(ModuliError::Parse(*l, format!("coordinate {idx} exceeds arity {}", d.arity)));
                }
                let (scale, a) = body.split_once(';').unwrap_or((body.as_str(), ""));
                let scale = parse_cx(scale).ok_or_else(|| ModuliError::Parse(*l, format!("bad scale `{}`", scale.trim())))?;
                coords[idx - 1] = LocalCoordinate {
                    scale,
                    a: parse_list(*l, a, order)?,
                };
            }
            let det = match &d.det {
                Some((l, s)) => parse_cx(s).ok_or_else(|| ModuliError::Parse(*l, format!("bad scalar `{}`", s.trim())))?,
                None => Cx::one(),
            };
            let e = ModuliElement {
                order,
                z,
                infinity,
                coords,
                det,
            };
            e.validate()?;
            Ok(e)
        })
        .collect()
}

impl fmt::Display for ModuliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Cx]| v.iter().map(fmt_cx).collect::<Vec<_>>().join(" ");
        writeln!(f, "arity {}", self.arity())?;
        writeln!(f, "order {}", self.order)?;
        if !self.z.is_empty() {
            writeln!(f, "z: {}", list(&self.z))?;
        }
        writeln!(f, "coord 0: {}", list(&self.infinity))?;
        for (i, c) in self.coords.iter().enumerate() {
            writeln!(f, "coord {}: {} ; {}", i + 1, fmt_cx(&c.scale), list(&c.a))?;
        }
        if !self.det.is_one() {
            writeln!(f, "det: {}", fmt_cx(&self.det))?;
        }
        Ok(())
    }
}
