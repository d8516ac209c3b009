use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::partition::Partition;
use crate::rational::Q;

/// Finite linear combination of partition-labelled basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct GradedVector {
    coeffs: BTreeMap<Partition, Q>,
}

impl GradedVector {
    pub fn zero() -> Self {
        GradedVector::default()
    }

    pub fn basis(p: Partition) -> Self {
        Self::term(p, Q::one())
    }

    pub fn term(p: Partition, c: Q) -> Self {
        let mut v = GradedVector::zero();
        v.add_term(p, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut v = GradedVector::zero();
        for (p, c) in terms {
            v.add_term(p, c);
        }
        v
    }

    pub fn add_term(&mut self, p: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (p, x) in &other.coeffs {
            self.add_term(p.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &GradedVector) {
        self.add_scaled(other, &Q::one());
    }

    pub fn plus(&self, other: &GradedVector) -> GradedVector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    pub fn minus(&self, other: &GradedVector) -> GradedVector {
        let mut v = self.clone();
        v.add_scaled(other, &-Q::one());
        v
    }

    pub fn scale(&self, c: &Q) -> GradedVector {
        let mut v = GradedVector::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> Q {
        self.coeffs.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest weight present, `None` for the zero vector.
    pub fn max_weight(&self) -> Option<usize> {
        self.coeffs.keys().map(Partition::weight).max()
    }

    /// The weight if every term has the same weight.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut ws = self.coeffs.keys().map(Partition::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Weight-`n` component.
    pub fn component(&self, n: usize) -> GradedVector {
        GradedVector {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(p, _)| p.weight() == n)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous components, lowest weight first.
    pub fn components(&self) -> Vec<(usize, GradedVector)> {
        let mut by_weight: BTreeMap<usize, GradedVector> = BTreeMap::new();
        for (p, c) in &self.coeffs {
            by_weight
                .entry(p.weight())
                .or_default()
                .add_term(p.clone(), c.clone());
        }
        by_weight.into_iter().collect()
    }

    /// Drops components above weight `level`; the flag reports whether anything was dropped.
    pub fn truncate(&self, level: usize) -> (GradedVector, bool) {
        let kept: BTreeMap<_, _> = self
            .coeffs
            .iter()
            .filter(|(p, _)| p.weight() <= level)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        let overflow = kept.len() != self.coeffs.len();
        (GradedVector { coeffs: kept }, overflow)
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "({c}){p}")?;
            }
        }
        Ok(())
    }
}

/// Vector-valued Laurent series in one variable: exponent → coefficient.
pub type VectorSeries = BTreeMap<i64, GradedVector>;
