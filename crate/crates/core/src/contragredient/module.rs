use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num::Zero;

use crate::rational::{factorial, sign, Q};
use crate::voa::{GradedVector, Partition, VOAInstance, VectorSeries, VertexModule};

/// `e^{xL(1)} (-x^{-2})^{L(0)} v` as a finite polynomial in `x^{±1}`.
pub fn conjugate_vector(alg: &VOAInstance, v: &GradedVector) -> VectorSeries {
    let mut out: BTreeMap<i64, GradedVector> = BTreeMap::new();
    for (d, vh) in v.components() {
        let d = d as i64;
        let mut power = vh.scale(&sign(d));
        for i in 0..=d {
            if power.is_zero() {
                break;
            }
            let term = power.scale(&factorial(i as u32).recip());
            out.entry(i - 2 * d).or_default().add_assign(&term);
            power = alg.space().virasoro(1, &power);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

type Key = (Partition, i64, Partition);

/// The graded dual `W' = ⊕ W_(n)^*` with the adjoint vertex operators.
///
/// Vectors of `W'` are written in the dual basis, labelled by the same partitions
/// as the basis of `W`.
pub struct ContragredientModule<'a> {
    alg: &'a VOAInstance,
    base: &'a dyn VertexModule,
    cache: RwLock<HashMap<Key, GradedVector>>,
}

impl<'a> ContragredientModule<'a> {
    pub fn new(alg: &'a VOAInstance, base: &'a dyn VertexModule) -> Self {
        ContragredientModule {
            alg,
            base,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &dyn VertexModule {
        self.base
    }

    /// Computes `u'_n φ` from `⟨u'_n φ, w⟩ = ⟨φ, Σ_i (-1)^d/i! (L(1)^i u)_{2d-i-n-2} w⟩`.
    fn compute(&self, u: &Partition, n: i64, phi: &Partition) -> GradedVector {
        let d = u.weight() as i64;
        let out_level = d + phi.weight() as i64 - n - 1;
        if out_level < 0 {
            return GradedVector::zero();
        }
        let conj = conjugate_vector(self.alg, &GradedVector::basis(u.clone()));
        let mut out = GradedVector::zero();
        for w in self.base.basis(out_level as usize) {
            let wv = GradedVector::basis(w.clone());
            let mut c = Q::zero();
            for (e, y) in &conj {
                // x^e Y(y, x^{-1}) = Σ_m y_m x^{e+m+1}; match x^{-n-1}
                let m = -n - 2 - e;
                c += self.base.act(y, m, &wv).coeff(phi);
            }
            out.add_term(w, c);
        }
        out
    }

    /// Perturbs one stored adjoint structure constant.
    pub fn corrupt(&self, u: &Partition, n: i64, phi: &Partition, at: Partition, delta: Q) {
        let mut value = self.act_basis(u, n, phi);
        value.add_term(at, delta);
        self.cache
            .write()
            .expect("cache poisoned")
            .insert((u.clone(), n, phi.clone()), value);
    }
}

impl VertexModule for ContragredientModule<'_> {
    fn cap(&self) -> usize {
        self.base.cap()
    }

    fn describe(&self) -> String {
        format!("{}'", self.base.describe())
    }

    fn lowest_weight(&self) -> Q {
        self.base.lowest_weight()
    }

    fn basis(&self, level: usize) -> Vec<Partition> {
        self.base.basis(level)
    }

    fn act_basis(&self, u: &Partition, n: i64, phi: &Partition) -> GradedVector {
        let key = (u.clone(), n, phi.clone());
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = self.compute(u, n, phi);
        self.cache
            .write()
            .expect("cache poisoned")
            .entry(key)
            .or_insert_with(|| v.clone())
            .clone()
    }
}

/// Pairing `⟨φ, w⟩` between dual-basis and basis coordinates.
pub fn pair(phi: &GradedVector, w: &GradedVector) -> Q {
    phi.terms().map(|(p, c)| c * w.coeff(p)).sum()
}
