//! Rank-one Heisenberg Fock space `M(λ)` with the normal-ordered vertex operators.
//!
//! `α(0)` acts by the momentum `λ`; the vertex operator algebra itself is
//! `M(0)`. Structure constants are exact at every weight; callers truncate.

use std::collections::HashMap;
use std::sync::RwLock;

use num::Zero;

use super::partition::Partition;
use super::vector::GradedVector;
use super::VertexModule;
use crate::rational::{binomial, Q};

type Key = (Partition, i64, Partition);

#[derive(Debug)]
pub struct FockSpace {
    momentum: Q,
    cap: usize,
    cache: RwLock<HashMap<Key, GradedVector>>,
}

impl Clone for FockSpace {
    fn clone(&self) -> Self {
        FockSpace {
            momentum: self.momentum.clone(),
            cap: self.cap,
            cache: RwLock::new(self.cache.read().expect("cache poisoned").clone()),
        }
    }
}

impl FockSpace {
    pub fn new(momentum: Q, cap: usize) -> Self {
        FockSpace {
            momentum,
            cap,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn momentum(&self) -> &Q {
        &self.momentum
    }

    /// Heisenberg generator `α(m)` applied to a vector.
    pub fn alpha(&self, m: i64, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (p, c) in v.terms() {
            self.alpha_basis(m, p, c, &mut out);
        }
        out
    }

    fn alpha_basis(&self, m: i64, p: &Partition, c: &Q, out: &mut GradedVector) {
        match m {
            0 => out.add_term(p.clone(), c * &self.momentum),
            m if m < 0 => out.add_term(p.with((-m) as u32), c.clone()),
            m => {
                let mult = p.multiplicity(m as u32);
                if mult > 0 {
                    let factor = Q::from_integer((m * mult as i64).into());
                    out.add_term(p.without(m as u32).expect("part present"), c * factor);
                }
            }
        }
    }

    /// `u_n w` for basis labels, computed from scratch.
    pub fn compute_basis_mode(&self, u: &Partition, n: i64, w: &Partition) -> GradedVector {
        let k = u.len();
        if k == 0 {
            return if n == -1 {
                GradedVector::basis(w.clone())
            } else {
                GradedVector::zero()
            };
        }
        // Y(u,x) = :∏ ∂^{(n_i-1)}α(x):, with ∂^{(j)}α(x) = Σ_m C(-m-1, j) α(m) x^{-m-1-j};
        // the x^{-n-1} coefficient collects tuples (m_i) with Σ m_i = n + 1 - wt u.
        let target = n + 1 - u.weight() as i64;
        let lw = w.weight() as i64;
        let lo = (target - lw).min(0);
        let hi = lw;
        let mut out = GradedVector::zero();
        let mut ms = Vec::with_capacity(k);
        self.enumerate(u.parts(), target, lo, hi, lw, &mut ms, w, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        parts: &[u32],
        rest: i64,
        lo: i64,
        hi: i64,
        budget: i64,
        ms: &mut Vec<i64>,
        w: &Partition,
        out: &mut GradedVector,
    ) {
        let left = (parts.len() - ms.len()) as i64;
        if left == 0 {
            if rest == 0 {
                self.apply_tuple(parts, ms, w, out);
            }
            return;
        }
        for m in lo..=hi {
            if m > 0 && m > budget {
                break;
            }
            if m == 0 && self.momentum.is_zero() {
                continue;
            }
            let r = rest - m;
            if r < (left - 1) * lo || r > (left - 1) * hi {
                continue;
            }
            ms.push(m);
            self.enumerate(parts, r, lo, hi, budget - m.max(0), ms, w, out);
            ms.pop();
        }
    }

    fn apply_tuple(&self, parts: &[u32], ms: &[i64], w: &Partition, out: &mut GradedVector) {
        let mut coeff = Q::from_integer(1.into());
        for (&p, &m) in parts.iter().zip(ms) {
            coeff *= binomial(-m - 1, p as i64 - 1);
            if coeff.is_zero() {
                return;
            }
        }
        let mut state = GradedVector::term(w.clone(), coeff);
        // annihilators (and α(0)) to the right
        for &m in ms.iter().filter(|&&m| m >= 0) {
            state = self.alpha(m, &state);
            if state.is_zero() {
                return;
            }
        }
        for &m in ms.iter().filter(|&&m| m < 0) {
            state = self.alpha(m, &state);
        }
        out.add_assign(&state);
    }

    /// Perturbs one memoized structure constant: component `at` of `u_n w` moves by `delta`.
    pub fn corrupt(&self, u: &Partition, n: i64, w: &Partition, at: Partition, delta: Q) {
        let mut value = self.act_basis(u, n, w);
        value.add_term(at, delta);
        self.cache
            .write()
            .expect("cache poisoned")
            .insert((u.clone(), n, w.clone()), value);
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }
}

impl VertexModule for FockSpace {
    fn cap(&self) -> usize {
        self.cap
    }

    fn describe(&self) -> String {
        format!("M({})", self.momentum)
    }

    fn act_basis(&self, u: &Partition, n: i64, w: &Partition) -> GradedVector {
        let key = (u.clone(), n, w.clone());
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = self.compute_basis_mode(u, n, w);
        // Idempotent: a concurrent writer stores the same value (or a deliberate corruption we keep).
        self.cache
            .write()
            .expect("cache poisoned")
            .entry(key)
            .or_insert_with(|| v.clone())
            .clone()
    }

    fn lowest_weight(&self) -> Q {
        &self.momentum * &self.momentum / Q::from_integer(2.into())
    }
}
