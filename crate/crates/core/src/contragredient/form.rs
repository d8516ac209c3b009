//! Invariant bilinear forms, found by solving the invariance constraints block by block.

use std::collections::BTreeMap;

use num::Zero;
use rayon::prelude::*;

use super::module::conjugate_vector;
use super::ContragredientError;
use crate::linalg::{determinant, Echelon};
use crate::rational::Q;
use crate::voa::{partitions_up_to, GradedVector, Partition, VOAInstance, VertexModule};

/// A weight-block-diagonal bilinear form on a truncated module.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    /// `blocks[l][i][j] = (b_i, b_j)` for the level-`l` basis `b`.
    pub blocks: Vec<Vec<Vec<Q>>>,
    pub bases: Vec<Vec<Partition>>,
    pub symmetric: bool,
}

impl BilinearForm {
    pub fn level(&self) -> usize {
        self.blocks.len().saturating_sub(1)
    }

    fn index(&self, p: &Partition) -> Option<(usize, usize)> {
        let l = p.weight();
        let i = self.bases.get(l)?.iter().position(|b| b == p)?;
        Some((l, i))
    }

    /// `(a, b)`; distinct weights pair to zero.
    pub fn pair(&self, a: &GradedVector, b: &GradedVector) -> Q {
        let mut acc = Q::zero();
        for (pa, ca) in a.terms() {
            for (pb, cb) in b.terms() {
                if pa.weight() != pb.weight() {
                    continue;
                }
                if let (Some((l, i)), Some((_, j))) = (self.index(pa), self.index(pb)) {
                    acc += ca * cb * &self.blocks[l][i][j];
                }
            }
        }
        acc
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.blocks.iter().all(|m| !determinant(m).is_zero())
    }
}

/// Builds the form with `(1,1) = normalization` on the level-0 vector and
/// `(v_n w1, w2) = (w1, Y(e^{xL(1)}(-x^{-2})^{L(0)}v, x^{-1})` coefficient `w2)` for every
/// algebra basis vector `v` of weight at most 2.
pub fn build_invariant_form(
    alg: &VOAInstance,
    module: &dyn VertexModule,
    normalization: &Q,
) -> Result<BilinearForm, ContragredientError> {
    let cap = module.cap();
    let bases: Vec<Vec<Partition>> = (0..=cap).map(|l| module.basis(l)).collect();
    let mut offsets = Vec::with_capacity(cap + 1);
    let mut total = 0;
    for b in &bases {
        offsets.push(total);
        total += b.len() * b.len();
    }
    let var = |l: usize, i: usize, j: usize| offsets[l] + i * bases[l].len() + j;
    let pos = |p: &Partition| bases[p.weight()].iter().position(|b| b == p).expect("basis label");

    let generators = partitions_up_to(2);
    let mut jobs = Vec::new();
    for g in &generators {
        let d = g.weight() as i64;
        for l1 in 0..=cap as i64 {
            for l2 in 0..=cap as i64 {
                jobs.push((g.clone(), l1, d + l1 - l2 - 1));
            }
        }
    }
    // Each job yields the equations for one (v, n, level of w1); order is fixed by `jobs`.
    let rows: Vec<Vec<BTreeMap<usize, Q>>> = jobs
        .par_iter()
        .map(|(g, l1, n)| {
            let gv = GradedVector::basis(g.clone());
            let conj = conjugate_vector(alg, &gv);
            let l2 = (g.weight() as i64 + l1 - n - 1) as usize;
            let l1 = *l1 as usize;
            let mut eqs = Vec::new();
            for (i1, w1) in bases[l1].iter().enumerate() {
                let image = module.act(&gv, *n, &GradedVector::basis(w1.clone()));
                for (j2, w2) in bases[l2].iter().enumerate() {
                    let mut adj = GradedVector::zero();
                    for (e, y) in &conj {
                        adj.add_assign(&module.act(y, -n - 2 - e, &GradedVector::basis(w2.clone())));
                    }
                    let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                    for (b, c) in image.terms() {
                        *row.entry(var(l2, pos(b), j2)).or_insert_with(Q::zero) += c;
                    }
                    for (a, c) in adj.terms() {
                        *row.entry(var(l1, i1, pos(a))).or_insert_with(Q::zero) -= c;
                    }
                    row.retain(|_, c| !c.is_zero());
                    if !row.is_empty() {
                        eqs.push(row);
                    }
                }
            }
            eqs
        })
        .collect();

    let mut system = Echelon::new(total);
    let mut norm = BTreeMap::new();
    norm.insert(var(0, 0, 0), Q::from_integer(1.into()));
    system.add_sparse(norm, normalization.clone());
    for row in rows.into_iter().flatten() {
        system.add_sparse(row, Q::zero());
    }
    if system.is_inconsistent() {
        return Err(ContragredientError::NotSelfDual(
            "invariance constraints are inconsistent with the normalization".into(),
        ));
    }
    let Some(x) = system.solve() else {
        return Err(ContragredientError::NotSelfDual(format!(
            "invariance constraints leave {} of {} entries undetermined",
            total - system.rank(),
            total
        )));
    };
    let blocks: Vec<Vec<Vec<Q>>> = bases
        .iter()
        .enumerate()
        .map(|(l, b)| {
            (0..b.len())
                .map(|i| (0..b.len()).map(|j| x[var(l, i, j)].clone()).collect())
                .collect()
        })
        .collect();
    let symmetric = blocks.iter().all(|m| {
        (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
    });
    let form = BilinearForm {
        blocks,
        bases,
        symmetric,
    };
    if !form.is_nondegenerate() {
        return Err(ContragredientError::NotSelfDual("form is degenerate".into()));
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use crate::voa::{build_fock_module, build_heisenberg, monomial, vacuum};

    #[test]
    fn heisenberg_form() {
        let v = build_heisenberg(4);
        let f = build_invariant_form(&v, &v, &q(1)).unwrap();
        assert_eq!(f.pair(&vacuum(), &vacuum()), q(1));
        assert_eq!(f.pair(&monomial(&[1]), &monomial(&[1])), q(-1));
        assert_eq!(f.pair(v.omega(), v.omega()), q_frac(1, 2));
        assert!(f.symmetric);
        assert!(f.is_nondegenerate());
        assert!(f.pair(&monomial(&[2]), &monomial(&[1, 1])).is_zero());
    }

    #[test]
    fn charged_fock_module_is_not_self_dual() {
        let v = build_heisenberg(3);
        let m = build_fock_module(3, q(1));
        assert!(matches!(
            build_invariant_form(&v, &m, &q(1)),
            Err(ContragredientError::NotSelfDual(_))
        ));
    }
}
