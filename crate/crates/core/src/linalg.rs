//! Exact Gaussian elimination over the rationals.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::rational::Q;

/// Outcome of adding one equation to an [`Echelon`] system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOutcome {
    /// The equation raised the rank.
    Independent,
    /// The equation follows from earlier ones.
    Redundant,
    /// The equation contradicts earlier ones.
    Inconsistent,
}

/// A linear system `A x = b` kept in reduced row-echelon form with sparse rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    /// `(pivot column, coefficients, right-hand side)`, pivot normalized to 1.
    rows: Vec<(usize, BTreeMap<usize, Q>, Q)>,
    pivot_row: HashMap<usize, usize>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
            inconsistent: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn add_row(&mut self, row: Vec<Q>, rhs: Q) -> RowOutcome {
        assert_eq!(row.len(), self.ncols);
        let sparse = row
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        self.add_sparse(sparse, rhs)
    }

    pub fn add_sparse(&mut self, mut row: BTreeMap<usize, Q>, mut rhs: Q) -> RowOutcome {
        row.retain(|_, x| !x.is_zero());
        let hits: Vec<(usize, Q)> = row
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|&r| (r, x.clone())))
            .collect();
        for (r, f) in hits {
            let (_, prow, b) = &self.rows[r];
            for (c, y) in prow {
                let e = row.entry(*c).or_insert_with(Q::zero);
                *e -= &f * y;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            rhs -= &f * b;
        }
        let Some((&p, _)) = row.iter().next() else {
            if rhs.is_zero() {
                return RowOutcome::Redundant;
            }
            self.inconsistent = true;
            return RowOutcome::Inconsistent;
        };
        let inv = row[&p].recip();
        for x in row.values_mut() {
            *x *= &inv;
        }
        rhs *= &inv;
        // keep earlier rows free of the new pivot column
        for (_, r, b) in self.rows.iter_mut() {
            let Some(f) = r.get(&p).cloned() else { continue };
            for (c, y) in &row {
                let e = r.entry(*c).or_insert_with(Q::zero);
                *e -= &f * y;
                if e.is_zero() {
                    r.remove(c);
                }
            }
            *b -= &f * &rhs;
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push((p, row, rhs));
        RowOutcome::Independent
    }

    /// The unique solution, or `None` when inconsistent or underdetermined.
    pub fn solve(&self) -> Option<Vec<Q>> {
        if self.inconsistent || self.rows.len() < self.ncols {
            return None;
        }
        let mut x = vec![Q::zero(); self.ncols];
        for (p, _, b) in &self.rows {
            x[*p] = b.clone();
        }
        Some(x)
    }
}

/// Determinant of a square matrix.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves `m x = b` for a nonsingular square `m`.
pub fn solve_square(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let mut e = Echelon::new(m.len());
    for (row, rhs) in m.iter().zip(b) {
        e.add_row(row.clone(), rhs.clone());
    }
    e.solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn solves_and_detects() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(determinant(&m), q(5));
        assert_eq!(solve_square(&m, &[q(3), q(4)]), Some(vec![q(1), q(1)]));
        let mut e = Echelon::new(2);
        assert_eq!(e.add_row(vec![q(1), q(1)], q(1)), RowOutcome::Independent);
        assert_eq!(e.add_row(vec![q(2), q(2)], q(2)), RowOutcome::Redundant);
        assert_eq!(e.solve(), None);
        assert_eq!(e.add_row(vec![q(1), q(1)], q(0)), RowOutcome::Inconsistent);
    }
}
