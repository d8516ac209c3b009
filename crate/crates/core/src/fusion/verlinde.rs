use rayon::prelude::*;

use super::tensor::{check_s3_symmetry, FusionTensor};
use super::FusionError;
use crate::rational::{q, Q};
use crate::report::VerificationReport;

/// The fusion algebra with basis `φ_i` and `φ_i φ_j = Σ_k N_{ij}^k φ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerlindeAlgebra {
    labels: Vec<String>,
    /// `table[i][j][k] = N_{ij}^k`
    table: Vec<Vec<Vec<u64>>>,
    /// Whether `φ_0` is a two-sided unit.
    pub unit: bool,
}

/// Builds the algebra after checking the permutation symmetry and the vacuum
/// channels `N_{00}^0 ≥ 1`, `N_{0i}^i ≥ 1`.
pub fn build_verlinde(t: &FusionTensor) -> Result<VerlindeAlgebra, FusionError> {
    let s3 = check_s3_symmetry(t);
    if !s3.passed() {
        let d = &s3.differences[0].exponent;
        return Err(FusionError::SymmetryViolation(format!(
            "N_ijk not symmetric at ({}, {}, {})",
            t.labels()[d[0] as usize],
            t.labels()[d[1] as usize],
            t.labels()[d[2] as usize]
        )));
    }
    let n = t.size();
    for i in 0..n {
        if t.get(0, i, i) == 0 {
            return Err(FusionError::VacuumChannel(t.labels()[i].clone()));
        }
    }
    let table: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| t.get(i, j, k)).collect()).collect())
        .collect();
    let unit = (0..n).all(|i| {
        (0..n).all(|j| {
            let d = u64::from(i == j);
            table[0][i][j] == d && table[i][0][j] == d
        })
    });
    Ok(VerlindeAlgebra {
        labels: t.labels().to_vec(),
        table,
        unit,
    })
}

impl VerlindeAlgebra {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[i][j][k]
    }

    /// Perturbs one structure constant (negative controls).
    pub fn perturb(&mut self, i: usize, j: usize, k: usize, delta: u64) {
        self.table[i][j][k] += delta;
    }

    /// Product of two elements given in the `φ` basis.
    pub fn multiply(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.size();
        let mut out = vec![q(0); n];
        for i in 0..n {
            if a[i] == q(0) {
                continue;
            }
            for j in 0..n {
                if b[j] == q(0) {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.table[i][j][k];
                    if c != 0 {
                        *o += &ab * q(c as i64);
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        (0..self.size()).map(|k| q(i64::from(k == i))).collect()
    }
}

/// `Σ_k N_{ij}^k N_{kl}^m = Σ_k N_{jl}^k N_{ik}^m` for all `(i, j, l, m)`.
pub fn check_associativity(a: &VerlindeAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new("verlinde-associativity", format!("labels={}", a.size()));
    let n = a.size();
    let rows: Vec<Vec<(i64, i64, i64, i64, u64, u64)>> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut out = Vec::new();
            for l in 0..n {
                for m in 0..n {
                    let lhs: u64 = (0..n).map(|k| a.table[i][j][k] * a.table[k][l][m]).sum();
                    let rhs: u64 = (0..n).map(|k| a.table[j][l][k] * a.table[i][k][m]).sum();
                    out.push((i as i64, j as i64, l as i64, m as i64, lhs, rhs));
                }
            }
            out
        })
        .collect();
    for (i, j, l, m, lhs, rhs) in rows.into_iter().flatten() {
        report.checked += 1;
        report.compare(&[i, j, l, m], "N", q(lhs as i64), q(rhs as i64));
    }
    report
}

/// `φ_i φ_j = φ_j φ_i` on the full product table.
pub fn check_commutativity(a: &VerlindeAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new("verlinde-commutativity", format!("labels={}", a.size()));
    let n = a.size();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.checked += 1;
                report.compare(
                    &[i as i64, j as i64, k as i64],
                    "N",
                    q(a.table[i][j][k] as i64),
                    q(a.table[j][i][k] as i64),
                );
            }
        }
    }
    report
}
