//! Cyclic complex Jacobi eigensolver for Hermitian matrices.

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, C64, ZERO};

/// Off-diagonal Frobenius mass at which the sweep loop stops, relative to `‖M‖_F`.
pub const CONVERGENCE_RATIO: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 40;

/// Eigendecomposition `M = U diag(λ) U*` with ascending eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct HermEigen {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors stored as columns.
    pub eigenvectors: ComplexMatrix,
}

impl HermEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// Largest eigenvalue modulus, i.e. the operator norm of the input.
    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `U diag(f(λ)) U*`, returned Hermitian bit for bit.
    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        synthesize(&self.eigenvectors, &values)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        synthesize(&self.eigenvectors, &self.eigenvalues)
    }
}

/// `Σ_k w_k u_k u_k*` over the columns of `u`.
pub(crate) fn synthesize(u: &ComplexMatrix, weights: &[f64]) -> ComplexMatrix {
    let n = u.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = ZERO;
            for (k, &w) in weights.iter().enumerate() {
                if w != 0.0 {
                    acc += u[(i, k)] * u[(j, k)].conj() * w;
                }
            }
            if i == j {
                out[(i, i)] = C64::new(acc.re, 0.0);
            } else {
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
    }
    out
}

/// Diagonalizes a Hermitian matrix. The input must satisfy
/// `‖M − M*‖_F ≤ tol_herm·‖M‖_F`; it is symmetrized before iterating.
pub fn hermitian_eigh(m: &ComplexMatrix, tol_herm: f64) -> Result<HermEigen> {
    let norm = m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > tol_herm * norm {
        return Err(Error::NotHermitian { defect: if norm > 0.0 { defect / norm } else { defect } });
    }
    jacobi(&m.hermitian_part())
}

fn off_diagonal_mass(a: &[C64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(m: &ComplexMatrix) -> Result<HermEigen> {
    let n = m.dim();
    let mut a: Vec<C64> = m.as_slice().to_vec();
    let mut u = ComplexMatrix::identity(n);
    let threshold = CONVERGENCE_RATIO * m.frobenius_norm();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_mass(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut u, n, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]).then(x.cmp(&y)));
    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| u[(i, order[j])]);
    Ok(HermEigen { eigenvalues, eigenvectors })
}

/// Annihilates `a[p][q]` with `a ← J* a J`, `u ← u J`, where
/// `J = P R P*`, `P = diag(1, e^{-iφ})` on (p, q) and `R` a real rotation.
fn rotate(a: &mut [C64], u: &mut ComplexMatrix, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J_pp = c, J_pq = s·e^{iφ}, J_qp = −s·e^{−iφ}, J_qq = c
    let jpq = phase * s;
    let jqp = -phase.conj() * s;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c + akq * jqp;
        a[k * n + q] = akp * jpq + akq * c;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c + aqk * jqp.conj();
        a[q * n + k] = apk * jpq.conj() + aqk * c;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = C64::new(a[q * n + q].re, 0.0);

    for k in 0..n {
        let ukp = u[(k, p)];
        let ukq = u[(k, q)];
        u[(k, p)] = ukp * c + ukq * jqp;
        u[(k, q)] = ukp * jpq + ukq * c;
    }
}
