//! Spectral calculus on top of the Jacobi kernel: matrix functions, absolute
//! values, Cartesian parts, singular values and the Loewner order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eigen::{hermitian_eigh, synthesize, HermEigen};
use super::matrix::{ComplexMatrix, C64};
use super::tolerances::Tolerances;

/// Three-valued outcome of a thresholded decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    pub fn is_decided(self) -> bool {
        self != Verdict::Indeterminate
    }
}

/// Scalar functions applied through the eigendecomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    Sqrt,
    Pow(f64),
    Exp,
    Ln,
    Cos,
    Sin,
}

pub fn eigh(m: &ComplexMatrix, tol: &Tolerances) -> Result<HermEigen> {
    hermitian_eigh(m, tol.tol_herm)
}

/// `U diag(f(λ)) U*` for Hermitian `m`.
///
/// `Sqrt` and `Pow` clamp eigenvalues in `[−tol_psd·‖M‖, 0)` to zero and reject
/// anything lower. `Ln` requires `λ_min > tol_inv·λ_max`.
pub fn func_hermitian(m: &ComplexMatrix, f: MatrixFunction, tol: &Tolerances) -> Result<ComplexMatrix> {
    let e = eigh(m, tol)?;
    func_from_eigen(&e, f, tol)
}

pub fn func_from_eigen(e: &HermEigen, f: MatrixFunction, tol: &Tolerances) -> Result<ComplexMatrix> {
    match f {
        MatrixFunction::Sqrt | MatrixFunction::Pow(_) => {
            let floor = -tol.tol_psd * e.spectral_radius();
            if e.min() < floor {
                return Err(Error::NotPsd { min_eigenvalue: e.min() });
            }
            let g = |x: f64| {
                let x = x.max(0.0);
                match f {
                    MatrixFunction::Sqrt => x.sqrt(),
                    MatrixFunction::Pow(alpha) => x.powf(alpha),
                    _ => unreachable!(),
                }
            };
            Ok(e.map(g))
        }
        MatrixFunction::Ln => {
            if !(e.min() > tol.tol_inv * e.max()) || e.min() <= 0.0 {
                return Err(Error::NotPositiveDefinite { min_eigenvalue: e.min() });
            }
            Ok(e.map(f64::ln))
        }
        MatrixFunction::Exp => Ok(e.map(f64::exp)),
        MatrixFunction::Cos => Ok(e.map(f64::cos)),
        MatrixFunction::Sin => Ok(e.map(f64::sin)),
    }
}

pub fn sqrt_psd(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    func_hermitian(m, MatrixFunction::Sqrt, tol)
}

pub fn pow_psd(m: &ComplexMatrix, alpha: f64, tol: &Tolerances) -> Result<ComplexMatrix> {
    func_hermitian(m, MatrixFunction::Pow(alpha), tol)
}

/// Singular value decomposition data read off the Hermitian dilation
/// `[[0, M], [M*, 0]]`, whose eigenvalues are `±σ_k`.
struct DilationSvd {
    /// Ascending, clamped at zero.
    singular_values: Vec<f64>,
    /// Right singular vectors as columns, matching `singular_values`.
    right: ComplexMatrix,
}

fn dilation_svd(m: &ComplexMatrix) -> Result<DilationSvd> {
    let n = m.dim();
    let mut big = ComplexMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            big[(i, n + j)] = m[(i, j)];
            big[(n + j, i)] = m[(i, j)].conj();
        }
    }
    let e = hermitian_eigh(&big, 0.0)?;
    let singular_values = e.eigenvalues[n..].iter().map(|&s| s.max(0.0)).collect();
    let scale = std::f64::consts::SQRT_2;
    let right = ComplexMatrix::from_fn(n, |i, j| e.eigenvectors[(n + i, n + j)] * scale);
    Ok(DilationSvd { singular_values, right })
}

/// Singular values in ascending order.
///
/// Exactly Hermitian input uses `|λ|`; anything else goes through the
/// Hermitian dilation so that small singular values keep absolute accuracy
/// `O(ε‖M‖)` instead of the `O(√ε‖M‖)` of `√λ(M*M)`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut s = if m.is_exactly_hermitian() {
        hermitian_eigh(m, 0.0)?.eigenvalues.iter().map(|x| x.abs()).collect()
    } else {
        dilation_svd(m)?.singular_values
    };
    s.sort_by(f64::total_cmp);
    Ok(s)
}

pub fn min_singular_value(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?[0])
}

/// Largest singular value.
pub fn op_norm(m: &ComplexMatrix) -> Result<f64> {
    if m.is_exactly_hermitian() {
        return Ok(hermitian_eigh(m, 0.0)?.spectral_radius());
    }
    let gram = (&m.adjoint() * m).hermitian_part();
    Ok(hermitian_eigh(&gram, 0.0)?.max().max(0.0).sqrt())
}

/// `|M| = √(M*M)`, computed from an eigen- or singular value decomposition of `M`
/// rather than from `M*M` so that null directions stay null.
pub fn matrix_abs(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.is_exactly_hermitian() {
        return Ok(hermitian_eigh(m, 0.0)?.map(f64::abs));
    }
    let svd = dilation_svd(m)?;
    Ok(synthesize(&svd.right, &svd.singular_values))
}

/// `|M|` by the textbook route `√(M*M)`.
pub fn abs_via_sqrt(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    sqrt_psd(&(&m.adjoint() * m).hermitian_part(), tol)
}

/// `|M|^p` for `p > 0`.
pub fn abs_pow(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    if m.is_exactly_hermitian() {
        return Ok(hermitian_eigh(m, 0.0)?.map(|x| x.abs().powf(p)));
    }
    let svd = dilation_svd(m)?;
    let w: Vec<f64> = svd.singular_values.iter().map(|s| s.powf(p)).collect();
    Ok(synthesize(&svd.right, &w))
}

/// `(Re T, Im T) = ((T+T*)/2, (T−T*)/2i)`, both Hermitian bit for bit.
pub fn cartesian_parts(t: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let re = t.hermitian_part();
    // (T − T*)/2i is the Hermitian part of −iT.
    let im = t.scale(C64::new(0.0, -1.0)).hermitian_part();
    (re, im)
}

/// Outcome of a Loewner comparison together with its measured margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub verdict: Verdict,
    /// `λ_min(B − A)`.
    pub min_eigenvalue: f64,
    /// `max(‖A‖, ‖B‖, 1)`, the scale the threshold is relative to.
    pub scale: f64,
}

/// Decides `A ≤ B` from `λ_min(B − A)`.
pub fn loewner_leq(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<Comparison> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let ea = eigh(a, tol)?;
    let eb = eigh(b, tol)?;
    let diff = eigh(&(b - a), tol)?;
    let scale = ea.spectral_radius().max(eb.spectral_radius()).max(1.0);
    let lam = diff.min();
    let verdict = if lam >= -tol.tol_psd * scale {
        Verdict::True
    } else if lam < -tol.guard * tol.tol_psd * scale {
        Verdict::False
    } else {
        Verdict::Indeterminate
    };
    Ok(Comparison { verdict, min_eigenvalue: lam, scale })
}

/// Invertibility decision with the ratio `σ_min/σ_max` it was based on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invertibility {
    pub verdict: Verdict,
    pub ratio: f64,
}

pub fn invertibility(m: &ComplexMatrix, tol: &Tolerances) -> Result<Invertibility> {
    let s = singular_values(m)?;
    let smax = s[s.len() - 1];
    let ratio = if smax > 0.0 { s[0] / smax } else { 0.0 };
    let verdict = if smax == 0.0 || ratio < tol.tol_inv {
        Verdict::False
    } else if ratio > tol.guard * tol.tol_inv {
        Verdict::True
    } else {
        Verdict::Indeterminate
    };
    Ok(Invertibility { verdict, ratio })
}

pub fn is_invertible(m: &ComplexMatrix, tol: &Tolerances) -> Result<Verdict> {
    Ok(invertibility(m, tol)?.verdict)
}

/// Inverse by Gaussian elimination with partial pivoting; refuses matrices
/// whose invertibility verdict is not `True`.
pub fn inverse(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !is_invertible(m, tol)?.is_true() {
        return Err(Error::Singular);
    }
    gauss_jordan(m)
}

fn gauss_jordan(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.dim();
    let mut a = m.clone();
    let mut inv = ComplexMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()).then(y.cmp(&x)))
            .expect("non-empty pivot range");
        if a[(pivot, col)].norm() == 0.0 {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot, j)];
                inv[(pivot, j)] = tmp;
            }
        }
        let p = a[(col, col)];
        for j in 0..n {
            a[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[(i, col)];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let (acj, icj) = (a[(col, j)], inv[(col, j)]);
                a[(i, j)] -= f * acj;
                inv[(i, j)] -= f * icj;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::matrix::{I, ONE, ZERO};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, eps: f64) -> bool {
        (a - b).frobenius_norm() <= eps
    }

    #[test]
    fn op_norm_of_diagonal() {
        let m = ComplexMatrix::from_diag(&[C64::new(3.0, 0.0), C64::new(0.0, -4.0)]);
        assert!((op_norm(&m).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_examples() {
        let s = sqrt_psd(&ComplexMatrix::from_real_diag(&[4.0, 9.0]), &tol()).unwrap();
        assert!(close(&s, &ComplexMatrix::from_real_diag(&[2.0, 3.0]), 1e-15));
        let s = sqrt_psd(&ComplexMatrix::identity(3), &tol()).unwrap();
        assert!(close(&s, &ComplexMatrix::identity(3), 1e-15));

        let m = real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r3 = 3f64.sqrt();
        let expected = real(&[&[(1.0 + r3) / 2.0, (r3 - 1.0) / 2.0], &[(r3 - 1.0) / 2.0, (1.0 + r3) / 2.0]]);
        let s = sqrt_psd(&m, &tol()).unwrap();
        assert!(close(&s, &expected, 1e-14));
        assert!(close(&(&expected * &expected), &m, 1e-14));
    }

    #[test]
    fn sqrt_clamps_roundoff_and_rejects_indefinite() {
        let tiny = ComplexMatrix::from_real_diag(&[1.0, -1e-12]);
        let s = sqrt_psd(&tiny, &tol()).unwrap();
        assert_eq!(s[(1, 1)], ZERO);
        let bad = ComplexMatrix::from_real_diag(&[1.0, -1e-3]);
        assert!(matches!(sqrt_psd(&bad, &tol()), Err(Error::NotPsd { .. })));
        let ln = func_hermitian(&ComplexMatrix::from_real_diag(&[1.0, 0.0]), MatrixFunction::Ln, &tol());
        assert!(matches!(ln, Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn trig_identity() {
        let m = real(&[&[0.3, 1.2], &[1.2, -2.0]]);
        let c = func_hermitian(&m, MatrixFunction::Cos, &tol()).unwrap();
        let s = func_hermitian(&m, MatrixFunction::Sin, &tol()).unwrap();
        let sum = &(&c * &c) + &(&s * &s);
        assert!(close(&sum, &ComplexMatrix::identity(2), 1e-14));
    }

    #[test]
    fn abs_examples() {
        let d = ComplexMatrix::from_diag(&[C64::new(-3.0, 0.0), C64::new(0.0, 4.0)]);
        assert!(close(&matrix_abs(&d).unwrap(), &ComplexMatrix::from_real_diag(&[3.0, 4.0]), 1e-14));

        let theta = 0.7f64;
        let u = ComplexMatrix::from_rows(&[
            vec![C64::new(theta.cos(), 0.0), C64::new(0.0, theta.sin())],
            vec![C64::new(0.0, theta.sin()), C64::new(theta.cos(), 0.0)],
        ])
        .unwrap();
        assert!(close(&matrix_abs(&u).unwrap(), &ComplexMatrix::identity(2), 1e-14));

        let n = real(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert!(close(&matrix_abs(&n).unwrap(), &ComplexMatrix::from_real_diag(&[1.0, 0.0]), 1e-14));
        assert!(close(&abs_via_sqrt(&n, &tol()).unwrap(), &ComplexMatrix::from_real_diag(&[1.0, 0.0]), 1e-14));
    }

    #[test]
    fn abs_keeps_null_directions() {
        // Rank-one non-Hermitian matrix: the second singular value is exactly zero.
        let m = ComplexMatrix::from_rows(&[vec![ONE, C64::new(0.3, 0.2)], vec![C64::new(2.0, -1.0), C64::new(0.8, 0.1)]]).unwrap();
        let x = m.column(0);
        let rank_one = ComplexMatrix::from_fn(2, |i, j| x.entries()[i] * C64::new(0.5 + j as f64, -0.25));
        let s = singular_values(&rank_one).unwrap();
        assert!(s[0] < 1e-15 * s[1]);
        let a = matrix_abs(&rank_one).unwrap();
        let e = hermitian_eigh(&a, 1e-12).unwrap();
        assert!(e.min().abs() < 1e-15 * e.max());
    }

    #[test]
    fn cartesian_examples() {
        let (re, im) = cartesian_parts(&ComplexMatrix::identity(2));
        assert_eq!(re, ComplexMatrix::identity(2));
        assert_eq!(im, ComplexMatrix::zeros(2));

        let (re, im) = cartesian_parts(&ComplexMatrix::from_diag(&[C64::new(1.0, 2.0)]));
        assert_eq!(re, ComplexMatrix::from_real_diag(&[1.0]));
        assert_eq!(im, ComplexMatrix::from_real_diag(&[2.0]));

        let (re, im) = cartesian_parts(&real(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert_eq!(re, real(&[&[0.0, 0.5], &[0.5, 0.0]]));
        let expected_im = ComplexMatrix::from_rows(&[vec![ZERO, C64::new(0.0, -0.5)], vec![C64::new(0.0, 0.5), ZERO]]).unwrap();
        assert_eq!(im, expected_im);
    }

    #[test]
    fn loewner_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(loewner_leq(&i2, &i2.scale_real(2.0), &tol()).unwrap().verdict, Verdict::True);
        let a = real(&[&[1.0, 0.3], &[0.3, -2.0]]);
        assert_eq!(loewner_leq(&a, &a, &tol()).unwrap().verdict, Verdict::True);
        let b = real(&[&[2.0, 1.0], &[1.0, 1.0]]);
        let c = loewner_leq(&i2, &b, &tol()).unwrap();
        assert_eq!(c.verdict, Verdict::False);
        assert!((c.min_eigenvalue - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn loewner_band() {
        let i2 = ComplexMatrix::identity(2);
        let t = tol();
        let slightly_less = i2.shift(C64::new(-5.0 * t.tol_psd, 0.0));
        assert_eq!(loewner_leq(&i2, &slightly_less, &t).unwrap().verdict, Verdict::Indeterminate);
        let less = i2.shift(C64::new(-50.0 * t.tol_psd, 0.0));
        assert_eq!(loewner_leq(&i2, &less, &t).unwrap().verdict, Verdict::False);
    }

    #[test]
    fn min_singular_value_examples() {
        assert_eq!(min_singular_value(&ComplexMatrix::identity(3)).unwrap(), 1.0);
        assert_eq!(min_singular_value(&ComplexMatrix::from_real_diag(&[1.0, 0.0])).unwrap(), 0.0);
        let m = real(&[&[0.0, 2.0], &[3.0, 0.0]]);
        assert!((min_singular_value(&m).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn invertibility_examples() {
        let t = tol();
        assert_eq!(is_invertible(&ComplexMatrix::identity(2), &t).unwrap(), Verdict::True);
        assert_eq!(is_invertible(&ComplexMatrix::from_real_diag(&[1.0, 0.0]), &t).unwrap(), Verdict::False);
        assert_eq!(is_invertible(&ComplexMatrix::zeros(2), &t).unwrap(), Verdict::False);
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert_eq!(is_invertible(&a.scale(ONE - I), &t).unwrap(), Verdict::True);
        let edge = ComplexMatrix::from_real_diag(&[1.0, 5e-10]);
        assert_eq!(is_invertible(&edge, &t).unwrap(), Verdict::Indeterminate);
    }

    #[test]
    fn inverse_examples() {
        let t = tol();
        let half = inverse(&ComplexMatrix::identity(2).scale_real(2.0), &t).unwrap();
        assert!(close(&half, &ComplexMatrix::identity(2).scale_real(0.5), 0.0));
        let d = inverse(&ComplexMatrix::from_real_diag(&[1.0, 4.0]), &t).unwrap();
        assert!(close(&d, &ComplexMatrix::from_real_diag(&[1.0, 0.25]), 0.0));
        let u = inverse(&real(&[&[1.0, 1.0], &[0.0, 1.0]]), &t).unwrap();
        assert!(close(&u, &real(&[&[1.0, -1.0], &[0.0, 1.0]]), 0.0));
        assert_eq!(inverse(&ComplexMatrix::from_real_diag(&[1.0, 0.0]), &t), Err(Error::Singular));
    }
}
