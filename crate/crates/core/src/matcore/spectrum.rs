//! Eigenvalues of normal matrices via their commuting Cartesian parts, plus
//! structural classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeds::mix;
use crate::specsets::SpectrumSet;

use super::calculus::{cartesian_parts, eigh, op_norm};
use super::matrix::{ComplexMatrix, ComplexVector, C64};
use super::tolerances::Tolerances;

/// `‖T*T − TT*‖_F / ‖T‖_F²` (zero for the zero matrix).
pub fn normality_defect(t: &ComplexMatrix) -> f64 {
    let norm2 = t.frobenius_norm().powi(2);
    if norm2 == 0.0 {
        return 0.0;
    }
    let ta = t.adjoint();
    (&(&ta * t) - &(t * &ta)).frobenius_norm() / norm2
}

/// `‖(Re T)(Im T) − (Im T)(Re T)‖_F / ‖T‖_F²`. Equals half of [`normality_defect`]
/// in exact arithmetic.
pub fn cartesian_commutator_defect(t: &ComplexMatrix) -> f64 {
    let norm2 = t.frobenius_norm().powi(2);
    if norm2 == 0.0 {
        return 0.0;
    }
    let (re, im) = cartesian_parts(t);
    (&(&re * &im) - &(&im * &re)).frobenius_norm() / norm2
}

/// Spectrum of a normal matrix.
///
/// Diagonalizes `Re T`, groups eigenvalues closer than `tol_spec·‖T‖`, and
/// diagonalizes the compression of `Im T` inside each group. If any resulting
/// eigenpair has a residual above `tol_spec·max(‖T‖, 1)`, falls back to
/// diagonalizing `Re T + t·Im T` for a `t ∈ [1/3, 2/3]` drawn from a seed derived
/// from the input bits.
pub fn spectrum_normal(t: &ComplexMatrix, tol: &Tolerances) -> Result<SpectrumSet> {
    let defect = normality_defect(t);
    if defect > tol.tol_herm {
        return Err(Error::NotNormal { defect });
    }
    let (re, im) = cartesian_parts(t);
    let norm = op_norm(t)?;
    let residual_limit = tol.tol_spec * norm.max(1.0);

    let pairs = clustered_pairs(&re, &im, norm, tol)?;
    if max_residual(t, &pairs) <= residual_limit {
        return Ok(SpectrumSet::from_matrix_points(pairs.into_iter().map(|(z, _)| z).collect()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(bits_seed(t));
    let weight: f64 = rng.gen_range(1.0 / 3.0..=2.0 / 3.0);
    let pairs = generic_combination_pairs(&re, &im, weight, tol)?;
    Ok(SpectrumSet::from_matrix_points(pairs.into_iter().map(|(z, _)| z).collect()))
}

type EigenPair = (C64, ComplexVector);

fn clustered_pairs(re: &ComplexMatrix, im: &ComplexMatrix, norm: f64, tol: &Tolerances) -> Result<Vec<EigenPair>> {
    let n = re.dim();
    let e = eigh(re, tol)?;
    let gap = tol.tol_spec * norm;
    let mut pairs = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && e.eigenvalues[end] - e.eigenvalues[end - 1] <= gap {
            end += 1;
        }
        let m = end - start;
        // Compression Q* (Im T) Q onto the cluster's eigenspace.
        let q = |i: usize, k: usize| e.eigenvectors[(i, start + k)];
        let mut compressed = ComplexMatrix::zeros(m);
        for a in 0..m {
            for b in 0..m {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..n {
                    let mut row = C64::new(0.0, 0.0);
                    for j in 0..n {
                        row += im[(i, j)] * q(j, b);
                    }
                    acc += q(i, a).conj() * row;
                }
                compressed[(a, b)] = acc;
            }
        }
        let inner = eigh(&compressed.hermitian_part(), tol)?;
        for k in 0..m {
            let v: Vec<C64> = (0..n)
                .map(|i| (0..m).map(|a| q(i, a) * inner.eigenvectors[(a, k)]).sum())
                .collect();
            let v = ComplexVector::new(v)?;
            pairs.push(read_pair(re, im, v)?);
        }
        start = end;
    }
    Ok(pairs)
}

fn generic_combination_pairs(re: &ComplexMatrix, im: &ComplexMatrix, weight: f64, tol: &Tolerances) -> Result<Vec<EigenPair>> {
    let combo = (re + &im.scale_real(weight)).hermitian_part();
    let e = eigh(&combo, tol)?;
    (0..re.dim()).map(|k| read_pair(re, im, e.eigenvectors.column(k))).collect()
}

/// Reads `a + ib` from the two quadratic forms on a unit vector.
fn read_pair(re: &ComplexMatrix, im: &ComplexMatrix, v: ComplexVector) -> Result<EigenPair> {
    let nrm = v.norm();
    let v = v.scale(C64::new(1.0 / nrm, 0.0));
    let a = re.quadratic_form(&v)?;
    let b = im.quadratic_form(&v)?;
    Ok((C64::new(a, b), v))
}

fn max_residual(t: &ComplexMatrix, pairs: &[EigenPair]) -> f64 {
    pairs
        .iter()
        .map(|(z, v)| {
            let tv = t.apply(v).expect("dimensions agree");
            tv.sub(&v.scale(*z)).expect("dimensions agree").norm()
        })
        .fold(0.0, f64::max)
}

fn bits_seed(t: &ComplexMatrix) -> u64 {
    t.as_slice()
        .iter()
        .fold(0x5eed_0f_5bec_u64, |h, z| mix(mix(h, z.re.to_bits()), z.im.to_bits()))
}

/// Structural flags of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub hermitian: bool,
    pub positive: bool,
    pub normal: bool,
    pub unitary: bool,
}

pub fn classify(m: &ComplexMatrix, tol: &Tolerances) -> Result<Classification> {
    let norm_f = m.frobenius_norm();
    let hermitian = m.hermitian_defect() <= tol.tol_herm * norm_f;
    let positive = hermitian && {
        let e = eigh(m, tol)?;
        e.min() >= -tol.tol_psd * e.spectral_radius().max(1.0)
    };
    let normal = normality_defect(m) <= tol.tol_herm;
    let n = m.dim();
    let gram = &m.adjoint() * m;
    let unitary = (&gram - &ComplexMatrix::identity(n)).frobenius_norm() <= tol.tol_herm * (n as f64).sqrt();
    Ok(Classification { hermitian, positive, normal, unitary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::matrix::{I, ZERO};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn diagonal_spectrum() {
        let t = ComplexMatrix::from_diag(&[C64::new(1.0, 1.0), C64::new(2.0, 0.0)]);
        let s = spectrum_normal(&t, &tol()).unwrap();
        let expected = SpectrumSet::new(vec![C64::new(1.0, 1.0), C64::new(2.0, 0.0)]);
        assert!(s.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn swap_spectrum() {
        let swap = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let s = spectrum_normal(&swap, &tol()).unwrap();
        assert!(s.approx_eq(&SpectrumSet::new(vec![C64::new(-1.0, 0.0), C64::new(1.0, 0.0)]), 1e-14));
        assert!(s.within_real_axis(1e-7));

        // i·swap has Re = 0, so everything sits in one cluster of Re.
        let s = spectrum_normal(&swap.scale(I), &tol()).unwrap();
        assert!(s.approx_eq(&SpectrumSet::new(vec![I, -I]), 1e-14));
    }

    #[test]
    fn rejects_non_normal() {
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(spectrum_normal(&n, &tol()), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn classify_examples() {
        let all = classify(&ComplexMatrix::identity(3), &tol()).unwrap();
        assert_eq!(all, Classification { hermitian: true, positive: true, normal: true, unitary: true });

        let nil = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let none = classify(&nil, &tol()).unwrap();
        assert_eq!(none, Classification { hermitian: false, positive: false, normal: false, unitary: false });

        let theta = std::f64::consts::FRAC_PI_3;
        let u = ComplexMatrix::from_diag(&[C64::from_polar(1.0, theta)]);
        let c = classify(&u, &tol()).unwrap();
        assert!(c.normal && c.unitary && !c.hermitian && !c.positive);
    }

    #[test]
    fn normality_routes_agree_on_nilpotent() {
        let nil = ComplexMatrix::from_rows(&[vec![ZERO, C64::new(2.0, 1.0)], vec![ZERO, ZERO]]).unwrap();
        let d1 = normality_defect(&nil);
        let d2 = cartesian_commutator_defect(&nil);
        assert!((d1 - 2.0 * d2).abs() < 1e-15);
    }
}
