//! Seeded generators for the structured matrix classes the property checks
//! quantify over. Output is a pure function of `(kind, dim, seed, scale)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{op_norm, ComplexMatrix, ComplexVector, C64, ZERO};
use crate::seeds::mix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Generic,
    Hermitian,
    Psd,
    Posdef,
    Normal,
    Unitary,
    CommutingPair,
    CommutingNormalPair,
    PositiveCommutingPair,
}

impl GeneratorKind {
    pub fn is_pair(self) -> bool {
        matches!(self, Self::CommutingPair | Self::CommutingNormalPair | Self::PositiveCommutingPair)
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

fn default_scale() -> f64 {
    1.0
}

/// `{"kind": "...", "dim": n, "seed": u64, "scale": x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dim: usize,
    pub seed: u64,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, dim: usize, seed: u64) -> Self {
        Self { kind, dim, seed, scale: 1.0 }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
}

/// Uniform and Box–Muller Gaussian draws from a ChaCha stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    /// Two independent standard normals by Box–Muller.
    pub fn gaussian_pair(&mut self) -> (f64, f64) {
        // 1 − U lies in (0, 1], keeping the logarithm finite.
        let u1 = 1.0 - self.rng.gen::<f64>();
        let u2 = self.rng.gen::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        (r * angle.cos(), r * angle.sin())
    }

    /// Complex Gaussian with independent standard normal parts.
    pub fn complex_gaussian(&mut self) -> C64 {
        let (re, im) = self.gaussian_pair();
        C64::new(re, im)
    }

    /// Nonzero complex number with modulus in `[lo, hi)` and uniform phase.
    pub fn complex_in_annulus(&mut self, lo: f64, hi: f64) -> C64 {
        let r = self.uniform(lo, hi);
        C64::from_polar(r, self.uniform(0.0, std::f64::consts::TAU))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidDimension(dim));
    }
    Ok(())
}

pub fn gen(spec: &GeneratorSpec) -> Result<Generated> {
    check_dim(spec.dim)?;
    if !(spec.scale.is_finite() && spec.scale > 0.0) {
        return Err(Error::Malformed(format!("scale must be positive, got {}", spec.scale)));
    }
    let mut s = Sampler::new(mix(spec.seed, spec.kind.tag()));
    let (n, scale) = (spec.dim, spec.scale);
    let out = match spec.kind {
        GeneratorKind::Generic => Generated::Single(rescale(&gaussian_matrix(&mut s, n), scale)?),
        GeneratorKind::Hermitian => Generated::Single(rescale(&gaussian_matrix(&mut s, n).hermitian_part(), scale)?),
        GeneratorKind::Psd => Generated::Single(psd(&mut s, n, scale)?),
        GeneratorKind::Posdef => Generated::Single(psd(&mut s, n, scale)?.shift(C64::new(0.1 * scale, 0.0))),
        GeneratorKind::Unitary => Generated::Single(unitary(&mut s, n)),
        GeneratorKind::Normal => {
            let u = unitary(&mut s, n);
            let d = normalized_diag(&mut s, n, scale);
            Generated::Single(conjugate_diag(&u, &d))
        }
        GeneratorKind::CommutingNormalPair => {
            let u = unitary(&mut s, n);
            let f = normalized_diag(&mut s, n, scale);
            let g = normalized_diag(&mut s, n, scale);
            Generated::Pair(conjugate_diag(&u, &f), conjugate_diag(&u, &g))
        }
        GeneratorKind::PositiveCommutingPair => {
            let u = unitary(&mut s, n);
            let f: Vec<C64> = (0..n).map(|_| C64::new(s.uniform(0.0, scale), 0.0)).collect();
            let g: Vec<C64> = (0..n).map(|_| C64::new(s.uniform(0.0, scale), 0.0)).collect();
            let (a, b) = (conjugate_diag(&u, &f), conjugate_diag(&u, &g));
            Generated::Pair(a.hermitian_part(), b.hermitian_part())
        }
        GeneratorKind::CommutingPair => {
            let m = rescale(&gaussian_matrix(&mut s, n), 1.0)?;
            let poly = |s: &mut Sampler| {
                let degree = 1 + s.index(3);
                let coeffs: Vec<C64> = (0..=degree).map(|_| s.complex_gaussian()).collect();
                m.polynomial(&coeffs)
            };
            let p = poly(&mut s);
            let q = poly(&mut s);
            Generated::Pair(rescale(&p, scale)?, rescale(&q, scale)?)
        }
    };
    Ok(out)
}

/// Single-matrix kinds only.
pub fn gen_matrix(kind: GeneratorKind, dim: usize, seed: u64, scale: f64) -> Result<ComplexMatrix> {
    match gen(&GeneratorSpec::new(kind, dim, seed).with_scale(scale))? {
        Generated::Single(m) => Ok(m),
        Generated::Pair(..) => Err(Error::Malformed(format!("{kind:?} produces a pair"))),
    }
}

/// Pair kinds only.
pub fn gen_pair(kind: GeneratorKind, dim: usize, seed: u64, scale: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    match gen(&GeneratorSpec::new(kind, dim, seed).with_scale(scale))? {
        Generated::Pair(a, b) => Ok((a, b)),
        Generated::Single(_) => Err(Error::Malformed(format!("{kind:?} produces a single matrix"))),
    }
}

pub fn gen_vector(dim: usize, seed: u64) -> Result<ComplexVector> {
    check_dim(dim)?;
    let mut s = Sampler::new(mix(seed, 0x7ec7));
    ComplexVector::new((0..dim).map(|_| s.complex_gaussian()).collect())
}

fn gaussian_matrix(s: &mut Sampler, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| s.complex_gaussian())
}

fn rescale(m: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    let norm = op_norm(m)?;
    if norm == 0.0 {
        return Ok(m.clone());
    }
    let out = m.scale_real(scale / norm);
    Ok(if m.is_exactly_hermitian() { out.hermitian_part() } else { out })
}

fn psd(s: &mut Sampler, n: usize, scale: f64) -> Result<ComplexMatrix> {
    let g = gaussian_matrix(s, n);
    rescale(&(&g.adjoint() * &g).hermitian_part(), scale)
}

/// Gram–Schmidt on Gaussian columns, each column orthogonalized twice.
fn unitary(s: &mut Sampler, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| s.complex_gaussian()).collect();
        for _ in 0..2 {
            for u in &cols {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // A Gaussian draw in the span of earlier columns has probability zero; redraw if it happens.
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

fn normalized_diag(s: &mut Sampler, n: usize, scale: f64) -> Vec<C64> {
    let d: Vec<C64> = (0..n).map(|_| s.complex_gaussian()).collect();
    let max = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return vec![ZERO; n];
    }
    d.into_iter().map(|z| z * (scale / max)).collect()
}

/// `U diag(d) U*`.
pub fn conjugate_diag(u: &ComplexMatrix, d: &[C64]) -> ComplexMatrix {
    let n = u.dim();
    ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| u[(i, k)] * d[k] * u[(j, k)].conj()).sum())
}
