//! Fixed small instances showing that hypotheses cannot be dropped.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matcore::{
    cartesian_parts, func_hermitian, is_invertible, loewner_leq, matrix_abs, ComplexMatrix, MatrixFunction, Tolerances,
    Verdict, C64, I,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub expected: Verdict,
    pub observed: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub name: String,
    pub description: String,
    pub claims: Vec<Claim>,
    /// Every observed verdict equals the expected one.
    pub confirmed: bool,
}

struct Builder<'a> {
    tol: &'a Tolerances,
    claims: Vec<Claim>,
}

impl<'a> Builder<'a> {
    fn new(tol: &'a Tolerances) -> Self {
        Self { tol, claims: Vec::new() }
    }

    fn push(&mut self, statement: &str, expected: Verdict, observed: Verdict) {
        self.claims.push(Claim { statement: statement.to_string(), expected, observed });
    }

    fn invertible(&mut self, statement: &str, m: &ComplexMatrix, expected: Verdict) -> Result<()> {
        let v = is_invertible(m, self.tol)?;
        self.push(statement, expected, v);
        Ok(())
    }

    fn loewner(&mut self, statement: &str, a: &ComplexMatrix, b: &ComplexMatrix, expected: Verdict) -> Result<()> {
        let v = loewner_leq(a, b, self.tol)?.verdict;
        self.push(statement, expected, v);
        Ok(())
    }

    fn equal(&mut self, statement: &str, a: &ComplexMatrix, b: &ComplexMatrix) {
        let diff = (a - b).frobenius_norm();
        let scale = a.frobenius_norm().max(b.frobenius_norm()).max(1.0);
        let v = if diff <= self.tol.tol_eq * scale { Verdict::True } else { Verdict::False };
        self.push(statement, Verdict::True, v);
    }

    fn finish(self, name: &str, description: &str) -> Counterexample {
        let confirmed = self.claims.iter().all(|c| c.expected == c.observed);
        Counterexample { name: name.to_string(), description: description.to_string(), claims: self.claims, confirmed }
    }
}

fn herm_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    (a + b).hermitian_part()
}

/// Householder reflection `I − 2vv*/‖v‖²` for a fixed `v`.
fn fixed_unitary(n: usize) -> ComplexMatrix {
    let v: Vec<C64> = (0..n).map(|k| C64::new(1.0 + k as f64, 0.5 * k as f64)).collect();
    let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    ComplexMatrix::from_fn(n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        C64::new(delta, 0.0) - v[i] * v[j].conj() * (2.0 / nv)
    })
}

pub fn counterexample_registry(tol: &Tolerances) -> Result<Vec<Counterexample>> {
    use Verdict::{False, True};
    let mut out = Vec::new();

    let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
    let b = a.scale_real(-1.0);
    let mut c = Builder::new(tol);
    c.invertible("A = diag(1,2) is invertible", &a, True)?;
    c.invertible("A + B with B = −A is invertible", &(&a + &b), False)?;
    c.invertible("|A| + |B| is invertible", &herm_sum(&matrix_abs(&a)?, &matrix_abs(&b)?), True)?;
    out.push(c.finish("negated_pair", "|A|+|B| invertible does not force A+B invertible"));

    let t = a.scale(C64::new(1.0, -1.0));
    let (re, im) = cartesian_parts(&t);
    let mut c = Builder::new(tol);
    c.equal("|Re T| + |Im T| = 2A for T = (1−i)A", &herm_sum(&matrix_abs(&re)?, &matrix_abs(&im)?), &a.scale_real(2.0));
    c.invertible("T is invertible", &t, True)?;
    c.invertible("Re T + Im T is invertible", &(&re + &im), False)?;
    c.invertible("|Re T| + |Im T| is invertible", &herm_sum(&matrix_abs(&re)?, &matrix_abs(&im)?), True)?;
    out.push(c.finish("one_minus_i", "the absolute values cannot be removed from |Re T|+|Im T|"));

    let a = ComplexMatrix::identity(2);
    let b = a.scale(I);
    let mut c = Builder::new(tol);
    c.invertible("A + B with A = I, B = iI is invertible", &(&a + &b), True)?;
    c.invertible("A² + B² is invertible", &(&(&a * &a) + &(&b * &b)), False)?;
    let gram = |m: &ComplexMatrix| (&m.adjoint() * m).hermitian_part();
    c.invertible("|A|² + |B|² is invertible", &herm_sum(&gram(&a), &gram(&b)), True)?;
    out.push(c.finish("squares_cancel", "A²+B² may vanish while |A|²+|B|² is invertible"));

    let xs = [0.0, FRAC_PI_2, PI, 1.0];
    let t = ComplexMatrix::from_diag(&xs.map(|x| C64::from_polar(1.0, x)));
    let (re, im) = cartesian_parts(&t);
    let mut c = Builder::new(tol);
    c.invertible("T = diag(e^{ix}) for x ∈ {0, π/2, π, 1} is invertible", &t, True)?;
    c.invertible("Re T = diag(cos x) is invertible", &re, False)?;
    c.invertible("Im T = diag(sin x) is invertible", &im, False)?;
    c.invertible("|Re T| + |Im T| is invertible", &herm_sum(&matrix_abs(&re)?, &matrix_abs(&im)?), True)?;
    out.push(c.finish("cos_sin_diagonal", "a unitary whose Cartesian parts are both singular"));

    let u = fixed_unitary(3);
    let d = ComplexMatrix::from_real_diag(&[FRAC_PI_2, PI, 0.7]);
    let a = (&(&u * &d) * &u.adjoint()).hermitian_part();
    let cos = func_hermitian(&a, MatrixFunction::Cos, tol)?;
    let sin = func_hermitian(&a, MatrixFunction::Sin, tol)?;
    let mut c = Builder::new(tol);
    c.invertible("cos A is invertible for σ(A) = {π/2, π, 0.7}", &cos, False)?;
    c.invertible("sin A is invertible", &sin, False)?;
    c.equal("cos²A + sin²A = I", &(&(&cos * &cos) + &(&sin * &sin)), &ComplexMatrix::identity(3));
    c.invertible("|cos A| + |sin A| is invertible", &herm_sum(&matrix_abs(&cos)?, &matrix_abs(&sin)?), True)?;
    out.push(c.finish("cos_sin_hermitian", "cos A and sin A singular while |cos A|+|sin A| is invertible"));

    let grid: Vec<f64> = (0..6).map(|k| k as f64 / 5.0).collect();
    let a = ComplexMatrix::from_real_diag(&grid);
    let b = a.clone();
    let ab = &a * &b;
    let mut c = Builder::new(tol);
    c.loewner("0 ≤ AB for A = B = diag(0, 0.2, …, 1)", &ComplexMatrix::zeros(6), &ab, True)?;
    c.invertible("AB is invertible", &ab, False)?;
    c.invertible("|A*|² + |B|² is invertible", &herm_sum(&(&a * &a.adjoint()), &gram(&b)), False)?;
    out.push(c.finish("grid_touching_zero", "positivity of AB alone does not give invertibility of |A*|²+|B|²"));

    Ok(out)
}
