//! The property checks. Each property has claim functions over explicit
//! matrices; the random path draws inputs and calls them, and the fixture path
//! calls them on caller-supplied matrices after re-verifying the hypotheses.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generators::{conjugate_diag, GeneratorKind as K};
use crate::matcore::{
    abs_pow, block2x2, cartesian_parts, classify, eigh, func_hermitian, inverse, invertibility, loewner_leq, matrix_abs,
    min_singular_value, op_norm, spectrum_normal, ComplexMatrix, ComplexVector, MatrixFunction, C64, I, ZERO,
};
use crate::specsets::SpectrumSet;

use super::property::PropertyId;
use super::trial::Trial;

pub(crate) type Inputs = BTreeMap<String, ComplexMatrix>;

pub(crate) fn dispatch(id: PropertyId, t: &mut Trial) -> Result<()> {
    match id {
        PropertyId::SqrtMonotone => sqrt_monotone(t),
        PropertyId::SqrtSubadditive => sqrt_subadditive(t),
        PropertyId::AbsParallelogram => abs_parallelogram(t),
        PropertyId::OrderInverse => order_inverse(t),
        PropertyId::MainTheorem => main_theorem(t),
        PropertyId::CorollariesInvertible => corollaries_invertible(t),
        PropertyId::BlockCorollary => block_corollary(t),
        PropertyId::AbsSumEquivalence => abs_sum_equivalence(t),
        PropertyId::NormalCharacterization => normal_characterization(t),
        PropertyId::SpectralInclusionSum => spectral_inclusion_sum(t),
        PropertyId::SpectrumClassics => spectrum_classics(t),
        PropertyId::SubaddSubmultBridge => subadd_submult_bridge(t),
        PropertyId::ProductPositive => product_positive(t),
        PropertyId::FiniteSums => finite_sums(t),
    }
}

pub(crate) fn dispatch_fixture(id: PropertyId, t: &mut Trial, inputs: &Inputs) -> Result<()> {
    for (name, m) in inputs {
        t.record(name, m);
    }
    let get = |name: &str| inputs.get(name).ok_or_else(|| Error::Malformed(format!("fixture is missing input {name:?}")));
    match id {
        PropertyId::SqrtMonotone => fixture_sqrt_monotone(t, get("A")?, get("B")?),
        PropertyId::SqrtSubadditive => {
            let (a, b) = (get("A")?, get("B")?);
            if positive_pair(t, a, b)? && commutes_assumed(t, a, b) {
                sqrt_subadditive_claims(t, a, b)?;
            }
            Ok(())
        }
        PropertyId::AbsParallelogram => parallelogram_claims(t, get("A")?, get("B")?),
        PropertyId::OrderInverse => {
            let (a, b) = (get("A")?, get("B")?);
            let ordered = classify(a, t.tol)?.positive && loewner_leq(a, b, t.tol)?.verdict.is_true();
            if t.premise_invertible("A invertible", a)? && t.assume("0 ≤ A ≤ B", ordered) {
                order_inverse_claims(t, a, b)?;
            }
            if classify(b, t.tol)?.positive {
                psd_spectrum_claims(t, b)?;
            }
            Ok(())
        }
        PropertyId::MainTheorem => main_theorem_claims(t, get("A")?, get("B")?, &[2.0, 4.0, 8.0]),
        PropertyId::CorollariesInvertible => corollary_claims(t, get("A")?, get("B")?, 1.7, 3.2),
        PropertyId::BlockCorollary => {
            let (a, b, c, d) = (get("A")?, get("B")?, get("C")?, get("D")?);
            block_claims(t, a, b, c, d)?;
            let zero_b = b.max_abs() == 0.0;
            let zero_c = c.max_abs() == 0.0;
            if zero_b && classify(d, t.tol)?.normal {
                let big = block2x2(a, b, c, d)?;
                triangular_membership(t, "lower_eigenvalue_of_D", &big, d)?;
            }
            if zero_c && classify(a, t.tol)?.normal {
                let big = block2x2(a, b, c, d)?;
                triangular_membership(t, "upper_eigenvalue_of_A", &big, a)?;
            }
            Ok(())
        }
        PropertyId::AbsSumEquivalence => {
            let (a, b) = (get("A")?, get("B")?);
            let normal = classify(a, t.tol)?.normal || classify(b, t.tol)?.normal;
            if commutes_assumed(t, a, b) && t.assume("A or B normal", normal) {
                for p in [2.0, 3.0, 5.0] {
                    abs_sum_equivalence_claims(t, a, b, p)?;
                }
            }
            Ok(())
        }
        PropertyId::NormalCharacterization => {
            let m = get("T")?;
            if t.assume("T normal", classify(m, t.tol)?.normal) {
                normal_agreement_claims(t, m)?;
                let sigma = spectrum(m, t)?;
                for &lam in sigma.points() {
                    membership_claims(t, m, lam)?;
                }
                normal_loewner_claims(t, m)?;
            }
            Ok(())
        }
        PropertyId::SpectralInclusionSum => {
            let (s, m) = (get("S")?, get("T")?);
            let normal = classify(s, t.tol)?.normal && classify(m, t.tol)?.normal;
            if t.assume("S, T normal", normal) && commutes_assumed(t, s, m) {
                let scale = op_norm(s)? + op_norm(m)?;
                inclusion_claims(t, s, m, scale)?;
            }
            Ok(())
        }
        PropertyId::SpectrumClassics => {
            if let Some(h) = inputs.get("H") {
                if t.assume("H Hermitian", classify(h, t.tol)?.hermitian) {
                    let scale = op_norm(h)?;
                    real_spectrum_claim(t, h, scale)?;
                }
            }
            if let Some(u) = inputs.get("U") {
                if t.assume("U unitary", classify(u, t.tol)?.unitary) {
                    unit_circle_claims(t, u, C64::new(0.5, 0.5))?;
                }
            }
            if let (Some(a), Some(b)) = (inputs.get("A"), inputs.get("B")) {
                let normal = classify(a, t.tol)?.normal && classify(b, t.tol)?.normal;
                if t.assume("A, B normal", normal) && commutes_assumed(t, a, b) {
                    reverse_triangle_claim(t, a, b)?;
                }
            }
            Ok(())
        }
        PropertyId::SubaddSubmultBridge => {
            let (a, b) = (get("A")?, get("B")?);
            let herm = classify(a, t.tol)?.hermitian && classify(b, t.tol)?.hermitian;
            if t.assume("A, B Hermitian", herm) && commutes_assumed(t, a, b) {
                let scale = op_norm(a)? + op_norm(b)?;
                exp_bridge_claims(t, &a.hermitian_part(), &b.hermitian_part(), scale)?;
                let posdef = |m: &ComplexMatrix| -> Result<bool> { Ok(eigh(&m.hermitian_part(), t.tol)?.min() > 0.0) };
                if posdef(a)? && posdef(b)? {
                    log_bridge_claims(t, &a.hermitian_part(), &b.hermitian_part())?;
                }
            }
            Ok(())
        }
        PropertyId::ProductPositive => {
            let (a, b) = (get("A")?, get("B")?);
            let ab = a * b;
            let cls = classify(&ab, t.tol)?;
            let inv = invertibility(&ab.hermitian_part(), t.tol)?;
            if t.assume("AB positive invertible", cls.positive && inv.verdict.is_true()) {
                product_claims(t, a, b)?;
            }
            let ba = b * a;
            let cls = classify(&ba, t.tol)?;
            let inv = invertibility(&ba.hermitian_part(), t.tol)?;
            if cls.positive && inv.verdict.is_true() {
                left_product_claims(t, a, b)?;
            }
            Ok(())
        }
        PropertyId::FiniteSums => {
            let mats: Vec<ComplexMatrix> = (1..).map_while(|k| inputs.get(&format!("A{k}")).cloned()).collect();
            if mats.is_empty() {
                return Err(Error::Malformed("fixture is missing input \"A1\"".into()));
            }
            let coeffs = vec![C64::new(1.0, 0.0); mats.len()];
            finite_sum_claims(t, &mats, &coeffs)?;
            let rights: Vec<ComplexMatrix> = (1..).map_while(|k| inputs.get(&format!("B{k}")).cloned()).collect();
            if rights.len() == mats.len() {
                product_sum_claims(t, &mats, &rights)?;
            }
            Ok(())
        }
    }
}

/// `M*M`, i.e. `|M|²`.
fn gram(m: &ComplexMatrix) -> ComplexMatrix {
    (&m.adjoint() * m).hermitian_part()
}

/// `MM*`, i.e. `|M*|²`.
fn cogram(m: &ComplexMatrix) -> ComplexMatrix {
    (m * &m.adjoint()).hermitian_part()
}

fn sum_herm(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    (a + b).hermitian_part()
}

fn unit(v: ComplexVector) -> ComplexVector {
    let n = v.norm();
    v.scale(C64::new(1.0 / n, 0.0))
}

fn commutes_assumed(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    let defect = (&(a * b) - &(b * a)).frobenius_norm();
    let ok = defect <= t.tol.tol_eq * a.frobenius_norm().max(1.0) * b.frobenius_norm().max(1.0);
    t.assume("AB = BA", ok)
}

fn positive_pair(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    let ok = classify(a, t.tol)?.positive && classify(b, t.tol)?.positive;
    Ok(t.assume("A, B ≥ 0", ok))
}

/// Lower bound on `λ_min(|X|^p + |Y|^q) / (‖X‖^p + ‖Y‖^q)` given a lower bound
/// `m1` on `λ_min(|X|² + |Y|²)`.
///
/// For a unit `x` put `a = ⟨|X|²x,x⟩`, `b = ⟨|Y|²x,x⟩`; one of them is at
/// least `m1/2`. Jensen gives `⟨|X|^p x,x⟩ ≥ a^{p/2}` for `p ≥ 2`, and
/// `|X|^p ≥ ‖X‖^{p−2}|X|²` gives `⟨|X|^p x,x⟩ ≥ ‖X‖^{p−2} a` for `p < 2`.
fn power_sum_floor(m1: f64, p: f64, nx: f64, q: f64, ny: f64) -> f64 {
    if !(m1 > 0.0) {
        return 0.0;
    }
    let g = |pow: f64, norm: f64| {
        let a = m1 / 2.0;
        if pow >= 2.0 {
            a.powf(pow / 2.0)
        } else if norm > 0.0 {
            norm.powf(pow - 2.0) * a
        } else {
            f64::INFINITY
        }
    };
    let low = g(p, nx).min(g(q, ny));
    let high = nx.powf(p) + ny.powf(q);
    if high > 0.0 {
        low / high
    } else {
        0.0
    }
}

fn spectrum(m: &ComplexMatrix, t: &Trial) -> Result<SpectrumSet> {
    spectrum_normal(m, t.tol)
}

fn spec_eps(t: &Trial, scale: f64) -> f64 {
    t.tol.tol_spec * scale.max(1.0)
}

fn expect_contained(t: &mut Trial, label: &str, sub: &SpectrumSet, sup: &SpectrumSet, eps: f64) {
    let c = sub.contained_in(sup, eps);
    t.margin(label, eps - c.worst_distance);
    t.expect(label, c.contained, || format!("point {} at distance {:e} > {:e}", c.worst_point, c.worst_distance, eps));
}

fn expect_same_spectrum(t: &mut Trial, label: &str, a: &SpectrumSet, b: &SpectrumSet, eps: f64) {
    t.expect(label, a.approx_eq(b, eps), || format!("{:?} vs {:?} at {:e}", a.points(), b.points(), eps));
}

/// Positive definite times unitary: invertible with condition number at most 11.
fn invertible_factor(t: &mut Trial, n: usize, scale: f64) -> Result<ComplexMatrix> {
    let p = t.matrix(K::Posdef, n, scale)?;
    let u = t.matrix(K::Unitary, n, 1.0)?;
    Ok(&p * &u)
}

/// `U diag(d) U*` with `d` uniform in `[0, scale)` and one entry zero: a point
/// on the boundary of the positive cone, half of the time.
fn psd_maybe_singular(t: &mut Trial, n: usize, scale: f64) -> Result<ComplexMatrix> {
    if t.rng.index(2) == 0 {
        return t.matrix(K::Psd, n, scale);
    }
    let u = t.matrix(K::Unitary, n, 1.0)?;
    let mut d: Vec<C64> = (0..n).map(|_| C64::new(t.rng.uniform(0.0, scale), 0.0)).collect();
    d[t.rng.index(n)] = ZERO;
    Ok(conjugate_diag(&u, &d).hermitian_part())
}

fn pow_h(t: &Trial, m: &ComplexMatrix, e: f64) -> Result<ComplexMatrix> {
    func_hermitian(m, MatrixFunction::Pow(e), t.tol)
}

fn sqrt_h(t: &Trial, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    func_hermitian(m, MatrixFunction::Sqrt, t.tol)
}

const ALPHAS: [f64; 3] = [1.0 / 3.0, 0.5, 2.0 / 3.0];
const ROOTS: [f64; 3] = [2.0, 3.0, 4.0];

// 0 ≤ A ≤ B, powers and roots.

fn order_pair_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix, alphas: &[f64]) -> Result<()> {
    t.expect_loewner("sqrt_monotone", &sqrt_h(t, a)?, &sqrt_h(t, b)?)?;
    for &alpha in alphas {
        t.expect_loewner("power_monotone", &pow_h(t, a, alpha)?, &pow_h(t, b, alpha)?)?;
    }
    Ok(())
}

fn power_dominates_claim(t: &mut Trial, c: &ComplexMatrix, alpha: f64) -> Result<()> {
    t.expect_loewner("power_dominates", c, &pow_h(t, c, alpha)?)
}

fn root_subadditive_claim(t: &mut Trial, p: &ComplexMatrix, q: &ComplexMatrix, k: f64) -> Result<()> {
    let r = 1.0 / k;
    let lhs = pow_h(t, &sum_herm(p, q), r)?;
    let rhs = sum_herm(&pow_h(t, p, r)?, &pow_h(t, q, r)?);
    t.expect_loewner("root_subadditive", &lhs, &rhs)
}

fn sqrt_monotone(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let (sa, sp) = (t.rng.uniform(0.2, 2.0), t.rng.uniform(0.05, 1.0));
    let a = psd_maybe_singular(t, n, sa)?;
    let b = sum_herm(&a, &t.matrix(K::Psd, n, sp)?);
    t.record("A", &a);
    t.record("B", &b);
    let alpha = ALPHAS[t.rng.index(3)];
    order_pair_claims(t, &a, &b, &[alpha])?;

    let sc = t.rng.uniform(0.05, 1.0);
    let c = t.matrix(K::Psd, n, sc)?;
    t.record("C", &c);
    power_dominates_claim(t, &c, alpha)?;

    let sq = t.rng.uniform(0.2, 2.0);
    let (p, q) = t.pair(K::PositiveCommutingPair, n, sq)?;
    t.record("P", &p);
    t.record("Q", &q);
    let k = ROOTS[t.rng.index(3)];
    root_subadditive_claim(t, &p, &q, k)
}

fn fixture_sqrt_monotone(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let ordered = classify(a, t.tol)?.positive && loewner_leq(a, b, t.tol)?.verdict.is_true();
    if !t.assume("0 ≤ A ≤ B", ordered) {
        return Ok(());
    }
    order_pair_claims(t, a, b, &ALPHAS)?;
    if op_norm(a)? <= 1.0 {
        for alpha in ALPHAS {
            power_dominates_claim(t, a, alpha)?;
        }
    }
    let defect = (&(a * b) - &(b * a)).frobenius_norm();
    if defect <= t.tol.tol_eq * a.frobenius_norm().max(1.0) * b.frobenius_norm().max(1.0) {
        for k in ROOTS {
            root_subadditive_claim(t, a, b, k)?;
        }
    }
    Ok(())
}

fn sqrt_subadditive_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let lhs = sqrt_h(t, &sum_herm(a, b))?;
    let rhs = sum_herm(&sqrt_h(t, a)?, &sqrt_h(t, b)?);
    t.expect_loewner("sqrt_subadditive", &lhs, &rhs)
}

fn sqrt_subadditive(t: &mut Trial) -> Result<()> {
    let s = t.rng.uniform(0.1, 3.0);
    let (a, b) = t.pair(K::PositiveCommutingPair, t.dim, s)?;
    t.record("A", &a);
    t.record("B", &b);
    sqrt_subadditive_claims(t, &a, &b)
}

fn parallelogram_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let rhs = sum_herm(&gram(a), &gram(b)).scale_real(2.0);
    let sum = a + b;
    t.expect_loewner("parallelogram", &gram(&sum), &rhs)?;
    let abs = matrix_abs(&sum)?;
    t.expect_loewner("parallelogram_abs", &(&abs * &abs), &rhs)
}

fn abs_parallelogram(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let (sa, sb) = (t.rng.uniform(0.1, 3.0), t.rng.uniform(0.1, 3.0));
    let a = t.matrix(K::Generic, n, sa)?;
    let b = t.matrix(K::Generic, n, sb)?;
    t.record("A", &a);
    t.record("B", &b);
    parallelogram_claims(t, &a, &b)
}

// Order reversal of inverses and the spectrum of a positive matrix.

fn order_inverse_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if t.expect_invertible("B_invertible", b)?.is_true() {
        let ia = inverse(a, t.tol)?.hermitian_part();
        let ib = inverse(b, t.tol)?.hermitian_part();
        t.expect_loewner("inverse_reverses", &ib, &ia)?;
    }
    Ok(())
}

fn psd_spectrum_claims(t: &mut Trial, p: &ComplexMatrix) -> Result<()> {
    let tol = t.tol;
    let s = spectrum(p, t)?;
    let pn = op_norm(p)?;
    let eps = spec_eps(t, pn);
    t.expect("psd_spectrum_real", s.within_real_axis(eps), || format!("{:?}", s.points()));
    let min_re = s.points().iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    t.margin("psd_spectrum_min", min_re / pn.max(1.0));
    t.expect("psd_spectrum_nonnegative", min_re >= -tol.tol_psd * pn.max(1.0), || format!("min {min_re:e}"));
    Ok(())
}

fn order_inverse(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let (sa, sp) = (t.rng.uniform(0.2, 2.0), t.rng.uniform(0.05, 2.0));
    let a = t.matrix(K::Posdef, n, sa)?;
    let p = psd_maybe_singular(t, n, sp)?;
    let b = sum_herm(&a, &p);
    t.record("A", &a);
    t.record("B", &b);
    t.record("P", &p);
    order_inverse_claims(t, &a, &b)?;
    psd_spectrum_claims(t, &p)?;

    let pn = op_norm(&p)?;
    let lambda = -t.rng.uniform(0.05, 1.0) * pn.max(1e-3);
    // P − λI ≥ −λI, so its ratio is at least −λ/(‖P‖ − λ).
    let floor = -lambda / (pn - lambda);
    t.expect_invertible_floor("negative_shift_invertible", &p.shift(C64::new(-lambda, 0.0)), floor)?;
    Ok(())
}

// Invertibility of sums of absolute values.

fn main_theorem_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix, powers: &[f64]) -> Result<()> {
    let sum = a + b;
    if !t.premise_invertible("A+B invertible", &sum)? {
        return Ok(());
    }
    let sigma = min_singular_value(&sum)?;
    let snorm = op_norm(&sum)?;
    let (na, nb) = (op_norm(a)?, op_norm(b)?);
    let m1 = sigma * sigma / 2.0;

    let q = sum_herm(&gram(a), &gram(b));
    let lam = eigh(&q, t.tol)?.min();
    t.margin("parallelogram_margin_rel", (lam - m1) / (snorm * snorm));
    t.expect("parallelogram_bound", lam - m1 >= -1e-8 * snorm * snorm, || format!("λ_min {lam:e} < σ²/2 = {m1:e}"));
    t.expect_invertible_floor("abs_sq_sum", &q, power_sum_floor(m1, 2.0, na, 2.0, nb))?;

    let abs_sum = sum_herm(&matrix_abs(a)?, &matrix_abs(b)?);
    t.expect_invertible_floor("abs_sum", &abs_sum, power_sum_floor(m1, 1.0, na, 1.0, nb))?;

    for &p in powers {
        let pow_sum = sum_herm(&abs_pow(a, p)?, &abs_pow(b, p)?);
        t.expect_invertible_floor("abs_pow_sum", &pow_sum, power_sum_floor(m1, p, na, p, nb))?;
    }
    Ok(())
}

fn positive_combination_claim(t: &mut Trial, p: &ComplexMatrix, q: &ComplexMatrix, alpha: C64, beta: C64) -> Result<()> {
    let comb = &p.scale(alpha) + &q.scale(beta);
    if t.premise_invertible("αP+βQ invertible", &comb)? {
        // ⟨(P+Q)x,x⟩ = ε forces ‖Px‖ ≤ ‖P‖^{1/2}√ε and likewise for Q.
        let sigma = min_singular_value(&comb)?;
        let (np, nq) = (op_norm(p)?, op_norm(q)?);
        let c = alpha.norm() * np.sqrt() + beta.norm() * nq.sqrt();
        let floor = (sigma / c).powi(2) / (np + nq);
        t.expect_invertible_floor("positive_combination", &sum_herm(p, q), floor)?;
    }
    Ok(())
}

fn main_theorem(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let (sa, sb) = (t.rng.uniform(0.5, 2.0), t.rng.uniform(0.5, 2.0));
    let a = t.matrix(K::Generic, n, sa)?;
    let b = t.matrix(K::Generic, n, sb)?;
    t.record("A", &a);
    t.record("B", &b);
    let p = [2.0, 4.0, 8.0][t.rng.index(3)];
    main_theorem_claims(t, &a, &b, &[p])?;

    let sp = t.rng.uniform(0.2, 2.0);
    let (p, q) = if t.rng.index(2) == 0 {
        t.pair(K::PositiveCommutingPair, n, sp)?
    } else {
        (t.matrix(K::Psd, n, sp)?, t.matrix(K::Psd, n, sp)?)
    };
    let alpha = t.rng.complex_in_annulus(0.2, 2.0);
    let beta = t.rng.complex_in_annulus(0.2, 2.0);
    t.record("P", &p);
    t.record("Q", &q);
    positive_combination_claim(t, &p, &q, alpha, beta)
}

fn corollary_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix, p: f64, q: f64) -> Result<()> {
    if t.premise_invertible("A invertible", a)? {
        let sigma = min_singular_value(a)?;
        let m1 = sigma * sigma / 2.0;
        let diff = a - b;
        let lhs = sum_herm(&matrix_abs(&diff)?, &matrix_abs(b)?);
        t.expect_invertible_floor("difference_sum", &lhs, power_sum_floor(m1, 1.0, op_norm(&diff)?, 1.0, op_norm(b)?))?;

        let (re, im) = cartesian_parts(a);
        let lhs = sum_herm(&matrix_abs(&re)?, &matrix_abs(&im)?);
        t.expect_invertible_floor("cartesian_sum", &lhs, power_sum_floor(m1, 1.0, op_norm(&re)?, 1.0, op_norm(&im)?))?;
    }

    let sum = a + b;
    if t.premise_invertible("A+B invertible", &sum)? {
        let sigma = min_singular_value(&sum)?;
        let lhs = sum_herm(&abs_pow(a, p)?, &abs_pow(b, q)?);
        let floor = power_sum_floor(sigma * sigma / 2.0, p, op_norm(a)?, q, op_norm(b)?);
        t.expect_invertible_floor("mixed_powers", &lhs, floor)?;
    }
    Ok(())
}

fn corollaries_invertible(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let sa = t.rng.uniform(0.3, 2.0);
    let a = if t.rng.index(2) == 0 { invertible_factor(t, n, sa)? } else { t.matrix(K::Generic, n, sa)? };
    let sb = t.rng.uniform(0.1, 3.0);
    let b = t.matrix(K::Generic, n, sb)?;
    t.record("A", &a);
    t.record("B", &b);
    let exps = [0.5, 1.0, 1.7, 2.0, 3.2];
    let (p, q) = (exps[t.rng.index(exps.len())], exps[t.rng.index(exps.len())]);
    corollary_claims(t, &a, &b, p, q)
}

// 2×2 operator matrices.

fn block_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix) -> Result<()> {
    let big = block2x2(a, b, c, d)?;
    if t.premise_invertible("T invertible", &big)? {
        // T[x;0] = [Ax;Cx] gives |A|²+|C|² ≥ σ_min(T)².
        let m1 = min_singular_value(&big)?.powi(2);
        let left = sum_herm(&matrix_abs(a)?, &matrix_abs(c)?);
        t.expect_invertible_floor("first_column", &left, power_sum_floor(m1, 1.0, op_norm(a)?, 1.0, op_norm(c)?))?;
        let right = sum_herm(&matrix_abs(b)?, &matrix_abs(d)?);
        t.expect_invertible_floor("second_column", &right, power_sum_floor(m1, 1.0, op_norm(b)?, 1.0, op_norm(d)?))?;
    }
    Ok(())
}

/// Every eigenvalue of the normal diagonal block makes the triangular `T − λI` singular.
fn triangular_membership(t: &mut Trial, label: &str, big: &ComplexMatrix, block: &ComplexMatrix) -> Result<()> {
    let sigma = spectrum(block, t)?;
    for (k, &lam) in sigma.points().iter().enumerate() {
        t.expect_singular(&format!("{label}[{k}]"), &big.shift(-lam))?;
    }
    Ok(())
}

fn block_corollary(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let mut quad = Vec::with_capacity(4);
    for _ in 0..4 {
        let s = t.rng.uniform(0.3, 2.0);
        quad.push(t.matrix(K::Generic, n, s)?);
    }
    for (name, m) in ["A", "B", "C", "D"].iter().zip(&quad) {
        t.record(name, m);
    }
    let (a, b, c, d) = (&quad[0], &quad[1], &quad[2], &quad[3]);
    block_claims(t, a, b, c, d)?;

    // Triangular fixtures with normal diagonal blocks.
    let (sa, sd) = (t.rng.uniform(0.3, 2.0), t.rng.uniform(0.3, 2.0));
    let na = t.matrix(K::Normal, n, sa)?;
    let nd = t.matrix(K::Normal, n, sd)?;
    t.record("A_normal", &na);
    t.record("D_normal", &nd);
    let zero = ComplexMatrix::zeros(n);
    let lower = block2x2(&na, &zero, c, &nd)?;
    let upper = block2x2(&na, b, &zero, &nd)?;
    triangular_membership(t, "lower_eigenvalue_of_D", &lower, &nd)?;
    triangular_membership(t, "upper_eigenvalue_of_A", &upper, &na)?;

    // Away from σ(A) ∪ σ(D) both triangular operators are invertible, with
    // ‖(T−μ)⁻¹‖ ≤ 2/δ + ‖C‖/δ² where δ is the distance to the union.
    let union = spectrum(&na, t)?.union(&spectrum(&nd, t)?);
    let mu = t.rng.complex_gaussian() * sa.max(sd);
    let delta = union.points().iter().map(|z| (z - mu).norm()).fold(f64::INFINITY, f64::min);
    if delta > 1e-3 {
        for (label, m, off) in [("lower_resolvent", &lower, c), ("upper_resolvent", &upper, b)] {
            let shifted = m.shift(-mu);
            let inv_bound = 2.0 / delta + op_norm(off)? / (delta * delta);
            let floor = 1.0 / (inv_bound * op_norm(&shifted)?);
            t.expect_invertible_floor(label, &shifted, floor)?;
        }
    }
    Ok(())
}

// Commuting pairs with a normal member.

fn abs_sum_equivalence_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix, power: f64) -> Result<()> {
    let tol = t.tol;
    let v1 = invertibility(&sum_herm(&matrix_abs(a)?, &matrix_abs(b)?), tol)?;
    let v2 = invertibility(&sum_herm(&gram(a), &gram(b)), tol)?;
    let vn = invertibility(&sum_herm(&abs_pow(a, power)?, &abs_pow(b, power)?), tol)?;
    let decided = [v1, v2, vn].iter().all(|v| v.verdict.is_decided());
    if t.assume("verdicts decided", decided) {
        t.expect_verdict("abs_square_sum_agrees", v2.verdict, v1.verdict);
        t.expect_verdict("abs_power_sum_agrees", vn.verdict, v1.verdict);
    }
    Ok(())
}

fn abs_sum_equivalence(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let u = t.matrix(K::Unitary, n, 1.0)?;
    let scale = t.rng.uniform(0.2, 2.0);
    let mut f: Vec<C64> = (0..n).map(|_| t.rng.complex_gaussian() * scale).collect();
    let mut g: Vec<C64> = (0..n).map(|_| t.rng.complex_gaussian() * scale).collect();
    if t.rng.index(2) == 0 {
        let k = t.rng.index(n);
        f[k] = ZERO;
        g[k] = ZERO;
    }
    let a = conjugate_diag(&u, &f);
    let b = conjugate_diag(&u, &g);
    t.record("A", &a);
    t.record("B", &b);
    let power = [2.0, 3.0, 5.0][t.rng.index(3)];
    abs_sum_equivalence_claims(t, &a, &b, power)
}

// Normal operators through their Cartesian parts.

fn cartesian_abs_sum(m: &ComplexMatrix, shift: C64) -> Result<ComplexMatrix> {
    let (re, im) = cartesian_parts(m);
    let re = re.shift(C64::new(-shift.re, 0.0));
    let im = im.shift(C64::new(-shift.im, 0.0));
    Ok(sum_herm(&matrix_abs(&re)?, &matrix_abs(&im)?))
}

fn normal_agreement_claims(t: &mut Trial, m: &ComplexMatrix) -> Result<()> {
    let vt = invertibility(m, t.tol)?;
    if t.assume("T decided", vt.verdict.is_decided()) {
        let vc = invertibility(&cartesian_abs_sum(m, ZERO)?, t.tol)?;
        t.expect_verdict("cartesian_sum_agrees", vc.verdict, vt.verdict);
    }
    Ok(())
}

fn membership_claims(t: &mut Trial, m: &ComplexMatrix, lam: C64) -> Result<()> {
    t.expect_singular("member_cartesian_singular", &cartesian_abs_sum(m, lam)?)?;
    t.expect_singular("member_shift_singular", &m.shift(-lam))
}

fn normal_loewner_claims(t: &mut Trial, m: &ComplexMatrix) -> Result<()> {
    let (re, im) = cartesian_parts(m);
    let abs_re = matrix_abs(&re)?;
    let abs_im = matrix_abs(&im)?;
    let abs_t = matrix_abs(m)?;
    t.expect_loewner("abs_re_below_abs", &abs_re, &abs_t)?;
    t.expect_loewner("abs_im_below_abs", &abs_im, &abs_t)?;
    t.expect_loewner("abs_below_cartesian_sum", &abs_t, &sum_herm(&abs_re, &abs_im))
}

fn normal_characterization(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let s = t.rng.uniform(0.5, 2.0);
    let m = t.matrix(K::Normal, n, s)?;
    t.record("T", &m);
    normal_agreement_claims(t, &m)?;

    let sigma = spectrum(&m, t)?;
    let lam = sigma.points()[t.rng.index(n)];
    membership_claims(t, &m, lam)?;

    let mu = t.rng.complex_gaussian() * s;
    let dist = sigma.points().iter().map(|z| (z - mu).norm()).fold(f64::INFINITY, f64::min);
    if dist >= 10.0 * spec_eps(t, s) {
        let away = cartesian_abs_sum(&m, mu)?;
        // Eigenvalues of `away` are |a_k−α|+|b_k−β| ≥ |λ_k−μ|.
        let floor = dist / op_norm(&away)?;
        t.expect_invertible_floor("non_member_invertible", &away, floor)?;
    }
    normal_loewner_claims(t, &m)
}

// Spectral inclusions.

fn inclusion_claims(t: &mut Trial, s: &ComplexMatrix, m: &ComplexMatrix, scale: f64) -> Result<()> {
    let eps = spec_eps(t, scale);
    let (rs, is) = cartesian_parts(s);
    let (rt, it) = cartesian_parts(m);
    let lhs = spectrum(&(s + m), t)?;
    let real = spectrum(&sum_herm(&rs, &rt), t)?;
    let imag = spectrum(&sum_herm(&is, &it), t)?;
    expect_contained(t, "sum_in_cartesian_box", &lhs, &real.set_sum(&imag.rotate_i()), eps);

    let box_t = spectrum(&rt, t)?.set_sum(&spectrum(&it, t)?.rotate_i());
    expect_contained(t, "single_in_cartesian_box", &spectrum(m, t)?, &box_t, eps);

    let s1 = spectrum(&rs, t)?;
    let s2 = spectrum(&rt, t)?;
    expect_contained(t, "hermitian_sum", &spectrum(&sum_herm(&rs, &rt), t)?, &s1.set_sum(&s2), eps);
    expect_contained(t, "hermitian_product", &spectrum(&(&rs * &rt), t)?, &s1.set_prod(&s2), eps);

    let comm = (&(&s.adjoint() * m) - &(m * &s.adjoint())).frobenius_norm();
    let bound = t.tol.tol_eq * s.frobenius_norm().max(1.0) * m.frobenius_norm().max(1.0);
    t.expect("adjoint_commutes", comm <= bound, || format!("‖S*T − TS*‖ = {comm:e} > {bound:e}"));
    Ok(())
}

fn spectral_inclusion_sum(t: &mut Trial) -> Result<()> {
    let sc = t.rng.uniform(0.2, 2.0);
    let (s, m) = t.pair(K::CommutingNormalPair, t.dim, sc)?;
    t.record("S", &s);
    t.record("T", &m);
    inclusion_claims(t, &s, &m, 2.0 * sc)
}

// Location of spectra.

fn real_spectrum_claim(t: &mut Trial, h: &ComplexMatrix, scale: f64) -> Result<()> {
    let s = spectrum(h, t)?;
    let eps = spec_eps(t, scale);
    t.expect("hermitian_spectrum_real", s.within_real_axis(eps), || format!("{:?}", s.points()));
    Ok(())
}

fn unit_circle_claims(t: &mut Trial, u: &ComplexMatrix, lam: C64) -> Result<()> {
    let s = spectrum(u, t)?;
    let eps = spec_eps(t, 1.0);
    t.expect("unitary_spectrum_circle", s.within_unit_circle(eps), || format!("{:?}", s.points()));
    let gap = (1.0 - lam.norm()).abs();
    let lower = ComplexMatrix::identity(u.dim()).scale_real(gap);
    t.expect_loewner("unitary_resolvent", &lower, &matrix_abs(&u.shift(-lam))?)
}

fn reverse_triangle_claim(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let diff_abs = (&matrix_abs(a)? - &matrix_abs(b)?).hermitian_part();
    t.expect_loewner("reverse_triangle", &matrix_abs(&diff_abs)?, &matrix_abs(&(a - b))?)
}

fn spectrum_classics(t: &mut Trial) -> Result<()> {
    let tol = t.tol;
    let n = t.dim;
    let sh = t.rng.uniform(0.2, 3.0);
    let h = t.matrix(K::Hermitian, n, sh)?;
    let u = t.matrix(K::Unitary, n, 1.0)?;
    t.record("H", &h);
    t.record("U", &u);
    real_spectrum_claim(t, &h, sh)?;
    let lam = t.rng.complex_in_annulus(0.0, 2.0);
    unit_circle_claims(t, &u, lam)?;

    let sp = t.rng.uniform(0.2, 2.0);
    let (a, b) = t.pair(K::CommutingNormalPair, n, sp)?;
    t.record("A", &a);
    t.record("B", &b);
    reverse_triangle_claim(t, &a, &b)?;

    let basis = t.matrix(K::Unitary, n, 1.0)?;
    let real: Vec<C64> = (0..n).map(|_| C64::new(t.rng.gaussian_pair().0, 0.0)).collect();
    let imag: Vec<C64> = real.iter().map(|z| z * I).collect();
    for (label, d, sign) in [("real_spectrum_selfadjoint", real, -1.0), ("imaginary_spectrum_skew", imag, 1.0)] {
        let m = conjugate_diag(&basis, &d);
        let cls = classify(&m, tol)?;
        let sig = spectrum(&m, t)?;
        let nrm = m.frobenius_norm();
        let eps = spec_eps(t, nrm);
        let on_axis = if sign < 0.0 { sig.within_real_axis(eps) } else { sig.rotate_i().within_real_axis(eps) };
        if t.assume(label, cls.normal && on_axis) {
            let defect = (&m + &m.adjoint().scale_real(sign)).frobenius_norm();
            t.expect(label, defect <= tol.tol_eq * nrm.max(1.0), || format!("‖T ∓ T*‖ = {defect:e}"));
        }
    }
    Ok(())
}

// Spectral mapping through exp and ln.

fn exp_bridge_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix, scale: f64) -> Result<()> {
    let exp = |x: &ComplexMatrix| func_hermitian(x, MatrixFunction::Exp, t.tol);
    let sum = sum_herm(a, b);
    let e_sum = exp(&sum)?;
    let e_prod = &exp(a)? * &exp(b)?;
    let eps = spec_eps(t, op_norm(&e_sum)?);
    let sig_sum = spectrum(&sum, t)?;
    let sig_esum = spectrum(&e_sum, t)?;
    let sig_eprod = spectrum(&e_prod, t)?;
    expect_same_spectrum(t, "exp_sum_equals_product", &sig_esum, &sig_eprod, eps);
    expect_same_spectrum(t, "exp_spectral_mapping", &sig_esum, &sig_sum.map(|z| z.exp()), eps);
    let sa = spectrum(a, t)?;
    let sb = spectrum(b, t)?;
    let eps = spec_eps(t, scale);
    expect_contained(t, "sum_inclusion", &sig_sum, &sa.set_sum(&sb), eps);
    let sig_prod = spectrum(&(a * b), t)?;
    expect_contained(t, "product_inclusion", &sig_prod, &sa.set_prod(&sb), eps);
    Ok(())
}

fn log_bridge_claims(t: &mut Trial, p: &ComplexMatrix, q: &ComplexMatrix) -> Result<()> {
    let ln = |x: &ComplexMatrix| func_hermitian(x, MatrixFunction::Ln, t.tol);
    let pq = p * q;
    let ln_prod = ln(&pq.hermitian_part())?;
    let ln_sum = sum_herm(&ln(p)?, &ln(q)?);
    let eps = spec_eps(t, op_norm(&ln_sum)?);
    let (s_prod, s_sum) = (spectrum(&ln_prod, t)?, spectrum(&ln_sum, t)?);
    expect_same_spectrum(t, "log_product_equals_sum", &s_prod, &s_sum, eps);
    let eps = spec_eps(t, op_norm(&pq)?);
    let inclusion = spectrum(p, t)?.set_prod(&spectrum(q, t)?);
    let s_pq = spectrum(&pq, t)?;
    expect_contained(t, "positive_product_inclusion", &s_pq, &inclusion, eps);
    Ok(())
}

fn subadd_submult_bridge(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let sc = t.rng.uniform(0.2, 1.5);
    let (s, m) = t.pair(K::CommutingNormalPair, n, sc)?;
    let a = cartesian_parts(&s).0;
    let b = cartesian_parts(&m).0;
    t.record("A", &a);
    t.record("B", &b);
    exp_bridge_claims(t, &a, &b, 2.0 * sc)?;

    let sp = t.rng.uniform(0.5, 2.0);
    let (p0, q0) = t.pair(K::PositiveCommutingPair, n, sp)?;
    let p = p0.shift(C64::new(0.1, 0.0)).hermitian_part();
    let q = q0.shift(C64::new(0.1, 0.0)).hermitian_part();
    t.record("P", &p);
    t.record("Q", &q);
    log_bridge_claims(t, &p, &q)
}

// Products with positive invertible AB.

/// `min over 8 unit vectors of ⟨Rx,x⟩ − ⟨Lx,x⟩`, recorded and required ≥ −1e−8.
fn expect_quadratic_forms(t: &mut Trial, label: &str, l: &ComplexMatrix, r: &ComplexMatrix) -> Result<()> {
    for _ in 0..8 {
        let x = unit(t.vector(l.dim())?);
        let gap = r.quadratic_form(&x)? - l.quadratic_form(&x)?;
        t.margin(label, gap);
        t.expect(label, gap >= -1e-8, || format!("⟨Rx,x⟩ − ⟨Lx,x⟩ = {gap:e}"));
    }
    Ok(())
}

fn product_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let tol = t.tol;
    let ab = (a * b).hermitian_part();
    let s = sum_herm(&cogram(a), &gram(b));
    if t.expect_invertible("sum_invertible", &s)?.is_true() {
        t.expect_loewner("product_bound", &ab, &s.scale_real(2.0))?;
        let inv_sqrt = eigh(&s, tol)?.map(|x| 1.0 / x.sqrt());
        let c = eigh(&(&(&inv_sqrt * &ab) * &inv_sqrt).hermitian_part(), tol)?.max();
        t.margin_max("sharpest_constant", c);
        t.expect("sharpest_constant_at_most_half", c <= 0.5 + 1e-8, || format!("c = {c}"));
        let s_inv = inverse(&s, tol)?.hermitian_part();
        let ab_inv = inverse(&ab, tol)?.hermitian_part();
        expect_quadratic_forms(t, "quad_form_gap", &s_inv, &ab_inv)?;
    }
    Ok(())
}

fn left_product_claims(t: &mut Trial, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let tol = t.tol;
    let s = sum_herm(&gram(a), &cogram(b));
    if t.expect_invertible("left_sum_invertible", &s)?.is_true() {
        let s_inv = inverse(&s, tol)?.hermitian_part();
        let ba_inv = inverse(&(b * a).hermitian_part(), tol)?.hermitian_part();
        expect_quadratic_forms(t, "left_quad_form_gap", &s_inv, &ba_inv)?;
    }
    Ok(())
}

fn product_positive(t: &mut Trial) -> Result<()> {
    let tol = t.tol;
    let n = t.dim;
    let sa = t.rng.uniform(0.5, 2.0);
    let a = invertible_factor(t, n, sa)?;
    let sp = t.rng.uniform(0.2, 2.0);
    let p = t.matrix(K::Posdef, n, sp)?;
    let a_inv = inverse(&a, tol)?;
    let b = &a_inv * &p;
    t.record("A", &a);
    t.record("B", &b);
    t.record("P", &p);
    product_claims(t, &a, &b)?;

    let s_right = sum_herm(&cogram(&a), &gram(&a_inv));
    if t.expect_invertible("right_inverse_sum", &s_right)?.is_true() {
        let s_inv = inverse(&s_right, tol)?.hermitian_part();
        expect_quadratic_forms(t, "right_inverse_gap", &s_inv, &ComplexMatrix::identity(n))?;
    }

    left_product_claims(t, &a, &(&p * &a_inv))
}

// Finite sums.

fn finite_sum_claims(t: &mut Trial, mats: &[ComplexMatrix], coeffs: &[C64]) -> Result<()> {
    let tol = t.tol;
    let n = mats[0].dim();
    let zero = ComplexMatrix::zeros(n);
    let comb = mats.iter().zip(coeffs).fold(zero.clone(), |acc, (m, &c)| &acc + &m.scale(c));
    let grams = mats.iter().fold(zero.clone(), |acc, m| sum_herm(&acc, &gram(m)));
    let weight: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    for _ in 0..8 {
        let x = unit(t.vector(n)?);
        let lhs = comb.apply(&x)?.norm().powi(2);
        let rhs = weight * grams.quadratic_form(&x)?;
        t.margin("lemma_gap_rel", (rhs - lhs) / rhs.max(f64::MIN_POSITIVE));
        t.expect("lemma", lhs <= rhs * (1.0 + tol.tol_eq) + tol.tol_eq, || format!("{lhs:e} > {rhs:e}"));
    }

    if t.premise_invertible("Σ a_k A_k invertible", &comb)? {
        // ‖Σ a_k A_k x‖² ≤ (Σ|a_k|²)⟨Σ|A_k|² x,x⟩.
        let sigma = min_singular_value(&comb)?;
        let floor = sigma * sigma / (weight * op_norm(&grams)?);
        t.expect_invertible_floor("abs_square_sum", &grams, floor)?;
    }

    let cograms = mats.iter().fold(zero, |acc, m| sum_herm(&acc, &cogram(m)));
    if t.premise_invertible("Σ A_k A_k* invertible", &cograms)? {
        let total = sum_herm(&cograms, &grams);
        let floor = eigh(&cograms, tol)?.min() / op_norm(&total)?;
        t.expect_invertible_floor("two_sided_sum", &total, floor)?;
    }
    Ok(())
}

fn product_sum_claims(t: &mut Trial, lefts: &[ComplexMatrix], rights: &[ComplexMatrix]) -> Result<()> {
    let tol = t.tol;
    let zero = ComplexMatrix::zeros(lefts[0].dim());
    let prod_sum = lefts.iter().zip(rights).fold(zero.clone(), |acc, (l, r)| &acc + &(l * r));
    let cls = classify(&prod_sum, tol)?;
    let inv = invertibility(&prod_sum.hermitian_part(), tol)?;
    if t.assume("Σ A_k B_k positive invertible", cls.positive && inv.verdict.is_true()) {
        let s = lefts.iter().zip(rights).fold(zero, |acc, (l, r)| sum_herm(&acc, &sum_herm(&cogram(l), &gram(r))));
        t.expect_invertible("sum_theorem", &s)?;
        t.expect_loewner("half_bound", &prod_sum.hermitian_part(), &s.scale_real(0.5))?;
    }
    Ok(())
}

fn finite_sums(t: &mut Trial) -> Result<()> {
    let tol = t.tol;
    let n = t.dim;
    let k = 2 + t.rng.index(3);
    let mut mats = Vec::with_capacity(k);
    let mut coeffs = Vec::with_capacity(k);
    for j in 0..k {
        let s = t.rng.uniform(0.3, 2.0);
        let m = t.matrix(K::Generic, n, s)?;
        t.record(&format!("A{}", j + 1), &m);
        mats.push(m);
        coeffs.push(t.rng.complex_in_annulus(0.2, 2.0));
    }
    finite_sum_claims(t, &mats, &coeffs)?;

    // Σ L_k R_k = P with R_2.. generic and R_1 solved for.
    let s1 = t.rng.uniform(0.5, 2.0);
    let a1 = invertible_factor(t, n, s1)?;
    let sp = t.rng.uniform(0.2, 2.0);
    let p = t.matrix(K::Posdef, n, sp)?;
    let mut lefts = vec![a1.clone()];
    lefts.extend(mats.iter().skip(1).cloned());
    let zero = ComplexMatrix::zeros(n);
    let mut rights = vec![zero.clone()];
    for _ in 1..k {
        let s = t.rng.uniform(0.3, 2.0);
        rights.push(t.matrix(K::Generic, n, s)?);
    }
    let rest = lefts.iter().zip(&rights).skip(1).fold(zero, |acc, (l, r)| &acc + &(l * r));
    rights[0] = &inverse(&a1, tol)? * &(&p - &rest);
    t.record("P", &p);
    for (j, (l, r)) in lefts.iter().zip(&rights).enumerate() {
        t.record(&format!("L{}", j + 1), l);
        t.record(&format!("R{}", j + 1), r);
    }
    product_sum_claims(t, &lefts, &rights)
}
