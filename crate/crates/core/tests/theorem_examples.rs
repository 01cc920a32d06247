use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use opcheck_core::matcore::{ComplexMatrix, Tolerances, C64};
use opcheck_core::theorems::{
    check_fixture, counterexample_registry, replay, run_property, run_trial, DimRange, PropertyId as P, TrialOutcome,
    TrialStatus,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn diag(xs: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_real_diag(xs)
}

fn eye(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n)
}

fn fixture(id: P, inputs: &[(&str, ComplexMatrix)]) -> TrialOutcome {
    let map: BTreeMap<String, ComplexMatrix> = inputs.iter().map(|(k, m)| (k.to_string(), m.clone())).collect();
    check_fixture(id, &map, &tol())
}

#[track_caller]
fn assert_status(o: &TrialOutcome, status: TrialStatus) {
    assert_eq!(o.status, status, "{}", o.witness.message);
}

#[track_caller]
fn assert_pass(o: &TrialOutcome) {
    assert_status(o, TrialStatus::Pass);
}

#[track_caller]
fn seeded_pass(id: P, seed: u64, dim: usize) {
    let o = run_trial(id, seed, dim, &tol());
    assert_pass(&o);
}

#[test]
fn sqrt_monotone_examples() {
    assert_pass(&fixture(P::SqrtMonotone, &[("A", diag(&[1.0, 0.0])), ("B", eye(2))]));
    let a = diag(&[0.3, 0.9, 0.0]);
    assert_pass(&fixture(P::SqrtMonotone, &[("A", a.clone()), ("B", a)]));
    seeded_pass(P::SqrtMonotone, 7, 5);
    seeded_pass(P::SqrtMonotone, 7, 2);
}

#[test]
fn sqrt_monotone_rejects_unordered_inputs() {
    let o = fixture(P::SqrtMonotone, &[("A", eye(2)), ("B", diag(&[1.0, 0.0]))]);
    assert_status(&o, TrialStatus::Vacuous);
}

#[test]
fn sqrt_subadditive_examples() {
    assert_pass(&fixture(P::SqrtSubadditive, &[("A", diag(&[1.0, 4.0])), ("B", diag(&[4.0, 1.0]))]));
    assert_pass(&fixture(P::SqrtSubadditive, &[("A", diag(&[2.0, 3.0])), ("B", ComplexMatrix::zeros(2))]));
    seeded_pass(P::SqrtSubadditive, 11, 6);
}

#[test]
fn parallelogram_examples() {
    assert_pass(&fixture(P::AbsParallelogram, &[("A", eye(3)), ("B", eye(3))]));
    assert_pass(&fixture(P::AbsParallelogram, &[("A", eye(3)), ("B", eye(3).scale_real(-1.0))]));
    seeded_pass(P::AbsParallelogram, 3, 7);
}

#[test]
fn order_inverse_examples() {
    assert_pass(&fixture(P::OrderInverse, &[("A", eye(2)), ("B", eye(2).scale_real(2.0))]));
    let a = diag(&[0.5, 2.0]);
    assert_pass(&fixture(P::OrderInverse, &[("A", a.clone()), ("B", a)]));
    seeded_pass(P::OrderInverse, 5, 4);
}

#[test]
fn main_theorem_examples() {
    let o = fixture(P::MainTheorem, &[("A", diag(&[1.0, 0.0])), ("B", diag(&[0.0, 1.0]))]);
    assert_pass(&o);
    // λ_min(|A|²+|B|²) = 1 and σ_min(A+B)²/2 = ½.
    assert!((o.witness.margins["parallelogram_margin_rel"] - 0.5).abs() < 1e-12);

    let o = fixture(P::MainTheorem, &[("A", eye(2)), ("B", eye(2).scale_real(-1.0))]);
    assert_status(&o, TrialStatus::Vacuous);

    let o = run_trial(P::MainTheorem, 13, 6, &tol());
    assert_pass(&o);
    assert!(o.witness.margins["parallelogram_margin_rel"] >= -1e-8);
}

#[test]
fn corollary_examples() {
    assert_pass(&fixture(P::CorollariesInvertible, &[("A", eye(2)), ("B", ComplexMatrix::zeros(2))]));
    let a = diag(&[1.0, 2.0]).scale(C64::new(1.0, -1.0));
    assert_pass(&fixture(P::CorollariesInvertible, &[("A", a), ("B", ComplexMatrix::zeros(2))]));
    seeded_pass(P::CorollariesInvertible, 17, 5);
}

#[test]
fn block_examples() {
    let (i2, z2) = (eye(2), ComplexMatrix::zeros(2));
    assert_pass(&fixture(P::BlockCorollary, &[("A", i2.clone()), ("B", z2.clone()), ("C", z2.clone()), ("D", i2)]));
    let z1 = ComplexMatrix::zeros(1);
    let o = fixture(P::BlockCorollary, &[("A", diag(&[2.0])), ("B", z1.clone()), ("C", z1), ("D", diag(&[3.0]))]);
    assert_pass(&o);
    seeded_pass(P::BlockCorollary, 19, 3);
}

#[test]
fn abs_sum_equivalence_examples() {
    assert_pass(&fixture(P::AbsSumEquivalence, &[("A", diag(&[1.0, 0.0])), ("B", diag(&[0.0, 1.0]))]));
    let z = ComplexMatrix::zeros(3);
    assert_pass(&fixture(P::AbsSumEquivalence, &[("A", z.clone()), ("B", z)]));
    seeded_pass(P::AbsSumEquivalence, 23, 6);
}

#[test]
fn normal_characterization_examples() {
    let t = eye(3).scale(C64::from_polar(1.0, FRAC_PI_4));
    assert_pass(&fixture(P::NormalCharacterization, &[("T", t)]));
    let grid = [0.0, FRAC_PI_2, PI, 1.0];
    let t = ComplexMatrix::from_diag(&grid.map(|x| C64::from_polar(1.0, x)));
    assert_pass(&fixture(P::NormalCharacterization, &[("T", t)]));
    seeded_pass(P::NormalCharacterization, 29, 5);
}

#[test]
fn non_normal_input_is_vacuous() {
    let nil = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    assert_status(&fixture(P::NormalCharacterization, &[("T", nil)]), TrialStatus::Vacuous);
}

#[test]
fn spectral_inclusion_examples() {
    assert_pass(&fixture(P::SpectralInclusionSum, &[("S", eye(3)), ("T", eye(3))]));
    let s = ComplexMatrix::from_diag(&[C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.0, -1.0)]);
    let t = ComplexMatrix::from_diag(&[C64::new(3.0, 0.0), C64::new(0.2, 0.7), C64::new(-1.0, -1.0)]);
    assert_pass(&fixture(P::SpectralInclusionSum, &[("S", s), ("T", t)]));
    seeded_pass(P::SpectralInclusionSum, 31, 6);
}

#[test]
fn spectrum_classics_examples() {
    let swap = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    assert_pass(&fixture(P::SpectrumClassics, &[("H", swap)]));
    let u = ComplexMatrix::from_diag(&[C64::from_polar(1.0, 0.4), C64::from_polar(1.0, 2.1)]);
    assert_pass(&fixture(P::SpectrumClassics, &[("U", u)]));
    seeded_pass(P::SpectrumClassics, 37, 4);
}

#[test]
fn bridge_examples() {
    let z = ComplexMatrix::zeros(3);
    assert_pass(&fixture(P::SubaddSubmultBridge, &[("A", z.clone()), ("B", z)]));
    assert_pass(&fixture(P::SubaddSubmultBridge, &[("A", diag(&[0.5, 1.0, 2.0])), ("B", diag(&[3.0, 0.25, 1.0]))]));
    seeded_pass(P::SubaddSubmultBridge, 41, 4);
}

#[test]
fn product_positive_examples() {
    assert_pass(&fixture(P::ProductPositive, &[("A", eye(2)), ("B", eye(2))]));
    assert_pass(&fixture(P::ProductPositive, &[("A", diag(&[2.0, 1.0])), ("B", diag(&[0.5, 1.0]))]));
    seeded_pass(P::ProductPositive, 43, 5);
}

#[test]
fn product_positive_without_premise_is_vacuous() {
    let grid: Vec<f64> = (0..6).map(|k| k as f64 / 5.0).collect();
    let a = diag(&grid);
    assert_status(&fixture(P::ProductPositive, &[("A", a.clone()), ("B", a)]), TrialStatus::Vacuous);
}

#[test]
fn finite_sum_examples() {
    assert_pass(&fixture(P::FiniteSums, &[("A1", eye(3))]));
    let k = 3.0f64;
    let a = eye(2).scale_real(1.0 / k.sqrt());
    assert_pass(&fixture(P::FiniteSums, &[("A1", a.clone()), ("A2", a.clone()), ("A3", a)]));
    seeded_pass(P::FiniteSums, 47, 4);
}

#[test]
fn finite_sums_with_right_factors() {
    let a1 = diag(&[1.0, 2.0]);
    let b1 = diag(&[1.0, 0.5]);
    let a2 = eye(2);
    let b2 = eye(2).scale_real(0.5);
    let o = fixture(P::FiniteSums, &[("A1", a1), ("A2", a2), ("B1", b1), ("B2", b2)]);
    assert_pass(&o);
}

#[test]
fn missing_input_is_a_fault() {
    let o = fixture(P::MainTheorem, &[("A", eye(2))]);
    assert_eq!(o.status, TrialStatus::Fail);
    assert!(o.witness.message.starts_with("fault:"), "{}", o.witness.message);
}

#[test]
fn registry_confirms_all_six() {
    let reg = counterexample_registry(&tol()).unwrap();
    let names: Vec<&str> = reg.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        ["negated_pair", "one_minus_i", "squares_cancel", "cos_sin_diagonal", "cos_sin_hermitian", "grid_touching_zero"]
    );
    assert!(reg.iter().all(|c| c.confirmed));
}

#[test]
fn vacuity_stays_within_budget() {
    for id in P::ALL {
        let r = run_property(id, 40, DimRange::default(), 5, &tol());
        assert!(r.passed(), "{id}");
        assert!(r.vacuous_fraction() <= 0.5, "{id}: {}", r.vacuous_fraction());
    }
}

#[test]
fn injected_fault_replays() {
    let mut broken = tol();
    broken.tol_psd = 0.0;
    let r = run_property(P::OrderInverse, 60, DimRange::default(), 42, &broken);
    let w = r.failures.first().expect("a failure under tol_psd = 0");
    let again = replay(P::OrderInverse, w, &broken);
    assert_eq!(again.status, TrialStatus::Fail);
    assert_eq!(serde_json::to_string(&again.witness).unwrap(), serde_json::to_string(w).unwrap());
}
