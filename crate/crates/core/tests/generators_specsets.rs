use opcheck_core::generators::{gen, gen_matrix, gen_pair, gen_vector, Generated, GeneratorKind as K, GeneratorSpec};
use opcheck_core::matcore::{classify, is_invertible, op_norm, ComplexMatrix, Tolerances, Verdict, C64, I};
use opcheck_core::specsets::SpectrumSet;
use proptest::prelude::*;

const SINGLE: [K; 6] = [K::Generic, K::Hermitian, K::Psd, K::Posdef, K::Normal, K::Unitary];
const PAIRS: [K; 3] = [K::CommutingPair, K::CommutingNormalPair, K::PositiveCommutingPair];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn set(points: &[C64]) -> SpectrumSet {
    SpectrumSet::new(points.to_vec())
}

fn arb_set() -> impl Strategy<Value = SpectrumSet> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..6)
        .prop_map(|v| SpectrumSet::new(v.into_iter().map(|(a, b)| c(a, b)).collect()))
}

fn sorted(s: &SpectrumSet) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = s.points().iter().map(|z| (z.re, z.im)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kinds_satisfy_their_class(seed in any::<u64>(), n in 1usize..=8, scale in 0.1f64..5.0) {
        let tol = Tolerances::default();
        for kind in SINGLE {
            let m = gen_matrix(kind, n, seed, scale).unwrap();
            let cls = classify(&m, &tol).unwrap();
            match kind {
                K::Hermitian => prop_assert!(cls.hermitian),
                K::Psd => prop_assert!(cls.positive),
                K::Posdef => {
                    prop_assert!(cls.positive);
                    prop_assert_eq!(is_invertible(&m, &tol).unwrap(), Verdict::True);
                }
                K::Normal => prop_assert!(cls.normal),
                K::Unitary => prop_assert!(cls.unitary),
                _ => {}
            }
            if matches!(kind, K::Generic | K::Hermitian | K::Normal) {
                let norm = op_norm(&m).unwrap();
                prop_assert!((0.9 * scale..=1.1 * scale).contains(&norm), "{kind:?}: {norm} vs {scale}");
            }
        }
    }

    #[test]
    fn pairs_commute(seed in any::<u64>(), n in 1usize..=8) {
        for kind in PAIRS {
            let (a, b) = gen_pair(kind, n, seed, 1.0).unwrap();
            let defect = (&(&a * &b) - &(&b * &a)).frobenius_norm();
            prop_assert!(defect <= 1e-11 * op_norm(&a).unwrap().max(1e-300) * op_norm(&b).unwrap().max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), n in 1usize..=6) {
        for kind in SINGLE.into_iter().chain(PAIRS) {
            let spec = GeneratorSpec::new(kind, n, seed);
            prop_assert_eq!(gen(&spec).unwrap(), gen(&spec).unwrap());
        }
    }

    #[test]
    fn set_arithmetic_cardinality_and_symmetry(a in arb_set(), b in arb_set()) {
        prop_assert_eq!(a.set_sum(&b).len(), a.len() * b.len());
        prop_assert_eq!(a.set_prod(&b).len(), a.len() * b.len());
        prop_assert_eq!(sorted(&a.set_sum(&b)), sorted(&b.set_sum(&a)));
        prop_assert!(a.set_prod(&b).approx_eq(&b.set_prod(&a), 1e-12));
    }

    #[test]
    fn containment_is_reflexive_and_monotone(a in arb_set(), b in arb_set(), eps in 1e-12f64..1.0) {
        prop_assert!(a.contained_in(&a, eps).contained);
        if a.contained_in(&b, eps).contained {
            prop_assert!(a.contained_in(&b, 2.0 * eps).contained);
        }
    }
}

#[test]
fn generator_examples() {
    let h = gen_matrix(K::Hermitian, 1, 17, 1.0).unwrap();
    assert_eq!(h[(0, 0)].im, 0.0);
    let u = gen_matrix(K::Unitary, 6, 17, 1.0).unwrap();
    assert!((&(&u.adjoint() * &u) - &ComplexMatrix::identity(6)).frobenius_norm() <= 1e-12);
    let (a, b) = gen_pair(K::CommutingNormalPair, 5, 17, 1.0).unwrap();
    let defect = (&(&a * &b) - &(&b * &a)).frobenius_norm();
    assert!(defect <= 1e-12 * op_norm(&a).unwrap() * op_norm(&b).unwrap());
}

#[test]
fn generator_rejects_zero_dim() {
    assert!(gen_matrix(K::Generic, 0, 1, 1.0).is_err());
    assert!(gen_vector(0, 1).is_err());
}

#[test]
fn generator_spec_json() {
    let spec: GeneratorSpec = serde_json::from_str(r#"{"kind": "positive_commuting_pair", "dim": 3, "seed": 9}"#).unwrap();
    assert_eq!(spec, GeneratorSpec::new(K::PositiveCommutingPair, 3, 9));
    assert!(matches!(gen(&spec).unwrap(), Generated::Pair(_, _)));
}

#[test]
fn vector_examples() {
    let v = gen_vector(1, 5).unwrap();
    assert!(v.entries()[0].re.is_finite() && v.entries()[0].im.is_finite());
    assert_eq!(gen_vector(4, 5).unwrap(), gen_vector(4, 5).unwrap());
    assert_ne!(gen_vector(4, 5).unwrap(), gen_vector(4, 6).unwrap());
}

#[test]
fn set_sum_examples() {
    let s = set(&[c(0.0, 0.0)]).set_sum(&SpectrumSet::from_real(&[1.0, 2.0]));
    assert_eq!(s.points(), &[c(1.0, 0.0), c(2.0, 0.0)]);
    let s = SpectrumSet::from_real(&[1.0, -1.0]).set_sum(&set(&[I, -I]));
    assert!(s.approx_eq(&set(&[c(1.0, 1.0), c(1.0, -1.0), c(-1.0, 1.0), c(-1.0, -1.0)]), 0.0));
    assert_eq!(SpectrumSet::from_real(&[2.0]).set_sum(&SpectrumSet::from_real(&[3.0])).points(), &[c(5.0, 0.0)]);
}

#[test]
fn set_prod_examples() {
    let lam = set(&[c(1.0, 2.0), c(-3.0, 0.5)]);
    assert!(SpectrumSet::from_real(&[1.0]).set_prod(&lam).approx_eq(&lam, 0.0));
    let p = SpectrumSet::from_real(&[2.0, 3.0]).set_prod(&SpectrumSet::from_real(&[5.0]));
    assert_eq!(p.points(), &[c(10.0, 0.0), c(15.0, 0.0)]);
    let z = SpectrumSet::from_real(&[0.0]).set_prod(&lam);
    assert!(z.points().iter().all(|p| p.norm() == 0.0) && z.len() == 2);
}

#[test]
fn rotation_and_translation() {
    assert_eq!(SpectrumSet::from_real(&[1.0]).rotate_i().points(), &[I]);
    assert_eq!(set(&[I]).rotate_i().points(), &[c(-1.0, 0.0)]);
    assert_eq!(SpectrumSet::from_real(&[0.0]).translate(c(0.3, -0.7)).points(), &[c(0.3, -0.7)]);
}

#[test]
fn containment_examples() {
    let sup = SpectrumSet::from_real(&[1.0, 2.0]);
    assert!(SpectrumSet::from_real(&[1.0]).contained_in(&sup, 1e-9).contained);
    let r = SpectrumSet::from_real(&[1.5]).contained_in(&sup, 0.1);
    assert!(!r.contained);
    assert_eq!(r.worst_point, c(1.5, 0.0));
    assert!((r.worst_distance - 0.5).abs() < 1e-15);
    let lhs = SpectrumSet::from_real(&[4.0, 6.0]);
    let rhs = SpectrumSet::from_real(&[1.0, 2.0]).set_sum(&SpectrumSet::from_real(&[3.0, 4.0]));
    assert!(lhs.contained_in(&rhs, 1e-12).contained);
}

#[test]
fn axis_and_circle() {
    assert!(SpectrumSet::from_real(&[1.0, -3.0]).within_real_axis(1e-12));
    assert!(!set(&[c(0.0, 1e-3)]).within_real_axis(1e-7));
    assert!(set(&[C64::from_polar(1.0, 2.1)]).within_unit_circle(1e-12));
}

#[test]
fn json_shape() {
    let s = set(&[c(1.0, -2.0)]);
    let v: serde_json::Value = serde_json::to_value(&s).unwrap();
    assert_eq!(v["points"], serde_json::json!([[1.0, -2.0]]));
    let back: SpectrumSet = serde_json::from_value(v).unwrap();
    assert_eq!(back.points(), s.points());
}
