use std::f64::consts::PI;

use opcheck_core::discretize::{
    convergence_row, convergence_study, derivative_matrix, laplacian_dirichlet, schrodinger_like, volterra_matrix,
    write_csv,
};
use opcheck_core::matcore::{eigh, min_singular_value, ComplexMatrix, Tolerances};

/// Largest eigenvalue of `V*V` for the continuous Volterra operator, `(π/2)⁻²`.
fn volterra_top() -> f64 {
    4.0 / (PI * PI)
}

#[test]
fn derivative_inverts_volterra() {
    for n in [8, 64, 256] {
        let d = derivative_matrix(n).unwrap().matrix;
        let v = volterra_matrix(n).unwrap().matrix;
        let err = (&(&d * &v) - &ComplexMatrix::identity(n)).frobenius_norm();
        assert!(err <= n as f64 * 1e-13, "n={n}: {err:e}");
    }
}

#[test]
fn small_grids_are_rejected() {
    assert!(volterra_matrix(1).is_err());
    assert!(schrodinger_like(4).is_err());
    assert!(convergence_study(&[]).is_err());
    assert!(convergence_study(&[100, 50]).is_err());
}

#[test]
fn laplacian_matches_closed_form() {
    let tol = Tolerances::default();
    for n in [10, 50, 100] {
        let lap = laplacian_dirichlet(n).unwrap();
        let h = lap.h;
        let e = eigh(&lap.matrix, &tol).unwrap();
        for k in 1..n {
            let exact = 4.0 / (h * h) * (k as f64 * PI * h / 2.0).sin().powi(2);
            assert!((e.eigenvalues[k - 1] - exact).abs() <= 1e-9 * exact.max(1.0) * n as f64, "n={n} k={k}");
        }
    }
}

#[test]
fn volterra_top_eigenvalue_converges() {
    let rows = convergence_study(&[50, 100, 200]).unwrap();
    let errs: Vec<f64> = rows.iter().map(|r| (r.lambda_max_volterra_sq - volterra_top()).abs() / volterra_top()).collect();
    assert!(errs[2] <= 0.01, "{errs:?}");
    assert!(errs[0] > errs[1] && errs[1] > errs[2]);
}

#[test]
fn shifted_operator_stays_invertible() {
    for n in [50, 80] {
        let row = convergence_row(n).unwrap();
        assert!(row.sigma_min_sum >= 9.0);
        assert_eq!(row.sigma_min_sum, min_singular_value(&schrodinger_like(n).unwrap()).unwrap());
    }
}

#[test]
fn csv_has_header_and_rows() {
    let rows = convergence_study(&[10, 20]).unwrap();
    let mut out = Vec::new();
    write_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("n,"));
    assert!(lines[1].starts_with("10,"));
}
