//! Grid discretizations of the Volterra integral operator, the derivative
//! and the Dirichlet Laplacian on `(0, 1)`.
//!
//! Nodes are `x_i = i·h` with `h = 1/n`. The Volterra operator uses the
//! right-endpoint rule and the derivative the backward difference, which makes
//! the derivative an exact left inverse of the integral operator on the grid.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{eigh, min_singular_value, ComplexMatrix, Tolerances, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridLabel {
    Volterra,
    DerivativeForward,
    LaplacianDirichlet,
}

/// Matrix of a grid operator together with its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOperator {
    pub matrix: ComplexMatrix,
    /// Number of grid cells; `h = 1/grid_n`.
    pub grid_n: usize,
    pub h: f64,
    pub label: GridLabel,
}

fn require(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::GridTooSmall { n, min });
    }
    Ok(())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `h·L` with `L` the lower-triangular all-ones matrix on nodes `x_1..x_n`.
pub fn volterra_matrix(n: usize) -> Result<GridOperator> {
    require(n, 2)?;
    let h = 1.0 / n as f64;
    Ok(GridOperator {
        matrix: lower_ones(n, h),
        grid_n: n,
        h,
        label: GridLabel::Volterra,
    })
}

fn lower_ones(dim: usize, h: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |i, j| if j <= i { real(h) } else { real(0.0) })
}

/// `(1/h)·(I − S)` with `S` the subdiagonal shift.
pub fn derivative_matrix(n: usize) -> Result<GridOperator> {
    require(n, 2)?;
    let h = 1.0 / n as f64;
    let inv_h = n as f64;
    let matrix = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            real(inv_h)
        } else if i == j + 1 {
            real(-inv_h)
        } else {
            real(0.0)
        }
    });
    Ok(GridOperator { matrix, grid_n: n, h, label: GridLabel::DerivativeForward })
}

/// `(1/h²)·tridiag(−1, 2, −1)` on the `n − 1` interior nodes; the boundary
/// nodes carry the zero Dirichlet data and are removed.
pub fn laplacian_dirichlet(n: usize) -> Result<GridOperator> {
    require(n, 2)?;
    let h = 1.0 / n as f64;
    let inv_h2 = (n * n) as f64;
    let matrix = ComplexMatrix::from_fn(n - 1, |i, j| match i.abs_diff(j) {
        0 => real(2.0 * inv_h2),
        1 => real(-inv_h2),
        _ => real(0.0),
    });
    Ok(GridOperator { matrix, grid_n: n, h, label: GridLabel::LaplacianDirichlet })
}

/// `L_D + W*W` on the interior nodes, where `W` is the right-endpoint Volterra
/// matrix restricted to `x_1..x_{n−1}`.
pub fn schrodinger_like(n: usize) -> Result<ComplexMatrix> {
    require(n, 8)?;
    let lap = laplacian_dirichlet(n)?;
    let w = lower_ones(n - 1, lap.h);
    Ok((&lap.matrix + &(&w.adjoint() * &w)).hermitian_part())
}

/// One row of the grid-refinement table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub lambda_min_laplacian: f64,
    pub lambda_max_volterra_sq: f64,
    pub sigma_min_sum: f64,
}

pub fn convergence_row(n: usize) -> Result<ConvergenceRow> {
    require(n, 8)?;
    let tol = Tolerances::default();
    let lap = laplacian_dirichlet(n)?;
    let v = volterra_matrix(n)?.matrix;
    let vtv = (&v.adjoint() * &v).hermitian_part();
    Ok(ConvergenceRow {
        n,
        lambda_min_laplacian: eigh(&lap.matrix, &tol)?.min(),
        lambda_max_volterra_sq: eigh(&vtv, &tol)?.max(),
        sigma_min_sum: min_singular_value(&schrodinger_like(n)?)?,
    })
}

/// Rows for ascending grid sizes, each at least 8.
pub fn convergence_study(ns: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if ns.is_empty() {
        return Err(Error::Malformed("no grid sizes given".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Malformed(format!("grid sizes must be strictly ascending: {ns:?}")));
    }
    ns.iter().map(|&n| convergence_row(n)).collect()
}

/// Writes `n,lambda_min_laplacian,lambda_max_volterra_sq,sigma_min_sum` rows.
pub fn write_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Malformed(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(())
}
