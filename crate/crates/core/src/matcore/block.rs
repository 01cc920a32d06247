use crate::error::{Error, Result};

use super::matrix::ComplexMatrix;

/// Assembles `[[A, B], [C, D]]` from four equally sized quadrants.
pub fn block2x2(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    for q in [b, c, d] {
        if q.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: q.dim() });
        }
    }
    Ok(ComplexMatrix::from_fn(2 * n, |i, j| {
        let quadrant = match (i < n, j < n) {
            (true, true) => a,
            (true, false) => b,
            (false, true) => c,
            (false, false) => d,
        };
        quadrant[(i % n, j % n)]
    }))
}

/// Inverse of [`block2x2`].
pub fn block_split(t: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    let dim = t.dim();
    if dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    let n = dim / 2;
    let quad = |r: usize, c: usize| ComplexMatrix::from_fn(n, |i, j| t[(r * n + i, c * n + j)]);
    Ok((quad(0, 0), quad(0, 1), quad(1, 0), quad(1, 1)))
}
