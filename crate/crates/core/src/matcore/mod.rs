//! Dense complex matrices and the spectral-calculus kernel.

mod block;
mod calculus;
mod eigen;
mod matrix;
mod spectrum;
mod tolerances;

pub use block::{block2x2, block_split};
pub use calculus::{
    abs_pow, abs_via_sqrt, cartesian_parts, eigh, func_from_eigen, func_hermitian, inverse, invertibility,
    is_invertible, loewner_leq, matrix_abs, min_singular_value, op_norm, pow_psd, singular_values, sqrt_psd,
    Comparison, Invertibility, MatrixFunction, Verdict,
};
pub use eigen::{hermitian_eigh, HermEigen, CONVERGENCE_RATIO, MAX_SWEEPS};
pub use matrix::{ComplexMatrix, ComplexVector, C64, I, ONE, ZERO};
pub use spectrum::{cartesian_commutator_defect, classify, normality_defect, spectrum_normal, Classification};
pub use tolerances::Tolerances;
