//! Dense complex matrices, LU, pivoted QR, the Schur eigensolver and structural predicates.

mod dense;
mod eig;
mod lu;
mod predicates;
mod qr;
mod scalar;
pub mod spectrum;
mod tolerance;

pub use dense::{exchange_matrix, mat_mul, DenseMatrix};
pub use eig::{eig_dense, schur_dense, EigenSystem, SchurForm, MAX_DENSE_DIM};
pub use lu::{determinant, mat_inverse, LuFactors};
pub use predicates::{
    approx_eq, is_antidiagonal, is_antisymmetric, is_centrosymmetric, is_diagonal, is_hermitian,
    is_hollow, is_normal, is_orthogonal, is_permutation, is_pseudo_hollow, is_real, is_symmetric,
    is_unitary, predicates, unitarity_defect, zero_cutoff, Predicates,
};
pub use qr::{null_space, nullity, numerical_rank, rank, rank_threshold, PivotedQr};
pub use scalar::{cis, lex_cmp, phase, principal_arg, principal_sqrt, Cmplx, I, ONE, ZERO};
pub use spectrum::{multiset_distance, spectrum_symmetry, SpectrumReport};
pub use tolerance::Tolerance;
