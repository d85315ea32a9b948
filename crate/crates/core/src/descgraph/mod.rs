//! Description graphs: pairs classified by walk counts of every sort and length,
//! computed exactly, by modular evaluation of the adjugate, or spectrally.
//!
//! Walks only use non-blank entries: the blank label behaves as zero, so a
//! 0/1 input yields plain walk counts.

mod adjoint;
mod gamma;
mod spectral;

pub use adjoint::{adjoint_description_graph, is_prime, DEFAULT_PRIME};
pub use gamma::{gamma_description_graph, gamma_matrix, GammaMatrix, Truncation, WalkPolynomial, DEFAULT_TERM_BUDGET};
pub use spectral::{
    minimal_polynomial_degree, spectral_decomposition, spectral_description_graph, SpectralDecomposition,
    SpectralDescription, DEFAULT_TOLERANCE,
};
