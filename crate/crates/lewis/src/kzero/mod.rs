//! K₀-level invariants: dimension matrices, free-module classification,
//! `K_0^{free}` presentations, projective decompositions and `G₀` ranks.

mod decompose;
mod dims;
mod gzero;
mod resolution;

pub use decompose::{free_sum, freeness_decompose, random_idempotent, DecomposeFailure, FreeDecomposition};
pub use dims::{
    check_rfd_meadow, classify_free, classify_free_for, dim_matrix, k0_free_fixed_point, k0_kernel_lattice,
    same_lattice, stabilizer_level, DimensionMatrix,
};
pub use gzero::{
    g0_splitting, morita_factor, simples_count, twisted_matrix_units, twisted_simples, G0Splitting, G0Term,
    MoritaFactor,
};
pub use resolution::{constant_z_resolution_check, ResolutionReport};
