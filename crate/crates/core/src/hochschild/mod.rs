//! The zero-mode h-complex and the Hochschild h-differential complex over the image algebra.

mod algebra;
mod cochain;
mod complex;
mod suite;

pub use algebra::ImageAlgebra;
pub use cochain::{coface, extend_a_cochain, hochschild_d, multi_indices, random_cochain, Cochain, Evaluator, Term, EXPLICIT_LIMIT};
pub use complex::{build_zero_mode_complex, degree0_kernel_of_d, expected_total_dim, verify_theorem1, ZeroModeComplex};
pub use suite::{
  d_power_kernels, default_max_degree, unit_prefix_factor, filtered_homology_f0, verify_degree0, verify_unit_prefix, verify_hochschild,
  verify_identities, verify_power_kernels, verify_power_ranks, FilteredHomology, IdentityStats, PowerKernel, EXHAUSTIVE_LIMIT,
};
