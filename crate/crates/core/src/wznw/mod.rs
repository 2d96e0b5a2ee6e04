//! The zero-mode model at height h.

mod bilinear;
mod chiral;
mod fock;
mod invariant;
mod model;
mod quea;
mod tensors;

pub use bilinear::{build_bilinears, pair_diag, verify_bilinears, Bilinears};
pub use chiral::{build_chiral_ops, raising_ops, verify_matrix_relations, ChiralOps};
pub use fock::{fock_basis, FockIndex, FockSpace};
pub use invariant::{invariant_basis, invariant_subspace, pair_vacuum, invariant_homology, verify_invariant_basis, InvariantHomology};
pub use model::{cache_path, ZeroModeModel, CACHE_FORMAT};
pub use quea::{build_quea, build_single_copy, verify_quea, weight, Quea, SingleCopy};
pub use tensors::{antisymmetrizer, check_tensors, dynamic_antisymmetrizer_poly, epsilon_q, epsilon_sign};
