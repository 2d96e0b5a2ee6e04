//! Exact generalized homology for nilpotent operators over cyclotomic fields, applied to a
//! quantum group invariant Fock space model at height h.
//!
//! Layers, bottom-up:
//! - [`cyclo`]: exact arithmetic in Q(ζ_{4h}) with q = ζ², q-integers and divided powers.
//! - [`linalg`]: sparse exact matrices, echelon forms, subspaces, nilpotent rank profiles.
//! - [`ndiff`]: h-differential spaces, generalized homology, cones and the canonical h-complex.
//! - [`wznw`]: the zero-mode Fock modules, quantum group actions and the invariant subspace.
//! - [`hochschild`]: the zero-mode h-complex, the Hochschild h-differential and filtered homology.
//! - [`cli`]: report assembly behind the `qhomology` binary.

pub mod cli;
pub mod cyclo;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod ndiff;
pub mod report;
pub mod wznw;

pub use cyclo::{Field, Scalar};
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, SparseVec, Subspace};
