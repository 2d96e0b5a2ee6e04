//! h-differential spaces and their generalized homology `H_(k) = Ker d^k / Im d^{h-k}`.

mod complex;
mod formula;
mod random;
mod space;
mod suite;

pub use complex::{canonical_hcomplex, cone, extend_endomorphism, induced_quotient_map, restrict_to, total_differential, CanonicalComplex, TotalComplex};
pub use formula::{feasibility, homology_dims_from_multiplicities, Feasibility};
pub use random::{random_invariant_triple, random_nilpotent, InvariantTriple};
pub use space::{gen_homology, homology_report, HDiffSpace, Homology, HomologyReport};
pub use suite::{verify_section3, MAX_RANDOM_DIM};
