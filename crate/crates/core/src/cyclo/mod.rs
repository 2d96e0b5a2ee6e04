//! Exact arithmetic in the cyclotomic field Q(ζ) with ζ a primitive 4h-th root of unity.
//!
//! The deformation parameter is q = ζ², so q^h = -1 and q^{1/2} = ζ is exactly representable.
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(4h)-1} with a single common denominator.

mod field;
mod json;
mod qnum;
mod scalar;

pub use field::{cyclotomic_polynomial, Field};
pub use json::ScalarJson;
pub use scalar::Scalar;
