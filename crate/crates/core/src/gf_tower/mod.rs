//! Finite field tower arithmetic: prime-power fields with deterministic
//! moduli, embeddings between them, root finding and multiplicative orders.

pub mod arith;
mod embed;
mod field;
mod fp_linalg;
pub(crate) mod fp_poly;
mod frame;
mod poly;
mod roots;

pub use embed::Embedding;
pub use field::{ExtField, FieldDescriptor, FieldElement, DEFAULT_SIZE_CAP_LOG2};
pub use fp_linalg::FpMatrix;
pub use frame::{frame_parameter, FrameChecks, FrameParameter};
pub use poly::Poly;
pub use roots::{find_root_of_unity, least_primitive_element, mult_order, poly_roots, Root};

use serde::Serializer;

use crate::error::Result;

/// F_{p^k} under the default size cap.
pub fn build_field(p: u64, k: usize) -> Result<ExtField> {
    ExtField::new(p, k)
}

/// x^{p^e}; negative e inverts the Frobenius.
pub fn frobenius_power(x: &FieldElement, e: i64) -> FieldElement {
    x.frobenius_power(e)
}

/// Serializes an element as its coefficient list over F_p, low degree first.
pub fn ser_element<S: Serializer>(x: &FieldElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.coeffs())
}
