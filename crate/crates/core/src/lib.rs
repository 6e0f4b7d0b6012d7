//! Explicit models of maximal curves covered by the Hermitian curve, with
//! exact point counting, cyclic quotient censuses and numerical-semigroup
//! arithmetic.

pub mod error;
pub mod gf_tower;
pub mod params;
pub mod plane_curves;
pub mod point_count;
pub mod quotient;
pub mod semigroup;
pub mod workbench;

pub use error::{Error, Result};
pub use params::SqrtQ;
