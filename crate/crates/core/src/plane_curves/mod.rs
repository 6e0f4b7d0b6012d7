//! Homogeneous trivariate polynomials, projective matrices and the explicit
//! plane models of the Hermitian curve and its quotients.

mod hompoly;
mod matrix;
mod models;
mod series;

pub use hompoly::{Exponent, HomPoly3, SerialPoly, SerialTerm};
pub use matrix::{ProjMatrix, ProjPoint, SerialPoint};
pub(crate) use matrix::det3;
pub use models::{
    apply_coord_change, cube_identity_check, cubed_quotient_model, cyclic_model, degree3_quotient_model,
    envelope_model, family_model, frame_det_identity, frame_det_identity_cubed, frame_matrix,
    hermitian_canonical, hermitian_fermat, CurveModel, Family, QuotientModel,
};
pub use series::{branch_expansion_check, leading_order_consistent, BranchCheck, TruncatedSeries};

pub use crate::point_count::singular_points;
