//! Rational branches at singular points, read off the tangent cone.

use serde::{Deserialize, Serialize};

use super::{
    count_projective_points_capped, extension_field, maximality_check, singular_points, CountReport, MaximalityVerdict, Verdict,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::Result;
use crate::gf_tower::{poly_roots, FieldElement, Poly};
use crate::plane_curves::{CurveModel, HomPoly3, ProjMatrix, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointInfo {
    pub point: ProjPoint,
    pub multiplicity: u32,
    /// The tangent cone has `multiplicity` distinct lines.
    pub ordinary: bool,
    /// Tangent lines defined over the counting field; for an ordinary
    /// point these are the rational branches.
    pub rational_tangents: u32,
}

/// Points of the nonsingular model over F_{q^k}: smooth plane points plus
/// the rational branches through each singular one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonsingularCount {
    pub plane: CountReport,
    pub branches: u64,
    /// None when some singular point is not ordinary.
    pub total: Option<u64>,
    pub unresolved: u64,
}

/// A matrix over the point's field taking (0:0:1) to `p`.
fn move_to_origin(p: &ProjPoint) -> ProjMatrix {
    let f = p.field();
    let c = p.coords();
    let lead = c.iter().position(|x| !x.is_zero()).expect("projective point");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let unit = |i: usize| -> [FieldElement; 3] { std::array::from_fn(|r| if r == i { f.one() } else { f.zero() }) };
    let cols = [unit(others[0]), unit(others[1]), c.clone()];
    let m = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
    ProjMatrix::new(m).expect("columns span")
}

/// Multiplicity and tangent-cone data of `poly` at `p` (coordinates in the
/// polynomial's field).
pub fn singular_point_info(poly: &HomPoly3, p: &ProjPoint) -> Result<SingularPointInfo> {
    let moved = poly.substitute(move_to_origin(p).rows());
    let multiplicity = moved.terms().map(|(e, _)| e[0] + e[1]).min().unwrap_or(0);
    let f = poly.field();
    // cone(x, y) = Σ c_i x^i y^{m−i}; h(t) = cone(t, 1)
    let mut coeffs = vec![f.zero(); multiplicity as usize + 1];
    for (e, c) in moved.terms() {
        if e[0] + e[1] == multiplicity {
            coeffs[e[0] as usize] = c.clone();
        }
    }
    let h = Poly::new(f, coeffs);
    let deg = h.degree().unwrap_or(0) as u32;
    let at_infinity = multiplicity - deg;
    let squarefree = h.gcd(&h.derivative()).degree().unwrap_or(0) == 0;
    let ordinary = at_infinity <= 1 && (deg == 0 || squarefree);
    let finite = if deg == 0 { 0 } else { poly_roots(&h, f)?.len() as u32 };
    Ok(SingularPointInfo {
        point: p.clone(),
        multiplicity,
        ordinary,
        rational_tangents: finite + u32::from(at_infinity >= 1),
    })
}

/// Count of the nonsingular model over F_{q^k}, resolving ordinary singular
/// points by their rational tangents.
pub fn nonsingular_count(model: &CurveModel, k: u32) -> Result<NonsingularCount> {
    nonsingular_count_capped(model, k, DEFAULT_ENUMERATION_CAP)
}

/// As [`nonsingular_count`] with an explicit enumeration cap on q^k.
pub fn nonsingular_count_capped(model: &CurveModel, k: u32, cap: u64) -> Result<NonsingularCount> {
    let plane = count_projective_points_capped(model, k, cap)?;
    let target = extension_field(model.field(), k, cap)?;
    let poly = if &target == model.field() {
        model.poly.clone()
    } else {
        model.lift_to(&target)?.poly
    };
    let mut branches = 0;
    let mut unresolved = 0;
    for p in singular_points(model, k)? {
        let info = singular_point_info(&poly, &p)?;
        if info.ordinary {
            branches += info.rational_tangents as u64;
        } else {
            unresolved += 1;
        }
    }
    Ok(NonsingularCount {
        total: (unresolved == 0).then_some(plane.smooth + branches),
        plane,
        branches,
        unresolved,
    })
}

/// Hasse–Weil verdict for the nonsingular model; `Inconsistent` when some
/// singular point could not be resolved.
pub fn resolved_maximality_check(count: &NonsingularCount, g: u64) -> MaximalityVerdict {
    let Some(total) = count.total else {
        let mut v = maximality_check(&count.plane, g);
        v.verdict = Verdict::Inconsistent;
        v.reason = Some(format!("{} singular points are not ordinary", count.unresolved));
        return v;
    };
    let resolved = CountReport {
        total,
        singular: 0,
        smooth: total,
        ..count.plane.clone()
    };
    maximality_check(&resolved, g)
}

/// The singular points over F_{q^k} with their tangent-cone data.
pub fn singular_point_report(model: &CurveModel, k: u32) -> Result<Vec<SingularPointInfo>> {
    let target = extension_field(model.field(), k, DEFAULT_ENUMERATION_CAP)?;
    let poly = if &target == model.field() {
        model.poly.clone()
    } else {
        model.lift_to(&target)?.poly
    };
    singular_points(model, k)?
        .iter()
        .map(|p| singular_point_info(&poly, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_tower::ExtField;
    use crate::plane_curves::degree3_quotient_model;
    use crate::SqrtQ;

    fn cubic(terms: &[([u32; 3], i64)]) -> CurveModel {
        let f = ExtField::new(5, 1).unwrap();
        CurveModel::new("cubic", HomPoly3::from_int_terms(&f, terms))
    }

    #[test]
    fn split_node_resolves_to_a_line() {
        // Y²Z = X²(X+Z)
        let m = cubic(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]);
        let n = nonsingular_count(&m, 1).unwrap();
        assert_eq!((n.plane.total, n.plane.singular, n.branches), (5, 1, 2));
        assert_eq!(n.total, Some(6));
    }

    #[test]
    fn nonsplit_node_has_no_rational_branch() {
        // Y²Z = X²(X+2Z), 2 a non-square mod 5
        let m = cubic(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -2)]);
        let n = nonsingular_count(&m, 1).unwrap();
        assert_eq!((n.branches, n.total), (0, Some(6)));
        assert_eq!(nonsingular_count(&m, 2).unwrap().total, Some(26));
    }

    #[test]
    fn cusp_is_unresolved() {
        let m = cubic(&[([0, 2, 1], 1), ([3, 0, 0], -1)]);
        let info = singular_point_report(&m, 1).unwrap();
        assert_eq!(info.len(), 1);
        assert_eq!((info[0].multiplicity, info[0].ordinary), (2, false));
        assert_eq!(nonsingular_count(&m, 1).unwrap().total, None);
    }

    #[test]
    fn quotient_model_nodes_over_f25() {
        let m = degree3_quotient_model(SqrtQ::new(5).unwrap()).unwrap().model;
        let info = singular_point_report(&m, 1).unwrap();
        assert_eq!(info.len(), 7);
        assert!(info.iter().all(|i| i.multiplicity == 2 && i.ordinary && i.rational_tangents == 2));
        let n = nonsingular_count(&m, 1).unwrap();
        assert_eq!(n.total, Some(56));
        assert_eq!(resolved_maximality_check(&n, 3).verdict, Verdict::Maximal);
        assert_eq!(maximality_check(&n.plane, 3).verdict, Verdict::Inconsistent);
    }
}
