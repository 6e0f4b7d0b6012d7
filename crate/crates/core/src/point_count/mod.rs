//! Exhaustive point counts of plane models and Hasse–Weil bookkeeping.

mod branches;
mod table;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use branches::{
    nonsingular_count, nonsingular_count_capped, resolved_maximality_check, singular_point_info, singular_point_report, NonsingularCount,
    SingularPointInfo,
};
pub use table::{Compiled, TableField};

use crate::error::{Error, Result};
use crate::gf_tower::{arith, ExtField};
use crate::plane_curves::{CurveModel, HomPoly3, ProjPoint};

/// Default cap on the size of the field swept by enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub model: String,
    /// Size of the model's coefficient field.
    pub q: u64,
    pub k: u32,
    /// Size of the field the points live in, q^k.
    pub field_size: u64,
    pub total: u64,
    pub singular: u64,
    pub smooth: u64,
}

struct Prepared {
    table: std::sync::Arc<TableField>,
    f: Compiled,
    partials: [Compiled; 3],
}

/// F_{q^k} for a model over F_q, within `cap`.
pub fn extension_field(base: &ExtField, k: u32, cap: u64) -> Result<ExtField> {
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let deg = base.degree() * k as usize;
    let p = base.characteristic() as u64;
    match arith::checked_pow(p, deg as u32) {
        Some(n) if n <= cap => ExtField::new(p, deg),
        _ => Err(Error::CapExceeded(format!(
            "F_{{{p}^{deg}}} exceeds the enumeration cap of {cap} elements"
        ))),
    }
}

fn prepare(model: &CurveModel, k: u32, cap: u64) -> Result<Prepared> {
    let target = extension_field(model.field(), k, cap)?;
    let poly: HomPoly3 = if &target == model.field() {
        model.poly.clone()
    } else {
        model.lift_to(&target)?.poly
    };
    let table = TableField::get(&target)?;
    let f = table.compile(&poly);
    let partials = [0, 1, 2].map(|i| table.compile(&poly.partial(i)));
    Ok(Prepared { table, f, partials })
}

impl Prepared {
    fn is_singular(&self, pt: [u32; 3]) -> bool {
        self.partials.iter().all(|d| d.eval(&self.table, pt) == 0)
    }

    /// (total, singular) over the points (1 : y : z) with y in `ys`.
    fn sweep_affine(&self, ys: std::ops::Range<u32>) -> (u64, u64) {
        let n = self.table.size();
        let mut total = 0;
        let mut singular = 0;
        for y in ys {
            for z in 0..n {
                let pt = [1, y, z];
                if self.f.eval(&self.table, pt) == 0 {
                    total += 1;
                    if self.is_singular(pt) {
                        singular += 1;
                    }
                }
            }
        }
        (total, singular)
    }

    /// (total, singular) on the line X₀ = 0.
    fn sweep_line(&self) -> (u64, u64) {
        let mut pts: Vec<[u32; 3]> = (0..self.table.size()).map(|z| [0, 1, z]).collect();
        pts.push([0, 0, 1]);
        let mut total = 0;
        let mut singular = 0;
        for pt in pts {
            if self.f.eval(&self.table, pt) == 0 {
                total += 1;
                if self.is_singular(pt) {
                    singular += 1;
                }
            }
        }
        (total, singular)
    }

    fn points(&self, want_singular: bool) -> Vec<ProjPoint> {
        let n = self.table.size();
        let mut reps: Vec<[u32; 3]> = Vec::new();
        for y in 0..n {
            for z in 0..n {
                reps.push([1, y, z]);
            }
        }
        for z in 0..n {
            reps.push([0, 1, z]);
        }
        reps.push([0, 0, 1]);
        reps.into_par_iter()
            .filter(|&pt| self.f.eval(&self.table, pt) == 0 && (!want_singular || self.is_singular(pt)))
            .map(|pt| {
                ProjPoint::new(pt.map(|r| self.table.to_element(r))).expect("normalized representative")
            })
            .collect()
    }
}

fn report(model: &CurveModel, k: u32, table: &TableField, total: u64, singular: u64) -> CountReport {
    CountReport {
        model: model.name.clone(),
        q: model.field().size_u64().expect("model field within cap"),
        k,
        field_size: table.size() as u64,
        total,
        singular,
        smooth: total - singular,
    }
}

/// Number of points of the plane model over F_{q^k}, each classified as
/// singular or smooth by its partial derivatives.
pub fn count_projective_points(model: &CurveModel, k: u32) -> Result<CountReport> {
    count_projective_points_capped(model, k, DEFAULT_ENUMERATION_CAP)
}

pub fn count_projective_points_capped(model: &CurveModel, k: u32, cap: u64) -> Result<CountReport> {
    let prep = prepare(model, k, cap)?;
    let n = prep.table.size();
    let (ta, sa) = (0..n)
        .into_par_iter()
        .map(|y| prep.sweep_affine(y..y + 1))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let (tl, sl) = prep.sweep_line();
    Ok(report(model, k, &prep.table, ta + tl, sa + sl))
}

/// The same count with the first affine coordinate split into `parts`
/// contiguous ranges that are swept independently and summed.
pub fn count_with_partition(model: &CurveModel, k: u32, parts: u32) -> Result<CountReport> {
    let prep = prepare(model, k, DEFAULT_ENUMERATION_CAP)?;
    let n = prep.table.size();
    let parts = parts.clamp(1, n);
    let bounds: Vec<(u32, u32)> = (0..parts)
        .map(|i| {
            let lo = (n as u64 * i as u64 / parts as u64) as u32;
            let hi = (n as u64 * (i as u64 + 1) / parts as u64) as u32;
            (lo, hi)
        })
        .collect();
    let (ta, sa) = bounds
        .into_par_iter()
        .map(|(lo, hi)| prep.sweep_affine(lo..hi))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let (tl, sl) = prep.sweep_line();
    Ok(report(model, k, &prep.table, ta + tl, sa + sl))
}

/// All points of the model over F_{q^k}, sorted.
pub fn rational_points(model: &CurveModel, k: u32) -> Result<Vec<ProjPoint>> {
    let prep = prepare(model, k, DEFAULT_ENUMERATION_CAP)?;
    let mut pts = prep.points(false);
    pts.sort();
    Ok(pts)
}

/// Points over F_{q^k} where the form and its three partials vanish.
pub fn singular_points(model: &CurveModel, k: u32) -> Result<Vec<ProjPoint>> {
    let prep = prepare(model, k, DEFAULT_ENUMERATION_CAP)?;
    let mut pts = prep.points(true);
    pts.sort();
    Ok(pts)
}

/// Exact integer square root, when `n` is a square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|x| x * x == n)
}

/// (q + 1 − 2g√q, q + 1 + 2g√q). A negative lower bound is reported as 0,
/// since point counts are nonnegative.
pub fn hasse_weil_bounds(q: u64, g: u64) -> Result<(u64, u64)> {
    let s = exact_sqrt(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a square")))?;
    let spread = 2 * g * s;
    Ok(((q + 1).saturating_sub(spread), q + 1 + spread))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Maximal,
    Minimal,
    Neither,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityVerdict {
    pub genus: u64,
    pub field_size: u64,
    pub count: u64,
    pub low: u64,
    pub high: u64,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

/// Compares a count with the Hasse–Weil bounds over the field it was taken
/// in. Rational singular points make the plane count unrelated to the
/// nonsingular model, so they yield `Inconsistent` rather than a verdict.
pub fn maximality_check(report: &CountReport, g: u64) -> MaximalityVerdict {
    let q = report.field_size;
    let count = report.total;
    let mut out = MaximalityVerdict {
        genus: g,
        field_size: q,
        count,
        low: 0,
        high: 0,
        verdict: Verdict::Inconsistent,
        reason: None,
    };
    let Ok((low, high)) = hasse_weil_bounds(q, g) else {
        out.reason = Some(format!("field size {q} is not a square"));
        return out;
    };
    out.low = low;
    out.high = high;
    if report.singular > 0 {
        out.reason = Some(format!("{} rational singular points on the plane model", report.singular));
        return out;
    }
    let raw_low = (q + 1) as i128 - 2 * g as i128 * exact_sqrt(q).unwrap() as i128;
    out.verdict = if count == high {
        Verdict::Maximal
    } else if count as i128 == raw_low {
        Verdict::Minimal
    } else if count > high || (count as i128) < raw_low {
        out.reason = Some("count outside the Hasse–Weil interval".into());
        Verdict::Inconsistent
    } else {
        Verdict::Neither
    };
    out
}

/// q^k + 1 − 2g(−√q)^k: the count over F_{q^k} of a curve maximal over F_q.
pub fn extension_count_prediction(q: u64, g: u64, k: u32) -> Result<i128> {
    let s = exact_sqrt(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a square")))? as i128;
    let overflow = || Error::CapExceeded("prediction overflows i128".into());
    let qk = (q as i128).checked_pow(k).ok_or_else(overflow)?;
    let sk = (-s).checked_pow(k).ok_or_else(overflow)?;
    let twist = (2 * g as i128).checked_mul(sk).ok_or_else(overflow)?;
    Ok(qk + 1 - twist)
}

/// g = (N − q − 1)/(2√q), when integral and nonnegative.
pub fn genus_from_count(n: u64, q: u64) -> Result<u64> {
    let s = exact_sqrt(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a square")))?;
    if n < q + 1 || !(n - q - 1).is_multiple_of(2 * s) {
        return Err(Error::Hypothesis(format!(
            "{n} points over F_{q} is not q + 1 + 2g√q for an integer g ≥ 0"
        )));
    }
    Ok((n - q - 1) / (2 * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_curves::{envelope_model, hermitian_canonical};
    use crate::SqrtQ;

    #[test]
    fn small_hermitian_counts() {
        let s = SqrtQ::new(2).unwrap();
        let h = hermitian_canonical(s, &s.field_q().unwrap()).unwrap();
        let r = count_projective_points(&h, 1).unwrap();
        assert_eq!((r.total, r.singular), (9, 0));
        let r2 = count_projective_points(&h, 2).unwrap();
        assert_eq!(r2.total as i128, extension_count_prediction(4, 1, 2).unwrap());
    }

    #[test]
    fn bounds_and_inversion() {
        assert_eq!(hasse_weil_bounds(25, 3).unwrap(), (0, 56));
        assert_eq!(hasse_weil_bounds(25, 1).unwrap(), (16, 36));
        assert_eq!(hasse_weil_bounds(25, 0).unwrap(), (26, 26));
        assert_eq!(hasse_weil_bounds(64, 9).unwrap(), (0, 209));
        assert_eq!(genus_from_count(126, 25).unwrap(), 10);
        assert_eq!(genus_from_count(66, 25).unwrap(), 4);
        assert!(genus_from_count(127, 25).is_err());
        assert_eq!(extension_count_prediction(25, 10, 2).unwrap(), 126);
        assert_eq!(extension_count_prediction(25, 3, 1).unwrap(), 56);
    }

    #[test]
    fn envelope_singularities() {
        let s = SqrtQ::new(3).unwrap();
        let m = envelope_model(s, &s.field_q().unwrap()).unwrap();
        let sing = singular_points(&m, 1).unwrap();
        for p in &m.special_points {
            assert!(sing.contains(p));
        }
        let r = count_projective_points(&m, 1).unwrap();
        assert_eq!(maximality_check(&r, 3).verdict, Verdict::Inconsistent);
    }
}
