use num_rational::Rational64;
use serde::Serialize;

use super::ser_ratio;
use crate::error::{Error, Result};
use crate::params::SqrtQ;
use crate::point_count::exact_sqrt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    /// ε_i, the orders of the linear series.
    Series,
    /// ν_i, the Frobenius orders.
    Frobenius,
    /// j_i(P), the orders at a point.
    AtPoint,
}

/// A strictly increasing integer sequence starting at 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderSequence {
    pub kind: OrderKind,
    pub values: Vec<u64>,
}

impl OrderSequence {
    pub fn new(kind: OrderKind, values: Vec<u64>) -> Result<Self> {
        if values.first() != Some(&0) || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed(format!(
                "order sequence {values:?} must increase strictly from 0"
            )));
        }
        Ok(OrderSequence { kind, values })
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_nongaps(m: &[u64]) -> Result<()> {
    if m.first() != Some(&0) || m.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Malformed(format!("non-gaps {m:?} must increase strictly from 0")));
    }
    Ok(())
}

/// At a rational point with non-gaps 0 = m₀ < … < m_n = √q < m_{n+1} = √q+1
/// the orders are √q + 1 − m_i.
pub fn orders_at_rational(nongaps: &[u64], s: SqrtQ) -> Result<OrderSequence> {
    check_nongaps(nongaps)?;
    let n = s.value();
    let k = nongaps.len();
    if k < 3 || nongaps[k - 1] != n + 1 || nongaps[k - 2] != n {
        return Err(Error::Malformed(format!(
            "non-gaps at a rational point must end with √q, √q+1; got {nongaps:?}"
        )));
    }
    let mut v: Vec<u64> = nongaps.iter().map(|m| n + 1 - m).collect();
    v.reverse();
    OrderSequence::new(OrderKind::AtPoint, v)
}

/// At a non-rational point with non-gaps 0 = m₀ < … < m_n = √q the orders
/// are the √q − m_i together with one further order; when 1 is not among
/// the √q − m_i it is that order, since j₁ = 1 everywhere.
pub fn orders_at_nonrational(nongaps: &[u64], s: SqrtQ) -> Result<OrderSequence> {
    check_nongaps(nongaps)?;
    let n = s.value();
    if nongaps.last() != Some(&n) {
        return Err(Error::Malformed(format!(
            "non-gaps at a non-rational point must end with √q; got {nongaps:?}"
        )));
    }
    let mut v: Vec<u64> = nongaps.iter().map(|m| n - m).collect();
    if v.contains(&1) {
        return Err(Error::Hypothesis(
            "√q − 1 is a non-gap, so the remaining order is not determined".into(),
        ));
    }
    v.push(1);
    v.sort_unstable();
    OrderSequence::new(OrderKind::AtPoint, v)
}

/// deg R = (2g−2)Σε_i + (r+1)·deg D, deg S = (2g−2)Σν_i + (q+r)·deg D, and
/// the point bound deg S / r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SvReport {
    pub g: u64,
    pub deg_d: u64,
    pub r: u64,
    pub q: u64,
    pub epsilon_sum: u64,
    pub nu_sum: u64,
    pub deg_r: i64,
    pub deg_s: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub point_bound: Rational64,
    pub degrees_nonnegative: bool,
}

pub fn sv_degrees(g: u64, deg_d: u64, r: u64, eps: &OrderSequence, nu: &OrderSequence, q: u64) -> Result<SvReport> {
    if r == 0 || eps.len() as u64 != r + 1 || nu.len() as u64 != r {
        return Err(Error::Malformed(format!(
            "need r+1 orders and r Frobenius orders for r = {r}, got {} and {}",
            eps.len(),
            nu.len()
        )));
    }
    let k = 2 * g as i64 - 2;
    let deg_r = k * eps.sum() as i64 + (r + 1) as i64 * deg_d as i64;
    let deg_s = k * nu.sum() as i64 + (q + r) as i64 * deg_d as i64;
    Ok(SvReport {
        g,
        deg_d,
        r,
        q,
        epsilon_sum: eps.sum(),
        nu_sum: nu.sum(),
        deg_r,
        deg_s,
        point_bound: Rational64::new(deg_s, r as i64),
        degrees_nonnegative: deg_r >= 0 && deg_s >= 0,
    })
}

/// (√q+1)(2g−2) + (q+3)(√q+1) ≥ (ε₂+1)[(√q+1)² + √q(2g−2)].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    pub q: u64,
    pub g: u64,
    pub epsilon2: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

pub fn star_relation(q: u64, g: u64, epsilon2: u64) -> Result<StarCheck> {
    let n = exact_sqrt(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a square")))? as i64;
    let k = 2 * g as i64 - 2;
    let lhs = (n + 1) * k + (q as i64 + 3) * (n + 1);
    let rhs = (epsilon2 as i64 + 1) * ((n + 1) * (n + 1) + n * k);
    Ok(StarCheck {
        q,
        g,
        epsilon2,
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(kind: OrderKind, v: &[u64]) -> OrderSequence {
        OrderSequence::new(kind, v.to_vec()).unwrap()
    }

    #[test]
    fn orders_from_nongaps() {
        let s = SqrtQ::new(5).unwrap();
        assert_eq!(orders_at_rational(&[0, 5, 6], s).unwrap().values, vec![0, 1, 6]);
        assert_eq!(orders_at_rational(&[0, 4, 5, 6], s).unwrap().values, vec![0, 1, 2, 6]);
        assert_eq!(orders_at_nonrational(&[0, 3, 5], s).unwrap().values, vec![0, 1, 2, 5]);
        assert!(orders_at_rational(&[0, 5], s).is_err());
        assert!(OrderSequence::new(OrderKind::Series, vec![0, 2, 2]).is_err());
    }

    #[test]
    fn stohr_voloch_degrees() {
        let r = sv_degrees(10, 6, 2, &seq(OrderKind::Series, &[0, 1, 5]), &seq(OrderKind::Frobenius, &[0, 5]), 25).unwrap();
        assert_eq!((r.deg_r, r.deg_s), (126, 252));
        assert_eq!(r.point_bound, Rational64::from_integer(126));
        let r = sv_degrees(3, 6, 3, &seq(OrderKind::Series, &[0, 1, 2, 5]), &seq(OrderKind::Frobenius, &[0, 1, 5]), 25)
            .unwrap();
        assert_eq!((r.deg_r, r.deg_s), (56, 192));
        assert_eq!(r.point_bound, Rational64::from_integer(64));
        // genus 0: deg R = (r+1) deg D − 2Σε
        let r = sv_degrees(0, 4, 1, &seq(OrderKind::Series, &[0, 1]), &seq(OrderKind::Frobenius, &[0]), 9).unwrap();
        assert_eq!(r.deg_r, 2 * 4 - 2);
    }

    #[test]
    fn star() {
        let c = star_relation(25, 3, 2).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (192, 168, true));
        assert!(!star_relation(25, 3, 4).unwrap().holds);
        assert!(star_relation(24, 3, 2).is_err());
    }
}
