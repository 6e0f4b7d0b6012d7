//! Numerical semigroups, closed-form genus and dimension formulas for the
//! semigroups that occur on maximal curves, and Stöhr–Voloch arithmetic.

mod formulas;
mod orders;

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

pub use formulas::{
    additive_fibre_dimension, additive_fibre_orders, castelnuovo_bound, dim_d, epsilon2_candidates,
    first_nongap_candidates, first_nongaps_check, genus_classification, genus_lmm1, hermitian_point_semigroup,
    order7_multiples, quotient_semigroup, small_members_listing, FibrePoint, GenusClass, GenusClassLabel, Lmm1Genus,
    Lmm1Kind,
};
pub use orders::{
    orders_at_nonrational, orders_at_rational, star_relation, sv_degrees, OrderKind, OrderSequence, StarCheck,
    SvReport,
};

use crate::error::{Error, Result};
use crate::gf_tower::arith;

/// Serializes a rational as "n" or "n/d".
pub fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A cofinite submonoid of ℕ, stored by its gaps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup {
    gaps: Vec<u64>,
}

impl NumericalSemigroup {
    /// Sieves the monoid generated by `gens` up to its Frobenius number.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        let g = gens.iter().fold(0, |acc, &x| arith::gcd(acc, x));
        if g != 1 {
            return Err(Error::InvalidArgument(format!(
                "generators {gens:?} have gcd {g}, so the complement is infinite"
            )));
        }
        let least = *gens.iter().min().expect("gcd 1 needs a generator");
        // a run of `least` consecutive members means everything beyond is in
        let mut member = vec![true];
        let mut run = 1u64;
        let mut n = 0usize;
        while run < least {
            n += 1;
            let inside = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
            member.push(inside);
            run = if inside { run + 1 } else { 0 };
        }
        let gaps = (0..member.len()).filter(|&i| !member[i]).map(|i| i as u64).collect();
        Ok(NumericalSemigroup { gaps })
    }

    /// The complement of `gaps` in ℕ; rejected unless additively closed.
    pub fn from_gaps(gaps: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = gaps.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidArgument("0 cannot be a gap".into()));
        }
        let s = NumericalSemigroup {
            gaps: set.into_iter().collect(),
        };
        if !s.is_closed() {
            return Err(Error::InvalidArgument("complement of the gap set is not additively closed".into()));
        }
        Ok(s)
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Least c with every n ≥ c a member.
    pub fn conductor(&self) -> u64 {
        self.gaps.last().map_or(0, |g| g + 1)
    }

    pub fn frobenius_number(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.gaps.binary_search(&n).is_err()
    }

    /// Members in [0, bound], ascending.
    pub fn nongaps_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// The first `k` positive members.
    pub fn first_positive(&self, k: usize) -> Vec<u64> {
        (1..).filter(|&n| self.contains(n)).take(k).collect()
    }

    /// Closure under addition, checked on all pairs below 2·conductor.
    pub fn is_closed(&self) -> bool {
        let c = self.conductor();
        let members: Vec<u64> = (1..=2 * c).filter(|&n| self.contains(n)).collect();
        members
            .iter()
            .all(|&a| members.iter().take_while(|&&b| b <= a).all(|&b| self.contains(a + b)))
    }

    /// Minimal generating set.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let c = self.conductor();
        let m = self.first_positive(1)[0];
        let mut gens: Vec<u64> = Vec::new();
        for n in 1..=c + m {
            if !self.contains(n) {
                continue;
            }
            let decomposable = gens.iter().any(|&g| g < n && self.contains(n - g));
            if !decomposable {
                gens.push(n);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_examples() {
        let s = NumericalSemigroup::from_generators(&[3, 5, 6]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 4, 7]);
        let s = NumericalSemigroup::from_generators(&[4, 5, 6]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 3, 7]);
        assert_eq!(NumericalSemigroup::from_generators(&[1]).unwrap().genus(), 0);
        assert!(NumericalSemigroup::from_generators(&[4, 6]).is_err());
    }

    #[test]
    fn gap_sets() {
        let s = NumericalSemigroup::from_gaps([1, 2, 4, 7]).unwrap();
        assert_eq!(s.minimal_generators(), vec![3, 5]);
        assert_eq!(s.conductor(), 8);
        assert!(NumericalSemigroup::from_gaps([2]).is_err());
        assert_eq!(NumericalSemigroup::from_gaps([]).unwrap().minimal_generators(), vec![1]);
    }
}
