use num_rational::Rational64;
use serde::Serialize;

use super::{ser_ratio, NumericalSemigroup};
use crate::error::{Error, Result};
use crate::params::SqrtQ;
use crate::point_count::exact_sqrt;

fn ratio(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lmm1Kind {
    Exact,
    UpperBound,
    /// No row of the bound table applies.
    NoBound,
}

/// Closed-form genus, or upper bound, of ⟨ℓ, m, m+1⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lmm1Genus {
    pub l: u64,
    pub m: u64,
    pub kind: Lmm1Kind,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub value: Option<Rational64>,
    /// Which formula produced the value.
    pub rule: &'static str,
}

fn ser_opt_ratio<S: serde::Serializer>(r: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_ratio(r, s),
        None => s.serialize_none(),
    }
}

/// Genus of ⟨ℓ, m, m+1⟩ for m/2 ≤ ℓ < m by the case analysis: exact for
/// ℓ ∈ {⌊(m+1)/2⌋, m−1} and ℓ ∈ {⌊(2m+2)/3⌋, m−2}, an upper bound
/// otherwise. Where several bound rows apply, the largest is returned.
pub fn genus_lmm1(l: u64, m: u64) -> Result<Lmm1Genus> {
    if 2 * l < m || l >= m {
        return Err(Error::InvalidArgument(format!("need m/2 ≤ ℓ < m, got ℓ = {l}, m = {m}")));
    }
    let (li, mi) = (l as i64, m as i64);
    let out = |kind, value: Option<Rational64>, rule| Lmm1Genus {
        l,
        m,
        kind,
        value,
        rule,
    };
    if l == m.div_ceil(2) || l == m - 1 {
        // (m−1)²/4 rounded down: the printed value is not an integer for even m
        let v = ratio((mi - 1) * (mi - 1), 4).floor();
        return Ok(out(Lmm1Kind::Exact, Some(v), "(m-1)^2/4"));
    }
    if l == (2 * m).div_ceil(3) || l + 2 == m {
        return Ok(if m % 3 == 2 {
            out(Lmm1Kind::Exact, Some(ratio(mi * mi - mi + 4, 6)), "(m^2-m+4)/6")
        } else {
            out(Lmm1Kind::Exact, Some(ratio(mi * mi - mi, 6)), "(m^2-m)/6")
        });
    }
    let below_root = (m + 1 - l) * (m + 1 - l) > m;
    let mut rows: Vec<(Rational64, &'static str)> = Vec::new();
    if 5 * l <= 3 * m {
        let v = ratio(mi * mi + 4, 8).max(ratio(mi * mi + 3 * mi, 10));
        rows.push((v, "max((m^2+4)/8,(m^2+3m)/10)"));
    }
    if 3 * m <= 5 * l && l < (2 * m).div_ceil(3) {
        rows.push((ratio(mi * mi - 5 * mi + 24, 6), "(m^2-5m+24)/6"));
    }
    if m % 3 == 2 && 3 * l >= 2 * m + 5 && below_root {
        rows.push((ratio(mi * mi - 7 * mi + 70, 6), "(m^2-7m+70)/6"));
    }
    if m % 3 == 1 && 3 * l >= 2 * m + 4 && below_root {
        rows.push((ratio(mi * mi - 5 * mi + 40, 6), "(m^2-5m+40)/6"));
    }
    if m.is_multiple_of(3) && 3 * l >= 2 * m + 3 && below_root {
        rows.push((ratio(mi * mi - 3 * mi + 18, 6), "(m^2-3m+18)/6"));
    }
    if !below_root && li < mi - 2 {
        rows.push((ratio(mi * mi + 2 * mi + 9, 8), "(m^2+2m+9)/8"));
    }
    Ok(match rows.into_iter().max_by_key(|r| r.0) {
        Some((v, rule)) => out(Lmm1Kind::UpperBound, Some(v), rule),
        None => out(Lmm1Kind::NoBound, None, "none"),
    })
}

/// ℕ ∖ {r√q + s + 1 : r, s ≥ 0, r + s ≤ √q − 2}, the Weierstrass semigroup
/// at a fixed point of the order-(q−√q+1) automorphism.
pub fn hermitian_point_semigroup(s: SqrtQ) -> NumericalSemigroup {
    let n = s.value();
    let mut gaps = Vec::new();
    for r in 0..=n.saturating_sub(2) {
        for t in 0..=(n - 2 - r) {
            gaps.push(r * n + t + 1);
        }
    }
    if n < 2 {
        gaps.clear();
    }
    NumericalSemigroup::from_gaps(gaps).expect("the Hermitian point semigroup is closed")
}

/// {h/d : h ∈ S, d | h}.
pub fn quotient_semigroup(s: &NumericalSemigroup, d: u64) -> Result<NumericalSemigroup> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    NumericalSemigroup::from_gaps(s.gaps().iter().filter(|&&g| g % d == 0).map(|g| g / d))
}

/// The first two positive members of the degree-3 quotient semigroup,
/// and whether they are ((2√q−1)/3, √q).
pub fn first_nongaps_check(s: SqrtQ) -> Result<(u64, u64, bool)> {
    if s.value() % 3 != 2 {
        return Err(Error::Hypothesis(format!("√q = {s} is not ≡ 2 (mod 3)")));
    }
    let q3 = quotient_semigroup(&hermitian_point_semigroup(s), 3)?;
    let f = q3.first_positive(2);
    let want = ((2 * s.value() - 1) / 3, s.value());
    Ok((f[0], f[1], (f[0], f[1]) == want))
}

/// 1 + #{h ∈ S̃ : 0 < h ≤ d√q, d | h}, the dimension of the linear series
/// |(√q+1)P₀| on the order-d quotient.
pub fn dim_d(s: SqrtQ, d: u64) -> Result<u64> {
    if d == 0 || !s.cyclic_order().is_multiple_of(d) {
        return Err(Error::NotDivisor {
            n: d,
            order: s.cyclic_order().to_string(),
        });
    }
    let st = hermitian_point_semigroup(s);
    Ok(1 + (1..=d * s.value()).filter(|&h| h % d == 0 && st.contains(h)).count() as u64)
}

/// The 28 values j√q − (j−1), …, j√q for j = 7, …, 1, which are the members
/// of S̃ in [1, 7√q] once √q ≥ 9.
pub fn small_members_listing(s: SqrtQ) -> Vec<u64> {
    let n = s.value();
    (1..=7u64)
        .rev()
        .flat_map(|j| (j * n + 1 - j..=j * n).collect::<Vec<_>>())
        .collect()
}

/// The members of S̃ in [1, 7√q] divisible by 7, read off the listing for
/// √q ≡ 3 or 5 (mod 7).
pub fn order7_multiples(s: SqrtQ) -> Option<Vec<u64>> {
    let n = s.value();
    match n % 7 {
        3 => Some(vec![7 * n, 6 * n - 4, 5 * n - 1, 3 * n - 2]),
        5 => Some(vec![7 * n, 6 * n - 2, 5 * n - 4, 3 * n - 1]),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusClassLabel {
    Hermitian,
    AboveHermitian,
    ForbiddenInterval,
    SecondLargest,
    Dim3Window,
    BelowWindow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusClass {
    pub q: u64,
    pub g: u64,
    pub label: GenusClassLabel,
    /// (√q−1)(√q−2)/6, exclusive.
    #[serde(serialize_with = "ser_ratio")]
    pub window_low: Rational64,
    /// (√q−1)²/4, inclusive.
    #[serde(serialize_with = "ser_ratio")]
    pub window_high: Rational64,
    /// (q − 2√q + 3)/6, the least genus when ε₂ = 2 and the dimension is 3.
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon2_bound: Rational64,
    pub meets_epsilon2_bound: bool,
    pub epsilon2_bound_equality: bool,
}

/// Places g among the genus ranges of maximal curves over F_q.
pub fn genus_classification(q: u64, g: u64) -> Result<GenusClass> {
    let n = exact_sqrt(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a square")))? as i64;
    let gi = ratio(g as i64, 1);
    let herm = n * (n - 1) / 2;
    let window_low = ratio((n - 1) * (n - 2), 6);
    let window_high = ratio((n - 1) * (n - 1), 4);
    let second = if n % 2 == 1 { window_high } else { ratio(n * (n - 2), 4) };
    let label = if g as i64 == herm {
        GenusClassLabel::Hermitian
    } else if g as i64 > herm {
        GenusClassLabel::AboveHermitian
    } else if gi > window_high {
        GenusClassLabel::ForbiddenInterval
    } else if gi == second {
        GenusClassLabel::SecondLargest
    } else if gi > window_low {
        GenusClassLabel::Dim3Window
    } else {
        GenusClassLabel::BelowWindow
    };
    let bound = ratio(q as i64 - 2 * n + 3, 6);
    Ok(GenusClass {
        q,
        g,
        label,
        window_low,
        window_high,
        epsilon2_bound: bound,
        meets_epsilon2_bound: gi >= bound,
        epsilon2_bound_equality: gi == bound,
    })
}

/// Possible m₁(P) at a rational point when the dimension is 3 and ε₂ = 2:
/// {⌊(√q+1)/2⌋, √q−1, ⌊(2√q+2)/3⌋, √q−2}, sorted and deduplicated.
pub fn first_nongap_candidates(s: SqrtQ) -> Result<Vec<u64>> {
    let n = s.value();
    if n < 3 {
        return Err(Error::InvalidArgument("needs √q ≥ 3".into()));
    }
    let mut v = vec![n.div_ceil(2), n - 1, (2 * n).div_ceil(3), n - 2];
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// The values ε₂ can take: 2 when p ≠ 3, and {2, 3} when p = 3.
pub fn epsilon2_candidates(p: u64) -> Vec<u64> {
    if p == 3 {
        vec![2, 3]
    } else {
        vec![2]
    }
}

/// The Castelnuovo-type bound on 2g as printed:
/// (t − n/2)²/n for n even, ((t − n/2)² − 1/4)/n for n odd.
pub fn castelnuovo_bound(t: Rational64, n: u64) -> Result<Rational64> {
    if n < 2 {
        return Err(Error::InvalidArgument("needs n ≥ 2".into()));
    }
    let ni = n as i64;
    let c = t - ratio(ni, 2);
    let sq = c * c;
    Ok(if n.is_multiple_of(2) {
        sq / ratio(ni, 1)
    } else {
        (sq - ratio(1, 4)) / ratio(ni, 1)
    })
}

fn fibre_check(p: u64, m: u32, r: u32) -> Result<u64> {
    if !m.is_multiple_of(2) || r < 1 || r > m / 2 {
        return Err(Error::InvalidArgument(format!(
            "needs m even and 1 ≤ r ≤ m/2, got m = {m}, r = {r}"
        )));
    }
    crate::gf_tower::arith::checked_pow(p, m / 2 - r)
        .ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))
}

/// p^{m/2−r} + 1, the dimension of |(√q+1)P₀| on the curve
/// Σ_{i=0}^{r} y^{p^i} = b·x^{√q+1} over F_{p^m}.
pub fn additive_fibre_dimension(p: u64, m: u32, r: u32) -> Result<u64> {
    Ok(fibre_check(p, m, r)? + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibrePoint {
    /// The point over x = ∞.
    Infinity,
    /// Another rational point.
    Rational,
    NonRational,
}

/// The orders of |(√q+1)P₀| at a point of the additive fibre curve.
pub fn additive_fibre_orders(p: u64, m: u32, r: u32, at: FibrePoint) -> Result<Vec<u64>> {
    let k = fibre_check(p, m, r)?;
    let sq = p.pow(m / 2);
    let pr = p.pow(r);
    let mut v: Vec<u64> = match at {
        FibrePoint::Infinity => std::iter::once(0).chain((0..=k).map(|i| sq + 1 - i * pr)).collect(),
        FibrePoint::Rational => (0..=k).chain(std::iter::once(sq + 1)).collect(),
        FibrePoint::NonRational => (0..=k).chain(std::iter::once(sq)).collect(),
    };
    v.sort_unstable();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: u64) -> SqrtQ {
        SqrtQ::new(n).unwrap()
    }

    #[test]
    fn lmm1_examples() {
        let g = genus_lmm1(3, 5).unwrap();
        assert_eq!((g.kind, g.value), (Lmm1Kind::Exact, Some(ratio(4, 1))));
        let g = genus_lmm1(4, 5).unwrap();
        assert_eq!((g.kind, g.value), (Lmm1Kind::Exact, Some(ratio(4, 1))));
        let g = genus_lmm1(6, 10).unwrap();
        assert_eq!(g.kind, Lmm1Kind::UpperBound);
        assert_eq!(g.value, Some(ratio(13, 1)));
        assert!(genus_lmm1(2, 5).is_err());
        assert!(genus_lmm1(5, 5).is_err());
    }

    #[test]
    fn hermitian_point_semigroups() {
        let s5 = hermitian_point_semigroup(sq(5));
        assert_eq!(s5.gaps(), &[1, 2, 3, 4, 6, 7, 8, 11, 12, 16]);
        assert_eq!(hermitian_point_semigroup(sq(3)).gaps(), &[1, 2, 4]);
        for n in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            assert_eq!(hermitian_point_semigroup(sq(n)).genus(), sq(n).hermitian_genus());
        }
    }

    #[test]
    fn quotients_of_the_point_semigroup() {
        let s5 = hermitian_point_semigroup(sq(5));
        let q3 = quotient_semigroup(&s5, 3).unwrap();
        assert_eq!(q3.gaps(), &[1, 2, 4]);
        assert_eq!(q3.nongaps_up_to(7), vec![0, 3, 5, 6, 7]);
        assert_eq!(quotient_semigroup(&s5, 7).unwrap().gaps(), &[1]);
        assert_eq!(quotient_semigroup(&s5, 1).unwrap(), s5);
    }

    #[test]
    fn dimensions_and_first_nongaps() {
        assert_eq!(dim_d(sq(5), 3).unwrap(), 3);
        assert_eq!(dim_d(sq(5), 7).unwrap(), 5);
        assert_eq!(dim_d(sq(3), 7).unwrap(), 4);
        assert!(dim_d(sq(5), 5).is_err());
        assert_eq!(first_nongaps_check(sq(5)).unwrap(), (3, 5, true));
        assert_eq!(first_nongaps_check(sq(8)).unwrap(), (5, 8, true));
        assert_eq!(first_nongaps_check(sq(11)).unwrap(), (7, 11, true));
    }

    #[test]
    fn classification() {
        use GenusClassLabel::*;
        assert_eq!(genus_classification(25, 10).unwrap().label, Hermitian);
        assert_eq!(genus_classification(25, 7).unwrap().label, ForbiddenInterval);
        let c = genus_classification(25, 3).unwrap();
        assert_eq!(c.label, Dim3Window);
        assert!(c.epsilon2_bound_equality);
        assert_eq!(genus_classification(25, 4).unwrap().label, SecondLargest);
        assert_eq!(genus_classification(64, 12).unwrap().label, SecondLargest);
    }

    #[test]
    fn candidates_and_misc() {
        assert_eq!(first_nongap_candidates(sq(5)).unwrap(), vec![3, 4]);
        assert_eq!(first_nongap_candidates(sq(7)).unwrap(), vec![4, 5, 6]);
        assert_eq!(first_nongap_candidates(sq(11)).unwrap(), vec![6, 8, 9, 10]);
        assert_eq!(castelnuovo_bound(ratio(6, 1), 2).unwrap(), ratio(25, 2));
        assert_eq!(epsilon2_candidates(3), vec![2, 3]);
        assert_eq!(additive_fibre_dimension(3, 4, 1).unwrap(), 4);
        assert_eq!(additive_fibre_dimension(3, 8, 3).unwrap(), 4);
        assert_eq!(additive_fibre_dimension(5, 4, 2).unwrap(), 2);
        assert_eq!(additive_fibre_orders(3, 4, 1, FibrePoint::Infinity).unwrap(), vec![0, 1, 4, 7, 10]);
        assert_eq!(additive_fibre_orders(3, 4, 1, FibrePoint::NonRational).unwrap(), vec![0, 1, 2, 3, 9]);
    }
}
