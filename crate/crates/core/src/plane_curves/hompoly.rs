use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{Embedding, ExtField, FieldDescriptor, FieldElement};

pub type Exponent = [u32; 3];

/// Sparse homogeneous polynomial in X₀, X₁, X₂ over an [`ExtField`].
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly3 {
    field: ExtField,
    degree: u32,
    terms: BTreeMap<Exponent, FieldElement>,
}

fn total(e: &Exponent) -> u32 {
    e[0] + e[1] + e[2]
}

impl HomPoly3 {
    pub fn zero(field: &ExtField, degree: u32) -> Self {
        HomPoly3 {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Panics if the exponents do not share one total degree.
    pub fn from_terms(field: &ExtField, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Self {
        let mut out: Option<HomPoly3> = None;
        for (e, c) in terms {
            let p = out.get_or_insert_with(|| HomPoly3::zero(field, total(&e)));
            p.add_term(e, &c);
        }
        out.unwrap_or_else(|| HomPoly3::zero(field, 0))
    }

    /// Terms with small integer coefficients, reduced into `field`.
    pub fn from_int_terms(field: &ExtField, terms: &[(Exponent, i64)]) -> Self {
        Self::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_int(c))))
    }

    pub fn monomial(field: &ExtField, e: Exponent, c: FieldElement) -> Self {
        Self::from_terms(field, [(e, c)])
    }

    /// The linear form c₀X₀ + c₁X₁ + c₂X₂.
    pub fn linear(field: &ExtField, c: &[FieldElement; 3]) -> Self {
        let mut p = Self::zero(field, 1);
        for (i, ci) in c.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, ci);
        }
        p
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::monomial(&field, [0, 0, 0], c)
    }

    pub fn add_term(&mut self, e: Exponent, c: &FieldElement) {
        assert_eq!(total(&e), self.degree, "inhomogeneous term {e:?}");
        if c.is_zero() {
            return;
        }
        let c = c.clone();
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding polynomials of different degree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, &(c * s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], &(c1 * c2));
            }
        }
        out
    }

    /// Coefficients raised to p^e, exponents multiplied by p^e: the
    /// polynomial (Σ c X^α)^{p^e}.
    pub fn frobenius_power_poly(&self, e: u32) -> Self {
        let p = self.field.characteristic();
        let pe = p.pow(e);
        let mut out = Self::zero(&self.field, self.degree * pe);
        for (ex, c) in &self.terms {
            out.add_term([ex[0] * pe, ex[1] * pe, ex[2] * pe], &c.frobenius_power(e as i64));
        }
        out
    }

    /// Coefficients mapped by x ↦ x^{p^e}; exponents unchanged.
    pub fn map_frobenius(&self, e: i64) -> Self {
        self.map_coeffs(|c| c.frobenius_power(e))
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    /// self^n, using the base-p digits of n so that p-th powers cost only a
    /// Frobenius.
    pub fn pow(&self, n: u32) -> Self {
        let p = self.field.characteristic();
        let mut acc = Self::constant(self.field.one());
        let mut digit_pow = self.clone();
        let mut n = n;
        let mut level = 0u32;
        while n > 0 {
            let d = n % p;
            if d > 0 {
                let mut t = Self::constant(self.field.one());
                for _ in 0..d {
                    t = t.mul(&digit_pow);
                }
                acc = acc.mul(&t);
            }
            n /= p;
            level += 1;
            if n > 0 {
                digit_pow = self.frobenius_power_poly(level);
            }
        }
        acc
    }

    pub fn eval(&self, pt: &[FieldElement; 3]) -> FieldElement {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t = &t * &pt[i].pow_u64(e[i] as u64);
                }
            }
            acc += &t;
        }
        acc
    }

    /// ∂/∂X_i.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.field, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let k = self.field.from_int(e[i] as i64);
            let mut ne = *e;
            ne[i] -= 1;
            out.add_term(ne, &(c * &k));
        }
        out
    }

    /// The substitution X_i ↦ Σ_j rows[i][j] X_j.
    pub fn substitute(&self, rows: &[[FieldElement; 3]; 3]) -> Self {
        let forms: Vec<HomPoly3> = rows.iter().map(|r| Self::linear(&self.field, r)).collect();
        let mut cache: BTreeMap<(usize, u32), HomPoly3> = BTreeMap::new();
        let mut power = |i: usize, n: u32| -> HomPoly3 {
            cache.entry((i, n)).or_insert_with(|| forms[i].pow(n)).clone()
        };
        let mut out = Self::zero(&self.field, self.degree);
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for i in 0..3 {
                if e[i] > 0 {
                    t = t.mul(&power(i, e[i]));
                }
            }
            out = out.add(&t);
        }
        out.degree = self.degree;
        out
    }

    /// Moves every coefficient along an embedding into a larger field.
    pub fn lift(&self, emb: &Embedding) -> Self {
        assert!(emb.source() == &self.field);
        let mut out = Self::zero(emb.target(), self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, &emb.apply(c));
        }
        out
    }

    /// Pulls every coefficient back along an embedding; fails when some
    /// coefficient lies outside the image.
    pub fn descend(&self, emb: &Embedding) -> Result<Self> {
        assert!(emb.target() == &self.field);
        let mut out = Self::zero(emb.source(), self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, &emb.preimage(c)?);
        }
        Ok(out)
    }

    /// Whether every coefficient lies in the subfield F_{p^d}.
    pub fn defined_over_subfield(&self, d: usize) -> bool {
        self.terms.values().all(|c| c.in_subfield(d))
    }

    /// Divides by the coefficient of the largest monomial.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next_back() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inverse().expect("stored coefficients are nonzero")),
        }
    }

    /// Whether self = λ·other for some nonzero λ; returns λ.
    pub fn proportional_to(&self, other: &Self) -> Option<FieldElement> {
        if self.terms.len() != other.terms.len() || self.degree != other.degree {
            return None;
        }
        let (e0, c0) = other.terms.iter().next()?;
        let lambda = self.terms.get(e0)? * &c0.inverse().ok()?;
        (self == &other.scale(&lambda)).then_some(lambda)
    }

    /// Permutes variables: the result is self(X_{perm[0]}, X_{perm[1]}, X_{perm[2]}).
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        for (e, c) in &self.terms {
            let mut ne = [0; 3];
            for i in 0..3 {
                ne[perm[i]] += e[i];
            }
            out.add_term(ne, c);
        }
        out
    }

    /// self(X₀^n, X₁^n, X₂^n).
    pub fn inflate(&self, n: u32) -> Self {
        let mut out = Self::zero(&self.field, self.degree * n);
        for (e, c) in &self.terms {
            out.add_term([e[0] * n, e[1] * n, e[2] * n], c);
        }
        out
    }

    /// self(s₀X₀, s₁X₁, s₂X₂).
    pub fn scale_vars(&self, s: &[FieldElement; 3]) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t = &t * &s[i].pow_u64(e[i] as u64);
            }
            out.add_term(*e, &t);
        }
        out
    }

    pub fn to_serial(&self) -> SerialPoly {
        SerialPoly {
            field: self.field.descriptor(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| SerialTerm {
                    exp: *e,
                    coeff: c.coeffs().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_serial(s: &SerialPoly) -> Result<Self> {
        let field = ExtField::from_descriptor(&s.field)?;
        let mut out = Self::zero(&field, s.degree);
        for t in &s.terms {
            if total(&t.exp) != s.degree {
                return Err(Error::Malformed(format!("term {:?} has wrong degree", t.exp)));
            }
            if t.coeff.len() != field.degree() || t.coeff.iter().any(|&x| x >= field.characteristic()) {
                return Err(Error::Malformed(format!("bad coefficient for term {:?}", t.exp)));
            }
            out.add_term(t.exp, &field.from_coeffs(&t.coeff));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialTerm {
    pub exp: Exponent,
    /// Coefficient over F_p, low degree first.
    pub coeff: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialPoly {
    pub field: FieldDescriptor,
    pub degree: u32,
    pub terms: Vec<SerialTerm>,
}

impl Serialize for HomPoly3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_serial().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomPoly3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = SerialPoly::deserialize(d)?;
        HomPoly3::from_serial(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for HomPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| format!("({c})·X0^{}X1^{}X2^{}", e[0], e[1], e[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = ExtField::new(5, 2).unwrap();
        let t = f.generator();
        let l = HomPoly3::linear(&f, &[t.clone(), f.one(), &t * &t]);
        let mut naive = HomPoly3::constant(f.one());
        for n in 0..13u32 {
            assert_eq!(l.pow(n), naive, "n = {n}");
            naive = naive.mul(&l);
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let f = ExtField::new(3, 2).unwrap();
        let t = f.generator();
        let poly = HomPoly3::from_int_terms(&f, &[([4, 0, 0], 1), ([1, 2, 1], 2), ([0, 0, 4], 1)]);
        let rows = [
            [t.clone(), f.one(), f.zero()],
            [f.from_int(2), t.square(), f.one()],
            [f.one(), f.one(), t.clone()],
        ];
        let sub = poly.substitute(&rows);
        for x in f.elements().take(5) {
            for y in f.elements().skip(2).take(4) {
                let pt = [x.clone(), y.clone(), f.one()];
                let image: Vec<FieldElement> = rows
                    .iter()
                    .map(|r| &(&(&r[0] * &pt[0]) + &(&r[1] * &pt[1])) + &(&r[2] * &pt[2]))
                    .collect();
                let image = [image[0].clone(), image[1].clone(), image[2].clone()];
                assert_eq!(sub.eval(&pt), poly.eval(&image));
            }
        }
    }

    #[test]
    fn partials_and_serialization() {
        let f = ExtField::new(7, 1).unwrap();
        let poly = HomPoly3::from_int_terms(&f, &[([3, 0, 0], 1), ([1, 1, 1], -3)]);
        let dx = poly.partial(0);
        assert_eq!(dx, HomPoly3::from_int_terms(&f, &[([2, 0, 0], 3), ([0, 1, 1], -3)]));
        let json = serde_json::to_string(&poly).unwrap();
        let back: HomPoly3 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);
    }
}
