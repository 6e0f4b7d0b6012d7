use std::fmt;

use num_bigint::BigUint;

use super::field::{ExtField, FieldElement};

/// Dense univariate polynomial over an [`ExtField`], low degree first and
/// without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: ExtField,
    c: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &ExtField, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Poly {
            field: field.clone(),
            c: coeffs,
        };
        p.trim();
        p
    }

    /// Polynomial with prime-field integer coefficients.
    pub fn from_ints(field: &ExtField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn zero(field: &ExtField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn x(field: &ExtField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// X^n + c.
    pub fn binomial(n: usize, c: FieldElement) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        coeffs[0] = &coeffs[0] + &c;
        Self::new(&field, coeffs)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.c.last()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.c
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, a| &(&acc * x) + a)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(&self.field, self.c.iter().map(|a| a * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let z = self.field.zero();
        Self::new(
            &self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + other.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let z = self.field.zero();
        Self::new(
            &self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) - other.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(&self.field, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.c[dd].inverse().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &inv;
            for j in 0..=dd {
                let t = &f * &d.c[j];
                r[i - dd + j] -= &t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Self::new(&self.field, q), Self::new(&self.field, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::constant(self.field.one()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.field,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * &self.field.from_int(i as i64))
                .collect(),
        )
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &ExtField, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::new(target, self.c.iter().map(f).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a})X^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = ExtField::new(7, 2).unwrap();
        let a = Poly::from_ints(&f, &[3, 0, 2, 5, 1]);
        let b = Poly::from_ints(&f, &[1, 4, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = ExtField::new(5, 1).unwrap();
        let x1 = Poly::from_ints(&f, &[-1, 1]);
        let x2 = Poly::from_ints(&f, &[-2, 1]);
        let x3 = Poly::from_ints(&f, &[-3, 1]);
        let g = x1.mul(&x2).gcd(&x2.mul(&x3));
        assert_eq!(g, x2);
    }
}
