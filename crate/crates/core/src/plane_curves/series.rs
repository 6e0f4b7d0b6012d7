use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf_tower::{ExtField, FieldElement};
use crate::params::SqrtQ;

/// A power series in t known modulo t^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: ExtField,
    c: Vec<FieldElement>,
}

impl TruncatedSeries {
    pub fn zero(field: &ExtField, order: usize) -> Self {
        TruncatedSeries {
            field: field.clone(),
            c: vec![field.zero(); order],
        }
    }

    pub fn from_coeffs(field: &ExtField, order: usize, coeffs: &[(usize, FieldElement)]) -> Self {
        let mut s = Self::zero(field, order);
        for (i, a) in coeffs {
            if *i < order {
                s.c[*i] += a;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.c[i]
    }

    /// Least exponent with nonzero coefficient below the truncation order.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncatedSeries {
            field: self.field.clone(),
            c: (0..n).map(|i| &self.c[i] + &o.c[i]).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        TruncatedSeries {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![self.field.zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        TruncatedSeries {
            field: self.field.clone(),
            c,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::from_coeffs(&self.field, self.order(), &[(0, self.field.one())]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchCheck {
    pub sqrt_q: u64,
    pub order: usize,
    pub vanishes: bool,
    /// First exponent with a nonzero coefficient, when vanishing fails.
    pub first_nonzero: Option<usize>,
    pub valuation_x: Option<usize>,
    pub valuation_y: Option<usize>,
    /// The leading terms of the two pole branches cancel in the relation.
    pub pole_branches_consistent: bool,
}

impl BranchCheck {
    pub fn passed(&self) -> bool {
        self.vanishes
            && self.valuation_x == Some(2)
            && self.valuation_y == Some(2 * self.sqrt_q as usize)
            && self.pole_branches_consistent
    }
}

/// Exponents (i, j) of the monomials x^i y^j in the affine envelope relation.
fn envelope_exponents(n: i64) -> [(i64, i64); 6] {
    [(0, 2), (2, 2 * n), (2 * n, 0), (n + 1, n), (n, 1), (1, n + 1)]
}

/// Whether a branch with v(x) = vx, v(y) = vy can lie on the envelope curve
/// to leading order: the least monomial valuation must occur at least twice.
pub fn leading_order_consistent(s: SqrtQ, vx: i64, vy: i64) -> bool {
    let vals: Vec<i64> = envelope_exponents(s.value() as i64)
        .iter()
        .map(|&(i, j)| i * vx + j * vy)
        .collect();
    let min = *vals.iter().min().expect("six monomials");
    vals.iter().filter(|&&v| v == min).count() >= 2
}

/// Substitutes x = t², y = Σ_i t^{2√q + i(q−√q+1)} into the affine envelope
/// relation y² + x²y^{2√q} + x^{2√q} − 2(x^{√q+1}y^{√q} + x^{√q}y + xy^{√q+1})
/// and checks that it vanishes modulo t^{order+1}.
pub fn branch_expansion_check(s: SqrtQ, order: usize) -> Result<BranchCheck> {
    if s.p() == 2 {
        return Err(Error::Hypothesis("the envelope model needs odd characteristic".into()));
    }
    let n = s.value() as usize;
    if order < 4 * n {
        return Err(Error::InvalidArgument(format!("truncation order must be at least 4√q = {}", 4 * n)));
    }
    let f = ExtField::new(s.p(), 1)?;
    let len = order + 1;
    let step = (s.q() - s.value() + 1) as usize;
    let x = TruncatedSeries::from_coeffs(&f, len, &[(2, f.one())]);
    let y_terms: Vec<(usize, FieldElement)> = (0..)
        .map(|i| 2 * n + i * step)
        .take_while(|&e| e < len)
        .map(|e| (e, f.one()))
        .collect();
    let y = TruncatedSeries::from_coeffs(&f, len, &y_terms);
    let sq = s.value();
    let pos = y
        .mul(&y)
        .add(&x.mul(&x).mul(&y.pow(2 * sq)))
        .add(&x.pow(2 * sq));
    let neg = x
        .pow(sq + 1)
        .mul(&y.pow(sq))
        .add(&x.pow(sq).mul(&y))
        .add(&x.mul(&y.pow(sq + 1)));
    let total = pos.add(&neg.scale(&f.from_int(-2)));
    let first_nonzero = total.valuation();
    Ok(BranchCheck {
        sqrt_q: s.value(),
        order,
        vanishes: first_nonzero.is_none(),
        first_nonzero,
        valuation_x: x.valuation(),
        valuation_y: y.valuation(),
        pole_branches_consistent: leading_order_consistent(s, -2 * n as i64, -(2 * n as i64 - 2))
            && leading_order_consistent(s, 2 * n as i64 - 2, -2),
    })
}
