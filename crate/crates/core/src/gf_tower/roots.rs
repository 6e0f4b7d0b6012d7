//! Root finding and multiplicative orders.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::{ExtField, FieldElement};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Fields up to this size use exhaustive evaluation on the split part.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    #[serde(serialize_with = "crate::gf_tower::ser_element")]
    pub value: FieldElement,
    pub multiplicity: usize,
}

impl Root {
    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1
    }
}

/// X^{|F|} mod m, by k successive p-th powers of X.
fn x_to_field_size(m: &Poly) -> Poly {
    let field = m.field().clone();
    let p = BigUint::from(field.characteristic());
    let mut h = Poly::x(&field).rem(m);
    for _ in 0..field.degree() {
        h = h.powmod(&p, m);
    }
    h
}

/// All roots of `f` lying in `field`, sorted, with multiplicities.
///
/// The split part gcd(f, X^{|F|} − X) is computed first; its roots are then
/// read off by exhaustive evaluation on small fields and by equal-degree
/// (Cantor–Zassenhaus) splitting on large ones.
pub fn poly_roots(f: &Poly, field: &ExtField) -> Result<Vec<Root>> {
    if f.field() != field {
        return Err(Error::Malformed(format!(
            "polynomial over {} but roots requested in {}",
            f.field(),
            field
        )));
    }
    if f.is_zero() {
        return Err(Error::Malformed("zero polynomial has every element as a root".into()));
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let f = f.monic();
    let split = f.gcd(&x_to_field_size(&f).sub(&Poly::x(field)));
    let mut values = match field.size_u64() {
        Some(q) if q <= EXHAUSTIVE_LIMIT => field
            .elements()
            .filter(|x| split.eval(x).is_zero())
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_2007);
            let mut out = Vec::new();
            split_linear(&split, &mut rng, &mut out);
            out
        }
    };
    values.sort();
    Ok(values
        .into_iter()
        .map(|value| {
            let multiplicity = multiplicity(&f, &value);
            Root { value, multiplicity }
        })
        .collect())
}

fn multiplicity(f: &Poly, r: &FieldElement) -> usize {
    let field = f.field();
    let lin = Poly::new(field, vec![-r, field.one()]);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, rem) = g.divrem(&lin);
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        g = q;
    }
}

/// Splits a monic squarefree product of distinct linear factors.
fn split_linear(g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElement>) {
    let field = g.field().clone();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(-&g.coeffs()[0]);
            return;
        }
        _ => {}
    }
    let p = field.characteristic();
    let half = (field.size() - 1u32) >> 1;
    loop {
        let delta = field.random(rng);
        let probe = if p == 2 {
            // absolute trace of δX: Σ (δX)^{2^i}
            let mut term = Poly::new(&field, vec![field.zero(), delta]).rem(g);
            let mut acc = term.clone();
            for _ in 1..field.degree() {
                term = term.mulmod(&term, g);
                acc = acc.add(&term);
            }
            acc
        } else {
            Poly::new(&field, vec![delta, field.one()])
                .powmod(&half, g)
                .sub(&Poly::constant(field.one()))
        };
        let h = g.gcd(&probe);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < g.degree().unwrap() {
            split_linear(&h, rng, out);
            split_linear(&g.divrem(&h).0.monic(), rng, out);
            return;
        }
    }
}

/// Least n ≥ 1 with x^n = 1.
pub fn mult_order(x: &FieldElement) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = x.field();
    let mut n = field.group_order_u64()?;
    for &(l, _) in field.group_order_factors()? {
        while n % l == 0 && x.pow_u64(n / l).is_one() {
            n /= l;
        }
    }
    Ok(n)
}

/// The generator of F* with the smallest code.
pub fn least_primitive_element(field: &ExtField) -> Result<FieldElement> {
    let order = field.group_order_u64()?;
    let size = order + 1;
    (1..size)
        .map(|c| field.from_code(c))
        .find(|x| mult_order(x).map(|n| n == order).unwrap_or(false))
        .ok_or_else(|| Error::IdentityFailed("multiplicative group is not cyclic".into()))
}

/// An element of exact multiplicative order n: the least primitive element
/// raised to (|F| − 1)/n.
pub fn find_root_of_unity(field: &ExtField, n: u64) -> Result<FieldElement> {
    let order = field.group_order_u64()?;
    if n == 0 || order % n != 0 {
        return Err(Error::NotDivisor {
            n,
            order: order.to_string(),
        });
    }
    let g = least_primitive_element(field)?;
    let zeta = g.pow_u64(order / n);
    let got = mult_order(&zeta)?;
    if got != n {
        return Err(Error::IdentityFailed(format!(
            "root of unity has order {got}, expected {n}"
        )));
    }
    Ok(zeta)
}
