use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::arith;
use super::fp_poly;
use crate::error::{Error, Result};

/// Default cap on field sizes for element arithmetic: p^k ≤ 2^40.
pub const DEFAULT_SIZE_CAP_LOG2: u32 = 40;

/// Serializable description of a field: characteristic, degree, modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: usize,
    /// Monic modulus, low degree first, length k + 1.
    pub modulus: Vec<u32>,
}

struct FieldData {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    /// Nonzero terms of X^k mod f as (degree, coefficient).
    tail: Vec<(usize, u32)>,
    size: BigUint,
    size_u64: Option<u64>,
    /// Row i holds t^{i·p} reduced, the matrix of the p-power map.
    frobenius: OnceLock<Vec<Vec<u32>>>,
    group_factors: OnceLock<Vec<(u64, u32)>>,
}

/// The finite field F_{p^k} = F_p[t]/(f) for a fixed monic irreducible f.
///
/// Cheap to clone; all clones share one immutable description.
#[derive(Clone)]
pub struct ExtField(Arc<FieldData>);

static FIELD_CACHE: OnceLock<Mutex<HashMap<(u32, usize), ExtField>>> = OnceLock::new();

impl ExtField {
    /// F_{p^k} with the lexicographically least monic irreducible modulus,
    /// subject to the default size cap.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        Self::with_cap(p, k, DEFAULT_SIZE_CAP_LOG2)
    }

    /// As [`ExtField::new`] with an explicit cap on log2(p^k).
    pub fn with_cap(p: u64, k: usize, cap_log2: u32) -> Result<Self> {
        if !arith::is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be ≥ 1".into()));
        }
        let size = BigUint::from(p).pow(k as u32);
        if size > BigUint::one() << cap_log2 {
            return Err(Error::SizeCap { p, k, cap_log2 });
        }
        let p = p as u32;
        let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let modulus = least_irreducible(p, k);
        let field = Self::from_parts(p, k, modulus);
        cache.lock().unwrap().insert((p, k), field.clone());
        Ok(field)
    }

    /// Rebuilds a field from its descriptor, re-checking irreducibility.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        if !arith::is_prime(d.p as u64) {
            return Err(Error::NotPrime(d.p as u64));
        }
        if d.modulus.len() != d.k + 1 || d.modulus[d.k] != 1 || d.k == 0 {
            return Err(Error::Malformed("modulus must be monic of degree k".into()));
        }
        if d.modulus.iter().any(|&c| c >= d.p) {
            return Err(Error::Malformed("modulus coefficients not reduced".into()));
        }
        if !fp_poly::is_irreducible(&d.modulus, d.p) {
            return Err(Error::Malformed("modulus is reducible".into()));
        }
        Ok(Self::from_parts(d.p, d.k, d.modulus.clone()))
    }

    fn from_parts(p: u32, k: usize, modulus: Vec<u32>) -> Self {
        let tail = (0..k)
            .filter(|&i| modulus[i] != 0)
            .map(|i| (i, p - modulus[i]))
            .collect();
        let size = BigUint::from(p).pow(k as u32);
        let size_u64 = size.to_u64();
        ExtField(Arc::new(FieldData {
            p,
            k,
            modulus,
            tail,
            size,
            size_u64,
            frobenius: OnceLock::new(),
            group_factors: OnceLock::new(),
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn size(&self) -> &BigUint {
        &self.0.size
    }

    /// p^k when it fits in a machine word.
    pub fn size_u64(&self) -> Option<u64> {
        self.0.size_u64
    }

    /// |F*| = p^k − 1 as a BigUint.
    pub fn group_order(&self) -> BigUint {
        &self.0.size - 1u32
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            k: self.0.k,
            modulus: self.0.modulus.clone(),
        }
    }

    /// Factorization of p^k − 1; only available for word-sized fields.
    pub fn group_order_factors(&self) -> Result<&[(u64, u32)]> {
        let n = self.group_order_u64()?;
        Ok(self.0.group_factors.get_or_init(|| arith::factorize(n)))
    }

    pub(crate) fn group_order_u64(&self) -> Result<u64> {
        self.0
            .size_u64
            .map(|s| s - 1)
            .ok_or_else(|| Error::InvalidArgument("field too large for order computations".into()))
    }

    /// Whether F_{p^d} sits inside this field.
    pub fn has_subfield_of_degree(&self, d: usize) -> bool {
        d >= 1 && self.0.k.is_multiple_of(d)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: vec![0; self.0.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.c[0] = n.rem_euclid(self.0.p as i64) as u32;
        e
    }

    /// The class of t in F_p[t]/(f).
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.0.k == 1 {
            e.c[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            e.c[1] = 1;
        }
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        assert!(coeffs.len() <= self.0.k, "too many coefficients");
        let mut e = self.zero();
        for (dst, &src) in e.c.iter_mut().zip(coeffs) {
            *dst = src % self.0.p;
        }
        e
    }

    /// Element with base-p digits of `code` as coefficients (digit i ↔ t^i).
    pub fn from_code(&self, mut code: u64) -> FieldElement {
        let mut e = self.zero();
        let p = self.0.p as u64;
        for c in e.c.iter_mut() {
            *c = (code % p) as u32;
            code /= p;
        }
        e
    }

    /// Iterates all field elements in code order. Only for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.0.size_u64.expect("field too large to enumerate");
        (0..n).map(move |c| self.from_code(c))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.0.p;
        FieldElement {
            field: self.clone(),
            c: (0..self.0.k).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn frobenius_rows(&self) -> &[Vec<u32>] {
        self.0.frobenius.get_or_init(|| {
            let k = self.0.k;
            let tp = self.generator().pow_u64(self.0.p as u64);
            let mut rows = Vec::with_capacity(k);
            let mut cur = self.one();
            for _ in 0..k {
                rows.push(cur.c.clone());
                cur = &cur * &tp;
            }
            rows
        })
    }

    fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.0.k;
        let p = self.0.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        // (p-1)^2 * k must stay below 2^63 for deferred reduction
        let lazy = (p - 1) * (p - 1) * (k as u64) < (1u64 << 62);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            let row = &mut prod[i..i + k];
            if lazy {
                for (slot, &y) in row.iter_mut().zip(b) {
                    *slot += x * y as u64;
                }
            } else {
                for (slot, &y) in row.iter_mut().zip(b) {
                    *slot = (*slot + x * y as u64) % p;
                }
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            for &(j, t) in &self.0.tail {
                let idx = i - k + j;
                prod[idx] = (prod[idx] % p + c * t as u64) % p;
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|c| (c % p) as u32).collect()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

impl fmt::Display for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

/// Lexicographically least monic irreducible of degree k over F_p, where
/// candidates are ordered by the integer Σ c_i p^i of their lower
/// coefficients. For k = 1 this is X itself.
fn least_irreducible(p: u32, k: usize) -> Vec<u32> {
    let mut f = vec![0u32; k + 1];
    f[k] = 1;
    if k == 1 {
        return f;
    }
    loop {
        // odometer increment on c_0, c_1, ...
        let mut i = 0;
        loop {
            f[i] += 1;
            if f[i] < p {
                break;
            }
            f[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial found");
        }
        if f[0] != 0 && fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
}

/// An element of an [`ExtField`], as a coefficient vector in the basis
/// 1, t, …, t^{k−1}.
#[derive(Clone)]
pub struct FieldElement {
    field: ExtField,
    c: Vec<u32>,
}

impl FieldElement {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Base-p integer code of the element, when it fits in a u64.
    pub fn code(&self) -> u64 {
        let p = self.field.0.p as u64;
        self.c.iter().rev().fold(0u64, |acc, &x| acc * p + x as u64)
    }

    /// Whether the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0)
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed-field arithmetic: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow_u64(&self, mut e: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        if let Some(small) = e.to_u64() {
            return self.pow_u64(small);
        }
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// x^n for a signed exponent (x ≠ 0 when n < 0).
    pub fn pow_i64(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow_u64(n as u64))
        } else {
            Ok(self.inverse()?.pow_u64(n.unsigned_abs()))
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = &self.field.0;
        let inv = fp_poly::inverse_mod(&self.c, &f.modulus, f.p).ok_or(Error::ZeroElement)?;
        Ok(self.field.from_coeffs(&inv))
    }

    /// x^p, via the precomputed matrix of the p-power map.
    pub fn frobenius(&self) -> Self {
        let f = &self.field;
        if f.0.k == 1 {
            return self.clone();
        }
        let p = f.0.p as u64;
        let rows = f.frobenius_rows();
        let mut acc = vec![0u64; f.0.k];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &r) in acc.iter_mut().zip(&rows[i]) {
                *slot = (*slot + x as u64 * r as u64) % p;
            }
        }
        FieldElement {
            field: f.clone(),
            c: acc.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// x^{p^e}. Negative or large e are reduced modulo the degree.
    pub fn frobenius_power(&self, e: i64) -> Self {
        let k = self.field.0.k as i64;
        let e = e.rem_euclid(k);
        let mut x = self.clone();
        for _ in 0..e {
            x = x.frobenius();
        }
        x
    }

    /// Whether x^{p^d} = x, i.e. x lies in the subfield F_{p^d}.
    pub fn in_subfield(&self, d: usize) -> bool {
        self.frobenius_power(d as i64) == *self
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Lexicographic order on coefficient vectors, highest power first; for
/// word-sized fields this coincides with the order of [`FieldElement::code`].
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match (i, x) {
                (0, _) => x.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{x}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{x}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        let p = self.field.0.p;
        FieldElement {
            field: self.field.clone(),
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(&a, &b)| {
                    let s = a + b;
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        let p = self.field.0.p;
        FieldElement {
            field: self.field.clone(),
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
                .collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            field: self.field.clone(),
            c: self.field.mul_raw(&self.c, &rhs.c),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.0.p;
        FieldElement {
            field: self.field.clone(),
            c: self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
        impl<'a> $tra<&'a FieldElement> for FieldElement {
            fn $ma(&mut self, rhs: &FieldElement) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra<FieldElement> for FieldElement {
            fn $ma(&mut self, rhs: FieldElement) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_convention() {
        let f5 = ExtField::new(5, 1).unwrap();
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.group_order(), BigUint::from(4u32));
        let two = f5.from_int(2);
        assert_eq!((&two * &two).code(), 4);
        assert_eq!(two.inverse().unwrap().code(), 3);
    }

    #[test]
    fn least_moduli() {
        assert_eq!(ExtField::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(ExtField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        let f125 = ExtField::new(5, 3).unwrap();
        assert_eq!(f125.group_order(), BigUint::from(124u32));
        let f = ExtField::new(5, 6).unwrap();
        assert_eq!(f.group_order(), BigUint::from(15624u32));
        assert_eq!(15624 % 21, 0);
    }

    #[test]
    fn size_cap_and_primality() {
        assert!(matches!(ExtField::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(ExtField::new(2, 41), Err(Error::SizeCap { .. })));
        assert!(ExtField::with_cap(2, 41, 64).is_ok());
    }

    #[test]
    fn frobenius_matches_power() {
        let f = ExtField::new(5, 6).unwrap();
        let x = f.from_code(12345);
        assert_eq!(x.frobenius(), x.pow_u64(5));
        assert_eq!(x.frobenius_power(6), x);
        assert_eq!(x.frobenius_power(2), x.pow_u64(25));
    }

    #[test]
    fn modulus_divides_x_pk_minus_x() {
        for (p, k) in [(2u64, 9usize), (3, 4), (5, 6), (7, 3), (11, 2)] {
            let f = ExtField::new(p, k).unwrap();
            let t = f.generator();
            assert_eq!(t.frobenius_power(k as i64), t);
            assert_ne!(t.frobenius_power(1), t);
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let f = ExtField::new(3, 4).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        let d: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(ExtField::from_descriptor(&d).unwrap(), f);
        let mut bad = d.clone();
        bad.modulus = vec![0, 0, 0, 0, 1];
        assert!(ExtField::from_descriptor(&bad).is_err());
    }
}
