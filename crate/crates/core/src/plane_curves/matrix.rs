use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{Embedding, ExtField, FieldElement};

/// An invertible 3×3 matrix acting on P², rows indexed first.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjMatrix {
    field: ExtField,
    m: [[FieldElement; 3]; 3],
}

pub(crate) fn det3(m: &[[FieldElement; 3]; 3]) -> FieldElement {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

impl ProjMatrix {
    pub fn new(m: [[FieldElement; 3]; 3]) -> Result<Self> {
        let field = m[0][0].field().clone();
        if det3(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjMatrix { field, m })
    }

    pub fn identity(field: &ExtField) -> Self {
        Self::diag([field.one(), field.one(), field.one()]).expect("identity is invertible")
    }

    pub fn diag(d: [FieldElement; 3]) -> Result<Self> {
        let z = d[0].field().zero();
        let [a, b, c] = d;
        Self::new([
            [a, z.clone(), z.clone()],
            [z.clone(), b, z.clone()],
            [z.clone(), z, c],
        ])
    }

    /// The cyclic coordinate rotation (X₀, X₁, X₂) ↦ (X₂, X₀, X₁).
    pub fn rotation(field: &ExtField) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::new([
            [z.clone(), z.clone(), o.clone()],
            [o.clone(), z.clone(), z.clone()],
            [z.clone(), o, z],
        ])
        .expect("permutation matrix")
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn rows(&self) -> &[[FieldElement; 3]; 3] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.m[i][j]
    }

    pub fn det(&self) -> FieldElement {
        det3(&self.m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = self.field.zero();
                for k in 0..3 {
                    acc += &self.m[i][k] * &other.m[k][j];
                }
                acc
            })
        });
        ProjMatrix {
            field: self.field.clone(),
            m,
        }
    }

    pub fn inverse(&self) -> Self {
        let d = self.det().inverse().expect("matrix is invertible");
        let m = &self.m;
        let cof = |r: usize, c: usize| {
            let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
            let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
            &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
        };
        let inv = std::array::from_fn(|i| std::array::from_fn(|j| &cof(j, i) * &d));
        ProjMatrix {
            field: self.field.clone(),
            m: inv,
        }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::identity(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        ProjMatrix {
            field: self.field.clone(),
            m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] * s)),
        }
    }

    /// Entrywise x ↦ x^{p^e}.
    pub fn frobenius_power(&self, e: i64) -> Self {
        ProjMatrix {
            field: self.field.clone(),
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].frobenius_power(e))),
        }
    }

    /// The scalar λ when the matrix is λ·I.
    pub fn scalar_value(&self) -> Option<FieldElement> {
        let l = &self.m[0][0];
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { l.clone() } else { self.field.zero() };
                if self.m[i][j] != want {
                    return None;
                }
            }
        }
        Some(l.clone())
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    /// Least n ≥ 1 with self^n scalar, searched among divisors of `bound`.
    pub fn projective_order(&self, bound: u64) -> Option<u64> {
        crate::gf_tower::arith::divisors(bound)
            .into_iter()
            .find(|&n| self.pow(n).is_scalar())
    }

    pub fn apply(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        std::array::from_fn(|i| {
            let mut acc = self.field.zero();
            for j in 0..3 {
                acc += &self.m[i][j] * &v[j];
            }
            acc
        })
    }

    /// Divides by the first nonzero entry in row-major order.
    pub fn normalized(&self) -> Self {
        let first = self
            .m
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .expect("invertible matrix has a nonzero entry");
        self.scale(&first.inverse().expect("nonzero"))
    }

    pub fn columns(&self) -> [[FieldElement; 3]; 3] {
        std::array::from_fn(|j| std::array::from_fn(|i| self.m[i][j].clone()))
    }

    pub fn lift(&self, emb: &Embedding) -> Self {
        ProjMatrix {
            field: emb.target().clone(),
            m: std::array::from_fn(|i| std::array::from_fn(|j| emb.apply(&self.m[i][j]))),
        }
    }

    pub fn descend(&self, emb: &Embedding) -> Result<Self> {
        let mut m: Vec<FieldElement> = Vec::with_capacity(9);
        for x in self.m.iter().flatten() {
            m.push(emb.preimage(x)?);
        }
        let m: [[FieldElement; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| m[3 * i + j].clone()));
        Ok(ProjMatrix {
            field: emb.source().clone(),
            m,
        })
    }
}

impl Serialize for ProjMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: [[Vec<u32>; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].coeffs().to_vec()));
        rows.serialize(s)
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            writeln!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// A point of P² stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([FieldElement; 3]);

impl ProjPoint {
    pub fn new(v: [FieldElement; 3]) -> Result<Self> {
        let lead = v
            .iter()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidArgument("(0:0:0) is not a projective point".into()))?;
        let inv = lead.inverse()?;
        Ok(ProjPoint(std::array::from_fn(|i| &v[i] * &inv)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.0
    }

    pub fn field(&self) -> &ExtField {
        self.0[0].field()
    }

    pub fn frobenius_power(&self, e: i64) -> Self {
        ProjPoint(std::array::from_fn(|i| self.0[i].frobenius_power(e)))
    }

    /// Whether every coordinate lies in F_{p^d}.
    pub fn rational_over(&self, d: usize) -> bool {
        self.0.iter().all(|x| x.in_subfield(d))
    }

    pub fn to_serial(&self) -> [Vec<u32>; 3] {
        std::array::from_fn(|i| self.0[i].coeffs().to_vec())
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_serial().serialize(s)
    }
}

/// A point with coordinates given as F_p coefficient lists, as it appears
/// in serialized models; resolved against a field when read back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialPoint(pub [Vec<u32>; 3]);

impl SerialPoint {
    pub fn resolve(&self, field: &ExtField) -> Result<ProjPoint> {
        let coords: [FieldElement; 3] = std::array::from_fn(|i| field.from_coeffs(&self.0[i]));
        ProjPoint::new(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_power() {
        let f = ExtField::new(5, 2).unwrap();
        let t = f.generator();
        let m = ProjMatrix::new([
            [t.clone(), f.one(), f.zero()],
            [f.one(), f.from_int(2), t.square()],
            [f.zero(), f.one(), f.one()],
        ])
        .unwrap();
        assert!(m.mul(&m.inverse()).scalar_value().unwrap().is_one());
        assert_eq!(m.pow(5), m.mul(&m).mul(&m).mul(&m).mul(&m));
        let r = ProjMatrix::rotation(&f);
        assert_eq!(r.projective_order(3), Some(3));
    }

    #[test]
    fn singular_rejected() {
        let f = ExtField::new(3, 1).unwrap();
        let o = f.one();
        let z = f.zero();
        let rows = [
            [o.clone(), o.clone(), z.clone()],
            [o.clone(), o.clone(), z.clone()],
            [z.clone(), z, o],
        ];
        assert!(matches!(ProjMatrix::new(rows), Err(Error::SingularMatrix)));
    }

    #[test]
    fn point_normalization() {
        let f = ExtField::new(7, 1).unwrap();
        let p = ProjPoint::new([f.zero(), f.from_int(3), f.from_int(6)]).unwrap();
        assert!(p.coords()[1].is_one());
        assert_eq!(p.coords()[2], f.from_int(2));
        assert!(ProjPoint::new([f.zero(), f.zero(), f.zero()]).is_err());
    }
}
