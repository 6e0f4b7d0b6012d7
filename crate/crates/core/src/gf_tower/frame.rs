//! The parameter a ∈ F_{√q³} behind the coordinate frame that turns the
//! Hermitian curve into the cyclic model X₀^{√q}X₂ + X₂^{√q}X₁ + X₁^{√q}X₀.

use serde::Serialize;

use super::field::FieldElement;
use super::poly::Poly;
use super::roots::poly_roots;
use crate::error::{Error, Result};
use crate::params::SqrtQ;

/// Values of the frame identities at a chosen root a of X^{√q+1} + X + 1.
#[derive(Clone, Debug, Serialize)]
pub struct FrameChecks {
    /// a^{q√q+√q} + a^{q+√q+1} + a, expected zero.
    pub a1_zero: bool,
    /// a^{q√q+q+√q+1} + a^{√q+1} + 1, expected zero.
    pub a2_zero: bool,
    /// a^{q√q+√q+1} + a^{q+1} + a^{√q}, expected nonzero.
    pub a3_nonzero: bool,
    /// det of the frame matrix, expected nonzero.
    pub det_nonzero: bool,
    /// (a+1)³ det = (a²+a+1)³.
    pub det_identity: bool,
    /// a^{q+√q+1} = 1.
    pub norm_one: bool,
    /// a^{√q³} = a.
    pub in_cubic_subfield: bool,
}

impl FrameChecks {
    pub fn all(&self) -> bool {
        self.a1_zero
            && self.a2_zero
            && self.a3_nonzero
            && self.det_nonzero
            && self.det_identity
            && self.norm_one
            && self.in_cubic_subfield
    }
}

#[derive(Clone, Debug)]
pub struct FrameParameter {
    pub sqrt_q: SqrtQ,
    /// a, an element of F_{√q³}.
    pub value: FieldElement,
    pub a3: FieldElement,
    pub checks: FrameChecks,
}

/// det of the matrix with rows (a, 1, b), (b, a, 1), (1, b, a).
pub fn circulant_det(a: &FieldElement, b: &FieldElement) -> FieldElement {
    let f = a.field();
    let three = f.from_int(3);
    &(&(&(a * a) * a) + &(&(b * b) * b)) + &f.one() - &(&three * &(a * b))
}

/// Evaluates every frame identity at `a`, an element of a field containing
/// F_{√q³} (powers are taken literally, so `a` may sit in a larger field).
pub fn frame_checks(sqrt_q: SqrtQ, a: &FieldElement) -> (FrameChecks, FieldElement) {
    let s = sqrt_q.value();
    let q = sqrt_q.q();
    let f = a.field();
    let one = f.one();
    let pw = |n: u64| a.pow_u64(n);
    let a1 = &(&pw(q * s + s) + &pw(q + s + 1)) + a;
    let a2 = &(&pw(q * s + q + s + 1) + &pw(s + 1)) + &one;
    let a3 = &(&pw(q * s + s + 1) + &pw(q + 1)) + &pw(s);
    let b = pw(q + 1);
    let det = circulant_det(a, &b);
    let ap1 = a + &one;
    let quad = &(&(a * a) + a) + &one;
    let cube = |x: &FieldElement| &(x * x) * x;
    let checks = FrameChecks {
        a1_zero: a1.is_zero(),
        a2_zero: a2.is_zero(),
        a3_nonzero: !a3.is_zero(),
        det_nonzero: !det.is_zero(),
        det_identity: &cube(&ap1) * &det == cube(&quad),
        norm_one: pw(q + s + 1).is_one(),
        in_cubic_subfield: pw(s * s * s) == *a,
    };
    (checks, a3)
}

/// The least root a ∈ F_{√q³} of X^{√q+1} + X + 1 with a² + a + 1 ≠ 0,
/// after checking every frame identity for it.
pub fn frame_parameter(sqrt_q: SqrtQ) -> Result<FrameParameter> {
    let field = sqrt_q.field_sqrt_power(3)?;
    let s = sqrt_q.value() as usize;
    let mut coeffs = vec![0i64; s + 2];
    coeffs[0] = 1;
    coeffs[1] = 1;
    coeffs[s + 1] = 1;
    let f = Poly::from_ints(&field, &coeffs);
    let one = field.one();
    for root in poly_roots(&f, &field)? {
        let a = root.value;
        if (&(&(&a * &a) + &a) + &one).is_zero() {
            continue;
        }
        let (checks, a3) = frame_checks(sqrt_q, &a);
        if !checks.all() {
            return Err(Error::IdentityFailed(format!(
                "frame identities fail at a = {a} for √q = {sqrt_q}: {checks:?}"
            )));
        }
        return Ok(FrameParameter {
            sqrt_q,
            value: a,
            a3,
            checks,
        });
    }
    Err(Error::Hypothesis(format!(
        "no root of X^{} + X + 1 in F_{{{}^3}} with a² + a + 1 ≠ 0",
        s + 1,
        sqrt_q
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_tower::mult_order;

    #[test]
    fn parameter_for_five() {
        let fp = frame_parameter(SqrtQ::new(5).unwrap()).unwrap();
        assert_eq!(fp.value.field().degree(), 3);
        assert!(fp.value.pow_u64(31).is_one());
        assert!(fp.checks.all());
    }

    #[test]
    fn every_root_admissible_for_five() {
        let sq = SqrtQ::new(5).unwrap();
        let field = sq.field_sqrt_power(3).unwrap();
        let f = Poly::from_ints(&field, &[1, 1, 0, 0, 0, 0, 1]);
        let roots = poly_roots(&f, &field).unwrap();
        assert_eq!(roots.len(), 6);
        for r in roots {
            let (checks, _) = frame_checks(sq, &r.value);
            assert!(checks.all(), "{checks:?}");
            assert_ne!(mult_order(&r.value).unwrap(), 3);
        }
    }

    #[test]
    fn parameter_for_eight() {
        let fp = frame_parameter(SqrtQ::new(8).unwrap()).unwrap();
        assert_eq!(fp.value.field().size_u64(), Some(512));
        assert!(fp.value.pow_u64(73).is_one());
    }

    #[test]
    fn parameter_small_characteristics() {
        for s in [2u64, 3, 4, 7, 9, 11] {
            let fp = frame_parameter(SqrtQ::new(s).unwrap()).unwrap();
            assert!(fp.checks.all(), "√q = {s}");
        }
    }
}
