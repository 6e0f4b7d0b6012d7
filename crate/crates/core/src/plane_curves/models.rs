use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hompoly::HomPoly3;
use super::matrix::{ProjMatrix, ProjPoint, SerialPoint};
use crate::error::{Error, Result};
use crate::gf_tower::{find_root_of_unity, frame_parameter, poly_roots, Embedding, ExtField, FieldElement, Poly};
use crate::params::SqrtQ;

/// A plane curve: its defining form plus the data needed to interpret
/// counts on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub name: String,
    pub poly: HomPoly3,
    pub sqrt_q: Option<SqrtQ>,
    pub params: BTreeMap<String, i64>,
    /// Genus of the nonsingular model, when known in closed form.
    pub expected_genus: Option<u64>,
    /// Points of interest (typically the known singular points).
    pub special_points: Vec<ProjPoint>,
}

#[derive(Serialize, Deserialize)]
struct SerialModel {
    name: String,
    sqrt_q: Option<u64>,
    params: BTreeMap<String, i64>,
    expected_genus: Option<u64>,
    special_points: Vec<SerialPoint>,
    poly: HomPoly3,
}

impl Serialize for CurveModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SerialModel {
            name: self.name.clone(),
            sqrt_q: self.sqrt_q.map(SqrtQ::value),
            params: self.params.clone(),
            expected_genus: self.expected_genus,
            special_points: self.special_points.iter().map(|p| SerialPoint(p.to_serial())).collect(),
            poly: self.poly.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let m = SerialModel::deserialize(d)?;
        let field = m.poly.field().clone();
        let special_points = m
            .special_points
            .iter()
            .map(|p| p.resolve(&field))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let sqrt_q = m.sqrt_q.map(SqrtQ::new).transpose().map_err(D::Error::custom)?;
        Ok(CurveModel {
            name: m.name,
            poly: m.poly,
            sqrt_q,
            params: m.params,
            expected_genus: m.expected_genus,
            special_points,
        })
    }
}

impl CurveModel {
    pub fn new(name: &str, poly: HomPoly3) -> Self {
        CurveModel {
            name: name.to_string(),
            poly,
            sqrt_q: None,
            params: BTreeMap::new(),
            expected_genus: None,
            special_points: Vec::new(),
        }
    }

    fn with_sqrt_q(mut self, s: SqrtQ) -> Self {
        self.sqrt_q = Some(s);
        self
    }

    fn with_genus(mut self, g: u64) -> Self {
        self.expected_genus = Some(g);
        self
    }

    fn with_param(mut self, k: &str, v: i64) -> Self {
        self.params.insert(k.to_string(), v);
        self
    }

    pub fn field(&self) -> &ExtField {
        self.poly.field()
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    /// Canonical JSON; the byte string that identifies the model in caches.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// The same model with coefficients moved into `target`.
    pub fn lift_to(&self, target: &ExtField) -> Result<Self> {
        let emb = Embedding::new(self.field(), target)?;
        Ok(CurveModel {
            poly: self.poly.lift(&emb),
            special_points: self
                .special_points
                .iter()
                .map(|p| ProjPoint::new(std::array::from_fn(|i| emb.apply(&p.coords()[i]))))
                .collect::<Result<Vec<_>>>()?,
            ..self.clone()
        })
    }
}

fn require_contains(field: &ExtField, s: SqrtQ, k: usize, what: &str) -> Result<()> {
    let need = s.e() as usize * k;
    if field.characteristic() as u64 != s.p() || !field.degree().is_multiple_of(need) {
        return Err(Error::InvalidArgument(format!(
            "{what} needs a field containing F_{{{}^{}}}, got {field}",
            s.p(),
            need
        )));
    }
    Ok(())
}

fn fundamental_points(field: &ExtField) -> Vec<ProjPoint> {
    let (o, z) = (field.one(), field.zero());
    vec![
        ProjPoint::new([o.clone(), z.clone(), z.clone()]).unwrap(),
        ProjPoint::new([z.clone(), o.clone(), z.clone()]).unwrap(),
        ProjPoint::new([z.clone(), z, o]).unwrap(),
    ]
}

/// Y^{√q}Z + YZ^{√q} = X^{√q+1}.
pub fn hermitian_canonical(s: SqrtQ, field: &ExtField) -> Result<CurveModel> {
    require_contains(field, s, 2, "the Hermitian curve")?;
    let n = s.value() as u32;
    let poly = HomPoly3::from_int_terms(field, &[([0, n, 1], 1), ([0, 1, n], 1), ([n + 1, 0, 0], -1)]);
    Ok(CurveModel::new("hermitian", poly)
        .with_sqrt_q(s)
        .with_genus(s.hermitian_genus()))
}

/// X^{√q+1} + Y^{√q+1} + Z^{√q+1}.
pub fn hermitian_fermat(s: SqrtQ, field: &ExtField) -> Result<CurveModel> {
    require_contains(field, s, 2, "the Hermitian curve")?;
    let n = s.value() as u32 + 1;
    let poly = HomPoly3::from_int_terms(field, &[([n, 0, 0], 1), ([0, n, 0], 1), ([0, 0, n], 1)]);
    Ok(CurveModel::new("hermitian-fermat", poly)
        .with_sqrt_q(s)
        .with_genus(s.hermitian_genus()))
}

/// The degree 2(√q+1) model
/// X₁²X₂^{2√q} + X₀²X₁^{2√q} + X₀^{2√q}X₂² − 2(X₀^{√q+1}X₁^{√q}X₂ + X₀^{√q}X₁X₂^{√q+1} + X₀X₁^{√q+1}X₂^{√q}),
/// singular at the three fundamental points. Odd characteristic only.
pub fn envelope_model(s: SqrtQ, field: &ExtField) -> Result<CurveModel> {
    if s.p() == 2 {
        return Err(Error::Hypothesis("the envelope model needs odd characteristic".into()));
    }
    require_contains(field, s, 1, "the envelope model")?;
    let n = s.value() as u32;
    let poly = HomPoly3::from_int_terms(
        field,
        &[
            ([0, 2, 2 * n], 1),
            ([2, 2 * n, 0], 1),
            ([2 * n, 0, 2], 1),
            ([n + 1, n, 1], -2),
            ([n, 1, n + 1], -2),
            ([1, n + 1, n], -2),
        ],
    );
    let mut m = CurveModel::new("envelope", poly)
        .with_sqrt_q(s)
        .with_genus(s.hermitian_genus());
    m.special_points = fundamental_points(field);
    Ok(m)
}

fn cyclic_form(s: SqrtQ, field: &ExtField) -> HomPoly3 {
    let n = s.value() as u32;
    HomPoly3::from_int_terms(field, &[([n, 0, 1], 1), ([0, 1, n], 1), ([1, n, 0], 1)])
}

/// X₀^{√q}X₂ + X₂^{√q}X₁ + X₁^{√q}X₀, the Hermitian curve in the frame
/// where the order-(q−√q+1) automorphism is diagonal.
pub fn cyclic_model(s: SqrtQ, field: &ExtField) -> Result<CurveModel> {
    require_contains(field, s, 3, "the cyclic model")?;
    Ok(CurveModel::new("cyclic", cyclic_form(s, field))
        .with_sqrt_q(s)
        .with_genus(s.hermitian_genus()))
}

/// The matrix with rows (a, 1, b), (b, a, 1), (1, b, a), b = a^{q+1}.
pub fn frame_matrix(s: SqrtQ, a: &FieldElement) -> Result<ProjMatrix> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let f = a.field();
    let b = a.pow_u64(s.q() + 1);
    let o = f.one();
    ProjMatrix::new([
        [a.clone(), o.clone(), b.clone()],
        [b.clone(), a.clone(), o.clone()],
        [o, b, a.clone()],
    ])
}

/// (a+1)·det M = a² + a + 1, the relation for primitive (q²+q+1)-th roots.
pub fn frame_det_identity(m: &ProjMatrix) -> bool {
    let a = m.entry(0, 0);
    let one = a.field().one();
    &(a + &one) * &m.det() == &(&(a * a) + a) + &one
}

/// (a+1)³·det M = (a² + a + 1)³.
pub fn frame_det_identity_cubed(m: &ProjMatrix) -> bool {
    let a = m.entry(0, 0);
    let one = a.field().one();
    let cube = |x: &FieldElement| &(x * x) * x;
    &cube(&(a + &one)) * &m.det() == cube(&(&(&(a * a) + a) + &one))
}

/// The model F(T·X) = 0: a point P lies on the result iff T·P lies on `c`.
/// The curve is first lifted to the field of `t` when needed.
pub fn apply_coord_change(c: &CurveModel, t: &ProjMatrix) -> Result<CurveModel> {
    let lifted = if c.field() == t.field() {
        c.clone()
    } else {
        c.lift_to(t.field())?
    };
    let inv = t.inverse();
    let special_points = lifted
        .special_points
        .iter()
        .map(|p| ProjPoint::new(inv.apply(p.coords())))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveModel {
        poly: lifted.poly.substitute(t.rows()),
        special_points,
        ..lifted
    })
}

fn require_cube_case(s: SqrtQ) -> Result<()> {
    if s.value() % 3 != 2 {
        return Err(Error::Hypothesis(format!(
            "3 ∤ q − √q + 1 = {} for √q = {s}",
            s.cyclic_order()
        )));
    }
    Ok(())
}

fn cubed_quotient_form(s: SqrtQ, field: &ExtField) -> HomPoly3 {
    let e = (s.value() as u32 + 1) / 3;
    cyclic_form(s, field).add(&HomPoly3::from_int_terms(field, &[([e, e, e], -3)]))
}

/// X₀^{√q}X₂ + X₂^{√q}X₁ + X₁^{√q}X₀ − 3(X₀X₁X₂)^{(√q+1)/3}: the image of the
/// cyclic model under (X₀:X₁:X₂) ↦ (X₀³:X₁³:X₂³). Needs √q ≡ 2 (mod 3).
pub fn cubed_quotient_model(s: SqrtQ, field: &ExtField) -> Result<CurveModel> {
    require_cube_case(s)?;
    if field.characteristic() as u64 != s.p() {
        return Err(Error::InvalidArgument(format!("{field} has the wrong characteristic")));
    }
    let mut m = CurveModel::new("cubed-quotient", cubed_quotient_form(s, field))
        .with_sqrt_q(s)
        .with_param("d", 3)
        .with_genus((s.q() - s.value() - 2) / 6);
    m.special_points = fundamental_points(field);
    Ok(m)
}

/// Checks F′(X₀³, X₁³, X₂³) = G(X₀,X₁,X₂)·G(εX₀,εX₁,X₂)·G(X₀,X₁,εX₂), where G
/// is the cyclic form, F′ the cubed quotient form and ε a primitive cube
/// root of unity in `field`.
pub fn cube_identity_check(s: SqrtQ, field: &ExtField) -> Result<bool> {
    require_cube_case(s)?;
    if s.p() == 3 {
        return Err(Error::Hypothesis("no primitive cube root of unity in characteristic 3".into()));
    }
    let eps = find_root_of_unity(field, 3)?;
    let o = field.one();
    let g = cyclic_form(s, field);
    let lhs = cubed_quotient_form(s, field).inflate(3);
    let rhs = g
        .mul(&g.scale_vars(&[eps.clone(), eps.clone(), o.clone()]))
        .mul(&g.scale_vars(&[o.clone(), o, eps]));
    Ok(lhs == rhs)
}

/// The degree-3 quotient model over F_q together with the data used to
/// build it.
#[derive(Clone, Debug)]
pub struct QuotientModel {
    pub model: CurveModel,
    /// The frame parameter a, inside F_{q³}.
    pub a: FieldElement,
    /// The scalar c ∈ F_{q³} with c^{√q−1} = a.
    pub c: FieldElement,
    /// G′ = F′∘κ over F_{q³}, before scaling by c.
    pub unscaled: HomPoly3,
    /// G′^q = a^{−(√q+1)}·G′(X^q, Y^q, Z^q) held coefficientwise.
    pub frobenius_twist_ok: bool,
}

/// F = c·F′(κ·X) with κ the frame matrix of the frame parameter; descended
/// to F_q after checking that every coefficient is F_q-rational.
pub fn degree3_quotient_model(s: SqrtQ) -> Result<QuotientModel> {
    require_cube_case(s)?;
    let fq = s.field_q()?;
    let big = s.field_q_power(3)?;
    let frame = frame_parameter(s)?;
    let a = Embedding::new(frame.value.field(), &big)?.apply(&frame.value);
    let kappa = frame_matrix(s, &a)?;
    let unscaled = cubed_quotient_form(s, &big).substitute(kappa.rows());

    let twist = a.pow_i64(-(s.value() as i64 + 1))?;
    let qdeg = s.q_degree() as i64;
    let frobenius_twist_ok = unscaled
        .terms()
        .all(|(_, g)| g.frobenius_power(qdeg) == &twist * g);

    let mut xpoly = vec![big.zero(); s.value() as usize - 1];
    xpoly[0] = -&a;
    xpoly.push(big.one());
    let c = poly_roots(&Poly::new(&big, xpoly), &big)?
        .into_iter()
        .next()
        .map(|r| r.value)
        .ok_or_else(|| Error::Hypothesis(format!("no c with c^{} = a in F_{{q^3}}", s.value() - 1)))?;
    let scaled = unscaled.scale(&c);
    if !scaled.defined_over_subfield(s.q_degree()) {
        return Err(Error::IdentityFailed(
            "scaled quotient form has coefficients outside F_q".into(),
        ));
    }
    let poly = scaled.descend(&Embedding::new(&fq, &big)?)?;
    let model = CurveModel::new("degree3-quotient", poly)
        .with_sqrt_q(s)
        .with_param("d", 3)
        .with_genus((s.q() - s.value() - 2) / 6);
    Ok(QuotientModel {
        model,
        a,
        c,
        unscaled,
        frobenius_twist_ok,
    })
}

/// The curve families with known genus used as cross-checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Σ_{i=0}^{r} y^{p^i} = b·x^{√q+1} over F_{p^m}, b^{√q} + b = 0.
    AdditiveFibre { p: u64, m: u32, r: u32 },
    /// y^{√q} + y = x^{(√q+1)/t}.
    ArtinSchreier { sqrt_q: u64, t: u64 },
    /// x^{(√q+1)/t} + y^{(√q+1)/t} + 1 = 0.
    Fermat { sqrt_q: u64, t: u64 },
    /// Σ_{i=0}^{t} y^{√q/2^i} = x^{√q+1}, √q = 2^t.
    EvenChain { sqrt_q: u64 },
}

/// y^{√q}Z^? + … written as a form of degree D: each affine monomial
/// x^i y^j becomes X^i Y^j Z^{D−i−j}.
fn homogenize(field: &ExtField, affine: &[((u32, u32), FieldElement)]) -> HomPoly3 {
    let d = affine.iter().map(|((i, j), _)| i + j).max().unwrap_or(0);
    HomPoly3::from_terms(field, affine.iter().map(|((i, j), c)| ([*i, *j, d - i - j], c.clone())))
}

pub fn family_model(kind: Family) -> Result<CurveModel> {
    match kind {
        Family::AdditiveFibre { p, m, r } => {
            if m % 2 != 0 || r < 1 || r > m / 2 {
                return Err(Error::Hypothesis(format!("need m even and 1 ≤ r ≤ m/2, got m = {m}, r = {r}")));
            }
            let s = SqrtQ::new(crate::gf_tower::arith::checked_pow(p, m / 2).ok_or_else(|| {
                Error::InvalidArgument("√q overflows".into())
            })?)?;
            if s.p() != p {
                return Err(Error::NotPrime(p));
            }
            let fq = s.field_q()?;
            let b = fq
                .elements()
                .find(|b| !b.is_zero() && (&b.pow_u64(s.value()) + b).is_zero())
                .ok_or_else(|| Error::Hypothesis("no b with b^{√q} + b = 0".into()))?;
            let mut affine: Vec<((u32, u32), FieldElement)> =
                (0..=r).map(|i| ((0, p.pow(i) as u32), fq.one())).collect();
            affine.push(((s.value() as u32 + 1, 0), -&b));
            let genus = (p.pow(r) - 1) * s.value() / 2;
            Ok(CurveModel::new("additive-fibre", homogenize(&fq, &affine))
                .with_sqrt_q(s)
                .with_param("p", p as i64)
                .with_param("m", m as i64)
                .with_param("r", r as i64)
                .with_genus(genus))
        }
        Family::ArtinSchreier { sqrt_q, t } => {
            let s = SqrtQ::new(sqrt_q)?;
            if t == 0 || (sqrt_q + 1) % t != 0 {
                return Err(Error::Hypothesis(format!("t = {t} does not divide √q + 1")));
            }
            let fq = s.field_q()?;
            let n = ((sqrt_q + 1) / t) as u32;
            let affine = [
                ((0, sqrt_q as u32), fq.one()),
                ((0, 1), fq.one()),
                ((n, 0), -fq.one()),
            ];
            let genus = (sqrt_q - 1) * (n as u64 - 1) / 2;
            Ok(CurveModel::new("artin-schreier", homogenize(&fq, &affine))
                .with_sqrt_q(s)
                .with_param("t", t as i64)
                .with_genus(genus))
        }
        Family::Fermat { sqrt_q, t } => {
            let s = SqrtQ::new(sqrt_q)?;
            if t == 0 || (sqrt_q + 1) % t != 0 {
                return Err(Error::Hypothesis(format!("t = {t} does not divide √q + 1")));
            }
            let fq = s.field_q()?;
            let n = ((sqrt_q + 1) / t) as u32;
            let poly = HomPoly3::from_int_terms(&fq, &[([n, 0, 0], 1), ([0, n, 0], 1), ([0, 0, n], 1)]);
            let genus = (n as u64 - 1) * (n as u64).saturating_sub(2) / 2;
            Ok(CurveModel::new("fermat", poly)
                .with_sqrt_q(s)
                .with_param("t", t as i64)
                .with_genus(genus))
        }
        Family::EvenChain { sqrt_q } => {
            let s = SqrtQ::new(sqrt_q)?;
            if s.p() != 2 || sqrt_q < 2 {
                return Err(Error::Hypothesis("√q must be a power of 2".into()));
            }
            let fq = s.field_q()?;
            let mut affine: Vec<((u32, u32), FieldElement)> = (0..=s.e())
                .map(|i| ((0, (sqrt_q >> i) as u32), fq.one()))
                .collect();
            affine.push(((sqrt_q as u32 + 1, 0), fq.one()));
            Ok(CurveModel::new("even-chain", homogenize(&fq, &affine))
                .with_sqrt_q(s)
                .with_genus(sqrt_q * (sqrt_q - 2) / 4))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: u64) -> SqrtQ {
        SqrtQ::new(n).unwrap()
    }

    #[test]
    fn envelope_shape_and_symmetries() {
        let s = sq(5);
        let f = s.field_q_power(3).unwrap();
        let c = envelope_model(s, &f).unwrap();
        assert_eq!(c.degree(), 12);
        assert_eq!(c.poly.num_terms(), 6);
        let beta = ProjMatrix::rotation(&f);
        assert_eq!(apply_coord_change(&c, &beta).unwrap().poly, c.poly);
        let lambda = find_root_of_unity(&f, 21).unwrap();
        let diag = [lambda.clone(), lambda.pow_u64(5), f.one()];
        assert_eq!(c.poly.scale_vars(&diag), c.poly.scale(&lambda.pow_u64(10)));
        let g = cyclic_model(s, &f).unwrap();
        assert_eq!(g.poly.scale_vars(&diag), g.poly.scale(&lambda.pow_u64(5)));
        assert!(envelope_model(sq(4), &sq(4).field_q().unwrap()).is_err());
    }

    #[test]
    fn cyclic_affine_form() {
        let s = sq(5);
        let f = s.field_q_power(3).unwrap();
        let g = cyclic_model(s, &f).unwrap();
        // X₂ = 1, x = X₀, y = X₁: x^5 + y + x·y^5
        let affine: Vec<_> = g.poly.terms().map(|(e, _)| (e[0], e[1])).collect();
        assert!(affine.contains(&(5, 0)) && affine.contains(&(0, 1)) && affine.contains(&(1, 5)));
    }

    #[test]
    fn frame_matrix_identities() {
        let s = sq(5);
        let fp = frame_parameter(s).unwrap();
        let m = frame_matrix(s, &fp.value).unwrap();
        assert!(!m.det().is_zero());
        assert!(frame_det_identity_cubed(&m));
        let f = s.field_q_power(3).unwrap();
        let eps = find_root_of_unity(&f, 3).unwrap();
        assert!(matches!(frame_matrix(s, &eps), Err(Error::SingularMatrix)));
    }

    #[test]
    fn frame_conjugates_cyclic_model_to_fermat() {
        for n in [3u64, 4, 5, 8] {
            let s = sq(n);
            let big = s.field_q_power(3).unwrap();
            let fp = frame_parameter(s).unwrap();
            let a = Embedding::new(fp.value.field(), &big).unwrap().apply(&fp.value);
            let kappa = frame_matrix(s, &a).unwrap();
            let g = cyclic_model(s, &big).unwrap();
            let h = hermitian_fermat(s, &big).unwrap();
            let moved = apply_coord_change(&g, &kappa).unwrap();
            let lambda = moved.poly.proportional_to(&h.poly);
            assert!(lambda.is_some(), "√q = {n}");
        }
    }

    #[test]
    fn cubed_quotient_symmetry() {
        let s = sq(5);
        let f = s.field_q().unwrap();
        let m = cubed_quotient_model(s, &f).unwrap();
        assert_eq!(m.poly.coeff(&[2, 2, 2]), f.from_int(-3));
        assert_eq!(m.poly.permute([1, 2, 0]), m.poly);
        assert!(cubed_quotient_model(sq(7), &sq(7).field_q().unwrap()).is_err());
    }

    #[test]
    fn cube_identity() {
        assert!(cube_identity_check(sq(5), &sq(5).field_q().unwrap()).unwrap());
        assert!(cube_identity_check(sq(8), &sq(8).field_q().unwrap()).unwrap());
    }

    #[test]
    fn quotient_model_is_rational() {
        for n in [5u64, 8] {
            let qm = degree3_quotient_model(sq(n)).unwrap();
            assert!(qm.frobenius_twist_ok);
            assert_eq!(qm.model.degree() as u64, n + 1);
            assert_eq!(qm.c.pow_u64(n - 1), qm.a);
        }
    }

    #[test]
    fn printed_corner_exponent_breaks_rationality() {
        // κ with a^{√q+1} in the top-right corner instead of a^{q+1}
        let s = sq(5);
        let big = s.field_q_power(3).unwrap();
        let fp = frame_parameter(s).unwrap();
        let a = Embedding::new(fp.value.field(), &big).unwrap().apply(&fp.value);
        let b = a.pow_u64(s.q() + 1);
        let o = big.one();
        let kappa = ProjMatrix::new([
            [a.clone(), o.clone(), a.pow_u64(s.value() + 1)],
            [b.clone(), a.clone(), o.clone()],
            [o, b, a.clone()],
        ])
        .unwrap();
        let g = cubed_quotient_model(s, &big).unwrap().poly.substitute(kappa.rows());
        let ratios: std::collections::BTreeSet<FieldElement> = g
            .terms()
            .map(|(_, c)| &c.frobenius_power(2) * &c.inverse().unwrap())
            .collect();
        assert!(ratios.len() > 1);
    }

    #[test]
    fn model_json_round_trip() {
        let s = sq(3);
        let m = envelope_model(s, &s.field_q().unwrap()).unwrap();
        let back = CurveModel::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn family_degrees_and_genera() {
        let g = family_model(Family::AdditiveFibre { p: 3, m: 4, r: 1 }).unwrap();
        assert_eq!(g.expected_genus, Some(9));
        assert_eq!(g.degree(), 10);
        let a = family_model(Family::ArtinSchreier { sqrt_q: 5, t: 2 }).unwrap();
        assert_eq!(a.expected_genus, Some(4));
        let f = family_model(Family::Fermat { sqrt_q: 5, t: 2 }).unwrap();
        assert_eq!(f.expected_genus, Some(1));
        let a4 = family_model(Family::ArtinSchreier { sqrt_q: 5, t: 3 }).unwrap();
        assert_eq!(a4.expected_genus, Some(2));
        assert!(family_model(Family::Fermat { sqrt_q: 5, t: 4 }).is_err());
        let e = family_model(Family::EvenChain { sqrt_q: 4 }).unwrap();
        assert_eq!(e.expected_genus, Some(2));
    }
}
