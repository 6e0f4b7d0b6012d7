use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf_tower::{find_root_of_unity, frame_parameter, ser_element, Embedding, FieldElement};
use crate::params::SqrtQ;
use crate::plane_curves::{frame_matrix, hermitian_fermat, ProjMatrix, ProjPoint};

/// A cyclic group of collineations of the Fermat Hermitian curve over F_q,
/// diagonal in the frame of the frame parameter.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicAction {
    pub sqrt_q: SqrtQ,
    /// Projective order of the generator.
    pub order: u64,
    /// The generator over F_q, normalized so its first nonzero entry is 1.
    pub matrix: ProjMatrix,
    /// Eigenvalue datum in F_{q³}: the generator is κ⁻¹·diag(λ, λ^{√q}, 1)·κ.
    #[serde(serialize_with = "ser_element")]
    pub lambda: FieldElement,
    /// Fixed points of the generator, over F_{q³}.
    pub triangle: [ProjPoint; 3],
    pub preserves_hermitian: bool,
    /// No triangle point lies in P²(F_q).
    pub triangle_off_base: bool,
    /// The q-Frobenius permutes the triangle as a 3-cycle.
    pub frobenius_three_cycle: bool,
    /// Every nontrivial power has three distinct eigenvalues, so its fixed
    /// points are exactly the triangle.
    pub powers_fix_only_triangle: bool,
}

impl CyclicAction {
    /// Whether the twisted Frobenius maps g^j∘Fr have no fixed point on the
    /// triangle, which makes the orbit count exact.
    pub fn free_off_triangle(&self) -> bool {
        self.triangle_off_base && self.frobenius_three_cycle && self.powers_fix_only_triangle
    }

    /// Matrix of g^k, normalized.
    pub fn power(&self, k: u64) -> ProjMatrix {
        self.matrix.pow(k).normalized()
    }
}

/// ψ = κ⁻¹·diag(λ, λ^{√q}, 1)·κ with λ of order q−√q+1, brought down to F_q.
pub fn build_psi(s: SqrtQ) -> Result<CyclicAction> {
    let n = s.cyclic_order();
    let fq = s.field_q()?;
    let big = s.field_q_power(3)?;
    let frame = frame_parameter(s)?;
    let a = Embedding::new(frame.value.field(), &big)?.apply(&frame.value);
    let kappa = frame_matrix(s, &a)?;
    let lambda = find_root_of_unity(&big, n)?;
    let action_on_big = kappa
        .inverse()
        .mul(&ProjMatrix::diag([lambda.clone(), lambda.pow_u64(s.value()), big.one()])?)
        .mul(&kappa)
        .normalized();
    let qdeg = s.q_degree();
    if !action_on_big.rows().iter().flatten().all(|x| x.in_subfield(qdeg)) {
        return Err(Error::IdentityFailed(format!(
            "normalized ψ has entries outside F_q for √q = {s}"
        )));
    }
    let matrix = action_on_big.descend(&Embedding::new(&fq, &big)?)?;
    let inv = kappa.inverse().columns();
    let triangle = [
        ProjPoint::new(inv[0].clone())?,
        ProjPoint::new(inv[1].clone())?,
        ProjPoint::new(inv[2].clone())?,
    ];
    let action = finish(s, n, matrix, lambda, triangle)?;
    if action.matrix.projective_order(n) != Some(n) {
        return Err(Error::IdentityFailed(format!("ψ does not have projective order {n}")));
    }
    Ok(action)
}

fn finish(
    s: SqrtQ,
    order: u64,
    matrix: ProjMatrix,
    lambda: FieldElement,
    triangle: [ProjPoint; 3],
) -> Result<CyclicAction> {
    let h = hermitian_fermat(s, matrix.field())?;
    let preserves_hermitian = h.poly.substitute(matrix.rows()).proportional_to(&h.poly).is_some();
    let qdeg = s.q_degree();
    let triangle_off_base = triangle.iter().all(|p| !p.rational_over(qdeg));
    let images: Vec<Option<usize>> = triangle
        .iter()
        .map(|p| {
            let fp = p.frobenius_power(qdeg as i64);
            triangle.iter().position(|t| *t == fp)
        })
        .collect();
    let frobenius_three_cycle = images.iter().enumerate().all(|(i, im)| im.is_some_and(|j| j != i))
        && images[0] != images[1];
    let powers_fix_only_triangle = (1..order).all(|k| {
        let x = lambda.pow_u64(k);
        let z = lambda.pow_u64(k * s.value());
        !x.is_one() && !z.is_one() && x != z
    });
    for t in &triangle {
        let fixed = ProjPoint::new(matrix_on_big(&matrix, t.field())?.apply(t.coords()))?;
        if fixed != *t {
            return Err(Error::IdentityFailed("triangle point is not fixed by the action".into()));
        }
    }
    Ok(CyclicAction {
        sqrt_q: s,
        order,
        matrix,
        lambda,
        triangle,
        preserves_hermitian,
        triangle_off_base,
        frobenius_three_cycle,
        powers_fix_only_triangle,
    })
}

fn matrix_on_big(m: &ProjMatrix, big: &crate::gf_tower::ExtField) -> Result<ProjMatrix> {
    Ok(m.lift(&Embedding::new(m.field(), big)?))
}

/// The subgroup of order d, generated by ψ^{(q−√q+1)/d}.
pub fn subgroup_generator(psi: &CyclicAction, d: u64) -> Result<CyclicAction> {
    let n = psi.order;
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDivisor { n: d, order: n.to_string() });
    }
    let k = n / d;
    let matrix = psi.power(k);
    if matrix.projective_order(d) != Some(d) {
        return Err(Error::IdentityFailed(format!("ψ^{k} does not have order {d}")));
    }
    finish(psi.sqrt_q, d, matrix, psi.lambda.pow_u64(k), psi.triangle.clone())
}
