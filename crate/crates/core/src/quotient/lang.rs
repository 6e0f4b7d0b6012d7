use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf_tower::{mult_order, Embedding, ExtField, FieldElement, FpMatrix};
use crate::plane_curves::ProjMatrix;

/// Default cap on the lift order s, so that F_{q^s} stays desk-sized.
pub const DEFAULT_LIFT_CAP: u64 = 128;

/// Number of random F_p-combinations tried before giving up on an
/// invertible solution.
const RANDOM_TRIES: usize = 10_000;

/// Size cap, as log2 |F_{q^s}|, for the fields holding Lang solutions. They
/// are never enumerated, so the enumeration cap does not apply.
const LANG_FIELD_CAP_LOG2: u32 = 1 << 14;

/// A matrix A over F_{q^s} with A^{(q)} = N·A, where ^{(q)} raises every
/// entry to the q-th power.
#[derive(Clone, Debug, Serialize)]
pub struct LangSolution {
    /// The twisting matrix N over F_q.
    pub n: ProjMatrix,
    pub s: u64,
    /// A, over F_{q^s}.
    pub a: ProjMatrix,
    /// Dimension over F_p of {v : v^{(q)} = N·v}.
    pub kernel_dim: usize,
    /// Number of candidate column triples examined before det A ≠ 0.
    pub tries: usize,
    /// A^{(q)} = N·A holds exactly.
    pub residual_ok: bool,
}

/// For the twisting matrix t over F_q of projective order `d`, the scalar
/// e ∈ F_q* that makes (e·t)^s = 1 for the least s, with that s. Ties go to
/// the element of least code.
pub fn lift_order(t: &ProjMatrix, d: u64) -> Result<(FieldElement, u64)> {
    let delta = t
        .pow(d)
        .scalar_value()
        .ok_or_else(|| Error::IdentityFailed(format!("matrix^{d} is not scalar")))?;
    let fq = t.field();
    let mut best: Option<(FieldElement, u64)> = None;
    for e in fq.elements().skip(1) {
        let r = mult_order(&(&e.pow_u64(d) * &delta))?;
        if best.as_ref().is_none_or(|(_, b)| r < *b) {
            best = Some((e, r));
        }
    }
    let (e, r) = best.expect("F_q* is nonempty");
    Ok((e, d * r))
}

/// Solves A^{(q)} = N·A over F_{q^s}, q = |field of N|, column by column:
/// the columns range over the F_p-kernel of v ↦ v^{(q)} − N·v, which has
/// F_p-dimension 3·[F_q : F_p] when N^s = 1. Basis vectors are tried first,
/// then seeded random combinations.
pub fn lang_solve(n: &ProjMatrix, s: u64, seed: u64) -> Result<LangSolution> {
    let fq = n.field();
    let p = fq.characteristic();
    let qdeg = fq.degree();
    if s == 0 {
        return Err(Error::InvalidArgument("lift order must be ≥ 1".into()));
    }
    if !n.pow(s).scalar_value().is_some_and(|x| x.is_one()) {
        return Err(Error::Hypothesis(format!("N^{s} is not the identity")));
    }
    let k = qdeg * s as usize;
    let big = ExtField::with_cap(p as u64, k, LANG_FIELD_CAP_LOG2)?;
    let emb = Embedding::new(fq, &big)?;
    let nl = n.lift(&emb);

    let basis: Vec<FieldElement> = (0..k)
        .map(|i| {
            let mut c = vec![0u32; k];
            c[i] = 1;
            big.from_coeffs(&c)
        })
        .collect();
    let frob: Vec<FieldElement> = basis.iter().map(|x| x.frobenius_power(qdeg as i64)).collect();
    let mut columns = Vec::with_capacity(3 * k);
    for c in 0..3 {
        for i in 0..k {
            let mut col = Vec::with_capacity(3 * k);
            for r in 0..3 {
                let mut img = -&(nl.entry(r, c) * &basis[i]);
                if r == c {
                    img += &frob[i];
                }
                col.extend_from_slice(img.coeffs());
            }
            columns.push(col);
        }
    }
    let system = FpMatrix::from_columns(p, 3 * k, &columns);
    let kernel = system.kernel();
    if kernel.len() != 3 * qdeg {
        return Err(Error::IdentityFailed(format!(
            "semilinear system has kernel dimension {} over F_{p}, expected {} (rank {} of {})",
            kernel.len(),
            3 * qdeg,
            3 * k - kernel.len(),
            3 * k
        )));
    }
    let to_vec = |v: &[u32]| -> [FieldElement; 3] { std::array::from_fn(|r| big.from_coeffs(&v[r * k..(r + 1) * k])) };
    let vecs: Vec<[FieldElement; 3]> = kernel.iter().map(|v| to_vec(v)).collect();

    let (cols, tries) = match pick_basis(&vecs) {
        Some(c) => (c, 0),
        None => random_basis(&kernel, p, seed, &to_vec)?,
    };
    let m: [[FieldElement; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
    let a = ProjMatrix::new(m)?;
    let residual_ok = a.frobenius_power(qdeg as i64) == nl.mul(&a);
    if !residual_ok {
        return Err(Error::IdentityFailed("A^(q) ≠ N·A".into()));
    }
    Ok(LangSolution {
        n: n.clone(),
        s,
        a,
        kernel_dim: kernel.len(),
        tries,
        residual_ok,
    })
}

fn independent2(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> bool {
    (0..3).any(|i| {
        let j = (i + 1) % 3;
        &u[i] * &v[j] != &u[j] * &v[i]
    })
}

fn det_cols(u: &[FieldElement; 3], v: &[FieldElement; 3], w: &[FieldElement; 3]) -> FieldElement {
    let m = [
        [u[0].clone(), v[0].clone(), w[0].clone()],
        [u[1].clone(), v[1].clone(), w[1].clone()],
        [u[2].clone(), v[2].clone(), w[2].clone()],
    ];
    crate::plane_curves::det3(&m)
}

/// Greedy choice of three independent vectors from a spanning list.
fn pick_basis(vecs: &[[FieldElement; 3]]) -> Option<[[FieldElement; 3]; 3]> {
    let first = vecs.iter().find(|v| v.iter().any(|x| !x.is_zero()))?;
    let second = vecs.iter().find(|v| independent2(first, v))?;
    let third = vecs.iter().find(|v| !det_cols(first, second, v).is_zero())?;
    Some([first.clone(), second.clone(), third.clone()])
}

fn random_basis(
    kernel: &[Vec<u32>],
    p: u32,
    seed: u64,
    to_vec: &dyn Fn(&[u32]) -> [FieldElement; 3],
) -> Result<([[FieldElement; 3]; 3], usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = kernel[0].len();
    let combo = |rng: &mut ChaCha8Rng| {
        let mut v = vec![0u32; len];
        for b in kernel {
            let c = rng.gen_range(0..p);
            for (x, y) in v.iter_mut().zip(b) {
                *x = ((*x as u64 + c as u64 * *y as u64) % p as u64) as u32;
            }
        }
        to_vec(&v)
    };
    for t in 1..=RANDOM_TRIES {
        let cols = [combo(&mut rng), combo(&mut rng), combo(&mut rng)];
        if !det_cols(&cols[0], &cols[1], &cols[2]).is_zero() {
            return Ok((cols, t));
        }
    }
    Err(Error::IdentityFailed(format!(
        "no invertible solution among {RANDOM_TRIES} combinations"
    )))
}
