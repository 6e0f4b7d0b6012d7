use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf_tower::{find_root_of_unity, ExtField, FieldElement, FpMatrix};
use crate::params::SqrtQ;
use crate::plane_curves::ProjPoint;

#[derive(Clone, Debug, Serialize)]
pub struct FiberStats {
    pub sqrt_q: u64,
    pub d: u64,
    pub k: u32,
    pub points: u64,
    pub orbits: u64,
    /// Orbit size → number of orbits of that size.
    pub histogram: BTreeMap<usize, u64>,
    /// Points whose orbit is shorter than d.
    pub short_orbit_points: Vec<ProjPoint>,
    /// Short orbits occur only at the three fundamental points, each a
    /// fixed point, and every other orbit has exactly d points.
    pub ok: bool,
}

/// Points of X₀^{√q}X₂ + X₂^{√q}X₁ + X₁^{√q}X₀ over `f`. On the chart X₂ = 1
/// the relation reads y + x·y^{√q} = −x^{√q}, which is F_p-linear in y, so
/// each fibre over x is an affine F_p-subspace.
pub fn cyclic_model_points(s: SqrtQ, f: &ExtField) -> Result<Vec<ProjPoint>> {
    if !f.degree().is_multiple_of(3 * s.e() as usize) || f.characteristic() as u64 != s.p() {
        return Err(Error::Hypothesis(format!("{f} does not contain F_{{√q³}}")));
    }
    let p = f.characteristic();
    let k = f.degree();
    let n = s.value();
    let basis: Vec<FieldElement> = (0..k)
        .map(|i| {
            let mut c = vec![0u32; k];
            c[i] = 1;
            f.from_coeffs(&c)
        })
        .collect();
    let basis_pow: Vec<FieldElement> = basis.iter().map(|b| b.pow_u64(n)).collect();
    let size = f.size_u64().ok_or_else(|| Error::CapExceeded(format!("{f} too large to sweep")))?;
    let mut pts: Vec<ProjPoint> = (0..size)
        .into_par_iter()
        .flat_map_iter(|code| {
            let x = f.from_code(code);
            let cols: Vec<Vec<u32>> = (0..k)
                .map(|i| (&basis[i] + &(&x * &basis_pow[i])).coeffs().to_vec())
                .collect();
            let m = FpMatrix::from_columns(p, k, &cols);
            let rhs = -&x.pow_u64(n);
            let sols = match m.solve(rhs.coeffs()) {
                None => Vec::new(),
                Some(y0) => span(p, &y0, &m.kernel()),
            };
            let x2 = x.clone();
            sols.into_iter().map(move |y| {
                let y = x2.field().from_coeffs(&y);
                ProjPoint::new([x2.clone(), y, x2.field().one()]).expect("affine point")
            })
        })
        .collect();
    let (o, z) = (f.one(), f.zero());
    pts.push(ProjPoint::new([o.clone(), z.clone(), z.clone()])?);
    pts.push(ProjPoint::new([z, o, f.zero()])?);
    pts.sort();
    Ok(pts)
}

/// y0 + every F_p-combination of `kernel`.
fn span(p: u32, y0: &[u32], kernel: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = vec![y0.to_vec()];
    for b in kernel {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                next.push(
                    v.iter()
                        .zip(b)
                        .map(|(&x, &y)| ((x as u64 + c as u64 * y as u64) % p as u64) as u32)
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

/// Orbits of (X₀:X₁:X₂) ↦ (λX₀ : λ^{√q}X₁ : X₂), λ of order d, on the points
/// of the cyclic model over F_{q^k}.
pub fn fiber_statistics(s: SqrtQ, d: u64, k: u32) -> Result<FiberStats> {
    if d == 0 || !s.cyclic_order().is_multiple_of(d) {
        return Err(Error::NotDivisor {
            n: d,
            order: s.cyclic_order().to_string(),
        });
    }
    if k == 0 || k > 3 {
        return Err(Error::InvalidArgument("extension degree must be 1, 2 or 3".into()));
    }
    let f = s.field_q_power(k as usize)?;
    let group = f.group_order_u64()?;
    if group % d != 0 {
        return Err(Error::NotDivisor {
            n: d,
            order: group.to_string(),
        });
    }
    let lambda = find_root_of_unity(&f, d)?;
    let mu = lambda.pow_u64(s.value());
    let pts = cyclic_model_points(s, &f)?;
    let mut seen: HashSet<ProjPoint> = HashSet::with_capacity(pts.len());
    let mut histogram = BTreeMap::new();
    let mut short = Vec::new();
    let mut orbits = 0;
    for p in &pts {
        if seen.contains(p) {
            continue;
        }
        let mut orbit = vec![p.clone()];
        let mut cur = p.clone();
        loop {
            let c = cur.coords();
            cur = ProjPoint::new([&c[0] * &lambda, &c[1] * &mu, c[2].clone()])?;
            if cur == *p {
                break;
            }
            orbit.push(cur.clone());
        }
        if (orbit.len() as u64) < d {
            short.extend(orbit.iter().cloned());
        }
        *histogram.entry(orbit.len()).or_insert(0) += 1;
        orbits += 1;
        seen.extend(orbit);
    }
    short.sort();
    let (o, z) = (f.one(), f.zero());
    let fundamental = [
        ProjPoint::new([o.clone(), z.clone(), z.clone()])?,
        ProjPoint::new([z.clone(), o.clone(), z.clone()])?,
        ProjPoint::new([z.clone(), z, o])?,
    ];
    let ok = if d == 1 {
        histogram.keys().all(|&l| l == 1)
    } else {
        short.len() == 3
            && fundamental.iter().all(|x| short.contains(x))
            && histogram.iter().all(|(&l, &c)| l as u64 == d || (l == 1 && c == 3))
    };
    Ok(FiberStats {
        sqrt_q: s.value(),
        d,
        k,
        points: pts.len() as u64,
        orbits,
        histogram,
        short_orbit_points: short,
        ok,
    })
}
