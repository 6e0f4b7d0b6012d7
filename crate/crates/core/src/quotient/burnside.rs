use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::action::{build_psi, subgroup_generator, CyclicAction};
use super::lang::{lang_solve, lift_order, LangSolution};
use crate::error::{Error, Result};
use crate::gf_tower::{arith, Embedding, FieldElement};
use crate::params::SqrtQ;
use crate::plane_curves::{hermitian_fermat, CurveModel};
use crate::point_count::count_projective_points;

/// #{Y ∈ P²(F_q) : H(A·Y) = 0}: the number of points P of `h` over the
/// algebraic closure with P^{(q)} ~ N·P, where A solves A^{(q)} = N·A.
pub fn twisted_count(sol: &LangSolution, h: &CurveModel) -> Result<u64> {
    let fq = sol.n.field();
    if h.field() != fq {
        return Err(Error::InvalidArgument("curve and twist live over different fields".into()));
    }
    let big = sol.a.field();
    let emb = Embedding::new(fq, big)?;
    let poly = h.poly.lift(&emb);
    let elems: Vec<FieldElement> = fq.elements().collect();
    let cols = sol.a.columns();
    // prod[c][i] = column c scaled by the i-th element of F_q
    let prod: Vec<Vec<[FieldElement; 3]>> = cols
        .iter()
        .map(|col| {
            elems
                .iter()
                .map(|y| {
                    let y = emb.apply(y);
                    std::array::from_fn(|r| &col[r] * &y)
                })
                .collect()
        })
        .collect();
    let n = elems.len();
    let one = elems.iter().position(|x| x.is_one()).expect("F_q contains 1");
    let add3 = |a: &[FieldElement; 3], b: &[FieldElement; 3]| -> [FieldElement; 3] {
        std::array::from_fn(|r| &a[r] + &b[r])
    };
    let on_curve = |v: &[FieldElement; 3]| u64::from(poly.eval(v).is_zero());
    let affine: u64 = (0..n)
        .into_par_iter()
        .map(|yi| {
            let head = add3(&prod[0][one], &prod[1][yi]);
            (0..n).map(|zi| on_curve(&add3(&head, &prod[2][zi]))).sum::<u64>()
        })
        .sum();
    let line: u64 = (0..n).map(|zi| on_curve(&add3(&prod[1][one], &prod[2][zi]))).sum();
    let last = on_curve(&prod[2][one]);
    Ok(affine + line + last)
}

/// The same count through an explicit model: H(A·Y) is proportional to a
/// form over F_q, whose F_q-points are counted by enumeration.
pub fn twisted_count_by_descent(sol: &LangSolution, h: &CurveModel) -> Result<u64> {
    let fq = sol.n.field();
    let big = sol.a.field();
    let emb = Embedding::new(fq, big)?;
    let g = h.poly.lift(&emb).substitute(sol.a.rows()).normalized();
    if !g.defined_over_subfield(fq.degree()) {
        return Err(Error::IdentityFailed("twisted form does not descend to F_q".into()));
    }
    let model = CurveModel::new("twisted", g.descend(&emb)?);
    Ok(count_projective_points(&model, 1)?.total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCount {
    pub j: u64,
    /// Projective order of g^{−j}.
    pub order: u64,
    /// Degree s of the field F_{q^s} holding the Lang solution.
    pub lift: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideReport {
    pub sqrt_q: u64,
    pub d: u64,
    /// N_j = #Fix(g^j∘Frobenius) on the Hermitian curve, j = 0..d−1.
    pub counts: Vec<u64>,
    pub twists: Vec<TwistCount>,
    pub orbit_total: u64,
    pub divisible: bool,
    /// Σ N_j / d, when divisible.
    pub quotient_count: Option<u64>,
    pub expected_genus: u64,
    /// q + 1 + 2g√q.
    pub expected_count: u64,
    pub matches_expected: bool,
    /// The action has no fixed point on any twisted Frobenius locus.
    pub free: bool,
}

/// Genus ½((q−√q+1)/d − 1) of the quotient of the Hermitian curve by the
/// order-d subgroup.
pub fn quotient_genus(s: SqrtQ, d: u64) -> Result<u64> {
    let n = s.cyclic_order();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDivisor { n: d, order: n.to_string() });
    }
    Ok((n / d - 1) / 2)
}

fn seed(s: SqrtQ, d: u64, j: u64) -> u64 {
    s.q().wrapping_mul(1_000_003) ^ d.wrapping_mul(7919) ^ j
}

/// Solves the Lang equation for the twist g^{−j}, rescaled to finite order.
pub fn twist_solution(g: &CyclicAction, j: u64, lift_cap: u64) -> Result<(TwistCount, LangSolution)> {
    let d = g.order;
    let t = g.power((d - j % d) % d);
    let dj = d / arith::gcd(j % d, d);
    let (e, s) = lift_order(&t, dj)?;
    if s > lift_cap {
        return Err(Error::CapExceeded(format!(
            "twist j = {j} needs F_{{q^{s}}}, beyond the lift cap s ≤ {lift_cap}"
        )));
    }
    let sol = lang_solve(&t.scale(&e), s, seed(g.sqrt_q, d, j))?;
    let info = TwistCount {
        j,
        order: dj,
        lift: s,
        count: 0,
    };
    Ok((info, sol))
}

/// #X̄(F_q) for the quotient by the order-d subgroup, as (1/d)·Σ_j N_j.
pub fn burnside_quotient_count(s: SqrtQ, d: u64, lift_cap: u64) -> Result<BurnsideReport> {
    let expected_genus = quotient_genus(s, d)?;
    let expected_count = s.q() + 1 + 2 * expected_genus * s.value();
    let fq = s.field_q()?;
    let h = hermitian_fermat(s, &fq)?;
    let finish = |counts: Vec<u64>, twists: Vec<TwistCount>, free: bool| {
        let orbit_total: u64 = counts.iter().sum();
        let divisible = orbit_total.is_multiple_of(d);
        let quotient_count = divisible.then_some(orbit_total / d);
        BurnsideReport {
            sqrt_q: s.value(),
            d,
            counts,
            twists,
            orbit_total,
            divisible,
            quotient_count,
            expected_genus,
            expected_count,
            matches_expected: quotient_count == Some(expected_count),
            free,
        }
    };
    if d == 1 {
        let n0 = count_projective_points(&h, 1)?.total;
        let twist = TwistCount {
            j: 0,
            order: 1,
            lift: 1,
            count: n0,
        };
        return Ok(finish(vec![n0], vec![twist], true));
    }
    let psi = build_psi(s)?;
    let g = subgroup_generator(&psi, d)?;
    let twists: Vec<TwistCount> = (0..d)
        .into_par_iter()
        .map(|j| {
            let (mut info, sol) = twist_solution(&g, j, lift_cap)?;
            info.count = twisted_count(&sol, &h)?;
            Ok(info)
        })
        .collect::<Result<Vec<_>>>()?;
    let counts = twists.iter().map(|t| t.count).collect();
    Ok(finish(counts, twists, g.free_off_triangle() && g.preserves_hermitian))
}

/// Riemann–Hurwitz for the order-d quotient: 2g_top − 2 = d(2g − 2) + 3(d − 1),
/// the cover being totally ramified at the three triangle points.
#[derive(Clone, Debug, Serialize)]
pub struct HurwitzCheck {
    pub sqrt_q: u64,
    pub d: u64,
    pub top_genus: u64,
    pub ramification_points: u64,
    pub ramification_index: u64,
    pub bottom_genus: u64,
    /// ½((q−√q+1)/d − 1).
    pub closed_form: u64,
    pub consistent: bool,
}

pub fn hurwitz_genus(s: SqrtQ, d: u64) -> Result<HurwitzCheck> {
    let closed_form = quotient_genus(s, d)?;
    let top = s.hermitian_genus() as i64;
    let di = d as i64;
    let (points, index) = if d == 1 { (0, 1) } else { (3, d) };
    let rhs = 2 * top - 2 - points * (index as i64 - 1);
    if rhs % di != 0 || (rhs / di + 2) % 2 != 0 || rhs / di + 2 < 0 {
        return Err(Error::IdentityFailed(format!(
            "Hurwitz relation gives a non-integral genus for √q = {s}, d = {d}"
        )));
    }
    let bottom = ((rhs / di + 2) / 2) as u64;
    Ok(HurwitzCheck {
        sqrt_q: s.value(),
        d,
        top_genus: top as u64,
        ramification_points: points as u64,
        ramification_index: index,
        bottom_genus: bottom,
        closed_form,
        consistent: bottom == closed_form,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub holds: bool,
}

/// Arithmetic consequences of d | q − √q + 1.
#[derive(Clone, Debug, Serialize)]
pub struct Admissibility {
    pub sqrt_q: u64,
    pub d: u64,
    pub divides: bool,
    /// √q mod d.
    pub r: Option<u64>,
    pub clauses: Vec<Clause>,
    /// Every clause holds (vacuous when d does not divide).
    pub consistent: bool,
}

pub fn divisor_admissibility(s: SqrtQ, d: u64) -> Admissibility {
    let divides = d > 0 && s.cyclic_order().is_multiple_of(d);
    let mut clauses = Vec::new();
    let mut r = None;
    if divides {
        let rv = s.value() % d;
        r = Some(rv);
        let phi = arith::euler_phi(d);
        clauses.push(Clause {
            name: "r² − r + 1 ≡ 0 (mod d)",
            holds: (rv * rv + 1 + d - rv).is_multiple_of(d),
        });
        clauses.push(Clause {
            name: "d odd",
            holds: d % 2 == 1,
        });
        clauses.push(Clause {
            name: "gcd(r, d) = 1",
            holds: arith::gcd(rv, d) == 1,
        });
        clauses.push(Clause {
            name: "d = 3 iff r = 2",
            holds: (d == 3) == (rv == 2),
        });
        clauses.push(Clause {
            name: "6 | φ(d) when d > 3",
            holds: d <= 3 || phi.is_multiple_of(6),
        });
        clauses.push(Clause {
            name: "prime d > 3 is ≡ 1 (mod 6)",
            holds: d <= 3 || !arith::is_prime(d) || d % 6 == 1,
        });
    }
    let consistent = clauses.iter().all(|c| c.holds);
    Admissibility {
        sqrt_q: s.value(),
        d,
        divides,
        r,
        clauses,
        consistent,
    }
}
