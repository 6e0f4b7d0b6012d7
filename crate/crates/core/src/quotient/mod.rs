//! The cyclic automorphism ψ of the Hermitian curve, its subgroups, and
//! point counts of the quotient curves by twisted Frobenius fixed points.

mod action;
mod burnside;
mod fibers;
mod lang;

pub use action::{build_psi, subgroup_generator, CyclicAction};
pub use burnside::{
    burnside_quotient_count, divisor_admissibility, hurwitz_genus, quotient_genus, twist_solution, twisted_count,
    twisted_count_by_descent, Admissibility, BurnsideReport, Clause, HurwitzCheck, TwistCount,
};
pub use fibers::{cyclic_model_points, fiber_statistics, FiberStats};
pub use lang::{lang_solve, lift_order, LangSolution, DEFAULT_LIFT_CAP};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_curves::{hermitian_fermat, ProjMatrix};
    use crate::SqrtQ;

    fn sq(n: u64) -> SqrtQ {
        SqrtQ::new(n).unwrap()
    }

    #[test]
    fn psi_small_cases() {
        for n in [2u64, 3, 4, 5] {
            let psi = build_psi(sq(n)).unwrap();
            assert_eq!(psi.order, sq(n).cyclic_order());
            assert!(psi.preserves_hermitian, "√q = {n}");
            assert!(psi.free_off_triangle(), "√q = {n}");
            assert_eq!(psi.matrix.field().degree(), sq(n).q_degree());
        }
    }

    #[test]
    fn subgroups_of_psi() {
        let psi = build_psi(sq(5)).unwrap();
        let g3 = subgroup_generator(&psi, 3).unwrap();
        assert_eq!(g3.matrix.projective_order(21), Some(3));
        let all = subgroup_generator(&psi, 21).unwrap();
        assert_eq!(all.matrix, psi.matrix);
        let one = subgroup_generator(&psi, 1).unwrap();
        assert!(one.matrix.scalar_value().is_some_and(|x| x.is_one()));
        assert!(subgroup_generator(&psi, 5).is_err());
    }

    #[test]
    fn lang_identity_and_order_three() {
        let s = sq(5);
        let fq = s.field_q().unwrap();
        let id = lang_solve(&ProjMatrix::identity(&fq), 1, 0).unwrap();
        assert!(id.residual_ok);
        assert_eq!(id.kernel_dim, 3 * fq.degree());

        let g = subgroup_generator(&build_psi(s).unwrap(), 3).unwrap();
        let (info, sol) = twist_solution(&g, 1, DEFAULT_LIFT_CAP).unwrap();
        assert_eq!(info.order, 3);
        assert_eq!(sol.a.field().degree(), fq.degree() * info.lift as usize);
        let h = hermitian_fermat(s, &fq).unwrap();
        assert_eq!(twisted_count(&sol, &h).unwrap(), 21);
        assert_eq!(twisted_count_by_descent(&sol, &h).unwrap(), 21);
    }

    #[test]
    fn burnside_counts_for_q_25() {
        let s = sq(5);
        for (d, want) in [(1u64, 126u64), (3, 56), (7, 36), (21, 26)] {
            let r = burnside_quotient_count(s, d, DEFAULT_LIFT_CAP).unwrap();
            assert_eq!(r.counts[0], 126);
            assert!(r.counts[1..].iter().all(|&c| c == 21), "d = {d}: {:?}", r.counts);
            assert_eq!(r.quotient_count, Some(want));
            assert!(r.matches_expected && r.free);
        }
    }

    #[test]
    fn hurwitz_values() {
        let g = |n, d| hurwitz_genus(sq(n), d).unwrap();
        assert_eq!(g(5, 3).bottom_genus, 3);
        assert_eq!(g(5, 7).bottom_genus, 1);
        assert_eq!(g(5, 21).bottom_genus, 0);
        assert_eq!(g(11, 3).bottom_genus, 18);
        assert!(g(11, 37).consistent);
    }

    #[test]
    fn admissibility() {
        let a = divisor_admissibility(sq(5), 3);
        assert!(a.divides && a.consistent && a.r == Some(2));
        assert!(divisor_admissibility(sq(5), 7).consistent);
        assert!(!divisor_admissibility(sq(5), 5).divides);
    }

    #[test]
    fn fibers_over_cubic_extension() {
        let st = fiber_statistics(sq(3), 7, 3).unwrap();
        // q³ + 1 + 2g·q^{3/2} with q = 9, g = 3
        assert_eq!(st.points, 729 + 1 + 2 * 3 * 27);
        assert!(st.ok);
        assert_eq!(st.histogram.get(&1), Some(&3));
    }
}
