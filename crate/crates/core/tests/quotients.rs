use maxcurve::plane_curves::hermitian_fermat;
use maxcurve::quotient::{
    build_psi, burnside_quotient_count, divisor_admissibility, hurwitz_genus, subgroup_generator, twist_solution,
    twisted_count, twisted_count_by_descent, DEFAULT_LIFT_CAP,
};
use maxcurve::workbench::divisors;
use maxcurve::SqrtQ;

fn sq(n: u64) -> SqrtQ {
    SqrtQ::new(n).unwrap()
}

#[test]
fn burnside_matches_maximal_count() {
    for (n, d) in [(2, 3), (3, 7), (4, 13), (5, 3), (5, 7), (5, 21), (8, 3)] {
        let r = burnside_quotient_count(sq(n), d, DEFAULT_LIFT_CAP).unwrap();
        assert!(r.divisible, "√q = {n}, d = {d}");
        assert!(r.matches_expected, "√q = {n}, d = {d}: {:?} vs {}", r.quotient_count, r.expected_count);
        assert!(r.free);
        let q = sq(n).q();
        // off the identity every twist meets the curve in q − √q + 1 points
        assert!(r.counts[1..].iter().all(|&c| c == q - n + 1));
        assert_eq!(r.counts[0], q * n + 1);
    }
}

#[test]
fn twisted_counts_agree_with_descent() {
    let s = sq(5);
    let h = hermitian_fermat(s, &s.field_q().unwrap()).unwrap();
    let g = subgroup_generator(&build_psi(s).unwrap(), 7).unwrap();
    for j in 0..7 {
        let (_, sol) = twist_solution(&g, j, DEFAULT_LIFT_CAP).unwrap();
        assert!(sol.residual_ok);
        assert_eq!(twisted_count(&sol, &h).unwrap(), twisted_count_by_descent(&sol, &h).unwrap(), "j = {j}");
    }
}

#[test]
fn hurwitz_and_admissibility_over_all_divisors() {
    for n in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let s = sq(n);
        for d in divisors(s.cyclic_order()).unwrap() {
            let h = hurwitz_genus(s, d).unwrap();
            assert!(h.consistent, "√q = {n}, d = {d}");
            let a = divisor_admissibility(s, d);
            assert!(a.divides && a.consistent, "√q = {n}, d = {d}: {a:?}");
        }
    }
}

#[test]
fn lift_cap_is_enforced() {
    let err = burnside_quotient_count(sq(5), 7, 2).unwrap_err();
    assert!(matches!(err, maxcurve::Error::CapExceeded(_)));
}
