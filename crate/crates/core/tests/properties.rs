use proptest::prelude::*;

use maxcurve::gf_tower::{Embedding, ExtField, FieldElement};
use maxcurve::plane_curves::{apply_coord_change, degree3_quotient_model, hermitian_canonical, CurveModel, ProjMatrix};
use maxcurve::point_count::{count_projective_points, count_with_partition, nonsingular_count};
use maxcurve::semigroup::NumericalSemigroup;
use maxcurve::SqrtQ;

fn field(p: u64, k: usize) -> ExtField {
    ExtField::new(p, k).unwrap()
}

fn element(f: &ExtField, code: u64) -> FieldElement {
    f.from_code(code % f.size_u64().unwrap())
}

fn check_axioms(f: &ExtField, a: u64, b: u64, c: u64) -> Result<(), TestCaseError> {
    let (a, b, c) = (element(f, a), element(f, b), element(f, c));
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a + &f.zero(), a.clone());
    prop_assert_eq!(&a * &f.one(), a.clone());
    prop_assert!((&a + &(-&a)).is_zero());
    prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
    prop_assert_eq!(a.frobenius_power(f.degree() as i64), a.clone());
    if !a.is_zero() {
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
        let order = f.size_u64().unwrap() - 1;
        prop_assert!(a.pow_u64(order).is_one());
    }
    Ok(())
}

macro_rules! field_axioms {
    ($($name:ident: ($p:expr, $k:expr)),* $(,)?) => {$(
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn $name(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
                check_axioms(&field($p, $k), a, b, c)?;
            }
        }
    )*};
}

field_axioms! {
    axioms_f2: (2, 1),
    axioms_f64: (2, 6),
    axioms_f81: (3, 4),
    axioms_f25: (5, 2),
    axioms_f125: (5, 3),
    axioms_f625: (5, 4),
    axioms_f49: (7, 2),
    axioms_f121: (11, 2),
}

fn check_embedding(from: &ExtField, to: &ExtField, a: u64, b: u64) -> Result<(), TestCaseError> {
    let e = Embedding::new(from, to).unwrap();
    let (a, b) = (element(from, a), element(from, b));
    prop_assert_eq!(e.apply(&(&a + &b)), &e.apply(&a) + &e.apply(&b));
    prop_assert_eq!(e.apply(&(&a * &b)), &e.apply(&a) * &e.apply(&b));
    prop_assert_eq!(e.preimage(&e.apply(&a)).unwrap(), a.clone());
    prop_assert!(e.apply(&a).in_subfield(from.degree()));
    Ok(())
}

macro_rules! embeddings {
    ($($name:ident: ($p:expr, $a:expr, $b:expr)),* $(,)?) => {$(
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn $name(a in any::<u64>(), b in any::<u64>()) {
                check_embedding(&field($p, $a), &field($p, $b), a, b)?;
            }
        }
    )*};
}

embeddings! {
    embed_f4_f64: (2, 2, 6),
    embed_f8_f64: (2, 3, 6),
    embed_f9_f81: (3, 2, 4),
    embed_f5_f25: (5, 1, 2),
    embed_f25_f625: (5, 2, 4),
    embed_f25_f15625: (5, 2, 6),
}

fn matrix(f: &ExtField, codes: &[u64; 9]) -> Option<ProjMatrix> {
    let m = std::array::from_fn(|i| std::array::from_fn(|j| element(f, codes[3 * i + j])));
    ProjMatrix::new(m).ok()
}

fn hermitian(n: u64) -> CurveModel {
    let s = SqrtQ::new(n).unwrap();
    hermitian_canonical(s, &s.field_q().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coordinate_change_preserves_counts(codes in any::<[u64; 9]>(), k in 1u32..=2) {
        let h = hermitian(3);
        let Some(t) = matrix(h.field(), &codes) else { return Ok(()) };
        let moved = apply_coord_change(&h, &t).unwrap();
        let a = count_projective_points(&h, k).unwrap();
        let b = count_projective_points(&moved, k).unwrap();
        prop_assert_eq!((a.total, a.singular), (b.total, b.singular));
    }

    #[test]
    fn coordinate_change_preserves_nonsingular_counts(codes in any::<[u64; 9]>()) {
        let m = degree3_quotient_model(SqrtQ::new(5).unwrap()).unwrap().model;
        let Some(t) = matrix(m.field(), &codes) else { return Ok(()) };
        let moved = apply_coord_change(&m, &t).unwrap();
        let a = nonsingular_count(&m, 1).unwrap();
        let b = nonsingular_count(&moved, 1).unwrap();
        prop_assert_eq!(a.total, b.total);
        prop_assert_eq!(a.plane.singular, b.plane.singular);
    }

    #[test]
    fn partition_is_deterministic(parts in 1u32..64, n in prop::sample::select(vec![2u64, 3, 4]), k in 1u32..=2) {
        let h = hermitian(n);
        let whole = count_projective_points(&h, k).unwrap();
        prop_assert_eq!(count_with_partition(&h, k, parts).unwrap(), whole);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sieved_semigroups_are_consistent(gens in prop::collection::vec(2u64..30, 1..5)) {
        let mut gens = gens;
        gens.push(31);
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        prop_assert!(s.is_closed());
        for g in &gens {
            prop_assert!(s.contains(*g));
        }
        prop_assert_eq!(s.genus() as usize, s.gaps().len());
        if let Some(f) = s.frobenius_number() {
            prop_assert!(!s.contains(f));
            prop_assert_eq!(s.conductor(), f + 1);
        }
        let again = NumericalSemigroup::from_generators(&s.minimal_generators()).unwrap();
        prop_assert_eq!(&again, &s);
        prop_assert_eq!(NumericalSemigroup::from_gaps(s.gaps().iter().copied()).unwrap(), s);
    }
}
