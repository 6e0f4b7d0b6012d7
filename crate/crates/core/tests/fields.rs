use maxcurve::gf_tower::{frame_parameter, least_primitive_element, mult_order, Embedding, ExtField};
use maxcurve::SqrtQ;

/// Whether the monic polynomial `m` (low degree first) over F_p has a factor
/// of degree ≤ deg/2, by trial division with every monic polynomial.
fn reducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    let rem = |num: &[u32], den: &[u32]| -> Vec<u32> {
        let mut r: Vec<u64> = num.iter().map(|&x| x as u64).collect();
        let dd = den.len() - 1;
        while r.len() > dd {
            let lead = r.pop().unwrap();
            let shift = r.len() - dd;
            for (i, &c) in den[..dd].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p as u64 - lead) * c as u64) % p as u64;
            }
        }
        r.into_iter().map(|x| x as u32).collect()
    };
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f: Vec<u32> = (0..d).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            f.push(1);
            if rem(m, &f).iter().all(|&x| x == 0) {
                return true;
            }
        }
    }
    false
}

#[test]
fn moduli_are_irreducible() {
    for (p, k) in [(2, 2), (2, 3), (2, 4), (2, 6), (3, 2), (3, 4), (3, 6), (5, 2), (5, 3), (5, 6), (7, 2), (7, 3)] {
        let f = ExtField::new(p, k).unwrap();
        assert!(!reducible(f.modulus(), p as u32), "F_{p}^{k}");
    }
}

#[test]
fn primitive_elements_generate_the_group() {
    for (p, k) in [(2, 6), (3, 4), (5, 2), (5, 3), (7, 2), (13, 2)] {
        let f = ExtField::new(p, k).unwrap();
        let g = least_primitive_element(&f).unwrap();
        assert_eq!(mult_order(&g).unwrap(), f.size_u64().unwrap() - 1);
    }
}

#[test]
fn embeddings_compose() {
    let (a, b, c) = (ExtField::new(2, 2).unwrap(), ExtField::new(2, 4).unwrap(), ExtField::new(2, 8).unwrap());
    let ab = Embedding::new(&a, &b).unwrap();
    let bc = Embedding::new(&b, &c).unwrap();
    let ac = Embedding::new(&a, &c).unwrap();
    for x in a.elements() {
        assert_eq!(bc.apply(&ab.apply(&x)), ac.apply(&x));
    }
    assert!(Embedding::new(&ExtField::new(2, 3).unwrap(), &b).is_err());
}

#[test]
fn frame_parameters_satisfy_every_identity() {
    for n in [2, 3, 4, 5, 7, 8, 9, 11] {
        let fp = frame_parameter(SqrtQ::new(n).unwrap()).unwrap();
        assert!(fp.checks.all(), "√q = {n}: {:?}", fp.checks);
    }
}
