//! Dense polynomials over a prime field F_p, stored low degree first.
//!
//! Only what field construction needs: multiplication and remainder modulo a
//! monic polynomial, gcd, inversion, and the Ben-Or irreducibility test.

pub(crate) type Coeffs = Vec<u32>;

pub(crate) fn trim(a: &mut Coeffs) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    super::arith::mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Coeffs {
    let n = a.len().max(b.len());
    let mut out: Coeffs = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            ((x as u64 + p as u64 - y as u64) % p as u64) as u32
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    let mut out: Coeffs = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (any nonzero `m`).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Coeffs {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let pp = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut top = r.len();
    while top > dm {
        let i = top - 1;
        let c = r[i] % pp;
        if c != 0 {
            let f = c * lead_inv % pp;
            for j in 0..=dm {
                let idx = i - dm + j;
                r[idx] = (r[idx] + (pp - f) * m[j] as u64) % pp;
            }
        }
        top -= 1;
    }
    r.truncate(dm);
    let mut out: Coeffs = r.into_iter().map(|c| (c % pp) as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Coeffs {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Coeffs {
    let mut acc: Coeffs = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(&base, &base, m, p);
        }
    }
    acc
}

pub(crate) fn monic(a: &[u32], p: u32) -> Coeffs {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p) as u64;
            a[..=d]
                .iter()
                .map(|&c| (c as u64 * inv % p as u64) as u32)
                .collect()
        }
    }
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Coeffs {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub(crate) fn inverse_mod(a: &[u32], m: &[u32], p: u32) -> Option<Coeffs> {
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut s0, mut s1): (Coeffs, Coeffs) = (Vec::new(), vec![1]);
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p) as u64;
    let out: Coeffs = s0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
    Some(rem(&out, m, p))
}

pub(crate) fn divrem(a: &[u32], b: &[u32], p: u32) -> (Coeffs, Coeffs) {
    let db = degree(b).expect("division by zero polynomial");
    let pp = p as u64;
    let lead_inv = inv_mod(b[db], p) as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let da = match degree(a) {
        Some(d) if d >= db => d,
        _ => {
            let mut out = a.to_vec();
            trim(&mut out);
            return (Vec::new(), out);
        }
    };
    let mut q = vec![0u32; da - db + 1];
    for i in (db..=da).rev() {
        let c = r[i] % pp;
        if c == 0 {
            continue;
        }
        let f = c * lead_inv % pp;
        q[i - db] = f as u32;
        for j in 0..=db {
            let idx = i - db + j;
            r[idx] = (r[idx] + (pp - f) * b[j] as u64) % pp;
        }
    }
    r.truncate(db);
    let mut r: Coeffs = r.into_iter().map(|c| (c % pp) as u32).collect();
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Ben-Or test: a monic `f` of degree k is irreducible iff
/// gcd(f, X^{p^i} − X) = 1 for every 1 ≤ i ≤ k/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = match degree(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: Coeffs = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = powmod(&h, p as u64, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
