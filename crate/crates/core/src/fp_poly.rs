//! Dense polynomials over the prime field F_p, constant term first.
//!
//! Only what field construction needs: reduction, modular powering, gcd and
//! inversion modulo an irreducible polynomial. Coefficients are kept in
//! `[0, p)` and vectors are trimmed so the last entry is nonzero (the zero
//! polynomial is the empty vector).

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0; len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by the nonzero polynomial `b`.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mul_mod_p(r[dr], lead_inv, p);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod_p(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    div_rem(a, b, p).1
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod_p(lead, p);
        for c in x.iter_mut() {
            *c = mul_mod_p(*c, inv, p);
        }
    }
    x
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, or `None`
/// when `gcd(a, m) != 1`.
pub(crate) fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_p(r0[0], p);
    let mut out: Vec<u64> = t0.iter().map(|&t| mul_mod_p(t, c, p)).collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

fn prime_factors(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= d {
        if d.is_multiple_of(f) {
            out.push(f);
            while d.is_multiple_of(f) {
                d /= f;
            }
        }
        f += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Rabin's test: a monic `g` of degree `d` is irreducible over F_p iff
/// `x^(p^d) = x mod g` and `gcd(x^(p^(d/r)) - x, g) = 1` for each prime `r | d`.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    if g.len() < 2 {
        return false;
    }
    let d = (g.len() - 1) as u64;
    let x = rem(&[0, 1], g, p);
    // frob[i] = x^(p^i) mod g
    let mut frob = Vec::with_capacity(d as usize + 1);
    frob.push(x.clone());
    for i in 1..=d as usize {
        let next = pow_mod(&frob[i - 1], p, g, p);
        frob.push(next);
    }
    if frob[d as usize] != x {
        return false;
    }
    for r in prime_factors(d) {
        let h = sub(&frob[(d / r) as usize], &x, p);
        if gcd(&h, g, p).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_f2() {
        // x^2 + x + 1
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 = (x + 1)^2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^3 + x + 1
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        // degree one is always irreducible, including x itself
        assert!(is_irreducible(&[0, 1], 2));
    }

    #[test]
    fn irreducibility_over_f3() {
        // x^2 + 1 has no roots mod 3
        assert!(is_irreducible(&[1, 0, 1], 3));
        // x^2 - 1
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn inverse_mod_irreducible() {
        let m = [1, 1, 0, 1];
        for a in 1u64..8 {
            let poly: Vec<u64> = (0..3).map(|i| (a >> i) & 1).collect();
            let mut poly = poly;
            trim(&mut poly);
            let inv = inv_mod(&poly, &m, 2).unwrap();
            assert_eq!(mul_mod(&poly, &inv, &m, 2), vec![1]);
        }
    }
}
