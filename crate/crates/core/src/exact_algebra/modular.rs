//! Integer helpers: primality, prime powers, `p`-adic valuations, and dense
//! polynomials over `Z/m` (coefficient vectors, low degree first).

use alloc::vec;
use alloc::vec::Vec;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, f)` when `n = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let mut m = n;
    let mut f = 0;
    while m.is_multiple_of(p) {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p, f))
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn valuation_i128(n: i128, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Remainder of `num` modulo a monic `den` over `Z/m`.
pub fn poly_rem(num: &[u64], den: &[u64], m: u64) -> Vec<u64> {
    let dd = den.len() - 1;
    let mut r: Vec<u64> = num.iter().map(|c| c % m).collect();
    if r.len() <= dd {
        return r;
    }
    for k in (dd..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (j, &dj) in den.iter().enumerate() {
            let idx = k - dd + j;
            r[idx] = (r[idx] + m - mul_mod(c, dj, m)) % m;
        }
    }
    r.truncate(dd);
    r
}

/// True when the monic polynomial has no monic factor of degree `1..=deg/2`
/// over `F_p`, found by exhaustive trial division.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for k in 1..=deg / 2 {
        let count = p.pow(k as u32);
        for code in 0..count {
            let mut cand = vec![0u64; k + 1];
            let mut c = code;
            for coeff in cand.iter_mut().take(k) {
                *coeff = c % p;
                c /= p;
            }
            cand[k] = 1;
            if poly_rem(poly, &cand, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree `d`
/// over `F_p`. Coefficient tuples are compared from the `x^{d-1}` coefficient
/// downwards.
pub fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    let count = p.pow(d as u32);
    for code in 0..count {
        // the most significant base-p digit of `code` is the x^{d-1} coefficient
        let mut poly = vec![0u64; d + 1];
        let mut c = code;
        for coeff in poly.iter_mut().take(d) {
            *coeff = c % p;
            c /= p;
        }
        poly[d] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
