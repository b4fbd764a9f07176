use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::modular::{checked_pow, is_prime, least_irreducible, mul_mod};
use crate::{Error, Limits, Result};

/// Largest residue degree supported by the packed element encoding.
pub const MAX_DEGREE: usize = 16;

/// Element of a [`GaloisRing`], packed as base-`p^n` digits.
///
/// Digit `i` is the coefficient of `x^i`, so the derived ordering compares the
/// highest-degree coefficient first. That order is the canonical total order
/// used for lex-least class representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u64);

/// The unramified ring `(Z/p^n)[x]/(F)` with `F` monic of degree `d` and
/// irreducible mod `p`. Level `n = 1` is the finite field `F_{p^d}`.
///
/// The Frobenius `sigma` is the unique ring automorphism lifting the `p`-power
/// map of the residue field; it is found by Newton iteration on `F` starting
/// from `x^p` and cached as the table of `sigma^e(x^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    p: u64,
    level: u32,
    degree: usize,
    modulus: u64,
    poly: Vec<u64>,
    size: u64,
    unit_order: u64,
    frob: Vec<Vec<[u64; MAX_DEGREE]>>,
}

impl GaloisRing {
    /// `F_{p^d}` with the lexicographically least monic irreducible modulus.
    pub fn field(p: u64, d: usize, limits: &Limits) -> Result<Self> {
        Self::new(p, 1, d, limits)
    }

    /// `(Z/p^level)[x]/(F)`, where `F` has the coefficients of the least
    /// irreducible of degree `d` read as residues mod `p^level`.
    pub fn new(p: u64, level: u32, d: usize, limits: &Limits) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 || level == 0 {
            return Err(Error::Invalid("degree and level must be at least 1".into()));
        }
        let q = checked_pow(p, d as u32).unwrap_or(u64::MAX);
        if d > MAX_DEGREE || q > limits.field_order {
            return Err(Error::CapExceeded { what: "residue field", size: q, cap: limits.field_order });
        }
        let modulus = checked_pow(p, level).filter(|&m| m < 1 << 31).ok_or(Error::CapExceeded {
            what: "coefficient modulus",
            size: u64::MAX,
            cap: 1 << 31,
        })?;
        let size = checked_pow(modulus, d as u32).filter(|&s| s < 1 << 62).ok_or(Error::CapExceeded {
            what: "ring",
            size: u64::MAX,
            cap: 1 << 62,
        })?;
        let poly = least_irreducible(p, d);
        let unit_order = (q - 1) * (size / q);
        let mut ring = GaloisRing { p, level, degree: d, modulus, poly, size, unit_order, frob: Vec::new() };
        ring.build_frobenius()?;
        Ok(ring)
    }

    fn build_frobenius(&mut self) -> Result<()> {
        let d = self.degree;
        let x = self.gen();
        let mut y = self.pow(x, self.p);
        let deriv: Vec<u64> = (1..=d).map(|i| mul_mod(self.poly[i], i as u64, self.modulus)).collect();
        for _ in 0..=self.level + 1 {
            let fy = self.eval_poly(&self.poly, y);
            if fy == self.zero() {
                break;
            }
            let dfy = self.eval_poly(&deriv, y);
            let inv = self.inverse(dfy).ok_or(Error::Invalid("inseparable modulus".into()))?;
            y = self.sub(y, self.mul(fy, inv));
        }
        if self.eval_poly(&self.poly, y) != self.zero() {
            return Err(Error::Invalid("Frobenius lift did not converge".into()));
        }
        let powers = |base: Elem, ring: &GaloisRing| -> Vec<[u64; MAX_DEGREE]> {
            let mut acc = ring.one();
            let mut out = Vec::with_capacity(d);
            for _ in 0..d {
                out.push(ring.digits(acc));
                acc = ring.mul(acc, base);
            }
            out
        };
        let identity = powers(x, self);
        self.frob = vec![identity.clone(), powers(y, self)];
        for e in 2..=d {
            let prev = self.frob[e - 1].clone();
            let next = prev.iter().map(|c| self.digits(self.apply_table(1, c))).collect();
            self.frob.push(next);
        }
        if self.frob[d] != identity {
            return Err(Error::Invalid("Frobenius lift does not have order d".into()));
        }
        self.frob.truncate(d);
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Precision level `n`: coefficients live in `Z/p^n`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Residue degree `d`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Residue field size `p^d`.
    pub fn residue_size(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    /// `p^n`.
    pub fn coefficient_modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of ring elements.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn unit_count(&self) -> u64 {
        self.unit_order
    }

    /// Monic modulus, low-to-high coefficients mod `p^n`.
    pub fn modulus_poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn is_field(&self) -> bool {
        self.level == 1
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The class of `x`.
    pub fn gen(&self) -> Elem {
        if self.degree == 1 {
            let c = (self.modulus - self.poly[0] % self.modulus) % self.modulus;
            Elem(c)
        } else {
            Elem(self.modulus)
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        let m = self.modulus as i64;
        Elem(n.rem_euclid(m) as u64)
    }

    /// Builds an element from low-to-high coefficients, reducing mod `p^n`.
    /// Extra coefficients beyond the degree are reduced through the modulus.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Elem {
        let m = self.modulus as i64;
        let mut acc = self.zero();
        let mut xp = self.one();
        let x = self.gen();
        for &c in coeffs {
            let c = Elem(c.rem_euclid(m) as u64);
            acc = self.add(acc, self.mul(c, xp));
            xp = self.mul(xp, x);
        }
        acc
    }

    /// Coefficients of `a`, low degree first, each in `[0, p^n)`.
    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        self.digits(a)[..self.degree].to_vec()
    }

    fn digits(&self, a: Elem) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        let mut c = a.0;
        for slot in out.iter_mut().take(self.degree) {
            *slot = c % self.modulus;
            c /= self.modulus;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> Elem {
        let mut code = 0u64;
        for &c in digits[..self.degree].iter().rev() {
            code = code * self.modulus + c;
        }
        Elem(code)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut r = [0u64; MAX_DEGREE];
        for i in 0..self.degree {
            r[i] = (x[i] + y[i]) % self.modulus;
        }
        self.pack(&r)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let x = self.digits(a);
        let mut r = [0u64; MAX_DEGREE];
        for i in 0..self.degree {
            r[i] = (self.modulus - x[i]) % self.modulus;
        }
        self.pack(&r)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = self.degree;
        let m = self.modulus;
        if d == 1 {
            return Elem(mul_mod(a.0, b.0, m));
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % m;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let idx = k - d + j;
                prod[idx] = (prod[idx] + m - (c * self.poly[j]) % m) % m;
            }
            prod[k] = 0;
        }
        self.pack(&prod[..d])
    }

    pub fn pow(&self, mut a: Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn eval_poly(&self, poly: &[u64], at: Elem) -> Elem {
        poly.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, at), Elem(c % self.modulus)))
    }

    /// Units are exactly the elements with nonzero residue.
    pub fn is_unit(&self, a: Elem) -> bool {
        self.digits(a)[..self.degree].iter().any(|&c| c % self.p != 0)
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.is_unit(a).then(|| self.pow(a, self.unit_order - 1))
    }

    /// Normalized valuation `v(a)` in `0..=n`, with `n` exactly for zero.
    pub fn valuation(&self, a: Elem) -> u32 {
        let x = self.digits(a);
        x[..self.degree]
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut c = c;
                let mut v = 0;
                while c % self.p == 0 {
                    c /= self.p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.level)
    }

    /// `p^k * a`.
    pub fn mul_p_power(&self, a: Elem, k: u32) -> Elem {
        if k >= self.level {
            return self.zero();
        }
        self.mul(a, Elem(self.p.pow(k)))
    }

    /// Exact division of every coefficient by `p^k`; requires `v(a) >= k`.
    /// The quotient is determined modulo `p^{n-k}` and returned as its least
    /// non-negative representative.
    pub fn div_p_power(&self, a: Elem, k: u32) -> Elem {
        debug_assert!(self.valuation(a) >= k);
        let pk = self.p.pow(k);
        let mut x = self.digits(a);
        for c in x.iter_mut().take(self.degree) {
            *c /= pk;
        }
        self.pack(&x)
    }

    fn apply_table(&self, e: usize, digits: &[u64; MAX_DEGREE]) -> Elem {
        let d = self.degree;
        let table = &self.frob[e];
        let mut r = [0u64; MAX_DEGREE];
        for i in 0..d {
            if digits[i] == 0 {
                continue;
            }
            for k in 0..d {
                r[k] = (r[k] + mul_mod(digits[i], table[i][k], self.modulus)) % self.modulus;
            }
        }
        self.pack(&r)
    }

    /// `sigma^e(a)`; any integer `e`, read mod `d`.
    pub fn frobenius(&self, a: Elem, e: i64) -> Elem {
        let e = e.rem_euclid(self.degree as i64) as usize;
        if e == 0 || self.degree == 1 {
            return a;
        }
        self.apply_table(e, &self.digits(a))
    }

    /// The cached `sigma(x)`.
    pub fn frobenius_image(&self) -> Elem {
        self.frobenius(self.gen(), 1)
    }

    /// `prod_{i < d/e} sigma^{e i}(a)`, the norm to the degree-`e` subring.
    pub fn norm(&self, a: Elem, subfield: usize) -> Result<Elem> {
        if subfield == 0 || !self.degree.is_multiple_of(subfield) {
            return Err(Error::BadSubfield { degree: self.degree, subfield });
        }
        let steps = self.degree / subfield;
        Ok((0..steps).fold(self.one(), |acc, i| self.mul(acc, self.frobenius(a, (subfield * i) as i64))))
    }

    /// Reduction to a lower level of the same `(p, d)` tower.
    pub fn reduce(&self, a: Elem, lower: &GaloisRing) -> Elem {
        debug_assert!(lower.p == self.p && lower.degree == self.degree && lower.level <= self.level);
        let mut x = self.digits(a);
        for c in x.iter_mut().take(self.degree) {
            *c %= lower.modulus;
        }
        lower.pack(&x)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&a| self.is_unit(a))
    }

    /// Embedding of this field into a larger field of the same characteristic.
    pub fn embedding_into(&self, target: &GaloisRing) -> Result<Embedding> {
        if !self.is_field() || !target.is_field() || self.p != target.p {
            return Err(Error::Invalid("embeddings are between fields of equal characteristic".into()));
        }
        if !target.degree.is_multiple_of(self.degree) {
            return Err(Error::BadSubfield { degree: target.degree, subfield: self.degree });
        }
        let root = target
            .elements()
            .find(|&r| target.eval_poly(&self.poly, r) == target.zero())
            .ok_or(Error::Invalid("no root of the subfield modulus".into()))?;
        let mut emb = Embedding {
            source: self.clone(),
            target: target.clone(),
            image_of_gen: root,
            back: BTreeMap::new(),
        };
        for a in self.elements() {
            let b = emb.apply(a);
            emb.back.insert(b, a);
        }
        Ok(emb)
    }
}

/// A field embedding `F_{p^d} -> F_{p^{de}}`, with its partial inverse.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: GaloisRing,
    target: GaloisRing,
    image_of_gen: Elem,
    back: BTreeMap<Elem, Elem>,
}

impl Embedding {
    pub fn source(&self) -> &GaloisRing {
        &self.source
    }

    pub fn target(&self) -> &GaloisRing {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        let t = &self.target;
        self.source
            .coeffs(a)
            .iter()
            .rev()
            .fold(t.zero(), |acc, &c| t.add(t.mul(acc, self.image_of_gen), Elem(c)))
    }

    /// The source element mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.back.get(&b).copied()
    }
}
