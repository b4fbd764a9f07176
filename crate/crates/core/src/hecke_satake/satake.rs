use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::convolution::HeckeElement;
use super::cosets::{check_rank, int_pow, PMatrix};
use crate::exact_algebra::{HalfPowerLaurent, Rational, SymPoly};
use crate::{Error, Limits, Result};

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// `delta(t) = prod_i |t_i|^(n+1-2i)` for `t = diag(p^a)`, as a power of `q`.
pub fn modulus_delta_closed_form(exps: &[i64], p: u64) -> HalfPowerLaurent {
    let n = exps.len() as i64;
    let k: i64 = exps.iter().enumerate().map(|(i, &a)| -a * (n + 1 - 2 * (i as i64 + 1))).sum();
    HalfPowerLaurent::q_power(p, k)
}

/// Modulus `d(t n t^-1) / dn` for `t = diag(p^a)`.
///
/// Conjugation scales the `(i, j)` coordinate of the unipotent radical by
/// `p^(a_i - a_j)`. Each factor is measured by counting residues: on the grid
/// `p^-s Z / p^s Z` the image of `Z_p` under `x -> p^(a_i - a_j) x` has a
/// fraction `q^-(a_i - a_j)` of the points of `Z_p`.
pub fn modulus_delta(exps: &[i64], p: u64) -> Result<HalfPowerLaurent> {
    let mut ratio = Rational::from_integer(1);
    for (i, j) in pairs(exps.len()) {
        let e = exps[i] - exps[j];
        let s = e.unsigned_abs() as u32;
        let scale = int_pow(p, s)?;
        let grid = int_pow(p, 2 * s)?;
        // x = k / p^s, k in 0..p^2s
        let in_o = (0..grid).filter(|k| k % scale == 0).count() as i128;
        let in_image = (0..grid)
            .filter(|&k| {
                // x in p^e Z_p  <=>  v(k) - s >= e
                let v = crate::exact_algebra::modular::valuation_i128(k, p).map_or(i64::MAX, |v| v as i64);
                v - s as i64 >= e
            })
            .count() as i128;
        ratio *= Rational::new(in_image, in_o);
    }
    let out = HalfPowerLaurent::from_rational(p, ratio);
    debug_assert_eq!(out, modulus_delta_closed_form(exps, p));
    Ok(out)
}

/// `sum c_lambda e_lambda` in the group algebra of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeImage {
    n: usize,
    p: u64,
    coeffs: BTreeMap<Vec<i64>, HalfPowerLaurent>,
}

impl SatakeImage {
    pub fn one(n: usize, p: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0; n], HalfPowerLaurent::one(p));
        SatakeImage { n, p, coeffs }
    }

    pub fn from_terms(n: usize, p: u64, terms: impl IntoIterator<Item = (Vec<i64>, HalfPowerLaurent)>) -> Self {
        let mut out = SatakeImage { n, p, coeffs: BTreeMap::new() };
        for (l, c) in terms {
            out.add_term(l, &c);
        }
        out
    }

    fn add_term(&mut self, lambda: Vec<i64>, c: &HalfPowerLaurent) {
        let e = self.coeffs.entry(lambda).or_insert_with(|| HalfPowerLaurent::zero(c.q()));
        *e = &*e + c;
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, HalfPowerLaurent> {
        &self.coeffs
    }

    pub fn coefficient(&self, lambda: &[i64]) -> HalfPowerLaurent {
        self.coeffs.get(lambda).cloned().unwrap_or_else(|| HalfPowerLaurent::zero(self.p))
    }

    /// Coefficients constant on `S_n`-orbits.
    pub fn is_weyl_invariant(&self) -> bool {
        self.coeffs.iter().all(|(l, c)| {
            (0..self.n).flat_map(|i| (i + 1..self.n).map(move |j| (i, j))).all(|(i, j)| {
                let mut w = l.clone();
                w.swap(i, j);
                self.coefficient(&w) == *c
            })
        })
    }

    /// Product in the group algebra, `e_a e_b = e_(a+b)`.
    pub fn mul(&self, rhs: &SatakeImage) -> SatakeImage {
        let mut out = SatakeImage { n: self.n, p: self.p, coeffs: BTreeMap::new() };
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                let s: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(s, &(x * y));
            }
        }
        out
    }
}

impl fmt::Display for SatakeImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) e{l:?}")?;
        }
        Ok(())
    }
}

/// Volumes `vol{ n in N : t n in K p^mu K }` for `t = p^lambda`, by counting
/// a grid of unipotent matrices with entries `k / p^m`.
///
/// The integrand is right `N(Z_p)`-invariant. For `n <= 2` this makes it
/// constant on `n N(Z_p)` with the grid `p^-m Z / Z`; for `n = 3` the grid is
/// refined to `p^-m Z / p^m Z` so that perturbing any coordinate by
/// `p^m Z_p` stays inside `n N(Z_p)`.
fn support_volumes(lambda: &[i64], m: u32, p: u64, limits: &Limits) -> Result<BTreeMap<Vec<i64>, Rational>> {
    let n = lambda.len();
    let slots: Vec<(usize, usize)> = pairs(n).collect();
    let r = if n <= 2 { 0 } else { m };
    let per = int_pow(p, m + r)?;
    let total = (per as u128).checked_pow(slots.len() as u32).filter(|&t| t <= limits.group_order as u128).ok_or(
        Error::CapExceeded { what: "unipotent grid", size: (per as u64).saturating_pow(slots.len() as u32), cap: limits.group_order },
    )? as u64;
    let pm = int_pow(p, m)?;
    let lo = lambda.iter().copied().min().unwrap_or(0);
    let rows: Vec<i128> = lambda.iter().map(|&l| int_pow(p, (l - lo) as u32)).collect::<Result<_>>()?;
    let mut counts: BTreeMap<Vec<i64>, i128> = BTreeMap::new();
    for code in 0..total {
        let mut c = code as i128;
        let mut body = vec![vec![0i128; n]; n];
        for i in 0..n {
            body[i][i] = pm;
        }
        for &(i, j) in &slots {
            body[i][j] = c % per;
            c /= per;
        }
        for (i, row) in body.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x *= rows[i];
            }
        }
        let tn = PMatrix { shift: lo - m as i64, body };
        *counts.entry(tn.elementary_divisors(p)?).or_insert(0) += 1;
    }
    let cell = int_pow(p, r * slots.len() as u32)?;
    Ok(counts.into_iter().map(|(k, v)| (k, Rational::new(v, cell))).collect())
}

/// Satake transform
/// `f^(lambda) = delta^(1/2)(p^lambda) int_N f(p^lambda n) dn`
/// with `vol(N(Z_p)) = 1`.
///
/// Entries of `n` in the support have valuation at least `-2B`, `B` the bound
/// of `f`. The integral is evaluated with that cutoff and again with cutoff
/// `-2B - 1`; a change between the two raises `PrecisionExhausted`.
pub fn satake_transform(f: &HeckeElement, limits: &Limits) -> Result<SatakeImage> {
    let n = f.n();
    let p = f.p();
    check_rank(n)?;
    let b = f.bound();
    let m = 2 * b as u32;
    let sums: alloc::collections::BTreeSet<i64> = f.support().keys().map(|l| l.iter().sum()).collect();
    let mut out = SatakeImage { n, p, coeffs: BTreeMap::new() };
    for lambda in sums.iter().flat_map(|&s| super::cosets::vectors_with_sum(n, -b, b, s)) {
        let vols = support_volumes(&lambda, m, p, limits)?;
        let shell = support_volumes(&lambda, m + 1, p, limits)?;
        let mut value = HalfPowerLaurent::zero(p);
        let mut check = HalfPowerLaurent::zero(p);
        for (mu, c) in f.support() {
            if let Some(v) = vols.get(mu) {
                value = &value + &c.scale(*v);
            }
            if let Some(v) = shell.get(mu) {
                check = &check + &c.scale(*v);
            }
        }
        if value != check {
            return Err(Error::PrecisionExhausted);
        }
        let k: i64 = pairs(n).map(|(i, j)| lambda[j] - lambda[i]).sum();
        out.add_term(lambda, &(&HalfPowerLaurent::v_power(p, k) * &value));
    }
    if !out.is_weyl_invariant() {
        return Err(Error::NonInvariantImage);
    }
    Ok(out)
}

/// `e_lambda -> prod t_i^lambda_i`.
pub fn chi_t(image: &SatakeImage, t: &[SymPoly]) -> Result<SymPoly> {
    if t.len() != image.n {
        return Err(Error::RankMismatch { expected: image.n, found: t.len() });
    }
    if t.iter().any(SymPoly::is_zero) {
        return Err(Error::ZeroEntry);
    }
    let mut out = SymPoly::zero();
    for (l, c) in &image.coeffs {
        let mut term = SymPoly::from_half_power(c, "v");
        for (x, &e) in t.iter().zip(l) {
            term = &term * &x.pow_i(e as i32)?;
        }
        out = &out + &term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn delta_values() {
        assert_eq!(modulus_delta(&[0, 0], 2).unwrap(), HalfPowerLaurent::one(2));
        assert_eq!(modulus_delta(&[1, 0], 2).unwrap(), HalfPowerLaurent::q_power(2, -1));
        assert_eq!(modulus_delta(&[1, 0, 0], 3).unwrap(), HalfPowerLaurent::q_power(3, -2));
        assert_eq!(modulus_delta(&[-1, 2, 0], 2).unwrap(), modulus_delta_closed_form(&[-1, 2, 0], 2));
    }

    #[test]
    fn transform_of_basis_elements() {
        let one = satake_transform(&HeckeElement::unit(2, 2), &lim()).unwrap();
        assert_eq!(one, SatakeImage::one(2, 2));
        let s = satake_transform(&HeckeElement::basis(&[1, 0], 2).unwrap(), &lim()).unwrap();
        let v = HalfPowerLaurent::v_power(2, 1);
        assert_eq!(s, SatakeImage::from_terms(2, 2, [(vec![1, 0], v.clone()), (vec![0, 1], v)]));
        let s = satake_transform(&HeckeElement::basis(&[1, 1], 3).unwrap(), &lim()).unwrap();
        assert_eq!(s, SatakeImage::from_terms(2, 3, [(vec![1, 1], HalfPowerLaurent::one(3))]));
    }

    #[test]
    fn rank_one_is_identity_on_basis() {
        let s = satake_transform(&HeckeElement::basis(&[-2], 5).unwrap(), &lim()).unwrap();
        assert_eq!(s, SatakeImage::from_terms(1, 5, [(vec![-2], HalfPowerLaurent::one(5))]));
    }

    #[test]
    fn chi_examples() {
        let a = SymPoly::var("alpha");
        let b = SymPoly::var("beta");
        let s = satake_transform(&HeckeElement::basis(&[1, 0], 2).unwrap(), &lim()).unwrap();
        let x = chi_t(&s, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(x, &SymPoly::var("v") * &(&a + &b));
        assert_eq!(x, chi_t(&s, &[b.clone(), a.clone()]).unwrap());
        assert_eq!(chi_t(&SatakeImage::one(2, 2), &[a.clone(), b.clone()]).unwrap(), SymPoly::one());
        assert_eq!(chi_t(&s, &[a, SymPoly::zero()]), Err(Error::ZeroEntry));
    }
}
