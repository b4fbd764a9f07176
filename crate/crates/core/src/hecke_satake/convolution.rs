use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::cosets::{check_dominant, check_rank, coset_decompose, vectors_with_sum, PMatrix};
use crate::exact_algebra::HalfPowerLaurent;
use crate::{Error, Limits, Result};

/// Finite combination `sum c_lambda T_lambda` of double coset indicators
/// `T_lambda = 1_{K p^lambda K}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    p: u64,
    support: BTreeMap<Vec<i64>, HalfPowerLaurent>,
}

impl HeckeElement {
    pub fn zero(n: usize, p: u64) -> Self {
        HeckeElement { n, p, support: BTreeMap::new() }
    }

    /// `T_0`, the indicator of `K`.
    pub fn unit(n: usize, p: u64) -> Self {
        let mut support = BTreeMap::new();
        support.insert(alloc::vec![0; n], HalfPowerLaurent::one(p));
        HeckeElement { n, p, support }
    }

    pub fn basis(lambda: &[i64], p: u64) -> Result<Self> {
        Self::from_terms(lambda.len(), p, [(lambda.to_vec(), HalfPowerLaurent::one(p))])
    }

    pub fn from_terms(n: usize, p: u64, terms: impl IntoIterator<Item = (Vec<i64>, HalfPowerLaurent)>) -> Result<Self> {
        if !crate::exact_algebra::modular::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut out = Self::zero(n, p);
        for (lambda, c) in terms {
            if lambda.len() != n {
                return Err(Error::RankMismatch { expected: n, found: lambda.len() });
            }
            if c.q() != p {
                return Err(Error::BaseMismatch { left: p, right: c.q() });
            }
            check_dominant(&lambda)?;
            out.add_term(lambda, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, lambda: Vec<i64>, c: &HalfPowerLaurent) {
        let entry = self.support.entry(lambda).or_insert_with(|| HalfPowerLaurent::zero(c.q()));
        *entry = &*entry + c;
        self.support.retain(|_, v| !v.is_zero());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn support(&self) -> &BTreeMap<Vec<i64>, HalfPowerLaurent> {
        &self.support
    }

    pub fn coefficient(&self, lambda: &[i64]) -> HalfPowerLaurent {
        self.support.get(lambda).cloned().unwrap_or_else(|| HalfPowerLaurent::zero(self.p))
    }

    /// `max |lambda_i|` over the support.
    pub fn bound(&self) -> i64 {
        self.support.keys().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &HeckeElement) -> Result<HeckeElement> {
        self.compatible(rhs)?;
        let mut out = self.clone();
        for (l, c) in &rhs.support {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    fn compatible(&self, rhs: &HeckeElement) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::RankMismatch { expected: self.n, found: rhs.n });
        }
        if self.p != rhs.p {
            return Err(Error::BaseMismatch { left: self.p, right: rhs.p });
        }
        Ok(())
    }
}

/// Coefficient of `T_nu` in `T_lambda * T_mu`:
/// `#{ g K in K p^lambda K / K : g^-1 p^nu in K p^mu K }`, with `vol(K) = 1`.
pub fn structure_constant(lambda: &[i64], mu: &[i64], nu: &[i64], p: u64, limits: &Limits) -> Result<u64> {
    let reps = coset_decompose(lambda, p, limits)?;
    count_with_reps(&reps, mu, nu, p)
}

fn count_with_reps(reps: &[PMatrix], mu: &[i64], nu: &[i64], p: u64) -> Result<u64> {
    let target = PMatrix::diagonal(nu, p)?;
    let mut count = 0;
    for g in reps {
        let gi = g.inverse(p).ok_or(Error::NotInvertible)?;
        if gi.mul(&target).elementary_divisors(p)? == mu {
            count += 1;
        }
    }
    Ok(count)
}

/// Dominant `nu` that can occur in `T_lambda * T_mu`.
fn candidates(lambda: &[i64], mu: &[i64]) -> Vec<Vec<i64>> {
    let n = lambda.len();
    let lo = lambda[n - 1] + mu[n - 1];
    let hi = lambda[0] + mu[0];
    let sum = lambda.iter().sum::<i64>() + mu.iter().sum::<i64>();
    vectors_with_sum(n, lo, hi, sum).into_iter().filter(|v| v.windows(2).all(|w| w[0] >= w[1])).collect()
}

/// `T_lambda * T_mu` in the basis `T_nu`.
pub fn basis_product(lambda: &[i64], mu: &[i64], p: u64, limits: &Limits) -> Result<BTreeMap<Vec<i64>, u64>> {
    check_rank(lambda.len())?;
    let reps = coset_decompose(lambda, p, limits)?;
    let mut out = BTreeMap::new();
    for nu in candidates(lambda, mu) {
        let c = count_with_reps(&reps, mu, &nu, p)?;
        if c != 0 {
            out.insert(nu, c);
        }
    }
    Ok(out)
}

/// Convolution `f * g` by bilinear extension of [`basis_product`].
pub fn convolve(f: &HeckeElement, g: &HeckeElement, limits: &Limits) -> Result<HeckeElement> {
    f.compatible(g)?;
    check_rank(f.n)?;
    let mut out = HeckeElement::zero(f.n, f.p);
    for (l, a) in &f.support {
        for (m, b) in &g.support {
            let ab = a * b;
            for (nu, c) in basis_product(l, m, f.p, limits)? {
                out.add_term(nu, &ab.scale(crate::exact_algebra::Rational::from_integer(c as i128)));
            }
        }
    }
    Ok(out)
}
