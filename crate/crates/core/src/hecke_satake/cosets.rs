use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::exact_algebra::modular;
use crate::{Error, Limits, Result};

/// `p^shift * body` with an integer `body`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PMatrix {
    pub shift: i64,
    pub body: Vec<Vec<i128>>,
}

impl PMatrix {
    pub fn size(&self) -> usize {
        self.body.len()
    }

    /// `diag(p^exps)`.
    pub fn diagonal(exps: &[i64], p: u64) -> Result<Self> {
        let lo = exps.iter().copied().min().unwrap_or(0);
        let n = exps.len();
        let mut body = vec![vec![0i128; n]; n];
        for (i, &e) in exps.iter().enumerate() {
            body[i][i] = int_pow(p, (e - lo) as u32)?;
        }
        Ok(PMatrix { shift: lo, body })
    }

    /// Elementary divisor exponents in decreasing order: `g` lies in
    /// `K diag(p^lambda) K` exactly for `lambda = elementary_divisors(g)`.
    pub fn elementary_divisors(&self, p: u64) -> Result<Vec<i64>> {
        let n = self.size();
        let mut gcd_vals = Vec::with_capacity(n);
        for k in 1..=n {
            let mut best: Option<u32> = None;
            let mut take = |x: i128| {
                if let Some(v) = modular::valuation_i128(x, p) {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            };
            if k == 1 {
                self.body.iter().flatten().for_each(|&x| take(x));
            } else if k == n {
                take(det(&self.body));
            } else {
                let rows = subsets(n, k);
                for r in &rows {
                    for c in &rows {
                        take(minor(&self.body, r, c));
                    }
                }
            }
            gcd_vals.push(best.ok_or(Error::NotInvertible)? as i64);
        }
        let mut out: Vec<i64> = (0..n)
            .map(|k| gcd_vals[k] - if k == 0 { 0 } else { gcd_vals[k - 1] } + self.shift)
            .collect();
        out.reverse();
        Ok(out)
    }

    pub fn mul(&self, rhs: &PMatrix) -> PMatrix {
        let n = self.size();
        let body = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.body[i][k] * rhs.body[k][j]).sum()).collect())
            .collect();
        PMatrix { shift: self.shift + rhs.shift, body }
    }

    /// `p^(det-valuation) g^-1` as `p^s adj(body)`; `None` when `det(body)` is
    /// not a power of `p` up to sign.
    pub fn inverse(&self, p: u64) -> Option<PMatrix> {
        let n = self.size();
        let det = det(&self.body);
        let v = modular::valuation_i128(det, p)?;
        let unit = det / int_pow(p, v).ok()?;
        if unit.abs() != 1 {
            return None;
        }
        let idx: Vec<usize> = (0..n).collect();
        let body = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let r: Vec<usize> = idx.iter().copied().filter(|&x| x != j).collect();
                        let c: Vec<usize> = idx.iter().copied().filter(|&x| x != i).collect();
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * unit * minor(&self.body, &r, &c)
                    })
                    .collect()
            })
            .collect();
        Some(PMatrix { shift: -self.shift - v as i64, body })
    }
}

pub(crate) fn int_pow(p: u64, e: u32) -> Result<i128> {
    (p as i128).checked_pow(e).ok_or(Error::CapExceeded { what: "p-power", size: e as u64, cap: 120 })
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn minor(m: &[Vec<i128>], rows: &[usize], cols: &[usize]) -> i128 {
    let sub: Vec<Vec<i128>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
    det(&sub)
}

pub(crate) fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let sub: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&sub)
            })
            .sum(),
    }
}

/// Ranks handled by the coset machinery.
pub(crate) fn check_rank(n: usize) -> Result<()> {
    match n {
        1 | 2 => Ok(()),
        3 if cfg!(feature = "rank3") => Ok(()),
        _ => Err(Error::UnsupportedRank(n)),
    }
}

pub(crate) fn check_dominant(lambda: &[i64]) -> Result<()> {
    if lambda.is_empty() || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(String::from("cocharacter must be nonempty and weakly decreasing")));
    }
    Ok(())
}

/// Vectors in `[lo, hi]^n` with the given sum.
pub(crate) fn vectors_with_sum(n: usize, lo: i64, hi: i64, sum: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, lo: i64, hi: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = (n - cur.len() - 1) as i64;
        for x in lo..=hi {
            let r = left - x;
            if r < rest * lo || r > rest * hi {
                continue;
            }
            cur.push(x);
            rec(n, lo, hi, r, cur, out);
            cur.pop();
        }
    }
    rec(n, lo, hi, sum, &mut cur, &mut out);
    out
}

/// Representatives `g_i` of `K diag(p^lambda) K / K`, `K = GL_n(Z_p)`, in
/// upper triangular Hermite form: diagonal `p^a`, entry `(i, j)` above the
/// diagonal in `0..p^(a_i)`. Ordered by diagonal exponents (decreasing lex)
/// and then by entries.
pub fn coset_decompose(lambda: &[i64], p: u64, limits: &Limits) -> Result<Vec<PMatrix>> {
    let n = lambda.len();
    check_rank(n)?;
    check_dominant(lambda)?;
    if !modular::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let low = lambda[n - 1];
    let shifted: Vec<i64> = lambda.iter().map(|x| x - low).collect();
    let top = shifted[0];
    let total: i64 = shifted.iter().sum();
    let mut diagonals = vectors_with_sum(n, 0, top, total);
    diagonals.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    for a in diagonals {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let ranges: Vec<i128> = slots.iter().map(|&(i, _)| int_pow(p, a[i] as u32)).collect::<Result<_>>()?;
        let count = ranges.iter().try_fold(1i128, |acc, &r| acc.checked_mul(r)).unwrap_or(i128::MAX);
        if count > limits.group_order as i128 {
            return Err(Error::CapExceeded { what: "Hermite forms", size: count.min(u64::MAX as i128) as u64, cap: limits.group_order });
        }
        for mut code in 0..count {
            let mut body = vec![vec![0i128; n]; n];
            for i in 0..n {
                body[i][i] = int_pow(p, a[i] as u32)?;
            }
            for (&(i, j), &r) in slots.iter().zip(&ranges) {
                body[i][j] = code % r;
                code /= r;
            }
            let g = PMatrix { shift: low, body };
            if g.elementary_divisors(p)? == lambda {
                out.push(g);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(shift: i64, rows: &[&[i128]]) -> PMatrix {
        PMatrix { shift, body: rows.iter().map(|r| r.to_vec()).collect() }
    }

    #[test]
    fn gl2_minuscule_cosets() {
        let reps = coset_decompose(&[1, 0], 2, &Limits::default()).unwrap();
        assert_eq!(reps, vec![pm(0, &[&[2, 0], &[0, 1]]), pm(0, &[&[2, 1], &[0, 1]]), pm(0, &[&[1, 0], &[0, 2]])]);
        for p in [2, 3, 5] {
            assert_eq!(coset_decompose(&[1, 0], p, &Limits::default()).unwrap().len() as u64, p + 1);
        }
    }

    #[test]
    fn central_and_rank_one() {
        let reps = coset_decompose(&[1, 1], 2, &Limits::default()).unwrap();
        assert_eq!(reps, vec![pm(1, &[&[1, 0], &[0, 1]])]);
        let reps = coset_decompose(&[-3], 3, &Limits::default()).unwrap();
        assert_eq!(reps, vec![pm(-3, &[&[1]])]);
    }

    #[test]
    fn gl2_count_formula() {
        // |K p^(a,0) K / K| = q^a + q^(a-1) for a >= 1
        for p in [2u64, 3] {
            for a in 1..=3 {
                let n = coset_decompose(&[a, 0], p, &Limits::default()).unwrap().len() as u64;
                assert_eq!(n, p.pow(a as u32) + p.pow(a as u32 - 1));
            }
        }
    }

    #[test]
    fn elementary_divisors_and_inverse() {
        let g = pm(-1, &[&[0, 1], &[3, 0]]);
        assert_eq!(g.elementary_divisors(3).unwrap(), vec![0, -1]);
        let gi = g.inverse(3).unwrap();
        assert_eq!(g.mul(&gi).elementary_divisors(3).unwrap(), vec![0, 0]);
        assert!(pm(0, &[&[1, 2], &[2, 4]]).elementary_divisors(3).is_err());
    }

    #[test]
    fn rank_gate() {
        let r = coset_decompose(&[1, 0, 0], 2, &Limits::default());
        if cfg!(feature = "rank3") {
            assert_eq!(r.unwrap().len(), 7);
        } else {
            assert_eq!(r, Err(Error::UnsupportedRank(3)));
        }
        assert_eq!(coset_decompose(&[0, 1], 2, &Limits::default()).unwrap_err(), Error::Invalid(String::from("cocharacter must be nonempty and weakly decreasing")));
    }
}
