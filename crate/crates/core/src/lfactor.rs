//! Local L-factors `1 / det(1 - rho(t sigma) X)` with `X = q^-s`, for a
//! closed menu of dual-group representations `rho`, together with Galois
//! norms in `<sigma> x| T^`, base-change factors, Euler products and the
//! Rankin-Selberg factor.
//!
//! Satake parameters have [`SymPoly`] entries, so they may be rationals,
//! cyclotomic numbers or free symbols. The Frobenius acts on the dual torus by
//! a permutation of coordinates.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exact_algebra::{SymPoly, XPoly};
use crate::{Error, Result};

/// `(alpha_1, ..., alpha_n)` with nonzero entries, for residue size `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParameter {
    q: u64,
    values: Vec<SymPoly>,
}

impl SatakeParameter {
    pub fn new(q: u64, values: Vec<SymPoly>) -> Result<Self> {
        if values.iter().any(SymPoly::is_zero) {
            return Err(Error::ZeroValue);
        }
        Ok(SatakeParameter { q, values })
    }

    /// Parameter of free symbols, e.g. `symbols(q, &["alpha", "beta"])`.
    pub fn symbols(q: u64, names: &[&str]) -> Self {
        SatakeParameter { q, values: names.iter().map(|n| SymPoly::var(n)).collect() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[SymPoly] {
        &self.values
    }

    /// `t_i -> t_(perm(i))`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        SatakeParameter { q: self.q, values: perm.iter().map(|&i| self.values[i].clone()).collect() }
    }

    fn mul(&self, rhs: &SatakeParameter) -> Self {
        SatakeParameter { q: self.q, values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect() }
    }
}

/// Representations of the dual group `GL_n(C)` (or `GL_n x GL_m` for
/// `Tensor`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualRep {
    Trivial,
    Standard,
    Dual,
    Sym(u32),
    Wedge(u32),
    /// External tensor product of two representations, taking two parameters.
    Tensor(Box<DualRep>, Box<DualRep>),
}

impl DualRep {
    pub fn tensor() -> Self {
        DualRep::Tensor(Box::new(DualRep::Standard), Box::new(DualRep::Standard))
    }

    fn arity(&self) -> usize {
        match self {
            DualRep::Tensor(..) => 2,
            _ => 1,
        }
    }

    /// Dimension for parameters of ranks `ranks`.
    pub fn dimension(&self, ranks: &[usize]) -> u64 {
        match self {
            DualRep::Trivial => 1,
            DualRep::Standard | DualRep::Dual => ranks[0] as u64,
            DualRep::Sym(k) => binomial(ranks[0] as u64 + *k as u64 - 1, *k as u64),
            DualRep::Wedge(k) => binomial(ranks[0] as u64, *k as u64),
            DualRep::Tensor(a, b) => a.dimension(&ranks[..1]) * b.dimension(&ranks[1..]),
        }
    }
}

impl fmt::Display for DualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualRep::Trivial => f.write_str("trivial"),
            DualRep::Standard => f.write_str("standard"),
            DualRep::Dual => f.write_str("dual"),
            DualRep::Sym(k) => write!(f, "sym{k}"),
            DualRep::Wedge(k) => write!(f, "wedge{k}"),
            DualRep::Tensor(a, b) => write!(f, "({a})x({b})"),
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Weakly increasing index tuples of length `k` in `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn strict_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    multisets(n, k).into_iter().filter(|s| s.windows(2).all(|w| w[0] < w[1])).collect()
}

/// Weight basis of `rho` on which `diag(t)` acts diagonally and the
/// coordinate permutation acts by a signed permutation.
struct WeightBasis {
    eigenvalues: Vec<SymPoly>,
    /// Index tuples, used to transport the permutation action.
    labels: Vec<Vec<usize>>,
}

fn weight_basis(rho: &DualRep, params: &[&SatakeParameter]) -> Result<WeightBasis> {
    if params.len() != rho.arity() {
        return Err(Error::RankMismatch { expected: rho.arity(), found: params.len() });
    }
    let t = params[0].values();
    let n = t.len();
    let product = |idx: &[usize]| idx.iter().fold(SymPoly::one(), |acc, &i| &acc * &t[i]);
    Ok(match rho {
        DualRep::Trivial => WeightBasis { eigenvalues: vec![SymPoly::one()], labels: vec![vec![]] },
        DualRep::Standard => WeightBasis { eigenvalues: t.to_vec(), labels: (0..n).map(|i| vec![i]).collect() },
        DualRep::Dual => WeightBasis {
            eigenvalues: t.iter().map(|x| x.pow_i(-1)).collect::<Result<_>>()?,
            labels: (0..n).map(|i| vec![i]).collect(),
        },
        DualRep::Sym(k) => {
            let labels = multisets(n, *k as usize);
            WeightBasis { eigenvalues: labels.iter().map(|l| product(l)).collect(), labels }
        }
        DualRep::Wedge(k) => {
            let labels = strict_subsets(n, *k as usize);
            WeightBasis { eigenvalues: labels.iter().map(|l| product(l)).collect(), labels }
        }
        DualRep::Tensor(a, b) => {
            if params[0].q() != params[1].q() {
                return Err(Error::BaseMismatch { left: params[0].q(), right: params[1].q() });
            }
            let left = weight_basis(a, &params[..1])?;
            let right = weight_basis(b, &params[1..])?;
            let mut eigenvalues = Vec::new();
            let mut labels = Vec::new();
            for (i, x) in left.eigenvalues.iter().enumerate() {
                for (j, y) in right.eigenvalues.iter().enumerate() {
                    eigenvalues.push(x * y);
                    labels.push(vec![i, j]);
                }
            }
            WeightBasis { eigenvalues, labels }
        }
    })
}

/// Eigenvalues of `rho(diag(t))` in the standard weight basis order.
pub fn rep_apply(rho: &DualRep, params: &[&SatakeParameter]) -> Result<Vec<SymPoly>> {
    Ok(weight_basis(rho, params)?.eigenvalues)
}

/// `(sigma^power, t)` in `<sigma> x| T^` with `sigma` of order dividing `d`
/// acting by `sigma(t)_i = t_(action(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTorusElement {
    pub power: u32,
    pub d: u32,
    pub t: SatakeParameter,
    pub action: Vec<usize>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a . b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn perm_power(p: &[usize], e: u32) -> Vec<usize> {
    (0..e).fold((0..p.len()).collect(), |acc: Vec<usize>, _| compose(&acc, p))
}

impl DualTorusElement {
    /// Split case: `sigma` acts trivially on the torus.
    pub fn split(t: SatakeParameter, power: u32, d: u32) -> Result<Self> {
        let n = t.rank();
        Self::new(t, power, d, (0..n).collect())
    }

    pub fn new(t: SatakeParameter, power: u32, d: u32, action: Vec<usize>) -> Result<Self> {
        let n = t.rank();
        if d == 0 {
            return Err(Error::Invalid(String::from("Galois order d must be at least 1")));
        }
        if action.len() != n {
            return Err(Error::RankMismatch { expected: n, found: action.len() });
        }
        let mut seen = vec![false; n];
        for &i in &action {
            if i >= n || core::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(String::from("action is not a permutation")));
            }
        }
        if perm_power(&action, d) != (0..n).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!("action order does not divide {d}")));
        }
        Ok(DualTorusElement { power: power % d, d, t, action })
    }

    /// `sigma^e(t)`.
    pub fn sigma_power(&self, t: &SatakeParameter, e: u32) -> SatakeParameter {
        t.permuted(&perm_power(&self.action, e))
    }

    /// `(sigma^a, t)(sigma^b, t') = (sigma^(a+b), t sigma^a(t'))`.
    pub fn mul(&self, rhs: &DualTorusElement) -> Result<DualTorusElement> {
        if self.d != rhs.d || self.action != rhs.action {
            return Err(Error::Invalid(String::from("elements of different semidirect products")));
        }
        Ok(DualTorusElement {
            power: (self.power + rhs.power) % self.d,
            d: self.d,
            t: self.t.mul(&self.sigma_power(&rhs.t, self.power)),
            action: self.action.clone(),
        })
    }

    fn identity_like(&self) -> DualTorusElement {
        let one = SatakeParameter { q: self.t.q, values: vec![SymPoly::one(); self.t.rank()] };
        DualTorusElement { power: 0, d: self.d, t: one, action: self.action.clone() }
    }
}

/// `e^m = (sigma^(a m), t sigma^a(t) ... sigma^(a(m-1))(t))`.
pub fn semidirect_power(e: &DualTorusElement, m: u32) -> DualTorusElement {
    (0..m).fold(e.identity_like(), |acc, _| acc.mul(e).expect("same semidirect product"))
}

/// `1 / denominator(X)`, `X = q^-s`; with `degree_in_xd = Some(d)` the
/// denominator is a polynomial in `X^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLFactor {
    pub q: u64,
    pub denominator: XPoly,
    pub degree_in_xd: Option<u32>,
}

/// `det(1 - rho(t sigma^a) X)`.
///
/// `rho(diag(t))` is diagonal on the weight basis and `rho(P_sigma)` is a
/// signed permutation of it, so the determinant is the product over cycles
/// `(b_1 ... b_k)` of `1 - (signs * eigenvalues around the cycle) X^k`.
pub fn l_factor(rho: &DualRep, e: &DualTorusElement, others: &[&SatakeParameter]) -> Result<LocalLFactor> {
    let mut params = vec![&e.t];
    params.extend_from_slice(others);
    let basis = weight_basis(rho, &params)?;
    let perm = perm_power(&e.action, e.power);
    let trivial_action = perm.iter().enumerate().all(|(i, &j)| i == j);
    let dim = basis.eigenvalues.len();
    // image and sign of each basis vector under rho(P)
    let (target, sign): (Vec<usize>, Vec<i128>) = if trivial_action {
        ((0..dim).collect(), vec![1; dim])
    } else {
        match rho {
            DualRep::Trivial => (vec![0], vec![1]),
            DualRep::Tensor(..) => {
                return Err(Error::Invalid(String::from("tensor factors need the split action")));
            }
            _ => {
                let mut target = Vec::with_capacity(dim);
                let mut sign = Vec::with_capacity(dim);
                for l in &basis.labels {
                    let mut img: Vec<usize> = l.iter().map(|&i| perm[i]).collect();
                    let inversions = (0..img.len())
                        .flat_map(|a| (a + 1..img.len()).map(move |b| (a, b)))
                        .filter(|&(a, b)| img[a] > img[b])
                        .count();
                    img.sort_unstable();
                    target.push(basis.labels.iter().position(|x| *x == img).expect("basis is permutation stable"));
                    let wedge = matches!(rho, DualRep::Wedge(_));
                    sign.push(if wedge && inversions % 2 == 1 { -1 } else { 1 });
                }
                (target, sign)
            }
        }
    };
    let mut seen = vec![false; dim];
    let mut denominator = XPoly::one();
    for start in 0..dim {
        if seen[start] {
            continue;
        }
        let mut b = start;
        let mut len = 0;
        let mut c = SymPoly::one();
        while !seen[b] {
            seen[b] = true;
            c = (&c * &basis.eigenvalues[target[b]]).scale(&crate::exact_algebra::Cyclotomic::int(sign[b]));
            b = target[b];
            len += 1;
        }
        denominator = &denominator * &XPoly::one_minus(c, len);
    }
    Ok(LocalLFactor { q: e.t.q(), denominator, degree_in_xd: None })
}

/// `L` of the split parameter `t` (`sigma` trivial).
pub fn l_factor_split(rho: &DualRep, params: &[&SatakeParameter]) -> Result<LocalLFactor> {
    let e = DualTorusElement::split(params[0].clone(), 0, 1)?;
    l_factor(rho, &e, &params[1..])
}

/// `1 / det(1 - rho(N_d(t sigma)) X^d)` with `N_d(t sigma) = (t sigma)^d`.
pub fn base_change_factor(rho: &DualRep, e: &DualTorusElement, d: u32) -> Result<LocalLFactor> {
    if d == 0 {
        return Err(Error::Invalid(String::from("base change degree must be at least 1")));
    }
    let norm = semidirect_power(e, d);
    let f = l_factor(rho, &norm, &[])?;
    Ok(LocalLFactor { q: f.q, denominator: f.denominator.inflate(d as usize), degree_in_xd: Some(d) })
}

/// `prod 1 / den_i`, kept as the list of denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerProduct {
    pub q: Option<u64>,
    pub factors: Vec<XPoly>,
}

impl EulerProduct {
    pub fn denominator(&self) -> XPoly {
        self.factors.iter().fold(XPoly::one(), |acc, f| &acc * f)
    }

    pub fn numerator(&self) -> XPoly {
        XPoly::one()
    }
}

pub fn euler_product(factors: &[LocalLFactor]) -> Result<EulerProduct> {
    let q = factors.first().map(|f| f.q);
    if let Some(q) = q {
        if let Some(bad) = factors.iter().find(|f| f.q != q) {
            return Err(Error::BaseMismatch { left: q, right: bad.q });
        }
    }
    Ok(EulerProduct { q, factors: factors.iter().map(|f| f.denominator.clone()).collect() })
}

/// `1 / prod_(i,j) (1 - alpha_i beta_j X)`.
pub fn rankin_selberg(left: &SatakeParameter, right: &SatakeParameter) -> Result<LocalLFactor> {
    if left.values().iter().chain(right.values()).any(SymPoly::is_zero) {
        return Err(Error::ZeroValue);
    }
    l_factor_split(&DualRep::tensor(), &[left, right])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Cyclotomic;

    fn v(name: &str) -> SymPoly {
        SymPoly::var(name)
    }

    fn prod(factors: &[XPoly]) -> XPoly {
        factors.iter().fold(XPoly::one(), |a, f| &a * f)
    }

    #[test]
    fn eigenvalue_menu() {
        let t = SatakeParameter::symbols(3, &["a", "b"]);
        assert_eq!(rep_apply(&DualRep::Standard, &[&t]).unwrap(), vec![v("a"), v("b")]);
        assert_eq!(rep_apply(&DualRep::Wedge(2), &[&t]).unwrap(), vec![&v("a") * &v("b")]);
        assert_eq!(
            rep_apply(&DualRep::Sym(2), &[&t]).unwrap(),
            vec![v("a").pow(2), &v("a") * &v("b"), v("b").pow(2)]
        );
        assert_eq!(rep_apply(&DualRep::Dual, &[&t]).unwrap()[0], SymPoly::var("a").pow_i(-1).unwrap());
        assert_eq!(rep_apply(&DualRep::tensor(), &[&t]), Err(Error::RankMismatch { expected: 2, found: 1 }));
        for (rho, dim) in [(DualRep::Sym(3), 20), (DualRep::Wedge(2), 6), (DualRep::Dual, 4)] {
            let t4 = SatakeParameter::symbols(2, &["a", "b", "c", "d"]);
            assert_eq!(rep_apply(&rho, &[&t4]).unwrap().len() as u64, dim);
            assert_eq!(rho.dimension(&[4]), dim);
        }
    }

    #[test]
    fn basic_factors() {
        let t = SatakeParameter::symbols(3, &["a", "b"]);
        let f = l_factor_split(&DualRep::Standard, &[&t]).unwrap();
        assert_eq!(f.denominator, &XPoly::one_minus(v("a"), 1) * &XPoly::one_minus(v("b"), 1));
        assert_eq!(f.denominator.degree(), Some(2));
        let f = l_factor_split(&DualRep::Trivial, &[&t]).unwrap();
        assert_eq!(f.denominator, XPoly::one_minus(SymPoly::one(), 1));
    }

    #[test]
    fn semidirect_examples() {
        let t = SatakeParameter::symbols(2, &["a", "b"]);
        let e = DualTorusElement::split(t.clone(), 1, 3).unwrap();
        assert_eq!(semidirect_power(&e, 1), e);
        let n = semidirect_power(&e, 3);
        assert_eq!((n.power, n.t.values().to_vec()), (0, vec![v("a").pow(3), v("b").pow(3)]));
        let swap = DualTorusElement::new(t, 1, 2, vec![1, 0]).unwrap();
        let n = semidirect_power(&swap, 2);
        let ab = &v("a") * &v("b");
        assert_eq!((n.power, n.t.values().to_vec()), (0, vec![ab.clone(), ab]));
        assert!(DualTorusElement::new(SatakeParameter::symbols(2, &["a", "b"]), 1, 3, vec![1, 0]).is_err());
    }

    #[test]
    fn power_associativity() {
        let t = SatakeParameter::symbols(3, &["a", "b", "c"]);
        for d in 1..=4u32 {
            for action in [vec![0, 1, 2], vec![1, 0, 2], vec![1, 2, 0]] {
                let Ok(e) = DualTorusElement::new(t.clone(), 1, d, action) else { continue };
                for a in 0..=d {
                    for b in 0..=d {
                        let lhs = semidirect_power(&e, a + b);
                        let rhs = semidirect_power(&e, a).mul(&semidirect_power(&e, b)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_swap_factor() {
        // det(1 - diag(a, b) P X) for the swap P is 1 - a b X^2
        let t = SatakeParameter::symbols(2, &["a", "b"]);
        let e = DualTorusElement::new(t, 1, 2, vec![1, 0]).unwrap();
        let f = l_factor(&DualRep::Standard, &e, &[]).unwrap();
        assert_eq!(f.denominator, XPoly::one_minus(&v("a") * &v("b"), 2));
        // wedge^2 of the swap is -1 on e0 ^ e1
        let f = l_factor(&DualRep::Wedge(2), &e, &[]).unwrap();
        assert_eq!(f.denominator, XPoly::one_minus(-&(&v("a") * &v("b")), 1));
    }

    #[test]
    fn base_change_examples() {
        let t = SatakeParameter::symbols(2, &["a"]);
        let e = DualTorusElement::split(t.clone(), 1, 2).unwrap();
        let f = base_change_factor(&DualRep::Standard, &e, 2).unwrap();
        assert_eq!(f.denominator, XPoly::one_minus(v("a").pow(2), 2));
        let e1 = DualTorusElement::split(t.clone(), 1, 1).unwrap();
        assert_eq!(base_change_factor(&DualRep::Standard, &e1, 1).unwrap().denominator, l_factor_split(&DualRep::Standard, &[&t]).unwrap().denominator);
        for d in 1..=4 {
            let e = DualTorusElement::split(t.clone(), 1, d).unwrap();
            let f = base_change_factor(&DualRep::Trivial, &e, d).unwrap();
            assert_eq!(f.denominator, XPoly::one_minus(SymPoly::one(), d as usize));
        }
    }

    #[test]
    fn norm_compatibility() {
        let a = v("a");
        for d in 1..=5u32 {
            let conj: Vec<XPoly> = (0..d)
                .map(|j| XPoly::one_minus(a.scale(&Cyclotomic::zeta(d, j as i64)), 1))
                .collect();
            assert_eq!(prod(&conj), XPoly::one_minus(a.pow(d), d as usize));
        }
    }

    #[test]
    fn euler_and_rankin() {
        assert_eq!(euler_product(&[]).unwrap().denominator(), XPoly::one());
        let a = SatakeParameter::symbols(2, &["a"]);
        let b = SatakeParameter::symbols(2, &["b"]);
        let fa = l_factor_split(&DualRep::Standard, &[&a]).unwrap();
        let fb = l_factor_split(&DualRep::Standard, &[&b]).unwrap();
        let e = euler_product(&[fa.clone(), fb.clone()]).unwrap();
        assert_eq!(e.denominator(), &fa.denominator * &fb.denominator);
        assert_eq!(euler_product(std::slice::from_ref(&fa)).unwrap().denominator(), fa.denominator);
        let c = SatakeParameter::symbols(3, &["c"]);
        let fc = l_factor_split(&DualRep::Standard, &[&c]).unwrap();
        assert_eq!(euler_product(&[fa, fc]), Err(Error::BaseMismatch { left: 2, right: 3 }));

        let r = rankin_selberg(&a, &b).unwrap();
        assert_eq!(r.denominator, XPoly::one_minus(&v("a") * &v("b"), 1));
        let one = SatakeParameter::new(2, vec![SymPoly::one()]).unwrap();
        let t = SatakeParameter::symbols(2, &["x", "y"]);
        assert_eq!(rankin_selberg(&t, &one).unwrap().denominator, l_factor_split(&DualRep::Standard, &[&t]).unwrap().denominator);
        let u = SatakeParameter::symbols(2, &["z", "w"]);
        assert_eq!(rankin_selberg(&t, &u).unwrap().denominator.degree(), Some(4));
        assert_eq!(SatakeParameter::new(2, vec![SymPoly::zero()]), Err(Error::ZeroValue));
    }

    #[test]
    fn weyl_invariance() {
        let names = ["a", "b", "c"];
        let reps = [DualRep::Standard, DualRep::Dual, DualRep::Sym(2), DualRep::Wedge(2), DualRep::Sym(3)];
        for n in 1..=3 {
            let t = SatakeParameter::symbols(5, &names[..n]);
            for rho in &reps {
                let base = l_factor_split(rho, &[&t]).unwrap();
                assert_eq!(base.denominator.coeff(0), SymPoly::one());
                assert_eq!(base.denominator.degree().unwrap_or(0) as u64, rho.dimension(&[n]));
                for w in all_perms(n) {
                    let f = l_factor_split(rho, &[&t.permuted(&w)]).unwrap();
                    assert_eq!(f.denominator, base.denominator);
                }
            }
        }
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
}
