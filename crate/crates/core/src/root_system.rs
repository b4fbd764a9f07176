//! Roots of `GL_n`, Cartan matrices and their `D * S` factorization, the
//! root-system axioms, and Weyl groups generated by simple reflections.
//!
//! Conventions: the Cartan matrix of simple roots `r_1, ..., r_l` has entries
//! `A[i][j] = 2 (r_i, r_j) / (r_i, r_i)`. With `D = diag(1 / (r_i, r_i))` and
//! `S = (2 (r_i, r_j))` this gives `A = D S`. Because `D` is only determined
//! up to a positive scale on each connected component, [`ds_decompose`]
//! rescales it so the smallest diagonal entry of each component is `1`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_algebra::{Rational, RationalMatrix};
use crate::{Error, Limits, Result};

/// Integer vector in the character lattice `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| Rational::from_integer(x as i128)).collect()
    }

    fn from_rational(v: &[Rational]) -> Option<RootVector> {
        v.iter()
            .map(|x| x.is_integer().then(|| x.to_integer() as i64))
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }
}

/// Symmetric positive-definite bilinear form on the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    gram: RationalMatrix,
}

impl InnerProduct {
    /// The standard dot product on `Z^n`.
    pub fn standard(n: usize) -> Self {
        InnerProduct { gram: RationalMatrix::identity(n) }
    }

    pub fn from_gram(gram: RationalMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Invalid(String::from("inner product must be symmetric")));
        }
        if gram.leading_minors().iter().any(|m| !m.is_positive()) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(InnerProduct { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn eval(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let gb = self.gram.mul_vec(b);
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    pub fn eval_roots(&self, a: &RootVector, b: &RootVector) -> Rational {
        self.eval(&a.to_rational(), &b.to_rational())
    }
}

/// `(1, -1, 0, ..., 0), ..., (0, ..., 0, 1, -1)`: the `n - 1` simple roots of
/// `GL_n` in `Z^n`.
pub fn simple_roots_gl(n: usize) -> Result<Vec<RootVector>> {
    if n < 2 {
        return Err(Error::Invalid(format!("GL_n simple roots need n >= 2, got {n}")));
    }
    Ok((0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            RootVector(v)
        })
        .collect())
}

/// All roots `e_i - e_j`, `i != j`, of `GL_n`.
pub fn roots_gl(n: usize) -> Vec<RootVector> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                out.push(RootVector(v));
            }
        }
    }
    out.sort();
    out
}

/// Simple roots of `G_2` inside the sum-zero plane of `Z^3`: a short root
/// followed by a long root.
pub fn simple_roots_g2() -> Vec<RootVector> {
    vec![RootVector(vec![1, -1, 0]), RootVector(vec![-2, 1, 1])]
}

/// The twelve roots of `G_2` in the sum-zero plane of `Z^3`.
pub fn roots_g2() -> Vec<RootVector> {
    let mut out = Vec::new();
    for v in [[1, -1, 0], [1, 0, -1], [0, 1, -1], [2, -1, -1], [-1, 2, -1], [-1, -1, 2]] {
        let r = RootVector(v.to_vec());
        out.push(r.neg());
        out.push(r);
    }
    out.sort();
    out
}

/// `<beta, alpha> = 2 (alpha, beta) / (alpha, alpha)`, exact.
pub fn pairing_rational(beta: &RootVector, alpha: &RootVector, form: &InnerProduct) -> Result<Rational> {
    let aa = form.eval_roots(alpha, alpha);
    if aa.is_zero() {
        return Err(Error::Invalid(String::from("pairing against the zero vector")));
    }
    Ok(Rational::from_integer(2) * form.eval_roots(alpha, beta) / aa)
}

/// The Cartan integer `<beta, alpha>`; linear in `beta` only.
pub fn pairing(beta: &RootVector, alpha: &RootVector, form: &InnerProduct) -> Result<i64> {
    let r = pairing_rational(beta, alpha, form)?;
    if !r.is_integer() {
        return Err(Error::NonIntegral);
    }
    Ok(r.to_integer() as i64)
}

/// `sigma_alpha(beta) = beta - <beta, alpha> alpha`.
pub fn reflect(alpha: &RootVector, beta: &RootVector, form: &InnerProduct) -> Result<RootVector> {
    let k = pairing(beta, alpha, form)?;
    Ok(RootVector(beta.0.iter().zip(&alpha.0).map(|(b, a)| b - k * a).collect()))
}

fn reflect_rational(alpha: &RootVector, beta: &[Rational], form: &InnerProduct) -> Vec<Rational> {
    let a = alpha.to_rational();
    let k = Rational::from_integer(2) * form.eval(&a, beta) / form.eval(&a, &a);
    beta.iter().zip(&a).map(|(b, x)| b - k * x).collect()
}

/// Matrix of `sigma_alpha` on the ambient space (columns are images of the
/// standard basis).
pub fn reflection_matrix(alpha: &RootVector, form: &InnerProduct) -> RationalMatrix {
    let n = alpha.dim();
    let mut m = RationalMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let img = reflect_rational(alpha, &e, form);
        for (i, x) in img.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// A square integer matrix read as a (generalized) Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_ints(&self.entries)
    }

    /// The tridiagonal `2 / -1` matrix of type `A_l`.
    pub fn type_a(l: usize) -> CartanMatrix {
        let entries = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanMatrix { entries }
    }
}

/// Cartan integers `A[i][j] = 2 (r_i, r_j) / (r_i, r_i)` of the given simple
/// roots.
pub fn cartan_matrix(simple: &[RootVector], form: &InnerProduct) -> Result<CartanMatrix> {
    let entries = simple
        .iter()
        .map(|ri| simple.iter().map(|rj| pairing(rj, ri, form)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CartanMatrix { entries })
}

/// `A = D S` with `D` positive diagonal and `S` symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsDecomposition {
    pub a: CartanMatrix,
    pub d: Vec<Rational>,
    pub s: RationalMatrix,
    /// Leading principal minors of `S`.
    pub minors: Vec<Rational>,
    /// Per-index factor `d_i * (r_i, r_i)`: how far the normalized `D` sits
    /// from the formula `D_ii = 1 / (r_i, r_i)`. Constant on components.
    pub scale_vs_formula: Vec<Rational>,
}

impl DsDecomposition {
    pub fn reproduces(&self) -> bool {
        RationalMatrix::diagonal(&self.d).mul(&self.s) == self.a.to_rational()
    }
}

/// Connected components of the Dynkin graph of a square matrix.
fn components(a: &CartanMatrix) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && (a.entries[i][j] != 0 || a.entries[j][i] != 0) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Positive diagonal `D` with `D^-1 A` symmetric, smallest entry `1` on each
/// component; `None` when `A` is not symmetrizable this way.
pub fn symmetrizer(a: &CartanMatrix) -> Option<Vec<Rational>> {
    let n = a.size();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for comp in components(a) {
        d[comp[0]] = Some(Rational::one());
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                let (aij, aji) = (a.entries[i][j], a.entries[j][i]);
                if i == j || (aij == 0 && aji == 0) {
                    continue;
                }
                if aij == 0 || aji == 0 {
                    return None;
                }
                // A[i][j] / d_i = A[j][i] / d_j
                let dj = di * Rational::new(aji as i128, aij as i128);
                if !dj.is_positive() {
                    return None;
                }
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(old) if old != dj => return None,
                    Some(_) => {}
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].unwrap()).min().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].unwrap() / min);
        }
    }
    d.into_iter().collect()
}

/// Factor `A = D S` for the Cartan matrix of `simple`, with `D` normalized as
/// in [`symmetrizer`]. Fails when `S` is not positive definite.
pub fn ds_decompose(simple: &[RootVector], form: &InnerProduct) -> Result<DsDecomposition> {
    let a = cartan_matrix(simple, form)?;
    let d = symmetrizer(&a).ok_or(Error::NotPositiveDefinite)?;
    let d_inv: Vec<Rational> = d.iter().map(|x| x.recip()).collect();
    let s = RationalMatrix::diagonal(&d_inv).mul(&a.to_rational());
    let minors = s.leading_minors();
    if minors.iter().any(|m| !m.is_positive()) {
        return Err(Error::NotPositiveDefinite);
    }
    let scale_vs_formula =
        simple.iter().zip(&d).map(|(r, di)| *di * form.eval_roots(r, r)).collect();
    Ok(DsDecomposition { a, d, s, minors, scale_vs_formula })
}

/// Why a matrix fails to be a (generalized) Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanDefect {
    NotSquare,
    DiagonalNotTwo { i: usize },
    PositiveOffDiagonal { i: usize, j: usize },
    AsymmetricZero { i: usize, j: usize },
    NotSymmetrizable,
    NotPositiveDefinite { minor: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanCheck {
    pub generalized: bool,
    pub cartan: bool,
    pub defect: Option<CartanDefect>,
    pub d: Option<Vec<Rational>>,
    pub s: Option<RationalMatrix>,
}

/// Conditions (i) diagonal `2`, (ii) off-diagonal `<= 0`, (iii) symmetric
/// zero pattern.
pub fn is_generalized_cartan(a: &CartanMatrix) -> core::result::Result<(), CartanDefect> {
    let n = a.size();
    if a.entries.iter().any(|r| r.len() != n) {
        return Err(CartanDefect::NotSquare);
    }
    for i in 0..n {
        if a.entries[i][i] != 2 {
            return Err(CartanDefect::DiagonalNotTwo { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if a.entries[i][j] > 0 {
                return Err(CartanDefect::PositiveOffDiagonal { i, j });
            }
            if (a.entries[i][j] == 0) != (a.entries[j][i] == 0) {
                return Err(CartanDefect::AsymmetricZero { i, j });
            }
        }
    }
    Ok(())
}

/// Generalized-Cartan test plus a search for positive `D` with `D^-1 A`
/// symmetric positive definite.
pub fn is_cartan(a: &CartanMatrix) -> CartanCheck {
    if let Err(defect) = is_generalized_cartan(a) {
        return CartanCheck { generalized: false, cartan: false, defect: Some(defect), d: None, s: None };
    }
    let Some(d) = symmetrizer(a) else {
        return CartanCheck {
            generalized: true,
            cartan: false,
            defect: Some(CartanDefect::NotSymmetrizable),
            d: None,
            s: None,
        };
    };
    let d_inv: Vec<Rational> = d.iter().map(|x| x.recip()).collect();
    let s = RationalMatrix::diagonal(&d_inv).mul(&a.to_rational());
    // positive definiteness does not depend on the scale chosen per component
    let defect = s
        .leading_minors()
        .iter()
        .position(|m| !m.is_positive())
        .map(|k| CartanDefect::NotPositiveDefinite { minor: k + 1 });
    CartanCheck { generalized: true, cartan: defect.is_none(), defect, d: Some(d), s: Some(s) }
}

/// Pass/fail per root-system axiom, with the primed reformulations checked
/// by an independent route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemReport {
    pub ambient_dim: usize,
    pub rank: usize,
    /// `ambient_dim - rank`; `0` means axiom (i) holds in the ambient space.
    pub span_codimension: usize,
    pub nonzero: bool,
    pub spans_ambient: bool,
    pub reduced: bool,
    /// (iii): every reflection matrix maps the root set to itself.
    pub reflection_closed: bool,
    /// (iii)': `beta - <beta, alpha> alpha` lies in the set, pair by pair.
    pub reflection_formula: bool,
    /// (iv): projections are integer or half-integer multiples.
    pub projection_half_integral: bool,
    /// (iv)': `<beta, alpha>` is an integer, pair by pair.
    pub pairing_integral: bool,
    pub primed_forms_agree: bool,
    pub notes: Vec<String>,
}

impl RootSystemReport {
    /// All axioms except spanning, which is reported as a codimension.
    pub fn passes_ii_to_iv(&self) -> bool {
        self.nonzero
            && self.reduced
            && self.reflection_closed
            && self.reflection_formula
            && self.projection_half_integral
            && self.pairing_integral
    }
}

pub fn check_root_system(roots: &[RootVector], form: &InnerProduct) -> RootSystemReport {
    let ambient_dim = form.dim();
    let set: BTreeSet<&RootVector> = roots.iter().collect();
    let nonzero = roots.iter().all(|r| !r.is_zero());
    let rank = RationalMatrix::from_rows(roots.iter().map(RootVector::to_rational).collect()).rank();
    let mut notes = Vec::new();
    if rank < ambient_dim {
        notes.push(format!("roots span a sublattice of corank {}", ambient_dim - rank));
    }

    // (ii): beta = c alpha forces c = +-1
    let mut reduced = true;
    for a in roots {
        for b in roots {
            if let Some(c) = scalar_multiple(a, b) {
                if c != Rational::one() && c != -Rational::one() {
                    reduced = false;
                }
            }
        }
        if !set.contains(&a.neg()) {
            reduced = false;
            notes.push(format!("-{:?} missing", a.0));
        }
    }

    let mut reflection_closed = nonzero;
    let mut reflection_formula = nonzero;
    let mut projection_half_integral = nonzero;
    let mut pairing_integral = nonzero;
    if nonzero {
        for a in roots {
            let m = reflection_matrix(a, form);
            let aa = form.eval_roots(a, a);
            for b in roots {
                // matrix route
                let img = m.mul_vec(&b.to_rational());
                if !RootVector::from_rational(&img).is_some_and(|v| set.contains(&v)) {
                    reflection_closed = false;
                }
                // formula route
                match reflect(a, b, form) {
                    Ok(v) if set.contains(&v) => {}
                    _ => reflection_formula = false,
                }
                let proj = form.eval_roots(a, b) / aa;
                if !(proj * Rational::from_integer(2)).is_integer() {
                    projection_half_integral = false;
                }
                if pairing(b, a, form).is_err() {
                    pairing_integral = false;
                }
            }
        }
    }
    let primed_forms_agree =
        reflection_closed == reflection_formula && projection_half_integral == pairing_integral;
    RootSystemReport {
        ambient_dim,
        rank,
        span_codimension: ambient_dim - rank,
        nonzero,
        spans_ambient: rank == ambient_dim,
        reduced,
        reflection_closed,
        reflection_formula,
        projection_half_integral,
        pairing_integral,
        primed_forms_agree,
        notes,
    }
}

/// `Some(c)` with `b = c a` when the vectors are proportional.
fn scalar_multiple(a: &RootVector, b: &RootVector) -> Option<Rational> {
    let k = a.0.iter().position(|&x| x != 0)?;
    let c = Rational::new(b.0[k] as i128, a.0[k] as i128);
    a.0.iter()
        .zip(&b.0)
        .all(|(&x, &y)| Rational::from_integer(y as i128) == c * Rational::from_integer(x as i128))
        .then_some(c)
}

/// Coordinates of `root` in the basis of `simple` (which must be linearly
/// independent), or `None` when `root` is outside their span.
pub fn simple_coordinates(root: &RootVector, simple: &[RootVector], form: &InnerProduct) -> Option<Vec<Rational>> {
    let l = simple.len();
    let gram = RationalMatrix::from_rows(
        simple.iter().map(|a| simple.iter().map(|b| form.eval_roots(a, b)).collect()).collect(),
    );
    let rhs: Vec<Rational> = simple.iter().map(|a| form.eval_roots(a, root)).collect();
    let c = gram.inverse()?.mul_vec(&rhs);
    let back: Vec<Rational> = (0..root.dim())
        .map(|k| (0..l).map(|i| c[i] * Rational::from_integer(simple[i].0[k] as i128)).sum())
        .collect();
    (back == root.to_rational()).then_some(c)
}

/// Every root is an integral combination of `simple` with coefficients all
/// of one sign.
pub fn is_simple_system(roots: &[RootVector], simple: &[RootVector], form: &InnerProduct) -> bool {
    roots.iter().all(|r| {
        simple_coordinates(r, simple, form).is_some_and(|c| {
            c.iter().all(|x| x.is_integer())
                && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
        })
    })
}

/// Element of the Weyl group: its ambient matrix and a shortest word in the
/// simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: RationalMatrix,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &RootVector) -> Option<RootVector> {
        RootVector::from_rational(&self.matrix.mul_vec(&v.to_rational()))
    }

    pub fn preserves_form(&self, form: &InnerProduct) -> bool {
        self.matrix.transpose().mul(form.gram()).mul(&self.matrix) == *form.gram()
    }

    /// The coordinate permutation realized by the matrix, if it is one.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.matrix.rows();
        (0..n)
            .map(|j| {
                let col: Vec<Rational> = (0..n).map(|i| self.matrix.get(i, j)).collect();
                let ones: Vec<usize> = (0..n).filter(|&i| col[i].is_one()).collect();
                (ones.len() == 1 && col.iter().filter(|x| !x.is_zero()).count() == 1).then(|| ones[0])
            })
            .collect()
    }
}

/// Closure of the simple reflections under composition, breadth first, so
/// every element carries a shortest word. Elements are returned in order of
/// discovery.
pub fn weyl_group(simple: &[RootVector], form: &InnerProduct, limits: &Limits) -> Result<Vec<WeylElement>> {
    let n = form.dim();
    let gens: Vec<RationalMatrix> = simple.iter().map(|a| reflection_matrix(a, form)).collect();
    let id = RationalMatrix::identity(n);
    let key = |m: &RationalMatrix| -> Vec<Rational> { m.to_rows().concat() };
    let mut seen: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    seen.insert(key(&id), ());
    let mut out = vec![WeylElement { matrix: id, word: Vec::new() }];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for (i, g) in gens.iter().enumerate() {
            let m = cur.matrix.mul(g);
            let k = key(&m);
            if seen.contains_key(&k) {
                continue;
            }
            seen.insert(k, ());
            if out.len() as u64 >= limits.group_order {
                return Err(Error::CapExceeded { what: "Weyl group", size: out.len() as u64 + 1, cap: limits.group_order });
            }
            let mut word = cur.word.clone();
            word.push(i);
            out.push(WeylElement { matrix: m, word });
        }
    }
    Ok(out)
}

/// Root datum bundling a root set, an ordered simple system and the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub roots: Vec<RootVector>,
    pub simple: Vec<RootVector>,
    pub form: InnerProduct,
}

impl RootSystem {
    pub fn gl(n: usize) -> Result<Self> {
        Ok(RootSystem { roots: roots_gl(n), simple: simple_roots_gl(n)?, form: InnerProduct::standard(n) })
    }

    pub fn g2() -> Self {
        RootSystem { roots: roots_g2(), simple: simple_roots_g2(), form: InnerProduct::standard(3) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn cartan(&self) -> Result<CartanMatrix> {
        cartan_matrix(&self.simple, &self.form)
    }

    pub fn check(&self) -> RootSystemReport {
        check_root_system(&self.roots, &self.form)
    }

    pub fn weyl_group(&self, limits: &Limits) -> Result<Vec<WeylElement>> {
        weyl_group(&self.simple, &self.form, limits)
    }
}
