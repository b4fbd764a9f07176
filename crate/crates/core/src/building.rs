//! Stabilizers of the simplices of the fundamental chamber of the `GL_n`
//! building, the Iwasawa decomposition, and residue-level audits of two
//! factorization claims.
//!
//! Vertex `k` of the chamber is the homothety class of the lattice
//! `p O^k + O^(n-k)`, i.e. `diag(p^e) O^n` with `e = (1^k, 0^(n-k))`. Its
//! stabilizer modulo the centre is `diag(p^e) GL_n(O) diag(p^e)^-1`, which is
//! described by the valuation pattern `m_ij = e_i - e_j` together with a unit
//! determinant after removing the central power of `p`. Stabilizers of larger
//! simplices are intersections, i.e. entry-wise maxima of patterns.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::exact_algebra::{GaloisRing, Matrix, ScaledMatrix, SymPoly};
use crate::galois_lang::MatrixGroup;
use crate::{Error, Limits, Result};

/// Nonempty set of vertices of the fundamental chamber of `GL_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChamberSimplex {
    n: usize,
    vertices: Vec<usize>,
}

impl ChamberSimplex {
    pub fn new(n: usize, vertices: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::Invalid(String::from("simplex needs at least one vertex")));
        }
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return Err(Error::Invalid(format!("vertex {v} out of range for GL_{n}")));
        }
        Ok(ChamberSimplex { n, vertices: set.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// All `2^n - 1` simplices of the chamber, ordered by size and then lex.
pub fn fundamental_simplices(n: usize) -> Result<Vec<ChamberSimplex>> {
    if n == 0 {
        return Err(Error::Invalid(String::from("GL_n needs n >= 1")));
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::CapExceeded { what: "chamber simplices", size: u64::MAX, cap: u64::MAX });
    }
    let mut out: Vec<ChamberSimplex> = (1usize..1 << n)
        .map(|mask| ChamberSimplex { n, vertices: (0..n).filter(|i| mask >> i & 1 == 1).collect() })
        .collect();
    out.sort_by(|a, b| a.vertices.len().cmp(&b.vertices.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(out)
}

/// Lower bounds `m_ij` on entry valuations.
///
/// With `center_normalized`, `g` matches when `v(det g) = n c` for an integer
/// `c` and `v(g_ij) - c >= m_ij`; otherwise `c` must be zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuationPattern {
    pub entries: Vec<Vec<i64>>,
    pub center_normalized: bool,
}

impl ValuationPattern {
    /// The pattern of `GL_n(O)` modulo the centre.
    pub fn standard(n: usize) -> Self {
        ValuationPattern { entries: vec![vec![0; n]; n], center_normalized: true }
    }

    pub fn from_rows(entries: Vec<Vec<i64>>, center_normalized: bool) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(String::from("pattern must be square")));
        }
        Ok(ValuationPattern { entries, center_normalized })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Largest `|m_ij|`, the precision needed for a decisive membership test.
    pub fn spread(&self) -> i64 {
        self.entries.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }
}

fn vertex_exponents(n: usize, k: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(i < k)).collect()
}

/// Pattern of the stabilizer of `simplex`, the entry-wise maximum over its
/// vertices.
pub fn stabilizer_pattern(simplex: &ChamberSimplex) -> ValuationPattern {
    let n = simplex.n;
    simplex
        .vertices
        .iter()
        .map(|&k| conjugate_pattern(&ValuationPattern::standard(n), &vertex_exponents(n, k)))
        .reduce(|a, b| pattern_intersect(&a, &b))
        .expect("simplex is nonempty")
}

/// Pattern of `diag(p^e) G diag(p^e)^-1`: `m'_ij = m_ij + e_i - e_j`.
pub fn conjugate_pattern(pattern: &ValuationPattern, exps: &[i64]) -> ValuationPattern {
    let n = pattern.size();
    assert_eq!(exps.len(), n, "one exponent per row");
    let entries = (0..n).map(|i| (0..n).map(|j| pattern.get(i, j) + exps[i] - exps[j]).collect()).collect();
    ValuationPattern { entries, center_normalized: pattern.center_normalized }
}

/// Entry-wise maximum: the pattern of the intersection.
pub fn pattern_intersect(a: &ValuationPattern, b: &ValuationPattern) -> ValuationPattern {
    assert_eq!(a.size(), b.size(), "patterns of different sizes");
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| *x.max(y)).collect())
        .collect();
    ValuationPattern { entries, center_normalized: a.center_normalized && b.center_normalized }
}

/// Whether `g` lies in the group described by `pattern`.
///
/// A definite violation in any entry returns `false`. Otherwise an entry that
/// vanishes at working precision without meeting its bound, or a determinant
/// that vanishes, gives `PrecisionExhausted`.
pub fn membership(g: &ScaledMatrix, pattern: &ValuationPattern, ring: &GaloisRing) -> Result<bool> {
    let n = pattern.size();
    if g.size() != n {
        return Err(Error::RankMismatch { expected: n, found: g.size() });
    }
    let dv = g.det_valuation(ring)?;
    let c = if pattern.center_normalized {
        if dv.rem_euclid(n as i64) != 0 {
            return Ok(false);
        }
        dv.div_euclid(n as i64)
    } else {
        if dv != 0 {
            return Ok(false);
        }
        0
    };
    let mut ambiguous = false;
    for i in 0..n {
        for j in 0..n {
            let m = pattern.get(i, j);
            match g.entry_valuation(i, j, ring) {
                Ok(v) if v - c < m => return Ok(false),
                Ok(_) => {}
                Err(bound) if bound - c < m => ambiguous = true,
                Err(_) => {}
            }
        }
    }
    if ambiguous {
        Err(Error::PrecisionExhausted)
    } else {
        Ok(true)
    }
}

/// `g = b k` with `b` upper triangular and `k` in `GL_n(O)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iwasawa {
    pub b: ScaledMatrix,
    pub k: Matrix,
}

/// Iwasawa decomposition by column operations, bottom row first.
///
/// In each row the pivot is the leftmost entry of least valuation among the
/// columns not yet fixed; it is swapped onto the diagonal and clears the
/// entries to its left. The product `b k` equals `g` exactly modulo `p^n` of
/// the body.
pub fn iwasawa_decompose(g: &ScaledMatrix, ring: &GaloisRing) -> Result<Iwasawa> {
    let n = g.size();
    g.det_valuation(ring)?;
    let mut work = g.body.clone();
    let mut kp = Matrix::identity(n, ring);
    let swap_cols = |m: &mut Matrix, a: usize, b: usize| {
        for i in 0..n {
            let (x, y) = (m.get(i, a), m.get(i, b));
            m.set(i, a, y);
            m.set(i, b, x);
        }
    };
    // col_j -= t col_r
    let sub_col = |m: &mut Matrix, j: usize, r: usize, t| {
        for i in 0..n {
            let v = ring.sub(m.get(i, j), ring.mul(t, m.get(i, r)));
            m.set(i, j, v);
        }
    };
    for r in (0..n).rev() {
        let (c, v) = (0..=r)
            .map(|c| (c, ring.valuation(work.get(r, c))))
            .min_by_key(|&(c, v)| (v, c))
            .expect("row is nonempty");
        if v >= ring.level() {
            return Err(Error::PrecisionExhausted);
        }
        if c != r {
            swap_cols(&mut work, c, r);
            swap_cols(&mut kp, c, r);
        }
        let unit = ring.div_p_power(work.get(r, r), v);
        let unit_inv = ring.inverse(unit).expect("pivot quotient is a unit");
        for j in 0..r {
            let t = ring.mul(ring.div_p_power(work.get(r, j), v), unit_inv);
            sub_col(&mut work, j, r, t);
            sub_col(&mut kp, j, r, t);
        }
    }
    let k = kp.inverse(ring)?;
    debug_assert_eq!(work.mul(&k, ring), g.body);
    Ok(Iwasawa { b: ScaledMatrix::new(g.offset, work), k })
}

/// Whether `m` is upper triangular.
pub fn is_upper_triangular(m: &Matrix, ring: &GaloisRing) -> bool {
    let n = m.size();
    (0..n).all(|i| (0..i).all(|j| m.get(i, j) == ring.zero()))
}

/// Residue-level check of `G = U B` with `U` lower triangular with constant
/// diagonal and `B` upper triangular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UbAudit {
    pub n: usize,
    pub p: u64,
    pub level: u32,
    pub group_order: usize,
    pub u_order: usize,
    pub b_order: usize,
    pub product_size: usize,
    /// Elements of `GL_n(Z/p^level)` that are not of the form `u b`, in lex
    /// order.
    pub counterexamples: Vec<Matrix>,
}

impl UbAudit {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn lower_equal_diagonal(ring: &GaloisRing, n: usize, limits: &Limits) -> Result<Vec<Matrix>> {
    let values: Vec<_> = ring.elements().collect();
    let units: Vec<_> = ring.units().collect();
    let free = n * (n - 1) / 2;
    let size = (units.len() as u64).saturating_mul((values.len() as u64).saturating_pow(free as u32));
    if size > limits.group_order {
        return Err(Error::CapExceeded { what: "lower triangular subgroup", size, cap: limits.group_order });
    }
    let mut out = Vec::with_capacity(size as usize);
    for &a in &units {
        for code in 0..(values.len() as u64).pow(free as u32) {
            let mut m = Matrix::scalar(n, a);
            let mut c = code;
            for i in 0..n {
                for j in 0..i {
                    m.set(i, j, values[(c % values.len() as u64) as usize]);
                    c /= values.len() as u64;
                }
            }
            out.push(m);
        }
    }
    out.sort();
    Ok(out)
}

/// Enumerates both factors in `GL_n(Z/p^level)` and compares their product
/// set with the whole group.
pub fn audit_ub_factorization(n: usize, p: u64, level: u32, limits: &Limits) -> Result<UbAudit> {
    if n == 0 {
        return Err(Error::Invalid(String::from("GL_n needs n >= 1")));
    }
    let ring = GaloisRing::new(p, level, 1, limits)?;
    let g = MatrixGroup::general_linear(&ring, n, limits)?;
    let u = lower_equal_diagonal(&ring, n, limits)?;
    let b: Vec<Matrix> = g.elements().iter().filter(|m| is_upper_triangular(m, &ring)).cloned().collect();
    let pairs = (u.len() as u64).saturating_mul(b.len() as u64);
    if pairs > limits.group_order.saturating_mul(limits.group_order.max(1)) {
        return Err(Error::CapExceeded { what: "U x B products", size: pairs, cap: limits.group_order });
    }
    let mut product = BTreeSet::new();
    for x in &u {
        for y in &b {
            product.insert(x.mul(y, &ring));
        }
    }
    let counterexamples = g.elements().iter().filter(|m| !product.contains(*m)).cloned().collect();
    Ok(UbAudit {
        n,
        p,
        level,
        group_order: g.order(),
        u_order: u.len(),
        b_order: b.len(),
        product_size: product.len(),
        counterexamples,
    })
}

/// Generic `U B` product over polynomial entries.
///
/// `U` has diagonal `u` and below-diagonal entries `u{i}{j}`; `B` has entries
/// `b{i}{j}` for `i <= j`.
pub fn ub_symbolic_product(n: usize) -> Vec<Vec<SymPoly>> {
    let u = |i: usize, j: usize| match i.cmp(&j) {
        core::cmp::Ordering::Equal => SymPoly::var("u"),
        core::cmp::Ordering::Greater => SymPoly::var(&format!("u{i}{j}")),
        core::cmp::Ordering::Less => SymPoly::zero(),
    };
    let b = |i: usize, j: usize| if i <= j { SymPoly::var(&format!("b{i}{j}")) } else { SymPoly::zero() };
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(SymPoly::zero(), |acc, k| &acc + &(&u(i, k) * &b(k, j)))).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerAudit {
    pub n: usize,
    pub p: u64,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub normalizer_order: usize,
}

impl NormalizerAudit {
    pub fn self_normalizing(&self) -> bool {
        self.normalizer_order == self.subgroup_order
    }
}

/// Elements `g` of `group` with `g H g^-1 = H`.
pub fn normalizer(group: &MatrixGroup, subgroup: &[Matrix]) -> Vec<Matrix> {
    let set: BTreeSet<&Matrix> = subgroup.iter().collect();
    group
        .elements()
        .iter()
        .filter(|g| {
            let gi = group.inv(g);
            subgroup.iter().all(|h| set.contains(&group.mul(&group.mul(g, h), &gi)))
        })
        .cloned()
        .collect()
}

/// Normalizer of the residue image of the lower triangular, constant
/// diagonal subgroup in `GL_n(F_p)`.
pub fn audit_self_normalizing(n: usize, p: u64, limits: &Limits) -> Result<NormalizerAudit> {
    if n == 0 {
        return Err(Error::Invalid(String::from("GL_n needs n >= 1")));
    }
    let ring = GaloisRing::field(p, 1, limits)?;
    let g = MatrixGroup::general_linear(&ring, n, limits)?;
    let u = lower_equal_diagonal(&ring, n, limits)?;
    let norm = normalizer(&g, &u);
    Ok(NormalizerAudit { n, p, group_order: g.order(), subgroup_order: u.len(), normalizer_order: norm.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn simplex(n: usize, v: &[usize]) -> ChamberSimplex {
        ChamberSimplex::new(n, v).unwrap()
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(fundamental_simplices(2).unwrap().len(), 3);
        assert_eq!(fundamental_simplices(3).unwrap().len(), 7);
        assert_eq!(fundamental_simplices(5).unwrap().len(), 31);
        for n in 1..=12 {
            assert_eq!(fundamental_simplices(n).unwrap().len(), (1 << n) - 1);
        }
        let s = fundamental_simplices(2).unwrap();
        assert_eq!(s.iter().map(|x| x.vertices().to_vec()).collect::<Vec<_>>(), vec![vec![0], vec![1], vec![0, 1]]);
        assert!(fundamental_simplices(0).is_err());
    }

    #[test]
    fn gl2_patterns() {
        assert_eq!(stabilizer_pattern(&simplex(2, &[0])).entries, vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(stabilizer_pattern(&simplex(2, &[1])).entries, vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(stabilizer_pattern(&simplex(2, &[0, 1])).entries, vec![vec![0, 1], vec![0, 0]]);
    }

    #[test]
    fn gl3_conjugation_displays() {
        let std = ValuationPattern::standard(3);
        // pi^-1 entries are -1, pi entries +1
        let first = vec![vec![0, 1, 1], vec![-1, 0, 0], vec![-1, 0, 0]];
        let second = vec![vec![0, -1, 0], vec![1, 0, 1], vec![0, -1, 0]];
        let third = vec![vec![0, 0, -1], vec![0, 0, -1], vec![1, 1, 0]];
        assert_eq!(conjugate_pattern(&std, &[1, 0, 0]).entries, first);
        assert_eq!(conjugate_pattern(&std, &[0, 1, 0]).entries, second);
        assert_eq!(conjugate_pattern(&std, &[0, 0, 1]).entries, third);
        assert_eq!(conjugate_pattern(&std, &[0, 0, 0]), std);
    }

    #[test]
    fn membership_examples() {
        let r = GaloisRing::new(2, 4, 1, &lim()).unwrap();
        let id = ScaledMatrix::integral(Matrix::identity(2, &r));
        let swap = ScaledMatrix::integral(Matrix::from_ints(&r, &[&[0, 1], &[1, 0]]));
        for s in fundamental_simplices(2).unwrap() {
            assert!(membership(&id, &stabilizer_pattern(&s), &r).unwrap());
        }
        let v0 = stabilizer_pattern(&simplex(2, &[0]));
        let v1 = stabilizer_pattern(&simplex(2, &[1]));
        let edge = stabilizer_pattern(&simplex(2, &[0, 1]));
        assert!(membership(&swap, &v0, &r).unwrap());
        assert!(!membership(&swap, &edge, &r).unwrap());
        assert_eq!(pattern_intersect(&v0, &v1), edge);
        // central power is removed
        let scaled = ScaledMatrix::new(-3, Matrix::identity(2, &r));
        assert!(membership(&scaled, &edge, &r).unwrap());
        // odd determinant valuation is never in a vertex stabilizer
        let d = ScaledMatrix::integral(Matrix::from_ints(&r, &[&[2, 0], &[0, 1]]));
        assert!(!membership(&d, &v0, &r).unwrap());
    }

    #[test]
    fn membership_reports_precision_loss() {
        let r = GaloisRing::new(3, 1, 1, &lim()).unwrap();
        let pat = ValuationPattern::from_rows(vec![vec![0, 2], vec![0, 0]], true).unwrap();
        let id = ScaledMatrix::integral(Matrix::identity(2, &r));
        assert_eq!(membership(&id, &pat, &r), Err(Error::PrecisionExhausted));
        let zero = ScaledMatrix::integral(Matrix::scalar(2, r.zero()));
        assert_eq!(membership(&zero, &pat, &r), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn iwasawa_examples() {
        let r = GaloisRing::new(3, 4, 1, &lim()).unwrap();
        // diag(p^-1, p) = p^-1 diag(1, p^2)
        let g = ScaledMatrix::new(-1, Matrix::from_ints(&r, &[&[1, 0], &[0, 9]]));
        let d = iwasawa_decompose(&g, &r).unwrap();
        assert_eq!(d.b, g);
        assert_eq!(d.k, Matrix::identity(2, &r));
        // (0, p^-1; 1, 0) = p^-1 (0, 1; p, 0)
        let g = ScaledMatrix::new(-1, Matrix::from_ints(&r, &[&[0, 1], &[3, 0]]));
        let d = iwasawa_decompose(&g, &r).unwrap();
        assert_eq!(d.b, ScaledMatrix::new(-1, Matrix::from_ints(&r, &[&[1, 0], &[0, 3]])));
        assert_eq!(d.k, Matrix::from_ints(&r, &[&[0, 1], &[1, 0]]));
        assert_eq!(d.b.body.mul(&d.k, &r), g.body);
    }

    #[test]
    fn iwasawa_exhaustive_gl2_mod_4() {
        let r = GaloisRing::new(2, 2, 1, &lim()).unwrap();
        let vals: Vec<_> = r.elements().collect();
        for a in &vals {
            for b in &vals {
                for c in &vals {
                    for e in &vals {
                        let body = Matrix::from_entries(2, vec![*a, *b, *c, *e]);
                        let g = ScaledMatrix::new(-1, body.clone());
                        match iwasawa_decompose(&g, &r) {
                            Ok(d) => {
                                assert_eq!(d.b.body.mul(&d.k, &r), body);
                                assert!(is_upper_triangular(&d.b.body, &r));
                                assert!(r.is_unit(d.k.det(&r)));
                            }
                            Err(err) => {
                                assert_eq!(err, Error::PrecisionExhausted);
                                assert!(g.det_valuation(&r).is_err());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ub_audit_gl2() {
        let a = audit_ub_factorization(2, 2, 1, &lim()).unwrap();
        assert_eq!((a.group_order, a.product_size), (6, 4));
        let r = GaloisRing::field(2, 1, &lim()).unwrap();
        assert!(a.counterexamples.contains(&Matrix::from_ints(&r, &[&[0, 1], &[1, 0]])));
        let a = audit_ub_factorization(2, 3, 1, &lim()).unwrap();
        assert!(!a.holds());
        // u b has top-left entry a alpha, a unit, so the missing elements are
        // exactly those with g_00 = 0
        let r = GaloisRing::field(3, 1, &lim()).unwrap();
        assert!(a.counterexamples.iter().all(|m| m.get(0, 0) == r.zero()));
        assert_eq!(a.counterexamples.len(), 48 - a.product_size);
    }

    #[test]
    fn ub_symbolic_gl3() {
        let m = ub_symbolic_product(3);
        let v = SymPoly::var;
        let expect = &(&(&v("u20") * &v("b02")) + &(&v("u21") * &v("b12"))) + &(&v("u") * &v("b22"));
        assert_eq!(m[2][2], expect);
        assert_eq!(m[0][1], &v("u") * &v("b01"));
        assert!(m[1][0] == &v("u10") * &v("b00"));
    }

    #[test]
    fn self_normalizing_audits() {
        let a = audit_self_normalizing(2, 2, &lim()).unwrap();
        assert_eq!((a.group_order, a.subgroup_order, a.normalizer_order), (6, 2, 2));
        assert!(a.self_normalizing());
        let a = audit_self_normalizing(2, 3, &lim()).unwrap();
        assert_eq!((a.group_order, a.subgroup_order), (48, 6));
        assert_eq!(a.normalizer_order, 12);
        assert!(!a.self_normalizing());
        let r = GaloisRing::field(3, 1, &lim()).unwrap();
        let g = MatrixGroup::general_linear(&r, 2, &lim()).unwrap();
        assert_eq!(normalizer(&g, &[g.identity()]).len(), 48);
    }

    fn arb_scaled(p: u64, level: u32) -> impl Strategy<Value = (ScaledMatrix, GaloisRing)> {
        let r = GaloisRing::new(p, level, 2, &Limits::default()).unwrap();
        let size = r.size();
        (proptest::collection::vec(0..size, 9), -2i32..=2).prop_map(move |(e, off)| {
            let body = Matrix::from_entries(3, e.into_iter().map(crate::exact_algebra::Elem).collect());
            (ScaledMatrix::new(off, body), r.clone())
        })
    }

    fn arb_pattern() -> impl Strategy<Value = ValuationPattern> {
        proptest::collection::vec(-2i64..=2, 9).prop_map(|v| ValuationPattern {
            entries: v.chunks(3).map(|c| c.to_vec()).collect(),
            center_normalized: true,
        })
    }

    proptest! {
        #[test]
        fn conjugation_consistency((g, r) in arb_scaled(2, 4), e in proptest::collection::vec(-1i64..=1, 3)) {
            for s in fundamental_simplices(3).unwrap() {
                let m = stabilizer_pattern(&s);
                let lhs = membership(&g, &conjugate_pattern(&m, &e), &r);
                let rhs = membership(&g.conjugate_by_diagonal_inverse(&e, &r), &m, &r);
                if let (Ok(a), Ok(b)) = (lhs, rhs) {
                    prop_assert_eq!(a, b);
                }
            }
        }

        #[test]
        fn intersection_laws(a in arb_pattern(), b in arb_pattern(), c in arb_pattern()) {
            prop_assert_eq!(pattern_intersect(&a, &b), pattern_intersect(&b, &a));
            prop_assert_eq!(
                pattern_intersect(&pattern_intersect(&a, &b), &c),
                pattern_intersect(&a, &pattern_intersect(&b, &c))
            );
            prop_assert_eq!(pattern_intersect(&a, &a), a);
        }

        #[test]
        fn iwasawa_random((g, r) in arb_scaled(3, 3)) {
            match iwasawa_decompose(&g, &r) {
                Ok(d) => {
                    prop_assert_eq!(d.b.body.mul(&d.k, &r), g.body.clone());
                    prop_assert!(is_upper_triangular(&d.b.body, &r));
                    prop_assert!(r.is_unit(d.k.det(&r)));
                    prop_assert_eq!(d.b.offset, g.offset);
                }
                Err(e) => prop_assert_eq!(e, Error::PrecisionExhausted),
            }
        }

        #[test]
        fn frobenius_preserves_membership((g, r) in arb_scaled(2, 3)) {
            let sg = ScaledMatrix::new(g.offset, g.body.frobenius(1, &r));
            for s in fundamental_simplices(3).unwrap() {
                let m = stabilizer_pattern(&s);
                prop_assert_eq!(membership(&g, &m, &r), membership(&sg, &m, &r));
            }
        }
    }
}
