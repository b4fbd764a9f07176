use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::galois_ring::{Elem, GaloisRing};
use crate::{Error, Result};

/// Square matrix over a [`GaloisRing`], row-major.
///
/// The ring is passed to each operation rather than stored, so matrices stay
/// plain values that can be sorted, hashed and binary-searched. The derived
/// order (row-major, entries compared by [`Elem`] order) is the canonical
/// lex order on matrices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matrix {
    size: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn from_entries(size: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), size * size, "matrix needs size^2 entries");
        Matrix { size, entries }
    }

    /// Convenience constructor from integer rows (constants of the ring).
    pub fn from_ints(ring: &GaloisRing, rows: &[&[i64]]) -> Self {
        let size = rows.len();
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), size);
                row.iter().map(|&c| ring.from_int(c))
            })
            .collect();
        Matrix { size, entries }
    }

    pub fn identity(size: usize, ring: &GaloisRing) -> Self {
        Self::scalar(size, ring.one())
    }

    pub fn scalar(size: usize, c: Elem) -> Self {
        let mut entries = vec![Elem(0); size * size];
        for i in 0..size {
            entries[i * size + i] = c;
        }
        Matrix { size, entries }
    }

    pub fn diagonal(diag: &[Elem]) -> Self {
        let mut m = Self::scalar(diag.len(), Elem(0));
        for (i, &c) in diag.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.size + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.size + j] = v;
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { size: self.size, entries: self.entries.iter().map(|&e| f(e)).collect() }
    }

    pub fn add(&self, rhs: &Matrix, ring: &GaloisRing) -> Matrix {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| ring.add(a, b)).collect();
        Matrix { size: self.size, entries }
    }

    pub fn mul(&self, rhs: &Matrix, ring: &GaloisRing) -> Matrix {
        let n = self.size;
        debug_assert_eq!(n, rhs.size);
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == ring.zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = ring.add(entries[idx], ring.mul(a, rhs.get(k, j)));
                }
            }
        }
        Matrix { size: n, entries }
    }

    /// Entry-wise `sigma^e`.
    pub fn frobenius(&self, e: i64, ring: &GaloisRing) -> Matrix {
        self.map(|a| ring.frobenius(a, e))
    }

    pub fn reduce(&self, ring: &GaloisRing, lower: &GaloisRing) -> Matrix {
        self.map(|a| ring.reduce(a, lower))
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.size;
        let mut m = self.clone();
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(j, i));
            }
        }
        m
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize], ring: &GaloisRing) -> Elem {
        match rows.len() {
            0 => ring.one(),
            1 => self.get(rows[0], cols[0]),
            2 => ring.sub(
                ring.mul(self.get(rows[0], cols[0]), self.get(rows[1], cols[1])),
                ring.mul(self.get(rows[0], cols[1]), self.get(rows[1], cols[0])),
            ),
            _ => {
                // Laplace expansion along the first row
                let sub_rows = &rows[1..];
                let mut acc = ring.zero();
                let mut sub_cols = Vec::with_capacity(cols.len() - 1);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a == ring.zero() {
                        continue;
                    }
                    sub_cols.clear();
                    sub_cols.extend(cols.iter().copied().filter(|&x| x != c));
                    let term = ring.mul(a, self.minor_det(sub_rows, &sub_cols, ring));
                    acc = if k % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
                }
                acc
            }
        }
    }

    /// Determinant of the sub-matrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize], ring: &GaloisRing) -> Elem {
        self.minor_det(rows, cols, ring)
    }

    pub fn det(&self, ring: &GaloisRing) -> Elem {
        let idx: Vec<usize> = (0..self.size).collect();
        self.minor_det(&idx, &idx, ring)
    }

    pub fn is_invertible(&self, ring: &GaloisRing) -> bool {
        ring.is_unit(self.det(ring))
    }

    /// Inverse by the adjugate; fails when the determinant is not a unit.
    pub fn inverse(&self, ring: &GaloisRing) -> Result<Matrix> {
        let n = self.size;
        let det_inv = ring.inverse(self.det(ring)).ok_or(Error::NotInvertible)?;
        if n == 1 {
            return Ok(Matrix { size: 1, entries: vec![det_inv] });
        }
        let mut out = vec![ring.zero(); n * n];
        let mut rows = Vec::with_capacity(n - 1);
        let mut cols = Vec::with_capacity(n - 1);
        for i in 0..n {
            for j in 0..n {
                rows.clear();
                cols.clear();
                rows.extend((0..n).filter(|&r| r != j));
                cols.extend((0..n).filter(|&c| c != i));
                let cof = self.minor_det(&rows, &cols, ring);
                let cof = if (i + j) % 2 == 0 { cof } else { ring.neg(cof) };
                out[i * n + j] = ring.mul(cof, det_inv);
            }
        }
        Ok(Matrix { size: n, entries: out })
    }

    /// Coefficients of `det(t I - M)`, low degree first (monic of degree n).
    /// Computed from sums of principal minors, valid over any commutative ring.
    pub fn char_poly(&self, ring: &GaloisRing) -> Vec<Elem> {
        let n = self.size;
        let mut coeffs = vec![ring.zero(); n + 1];
        coeffs[n] = ring.one();
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let k = idx.len();
            let m = self.minor_det(&idx, &idx, ring);
            let m = if k.is_multiple_of(2) { m } else { ring.neg(m) };
            coeffs[n - k] = ring.add(coeffs[n - k], m);
        }
        coeffs
    }

    /// Minimum entry valuation.
    pub fn valuation(&self, ring: &GaloisRing) -> u32 {
        self.entries.iter().map(|&a| ring.valuation(a)).min().unwrap_or(ring.level())
    }
}

/// `p^offset * body`, with `body` known modulo `p^n` of its ring.
///
/// This carries elements such as `diag(p^-1, 1)` at finite precision without
/// dividing in `Z/p^n`. The represented matrix is known modulo
/// `p^(offset + n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledMatrix {
    pub offset: i32,
    pub body: Matrix,
}

impl ScaledMatrix {
    pub fn new(offset: i32, body: Matrix) -> Self {
        ScaledMatrix { offset, body }
    }

    pub fn integral(body: Matrix) -> Self {
        ScaledMatrix { offset: 0, body }
    }

    pub fn size(&self) -> usize {
        self.body.size()
    }

    pub fn mul(&self, rhs: &ScaledMatrix, ring: &GaloisRing) -> ScaledMatrix {
        ScaledMatrix { offset: self.offset + rhs.offset, body: self.body.mul(&rhs.body, ring) }
    }

    /// Valuation of entry `(i, j)`: `Ok(v)` when exact, `Err(bound)` when the
    /// entry vanishes at working precision and only `v >= bound` is known.
    pub fn entry_valuation(&self, i: usize, j: usize, ring: &GaloisRing) -> core::result::Result<i64, i64> {
        let a = self.body.get(i, j);
        let v = ring.valuation(a);
        if v >= ring.level() {
            Err(self.offset as i64 + ring.level() as i64)
        } else {
            Ok(self.offset as i64 + v as i64)
        }
    }

    /// Exact valuation of the determinant.
    pub fn det_valuation(&self, ring: &GaloisRing) -> Result<i64> {
        let v = ring.valuation(self.body.det(ring));
        if v >= ring.level() {
            return Err(Error::PrecisionExhausted);
        }
        Ok(self.size() as i64 * self.offset as i64 + v as i64)
    }

    /// `diag(p^e)^-1 * self * diag(p^e)`: entry `(i, j)` picks up `p^(e_j - e_i)`.
    /// Precision may be lost when the exponent spread is positive.
    pub fn conjugate_by_diagonal_inverse(&self, exps: &[i64], ring: &GaloisRing) -> ScaledMatrix {
        let n = self.size();
        let lo = exps.iter().copied().min().unwrap_or(0);
        let hi = exps.iter().copied().max().unwrap_or(0);
        let spread = hi - lo;
        let mut body = self.body.clone();
        for i in 0..n {
            for j in 0..n {
                let k = exps[j] - exps[i] + spread;
                body.set(i, j, ring.mul_p_power(self.body.get(i, j), k as u32));
            }
        }
        ScaledMatrix { offset: self.offset - spread as i32, body }
    }
}
