use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{HalfPowerLaurent, Rational};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Dense rational polynomials (low degree first), used for cyclotomic fields.

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `den` must be nonzero.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dl = den.len();
    let lead = den[dl - 1];
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    if rem.len() < dl {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - dl + 1];
    while rem.len() >= dl {
        let shift = rem.len() - dl;
        let c = rem[rem.len() - 1] / lead;
        quo[shift] = c;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= c * d;
        }
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// The `n`-th cyclotomic polynomial.
fn cyclotomic_poly(n: u32) -> Vec<Rational> {
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = -Rational::one();
    num[n as usize] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_divrem(&num, &cyclotomic_poly(d)).0;
        }
    }
    num
}

// ---------------------------------------------------------------------------

/// Element of the cyclotomic field `Q(zeta_N)`, stored as a polynomial in
/// `zeta_N` of degree below `phi(N)`.
///
/// Elements of different orders are compared and combined by lifting both to
/// the field of the least common multiple.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        let mut coeffs = vec![r];
        trim(&mut coeffs);
        Cyclotomic { order: 1, coeffs }
    }

    pub fn int(n: i128) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    /// `zeta_n^k` for a primitive `n`-th root of unity.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::reduced(n, coeffs)
    }

    fn reduced(order: u32, raw: Vec<Rational>) -> Self {
        // zeta^N = 1 first, then reduce by the minimal polynomial
        let n = order as usize;
        let mut folded = vec![Rational::zero(); n.min(raw.len()).max(1)];
        for (i, c) in raw.into_iter().enumerate() {
            folded[i % n] += c;
        }
        trim(&mut folded);
        if order <= 2 {
            // phi(N) = 1: a single rational coordinate
            let mut s = Rational::zero();
            let z = if order == 1 { Rational::one() } else { -Rational::one() };
            for (i, c) in folded.iter().enumerate() {
                s += c * if i % 2 == 0 { Rational::one() } else { z };
            }
            return Cyclotomic { order, coeffs: if s.is_zero() { Vec::new() } else { vec![s] } };
        }
        let rem = poly_divrem(&folded, &cyclotomic_poly(order)).1;
        Cyclotomic { order, coeffs: rem }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value as a rational number when it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    /// Re-express in `Q(zeta_m)`; `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Self {
        assert_eq!(m % self.order, 0);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut raw = vec![Rational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = *c;
        }
        Self::reduced(m, raw)
    }

    fn common(&self, rhs: &Self) -> (Self, Self, u32) {
        let m = self.order.lcm(&rhs.order);
        (self.lift(m), rhs.lift(m), m)
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::rational(r.recip()).lift(self.order));
        }
        // extended Euclid against the minimal polynomial
        let modulus = cyclotomic_poly(self.order);
        let (mut r0, mut r1) = (modulus, self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = r0[0].recip();
        Some(Self::reduced(self.order, s0.into_iter().map(|x| x * c).collect()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Some(acc)
    }

    /// Renders the structure as `zetaN^k` terms.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign_neg = c.is_negative();
            if !first {
                f.write_str(if sign_neg { " - " } else { " + " })?;
            } else if sign_neg {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "zeta{}^{}", self.order, k)?,
                (_, false) => write!(f, "{a}*zeta{}^{}", self.order, k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, rhs: &Self) -> bool {
        if self.order == rhs.order {
            return self.coeffs == rhs.coeffs;
        }
        let (a, b, _) = self.common(rhs);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::rational(
                self.as_rational().unwrap_or_default() + rhs.as_rational().unwrap_or_default(),
            );
        }
        let (a, b, m) = self.common(rhs);
        let mut c = vec![Rational::zero(); a.coeffs.len().max(b.coeffs.len())];
        for (i, x) in a.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, y) in b.coeffs.iter().enumerate() {
            c[i] += y;
        }
        trim(&mut c);
        Cyclotomic { order: m, coeffs: c }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::rational(
                self.as_rational().unwrap_or_default() * rhs.as_rational().unwrap_or_default(),
            );
        }
        let (a, b, m) = self.common(rhs);
        Cyclotomic::reduced(m, poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

// ---------------------------------------------------------------------------

/// Product of named indeterminates with nonzero integer exponents, sorted by
/// name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(String, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(name.to_string(), exp)])
        }
    }

    pub fn factors(&self) -> &[(String, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0.iter().find(|(n, _)| n == name).map_or(0, |(_, e)| *e)
    }

    /// Total degree.
    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut map: BTreeMap<String, i32> = self.0.iter().cloned().collect();
        for (n, e) in &rhs.0 {
            *map.entry(n.clone()).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(n, e)| (n.clone(), e * k)).collect())
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Monomial {
        let mut out = Monomial::one();
        for (n, e) in &self.0 {
            let name = map.get(n).unwrap_or(n);
            out = out.mul(&Monomial::var(name, *e));
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (n, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Laurent polynomial in named indeterminates with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i128) -> Self {
        Self::constant(Cyclotomic::int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::term(Cyclotomic::one(), Monomial::var(name, 1))
    }

    pub fn term(c: Cyclotomic, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymPoly { terms }
    }

    /// Converts `even + odd * v` into a polynomial in the symbol `v_name`.
    pub fn from_half_power(h: &HalfPowerLaurent, v_name: &str) -> Self {
        &Self::constant(Cyclotomic::rational(*h.even_part()))
            + &Self::term(Cyclotomic::rational(*h.odd_part()), Monomial::var(v_name, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn insert_add(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = SymPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(m.clone(), a * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SymPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single nonzero term.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroEntry);
        }
        if self.terms.len() != 1 {
            return Err(Error::Invalid("only single terms are invertible".to_string()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Ok(Self::term(c.inverse().unwrap(), m.pow(-1)))
    }

    /// Power with any integer exponent; negative exponents need a single
    /// nonzero term.
    pub fn pow_i(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Renames indeterminates (used to apply permutations of variables).
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Self {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            out.insert_add(m.rename(map), c.clone());
        }
        out
    }

    /// Substitutes `name -> value`; negative exponents need an invertible
    /// value.
    pub fn substitute(&self, name: &str, value: &SymPoly) -> Result<Self> {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(name);
            let rest = Monomial(m.0.iter().filter(|(n, _)| n != name).cloned().collect());
            let piece = &SymPoly::term(c.clone(), rest) * &value.pow_i(e)?;
            out = &out + &piece;
        }
        Ok(out)
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: Self) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: Self) -> SymPoly {
        self + &(-rhs)
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: Self) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let rational_one = c.as_rational().filter(|r| r.is_one()).is_some();
            if m.is_one() {
                write!(f, "({c})")?;
            } else if rational_one {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

/// Polynomial in the formal variable `X` with [`SymPoly`] coefficients, low
/// degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: Vec<SymPoly>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<SymPoly>) -> Self {
        while coeffs.last().is_some_and(SymPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn one() -> Self {
        XPoly::new(vec![SymPoly::one()])
    }

    /// `1 - c * X^k`.
    pub fn one_minus(c: SymPoly, k: usize) -> Self {
        let mut coeffs = vec![SymPoly::zero(); k + 1];
        coeffs[0] = SymPoly::one();
        coeffs[k] = &coeffs[k] - &c;
        XPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[SymPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> SymPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == SymPoly::one()
    }

    /// `X -> X^d`.
    pub fn inflate(&self, d: usize) -> Self {
        assert!(d >= 1);
        let mut coeffs = vec![SymPoly::zero(); self.coeffs.len().saturating_sub(1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        XPoly::new(coeffs)
    }

    pub fn map_coeffs(&self, f: impl Fn(&SymPoly) -> SymPoly) -> Self {
        XPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: Self) -> XPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return XPoly::default();
        }
        let mut out = vec![SymPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        XPoly::new(out)
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: Self) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]*X")?,
                _ => write!(f, "[{c}]*X^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x as i128)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, *x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as canonical rational strings, e.g. `"2/3"`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Forward elimination: echelon form, rank, and the signed pivot product.
    fn eliminate(&self) -> (RationalMatrix, usize, Rational) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut det = Rational::one();
        for col in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if piv != rank {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, rank * m.cols + j);
                }
                det = -det;
            }
            let p = m.get(rank, col);
            det *= p;
            for r in rank + 1..m.rows {
                let f = m.get(r, col) / p;
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j) - f * m.get(rank, j);
                    m.set(r, j, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        (m, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        if self.rows == 0 {
            return Rational::one();
        }
        let (_, rank, det) = self.eliminate();
        if rank < self.rows {
            Rational::zero()
        } else {
            det
        }
    }

    /// Determinants of the leading `k x k` blocks, `k = 1..n`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        (1..=self.rows)
            .map(|k| {
                let block = RationalMatrix::from_rows(
                    (0..k).map(|i| self.row(i)[..k].to_vec()).collect(),
                );
                block.det()
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.data.swap(piv * n + j, col * n + j);
                inv.data.swap(piv * n + j, col * n + j);
            }
            let p = a.get(col, col).recip();
            for j in 0..n {
                a.set(col, j, a.get(col, j) * p);
                inv.set(col, j, inv.get(col, j) * p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
                }
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |n| cyclotomic_poly(n).iter().map(|c| c.to_integer()).collect::<Vec<_>>();
        assert_eq!(ints(1), vec![-1, 1]);
        assert_eq!(ints(3), vec![1, 1, 1]);
        assert_eq!(ints(4), vec![1, 0, 1]);
        assert_eq!(ints(6), vec![1, -1, 1]);
        assert_eq!(ints(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=9u32 {
            let mut s = Cyclotomic::zero();
            for k in 0..n {
                s = &s + &Cyclotomic::zeta(n, k as i64);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn cross_order_equality() {
        // zeta_6^2 = zeta_3, and zeta_4^2 = -1
        assert_eq!(Cyclotomic::zeta(6, 2), Cyclotomic::zeta(3, 1));
        assert_eq!(Cyclotomic::zeta(4, 2), Cyclotomic::int(-1));
        assert_eq!(&Cyclotomic::zeta(4, 1) * &Cyclotomic::zeta(3, 1), Cyclotomic::zeta(12, 7));
    }

    #[test]
    fn cyclotomic_inverse() {
        let a = &Cyclotomic::int(2) + &Cyclotomic::zeta(5, 1);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_none());
        assert_eq!(Cyclotomic::zeta(7, 3).pow(-3).unwrap(), Cyclotomic::zeta(7, -9));
    }

    #[test]
    fn sympoly_basic() {
        let a = SymPoly::var("a");
        let b = SymPoly::var("b");
        let s = &a + &b;
        let sq = &s * &s;
        assert_eq!(sq.coefficient(&Monomial::var("a", 1).mul(&Monomial::var("b", 1))), Cyclotomic::int(2));
        assert_eq!(&s - &s, SymPoly::zero());
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, SymPoly::one());
        assert!(s.inverse().is_err());
        assert_eq!(SymPoly::zero().inverse(), Err(Error::ZeroEntry));
        let swap: BTreeMap<String, String> =
            [("a".into(), "b".into()), ("b".into(), "a".into())].into_iter().collect();
        assert_eq!(sq.rename(&swap), sq);
    }

    #[test]
    fn substitution() {
        let a = SymPoly::var("a");
        let b = SymPoly::var("b");
        let f = &(&a * &a) + &b.pow_i(-1).unwrap();
        let g = f.substitute("b", &SymPoly::int(2)).unwrap();
        assert_eq!(g, &(&a * &a) + &SymPoly::constant(Cyclotomic::rational(r(1, 2))));
        assert!(f.substitute("b", &SymPoly::zero()).is_err());
    }

    #[test]
    fn xpoly_product_and_inflate() {
        let a = SymPoly::var("a");
        let p = &XPoly::one_minus(a.clone(), 1) * &XPoly::one_minus(&SymPoly::zero() - &a, 1);
        assert_eq!(p, XPoly::one_minus(&a * &a, 2));
        assert_eq!(XPoly::one_minus(a.clone(), 1).inflate(3), XPoly::one_minus(a, 3));
    }

    #[test]
    fn rational_matrix_ops() {
        let m = RationalMatrix::from_ints(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(m.det(), r(3, 1));
        assert_eq!(m.leading_minors(), vec![r(2, 1), r(3, 1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        let sing = RationalMatrix::from_ints(&[vec![2, -2], vec![-2, 2]]);
        assert_eq!(sing.det(), Rational::zero());
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_none());
        assert_eq!(m.to_strings()[0][1], "-1");
    }

    fn arb_cyc(n: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-5i128..5, 1..8).prop_map(move |cs| {
            let mut acc = Cyclotomic::zero();
            for (k, c) in cs.into_iter().enumerate() {
                acc = &acc + &(&Cyclotomic::int(c) * &Cyclotomic::zeta(n, k as i64));
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn cyclotomic_field_axioms(a in arb_cyc(6), b in arb_cyc(4), c in arb_cyc(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one());
            }
        }

        #[test]
        fn rational_det_multiplicative(xs in proptest::collection::vec(-4i64..5, 18)) {
            let a = RationalMatrix::from_ints(&[xs[0..3].to_vec(), xs[3..6].to_vec(), xs[6..9].to_vec()]);
            let b = RationalMatrix::from_ints(&[xs[9..12].to_vec(), xs[12..15].to_vec(), xs[15..18].to_vec()]);
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }
    }
}
