use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Element of `Q[v] / (v^2 - q)` for a fixed integer `q`.
///
/// Stored as `even + odd * v`. No square root is ever taken: every identity
/// involving half powers of `q` holds formally in this ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPowerLaurent {
    q: i128,
    even: Rational,
    odd: Rational,
}

impl HalfPowerLaurent {
    pub fn zero(q: u64) -> Self {
        Self::from_parts(q, Rational::zero(), Rational::zero())
    }

    pub fn one(q: u64) -> Self {
        Self::from_rational(q, Rational::one())
    }

    pub fn from_rational(q: u64, r: Rational) -> Self {
        Self::from_parts(q, r, Rational::zero())
    }

    pub fn from_int(q: u64, n: i128) -> Self {
        Self::from_rational(q, Rational::from_integer(n))
    }

    pub fn from_parts(q: u64, even: Rational, odd: Rational) -> Self {
        assert!(q >= 2, "v^2 = q needs q >= 2");
        HalfPowerLaurent { q: q as i128, even, odd }
    }

    /// `v^k` for any integer `k`.
    pub fn v_power(q: u64, k: i64) -> Self {
        let half = k.div_euclid(2);
        let scale = rational_q_power(q as i128, half);
        if k.rem_euclid(2) == 0 {
            Self::from_parts(q, scale, Rational::zero())
        } else {
            Self::from_parts(q, Rational::zero(), scale)
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(q: u64, k: i64) -> Self {
        Self::v_power(q, 2 * k)
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn even_part(&self) -> &Rational {
        &self.even
    }

    pub fn odd_part(&self) -> &Rational {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn scale(&self, r: Rational) -> Self {
        HalfPowerLaurent { q: self.q, even: self.even * r, odd: self.odd * r }
    }

    /// Conjugate `even - odd * v`.
    pub fn conjugate(&self) -> Self {
        HalfPowerLaurent { q: self.q, even: self.even, odd: -self.odd }
    }

    /// `even^2 - q * odd^2`.
    pub fn norm(&self) -> Rational {
        self.even * self.even - self.odd * self.odd * Rational::from_integer(self.q)
    }

    /// Inverse when the norm is nonzero (always, unless `q` is a square and
    /// the element is a zero divisor).
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conjugate().scale(n.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.q());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// If the element is `c * v^k` for a single `k`, returns `(c, k)` with
    /// `k` in `{0, 1}`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => Some((Rational::zero(), 0)),
            (false, true) => Some((self.even, 0)),
            (true, false) => Some((self.odd, 1)),
            (false, false) => None,
        }
    }

    fn check_base(&self, rhs: &Self) {
        assert_eq!(self.q, rhs.q, "mixed bases in half-power arithmetic");
    }
}

fn rational_q_power(q: i128, k: i64) -> Rational {
    let m = Rational::from_integer(q.pow(k.unsigned_abs() as u32));
    if k >= 0 {
        m
    } else {
        m.recip()
    }
}

impl Add for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn add(self, rhs: Self) -> HalfPowerLaurent {
        self.check_base(rhs);
        HalfPowerLaurent { q: self.q, even: self.even + rhs.even, odd: self.odd + rhs.odd }
    }
}

impl Sub for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn sub(self, rhs: Self) -> HalfPowerLaurent {
        self.check_base(rhs);
        HalfPowerLaurent { q: self.q, even: self.even - rhs.even, odd: self.odd - rhs.odd }
    }
}

impl Mul for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn mul(self, rhs: Self) -> HalfPowerLaurent {
        self.check_base(rhs);
        let q = Rational::from_integer(self.q);
        HalfPowerLaurent {
            q: self.q,
            even: self.even * rhs.even + self.odd * rhs.odd * q,
            odd: self.even * rhs.odd + self.odd * rhs.even,
        }
    }
}

impl Neg for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn neg(self) -> HalfPowerLaurent {
        HalfPowerLaurent { q: self.q, even: -self.even, odd: -self.odd }
    }
}

/// Canonical text form: `a`, `v * (b)` or `a + v * (b)`.
impl fmt::Display for HalfPowerLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "v * ({})", self.odd),
            (false, false) => write!(f, "{} + v * ({})", self.even, self.odd),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn v_squared_is_q() {
        let v = HalfPowerLaurent::v_power(3, 1);
        assert_eq!(&v * &v, HalfPowerLaurent::from_int(3, 3));
        let vinv = HalfPowerLaurent::v_power(3, -1);
        assert_eq!(&v * &vinv, HalfPowerLaurent::one(3));
        assert_eq!(vinv, HalfPowerLaurent::from_parts(3, r(0), Rational::new(1, 3)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(HalfPowerLaurent::v_power(2, 1).to_string(), "v * (1)");
        assert_eq!(HalfPowerLaurent::v_power(2, -3).to_string(), "v * (1/4)");
        assert_eq!(HalfPowerLaurent::from_parts(2, r(3), r(-1)).to_string(), "3 + v * (-1)");
        assert_eq!(HalfPowerLaurent::zero(2).to_string(), "0");
    }

    #[test]
    fn zero_divisor_when_q_is_square() {
        let x = HalfPowerLaurent::from_parts(4, r(2), r(1));
        assert_eq!(x.inverse(), None);
        assert!((&x * &x.conjugate()).is_zero());
    }

    fn arb(q: u64) -> impl Strategy<Value = HalfPowerLaurent> {
        (-20i128..20, 1i128..6, -20i128..20, 1i128..6).prop_map(move |(a, b, c, d)| {
            HalfPowerLaurent::from_parts(q, Rational::new(a, b), Rational::new(c, d))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb(5), b in arb(5), c in arb(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn inverse_for_nonsquare_q(a in arb(2)) {
            prop_assume!(!a.is_zero());
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, HalfPowerLaurent::one(2));
        }

        #[test]
        fn v_powers_add(j in -6i64..6, k in -6i64..6) {
            let lhs = &HalfPowerLaurent::v_power(3, j) * &HalfPowerLaurent::v_power(3, k);
            prop_assert_eq!(lhs, HalfPowerLaurent::v_power(3, j + k));
        }
    }
}
