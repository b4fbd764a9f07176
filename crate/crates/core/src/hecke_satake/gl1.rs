use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exact_algebra::{modular, Cyclotomic, Rational};
use crate::{Error, Result};

/// A character of `Z_p^* / (1 + p^c Z_p)` with values `zeta_N^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCharacter {
    p: u64,
    conductor: u32,
    order: u32,
    /// Residue `u mod p^c` to the exponent `k` of `zeta_N^k`.
    table: BTreeMap<u64, i64>,
}

fn units_mod(p: u64, c: u32) -> Vec<u64> {
    let m = p.pow(c);
    if m == 1 {
        return alloc::vec![0];
    }
    (1..m).filter(|u| u % p != 0).collect()
}

impl UnitCharacter {
    pub fn trivial(p: u64) -> Self {
        UnitCharacter { p, conductor: 0, order: 1, table: [(0, 0)].into_iter().collect() }
    }

    /// The character of `F_p^*` sending the least primitive root to
    /// `zeta_(p-1)^k`.
    pub fn tame(p: u64, k: i64) -> Result<Self> {
        if !modular::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Ok(Self::trivial(2));
        }
        let order = p - 1;
        let g = (2..p)
            .find(|&g| (1..order).all(|e| modular::pow_mod(g, e, p) != 1))
            .expect("F_p^* is cyclic");
        let table = (0..order).map(|e| (modular::pow_mod(g, e, p), (k * e as i64).rem_euclid(order as i64))).collect();
        Ok(UnitCharacter { p, conductor: 1, order: order as u32, table })
    }

    /// Table `u -> k` over all units mod `p^c`, checked to be multiplicative.
    pub fn new(p: u64, conductor: u32, order: u32, table: BTreeMap<u64, i64>) -> Result<Self> {
        if !modular::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let units = units_mod(p, conductor);
        if order == 0 || units.len() != table.len() || units.iter().any(|u| !table.contains_key(u)) {
            return Err(Error::Invalid(String::from("character table must cover every unit class")));
        }
        let m = p.pow(conductor);
        for &a in &units {
            for &b in &units {
                let ab = if m == 1 { 0 } else { a * b % m };
                if (table[&a] + table[&b] - table[&ab]).rem_euclid(order as i64) != 0 {
                    return Err(Error::Invalid(String::from("character table is not multiplicative")));
                }
            }
        }
        Ok(UnitCharacter { p, conductor, order, table })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn units(&self) -> Vec<u64> {
        units_mod(self.p, self.conductor)
    }

    fn modulus(&self) -> u64 {
        self.p.pow(self.conductor)
    }

    fn reduce(&self, u: u64) -> u64 {
        if self.modulus() == 1 {
            0
        } else {
            u % self.modulus()
        }
    }

    pub fn value(&self, u: u64) -> Cyclotomic {
        Cyclotomic::zeta(self.order, self.table[&self.reduce(u)])
    }

    fn inverse_unit(&self, u: u64) -> u64 {
        let m = self.modulus();
        if m == 1 {
            return 0;
        }
        (1..m).find(|&x| x * u % m == 1).expect("unit")
    }
}

/// `sum c_m 1_m` where `1_m(p^m u) = phi(u)^-1` and `1_m` vanishes off
/// `p^m Z_p^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl1Element {
    character: UnitCharacter,
    support: BTreeMap<i64, Cyclotomic>,
}

impl Gl1Element {
    pub fn zero(character: UnitCharacter) -> Self {
        Gl1Element { character, support: BTreeMap::new() }
    }

    pub fn basis(character: UnitCharacter, m: i64) -> Self {
        let mut support = BTreeMap::new();
        support.insert(m, Cyclotomic::one());
        Gl1Element { character, support }
    }

    pub fn from_terms(character: UnitCharacter, terms: impl IntoIterator<Item = (i64, Cyclotomic)>) -> Self {
        let mut out = Self::zero(character);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: i64, c: &Cyclotomic) {
        let e = self.support.entry(m).or_insert_with(Cyclotomic::zero);
        *e = &*e + c;
        self.support.retain(|_, v| !v.is_zero());
    }

    pub fn character(&self) -> &UnitCharacter {
        &self.character
    }

    pub fn support(&self) -> &BTreeMap<i64, Cyclotomic> {
        &self.support
    }

    /// Value at `p^m u`.
    pub fn eval(&self, m: i64, u: u64) -> Cyclotomic {
        let c = self.support.get(&m).cloned().unwrap_or_else(Cyclotomic::zero);
        let phi = self.character.value(u).inverse().expect("roots of unity are invertible");
        &c * &phi
    }
}

/// Convolution in the `phi`-twisted Hecke algebra of `Q_p^*`, with
/// `vol(Z_p^*) = 1`.
///
/// Each product is evaluated as the finite sum
/// `(f * g)(p^(a+b) w) = |U|^-1 sum_u f(p^a u) g(p^b u^-1 w)` over the unit
/// classes `u` mod the conductor, and the output coefficient is read off at
/// every `w`; a disagreement means the twist relation failed.
pub fn gl1_twisted_convolve(f: &Gl1Element, g: &Gl1Element) -> Result<Gl1Element> {
    if f.character != g.character {
        return Err(Error::CharacterMismatch);
    }
    let chi = &f.character;
    let units = chi.units();
    let vol = Cyclotomic::rational(Rational::new(1, units.len() as i128));
    let m = chi.modulus();
    let mut out = Gl1Element::zero(chi.clone());
    for &a in f.support.keys() {
        for &b in g.support.keys() {
            let mut coeff: Option<Cyclotomic> = None;
            for &w in &units {
                let mut total = Cyclotomic::zero();
                for &u in &units {
                    let rest = if m == 1 { 0 } else { chi.inverse_unit(u) * w % m };
                    total = &total + &(&f.eval(a, u) * &g.eval(b, rest));
                }
                let c = &(&total * &vol) * &chi.value(w);
                match &coeff {
                    None => coeff = Some(c),
                    Some(prev) if *prev != c => {
                        return Err(Error::Invalid(String::from("convolution left the twisted algebra")));
                    }
                    Some(_) => {}
                }
            }
            out.add_term(a + b, &coeff.expect("at least one unit class"));
        }
    }
    Ok(out)
}
