use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::group::{GaloisModule, MatrixGroup};
use super::lang::{lang_preimage, partition, twisted_norm, TwistedClass};
use crate::exact_algebra::{modular, Elem, GaloisRing, Matrix};
use crate::{Error, Limits, Result};

/// Groups at most this large also get the well-definedness sweep over every
/// element of every twisted class.
const FULL_SWEEP_LIMIT: usize = 5000;

/// One matched pair of the correspondence.
#[derive(Clone, Debug)]
pub struct DmPair {
    /// Twisted class of `GL_s(F_{q^n})` (index into `right_classes`).
    pub right: usize,
    /// Conjugacy class of `GL_s(F_q)` (index into `left_classes`).
    pub left: usize,
    /// Degree over `F_{q^n}` of the field holding the Lang preimage `X`.
    pub extension_degree: u32,
    /// `X sigma^n(X^-1)`, rewritten over `F_q`.
    pub image: Matrix,
    /// Characteristic polynomial of `image`, equal to that of `N_n(A)^-1`.
    pub char_poly: Vec<Elem>,
    /// `C` in `GL_s(F_q)` with `C image C^-1 = left representative`.
    pub conjugator: Matrix,
}

#[derive(Clone, Debug)]
pub struct DmReport {
    pub s: usize,
    pub q: u64,
    pub n: u32,
    pub small: GaloisRing,
    pub big: GaloisRing,
    pub left_classes: Vec<TwistedClass>,
    pub right_classes: Vec<TwistedClass>,
    pub pairs: Vec<DmPair>,
    pub injective: bool,
    pub surjective: bool,
    /// `Some` when every element of each twisted class was mapped and landed
    /// on the same conjugacy class.
    pub well_defined: Option<bool>,
    /// Orbits of `A -> V A sigma(V)^-1` with `V` restricted to `GL_s(F_q)`.
    pub fixed_field_orbits: usize,
}

impl DmReport {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.surjective && self.left_classes.len() == self.right_classes.len()
    }
}

/// Conjugacy classes of `GL_s(F_q)` against twisted classes of
/// `GL_s(F_{q^n})` under the `q`-power Frobenius, matched through
/// `A = X^-1 sigma(X) -> X sigma^n(X^-1)`.
///
/// `X sigma^n(X^-1) = X N_n(A)^-1 X^-1`, so the characteristic polynomial of
/// the image equals that of `N_n(A)^-1`; this is checked for every pair
/// before the explicit conjugator search.
pub fn dm_bijection_check(s: usize, q: u64, n: u32, limits: &Limits) -> Result<DmReport> {
    let (p, f) = modular::prime_power(q).ok_or(Error::NotPrime(q))?;
    let small = GaloisRing::field(p, f as usize, limits)?;
    let big = GaloisRing::field(p, f as usize * n as usize, limits)?;
    let left_module = GaloisModule::new(MatrixGroup::general_linear(&small, s, limits)?, f)?;
    let right_module = GaloisModule::new(MatrixGroup::general_linear(&big, s, limits)?, f)?;
    let lg = left_module.group();
    let rg = right_module.group();

    let all_left: Vec<usize> = (0..lg.order()).collect();
    let (left_classes, left_label) = partition(&left_module, &all_left, &all_left);
    let all_right: Vec<usize> = (0..rg.order()).collect();
    let (right_classes, right_label) = partition(&right_module, &all_right, &all_right);
    let fixed = right_module.fixed_indices();
    let fixed_field_orbits = partition(&right_module, &all_right, &fixed).0.len();

    let small_to_big = small.embedding_into(&big)?;
    let max_extension = lg.order() as u32;

    // image of A as a matrix over F_q, with its characteristic-polynomial check
    let map_one = |a: &Matrix| -> Result<(Matrix, u32)> {
        let pre = lang_preimage(a, &right_module, max_extension, limits)?;
        let ext = &pre.ring;
        let big_to_ext = pre.embedding.as_ref().expect("field case carries an embedding");
        let x = &pre.matrix;
        let y = x.mul(&x.inverse(ext)?.frobenius((f * n) as i64, ext), ext);
        if y.frobenius(f as i64, ext) != y {
            return Err(Error::MatchFailure(format!("X sigma^n(X^-1) is not sigma-fixed for {a:?}")));
        }
        let back: BTreeMap<Elem, Elem> =
            small.elements().map(|c| (big_to_ext.apply(small_to_big.apply(c)), c)).collect();
        let pull = |m: &Matrix| -> Result<Matrix> {
            let entries = m
                .entries()
                .iter()
                .map(|e| back.get(e).copied().ok_or_else(|| Error::MatchFailure(format!("entry {e:?} outside F_q"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_entries(s, entries))
        };
        let y_small = pull(&y)?;
        let norm_inv = twisted_norm(a, &right_module, n).inverse(&big)?;
        let cp_norm = norm_inv
            .char_poly(&big)
            .iter()
            .map(|&c| small_to_big.preimage(c).ok_or_else(|| Error::MatchFailure(format!("char poly of N(A) not over F_q for {a:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if y_small.char_poly(&small) != cp_norm {
            return Err(Error::MatchFailure(format!("char poly mismatch for {a:?}")));
        }
        Ok((y_small, pre.extension_degree))
    };

    let mut pairs = Vec::with_capacity(right_classes.len());
    for (ri, cls) in right_classes.iter().enumerate() {
        let (image, extension_degree) = map_one(&cls.representative)?;
        let idx = lg.index_of(&image).ok_or_else(|| Error::MatchFailure(format!("{image:?} not invertible")))?;
        let left = left_label[idx].expect("every element has a class") as usize;
        let target = &left_classes[left].representative;
        let conjugator = lg
            .elements()
            .iter()
            .find(|c| c.mul(&image, &small).mul(&lg.inv(c), &small) == *target)
            .cloned()
            .ok_or_else(|| Error::MatchFailure(format!("no conjugator for twisted class {ri}")))?;
        pairs.push(DmPair { right: ri, left, extension_degree, char_poly: image.char_poly(&small), image, conjugator });
    }

    let mut hit = alloc::vec![false; left_classes.len()];
    let mut injective = true;
    for pr in &pairs {
        if hit[pr.left] {
            injective = false;
        }
        hit[pr.left] = true;
    }
    let surjective = hit.iter().all(|&h| h);

    let well_defined = if rg.order() <= FULL_SWEEP_LIMIT {
        let mut ok = true;
        for (i, a) in rg.elements().iter().enumerate() {
            let (image, _) = map_one(a)?;
            let idx = lg.index_of(&image).ok_or_else(|| Error::MatchFailure(format!("{image:?} not invertible")))?;
            let right = right_label[i].expect("labelled") as usize;
            if left_label[idx] != Some(pairs[right].left as u32) {
                ok = false;
            }
        }
        Some(ok)
    } else {
        None
    };

    let report = DmReport {
        s,
        q,
        n,
        small,
        big,
        left_classes,
        right_classes,
        pairs,
        injective,
        surjective,
        well_defined,
        fixed_field_orbits,
    };
    if !report.is_bijection() || report.well_defined == Some(false) {
        return Err(Error::MatchFailure(format!(
            "{} conjugacy classes vs {} twisted classes, injective {}, surjective {}",
            report.left_classes.len(),
            report.right_classes.len(),
            report.injective,
            report.surjective
        )));
    }
    Ok(report)
}
