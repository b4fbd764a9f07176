use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exact_algebra::{Elem, GaloisRing, Matrix};
use crate::{Error, Limits, Result};

/// How a [`MatrixGroup`] was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// All of `GL_s(R)`.
    GeneralLinear,
    /// `1 + p^k M_s(R)`.
    CongruenceKernel { k: u32 },
    /// Generated by explicit matrices.
    Custom,
}

/// A finite group of `s x s` matrices over a Galois ring, held as a sorted
/// element list so membership and indexing are binary searches.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    ring: GaloisRing,
    dim: usize,
    kind: GroupKind,
    elements: Vec<Matrix>,
}

fn entry_count(dim: usize, per_entry: u64, limits: &Limits) -> Result<u64> {
    match per_entry.checked_pow((dim * dim) as u32) {
        Some(n) if n <= limits.group_order => Ok(n),
        other => Err(Error::CapExceeded {
            what: "matrix enumeration",
            size: other.unwrap_or(u64::MAX),
            cap: limits.group_order,
        }),
    }
}

/// Every `dim x dim` matrix whose entries come from `values`, in lex order
/// when `values` is sorted.
fn all_matrices(dim: usize, values: &[Elem]) -> impl Iterator<Item = Matrix> + '_ {
    let cells = dim * dim;
    let base = values.len();
    let total = base.pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut entries = vec![Elem(0); cells];
        for slot in (0..cells).rev() {
            entries[slot] = values[code % base];
            code /= base;
        }
        Matrix::from_entries(dim, entries)
    })
}

impl MatrixGroup {
    /// `GL_s(R)` by exhaustive enumeration.
    pub fn general_linear(ring: &GaloisRing, dim: usize, limits: &Limits) -> Result<Self> {
        entry_count(dim, ring.size(), limits)?;
        let values: Vec<Elem> = ring.elements().collect();
        let elements = all_matrices(dim, &values).filter(|m| m.is_invertible(ring)).collect();
        Ok(MatrixGroup { ring: ring.clone(), dim, kind: GroupKind::GeneralLinear, elements })
    }

    /// The congruence kernel `1 + p^k M_s(R)` with `1 <= k <= level`.
    pub fn congruence_kernel(ring: &GaloisRing, dim: usize, k: u32, limits: &Limits) -> Result<Self> {
        if k == 0 || k > ring.level() {
            return Err(Error::Invalid(String::from("congruence kernel needs 1 <= k <= level")));
        }
        let values: Vec<Elem> = ring.elements().filter(|&a| ring.valuation(a) >= k).collect();
        entry_count(dim, values.len() as u64, limits)?;
        let id = Matrix::identity(dim, ring);
        let mut elements: Vec<Matrix> = all_matrices(dim, &values).map(|m| m.add(&id, ring)).collect();
        elements.sort();
        Ok(MatrixGroup { ring: ring.clone(), dim, kind: GroupKind::CongruenceKernel { k }, elements })
    }

    /// The subgroup generated by `gens` (closure under products).
    pub fn generated_by(ring: &GaloisRing, dim: usize, gens: &[Matrix], limits: &Limits) -> Result<Self> {
        let mut seen = alloc::collections::BTreeSet::new();
        let id = Matrix::identity(dim, ring);
        for g in gens {
            if g.size() != dim || !g.is_invertible(ring) {
                return Err(Error::NotInvertible);
            }
        }
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g, ring);
                if seen.insert(y.clone()) {
                    if seen.len() as u64 > limits.group_order {
                        return Err(Error::CapExceeded {
                            what: "generated group",
                            size: seen.len() as u64,
                            cap: limits.group_order,
                        });
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(MatrixGroup { ring: ring.clone(), dim, kind: GroupKind::Custom, elements: seen.into_iter().collect() })
    }

    pub fn trivial(ring: &GaloisRing, dim: usize) -> Self {
        MatrixGroup {
            ring: ring.clone(),
            dim,
            kind: GroupKind::Custom,
            elements: vec![Matrix::identity(dim, ring)],
        }
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical (lex) order.
    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index_of(m).is_some()
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.dim, &self.ring)
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b, &self.ring)
    }

    pub fn inv(&self, a: &Matrix) -> Matrix {
        a.inverse(&self.ring).expect("group elements are invertible")
    }

    /// True when the elements are closed under products; quadratic, meant
    /// for small custom groups.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&self.mul(a, b))))
    }
}

/// A matrix group with the action of `sigma = Frob^f` on entries, where
/// `Frob` is the `p`-power Frobenius of the coefficient ring.
///
/// The acting group is cyclic of order `degree / f`. Index tables for
/// `sigma`, inversion, and `V -> sigma(V)^-1` are precomputed.
#[derive(Clone, Debug)]
pub struct GaloisModule {
    group: MatrixGroup,
    frob_step: u32,
    order: u32,
    sigma: Vec<u32>,
    inverse: Vec<u32>,
    sigma_inverse: Vec<u32>,
}

impl GaloisModule {
    /// `frob_step = f` must divide the residue degree; `f = degree` (or the
    /// degree-one case) gives the trivial action.
    pub fn new(group: MatrixGroup, frob_step: u32) -> Result<Self> {
        let d = group.ring().degree() as u32;
        if frob_step == 0 || !d.is_multiple_of(frob_step) {
            return Err(Error::BadSubfield { degree: d as usize, subfield: frob_step as usize });
        }
        let order = d / frob_step;
        let n = group.order();
        let mut sigma = Vec::with_capacity(n);
        let mut inverse = Vec::with_capacity(n);
        for m in group.elements() {
            let s = m.frobenius(frob_step as i64, group.ring());
            let si = group
                .index_of(&s)
                .ok_or_else(|| Error::Invalid(String::from("group is not stable under the Frobenius action")))?;
            sigma.push(si as u32);
            let inv = group.inv(m);
            inverse.push(group.index_of(&inv).ok_or_else(|| Error::Invalid(String::from("group is not closed under inverses")))? as u32);
        }
        let sigma_inverse = (0..n).map(|i| sigma[inverse[i] as usize]).collect();
        Ok(GaloisModule { group, frob_step, order, sigma, inverse, sigma_inverse })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn ring(&self) -> &GaloisRing {
        self.group.ring()
    }

    pub fn frob_step(&self) -> u32 {
        self.frob_step
    }

    /// Order of the acting cyclic group.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `sigma^e` applied entry-wise.
    pub fn sigma(&self, m: &Matrix, e: i64) -> Matrix {
        m.frobenius(self.frob_step as i64 * e, self.ring())
    }

    pub fn sigma_index(&self, i: usize) -> usize {
        self.sigma[i] as usize
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    /// Index of `sigma(V)^-1`.
    pub fn sigma_inverse_index(&self, i: usize) -> usize {
        self.sigma_inverse[i] as usize
    }

    /// Indices of the `sigma`-fixed elements.
    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.group.order()).filter(|&i| self.sigma[i] as usize == i).collect()
    }

    /// `sigma^order = id` on every element.
    pub fn action_has_declared_order(&self) -> bool {
        (0..self.group.order()).all(|i| {
            let mut j = i;
            for _ in 0..self.order {
                j = self.sigma[j] as usize;
            }
            j == i
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn gl_orders() {
        let f2 = GaloisRing::field(2, 1, &lim()).unwrap();
        let f3 = GaloisRing::field(3, 1, &lim()).unwrap();
        let f4 = GaloisRing::field(2, 2, &lim()).unwrap();
        assert_eq!(MatrixGroup::general_linear(&f2, 2, &lim()).unwrap().order(), 6);
        assert_eq!(MatrixGroup::general_linear(&f3, 2, &lim()).unwrap().order(), 48);
        assert_eq!(MatrixGroup::general_linear(&f4, 2, &lim()).unwrap().order(), 180);
        assert_eq!(MatrixGroup::general_linear(&f4, 1, &lim()).unwrap().order(), 3);
        let r = GaloisRing::new(2, 2, 2, &lim()).unwrap();
        assert_eq!(MatrixGroup::general_linear(&r, 1, &lim()).unwrap().order(), 12);
        assert_eq!(MatrixGroup::congruence_kernel(&r, 1, 1, &lim()).unwrap().order(), 4);
        assert_eq!(MatrixGroup::congruence_kernel(&r, 2, 1, &lim()).unwrap().order(), 256);
    }

    #[test]
    fn elements_are_sorted_and_indexed() {
        let f3 = GaloisRing::field(3, 1, &lim()).unwrap();
        let g = MatrixGroup::general_linear(&f3, 2, &lim()).unwrap();
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        for (i, m) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(m), Some(i));
        }
    }

    #[test]
    fn cap_applies() {
        let f4 = GaloisRing::field(2, 2, &lim()).unwrap();
        let small = Limits { group_order: 100, ..lim() };
        assert!(matches!(MatrixGroup::general_linear(&f4, 2, &small), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn module_tables() {
        let f4 = GaloisRing::field(2, 2, &lim()).unwrap();
        let g = MatrixGroup::general_linear(&f4, 2, &lim()).unwrap();
        let m = GaloisModule::new(g, 1).unwrap();
        assert_eq!(m.order(), 2);
        assert!(m.action_has_declared_order());
        assert_eq!(m.fixed_indices().len(), 6);
        assert!(GaloisModule::new(m.group().clone(), 3).is_err());
    }

    #[test]
    fn generated_subgroup() {
        let f2 = GaloisRing::field(2, 1, &lim()).unwrap();
        let swap = Matrix::from_ints(&f2, &[&[0, 1], &[1, 0]]);
        let g = MatrixGroup::generated_by(&f2, 2, &[swap], &lim()).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_closed());
    }
}
