use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{GaloisModule, GroupKind};
use crate::exact_algebra::{Elem, Embedding, GaloisRing, Matrix};
use crate::{Error, Limits, Result};

/// `X^-1 sigma(X)`.
pub fn lang_map(x: &Matrix, module: &GaloisModule) -> Result<Matrix> {
    let ring = module.ring();
    let inv = x.inverse(ring)?;
    Ok(inv.mul(&module.sigma(x, 1), ring))
}

/// `N_m(A) = A sigma(A) ... sigma^(m-1)(A)`.
pub fn twisted_norm(a: &Matrix, module: &GaloisModule, m: u32) -> Matrix {
    twisted_norm_in(a, module.ring(), module.frob_step(), m)
}

pub(crate) fn twisted_norm_in(a: &Matrix, ring: &GaloisRing, frob_step: u32, m: u32) -> Matrix {
    let mut acc = Matrix::identity(a.size(), ring);
    let mut cur = a.clone();
    for _ in 0..m {
        acc = acc.mul(&cur, ring);
        cur = cur.frobenius(frob_step as i64, ring);
    }
    acc
}

/// Sorted image `{X^-1 sigma(X) : X in G}` as element indices.
pub fn lang_image(module: &GaloisModule) -> Vec<usize> {
    let g = module.group();
    let mut img: Vec<usize> = (0..g.order())
        .map(|i| {
            let y = g.mul(g.element(module.inverse_index(i)), g.element(module.sigma_index(i)));
            g.index_of(&y).expect("Lang map stays in the group")
        })
        .collect();
    img.sort_unstable();
    img.dedup();
    img
}

/// An orbit of `A -> V A sigma(V)^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedClass {
    /// Lex-least member.
    pub representative: Matrix,
    pub representative_index: usize,
    pub size: usize,
}

/// Indices of `{V A sigma(V)^-1 : V in vs}`.
pub(crate) fn twisted_orbit(module: &GaloisModule, a: usize, vs: &[usize]) -> Vec<usize> {
    let g = module.group();
    let am = g.element(a);
    let mut out: Vec<usize> = vs
        .iter()
        .map(|&v| {
            let y = g.mul(&g.mul(g.element(v), am), g.element(module.sigma_inverse_index(v)));
            g.index_of(&y).expect("twisted conjugation stays in the group")
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Partitions `subset` (a union of orbits) into twisted classes under the
/// acting elements `vs`; returns the classes and, for each element index of
/// the group, its class number.
pub(crate) fn partition(module: &GaloisModule, subset: &[usize], vs: &[usize]) -> (Vec<TwistedClass>, Vec<Option<u32>>) {
    let g = module.group();
    let mut label: Vec<Option<u32>> = vec![None; g.order()];
    let mut classes = Vec::new();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for &a in &sorted {
        if label[a].is_some() {
            continue;
        }
        let orbit = twisted_orbit(module, a, vs);
        let id = classes.len() as u32;
        for &b in &orbit {
            debug_assert!(label[b].is_none());
            label[b] = Some(id);
        }
        // `a` is the first unvisited element in lex order, hence lex-least
        classes.push(TwistedClass { representative: g.element(a).clone(), representative_index: a, size: orbit.len() });
    }
    (classes, label)
}

/// Twisted classes of the whole group, ordered by representative.
pub fn twisted_classes(module: &GaloisModule, limits: &Limits) -> Result<Vec<TwistedClass>> {
    let n = module.group().order() as u64;
    if n > limits.group_order {
        return Err(Error::CapExceeded { what: "twisted classes", size: n, cap: limits.group_order });
    }
    let all: Vec<usize> = (0..module.group().order()).collect();
    Ok(partition(module, &all, &all).0)
}

/// A solution of `X^-1 sigma(X) = y` over an extension of degree
/// `extension_degree` of the module's ring.
#[derive(Clone, Debug)]
pub struct LangPreimage {
    pub extension_degree: u32,
    pub ring: GaloisRing,
    /// Embedding of the module's ring into `ring`; `None` when they agree.
    pub embedding: Option<Embedding>,
    pub matrix: Matrix,
    /// Extension degrees skipped because `N(y)^e != 1` rules them out.
    pub excluded_degrees: Vec<u32>,
}

/// Finds `X` with `X^-1 sigma(X) = y`, trying extensions of degree
/// `e = 1, 2, ..., max_extension` in turn.
///
/// For `GL_s` over a field the search runs over rows: `sigma(X) = X y` says
/// each row `r` of `X` satisfies `sigma(r) = r y`, so the solution rows are
/// enumerated and a basis among them is taken. Degree `e` is skipped when
/// `N(y)^e != 1`, since then `sigma^(me)(X) = X N(y)^e` cannot equal `X`.
/// Other groups are searched element by element inside the group (`e = 1`).
pub fn lang_preimage(y: &Matrix, module: &GaloisModule, max_extension: u32, limits: &Limits) -> Result<LangPreimage> {
    let ring = module.ring();
    let g = module.group();
    if !g.contains(y) {
        return Err(Error::Invalid(String::from("target is not in the group")));
    }
    let full_gl_field = ring.is_field() && g.kind() == GroupKind::GeneralLinear;
    if !full_gl_field {
        for x in g.elements() {
            if lang_map(x, module)? == *y {
                return Ok(LangPreimage {
                    extension_degree: 1,
                    ring: ring.clone(),
                    embedding: None,
                    matrix: x.clone(),
                    excluded_degrees: Vec::new(),
                });
            }
        }
        return Err(Error::NotFound { max_extension: 1 });
    }

    let s = y.size();
    let norm = twisted_norm(y, module, module.order());
    let id = Matrix::identity(s, ring);
    let mut excluded = Vec::new();
    let mut power = Matrix::identity(s, ring);
    for e in 1..=max_extension {
        power = power.mul(&norm, ring);
        if power != id {
            excluded.push(e);
            continue;
        }
        let big = GaloisRing::field(ring.p(), ring.degree() * e as usize, limits)?;
        let emb = ring.embedding_into(&big)?;
        let yb = y.map(|a| emb.apply(a));
        if let Some(x) = solve_rows(&yb, &big, module.frob_step(), limits)? {
            return Ok(LangPreimage { extension_degree: e, ring: big, embedding: Some(emb), matrix: x, excluded_degrees: excluded });
        }
    }
    Err(Error::NotFound { max_extension })
}

/// Rows `r` in `F^s` with `sigma(r) = r y`, then a basis among them.
fn solve_rows(y: &Matrix, field: &GaloisRing, frob_step: u32, limits: &Limits) -> Result<Option<Matrix>> {
    let s = y.size();
    let q = field.size();
    let total = q.checked_pow(s as u32).filter(|&t| t <= limits.group_order).ok_or(Error::CapExceeded {
        what: "row enumeration",
        size: q.saturating_pow(s as u32),
        cap: limits.group_order,
    })?;
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Elem>)> = Vec::new();
    for code in 1..total {
        let mut r = vec![Elem(0); s];
        let mut c = code;
        for slot in (0..s).rev() {
            r[slot] = Elem(c % q);
            c /= q;
        }
        let sr: Vec<Elem> = r.iter().map(|&a| field.frobenius(a, frob_step as i64)).collect();
        let ry: Vec<Elem> = (0..s)
            .map(|j| (0..s).fold(field.zero(), |acc, k| field.add(acc, field.mul(r[k], y.get(k, j)))))
            .collect();
        if sr != ry {
            continue;
        }
        if insert_if_independent(&mut echelon, r.clone(), field) {
            basis.push(r);
            if basis.len() == s {
                let entries = basis.concat();
                return Ok(Some(Matrix::from_entries(s, entries)));
            }
        }
    }
    Ok(None)
}

/// Incremental Gaussian elimination over a field: reduces `v` against the
/// stored pivot rows and keeps it when something survives.
fn insert_if_independent(echelon: &mut Vec<(usize, Vec<Elem>)>, mut v: Vec<Elem>, field: &GaloisRing) -> bool {
    for (col, row) in echelon.iter() {
        let c = v[*col];
        if c != field.zero() {
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
    }
    let Some(col) = v.iter().position(|&x| x != field.zero()) else {
        return false;
    };
    let inv = field.inverse(v[col]).expect("nonzero field element");
    for x in v.iter_mut() {
        *x = field.mul(*x, inv);
    }
    // keep earlier rows reduced at the new pivot column
    for (_, row) in echelon.iter_mut() {
        let c = row[col];
        if c != field.zero() {
            for (x, &r) in row.iter_mut().zip(&v) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
    }
    echelon.push((col, v));
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_lang::MatrixGroup;

    fn lim() -> Limits {
        Limits::default()
    }

    fn gl(p: u64, d: usize, s: usize, f: u32) -> GaloisModule {
        let r = GaloisRing::field(p, d, &lim()).unwrap();
        GaloisModule::new(MatrixGroup::general_linear(&r, s, &lim()).unwrap(), f).unwrap()
    }

    #[test]
    fn lang_on_gl1_f4_is_identity_map() {
        let m = gl(2, 2, 1, 1);
        for x in m.group().elements() {
            assert_eq!(&lang_map(x, &m).unwrap(), x);
        }
    }

    #[test]
    fn lang_on_gl1_f9_squares() {
        let m = gl(3, 2, 1, 1);
        let r = m.ring();
        for x in m.group().elements() {
            let v = x.get(0, 0);
            assert_eq!(lang_map(x, &m).unwrap().get(0, 0), r.mul(v, v));
        }
        assert_eq!(lang_image(&m).len(), 4);
    }

    #[test]
    fn trivial_action_has_trivial_image() {
        let m = gl(2, 1, 2, 1);
        assert_eq!(m.order(), 1);
        let img = lang_image(&m);
        assert_eq!(img.len(), 1);
        assert_eq!(m.group().element(img[0]), &m.group().identity());
    }

    #[test]
    fn twisted_class_counts() {
        assert_eq!(twisted_classes(&gl(3, 2, 1, 1), &lim()).unwrap().len(), 2);
        assert_eq!(twisted_classes(&gl(2, 2, 1, 1), &lim()).unwrap().len(), 1);
        // trivial action: ordinary conjugacy classes of S_3
        assert_eq!(twisted_classes(&gl(2, 1, 2, 1), &lim()).unwrap().len(), 3);
    }

    #[test]
    fn twisted_norms_gl1() {
        let m = gl(2, 2, 1, 1);
        for a in m.group().elements() {
            assert_eq!(twisted_norm(a, &m, 2), m.group().identity());
        }
        let m9 = gl(3, 2, 1, 1);
        let r = m9.ring();
        let classes = twisted_classes(&m9, &lim()).unwrap();
        let norms: Vec<Elem> = classes.iter().map(|c| twisted_norm(&c.representative, &m9, 2).get(0, 0)).collect();
        assert_eq!(norms[0], r.pow(classes[0].representative.get(0, 0), 4));
        assert_ne!(norms[0], norms[1]);
    }

    #[test]
    fn preimages() {
        let m = gl(2, 2, 1, 1);
        let x = Matrix::from_entries(1, vec![m.ring().gen()]);
        let pre = lang_preimage(&x, &m, 3, &lim()).unwrap();
        assert_eq!(pre.extension_degree, 1);
        assert_eq!(lang_map(&pre.matrix, &m).unwrap(), x);

        let id = m.group().identity();
        let pre = lang_preimage(&id, &m, 3, &lim()).unwrap();
        assert_eq!(pre.extension_degree, 1);

        // GL_1(F_9): non-squares need F_81
        let m9 = gl(3, 2, 1, 1);
        for y in m9.group().elements() {
            let pre = lang_preimage(y, &m9, 8, &lim()).unwrap();
            let big = &pre.ring;
            let inv = pre.matrix.inverse(big).unwrap();
            let lhs = inv.mul(&pre.matrix.frobenius(1, big), big);
            assert_eq!(lhs, y.map(|a| pre.embedding.as_ref().unwrap().apply(a)));
        }
    }

    #[test]
    fn gl2_preimages_roundtrip() {
        let m = gl(2, 2, 2, 1);
        for y in m.group().elements().iter().step_by(7) {
            let pre = lang_preimage(y, &m, 3, &lim()).unwrap();
            let big = &pre.ring;
            let lhs = pre.matrix.inverse(big).unwrap().mul(&pre.matrix.frobenius(1, big), big);
            assert_eq!(lhs, y.map(|a| pre.embedding.as_ref().unwrap().apply(a)));
        }
    }
}
