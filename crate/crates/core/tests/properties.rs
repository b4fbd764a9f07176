//! Algebraic invariants, checked exhaustively on small cases and by
//! proptest on larger ones.

use std::collections::BTreeMap;

use glocal_core::exact_algebra::{Cyclotomic, GaloisRing, HalfPowerLaurent, Matrix};
use glocal_core::galois_lang::{lang_map, lang_preimage, twisted_norm, GaloisModule, MatrixGroup};
use glocal_core::hecke_satake::{
    coset_decompose, convolve, gl1_twisted_convolve, satake_transform, Gl1Element, HeckeElement, UnitCharacter,
};
use glocal_core::root_system::{
    cartan_matrix, reflect, roots_g2, roots_gl, simple_roots_gl, InnerProduct, RootSystem, RootVector,
};
use glocal_core::Limits;
use proptest::prelude::*;

fn lim() -> Limits {
    Limits::default()
}

fn small_rings() -> Vec<GaloisRing> {
    let mut out: Vec<GaloisRing> = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 4), (5, 2), (7, 2)]
        .iter()
        .map(|&(p, d)| GaloisRing::field(p, d, &lim()).unwrap())
        .collect();
    out.push(GaloisRing::new(2, 2, 2, &lim()).unwrap());
    out.push(GaloisRing::new(2, 3, 2, &lim()).unwrap());
    out.push(GaloisRing::new(3, 2, 2, &lim()).unwrap());
    out
}

#[test]
fn frobenius_is_a_ring_automorphism_of_order_d() {
    for ring in small_rings() {
        let d = ring.degree() as i64;
        let elems: Vec<_> = ring.elements().collect();
        for &a in &elems {
            assert_eq!(ring.frobenius(a, d), a);
            assert_eq!(ring.frobenius(ring.frobenius(a, 1), -1), a);
            for &b in &elems {
                let (sa, sb) = (ring.frobenius(a, 1), ring.frobenius(b, 1));
                assert_eq!(ring.frobenius(ring.add(a, b), 1), ring.add(sa, sb));
                assert_eq!(ring.frobenius(ring.mul(a, b), 1), ring.mul(sa, sb));
            }
        }
        // fixed points form the unramified subring of degree 1
        let fixed = elems.iter().filter(|&&a| ring.frobenius(a, 1) == a).count() as u64;
        assert_eq!(fixed, ring.coefficient_modulus());
    }
}

#[test]
fn frobenius_on_residues_is_the_p_power_map() {
    for ring in small_rings().into_iter().filter(|r| r.is_field()) {
        for a in ring.elements() {
            assert_eq!(ring.frobenius(a, 1), ring.pow(a, ring.p()));
        }
    }
}

#[test]
fn reduction_intertwines_frobenius_and_arithmetic() {
    for p in [2u64, 3] {
        let upper = GaloisRing::new(p, 3, 2, &lim()).unwrap();
        for level in 1..=2 {
            let lower = GaloisRing::new(p, level, 2, &lim()).unwrap();
            let elems: Vec<_> = upper.elements().collect();
            for &a in &elems {
                assert_eq!(upper.reduce(upper.frobenius(a, 1), &lower), lower.frobenius(upper.reduce(a, &lower), 1));
                for &b in elems.iter().step_by(5) {
                    let (ra, rb) = (upper.reduce(a, &lower), upper.reduce(b, &lower));
                    assert_eq!(upper.reduce(upper.mul(a, b), &lower), lower.mul(ra, rb));
                    assert_eq!(upper.reduce(upper.add(a, b), &lower), lower.add(ra, rb));
                }
            }
        }
    }
}

#[test]
fn valuation_is_additive_up_to_the_level() {
    for ring in [GaloisRing::new(2, 3, 2, &lim()).unwrap(), GaloisRing::new(3, 3, 1, &lim()).unwrap()] {
        let n = ring.level();
        for a in ring.elements() {
            for b in ring.elements() {
                let expect = (ring.valuation(a) + ring.valuation(b)).min(n);
                assert_eq!(ring.valuation(ring.mul(a, b)), expect);
            }
            if ring.is_unit(a) {
                let inv = ring.inverse(a).unwrap();
                assert_eq!(ring.inverse(inv), Some(a));
                assert_eq!(ring.mul(a, inv), ring.one());
            } else {
                assert!(ring.valuation(a) >= 1);
            }
        }
    }
}

fn gl_module(p: u64, d: usize, s: usize) -> GaloisModule {
    let ring = GaloisRing::field(p, d, &lim()).unwrap();
    GaloisModule::new(MatrixGroup::general_linear(&ring, s, &lim()).unwrap(), 1).unwrap()
}

#[test]
fn twisted_norm_conjugation_law() {
    // N_d(V A sigma(V)^-1) = V N_d(A) V^-1 when sigma^d = 1
    for s in [1, 2] {
        let m = gl_module(2, 2, s);
        let g = m.group();
        for v in g.elements() {
            let vsi = g.inv(&m.sigma(v, 1));
            let vi = g.inv(v);
            for a in g.elements() {
                let twisted = g.mul(&g.mul(v, a), &vsi);
                let lhs = twisted_norm(&twisted, &m, 2);
                let rhs = g.mul(&g.mul(v, &twisted_norm(a, &m, 2)), &vi);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn lang_preimage_round_trips() {
    for (p, d, s) in [(2, 2, 1), (3, 2, 1), (2, 2, 2)] {
        let m = gl_module(p, d, s);
        for x in m.group().elements() {
            let y = lang_map(x, &m).unwrap();
            let pre = lang_preimage(&y, &m, 2, &lim()).unwrap();
            assert_eq!(pre.extension_degree, 1);
            let emb = pre.embedding.as_ref().expect("field search reports its embedding");
            assert!(m.ring().elements().all(|a| emb.apply(a) == a));
            assert_eq!(lang_map(&pre.matrix, &m).unwrap(), y);
        }
    }
}

#[test]
fn type_a_cartan_matrix_is_tridiagonal() {
    for n in 2..=8usize {
        let a = cartan_matrix(&simple_roots_gl(n).unwrap(), &InnerProduct::standard(n)).unwrap();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let want = match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(a.entries[i][j], want, "n={n} ({i},{j})");
            }
        }
    }
}

fn root_pool() -> Vec<(Vec<RootVector>, InnerProduct)> {
    let mut out: Vec<_> = (2..=6).map(|n| (roots_gl(n), InnerProduct::standard(n))).collect();
    out.push((roots_g2(), InnerProduct::standard(3)));
    out
}

proptest! {
    #[test]
    fn reflections_are_isometric_involutions(sys in 0usize..6, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let (roots, form) = &root_pool()[sys];
        let (a, b, c) = (&roots[i % roots.len()], &roots[j % roots.len()], &roots[k % roots.len()]);
        let sb = reflect(a, b, form).unwrap();
        prop_assert!(roots.contains(&sb));
        prop_assert_eq!(&reflect(a, &sb, form).unwrap(), b);
        let sc = reflect(a, c, form).unwrap();
        prop_assert_eq!(form.eval_roots(&sb, &sc), form.eval_roots(b, c));
        prop_assert_eq!(reflect(a, a, form).unwrap(), a.neg());
    }
}

#[test]
fn weyl_group_permutes_the_roots() {
    let mut systems: Vec<RootSystem> = (2..=5).map(|n| RootSystem::gl(n).unwrap()).collect();
    systems.push(RootSystem::g2());
    for rs in systems {
        let n = rs.ambient_dim();
        let roots = if rs.cartan().unwrap().size() == 2 && rs.cartan().unwrap().entries[0][1] == -3 { roots_g2() } else { roots_gl(n) };
        let form = InnerProduct::standard(n);
        let w = rs.weyl_group(&lim()).unwrap();
        for elem in &w {
            assert!(elem.preserves_form(&form));
            let mut image: Vec<RootVector> = roots.iter().map(|r| elem.apply(r).unwrap()).collect();
            image.sort();
            let mut sorted = roots.clone();
            sorted.sort();
            assert_eq!(image, sorted);
        }
    }
    assert_eq!(RootSystem::g2().weyl_group(&lim()).unwrap().len(), 12);
}

#[test]
fn minuscule_coset_counts() {
    for p in [2u64, 3, 5] {
        assert_eq!(coset_decompose(&[1, 0], p, &lim()).unwrap().len() as u64, p + 1);
        assert_eq!(coset_decompose(&[0, -1], p, &lim()).unwrap().len() as u64, p + 1);
    }
}

fn dominant(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                let top = v.last().copied().unwrap_or(b);
                (-b..=top).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `Sat(T_lambda)(mu)` as `delta^(1/2)(p^mu)` times the number of cosets
/// `p^mu n K` in `K p^lambda K`, read off the Hermite representatives.
fn satake_by_coset_count(lambda: &[i64], p: u64) -> BTreeMap<Vec<i64>, HalfPowerLaurent> {
    let n = lambda.len();
    let mut counts: BTreeMap<Vec<i64>, i128> = BTreeMap::new();
    for g in coset_decompose(lambda, p, &lim()).unwrap() {
        let mu: Vec<i64> = (0..n).map(|i| g.shift + g.body[i][i].ilog(p as i128) as i64).collect();
        *counts.entry(mu).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(mu, c)| {
            let k: i64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| mu[j] - mu[i]).sum();
            (mu, HalfPowerLaurent::v_power(p, k).scale(c.into()))
        })
        .collect()
}

#[test]
fn satake_matches_coset_counting() {
    for p in [2u64, 3] {
        for lambda in dominant(2, 2) {
            let sat = satake_transform(&HeckeElement::basis(&lambda, p).unwrap(), &lim()).unwrap();
            let oracle = satake_by_coset_count(&lambda, p);
            assert_eq!(sat.terms(), &oracle, "lambda={lambda:?} p={p}");
        }
    }
}

fn dominates(lambda: &[i64], mu: &[i64]) -> bool {
    let mut m = mu.to_vec();
    m.sort_by(|a, b| b.cmp(a));
    let (mut sl, mut sm) = (0, 0);
    for (a, b) in lambda.iter().zip(&m) {
        sl += a;
        sm += b;
        if sm > sl {
            return false;
        }
    }
    sl == sm
}

#[test]
fn satake_is_unitriangular_in_the_dominance_order() {
    for p in [2u64, 3] {
        for lambda in dominant(2, 3) {
            let sat = satake_transform(&HeckeElement::basis(&lambda, p).unwrap(), &lim()).unwrap();
            // leading coefficient q^<rho, lambda> with 2 rho = (1, -1)
            assert_eq!(sat.coefficient(&lambda), HalfPowerLaurent::v_power(p, lambda[0] - lambda[1]));
            for mu in sat.terms().keys() {
                assert!(dominates(&lambda, mu), "{mu:?} above {lambda:?}");
            }
        }
    }
}

#[cfg(feature = "rank3")]
#[test]
fn rank_three_satake() {
    let p = 2;
    let s = satake_transform(&HeckeElement::basis(&[1, 0, 0], p).unwrap(), &lim()).unwrap();
    let v2 = HalfPowerLaurent::v_power(p, 2);
    for mu in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        assert_eq!(s.coefficient(&mu), v2);
    }
    assert_eq!(s.terms(), &satake_by_coset_count(&[1, 0, 0], p));
    let s2 = satake_transform(&HeckeElement::basis(&[1, 1, 0], p).unwrap(), &lim()).unwrap();
    assert_eq!(s2.terms(), &satake_by_coset_count(&[1, 1, 0], p));
    let prod = convolve(&HeckeElement::basis(&[1, 0, 0], p).unwrap(), &HeckeElement::basis(&[0, 0, -1], p).unwrap(), &lim()).unwrap();
    let lhs = satake_transform(&prod, &lim()).unwrap();
    let rhs = s.mul(&satake_transform(&HeckeElement::basis(&[0, 0, -1], p).unwrap(), &lim()).unwrap());
    assert_eq!(lhs, rhs);
}

fn hecke(p: u64, terms: &[(Vec<i64>, i128)]) -> HeckeElement {
    HeckeElement::from_terms(2, p, terms.iter().map(|(l, c)| (l.clone(), HalfPowerLaurent::from_int(p, *c)))).unwrap()
}

fn small_dominant() -> impl Strategy<Value = Vec<i64>> {
    (-1i64..=1, 0i64..=1).prop_map(|(b, gap)| vec![b + gap, b])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_algebra_is_commutative_and_associative(
        p in prop_oneof![Just(2u64), Just(3u64)],
        a in small_dominant(), b in small_dominant(), c in small_dominant(),
        ca in -3i128..=3, cb in 1i128..=3,
    ) {
        let f = hecke(p, &[(a.clone(), ca), (b.clone(), cb)]);
        let g = hecke(p, &[(b, 1), (c.clone(), 2)]);
        let h = hecke(p, &[(c, 1)]);
        let fg = convolve(&f, &g, &lim()).unwrap();
        prop_assert_eq!(&fg, &convolve(&g, &f, &lim()).unwrap());
        let left = convolve(&fg, &h, &lim()).unwrap();
        let right = convolve(&f, &convolve(&g, &h, &lim()).unwrap(), &lim()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(convolve(&f, &HeckeElement::unit(2, p), &lim()).unwrap(), f);
    }
}

fn laurent_mul(a: &BTreeMap<i64, i128>, b: &BTreeMap<i64, i128>) -> BTreeMap<i64, i128> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn gl1(chi: &UnitCharacter, poly: &BTreeMap<i64, i128>) -> Gl1Element {
    Gl1Element::from_terms(chi.clone(), poly.iter().map(|(&m, &c)| (m, Cyclotomic::int(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_gl1_algebra_is_laurent_polynomials(
        which in 0usize..4,
        f in prop::collection::btree_map(-3i64..=3, -4i128..=4, 0..4),
        g in prop::collection::btree_map(-3i64..=3, -4i128..=4, 0..4),
    ) {
        let chi = match which {
            0 => UnitCharacter::trivial(3),
            1 => UnitCharacter::tame(5, 1).unwrap(),
            2 => UnitCharacter::tame(7, 2).unwrap(),
            _ => UnitCharacter::tame(11, 3).unwrap(),
        };
        let f: BTreeMap<i64, i128> = f.into_iter().filter(|(_, c)| *c != 0).collect();
        let g: BTreeMap<i64, i128> = g.into_iter().filter(|(_, c)| *c != 0).collect();
        let got = gl1_twisted_convolve(&gl1(&chi, &f), &gl1(&chi, &g)).unwrap();
        prop_assert_eq!(got, gl1(&chi, &laurent_mul(&f, &g)));
    }

    #[test]
    fn matrix_inverse_is_an_involution(i in 0usize..180, j in 0usize..180) {
        let ring = GaloisRing::field(2, 2, &lim()).unwrap();
        let g = MatrixGroup::general_linear(&ring, 2, &lim()).unwrap();
        let (a, b): (&Matrix, &Matrix) = (g.element(i), g.element(j));
        let ai = a.inverse(&ring).unwrap();
        prop_assert_eq!(&ai.inverse(&ring).unwrap(), a);
        prop_assert_eq!(a.mul(b, &ring).inverse(&ring).unwrap(), b.inverse(&ring).unwrap().mul(&ai, &ring));
        prop_assert_eq!(a.mul(b, &ring).frobenius(1, &ring), a.frobenius(1, &ring).mul(&b.frobenius(1, &ring), &ring));
    }
}
