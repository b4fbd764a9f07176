//! Batches: `paper-audit` runs the ten acceptance criteria in order, `full`
//! adds seeded randomized property checks.

use glocal_core::building::{
    audit_ub_factorization, conjugate_pattern, fundamental_simplices, is_upper_triangular, iwasawa_decompose,
    ValuationPattern,
};
use glocal_core::exact_algebra::{Cyclotomic, Elem, GaloisRing, HalfPowerLaurent, Matrix, Rational, RationalMatrix, ScaledMatrix, SymPoly, XPoly};
use glocal_core::galois_lang::{dm_bijection_check, h1_cyclic, h1_level_tower, lang_image, lang_map, lang_preimage, GaloisModule, MatrixGroup};
use glocal_core::hecke_satake::{chi_t, convolve, gl1_twisted_convolve, satake_transform, Gl1Element, HeckeElement, SatakeImage, UnitCharacter};
use glocal_core::lfactor::{l_factor_split, rankin_selberg, DualRep, SatakeParameter};
use glocal_core::root_system::{cartan_matrix, ds_decompose, simple_roots_g2, InnerProduct, RootSystem};
use glocal_core::Limits;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{CliError, CliResult, Outcome, Status, Verdict};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: ToString>(e: E) -> String {
    e.to_string()
}

fn field_module(p: u64, d: usize, s: usize, limits: &Limits) -> Result<GaloisModule, String> {
    let ring = GaloisRing::field(p, d, limits).map_err(e2s)?;
    GaloisModule::new(MatrixGroup::general_linear(&ring, s, limits).map_err(e2s)?, 1).map_err(e2s)
}

fn c1(_: &Limits) -> Check {
    let form = InnerProduct::standard(3);
    let simple = simple_roots_g2();
    let a = cartan_matrix(&simple, &form).map_err(e2s)?;
    ensure(a.entries == vec![vec![2, -3], vec![-1, 2]], format!("A = {:?}", a.entries))?;
    let ds = ds_decompose(&simple, &form).map_err(e2s)?;
    let r = |n, d| Rational::new(n, d);
    ensure(ds.d == vec![r(3, 1), r(1, 1)], "D != diag(3,1)")?;
    ensure(ds.s == RationalMatrix::from_rows(vec![vec![r(2, 3), r(-1, 1)], vec![r(-1, 1), r(2, 1)]]), "S != [[2/3,-1],[-1,2]]")?;
    ensure(ds.reproduces(), "D S != A")?;
    ensure(ds.minors == vec![r(2, 3), r(1, 3)], "minors")?;
    Ok("A = [[2,-3],[-1,2]], D = diag(3,1), S = [[2/3,-1],[-1,2]], minors 2/3, 1/3".into())
}

fn c2(limits: &Limits) -> Check {
    for n in 2..=6usize {
        let rs = RootSystem::gl(n).map_err(e2s)?;
        let rep = rs.check();
        ensure(rep.passes_ii_to_iv() && rep.primed_forms_agree, format!("A_{} axioms", n - 1))?;
        let w = rs.weyl_group(limits).map_err(e2s)?.len();
        ensure(w == (1..=n).product::<usize>(), format!("|W(A_{})| = {w}", n - 1))?;
    }
    Ok("A_1..A_5 satisfy (ii)-(iv) and primed forms; |W| = n!".into())
}

fn c3(limits: &Limits) -> Check {
    for (p, d, s) in [(2, 2, 1), (3, 2, 1), (2, 2, 2)] {
        let h = h1_cyclic(&field_module(p, d, s, limits)?).h1();
        ensure(h == 1, format!("GL_{s}(F_{}): |H^1| = {h}", p.pow(d as u32)))?;
    }
    for s in [1, 2] {
        let t = h1_level_tower(s, 2, 2, 2, limits).map_err(e2s)?;
        ensure(t.levels.iter().all(|l| l.h1 == 1) && t.levels.len() == 2, format!("GL_{s} over (Z/4)[x]/(x^2+x+1)"))?;
    }
    Ok("|H^1| = 1 for GL_1(F_4), GL_1(F_9), GL_2(F_4) and GL_1, GL_2 at levels 1, 2".into())
}

fn c4(limits: &Limits) -> Check {
    for (q, d) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let img = lang_image(&field_module(q, d, 1, limits)?).len() as u64;
        ensure(img == (q.pow(d as u32) - 1) / (q - 1), format!("(q,d)=({q},{d}): {img}"))?;
    }
    Ok("image sizes 3, 4, 7".into())
}

fn c5(limits: &Limits) -> Check {
    let mut sizes = Vec::new();
    for (s, q, n) in [(1, 2, 2), (1, 3, 2), (2, 2, 2)] {
        let r = dm_bijection_check(s, q, n, limits).map_err(e2s)?;
        ensure(r.is_bijection() && r.well_defined != Some(false), format!("({s},{q},{n})"))?;
        sizes.push(r.left_classes.len());
    }
    ensure(sizes[2] == 3, format!("GL_2(F_2): {} classes", sizes[2]))?;
    Ok(format!("class counts {sizes:?}, all bijective"))
}

fn c6(_: &Limits) -> Check {
    for (n, count) in [(2, 3), (3, 7), (5, 31)] {
        ensure(fundamental_simplices(n).map_err(e2s)?.len() == count, format!("n={n}"))?;
    }
    let displays: [([i64; 3], [[i64; 3]; 3]); 3] = [
        ([1, 0, 0], [[0, 1, 1], [-1, 0, 0], [-1, 0, 0]]),
        ([0, 1, 0], [[0, -1, 0], [1, 0, 1], [0, -1, 0]]),
        ([0, 0, 1], [[0, 0, -1], [0, 0, -1], [1, 1, 0]]),
    ];
    for (e, m) in displays {
        let got = conjugate_pattern(&ValuationPattern::standard(3), &e);
        ensure(got.entries == m.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), format!("e={e:?}"))?;
    }
    Ok("3/7/31 simplices; three GL_3 conjugate patterns reproduced".into())
}

fn random_iwasawa(rng: &mut ChaCha8Rng, ring: &GaloisRing, n: usize, samples: usize) -> Result<(), String> {
    let mut done = 0;
    while done < samples {
        let body = Matrix::from_entries(n, (0..n * n).map(|_| Elem(rng.gen_range(0..ring.size()))).collect());
        let g = ScaledMatrix::new(rng.gen_range(-2..=2), body);
        if g.det_valuation(ring).is_err() {
            continue;
        }
        let d = iwasawa_decompose(&g, ring).map_err(e2s)?;
        ensure(d.b.body.mul(&d.k, ring) == g.body && d.b.offset == g.offset, "b k != g")?;
        ensure(is_upper_triangular(&d.b.body, ring) && ring.is_unit(d.k.det(ring)), "factor shapes")?;
        done += 1;
    }
    Ok(())
}

fn c7(limits: &Limits, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [2u64, 3] {
        random_iwasawa(&mut rng, &GaloisRing::new(p, 6, 1, limits).map_err(e2s)?, 2, 500)?;
        let ring = GaloisRing::field(p, 1, limits).map_err(e2s)?;
        let g = MatrixGroup::general_linear(&ring, 2, limits).map_err(e2s)?;
        for x in g.elements() {
            let d = iwasawa_decompose(&ScaledMatrix::integral(x.clone()), &ring).map_err(e2s)?;
            ensure(d.b.body.mul(&d.k, &ring) == *x && g.contains(&d.k), "residue decomposition")?;
        }
    }
    Ok("1000 random GL_2 elements at precision 6 and all of GL_2(F_2), GL_2(F_3)".into())
}

fn c8(limits: &Limits) -> Result<(Status, String), String> {
    let a = audit_ub_factorization(2, 2, 1, limits).map_err(e2s)?;
    let ring = GaloisRing::field(2, 1, limits).map_err(e2s)?;
    let swap = Matrix::from_ints(&ring, &[&[0, 1], &[1, 0]]);
    ensure((a.product_size, a.group_order) == (4, 6), format!("{} of {}", a.product_size, a.group_order))?;
    ensure(a.counterexamples.contains(&swap), "(0,1;1,0) missing")?;
    let status = if a.holds() { Status::Pass } else { Status::Documented };
    Ok((status, format!("U B covers {} of {} elements; counterexample (0,1;1,0)", a.product_size, a.group_order)))
}

fn t(l: &[i64], p: u64) -> Result<HeckeElement, String> {
    HeckeElement::basis(l, p).map_err(e2s)
}

fn box2(b: i64) -> Vec<Vec<i64>> {
    (-b..=b).flat_map(|x| (-b..=x).map(move |y| vec![x, y])).collect()
}

fn c9(limits: &Limits) -> Check {
    for p in [2u64, 3] {
        let v = HalfPowerLaurent::v_power(p, 1);
        let s10 = satake_transform(&t(&[1, 0], p)?, limits).map_err(e2s)?;
        ensure(s10 == SatakeImage::from_terms(2, p, [(vec![1, 0], v.clone()), (vec![0, 1], v)]), "Sat T10")?;
        let s11 = satake_transform(&t(&[1, 1], p)?, limits).map_err(e2s)?;
        ensure(s11 == SatakeImage::from_terms(2, p, [(vec![1, 1], HalfPowerLaurent::one(p))]), "Sat T11")?;
        let basis = box2(2);
        let sat: Vec<SatakeImage> =
            basis.iter().map(|l| satake_transform(&t(l, p)?, limits).map_err(e2s)).collect::<Result<_, _>>()?;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let prod = convolve(&t(a, p)?, &t(b, p)?, limits).map_err(e2s)?;
                let lhs = satake_transform(&prod, limits).map_err(e2s)?;
                ensure(lhs.is_weyl_invariant() && lhs == sat[i].mul(&sat[j]), format!("p={p}: {a:?} * {b:?}"))?;
            }
        }
        let sq = convolve(&t(&[1, 0], p)?, &t(&[1, 0], p)?, limits).map_err(e2s)?;
        let want = HeckeElement::from_terms(2, p, [(vec![2, 0], HalfPowerLaurent::one(p)), (vec![1, 1], HalfPowerLaurent::from_int(p, p as i128 + 1))])
            .map_err(e2s)?;
        ensure(sq == want, "T10^2 = T20 + (q+1) T11")?;
        ensure(satake_transform(&sq, limits).map_err(e2s)? == s10.mul(&s10), "Sat(T10^2)")?;
    }
    Ok("Sat T10 = v(e10 + e01), Sat T11 = e11; homomorphism on |lambda_i| <= 2 for p = 2, 3".into())
}

fn c10(limits: &Limits) -> Check {
    let names = ["a", "b", "c"];
    let reps = [DualRep::Trivial, DualRep::Standard, DualRep::Dual, DualRep::Sym(2), DualRep::Sym(3), DualRep::Wedge(2)];
    for n in 1..=3 {
        let tp = SatakeParameter::symbols(3, &names[..n]);
        for rho in &reps {
            let f = l_factor_split(rho, &[&tp]).map_err(e2s)?;
            ensure(f.denominator.degree().unwrap_or(0) as u64 == rho.dimension(&[n]), format!("{rho} on rank {n}"))?;
        }
    }
    let alpha = SymPoly::var("alpha");
    for d in [2u32, 3] {
        let prod = (0..d).fold(XPoly::one(), |acc, j| &acc * &XPoly::one_minus(alpha.scale(&Cyclotomic::zeta(d, j as i64)), 1));
        ensure(prod == XPoly::one_minus(alpha.pow(d), d as usize), format!("norm identity d={d}"))?;
    }
    let rs = rankin_selberg(&SatakeParameter::symbols(2, &["a1", "a2"]), &SatakeParameter::symbols(2, &["b1", "b2"])).map_err(e2s)?;
    ensure(rs.denominator.degree() == Some(4), "Rankin-Selberg degree")?;
    let ab = SatakeParameter::symbols(2, &["alpha", "beta"]);
    let f = l_factor_split(&DualRep::Standard, &[&ab]).map_err(e2s)?;
    let s10 = satake_transform(&HeckeElement::basis(&[1, 0], 2).map_err(e2s)?, limits).map_err(e2s)?;
    let chi = chi_t(&s10, ab.values()).map_err(e2s)?;
    let vinv = SymPoly::var("v").pow_i(-1).map_err(e2s)?;
    ensure(f.denominator.coeff(1) == -&(&vinv * &chi), "chi_t linkage")?;
    Ok("degrees equal dim rho; norm identity d = 2, 3; GL_2 x GL_2 degree 4; X-coefficient -v^-1 chi_t(Sat T10)".into())
}

const TOPICS: [&str; 10] = [
    "Cartan matrix of G2 and its DS factorization",
    "root system axioms for A_(n-1)",
    "Lang's theorem and Hilbert 90 at finite level",
    "image of the Lang map on GL_1",
    "twisted classes vs conjugacy classes",
    "faces of the fundamental chamber and their stabilizers",
    "Iwasawa decomposition",
    "residue-level U B factorization",
    "Satake transform of the spherical Hecke algebra",
    "local L-factors, base change and Satake linkage",
];

fn audit(limits: &Limits, seed: u64) -> (Vec<Value>, Vec<Verdict>) {
    let mut card = Vec::new();
    let mut verdicts = Vec::new();
    for (i, topic) in TOPICS.iter().enumerate() {
        let res: Result<(Status, String), String> = match i {
            0 => c1(limits).map(|d| (Status::Pass, d)),
            1 => c2(limits).map(|d| (Status::Pass, d)),
            2 => c3(limits).map(|d| (Status::Pass, d)),
            3 => c4(limits).map(|d| (Status::Pass, d)),
            4 => c5(limits).map(|d| (Status::Pass, d)),
            5 => c6(limits).map(|d| (Status::Pass, d)),
            6 => c7(limits, seed).map(|d| (Status::Pass, d)),
            7 => c8(limits),
            8 => c9(limits).map(|d| (Status::Pass, d)),
            _ => c10(limits).map(|d| (Status::Pass, d)),
        };
        let (status, detail) = res.unwrap_or_else(|e| (Status::Fail, e));
        card.push(json!({ "criterion": i + 1, "topic": topic, "status": status, "detail": detail }));
        verdicts.push(Verdict { anchor: (*topic).into(), claim: format!("criterion {}", i + 1), status, detail: Some(detail) });
    }
    (card, verdicts)
}

fn randomized(limits: &Limits, seed: u64) -> Vec<(&'static str, Result<(), String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    out.push(("Iwasawa decomposition", (|| {
        random_iwasawa(&mut rng, &GaloisRing::new(2, 8, 1, limits).map_err(e2s)?, 3, 200)?;
        random_iwasawa(&mut rng, &GaloisRing::new(3, 4, 2, limits).map_err(e2s)?, 2, 200)
    })()));

    out.push(("Frobenius on Galois rings", (|| {
        for ring in [GaloisRing::field(3, 5, limits).map_err(e2s)?, GaloisRing::new(2, 4, 3, limits).map_err(e2s)?] {
            for _ in 0..500 {
                let a = Elem(rng.gen_range(0..ring.size()));
                let b = Elem(rng.gen_range(0..ring.size()));
                let s = |x| ring.frobenius(x, 1);
                ensure(s(ring.mul(a, b)) == ring.mul(s(a), s(b)) && s(ring.add(a, b)) == ring.add(s(a), s(b)), "sigma not a ring map")?;
                ensure(ring.frobenius(a, ring.degree() as i64) == a, "sigma^d != 1")?;
            }
        }
        Ok(())
    })()));

    out.push(("Lang's theorem", (|| {
        let m = field_module(3, 2, 2, limits)?;
        let g = m.group();
        for _ in 0..20 {
            let x = g.element(rng.gen_range(0..g.order()));
            let y = lang_map(x, &m).map_err(e2s)?;
            let pre = lang_preimage(&y, &m, 2, limits).map_err(e2s)?;
            ensure(lang_map(&pre.matrix, &m).map_err(e2s)? == y, "preimage round trip")?;
        }
        Ok(())
    })()));

    out.push(("Satake isomorphism", (|| {
        let basis = box2(2);
        for _ in 0..6 {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            let a = &basis[rng.gen_range(0..basis.len())];
            let b = &basis[rng.gen_range(0..basis.len())];
            let (fa, fb) = (t(a, p)?, t(b, p)?);
            let prod = convolve(&fa, &fb, limits).map_err(e2s)?;
            ensure(prod == convolve(&fb, &fa, limits).map_err(e2s)?, "not commutative")?;
            let lhs = satake_transform(&prod, limits).map_err(e2s)?;
            let rhs = satake_transform(&fa, limits).map_err(e2s)?.mul(&satake_transform(&fb, limits).map_err(e2s)?);
            ensure(lhs == rhs, format!("p={p}: Sat({a:?} * {b:?})"))?;
        }
        Ok(())
    })()));

    out.push(("twisted Hecke algebra of GL_1", (|| {
        let chi = UnitCharacter::tame(7, 1).map_err(e2s)?;
        for _ in 0..20 {
            let (m, k) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            let c = rng.gen_range(1..=5);
            let f = Gl1Element::from_terms(chi.clone(), [(m, Cyclotomic::int(c))]);
            let g = Gl1Element::basis(chi.clone(), k);
            let got = gl1_twisted_convolve(&f, &g).map_err(e2s)?;
            ensure(got == Gl1Element::from_terms(chi.clone(), [(m + k, Cyclotomic::int(c))]), "1_m * 1_k")?;
        }
        Ok(())
    })()));
    out
}

pub fn run(name: &str, limits: &Limits, seed: u64) -> CliResult<Outcome> {
    let full = match name {
        "paper-audit" => false,
        "full" => true,
        _ => return Err(CliError::invalid(format!("unknown suite {name}; expected paper-audit or full"))),
    };
    let (card, mut verdicts) = audit(limits, seed);
    let mut results = json!({ "suite": name, "scorecard": card });
    if full {
        let mut props = Vec::new();
        for (topic, r) in randomized(limits, seed) {
            let status = if r.is_ok() { Status::Pass } else { Status::Fail };
            let mut v = Verdict { anchor: topic.into(), claim: "seeded randomized property".into(), status, detail: None };
            if let Err(e) = &r {
                v = v.with_detail(e.clone());
            }
            props.push(json!({ "topic": topic, "status": status }));
            verdicts.push(v);
        }
        results["properties"] = Value::Array(props);
    }
    let verified = verdicts.iter().filter(|v| v.status == Status::Pass).count();
    let documented = verdicts.iter().filter(|v| v.status == Status::Documented).count();
    results["verified"] = json!(verified);
    results["documented"] = json!(documented);
    Ok(Outcome::new(results, verdicts))
}
