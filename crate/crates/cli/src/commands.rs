use std::collections::BTreeMap;

use glocal_core::building::{
    audit_self_normalizing, audit_ub_factorization, conjugate_pattern, fundamental_simplices, is_upper_triangular,
    iwasawa_decompose, pattern_intersect, stabilizer_pattern, ChamberSimplex, ValuationPattern,
};
use glocal_core::exact_algebra::{
    Cyclotomic, Elem, GaloisRing, HalfPowerLaurent, Matrix, Rational, ScaledMatrix, SymPoly, XPoly,
};
use glocal_core::galois_lang::{dm_bijection_check, h1_level_tower, lang_image, lang_preimage, GaloisModule, MatrixGroup};
use glocal_core::hecke_satake::{convolve, gl1_twisted_convolve, satake_transform, Gl1Element, HeckeElement, SatakeImage, UnitCharacter};
use glocal_core::lfactor::{base_change_factor, l_factor_split, rankin_selberg, DualRep, DualTorusElement, LocalLFactor, SatakeParameter};
use glocal_core::root_system::{cartan_matrix, ds_decompose, is_cartan, InnerProduct, RootSystem, RootVector};
use glocal_core::Limits;
use serde_json::{json, Value};

use crate::args::{AuditKind, BuildingCmd, GroupName, HeckeCmd, LangCmd, LfactorArgs, LfactorCmd, RepArgs, RootsCmd};
use crate::report::{CliError, CliResult, Outcome, Verdict};

pub fn codes(m: &Matrix) -> Vec<Vec<u64>> {
    let n = m.size();
    (0..n).map(|i| (0..n).map(|j| m.get(i, j).0).collect()).collect()
}

pub fn roots_json(rs: &[RootVector]) -> Vec<Vec<i64>> {
    rs.iter().map(|r| r.0.clone()).collect()
}

pub fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn xpoly(p: &XPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// `v^a * (c)` for a single half power, the plain sum otherwise.
pub fn half_power(h: &HalfPowerLaurent) -> String {
    match h.as_monomial() {
        Some((c, k)) => format!("v^{k} * ({c})"),
        None => h.to_string(),
    }
}

pub fn satake_json(s: &SatakeImage) -> Value {
    Value::Array(s.terms().iter().map(|(l, c)| json!({ "lambda": l, "coeff": half_power(c) })).collect())
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::invalid(format!("{what}: {e}")))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn roots(cmd: &RootsCmd, limits: &Limits) -> CliResult<Outcome> {
    let (name, rs, weyl_order) = match cmd {
        RootsCmd::Gl { n } => (format!("gl{n}"), RootSystem::gl(*n)?, factorial(*n)),
        RootsCmd::G2 => ("g2".to_string(), RootSystem::g2(), 12),
    };
    let report = rs.check();
    let a = rs.cartan()?;
    let w = rs.weyl_group(limits)?;
    let results = json!({
        "system": name,
        "roots": roots_json(&rs.roots),
        "simple": roots_json(&rs.simple),
        "cartan": a.entries,
        "axioms": report,
        "weyl_order": w.len(),
    });
    let verdicts = vec![
        Verdict::check("root system axioms", "reduced, reflection closed, integral pairings", report.passes_ii_to_iv()),
        Verdict::check("root system axioms, primed forms", "primed reformulations agree with the originals", report.primed_forms_agree),
        Verdict::check("Weyl group", "order of the group generated by simple reflections", w.len() == weyl_order)
            .with_detail(format!("{} elements, expected {weyl_order}", w.len())),
    ];
    Ok(Outcome::new(results, verdicts))
}

pub fn cartan(roots: &str, check: bool, ds: bool) -> CliResult<Outcome> {
    let simple: Vec<Vec<i64>> = parse_json("--roots", roots)?;
    let dim = simple.first().map(Vec::len).ok_or_else(|| CliError::invalid("--roots is empty"))?;
    if simple.iter().any(|r| r.len() != dim) {
        return Err(CliError::invalid("--roots vectors differ in length"));
    }
    let simple: Vec<RootVector> = simple.into_iter().map(RootVector).collect();
    let form = InnerProduct::standard(dim);
    let a = cartan_matrix(&simple, &form)?;
    let mut results = json!({ "cartan": a.entries });
    let mut verdicts = Vec::new();
    if check {
        let c = is_cartan(&a);
        results["check"] = json!({
            "generalized": c.generalized,
            "cartan": c.cartan,
            "defect": c.defect.map(|d| format!("{d:?}")),
        });
        verdicts.push(Verdict::check("Cartan matrix conditions", "A is a Cartan matrix", c.cartan));
    }
    if ds {
        let d = ds_decompose(&simple, &form)?;
        results["ds"] = json!({
            "d": rats(&d.d),
            "s": d.s.to_strings(),
            "minors": rats(&d.minors),
            "scale_vs_formula": rats(&d.scale_vs_formula),
        });
        verdicts.push(Verdict::check("DS factorization", "D S reproduces A with S symmetric", d.reproduces() && d.s.is_symmetric()));
        verdicts.push(Verdict::check(
            "DS factorization",
            "leading minors of S are positive",
            d.minors.iter().all(|m| *m > Rational::from_integer(0)),
        ));
    }
    if verdicts.is_empty() {
        verdicts.push(Verdict::check("Cartan matrix", "diagonal entries equal 2", (0..a.size()).all(|i| a.entries[i][i] == 2)));
    }
    Ok(Outcome::new(results, verdicts))
}

fn gl_module(p: u64, d: usize, s: usize, limits: &Limits) -> CliResult<GaloisModule> {
    let ring = GaloisRing::field(p, d, limits)?;
    Ok(GaloisModule::new(MatrixGroup::general_linear(&ring, s, limits)?, 1)?)
}

pub fn lang(cmd: &LangCmd, limits: &Limits) -> CliResult<Outcome> {
    match *cmd {
        LangCmd::Image { p, d, s } => {
            let m = gl_module(p, d, s, limits)?;
            let image = lang_image(&m).len();
            let order = m.group().order();
            let fixed = m.fixed_indices().len();
            let mut verdicts = vec![Verdict::check("Lang map", "image size is |G| / |G^sigma|", image * fixed == order)];
            if s == 1 {
                let q = p;
                let expect = (q.pow(d as u32) - 1) / (q - 1);
                verdicts.push(
                    Verdict::check("Lang map on GL_1", "image is the norm-one torus of size (q^d - 1)/(q - 1)", image as u64 == expect)
                        .with_detail(format!("{image} vs {expect}")),
                );
            }
            Ok(Outcome::new(json!({ "group_order": order, "fixed_order": fixed, "image_size": image }), verdicts))
        }
        LangCmd::Preimage { p, d, ref matrix, max_ext } => {
            let rows: Vec<Vec<u64>> = parse_json("--matrix", matrix)?;
            let s = rows.len();
            let m = gl_module(p, d, s, limits)?;
            let q = m.ring().size();
            if rows.iter().any(|r| r.len() != s || r.iter().any(|&c| c >= q)) {
                return Err(CliError::invalid(format!("--matrix must be square with codes below {q}")));
            }
            let y = Matrix::from_entries(s, rows.concat().into_iter().map(Elem).collect());
            let pre = lang_preimage(&y, &m, max_ext, limits)?;
            let ext = &pre.ring;
            let yb = match &pre.embedding {
                Some(e) => y.map(|a| e.apply(a)),
                None => y.clone(),
            };
            let x = &pre.matrix;
            let back = x.inverse(ext)?.mul(&x.frobenius(m.frob_step() as i64, ext), ext);
            let results = json!({
                "extension_degree": pre.extension_degree,
                "excluded_degrees": pre.excluded_degrees,
                "field_order": ext.size(),
                "x": codes(x),
            });
            Ok(Outcome::new(results, vec![Verdict::check("Lang's theorem", "X^-1 sigma(X) = Y over the extension", back == yb)]))
        }
    }
}

pub fn h1(group: GroupName, s: usize, p: u64, d: usize, level: u32, limits: &Limits) -> CliResult<Outcome> {
    let GroupName::Gl = group;
    if level == 0 {
        return Err(CliError::invalid("--level must be at least 1"));
    }
    let t = h1_level_tower(s, p, d, level, limits)?;
    let results = json!({
        "levels": t.levels.iter().map(|l| json!({"level": l.level, "group_order": l.group_order, "cocycles": l.cocycles, "h1": l.h1})).collect::<Vec<_>>(),
        "kernels": t.kernels.iter().map(|k| json!({"k": k.k, "level": k.level, "group_order": k.group_order, "h1": k.h1})).collect::<Vec<_>>(),
        "reductions": t.reductions.iter().map(|r| json!({"from": r.from, "surjective": r.surjective, "classes_compatible": r.classes_compatible})).collect::<Vec<_>>(),
    });
    let verdicts = vec![
        Verdict::check("Lang's theorem at finite level", "H^1 of GL_s and of every congruence kernel is trivial", t.all_trivial()),
        Verdict::check("reduction between levels", "reduction is surjective and respects classes", t.reductions_ok()),
    ];
    Ok(Outcome::new(results, verdicts))
}

pub fn dm_check(s: usize, q: u64, n: u32, limits: &Limits) -> CliResult<Outcome> {
    let r = dm_bijection_check(s, q, n, limits)?;
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|pr| {
            json!({
                "right": pr.right,
                "left": pr.left,
                "extension_degree": pr.extension_degree,
                "char_poly": pr.char_poly.iter().map(|e| e.0).collect::<Vec<_>>(),
            })
        })
        .collect();
    let results = json!({
        "left_classes": r.left_classes.iter().map(|c| json!({"representative": codes(&c.representative), "size": c.size})).collect::<Vec<_>>(),
        "right_classes": r.right_classes.iter().map(|c| json!({"representative": codes(&c.representative), "size": c.size})).collect::<Vec<_>>(),
        "matched": r.pairs.len(),
        "pairs": pairs,
        "fixed_field_orbits": r.fixed_field_orbits,
        "well_defined": r.well_defined,
    });
    let mut verdicts = vec![Verdict::check(
        "twisted classes vs conjugacy classes",
        "the Lang-preimage correspondence is a bijection",
        r.is_bijection(),
    )
    .with_detail(format!("{} left, {} right", r.left_classes.len(), r.right_classes.len()))];
    if let Some(w) = r.well_defined {
        verdicts.push(Verdict::check("twisted classes vs conjugacy classes", "the class of the image is independent of choices", w));
    }
    let small = &r.small;
    let conj_ok = r.pairs.iter().all(|pr| {
        let target = &r.left_classes[pr.left].representative;
        pr.conjugator.inverse(small).map(|ci| pr.conjugator.mul(&pr.image, small).mul(&ci, small) == *target).unwrap_or(false)
    });
    verdicts.push(Verdict::check("twisted classes vs conjugacy classes", "each image is conjugate to its class representative", conj_ok));
    Ok(Outcome::new(results, verdicts))
}

pub fn building(cmd: &BuildingCmd, limits: &Limits) -> CliResult<Outcome> {
    match cmd {
        BuildingCmd::Simplices { n } => {
            let simplices = fundamental_simplices(*n)?;
            let list: Vec<&[usize]> = simplices.iter().map(ChamberSimplex::vertices).collect();
            let expect = (1usize << n) - 1;
            let results = json!({ "count": list.len(), "simplices": list });
            Ok(Outcome::new(
                results,
                vec![Verdict::check("faces of the fundamental chamber", "nonempty subsets of the n chamber vertices", list.len() == expect)],
            ))
        }
        BuildingCmd::Pattern { simplex, n } => {
            let s = ChamberSimplex::new(*n, simplex)?;
            let pattern = stabilizer_pattern(&s);
            let via = s
                .vertices()
                .iter()
                .map(|&k| {
                    let e: Vec<i64> = (0..*n).map(|i| i64::from(i < k)).collect();
                    conjugate_pattern(&ValuationPattern::standard(*n), &e)
                })
                .reduce(|a, b| pattern_intersect(&a, &b))
                .expect("simplex is nonempty");
            let results = json!({ "vertices": s.vertices(), "pattern": pattern.entries, "spread": pattern.spread() });
            Ok(Outcome::new(
                results,
                vec![Verdict::check(
                    "simplex stabilizers",
                    "stabilizer is the intersection of conjugates of GL_n(O) by the vertex coweights",
                    via.entries == pattern.entries,
                )],
            ))
        }
        BuildingCmd::Iwasawa { matrix, p, precision, offset } => {
            let rows: Vec<Vec<i64>> = parse_json("--matrix", matrix)?;
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::invalid("--matrix must be a nonempty square"));
            }
            let ring = GaloisRing::new(*p, *precision, 1, limits)?;
            let body = Matrix::from_entries(n, rows.concat().into_iter().map(|x| ring.from_int(x)).collect());
            let g = ScaledMatrix::new(*offset, body);
            let iw = iwasawa_decompose(&g, &ring)?;
            let results = json!({
                "b": { "offset": iw.b.offset, "body": codes(&iw.b.body) },
                "k": codes(&iw.k),
                "modulus": ring.size(),
            });
            let verdicts = vec![
                Verdict::check("Iwasawa decomposition", "g = b k", iw.b.body.mul(&iw.k, &ring) == g.body && iw.b.offset == g.offset),
                Verdict::check("Iwasawa decomposition", "b is upper triangular", is_upper_triangular(&iw.b.body, &ring)),
                Verdict::check("Iwasawa decomposition", "k lies in GL_n(O)", ring.is_unit(iw.k.det(&ring))),
            ];
            Ok(Outcome::new(results, verdicts))
        }
        BuildingCmd::Audit { kind: AuditKind::Ub, n, p, level } => {
            let a = audit_ub_factorization(*n, *p, *level, limits)?;
            let shown: Vec<Vec<Vec<u64>>> = a.counterexamples.iter().take(16).map(codes).collect();
            let results = json!({
                "group_order": a.group_order,
                "u_order": a.u_order,
                "b_order": a.b_order,
                "product_size": a.product_size,
                "counterexample_count": a.counterexamples.len(),
                "counterexamples": shown,
            });
            let v = Verdict::audit("residue-level U B factorization", "every element of GL_n(O/p^k) is u b", a.holds())
                .with_detail(format!("product set {} of {}", a.product_size, a.group_order));
            Ok(Outcome::new(results, vec![v]))
        }
        BuildingCmd::Audit { kind: AuditKind::Selfnorm, n, p, .. } => {
            let a = audit_self_normalizing(*n, *p, limits)?;
            let results = json!({
                "group_order": a.group_order,
                "subgroup_order": a.subgroup_order,
                "normalizer_order": a.normalizer_order,
            });
            let v = Verdict::audit("residue-level self-normalization", "the lower constant-diagonal subgroup is self-normalizing", a.self_normalizing())
                .with_detail(format!("normalizer {} vs subgroup {}", a.normalizer_order, a.subgroup_order));
            Ok(Outcome::new(results, vec![v]))
        }
    }
}

pub fn satake(n: usize, p: u64, lambda: &[i64], limits: &Limits) -> CliResult<Outcome> {
    if lambda.len() != n {
        return Err(CliError::invalid(format!("--lambda has {} entries, expected {n}", lambda.len())));
    }
    let s = satake_transform(&HeckeElement::basis(lambda, p)?, limits)?;
    let lead = s.coefficient(lambda);
    let k: i64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| lambda[i] - lambda[j]).sum();
    let results = json!({ "image": satake_json(&s), "display": s.to_string() });
    let verdicts = vec![
        Verdict::check("Satake transform", "image is Weyl invariant", s.is_weyl_invariant()),
        Verdict::check("Satake transform", "leading coefficient is q^<rho, lambda>", lead == HalfPowerLaurent::v_power(p, k)),
    ];
    Ok(Outcome::new(results, verdicts))
}

#[derive(serde::Deserialize)]
struct HeckeTerm {
    lambda: Vec<i64>,
    coeff: i64,
}

fn hecke_element(what: &str, text: &str, p: u64) -> CliResult<HeckeElement> {
    let terms: Vec<HeckeTerm> = parse_json(what, text)?;
    let n = terms.first().map(|t| t.lambda.len()).ok_or_else(|| CliError::invalid(format!("{what} is empty")))?;
    Ok(HeckeElement::from_terms(n, p, terms.into_iter().map(|t| (t.lambda, HalfPowerLaurent::from_int(p, t.coeff as i128))))?)
}

fn hecke_json(h: &HeckeElement) -> Value {
    Value::Array(h.support().iter().map(|(l, c)| json!({ "lambda": l, "coeff": half_power(c) })).collect())
}

fn parse_support(what: &str, items: &[String]) -> CliResult<BTreeMap<i64, i64>> {
    let mut out = BTreeMap::new();
    for it in items {
        let (m, c) = it.split_once(':').ok_or_else(|| CliError::invalid(format!("{what}: expected m:c, got {it}")))?;
        let m: i64 = m.trim().parse().map_err(|_| CliError::invalid(format!("{what}: bad exponent {m}")))?;
        let c: i64 = c.trim().parse().map_err(|_| CliError::invalid(format!("{what}: bad coefficient {c}")))?;
        *out.entry(m).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn character(phi: &str, p: u64) -> CliResult<UnitCharacter> {
    if phi == "trivial" {
        return Ok(UnitCharacter::trivial(p));
    }
    let k = phi
        .strip_prefix("tame:")
        .and_then(|k| k.parse::<i64>().ok())
        .ok_or_else(|| CliError::invalid(format!("--phi must be trivial or tame:k, got {phi}")))?;
    Ok(UnitCharacter::tame(p, k)?)
}

pub fn hecke(cmd: &HeckeCmd, limits: &Limits) -> CliResult<Outcome> {
    match cmd {
        HeckeCmd::Convolve { f, g, p } => {
            let f = hecke_element("--f", f, *p)?;
            let g = hecke_element("--g", g, *p)?;
            let fg = convolve(&f, &g, limits)?;
            let gf = convolve(&g, &f, limits)?;
            let sat = satake_transform(&fg, limits)?;
            let prod = satake_transform(&f, limits)?.mul(&satake_transform(&g, limits)?);
            let results = json!({ "product": hecke_json(&fg), "satake": satake_json(&sat) });
            let verdicts = vec![
                Verdict::check("spherical Hecke algebra", "convolution is commutative", fg == gf),
                Verdict::check("Satake isomorphism", "Sat(f * g) = Sat(f) Sat(g)", sat == prod),
            ];
            Ok(Outcome::new(results, verdicts))
        }
        HeckeCmd::Gl1 { phi, p, f, g } => {
            let chi = character(phi, *p)?;
            let fs = parse_support("--f", f)?;
            let gs = parse_support("--g", g)?;
            let lift = |s: &BTreeMap<i64, i64>| Gl1Element::from_terms(chi.clone(), s.iter().map(|(&m, &c)| (m, Cyclotomic::int(c as i128))));
            let prod = gl1_twisted_convolve(&lift(&fs), &lift(&gs))?;
            let mut laurent: BTreeMap<i64, i64> = BTreeMap::new();
            for (a, x) in &fs {
                for (b, y) in &gs {
                    *laurent.entry(a + b).or_insert(0) += x * y;
                }
            }
            laurent.retain(|_, c| *c != 0);
            let support: BTreeMap<String, String> = prod.support().iter().map(|(m, c)| (m.to_string(), c.to_string())).collect();
            let results = json!({ "product": support, "conductor": chi.conductor() });
            let v = Verdict::check("twisted Hecke algebra of GL_1", "1_m * 1_k = 1_(m+k), matching Laurent polynomials", prod == lift(&laurent));
            Ok(Outcome::new(results, vec![v]))
        }
    }
}

pub fn parse_rep(s: &str) -> CliResult<DualRep> {
    let num = |rest: &str| rest.parse::<u32>().map_err(|_| CliError::invalid(format!("bad representation {s}")));
    Ok(match s {
        "trivial" => DualRep::Trivial,
        "standard" => DualRep::Standard,
        "dual" => DualRep::Dual,
        _ if s.starts_with("sym") => DualRep::Sym(num(&s[3..])?),
        _ if s.starts_with("wedge") => DualRep::Wedge(num(&s[5..])?),
        _ => return Err(CliError::invalid(format!("unknown representation {s}"))),
    })
}

fn parameter(q: u64, names: &[String]) -> CliResult<SatakeParameter> {
    if names.is_empty() || names.iter().any(|n| n.is_empty() || n == "v" || n == "X") {
        return Err(CliError::invalid("parameter names must be nonempty and distinct from v and X"));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(SatakeParameter::symbols(q, &refs))
}

fn lfactor_json(f: &LocalLFactor) -> Value {
    json!({ "q": f.q, "num": ["1"], "den": xpoly(&f.denominator), "degree_in_xd": f.degree_in_xd })
}

fn constant_term_one(p: &XPoly) -> bool {
    p.coeff(0) == SymPoly::one()
}

pub fn lfactor(args: &LfactorArgs) -> CliResult<Outcome> {
    match (&args.op, &args.split) {
        (Some(LfactorCmd::Rankin { left, right, q }), _) => {
            let (l, r) = (parameter(*q, left)?, parameter(*q, right)?);
            let f = rankin_selberg(&l, &r)?;
            let deg = f.denominator.degree().unwrap_or(0);
            let verdicts = vec![Verdict::check(
                "Rankin-Selberg factor",
                "denominator degree is n m with constant term 1",
                deg == l.rank() * r.rank() && constant_term_one(&f.denominator),
            )];
            Ok(Outcome::new(lfactor_json(&f), verdicts))
        }
        (Some(LfactorCmd::Bc { d, rep, action }), _) => {
            let rho = parse_rep(&rep.rep)?;
            let t = parameter(rep.q, &rep.params)?;
            let n = t.rank();
            let action = action.clone().unwrap_or_else(|| (0..n).collect());
            let e = DualTorusElement::new(t, 1, *d, action)?;
            let f = base_change_factor(&rho, &e, *d)?;
            let dim = rho.dimension(&[n]) as usize;
            let deg = f.denominator.degree().unwrap_or(0);
            let verdicts = vec![Verdict::check(
                "base change of L-factors",
                "det(1 - rho(N(t sigma)) X^d) has degree d dim(rho) in X",
                deg == *d as usize * dim && constant_term_one(&f.denominator),
            )];
            Ok(Outcome::new(lfactor_json(&f), verdicts))
        }
        (None, Some(RepArgs { rep, params, q })) => {
            let rho = parse_rep(rep)?;
            let t = parameter(*q, params)?;
            let f = l_factor_split(&rho, &[&t])?;
            let dim = rho.dimension(&[t.rank()]) as usize;
            let deg = f.denominator.degree().unwrap_or(0);
            let verdicts = vec![Verdict::check(
                "local L-factor",
                "denominator has degree dim(rho) and constant term 1",
                deg == dim && constant_term_one(&f.denominator),
            )];
            Ok(Outcome::new(lfactor_json(&f), verdicts))
        }
        (None, None) => Err(CliError::invalid("lfactor needs --rep/--params/--q or a subcommand")),
    }
}
