//! One function per subcommand; each returns the report and the exit code.

use crate::report::{Report, AUT_GENERAL};
use k3cremona::error::Error;
use k3cremona::lattice::Mat2;
use k3cremona::links::{self, LinkRecord};
use k3cremona::pell::{self, PellQuery, PellSolution};
use k3cremona::surface::{self, AutTag, GDPair, QuarticLattice};
use k3cremona::{exclusion, verify};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const OK: i32 = 0;
pub const VERIFICATION_FAILED: i32 = 1;
pub const INVALID_INPUT: i32 = 2;
pub const SEARCH_EXHAUSTED: i32 = 3;

/// Largest discriminant dividing some `r'` of the curve list.
const MAX_REALIZABLE_R: i64 = 57;

pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, code: OK }
    }

    fn fail(mut report: Report, code: i32, msg: impl Into<String>) -> Self {
        report.error = Some(msg.into());
        Outcome { report, code }
    }
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::SearchExhausted(_) => SEARCH_EXHAUSTED,
        _ => INVALID_INPUT,
    }
}

fn from_err(report: Report, e: Error) -> Outcome {
    let code = code_of(&e);
    Outcome::fail(report, code, e.to_string())
}

macro_rules! tri {
    ($rep:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_err($rep, e),
        }
    };
}

fn pair(s: &PellSolution) -> Value {
    json!([bigint(&s.x), bigint(&s.y)])
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn bigint(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn model_json(l: &QuarticLattice) -> Value {
    json!({ "b": bigint(&l.b), "c": bigint(&l.c), "r": bigint(&l.r()), "gram": to_value(&l.gram()) })
}

/// The lattice named by `--r` (canonical model) or `--b/--c`.
pub fn resolve(rep: &mut Report, r: &Option<BigInt>, b: &Option<BigInt>, c: &Option<BigInt>) -> Result<QuarticLattice, (i32, String)> {
    let l = match (r, b, c) {
        (Some(r), None, None) => {
            *rep = rep.clone().input("r", bigint(r));
            QuarticLattice::canonical(r.clone())
        }
        (None, Some(b), Some(c)) => {
            *rep = rep.clone().input("b", bigint(b)).input("c", bigint(c));
            QuarticLattice::new(b.clone(), c.clone())
        }
        _ => return Err((INVALID_INPUT, "give either --r, or both --b and --c".into())),
    };
    l.map_err(|e| (code_of(&e), e.to_string()))
}

/// Forbidden `r ∈ {1, 4, 8}`: the report carries the witness class.
fn forbidden(mut rep: Report, l: &QuarticLattice) -> Option<Outcome> {
    let w = surface::forbidden_small_disc(l)?;
    rep.results = json!({ "model": model_json(l), "forbidden_witness": to_value(&w) });
    rep.references.push("surface::forbidden_small_disc".into());
    let msg = format!(
        "r = {} is not the discriminant of a smooth quartic: E = {} has (E^2, H.E) = ({}, {})",
        l.r(),
        w.class,
        w.square,
        w.degree
    );
    Some(Outcome::fail(rep, INVALID_INPUT, msg))
}

fn caveat(l: &QuarticLattice) -> Option<String> {
    let r = l.r();
    if r == BigInt::from(52) {
        Some("r = 52 divides no r' of the curve list, so no link of the listed kinds acts on such a surface".into())
    } else if r > BigInt::from(MAX_REALIZABLE_R) {
        Some(format!("r = {r} exceeds every r' of the curve list (at most 57), so no link of the listed kinds acts; the ampleness test is validated only for r ≤ 57"))
    } else {
        None
    }
}

fn conj_inv(p: &Mat2, g: &Mat2) -> Result<Mat2, Error> {
    Ok(&(&p.inverse_unimodular()? * g) * p)
}

pub fn classify(r: &Option<BigInt>, b: &Option<BigInt>, c: &Option<BigInt>) -> Outcome {
    let mut rep = Report::new("classify");
    rep.assumptions.push(AUT_GENERAL.into());
    let l = match resolve(&mut rep, r, b, c) {
        Ok(l) => l,
        Err((code, msg)) => return Outcome::fail(rep, code, msg),
    };
    if let Some(o) = forbidden(rep.clone(), &l) {
        return o;
    }
    let pred = tri!(rep, surface::aut_predicates(&l));
    let kind = tri!(rep, surface::classify_aut(&l));
    let mut pell_w = serde_json::Map::new();
    for k in [-2i64, 0, 2] {
        let q = PellQuery { r: l.r(), n: BigInt::from(4 * k) };
        let s = tri!(rep, pell::find_solution(&q));
        pell_w.insert(format!("{}", 4 * k), s.as_ref().map_or(Value::Null, pair));
    }
    let curve = verify::CURVE_TABLE.iter().find(|row| BigInt::from(row.0) == l.r()).map(|&(_, g, d)| {
        let gd = GDPair::new(g, d);
        match surface::find_curve_class(&l, &gd) {
            Some(cls) => {
                let rebased = l.rebased(&cls).ok();
                let gens: Option<Vec<Mat2>> = rebased
                    .as_ref()
                    .and_then(|(_, p)| kind.generators.iter().map(|g| conj_inv(p, g).ok()).collect());
                json!({
                    "gd": to_value(&gd),
                    "class": to_value(&cls),
                    "index_one": rebased.is_some(),
                    "generators_in_curve_basis": gens.map_or(Value::Null, |g| to_value(&g)),
                })
            }
            None => json!({ "gd": to_value(&gd), "class": null }),
        }
    });
    rep.results = json!({
        "model": model_json(&l),
        "tag": to_value(&kind.tag),
        "generators": to_value(&kind.generators),
        "witnesses": {
            "small_class": to_value(&pred.small_class),
            "ample_two": to_value(&pred.ample_two),
            "pell": Value::Object(pell_w),
        },
        "curve": curve.unwrap_or(Value::Null),
    });
    rep.references = ["surface::aut_predicates", "surface::classify_aut", "isometry::aut_generators", "pell::find_solution"]
        .map(String::from)
        .to_vec();
    match caveat(&l) {
        Some(msg) => {
            rep.assumptions.push(format!("caveat: {msg}"));
            Outcome::fail(rep, INVALID_INPUT, msg)
        }
        None => Outcome::ok(rep),
    }
}

pub fn pell_cmd(r: &BigInt, n: &BigInt, bound: &Option<BigInt>) -> Outcome {
    let mut rep = Report::new("pell").input("r", bigint(r)).input("n", bigint(n));
    if let Some(b) = bound {
        rep = rep.input("bound", bigint(b));
    }
    let q = PellQuery { r: r.clone(), n: n.clone() };
    let witness = tri!(rep, pell::find_solution(&q));
    let nonzero = tri!(rep, pell::minimal_nonzero_y(&q));
    let mut results = json!({
        "r": bigint(r),
        "n": bigint(n),
        "solvable": witness.is_some(),
        "witness": witness.as_ref().map_or(Value::Null, pair),
        "least_positive_y": nonzero.as_ref().map_or(Value::Null, pair),
    });
    if let Some(b) = bound {
        if b.sign() != num_bigint::Sign::Plus {
            return Outcome::fail(rep, INVALID_INPUT, "--bound must be positive");
        }
        let all = tri!(rep, pell::solutions_up_to(&q, b));
        results["solutions"] = Value::Array(all.iter().map(pair).collect());
    }
    rep.results = results;
    rep.references = ["pell::find_solution", "pell::minimal_nonzero_y", "pell::solutions_up_to"].map(String::from).to_vec();
    Outcome::ok(rep)
}

pub fn curve_class(r: &Option<BigInt>, b: &Option<BigInt>, c: &Option<BigInt>, genus: &BigInt, degree: &BigInt) -> Outcome {
    let mut rep = Report::new("curve-class");
    rep.assumptions.push(AUT_GENERAL.into());
    let l = match resolve(&mut rep, r, b, c) {
        Ok(l) => l,
        Err((code, msg)) => return Outcome::fail(rep, code, msg),
    };
    rep = rep.input("genus", bigint(genus)).input("degree", bigint(degree));
    let gd = GDPair { g: genus.clone(), d: degree.clone() };
    let found = surface::find_curve_class(&l, &gd);
    let detail = found.as_ref().map(|cls| {
        let rebased = l.rebased(cls).ok();
        json!({
            "class": to_value(cls),
            "degree": bigint(&l.degree(cls)),
            "square": bigint(&l.square(cls)),
            "index_one": rebased.is_some(),
            "curve_basis_model": rebased.map_or(Value::Null, |(lc, _)| model_json(&lc)),
        })
    });
    rep.results = json!({
        "model": model_json(&l),
        "target": to_value(&gd),
        "rprime": bigint(&gd.rprime()),
        "found": detail.unwrap_or(Value::Null),
    });
    rep.references = ["surface::find_curve_class", "surface::classes_with"].map(String::from).to_vec();
    Outcome::ok(rep)
}

pub fn link(genus: &BigInt, degree: &BigInt) -> Outcome {
    let mut rep = Report::new("link").input("genus", bigint(genus)).input("degree", bigint(degree));
    let cat = links::catalog();
    let rec = tri!(rep, links::lookup(&cat, &GDPair { g: genus.clone(), d: degree.clone() })).clone();
    let m = tri!(rep, links::link_matrix(&rec));
    let consistent = tri!(rep, links::link_is_consistent(&rec));
    rep.results = json!({
        "record": to_value(&rec),
        "matrix": to_value(&m),
        "det": bigint(&m.det()),
        "source_gram": to_value(&links::curve_gram(rec.source, &rec.gd)),
        "target_gram": to_value(&links::curve_gram(rec.target, &rec.gd_plus)),
        "consistent": consistent,
    });
    rep.references = ["links::lookup", "links::link_matrix", "links::link_is_consistent"].map(String::from).to_vec();
    if consistent {
        Outcome::ok(rep)
    } else {
        Outcome::fail(rep, VERIFICATION_FAILED, "link matrix does not carry the source form to the target form")
    }
}

pub fn realize(r: &Option<BigInt>, b: &Option<BigInt>, c: &Option<BigInt>) -> Outcome {
    let mut rep = Report::new("realize");
    rep.assumptions.push(AUT_GENERAL.into());
    let l = match resolve(&mut rep, r, b, c) {
        Ok(l) => l,
        Err((code, msg)) => return Outcome::fail(rep, code, msg),
    };
    if let Some(o) = forbidden(rep.clone(), &l) {
        return o;
    }
    let kind = tri!(rep, surface::classify_aut(&l));
    rep.references = ["surface::classify_aut", "links::realize_generator", "links::compose_word"].map(String::from).to_vec();
    if kind.tag == AutTag::Trivial {
        rep.results = json!({ "model": model_json(&l), "tag": to_value(&kind.tag), "realizations": [] });
        return Outcome::fail(rep, INVALID_INPUT, "automorphism group is trivial: nothing to realize");
    }
    let mut out = Vec::new();
    let mut all_match = true;
    for g in &kind.generators {
        let re = tri!(rep, links::realize_generator(&l, g));
        let mut steps = Vec::new();
        for s in &re.word.steps {
            let conj = tri!(rep, links::link_matrix(&s.record).and_then(|m| links::conjugate(&m, &s.base_change)));
            steps.push(json!({
                "gd": [bigint(&s.record.gd.g), bigint(&s.record.gd.d)],
                "source": s.record.source.to_string(),
                "target": s.record.target.to_string(),
                "gd_plus": [bigint(&s.record.gd_plus.g), bigint(&s.record.gd_plus.d)],
                "abc": [bigint(&s.record.a), bigint(&s.record.b), bigint(&s.record.c)],
                "base_change": to_value(&s.base_change),
                "conjugated": to_value(&conj),
            }));
        }
        let back = tri!(rep, re.composite_in_input_basis());
        all_match &= re.matches_generator && &back == g;
        out.push(json!({
            "generator": to_value(g),
            "basis": to_value(&re.basis),
            "generator_in_curve_basis": to_value(&re.target),
            "word": steps,
            "composite": to_value(&re.composite),
            "composite_in_input_basis": to_value(&back),
            "matches_generator": re.matches_generator,
        }));
    }
    rep.results = json!({ "model": model_json(&l), "tag": to_value(&kind.tag), "realizations": out });
    if let Some(msg) = caveat(&l) {
        rep.assumptions.push(format!("caveat: {msg}"));
    }
    if all_match {
        Outcome::ok(rep)
    } else {
        Outcome::fail(rep, VERIFICATION_FAILED, "a composite differs from its generator")
    }
}

pub fn exclusion_cmd(bound: &Option<BigInt>) -> Outcome {
    let mut rep = Report::new("exclusion");
    let bound = match bound.as_ref().map(i64::try_from) {
        None => MAX_REALIZABLE_R,
        Some(Ok(b)) if (1..=1_000_000).contains(&b) => b,
        Some(_) => return Outcome::fail(rep, INVALID_INPUT, "--bound must lie in 1..=1000000"),
    };
    rep = rep.input("bound", bound);
    let pairs = exclusion::curve_pairs();
    let ex = exclusion::exclusion_report(bound);
    rep.results = json!({
        "pairs": to_value(&pairs),
        "rprimes": to_value(&exclusion::rprime_list().iter().map(bigint).collect::<Vec<_>>()),
        "bound": ex.bound,
        "admissible": ex.admissible,
        "excluded": ex.excluded,
        "admissible_count": ex.admissible.len(),
    });
    rep.references = ["exclusion::curve_pairs", "exclusion::rprime_list", "exclusion::exclusion_report"].map(String::from).to_vec();
    Outcome::ok(rep)
}

pub fn antiflip_check() -> Outcome {
    let mut rep = Report::new("antiflip-check");
    let a = exclusion::antiflip_exhaustion();
    let hits: Vec<Value> = a
        .hits
        .iter()
        .map(|h| {
            let mut v = to_value(h);
            v["line_in_curve_basis"] = to_value(&h.in_curve_basis());
            v
        })
        .collect();
    rep.results = json!({
        "survivors": to_value(&a.survivors),
        "hits": hits,
        "cells": a.cells,
        "configurations": a.configurations,
        "forbidden_skipped": a.forbidden_skipped,
        "r_bound": a.r_bound,
    });
    rep.references = ["exclusion::antiflip_cells", "exclusion::antiflip_exhaustion"].map(String::from).to_vec();
    Outcome::ok(rep)
}

pub fn verify_paper(catalog: Option<Vec<LinkRecord>>) -> Outcome {
    let mut rep = Report::new("verify-paper");
    rep.assumptions.push(AUT_GENERAL.into());
    let custom = catalog.is_some();
    rep = rep.input("catalog", if custom { "custom" } else { "built-in" });
    let cat = catalog.unwrap_or_else(links::catalog);
    let suites = verify::run(&cat);
    let passed = suites.iter().all(|s| s.passed);
    rep.references = vec!["verify::run".into()];
    let first = verify::first_failure(&suites).map(|(s, c)| format!("{} / {}: {}", s.name, c.label, c.detail));
    rep.results = json!({ "passed": passed, "suites": to_value(&suites) });
    match first {
        None => Outcome::ok(rep),
        Some(msg) => Outcome::fail(rep, VERIFICATION_FAILED, format!("first failure: {msg}")),
    }
}
