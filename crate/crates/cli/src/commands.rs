//! One function per subcommand; each returns its JSON report, a summary
//! and whether its claims held.

use nervelab::cases::{battery_json, replay, scenario_fibrant_groupoid_battery};
use nervelab::models::{delta_n, horn_image, ind_generators, HornImage, HornImageKind};
use nervelab::nerves::{adjunction_check, nerve, Flavor};
use nervelab::qf::{compare_lim, holim_sset, is_fibered, qf_from_fibered, CatDiagram, SDiagram};
use nervelab::scat::SimplicialCategory;
use nervelab::sset::kan::{check_kan, check_kan_fibration, HornWitness, KanOptions, KanReport};
use nervelab::sset::{boundary_subcomplex, horn, json as sset_json, pi0, standard_simplex, SimplicialMap, SimplicialSet};
use nervelab::{Error, Result};
use serde_json::{json, Value};

pub struct Output {
    pub json: Value,
    pub summary: String,
    pub ok: bool,
}

impl Output {
    fn new(json: Value, summary: String) -> Self {
        Output { json, summary, ok: true }
    }
}

pub fn nerve_cmd(c: &SimplicialCategory, flavor: Flavor, dim: usize) -> Result<Output> {
    let n = nerve(flavor, c, dim)?;
    let counts = n.set().nd_counts();
    let summary = format!(
        "{} nerve up to dimension {dim}: simplices per degree {:?}, nondegenerate {:?}",
        flavor.name(),
        (0..=dim).map(|k| n.count(k)).collect::<Vec<_>>(),
        counts
    );
    Ok(Output::new(sset_json::to_json(n.set()), summary))
}

fn witness_json(w: &HornWitness) -> Value {
    json!({
        "n": w.n,
        "i": w.i,
        "faces": w.faces.iter().map(|(j, r)| json!({"face": j, "simplex": sset_json::simplex_ref_to_json(r)})).collect::<Vec<_>>(),
        "base": w.base.as_ref().map(sset_json::simplex_ref_to_json),
    })
}

fn kan_json(r: &KanReport, kind: &str) -> Value {
    json!({
        "check": kind,
        "up_to": r.up_to,
        "passed": r.passed,
        "horns_checked": r.horns_checked,
        "failures": r.failures.iter().map(witness_json).collect::<Vec<_>>(),
    })
}

fn kan_summary(r: &KanReport, kind: &str) -> String {
    match r.first_failure() {
        None => format!("{kind} up to dimension {}: passed ({} horns)", r.up_to, r.horns_checked),
        Some(w) => format!("{kind} up to dimension {}: fails at Λ^{}_{} ({} failing horns)", r.up_to, w.n, w.i, r.failures.len()),
    }
}

pub fn kan_check(x: &SimplicialSet, dim: usize, exhaustive: bool) -> Result<Output> {
    let r = check_kan(x, dim, &KanOptions { exhaustive, ..KanOptions::default() })?;
    Ok(Output::new(kan_json(&r, "kan"), kan_summary(&r, "Kan condition")))
}

pub fn kan_fibration_check(p: &SimplicialMap, e: &SimplicialSet, b: &SimplicialSet, dim: usize, exhaustive: bool) -> Result<Output> {
    let r = check_kan_fibration(p, e, b, dim, &KanOptions { exhaustive, ..KanOptions::default() })?;
    Ok(Output::new(kan_json(&r, "kan-fibration"), kan_summary(&r, "Kan fibration")))
}

pub fn classification(h: &HornImage) -> String {
    match h.kind {
        HornImageKind::Full => format!("full cube I^({},{})", h.a, h.b),
        HornImageKind::Boundary => format!("cube boundary ∂I^({},{})", h.a, h.b),
        HornImageKind::CubicHorn { x, eps } => format!("cubic horn Π_{{{x},{}}}, {} faces", u8::from(eps), h.face_count()),
        HornImageKind::Other => "other".into(),
    }
}

pub fn horn_image_cmd(n: usize, i: usize, a: usize, b: usize) -> Result<Output> {
    let h = horn_image(n, i, a, b)?;
    let label = classification(&h);
    let json = json!({
        "n": n, "i": i, "a": a, "b": b,
        "coords": h.coords,
        "classification": label,
        "faces": h.face_count(),
        "cells": h.cells,
    });
    Ok(Output::new(json, format!("Δ_N(Λ^{n}_{i})({a},{b}): {label}")))
}

pub fn ind_cmd(n: usize) -> Result<Output> {
    let d = delta_n(n, n.saturating_sub(1).max(1));
    let gens = ind_generators(&d);
    let list: Vec<Value> = gens
        .iter()
        .map(|g| {
            let chain = d.chain(g.a, g.b, &g.simplex);
            json!({"a": g.a, "b": g.b, "dim": g.simplex.dim(), "chain": chain})
        })
        .collect();
    Ok(Output::new(json!({"n": n, "count": gens.len(), "generators": list}), format!("Ind^{n}: {} generators", gens.len())))
}

pub fn replay_cmd(name: &str) -> Result<Output> {
    let s = replay(name)?;
    Ok(Output { ok: s.passed(), summary: s.summary(), json: s.to_json() })
}

pub fn battery_cmd() -> Result<Output> {
    let scenarios = scenario_fibrant_groupoid_battery()?;
    let json = battery_json(&scenarios);
    let ok = scenarios.iter().all(|s| s.passed());
    let summary: String = scenarios.iter().map(|s| s.summary()).collect();
    Ok(Output { json, summary, ok })
}

pub fn qf_check(d: &CatDiagram, n_cap: usize) -> Result<Output> {
    let p = d.grothendieck()?;
    let fibered = is_fibered(&p);
    let mut json = json!({
        "n_cap": n_cap,
        "total": {"objects": p.total.num_objects(), "arrows": p.total.num_arrows()},
        "fibered": fibered.fibered,
        "cartesian_arrows": fibered.cartesian.iter().filter(|&&c| c).count(),
        "fibered_failure": fibered.failure.as_ref().map(|f| format!("{f:?}")),
    });
    if !fibered.fibered {
        return Ok(Output::new(json, "not fibered".into()));
    }
    let qf = qf_from_fibered(&p, n_cap)?;
    let strict = qf.diagram.check_strict().is_ok();
    let r = qf.diagram.check_qf();
    let forgetful = qf.forgetful_reports(&p)?;
    let forgetful_ok = forgetful.iter().all(|f| f.surjective_on_objects && f.fully_faithful);
    let lim = compare_lim(&p, n_cap)?;
    json["simplices"] = json!(qf.diagram.index.simplices.len());
    json["strict"] = json!(strict);
    json["qf"] = json!({"holds": r.holds(), "checked": r.checked, "failures": r.failures.len()});
    json["forgetful_equivalences"] = json!(forgetful_ok);
    json["lim"] = json!({
        "sections": {"objects": lim.sections.0, "arrows": lim.sections.1},
        "limit": {"objects": lim.limit.0, "arrows": lim.limit.1},
        "isomorphism": lim.isomorphism,
    });
    let summary = format!(
        "fibered: {}; strict: {strict}; (QF): {}; fibers ≃ liftings: {forgetful_ok}; LIM(p) ≅ lim E: {}",
        fibered.fibered,
        r.holds(),
        lim.isomorphism
    );
    Ok(Output::new(json, summary))
}

pub fn holim_cmd(f: &SDiagram, n_cap: usize, dim_cap: usize) -> Result<Output> {
    let h = holim_sset(f, n_cap, dim_cap)?;
    let set = h.set();
    let counts = set.nd_counts();
    let components = pi0(set).count;
    let json = json!({
        "label": h.label,
        "n_cap": n_cap,
        "dim_cap": dim_cap,
        "exact": h.exact,
        "nondegenerate": counts,
        "pi0": components,
        "set": sset_json::to_json(set),
    });
    let summary = format!("holim ({}): nondegenerate {counts:?}, π0 = {components}, exact: {}", h.label, h.exact);
    Ok(Output::new(json, summary))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Shape {
    Simplex,
    Boundary,
    Horn,
}

pub fn adjunction_cmd(c: &SimplicialCategory, shape: Shape, n: usize, i: Option<usize>) -> Result<Output> {
    let s = match (shape, i) {
        (Shape::Simplex, _) => standard_simplex(n, n)?,
        (Shape::Boundary, _) => boundary_subcomplex(n, n)?,
        (Shape::Horn, Some(i)) => horn(n, i, n)?,
        (Shape::Horn, None) => return Err(Error::Invalid("--shape horn needs --i".into())),
    };
    let hc = nerve(Flavor::Hc, c, n)?;
    let r = adjunction_check(&s, c, &hc)?;
    let json = json!({"n": n, "shape": format!("{shape:?}").to_lowercase(), "i": i, "maps": r.maps, "functors": r.functors, "bijective": r.bijective, "natural": r.natural});
    let summary = format!(
        "Hom(S, 𝔑C) = {}, Hom(Δ_N(S), C) = {}, bijective: {}, natural: {}",
        r.maps, r.functors, r.bijective, r.natural
    );
    Ok(Output { ok: r.bijective && r.natural, json, summary })
}
