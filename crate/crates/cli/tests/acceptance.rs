//! The ten acceptance criteria, one pass/fail line each.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nervelab::cases::{counterexample_input, scenario_fibrant_groupoid_battery, scenario_hc_counterexample};
use nervelab::fincat::{CategoryNerve, FiniteCategory};
use nervelab::group::FiniteGroup;
use nervelab::models::{cosimplicial_action, delta_n, horn_image, ind_generators, pi_map, tau, tau_vertex, Family, HornImageKind, ModelKind};
use nervelab::nerves::{adjunction_check, compare_homotopy, comparison_maps, hc_nerve, map_nerve};
use nervelab::qf::{
    cat_diagram_to_json, compare_lim, holim_sset, is_cartesian, is_fibered, lim_sset, lim_to_holim, qf_from_fibered,
    sdiagram_to_json, CatDiagram, SDiagram,
};
use nervelab::scat::{SimplicialCategory, SimplicialFunctor};
use nervelab::sset::{boundary_subcomplex, horn, json as sset_json, mono, pi0, standard_simplex, Poset, SimplicialMap, SimplicialSet};
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn horn_images() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 2..=4 {
        for i in 0..=n {
            for b in 0..=n {
                for a in 0..=b {
                    let h = horn_image(n, i, a, b).map_err(err)?;
                    let expected = if 0 < i && i < n && (a, b) == (0, n) {
                        HornImageKind::CubicHorn { x: i, eps: true }
                    } else if i == 0 && (a, b) == (1, n) {
                        HornImageKind::Boundary
                    } else if i == 0 && (a, b) == (0, n) {
                        HornImageKind::CubicHorn { x: 1, eps: false }
                    } else if i == n && (a, b) == (0, n - 1) {
                        HornImageKind::Boundary
                    } else if i == n && (a, b) == (0, n) {
                        HornImageKind::CubicHorn { x: n - 1, eps: false }
                    } else {
                        HornImageKind::Full
                    };
                    ensure(h.kind == expected, || format!("Λ^{n}_{i} at ({a},{b}): {:?}, expected {expected:?}", h.kind))?;
                    if let HornImageKind::CubicHorn { .. } = h.kind {
                        ensure(h.face_count() == 2 * n - 3, || format!("Λ^{n}_{i}: {} faces", h.face_count()))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(10), "horn images")?;
    Ok(format!("{checked} hom pairs"))
}

/// Strict chains of subsets of `{0..d}` ending at the full set.
fn chains_to_full(d: usize) -> usize {
    let full = (1usize << d) - 1;
    let masks = 1usize << d;
    // every subset of the cube's vertices, kept if it is a strict chain
    // whose top is the full set
    (1usize..1 << masks)
        .filter(|&set| {
            let members: Vec<usize> = (0..masks).filter(|m| set >> m & 1 == 1).collect();
            members.iter().all(|&x| members.iter().all(|&y| x & y == x || x & y == y))
                && members.iter().max() == Some(&full)
                && members.iter().all(|&x| x & full == x)
        })
        .count()
}

fn free_generators() -> Outcome {
    let mut counts = Vec::new();
    for (n, want) in [(1, 1), (2, 4), (3, 13)] {
        let got = ind_generators(&delta_n(n, n.saturating_sub(1).max(1))).len();
        let oracle: usize = (0..=n).flat_map(|a| (a + 1..=n).map(move |b| chains_to_full(b - a - 1))).sum();
        ensure(got == want && oracle == want, || format!("Ind^{n}: {got} generators, oracle {oracle}, expected {want}"))?;
        counts.push(got);
    }
    Ok(format!("counts {counts:?}"))
}

fn adjunction() -> Outcome {
    let start = Instant::now();
    let z2 = FiniteGroup::cyclic(2);
    let categories = vec![
        ("[2]", SimplicialCategory::discrete(&FiniteCategory::ordinal(2), 3)),
        ("BZ/2", SimplicialCategory::discrete(&FiniteCategory::from_group(&z2, "g"), 3)),
        ("counterexample C", SimplicialCategory::discrete(&counterexample_input().c, 3)),
        ("contractible groupoid", SimplicialCategory::discrete(&FiniteCategory::contractible_groupoid(2), 3)),
        ("Hom = N(BZ/2)", SimplicialCategory::abelian_group_nerve(&z2, 3).map_err(err)?),
    ];
    let mut shapes = Vec::new();
    for n in 0..=3 {
        shapes.push((format!("Δ^{n}"), standard_simplex(n, 3).map_err(err)?));
        if n >= 1 {
            shapes.push((format!("∂Δ^{n}"), boundary_subcomplex(n, 3).map_err(err)?));
            for i in 0..=n {
                shapes.push((format!("Λ^{n}_{i}"), horn(n, i, 3).map_err(err)?));
            }
        }
    }
    let mut pairs = 0;
    for (name, c) in &categories {
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                for k in 0..=3 {
                    ensure(c.hom(a, b).count(k) <= 8, || format!("{name}: Hom({a},{b})_{k} too large"))?;
                }
            }
        }
        let nerve = hc_nerve(c, 3).map_err(err)?;
        for (sname, s) in &shapes {
            let r = adjunction_check(s, c, &nerve).map_err(err)?;
            ensure(r.bijective && r.natural && r.maps == r.functors, || format!("{sname} into {name}: {r:?}"))?;
            pairs += 1;
        }
    }
    within(start, Duration::from_secs(60), "adjunction")?;
    Ok(format!("{pairs} (shape, category) pairs"))
}

fn counterexample() -> Outcome {
    let s = scenario_hc_counterexample().map_err(err)?;
    ensure(s.passed(), || s.summary())?;
    let first = &s.witnesses["first_failure"];
    ensure(first["n"] == 2 && first["i"] == 0, || format!("first failure {first}"))?;
    ensure(first["faces"]["d2"] == "u01" && first["faces"]["d1"] == "w02", || format!("witness {}", first["faces"]))?;
    Ok("weak fibration, 𝔑(f) fails at Λ^2_0 with (u01, w02)".into())
}

fn battery() -> Outcome {
    let start = Instant::now();
    let scenarios = scenario_fibrant_groupoid_battery().map_err(err)?;
    let mut fibrations = 0;
    for s in &scenarios {
        ensure(s.passed(), || s.summary())?;
        fibrations += s.claims.iter().filter(|c| c.name.starts_with("𝔑(f) is a Kan fibration")).count();
    }
    ensure(fibrations >= 6, || format!("only {fibrations} quotient functors"))?;
    within(start, Duration::from_secs(300), "battery")?;
    Ok(format!("{} scenarios, {fibrations} Kan fibrations up to dimension 3", scenarios.len()))
}

fn comparisons() -> Outcome {
    let bg = |g: FiniteGroup| FiniteCategory::from_group(&g, "g");
    let discrete = vec![
        ("[2]", FiniteCategory::ordinal(2), false),
        ("counterexample C", counterexample_input().c, false),
        ("BZ/2", bg(FiniteGroup::cyclic(2)), true),
        ("BZ/3", bg(FiniteGroup::cyclic(3)), true),
        ("BS3", bg(FiniteGroup::symmetric3()), true),
        ("BZ/2 × BZ/3", bg(FiniteGroup::cyclic(2)).product(&bg(FiniteGroup::cyclic(3))), true),
        ("contractible groupoid", FiniteCategory::contractible_groupoid(2), true),
    ];
    let depth = 2;
    for (name, c, groupoid) in &discrete {
        let sc = SimplicialCategory::discrete(c, depth);
        let cmp = comparison_maps(&sc, depth).map_err(err)?;
        let classical = CategoryNerve::new(c, depth).set;
        for (flavor, n) in [("N", &cmp.standard), ("W̄", &cmp.wbar), ("𝔑", &cmp.hc)] {
            ensure(n.set().nd_counts() == classical.nd_counts(), || format!("{flavor}({name}) differs from the classical nerve"))?;
        }
        cmp.pi_star.validate(cmp.standard.set(), cmp.wbar.set()).map_err(err)?;
        cmp.tau_star.validate(cmp.wbar.set(), cmp.hc.set()).map_err(err)?;
        ensure(
            cmp.pi_star.is_isomorphism(cmp.standard.set(), cmp.wbar.set()) && cmp.tau_star.is_isomorphism(cmp.wbar.set(), cmp.hc.set()),
            || format!("comparison maps of {name} are not isomorphisms"),
        )?;
        if *groupoid {
            let composite = cmp.composite();
            for (f, x, y) in [
                (&cmp.pi_star, cmp.standard.set(), cmp.wbar.set()),
                (&cmp.tau_star, cmp.wbar.set(), cmp.hc.set()),
                (&composite, cmp.standard.set(), cmp.hc.set()),
            ] {
                let h = compare_homotopy(f, x, y).map_err(err)?;
                ensure(h.holds(), || format!("{name}: {h:?}"))?;
            }
        }
    }
    // a category with a non-discrete hom space
    let c = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(2), depth).map_err(err)?;
    let cmp = comparison_maps(&c, depth).map_err(err)?;
    let h = compare_homotopy(&cmp.composite(), cmp.standard.set(), cmp.hc.set()).map_err(err)?;
    ensure(h.holds(), || format!("Hom = N(BZ/2): {h:?}"))?;
    Ok(format!("{} discrete categories and one simplicial one", discrete.len()))
}

/// Pairs `(g, e)` with `g : [l] -> [m]` arbitrary and `e : [m] -> [n]` a
/// coface or codegeneracy, all degrees at most `max`. Every monotone map is
/// a composite of elementary ones, so functoriality on these pairs and on
/// identities gives it on all composable pairs.
fn elementary_pairs(max: usize) -> Vec<(Vec<usize>, usize, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for l in 0..=max {
        for m in 0..=max {
            let mut elementary: Vec<(Vec<usize>, usize)> = Vec::new();
            if m < max {
                elementary.extend((0..=m + 1).map(|i| (mono::coface(m + 1, i), m + 1)));
            }
            if m > 0 {
                elementary.extend((0..m).map(|j| (mono::codegeneracy(m - 1, j), m - 1)));
            }
            for g in mono::all_monotone(l, m) {
                for (e, n) in &elementary {
                    out.push((g.clone(), m, e.clone(), *n));
                }
            }
        }
    }
    out
}

/// The action of every monotone map between `[0..=max]`, keyed by the map and its target.
fn table(
    max: usize,
    act: impl Fn(&[usize], usize, usize) -> nervelab::Result<SimplicialFunctor>,
) -> Result<HashMap<(Vec<usize>, usize), SimplicialFunctor>, String> {
    let mut out = HashMap::new();
    for m in 0..=max {
        for n in 0..=max {
            for f in mono::all_monotone(m, n) {
                let a = act(&f, m, n).map_err(err)?;
                out.insert((f, n), a);
            }
        }
    }
    Ok(out)
}

fn cosimplicial() -> Outcome {
    let max = 4;
    let ds: Vec<_> = (0..=max).map(|n| delta_n(n, 1)).collect();
    let all = elementary_pairs(max);
    let dn = table(max, |f, m, n| cosimplicial_action(&ds[m], &ds[n], f))?;
    for (g, m, f, n) in &all {
        let l = g.len() - 1;
        let whole = &dn[&(mono::compose(f, g), *n)];
        ensure(dn[&(g.clone(), *m)].then(&dn[&(f.clone(), *n)], &ds[*m].category, &ds[*n].category) == *whole, || {
            format!("Δ_N at f={f:?} g={g:?} from [{l}]")
        })?;
    }
    for n in 0..=max {
        ensure(dn[&(mono::identity(n), n)] == SimplicialFunctor::identity(&ds[n].category), || format!("Δ_N at id_{n}"))?;
    }
    for (kind, cap) in [(ModelKind::Wbar, 2), (ModelKind::Standard, 1)] {
        let fam = Family::new(kind, max, cap).map_err(err)?;
        let acts = table(max, |f, _, n| fam.action(f, n))?;
        for (g, m, f, n) in &all {
            let composite = acts[&(g.clone(), *m)].then(
                &acts[&(f.clone(), *n)],
                &fam.member(*m).free.category,
                &fam.member(*n).free.category,
            );
            ensure(acts[&(mono::compose(f, g), *n)] == composite, || format!("{kind:?} at f={f:?} g={g:?}"))?;
        }
        for n in 0..=max {
            let id = SimplicialFunctor::identity(&fam.member(n).free.category);
            ensure(acts[&(mono::identity(n), n)] == id, || format!("{kind:?} at id_{n}"))?;
        }
    }
    // τ : Δ_N → Δ_W̄ at cap 2 and π : Δ_W̄ → SC at cap 1
    let dt: Vec<_> = (0..=max).map(|n| delta_n(n, 2)).collect();
    let w2 = Family::new(ModelKind::Wbar, max, 2).map_err(err)?;
    let w1 = Family::new(ModelKind::Wbar, max, 1).map_err(err)?;
    let s1 = Family::new(ModelKind::Standard, max, 1).map_err(err)?;
    let taus: Vec<_> = (0..=max).map(|n| tau(&dt[n], w2.member(n))).collect::<Result<_, _>>().map_err(err)?;
    let pis: Vec<_> = (0..=max).map(|n| pi_map(w1.member(n), s1.member(n))).collect::<Result<_, _>>().map_err(err)?;
    let mut squares = 0;
    for m in 0..=max {
        for n in 0..=max {
            for f in mono::all_monotone(m, n) {
                let dn = cosimplicial_action(&dt[m], &dt[n], &f).map_err(err)?;
                let left = dn.then(&taus[n], &dt[n].category, &w2.member(n).free.category);
                let right = taus[m].then(&w2.action(&f, n).map_err(err)?, &w2.member(m).free.category, &w2.member(n).free.category);
                ensure(left == right, || format!("τ naturality at {f:?}"))?;
                let left = w1.action(&f, n).map_err(err)?.then(&pis[n], &w1.member(n).free.category, &s1.member(n).free.category);
                let right = pis[m].then(&s1.action(&f, n).map_err(err)?, &s1.member(m).free.category, &s1.member(n).free.category);
                ensure(left == right, || format!("π naturality at {f:?}"))?;
                squares += 2;
            }
        }
    }
    for n in 2..=max {
        for a in 0..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    let (comp, phi) = (tau_vertex(a, c, &[b]), tau_vertex(a, c, &[]));
                    ensure(comp.iter().zip(&phi).all(|(x, y)| x <= y) && comp != phi, || format!("ψ at ({a},{b},{c})"))?;
                }
            }
        }
    }
    Ok(format!("{} elementary pairs per model, {squares} naturality squares", all.len()))
}

fn sample_diagrams() -> Vec<CatDiagram> {
    let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
    let span = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(1, 0), (1, 2)]).expect("a poset");
    let bases = vec![
        FiniteCategory::ordinal(0),
        FiniteCategory::ordinal(1),
        FiniteCategory::ordinal(2),
        FiniteCategory::discrete(3),
        FiniteCategory::from_poset(&span),
        z2.clone(),
        FiniteCategory::contractible_groupoid(2),
    ];
    let pool = [FiniteCategory::ordinal(0), FiniteCategory::ordinal(1), FiniteCategory::discrete(2), z2];
    let mut out = Vec::new();
    for b in &bases {
        let n = b.num_objects();
        for mut code in 0..pool.len().pow(n as u32) {
            let values: Vec<FiniteCategory> = (0..n)
                .map(|_| {
                    let v = pool[code % pool.len()].clone();
                    code /= pool.len();
                    v
                })
                .collect();
            out.extend(CatDiagram::enumerate(b, &values, 2));
        }
    }
    out
}

fn quasifibered() -> Outcome {
    let diagrams = sample_diagrams();
    let mut arrows = 0;
    for d in &diagrams {
        let p = d.grothendieck().map_err(err)?;
        let report = is_fibered(&p);
        ensure(report.fibered, || format!("not fibered: {:?}", report.failure))?;
        let e = &p.total;
        for g in 0..e.num_arrows() {
            for f in 0..e.num_arrows() {
                if report.cartesian[f] && report.cartesian[g] && e.src(g) == e.tgt(f) {
                    ensure(is_cartesian(&p, e.comp(g, f)), || "cartesian arrows do not compose".into())?;
                }
            }
        }
        let qf = qf_from_fibered(&p, 2).map_err(err)?;
        qf.diagram.check_strict().map_err(err)?;
        let r = qf.diagram.check_qf();
        ensure(r.holds(), || format!("(QF) fails: {r:?}"))?;
        let cmp = compare_lim(&p, 2).map_err(err)?;
        ensure(cmp.isomorphism, || format!("LIM(p) and lim E differ: {cmp:?}"))?;
        arrows += cmp.sections.1;
    }
    Ok(format!("{} diagrams, {arrows} section arrows matched", diagrams.len()))
}

fn bz2(cap: usize) -> SimplicialSet {
    CategoryNerve::new(&FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"), cap).set
}

fn collapsing(cap: usize) -> Result<SDiagram, String> {
    let b = FiniteCategory::ordinal(1);
    let x = standard_simplex(1, cap).map_err(err)?.set;
    let action = (0..b.num_arrows())
        .map(|f| if b.is_identity(f) { SimplicialMap::identity(&x) } else { SimplicialMap::constant(&x, 0) })
        .collect();
    SDiagram::new(b, vec![x.clone(), x], action).map_err(err)
}

fn holim() -> Outcome {
    let dim = 2;
    let point = FiniteCategory::ordinal(0);
    for x in [standard_simplex(2, 4).map_err(err)?.set, bz2(4)] {
        let f = SDiagram::constant(&point, &x).map_err(err)?;
        let h = holim_sset(&f, 2, dim).map_err(err)?;
        for m in 0..=dim {
            ensure(h.set().count(m) == x.count(m), || format!("terminal base, degree {m}"))?;
        }
        let lim = lim_sset(&f, dim).map_err(err)?;
        let map = lim_to_holim(&f, &lim, &h).map_err(err)?;
        ensure(map.is_isomorphism(&lim.0.set, h.set()), || "lim → holim is not an isomorphism over a point".into())?;
    }
    let span = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(1, 0), (1, 2)]).map_err(err)?;
    for b in [
        FiniteCategory::ordinal(1),
        FiniteCategory::ordinal(2),
        FiniteCategory::from_poset(&span),
        FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"),
        FiniteCategory::contractible_groupoid(2),
    ] {
        let f = SDiagram::constant(&b, &SimplicialSet::point(5)).map_err(err)?;
        let h = holim_sset(&f, 3, 1).map_err(err)?;
        ensure((0..=1).all(|m| h.set().count(m) == 1), || "holim of the point is not a point".into())?;
    }
    let arrow = FiniteCategory::ordinal(1);
    for f in [SDiagram::constant(&arrow, &bz2(3)).map_err(err)?, collapsing(4)?] {
        let h = holim_sset(&f, 2, 1).map_err(err)?;
        let lim = lim_sset(&f, 1).map_err(err)?;
        ensure(pi0(h.set()).count == pi0(&lim.0.set).count, || "π0 of holim and lim differ over [1]".into())?;
        let map = lim_to_holim(&f, &lim, &h).map_err(err)?;
        let images = nervelab::sset::homotopy::pi0_map(&map, &lim.0.set, h.set());
        let mut hit = images.clone();
        hit.sort_unstable();
        hit.dedup();
        ensure(hit.len() == pi0(h.set()).count, || "lim → holim is not onto π0".into())?;
    }
    Ok("terminal base, constant point over 5 bases, two diagrams over [1]".into())
}

// --- command-line determinism ---

struct Run {
    status: i32,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
    file: Option<Vec<u8>>,
}

fn cli(args: &[&str], dir: &Path, envs: &[(&str, &str)]) -> Result<Run, String> {
    let out_file = dir.join("out.json");
    let _ = fs::remove_file(&out_file);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nervelab"));
    cmd.args(args).current_dir(dir).env_remove("NERVELAB_CAP");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let o = cmd.output().map_err(err)?;
    let file = if args.contains(&"-o") { Some(fs::read(&out_file).map_err(err)?) } else { None };
    Ok(Run { status: o.status.code().unwrap_or(-1), stdout: o.stdout, stderr: o.stderr, file })
}

/// Runs a command twice and checks the runs agree byte for byte.
fn twice(args: &[&str], dir: &Path, envs: &[(&str, &str)], status: i32) -> Result<Run, String> {
    let a = cli(args, dir, envs)?;
    let b = cli(args, dir, envs)?;
    let name = args.join(" ");
    ensure(a.status == status, || format!("`{name}` exited {}: {}", a.status, String::from_utf8_lossy(&a.stderr)))?;
    ensure(a.status == b.status && a.stdout == b.stdout && a.stderr == b.stderr && a.file == b.file, || {
        format!("`{name}` differs between runs")
    })?;
    Ok(a)
}

fn json_of(bytes: &[u8]) -> Result<Value, String> {
    serde_json::from_slice(bytes).map_err(err)
}

fn pretty(v: &Value) -> Vec<u8> {
    (serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n").into_bytes()
}

fn write(dir: &Path, name: &str, v: &Value) -> Result<String, String> {
    fs::write(dir.join(name), pretty(v)).map_err(err)?;
    Ok(name.to_string())
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(err)?;
    let dir = tmp.path();
    let mut commands = 0;

    let h = twice(&["horn-image", "--n", "3", "--i", "1", "--a", "0", "--b", "3"], dir, &[], 0)?;
    ensure(json_of(&h.stdout)?["classification"] == "cubic horn Π_{1,1}, 3 faces", || "horn-image classification".into())?;
    let ind = twice(&["ind", "--n", "3"], dir, &[], 0)?;
    ensure(json_of(&ind.stdout)?["count"] == 13, || "ind count".into())?;
    commands += 2;

    // nerves: the CLI output equals the library's sset/v1 and re-ingests
    let input = counterexample_input();
    let (sc, sd, sf) = input.scats(3);
    let (nc, nd) = (hc_nerve(&sc, 2).map_err(err)?, hc_nerve(&sd, 2).map_err(err)?);
    let c_file = write(dir, "C.json", &input.c.to_json())?;
    let from_builtin = twice(&["nerve", "--builtin", "counterexample-C", "--flavor", "hc", "--dim", "2"], dir, &[], 0)?;
    let from_file = twice(&["nerve", &c_file, "--flavor", "hc", "--dim", "2"], dir, &[], 0)?;
    ensure(from_builtin.stdout == from_file.stdout, || "nerve of a file and of the built-in differ".into())?;
    ensure(from_builtin.stdout == pretty(&sset_json::to_json(nc.set())), || "CLI nerve differs from the library".into())?;
    let reread = sset_json::from_json(&json_of(&from_builtin.stdout)?).map_err(err)?;
    ensure(pretty(&sset_json::to_json(&reread)) == from_builtin.stdout, || "sset/v1 round trip is not stable".into())?;
    for flavor in ["standard", "wbar"] {
        twice(&["nerve", "--builtin", "BZ2", "--flavor", flavor, "--dim", "2", "-o", "out.json"], dir, &[], 0)?;
    }
    let by_env = twice(&["nerve", "--builtin", "BZ2", "--dim", "2"], dir, &[("NERVELAB_CAP", "4")], 0)?;
    let by_flag = twice(&["nerve", "--builtin", "BZ2", "--dim", "2", "--cap", "4"], dir, &[], 0)?;
    ensure(by_env.stdout == by_flag.stdout, || "NERVELAB_CAP and --cap disagree".into())?;
    commands += 6;

    let nc_file = write(dir, "NC.json", &sset_json::to_json(nc.set()))?;
    let nd_file = write(dir, "ND.json", &sset_json::to_json(nd.set()))?;
    let nf = map_nerve(&nc, &nd, &sf, &sc, &sd).map_err(err)?;
    let map_file = write(dir, "Nf.json", &sset_json::map_to_json(&nf))?;
    let k = twice(&["kan-check", &nc_file, "--dim", "2"], dir, &[], 0)?;
    ensure(json_of(&k.stdout)?["passed"] == false, || "𝔑(C) should fail the Kan check".into())?;
    let kf = twice(&["kan-check", &nc_file, "--dim", "2", "--map", &map_file, "--target", &nd_file, "--exhaustive"], dir, &[], 0)?;
    let kf = json_of(&kf.stdout)?;
    ensure(kf["failures"][0]["n"] == 2 && kf["failures"][0]["i"] == 0, || format!("kan-check --map: {}", kf["failures"][0]))?;
    commands += 2;

    for name in ["hc-counterexample", "standard-nerve-gap"] {
        twice(&["replay-counterexample", name, "-o", "out.json"], dir, &[], 0)?;
    }
    let b = twice(&["battery", "-o", "out.json"], dir, &[], 0)?;
    ensure(json_of(b.file.as_deref().unwrap_or_default())?["passed"] == true, || "battery report".into())?;
    commands += 3;

    // diagrams given as files agree with the built-ins they serialize
    let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
    let d = CatDiagram::constant(&FiniteCategory::ordinal(1), &z2).map_err(err)?;
    let d_file = write(dir, "diagram.json", &cat_diagram_to_json(&d))?;
    let q1 = twice(&["qf-check", &d_file, "--ncap", "2"], dir, &[], 0)?;
    let q2 = twice(&["qf-check", "--builtin", "z2-over-arrow", "--ncap", "2"], dir, &[], 0)?;
    ensure(q1.stdout == q2.stdout, || "qf-check on a file and on the built-in differ".into())?;
    twice(&["qf-check", "--builtin", "swap-over-z2", "--ncap", "3"], dir, &[], 0)?;
    let f = SDiagram::constant(&FiniteCategory::ordinal(1), &bz2(3)).map_err(err)?;
    let f_file = write(dir, "sdiagram.json", &sdiagram_to_json(&f))?;
    let h1 = twice(&["holim", &f_file, "--ncap", "2", "--dimcap", "1"], dir, &[], 0)?;
    let h2 = twice(&["holim", "--builtin", "bz2-over-arrow", "--ncap", "2", "--dimcap", "1"], dir, &[], 0)?;
    ensure(h1.stdout == h2.stdout, || "holim on a file and on the built-in differ".into())?;
    let set_file = write(dir, "holim_set.json", &json_of(&h1.stdout)?["set"])?;
    twice(&["kan-check", &set_file, "--dim", "1"], dir, &[], 0)?;
    twice(&["adjunction-check", "--builtin", "BZ2", "--shape", "horn", "--n", "2", "--i", "0"], dir, &[], 0)?;
    commands += 7;

    fs::write(dir.join("broken.json"), "{\"schema\": \"sset/v1\", \"cap\": 1, \"cells\": [[0], [1]], \"faces\": {\"1\": [{\"nd\": 7}, {\"nd\": 0}]}}")
        .map_err(err)?;
    let bad = twice(&["kan-check", "broken.json"], dir, &[], 2)?;
    ensure(String::from_utf8_lossy(&bad.stderr).contains("/faces/1/0/nd"), || "parse error without a pointer".into())?;
    let input_before = fs::read(dir.join(&d_file)).map_err(err)?;
    ensure(input_before == pretty(&cat_diagram_to_json(&d)), || "an input file was modified".into())?;
    commands += 1;
    Ok(format!("{commands} invocations, each run twice"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("horn-image identities", horn_images),
        ("free generators of Δ_N", free_generators),
        ("Δ_N ⊣ 𝔑 adjunction", adjunction),
        ("coherent nerve counterexample", counterexample),
        ("fibrant groupoid battery", battery),
        ("comparison maps", comparisons),
        ("cosimplicial coherence", cosimplicial),
        ("quasifibered suite", quasifibered),
        ("holim sanity", holim),
        ("CLI determinism and round trip", determinism),
    ];
    // criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(k + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
