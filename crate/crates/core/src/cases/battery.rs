use serde_json::{json, Value};

use super::{Claim, Scenario};
use crate::error::Result;
use crate::fincat::{CategoryNerve, FiniteCategory, Functor};
use crate::group::FiniteGroup;
use crate::nerves::{compare_homotopy, comparison_maps, hc_nerve, map_nerve};
use crate::scat::{is_fibrant_groupoid, is_weak_fibration, SimplicialCategory, SimplicialFunctor};
use crate::sset::{edge_path_presentation, is_kan, is_kan_fibration, pi0};

/// Horn dimension of the Kan and Kan-fibration checks.
pub const BATTERY_DEPTH: usize = 3;

/// Degree up to which the three nerves are compared.
const COMPARISON_DEPTH: usize = 2;

#[derive(Clone, Debug)]
pub struct BatteryGroupoid {
    pub name: String,
    pub category: FiniteCategory,
    /// The automorphism group of each object.
    pub group: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct BatteryQuotient {
    pub name: String,
    pub src: FiniteCategory,
    pub tgt: FiniteCategory,
    pub functor: Functor,
}

#[derive(Clone, Debug)]
pub struct BatteryInput {
    pub groupoids: Vec<BatteryGroupoid>,
    pub quotients: Vec<BatteryQuotient>,
}

fn product_group(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let mul = (0..m * n)
        .map(|x| (0..m * n).map(|y| g.op(x / n, y / n) * n + h.op(x % n, y % n)).collect())
        .collect();
    FiniteGroup::from_table(mul).expect("products of groups are groups")
}

fn bg(g: &FiniteGroup, name: &str) -> FiniteCategory {
    FiniteCategory::from_group(g, name)
}

/// The functor `BG → BH` of a homomorphism given on element indices.
fn quotient(name: &str, g: &FiniteGroup, h: &FiniteGroup, phi: impl Fn(usize) -> usize) -> BatteryQuotient {
    let (src, tgt) = (bg(g, "g"), bg(h, "h"));
    let functor = Functor { object_map: vec![0], arrow_map: (0..g.order()).map(phi).collect() };
    functor.validate(&src, &tgt).expect("a group homomorphism");
    BatteryQuotient { name: name.into(), src, tgt, functor }
}

pub fn battery_inputs() -> BatteryInput {
    let (z2, z3, z4, z6, s3) =
        (FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), FiniteGroup::symmetric3());
    let z2z3 = product_group(&z2, &z3);
    let z2z2 = product_group(&z2, &z2);
    let one = FiniteGroup::cyclic(1);
    let groupoids = vec![
        BatteryGroupoid { name: "B(Z/2)".into(), category: bg(&z2, "g"), group: z2.clone() },
        BatteryGroupoid { name: "B(Z/3)".into(), category: bg(&z3, "g"), group: z3.clone() },
        BatteryGroupoid { name: "B(S3)".into(), category: bg(&s3, "g"), group: s3.clone() },
        BatteryGroupoid { name: "B(Z/2) × B(Z/3)".into(), category: bg(&z2, "a").product(&bg(&z3, "b")), group: z2z3.clone() },
        BatteryGroupoid { name: "B(Z/2) × B(Z/2)".into(), category: bg(&z2, "a").product(&bg(&z2, "b")), group: z2z2.clone() },
        BatteryGroupoid { name: "contractible groupoid on 2 objects".into(), category: FiniteCategory::contractible_groupoid(2), group: one },
    ];
    // odd permutations of S3 are exactly its elements of order 2
    let sign = |x: usize| usize::from(s3.element_order(x) == 2);
    let collapse = {
        let (src, tgt) = (FiniteCategory::contractible_groupoid(2), FiniteCategory::ordinal(0));
        let functor = Functor { object_map: vec![0, 0], arrow_map: vec![0; src.num_arrows()] };
        BatteryQuotient { name: "contractible groupoid on 2 objects → point".into(), src, tgt, functor }
    };
    let quotients = vec![
        quotient("Z/4 → Z/2", &z4, &z2, |x| x % 2),
        quotient("Z/6 → Z/3", &z6, &z3, |x| x % 3),
        quotient("Z/6 → Z/2", &z6, &z2, |x| x % 2),
        quotient("S3 → Z/2 (sign)", &s3, &z2, sign),
        quotient("Z/2 × Z/3 → Z/3", &z2z3, &z3, |x| x % 3),
        quotient("Z/2 × Z/2 → Z/2", &z2z2, &z2, |x| x / 2),
        quotient("Z/3 → 1", &z3, &FiniteGroup::cyclic(1), |_| 0),
        collapse,
    ];
    BatteryInput { groupoids, quotients }
}

/// Sorted element orders: the isomorphism oracle for groups of order < 8.
fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

fn iso_classes(c: &FiniteCategory) -> usize {
    (0..c.num_objects()).filter(|&x| (0..x).all(|y| !c.isomorphic_objects(x, y))).count()
}

fn groupoid_scenario(input: &BatteryGroupoid, depth: usize) -> Result<Scenario> {
    let c = &input.category;
    let sc = SimplicialCategory::discrete(c, depth + 1);
    let mut claims = vec![Claim::new("fibrant groupoid", true, is_fibrant_groupoid(&sc, depth)?)];
    let nerve = hc_nerve(&sc, depth)?;
    let kan = is_kan(nerve.set(), depth)?;
    claims.push(Claim::new(format!("𝔑 is Kan up to dimension {depth}"), true, kan.passed));
    claims.push(Claim::new("π0(𝔑)", iso_classes(c), pi0(nerve.set()).count));
    let pi1 = edge_path_presentation(nerve.set(), 0)?;
    claims.push(Claim::new(
        "π1(𝔑) element orders",
        Some(order_profile(&input.group)),
        pi1.group.as_ref().map(order_profile),
    ));

    let small = SimplicialCategory::discrete(c, COMPARISON_DEPTH);
    let cmp = comparison_maps(&small, COMPARISON_DEPTH)?;
    let classical = CategoryNerve::new(c, COMPARISON_DEPTH).set.nd_counts();
    let counts: Vec<Vec<usize>> = [&cmp.standard, &cmp.wbar, &cmp.hc].iter().map(|n| n.set().nd_counts()).collect();
    claims.push(Claim::new("N, W̄, 𝔑 match the classical nerve", vec![classical; 3], counts));
    let composite = cmp.composite();
    let maps = [
        ("N → W̄", &cmp.pi_star, cmp.standard.set(), cmp.wbar.set()),
        ("W̄ → 𝔑", &cmp.tau_star, cmp.wbar.set(), cmp.hc.set()),
        ("N → 𝔑", &composite, cmp.standard.set(), cmp.hc.set()),
    ];
    for (name, f, x, y) in maps {
        claims.push(Claim::new(format!("{name} on π0 and π1"), true, compare_homotopy(f, x, y)?.holds()));
    }
    Ok(Scenario {
        name: input.name.clone(),
        inputs: json!({"category": c.to_json()}),
        claims,
        witnesses: json!({
            "kan_failure": kan.first_failure().map(|w| json!({"n": w.n, "i": w.i})),
            "horns_checked": kan.horns_checked,
            "pi1_relators": pi1.presentation.relators.len(),
        }),
    })
}

fn quotient_scenario(input: &BatteryQuotient, depth: usize) -> Result<Scenario> {
    let sc = SimplicialCategory::discrete(&input.src, depth + 1);
    let sd = SimplicialCategory::discrete(&input.tgt, depth + 1);
    let sf = SimplicialFunctor::discrete(&input.functor, &input.src, &input.tgt);
    let mut claims = vec![
        Claim::new("source is a fibrant groupoid", true, is_fibrant_groupoid(&sc, depth)?),
        Claim::new("target is a fibrant groupoid", true, is_fibrant_groupoid(&sd, depth)?),
        Claim::new("weak fibration", true, is_weak_fibration(&sf, &sc, &sd, depth)?.holds),
    ];
    let (nc, nd) = (hc_nerve(&sc, depth)?, hc_nerve(&sd, depth)?);
    let m = map_nerve(&nc, &nd, &sf, &sc, &sd)?;
    let report = is_kan_fibration(&m, nc.set(), nd.set(), depth)?;
    claims.push(Claim::new(format!("𝔑(f) is a Kan fibration up to dimension {depth}"), true, report.passed));
    Ok(Scenario {
        name: input.name.clone(),
        inputs: json!({"src": input.src.to_json(), "tgt": input.tgt.to_json(), "f": input.functor.to_json()}),
        claims,
        witnesses: json!({
            "failure": report.first_failure().map(|w| json!({"n": w.n, "i": w.i})),
            "squares_checked": report.horns_checked,
        }),
    })
}

/// One scenario per battery groupoid and per quotient functor.
pub fn scenario_fibrant_groupoid_battery() -> Result<Vec<Scenario>> {
    let input = battery_inputs();
    let mut out = Vec::new();
    for g in &input.groupoids {
        out.push(groupoid_scenario(g, BATTERY_DEPTH)?);
    }
    for q in &input.quotients {
        out.push(quotient_scenario(q, BATTERY_DEPTH)?);
    }
    Ok(out)
}

/// The battery as one JSON report.
pub fn battery_json(scenarios: &[Scenario]) -> Value {
    json!({
        "schema": "battery/v1",
        "passed": scenarios.iter().all(Scenario::passed),
        "scenarios": scenarios.iter().map(Scenario::to_json).collect::<Vec<_>>(),
    })
}
