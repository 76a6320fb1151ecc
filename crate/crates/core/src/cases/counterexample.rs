use serde_json::{json, Value};

use super::{named_category, Claim, Scenario};
use crate::error::Result;
use crate::fincat::{FiniteCategory, Functor};
use crate::nerves::{fill_horn_hc, hc_nerve, map_nerve, Nerve};
use crate::scat::{is_fibrant, is_weak_fibration, SimplicialCategory, SimplicialFunctor};
use crate::sset::kan::{check_kan_fibration, HornWitness, KanOptions};
use crate::sset::{extend_maps, horn, is_kan_fibration, SimplexRef};

/// `f : C → D` between discrete categories on `0, 1, 2`: `C` has two
/// parallel arrows `u02 = u12 ∘ u01` and `w02`, both sent to `v02`.
#[derive(Clone, Debug)]
pub struct CounterexampleInput {
    pub c: FiniteCategory,
    pub d: FiniteCategory,
    pub f: Functor,
}

impl CounterexampleInput {
    pub fn scats(&self, cap: usize) -> (SimplicialCategory, SimplicialCategory, SimplicialFunctor) {
        (
            SimplicialCategory::discrete(&self.c, cap),
            SimplicialCategory::discrete(&self.d, cap),
            SimplicialFunctor::discrete(&self.f, &self.c, &self.d),
        )
    }
}

pub fn counterexample_input() -> CounterexampleInput {
    let objects = ["0", "1", "2"];
    let c = named_category(
        &objects,
        &[("u01", 0, 1), ("u12", 1, 2), ("u02", 0, 2), ("w02", 0, 2)],
        &[("u12", "u01", "u02")],
    )
    .expect("C is a category");
    let d = named_category(&objects, &[("v01", 0, 1), ("v12", 1, 2), ("v02", 0, 2)], &[("v12", "v01", "v02")])
        .expect("D is a category");
    let image = |name: &str| {
        let target = match name {
            "u01" => "v01",
            "u12" => "v12",
            "u02" | "w02" => "v02",
            id => id,
        };
        d.arrow_by_name(target).expect("image arrow")
    };
    let f = Functor { object_map: vec![0, 1, 2], arrow_map: c.arrows.iter().map(|a| image(&a.name)).collect() };
    f.validate(&c, &d).expect("f is a functor");
    CounterexampleInput { c, d, f }
}

/// The name of the arrow of `c` carried by a 1-simplex of `𝔑(C)`.
fn edge_name(c: &FiniteCategory, nerve: &Nerve, r: &SimplexRef) -> String {
    let g = nerve.functor(r);
    let (a, b) = (g.object_map[0], g.object_map[1]);
    c.arrows[c.hom(a, b)[g.hom_maps[1].assignment[0].nd as usize]].name.clone()
}

/// The spine `(x_0 → x_1, x_1 → x_2)` of a 2-simplex of `𝔑(C)`.
fn spine(c: &FiniteCategory, nerve: &Nerve, r: &SimplexRef) -> Vec<String> {
    let g = nerve.functor(r);
    [(0, 1), (1, 2)]
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (g.object_map[a], g.object_map[b]);
            c.arrows[c.hom(x, y)[g.hom_maps[a * 3 + b].assignment[0].nd as usize]].name.clone()
        })
        .collect()
}

fn horn_json(w: &HornWitness, c: &FiniteCategory, nc: &Nerve, d: &FiniteCategory, nd: &Nerve) -> Value {
    let faces: serde_json::Map<String, Value> =
        w.faces.iter().map(|(j, r)| (format!("d{j}"), Value::from(edge_name(c, nc, r)))).collect();
    json!({
        "n": w.n,
        "i": w.i,
        "faces": faces,
        "base_spine": w.base.as_ref().map(|b| spine(d, nd, b)),
    })
}

/// A strong fibration of fibrant simplicial categories whose coherent
/// nerve is not a Kan fibration.
pub fn scenario_hc_counterexample() -> Result<Scenario> {
    let input = counterexample_input();
    let up_to = 2;
    let (sc, sd, sf) = input.scats(up_to + 1);
    let (c, d) = (&input.c, &input.d);
    let mut claims = vec![
        Claim::new("C is fibrant", true, is_fibrant(&sc, up_to)?.fibrant),
        Claim::new("D is fibrant", true, is_fibrant(&sd, up_to)?.fibrant),
        Claim::new("f is a weak fibration", true, is_weak_fibration(&sf, &sc, &sd, up_to)?.holds),
    ];
    let nc = hc_nerve(&sc, up_to)?;
    let nd = hc_nerve(&sd, up_to)?;
    claims.push(Claim::new("nondegenerate 1-simplices of 𝔑(C)", 4, nc.set().nd_counts()[1]));
    let nf = map_nerve(&nc, &nd, &sf, &sc, &sd)?;
    let report = is_kan_fibration(&nf, nc.set(), nd.set(), up_to)?;
    claims.push(Claim::new("𝔑(f) is a Kan fibration", false, report.passed));
    let first = report.first_failure();
    claims.push(Claim::new("first failing horn (n, i)", Some((2, 0)), first.map(|w| (w.n, w.i))));
    let faces = first.map(|w| horn_json(w, c, &nc, d, &nd)["faces"].clone());
    claims.push(Claim::new("witness faces", Some(json!({"d1": "w02", "d2": "u01"})), faces));

    // the witness horn has no filler in 𝔑(C) either: its adjoint functor
    // Δ_N(Λ^2_0) → C does not extend to Δ_N^2
    let filled = match first {
        Some(w) => {
            let lambda = horn(2, 0, up_to)?;
            let mut partial = vec![None; lambda.set.num_cells()];
            for (j, r) in &w.faces {
                let chain: Vec<usize> = (0..=2).filter(|t| t != j).collect();
                partial[lambda.index[&chain] as usize] = Some(r.clone());
            }
            let h = extend_maps(&lambda.set, nc.set(), &partial)?.into_iter().next().expect("horn faces determine the map");
            Some(fill_horn_hc(&sc, &nc, 2, 0, &h)?.is_filled())
        }
        None => None,
    };
    claims.push(Claim::new("witness horn fills in 𝔑(C)", Some(false), filled));

    let all = check_kan_fibration(&nf, nc.set(), nd.set(), up_to, &KanOptions { exhaustive: true, ..KanOptions::default() })?;
    let witnesses = json!({
        "first_failure": first.map(|w| horn_json(w, c, &nc, d, &nd)),
        "all_failures": all.failures.iter().map(|w| horn_json(w, c, &nc, d, &nd)).collect::<Vec<_>>(),
        "horns_checked": all.horns_checked,
    });
    Ok(Scenario {
        name: "hc-counterexample".into(),
        inputs: json!({"C": c.to_json(), "D": d.to_json(), "f": input.f.to_json()}),
        claims,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_claims_hold() {
        let s = scenario_hc_counterexample().unwrap();
        assert!(s.passed(), "{}", s.summary());
        let failures = s.witnesses["all_failures"].as_array().unwrap();
        assert!(failures.iter().all(|w| w["n"] == 2));
    }

    #[test]
    fn the_functor_collapses_the_parallel_arrows() {
        let input = counterexample_input();
        let image = |n: &str| input.f.arrow_map[input.c.arrow_by_name(n).unwrap()];
        assert_eq!(image("u02"), image("w02"));
        assert_ne!(image("u01"), image("u12"));
    }
}
