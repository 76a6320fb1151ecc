//! Reading JSON inputs and the built-in examples.

use std::fs;
use std::path::Path;

use nervelab::cases::counterexample_input;
use nervelab::fincat::FiniteCategory;
use nervelab::group::FiniteGroup;
use nervelab::qf::{cat_diagram_from_json_at, sdiagram_from_json_at, CatDiagram, SDiagram};
use nervelab::scat::{json as scat_json, SimplicialCategory};
use nervelab::sset::{json as sset_json, standard_simplex, SimplicialMap, SimplicialSet};
use nervelab::{Error, Result};
use serde_json::Value;

pub const CATEGORIES: [&str; 7] = ["counterexample-C", "counterexample-D", "BZ2", "BZ3", "BS3", "contractible-2", "ordinal-2"];
pub const CAT_DIAGRAMS: [&str; 2] = ["z2-over-arrow", "swap-over-z2"];
pub const SDIAGRAMS: [&str; 3] = ["bz2-over-arrow", "collapsing-arrow", "point-over-z2"];

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse { pointer: String::new(), message: format!("{}: {e}", path.display()) })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse { pointer: String::new(), message: format!("{}: {e}", path.display()) })
}

fn unknown(kind: &str, name: &str, known: &[&str]) -> Error {
    Error::Invalid(format!("unknown built-in {kind} {name:?}; expected one of {known:?}"))
}

pub fn builtin_category(name: &str) -> Result<FiniteCategory> {
    let bg = |g: FiniteGroup| FiniteCategory::from_group(&g, "g");
    Ok(match name {
        "counterexample-C" => counterexample_input().c,
        "counterexample-D" => counterexample_input().d,
        "BZ2" => bg(FiniteGroup::cyclic(2)),
        "BZ3" => bg(FiniteGroup::cyclic(3)),
        "BS3" => bg(FiniteGroup::symmetric3()),
        "contractible-2" => FiniteCategory::contractible_groupoid(2),
        "ordinal-2" => FiniteCategory::ordinal(2),
        _ => return Err(unknown("category", name, &CATEGORIES)),
    })
}

/// A `scat/v1` document, or a `cat/v1` category taken as discrete.
pub fn scat_from_json(v: &Value, cap: usize) -> Result<SimplicialCategory> {
    match v.get("schema").and_then(Value::as_str) {
        Some("cat/v1") => Ok(SimplicialCategory::discrete(&FiniteCategory::from_json_at(v, "")?, cap)),
        _ => scat_json::from_json(v),
    }
}

pub fn load_scat(input: Option<&Path>, builtin: Option<&str>, cap: usize) -> Result<SimplicialCategory> {
    match (input, builtin) {
        (Some(p), None) => scat_from_json(&read_json(p)?, cap),
        (None, Some(name)) => Ok(SimplicialCategory::discrete(&builtin_category(name)?, cap)),
        _ => Err(Error::Invalid("give exactly one of an input file and --builtin".into())),
    }
}

pub fn builtin_cat_diagram(name: &str) -> Result<CatDiagram> {
    let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
    match name {
        "z2-over-arrow" => CatDiagram::constant(&FiniteCategory::ordinal(1), &z2),
        "swap-over-z2" => {
            let d = FiniteCategory::discrete(2);
            let swap = nervelab::fincat::Functor { object_map: vec![1, 0], arrow_map: vec![1, 0] };
            CatDiagram::new(z2, vec![d.clone()], vec![nervelab::fincat::Functor::identity(&d), swap])
        }
        _ => Err(unknown("diagram", name, &CAT_DIAGRAMS)),
    }
}

pub fn load_cat_diagram(input: Option<&Path>, builtin: Option<&str>) -> Result<CatDiagram> {
    match (input, builtin) {
        (Some(p), None) => cat_diagram_from_json_at(&read_json(p)?, ""),
        (None, Some(name)) => builtin_cat_diagram(name),
        _ => Err(Error::Invalid("give exactly one of an input file and --builtin".into())),
    }
}

pub fn builtin_sdiagram(name: &str, cap: usize) -> Result<SDiagram> {
    let arrow = FiniteCategory::ordinal(1);
    match name {
        "bz2-over-arrow" => {
            let bz2 = nervelab::fincat::CategoryNerve::new(&FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"), cap).set;
            SDiagram::constant(&arrow, &bz2)
        }
        "collapsing-arrow" => {
            let x = standard_simplex(1, cap)?.set;
            let action = (0..arrow.num_arrows())
                .map(|f| if arrow.is_identity(f) { SimplicialMap::identity(&x) } else { SimplicialMap::constant(&x, 0) })
                .collect();
            SDiagram::new(arrow, vec![x.clone(), x], action)
        }
        "point-over-z2" => {
            SDiagram::constant(&FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"), &SimplicialSet::point(cap))
        }
        _ => Err(unknown("diagram", name, &SDIAGRAMS)),
    }
}

pub fn load_sdiagram(input: Option<&Path>, builtin: Option<&str>, cap: usize) -> Result<SDiagram> {
    match (input, builtin) {
        (Some(p), None) => sdiagram_from_json_at(&read_json(p)?, ""),
        (None, Some(name)) => builtin_sdiagram(name, cap),
        _ => Err(Error::Invalid("give exactly one of an input file and --builtin".into())),
    }
}

pub fn load_sset(path: &Path) -> Result<(SimplicialSet, std::collections::HashMap<u64, u32>)> {
    sset_json::from_json_with_ids(&read_json(path)?, "")
}
