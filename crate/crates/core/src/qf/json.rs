//! `cat/v1` diagrams of categories and of simplicial sets.

use std::collections::HashMap;

use serde_json::{json, Value};

use super::{CatDiagram, SDiagram};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, Functor};
use crate::sset::json::{as_array, check_schema, field, from_json_with_ids, map_from_json_at, map_to_json};
use crate::sset::{json as sset_json, SimplicialSet};

fn list<'a>(v: &'a Value, key: &str, pointer: &str) -> Result<&'a Vec<Value>> {
    as_array(field(v, key, pointer)?, &format!("{pointer}/{key}"))
}

fn check_kind(v: &Value, kind: &str, pointer: &str) -> Result<()> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        _ => Err(Error::parse(format!("{pointer}/kind"), format!("expected \"{kind}\""))),
    }
}

fn base_of(v: &Value, pointer: &str) -> Result<FiniteCategory> {
    FiniteCategory::from_json_at(field(v, "base", pointer)?, &format!("{pointer}/base"))
}

pub fn cat_diagram_to_json(d: &CatDiagram) -> Value {
    json!({
        "schema": "cat/v1",
        "kind": "diagram",
        "base": d.base.to_json(),
        "values": d.values.iter().map(FiniteCategory::to_json).collect::<Vec<_>>(),
        "action": d.action.iter().map(Functor::to_json).collect::<Vec<_>>(),
    })
}

/// A strict functor `B^op → Cat`; `action[φ]` goes from the value at the
/// target of `φ` to the value at its source.
pub fn cat_diagram_from_json_at(v: &Value, pointer: &str) -> Result<CatDiagram> {
    check_schema(v, "cat/v1", pointer)?;
    check_kind(v, "diagram", pointer)?;
    let base = base_of(v, pointer)?;
    let values: Vec<FiniteCategory> = list(v, "values", pointer)?
        .iter()
        .enumerate()
        .map(|(k, c)| FiniteCategory::from_json_at(c, &format!("{pointer}/values/{k}")))
        .collect::<Result<_>>()?;
    if values.len() != base.num_objects() {
        return Err(Error::parse(format!("{pointer}/values"), "one value per base object required"));
    }
    let mut action = Vec::new();
    for (k, f) in list(v, "action", pointer)?.iter().enumerate() {
        let p = format!("{pointer}/action/{k}");
        if k >= base.num_arrows() {
            return Err(Error::parse(p, "more functors than base arrows"));
        }
        let f = Functor::from_json_at(f, &p)?;
        f.validate(&values[base.tgt(k)], &values[base.src(k)]).map_err(|e| Error::parse(&p, e.to_string()))?;
        action.push(f);
    }
    CatDiagram::new(base, values, action).map_err(|e| Error::parse(format!("{pointer}/action"), e.to_string()))
}

pub fn sdiagram_to_json(d: &SDiagram) -> Value {
    json!({
        "schema": "cat/v1",
        "kind": "sdiagram",
        "base": d.base.to_json(),
        "values": d.values.iter().map(sset_json::to_json).collect::<Vec<_>>(),
        "action": d.action.iter().map(map_to_json).collect::<Vec<_>>(),
    })
}

/// A strict functor `B^op → sSet` with `sset/v1` values.
pub fn sdiagram_from_json_at(v: &Value, pointer: &str) -> Result<SDiagram> {
    check_schema(v, "cat/v1", pointer)?;
    check_kind(v, "sdiagram", pointer)?;
    let base = base_of(v, pointer)?;
    let values: Vec<(SimplicialSet, HashMap<u64, u32>)> = list(v, "values", pointer)?
        .iter()
        .enumerate()
        .map(|(k, x)| from_json_with_ids(x, &format!("{pointer}/values/{k}")))
        .collect::<Result<_>>()?;
    if values.len() != base.num_objects() {
        return Err(Error::parse(format!("{pointer}/values"), "one value per base object required"));
    }
    let mut action = Vec::new();
    for (k, f) in list(v, "action", pointer)?.iter().enumerate() {
        let p = format!("{pointer}/action/{k}");
        if k >= base.num_arrows() {
            return Err(Error::parse(p, "more maps than base arrows"));
        }
        let (s, t) = (&values[base.tgt(k)], &values[base.src(k)]);
        action.push(map_from_json_at(f, (&s.0, &s.1), (&t.0, &t.1), &p)?);
    }
    let values = values.into_iter().map(|(x, _)| x).collect();
    SDiagram::new(base, values, action).map_err(|e| Error::parse(format!("{pointer}/action"), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::sset::{standard_simplex, SimplicialMap};

    #[test]
    fn diagrams_round_trip() {
        let b = FiniteCategory::ordinal(1);
        let values = vec![FiniteCategory::discrete(2), FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z")];
        for d in CatDiagram::enumerate(&b, &values, 3).into_iter().chain(CatDiagram::enumerate(&b, &[values[0].clone(), values[0].clone()], 3)) {
            let v = cat_diagram_to_json(&d);
            let back = cat_diagram_from_json_at(&v, "").unwrap();
            assert_eq!(cat_diagram_to_json(&back), v);
        }
        let x = standard_simplex(1, 2).unwrap().set;
        let action = (0..b.num_arrows())
            .map(|f| if b.is_identity(f) { SimplicialMap::identity(&x) } else { SimplicialMap::constant(&x, 0) })
            .collect();
        let f = SDiagram::new(b.clone(), vec![x.clone(), x], action).unwrap();
        let v = sdiagram_to_json(&f);
        assert_eq!(sdiagram_to_json(&sdiagram_from_json_at(&v, "").unwrap()), v);
    }

    #[test]
    fn bad_action_points_at_the_functor() {
        let b = FiniteCategory::ordinal(1);
        let d = CatDiagram::constant(&b, &FiniteCategory::discrete(2)).unwrap();
        let mut v = cat_diagram_to_json(&d);
        v["action"][1]["objects"] = json!([0, 5]);
        assert!(matches!(cat_diagram_from_json_at(&v, ""), Err(Error::Parse { pointer, .. }) if pointer == "/action/1"));
    }
}
