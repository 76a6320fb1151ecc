//! The `sset/v1` interchange format.

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use super::{DegeneracyWord, SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

pub const SCHEMA: &str = "sset/v1";

pub fn simplex_ref_to_json(r: &SimplexRef) -> Value {
    json!({ "nd": r.nd, "word": r.word().0 })
}

pub fn to_json(x: &SimplicialSet) -> Value {
    let cells: Vec<Vec<u32>> = (0..=x.cap()).map(|m| x.cells(m).collect()).collect();
    let mut faces = Map::new();
    for c in 0..x.num_cells() as u32 {
        if x.dim_of(c) > 0 {
            faces.insert(
                c.to_string(),
                Value::Array(x.cell_faces(c).iter().map(simplex_ref_to_json).collect()),
            );
        }
    }
    json!({ "schema": SCHEMA, "cap": x.cap(), "cells": cells, "faces": faces })
}

pub(crate) fn as_uint(v: &Value, pointer: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::parse(pointer, "expected a nonnegative integer"))
}

pub(crate) fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(pointer, "expected an array"))
}

pub(crate) fn field<'a>(v: &'a Value, key: &str, pointer: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("{pointer}/{key}"), "missing field"))
}

pub(crate) fn check_schema(v: &Value, expected: &str, pointer: &str) -> Result<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == expected => Ok(()),
        Some(other) => Err(Error::parse(
            format!("{pointer}/schema"),
            format!("expected \"{expected}\", found {other}"),
        )),
    }
}

/// Parses a simplicial set; `pointer` prefixes error locations.
pub fn from_json_at(v: &Value, pointer: &str) -> Result<SimplicialSet> {
    from_json_with_ids(v, pointer).map(|(x, _)| x)
}

/// Parses a simplicial set and returns the new id of every id in the input.
pub fn from_json_with_ids(v: &Value, pointer: &str) -> Result<(SimplicialSet, HashMap<u64, u32>)> {
    check_schema(v, SCHEMA, pointer)?;
    let cap = as_uint(field(v, "cap", pointer)?, &format!("{pointer}/cap"))?;
    let cells = as_array(field(v, "cells", pointer)?, &format!("{pointer}/cells"))?;
    if cells.len() > cap + 1 {
        return Err(Error::parse(format!("{pointer}/cells"), format!("more than cap+1 = {} levels", cap + 1)));
    }
    let faces_v = v.get("faces").cloned().unwrap_or(Value::Object(Map::new()));
    let faces = faces_v
        .as_object()
        .ok_or_else(|| Error::parse(format!("{pointer}/faces"), "expected an object"))?;
    let mut canon: HashMap<u64, (u32, usize)> = HashMap::new();
    let mut b = SimplicialSet::builder(cap);
    for (m, level) in cells.iter().enumerate() {
        let lp = format!("{pointer}/cells/{m}");
        for (k, id) in as_array(level, &lp)?.iter().enumerate() {
            let ip = format!("{lp}/{k}");
            let id = id.as_u64().ok_or_else(|| Error::parse(&ip, "expected an integer id"))?;
            if canon.contains_key(&id) {
                return Err(Error::parse(&ip, format!("duplicate cell id {id}")));
            }
            let mut fs = Vec::new();
            if m > 0 {
                let fp = format!("{pointer}/faces/{id}");
                let list = faces
                    .get(&id.to_string())
                    .ok_or_else(|| Error::parse(&fp, "missing faces for cell"))?;
                let list = as_array(list, &fp)?;
                if list.len() != m + 1 {
                    return Err(Error::parse(&fp, format!("expected {} faces", m + 1)));
                }
                for (i, f) in list.iter().enumerate() {
                    fs.push(parse_ref(f, &canon, m - 1, &format!("{fp}/{i}"))?);
                }
            }
            let new = b.add_cell(fs).map_err(|e| Error::parse(&ip, e.to_string()))?;
            canon.insert(id, (new, m));
        }
    }
    for key in faces.keys() {
        let known = key.parse::<u64>().ok().and_then(|id| canon.get(&id)).is_some_and(|&(_, m)| m > 0);
        if !known {
            return Err(Error::parse(format!("{pointer}/faces/{key}"), "faces for an unknown or 0-dimensional cell"));
        }
    }
    Ok((b.finish(), canon.into_iter().map(|(k, (id, _))| (k, id)).collect()))
}

/// Parses a `{nd, word}` reference of dimension `dim` against renumbered ids.
pub fn parse_ref_with_ids(
    x: &SimplicialSet,
    ids: &HashMap<u64, u32>,
    v: &Value,
    dim: usize,
    pointer: &str,
) -> Result<SimplexRef> {
    let canon: HashMap<u64, (u32, usize)> = ids.iter().map(|(&k, &id)| (k, (id, x.dim_of(id)))).collect();
    parse_ref(v, &canon, dim, pointer)
}

fn parse_ref(v: &Value, canon: &HashMap<u64, (u32, usize)>, dim: usize, pointer: &str) -> Result<SimplexRef> {
    let nd = field(v, "nd", pointer)?
        .as_u64()
        .ok_or_else(|| Error::parse(format!("{pointer}/nd"), "expected an integer id"))?;
    let &(id, m) = canon
        .get(&nd)
        .ok_or_else(|| Error::parse(format!("{pointer}/nd"), format!("unknown or later cell {nd}")))?;
    let word: Vec<usize> = match v.get("word") {
        None => Vec::new(),
        Some(w) => as_array(w, &format!("{pointer}/word"))?
            .iter()
            .enumerate()
            .map(|(k, x)| as_uint(x, &format!("{pointer}/word/{k}")))
            .collect::<Result<_>>()?,
    };
    let word = DegeneracyWord::new(word).map_err(|e| Error::parse(format!("{pointer}/word"), e.to_string()))?;
    if m + word.0.len() != dim {
        return Err(Error::parse(pointer, format!("simplex has dimension {} but {dim} is required", m + word.0.len())));
    }
    let surj = word.to_surjection(m).map_err(|e| Error::parse(format!("{pointer}/word"), e.to_string()))?;
    Ok(SimplexRef { nd: id, surj })
}

pub fn map_to_json(f: &SimplicialMap) -> Value {
    let assignment: Map<String, Value> =
        f.assignment.iter().enumerate().map(|(c, r)| (c.to_string(), simplex_ref_to_json(r))).collect();
    json!({ "schema": SCHEMA, "kind": "map", "assignment": assignment })
}

/// Parses a map keyed by source cell ids into a target with its own ids.
pub fn map_from_json_at(
    v: &Value,
    src: (&SimplicialSet, &HashMap<u64, u32>),
    tgt: (&SimplicialSet, &HashMap<u64, u32>),
    pointer: &str,
) -> Result<SimplicialMap> {
    let ap = format!("{pointer}/assignment");
    let a = field(v, "assignment", pointer)?.as_object().ok_or_else(|| Error::parse(&ap, "expected an object"))?;
    let mut assignment = vec![None; src.0.num_cells()];
    for (key, r) in a {
        let p = format!("{ap}/{key}");
        let cell = key.parse::<u64>().ok().and_then(|id| src.1.get(&id)).ok_or_else(|| Error::parse(&p, "unknown source cell"))?;
        assignment[*cell as usize] = Some(parse_ref_with_ids(tgt.0, tgt.1, r, src.0.dim_of(*cell), &p)?);
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(c, r)| r.ok_or_else(|| Error::parse(&ap, format!("no image for source cell {c}"))))
        .collect::<Result<_>>()?;
    let m = SimplicialMap { assignment };
    m.validate(src.0, tgt.0).map_err(|e| Error::parse(pointer, e.to_string()))?;
    Ok(m)
}

pub fn from_json(v: &Value) -> Result<SimplicialSet> {
    from_json_at(v, "")
}

pub fn from_str(s: &str) -> Result<SimplicialSet> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::parse("", e.to_string()))?;
    from_json(&v)
}

pub fn to_string(x: &SimplicialSet) -> String {
    serde_json::to_string(&to_json(x)).expect("JSON values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::ops::quotient_collapse;
    use crate::sset::poset::{boundary_subcomplex, standard_simplex};

    #[test]
    fn round_trip() {
        let d2 = standard_simplex(2, 3).unwrap();
        let b = boundary_subcomplex(2, 3).unwrap();
        let s2 = quotient_collapse(&d2.set, &b.mask_in(&d2)).unwrap().set;
        for x in [&d2.set, &s2] {
            let text = to_string(x);
            let back = from_str(&text).unwrap();
            assert_eq!(&back, x);
            assert_eq!(to_string(&back), text);
        }
    }

    #[test]
    fn errors_carry_pointers() {
        let bad = r#"{"cap":1,"cells":[[0,1],[2]],"faces":{"2":[{"nd":1},{"nd":7}]}}"#;
        match from_str(bad) {
            Err(Error::Parse { pointer, .. }) => assert_eq!(pointer, "/faces/2/1/nd"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"cap":"x","cells":[]}"#;
        assert!(matches!(from_str(bad), Err(Error::Parse { pointer, .. }) if pointer == "/cap"));
    }

    #[test]
    fn foreign_ids_are_renumbered() {
        let text = r#"{"cap":1,"cells":[[10,20],[5]],"faces":{"5":[{"nd":20,"word":[]},{"nd":10,"word":[]}]}}"#;
        let x = from_str(text).unwrap();
        assert_eq!(x, standard_simplex(1, 1).unwrap().set);
    }
}
