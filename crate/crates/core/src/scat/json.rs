//! The `scat/v1` interchange format.
//!
//! Homs are embedded `sset/v1` documents. Composition lists `g ∘ f` for
//! pairs that are not a common degeneracy and not identities; the rest
//! follows from naturality. Missing composites are undefined.

use std::collections::HashMap;

use serde_json::{json, Value};

use super::{SimplicialCategory, SimplicialFunctor};
use crate::error::{Error, Result};
use crate::sset::json::{
    as_array, as_uint, check_schema, field, from_json_with_ids, parse_ref_with_ids, simplex_ref_to_json,
    to_json as sset_to_json,
};
use crate::sset::{SimplexRef, SimplicialSet};

pub const SCHEMA: &str = "scat/v1";

fn jointly_degenerate(g: &SimplexRef, f: &SimplexRef) -> bool {
    (0..f.dim()).any(|p| f.surj[p] == f.surj[p + 1] && g.surj[p] == g.surj[p + 1])
}

pub fn to_json(c: &SimplicialCategory) -> Value {
    let n = c.num_objects();
    let mut homs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            homs.push(json!({ "src": a, "tgt": b, "set": sset_to_json(c.hom(a, b)) }));
        }
    }
    let mut compose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for k in 0..=c.cap() {
                    for f in c.hom(a, b).simplices(k) {
                        if c.is_identity(a, b, f) {
                            continue;
                        }
                        for g in c.hom(b, cc).simplices(k) {
                            if c.is_identity(b, cc, g) || jointly_degenerate(g, f) {
                                continue;
                            }
                            if let Some(h) = c.compose(a, b, cc, g, f) {
                                compose.push(json!({
                                    "src": a, "mid": b, "tgt": cc,
                                    "g": simplex_ref_to_json(g),
                                    "f": simplex_ref_to_json(f),
                                    "h": simplex_ref_to_json(&h),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    json!({
        "schema": SCHEMA,
        "cap": c.cap(),
        "objects": c.objects,
        "identities": (0..n).map(|x| c.identity(x)).collect::<Vec<_>>(),
        "homs": homs,
        "compose": compose,
    })
}

type Key = (usize, usize, usize, SimplexRef, SimplexRef);

pub fn from_json_at(v: &Value, pointer: &str) -> Result<SimplicialCategory> {
    check_schema(v, SCHEMA, pointer)?;
    let cap = as_uint(field(v, "cap", pointer)?, &format!("{pointer}/cap"))?;
    let objects: Vec<String> = as_array(field(v, "objects", pointer)?, &format!("{pointer}/objects"))?
        .iter()
        .enumerate()
        .map(|(k, o)| match o {
            Value::String(s) => Ok(s.clone()),
            _ => Err(Error::parse(format!("{pointer}/objects/{k}"), "expected a string")),
        })
        .collect::<Result<_>>()?;
    let n = objects.len();
    let mut homs: Vec<Option<(SimplicialSet, HashMap<u64, u32>)>> = vec![None; n * n];
    for (k, h) in as_array(field(v, "homs", pointer)?, &format!("{pointer}/homs"))?.iter().enumerate() {
        let hp = format!("{pointer}/homs/{k}");
        let a = as_uint(field(h, "src", &hp)?, &format!("{hp}/src"))?;
        let b = as_uint(field(h, "tgt", &hp)?, &format!("{hp}/tgt"))?;
        if a >= n || b >= n {
            return Err(Error::parse(&hp, "hom between unknown objects"));
        }
        let (set, ids) = from_json_with_ids(field(h, "set", &hp)?, &format!("{hp}/set"))?;
        if set.cap() != cap {
            return Err(Error::parse(format!("{hp}/set/cap"), format!("hom cap must be {cap}")));
        }
        if homs[a * n + b].replace((set, ids)).is_some() {
            return Err(Error::parse(&hp, format!("duplicate hom ({a},{b})")));
        }
    }
    let homs: Vec<(SimplicialSet, HashMap<u64, u32>)> = homs
        .into_iter()
        .map(|h| h.unwrap_or_else(|| (SimplicialSet::empty(cap), HashMap::new())))
        .collect();
    let ip = format!("{pointer}/identities");
    let ids = as_array(field(v, "identities", pointer)?, &ip)?;
    if ids.len() != n {
        return Err(Error::parse(&ip, format!("expected {n} identities")));
    }
    let mut identities = Vec::with_capacity(n);
    for (x, id) in ids.iter().enumerate() {
        let raw = as_uint(id, &format!("{ip}/{x}"))? as u64;
        let new = homs[x * n + x].1.get(&raw).ok_or_else(|| Error::parse(format!("{ip}/{x}"), "unknown identity cell"))?;
        identities.push(*new);
    }
    let mut table: HashMap<Key, SimplexRef> = HashMap::new();
    let cp = format!("{pointer}/compose");
    let entries = v.get("compose").map(|c| as_array(c, &cp)).transpose()?.cloned().unwrap_or_default();
    for (k, e) in entries.iter().enumerate() {
        let ep = format!("{cp}/{k}");
        let a = as_uint(field(e, "src", &ep)?, &format!("{ep}/src"))?;
        let b = as_uint(field(e, "mid", &ep)?, &format!("{ep}/mid"))?;
        let c = as_uint(field(e, "tgt", &ep)?, &format!("{ep}/tgt"))?;
        if a >= n || b >= n || c >= n {
            return Err(Error::parse(&ep, "composite between unknown objects"));
        }
        let parse = |name: &str, p: usize, q: usize, dim: usize| {
            let (set, ids) = &homs[p * n + q];
            parse_ref_with_ids(set, ids, field(e, name, &ep)?, dim, &format!("{ep}/{name}"))
        };
        let word_len = field(e, "f", &ep)?.get("word").and_then(Value::as_array).map_or(0, Vec::len);
        let f_cell = field(field(e, "f", &ep)?, "nd", &ep)?.as_u64().and_then(|id| homs[a * n + b].1.get(&id).copied());
        let dim = f_cell.map_or(0, |id| homs[a * n + b].0.dim_of(id)) + word_len;
        let f = parse("f", a, b, dim)?;
        let g = parse("g", b, c, dim)?;
        let h = parse("h", a, c, dim)?;
        if dim > cap {
            return Err(Error::parse(&ep, "composite above the cap"));
        }
        table.insert((a, b, c, g, f), h);
    }
    let homs_only: Vec<&SimplicialSet> = homs.iter().map(|(s, _)| s).collect();
    let rows: Vec<Vec<SimplicialSet>> =
        (0..n).map(|a| (0..n).map(|b| homs_only[a * n + b].clone()).collect()).collect();
    let ident = identities.clone();
    SimplicialCategory::from_rule(objects, rows, identities, |a, b, c, g, f| {
        if a == b && f.nd == ident[a] {
            return Some(g.clone());
        }
        if b == c && g.nd == ident[b] {
            return Some(f.clone());
        }
        let k = f.dim();
        let mut sigma = vec![0u8; k + 1];
        for p in 0..k {
            let merged = f.surj[p] == f.surj[p + 1] && g.surj[p] == g.surj[p + 1];
            sigma[p + 1] = sigma[p] + u8::from(!merged);
        }
        let top = sigma[k] as usize;
        let section: Vec<usize> =
            (0..=top).map(|t| sigma.iter().position(|&s| s as usize == t).expect("surjective")).collect();
        let (hab, hbc, hac) = (homs_only[a * n + b], homs_only[b * n + c], homs_only[a * n + c]);
        let key = (a, b, c, hbc.apply(&section, g), hab.apply(&section, f));
        let h = table.get(&key)?;
        let theta: Vec<usize> = sigma.iter().map(|&s| s as usize).collect();
        Some(hac.apply(&theta, h))
    })
    .map_err(|e| Error::parse(pointer, e.to_string()))
}

pub fn from_json(v: &Value) -> Result<SimplicialCategory> {
    from_json_at(v, "")
}

pub fn from_str(s: &str) -> Result<SimplicialCategory> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::parse("", e.to_string()))?;
    from_json(&v)
}

pub fn to_string(c: &SimplicialCategory) -> String {
    serde_json::to_string(&to_json(c)).expect("JSON values serialize")
}

pub fn functor_to_json(f: &SimplicialFunctor) -> Value {
    let n = f.object_map.len();
    let homs: Vec<Value> = (0..n * n)
        .map(|p| {
            json!({
                "src": p / n,
                "tgt": p % n,
                "assignment": f.hom_maps[p].assignment.iter().map(simplex_ref_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "objects": f.object_map, "homs": homs })
}
