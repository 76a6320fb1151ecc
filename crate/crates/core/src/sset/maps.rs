//! Enumeration of simplicial maps by cellwise search.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// Simplices of `X_m` grouped by their full list of face indices.
fn boundary_index(x: &SimplicialSet, m: usize) -> HashMap<Vec<u32>, Vec<u32>> {
    let mut idx: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    for (s, faces) in x.level(m).faces.iter().enumerate() {
        idx.entry(faces.clone()).or_default().push(s as u32);
    }
    idx
}

/// Visits every map `S -> X` extending `partial`, in canonical order.
pub fn for_each_map<F>(
    s: &SimplicialSet,
    x: &SimplicialSet,
    partial: &[Option<SimplexRef>],
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[SimplexRef]) -> ControlFlow<()>,
{
    let top = (0..s.num_cells() as u32).map(|c| s.dim_of(c)).max().unwrap_or(0);
    if top > x.cap() {
        return Err(Error::CapTooSmall { needed: top, cap: x.cap() });
    }
    if partial.len() != s.num_cells() {
        return Err(Error::Invalid("partial assignment has the wrong length".into()));
    }
    let indices: Vec<HashMap<Vec<u32>, Vec<u32>>> =
        (0..=top).map(|m| if m == 0 { HashMap::new() } else { boundary_index(x, m) }).collect();
    let mut assignment: Vec<SimplexRef> = Vec::with_capacity(s.num_cells());
    let search = Search { s, x, partial, indices: &indices };
    let _ = search.go(&mut assignment, &mut visit);
    Ok(())
}

struct Search<'a> {
    s: &'a SimplicialSet,
    x: &'a SimplicialSet,
    partial: &'a [Option<SimplexRef>],
    indices: &'a [HashMap<Vec<u32>, Vec<u32>>],
}

impl Search<'_> {
    fn go<F>(&self, assignment: &mut Vec<SimplexRef>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[SimplexRef]) -> ControlFlow<()>,
    {
        let c = assignment.len() as u32;
        if c as usize == self.s.num_cells() {
            return visit(assignment);
        }
        let m = self.s.dim_of(c);
        let level = self.x.level(m);
        let face_idx: Vec<u32> = if m == 0 {
            Vec::new()
        } else {
            let below = self.x.level(m - 1);
            self.s
                .cell_faces(c)
                .iter()
                .map(|f| {
                    let theta: Vec<usize> = f.surj.iter().map(|&v| v as usize).collect();
                    below.index[&self.x.apply(&theta, &assignment[f.nd as usize])]
                })
                .collect()
        };
        if let Some(fixed) = &self.partial[c as usize] {
            let ok = fixed.dim() == m
                && level.index.get(fixed).is_some_and(|&i| m == 0 || level.faces[i as usize] == face_idx);
            if ok {
                assignment.push(fixed.clone());
                self.go(assignment, visit)?;
                assignment.pop();
            }
            return ControlFlow::Continue(());
        }
        let all: Vec<u32>;
        let candidates: &[u32] = if m == 0 {
            all = (0..level.simplices.len() as u32).collect();
            &all
        } else {
            self.indices[m].get(&face_idx).map(Vec::as_slice).unwrap_or(&[])
        };
        for &cand in candidates {
            assignment.push(level.simplices[cand as usize].clone());
            self.go(assignment, visit)?;
            assignment.pop();
        }
        ControlFlow::Continue(())
    }
}

/// All maps `S -> X`.
pub fn enumerate_maps(s: &SimplicialSet, x: &SimplicialSet) -> Result<Vec<SimplicialMap>> {
    extend_maps(s, x, &vec![None; s.num_cells()])
}

/// All maps `S -> X` agreeing with `partial` where it is set.
pub fn extend_maps(
    s: &SimplicialSet,
    x: &SimplicialSet,
    partial: &[Option<SimplexRef>],
) -> Result<Vec<SimplicialMap>> {
    let mut out = Vec::new();
    for_each_map(s, x, partial, |a| {
        out.push(SimplicialMap { assignment: a.to_vec() });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The first map extending `partial`, if any.
pub fn find_extension(
    s: &SimplicialSet,
    x: &SimplicialSet,
    partial: &[Option<SimplexRef>],
) -> Result<Option<SimplicialMap>> {
    let mut found = None;
    for_each_map(s, x, partial, |a| {
        found = Some(SimplicialMap { assignment: a.to_vec() });
        ControlFlow::Break(())
    })?;
    Ok(found)
}
