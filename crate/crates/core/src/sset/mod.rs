//! Truncated simplicial sets in Eilenberg–Zilber normal form.
//!
//! A simplex is a nondegenerate cell together with a monotone surjection
//! from its ordinal onto the cell's ordinal. Degeneracies are never stored.

pub mod homotopy;
pub mod json;
pub mod kan;
pub mod levels;
pub mod maps;
pub mod mono;
pub mod ops;
pub mod poset;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use homotopy::{edge_path_presentation, pi0, pi1_edge_path, Components};
pub use kan::{is_kan, is_kan_fibration, HornSelection, KanReport};
pub use maps::{enumerate_maps, extend_maps};
pub use ops::{product, quotient_collapse, smash, ProductSet, Quotient};
pub use poset::{
    boundary_subcomplex, cube, cube_boundary, cube_horn, horn, nerve_of_poset, standard_simplex,
    Cube, Poset, PosetNerve,
};

/// Strictly increasing degeneracy indices `i_1 < ... < i_k` for `s_{i_k} ... s_{i_1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyWord(pub Vec<usize>);

impl DegeneracyWord {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!(
                "degeneracy word {indices:?} is not strictly increasing"
            )));
        }
        Ok(DegeneracyWord(indices))
    }

    /// The surjection `[m + k] -> [m]` this word encodes.
    pub fn to_surjection(&self, m: usize) -> Result<Vec<u8>> {
        let n = m + self.0.len();
        if let Some(&last) = self.0.last() {
            if last >= n {
                return Err(Error::Invalid(format!(
                    "degeneracy index {last} out of range for dimension {n}"
                )));
            }
        }
        let mut surj = vec![0u8; n + 1];
        for p in 0..n {
            let step = u8::from(self.0.binary_search(&p).is_err());
            surj[p + 1] = surj[p] + step;
        }
        Ok(surj)
    }

    pub fn from_surjection(surj: &[u8]) -> Self {
        DegeneracyWord(
            surj.windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] == w[1])
                .map(|(p, _)| p)
                .collect(),
        )
    }
}

/// A simplex of dimension `surj.len() - 1`: the degeneracy `surj^*` of cell `nd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub nd: u32,
    pub surj: Vec<u8>,
}

impl SimplexRef {
    /// The nondegenerate cell `nd` of dimension `m`.
    pub fn cell(nd: u32, m: usize) -> Self {
        SimplexRef { nd, surj: (0..=m as u8).collect() }
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn nd_dim(&self) -> usize {
        self.surj.last().copied().unwrap_or(0) as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.nd_dim()
    }

    pub fn word(&self) -> DegeneracyWord {
        DegeneracyWord::from_surjection(&self.surj)
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.0.is_empty() {
            write!(f, "#{}", self.nd)
        } else {
            write!(f, "s{:?}#{}", w.0, self.nd)
        }
    }
}

/// All simplices of one degree in canonical order, with their face indices.
#[derive(Debug)]
pub struct Level {
    pub simplices: Vec<SimplexRef>,
    pub index: HashMap<SimplexRef, u32>,
    /// `faces[s][i]` is the index of `d_i` of simplex `s` in the level below.
    pub faces: Vec<Vec<u32>>,
}

pub struct SimplicialSet {
    cap: usize,
    dims: Vec<u8>,
    faces: Vec<Vec<SimplexRef>>,
    level_start: Vec<usize>,
    cache: Vec<OnceLock<Level>>,
}

impl Clone for SimplicialSet {
    fn clone(&self) -> Self {
        SimplicialSet::assemble(self.cap, self.dims.clone(), self.faces.clone())
    }
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && self.dims == other.dims && self.faces == other.faces
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialSet")
            .field("cap", &self.cap)
            .field("counts", &self.nd_counts())
            .field("faces", &self.faces)
            .finish()
    }
}

impl SimplicialSet {
    fn assemble(cap: usize, dims: Vec<u8>, faces: Vec<Vec<SimplexRef>>) -> Self {
        let mut level_start = vec![0usize; cap + 2];
        for &d in &dims {
            level_start[d as usize + 1] += 1;
        }
        for k in 1..level_start.len() {
            level_start[k] += level_start[k - 1];
        }
        SimplicialSet {
            cap,
            dims,
            faces,
            level_start,
            cache: (0..=cap).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn builder(cap: usize) -> Builder {
        Builder { set: SimplicialSet::assemble(cap, Vec::new(), Vec::new()), last_dim: 0 }
    }

    /// The empty simplicial set.
    pub fn empty(cap: usize) -> Self {
        SimplicialSet::assemble(cap, Vec::new(), Vec::new())
    }

    /// A discrete simplicial set on `n` vertices.
    pub fn discrete(n: usize, cap: usize) -> Self {
        SimplicialSet::assemble(cap, vec![0; n], vec![Vec::new(); n])
    }

    pub fn point(cap: usize) -> Self {
        SimplicialSet::discrete(1, cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of nondegenerate cells in all dimensions.
    pub fn num_cells(&self) -> usize {
        self.dims.len()
    }

    pub fn dim_of(&self, nd: u32) -> usize {
        self.dims[nd as usize] as usize
    }

    /// Ids of the nondegenerate cells of dimension `m`.
    pub fn cells(&self, m: usize) -> std::ops::Range<u32> {
        if m > self.cap {
            return 0..0;
        }
        self.level_start[m] as u32..self.level_start[m + 1] as u32
    }

    /// Nondegenerate counts in dimensions `0..=top`, where `top` is the
    /// highest nonempty dimension.
    pub fn nd_counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = (0..=self.cap).map(|m| self.cells(m).len()).collect();
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        if counts == [0] {
            counts.clear();
        }
        counts
    }

    /// Faces `d_0 .. d_m` of a nondegenerate cell of dimension `m >= 1`.
    pub fn cell_faces(&self, nd: u32) -> &[SimplexRef] {
        &self.faces[nd as usize]
    }

    pub fn cell_ref(&self, nd: u32) -> SimplexRef {
        SimplexRef::cell(nd, self.dim_of(nd))
    }

    /// Normalizes `θ^*(nd)` for a monotone `θ : [k] -> [dim nd]`.
    fn pullback(&self, mut nd: u32, mut phi: Vec<usize>) -> SimplexRef {
        loop {
            let m = self.dim_of(nd);
            let mut hit = vec![false; m + 1];
            for &v in &phi {
                hit[v] = true;
            }
            let Some(t) = (0..=m).rev().find(|&v| !hit[v]) else {
                return SimplexRef { nd, surj: phi.into_iter().map(|v| v as u8).collect() };
            };
            let face = &self.faces[nd as usize][t];
            phi = phi
                .iter()
                .map(|&v| face.surj[if v > t { v - 1 } else { v }] as usize)
                .collect();
            nd = face.nd;
        }
    }

    /// The simplex `θ^* r` for a monotone `θ : [k] -> [dim r]`.
    pub fn apply(&self, theta: &[usize], r: &SimplexRef) -> SimplexRef {
        let phi = theta.iter().map(|&t| r.surj[t] as usize).collect();
        self.pullback(r.nd, phi)
    }

    pub fn face(&self, i: usize, r: &SimplexRef) -> SimplexRef {
        self.apply(&mono::coface(r.dim(), i), r)
    }

    pub fn degeneracy(&self, j: usize, r: &SimplexRef) -> SimplexRef {
        self.apply(&mono::codegeneracy(r.dim(), j), r)
    }

    /// The `t`-th vertex of a simplex.
    pub fn vertex(&self, r: &SimplexRef, t: usize) -> u32 {
        self.apply(&[t], r).nd
    }

    pub fn vertices(&self, r: &SimplexRef) -> Vec<u32> {
        (0..=r.dim()).map(|t| self.vertex(r, t)).collect()
    }

    /// Checks that `r` is a normal-form reference into this set.
    pub fn check_ref(&self, r: &SimplexRef) -> Result<()> {
        if r.nd as usize >= self.dims.len() {
            return Err(Error::OutOfRange(format!("cell id {}", r.nd)));
        }
        let m = self.dim_of(r.nd);
        let ok = r.surj.first() == Some(&0)
            && r.surj.last().map(|&v| v as usize) == Some(m)
            && r.surj.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
        if !ok {
            return Err(Error::Invalid(format!("{r} is not in normal form")));
        }
        Ok(())
    }

    /// All simplices of degree `k <= cap`, cached.
    pub fn level(&self, k: usize) -> &Level {
        assert!(k <= self.cap, "degree {k} exceeds cap {}", self.cap);
        self.cache[k].get_or_init(|| self.compute_level(k))
    }

    fn compute_level(&self, k: usize) -> Level {
        let mut simplices = Vec::new();
        for nd in 0..self.dims.len() as u32 {
            let m = self.dim_of(nd);
            if m > k {
                break;
            }
            for s in mono::surjections(k, m) {
                simplices.push(SimplexRef { nd, surj: s.into_iter().map(|v| v as u8).collect() });
            }
        }
        let index: HashMap<SimplexRef, u32> =
            simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let faces = if k == 0 {
            vec![Vec::new(); simplices.len()]
        } else {
            let below = self.level(k - 1);
            simplices
                .iter()
                .map(|s| (0..=k).map(|i| below.index[&self.face(i, s)]).collect())
                .collect()
        };
        Level { simplices, index, faces }
    }

    pub fn simplices(&self, k: usize) -> &[SimplexRef] {
        &self.level(k).simplices
    }

    pub fn count(&self, k: usize) -> usize {
        self.level(k).simplices.len()
    }

    pub fn index_of(&self, r: &SimplexRef) -> u32 {
        self.level(r.dim()).index[r]
    }

    pub fn simplex_at(&self, k: usize, idx: u32) -> &SimplexRef {
        &self.level(k).simplices[idx as usize]
    }

    /// The same data with a different cap; cells above the new cap are dropped.
    pub fn with_cap(&self, cap: usize) -> SimplicialSet {
        let keep: Vec<bool> = self.dims.iter().map(|&d| (d as usize) <= cap).collect();
        let n = keep.iter().filter(|&&k| k).count();
        SimplicialSet::assemble(cap, self.dims[..n].to_vec(), self.faces[..n].to_vec())
    }

    /// Closes a set of cells under faces.
    pub fn closure(&self, seeds: impl IntoIterator<Item = u32>) -> Vec<bool> {
        let mut keep = vec![false; self.dims.len()];
        let mut stack: Vec<u32> = seeds.into_iter().collect();
        while let Some(c) = stack.pop() {
            if std::mem::replace(&mut keep[c as usize], true) {
                continue;
            }
            stack.extend(self.faces[c as usize].iter().map(|f| f.nd));
        }
        keep
    }

    /// The subcomplex on the cells marked in `keep`, which must be face-closed.
    pub fn restrict(&self, keep: &[bool]) -> Result<Subcomplex> {
        let mut new_id = vec![None; self.dims.len()];
        let mut dims = Vec::new();
        let mut faces = Vec::new();
        let mut old_id = Vec::new();
        for c in 0..self.dims.len() {
            if !keep[c] {
                continue;
            }
            let mut fs = Vec::with_capacity(self.faces[c].len());
            for f in &self.faces[c] {
                let Some(id) = new_id[f.nd as usize] else {
                    return Err(Error::NotSubcomplex(format!(
                        "cell {c} kept but its face cell {} is not",
                        f.nd
                    )));
                };
                fs.push(SimplexRef { nd: id, surj: f.surj.clone() });
            }
            new_id[c] = Some(dims.len() as u32);
            old_id.push(c as u32);
            dims.push(self.dims[c]);
            faces.push(fs);
        }
        let set = SimplicialSet::assemble(self.cap, dims, faces);
        let inclusion = SimplicialMap {
            assignment: old_id.iter().map(|&c| self.cell_ref(c)).collect(),
        };
        Ok(Subcomplex { set, inclusion, old_id, new_id })
    }

    /// Renders the degree-`k` simplices with their vertices, for diagnostics.
    pub fn describe(&self, r: &SimplexRef) -> String {
        format!("{r} {:?}", self.vertices(r))
    }
}

/// A subcomplex with its inclusion and id translation tables.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub set: SimplicialSet,
    pub inclusion: SimplicialMap,
    pub old_id: Vec<u32>,
    pub new_id: Vec<Option<u32>>,
}

impl Subcomplex {
    /// Translates a simplex of the ambient set, if it lies in the subcomplex.
    pub fn translate(&self, r: &SimplexRef) -> Option<SimplexRef> {
        self.new_id[r.nd as usize].map(|nd| SimplexRef { nd, surj: r.surj.clone() })
    }
}

/// Incremental construction; cells must be added in nondecreasing dimension.
pub struct Builder {
    set: SimplicialSet,
    last_dim: usize,
}

impl Builder {
    pub fn add_vertex(&mut self) -> u32 {
        self.add_cell(Vec::new()).expect("vertices are always valid")
    }

    pub fn add_vertices(&mut self, n: usize) -> Vec<u32> {
        (0..n).map(|_| self.add_vertex()).collect()
    }

    /// Adds a cell with faces `d_0 .. d_m`; its dimension is `faces.len() - 1`
    /// (or 0 when `faces` is empty).
    pub fn add_cell(&mut self, faces: Vec<SimplexRef>) -> Result<u32> {
        let m = faces.len().saturating_sub(1);
        if faces.len() == 1 {
            return Err(Error::Invalid("a cell needs zero or at least two faces".into()));
        }
        if m > self.set.cap {
            return Err(Error::CapTooSmall { needed: m, cap: self.set.cap });
        }
        if m < self.last_dim {
            return Err(Error::Invalid(format!(
                "cells must be added by nondecreasing dimension ({m} after {})",
                self.last_dim
            )));
        }
        for f in &faces {
            self.set.check_ref(f)?;
            if f.dim() + 1 != m {
                return Err(Error::Invalid(format!("face {f} has the wrong dimension")));
            }
        }
        for j in (0..faces.len()).filter(|_| m >= 2) {
            for i in 0..j {
                let lhs = self.set.face(i, &faces[j]);
                let rhs = self.set.face(j - 1, &faces[i]);
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "simplicial identity d_{i} d_{j} = d_{} d_{i} fails: {lhs} vs {rhs}",
                        j - 1
                    )));
                }
            }
        }
        let id = self.set.dims.len() as u32;
        self.set.dims.push(m as u8);
        self.set.faces.push(faces);
        self.last_dim = m;
        Ok(id)
    }

    /// Applies `θ^*` to a simplex of the partially built set.
    pub fn apply(&self, theta: &[usize], r: &SimplexRef) -> SimplexRef {
        self.set.apply(theta, r)
    }

    pub fn num_cells(&self) -> usize {
        self.set.dims.len()
    }

    pub fn finish(self) -> SimplicialSet {
        let SimplicialSet { cap, dims, faces, .. } = self.set;
        SimplicialSet::assemble(cap, dims, faces)
    }
}

/// A map given by images of the nondegenerate source cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialMap {
    pub assignment: Vec<SimplexRef>,
}

impl SimplicialMap {
    pub fn identity(x: &SimplicialSet) -> Self {
        SimplicialMap { assignment: (0..x.num_cells() as u32).map(|c| x.cell_ref(c)).collect() }
    }

    /// The constant map onto vertex `v`.
    pub fn constant(source: &SimplicialSet, v: u32) -> Self {
        SimplicialMap {
            assignment: (0..source.num_cells() as u32)
                .map(|c| SimplexRef { nd: v, surj: vec![0; source.dim_of(c) + 1] })
                .collect(),
        }
    }

    pub fn apply(&self, target: &SimplicialSet, r: &SimplexRef) -> SimplexRef {
        let img = &self.assignment[r.nd as usize];
        target.apply(&r.surj.iter().map(|&v| v as usize).collect::<Vec<_>>(), img)
    }

    /// Checks dimensions and compatibility with faces.
    pub fn validate(&self, source: &SimplicialSet, target: &SimplicialSet) -> Result<()> {
        if self.assignment.len() != source.num_cells() {
            return Err(Error::NotAMap(format!(
                "{} images for {} cells",
                self.assignment.len(),
                source.num_cells()
            )));
        }
        for c in 0..source.num_cells() as u32 {
            let img = &self.assignment[c as usize];
            target.check_ref(img).map_err(|e| Error::NotAMap(e.to_string()))?;
            if img.dim() != source.dim_of(c) {
                return Err(Error::NotAMap(format!("cell {c} sent to {img} of other dimension")));
            }
            for (i, f) in source.cell_faces(c).iter().enumerate() {
                if target.face(i, img) != self.apply(target, f) {
                    return Err(Error::NotAMap(format!("face {i} of cell {c} not preserved")));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap, final_target: &SimplicialSet) -> SimplicialMap {
        SimplicialMap {
            assignment: self.assignment.iter().map(|r| other.apply(final_target, r)).collect(),
        }
    }

    /// Whether every simplex up to `cap` has a unique preimage.
    pub fn is_isomorphism(&self, source: &SimplicialSet, target: &SimplicialSet) -> bool {
        if source.nd_counts() != target.nd_counts() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.assignment.iter().all(|r| !r.is_degenerate() && seen.insert(r.nd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex2() -> SimplicialSet {
        let mut b = SimplicialSet::builder(3);
        let v = b.add_vertices(3);
        let edge = |b: &mut Builder, x: u32, y: u32| {
            b.add_cell(vec![SimplexRef::cell(y, 0), SimplexRef::cell(x, 0)]).unwrap()
        };
        let e01 = edge(&mut b, v[0], v[1]);
        let e02 = edge(&mut b, v[0], v[2]);
        let e12 = edge(&mut b, v[1], v[2]);
        b.add_cell(vec![SimplexRef::cell(e12, 1), SimplexRef::cell(e02, 1), SimplexRef::cell(e01, 1)])
            .unwrap();
        b.finish()
    }

    #[test]
    fn word_round_trip() {
        for k in 0..5 {
            for m in 0..=k {
                for s in mono::surjections(k, m) {
                    let s: Vec<u8> = s.into_iter().map(|v| v as u8).collect();
                    let w = DegeneracyWord::from_surjection(&s);
                    assert_eq!(w.to_surjection(m).unwrap(), s);
                }
            }
        }
        assert!(DegeneracyWord::new(vec![1, 1]).is_err());
    }

    #[test]
    fn level_counts_of_triangle() {
        let x = simplex2();
        assert_eq!(x.nd_counts(), vec![3, 3, 1]);
        // Δ^2 has C(k+3, 2) k-simplices
        assert_eq!(x.count(0), 3);
        assert_eq!(x.count(1), 6);
        assert_eq!(x.count(2), 10);
        assert_eq!(x.count(3), 15);
    }

    #[test]
    fn faces_of_degeneracies() {
        let x = simplex2();
        for k in 0..x.cap() {
            for r in x.simplices(k).to_vec() {
                for j in 0..=k {
                    let s = x.degeneracy(j, &r);
                    assert_eq!(x.face(j, &s), r);
                    assert_eq!(x.face(j + 1, &s), r);
                }
            }
        }
    }

    #[test]
    fn bad_identity_rejected() {
        let mut b = SimplicialSet::builder(2);
        let v = b.add_vertices(3);
        let e01 = b.add_cell(vec![SimplexRef::cell(v[1], 0), SimplexRef::cell(v[0], 0)]).unwrap();
        let e12 = b.add_cell(vec![SimplexRef::cell(v[2], 0), SimplexRef::cell(v[1], 0)]).unwrap();
        let r = b.add_cell(vec![
            SimplexRef::cell(e01, 1),
            SimplexRef::cell(e12, 1),
            SimplexRef::cell(e01, 1),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn restrict_requires_face_closure() {
        let x = simplex2();
        let mut keep = vec![false; x.num_cells()];
        keep[6] = true;
        assert!(matches!(x.restrict(&keep), Err(Error::NotSubcomplex(_))));
        let keep = x.closure([3]);
        let sub = x.restrict(&keep).unwrap();
        assert_eq!(sub.set.nd_counts(), vec![2, 1]);
        sub.inclusion.validate(&sub.set, &x).unwrap();
    }
}
