//! Enumeration of simplicial functors and lifting checks.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{SimplicialCategory, SimplicialFunctor};
use crate::error::{Error, Result};
use crate::sset::{SimplexRef, SimplicialMap};

#[derive(Clone, Debug)]
struct Cell {
    a: usize,
    b: usize,
    id: u32,
    dim: usize,
    /// `g ∘ f` through object `x`, for cells fixed by composition.
    product: Option<(usize, SimplexRef, SimplexRef)>,
}

#[derive(Clone, Debug)]
struct Constraint {
    a: usize,
    b: usize,
    c: usize,
    f: SimplexRef,
    g: SimplexRef,
    h: SimplexRef,
}

/// Filter on cell images: object map, hom pair, cell id, image.
pub type CellOk<'f> = dyn Fn(&[usize], usize, usize, u32, &SimplexRef) -> bool + 'f;

/// A compiled search for simplicial functors `src → tgt`.
///
/// Hom cells of `src` are split into free variables, chosen as the first
/// cell (by dimension, hom pair, id) not yet fixed, and cells fixed as
/// composites of earlier ones. Composition laws are checked as soon as all
/// cells they mention are known.
pub struct FunctorSearch<'a> {
    src: &'a SimplicialCategory,
    tgt: &'a SimplicialCategory,
    cells: Vec<Cell>,
    offset: Vec<usize>,
    /// Stage 0 holds identities; stage `t + 1` starts with variable `t`.
    stages: Vec<Vec<usize>>,
    constraints: Vec<Vec<Constraint>>,
    face_index: RefCell<HashMap<(usize, usize), HashMap<Vec<u32>, Vec<u32>>>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(src: &'a SimplicialCategory, tgt: &'a SimplicialCategory) -> Result<Self> {
        let n = src.num_objects();
        let mut cells = Vec::new();
        let mut offset = Vec::with_capacity(n * n + 1);
        for a in 0..n {
            for b in 0..n {
                offset.push(cells.len());
                let h = src.hom(a, b);
                for id in 0..h.num_cells() as u32 {
                    let dim = h.dim_of(id);
                    if dim > tgt.cap() {
                        return Err(Error::CapTooSmall { needed: dim, cap: tgt.cap() });
                    }
                    cells.push(Cell { a, b, id, dim, product: None });
                }
            }
        }
        offset.push(cells.len());
        let global = |a: usize, b: usize, id: u32| offset[a * n + b] + id as usize;
        let mut stage_of: Vec<Option<usize>> = vec![None; cells.len()];
        let mut stages: Vec<Vec<usize>> = vec![Vec::new()];
        for x in 0..n {
            let g = global(x, x, src.identity(x));
            stage_of[g] = Some(0);
            stages[0].push(g);
        }
        let is_id = |a: usize, b: usize, r: &SimplexRef| src.is_identity(a, b, r);
        loop {
            // fix composites of known cells until nothing changes
            let mut changed = true;
            while changed {
                changed = false;
                for a in 0..n {
                    for x in 0..n {
                        for b in 0..n {
                            let (hax, hxb) = (src.hom(a, x), src.hom(x, b));
                            for k in 0..=src.cap() {
                                for f in hax.simplices(k) {
                                    let Some(sf) = stage_of[global(a, x, f.nd)] else { continue };
                                    if is_id(a, x, f) {
                                        continue;
                                    }
                                    for g in hxb.simplices(k) {
                                        let Some(sg) = stage_of[global(x, b, g.nd)] else { continue };
                                        if is_id(x, b, g) {
                                            continue;
                                        }
                                        let Some(h) = src.compose(a, x, b, g, f) else { continue };
                                        let gh = global(a, b, h.nd);
                                        if h.is_degenerate() || stage_of[gh].is_some() {
                                            continue;
                                        }
                                        let st = sf.max(sg);
                                        stage_of[gh] = Some(st);
                                        cells[gh].product = Some((x, f.clone(), g.clone()));
                                        stages[st].push(gh);
                                        changed = true;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let next = (0..cells.len())
                .filter(|&c| stage_of[c].is_none())
                .min_by_key(|&c| (cells[c].dim, cells[c].a * n + cells[c].b, cells[c].id));
            let Some(v) = next else { break };
            stage_of[v] = Some(stages.len());
            stages.push(vec![v]);
        }
        let mut constraints = vec![Vec::new(); stages.len()];
        let top = src.cap().min(tgt.cap());
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for k in 0..=top {
                        for f in src.hom(a, b).simplices(k) {
                            for g in src.hom(b, c).simplices(k) {
                                if (0..k).any(|p| f.surj[p] == f.surj[p + 1] && g.surj[p] == g.surj[p + 1]) {
                                    continue;
                                }
                                let Some(h) = src.compose(a, b, c, g, f) else { continue };
                                let st = [global(a, b, f.nd), global(b, c, g.nd), global(a, c, h.nd)]
                                    .iter()
                                    .map(|&x| stage_of[x].expect("all cells are staged"))
                                    .max()
                                    .expect("three cells");
                                constraints[st].push(Constraint { a, b, c, f: f.clone(), g: g.clone(), h });
                            }
                        }
                    }
                }
            }
        }
        Ok(FunctorSearch { src, tgt, cells, offset, stages, constraints, face_index: RefCell::new(HashMap::new()) })
    }

    /// Number of free hom variables.
    pub fn num_variables(&self) -> usize {
        self.stages.len() - 1
    }

    /// Visits every functor whose object images are drawn from
    /// `objects[x]` and whose cell images pass `cell_ok(a, b, cell, image)`.
    pub fn for_each(
        &self,
        objects: &[Vec<usize>],
        cell_ok: &CellOk,
        visit: &mut dyn FnMut(&SimplicialFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.src.num_objects();
        let mut omap = vec![0usize; n];
        self.objects_rec(0, objects, &mut omap, cell_ok, visit)
    }

    fn objects_rec(
        &self,
        x: usize,
        objects: &[Vec<usize>],
        omap: &mut Vec<usize>,
        cell_ok: &CellOk,
        visit: &mut dyn FnMut(&SimplicialFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if x == omap.len() {
            let mut vals = vec![None; self.cells.len()];
            return self.stage_rec(0, omap, &mut vals, cell_ok, visit);
        }
        for &y in &objects[x] {
            omap[x] = y;
            self.objects_rec(x + 1, objects, omap, cell_ok, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn eval(&self, omap: &[usize], vals: &[Option<SimplexRef>], a: usize, b: usize, r: &SimplexRef) -> SimplexRef {
        let n = omap.len();
        let v = vals[self.offset[a * n + b] + r.nd as usize].as_ref().expect("cell resolved");
        let theta: Vec<usize> = r.surj.iter().map(|&t| t as usize).collect();
        self.tgt.hom(omap[a], omap[b]).apply(&theta, v)
    }

    /// Resolves the fixed cells of stage `t` and checks its laws.
    fn settle(
        &self,
        t: usize,
        from: usize,
        omap: &[usize],
        vals: &mut [Option<SimplexRef>],
        cell_ok: &CellOk,
    ) -> bool {
        for &c in &self.stages[t][from..] {
            let cell = &self.cells[c];
            let v = match &cell.product {
                None => self.tgt.identity_ref(omap[cell.a], 0),
                Some((x, f, g)) => {
                    let (ff, fg) = (self.eval(omap, vals, cell.a, *x, f), self.eval(omap, vals, *x, cell.b, g));
                    match self.tgt.compose(omap[cell.a], omap[*x], omap[cell.b], &fg, &ff) {
                        Some(h) => h,
                        None => return false,
                    }
                }
            };
            if !cell_ok(omap, cell.a, cell.b, cell.id, &v) {
                return false;
            }
            vals[c] = Some(v);
        }
        self.constraints[t].iter().all(|k| {
            let lhs = self.eval(omap, vals, k.a, k.c, &k.h);
            let (ff, fg) = (self.eval(omap, vals, k.a, k.b, &k.f), self.eval(omap, vals, k.b, k.c, &k.g));
            self.tgt.compose(omap[k.a], omap[k.b], omap[k.c], &fg, &ff).is_some_and(|r| r == lhs)
        })
    }

    fn candidates(&self, omap: &[usize], vals: &[Option<SimplexRef>], cell: &Cell) -> Vec<SimplexRef> {
        let (ta, tb) = (omap[cell.a], omap[cell.b]);
        let h = self.tgt.hom(ta, tb);
        if cell.dim == 0 {
            return h.simplices(0).to_vec();
        }
        let faces = self.src.hom(cell.a, cell.b).cell_faces(cell.id);
        let key: Vec<u32> = faces.iter().map(|f| h.index_of(&self.eval(omap, vals, cell.a, cell.b, f))).collect();
        let tn = self.tgt.num_objects();
        let mut cache = self.face_index.borrow_mut();
        let table = cache.entry((ta * tn + tb, cell.dim)).or_insert_with(|| {
            let mut t: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for (s, fs) in h.level(cell.dim).faces.iter().enumerate() {
                t.entry(fs.clone()).or_default().push(s as u32);
            }
            t
        });
        table.get(&key).map_or_else(Vec::new, |ss| ss.iter().map(|&s| h.simplex_at(cell.dim, s).clone()).collect())
    }

    fn stage_rec(
        &self,
        t: usize,
        omap: &[usize],
        vals: &mut Vec<Option<SimplexRef>>,
        cell_ok: &CellOk,
        visit: &mut dyn FnMut(&SimplicialFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if t == self.stages.len() {
            return visit(&self.assemble(omap, vals));
        }
        if t == 0 {
            if self.settle(0, 0, omap, vals, cell_ok) {
                self.stage_rec(1, omap, vals, cell_ok, visit)?;
            }
            return ControlFlow::Continue(());
        }
        let var = self.stages[t][0];
        let cell = &self.cells[var];
        for cand in self.candidates(omap, vals, cell) {
            if !cell_ok(omap, cell.a, cell.b, cell.id, &cand) {
                continue;
            }
            vals[var] = Some(cand);
            if self.settle(t, 1, omap, vals, cell_ok) {
                self.stage_rec(t + 1, omap, vals, cell_ok, visit)?;
            }
        }
        for &c in &self.stages[t] {
            vals[c] = None;
        }
        ControlFlow::Continue(())
    }

    fn assemble(&self, omap: &[usize], vals: &[Option<SimplexRef>]) -> SimplicialFunctor {
        let n = omap.len();
        let hom_maps = (0..n * n)
            .map(|p| SimplicialMap {
                assignment: vals[self.offset[p]..self.offset[p + 1]]
                    .iter()
                    .map(|v| v.clone().expect("every cell is resolved"))
                    .collect(),
            })
            .collect();
        SimplicialFunctor { object_map: omap.to_vec(), hom_maps }
    }
}

fn all_objects(src: &SimplicialCategory, tgt: &SimplicialCategory) -> Vec<Vec<usize>> {
    vec![(0..tgt.num_objects()).collect(); src.num_objects()]
}

/// All simplicial functors `src → tgt`, objects varying lexicographically.
pub fn enumerate_functors(src: &SimplicialCategory, tgt: &SimplicialCategory) -> Result<Vec<SimplicialFunctor>> {
    let search = FunctorSearch::new(src, tgt)?;
    let mut out = Vec::new();
    let _ = search.for_each(&all_objects(src, tgt), &|_, _, _, _, _| true, &mut |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Functors `b_cat → tgt` restricting to `given` along `j : a_cat → b_cat`.
pub fn extend_functors(
    j: &SimplicialFunctor,
    a_cat: &SimplicialCategory,
    b_cat: &SimplicialCategory,
    tgt: &SimplicialCategory,
    given: &SimplicialFunctor,
) -> Result<Vec<SimplicialFunctor>> {
    let search = FunctorSearch::new(b_cat, tgt)?;
    let along = Along::new(j, a_cat, b_cat, given, tgt.num_objects());
    let mut out = Vec::new();
    let _ = search.for_each(&along.objects, &|o, a, b, c, v| along.cell_ok(tgt, o, a, b, c, v), &mut |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// The requirement `w ∘ j = given` on functors `w` out of the codomain of `j`.
struct Along {
    objects: Vec<Vec<usize>>,
    /// Per codomain cell: `(a, b)` in the codomain's indexing, then the
    /// operator and image each preimage cell imposes.
    required: HashMap<(usize, usize, u32), Vec<(Vec<usize>, SimplexRef)>>,
}

impl Along {
    fn new(
        j: &SimplicialFunctor,
        a_cat: &SimplicialCategory,
        b_cat: &SimplicialCategory,
        given: &SimplicialFunctor,
        tgt_objects: usize,
    ) -> Self {
        let mut objects: Vec<Vec<usize>> = vec![(0..tgt_objects).collect(); b_cat.num_objects()];
        for (x, &jx) in j.object_map.iter().enumerate() {
            let want = given.object_map[x];
            objects[jx].retain(|&y| y == want);
        }
        let n = a_cat.num_objects();
        let mut required: HashMap<(usize, usize, u32), Vec<(Vec<usize>, SimplexRef)>> = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                let m = &j.hom_maps[a * n + b];
                for (c, r) in m.assignment.iter().enumerate() {
                    let theta: Vec<usize> = r.surj.iter().map(|&t| t as usize).collect();
                    let img = given.hom_maps[a * n + b].assignment[c].clone();
                    required.entry((j.object_map[a], j.object_map[b], r.nd)).or_default().push((theta, img));
                }
            }
        }
        Along { objects, required }
    }

    fn cell_ok(&self, tgt: &SimplicialCategory, omap: &[usize], a: usize, b: usize, c: u32, v: &SimplexRef) -> bool {
        let Some(reqs) = self.required.get(&(a, b, c)) else { return true };
        let h = tgt.hom(omap[a], omap[b]);
        reqs.iter().all(|(theta, img)| &h.apply(theta, v) == img)
    }
}

/// Outcome of a lifting check.
#[derive(Clone, Debug, PartialEq)]
pub struct RlpReport {
    pub holds: bool,
    pub squares_checked: usize,
    /// The first square `(top, bottom)` without a diagonal.
    pub witness: Option<(SimplicialFunctor, SimplicialFunctor)>,
}

/// Whether `f : c → d` has the right lifting property against
/// `j : a → b`: every square `f ∘ top = bottom ∘ j` admits `w : b → c`
/// with `w ∘ j = top` and `f ∘ w = bottom`. Squares are visited with `top`
/// outermost, both in enumeration order.
pub fn rlp_scat(
    j: &SimplicialFunctor,
    a: &SimplicialCategory,
    b: &SimplicialCategory,
    f: &SimplicialFunctor,
    c: &SimplicialCategory,
    d: &SimplicialCategory,
) -> Result<RlpReport> {
    let tops = enumerate_functors(a, c)?;
    let bottoms = FunctorSearch::new(b, d)?;
    let diagonals = FunctorSearch::new(b, c)?;
    let mut squares = 0usize;
    for top in &tops {
        let ftop = top.then(f, c, d);
        let along_bottom = Along::new(j, a, b, &ftop, d.num_objects());
        let along_top = Along::new(j, a, b, top, c.num_objects());
        let mut failure = None;
        let _ = bottoms.for_each(&along_bottom.objects, &|o, x, y, cell, v| along_bottom.cell_ok(d, o, x, y, cell, v), &mut |bottom| {
            squares += 1;
            let objects: Vec<Vec<usize>> = along_top
                .objects
                .iter()
                .enumerate()
                .map(|(x, ys)| ys.iter().copied().filter(|&y| f.object_map[y] == bottom.object_map[x]).collect())
                .collect();
            let nb = b.num_objects();
            let ok = |o: &[usize], x: usize, y: usize, cell: u32, v: &SimplexRef| {
                along_top.cell_ok(c, o, x, y, cell, v)
                    && f.apply(c, d, o[x], o[y], v) == bottom.hom_maps[x * nb + y].assignment[cell as usize]
            };
            let found = diagonals.for_each(&objects, &ok, &mut |_| ControlFlow::Break(()));
            if found.is_continue() {
                failure = Some(bottom.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(bottom) = failure {
            return Ok(RlpReport { holds: false, squares_checked: squares, witness: Some((top.clone(), bottom)) });
        }
    }
    Ok(RlpReport { holds: true, squares_checked: squares, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FiniteCategory;
    use crate::group::FiniteGroup;

    #[test]
    fn functors_from_small_categories() {
        let z2 = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(2), 2).unwrap();
        let pt = SimplicialCategory::discrete(&FiniteCategory::discrete(1), 2);
        assert_eq!(enumerate_functors(&pt, &z2).unwrap().len(), 1);
        let arrow = SimplicialCategory::discrete(&FiniteCategory::ordinal(1), 2);
        let t = SimplicialCategory::discrete(&FiniteCategory::contractible_groupoid(3), 2);
        assert_eq!(enumerate_functors(&arrow, &t).unwrap().len(), 9);
        assert_eq!(enumerate_functors(&z2, &z2).unwrap().len(), 2);
        for f in enumerate_functors(&z2, &z2).unwrap() {
            f.validate(&z2, &z2).unwrap();
        }
    }

    #[test]
    fn lifting_against_an_object_inclusion() {
        let pt = SimplicialCategory::discrete(&FiniteCategory::discrete(1), 1);
        let arrow = SimplicialCategory::discrete(&FiniteCategory::ordinal(1), 1);
        let j = enumerate_functors(&pt, &arrow).unwrap().remove(0);
        let t2 = SimplicialCategory::discrete(&FiniteCategory::contractible_groupoid(2), 1);
        let id = SimplicialFunctor::identity(&t2);
        let r = rlp_scat(&j, &pt, &arrow, &id, &t2, &t2).unwrap();
        assert!(r.holds);
        let to_pt = enumerate_functors(&t2, &pt).unwrap().remove(0);
        let r = rlp_scat(&j, &pt, &arrow, &to_pt, &t2, &pt).unwrap();
        assert!(r.holds);
        let two = SimplicialCategory::discrete(&FiniteCategory::discrete(2), 1);
        let onto = enumerate_functors(&two, &arrow).unwrap().into_iter().find(|f| f.object_map == vec![0, 1]).unwrap();
        let r = rlp_scat(&j, &pt, &arrow, &onto, &two, &arrow).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().0.object_map, vec![0]);
    }
}
