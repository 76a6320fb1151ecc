//! Cosimplicial replacement and truncated homotopy limits of diagrams of
//! simplicial sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::FiniteCategory;
use crate::sset::levels::{from_levels, LevelSet};
use crate::sset::{extend_maps, mono, product, standard_simplex, PosetNerve, ProductSet, SimplexRef, SimplicialMap, SimplicialSet};

/// Upper bound on the elements of one level of `holim`.
pub const DEFAULT_MAX_ELEMENTS: usize = 200_000;

/// A strict functor `F : B^op → sSet`. `action[φ] : F(b') → F(b)` for
/// `φ : b → b'`.
#[derive(Clone, Debug)]
pub struct SDiagram {
    pub base: FiniteCategory,
    pub values: Vec<SimplicialSet>,
    pub action: Vec<SimplicialMap>,
}

impl SDiagram {
    pub fn new(base: FiniteCategory, values: Vec<SimplicialSet>, action: Vec<SimplicialMap>) -> Result<Self> {
        if values.len() != base.num_objects() || action.len() != base.num_arrows() {
            return Err(Error::Invalid("one value per object and one map per arrow required".into()));
        }
        for (phi, f) in action.iter().enumerate() {
            f.validate(&values[base.tgt(phi)], &values[base.src(phi)])?;
        }
        for (b, &id) in base.identities.iter().enumerate() {
            if action[id] != SimplicialMap::identity(&values[b]) {
                return Err(Error::NotAMap(format!("F(id) is not the identity at object {b}")));
            }
        }
        for psi in 0..base.num_arrows() {
            for phi in 0..base.num_arrows() {
                if base.src(psi) == base.tgt(phi)
                    && action[base.comp(psi, phi)] != action[psi].then(&action[phi], &values[base.src(phi)])
                {
                    return Err(Error::NotAMap(format!("F is not strict at arrows {psi} and {phi}")));
                }
            }
        }
        Ok(SDiagram { base, values, action })
    }

    pub fn constant(base: &FiniteCategory, x: &SimplicialSet) -> Result<Self> {
        SDiagram::new(
            base.clone(),
            vec![x.clone(); base.num_objects()],
            vec![SimplicialMap::identity(x); base.num_arrows()],
        )
    }

    fn apply(&self, phi: usize, r: &SimplexRef) -> SimplexRef {
        self.action[phi].apply(&self.values[self.base.src(phi)], r)
    }
}

/// A string `x_0 → x_1 → … → x_q` in `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BString {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl BString {
    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    /// `θ^* σ = (x_{θ(0)} → … → x_{θ(p)})` for monotone `θ : [p] → [q]`.
    pub fn pull(&self, b: &FiniteCategory, theta: &[usize]) -> BString {
        let arrow = |i: usize, j: usize| (i..j).fold(b.identities[self.objects[i]], |acc, k| b.comp(self.arrows[k], acc));
        BString {
            objects: theta.iter().map(|&k| self.objects[k]).collect(),
            arrows: theta.windows(2).map(|w| arrow(w[0], w[1])).collect(),
        }
    }

    /// `(τ, η)` with `τ` nondegenerate and `self = η^* τ`.
    pub fn reduce(&self, b: &FiniteCategory) -> (BString, Vec<usize>) {
        let mut eta = vec![0usize];
        let mut tau = BString { objects: vec![self.objects[0]], arrows: Vec::new() };
        for (k, &a) in self.arrows.iter().enumerate() {
            if b.is_identity(a) {
                eta.push(*eta.last().expect("nonempty"));
            } else {
                tau.arrows.push(a);
                tau.objects.push(self.objects[k + 1]);
                eta.push(eta.last().expect("nonempty") + 1);
            }
        }
        (tau, eta)
    }
}

/// All strings of dimension `q` in `B`.
pub fn strings(b: &FiniteCategory, q: usize, nondegenerate_only: bool) -> Vec<BString> {
    let mut layer: Vec<BString> = (0..b.num_objects()).map(|x| BString { objects: vec![x], arrows: vec![] }).collect();
    for _ in 0..q {
        let mut next = Vec::new();
        for s in &layer {
            let top = *s.objects.last().expect("nonempty");
            for f in (0..b.num_arrows()).filter(|&f| b.src(f) == top && !(nondegenerate_only && b.is_identity(f))) {
                let mut t = s.clone();
                t.arrows.push(f);
                t.objects.push(b.tgt(f));
                next.push(t);
            }
        }
        layer = next;
    }
    layer
}

/// `F̃^q = ∏_{x_0 → … → x_q} F(x_0)` for `q ≤ n_cap`, acting on tuples of
/// simplices of equal dimension, one per string.
#[derive(Clone, Debug)]
pub struct CosimplicialReplacement {
    pub strings: Vec<Vec<BString>>,
    index: Vec<HashMap<BString, usize>>,
}

impl CosimplicialReplacement {
    pub fn new(b: &FiniteCategory, n_cap: usize) -> Self {
        let strings: Vec<Vec<BString>> = (0..=n_cap).map(|q| self::strings(b, q, false)).collect();
        let index = strings.iter().map(|l| l.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect()).collect();
        CosimplicialReplacement { strings, index }
    }

    /// `θ_* : F̃^p → F̃^q` for monotone `θ : [p] → [q]`:
    /// `(θ_* w)_σ = F(x_0 → x_{θ(0)})(w_{θ^*σ})`.
    pub fn apply(&self, f: &SDiagram, theta: &[usize], q: usize, w: &[SimplexRef]) -> Result<Vec<SimplexRef>> {
        let p = theta.len() - 1;
        mono::check_monotone(theta, q)?;
        if q >= self.strings.len() || w.len() != self.strings[p].len() {
            return Err(Error::OutOfRange(format!("degree {q} or a tuple of the wrong length")));
        }
        let b = &f.base;
        Ok(self.strings[q]
            .iter()
            .map(|sigma| {
                let pulled = sigma.pull(b, theta);
                let x = &w[self.index[p][&pulled]];
                let to = sigma.pull(b, &[0, theta[0]]).arrows[0];
                f.apply(to, x)
            })
            .collect())
    }
}

/// `Δ^n` for every `n ≤ cap`, all truncated at `cap`, with their products.
struct Shapes {
    simplices: Vec<PosetNerve>,
    products: HashMap<(usize, usize), ProductSet>,
}

impl Shapes {
    fn new(cap: usize) -> Result<Self> {
        let simplices = (0..=cap).map(|n| standard_simplex(n, cap)).collect::<Result<Vec<_>>>()?;
        Ok(Shapes { simplices, products: HashMap::new() })
    }

    fn product(&mut self, q: usize, m: usize) -> Result<&ProductSet> {
        if !self.products.contains_key(&(q, m)) {
            let p = product(&self.simplices[q].set, &self.simplices[m].set, q + m)?;
            self.products.insert((q, m), p);
        }
        Ok(&self.products[&(q, m)])
    }

    /// The simplex of `Δ^n` with the given weakly increasing vertices.
    fn simplex(&self, n: usize, vertices: &[usize]) -> SimplexRef {
        self.simplices[n].simplex_of_chain(vertices).expect("monotone vertex list")
    }

    fn vertices(&self, n: usize, r: &SimplexRef) -> Vec<usize> {
        self.simplices[n].chain_of(r)
    }
}

/// The `n_cap`-truncated homotopy limit: `m`-simplices are families of maps
/// `z_σ : Δ^q × Δ^m → F(x_0)`, one per nondegenerate string `σ`, compatible
/// with the cosimplicial structure.
#[derive(Clone, Debug)]
pub struct Holim {
    pub levels: LevelSet,
    pub n_cap: usize,
    pub dim_cap: usize,
    pub label: String,
    /// Nondegenerate strings with `q ≤ n_cap`.
    pub strings: Vec<BString>,
    /// `elements[m][x][σ]`.
    pub elements: Vec<Vec<Vec<SimplicialMap>>>,
    /// Whether every nondegenerate string of `B` has `q ≤ n_cap`.
    pub exact: bool,
}

impl Holim {
    pub fn set(&self) -> &SimplicialSet {
        &self.levels.set
    }
}

/// The length of the longest nondegenerate string, if bounded.
pub fn string_height(b: &FiniteCategory) -> Option<usize> {
    // a nondegenerate string longer than the number of non-identity arrows
    // repeats an arrow, so it can be extended forever
    let bound = (0..b.num_arrows()).filter(|&f| !b.is_identity(f)).count() + 1;
    (0..=bound).find(|&q| strings(b, q + 1, true).is_empty())
}

/// `holim F = lim_{[p] → [q]} (F̃^q)^{Δ^p}` with `q ≤ n_cap`, in degrees up
/// to `dim_cap`. Requires `n_cap ≥ min(dim_cap + 2, height of B)` and every
/// `F(x)` to carry dimensions up to `n_cap + dim_cap`.
pub fn holim_sset(f: &SDiagram, n_cap: usize, dim_cap: usize) -> Result<Holim> {
    holim_sset_bounded(f, n_cap, dim_cap, DEFAULT_MAX_ELEMENTS)
}

pub fn holim_sset_bounded(f: &SDiagram, n_cap: usize, dim_cap: usize, max_elements: usize) -> Result<Holim> {
    let b = &f.base;
    let height = string_height(b);
    let needed = height.map_or(dim_cap + 2, |h| h.min(dim_cap + 2));
    if n_cap < needed {
        return Err(Error::CapTooSmall { needed, cap: n_cap });
    }
    let top = height.map_or(n_cap, |h| h.min(n_cap));
    for v in &f.values {
        if v.cap() < top + dim_cap {
            return Err(Error::CapTooSmall { needed: top + dim_cap, cap: v.cap() });
        }
    }
    let nd: Vec<BString> = (0..=top).flat_map(|q| strings(b, q, true)).collect();
    let nd_index: HashMap<&BString, usize> = nd.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut shapes = Shapes::new(top + dim_cap + 1)?;

    let mut elements: Vec<Vec<Vec<SimplicialMap>>> = Vec::with_capacity(dim_cap + 1);
    for m in 0..=dim_cap {
        for q in 0..=top {
            shapes.product(q, m)?;
        }
        let mut level = Vec::new();
        let mut partial_family = Vec::with_capacity(nd.len());
        search(f, &shapes, &nd, &nd_index, m, &mut partial_family, &mut level, max_elements)?;
        elements.push(level);
    }

    // faces and degeneracies act through Δ^m
    let lookups: Vec<HashMap<&Vec<SimplicialMap>, usize>> =
        elements.iter().map(|l| l.iter().enumerate().map(|(k, e)| (e, k)).collect()).collect();
    let mut face_table: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut degen_table: Vec<Vec<Vec<usize>>> = Vec::new();
    for m in 0..=dim_cap {
        if m > 0 {
            let table = elements[m]
                .iter()
                .map(|e| {
                    (0..=m)
                        .map(|i| {
                            let moved = along(f, &shapes, &nd, e, m, m - 1, &mono::coface(m, i));
                            lookups[m - 1].get(&moved).copied().ok_or_else(|| Error::NotAMap("a face left Tot".into()))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            face_table.push(table);
        }
        if m < dim_cap {
            let table = elements[m]
                .iter()
                .map(|e| {
                    (0..=m)
                        .map(|j| {
                            let moved = along(f, &shapes, &nd, e, m, m + 1, &mono::codegeneracy(m, j));
                            lookups[m + 1].get(&moved).copied().ok_or_else(|| Error::NotAMap("a degeneracy left Tot".into()))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            degen_table.push(table);
        }
    }
    let counts: Vec<usize> = elements.iter().map(Vec::len).collect();
    let levels = from_levels(&counts, |k, x, i| face_table[k][x][i], |k, x, j| degen_table[k][x][j])?;
    Ok(Holim {
        levels,
        n_cap,
        dim_cap,
        label: format!("{n_cap}-truncated approximation"),
        strings: nd,
        elements,
        exact: height.is_some_and(|h| h <= n_cap),
    })
}

/// Precomposes every `z_σ` with `1 × θ : Δ^q × Δ^k → Δ^q × Δ^m`.
fn along(f: &SDiagram, shapes: &Shapes, nd: &[BString], e: &[SimplicialMap], m: usize, k: usize, theta: &[usize]) -> Vec<SimplicialMap> {
    nd.iter()
        .zip(e)
        .map(|(sigma, z)| {
            let q = sigma.dim();
            let (src, tgt) = (&shapes.products[&(q, k)], &shapes.products[&(q, m)]);
            let (dq, dk, dm) = (&shapes.simplices[q].set, &shapes.simplices[k].set, &shapes.simplices[m].set);
            let value = &f.values[sigma.objects[0]];
            let assignment = (0..src.set.num_cells() as u32)
                .map(|c| {
                    let (rx, ry) = src.components(dq, dk, &src.set.cell_ref(c));
                    let vy: Vec<usize> = shapes.vertices(k, &ry).iter().map(|&v| theta[v]).collect();
                    let image = tgt.pair(dq, dm, &rx, &shapes.simplex(m, &vy));
                    z.apply(value, &image)
                })
                .collect();
            SimplicialMap { assignment }
        })
        .collect()
}

/// Extends a partial family string by string.
#[allow(clippy::too_many_arguments)]
fn search(
    f: &SDiagram,
    shapes: &Shapes,
    nd: &[BString],
    nd_index: &HashMap<&BString, usize>,
    m: usize,
    family: &mut Vec<SimplicialMap>,
    out: &mut Vec<Vec<SimplicialMap>>,
    max_elements: usize,
) -> Result<()> {
    let k = family.len();
    if k == nd.len() {
        if out.len() >= max_elements {
            return Err(Error::ResourceLimit(format!("more than {max_elements} simplices in degree {m}")));
        }
        out.push(family.clone());
        return Ok(());
    }
    let b = &f.base;
    let sigma = &nd[k];
    let q = sigma.dim();
    let p = &shapes.products[&(q, m)];
    let (dq, dm) = (&shapes.simplices[q].set, &shapes.simplices[m].set);
    let value = &f.values[sigma.objects[0]];
    let mut partial: Vec<Option<SimplexRef>> = vec![None; p.set.num_cells()];
    for (c, slot) in partial.iter_mut().enumerate() {
        let (rx, ry) = p.components(dq, dm, &p.set.cell_ref(c as u32));
        let vx = shapes.vertices(q, &rx);
        let Some(i) = (0..=q).find(|i| !vx.contains(i)) else { continue };
        // the cell lies in the face δ^i; read it off the lower string
        let vx_face: Vec<usize> = vx.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
        let (tau, eta) = sigma.pull(b, &mono::coface(q, i)).reduce(b);
        let t = nd_index[&tau];
        let r = tau.dim();
        let vt: Vec<usize> = vx_face.iter().map(|&v| eta[v]).collect();
        let pt = &shapes.products[&(r, m)];
        let cell = pt.pair(&shapes.simplices[r].set, dm, &shapes.simplex(r, &vt), &ry);
        let lower = family[t].apply(&f.values[tau.objects[0]], &cell);
        *slot = Some(if i == 0 { f.apply(sigma.arrows[0], &lower) } else { lower });
    }
    for z in extend_maps(&p.set, value, &partial)? {
        family.push(z);
        search(f, shapes, nd, nd_index, m, family, out, max_elements)?;
        family.pop();
    }
    Ok(())
}

/// `lim F` in degrees up to `dim_cap`: families `x_b ∈ F(b)` with
/// `F(φ)(x_{b'}) = x_b`.
pub fn lim_sset(f: &SDiagram, dim_cap: usize) -> Result<(LevelSet, Vec<Vec<Vec<SimplexRef>>>)> {
    let b = &f.base;
    for v in &f.values {
        if v.cap() < dim_cap {
            return Err(Error::CapTooSmall { needed: dim_cap, cap: v.cap() });
        }
    }
    let mut elements: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    for m in 0..=dim_cap {
        let mut level = Vec::new();
        let mut stack: Vec<Vec<SimplexRef>> = vec![Vec::new()];
        while let Some(partial) = stack.pop() {
            let k = partial.len();
            if k == b.num_objects() {
                level.push(partial);
                continue;
            }
            for x in f.values[k].simplices(m).iter().rev() {
                let mut next = partial.clone();
                next.push(x.clone());
                let ok = (0..b.num_arrows()).all(|phi| {
                    let (s, t) = (b.src(phi), b.tgt(phi));
                    s.max(t) != k || f.apply(phi, &next[t]) == next[s]
                });
                if ok {
                    stack.push(next);
                }
            }
        }
        level.sort();
        elements.push(level);
    }
    let lookups: Vec<HashMap<&Vec<SimplexRef>, usize>> =
        elements.iter().map(|l| l.iter().enumerate().map(|(k, e)| (e, k)).collect()).collect();
    let counts: Vec<usize> = elements.iter().map(Vec::len).collect();
    let levels = from_levels(
        &counts,
        |k, x, i| lookups[k - 1][&elements[k][x].iter().enumerate().map(|(o, r)| f.values[o].face(i, r)).collect::<Vec<_>>()],
        |k, x, j| lookups[k + 1][&elements[k][x].iter().enumerate().map(|(o, r)| f.values[o].degeneracy(j, r)).collect::<Vec<_>>()],
    )?;
    Ok((levels, elements))
}

/// The canonical map `lim F → holim F`: `x ↦ (z_σ = x_{x_0} ∘ pr_2)`.
pub fn lim_to_holim(f: &SDiagram, lim: &(LevelSet, Vec<Vec<Vec<SimplexRef>>>), h: &Holim) -> Result<SimplicialMap> {
    let shapes = Shapes::new(h.strings.iter().map(BString::dim).max().unwrap_or(0) + h.dim_cap + 1)?;
    let (levels, elements) = lim;
    let lookups: Vec<HashMap<&Vec<SimplicialMap>, usize>> =
        h.elements.iter().map(|l| l.iter().enumerate().map(|(k, e)| (e, k)).collect()).collect();
    let mut assignment = Vec::with_capacity(levels.set.num_cells());
    for (c, &x) in levels.cell_element.iter().enumerate() {
        let m = levels.set.dim_of(c as u32);
        let family: Vec<SimplicialMap> = h
            .strings
            .iter()
            .map(|sigma| {
                let q = sigma.dim();
                let p = product(&shapes.simplices[q].set, &shapes.simplices[m].set, q + m)?;
                let value = &f.values[sigma.objects[0]];
                let point = &elements[m][x][sigma.objects[0]];
                let assignment = (0..p.set.num_cells() as u32)
                    .map(|cell| {
                        let (_, ry) = p.components(&shapes.simplices[q].set, &shapes.simplices[m].set, &p.set.cell_ref(cell));
                        let theta: Vec<usize> = shapes.vertices(m, &ry);
                        value.apply(&theta, point)
                    })
                    .collect();
                Ok(SimplicialMap { assignment })
            })
            .collect::<Result<_>>()?;
        let k = lookups[m].get(&family).copied().ok_or_else(|| Error::NotAMap("a limit point is not in Tot".into()))?;
        assignment.push(h.levels.normal[m][k].clone());
    }
    let map = SimplicialMap { assignment };
    map.validate(&levels.set, h.set())?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryNerve;
    use crate::group::FiniteGroup;
    use crate::sset::pi0;

    #[test]
    fn terminal_base_gives_the_value() {
        let b = FiniteCategory::ordinal(0);
        let x = standard_simplex(2, 4).unwrap().set;
        let f = SDiagram::constant(&b, &x).unwrap();
        let h = holim_sset(&f, 2, 2).unwrap();
        assert!(h.exact);
        for m in 0..=2 {
            assert_eq!(h.set().count(m), x.count(m));
        }
        assert_eq!(h.set().nd_counts(), x.with_cap(2).nd_counts());
    }

    #[test]
    fn constant_point_gives_a_point() {
        let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
        let f = SDiagram::constant(&z2, &SimplicialSet::point(4)).unwrap();
        let h = holim_sset(&f, 3, 1).unwrap();
        assert!(!h.exact);
        assert_eq!(h.set().nd_counts(), vec![1]);
        assert!(holim_sset(&f, 2, 1).is_err());
    }

    #[test]
    fn identity_of_bz2_over_an_arrow() {
        let b = FiniteCategory::ordinal(1);
        let bz2 = CategoryNerve::new(&FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"), 3).set;
        let f = SDiagram::constant(&b, &bz2).unwrap();
        let h = holim_sset(&f, 2, 1).unwrap();
        assert_eq!(h.label, "2-truncated approximation");
        assert_eq!(h.set().count(0), 2);
        assert_eq!(pi0(h.set()).count, 1);
        let lim = lim_sset(&f, 1).unwrap();
        let map = lim_to_holim(&f, &lim, &h).unwrap();
        assert_eq!(crate::sset::homotopy::pi0_map(&map, &lim.0.set, h.set()), vec![0]);
    }

    #[test]
    fn cosimplicial_identities() {
        let b = FiniteCategory::ordinal(2);
        let x = standard_simplex(1, 2).unwrap().set;
        let f = SDiagram::constant(&b, &x).unwrap();
        let rep = CosimplicialReplacement::new(&b, 2);
        let w: Vec<SimplexRef> = (0..rep.strings[0].len()).map(|k| x.simplices(1)[k % x.count(1)].clone()).collect();
        // d^1 d^0 = d^0 d^0 from degree 0 to degree 2
        let a = rep.apply(&f, &mono::coface(1, 0), 1, &w).unwrap();
        let lhs = rep.apply(&f, &mono::coface(2, 1), 2, &a).unwrap();
        let rhs = rep.apply(&f, &mono::coface(2, 0), 2, &a).unwrap();
        assert_eq!(lhs, rhs);
        let back = rep.apply(&f, &mono::codegeneracy(0, 0), 0, &a).unwrap();
        assert_eq!(back, w);
    }
}
