//! Simplicially enriched categories with finitely many objects.

use crate::error::{Error, Result};
use crate::fincat::{CategoryNerve, FiniteCategory};
use crate::sset::{mono, product, SimplexRef, SimplicialMap, SimplicialSet};

pub mod free;

pub mod functors;
pub mod json;
pub mod props;

pub use free::{free_scat, FreeScat, Generator, SimplicialGraph};
pub use functors::{enumerate_functors, extend_functors, rlp_scat, FunctorSearch, RlpReport};
pub use props::{
    is_fibrant, is_fibrant_groupoid, is_weak_fibration, is_weak_groupoid, pi0_category,
    strong_equivalence_certificate, CertificationLevel, EquivalenceCertificate, FibrancyReport, Pi0Category,
    WeakFibrationFailure, WeakFibrationReport,
};

/// Marks a composite that is not materialized (word-length truncation).
pub const UNDEFINED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct SimplicialCategory {
    pub objects: Vec<String>,
    cap: usize,
    homs: Vec<SimplicialSet>,
    identities: Vec<u32>,
    /// Per triple `(a, b, c)` and degree `k`, the index of `g ∘ f` at
    /// `g * |Hom(a,b)_k| + f`.
    tables: Vec<Vec<Vec<u32>>>,
    partial: bool,
}

impl PartialEq for SimplicialCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.cap == other.cap
            && self.homs == other.homs
            && self.identities == other.identities
            && self.tables == other.tables
    }
}

impl SimplicialCategory {
    /// Tabulates composition from `rule(a, b, c, g, f) = g ∘ f` in every
    /// degree up to the common cap of the homs. `None` marks an undefined
    /// composite and makes the category partial.
    pub fn from_rule(
        objects: Vec<String>,
        homs: Vec<Vec<SimplicialSet>>,
        identities: Vec<u32>,
        rule: impl Fn(usize, usize, usize, &SimplexRef, &SimplexRef) -> Option<SimplexRef>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || identities.len() != n {
            return Err(Error::Invalid("hom data does not match the objects".into()));
        }
        let homs: Vec<SimplicialSet> = homs.into_iter().flatten().collect();
        let cap = homs.first().map_or(0, SimplicialSet::cap);
        if homs.iter().any(|h| h.cap() != cap) {
            return Err(Error::Invalid("homs must share one cap".into()));
        }
        for x in 0..n {
            let h = &homs[x * n + x];
            if identities[x] as usize >= h.num_cells() || h.dim_of(identities[x]) != 0 {
                return Err(Error::Invalid(format!("identity of {} is not a vertex", objects[x])));
            }
        }
        let mut partial = false;
        let mut tables = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (hab, hbc, hac) = (&homs[a * n + b], &homs[b * n + c], &homs[a * n + c]);
                    let mut per_k = Vec::with_capacity(cap + 1);
                    for k in 0..=cap {
                        let (fs, gs) = (hab.simplices(k), hbc.simplices(k));
                        let mut t = Vec::with_capacity(fs.len() * gs.len());
                        for g in gs {
                            for f in fs {
                                match rule(a, b, c, g, f) {
                                    Some(h) => {
                                        if h.dim() != k {
                                            return Err(Error::Invalid(format!(
                                                "composite in degree {k} has dimension {}",
                                                h.dim()
                                            )));
                                        }
                                        hac.check_ref(&h)?;
                                        t.push(hac.index_of(&h));
                                    }
                                    None => {
                                        partial = true;
                                        t.push(UNDEFINED);
                                    }
                                }
                            }
                        }
                        per_k.push(t);
                    }
                    tables.push(per_k);
                }
            }
        }
        Ok(SimplicialCategory { objects, cap, homs, identities, tables, partial })
    }

    /// The discrete simplicial category on an ordinary category.
    pub fn discrete(c: &FiniteCategory, cap: usize) -> Self {
        let n = c.num_objects();
        let homs: Vec<Vec<SimplicialSet>> = (0..n)
            .map(|a| (0..n).map(|b| SimplicialSet::discrete(c.hom(a, b).len(), cap)).collect())
            .collect();
        let pos = |f: usize| c.hom(c.src(f), c.tgt(f)).iter().position(|&g| g == f).expect("arrow in its hom") as u32;
        let identities = (0..n).map(|x| pos(c.identities[x])).collect();
        SimplicialCategory::from_rule(c.objects.clone(), homs, identities, |a, b, cc, g, f| {
            let gf = c.comp(c.hom(b, cc)[g.nd as usize], c.hom(a, b)[f.nd as usize]);
            Some(SimplexRef { nd: pos(gf), surj: g.surj.clone() })
        })
        .expect("discrete categories are simplicial categories")
    }

    /// One object whose endomorphisms are the nerve of a finite abelian
    /// group under the pointwise law.
    pub fn abelian_group_nerve(g: &crate::group::FiniteGroup, cap: usize) -> Result<Self> {
        if !g.is_abelian() {
            return Err(Error::Invalid("the pointwise law needs an abelian group".into()));
        }
        let bg = FiniteCategory::from_group(g, "g");
        let nerve = CategoryNerve::new(&bg, cap);
        let hom = nerve.set.clone();
        SimplicialCategory::from_rule(vec!["*".into()], vec![vec![hom]], vec![0], |_, _, _, x, y| {
            let (_, sx) = nerve.string_of(&bg, x);
            let (_, sy) = nerve.string_of(&bg, y);
            let prod: Vec<usize> = sx.iter().zip(&sy).map(|(&a, &b)| g.op(a, b)).collect();
            Some(nerve.simplex_of_string(&bg, 0, &prod))
        })
    }

    /// Objects are pairs; homs are products of homs.
    pub fn product(&self, other: &SimplicialCategory) -> Result<Self> {
        let cap = self.cap.min(other.cap);
        let (n, m) = (self.num_objects(), other.num_objects());
        let mut objects = Vec::new();
        for a in &self.objects {
            for b in &other.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let mut prods = Vec::new();
        for x in 0..n * m {
            let mut row = Vec::new();
            for y in 0..n * m {
                row.push(product(self.hom(x / m, y / m), other.hom(x % m, y % m), cap)?);
            }
            prods.push(row);
        }
        let homs = prods.iter().map(|r| r.iter().map(|p| p.set.clone()).collect()).collect();
        let identities = (0..n * m)
            .map(|x| {
                let (a, b) = (x / m, x % m);
                let pa = SimplexRef::cell(self.identities[a], 0);
                let pb = SimplexRef::cell(other.identities[b], 0);
                prods[x][x].pair(self.hom(a, a), other.hom(b, b), &pa, &pb).nd
            })
            .collect();
        SimplicialCategory::from_rule(objects, homs, identities, |x, y, z, g, f| {
            let (gx, gy) = prods[y][z].components(self.hom(y / m, z / m), other.hom(y % m, z % m), g);
            let (fx, fy) = prods[x][y].components(self.hom(x / m, y / m), other.hom(x % m, y % m), f);
            let hx = self.compose(x / m, y / m, z / m, &gx, &fx)?;
            let hy = other.compose(x % m, y % m, z % m, &gy, &fy)?;
            Some(prods[x][z].pair(self.hom(x / m, z / m), other.hom(x % m, z % m), &hx, &hy))
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn hom(&self, a: usize, b: usize) -> &SimplicialSet {
        &self.homs[a * self.num_objects() + b]
    }

    /// The identity vertex of `x` as a cell id of `Hom(x, x)`.
    pub fn identity(&self, x: usize) -> u32 {
        self.identities[x]
    }

    /// The degenerate identity of `x` in degree `k`.
    pub fn identity_ref(&self, x: usize, k: usize) -> SimplexRef {
        SimplexRef { nd: self.identities[x], surj: vec![0; k + 1] }
    }

    /// Composite by level indices; `None` if undefined.
    pub fn compose_idx(&self, a: usize, b: usize, c: usize, k: usize, g: u32, f: u32) -> Option<u32> {
        let n = self.num_objects();
        let width = self.hom(a, b).count(k) as u32;
        let h = self.tables[(a * n + b) * n + c][k][(g * width + f) as usize];
        (h != UNDEFINED).then_some(h)
    }

    /// `g ∘ f` for `f ∈ Hom(a,b)_k`, `g ∈ Hom(b,c)_k`.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: &SimplexRef, f: &SimplexRef) -> Option<SimplexRef> {
        let k = f.dim();
        let h = self.compose_idx(a, b, c, k, self.hom(b, c).index_of(g), self.hom(a, b).index_of(f))?;
        Some(self.hom(a, c).simplex_at(k, h).clone())
    }

    /// Whether `r` is a degeneracy of an identity.
    pub fn is_identity(&self, a: usize, b: usize, r: &SimplexRef) -> bool {
        a == b && r.nd == self.identities[a]
    }

    /// The ordinary category of `k`-simplices.
    pub fn level_category(&self, k: usize) -> FiniteCategory {
        use crate::fincat::Arrow;
        let n = self.num_objects();
        let mut arrows = Vec::new();
        let mut offset = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                offset[a * n + b] = arrows.len();
                for s in 0..self.hom(a, b).count(k) {
                    arrows.push(Arrow { name: format!("{a}>{b}#{s}"), src: a, tgt: b });
                }
            }
        }
        let identities = (0..n)
            .map(|x| offset[x * n + x] + self.hom(x, x).index_of(&self.identity_ref(x, k)) as usize)
            .collect();
        let ends: Vec<(usize, usize, usize)> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.src, a.tgt, i - offset[a.src * n + a.tgt]))
            .collect();
        FiniteCategory::new(self.objects.clone(), arrows, identities, |g, f| {
            let (a, b, fi) = ends[f];
            let (_, c, gi) = ends[g];
            let h = self.compose_idx(a, b, c, k, gi as u32, fi as u32).expect("level categories need total composition");
            offset[a * n + c] + h as usize
        })
        .expect("levels of a simplicial category are categories")
    }

    /// Exhaustive check of units, associativity and simplicial naturality.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.num_objects();
        for k in 0..=self.cap {
            for a in 0..n {
                for b in 0..n {
                    let hab = self.hom(a, b);
                    let ida = self.hom(a, a).index_of(&self.identity_ref(a, k));
                    let idb = self.hom(b, b).index_of(&self.identity_ref(b, k));
                    for f in 0..hab.count(k) as u32 {
                        if self.compose_idx(a, a, b, k, f, ida).is_some_and(|h| h != f)
                            || self.compose_idx(a, b, b, k, idb, f).is_some_and(|h| h != f)
                        {
                            return Err(Error::Invalid(format!("unit law fails in Hom({a},{b})_{k}")));
                        }
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            self.check_assoc(a, b, c, d, k)?;
                        }
                        self.check_naturality(a, b, c, k)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn check_assoc(&self, a: usize, b: usize, c: usize, d: usize, k: usize) -> Result<()> {
        let (nf, ng, nh) = (self.hom(a, b).count(k), self.hom(b, c).count(k), self.hom(c, d).count(k));
        for f in 0..nf as u32 {
            for g in 0..ng as u32 {
                let Some(gf) = self.compose_idx(a, b, c, k, g, f) else { continue };
                for h in 0..nh as u32 {
                    let Some(hg) = self.compose_idx(b, c, d, k, h, g) else { continue };
                    let l = self.compose_idx(a, c, d, k, h, gf);
                    let r = self.compose_idx(a, b, d, k, hg, f);
                    if l.is_some() && r.is_some() && l != r {
                        return Err(Error::Invalid(format!("associativity fails in degree {k} at ({a},{b},{c},{d})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_naturality(&self, a: usize, b: usize, c: usize, k: usize) -> Result<()> {
        let (hab, hbc, hac) = (self.hom(a, b), self.hom(b, c), self.hom(a, c));
        for f in hab.simplices(k) {
            for g in hbc.simplices(k) {
                let Some(h) = self.compose(a, b, c, g, f) else { continue };
                let mut ops: Vec<Vec<usize>> = Vec::new();
                if k > 0 {
                    ops.extend((0..=k).map(|i| mono::coface(k, i)));
                }
                if k < self.cap {
                    ops.extend((0..=k).map(|j| mono::codegeneracy(k, j)));
                }
                for theta in ops {
                    let lhs = hac.apply(&theta, &h);
                    if let Some(rhs) = self.compose(a, b, c, &hbc.apply(&theta, g), &hab.apply(&theta, f)) {
                        if lhs != rhs {
                            return Err(Error::Invalid(format!(
                                "composition is not simplicial at ({a},{b},{c}) in degree {k}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A simplicial functor: an object map and one simplicial map per hom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialFunctor {
    pub object_map: Vec<usize>,
    /// Indexed by `a * |objects| + b`.
    pub hom_maps: Vec<SimplicialMap>,
}

impl SimplicialFunctor {
    pub fn identity(c: &SimplicialCategory) -> Self {
        let n = c.num_objects();
        SimplicialFunctor {
            object_map: (0..n).collect(),
            hom_maps: (0..n * n).map(|i| SimplicialMap::identity(c.hom(i / n, i % n))).collect(),
        }
    }

    /// The functor induced by an ordinary functor on discrete categories.
    pub fn discrete(f: &crate::fincat::Functor, src: &FiniteCategory, tgt: &FiniteCategory) -> Self {
        let n = src.num_objects();
        let pos = |c: &FiniteCategory, g: usize| c.hom(c.src(g), c.tgt(g)).iter().position(|&h| h == g).expect("arrow") as u32;
        let hom_maps = (0..n * n)
            .map(|i| SimplicialMap {
                assignment: src.hom(i / n, i % n).iter().map(|&g| SimplexRef::cell(pos(tgt, f.arrow_map[g]), 0)).collect(),
            })
            .collect();
        SimplicialFunctor { object_map: f.object_map.clone(), hom_maps }
    }

    pub fn hom_map(&self, n: usize, a: usize, b: usize) -> &SimplicialMap {
        &self.hom_maps[a * n + b]
    }

    /// The image of a simplex of `Hom(a, b)`.
    pub fn apply(&self, src: &SimplicialCategory, tgt: &SimplicialCategory, a: usize, b: usize, r: &SimplexRef) -> SimplexRef {
        let m = &self.hom_maps[a * src.num_objects() + b];
        m.apply(tgt.hom(self.object_map[a], self.object_map[b]), r)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialFunctor, mid: &SimplicialCategory, tgt: &SimplicialCategory) -> SimplicialFunctor {
        let n = self.object_map.len();
        let object_map: Vec<usize> = self.object_map.iter().map(|&x| other.object_map[x]).collect();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                let (fa, fb) = (self.object_map[a], self.object_map[b]);
                let om = other.hom_map(mid.num_objects(), fa, fb);
                self.hom_maps[i].then(om, tgt.hom(object_map[a], object_map[b]))
            })
            .collect();
        SimplicialFunctor { object_map, hom_maps }
    }

    /// Checks maps, identities and composition in every degree of `src`.
    pub fn validate(&self, src: &SimplicialCategory, tgt: &SimplicialCategory) -> Result<()> {
        let n = src.num_objects();
        if self.object_map.len() != n || self.hom_maps.len() != n * n {
            return Err(Error::NotAMap("functor data has the wrong size".into()));
        }
        if self.object_map.iter().any(|&x| x >= tgt.num_objects()) {
            return Err(Error::NotAMap("object outside the target".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let (fa, fb) = (self.object_map[a], self.object_map[b]);
                self.hom_maps[a * n + b].validate(src.hom(a, b), tgt.hom(fa, fb))?;
            }
            let id = self.apply(src, tgt, a, a, &src.identity_ref(a, 0));
            if id != tgt.identity_ref(self.object_map[a], 0) {
                return Err(Error::NotAMap(format!("identity of {} not preserved", src.objects[a])));
            }
        }
        let top = src.cap().min(tgt.cap());
        for k in 0..=top {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for f in src.hom(a, b).simplices(k) {
                            for g in src.hom(b, c).simplices(k) {
                                let Some(h) = src.compose(a, b, c, g, f) else { continue };
                                let (fa, fb, fc) = (self.object_map[a], self.object_map[b], self.object_map[c]);
                                let lhs = self.apply(src, tgt, a, c, &h);
                                let rhs = tgt.compose(fa, fb, fc, &self.apply(src, tgt, b, c, g), &self.apply(src, tgt, a, b, f));
                                if rhs.is_some_and(|r| r != lhs) {
                                    return Err(Error::NotAMap(format!(
                                        "composition not preserved at ({a},{b},{c}) in degree {k}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn discrete_and_group_categories() {
        let c = SimplicialCategory::discrete(&FiniteCategory::ordinal(2), 2);
        c.check_axioms().unwrap();
        assert_eq!(c.hom(0, 2).nd_counts(), vec![1]);
        assert_eq!(c.hom(2, 0).nd_counts(), Vec::<usize>::new());
        let g = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(2), 3).unwrap();
        g.check_axioms().unwrap();
        assert_eq!(g.hom(0, 0).count(2), 4);
        assert!(SimplicialCategory::abelian_group_nerve(&FiniteGroup::symmetric3(), 2).is_err());
    }

    #[test]
    fn products_and_levels() {
        let g = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(2), 2).unwrap();
        let t = SimplicialCategory::discrete(&FiniteCategory::contractible_groupoid(2), 2);
        let p = g.product(&t).unwrap();
        p.check_axioms().unwrap();
        assert_eq!(p.num_objects(), 2);
        assert_eq!(p.hom(0, 1).count(1), 2);
        let lc = p.level_category(1);
        assert_eq!(lc.num_arrows(), 8);
        assert!(lc.is_groupoid());
    }

    #[test]
    fn identity_functor_validates() {
        let g = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(3), 2).unwrap();
        SimplicialFunctor::identity(&g).validate(&g, &g).unwrap();
    }
}
