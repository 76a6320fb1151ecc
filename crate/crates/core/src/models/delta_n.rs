//! The cubical simplicial categories `Δ_N^n` and their subcategories.

use crate::error::{Error, Result};
use crate::scat::{SimplicialCategory, SimplicialFunctor};
use crate::sset::poset::{cube, cube_boundary, cube_horn, Cube, PosetNerve};
use crate::sset::{mono, SimplexRef, SimplicialMap, SimplicialSet, Subcomplex};

/// `Δ_N^n`: objects `0..=n`, `Hom(a, b)` the cube on the coordinates
/// strictly between `a` and `b`. Bit `t` of a vertex of `Hom(a, b)` is the
/// coordinate `a + 1 + t`.
#[derive(Clone, Debug)]
pub struct DeltaN {
    pub n: usize,
    pub category: SimplicialCategory,
    /// `Some` for `a ≤ b`, indexed `a * (n + 1) + b`.
    cubes: Vec<Option<Cube>>,
}

impl DeltaN {
    pub fn cube(&self, a: usize, b: usize) -> Option<&Cube> {
        self.cubes[a * (self.n + 1) + b].as_ref()
    }

    fn nerve(&self, a: usize, b: usize) -> &PosetNerve {
        &self.cube(a, b).expect("hom with a ≤ b").nerve
    }

    pub fn cap(&self) -> usize {
        self.category.cap()
    }

    /// The vertex of `Hom(a, b)` equal to 0 exactly on `zeros`.
    pub fn vertex(&self, a: usize, b: usize, zeros: &[usize]) -> SimplexRef {
        let c = self.cube(a, b).expect("hom with a ≤ b");
        let mask = c.vertex_mask(|x| !zeros.contains(&x));
        c.nerve.simplex_of_chain(&[mask]).expect("every vertex is present")
    }

    /// The indecomposable vertex `φ(a, b)`, constant 1.
    pub fn phi(&self, a: usize, b: usize) -> SimplexRef {
        self.vertex(a, b, &[])
    }

    /// The chain of vertex masks of a simplex of `Hom(a, b)`.
    pub fn chain(&self, a: usize, b: usize, r: &SimplexRef) -> Vec<usize> {
        self.nerve(a, b).chain_of(r)
    }

    pub fn simplex_of_chain(&self, a: usize, b: usize, chain: &[usize]) -> Option<SimplexRef> {
        self.nerve(a, b).simplex_of_chain(chain)
    }

    /// Coordinates of `(a, b)` where a vertex mask is 0.
    pub fn zeros(&self, a: usize, b: usize, mask: usize) -> Vec<usize> {
        (a + 1..b).filter(|x| mask >> (x - a - 1) & 1 == 0).collect()
    }
}

/// Builds `Δ_N^n` with homs truncated at `cap`.
pub fn delta_n(n: usize, cap: usize) -> DeltaN {
    let objs = n + 1;
    let mut cubes = Vec::with_capacity(objs * objs);
    let mut homs = Vec::with_capacity(objs);
    for a in 0..objs {
        let mut row = Vec::with_capacity(objs);
        for b in 0..objs {
            if a <= b {
                let c = cube((a + 1..b).collect(), cap);
                row.push(c.nerve.set.clone());
                cubes.push(Some(c));
            } else {
                row.push(SimplicialSet::empty(cap));
                cubes.push(None);
            }
        }
        homs.push(row);
    }
    let nerve = |a: usize, b: usize| &cubes[a * objs + b].as_ref().expect("a ≤ b").nerve;
    let identities = (0..objs).map(|_| 0).collect();
    let category = SimplicialCategory::from_rule(
        (0..objs).map(|i| i.to_string()).collect(),
        homs,
        identities,
        |a, b, c, g, f| {
            if a == b {
                return Some(g.clone());
            }
            if b == c {
                return Some(f.clone());
            }
            let (cf, cg) = (nerve(a, b).chain_of(f), nerve(b, c).chain_of(g));
            // the junction coordinate b gets 0
            let chain: Vec<usize> = cf.iter().zip(&cg).map(|(&x, &y)| x | y << (b - a)).collect();
            nerve(a, c).simplex_of_chain(&chain)
        },
    )
    .expect("Δ_N^n is a simplicial category");
    DeltaN { n, category, cubes }
}

/// `f_* : Δ_N^m → Δ_N^n` for a monotone `f : [m] → [n]`.
pub fn cosimplicial_action(src: &DeltaN, tgt: &DeltaN, f: &[usize]) -> Result<SimplicialFunctor> {
    mono::check_monotone(f, tgt.n)?;
    if f.len() != src.n + 1 {
        return Err(Error::Invalid(format!("expected a map out of [{}]", src.n)));
    }
    let objs = src.n + 1;
    let mut hom_maps = Vec::with_capacity(objs * objs);
    for a in 0..objs {
        for b in 0..objs {
            if a > b {
                hom_maps.push(SimplicialMap { assignment: Vec::new() });
                continue;
            }
            let (fa, fb) = (f[a], f[b]);
            let tc = tgt.cube(fa, fb).expect("monotone maps keep a ≤ b");
            let m = src.nerve(a, b).map_by_vertices(&tc.nerve, |mask| {
                let mut marked = vec![a, b];
                marked.extend(src.zeros(a, b, mask));
                let zeros: Vec<usize> = marked.iter().map(|&x| f[x]).filter(|&y| fa < y && y < fb).collect();
                tc.vertex_mask(|y| !zeros.contains(&y))
            })?;
            hom_maps.push(m);
        }
    }
    Ok(SimplicialFunctor { object_map: f.to_vec(), hom_maps })
}

/// An indecomposable nondegenerate simplex of `Hom(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndGenerator {
    pub a: usize,
    pub b: usize,
    pub simplex: SimplexRef,
}

/// The free generators of `Δ_N^n`: nondegenerate simplices of `Hom(a, b)`,
/// `a < b`, with no coordinate constantly 0.
pub fn ind_generators(d: &DeltaN) -> Vec<IndGenerator> {
    let mut out = Vec::new();
    for a in 0..=d.n {
        for b in a + 1..=d.n {
            let c = d.cube(a, b).expect("a < b");
            let full = (1usize << c.dim()) - 1;
            for (id, chain) in c.nerve.chains.iter().enumerate() {
                if chain.last() == Some(&full) {
                    out.push(IndGenerator { a, b, simplex: c.nerve.set.cell_ref(id as u32) });
                }
            }
        }
    }
    out
}

/// `Δ_N(S)` inside `Δ_N^n` for a subcomplex `S` of `Δ^n`.
#[derive(Clone, Debug)]
pub struct DeltaNSub {
    pub category: SimplicialCategory,
    /// The vertices of `S`, as objects of `Δ_N^n`.
    pub objects: Vec<usize>,
    /// Per pair of ambient objects `a * (n + 1) + b`, a mask over the cells
    /// of the ambient `Hom(a, b)`.
    pub masks: Vec<Vec<bool>>,
    pub inclusion: SimplicialFunctor,
    homs: Vec<Subcomplex>,
}

impl DeltaNSub {
    /// The simplex of `Δ_N(S)` corresponding to `r` in the ambient
    /// `Hom(a, b)`, if `r` lies in the image.
    pub fn translate(&self, a: usize, b: usize, r: &SimplexRef) -> Option<SimplexRef> {
        let i = self.objects.iter().position(|&x| x == a)?;
        let j = self.objects.iter().position(|&x| x == b)?;
        self.homs[i * self.objects.len() + j].translate(r)
    }
}

/// Whether a strict chain of `Hom(a, b)` lies in `Δ_N(S)`: it splits at its
/// constantly-0 coordinates into indecomposable pieces, and each piece over
/// `(x, y)` needs `{x, y}` plus its coordinates not constantly 1 to span a
/// simplex of `S`.
fn in_image(s: &PosetNerve, a: usize, b: usize, chain: &[usize]) -> bool {
    let bit = |m: usize, x: usize| m >> (x - a - 1) & 1 == 1;
    let (bottom, top) = (chain[0], chain[chain.len() - 1]);
    let mut cuts = vec![a];
    cuts.extend((a + 1..b).filter(|&x| !bit(top, x)));
    cuts.push(b);
    cuts.windows(2).all(|w| {
        let (x, y) = (w[0], w[1]);
        let mut verts = vec![x];
        verts.extend((x + 1..y).filter(|&z| !bit(bottom, z)));
        verts.push(y);
        s.index.contains_key(&verts)
    })
}

/// Computes `Δ_N(S) ⊆ Δ_N^n` for `S` given as a family of chains of `[n]`.
pub fn delta_n_of_subcomplex(d: &DeltaN, s: &PosetNerve) -> Result<DeltaNSub> {
    if s.poset.len() != d.n + 1 || (0..=d.n).any(|x| (0..=d.n).any(|y| s.poset.leq(x, y) != (x <= y))) {
        return Err(Error::NotSubcomplex(format!("expected a subcomplex of Δ^{}", d.n)));
    }
    let objs = d.n + 1;
    let objects: Vec<usize> = (0..objs).filter(|&x| s.index.contains_key(&vec![x])).collect();
    let mut masks = Vec::with_capacity(objs * objs);
    for a in 0..objs {
        for b in 0..objs {
            masks.push(match d.cube(a, b) {
                Some(c) if objects.contains(&a) && objects.contains(&b) => {
                    c.nerve.chains.iter().map(|ch| a == b || in_image(s, a, b, ch)).collect()
                }
                Some(c) => vec![false; c.nerve.chains.len()],
                None => Vec::new(),
            });
        }
    }
    let k = objects.len();
    let mut subs = Vec::with_capacity(k * k);
    for &a in &objects {
        for &b in &objects {
            subs.push(d.category.hom(a, b).restrict(&masks[a * objs + b])?);
        }
    }
    let homs = (0..k).map(|i| (0..k).map(|j| subs[i * k + j].set.clone()).collect()).collect();
    let category = SimplicialCategory::from_rule(
        objects.iter().map(|x| x.to_string()).collect(),
        homs,
        vec![0; k],
        |i, j, l, g, f| {
            let (a, b, c) = (objects[i], objects[j], objects[l]);
            let (fi, gi) = (subs[i * k + j].inclusion.apply(d.category.hom(a, b), f), subs[j * k + l].inclusion.apply(d.category.hom(b, c), g));
            let h = d.category.compose(a, b, c, &gi, &fi)?;
            subs[i * k + l].translate(&h)
        },
    )
    .map_err(|e| Error::NotSubcomplex(e.to_string()))?;
    if category.is_partial() {
        return Err(Error::NotSubcomplex("Δ_N(S) is not closed under composition".into()));
    }
    let inclusion = SimplicialFunctor {
        object_map: objects.clone(),
        hom_maps: subs.iter().map(|s| s.inclusion.clone()).collect(),
    };
    Ok(DeltaNSub { category, objects, masks, inclusion, homs: subs })
}

/// Structural type of `Δ_N(Λ^n_i)(a, b)` inside the cube `I^{(a,b)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HornImageKind {
    Full,
    Boundary,
    /// The cube boundary with the face `{f_x = eps}` erased.
    CubicHorn { x: usize, eps: bool },
    Other,
}

#[derive(Clone, Debug)]
pub struct HornImage {
    pub n: usize,
    pub i: usize,
    pub a: usize,
    pub b: usize,
    pub coords: Vec<usize>,
    pub kind: HornImageKind,
    /// The strict chains (vertex masks) of the image.
    pub cells: Vec<Vec<usize>>,
}

impl HornImage {
    /// Number of codimension-one faces of the cube contained in the image.
    pub fn face_count(&self) -> usize {
        let d = self.coords.len();
        let full = (1usize << d) - 1;
        (0..d)
            .flat_map(|t| [(t, false), (t, true)])
            .filter(|&(t, eps)| {
                let v = if eps { full } else { full & !(1 << t) };
                let w = if eps { 1 << t } else { 0 };
                self.cells.iter().any(|c| c.len() == d && c[0] == w && c[c.len() - 1] == v)
            })
            .count()
    }
}

/// `Δ_N(Λ^n_i)(a, b)` with its classification.
pub fn horn_image(n: usize, i: usize, a: usize, b: usize) -> Result<HornImage> {
    if a > b || b > n {
        return Err(Error::OutOfRange(format!("need 0 ≤ a ≤ b ≤ n, got ({a},{b}) in [{n}]")));
    }
    let cap = n.saturating_sub(1).max(1);
    let d = delta_n(n, cap);
    let h = crate::sset::horn(n, i, n)?;
    let c = d.cube(a, b).expect("a ≤ b");
    let cells: Vec<Vec<usize>> = c
        .nerve
        .chains
        .iter()
        .filter(|ch| if a == b { h.index.contains_key(&vec![a]) } else { in_image(&h, a, b, ch) })
        .cloned()
        .collect();
    let same = |p: &PosetNerve| p.chains.len() == cells.len() && cells.iter().all(|ch| p.index.contains_key(ch));
    // the boundary of a point is empty
    let boundary = if c.dim() == 0 { cells.is_empty() } else { same(&cube_boundary(c)) };
    let kind = if cells.len() == c.nerve.chains.len() {
        HornImageKind::Full
    } else if boundary {
        HornImageKind::Boundary
    } else {
        c.coords
            .iter()
            .flat_map(|&x| [(x, false), (x, true)])
            .find(|&(x, eps)| same(&cube_horn(c, x, eps).expect("x is a coordinate")))
            .map_or(HornImageKind::Other, |(x, eps)| HornImageKind::CubicHorn { x, eps })
    };
    Ok(HornImage { n, i, a, b, coords: c.coords.clone(), kind, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{horn, standard_simplex};

    #[test]
    fn small_cases() {
        let d1 = delta_n(1, 2);
        assert_eq!(d1.category.hom(0, 1).nd_counts(), vec![1]);
        let d2 = delta_n(2, 2);
        let comp = d2.category.compose(0, 1, 2, &d2.phi(1, 2), &d2.phi(0, 1)).unwrap();
        assert_eq!(comp, d2.vertex(0, 2, &[1]));
        assert_ne!(comp, d2.phi(0, 2));
        let d3 = delta_n(3, 2);
        assert_eq!(d3.category.hom(0, 3).nd_counts(), vec![4, 5, 2]);
        d3.category.check_axioms().unwrap();
    }

    #[test]
    fn actions_on_phi() {
        let (d1, d2, d0) = (delta_n(1, 2), delta_n(2, 2), delta_n(0, 2));
        let f = cosimplicial_action(&d1, &d2, &[0, 2]).unwrap();
        assert_eq!(f.apply(&d1.category, &d2.category, 0, 1, &d1.phi(0, 1)), d2.phi(0, 2));
        let s = cosimplicial_action(&d1, &d0, &[0, 0]).unwrap();
        assert_eq!(s.apply(&d1.category, &d0.category, 0, 1, &d1.phi(0, 1)), d0.category.identity_ref(0, 0));
        let id = cosimplicial_action(&d2, &d2, &[0, 1, 2]).unwrap();
        assert_eq!(id, SimplicialFunctor::identity(&d2.category));
        f.validate(&d1.category, &d2.category).unwrap();
    }

    #[test]
    fn ind_counts() {
        // strict chains of subsets of a d-set ending at the full set
        fn ending_at_top(d: usize) -> usize {
            fn from(s: usize, full: usize) -> usize {
                if s == full {
                    return 1;
                }
                (s + 1..=full).filter(|&t| t & s == s).map(|t| from(t, full)).sum()
            }
            let full = (1 << d) - 1;
            (0..=full).map(|s| from(s, full)).sum()
        }
        for n in 1..=4 {
            let want: usize = (0..n).flat_map(|a| (a + 1..=n).map(move |b| ending_at_top(b - a - 1))).sum();
            assert_eq!(ind_generators(&delta_n(n, 3)).len(), want);
        }
        let counts: Vec<usize> = (1..=3).map(|n| ind_generators(&delta_n(n, 3)).len()).collect();
        assert_eq!(counts, vec![1, 4, 13]);
    }

    #[test]
    fn subcomplex_images() {
        let d3 = delta_n(3, 2);
        let full = delta_n_of_subcomplex(&d3, &standard_simplex(3, 3).unwrap()).unwrap();
        assert!(full.masks.iter().all(|m| m.iter().all(|&x| x)));
        let l = delta_n_of_subcomplex(&d3, &horn(3, 1, 3).unwrap()).unwrap();
        let inner = horn_image(3, 1, 0, 3).unwrap();
        assert_eq!(inner.kind, HornImageKind::CubicHorn { x: 1, eps: true });
        assert_eq!(l.masks[3].iter().filter(|&&x| x).count(), inner.cells.len());
        assert_eq!(inner.face_count(), 3);
    }

    #[test]
    fn horn_image_examples() {
        let h = horn_image(2, 1, 0, 2).unwrap();
        assert_eq!(h.kind, HornImageKind::CubicHorn { x: 1, eps: true });
        assert_eq!(h.cells, vec![vec![0]]);
        assert_eq!(horn_image(3, 0, 1, 3).unwrap().kind, HornImageKind::Boundary);
        assert_eq!(horn_image(3, 0, 0, 3).unwrap().kind, HornImageKind::CubicHorn { x: 1, eps: false });
        assert_eq!(horn_image(3, 2, 0, 2).unwrap().kind, HornImageKind::Full);
        // the boundary of the point I^(1,2) is empty
        assert_eq!(horn_image(2, 0, 1, 2).unwrap().kind, HornImageKind::Boundary);
        assert_eq!(horn_image(2, 2, 0, 1).unwrap().kind, HornImageKind::Boundary);
    }
}
