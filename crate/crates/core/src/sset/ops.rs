//! Quotients, products and smash products.

use std::collections::HashMap;

use super::{SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// `X/A` with its projection. The basepoint is vertex 0.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub set: SimplicialSet,
    pub projection: SimplicialMap,
}

/// Collapses the face-closed, nonempty family of cells `a` to a point.
pub fn quotient_collapse(x: &SimplicialSet, a: &[bool]) -> Result<Quotient> {
    if a.len() != x.num_cells() {
        return Err(Error::Invalid(format!(
            "subcomplex mask has {} entries for {} cells",
            a.len(),
            x.num_cells()
        )));
    }
    if !a.iter().any(|&k| k) {
        return Err(Error::EmptySubcomplex);
    }
    x.restrict(a)?;
    let mut new_id = vec![0u32; x.num_cells()];
    let mut b = SimplicialSet::builder(x.cap());
    b.add_vertex();
    for c in 0..x.num_cells() as u32 {
        if a[c as usize] {
            continue;
        }
        let faces = x
            .cell_faces(c)
            .iter()
            .map(|f| {
                if a[f.nd as usize] {
                    SimplexRef { nd: 0, surj: vec![0; f.surj.len()] }
                } else {
                    SimplexRef { nd: new_id[f.nd as usize], surj: f.surj.clone() }
                }
            })
            .collect();
        new_id[c as usize] = b.add_cell(faces)?;
    }
    let set = b.finish();
    let projection = SimplicialMap {
        assignment: (0..x.num_cells() as u32)
            .map(|c| {
                let m = x.dim_of(c);
                if a[c as usize] {
                    SimplexRef { nd: 0, surj: vec![0; m + 1] }
                } else {
                    SimplexRef::cell(new_id[c as usize], m)
                }
            })
            .collect(),
    };
    Ok(Quotient { set, projection })
}

/// `X × Y` with its nondegenerate pairs.
#[derive(Clone, Debug)]
pub struct ProductSet {
    pub set: SimplicialSet,
    /// The pair of simplices underlying each nondegenerate cell.
    pub pairs: Vec<(SimplexRef, SimplexRef)>,
    index: HashMap<(SimplexRef, SimplexRef), u32>,
}

fn repeats(s: &[u8]) -> impl Iterator<Item = usize> + '_ {
    s.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(p, _)| p)
}

/// Splits a pair of `k`-simplices into the common degeneracy and the
/// nondegenerate pair: returns `(σ, x', y')` with `x = σ^* x'`, `y = σ^* y'`.
fn split_pair(
    x: &SimplicialSet,
    y: &SimplicialSet,
    rx: &SimplexRef,
    ry: &SimplexRef,
) -> (Vec<u8>, SimplexRef, SimplexRef) {
    let ry_rep: Vec<usize> = repeats(&ry.surj).collect();
    let common: Vec<usize> = repeats(&rx.surj).filter(|p| ry_rep.contains(p)).collect();
    let k = rx.dim();
    let mut sigma = vec![0u8; k + 1];
    for p in 0..k {
        sigma[p + 1] = sigma[p] + u8::from(!common.contains(&p));
    }
    // a section of σ: the first position of each fibre
    let top = sigma[k] as usize;
    let section: Vec<usize> = (0..=top)
        .map(|v| sigma.iter().position(|&s| s as usize == v).expect("σ is surjective"))
        .collect();
    (sigma, x.apply(&section, rx), y.apply(&section, ry))
}

impl ProductSet {
    /// The normal form of the pair `(rx, ry)` of equal dimension.
    pub fn pair(&self, x: &SimplicialSet, y: &SimplicialSet, rx: &SimplexRef, ry: &SimplexRef) -> SimplexRef {
        let (sigma, nx, ny) = split_pair(x, y, rx, ry);
        SimplexRef { nd: self.index[&(nx, ny)], surj: sigma }
    }

    /// The two components of a simplex of the product.
    pub fn components(&self, x: &SimplicialSet, y: &SimplicialSet, r: &SimplexRef) -> (SimplexRef, SimplexRef) {
        let (px, py) = &self.pairs[r.nd as usize];
        let theta: Vec<usize> = r.surj.iter().map(|&v| v as usize).collect();
        (x.apply(&theta, px), y.apply(&theta, py))
    }

    pub fn projections(&self) -> (SimplicialMap, SimplicialMap) {
        (
            SimplicialMap { assignment: self.pairs.iter().map(|p| p.0.clone()).collect() },
            SimplicialMap { assignment: self.pairs.iter().map(|p| p.1.clone()).collect() },
        )
    }
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet, cap: usize) -> Result<ProductSet> {
    let needed = cap;
    if x.cap() < needed || y.cap() < needed {
        return Err(Error::CapTooSmall { needed, cap: x.cap().min(y.cap()) });
    }
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    let mut b = SimplicialSet::builder(cap);
    for k in 0..=cap {
        for rx in x.simplices(k) {
            let rx_rep: Vec<usize> = repeats(&rx.surj).collect();
            for ry in y.simplices(k) {
                if repeats(&ry.surj).any(|p| rx_rep.contains(&p)) {
                    continue;
                }
                let faces = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k)
                        .map(|i| {
                            let (fx, fy) = (x.face(i, rx), y.face(i, ry));
                            let (sigma, nx, ny) = split_pair(x, y, &fx, &fy);
                            SimplexRef { nd: index[&(nx, ny)], surj: sigma }
                        })
                        .collect()
                };
                let id = b.add_cell(faces)?;
                index.insert((rx.clone(), ry.clone()), id);
                pairs.push((rx.clone(), ry.clone()));
            }
        }
    }
    Ok(ProductSet { set: b.finish(), pairs, index })
}

/// `X ∧ Y = X × Y / (X ∨ Y)` for basepoint vertices `x0`, `y0`.
pub fn smash(x: &SimplicialSet, x0: u32, y: &SimplicialSet, y0: u32, cap: usize) -> Result<Quotient> {
    if x.dim_of(x0) != 0 || y.dim_of(y0) != 0 {
        return Err(Error::Invalid("smash basepoints must be vertices".into()));
    }
    let p = product(x, y, cap)?;
    let wedge: Vec<bool> = p.pairs.iter().map(|(a, b)| a.nd == x0 || b.nd == y0).collect();
    quotient_collapse(&p.set, &wedge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::poset::{boundary_subcomplex, nerve_of_poset, standard_simplex, Poset};

    fn circle(cap: usize) -> SimplicialSet {
        let d1 = standard_simplex(1, cap).unwrap();
        let b = boundary_subcomplex(1, cap).unwrap();
        quotient_collapse(&d1.set, &b.mask_in(&d1)).unwrap().set
    }

    #[test]
    fn quotients() {
        assert_eq!(circle(3).nd_counts(), vec![1, 1]);
        let d2 = standard_simplex(2, 3).unwrap();
        let b2 = boundary_subcomplex(2, 3).unwrap();
        let s2 = quotient_collapse(&d2.set, &b2.mask_in(&d2)).unwrap();
        assert_eq!(s2.set.nd_counts(), vec![1, 0, 1]);
        s2.projection.validate(&d2.set, &s2.set).unwrap();
        let all = vec![true; d2.set.num_cells()];
        assert_eq!(quotient_collapse(&d2.set, &all).unwrap().set.nd_counts(), vec![1]);
        let none = vec![false; d2.set.num_cells()];
        assert!(matches!(quotient_collapse(&d2.set, &none), Err(Error::EmptySubcomplex)));
    }

    #[test]
    fn products() {
        let i = standard_simplex(1, 3).unwrap();
        let sq = product(&i.set, &i.set, 3).unwrap();
        assert_eq!(sq.set.nd_counts(), vec![4, 5, 2]);
        let poset_sq = nerve_of_poset(Poset::boolean(2), 3);
        assert_eq!(sq.set.count(3), poset_sq.set.count(3));
        let pt = standard_simplex(0, 3).unwrap();
        let s1 = circle(3);
        assert_eq!(product(&pt.set, &s1, 3).unwrap().set, s1);
        assert_eq!(product(&s1, &pt.set, 3).unwrap().set.nd_counts(), vec![1, 1]);
        let (p1, p2) = sq.projections();
        p1.validate(&sq.set, &i.set).unwrap();
        p2.validate(&sq.set, &i.set).unwrap();
    }

    #[test]
    fn smash_of_circles() {
        let s1 = circle(3);
        let t = smash(&s1, 0, &s1, 0, 3).unwrap();
        // S^1 × S^1 has (1,3,2); the wedge has (1,2)
        assert_eq!(t.set.nd_counts(), vec![1, 1, 2]);
    }
}
