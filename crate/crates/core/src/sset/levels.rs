//! Simplicial sets presented by explicit levels and face/degeneracy tables.

use super::{mono, SimplexRef, SimplicialSet};
use crate::error::{Error, Result};

/// A simplicial set with the normal form of every listed element.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub set: SimplicialSet,
    /// `normal[k][x]` is the normal form of element `x` of level `k`.
    pub normal: Vec<Vec<SimplexRef>>,
    /// Element of its own level for each nondegenerate cell.
    pub cell_element: Vec<usize>,
}

/// Builds a simplicial set from level sizes `counts[0..=cap]`, faces
/// `face(k, x, i)` into level `k - 1` and degeneracies `degen(k, x, j)` into
/// level `k + 1`. Elements that are `s_j d_j` of themselves are degenerate.
pub fn from_levels(
    counts: &[usize],
    face: impl Fn(usize, usize, usize) -> usize,
    degen: impl Fn(usize, usize, usize) -> usize,
) -> Result<LevelSet> {
    if counts.is_empty() {
        return Err(Error::Invalid("at least one level is required".into()));
    }
    let cap = counts.len() - 1;
    let mut b = SimplicialSet::builder(cap);
    let mut normal: Vec<Vec<SimplexRef>> = Vec::with_capacity(cap + 1);
    let mut cell_element = Vec::new();
    for k in 0..=cap {
        let mut level = Vec::with_capacity(counts[k]);
        for x in 0..counts[k] {
            let mut found = None;
            for j in 0..k {
                let y = face(k, x, j);
                if degen(k - 1, y, j) == x {
                    let sigma = mono::codegeneracy(k - 1, j);
                    let ny: &SimplexRef = &normal[k - 1][y];
                    found = Some(SimplexRef {
                        nd: ny.nd,
                        surj: sigma.iter().map(|&t| ny.surj[t]).collect(),
                    });
                    break;
                }
            }
            let r = match found {
                Some(r) => r,
                None => {
                    let faces = if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k).map(|i| normal[k - 1][face(k, x, i)].clone()).collect()
                    };
                    let id = b.add_cell(faces)?;
                    cell_element.push(x);
                    SimplexRef::cell(id, k)
                }
            };
            level.push(r);
        }
        normal.push(level);
    }
    Ok(LevelSet { set: b.finish(), normal, cell_element })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::poset::standard_simplex;

    #[test]
    fn rebuilds_a_simplex() {
        let d2 = standard_simplex(2, 3).unwrap();
        let x = &d2.set;
        let counts: Vec<usize> = (0..=3).map(|k| x.count(k)).collect();
        let ls = from_levels(
            &counts,
            |k, s, i| x.level(k).faces[s][i] as usize,
            |k, s, j| x.index_of(&x.degeneracy(j, x.simplex_at(k, s as u32))) as usize,
        )
        .unwrap();
        assert_eq!(ls.set, d2.set);
    }
}
