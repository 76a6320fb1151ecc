//! One-object free simplicial monoids on smash powers of the circle, used
//! as sphere and disc models. Words are truncated at a fixed length.

use crate::error::{Error, Result};
use crate::scat::free::{free_scat, FreeScat, Generator, SimplicialGraph};
use crate::sset::{boundary_subcomplex, quotient_collapse, smash, standard_simplex, SimplicialSet};

/// A free simplicial monoid on a pointed simplicial set.
#[derive(Clone, Debug)]
pub struct MonoidModel {
    /// The pointed generating set.
    pub generators: SimplicialSet,
    pub basepoint: u32,
    pub free: FreeScat,
}

impl MonoidModel {
    fn new(generators: SimplicialSet, basepoint: u32, name: &str, cap: usize, max_len: usize) -> Result<Self> {
        let graph = SimplicialGraph::new(vec!["*".into()], vec![Generator::pointed(0, generators.clone(), basepoint, name)])?;
        let free = free_scat(&graph, cap, Some(max_len))?;
        Ok(MonoidModel { generators, basepoint, free })
    }
}

/// `S^1 = Δ^1/∂Δ^1`, pointed at its only vertex.
pub fn circle(cap: usize) -> Result<SimplicialSet> {
    let d1 = standard_simplex(1, cap)?;
    let b = boundary_subcomplex(1, cap)?;
    Ok(quotient_collapse(&d1.set, &b.mask_in(&d1))?.set)
}

/// Smashes `start` (pointed at `bp`) with `count` circles; the result is
/// pointed at vertex 0.
fn smash_circles(start: SimplicialSet, bp: u32, count: usize, cap: usize) -> Result<(SimplicialSet, u32)> {
    let s1 = circle(cap)?;
    let (mut acc, mut acc_bp) = (start, bp);
    for _ in 0..count {
        acc = smash(&acc, acc_bp, &s1, 0, cap)?.set;
        acc_bp = 0;
    }
    Ok((acc, acc_bp))
}

/// The free monoid on `S^1 ∧ ⋯ ∧ S^1` (`n - 1` factors); for `n = 1` the
/// generating set is `S^0`.
pub fn sphere_model(n: usize, cap: usize, max_len: usize) -> Result<MonoidModel> {
    if n == 0 {
        return Err(Error::OutOfRange("sphere models start at n = 1".into()));
    }
    let s0 = boundary_subcomplex(1, cap)?.set;
    let (set, bp) = if n == 1 { (s0, 0) } else { smash_circles(circle(cap)?, 0, n - 2, cap)? };
    MonoidModel::new(set, bp, "s", cap, max_len)
}

/// The free monoid on `I ∧ S^1 ∧ ⋯ ∧ S^1` (`m - 2` circle factors), with
/// `I` pointed at the vertex 1.
pub fn disc_model(m: usize, cap: usize, max_len: usize) -> Result<MonoidModel> {
    if m < 2 {
        return Err(Error::OutOfRange("disc models start at m = 2".into()));
    }
    let i = standard_simplex(1, cap)?;
    let one = i.simplex_of_chain(&[1]).expect("vertex 1 of Δ^1").nd;
    let (set, bp) = smash_circles(i.set, one, m - 2, cap)?;
    MonoidModel::new(set, bp, "e", cap, max_len)
}
