//! Brute-force horn filling for simplicial sets and maps.

use std::ops::ControlFlow;

use super::maps::{find_extension, for_each_map};
use super::poset::{horn, standard_simplex, PosetNerve};
use super::{SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HornSelection {
    All,
    /// Only `0 < i < n`.
    InnerOnly,
    Single(usize, usize),
}

impl HornSelection {
    fn horns(self, up_to: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in 1..=up_to {
            for i in 0..=n {
                let take = match self {
                    HornSelection::All => true,
                    HornSelection::InnerOnly => 0 < i && i < n,
                    HornSelection::Single(a, b) => (a, b) == (n, i),
                };
                if take {
                    out.push((n, i));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct KanOptions {
    pub selection: HornSelection,
    /// Collect every failing horn instead of stopping at the first.
    pub exhaustive: bool,
}

impl Default for KanOptions {
    fn default() -> Self {
        KanOptions { selection: HornSelection::All, exhaustive: false }
    }
}

/// A horn without filler. `faces[j]` is the image of `d_j` for `j != i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornWitness {
    pub n: usize,
    pub i: usize,
    pub faces: Vec<(usize, SimplexRef)>,
    /// The simplex of the base, for fibration checks.
    pub base: Option<SimplexRef>,
}

#[derive(Clone, Debug)]
pub struct KanReport {
    pub up_to: usize,
    pub passed: bool,
    pub horns_checked: usize,
    pub failures: Vec<HornWitness>,
}

impl KanReport {
    pub fn first_failure(&self) -> Option<&HornWitness> {
        self.failures.first()
    }
}

struct HornShape {
    n: usize,
    i: usize,
    horn: PosetNerve,
    full: PosetNerve,
    /// Horn cell id of each full-simplex cell, if it lies in the horn.
    horn_id: Vec<Option<u32>>,
}

impl HornShape {
    fn new(n: usize, i: usize) -> Result<Self> {
        let horn = horn(n, i, n)?;
        let full = standard_simplex(n, n)?;
        let horn_id = full.chains.iter().map(|c| horn.index.get(c).copied()).collect();
        Ok(HornShape { n, i, horn, full, horn_id })
    }

    fn partial(&self, h: &[SimplexRef]) -> Vec<Option<SimplexRef>> {
        self.horn_id.iter().map(|id| id.map(|c| h[c as usize].clone())).collect()
    }

    fn witness(&self, h: &[SimplexRef], base: Option<SimplexRef>) -> HornWitness {
        let faces = (0..=self.n)
            .filter(|&j| j != self.i)
            .map(|j| {
                let chain: Vec<usize> = (0..=self.n).filter(|&t| t != j).collect();
                (j, h[self.horn.index[&chain] as usize].clone())
            })
            .collect();
        HornWitness { n: self.n, i: self.i, faces, base }
    }

    fn top(&self) -> u32 {
        (self.full.chains.len() - 1) as u32
    }
}

fn check_window(cap: usize, up_to: usize) -> Result<()> {
    if up_to > cap {
        return Err(Error::CapTooSmall { needed: up_to, cap });
    }
    Ok(())
}

pub fn is_kan(x: &SimplicialSet, up_to: usize) -> Result<KanReport> {
    check_kan(x, up_to, &KanOptions::default())
}

/// Checks every selected horn `Λ^n_i -> X` with `n <= up_to` for a filler.
pub fn check_kan(x: &SimplicialSet, up_to: usize, opts: &KanOptions) -> Result<KanReport> {
    check_window(x.cap(), up_to)?;
    let mut report = KanReport { up_to, passed: true, horns_checked: 0, failures: Vec::new() };
    for (n, i) in opts.selection.horns(up_to) {
        let shape = HornShape::new(n, i)?;
        let mut err = None;
        let none = vec![None; shape.horn.set.num_cells()];
        for_each_map(&shape.horn.set, x, &none, |h| {
            report.horns_checked += 1;
            match find_extension(&shape.full.set, x, &shape.partial(h)) {
                Ok(Some(_)) => ControlFlow::Continue(()),
                Ok(None) => {
                    report.passed = false;
                    report.failures.push(shape.witness(h, None));
                    if opts.exhaustive {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(())
                    }
                }
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        if !report.passed && !opts.exhaustive {
            break;
        }
    }
    Ok(report)
}

pub fn is_kan_fibration(
    p: &SimplicialMap,
    e: &SimplicialSet,
    b: &SimplicialSet,
    up_to: usize,
) -> Result<KanReport> {
    check_kan_fibration(p, e, b, up_to, &KanOptions::default())
}

/// Checks every commuting square from a selected horn inclusion against `p`
/// for a lift.
pub fn check_kan_fibration(
    p: &SimplicialMap,
    e: &SimplicialSet,
    b: &SimplicialSet,
    up_to: usize,
    opts: &KanOptions,
) -> Result<KanReport> {
    check_window(e.cap().min(b.cap()), up_to)?;
    p.validate(e, b)?;
    let mut report = KanReport { up_to, passed: true, horns_checked: 0, failures: Vec::new() };
    for (n, i) in opts.selection.horns(up_to) {
        let shape = HornShape::new(n, i)?;
        let none = vec![None; shape.horn.set.num_cells()];
        let mut err = None;
        for_each_map(&shape.horn.set, e, &none, |h| {
            // the base simplices completing p∘h
            let ph: Vec<SimplexRef> = h.iter().map(|r| p.apply(b, r)).collect();
            let bases = match find_all_extensions(&shape, b, &shape.partial(&ph)) {
                Ok(v) => v,
                Err(x) => {
                    err = Some(x);
                    return ControlFlow::Break(());
                }
            };
            for base in bases {
                report.horns_checked += 1;
                let top = shape.top();
                let mut lifted = false;
                let res = for_each_map(&shape.full.set, e, &shape.partial(h), |ext| {
                    if p.apply(b, &ext[top as usize]) == base {
                        lifted = true;
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if let Err(x) = res {
                    err = Some(x);
                    return ControlFlow::Break(());
                }
                if !lifted {
                    report.passed = false;
                    report.failures.push(shape.witness(h, Some(base)));
                    if !opts.exhaustive {
                        return ControlFlow::Break(());
                    }
                }
            }
            ControlFlow::Continue(())
        })?;
        if let Some(x) = err {
            return Err(x);
        }
        if !report.passed && !opts.exhaustive {
            break;
        }
    }
    Ok(report)
}

/// Top simplices of all extensions of a partial map on `Δ^n`.
fn find_all_extensions(
    shape: &HornShape,
    x: &SimplicialSet,
    partial: &[Option<SimplexRef>],
) -> Result<Vec<SimplexRef>> {
    let top = shape.top() as usize;
    let mut out = Vec::new();
    for_each_map(&shape.full.set, x, partial, |ext| {
        out.push(ext[top].clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::poset::standard_simplex;

    #[test]
    fn simplex_is_not_kan() {
        let d2 = standard_simplex(2, 2).unwrap();
        let r = is_kan(&d2.set, 2).unwrap();
        assert!(!r.passed);
        let w = r.first_failure().unwrap();
        assert_eq!((w.n, w.i), (2, 0));
        // inner horns of a nerve always fill
        let opts = KanOptions { selection: HornSelection::InnerOnly, exhaustive: false };
        assert!(check_kan(&d2.set, 2, &opts).unwrap().passed);
    }

    #[test]
    fn window_is_checked() {
        let d1 = standard_simplex(1, 1).unwrap();
        assert!(matches!(is_kan(&d1.set, 2), Err(Error::CapTooSmall { .. })));
    }

    #[test]
    fn identity_of_point_is_fibration() {
        let pt = standard_simplex(0, 3).unwrap();
        let id = SimplicialMap::identity(&pt.set);
        assert!(is_kan_fibration(&id, &pt.set, &pt.set, 3).unwrap().passed);
    }

    #[test]
    fn projection_to_point_matches_kan() {
        let d1 = standard_simplex(1, 2).unwrap();
        let pt = standard_simplex(0, 2).unwrap();
        let p = SimplicialMap::constant(&d1.set, 0);
        let a = is_kan(&d1.set, 2).unwrap();
        let b = is_kan_fibration(&p, &d1.set, &pt.set, 2).unwrap();
        assert_eq!(a.passed, b.passed);
        assert_eq!(a.first_failure().map(|w| (w.n, w.i)), b.first_failure().map(|w| (w.n, w.i)));
    }
}
