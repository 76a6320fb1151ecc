//! The adjunction `Δ_N ⊣ 𝔑` on subcomplexes of standard simplices, and
//! horn filling in `𝔑(C)` through it.

use std::collections::HashSet;

use super::Nerve;
use crate::error::{Error, Result};
use crate::models::{cosimplicial_action, delta_n, delta_n_of_subcomplex, DeltaN, DeltaNSub};
use crate::scat::{enumerate_functors, extend_functors, SimplicialCategory, SimplicialFunctor};
use crate::sset::{enumerate_maps, horn, PosetNerve, SimplexRef, SimplicialMap};

/// `S` rebuilt over `[n]` with the nerve's cap, so cell ids follow chains.
fn at_cap(s: &PosetNerve, cap: usize) -> Result<PosetNerve> {
    PosetNerve::new(s.poset.clone(), cap).restrict(|c| s.index.contains_key(c))
}

/// The map `S → 𝔑(C)` adjoint to `g : Δ_N(S) → C`: a simplex `σ` of `S`
/// goes to `g` restricted along `Δ_N^m → Δ_N(S)`.
pub fn transport(
    s: &PosetNerve,
    d: &DeltaN,
    sub: &DeltaNSub,
    g: &SimplicialFunctor,
    c: &SimplicialCategory,
    nerve: &Nerve,
) -> Result<SimplicialMap> {
    let cap = d.category.cap();
    let models: Vec<DeltaN> = (0..=nerve.up_to).map(|m| delta_n(m, cap)).collect();
    let pos = |x: usize| sub.objects.iter().position(|&y| y == x).expect("vertex of S");
    let mut assignment = Vec::with_capacity(s.chains.len());
    for chain in &s.chains {
        let m = chain.len() - 1;
        let dm = models.get(m).ok_or(Error::CapTooSmall { needed: m, cap: nerve.up_to })?;
        let face = cosimplicial_action(dm, d, chain)?;
        let objs = m + 1;
        let mut hom_maps = Vec::with_capacity(objs * objs);
        for a in 0..objs {
            for b in 0..objs {
                let hom = dm.category.hom(a, b);
                let mut images = Vec::with_capacity(hom.num_cells());
                for cell in 0..hom.num_cells() as u32 {
                    let r = face.apply(&dm.category, &d.category, a, b, &hom.cell_ref(cell));
                    let local = sub.translate(chain[a], chain[b], &r).ok_or_else(|| {
                        Error::NotSubcomplex(format!("a face of {chain:?} leaves Δ_N(S)"))
                    })?;
                    images.push(g.apply(&sub.category, c, pos(chain[a]), pos(chain[b]), &local));
                }
                hom_maps.push(SimplicialMap { assignment: images });
            }
        }
        let object_map = chain.iter().map(|&x| g.object_map[pos(x)]).collect();
        let f = SimplicialFunctor { object_map, hom_maps };
        let r = nerve.simplex_of(m, &f).ok_or_else(|| Error::NotAMap(format!("no simplex of 𝔑(C) for {chain:?}")))?;
        assignment.push(r.clone());
    }
    let map = SimplicialMap { assignment };
    map.validate(&s.set, nerve.set())?;
    Ok(map)
}

#[derive(Clone, Debug)]
pub struct AdjunctionReport {
    /// `|Hom_sSet(S, 𝔑C)|`
    pub maps: usize,
    /// `|Hom_sCat(Δ_N(S), C)|`
    pub functors: usize,
    /// Transport is injective and hits every map.
    pub bijective: bool,
    /// Transport commutes with restriction to each maximal face of `S`.
    pub natural: bool,
}

/// Verifies `Hom(S, 𝔑C) ≅ Hom(Δ_N(S), C)` by enumerating both sides.
pub fn adjunction_check(s: &PosetNerve, c: &SimplicialCategory, nerve: &Nerve) -> Result<AdjunctionReport> {
    if nerve.flavor != super::Flavor::Hc {
        return Err(Error::Invalid("the adjunction is with the homotopy coherent nerve".into()));
    }
    let n = s.poset.len() - 1;
    let s = at_cap(s, nerve.up_to)?;
    let d = delta_n(n, c.cap());
    let sub = delta_n_of_subcomplex(&d, &s)?;
    let functors = enumerate_functors(&sub.category, c)?;
    let maps = enumerate_maps(&s.set, nerve.set())?;
    let transported: Vec<SimplicialMap> =
        functors.iter().map(|g| transport(&s, &d, &sub, g, c, nerve)).collect::<Result<_>>()?;
    let distinct: HashSet<&SimplicialMap> = transported.iter().collect();
    let all: HashSet<&SimplicialMap> = maps.iter().collect();
    let bijective = distinct.len() == transported.len() && distinct == all;

    let top: Vec<&Vec<usize>> = s
        .chains
        .iter()
        .filter(|c| !s.chains.iter().any(|o| o.len() > c.len() && c.iter().all(|x| o.contains(x))))
        .collect();
    let mut natural = true;
    for sigma in top {
        let face = s.restrict(|ch| ch.iter().all(|x| sigma.contains(x)))?;
        let fsub = delta_n_of_subcomplex(&d, &face)?;
        for (g, t) in functors.iter().zip(&transported) {
            let g_face = restrict_functor(&fsub, &sub, g, c);
            let direct = transport(&face, &d, &fsub, &g_face, c, nerve)?;
            let restricted: Vec<SimplexRef> = face
                .chains
                .iter()
                .map(|ch| t.assignment[s.simplex_of_chain(ch).expect("face chain").nd as usize].clone())
                .collect();
            natural &= direct.assignment == restricted;
        }
    }
    Ok(AdjunctionReport { maps: maps.len(), functors: functors.len(), bijective, natural })
}

/// `g : Δ_N(S) → C` restricted to `Δ_N(S') ⊆ Δ_N(S)`.
fn restrict_functor(small: &DeltaNSub, big: &DeltaNSub, g: &SimplicialFunctor, c: &SimplicialCategory) -> SimplicialFunctor {
    let pos = |x: usize| big.objects.iter().position(|&y| y == x).expect("vertex of S");
    let k = small.objects.len();
    let n = small.inclusion.object_map.len();
    let mut hom_maps = Vec::with_capacity(k * k);
    for (i, &a) in small.objects.iter().enumerate() {
        for (j, &b) in small.objects.iter().enumerate() {
            let ambient = small.inclusion.hom_map(n, i, j);
            let assignment = ambient
                .assignment
                .iter()
                .map(|r| {
                    let local = big.translate(a, b, r).expect("Δ_N(S') ⊆ Δ_N(S)");
                    g.apply(&big.category, c, pos(a), pos(b), &local)
                })
                .collect();
            hom_maps.push(SimplicialMap { assignment });
        }
    }
    SimplicialFunctor { object_map: small.objects.iter().map(|&x| g.object_map[pos(x)]).collect(), hom_maps }
}

#[derive(Clone, Debug)]
pub enum HornFill {
    /// The first extension in search order, as a simplex of `𝔑(C)`.
    Filled { filler: SimplexRef, functor: SimplicialFunctor },
    /// The extension search along `Δ_N(Λ^n_i) → Δ_N^n` is exhausted.
    None { horn_functor: SimplicialFunctor },
}

impl HornFill {
    pub fn is_filled(&self) -> bool {
        matches!(self, HornFill::Filled { .. })
    }
}

/// Fills `h : Λ^n_i → 𝔑(C)` by transporting it to a functor
/// `Δ_N(Λ^n_i) → C` and searching its extensions to `Δ_N^n`. The map `h`
/// is given on the cells of `horn(n, i, nerve.up_to)`.
pub fn fill_horn_hc(
    c: &SimplicialCategory,
    nerve: &Nerve,
    n: usize,
    i: usize,
    h: &SimplicialMap,
) -> Result<HornFill> {
    if n > nerve.up_to {
        return Err(Error::CapTooSmall { needed: n, cap: nerve.up_to });
    }
    let lambda = horn(n, i, nerve.up_to)?;
    h.validate(&lambda.set, nerve.set())?;
    let d = delta_n(n, c.cap());
    let sub = delta_n_of_subcomplex(&d, &lambda)?;
    let mut horn_functor = None;
    for g in enumerate_functors(&sub.category, c)? {
        if &transport(&lambda, &d, &sub, &g, c, nerve)? == h {
            horn_functor = Some(g);
            break;
        }
    }
    let horn_functor = horn_functor.ok_or_else(|| Error::NotAMap("the horn has no adjoint functor".into()))?;
    let ext = extend_functors(&sub.inclusion, &sub.category, &d.category, c, &horn_functor)?;
    match ext.into_iter().next() {
        Some(functor) => {
            let filler = nerve.simplex_of(n, &functor).expect("functors Δ_N^n → C are n-simplices").clone();
            Ok(HornFill::Filled { filler, functor })
        }
        None => Ok(HornFill::None { horn_functor }),
    }
}
