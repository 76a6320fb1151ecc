//! π0, fibrancy and equivalence certificates.

use super::{SimplicialCategory, SimplicialFunctor};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FiniteCategory, Functor};
use crate::sset::homotopy::{pi0_map, pi1_map_is_iso};
use crate::sset::kan::HornWitness;
use crate::sset::{is_kan, is_kan_fibration, pi0, pi1_edge_path, Components, SimplexRef};

/// `π0(C)` with the component of every hom vertex.
#[derive(Clone, Debug)]
pub struct Pi0Category {
    pub category: FiniteCategory,
    /// Per hom pair `a * n + b`, the components of `Hom(a, b)`.
    pub components: Vec<Components>,
    /// Per hom pair, the arrow of the first component.
    offset: Vec<usize>,
}

impl Pi0Category {
    /// The arrow of `π0(C)` containing the vertex `v` of `Hom(a, b)`.
    pub fn arrow_of(&self, a: usize, b: usize, v: u32) -> usize {
        let p = a * self.category.num_objects() + b;
        self.offset[p] + self.components[p].of_vertex[v as usize]
    }

    /// A vertex of `Hom(a, b)` in the component of `arrow`.
    pub fn representative(&self, arrow: usize) -> u32 {
        let (a, b) = (self.category.src(arrow), self.category.tgt(arrow));
        let p = a * self.category.num_objects() + b;
        self.components[p].members(arrow - self.offset[p])[0]
    }
}

/// The category of path components of hom spaces. Composition is computed
/// on representatives and checked on every pair of vertices.
pub fn pi0_category(c: &SimplicialCategory) -> Result<Pi0Category> {
    let n = c.num_objects();
    let components: Vec<Components> = (0..n * n).map(|p| pi0(c.hom(p / n, p % n))).collect();
    let mut offset = Vec::with_capacity(n * n);
    let mut arrows = Vec::new();
    for p in 0..n * n {
        offset.push(arrows.len());
        for k in 0..components[p].count {
            let (a, b) = (p / n, p % n);
            arrows.push(Arrow { name: format!("[{a}>{b}]{k}"), src: a, tgt: b });
        }
    }
    let comp_of = |a: usize, b: usize, v: u32| offset[a * n + b] + components[a * n + b].of_vertex[v as usize];
    let mut table = std::collections::HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for f in c.hom(a, b).simplices(0) {
                    for g in c.hom(b, cc).simplices(0) {
                        let Some(h) = c.compose(a, b, cc, g, f) else { continue };
                        let key = (comp_of(b, cc, g.nd), comp_of(a, b, f.nd));
                        let val = comp_of(a, cc, h.nd);
                        if *table.entry(key).or_insert(val) != val {
                            return Err(Error::Invalid(format!("composition on π0 is not well defined at ({a},{b},{cc})")));
                        }
                    }
                }
            }
        }
    }
    let identities = (0..n).map(|x| comp_of(x, x, c.identity(x))).collect();
    for (f, af) in arrows.iter().enumerate() {
        for (g, ag) in arrows.iter().enumerate() {
            if af.tgt == ag.src && !table.contains_key(&(g, f)) {
                return Err(Error::Invalid(format!("no defined composite of components {g} and {f}")));
            }
        }
    }
    let category = FiniteCategory::new(c.objects.clone(), arrows, identities, |g, f| table[&(g, f)])?;
    Ok(Pi0Category { category, components, offset })
}

fn check_window(c: &SimplicialCategory, up_to: usize) -> Result<()> {
    if up_to + 1 > c.cap() {
        return Err(Error::CapTooSmall { needed: up_to + 1, cap: c.cap() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FibrancyReport {
    pub up_to: usize,
    pub fibrant: bool,
    /// The first hom pair with an unfillable horn.
    pub failure: Option<(usize, usize, HornWitness)>,
}

/// Whether every hom space passes the Kan check up to `up_to`.
pub fn is_fibrant(c: &SimplicialCategory, up_to: usize) -> Result<FibrancyReport> {
    check_window(c, up_to)?;
    let n = c.num_objects();
    for a in 0..n {
        for b in 0..n {
            let r = is_kan(c.hom(a, b), up_to)?;
            if let Some(w) = r.first_failure() {
                return Ok(FibrancyReport { up_to, fibrant: false, failure: Some((a, b, w.clone())) });
            }
        }
    }
    Ok(FibrancyReport { up_to, fibrant: true, failure: None })
}

pub fn is_weak_groupoid(c: &SimplicialCategory) -> Result<bool> {
    Ok(pi0_category(c)?.category.is_groupoid())
}

pub fn is_fibrant_groupoid(c: &SimplicialCategory, up_to: usize) -> Result<bool> {
    Ok(is_weak_groupoid(c)? && is_fibrant(c, up_to)?.fibrant)
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeakFibrationFailure {
    /// A hom map `Hom(a, b) → Hom(fa, fb)` is not a Kan fibration.
    Hom { a: usize, b: usize, horn: HornWitness },
    /// The 0-arrow `alpha : f(x) → z`, invertible in `π0(D)`, has no
    /// preimage out of `x` invertible in `π0(C)`.
    Lift { x: usize, z: usize, alpha: SimplexRef },
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakFibrationReport {
    pub up_to: usize,
    pub holds: bool,
    pub failure: Option<WeakFibrationFailure>,
}

/// Checks that hom maps are Kan fibrations and that homotopy equivalences
/// out of an image object lift.
pub fn is_weak_fibration(
    f: &SimplicialFunctor,
    c: &SimplicialCategory,
    d: &SimplicialCategory,
    up_to: usize,
) -> Result<WeakFibrationReport> {
    check_window(c, up_to)?;
    check_window(d, up_to)?;
    let (n, m) = (c.num_objects(), d.num_objects());
    let fail = |failure| Ok(WeakFibrationReport { up_to, holds: false, failure: Some(failure) });
    for a in 0..n {
        for b in 0..n {
            let (fa, fb) = (f.object_map[a], f.object_map[b]);
            let r = is_kan_fibration(&f.hom_maps[a * n + b], c.hom(a, b), d.hom(fa, fb), up_to)?;
            if let Some(w) = r.first_failure() {
                return fail(WeakFibrationFailure::Hom { a, b, horn: w.clone() });
            }
        }
    }
    let (pc, pd) = (pi0_category(c)?, pi0_category(d)?);
    for x in 0..n {
        let fx = f.object_map[x];
        for z in 0..m {
            for alpha in d.hom(fx, z).simplices(0) {
                if !pd.category.is_iso(pd.arrow_of(fx, z, alpha.nd)) {
                    continue;
                }
                let lifted = (0..n).filter(|&y| f.object_map[y] == z).any(|y| {
                    c.hom(x, y).simplices(0).iter().any(|beta| {
                        pc.category.is_iso(pc.arrow_of(x, y, beta.nd)) && &f.apply(c, d, x, y, beta) == alpha
                    })
                });
                if !lifted {
                    return fail(WeakFibrationFailure::Lift { x, z, alpha: alpha.clone() });
                }
            }
        }
    }
    Ok(WeakFibrationReport { up_to, holds: true, failure: None })
}

/// How much of a weak equivalence was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CertificationLevel {
    /// Some certified invariant differs.
    Failed,
    /// `π0(f)` is an equivalence and hom maps are bijective on `π0`.
    HomPi0,
    /// In addition every hom pair is certified Kan on both sides and the
    /// hom maps are isomorphisms on `π1` at every component.
    HomPi1,
}

/// A truncated certificate: it never proves a weak equivalence.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceCertificate {
    pub level: CertificationLevel,
    pub pi0_equivalence: bool,
    pub hom_pi0_bijective: bool,
    /// `Some(false)` on a certified π1 mismatch; `None` when some hom pair
    /// could not be compared.
    pub hom_pi1_iso: Option<bool>,
    pub failure: Option<String>,
}

/// Certifies `π0(f)` as an equivalence, hom maps as π0 bijections, and,
/// where both homs pass the Kan check up to `up_to.max(2)`, as π1
/// isomorphisms.
pub fn strong_equivalence_certificate(
    f: &SimplicialFunctor,
    c: &SimplicialCategory,
    d: &SimplicialCategory,
    up_to: usize,
) -> Result<EquivalenceCertificate> {
    if up_to == 0 {
        return Err(Error::Invalid("the certificate needs up_to ≥ 1".into()));
    }
    let n = c.num_objects();
    let (pc, pd) = (pi0_category(c)?, pi0_category(d)?);
    let pi0f = Functor {
        object_map: f.object_map.clone(),
        arrow_map: (0..pc.category.num_arrows())
            .map(|arr| {
                let (a, b) = (pc.category.src(arr), pc.category.tgt(arr));
                let v = f.hom_maps[a * n + b].assignment[pc.representative(arr) as usize].nd;
                pd.arrow_of(f.object_map[a], f.object_map[b], v)
            })
            .collect(),
    };
    let mut cert = EquivalenceCertificate {
        level: CertificationLevel::Failed,
        pi0_equivalence: pi0f.is_equivalence(&pc.category, &pd.category),
        hom_pi0_bijective: true,
        hom_pi1_iso: Some(true),
        failure: None,
    };
    let kan_up_to = up_to.max(2);
    for a in 0..n {
        for b in 0..n {
            let (fa, fb) = (f.object_map[a], f.object_map[b]);
            let (x, y, map) = (c.hom(a, b), d.hom(fa, fb), &f.hom_maps[a * n + b]);
            let on_pi0 = pi0_map(map, x, y);
            let mut hit = vec![false; pd.components[fa * d.num_objects() + fb].count];
            for &k in &on_pi0 {
                hit[k] = true;
            }
            let bijective = on_pi0.len() == hit.len() && hit.iter().all(|&h| h);
            if !bijective && cert.hom_pi0_bijective {
                cert.hom_pi0_bijective = false;
                cert.failure.get_or_insert(format!("Hom({a},{b}) → Hom({fa},{fb}) is not bijective on π0"));
            }
            if cert.hom_pi1_iso == Some(false) {
                continue;
            }
            let certified = |s: &crate::sset::SimplicialSet| {
                s.cap() >= kan_up_to && is_kan(s, kan_up_to).is_ok_and(|r| r.passed)
            };
            if !(certified(x) && certified(y)) {
                cert.hom_pi1_iso = None;
                continue;
            }
            let comps = &pc.components[a * n + b];
            for k in 0..comps.count {
                let v = comps.members(k)[0];
                let w = map.assignment[v as usize].nd;
                let iso = match (pi1_edge_path(x, v), pi1_edge_path(y, w)) {
                    (Ok(gx), Ok(gy)) => pi1_map_is_iso(map, x, &gx, y, &gy),
                    _ => None,
                };
                match iso {
                    Some(true) => {}
                    Some(false) => {
                        cert.hom_pi1_iso = Some(false);
                        cert.failure.get_or_insert(format!("Hom({a},{b}) → Hom({fa},{fb}) is not a π1 isomorphism"));
                        break;
                    }
                    None => cert.hom_pi1_iso = cert.hom_pi1_iso.and(None),
                }
            }
        }
    }
    if !cert.pi0_equivalence {
        cert.failure.get_or_insert("π0(f) is not an equivalence".into());
    }
    cert.level = match (cert.pi0_equivalence && cert.hom_pi0_bijective, cert.hom_pi1_iso) {
        (false, _) | (true, Some(false)) => CertificationLevel::Failed,
        (true, None) => CertificationLevel::HomPi0,
        (true, Some(true)) => CertificationLevel::HomPi1,
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scat::enumerate_functors;

    #[test]
    fn pi0_of_small_categories() {
        let t = SimplicialCategory::discrete(&FiniteCategory::ordinal(2), 2);
        let p = pi0_category(&t).unwrap();
        assert_eq!(p.category.num_arrows(), 6);
        let z3 = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(3), 2).unwrap();
        assert_eq!(pi0_category(&z3).unwrap().category.num_arrows(), 1);
        assert!(is_weak_groupoid(&z3).unwrap());
        assert!(!is_weak_groupoid(&t).unwrap());
    }

    #[test]
    fn fibrancy_of_group_nerves() {
        let z2 = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(2), 3).unwrap();
        assert!(is_fibrant(&z2, 2).unwrap().fibrant);
        assert!(is_fibrant_groupoid(&z2, 2).unwrap());
        assert!(is_fibrant(&z2, 3).is_err());
    }

    #[test]
    fn weak_fibration_lift_condition() {
        let pt = SimplicialCategory::discrete(&FiniteCategory::discrete(1), 2);
        let t2 = SimplicialCategory::discrete(&FiniteCategory::contractible_groupoid(2), 2);
        let inc = enumerate_functors(&pt, &t2).unwrap().remove(0);
        let r = is_weak_fibration(&inc, &pt, &t2, 1).unwrap();
        assert!(matches!(r.failure, Some(WeakFibrationFailure::Lift { x: 0, z: 1, .. })));
        let id = SimplicialFunctor::identity(&t2);
        assert!(is_weak_fibration(&id, &t2, &t2, 1).unwrap().holds);
    }

    #[test]
    fn certificates() {
        let z2 = SimplicialCategory::abelian_group_nerve(&FiniteGroup::cyclic(2), 3).unwrap();
        let id = SimplicialFunctor::identity(&z2);
        let cert = strong_equivalence_certificate(&id, &z2, &z2, 2).unwrap();
        assert_eq!(cert.level, CertificationLevel::HomPi1);
        let pt = SimplicialCategory::discrete(&FiniteCategory::discrete(1), 3);
        let collapse = enumerate_functors(&z2, &pt).unwrap().remove(0);
        let cert = strong_equivalence_certificate(&collapse, &z2, &pt, 2).unwrap();
        assert!(cert.hom_pi0_bijective);
        assert_eq!(cert.hom_pi1_iso, Some(false));
        assert_eq!(cert.level, CertificationLevel::Failed);
    }
}
