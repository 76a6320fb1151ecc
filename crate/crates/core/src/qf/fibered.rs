//! Categories over a base, cartesian arrows and the Grothendieck
//! construction.

use crate::error::{Error, Result};
use crate::fincat::{all_functors, Arrow, FiniteCategory, Functor};

/// A functor `p : E → B`, a candidate fibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibration {
    pub total: FiniteCategory,
    pub base: FiniteCategory,
    pub projection: Functor,
}

impl Fibration {
    pub fn new(total: FiniteCategory, base: FiniteCategory, projection: Functor) -> Result<Self> {
        projection.validate(&total, &base)?;
        Ok(Fibration { total, base, projection })
    }

    /// `B × C → B`.
    pub fn product_projection(base: &FiniteCategory, other: &FiniteCategory) -> Result<Self> {
        let total = base.product(other);
        let projection = Functor {
            object_map: (0..total.num_objects()).map(|x| x / other.num_objects()).collect(),
            arrow_map: (0..total.num_arrows()).map(|f| f / other.num_arrows()).collect(),
        };
        Fibration::new(total, base.clone(), projection)
    }

    pub fn over(&self, x: usize) -> usize {
        self.projection.object_map[x]
    }

    pub fn arrow_over(&self, f: usize) -> usize {
        self.projection.arrow_map[f]
    }

    /// Objects of `E` over `b`.
    pub fn fiber_objects(&self, b: usize) -> Vec<usize> {
        (0..self.total.num_objects()).filter(|&x| self.over(x) == b).collect()
    }

    /// Arrows `x → y` of `E` over `φ`.
    pub fn arrows_over(&self, x: usize, y: usize, phi: usize) -> Vec<usize> {
        self.total.hom(x, y).iter().copied().filter(|&f| self.arrow_over(f) == phi).collect()
    }

    /// The fiber `E_b`: objects over `b` and arrows over `id_b`.
    pub fn fiber(&self, b: usize) -> Result<(FiniteCategory, Vec<usize>, Vec<usize>)> {
        let objs = self.fiber_objects(b);
        let id = self.base.identities[b];
        let arrows: Vec<usize> =
            (0..self.total.num_arrows()).filter(|&f| self.arrow_over(f) == id && objs.contains(&self.total.src(f))).collect();
        let pos_o = |x: usize| objs.iter().position(|&o| o == x).expect("fiber object");
        let pos_a = |f: usize| arrows.iter().position(|&a| a == f).expect("vertical arrow");
        let cat = FiniteCategory::new(
            objs.iter().map(|&x| self.total.objects[x].clone()).collect(),
            arrows
                .iter()
                .map(|&f| Arrow { name: self.total.arrows[f].name.clone(), src: pos_o(self.total.src(f)), tgt: pos_o(self.total.tgt(f)) })
                .collect(),
            objs.iter().map(|&x| pos_a(self.total.identities[x])).collect(),
            |g, f| pos_a(self.total.comp(arrows[g], arrows[f])),
        )?;
        Ok((cat, objs, arrows))
    }
}

/// Whether `f : x → y` over `φ` is cartesian: for every `z` over `p(x)`,
/// composing with `f` is a bijection from arrows `z → x` over the identity
/// to arrows `z → y` over `φ`.
pub fn is_cartesian(p: &Fibration, f: usize) -> bool {
    cartesian_witness(p, f).is_none()
}

/// An object `z` breaking the bijection for `f`, if any.
pub fn cartesian_witness(p: &Fibration, f: usize) -> Option<usize> {
    let e = &p.total;
    let (x, y) = (e.src(f), e.tgt(f));
    let b = p.over(x);
    let phi = p.arrow_over(f);
    let id = p.base.identities[b];
    p.fiber_objects(b).into_iter().find(|&z| {
        let vertical = p.arrows_over(z, x, id);
        let over_phi = p.arrows_over(z, y, phi);
        let mut images: Vec<usize> = vertical.iter().map(|&h| e.comp(f, h)).collect();
        images.sort_unstable();
        images.dedup();
        images.len() != vertical.len() || images.len() != over_phi.len()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberedFailure {
    /// No cartesian arrow over `φ` into `y`.
    MissingLift { y: usize, phi: usize },
    /// `g ∘ f` is not cartesian although `f` and `g` are.
    NotClosed { f: usize, g: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedReport {
    pub fibered: bool,
    pub cartesian: Vec<bool>,
    pub failure: Option<FiberedFailure>,
}

/// Checks both fibration conditions exhaustively.
pub fn is_fibered(p: &Fibration) -> FiberedReport {
    let e = &p.total;
    let cartesian: Vec<bool> = (0..e.num_arrows()).map(|f| is_cartesian(p, f)).collect();
    let mut failure = None;
    'lift: for y in 0..e.num_objects() {
        let b = p.over(y);
        for phi in (0..p.base.num_arrows()).filter(|&phi| p.base.tgt(phi) == b) {
            let lifted = (0..e.num_arrows()).any(|f| cartesian[f] && e.tgt(f) == y && p.arrow_over(f) == phi);
            if !lifted {
                failure = Some(FiberedFailure::MissingLift { y, phi });
                break 'lift;
            }
        }
    }
    if failure.is_none() {
        'closed: for g in 0..e.num_arrows() {
            for f in 0..e.num_arrows() {
                if cartesian[f] && cartesian[g] && e.src(g) == e.tgt(f) && !cartesian[e.comp(g, f)] {
                    failure = Some(FiberedFailure::NotClosed { f, g });
                    break 'closed;
                }
            }
        }
    }
    FiberedReport { fibered: failure.is_none(), cartesian, failure }
}

/// A strict functor `F : B^op → Cat`. `action[φ]` is `F(φ) : F(b') → F(b)`
/// for `φ : b → b'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatDiagram {
    pub base: FiniteCategory,
    pub values: Vec<FiniteCategory>,
    pub action: Vec<Functor>,
}

impl CatDiagram {
    pub fn new(base: FiniteCategory, values: Vec<FiniteCategory>, action: Vec<Functor>) -> Result<Self> {
        if values.len() != base.num_objects() || action.len() != base.num_arrows() {
            return Err(Error::Invalid("one value per object and one functor per arrow required".into()));
        }
        for (phi, f) in action.iter().enumerate() {
            f.validate(&values[base.tgt(phi)], &values[base.src(phi)])?;
        }
        for (b, &id) in base.identities.iter().enumerate() {
            if action[id] != Functor::identity(&values[b]) {
                return Err(Error::NotAMap(format!("F(id) is not the identity at object {b}")));
            }
        }
        for psi in 0..base.num_arrows() {
            for phi in 0..base.num_arrows() {
                if base.src(psi) == base.tgt(phi) && action[base.comp(psi, phi)] != action[psi].then(&action[phi]) {
                    return Err(Error::NotAMap(format!("F is not strict at arrows {psi} and {phi}")));
                }
            }
        }
        Ok(CatDiagram { base, values, action })
    }

    /// The constant diagram at `c`.
    pub fn constant(base: &FiniteCategory, c: &FiniteCategory) -> Result<Self> {
        CatDiagram::new(base.clone(), vec![c.clone(); base.num_objects()], vec![Functor::identity(c); base.num_arrows()])
    }

    /// Strict diagrams with the given values, up to `limit` of them, in
    /// lexicographic order of the functors chosen per arrow.
    pub fn enumerate(base: &FiniteCategory, values: &[FiniteCategory], limit: usize) -> Vec<CatDiagram> {
        let options: Vec<Vec<Functor>> = (0..base.num_arrows())
            .map(|phi| {
                let (b, b2) = (base.src(phi), base.tgt(phi));
                if base.is_identity(phi) {
                    vec![Functor::identity(&values[b])]
                } else {
                    all_functors(&values[b2], &values[b])
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut chosen: Vec<Functor> = Vec::new();
        fn go(
            base: &FiniteCategory,
            values: &[FiniteCategory],
            options: &[Vec<Functor>],
            chosen: &mut Vec<Functor>,
            out: &mut Vec<CatDiagram>,
            limit: usize,
        ) {
            if out.len() >= limit {
                return;
            }
            let k = chosen.len();
            if k == options.len() {
                let d = CatDiagram::new(base.clone(), values.to_vec(), chosen.clone());
                out.push(d.expect("strictness checked during the search"));
                return;
            }
            for f in &options[k] {
                chosen.push(f.clone());
                let strict = (0..=k).all(|psi| {
                    (0..=k).all(|phi| match base.try_comp(psi, phi) {
                        Some(h) if h <= k && (psi == k || phi == k || h == k) => chosen[h] == chosen[psi].then(&chosen[phi]),
                        _ => true,
                    })
                });
                if strict {
                    go(base, values, options, chosen, out, limit);
                }
                chosen.pop();
            }
        }
        go(base, values, &options, &mut chosen, &mut out, limit);
        out
    }

    /// `∫F → B`: objects `(b, x)`, arrows `(φ, f) : (b, x) → (b', x')` with
    /// `f : x → F(φ)(x')`.
    pub fn grothendieck(&self) -> Result<Fibration> {
        let base = &self.base;
        let mut objects = Vec::new();
        let mut obj_index = Vec::new();
        for (b, v) in self.values.iter().enumerate() {
            obj_index.push(objects.len());
            for x in 0..v.num_objects() {
                objects.push((b, x));
            }
        }
        let mut arrows: Vec<(usize, usize, usize, usize)> = Vec::new();
        for phi in 0..base.num_arrows() {
            let (b, b2) = (base.src(phi), base.tgt(phi));
            let (v, v2) = (&self.values[b], &self.values[b2]);
            for x in 0..v.num_objects() {
                for x2 in 0..v2.num_objects() {
                    let fx2 = self.action[phi].object_map[x2];
                    for &f in v.hom(x, fx2) {
                        arrows.push((phi, f, x, x2));
                    }
                }
            }
        }
        let lookup: std::collections::HashMap<(usize, usize, usize, usize), usize> =
            arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let arrow_list: Vec<Arrow> = arrows
            .iter()
            .map(|&(phi, f, x, x2)| Arrow {
                name: format!("{}|{}", base.arrows[phi].name, self.values[base.src(phi)].arrows[f].name),
                src: obj_index[base.src(phi)] + x,
                tgt: obj_index[base.tgt(phi)] + x2,
            })
            .collect();
        let identities: Vec<usize> = objects
            .iter()
            .map(|&(b, x)| lookup[&(base.identities[b], self.values[b].identities[x], x, x)])
            .collect();
        let total = FiniteCategory::new(
            objects.iter().map(|&(b, x)| format!("{}:{}", base.objects[b], self.values[b].objects[x])).collect(),
            arrow_list,
            identities,
            |g, f| {
                let (psi, gg, _, x3) = arrows[g];
                let (phi, ff, x, _) = arrows[f];
                let v = &self.values[base.src(phi)];
                let moved = self.action[phi].arrow_map[gg];
                lookup[&(base.comp(psi, phi), v.comp(moved, ff), x, x3)]
            },
        )?;
        let projection = Functor {
            object_map: objects.iter().map(|&(b, _)| b).collect(),
            arrow_map: arrows.iter().map(|&(phi, ..)| phi).collect(),
        };
        Fibration::new(total, base.clone(), projection)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn two_objects_to_one() -> CatDiagram {
        // F(1) = point, F(0) = [1]; F(0 → 1) picks the object 1
        let base = FiniteCategory::ordinal(1);
        let values = vec![FiniteCategory::ordinal(1), FiniteCategory::ordinal(0)];
        let up = base.hom(0, 1)[0];
        let mut action = vec![Functor::identity(&values[0]); base.num_arrows()];
        action[base.identities[1]] = Functor::identity(&values[1]);
        let one = values[0].identities[1];
        action[up] = Functor { object_map: vec![1], arrow_map: vec![one] };
        CatDiagram::new(base, values, action).unwrap()
    }

    #[test]
    fn grothendieck_constructions_are_fibered() {
        let g = two_objects_to_one().grothendieck().unwrap();
        let r = is_fibered(&g);
        assert!(r.fibered, "{r:?}");
        for f in 0..g.total.num_arrows() {
            if g.total.is_identity(f) {
                assert!(r.cartesian[f]);
            }
        }
        let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
        let c = CatDiagram::constant(&FiniteCategory::ordinal(2), &z2).unwrap().grothendieck().unwrap();
        assert!(is_fibered(&c).fibered);
        let p = Fibration::product_projection(&FiniteCategory::ordinal(1), &FiniteCategory::ordinal(1)).unwrap();
        assert!(is_fibered(&p).fibered);
    }

    #[test]
    fn non_terminal_lift_is_not_cartesian() {
        let g = two_objects_to_one().grothendieck().unwrap();
        // the arrow over 0 → 1 starting at the object 0 of F(0) = [1]
        let e = &g.total;
        let bad = (0..e.num_arrows())
            .find(|&f| !g.base.is_identity(g.arrow_over(f)) && e.objects[e.src(f)].ends_with(":0"))
            .unwrap();
        let z = cartesian_witness(&g, bad).unwrap();
        assert_eq!(e.objects[z], "0:1");
        assert!(!is_cartesian(&g, bad));
    }
}
