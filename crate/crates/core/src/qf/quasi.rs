//! Quasifibered diagrams on `(Δ^op/B)^op` and the diagram of cartesian
//! liftings of a fibration.

use std::collections::HashMap;

use super::fibered::{is_fibered, Fibration};
use super::simplex::{simplex_category, SimplexCategory, SimplexOverB};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FiniteCategory, Functor};
use crate::sset::mono;

/// A strict functor `(Δ^op/B)^op → Cat` on the truncated index.
/// `action[u] : values[α] → values[β]` for `u : β → α`.
#[derive(Clone, Debug)]
pub struct QuasifiberedDiagram {
    pub base: FiniteCategory,
    pub index: SimplexCategory,
    pub values: Vec<FiniteCategory>,
    pub action: Vec<Functor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfReport {
    /// Morphisms `u` with `u(0) = 0` whose functor is not an equivalence.
    pub failures: Vec<usize>,
    pub checked: usize,
}

impl QfReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl QuasifiberedDiagram {
    pub fn new(base: FiniteCategory, index: SimplexCategory, values: Vec<FiniteCategory>, action: Vec<Functor>) -> Result<Self> {
        if values.len() != index.simplices.len() || action.len() != index.morphisms.len() {
            return Err(Error::Invalid("one category per simplex and one functor per morphism required".into()));
        }
        for (u, m) in index.morphisms.iter().enumerate() {
            action[u].validate(&values[m.tgt], &values[m.src])?;
        }
        let q = QuasifiberedDiagram { base, index, values, action };
        q.check_strict()?;
        Ok(q)
    }

    /// `F(id) = id` and `F(u ∘ v) = F(v) ∘ F(u)` on every composable pair.
    pub fn check_strict(&self) -> Result<()> {
        let idx = &self.index;
        for (u, m) in idx.morphisms.iter().enumerate() {
            if m.src == m.tgt && m.map == mono::identity(idx.simplices[m.src].dim()) && self.action[u] != Functor::identity(&self.values[m.src]) {
                return Err(Error::NotAMap(format!("F(id) is not the identity at simplex {}", m.src)));
            }
            for &v in idx.incoming(m.src) {
                if self.action[idx.compose(u, v)] != self.action[u].then(&self.action[v]) {
                    return Err(Error::NotAMap(format!("F is not strict at morphisms {u} and {v}")));
                }
            }
        }
        Ok(())
    }

    /// Checks that `F(u)` is an equivalence whenever `u(0) = 0`.
    pub fn check_qf(&self) -> QfReport {
        let mut failures = Vec::new();
        let mut checked = 0;
        for (u, m) in self.index.morphisms.iter().enumerate() {
            if m.map[0] == 0 {
                checked += 1;
                if !self.action[u].is_equivalence(&self.values[m.tgt], &self.values[m.src]) {
                    failures.push(u);
                }
            }
        }
        QfReport { failures, checked }
    }
}

/// The category `E(α)` of cartesian liftings of `α`.
#[derive(Clone, Debug)]
pub struct Liftings {
    pub category: FiniteCategory,
    /// Per object: the objects `y_i` over `α(i)` and the arrows `y_{i+1} → y_i`.
    pub objects: Vec<(Vec<usize>, Vec<usize>)>,
    /// Per arrow: the vertical components `h_i : y_i → y'_i`.
    pub arrows: Vec<Vec<usize>>,
    arrow_ends: Vec<(usize, usize)>,
}

impl Liftings {
    /// `E(α) → E_{α(0)}` as a functor into the fiber, given its object and
    /// arrow lists in `E`.
    pub fn forgetful(&self, fiber_objects: &[usize], fiber_arrows: &[usize]) -> Functor {
        let pos = |v: &[usize], x: usize| v.iter().position(|&y| y == x).expect("vertical");
        Functor {
            object_map: self.objects.iter().map(|(ys, _)| pos(fiber_objects, ys[0])).collect(),
            arrow_map: self.arrows.iter().map(|hs| pos(fiber_arrows, hs[0])).collect(),
        }
    }
}

/// `E(α) = LIM([n]^op ×_B E → [n]^op)`, by enumeration.
pub fn cartesian_liftings(p: &Fibration, cartesian: &[bool], alpha: &SimplexOverB) -> Result<Liftings> {
    let e = &p.total;
    let n = alpha.dim();
    let mut objects = Vec::new();
    for y0 in p.fiber_objects(alpha.objects[0]) {
        let mut stack = vec![(vec![y0], Vec::<usize>::new())];
        while let Some((ys, fs)) = stack.pop() {
            let i = fs.len();
            if i == n {
                objects.push((ys, fs));
                continue;
            }
            for f in (0..e.num_arrows()).rev() {
                if cartesian[f] && e.tgt(f) == ys[i] && p.arrow_over(f) == alpha.arrows[i] {
                    // every composite ending at f must stay cartesian
                    let mut g = f;
                    let mut ok = true;
                    for k in (0..i).rev() {
                        g = e.comp(fs[k], g);
                        ok &= cartesian[g];
                    }
                    if ok {
                        let (mut ys, mut fs) = (ys.clone(), fs.clone());
                        ys.push(e.src(f));
                        fs.push(f);
                        stack.push((ys, fs));
                    }
                }
            }
        }
    }
    objects.sort();

    let mut arrows = Vec::new();
    let mut arrow_ends = Vec::new();
    for (s, (ys, fs)) in objects.iter().enumerate() {
        for (t, (zs, gs)) in objects.iter().enumerate() {
            let mut families = vec![Vec::<usize>::new()];
            for i in 0..=n {
                let id = p.base.identities[alpha.objects[i]];
                let mut next = Vec::new();
                for hs in &families {
                    for h in p.arrows_over(ys[i], zs[i], id) {
                        // g_{i-1} ∘ h_i = h_{i-1} ∘ f_{i-1}
                        if i == 0 || e.comp(gs[i - 1], h) == e.comp(hs[i - 1], fs[i - 1]) {
                            let mut hs = hs.clone();
                            hs.push(h);
                            next.push(hs);
                        }
                    }
                }
                families = next;
            }
            for hs in families {
                arrows.push(hs);
                arrow_ends.push((s, t));
            }
        }
    }
    let lookup: HashMap<(usize, usize, &[usize]), usize> =
        arrows.iter().zip(&arrow_ends).enumerate().map(|(k, (hs, &(s, t)))| ((s, t, hs.as_slice()), k)).collect();
    let name_of = |v: &[usize], names: &dyn Fn(usize) -> String| {
        format!("[{}]", v.iter().map(|&x| names(x)).collect::<Vec<_>>().join(","))
    };
    let category = FiniteCategory::new(
        objects.iter().map(|(ys, _)| name_of(ys, &|x| e.objects[x].clone())).collect(),
        arrows
            .iter()
            .zip(&arrow_ends)
            .map(|(hs, &(s, t))| Arrow { name: name_of(hs, &|f| e.arrows[f].name.clone()), src: s, tgt: t })
            .collect(),
        objects
            .iter()
            .enumerate()
            .map(|(s, (ys, _))| lookup[&(s, s, ys.iter().map(|&y| e.identities[y]).collect::<Vec<_>>().as_slice())])
            .collect(),
        |g, f| {
            let hs: Vec<usize> = arrows[g].iter().zip(&arrows[f]).map(|(&a, &b)| e.comp(a, b)).collect();
            lookup[&(arrow_ends[f].0, arrow_ends[g].1, hs.as_slice())]
        },
    )?;
    Ok(Liftings { category, objects, arrows, arrow_ends })
}

/// `F(u) : E(α) → E(β)` by precomposition with `u`.
fn restrict(p: &Fibration, from: &Liftings, to: &Liftings, u: &[usize]) -> Functor {
    let e = &p.total;
    let obj_index: HashMap<&(Vec<usize>, Vec<usize>), usize> = to.objects.iter().enumerate().map(|(k, o)| (o, k)).collect();
    let arr_index: HashMap<(usize, usize, &[usize]), usize> =
        to.arrows.iter().zip(&to.arrow_ends).enumerate().map(|(k, (a, &(s, t)))| ((s, t, a.as_slice()), k)).collect();
    let object_map: Vec<usize> = from
        .objects
        .iter()
        .map(|(ys, fs)| {
            let ys2: Vec<usize> = u.iter().map(|&k| ys[k]).collect();
            let fs2: Vec<usize> = u
                .windows(2)
                .map(|w| (w[0]..w[1]).rev().fold(e.identities[ys[w[1]]], |acc, k| e.comp(fs[k], acc)))
                .collect();
            obj_index[&(ys2, fs2)]
        })
        .collect();
    let arrow_map = from
        .arrows
        .iter()
        .zip(&from.arrow_ends)
        .map(|(hs, &(s, t))| {
            let hs2: Vec<usize> = u.iter().map(|&k| hs[k]).collect();
            arr_index[&(object_map[s], object_map[t], hs2.as_slice())]
        })
        .collect();
    Functor { object_map, arrow_map }
}

/// The quasifibered category of cartesian liftings of a fibration, with
/// the liftings kept for inspection.
#[derive(Clone, Debug)]
pub struct FiberedQf {
    pub diagram: QuasifiberedDiagram,
    pub liftings: Vec<Liftings>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgetfulReport {
    pub simplex: usize,
    pub surjective_on_objects: bool,
    pub fully_faithful: bool,
}

impl FiberedQf {
    /// For each `α`, whether `E(α) → E_{α(0)}` is surjective on objects and
    /// bijective on hom-sets.
    pub fn forgetful_reports(&self, p: &Fibration) -> Result<Vec<ForgetfulReport>> {
        let mut fibers = HashMap::new();
        let mut out = Vec::new();
        for (k, (alpha, l)) in self.diagram.index.simplices.iter().zip(&self.liftings).enumerate() {
            let b = alpha.objects[0];
            if !fibers.contains_key(&b) {
                fibers.insert(b, p.fiber(b)?);
            }
            let (fiber, objs, arrows) = &fibers[&b];
            let f = l.forgetful(objs, arrows);
            let mut hit = f.object_map.clone();
            hit.sort_unstable();
            hit.dedup();
            out.push(ForgetfulReport {
                simplex: k,
                surjective_on_objects: hit.len() == fiber.num_objects(),
                fully_faithful: f.is_fully_faithful(&l.category, fiber),
            });
        }
        Ok(out)
    }
}

/// Builds `α ↦ E(α)` on `Δ^op/B` truncated at `n_cap`.
pub fn qf_from_fibered(p: &Fibration, n_cap: usize) -> Result<FiberedQf> {
    let report = is_fibered(p);
    if let Some(failure) = &report.failure {
        return Err(Error::NotFibered(format!("{failure:?}")));
    }
    let index = simplex_category(&p.base, n_cap);
    let liftings: Vec<Liftings> =
        index.simplices.iter().map(|a| cartesian_liftings(p, &report.cartesian, a)).collect::<Result<_>>()?;
    let action = index.morphisms.iter().map(|m| restrict(p, &liftings[m.tgt], &liftings[m.src], &m.map)).collect();
    let values = liftings.iter().map(|l| l.category.clone()).collect();
    let diagram = QuasifiberedDiagram::new(p.base.clone(), index, values, action)?;
    Ok(FiberedQf { diagram, liftings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qf::CatDiagram;

    #[test]
    fn over_a_point_the_liftings_are_the_total_category() {
        let e = FiniteCategory::ordinal(2);
        let p = Fibration::product_projection(&FiniteCategory::ordinal(0), &e).unwrap();
        let q = qf_from_fibered(&p, 2).unwrap();
        for (alpha, v) in q.diagram.index.simplices.iter().zip(&q.diagram.values) {
            assert_eq!((v.num_objects(), v.num_arrows()), (3, 6), "{alpha:?}");
        }
        assert!(q.diagram.check_qf().holds());
    }

    #[test]
    fn liftings_over_an_arrow_match_the_fiber_over_its_target() {
        let b = FiniteCategory::ordinal(1);
        let c = FiniteCategory::ordinal(1);
        let p = CatDiagram::constant(&b, &c).unwrap().grothendieck().unwrap();
        let q = qf_from_fibered(&p, 2).unwrap();
        let up = b.hom(0, 1)[0];
        let alpha = SimplexOverB { objects: vec![1, 0], arrows: vec![up] };
        let k = q.diagram.index.index_of(&alpha).unwrap();
        assert_eq!(q.liftings[k].category.num_objects(), 2);
        assert!(q.forgetful_reports(&p).unwrap().iter().all(|r| r.surjective_on_objects && r.fully_faithful));
        let r = q.diagram.check_qf();
        assert!(r.holds() && r.checked > 0);
    }

    #[test]
    fn non_fibered_input_is_rejected() {
        // the inclusion of {1} into [1] has no lift of 0 → 1
        let b = FiniteCategory::ordinal(1);
        let e = FiniteCategory::ordinal(0);
        let p = Fibration::new(e, b.clone(), Functor { object_map: vec![1], arrow_map: vec![b.identities[1]] }).unwrap();
        assert!(matches!(qf_from_fibered(&p, 1), Err(Error::NotFibered(_))));
    }
}
