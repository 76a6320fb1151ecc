//! The category of cartesian sections of a fibration, limits of
//! quasifibered diagrams, and the canonical comparison between them.

use std::collections::HashMap;

use super::fibered::{is_fibered, Fibration};
use super::quasi::{qf_from_fibered, QuasifiberedDiagram};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FiniteCategory, Functor};

/// `LIM(p)` with the data of each section and transformation.
#[derive(Clone, Debug)]
pub struct Sections {
    pub category: FiniteCategory,
    /// Per section: `s(b)` per object and `s(φ)` per arrow of `B`.
    pub objects: Vec<(Vec<usize>, Vec<usize>)>,
    /// Per transformation: the vertical component at each object of `B`.
    pub arrows: Vec<Vec<usize>>,
}

/// Builds a category whose arrows are componentwise families, composed
/// componentwise with `comp(k, g, f)`.
fn family_category(
    object_names: Vec<String>,
    arrows: &[Vec<usize>],
    ends: &[(usize, usize)],
    identity: impl Fn(usize) -> Vec<usize>,
    comp: impl Fn(usize, usize, usize) -> usize,
    arrow_name: impl Fn(&[usize]) -> String,
) -> Result<FiniteCategory> {
    let lookup: HashMap<(usize, usize, &[usize]), usize> =
        arrows.iter().zip(ends).enumerate().map(|(k, (a, &(s, t)))| ((s, t, a.as_slice()), k)).collect();
    let n = object_names.len();
    FiniteCategory::new(
        object_names,
        arrows.iter().zip(ends).map(|(a, &(s, t))| Arrow { name: arrow_name(a), src: s, tgt: t }).collect(),
        (0..n).map(|x| lookup[&(x, x, identity(x).as_slice())]).collect(),
        |g, f| {
            let c: Vec<usize> = (0..arrows[g].len()).map(|k| comp(k, arrows[g][k], arrows[f][k])).collect();
            lookup[&(ends[f].0, ends[g].1, c.as_slice())]
        },
    )
}

/// Enumerates families `x_0, x_1, …` with `x_k ∈ choices(k, partial)` and
/// `ok(k, partial)` after each step.
fn backtrack(
    len: usize,
    choices: &dyn Fn(usize, &[usize]) -> Vec<usize>,
    ok: &dyn Fn(usize, &[usize]) -> bool,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(len);
    fn go(
        len: usize,
        partial: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        choices: &dyn Fn(usize, &[usize]) -> Vec<usize>,
        ok: &dyn Fn(usize, &[usize]) -> bool,
    ) {
        let k = partial.len();
        if k == len {
            out.push(partial.clone());
            return;
        }
        for x in choices(k, partial) {
            partial.push(x);
            if ok(k, partial) {
                go(len, partial, out, choices, ok);
            }
            partial.pop();
        }
    }
    go(len, &mut partial, &mut out, choices, ok);
    out
}

/// Sections `s : B → E` of `p` sending every arrow to a cartesian arrow,
/// and the vertical natural transformations between them.
pub fn lim_cartesian_sections(p: &Fibration) -> Result<Sections> {
    let (b, e) = (&p.base, &p.total);
    let cartesian = is_fibered(p).cartesian;
    let fibers: Vec<Vec<usize>> = (0..b.num_objects()).map(|x| p.fiber_objects(x)).collect();
    let object_choices = backtrack(b.num_objects(), &|k, _| fibers[k].clone(), &|_, _| true);

    // constraints per arrow index: composites whose largest index is k
    let mut triples: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); b.num_arrows()];
    for g in 0..b.num_arrows() {
        for f in 0..b.num_arrows() {
            if let Some(h) = b.try_comp(g, f) {
                triples[g.max(f).max(h)].push((g, f, h));
            }
        }
    }
    let mut objects = Vec::new();
    for ys in object_choices {
        let choices = |k: usize, _: &[usize]| -> Vec<usize> {
            if b.is_identity(k) {
                return vec![e.identities[ys[b.src(k)]]];
            }
            e.hom(ys[b.src(k)], ys[b.tgt(k)]).iter().copied().filter(|&f| cartesian[f] && p.arrow_over(f) == k).collect()
        };
        let ok = |k: usize, s: &[usize]| triples[k].iter().all(|&(g, f, h)| e.comp(s[g], s[f]) == s[h]);
        for fs in backtrack(b.num_arrows(), &choices, &ok) {
            objects.push((ys.clone(), fs));
        }
    }

    let mut arrows = Vec::new();
    let mut ends = Vec::new();
    for (s, (ys, fs)) in objects.iter().enumerate() {
        for (t, (zs, gs)) in objects.iter().enumerate() {
            let choices = |k: usize, _: &[usize]| p.arrows_over(ys[k], zs[k], b.identities[k]);
            let ok = |k: usize, eta: &[usize]| {
                (0..b.num_arrows()).all(|phi| {
                    let (x, y) = (b.src(phi), b.tgt(phi));
                    x.max(y) != k || e.comp(gs[phi], eta[x]) == e.comp(eta[y], fs[phi])
                })
            };
            for eta in backtrack(b.num_objects(), &choices, &ok) {
                arrows.push(eta);
                ends.push((s, t));
            }
        }
    }
    let join = |v: &[usize], name: &dyn Fn(usize) -> String| format!("[{}]", v.iter().map(|&x| name(x)).collect::<Vec<_>>().join(","));
    let category = family_category(
        objects.iter().map(|(ys, _)| join(ys, &|x| e.objects[x].clone())).collect(),
        &arrows,
        &ends,
        |s| objects[s].0.iter().map(|&y| e.identities[y]).collect(),
        |_, g, f| e.comp(g, f),
        |a| join(a, &|f| e.arrows[f].name.clone()),
    )?;
    Ok(Sections { category, objects, arrows })
}

/// `lim` of a quasifibered diagram over its truncated index.
#[derive(Clone, Debug)]
pub struct Limit {
    pub category: FiniteCategory,
    /// Per object: an object of `F(α)` for every simplex `α`.
    pub objects: Vec<Vec<usize>>,
    /// Per arrow: an arrow of `F(α)` for every simplex `α`.
    pub arrows: Vec<Vec<usize>>,
}

/// Compatible families over `(Δ^op/B)^op`, truncated at the diagram's
/// `n_cap`, which must be at least 2.
pub fn lim_diagram(q: &QuasifiberedDiagram) -> Result<Limit> {
    if q.index.n_cap < 2 {
        return Err(Error::CapTooSmall { needed: 2, cap: q.index.n_cap });
    }
    let idx = &q.index;
    let n = idx.simplices.len();
    let mut constraints: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, m) in idx.morphisms.iter().enumerate() {
        constraints[m.src.max(m.tgt)].push(u);
    }
    let obj_ok = |k: usize, x: &[usize]| {
        constraints[k].iter().all(|&u| {
            let m = &idx.morphisms[u];
            q.action[u].object_map[x[m.tgt]] == x[m.src]
        })
    };
    let objects = backtrack(n, &|k, _| (0..q.values[k].num_objects()).collect(), &obj_ok);

    let mut arrows = Vec::new();
    let mut ends = Vec::new();
    for (s, xs) in objects.iter().enumerate() {
        for (t, zs) in objects.iter().enumerate() {
            let choices = |k: usize, _: &[usize]| q.values[k].hom(xs[k], zs[k]).to_vec();
            let ok = |k: usize, h: &[usize]| {
                constraints[k].iter().all(|&u| {
                    let m = &idx.morphisms[u];
                    q.action[u].arrow_map[h[m.tgt]] == h[m.src]
                })
            };
            for h in backtrack(n, &choices, &ok) {
                arrows.push(h);
                ends.push((s, t));
            }
        }
    }
    let category = family_category(
        (0..objects.len()).map(|k| format!("x{k}")).collect(),
        &arrows,
        &ends,
        |s| objects[s].iter().enumerate().map(|(k, &x)| q.values[k].identities[x]).collect(),
        |k, g, f| q.values[k].comp(g, f),
        |a| format!("{a:?}"),
    )?;
    Ok(Limit { category, objects, arrows })
}

#[derive(Clone, Debug)]
pub struct LimComparison {
    pub sections: (usize, usize),
    pub limit: (usize, usize),
    /// `LIM(p) → lim(E)`, sending `s` to `α ↦ s ∘ α`.
    pub functor: Functor,
    pub isomorphism: bool,
}

/// Compares `LIM(p)` with `lim(E)` for `E` the cartesian liftings of `p`.
pub fn compare_lim(p: &Fibration, n_cap: usize) -> Result<LimComparison> {
    let sections = lim_cartesian_sections(p)?;
    let qf = qf_from_fibered(p, n_cap)?;
    let limit = lim_diagram(&qf.diagram)?;
    let idx = &qf.diagram.index;

    let lift_obj: Vec<HashMap<&(Vec<usize>, Vec<usize>), usize>> =
        qf.liftings.iter().map(|l| l.objects.iter().enumerate().map(|(k, o)| (o, k)).collect()).collect();
    let limit_obj: HashMap<&Vec<usize>, usize> = limit.objects.iter().enumerate().map(|(k, o)| (o, k)).collect();
    let object_map: Vec<usize> = sections
        .objects
        .iter()
        .map(|(ys, fs)| {
            let family: Vec<usize> = idx
                .simplices
                .iter()
                .enumerate()
                .map(|(k, alpha)| {
                    let zs = alpha.objects.iter().map(|&x| ys[x]).collect();
                    let gs = alpha.arrows.iter().map(|&phi| fs[phi]).collect();
                    lift_obj[k][&(zs, gs)]
                })
                .collect();
            limit_obj.get(&family).copied().ok_or_else(|| Error::NotAMap("a section gives no compatible family".into()))
        })
        .collect::<Result<_>>()?;

    let limit_arr: HashMap<(usize, usize, &[usize]), usize> = limit
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| ((limit.category.src(k), limit.category.tgt(k), a.as_slice()), k))
        .collect();
    let arrow_map: Vec<usize> = (0..sections.category.num_arrows())
        .map(|f| {
            let (s, t) = (sections.category.src(f), sections.category.tgt(f));
            let eta = &sections.arrows[f];
            let family: Vec<usize> = idx
                .simplices
                .iter()
                .enumerate()
                .map(|(k, alpha)| {
                    let l = &qf.liftings[k];
                    let hs: Vec<usize> = alpha.objects.iter().map(|&x| eta[x]).collect();
                    let (ls, lt) = (limit.objects[object_map[s]][k], limit.objects[object_map[t]][k]);
                    l.category.hom(ls, lt).iter().copied().find(|&a| l.arrows[a] == hs).expect("components form an arrow of E(α)")
                })
                .collect();
            limit_arr
                .get(&(object_map[s], object_map[t], family.as_slice()))
                .copied()
                .ok_or_else(|| Error::NotAMap("a transformation gives no compatible family".into()))
        })
        .collect::<Result<_>>()?;
    let functor = Functor { object_map, arrow_map };
    functor.validate(&sections.category, &limit.category)?;
    let isomorphism = functor.is_isomorphism(&sections.category, &limit.category);
    Ok(LimComparison {
        sections: (sections.category.num_objects(), sections.category.num_arrows()),
        limit: (limit.category.num_objects(), limit.category.num_arrows()),
        functor,
        isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::qf::CatDiagram;

    #[test]
    fn identity_fibration_has_one_section() {
        let b = FiniteCategory::ordinal(1);
        let p = Fibration::new(b.clone(), b.clone(), Functor::identity(&b)).unwrap();
        let s = lim_cartesian_sections(&p).unwrap();
        assert_eq!((s.category.num_objects(), s.category.num_arrows()), (1, 1));
    }

    #[test]
    fn over_a_point_sections_are_the_total_category() {
        let c = FiniteCategory::from_group(&FiniteGroup::cyclic(3), "z");
        let p = Fibration::product_projection(&FiniteCategory::ordinal(0), &c).unwrap();
        let s = lim_cartesian_sections(&p).unwrap();
        assert_eq!((s.category.num_objects(), s.category.num_arrows()), (1, 3));
        let r = compare_lim(&p, 2).unwrap();
        assert!(r.isomorphism, "{r:?}");
    }

    #[test]
    fn lim_is_lim_over_the_arrow() {
        let b = FiniteCategory::ordinal(1);
        let p = CatDiagram::constant(&b, &FiniteCategory::ordinal(1)).unwrap().grothendieck().unwrap();
        let r = compare_lim(&p, 2).unwrap();
        assert!(r.isomorphism, "{r:?}");
        // sections of the constant diagram are objects of [1]
        assert_eq!(r.sections, (2, 3));
        assert!(lim_diagram(&qf_from_fibered(&p, 1).unwrap().diagram).is_err());
    }
}
