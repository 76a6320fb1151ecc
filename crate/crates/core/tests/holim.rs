use nervelab::fincat::{CategoryNerve, FiniteCategory};
use nervelab::group::FiniteGroup;
use nervelab::qf::{holim_sset, holim_sset_bounded, lim_sset, lim_to_holim, string_height, CosimplicialReplacement, SDiagram};
use nervelab::sset::{mono, pi0, standard_simplex, SimplexRef, SimplicialMap, SimplicialSet};
use nervelab::Error;
use proptest::prelude::*;

fn bz2(cap: usize) -> SimplicialSet {
    CategoryNerve::new(&FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"), cap).set
}

/// `F(b) = Δ^1` with every non-identity arrow acting by the constant map
/// at vertex 0.
fn collapsing(base: &FiniteCategory, cap: usize) -> SDiagram {
    let x = standard_simplex(1, cap).unwrap().set;
    let action = (0..base.num_arrows())
        .map(|f| if base.is_identity(f) { SimplicialMap::identity(&x) } else { SimplicialMap::constant(&x, 0) })
        .collect();
    SDiagram::new(base.clone(), vec![x; base.num_objects()], action).unwrap()
}

#[test]
fn terminal_base_is_the_identity() {
    let b = FiniteCategory::ordinal(0);
    for x in [standard_simplex(2, 4).unwrap().set, bz2(4)] {
        let f = SDiagram::constant(&b, &x).unwrap();
        let h = holim_sset(&f, 2, 2).unwrap();
        let lim = lim_sset(&f, 2).unwrap();
        // lim over a point is F(•) itself, cell for cell
        assert_eq!(lim.0.set.nd_counts(), x.with_cap(2).nd_counts());
        let map = lim_to_holim(&f, &lim, &h).unwrap();
        assert!(map.is_isomorphism(&lim.0.set, h.set()));
    }
}

#[test]
fn constant_point_is_a_point() {
    let span = nervelab::sset::Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(1, 0), (1, 2)]).unwrap();
    for b in [
        FiniteCategory::ordinal(2),
        FiniteCategory::from_poset(&span),
        FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z"),
        FiniteCategory::contractible_groupoid(2),
    ] {
        let f = SDiagram::constant(&b, &SimplicialSet::point(5)).unwrap();
        let h = holim_sset(&f, 3, 1).unwrap();
        for m in 0..=1 {
            assert_eq!(h.set().count(m), 1, "degree {m}");
        }
    }
}

#[test]
fn bz2_over_an_arrow_is_connected() {
    let b = FiniteCategory::ordinal(1);
    let f = SDiagram::constant(&b, &bz2(3)).unwrap();
    let h = holim_sset(&f, 2, 1).unwrap();
    assert!(h.exact);
    let lim = lim_sset(&f, 1).unwrap();
    // the limit over [1]^op is the value at its initial object
    assert_eq!(pi0(&lim.0.set).count, pi0(&bz2(1)).count);
    assert_eq!(pi0(h.set()).count, 1);
    assert_eq!(pi0(h.set()).count, pi0(&lim.0.set).count);
}

#[test]
fn discrete_base_gives_the_product() {
    let b = FiniteCategory::discrete(2);
    let (x, y) = (standard_simplex(1, 3).unwrap().set, bz2(3));
    let f = SDiagram::new(b.clone(), vec![x.clone(), y.clone()], vec![SimplicialMap::identity(&x), SimplicialMap::identity(&y)]).unwrap();
    assert_eq!(string_height(&b), Some(0));
    let h = holim_sset(&f, 2, 2).unwrap();
    for m in 0..=2 {
        assert_eq!(h.set().count(m), x.count(m) * y.count(m), "degree {m}");
    }
}

#[test]
fn collapsing_diagram_matches_its_limit() {
    // over [1], lim F = F(1) = Δ^1 and holim F ≃ F(1)
    let b = FiniteCategory::ordinal(1);
    let f = collapsing(&b, 4);
    let h = holim_sset(&f, 2, 2).unwrap();
    let lim = lim_sset(&f, 2).unwrap();
    assert_eq!(lim.0.set.nd_counts(), vec![2, 1]);
    let map = lim_to_holim(&f, &lim, &h).unwrap();
    assert_eq!(nervelab::sset::homotopy::pi0_map(&map, &lim.0.set, h.set()), vec![0]);
    assert_eq!(pi0(h.set()).count, 1);
}

#[test]
fn resource_guard_and_truncation_bounds() {
    let b = FiniteCategory::ordinal(1);
    let f = SDiagram::constant(&b, &bz2(3)).unwrap();
    assert!(matches!(holim_sset_bounded(&f, 2, 1, 1), Err(Error::ResourceLimit(_))));
    let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
    let g = SDiagram::constant(&z2, &SimplicialSet::point(5)).unwrap();
    assert!(matches!(holim_sset(&g, 2, 1), Err(Error::CapTooSmall { needed: 3, .. })));
    let low = SDiagram::constant(&b, &bz2(1)).unwrap();
    assert!(matches!(holim_sset(&low, 2, 1), Err(Error::CapTooSmall { .. })));
}

fn tuple(rep: &CosimplicialReplacement, x: &SimplicialSet, p: usize, dim: usize, seed: u64) -> Vec<SimplexRef> {
    let pool = x.simplices(dim);
    (0..rep.strings[p].len()).map(|k| pool[(seed as usize).wrapping_mul(31).wrapping_add(k * 7) % pool.len()].clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `(θ ∘ η)_* = θ_* ∘ η_*` on the cosimplicial replacement.
    #[test]
    fn replacement_is_cosimplicial(p in 0usize..3, q in 0usize..3, r in 0usize..3, a in 0usize..64, c in 0usize..64, seed in 0u64..1000) {
        let b = FiniteCategory::ordinal(2);
        let f = collapsing(&b, 3);
        let rep = CosimplicialReplacement::new(&b, 2);
        let etas = mono::all_monotone(p, q);
        let thetas = mono::all_monotone(q, r);
        let (eta, theta) = (&etas[a % etas.len()], &thetas[c % thetas.len()]);
        let x = &f.values[0];
        let w = tuple(&rep, x, p, 1, seed);
        let two_steps = rep.apply(&f, theta, r, &rep.apply(&f, eta, q, &w).unwrap()).unwrap();
        let one_step = rep.apply(&f, &mono::compose(theta, eta), r, &w).unwrap();
        prop_assert_eq!(two_steps, one_step);
    }
}
