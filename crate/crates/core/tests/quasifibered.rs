use nervelab::fincat::{all_functors, FiniteCategory, Functor};
use nervelab::group::FiniteGroup;
use nervelab::qf::{
    compare_lim, is_cartesian, is_fibered, lim_cartesian_sections, qf_from_fibered, simplex_category, CatDiagram, Fibration,
};
use nervelab::sset::Poset;
use proptest::prelude::*;

fn z2() -> FiniteCategory {
    FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z")
}

fn bases() -> Vec<FiniteCategory> {
    let span = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(1, 0), (1, 2)]).unwrap();
    vec![
        FiniteCategory::ordinal(0),
        FiniteCategory::ordinal(1),
        FiniteCategory::ordinal(2),
        FiniteCategory::discrete(3),
        FiniteCategory::from_poset(&span),
        z2(),
        FiniteCategory::contractible_groupoid(2),
    ]
}

fn pool() -> Vec<FiniteCategory> {
    vec![FiniteCategory::ordinal(0), FiniteCategory::ordinal(1), FiniteCategory::discrete(2), z2()]
}

/// Value assignments per object, cycling through the pool.
fn assignments(base: &FiniteCategory, pool: &[FiniteCategory]) -> Vec<Vec<FiniteCategory>> {
    let n = base.num_objects();
    (0..pool.len().pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = pool[code % pool.len()].clone();
                    code /= pool.len();
                    v
                })
                .collect()
        })
        .collect()
}

fn sample_diagrams(per_assignment: usize) -> Vec<CatDiagram> {
    let pool = pool();
    let mut out = Vec::new();
    for b in bases() {
        for values in assignments(&b, &pool) {
            out.extend(CatDiagram::enumerate(&b, &values, per_assignment));
        }
    }
    out
}

fn check_diagram(d: &CatDiagram) {
    let p = d.grothendieck().unwrap();
    let report = is_fibered(&p);
    assert!(report.fibered, "{:?}", report.failure);
    // composites of cartesian arrows stay cartesian
    let e = &p.total;
    for g in 0..e.num_arrows() {
        for f in 0..e.num_arrows() {
            if report.cartesian[f] && report.cartesian[g] && e.src(g) == e.tgt(f) {
                assert!(is_cartesian(&p, e.comp(g, f)));
            }
        }
    }
    let qf = qf_from_fibered(&p, 2).unwrap();
    qf.diagram.check_strict().unwrap();
    let r = qf.diagram.check_qf();
    assert!(r.holds(), "{r:?}");
    for f in qf.forgetful_reports(&p).unwrap() {
        assert!(f.surjective_on_objects && f.fully_faithful, "{f:?}");
    }
    let cmp = compare_lim(&p, 2).unwrap();
    assert!(cmp.isomorphism, "{cmp:?}");
}

#[test]
fn grothendieck_constructions_satisfy_the_quasifibered_suite() {
    let diagrams = sample_diagrams(2);
    assert!(diagrams.len() > 100);
    for d in &diagrams {
        check_diagram(d);
    }
}

#[test]
fn canonical_lifts_are_cartesian() {
    for d in sample_diagrams(1) {
        let p = d.grothendieck().unwrap();
        let e = &p.total;
        // (φ, id) lies over φ with the identity of F(φ)(x') as its fiber part
        for f in 0..e.num_arrows() {
            let (_, fiber_part) = e.arrows[f].name.split_once('|').unwrap();
            let b = p.over(e.src(f));
            if d.values[b].arrow_by_name(fiber_part).is_some_and(|a| d.values[b].is_identity(a)) {
                assert!(is_cartesian(&p, f), "{}", e.arrows[f].name);
            }
        }
    }
}

#[test]
fn sections_of_product_projections_are_iso_diagrams() {
    // a cartesian section of B × C → B is a functor B → C inverting every
    // arrow; its arrows are natural transformations
    let b = FiniteCategory::ordinal(2);
    for c in pool() {
        let p = Fibration::product_projection(&b, &c).unwrap();
        let s = lim_cartesian_sections(&p).unwrap();
        let functors: Vec<Functor> =
            all_functors(&b, &c).into_iter().filter(|f| f.arrow_map.iter().all(|&a| c.is_iso(a))).collect();
        let mut transformations = 0;
        for f in &functors {
            for g in &functors {
                let hom = |x: usize| c.hom(f.object_map[x], g.object_map[x]).to_vec();
                for e0 in hom(0) {
                    for e1 in hom(1) {
                        for e2 in hom(2) {
                            let eta = [e0, e1, e2];
                            if (0..b.num_arrows()).all(|phi| {
                                c.comp(g.arrow_map[phi], eta[b.src(phi)]) == c.comp(eta[b.tgt(phi)], f.arrow_map[phi])
                            }) {
                                transformations += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!((s.category.num_objects(), s.category.num_arrows()), (functors.len(), transformations));
    }
}

#[test]
fn simplex_category_counts_strings() {
    // strings of k composable arrows in [2] are weakly decreasing words
    let b = FiniteCategory::ordinal(2);
    let s = simplex_category(&b, 3);
    for k in 0..=3 {
        let brute = (0..3usize.pow(k as u32 + 1))
            .filter(|&code| {
                let digits: Vec<usize> = (0..=k).map(|i| (code / 3usize.pow(i as u32)) % 3).collect();
                digits.windows(2).all(|w| w[0] >= w[1])
            })
            .count();
        assert_eq!(s.simplices.iter().filter(|a| a.dim() == k).count(), brute, "dimension {k}");
    }
}

#[test]
fn non_strict_data_is_rejected() {
    let b = FiniteCategory::ordinal(1);
    let values = vec![FiniteCategory::discrete(2), FiniteCategory::discrete(2)];
    let mut action: Vec<Functor> = (0..b.num_arrows()).map(|_| Functor::identity(&values[0])).collect();
    action[b.identities[0]] = Functor { object_map: vec![1, 0], arrow_map: vec![1, 0] };
    assert!(CatDiagram::new(b, values, action).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_strict_diagrams_pass(base in 0usize..7, code in 0usize..64, pick in 0usize..4) {
        let b = bases().swap_remove(base);
        let pool = pool();
        let n = b.num_objects();
        let values: Vec<FiniteCategory> = (0..n).map(|i| pool[(code >> (2 * i)) % pool.len()].clone()).collect();
        let diagrams = CatDiagram::enumerate(&b, &values, pick + 1);
        if let Some(d) = diagrams.last() {
            check_diagram(d);
        }
    }
}
