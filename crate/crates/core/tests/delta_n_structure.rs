use std::collections::{BTreeSet, HashMap};

use nervelab::models::{cosimplicial_action, delta_n, delta_n_of_subcomplex, horn_image, ind_generators, DeltaN};
use nervelab::sset::{horn, mono, PosetNerve, SimplexRef};

/// Per pair `(a, b)`, the simplices of `Δ_N(S)(a, b)` up to the cap,
/// computed as the composition closure of the images of the face functors
/// `Δ_N^m → Δ_N^n` of the simplices of `S`.
fn image_closure(d: &DeltaN, s: &PosetNerve) -> Vec<BTreeSet<SimplexRef>> {
    let objs = d.n + 1;
    let cap = d.category.cap();
    let mut sets = vec![BTreeSet::new(); objs * objs];
    for chain in &s.chains {
        let m = chain.len() - 1;
        let dm = delta_n(m, cap);
        let f = cosimplicial_action(&dm, d, chain).unwrap();
        for a in 0..=m {
            for b in a..=m {
                for k in 0..=cap {
                    for r in dm.category.hom(a, b).simplices(k) {
                        sets[chain[a] * objs + chain[b]].insert(f.apply(&dm.category, &d.category, a, b, r));
                    }
                }
            }
        }
    }
    loop {
        let mut grew = false;
        for a in 0..objs {
            for b in a..objs {
                for c in b..objs {
                    let (fs, gs) = (sets[a * objs + b].clone(), sets[b * objs + c].clone());
                    for f in &fs {
                        for g in gs.iter().filter(|g| g.dim() == f.dim()) {
                            let h = d.category.compose(a, b, c, g, f).unwrap();
                            grew |= sets[a * objs + c].insert(h);
                        }
                    }
                }
            }
        }
        if !grew {
            return sets;
        }
    }
}

#[test]
fn subcomplex_images_match_face_closure() {
    for n in 1usize..=4 {
        let cap = n.saturating_sub(1).max(1);
        let d = delta_n(n, cap);
        for i in 0..=n {
            let h = horn(n, i, cap.max(n)).unwrap();
            let oracle = image_closure(&d, &h);
            let sub = delta_n_of_subcomplex(&d, &h).unwrap();
            for a in 0..=n {
                for b in a..=n {
                    let hom = d.category.hom(a, b);
                    let cells: BTreeSet<u32> = oracle[a * (n + 1) + b].iter().map(|r| r.nd).collect();
                    let mask: BTreeSet<u32> =
                        (0..hom.num_cells() as u32).filter(|&c| sub.masks[a * (n + 1) + b][c as usize]).collect();
                    assert_eq!(cells, mask, "Λ^{n}_{i} at ({a},{b})");
                    let img = horn_image(n, i, a, b).unwrap();
                    let cube = d.cube(a, b).unwrap();
                    let by_chain: BTreeSet<u32> =
                        img.cells.iter().map(|ch| cube.nerve.simplex_of_chain(ch).unwrap().nd).collect();
                    assert_eq!(by_chain, mask, "horn_image({n},{i},{a},{b})");
                }
            }
        }
    }
}

/// Level by level, every non-identity arrow of `Δ_N^n` has exactly one
/// factorization as a composite of degeneracies of Ind generators.
#[test]
fn delta_n_is_free_on_ind() {
    for n in 1usize..=3 {
        let cap = n.saturating_sub(1).max(1);
        let d = delta_n(n, cap);
        let objs = n + 1;
        let ind = ind_generators(&d);
        for k in 0..=cap {
            let mut gens: Vec<BTreeSet<SimplexRef>> = vec![BTreeSet::new(); objs * objs];
            for g in &ind {
                let m = g.simplex.dim();
                for theta in mono::surjections(k, m) {
                    gens[g.a * objs + g.b].insert(d.category.hom(g.a, g.b).apply(&theta, &g.simplex));
                }
            }
            // factorizations[a][c][x] by length of the span, shortest first
            let mut count: HashMap<(usize, usize, SimplexRef), usize> = HashMap::new();
            for len in 1..=n {
                for a in 0..objs - len {
                    let c = a + len;
                    for x in d.category.hom(a, c).simplices(k) {
                        let mut total = usize::from(gens[a * objs + c].contains(x));
                        for b in a + 1..c {
                            for y in d.category.hom(a, b).simplices(k) {
                                for g in &gens[b * objs + c] {
                                    if d.category.compose(a, b, c, g, y).as_ref() == Some(x) {
                                        total += count[&(a, b, y.clone())];
                                    }
                                }
                            }
                        }
                        count.insert((a, c, x.clone()), total);
                    }
                }
            }
            for ((a, c, x), total) in &count {
                assert_eq!(*total, 1, "{x:?} in Hom({a},{c}) at level {k} of Δ_N^{n}");
            }
        }
    }
}
