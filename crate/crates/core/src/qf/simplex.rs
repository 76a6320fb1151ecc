//! The category `Δ^op/B` of strings in `B`, truncated at a top dimension.

use std::collections::HashMap;

use crate::fincat::FiniteCategory;
use crate::sset::mono;

/// A functor `α : [n]^op → B`: objects `α(0), …, α(n)` and arrows
/// `arrows[i] : α(i+1) → α(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexOverB {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl SimplexOverB {
    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    /// `α(j → i) : α(j) → α(i)` for `i ≤ j`.
    pub fn arrow(&self, b: &FiniteCategory, i: usize, j: usize) -> usize {
        (i..j).rev().fold(b.identities[self.objects[j]], |acc, k| b.comp(self.arrows[k], acc))
    }

    /// `α ∘ u^op` for monotone `u : [m] → [n]`.
    pub fn pull(&self, b: &FiniteCategory, u: &[usize]) -> SimplexOverB {
        SimplexOverB {
            objects: u.iter().map(|&k| self.objects[k]).collect(),
            arrows: u.windows(2).map(|w| self.arrow(b, w[0], w[1])).collect(),
        }
    }
}

/// `u : β → α` in `Δ^op/B`, with `β = α ∘ u^op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexMorphism {
    pub src: usize,
    pub tgt: usize,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SimplexCategory {
    pub n_cap: usize,
    pub simplices: Vec<SimplexOverB>,
    pub morphisms: Vec<SimplexMorphism>,
    index: HashMap<SimplexOverB, usize>,
    by_pair: HashMap<(usize, usize, Vec<usize>), usize>,
    incoming: Vec<Vec<usize>>,
}

impl SimplexCategory {
    pub fn index_of(&self, s: &SimplexOverB) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// The morphism `src → tgt` given by `map`, if `src` is the pullback of
    /// `tgt` along it.
    pub fn morphism(&self, src: usize, tgt: usize, map: &[usize]) -> Option<usize> {
        self.by_pair.get(&(src, tgt, map.to_vec())).copied()
    }

    /// The morphisms into `α`.
    pub fn incoming(&self, alpha: usize) -> &[usize] {
        &self.incoming[alpha]
    }

    /// `u ∘ v`, for `v : γ → β` and `u : β → α`.
    pub fn compose(&self, u: usize, v: usize) -> usize {
        let (mu, mv) = (&self.morphisms[u], &self.morphisms[v]);
        assert_eq!(mv.tgt, mu.src, "morphisms are not composable");
        let map = mono::compose(&mu.map, &mv.map);
        self.by_pair[&(mv.src, mu.tgt, map)]
    }
}

/// All strings of dimension at most `n_cap` and the monotone maps between
/// them.
pub fn simplex_category(b: &FiniteCategory, n_cap: usize) -> SimplexCategory {
    let mut simplices: Vec<SimplexOverB> =
        (0..b.num_objects()).map(|x| SimplexOverB { objects: vec![x], arrows: vec![] }).collect();
    let mut layer = simplices.clone();
    for _ in 0..n_cap {
        let mut next = Vec::new();
        for s in &layer {
            let top = *s.objects.last().expect("nonempty string");
            for f in (0..b.num_arrows()).filter(|&f| b.tgt(f) == top) {
                let mut t = s.clone();
                t.objects.push(b.src(f));
                t.arrows.push(f);
                next.push(t);
            }
        }
        simplices.extend(next.iter().cloned());
        layer = next;
    }
    let index: HashMap<SimplexOverB, usize> = simplices.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
    let mut morphisms = Vec::new();
    let mut by_pair = HashMap::new();
    let mut incoming = vec![Vec::new(); simplices.len()];
    for (src, beta) in simplices.iter().enumerate() {
        for (tgt, alpha) in simplices.iter().enumerate() {
            for u in mono::all_monotone(beta.dim(), alpha.dim()) {
                if &alpha.pull(b, &u) == beta {
                    by_pair.insert((src, tgt, u.clone()), morphisms.len());
                    incoming[tgt].push(morphisms.len());
                    morphisms.push(SimplexMorphism { src, tgt, map: u });
                }
            }
        }
    }
    SimplexCategory { n_cap, simplices, morphisms, index, by_pair, incoming }
}
