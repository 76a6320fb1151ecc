//! The free cosimplicial simplicial categories `SC^•` and `Δ_W̄^•`, and the
//! maps `τ : Δ_N^• → Δ_W̄^•`, `π : Δ_W̄^• → SC^•`.

use super::delta_n::DeltaN;
use crate::error::{Error, Result};
use crate::scat::free::{free_scat, FreeScat, Generator, Letter, SimplicialGraph};
use crate::scat::SimplicialFunctor;
use crate::sset::mono::{self, Elementary};
use crate::sset::{standard_simplex, PosetNerve, SimplexRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `SC^n`: generators `f_i : i-1 → i` of dimension `n`.
    Standard,
    /// `Δ_W̄^n`: generators `g_i : i-1 → i` of dimension `n - i`.
    Wbar,
}

/// One member of a free cosimplicial family.
#[derive(Clone, Debug)]
pub struct FreeModel {
    pub kind: ModelKind,
    pub n: usize,
    pub free: FreeScat,
    /// The standard simplex shaping each generator, for chain lookups.
    shapes: Vec<PosetNerve>,
}

impl FreeModel {
    pub fn new(kind: ModelKind, n: usize, cap: usize) -> Result<Self> {
        let dims: Vec<usize> = (1..=n)
            .map(|i| match kind {
                ModelKind::Standard => n,
                ModelKind::Wbar => n - i,
            })
            .collect();
        let prefix = match kind {
            ModelKind::Standard => "f",
            ModelKind::Wbar => "g",
        };
        let gens = dims.iter().enumerate().map(|(k, &m)| Generator::simplex(k, k + 1, m, format!("{prefix}{}", k + 1)));
        let graph = SimplicialGraph::numbered(n, gens.collect())?;
        let free = free_scat(&graph, cap, None)?;
        let shapes = dims.iter().map(|&m| standard_simplex(m, m.max(cap)).expect("m ≤ cap")).collect();
        Ok(FreeModel { kind, n, free, shapes })
    }

    pub fn cap(&self) -> usize {
        self.free.category.cap()
    }

    /// Dimension of generator `i` (1-based).
    pub fn generator_dim(&self, i: usize) -> usize {
        self.shapes[i - 1].poset.len() - 1
    }

    /// The letter of generator `i` (1-based) at the simplex with the given
    /// vertex chain.
    pub fn letter(&self, i: usize, chain: &[usize]) -> Letter {
        (i - 1, self.shapes[i - 1].simplex_of_chain(chain).expect("chains of a standard simplex"))
    }

    /// The vertex chain of a simplex of generator `i`'s shape.
    pub fn chain_of(&self, i: usize, x: &SimplexRef) -> Vec<usize> {
        self.shapes[i - 1].chain_of(x)
    }

    /// The simplex of `Hom(a, b)` spelled by letters; `a` for the empty word.
    pub fn word(&self, a: usize, b: usize, k: usize, letters: &[Letter]) -> SimplexRef {
        if letters.is_empty() {
            return self.free.category.identity_ref(a, k);
        }
        self.free.simplex_of_word(a, b, k, letters).expect("words over the path a → b are materialized")
    }
}

/// The members `0..=max_n` of a family, all truncated at one cap.
#[derive(Clone, Debug)]
pub struct Family {
    pub kind: ModelKind,
    pub members: Vec<FreeModel>,
}

impl Family {
    pub fn new(kind: ModelKind, max_n: usize, cap: usize) -> Result<Self> {
        let members = (0..=max_n).map(|n| FreeModel::new(kind, n, cap)).collect::<Result<_>>()?;
        Ok(Family { kind, members })
    }

    pub fn member(&self, n: usize) -> &FreeModel {
        &self.members[n]
    }

    /// The functor induced by an elementary coface or codegeneracy.
    pub fn elementary(&self, e: Elementary) -> Result<SimplicialFunctor> {
        let (src, tgt, obj) = match e {
            Elementary::Coface(n, i) => (n - 1, n, mono::coface(n, i)),
            Elementary::Codegeneracy(n, i) => (n + 1, n, mono::codegeneracy(n, i)),
        };
        let (s, t) = (self.member(src), self.member(tgt));
        let image = |g: usize, x: &SimplexRef| -> SimplexRef {
            let j = g + 1;
            let c = s.chain_of(j, x);
            let k = c.len() - 1;
            let (a, b) = (obj[j - 1], obj[j]);
            let letters: Vec<Letter> = match (self.kind, e) {
                (ModelKind::Standard, _) => (a + 1..=b).map(|i| t.letter(i, &mono::compose(&obj, &c))).collect(),
                (ModelKind::Wbar, Elementary::Coface(n, d)) => {
                    if j < d {
                        vec![t.letter(j, &mono::compose(&mono::coface(n - j, d - j), &c))]
                    } else if j == d {
                        vec![t.letter(d, &mono::compose(&mono::coface(n - d, 0), &c)), t.letter(d + 1, &c)]
                    } else {
                        vec![t.letter(j + 1, &c)]
                    }
                }
                (ModelKind::Wbar, Elementary::Codegeneracy(n, i)) => {
                    if j <= i {
                        vec![t.letter(j, &mono::compose(&mono::codegeneracy(n - j, i - j), &c))]
                    } else if j == i + 1 {
                        Vec::new()
                    } else {
                        vec![t.letter(j - 1, &c)]
                    }
                }
            };
            t.word(a, b, k, &letters)
        };
        s.free.functor_from_generators(&t.free.category, obj.clone(), image)
    }

    /// The functor induced by a monotone `f : [m] → [n]`, composed from its
    /// elementary decomposition.
    pub fn action(&self, f: &[usize], n: usize) -> Result<SimplicialFunctor> {
        mono::check_monotone(f, n)?;
        let m = f.len() - 1;
        if m >= self.members.len() || n >= self.members.len() {
            return Err(Error::OutOfRange(format!("family has members up to {}", self.members.len() - 1)));
        }
        let mut acc = SimplicialFunctor::identity(&self.member(m).free.category);
        let mut at = m;
        for e in mono::elementary_decomposition(f, n) {
            let step = self.elementary(e)?;
            let next = match e {
                Elementary::Coface(t, _) | Elementary::Codegeneracy(t, _) => t,
            };
            acc = acc.then(&step, &self.member(at).free.category, &self.member(next).free.category);
            at = next;
        }
        Ok(acc)
    }

    /// For `SC^•` only: the action of `f` computed in one step,
    /// `f_j ↦ f^*(f_{f(j)} ⋯ f_{f(j-1)+1})`.
    pub fn standard_action_direct(&self, f: &[usize], n: usize) -> Result<SimplicialFunctor> {
        if self.kind != ModelKind::Standard {
            return Err(Error::Invalid("the direct formula is for SC".into()));
        }
        mono::check_monotone(f, n)?;
        let (s, t) = (self.member(f.len() - 1), self.member(n));
        s.free.functor_from_generators(&t.free.category, f.to_vec(), |g, x| {
            let c = s.chain_of(g + 1, x);
            let (a, b) = (f[g], f[g + 1]);
            let letters: Vec<Letter> = (a + 1..=b).map(|i| t.letter(i, &mono::compose(f, &c))).collect();
            t.word(a, b, c.len() - 1, &letters)
        })
    }
}

/// The vertex tuple `τ(v)` of `Hom_W̄(a, b)` for the vertex of
/// `Hom_N(a, b)` with zero set `zeros`: generator `g_j` sits at vertex
/// `min{z ∈ zeros ∪ {b} : z ≥ j} - j`.
pub fn tau_vertex(a: usize, b: usize, zeros: &[usize]) -> Vec<usize> {
    (a + 1..=b)
        .map(|j| zeros.iter().copied().chain([b]).filter(|&z| z >= j).min().expect("b ≥ j") - j)
        .collect()
}

/// `τ : Δ_N^n → Δ_W̄^n`, chainwise on the vertex formula. Fails if the
/// vertex map is not monotone.
pub fn tau(d: &DeltaN, w: &FreeModel) -> Result<SimplicialFunctor> {
    if w.kind != ModelKind::Wbar || w.n != d.n {
        return Err(Error::Invalid("τ goes from Δ_N^n to Δ_W̄^n".into()));
    }
    let objs = d.n + 1;
    let mut hom_maps = Vec::with_capacity(objs * objs);
    for a in 0..objs {
        for b in 0..objs {
            let mut assignment = Vec::new();
            if a <= b {
                let c = d.cube(a, b).expect("a ≤ b");
                for (id, chain) in c.nerve.chains.iter().enumerate() {
                    let k = chain.len() - 1;
                    let tuples: Vec<Vec<usize>> = chain.iter().map(|&m| tau_vertex(a, b, &d.zeros(a, b, m))).collect();
                    for p in 1..tuples.len() {
                        if tuples[p - 1].iter().zip(&tuples[p]).any(|(x, y)| x > y) {
                            return Err(Error::Monotonicity(format!(
                                "τ is not monotone on the cell {id} of Hom({a},{b})"
                            )));
                        }
                    }
                    let letters: Vec<Letter> = (a + 1..=b)
                        .map(|j| w.letter(j, &tuples.iter().map(|t| t[j - a - 1]).collect::<Vec<_>>()))
                        .collect();
                    assignment.push(w.word(a, b, k, &letters));
                }
            }
            hom_maps.push(crate::sset::SimplicialMap { assignment });
        }
    }
    Ok(SimplicialFunctor { object_map: (0..objs).collect(), hom_maps })
}

/// `π : Δ_W̄^n → SC^n`, `g_i ↦ d_0^i f_i`.
pub fn pi_map(w: &FreeModel, s: &FreeModel) -> Result<SimplicialFunctor> {
    if w.kind != ModelKind::Wbar || s.kind != ModelKind::Standard || w.n != s.n {
        return Err(Error::Invalid("π goes from Δ_W̄^n to SC^n".into()));
    }
    w.free.functor_from_generators(&s.free.category, (0..=w.n).collect(), |g, x| {
        let i = g + 1;
        let c: Vec<usize> = w.chain_of(i, x).iter().map(|&v| v + i).collect();
        s.word(i - 1, i, c.len() - 1, &[s.letter(i, &c)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::delta_n::delta_n;

    #[test]
    fn generators_and_homs() {
        let w2 = FreeModel::new(ModelKind::Wbar, 2, 2).unwrap();
        assert_eq!(w2.free.category.hom(0, 1).nd_counts(), vec![2, 1]);
        assert_eq!(w2.free.category.hom(0, 2).nd_counts(), vec![2, 1]);
        let s2 = FreeModel::new(ModelKind::Standard, 2, 2).unwrap();
        assert_eq!(s2.free.category.hom(0, 2).count(2), 100);
    }

    #[test]
    fn tau_on_phi() {
        let (d1, w1) = (delta_n(1, 1), FreeModel::new(ModelKind::Wbar, 1, 1).unwrap());
        let t1 = tau(&d1, &w1).unwrap();
        assert_eq!(t1.apply(&d1.category, &w1.free.category, 0, 1, &d1.phi(0, 1)), w1.free.generator(0));
        let (d2, w2) = (delta_n(2, 2), FreeModel::new(ModelKind::Wbar, 2, 2).unwrap());
        let t2 = tau(&d2, &w2).unwrap();
        t2.validate(&d2.category, &w2.free.category).unwrap();
        // ψ(0,2) = g_2 · d_0 g_1
        let want = w2.word(0, 2, 0, &[w2.letter(1, &[1]), w2.letter(2, &[0])]);
        assert_eq!(t2.apply(&d2.category, &w2.free.category, 0, 2, &d2.phi(0, 2)), want);
    }

    #[test]
    fn pi_on_generators() {
        let (w2, s2) = (FreeModel::new(ModelKind::Wbar, 2, 2).unwrap(), FreeModel::new(ModelKind::Standard, 2, 2).unwrap());
        let p = pi_map(&w2, &s2).unwrap();
        p.validate(&w2.free.category, &s2.free.category).unwrap();
        let g1 = w2.free.generator(0);
        assert_eq!(p.apply(&w2.free.category, &s2.free.category, 0, 1, &g1), s2.word(0, 1, 1, &[s2.letter(1, &[1, 2])]));
        let g2 = w2.free.generator(1);
        assert_eq!(p.apply(&w2.free.category, &s2.free.category, 1, 2, &g2), s2.word(1, 2, 0, &[s2.letter(2, &[2])]));
    }

    #[test]
    fn psi_composites_lie_strictly_below() {
        for n in 2..=5 {
            for a in 0..=n {
                for b in a + 1..=n {
                    for c in b + 1..=n {
                        let (comp, phi) = (tau_vertex(a, c, &[b]), tau_vertex(a, c, &[]));
                        assert!(comp.iter().zip(&phi).all(|(x, y)| x <= y) && comp != phi, "({a},{b},{c})");
                    }
                }
            }
        }
    }
}
