use serde_json::json;

use super::{Claim, Scenario};
use crate::error::Result;
use crate::fincat::FiniteCategory;
use crate::scat::{free_scat, pi0_category, FreeScat, Generator, SimplicialCategory, SimplicialFunctor, SimplicialGraph};
use crate::sset::{mono, standard_simplex, SimplexRef};

/// `SC(Λ^2_0)` on `u01, u02`, the triangle `SC^2` on `v01, v12`, and the
/// contractible groupoid `D` on three objects.
#[derive(Clone, Debug)]
pub struct GapInput {
    pub horn: FreeScat,
    pub triangle: FreeScat,
    pub d: SimplicialCategory,
}

pub fn gap_input() -> Result<GapInput> {
    let cap = 2;
    let horn = SimplicialGraph::numbered(2, vec![Generator::simplex(0, 1, 1, "u01"), Generator::simplex(0, 2, 1, "u02")])?;
    let triangle =
        SimplicialGraph::numbered(2, vec![Generator::simplex(0, 1, 2, "v01"), Generator::simplex(1, 2, 2, "v12")])?;
    Ok(GapInput {
        horn: free_scat(&horn, cap, None)?,
        triangle: free_scat(&triangle, cap, None)?,
        d: SimplicialCategory::discrete(&FiniteCategory::contractible_groupoid(3), cap),
    })
}

impl GapInput {
    /// The inclusion `u01 ↦ d_2 v01`, `u02 ↦ d_1 v12 ∘ d_1 v01`.
    pub fn embedding(&self) -> Result<SimplicialFunctor> {
        let t = &self.triangle;
        let c = &t.category;
        let (v01, v12) = (t.generator(0), t.generator(1));
        let u01 = c.hom(0, 1).face(2, &v01);
        let u02 = c
            .compose(0, 1, 2, &c.hom(1, 2).face(1, &v12), &c.hom(0, 1).face(1, &v01))
            .expect("SC^2 composes");
        let edge = standard_simplex(1, c.cap())?;
        let top = [(0, 1, u01), (0, 2, u02)];
        self.horn.functor_from_generators(c, vec![0, 1, 2], |g, r| {
            let (a, b, x) = &top[g];
            c.hom(*a, *b).apply(&edge.chain_of(r), x)
        })
    }

    /// The unique functor `SC^2 → D`, sending each generator to the
    /// degenerate simplex on the arrow between its ends.
    pub fn to_d(&self) -> Result<SimplicialFunctor> {
        let d = &self.d;
        self.triangle.functor_from_generators(d, vec![0, 1, 2], |g, r| {
            let e = &self.triangle.graph.generators[g];
            let vertex = d.hom(e.src, e.tgt).simplices(0)[0].clone();
            d.hom(e.src, e.tgt).apply(&vec![0; r.dim() + 1], &vertex)
        })
    }
}

/// The `0`-simplices `g` of `Hom(1, 2)` with `g ∘ x = y`.
fn factors(c: &SimplicialCategory, x: &SimplexRef, y: &SimplexRef) -> usize {
    c.hom(1, 2).simplices(0).iter().filter(|g| c.compose(0, 1, 2, g, x).as_ref() == Some(y)).count()
}

/// The finite part of the classical-nerve counterexample: on the free
/// stage, `d_1 u02` does not factor through `d_1 u01`, while its image in
/// `SC^2` does.
pub fn scenario_standard_nerve_gap() -> Result<Scenario> {
    let input = gap_input()?;
    let (h, t) = (&input.horn, &input.triangle);
    let (hc, tc) = (&h.category, &t.category);
    let mut claims = Vec::new();

    let embedding = input.embedding();
    claims.push(Claim::new("SC(Λ^2_0) → SC^2 is a functor", true, embedding.as_ref().is_ok_and(|f| f.validate(hc, tc).is_ok())));
    let to_d = input.to_d()?;
    to_d.validate(tc, &input.d)?;

    let d1u01 = hc.hom(0, 1).face(1, &h.generator(0));
    let d1u02 = hc.hom(0, 2).face(1, &h.generator(1));
    claims.push(Claim::new("word length of d_1 u02", 1, h.word_of(0, 2, &d1u02).len()));
    claims.push(Claim::new("factorizations of d_1 u02 through d_1 u01 in SC(Λ^2_0)", 0, factors(hc, &d1u01, &d1u02)));
    if let Ok(e) = &embedding {
        let (x, y) = (e.apply(hc, tc, 0, 1, &d1u01), e.apply(hc, tc, 0, 2, &d1u02));
        claims.push(Claim::new("factorizations of their images in SC^2", 1, factors(tc, &x, &y)));
    }

    // every simplex of Hom(0, 2) in SC^2 is a word v12·v01 of two letters,
    // so the hom is Δ^2 × Δ^2
    let words = t.nondegenerate_words(0, 2);
    let two_letter = words.iter().all(|w| w.len() == 2 && w[0].0 == 0 && w[1].0 == 1);
    claims.push(Claim::new("Hom(0,2) of SC^2 consists of words v12·v01", true, two_letter));
    let simplices = mono::all_monotone(2, 2).len();
    claims.push(Claim::new("|Hom(0,2)_2| in SC^2", simplices * simplices, tc.hom(0, 2).count(2)));

    let pi0 = pi0_category(&input.d)?.category;
    let contractible = pi0.is_groupoid()
        && (0..3).all(|a| (0..3).all(|b| pi0.hom(a, b).len() == 1))
        && pi0.num_objects() == 3;
    claims.push(Claim::new("π0(D) is the contractible groupoid on 3 objects", true, contractible));

    let witnesses = json!({
        "d1_u02_word": h.word_of(0, 2, &d1u02).iter().map(|(g, _)| h.graph.generators[*g].name.clone()).collect::<Vec<_>>(),
        "hom_1_2_in_horn": hc.hom(1, 2).count(0),
        "triangle_hom_0_2_counts": (0..=2).map(|k| tc.hom(0, 2).count(k)).collect::<Vec<_>>(),
    });
    Ok(Scenario {
        name: "standard-nerve-gap".into(),
        inputs: json!({
            "horn_generators": ["u01: 0 → 1, dim 1", "u02: 0 → 2, dim 1"],
            "triangle_generators": ["v01: 0 → 1, dim 2", "v12: 1 → 2, dim 2"],
            "D": FiniteCategory::contractible_groupoid(3).to_json(),
        }),
        claims,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_claims_hold() {
        let s = scenario_standard_nerve_gap().unwrap();
        assert!(s.passed(), "{}", s.summary());
    }

    #[test]
    fn composite_to_d_exists() {
        let input = gap_input().unwrap();
        let e = input.embedding().unwrap();
        let g = input.to_d().unwrap();
        e.then(&g, &input.triangle.category, &input.d).validate(&input.horn.category, &input.d).unwrap();
    }
}
