//! Free simplicial categories on simplicial graphs.

use std::collections::HashMap;

use super::{SimplicialCategory, SimplicialFunctor};
use crate::error::{Error, Result};
use crate::sset::{standard_simplex, SimplexRef, SimplicialMap, SimplicialSet};

/// A generating simplicial set attached to an ordered pair of objects.
/// With a basepoint, the simplices over it are identified with identities
/// (the source and target must then agree).
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub src: usize,
    pub tgt: usize,
    pub name: String,
    pub shape: SimplicialSet,
    pub basepoint: Option<u32>,
}

impl Generator {
    /// A free `m`-simplex from `src` to `tgt`.
    pub fn simplex(src: usize, tgt: usize, m: usize, name: impl Into<String>) -> Self {
        let shape = standard_simplex(m, m).expect("m ≤ m").set;
        Generator { src, tgt, name: name.into(), shape, basepoint: None }
    }

    /// A pointed simplicial set of endomorphisms of `obj`.
    pub fn pointed(obj: usize, shape: SimplicialSet, basepoint: u32, name: impl Into<String>) -> Self {
        Generator { src: obj, tgt: obj, name: name.into(), shape, basepoint: Some(basepoint) }
    }

    pub fn dim(&self) -> usize {
        (0..self.shape.num_cells() as u32).map(|c| self.shape.dim_of(c)).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialGraph {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
}

impl SimplicialGraph {
    pub fn new(objects: Vec<String>, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if g.src >= objects.len() || g.tgt >= objects.len() {
                return Err(Error::OutOfRange(format!("generator {} has an unknown end", g.name)));
            }
            if let Some(b) = g.basepoint {
                if g.src != g.tgt {
                    return Err(Error::Invalid(format!("pointed generator {} must be an endomorphism", g.name)));
                }
                if b as usize >= g.shape.num_cells() || g.shape.dim_of(b) != 0 {
                    return Err(Error::Invalid(format!("basepoint of {} is not a vertex", g.name)));
                }
            }
        }
        Ok(SimplicialGraph { objects, generators })
    }

    /// Objects `0..=n` named by number.
    pub fn numbered(n: usize, generators: Vec<Generator>) -> Result<Self> {
        SimplicialGraph::new((0..=n).map(|i| i.to_string()).collect(), generators)
    }

    fn has_cycle(&self) -> bool {
        let n = self.objects.len();
        let mut state = vec![0u8; n];
        fn visit(g: &SimplicialGraph, v: usize, state: &mut [u8]) -> bool {
            state[v] = 1;
            for e in g.generators.iter().filter(|e| e.src == v) {
                if state[e.tgt] == 1 || (state[e.tgt] == 0 && visit(g, e.tgt, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        (0..n).any(|v| state[v] == 0 && visit(self, v, &mut state))
    }
}

/// One letter of a word: a generator and a simplex of its shape.
pub type Letter = (usize, SimplexRef);

/// A free simplicial category with the word underlying every hom cell.
#[derive(Clone, Debug)]
pub struct FreeScat {
    pub category: SimplicialCategory,
    pub graph: SimplicialGraph,
    pub max_word_length: Option<usize>,
    /// Per hom pair `a * n + b`, the nondegenerate word of each cell.
    words: Vec<Vec<Vec<Letter>>>,
    index: Vec<HashMap<Vec<Letter>, u32>>,
}

/// Common degeneracy of a family of `k`-simplices: the joint surjection and
/// the section used to pull the components back.
fn joint(k: usize, surjs: &[&[u8]]) -> (Vec<u8>, Vec<usize>) {
    let mut sigma = vec![0u8; k + 1];
    for p in 0..k {
        let merged = surjs.iter().all(|s| s[p] == s[p + 1]);
        sigma[p + 1] = sigma[p] + u8::from(!merged);
    }
    let top = sigma[k] as usize;
    let section = (0..=top)
        .map(|v| sigma.iter().position(|&s| s as usize == v).expect("σ is surjective"))
        .collect();
    (sigma, section)
}

impl FreeScat {
    fn pair(&self, a: usize, b: usize) -> usize {
        a * self.graph.objects.len() + b
    }

    /// The word of a simplex of `Hom(a, b)`, letters in path order.
    pub fn word_of(&self, a: usize, b: usize, r: &SimplexRef) -> Vec<Letter> {
        word_of(&self.graph, &self.words[self.pair(a, b)], r)
    }

    /// The simplex of `Hom(a, b)` spelled by a word of `k`-simplices;
    /// letters over killed basepoints are dropped.
    pub fn simplex_of_word(&self, a: usize, b: usize, k: usize, word: &[Letter]) -> Option<SimplexRef> {
        let (sigma, nd) = normalize(&self.graph, k, word);
        let id = self.index[self.pair(a, b)].get(&nd)?;
        Some(SimplexRef { nd: *id, surj: sigma })
    }

    /// The simplex given by one generator's simplex.
    pub fn generator_simplex(&self, g: usize, x: &SimplexRef) -> SimplexRef {
        let e = &self.graph.generators[g];
        self.simplex_of_word(e.src, e.tgt, x.dim(), &[(g, x.clone())]).expect("generator simplices are materialized")
    }

    /// The top simplex of a generator shaped like a standard simplex.
    pub fn generator(&self, g: usize) -> SimplexRef {
        let shape = &self.graph.generators[g].shape;
        let top = shape.num_cells() as u32 - 1;
        self.generator_simplex(g, &SimplexRef::cell(top, shape.dim_of(top)))
    }

    pub fn nondegenerate_words(&self, a: usize, b: usize) -> &[Vec<Letter>] {
        &self.words[self.pair(a, b)]
    }

    /// The functor out of this free category sending every nondegenerate
    /// cell `x` of generator `g` to `image(g, x)`. Fails if the images are
    /// not compatible with faces or a composite is undefined in `tgt`.
    pub fn functor_from_generators(
        &self,
        tgt: &SimplicialCategory,
        object_map: Vec<usize>,
        image: impl Fn(usize, &SimplexRef) -> SimplexRef,
    ) -> Result<SimplicialFunctor> {
        let mut images: Vec<Vec<SimplexRef>> = Vec::with_capacity(self.graph.generators.len());
        for (g, e) in self.graph.generators.iter().enumerate() {
            let h = tgt.hom(object_map[e.src], object_map[e.tgt]);
            let mut im: Vec<SimplexRef> = Vec::with_capacity(e.shape.num_cells());
            for c in 0..e.shape.num_cells() as u32 {
                let r = e.shape.cell_ref(c);
                let v = if e.basepoint == Some(c) { tgt.identity_ref(object_map[e.src], 0) } else { image(g, &r) };
                h.check_ref(&v)?;
                if v.dim() != r.dim() {
                    return Err(Error::NotAMap(format!("image of a cell of {} has the wrong dimension", e.name)));
                }
                for (i, f) in e.shape.cell_faces(c).iter().enumerate() {
                    let theta: Vec<usize> = f.surj.iter().map(|&t| t as usize).collect();
                    if h.face(i, &v) != h.apply(&theta, &im[f.nd as usize]) {
                        return Err(Error::NotAMap(format!("images of {} do not commute with faces", e.name)));
                    }
                }
                im.push(v);
            }
            images.push(im);
        }
        let n = self.graph.objects.len();
        let mut hom_maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut assignment = Vec::new();
                for w in self.nondegenerate_words(a, b) {
                    let k = w.first().map_or(0, |(_, x)| x.dim());
                    let mut at = a;
                    let mut acc = tgt.identity_ref(object_map[a], k);
                    for (g, x) in w {
                        let e = &self.graph.generators[*g];
                        let theta: Vec<usize> = x.surj.iter().map(|&t| t as usize).collect();
                        let h = tgt.hom(object_map[e.src], object_map[e.tgt]);
                        let letter = h.apply(&theta, &images[*g][x.nd as usize]);
                        acc = tgt
                            .compose(object_map[a], object_map[at], object_map[e.tgt], &letter, &acc)
                            .ok_or_else(|| Error::NotAMap("composite undefined in the target".into()))?;
                        at = e.tgt;
                    }
                    assignment.push(acc);
                }
                hom_maps.push(SimplicialMap { assignment });
            }
        }
        Ok(SimplicialFunctor { object_map, hom_maps })
    }
}

fn word_of(graph: &SimplicialGraph, words: &[Vec<Letter>], r: &SimplexRef) -> Vec<Letter> {
    let theta: Vec<usize> = r.surj.iter().map(|&v| v as usize).collect();
    words[r.nd as usize].iter().map(|(g, x)| (*g, graph.generators[*g].shape.apply(&theta, x))).collect()
}

fn normalize(graph: &SimplicialGraph, k: usize, word: &[Letter]) -> (Vec<u8>, Vec<Letter>) {
    let live: Vec<&Letter> =
        word.iter().filter(|(g, x)| graph.generators[*g].basepoint != Some(x.nd)).collect();
    let surjs: Vec<&[u8]> = live.iter().map(|(_, x)| x.surj.as_slice()).collect();
    let (sigma, section) = joint(k, &surjs);
    let nd = live.iter().map(|(g, x)| (*g, graph.generators[*g].shape.apply(&section, x))).collect();
    (sigma, nd)
}

/// The free simplicial category on `graph`, materialized up to `cap`.
/// Graphs with oriented cycles need `max_word_length`; composites longer
/// than the bound are left undefined.
pub fn free_scat(graph: &SimplicialGraph, cap: usize, max_word_length: Option<usize>) -> Result<FreeScat> {
    if max_word_length.is_none() && graph.has_cycle() {
        return Err(Error::Invalid("a graph with cycles needs a word-length bound".into()));
    }
    let n = graph.objects.len();
    let mut graph = graph.clone();
    for g in &mut graph.generators {
        if g.shape.cap() != cap {
            g.shape = if g.shape.cap() > cap { g.shape.with_cap(cap) } else { rebuild_with_cap(&g.shape, cap) };
        }
    }
    let bound = max_word_length.unwrap_or(usize::MAX);
    let mut words = Vec::with_capacity(n * n);
    let mut index = Vec::with_capacity(n * n);
    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        let paths = paths_from(&graph, a, bound);
        for b in 0..n {
            let ps: Vec<&Vec<usize>> = paths.iter().filter(|p| end_of(&graph, a, p) == b).collect();
            let (set, w, idx) = build_hom(&graph, &ps, cap)?;
            homs.push(set);
            words.push(w);
            index.push(idx);
        }
    }
    let identities: Vec<u32> = (0..n)
        .map(|x| *index[x * n + x].get(&Vec::new()).expect("the empty word is a vertex"))
        .collect();
    let mut rows: Vec<Vec<SimplicialSet>> = Vec::with_capacity(n);
    let mut it = homs.into_iter();
    for _ in 0..n {
        rows.push(it.by_ref().take(n).collect());
    }
    let category = SimplicialCategory::from_rule(graph.objects.clone(), rows, identities, |a, b, c, g, f| {
        let mut w = word_of(&graph, &words[a * n + b], f);
        let wg = word_of(&graph, &words[b * n + c], g);
        if w.len() + wg.len() > bound {
            return None;
        }
        w.extend(wg);
        let (sigma, nd) = normalize(&graph, f.dim(), &w);
        Some(SimplexRef { nd: index[a * n + c][&nd], surj: sigma })
    })?;
    Ok(FreeScat { category, graph, max_word_length, words, index })
}


fn rebuild_with_cap(x: &SimplicialSet, cap: usize) -> SimplicialSet {
    let mut b = SimplicialSet::builder(cap);
    for c in 0..x.num_cells() as u32 {
        b.add_cell(x.cell_faces(c).to_vec()).expect("cells of a valid set");
    }
    b.finish()
}

fn end_of(graph: &SimplicialGraph, a: usize, path: &[usize]) -> usize {
    path.last().map_or(a, |&g| graph.generators[g].tgt)
}

fn paths_from(graph: &SimplicialGraph, a: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    while let Some(p) = frontier.pop() {
        if p.len() >= bound {
            continue;
        }
        let at = end_of(graph, a, &p);
        for (g, e) in graph.generators.iter().enumerate() {
            if e.src == at {
                let mut q = p.clone();
                q.push(g);
                out.push(q.clone());
                frontier.push(q);
            }
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

type HomData = (SimplicialSet, Vec<Vec<Letter>>, HashMap<Vec<Letter>, u32>);

fn build_hom(graph: &SimplicialGraph, paths: &[&Vec<usize>], cap: usize) -> Result<HomData> {
    let mut b = SimplicialSet::builder(cap);
    let mut words = Vec::new();
    let mut index = HashMap::new();
    for k in 0..=cap {
        for path in paths {
            if path.is_empty() && k > 0 {
                continue;
            }
            let choices: Vec<Vec<&SimplexRef>> = path
                .iter()
                .map(|&g| {
                    let e = &graph.generators[g];
                    e.shape.simplices(k).iter().filter(|x| e.basepoint != Some(x.nd)).collect()
                })
                .collect();
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            let mut pick = vec![0usize; path.len()];
            loop {
                let word: Vec<Letter> =
                    path.iter().zip(&pick).zip(&choices).map(|((&g, &i), c)| (g, c[i].clone())).collect();
                let surjs: Vec<&[u8]> = word.iter().map(|(_, x)| x.surj.as_slice()).collect();
                let (sigma, _) = joint(k, &surjs);
                if sigma[k] as usize == k {
                    let faces = (0..=k)
                        .filter(|_| k > 0)
                        .map(|i| {
                            let theta = crate::sset::mono::coface(k, i);
                            let fw: Vec<Letter> =
                                word.iter().map(|(g, x)| (*g, graph.generators[*g].shape.apply(&theta, x))).collect();
                            let (s, nd) = normalize(graph, k - 1, &fw);
                            SimplexRef { nd: index[&nd], surj: s }
                        })
                        .collect();
                    let id = b.add_cell(faces)?;
                    index.insert(word.clone(), id);
                    words.push(word);
                }
                if !advance(&mut pick, &choices) {
                    break;
                }
            }
        }
    }
    Ok((b.finish(), words, index))
}

fn advance(pick: &mut [usize], choices: &[Vec<&SimplexRef>]) -> bool {
    for t in (0..pick.len()).rev() {
        pick[t] += 1;
        if pick[t] < choices[t].len() {
            return true;
        }
        pick[t] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_zero_generator() {
        let g = SimplicialGraph::numbered(1, vec![Generator::simplex(0, 1, 0, "a")]).unwrap();
        let f = free_scat(&g, 2, None).unwrap();
        let c = &f.category;
        assert_eq!(c.hom(0, 1).nd_counts(), vec![1]);
        assert_eq!(c.hom(1, 0).nd_counts(), Vec::<usize>::new());
        assert_eq!(c.hom(0, 0).nd_counts(), vec![1]);
        c.check_axioms().unwrap();
    }

    #[test]
    fn standard_two_simplex_words() {
        let g = SimplicialGraph::numbered(2, vec![Generator::simplex(0, 1, 2, "f1"), Generator::simplex(1, 2, 2, "f2")])
            .unwrap();
        let f = free_scat(&g, 2, None).unwrap();
        let c = &f.category;
        c.check_axioms().unwrap();
        assert_eq!(c.hom(0, 2).count(2), 100);
        let f1 = f.generator(0);
        let f2 = f.generator(1);
        let w = c.compose(0, 1, 2, &f2, &f1).unwrap();
        let top = |g: usize| SimplexRef::cell(f.graph.generators[g].shape.num_cells() as u32 - 1, 2);
        assert_eq!(f.word_of(0, 2, &w), vec![(0, top(0)), (1, top(1))]);
    }

    #[test]
    fn cycles_need_a_bound() {
        let g = SimplicialGraph::numbered(0, vec![Generator::simplex(0, 0, 0, "x")]).unwrap();
        assert!(free_scat(&g, 1, None).is_err());
        let f = free_scat(&g, 1, Some(3)).unwrap();
        assert_eq!(f.category.hom(0, 0).nd_counts(), vec![4]);
        assert!(f.category.is_partial());
    }
}
