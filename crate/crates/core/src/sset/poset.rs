//! Nerves of finite posets and face-closed sets of chains in them.

use std::collections::HashMap;

use super::{SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from the reflexive-transitive closure of `relations`.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::OutOfRange(format!("relation ({a},{b})")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Invalid(format!("relation is not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// Wraps an explicit order relation, checking the axioms.
    pub fn from_matrix(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("order matrix has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::Invalid(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Invalid(format!("not antisymmetric at ({i},{j})")));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::Invalid(format!("not transitive at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// The total order `0 < 1 < ... < n`.
    pub fn ordinal(n: usize) -> Self {
        let size = n + 1;
        Poset {
            labels: (0..size).map(|i| i.to_string()).collect(),
            leq: (0..size).map(|i| (0..size).map(|j| i <= j).collect()).collect(),
        }
    }

    pub fn antichain(n: usize) -> Self {
        Poset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            leq: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
        }
    }

    /// `{0,1}^d` ordered coordinatewise; element `m` is the bitmask `m`.
    pub fn boolean(d: usize) -> Self {
        let size = 1usize << d;
        Poset {
            labels: (0..size).map(|m| bits_label(m, d)).collect(),
            leq: (0..size).map(|i| (0..size).map(|j| i & !j == 0).collect()).collect(),
        }
    }

    pub fn product(&self, other: &Poset) -> Poset {
        let (n, m) = (self.len(), other.len());
        let mut labels = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
            }
        }
        let leq = (0..n * m)
            .map(|i| {
                (0..n * m)
                    .map(|j| self.leq[i / m][j / m] && other.leq[i % m][j % m])
                    .collect()
            })
            .collect();
        Poset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Strictly increasing chains with `len` elements, lexicographic.
    pub fn strict_chains(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        self.extend_chains(len, &mut cur, &mut out);
        out
    }

    fn extend_chains(&self, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..self.len() {
            if cur.last().is_none_or(|&p| self.lt(p, x)) {
                cur.push(x);
                self.extend_chains(len, cur, out);
                cur.pop();
            }
        }
    }
}

fn bits_label(m: usize, d: usize) -> String {
    (0..d).map(|t| if m >> t & 1 == 1 { '1' } else { '0' }).collect()
}

/// The nerve of a poset, or a face-closed family of its strict chains.
#[derive(Clone, Debug)]
pub struct PosetNerve {
    pub poset: Poset,
    /// Strict chain of each nondegenerate cell, indexed by cell id.
    pub chains: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, u32>,
    pub set: SimplicialSet,
}

impl PosetNerve {
    fn from_chains(poset: Poset, chains: Vec<Vec<usize>>, cap: usize) -> Self {
        let index: HashMap<Vec<usize>, u32> =
            chains.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        let mut b = SimplicialSet::builder(cap);
        for c in &chains {
            let faces = if c.len() == 1 {
                Vec::new()
            } else {
                (0..c.len())
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        SimplexRef::cell(index[&f], f.len() - 1)
                    })
                    .collect()
            };
            b.add_cell(faces).expect("chain faces satisfy the simplicial identities");
        }
        PosetNerve { poset, chains, index, set: b.finish() }
    }

    /// Full nerve truncated at `cap`.
    pub fn new(poset: Poset, cap: usize) -> Self {
        let mut chains = Vec::new();
        for len in 1..=cap + 1 {
            let level = poset.strict_chains(len);
            if level.is_empty() {
                break;
            }
            chains.extend(level);
        }
        PosetNerve::from_chains(poset, chains, cap)
    }

    /// The cells whose chains satisfy `keep`; fails unless face-closed.
    pub fn restrict(&self, keep: impl Fn(&[usize]) -> bool) -> Result<PosetNerve> {
        let mask: Vec<bool> = self.chains.iter().map(|c| keep(c)).collect();
        self.set.restrict(&mask)?;
        let chains = self
            .chains
            .iter()
            .zip(&mask)
            .filter(|(_, &k)| k)
            .map(|(c, _)| c.clone())
            .collect();
        Ok(PosetNerve::from_chains(self.poset.clone(), chains, self.set.cap()))
    }

    pub fn cap(&self) -> usize {
        self.set.cap()
    }

    /// The weakly increasing chain of a simplex.
    pub fn chain_of(&self, r: &SimplexRef) -> Vec<usize> {
        let c = &self.chains[r.nd as usize];
        r.surj.iter().map(|&v| c[v as usize]).collect()
    }

    /// The simplex with the given weakly increasing chain, if present.
    pub fn simplex_of_chain(&self, chain: &[usize]) -> Option<SimplexRef> {
        let mut nd_chain: Vec<usize> = Vec::with_capacity(chain.len());
        let mut surj = Vec::with_capacity(chain.len());
        for (p, &x) in chain.iter().enumerate() {
            if p > 0 && !self.poset.leq(chain[p - 1], x) {
                return None;
            }
            if nd_chain.last() != Some(&x) {
                nd_chain.push(x);
            }
            surj.push((nd_chain.len() - 1) as u8);
        }
        self.index.get(&nd_chain).map(|&nd| SimplexRef { nd, surj })
    }

    /// Whether the chain lies in this family.
    pub fn contains_chain(&self, chain: &[usize]) -> bool {
        self.simplex_of_chain(chain).is_some()
    }

    /// The map induced by an order-preserving vertex map into `target`.
    pub fn map_by_vertices(
        &self,
        target: &PosetNerve,
        f: impl Fn(usize) -> usize,
    ) -> Result<SimplicialMap> {
        let mut assignment = Vec::with_capacity(self.chains.len());
        for c in &self.chains {
            let img: Vec<usize> = c.iter().map(|&x| f(x)).collect();
            let r = target.simplex_of_chain(&img).ok_or_else(|| {
                if img.windows(2).all(|w| target.poset.leq(w[0], w[1])) {
                    Error::NotAMap(format!("chain {img:?} is not in the target"))
                } else {
                    Error::Monotonicity(format!("{c:?} maps to non-monotone {img:?}"))
                }
            })?;
            assignment.push(r);
        }
        Ok(SimplicialMap { assignment })
    }

    /// The inclusion into an ambient family over the same poset.
    pub fn inclusion_into(&self, ambient: &PosetNerve) -> Result<SimplicialMap> {
        self.map_by_vertices(ambient, |x| x)
    }

    /// The cells of this family as a mask over the cells of `ambient`.
    pub fn mask_in(&self, ambient: &PosetNerve) -> Vec<bool> {
        ambient.chains.iter().map(|c| self.index.contains_key(c)).collect()
    }
}

pub fn nerve_of_poset(p: Poset, cap: usize) -> PosetNerve {
    PosetNerve::new(p, cap)
}

pub fn standard_simplex(n: usize, cap: usize) -> Result<PosetNerve> {
    if n > cap {
        return Err(Error::CapTooSmall { needed: n, cap });
    }
    Ok(PosetNerve::new(Poset::ordinal(n), cap))
}

/// `∂Δ^n`, all proper faces.
pub fn boundary_subcomplex(n: usize, cap: usize) -> Result<PosetNerve> {
    let full = standard_simplex(n, cap)?;
    full.restrict(|c| c.len() <= n)
}

/// `Λ^n_i`, all proper faces except the `i`-th.
pub fn horn(n: usize, i: usize, cap: usize) -> Result<PosetNerve> {
    if n == 0 || i > n {
        return Err(Error::OutOfRange(format!("horn index ({n},{i})")));
    }
    let full = standard_simplex(n, cap)?;
    full.restrict(|c| c.len() < n || (c.len() == n && c.contains(&i)))
}

/// The cube `I^X = N({0,1}^X)`; bit `t` of a vertex is coordinate `coords[t]`.
#[derive(Clone, Debug)]
pub struct Cube {
    pub coords: Vec<usize>,
    pub nerve: PosetNerve,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn bit_of(&self, x: usize) -> Result<usize> {
        self.coords
            .iter()
            .position(|&c| c == x)
            .ok_or_else(|| Error::OutOfRange(format!("coordinate {x} not in {:?}", self.coords)))
    }

    /// Vertex mask for a map `coords -> {0,1}`.
    pub fn vertex_mask(&self, values: impl Fn(usize) -> bool) -> usize {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &x)| values(x))
            .fold(0, |m, (t, _)| m | 1 << t)
    }

    /// Whether a strict chain lies in the face `{f_x = eps}` (by bit index).
    pub fn chain_in_face(chain: &[usize], bit: usize, eps: bool) -> bool {
        if eps {
            chain[0] >> bit & 1 == 1
        } else {
            chain[chain.len() - 1] >> bit & 1 == 0
        }
    }
}

pub fn cube(coords: Vec<usize>, cap: usize) -> Cube {
    let nerve = PosetNerve::new(Poset::boolean(coords.len()), cap);
    Cube { coords, nerve }
}

/// Union of the `2|X|` codimension-one faces.
pub fn cube_boundary(c: &Cube) -> PosetNerve {
    let d = c.dim();
    c.nerve
        .restrict(|ch| (0..d).any(|t| Cube::chain_in_face(ch, t, false) || Cube::chain_in_face(ch, t, true)))
        .expect("faces of a cube form a subcomplex")
}

/// `Π_{x,eps}`: the boundary with the face `{f_x = eps}` erased.
pub fn cube_horn(c: &Cube, x: usize, eps: bool) -> Result<PosetNerve> {
    let bx = c.bit_of(x)?;
    let d = c.dim();
    Ok(c.nerve
        .restrict(|ch| {
            (0..d).any(|t| {
                (Cube::chain_in_face(ch, t, false) && (t, false) != (bx, eps))
                    || (Cube::chain_in_face(ch, t, true) && (t, true) != (bx, eps))
            })
        })
        .expect("unions of cube faces form a subcomplex"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(standard_simplex(0, 3).unwrap().set.nd_counts(), vec![1]);
        assert_eq!(standard_simplex(2, 3).unwrap().set.nd_counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3, 3).unwrap().set.nd_counts(), vec![4, 6, 4, 1]);
        assert!(matches!(standard_simplex(4, 3), Err(Error::CapTooSmall { .. })));
    }

    #[test]
    fn boundaries_and_horns() {
        assert_eq!(boundary_subcomplex(1, 2).unwrap().set.nd_counts(), vec![2]);
        assert_eq!(horn(2, 0, 2).unwrap().set.nd_counts(), vec![3, 2]);
        let h = horn(3, 1, 3).unwrap();
        assert_eq!(h.set.nd_counts(), vec![4, 6, 3]);
        let full = standard_simplex(3, 3).unwrap();
        h.inclusion_into(&full).unwrap().validate(&h.set, &full.set).unwrap();
        assert!(horn(2, 3, 2).is_err());
    }

    #[test]
    fn poset_nerves() {
        assert_eq!(nerve_of_poset(Poset::ordinal(1), 2).set.nd_counts(), vec![2, 1]);
        assert_eq!(nerve_of_poset(Poset::boolean(2), 3).set.nd_counts(), vec![4, 5, 2]);
        assert_eq!(nerve_of_poset(Poset::antichain(2), 3).set.nd_counts(), vec![2]);
    }

    #[test]
    fn cubes() {
        let c1 = cube(vec![7], 2);
        assert_eq!(cube_boundary(&c1).set.nd_counts(), vec![2]);
        let h = cube_horn(&c1, 7, false).unwrap();
        assert_eq!(h.chains, vec![vec![1]]);
        let c2 = cube(vec![0, 1], 2);
        let h = cube_horn(&c2, 0, true).unwrap();
        // edges f_x=0, f_y=0, f_y=1
        assert_eq!(h.set.nd_counts(), vec![4, 3]);
        let edges: Vec<_> = h.chains.iter().filter(|c| c.len() == 2).cloned().collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![2, 3]]);
        assert!(cube_horn(&c2, 5, true).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let n = nerve_of_poset(Poset::boolean(2), 3);
        for k in 0..=3 {
            for r in n.set.simplices(k) {
                let ch = n.chain_of(r);
                assert_eq!(n.simplex_of_chain(&ch).as_ref(), Some(r));
                for i in 0..=k {
                    if k > 0 {
                        let mut f = ch.clone();
                        f.remove(i);
                        assert_eq!(n.simplex_of_chain(&f).unwrap(), n.set.face(i, r));
                    }
                }
            }
        }
    }
}
