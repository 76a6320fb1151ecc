//! Finitely presented groups and coset enumeration.

use std::fmt;

/// A letter is `+(k+1)` for generator `k` and `-(k+1)` for its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &Word| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.iter()
                .map(|&l| {
                    let g = &self.generators[(l.unsigned_abs() - 1) as usize];
                    if l > 0 { g.clone() } else { format!("{g}^-1") }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "<{} | {}>",
            self.generators.join(", "),
            self.relators.iter().map(word).collect::<Vec<_>>().join(", ")
        )
    }
}

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Free reduction followed by cyclic reduction.
pub fn reduce_cyclic(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

impl Presentation {
    /// Drops trivial relators and reduces the others.
    pub fn simplified(&self) -> Presentation {
        let mut relators: Vec<Word> = self
            .relators
            .iter()
            .map(|r| reduce_cyclic(r))
            .filter(|r| !r.is_empty())
            .collect();
        relators.sort();
        relators.dedup();
        Presentation { generators: self.generators.clone(), relators }
    }

    /// Enumerates the group if it has at most `limit` elements.
    pub fn finite_group(&self, limit: usize) -> Option<FiniteGroup> {
        let table = todd_coxeter(self.generators.len(), &self.relators, limit)?;
        Some(FiniteGroup::from_coset_table(self.generators.len(), table))
    }
}

const UNDEF: usize = usize::MAX;

fn col(l: i32) -> usize {
    let k = (l.unsigned_abs() - 1) as usize;
    if l > 0 { 2 * k } else { 2 * k + 1 }
}

struct Enumeration {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    ncols: usize,
    limit: usize,
    overflow: bool,
}

impl Enumeration {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.table.len() >= self.limit {
            self.overflow = true;
            return;
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.ncols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
    }

    fn union(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.union(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let e = queue[qi];
            qi += 1;
            for x in 0..self.ncols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                if self.table[f][x ^ 1] == e {
                    self.table[f][x ^ 1] = UNDEF;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.union(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != UNDEF {
                    let t = self.table[f1][x ^ 1];
                    self.union(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != UNDEF {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.table[b][w[j as usize] ^ 1] != UNDEF {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            } else if i == j {
                self.table[f][w[i as usize]] = b;
                self.table[b][w[i as usize] ^ 1] = f;
                return;
            } else {
                self.define(f, w[i as usize]);
                if self.overflow {
                    return;
                }
            }
        }
    }
}

/// HLT coset enumeration over the trivial subgroup. Returns the compacted
/// coset table, or `None` once more than `limit` cosets are needed.
pub fn todd_coxeter(ngens: usize, relators: &[Word], limit: usize) -> Option<Vec<Vec<usize>>> {
    let ncols = 2 * ngens;
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| r.iter().map(|&l| col(l)).collect()).collect();
    let mut en = Enumeration {
        table: vec![vec![UNDEF; ncols]],
        parent: vec![0],
        ncols,
        limit: limit.max(1),
        overflow: false,
    };
    let mut c = 0;
    while c < en.table.len() {
        for r in &rels {
            if !en.alive(c) {
                break;
            }
            en.scan_and_fill(c, r);
            if en.overflow {
                return None;
            }
        }
        if en.alive(c) {
            for x in 0..ncols {
                if en.table[c][x] == UNDEF {
                    en.define(c, x);
                    if en.overflow {
                        return None;
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.alive(c)).collect();
    let mut new_id = vec![UNDEF; en.table.len()];
    for (i, &c) in live.iter().enumerate() {
        new_id[c] = i;
    }
    let mut out = Vec::with_capacity(live.len());
    for &c in &live {
        let mut row = Vec::with_capacity(ncols);
        for x in 0..ncols {
            let t = en.table[c][x];
            let t = en.rep(t);
            row.push(new_id[t]);
        }
        out.push(row);
    }
    Some(out)
}

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub mul: Vec<Vec<usize>>,
    /// Image of each generator of the presentation it came from, if any.
    pub generators: Vec<usize>,
}

impl FiniteGroup {
    fn from_coset_table(ngens: usize, table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        // a word (column list) reaching each coset from coset 0
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..2 * ngens {
                let t = table[c][x];
                if words[t].is_none() {
                    let mut w = words[c].clone().expect("visited");
                    w.push(x);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        words[j].as_ref().expect("coset table is connected").iter().fold(i, |c, &x| table[c][x])
                    })
                    .collect()
            })
            .collect();
        let generators = (0..ngens).map(|k| table[0][2 * k]).collect();
        FiniteGroup { mul, generators }
    }

    /// Validates a multiplication table with identity 0.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Option<Self> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return None;
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return None;
            }
            if !(0..n).any(|b| mul[a][b] == 0) {
                return None;
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return None;
                    }
                }
            }
        }
        Some(FiniteGroup { mul, generators: Vec::new() })
    }

    pub fn cyclic(n: usize) -> Self {
        FiniteGroup { mul: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), generators: vec![1 % n] }
    }

    /// The symmetric group on 3 letters, elements in lexicographic order of
    /// their one-line notation (identity first).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FiniteGroup { mul, generators: vec![1, 3] }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul[a][b] == 0).expect("group element has an inverse")
    }

    /// Evaluates a word in the recorded generators.
    pub fn eval(&self, w: &[i32]) -> usize {
        w.iter().fold(0, |acc, &l| {
            let g = self.generators[(l.unsigned_abs() - 1) as usize];
            self.op(acc, if l > 0 { g } else { self.inv(g) })
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(ngens: usize, relators: Vec<Word>) -> Presentation {
        Presentation { generators: (0..ngens).map(|k| format!("x{k}")).collect(), relators }
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        assert_eq!(pres(1, vec![vec![1, 1]]).finite_group(100).unwrap().order(), 2);
        assert_eq!(pres(1, vec![vec![1; 5]]).finite_group(100).unwrap().order(), 5);
        let d4 = pres(2, vec![vec![1; 4], vec![2, 2], vec![1, 2, 1, 2]]);
        let g = d4.finite_group(100).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(pres(0, vec![]).finite_group(10).unwrap().order(), 1);
    }

    #[test]
    fn trivial_group_with_redundant_generators() {
        let p = pres(2, vec![vec![1], vec![2], vec![1, 2, -1]]);
        assert_eq!(p.finite_group(10).unwrap().order(), 1);
    }

    #[test]
    fn free_group_overflows() {
        assert!(pres(1, vec![]).finite_group(50).is_none());
    }

    #[test]
    fn s3_table_is_a_group() {
        let s3 = FiniteGroup::symmetric3();
        assert!(FiniteGroup::from_table(s3.mul.clone()).is_some());
        assert!(!s3.is_abelian());
        let p = pres(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]]);
        assert_eq!(p.finite_group(100).unwrap().order(), 6);
    }
}
