//! Monotone maps between finite ordinals `[m] -> [n]`, stored as value lists.

use crate::error::{Error, Result};

/// The coface `δ^i : [n-1] -> [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// The codegeneracy `σ^j : [n+1] -> [n]` hitting `j` twice.
pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

pub fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

pub fn check_monotone(f: &[usize], target: usize) -> Result<()> {
    if f.is_empty() || !is_monotone(f) || f.iter().any(|&v| v > target) {
        return Err(Error::NotMonotone(f.to_vec()));
    }
    Ok(())
}

/// `(g ∘ f)(t) = g(f(t))`.
pub fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&t| g[t]).collect()
}

/// All monotone maps `[k] -> [n]`, lexicographic.
pub fn all_monotone(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k + 1];
    fn rec(pos: usize, lo: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur[pos] = v;
            rec(pos + 1, v, n, cur, out);
        }
    }
    rec(0, 0, n, &mut cur, &mut out);
    out
}

/// All monotone surjections `[k] -> [m]`, lexicographic.
pub fn surjections(k: usize, m: usize) -> Vec<Vec<usize>> {
    if m > k {
        return Vec::new();
    }
    all_monotone(k, m)
        .into_iter()
        .filter(|f| f[0] == 0 && f[k] == m && f.windows(2).all(|w| w[1] - w[0] <= 1))
        .collect()
}

/// Epi-mono factorization `f = mono ∘ epi`.
pub fn factor(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = f.to_vec();
    image.dedup();
    let epi = f
        .iter()
        .map(|v| image.binary_search(v).expect("value in image"))
        .collect();
    (epi, image)
}

/// Decomposes `f : [m] -> [n]` into elementary maps. The returned list
/// `[e_1, ..., e_r]` satisfies `f = e_r ∘ ... ∘ e_1`; each entry is
/// `Elementary::Coface(target, i)` or `Elementary::Codegeneracy(target, j)`.
pub fn elementary_decomposition(f: &[usize], n: usize) -> Vec<Elementary> {
    let (epi, image) = factor(f);
    let mut steps = Vec::new();
    // epi as codegeneracies: collapse repeated positions from the right
    let m = f.len() - 1;
    let mut cur_dim = m;
    let repeats: Vec<usize> = (0..m).filter(|&p| epi[p] == epi[p + 1]).collect();
    for &p in repeats.iter().rev() {
        steps.push(Elementary::Codegeneracy(cur_dim - 1, p));
        cur_dim -= 1;
    }
    // mono as cofaces: insert missing values in increasing order
    let missing: Vec<usize> = (0..=n).filter(|v| !image.contains(v)).collect();
    for &v in &missing {
        steps.push(Elementary::Coface(cur_dim + 1, v));
        cur_dim += 1;
    }
    steps
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `δ^i : [n-1] -> [n]`, stored as `(n, i)`.
    Coface(usize, usize),
    /// `σ^j : [n+1] -> [n]`, stored as `(n, j)`.
    Codegeneracy(usize, usize),
}

impl Elementary {
    pub fn as_map(self) -> Vec<usize> {
        match self {
            Elementary::Coface(n, i) => coface(n, i),
            Elementary::Codegeneracy(n, j) => codegeneracy(n, j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // C(k+n+1, n) monotone maps
        assert_eq!(all_monotone(2, 2).len(), 10);
        assert_eq!(all_monotone(3, 1).len(), 5);
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn decomposition_recomposes() {
        for m in 0..4 {
            for n in 0..4 {
                for f in all_monotone(m, n) {
                    let mut acc = identity(m);
                    for e in elementary_decomposition(&f, n) {
                        acc = compose(&e.as_map(), &acc);
                    }
                    assert_eq!(acc, f);
                }
            }
        }
    }
}
