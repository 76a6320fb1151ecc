//! The nerves `N`, `𝔑` and `W̄` of truncated simplicial categories, each
//! computed as `Hom(M^n, C)` for its cosimplicial model `M^•`.

pub mod adjunction;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::models::{cosimplicial_action, delta_n, pi_map, tau, DeltaN, Family, FreeModel, ModelKind};
use crate::scat::{enumerate_functors, SimplicialCategory, SimplicialFunctor};
use crate::sset::levels::{from_levels, LevelSet};
use crate::sset::mono::Elementary;
use crate::sset::homotopy::{pi0_map, pi1_map_is_iso};
use crate::sset::{edge_path_presentation, pi0, SimplexRef, SimplicialMap, SimplicialSet};

pub use adjunction::{adjunction_check, fill_horn_hc, transport, AdjunctionReport, HornFill};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `N`, the diagonal of the levelwise nerve; model `SC^•`.
    Standard,
    /// `𝔑`, the homotopy coherent nerve; model `Δ_N^•`.
    Hc,
    /// `W̄`; model `Δ_W̄^•`.
    Wbar,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Standard => "standard",
            Flavor::Hc => "hc",
            Flavor::Wbar => "wbar",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Flavor::Standard),
            "hc" => Ok(Flavor::Hc),
            "wbar" => Ok(Flavor::Wbar),
            _ => Err(Error::Invalid(format!("unknown nerve flavor {s:?}"))),
        }
    }
}

/// The models `M^0, …, M^up_to` of one flavor with their elementary maps.
#[derive(Clone, Debug)]
pub struct Models {
    pub flavor: Flavor,
    pub cap: usize,
    delta: Vec<DeltaN>,
    family: Option<Family>,
    /// `faces[k][i] : M^{k-1} → M^k`
    faces: Vec<Vec<SimplicialFunctor>>,
    /// `degens[k][j] : M^{k+1} → M^k`
    degens: Vec<Vec<SimplicialFunctor>>,
}

impl Models {
    pub fn new(flavor: Flavor, up_to: usize, cap: usize) -> Result<Self> {
        let (delta, family) = match flavor {
            Flavor::Hc => ((0..=up_to).map(|k| delta_n(k, cap)).collect(), None),
            Flavor::Standard => (Vec::new(), Some(Family::new(ModelKind::Standard, up_to, cap)?)),
            Flavor::Wbar => (Vec::new(), Some(Family::new(ModelKind::Wbar, up_to, cap)?)),
        };
        let mut m = Models { flavor, cap, delta, family, faces: Vec::new(), degens: Vec::new() };
        m.faces = (0..=up_to)
            .map(|k| if k == 0 { Ok(Vec::new()) } else { (0..=k).map(|i| m.elementary(Elementary::Coface(k, i))).collect() })
            .collect::<Result<_>>()?;
        m.degens = (0..=up_to)
            .map(|k| {
                if k == up_to {
                    Ok(Vec::new())
                } else {
                    (0..=k).map(|j| m.elementary(Elementary::Codegeneracy(k, j))).collect()
                }
            })
            .collect::<Result<_>>()?;
        Ok(m)
    }

    pub fn up_to(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn category(&self, k: usize) -> &SimplicialCategory {
        match &self.family {
            Some(f) => &f.member(k).free.category,
            None => &self.delta[k].category,
        }
    }

    pub fn delta(&self, k: usize) -> Option<&DeltaN> {
        self.delta.get(k)
    }

    pub fn free_model(&self, k: usize) -> Option<&FreeModel> {
        self.family.as_ref().map(|f| f.member(k))
    }

    fn elementary(&self, e: Elementary) -> Result<SimplicialFunctor> {
        match &self.family {
            Some(f) => f.elementary(e),
            None => {
                let (src, tgt) = match e {
                    Elementary::Coface(n, _) => (n - 1, n),
                    Elementary::Codegeneracy(n, _) => (n + 1, n),
                };
                cosimplicial_action(&self.delta[src], &self.delta[tgt], &e.as_map())
            }
        }
    }

    /// All functors `M^k → c`. Free models are enumerated by their
    /// generator images, `Δ_N^k` by the general functor search.
    pub fn functors(&self, k: usize, c: &SimplicialCategory) -> Result<Vec<SimplicialFunctor>> {
        match self.free_model(k) {
            None => enumerate_functors(self.category(k), c),
            Some(m) => Ok(free_functors(m, c)),
        }
    }
}

/// Functors out of a free model, by choosing an object string and a simplex
/// of the right dimension for every generator. Choices whose composites are
/// undefined in a partial target are skipped.
fn free_functors(m: &FreeModel, c: &SimplicialCategory) -> Vec<SimplicialFunctor> {
    let n = m.n;
    let objs = c.num_objects();
    let mut out = Vec::new();
    let mut string = vec![0usize; n + 1];
    loop {
        let options: Vec<&[SimplexRef]> =
            (1..=n).map(|i| c.hom(string[i - 1], string[i]).simplices(m.generator_dim(i))).collect();
        if options.iter().all(|o| !o.is_empty()) {
            let mut pick = vec![0usize; n];
            loop {
                let image = |g: usize, x: &SimplexRef| {
                    let chain = m.chain_of(g + 1, x);
                    c.hom(string[g], string[g + 1]).apply(&chain, &options[g][pick[g]])
                };
                if let Ok(f) = m.free.functor_from_generators(c, string.clone(), image) {
                    out.push(f);
                }
                if !advance(&mut pick, |i| options[i].len()) {
                    break;
                }
            }
        }
        if !advance(&mut string, |_| objs) {
            return out;
        }
    }
}

/// Odometer step, last position fastest; false after the final tuple.
fn advance(t: &mut [usize], size: impl Fn(usize) -> usize) -> bool {
    for i in (0..t.len()).rev() {
        t[i] += 1;
        if t[i] < size(i) {
            return true;
        }
        t[i] = 0;
    }
    false
}

/// A nerve up to a degree, with the functor behind every simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub flavor: Flavor,
    pub up_to: usize,
    pub levels: LevelSet,
    /// `simplices[k][x]`: the functor `M^k → C` of element `x` of level `k`.
    pub simplices: Vec<Vec<SimplicialFunctor>>,
    /// `faces[k][x][i]` is `d_i` of element `x`, an element of level `k - 1`.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[k][x][j]` is `s_j` of element `x`, an element of level `k + 1`.
    pub degens: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<SimplicialFunctor, usize>>,
    by_ref: Vec<HashMap<SimplexRef, usize>>,
}

impl Nerve {
    pub fn set(&self) -> &SimplicialSet {
        &self.levels.set
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices[k].len()
    }

    pub fn element_of(&self, k: usize, f: &SimplicialFunctor) -> Option<usize> {
        self.index[k].get(f).copied()
    }

    pub fn simplex(&self, k: usize, x: usize) -> &SimplexRef {
        &self.levels.normal[k][x]
    }

    pub fn element_of_ref(&self, r: &SimplexRef) -> usize {
        self.by_ref[r.dim()][r]
    }

    pub fn functor(&self, r: &SimplexRef) -> &SimplicialFunctor {
        &self.simplices[r.dim()][self.element_of_ref(r)]
    }

    /// The simplex of a functor `M^k → C`.
    pub fn simplex_of(&self, k: usize, f: &SimplicialFunctor) -> Option<&SimplexRef> {
        self.element_of(k, f).map(|x| self.simplex(k, x))
    }

    /// Checks the simplicial identities on the face and degeneracy tables.
    pub fn check_identities(&self) -> Result<()> {
        let bad = |what: &str, k: usize, x: usize| Err(Error::Invalid(format!("{what} fails at element {x} of level {k}")));
        for k in 0..=self.up_to {
            for x in 0..self.count(k) {
                let d = |k: usize, x: usize, i: usize| self.faces[k][x][i];
                let s = |k: usize, x: usize, j: usize| self.degens[k][x][j];
                for j in 0..=k {
                    for i in 0..j {
                        if k >= 2 && d(k - 1, d(k, x, j), i) != d(k - 1, d(k, x, i), j - 1) {
                            return bad("d_i d_j = d_{j-1} d_i", k, x);
                        }
                    }
                }
                if k + 1 <= self.up_to {
                    for j in 0..=k {
                        let y = s(k, x, j);
                        if d(k + 1, y, j) != x || d(k + 1, y, j + 1) != x {
                            return bad("d_j s_j = d_{j+1} s_j = id", k, x);
                        }
                        for i in 0..=k + 1 {
                            let expect = if i < j {
                                (k >= 1).then(|| s(k - 1, d(k, x, i), j - 1))
                            } else if i > j + 1 {
                                (k >= 1).then(|| s(k - 1, d(k, x, i - 1), j))
                            } else {
                                None
                            };
                            if let Some(e) = expect {
                                if d(k + 1, y, i) != e {
                                    return bad("d_i s_j", k, x);
                                }
                            }
                        }
                        if k + 2 <= self.up_to {
                            for i in 0..=j {
                                if s(k + 1, s(k, x, j), i) != s(k + 1, s(k, x, i), j + 1) {
                                    return bad("s_i s_j = s_{j+1} s_i", k, x);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The nerve of `c` up to degree `up_to`, computed over `models`.
pub fn nerve_with(models: &Models, c: &SimplicialCategory, up_to: usize) -> Result<Nerve> {
    if up_to > c.cap() {
        return Err(Error::CapTooSmall { needed: up_to, cap: c.cap() });
    }
    if models.cap != c.cap() || models.up_to() < up_to {
        return Err(Error::Invalid(format!(
            "models are built for cap {} up to {}, need cap {} up to {up_to}",
            models.cap,
            models.up_to(),
            c.cap()
        )));
    }
    let simplices: Vec<Vec<SimplicialFunctor>> = (0..=up_to).map(|k| models.functors(k, c)).collect::<Result<_>>()?;
    let index: Vec<HashMap<SimplicialFunctor, usize>> =
        simplices.iter().map(|l| l.iter().enumerate().map(|(x, f)| (f.clone(), x)).collect()).collect();
    let lookup = |k: usize, f: SimplicialFunctor| -> Result<usize> {
        index[k].get(&f).copied().ok_or_else(|| Error::Invalid(format!("a structure map leaves level {k}")))
    };
    let mut faces = vec![Vec::new()];
    for k in 1..=up_to {
        let level = simplices[k]
            .iter()
            .map(|f| (0..=k).map(|i| lookup(k - 1, models.faces[k][i].then(f, models.category(k), c))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        faces.push(level);
    }
    let mut degens = Vec::new();
    for k in 0..=up_to {
        let level = if k == up_to {
            vec![Vec::new(); simplices[k].len()]
        } else {
            simplices[k]
                .iter()
                .map(|f| (0..=k).map(|j| lookup(k + 1, models.degens[k][j].then(f, models.category(k), c))).collect())
                .collect::<Result<Vec<Vec<usize>>>>()?
        };
        degens.push(level);
    }
    let counts: Vec<usize> = simplices.iter().map(Vec::len).collect();
    let levels = from_levels(&counts, |k, x, i| faces[k][x][i], |k, x, j| degens[k][x][j])?;
    let by_ref = levels.normal.iter().map(|l| l.iter().enumerate().map(|(x, r)| (r.clone(), x)).collect()).collect();
    Ok(Nerve { flavor: models.flavor, up_to, levels, simplices, faces, degens, index, by_ref })
}

pub fn nerve(flavor: Flavor, c: &SimplicialCategory, up_to: usize) -> Result<Nerve> {
    nerve_with(&Models::new(flavor, up_to, c.cap())?, c, up_to)
}

pub fn hc_nerve(c: &SimplicialCategory, up_to: usize) -> Result<Nerve> {
    nerve(Flavor::Hc, c, up_to)
}

pub fn standard_nerve(c: &SimplicialCategory, up_to: usize) -> Result<Nerve> {
    nerve(Flavor::Standard, c, up_to)
}

pub fn wbar_nerve(c: &SimplicialCategory, up_to: usize) -> Result<Nerve> {
    nerve(Flavor::Wbar, c, up_to)
}

/// The simplicial map `src → tgt` sending the simplex of `F` to the simplex
/// of `along(k, F)`.
pub fn induced_map(
    src: &Nerve,
    tgt: &Nerve,
    along: impl Fn(usize, &SimplicialFunctor) -> SimplicialFunctor,
) -> Result<SimplicialMap> {
    let set = src.set();
    let mut assignment = Vec::with_capacity(set.num_cells());
    for cell in 0..set.num_cells() as u32 {
        let k = set.dim_of(cell);
        let x = src.levels.cell_element[cell as usize];
        let g = along(k, &src.simplices[k][x]);
        let y = tgt
            .element_of(k, &g)
            .ok_or_else(|| Error::NotAMap(format!("the image of a {k}-simplex is not in the target nerve")))?;
        assignment.push(tgt.simplex(k, y).clone());
    }
    let m = SimplicialMap { assignment };
    m.validate(set, tgt.set())?;
    Ok(m)
}

/// The map of nerves induced by `f : c → d`.
pub fn map_nerve(
    src: &Nerve,
    tgt: &Nerve,
    f: &SimplicialFunctor,
    c: &SimplicialCategory,
    d: &SimplicialCategory,
) -> Result<SimplicialMap> {
    if src.flavor != tgt.flavor {
        return Err(Error::Invalid("nerves of different flavors".into()));
    }
    induced_map(src, tgt, |_, g| g.then(f, c, d))
}

/// `N(C) → W̄(C) → 𝔑(C)`, induced by `π` and `τ`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub standard: Nerve,
    pub wbar: Nerve,
    pub hc: Nerve,
    /// `N(C) → W̄(C)`
    pub pi_star: SimplicialMap,
    /// `W̄(C) → 𝔑(C)`
    pub tau_star: SimplicialMap,
}

impl Comparison {
    pub fn composite(&self) -> SimplicialMap {
        SimplicialMap {
            assignment: self.pi_star.assignment.iter().map(|r| self.tau_star.apply(self.hc.set(), r)).collect(),
        }
    }
}

pub fn comparison_maps(c: &SimplicialCategory, up_to: usize) -> Result<Comparison> {
    let cap = c.cap();
    let (sm, wm, hm) =
        (Models::new(Flavor::Standard, up_to, cap)?, Models::new(Flavor::Wbar, up_to, cap)?, Models::new(Flavor::Hc, up_to, cap)?);
    let standard = nerve_with(&sm, c, up_to)?;
    let wbar = nerve_with(&wm, c, up_to)?;
    let hc = nerve_with(&hm, c, up_to)?;
    let pis: Vec<SimplicialFunctor> = (0..=up_to)
        .map(|k| pi_map(wm.free_model(k).expect("free"), sm.free_model(k).expect("free")))
        .collect::<Result<_>>()?;
    let taus: Vec<SimplicialFunctor> =
        (0..=up_to).map(|k| tau(hm.delta(k).expect("Δ_N"), wm.free_model(k).expect("free"))).collect::<Result<_>>()?;
    let pi_star = induced_map(&standard, &wbar, |k, f| pis[k].then(f, wm.category(k), c))?;
    let tau_star = induced_map(&wbar, &hc, |k, f| taus[k].then(f, hm.category(k), c))?;
    Ok(Comparison { standard, wbar, hc, pi_star, tau_star })
}

/// What a map of nerves does on `π0` and on `π1` at each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyComparison {
    pub pi0_bijective: bool,
    /// Per source component; `None` when a group is not enumerated.
    pub pi1_iso: Vec<Option<bool>>,
}

impl HomotopyComparison {
    pub fn holds(&self) -> bool {
        self.pi0_bijective && self.pi1_iso.iter().all(|x| *x == Some(true))
    }
}

/// Compares `π0` and edge-path `π1` along `f : x → y`.
pub fn compare_homotopy(f: &SimplicialMap, x: &SimplicialSet, y: &SimplicialSet) -> Result<HomotopyComparison> {
    let (cx, cy) = (pi0(x), pi0(y));
    let images = pi0_map(f, x, y);
    let mut hit = images.clone();
    hit.sort_unstable();
    hit.dedup();
    let pi0_bijective = cx.count == cy.count && hit.len() == cy.count;
    let mut pi1_iso = Vec::with_capacity(cx.count);
    for k in 0..cx.count {
        let v = cx.members(k)[0];
        let gx = edge_path_presentation(x, v)?;
        let gy = edge_path_presentation(y, f.assignment[v as usize].nd)?;
        pi1_iso.push(pi1_map_is_iso(f, x, &gx, y, &gy));
    }
    Ok(HomotopyComparison { pi0_bijective, pi1_iso })
}

/// The vertex tuple of generator images of a free-model functor, in
/// generator order: `(x_1, …, x_n)` with `x_i ∈ Hom(c_{i-1}, c_i)`.
pub fn generator_images(models: &Models, k: usize, f: &SimplicialFunctor, c: &SimplicialCategory) -> Option<Vec<SimplexRef>> {
    let m = models.free_model(k)?;
    Some((0..k).map(|g| f.apply(&m.free.category, c, g, g + 1, &m.free.generator(g))).collect())
}
