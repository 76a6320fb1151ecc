//! Finite ordinary categories, functors between them, and equivalence checks.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::sset::json::{as_array, as_uint, check_schema, field};
use crate::sset::{Poset, SimplexRef, SimplicialSet};

const UNDEF: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    /// `compose[g][f] = g ∘ f` when `src g = tgt f`.
    compose: Vec<Vec<usize>>,
    homs: Vec<Vec<Vec<usize>>>,
}

impl FiniteCategory {
    /// Builds a category, checking the axioms exhaustively.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = arrows.len();
        let no = objects.len();
        if identities.len() != no {
            return Err(Error::Invalid("one identity per object required".into()));
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.src >= no || a.tgt >= no {
                return Err(Error::OutOfRange(format!("arrow {k} has endpoints outside the objects")));
            }
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= n || arrows[i].src != x || arrows[i].tgt != x {
                return Err(Error::Invalid(format!("identity of object {x} is not an endomorphism of it")));
            }
        }
        let mut table = vec![vec![UNDEF; n]; n];
        for g in 0..n {
            for f in 0..n {
                if arrows[g].src == arrows[f].tgt {
                    let h = compose(g, f);
                    if h >= n || arrows[h].src != arrows[f].src || arrows[h].tgt != arrows[g].tgt {
                        return Err(Error::Invalid(format!("composite of {g} and {f} has the wrong type")));
                    }
                    table[g][f] = h;
                }
            }
        }
        let mut homs = vec![vec![Vec::new(); no]; no];
        for (k, a) in arrows.iter().enumerate() {
            homs[a.src][a.tgt].push(k);
        }
        let c = FiniteCategory { objects, arrows, identities, compose: table, homs };
        c.check_axioms()?;
        Ok(c)
    }

    fn check_axioms(&self) -> Result<()> {
        for f in 0..self.arrows.len() {
            let a = &self.arrows[f];
            if self.comp(self.identities[a.tgt], f) != f || self.comp(f, self.identities[a.src]) != f {
                return Err(Error::Invalid(format!("unit law fails at arrow {}", a.name)));
            }
        }
        for f in 0..self.arrows.len() {
            for g in self.out_of(self.arrows[f].tgt) {
                for h in self.out_of(self.arrows[g].tgt) {
                    if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f) {
                        return Err(Error::Invalid(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `g ∘ f`; panics unless composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        let h = self.compose[g][f];
        assert!(h != UNDEF, "arrows {g} and {f} are not composable");
        h
    }

    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.compose[g][f];
        (h != UNDEF).then_some(h)
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a][b]
    }

    pub fn out_of(&self, a: usize) -> Vec<usize> {
        (0..self.objects.len()).flat_map(|b| self.homs[a][b].iter().copied()).collect()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].tgt
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == self.identities[a] && self.comp(f, g) == self.identities[b])
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|f| self.is_iso(f))
    }

    pub fn isomorphic_objects(&self, a: usize, b: usize) -> bool {
        self.hom(a, b).iter().any(|&f| self.is_iso(f))
    }

    pub fn discrete(n: usize) -> Self {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let arrows = (0..n).map(|i| Arrow { name: format!("id{i}"), src: i, tgt: i }).collect();
        FiniteCategory::new(objects, arrows, (0..n).collect(), |g, _| g).expect("discrete category")
    }

    /// The poset viewed as a category; arrow `(a, b)` for each `a <= b`.
    pub fn from_poset(p: &Poset) -> Self {
        let n = p.len();
        let mut arrows = Vec::new();
        let mut id_of = vec![vec![UNDEF; n]; n];
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) {
                    id_of[a][b] = arrows.len();
                    let name = if a == b { format!("id{}", p.labels[a]) } else { format!("{}<{}", p.labels[a], p.labels[b]) };
                    arrows.push(Arrow { name, src: a, tgt: b });
                }
            }
        }
        let identities = (0..n).map(|a| id_of[a][a]).collect();
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
        FiniteCategory::new(p.labels.clone(), arrows, identities, |g, f| id_of[ends[f].0][ends[g].1])
            .expect("posets are categories")
    }

    /// The ordinal `[n]` as a category.
    pub fn ordinal(n: usize) -> Self {
        FiniteCategory::from_poset(&Poset::ordinal(n))
    }

    /// One object, arrows the group elements.
    pub fn from_group(g: &FiniteGroup, name: &str) -> Self {
        let arrows = (0..g.order())
            .map(|k| Arrow { name: if k == 0 { "e".into() } else { format!("{name}{k}") }, src: 0, tgt: 0 })
            .collect();
        FiniteCategory::new(vec!["*".into()], arrows, vec![0], |a, b| g.op(a, b)).expect("groups are categories")
    }

    /// The groupoid with exactly one arrow between any two objects.
    pub fn contractible_groupoid(n: usize) -> Self {
        let arrows: Vec<Arrow> = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                Arrow { name: if a == b { format!("id{a}") } else { format!("{a}>{b}") }, src: a, tgt: b }
            })
            .collect();
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
        FiniteCategory::new(
            (0..n).map(|i| i.to_string()).collect(),
            arrows,
            (0..n).map(|a| a * n + a).collect(),
            |g, f| ends[f].0 * n + ends[g].1,
        )
        .expect("contractible groupoid")
    }

    pub fn product(&self, other: &FiniteCategory) -> Self {
        let (no, na) = (other.num_objects(), other.num_arrows());
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .flat_map(|f| {
                other.arrows.iter().map(move |g| Arrow {
                    name: format!("({},{})", f.name, g.name),
                    src: f.src * no + g.src,
                    tgt: f.tgt * no + g.tgt,
                })
            })
            .collect();
        let identities = (0..self.num_objects() * no)
            .map(|x| self.identities[x / no] * na + other.identities[x % no])
            .collect();
        FiniteCategory::new(objects, arrows, identities, |g, f| {
            self.comp(g / na, f / na) * na + other.comp(g % na, f % na)
        })
        .expect("products of categories")
    }

    /// The opposite category with the same arrow ids.
    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src })
            .collect();
        FiniteCategory::new(self.objects.clone(), arrows, self.identities.clone(), |g, f| self.comp(f, g))
            .expect("opposite of a category")
    }

    pub fn to_json(&self) -> Value {
        let mut compose = Vec::new();
        for g in 0..self.num_arrows() {
            for f in 0..self.num_arrows() {
                if let Some(h) = self.try_comp(g, f) {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        compose.push(json!([g, f, h]));
                    }
                }
            }
        }
        json!({
            "schema": "cat/v1",
            "kind": "category",
            "objects": self.objects,
            "arrows": self.arrows.iter().map(|a| json!({"name": a.name, "src": a.src, "tgt": a.tgt})).collect::<Vec<_>>(),
            "identities": self.identities,
            "compose": compose,
        })
    }

    /// Parses the `cat/v1` category shape; composites with identities are implied.
    pub fn from_json_at(v: &Value, pointer: &str) -> Result<Self> {
        check_schema(v, "cat/v1", pointer)?;
        let objects: Vec<String> = as_array(field(v, "objects", pointer)?, &format!("{pointer}/objects"))?
            .iter()
            .enumerate()
            .map(|(k, o)| match o {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::parse(format!("{pointer}/objects/{k}"), "expected a name")),
            })
            .collect::<Result<_>>()?;
        let mut arrows = Vec::new();
        for (k, a) in as_array(field(v, "arrows", pointer)?, &format!("{pointer}/arrows"))?.iter().enumerate() {
            let ap = format!("{pointer}/arrows/{k}");
            let name = a.get("name").and_then(Value::as_str).map(str::to_owned).unwrap_or_else(|| format!("a{k}"));
            let src = as_uint(field(a, "src", &ap)?, &format!("{ap}/src"))?;
            let tgt = as_uint(field(a, "tgt", &ap)?, &format!("{ap}/tgt"))?;
            if src >= objects.len() || tgt >= objects.len() {
                return Err(Error::parse(&ap, "endpoint is not an object"));
            }
            arrows.push(Arrow { name, src, tgt });
        }
        let identities: Vec<usize> = as_array(field(v, "identities", pointer)?, &format!("{pointer}/identities"))?
            .iter()
            .enumerate()
            .map(|(k, x)| as_uint(x, &format!("{pointer}/identities/{k}")))
            .collect::<Result<_>>()?;
        if identities.len() != objects.len() || identities.iter().any(|&i| i >= arrows.len()) {
            return Err(Error::parse(format!("{pointer}/identities"), "one valid identity per object required"));
        }
        let n = arrows.len();
        let mut table = vec![vec![UNDEF; n]; n];
        let cp = format!("{pointer}/compose");
        let entries = match v.get("compose") {
            Some(c) => as_array(c, &cp)?.clone(),
            None => Vec::new(),
        };
        for (k, t) in entries.iter().enumerate() {
            let tp = format!("{cp}/{k}");
            let t = as_array(t, &tp)?;
            if t.len() != 3 {
                return Err(Error::parse(&tp, "expected [g, f, g∘f]"));
            }
            let g = as_uint(&t[0], &format!("{tp}/0"))?;
            let f = as_uint(&t[1], &format!("{tp}/1"))?;
            let h = as_uint(&t[2], &format!("{tp}/2"))?;
            if g >= n || f >= n || h >= n {
                return Err(Error::parse(&tp, "arrow index out of range"));
            }
            table[g][f] = h;
        }
        let is_id: Vec<bool> = (0..n).map(|f| identities.contains(&f)).collect();
        for g in 0..n {
            for f in 0..n {
                if arrows[g].src == arrows[f].tgt && table[g][f] == UNDEF {
                    if is_id[g] {
                        table[g][f] = f;
                    } else if is_id[f] {
                        table[g][f] = g;
                    } else {
                        return Err(Error::parse(&cp, format!("missing composite of arrows {g} and {f}")));
                    }
                }
            }
        }
        FiniteCategory::new(objects, arrows, identities, |g, f| table[g][f])
            .map_err(|e| Error::parse(pointer, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor { object_map: (0..c.num_objects()).collect(), arrow_map: (0..c.num_arrows()).collect() }
    }

    pub fn validate(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Result<()> {
        if self.object_map.len() != src.num_objects() || self.arrow_map.len() != src.num_arrows() {
            return Err(Error::Invalid("functor data has the wrong size".into()));
        }
        for f in 0..src.num_arrows() {
            let g = self.arrow_map[f];
            if g >= tgt.num_arrows()
                || tgt.src(g) != self.object_map[src.src(f)]
                || tgt.tgt(g) != self.object_map[src.tgt(f)]
            {
                return Err(Error::Invalid(format!("arrow {} sent to an arrow of the wrong type", src.arrows[f].name)));
            }
        }
        for x in 0..src.num_objects() {
            if self.arrow_map[src.identities[x]] != tgt.identities[self.object_map[x]] {
                return Err(Error::Invalid(format!("identity of {} not preserved", src.objects[x])));
            }
        }
        for g in 0..src.num_arrows() {
            for f in 0..src.num_arrows() {
                if let Some(h) = src.try_comp(g, f) {
                    if tgt.comp(self.arrow_map[g], self.arrow_map[f]) != self.arrow_map[h] {
                        return Err(Error::Invalid("composition not preserved".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({"schema": "cat/v1", "kind": "functor", "objects": self.object_map, "arrows": self.arrow_map})
    }

    /// Parses the `cat/v1` functor shape; validity against a source and
    /// target is checked separately.
    pub fn from_json_at(v: &Value, pointer: &str) -> Result<Self> {
        check_schema(v, "cat/v1", pointer)?;
        let list = |key: &str| -> Result<Vec<usize>> {
            let p = format!("{pointer}/{key}");
            as_array(field(v, key, pointer)?, &p)?.iter().enumerate().map(|(k, x)| as_uint(x, &format!("{p}/{k}"))).collect()
        };
        Ok(Functor { object_map: list("objects")?, arrow_map: list("arrows")? })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            object_map: self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            arrow_map: self.arrow_map.iter().map(|&f| other.arrow_map[f]).collect(),
        }
    }

    pub fn is_fully_faithful(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        self.first_non_bijective_hom(src, tgt).is_none()
    }

    /// The first pair `(a, b)` on which the hom map is not a bijection.
    pub fn first_non_bijective_hom(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Option<(usize, usize)> {
        for a in 0..src.num_objects() {
            for b in 0..src.num_objects() {
                let target = tgt.hom(self.object_map[a], self.object_map[b]);
                let mut images: Vec<usize> = src.hom(a, b).iter().map(|&f| self.arrow_map[f]).collect();
                images.sort_unstable();
                let n = images.len();
                images.dedup();
                if images.len() != n || n != target.len() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The first object of the target not isomorphic to an image.
    pub fn first_missed_object(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Option<usize> {
        let _ = src;
        (0..tgt.num_objects())
            .find(|&y| !self.object_map.iter().any(|&fx| tgt.isomorphic_objects(fx, y)))
    }

    pub fn is_essentially_surjective(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        self.first_missed_object(src, tgt).is_none()
    }

    pub fn is_equivalence(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        self.is_fully_faithful(src, tgt) && self.is_essentially_surjective(src, tgt)
    }

    pub fn is_isomorphism(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        let mut o = self.object_map.clone();
        o.sort_unstable();
        o.dedup();
        o.len() == tgt.num_objects() && src.num_objects() == tgt.num_objects() && self.is_fully_faithful(src, tgt)
    }
}

/// Every functor `src → tgt`, in lexicographic order of object maps.
pub fn all_functors(src: &FiniteCategory, tgt: &FiniteCategory) -> Vec<Functor> {
    let (no, na) = (src.num_objects(), src.num_arrows());
    let mut out = Vec::new();
    let mut object_map = vec![0usize; no];
    if no > 0 && tgt.num_objects() == 0 {
        return out;
    }
    loop {
        let mut arrow_map = Vec::with_capacity(na);
        extend_arrows(src, tgt, &object_map, &mut arrow_map, &mut out);
        let mut i = no;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            object_map[i] += 1;
            if object_map[i] < tgt.num_objects() {
                break;
            }
            object_map[i] = 0;
        }
    }
}

fn extend_arrows(src: &FiniteCategory, tgt: &FiniteCategory, object_map: &[usize], arrow_map: &mut Vec<usize>, out: &mut Vec<Functor>) {
    let k = arrow_map.len();
    if k == src.num_arrows() {
        out.push(Functor { object_map: object_map.to_vec(), arrow_map: arrow_map.clone() });
        return;
    }
    let (a, b) = (object_map[src.src(k)], object_map[src.tgt(k)]);
    let candidates: Vec<usize> =
        if src.is_identity(k) { vec![tgt.identities[a]] } else { tgt.hom(a, b).to_vec() };
    for g in candidates {
        arrow_map.push(g);
        let consistent = (0..=k).all(|x| {
            (0..=k).all(|y| match src.try_comp(x, y) {
                Some(h) if h <= k && (x == k || y == k || h == k) => tgt.comp(arrow_map[x], arrow_map[y]) == arrow_map[h],
                _ => true,
            })
        });
        if consistent {
            extend_arrows(src, tgt, object_map, arrow_map, out);
        }
        arrow_map.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functor_enumeration() {
        let i = FiniteCategory::ordinal(1);
        // functors [1] → [2] are monotone pairs
        assert_eq!(all_functors(&i, &FiniteCategory::ordinal(2)).len(), 6);
        let z2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "z");
        let z4 = FiniteCategory::from_group(&FiniteGroup::cyclic(4), "z");
        assert_eq!(all_functors(&z2, &z4).len(), 2);
        assert_eq!(all_functors(&z4, &z2).len(), 2);
        for f in all_functors(&z2, &z4) {
            f.validate(&z2, &z4).unwrap();
        }
    }

    #[test]
    fn constructions_satisfy_axioms() {
        let c = FiniteCategory::ordinal(2);
        assert_eq!(c.num_arrows(), 6);
        assert!(!c.is_groupoid());
        let g = FiniteCategory::from_group(&FiniteGroup::symmetric3(), "s");
        assert!(g.is_groupoid());
        let p = c.product(&FiniteCategory::contractible_groupoid(2));
        assert_eq!(p.num_arrows(), 24);
        assert_eq!(c.opposite().hom(2, 0).len(), 1);
    }

    #[test]
    fn bad_composition_rejected() {
        let arrows = vec![
            Arrow { name: "e".into(), src: 0, tgt: 0 },
            Arrow { name: "a".into(), src: 0, tgt: 0 },
        ];
        // a∘a = e but declared e∘a = e breaks the unit law
        assert!(FiniteCategory::new(vec!["*".into()], arrows, vec![0], |g, f| if g == 0 && f == 1 { 0 } else if g == 0 { f } else if f == 0 { g } else { 0 }).is_err());
    }

    #[test]
    fn equivalences() {
        let one = FiniteCategory::discrete(1);
        let two = FiniteCategory::contractible_groupoid(2);
        let inc = Functor { object_map: vec![0], arrow_map: vec![0] };
        inc.validate(&one, &two).unwrap();
        assert!(inc.is_equivalence(&one, &two));
        let disc2 = FiniteCategory::discrete(2);
        let inc2 = Functor { object_map: vec![0], arrow_map: vec![0] };
        assert!(!inc2.is_essentially_surjective(&one, &disc2));
    }

    #[test]
    fn classical_nerves() {
        let c = FiniteCategory::ordinal(2);
        let n = CategoryNerve::new(&c, 3);
        assert_eq!(n.set.nd_counts(), vec![3, 3, 1]);
        let bz2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2), "g");
        let n = CategoryNerve::new(&bz2, 3);
        assert_eq!(n.set.nd_counts(), vec![1, 1, 1, 1]);
        assert_eq!(n.set.count(3), 8);
        for k in 0..=3 {
            for r in n.set.simplices(k) {
                let (x, s) = n.string_of(&bz2, r);
                assert_eq!(&n.simplex_of_string(&bz2, x, &s), r);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = FiniteCategory::from_group(&FiniteGroup::cyclic(3), "g").product(&FiniteCategory::ordinal(1));
        let back = FiniteCategory::from_json_at(&c.to_json(), "").unwrap();
        assert_eq!(back, c);
    }
}

/// The classical nerve of a finite category: `k`-simplices are strings of
/// `k` composable arrows, nondegenerate when no arrow is an identity.
#[derive(Clone, Debug)]
pub struct CategoryNerve {
    pub set: SimplicialSet,
    /// `(first object, arrows)` of each nondegenerate cell.
    pub strings: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), u32>,
}

impl CategoryNerve {
    pub fn new(c: &FiniteCategory, cap: usize) -> Self {
        let mut strings: Vec<(usize, Vec<usize>)> = (0..c.num_objects()).map(|x| (x, Vec::new())).collect();
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        let non_id: Vec<usize> = (0..c.num_arrows()).filter(|&f| !c.is_identity(f)).collect();
        for _ in 1..=cap {
            let mut next = Vec::new();
            for s in &level {
                for &f in &non_id {
                    if s.last().is_none_or(|&l| c.tgt(l) == c.src(f)) {
                        let mut t = s.clone();
                        t.push(f);
                        next.push(t);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            strings.extend(next.iter().map(|t| (c.src(t[0]), t.clone())));
            level = next;
        }
        let index: HashMap<(usize, Vec<usize>), u32> =
            strings.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let mut nerve = CategoryNerve { set: SimplicialSet::empty(cap), strings, index };
        let mut b = SimplicialSet::builder(cap);
        for (x, s) in &nerve.strings {
            let k = s.len();
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let (y, t) = face_of_string(c, *x, s, i);
                        nerve.simplex_of_string(c, y, &t)
                    })
                    .collect()
            };
            b.add_cell(faces).expect("nerve faces satisfy the simplicial identities");
        }
        nerve.set = b.finish();
        nerve
    }

    /// The normal form of a string that may contain identities.
    pub fn simplex_of_string(&self, c: &FiniteCategory, x: usize, s: &[usize]) -> SimplexRef {
        let mut surj = vec![0u8];
        let mut nd = Vec::new();
        for &f in s {
            if c.is_identity(f) {
                surj.push(*surj.last().expect("nonempty"));
            } else {
                nd.push(f);
                surj.push(surj.last().expect("nonempty") + 1);
            }
        }
        let start = s.iter().find(|&&f| !c.is_identity(f)).map_or(x, |&f| c.src(f));
        SimplexRef { nd: self.index[&(start, nd)], surj }
    }

    /// `(first object, full string)` of a simplex.
    pub fn string_of(&self, c: &FiniteCategory, r: &SimplexRef) -> (usize, Vec<usize>) {
        let (x, s) = &self.strings[r.nd as usize];
        let mut objs = vec![*x];
        objs.extend(s.iter().map(|&f| c.tgt(f)));
        let full = r
            .surj
            .windows(2)
            .map(|w| if w[0] == w[1] { c.identities[objs[w[0] as usize]] } else { s[w[0] as usize] })
            .collect();
        (objs[r.surj[0] as usize], full)
    }
}

/// `d_i` of the string `s` starting at `x`.
fn face_of_string(c: &FiniteCategory, x: usize, s: &[usize], i: usize) -> (usize, Vec<usize>) {
    let k = s.len();
    if i == 0 {
        (c.tgt(s[0]), s[1..].to_vec())
    } else if i == k {
        (x, s[..k - 1].to_vec())
    } else {
        let mut t = s[..i - 1].to_vec();
        t.push(c.comp(s[i], s[i - 1]));
        t.extend_from_slice(&s[i + 1..]);
        (x, t)
    }
}
