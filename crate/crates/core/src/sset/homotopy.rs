//! Path components and edge-path fundamental groups.

use std::collections::VecDeque;

use super::kan::is_kan;
use super::{SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Presentation, Word};

/// Cosets beyond which a fundamental group is reported as presentation only.
pub const GROUP_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component index of each vertex, numbered by first vertex.
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn members(&self, k: usize) -> Vec<u32> {
        (0..self.of_vertex.len() as u32).filter(|&v| self.of_vertex[v as usize] == k).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Vertices modulo the equivalence generated by edges.
pub fn pi0(x: &SimplicialSet) -> Components {
    let verts = x.cells(0).len();
    let mut parent: Vec<usize> = (0..verts).collect();
    if x.cap() >= 1 {
        for e in x.cells(1) {
            let f = x.cell_faces(e);
            let (a, b) = (find(&mut parent, f[1].nd as usize), find(&mut parent, f[0].nd as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = vec![usize::MAX; verts];
    let mut of_vertex = vec![0; verts];
    let mut count = 0;
    for v in 0..verts {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        of_vertex[v] = label[r];
    }
    Components { of_vertex, count }
}

/// Edge-path data at a basepoint: a spanning tree of its component and the
/// resulting presentation with one generator per nondegenerate edge.
#[derive(Clone, Debug)]
pub struct EdgePathGroup {
    pub basepoint: u32,
    /// Edge ids in generator order.
    pub edges: Vec<u32>,
    /// Path from the basepoint to each vertex of the component, as letters.
    tree_path: Vec<Option<Word>>,
    pub presentation: Presentation,
    pub group: Option<FiniteGroup>,
}

impl EdgePathGroup {
    fn letter(&self, e: u32) -> i32 {
        self.edges.iter().position(|&g| g == e).expect("edge in component") as i32 + 1
    }

    /// The loop word of an edge: tree path, the edge, tree path back.
    pub fn loop_of_edge(&self, x: &SimplicialSet, e: &SimplexRef) -> Word {
        if e.is_degenerate() {
            return Vec::new();
        }
        let f = x.cell_faces(e.nd);
        let (src, tgt) = (f[1].nd, f[0].nd);
        let mut w = self.tree_path[src as usize].clone().expect("source in component");
        w.push(self.letter(e.nd));
        w.extend(crate::group::invert(self.tree_path[tgt as usize].as_ref().expect("target in component")));
        w
    }

    pub fn order(&self) -> Option<usize> {
        self.group.as_ref().map(FiniteGroup::order)
    }
}

/// The edge-path presentation at `basepoint`; no Kan certificate required.
pub fn edge_path_presentation(x: &SimplicialSet, basepoint: u32) -> Result<EdgePathGroup> {
    if basepoint as usize >= x.cells(0).len() {
        return Err(Error::OutOfRange(format!("basepoint {basepoint} is not a vertex")));
    }
    let comps = pi0(x);
    let comp = comps.of_vertex[basepoint as usize];
    let edges: Vec<u32> = if x.cap() >= 1 {
        x.cells(1).filter(|&e| comps.of_vertex[x.cell_faces(e)[1].nd as usize] == comp).collect()
    } else {
        Vec::new()
    };
    let letter = |e: u32| edges.iter().position(|&g| g == e).expect("edge") as i32 + 1;
    // BFS spanning tree in canonical edge order
    let nv = x.cells(0).len();
    let mut tree_path: Vec<Option<Word>> = vec![None; nv];
    let mut tree_edges = Vec::new();
    tree_path[basepoint as usize] = Some(Vec::new());
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &e in &edges {
            let f = x.cell_faces(e);
            let (s, t) = (f[1].nd, f[0].nd);
            let (next, l) = if s == v { (t, letter(e)) } else if t == v { (s, -letter(e)) } else { continue };
            if tree_path[next as usize].is_none() {
                let mut w = tree_path[v as usize].clone().expect("visited");
                w.push(l);
                tree_path[next as usize] = Some(w);
                tree_edges.push(e);
                queue.push_back(next);
            }
        }
    }
    let mut relators: Vec<Word> = tree_edges.iter().map(|&e| vec![letter(e)]).collect();
    if x.cap() >= 2 {
        for s in x.cells(2) {
            let f = x.cell_faces(s);
            if comps.of_vertex[x.vertex(&f[0], 0) as usize] != comp {
                continue;
            }
            // path order: d_2 then d_0 equals d_1
            let lt = |r: &SimplexRef| if r.is_degenerate() { None } else { Some(letter(r.nd)) };
            let mut w = Vec::new();
            w.extend(lt(&f[2]));
            w.extend(lt(&f[0]));
            w.extend(lt(&f[1]).map(|l| -l));
            relators.push(w);
        }
    }
    let presentation = Presentation {
        generators: edges.iter().map(|e| format!("e{e}")).collect(),
        relators,
    }
    .simplified();
    let group = presentation.finite_group(GROUP_LIMIT);
    Ok(EdgePathGroup { basepoint, edges, tree_path, presentation, group })
}

/// π1 at `basepoint`, for inputs certified Kan up to degree 2.
pub fn pi1_edge_path(x: &SimplicialSet, basepoint: u32) -> Result<EdgePathGroup> {
    let report = is_kan(x, 2.min(x.cap()))?;
    if x.cap() < 2 || !report.passed {
        return Err(Error::NotKan(match report.first_failure() {
            Some(w) => format!("horn Λ^{}_{} has no filler", w.n, w.i),
            None => "need cap >= 2 for a Kan certificate".into(),
        }));
    }
    edge_path_presentation(x, basepoint)
}

/// The map on π0 induced by `f`.
pub fn pi0_map(f: &SimplicialMap, x: &SimplicialSet, y: &SimplicialSet) -> Vec<usize> {
    let (cx, cy) = (pi0(x), pi0(y));
    (0..cx.count)
        .map(|k| {
            let v = cx.members(k)[0];
            cy.of_vertex[f.assignment[v as usize].nd as usize]
        })
        .collect()
}

/// Whether `f` induces an isomorphism of finite fundamental groups at the
/// given basepoint. `None` if either group is not enumerated.
pub fn pi1_map_is_iso(
    f: &SimplicialMap,
    x: &SimplicialSet,
    gx: &EdgePathGroup,
    y: &SimplicialSet,
    gy: &EdgePathGroup,
) -> Option<bool> {
    let (hx, hy) = (gx.group.as_ref()?, gy.group.as_ref()?);
    if hx.order() != hy.order() {
        return Some(false);
    }
    let fb = f.assignment[gx.basepoint as usize].nd;
    if fb != gy.basepoint {
        return None;
    }
    // image of generator e: f(tree path) f(e) f(tree path)^-1
    let image_of_letter = |l: i32| -> Word {
        let e = gx.edges[(l.unsigned_abs() - 1) as usize];
        let r = f.apply(y, &x.cell_ref(e));
        let w = gy_edge_word(y, gy, &r);
        if l > 0 { w } else { crate::group::invert(&w) }
    };
    let image = |w: &Word| -> usize {
        let full: Word = w.iter().flat_map(|&l| image_of_letter(l)).collect();
        hy.eval(&full)
    };
    // loops through tree paths telescope, so generator images determine the map
    let gens: Vec<usize> = (0..gx.edges.len())
        .map(|k| {
            let e = gx.edges[k];
            let w = gx.loop_of_edge(x, &x.cell_ref(e));
            image(&w)
        })
        .collect();
    let mut seen = vec![false; hy.order()];
    let mut reach = vec![None; hx.order()];
    reach[0] = Some(0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (k, &g) in hx.generators.iter().enumerate() {
            for (b, img) in [
                (hx.op(a, g), hy.op(reach[a].expect("visited"), gens[k])),
                (hx.op(a, hx.inv(g)), hy.op(reach[a].expect("visited"), hy.inv(gens[k]))),
            ] {
                if reach[b].is_none() {
                    reach[b] = Some(img);
                    queue.push_back(b);
                }
            }
        }
    }
    for r in reach {
        let r = r?;
        if std::mem::replace(&mut seen[r], true) {
            return Some(false);
        }
    }
    Some(true)
}

fn gy_edge_word(_y: &SimplicialSet, gy: &EdgePathGroup, r: &SimplexRef) -> Word {
    if r.is_degenerate() {
        Vec::new()
    } else {
        vec![gy.letter(r.nd)]
    }
}
