//! Djoković's relation `~`, the Δ relation and the coordinate slices
//! `W_i^j`, `U_i^j` of labeled daisy graphs.
//!
//! All distances are those of the graph under study, never of a host.

use crate::error::{Error, Result};
use crate::graph::{share_clique_unchecked, Edge, LabeledGraph, Metric};
use crate::hamming::{unit_vertex, Vertex};

/// `W_uv = {x : d(u,x) < d(v,x)}`, ascending.
pub fn w_set(m: &Metric, u: usize, v: usize) -> Result<Vec<usize>> {
    m.graph.check_edge((u, v))?;
    Ok(w_set_unchecked(m, u, v))
}

fn w_set_unchecked(m: &Metric, u: usize, v: usize) -> Vec<usize> {
    (0..m.order())
        .filter(|&x| m.dist.at(u, x) < m.dist.at(v, x))
        .collect()
}

/// `uv ~ xy` for unordered edges: one orientation of `xy` has `x ∈ W_uv`
/// and `y ∈ W_vu`.
#[inline]
pub(crate) fn tilde(m: &Metric, (u, v): Edge, (x, y): Edge) -> bool {
    let d = &m.dist;
    let oriented = |p: usize, q: usize| d.at(u, p) < d.at(v, p) && d.at(v, q) < d.at(u, q);
    oriented(x, y) || oriented(y, x)
}

pub fn tilde_related(m: &Metric, e1: Edge, e2: Edge) -> Result<bool> {
    m.graph.check_edge(e1)?;
    m.graph.check_edge(e2)?;
    Ok(tilde(m, e1, e2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Tilde,
    Delta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// Edges with `a < b`, sorted.
    pub edges: Vec<Edge>,
    pub kind: RelationKind,
    /// An edge of the class incident to the root, when one was asked for and exists.
    pub anchor: Option<Edge>,
}

impl EdgeClass {
    pub fn contains(&self, e: Edge) -> bool {
        let e = crate::graph::edge(e.0, e.1);
        self.edges.binary_search(&e).is_ok()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self, edges: &[Edge], kind: RelationKind) -> Vec<EdgeClass> {
        let mut groups: Vec<Vec<Edge>> = vec![Vec::new(); edges.len()];
        for (i, &e) in edges.iter().enumerate() {
            let r = self.find(i);
            groups[r].push(e);
        }
        groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|edges| EdgeClass {
                edges,
                kind,
                anchor: None,
            })
            .collect()
    }
}

fn tilde_union(m: &Metric, edges: &[Edge], sets: &mut DisjointSets) {
    for (i, &e) in edges.iter().enumerate() {
        for (k, &f) in edges.iter().enumerate().skip(i + 1) {
            if tilde(m, e, f) {
                sets.union(i, k);
            }
        }
    }
}

/// Classes of the transitive closure of `~`.
pub fn tilde_classes(m: &Metric) -> Result<Vec<EdgeClass>> {
    m.require_connected()?;
    let edges = m.graph.edges();
    let mut sets = DisjointSets::new(edges.len());
    tilde_union(m, &edges, &mut sets);
    Ok(sets.classes(&edges, RelationKind::Tilde))
}

/// Δ-classes: `~`-classes merged whenever two of their edges share a
/// clique, then closed transitively. Classes are ordered by smallest edge.
pub fn delta_classes(m: &Metric) -> Result<Vec<EdgeClass>> {
    m.require_connected()?;
    let edges = m.graph.edges();
    let mut sets = DisjointSets::new(edges.len());
    tilde_union(m, &edges, &mut sets);
    // Two distinct edges share a clique iff they span a triangle.
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (k, &f) in edges.iter().enumerate().skip(i + 1) {
            if (f.0 == a || f.0 == b || f.1 == a || f.1 == b) && share_clique_unchecked(&m.graph, (a, b), f) {
                sets.union(i, k);
            }
        }
    }
    Ok(sets.classes(&edges, RelationKind::Delta))
}

/// Δ-classes with `anchor` set to the smallest class edge at `root`.
pub fn delta_classes_rooted(m: &Metric, root: usize) -> Result<Vec<EdgeClass>> {
    m.graph.check_vertex(root)?;
    let mut classes = delta_classes(m)?;
    for c in &mut classes {
        c.anchor = c.edges.iter().copied().find(|&(a, b)| a == root || b == root);
    }
    Ok(classes)
}

/// The families `W_i^j`, `U_i^j`, `U_{0i}^j` and `U_0^j` of one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSlice {
    pub coord: usize,
    /// `levels[i] = W_i^j`: vertices with coordinate `j` equal to `i`.
    pub levels: Vec<Vec<Vertex>>,
    /// `contacts[i] = U_i^j` for `i ≥ 1`: members of `W_i^j` with a
    /// neighbour in `W_0^j`. `contacts[0]` is `U_0^j`.
    pub contacts: Vec<Vec<Vertex>>,
    /// `zero_contacts[i - 1] = U_{0i}^j`: members of `W_0^j` with a
    /// neighbour in `W_i^j`.
    pub zero_contacts: Vec<Vec<Vertex>>,
}

pub fn coordinate_slice(g: &LabeledGraph, j: usize) -> Result<CoordinateSlice> {
    let k = g.shape().factor(j)?;
    let level_of = |x: usize| g.vertex(x).coord(j);
    let mut levels = vec![Vec::new(); k];
    let mut contacts = vec![Vec::new(); k];
    let mut zero_contacts = vec![Vec::new(); k - 1];
    let mut zero_any = Vec::new();
    for (x, vx) in g.vertices().iter().enumerate() {
        let lx = level_of(x);
        levels[lx].push(vx.clone());
        let nbr_levels: Vec<usize> = g.graph().neighbors(x).iter().map(|&y| level_of(y)).collect();
        if lx == 0 {
            let mut any = false;
            for i in 1..k {
                if nbr_levels.contains(&i) {
                    zero_contacts[i - 1].push(vx.clone());
                    any = true;
                }
            }
            if any {
                zero_any.push(vx.clone());
            }
        } else if nbr_levels.contains(&0) {
            contacts[lx].push(vx.clone());
        }
    }
    contacts[0] = zero_any;
    Ok(CoordinateSlice {
        coord: j,
        levels,
        contacts,
        zero_contacts,
    })
}

/// Does `W_i^j` coincide with `W_{e^j_i, 0^n}`? For `i = 0` the edge
/// `0^n e^j_l` with the smallest present `l ≥ 1` is used instead, whose
/// `W_{0^n e^j_l}` is the candidate for `W_0^j`.
pub fn verify_w_equals_wuv(g: &LabeledGraph, m: &Metric, j: usize, i: usize) -> Result<bool> {
    let slice = coordinate_slice(g, j)?;
    let level = slice
        .levels
        .get(i)
        .filter(|l| !l.is_empty())
        .ok_or_else(|| Error::Precondition(format!("W_{i}^{j} is empty")))?;
    let root = g.require(&g.shape().root())?;
    let (u, v) = if i == 0 {
        let l = (1..slice.levels.len())
            .find(|&l| g.contains(&unit_vertex(g.shape(), j, l).unwrap()))
            .ok_or_else(|| Error::TheoremViolation(format!("no unit vertex on coordinate {j}")))?;
        (root, g.require(&unit_vertex(g.shape(), j, l)?)?)
    } else {
        (g.require(&unit_vertex(g.shape(), j, i)?)?, root)
    };
    let w: Vec<&Vertex> = w_set(m, u, v)?.into_iter().map(|x| g.vertex(x)).collect();
    Ok(w.len() == level.len() && w.iter().zip(level).all(|(a, b)| *a == b))
}

/// First vertex of a nonzero level without a neighbour on level 0.
pub fn peripheral_violation(g: &LabeledGraph, j: usize) -> Result<Option<Vertex>> {
    let slice = coordinate_slice(g, j)?;
    Ok((1..slice.levels.len()).find_map(|i| {
        slice.levels[i]
            .iter()
            .find(|x| slice.contacts[i].binary_search(x).is_err())
            .cloned()
    }))
}

/// `U_l^j = W_l^j` for every `l ≥ 1`.
pub fn is_peripheral_class(g: &LabeledGraph, j: usize) -> Result<bool> {
    Ok(peripheral_violation(g, j)?.is_none())
}

/// The class edge `0^n e^j_i` with smallest `(j, i)`.
pub fn anchored_edge(g: &LabeledGraph, class: &EdgeClass) -> Result<(Vertex, Vertex)> {
    let shape = g.shape();
    let root_v = shape.root();
    let root = g.require(&root_v)?;
    for j in 1..=shape.dim() {
        for i in 1..shape.factors()[j - 1] {
            let e = unit_vertex(shape, j, i)?;
            if let Some(x) = g.index_of(&e) {
                if class.contains((root, x)) {
                    return Ok((root_v, e));
                }
            }
        }
    }
    Err(Error::TheoremViolation(format!(
        "Δ-class with {} edges has no edge at the root",
        class.edges.len()
    )))
}

/// The Δ-class containing the root edges of coordinate `j`.
pub fn class_of_coordinate<'c>(g: &LabeledGraph, classes: &'c [EdgeClass], j: usize) -> Result<&'c EdgeClass> {
    let shape = g.shape();
    let root = g.require(&shape.root())?;
    for i in 1..shape.factor(j)? {
        if let Some(x) = g.index_of(&unit_vertex(shape, j, i)?) {
            if let Some(c) = classes.iter().find(|c| c.contains((root, x))) {
                return Ok(c);
            }
        }
    }
    Err(Error::TheoremViolation(format!("coordinate {j} has no root edge")))
}
