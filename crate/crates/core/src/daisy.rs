//! Daisy graphs of rooted graphs.
//!
//! The daisy graph `G_r(X)` is the subgraph induced by the union of the
//! intervals `I(r, v)`, `v ∈ X`. Its vertex sets are exactly the sets that are
//! downward closed under the interval order `u ≤ v ⇔ u ∈ I(r, v)`, so
//! enumerating daisy graphs means enumerating down-sets of that order.
//!
//! Hosts are either implicit Hamming graphs ([`Shape`]) or explicit graphs
//! with a distance matrix ([`Metric`]); both implement [`RootedHost`].

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::bits::{bit, ones, Mask, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{LabeledGraph, Metric};
use crate::hamming::{checked_count, interval_unchecked, Shape, Vertex};

/// Default host size accepted by [`enumerate_daisy_graphs`].
pub const DEFAULT_ENUMERATION_BUDGET: usize = 16;

/// A graph with an interval structure, able to host daisy graphs.
pub trait RootedHost: Sync {
    type Vertex: Clone + Ord + Hash + Debug + Send + Sync;

    fn check(&self, v: &Self::Vertex) -> Result<()>;

    /// Is `x ∈ I(a, b)`?
    fn in_interval(&self, a: &Self::Vertex, b: &Self::Vertex, x: &Self::Vertex) -> bool;

    /// `I(a, b)` in ascending order.
    fn interval(&self, a: &Self::Vertex, b: &Self::Vertex) -> Vec<Self::Vertex>;

    /// Every host vertex in ascending order, refusing hosts above `budget`.
    fn all_vertices(&self, budget: usize) -> Result<Vec<Self::Vertex>>;
}

impl RootedHost for Shape {
    type Vertex = Vertex;

    fn check(&self, v: &Vertex) -> Result<()> {
        self.validate(v)
    }

    fn in_interval(&self, a: &Vertex, b: &Vertex, x: &Vertex) -> bool {
        x.between(a, b)
    }

    fn interval(&self, a: &Vertex, b: &Vertex) -> Vec<Vertex> {
        interval_unchecked(a, b)
    }

    fn all_vertices(&self, budget: usize) -> Result<Vec<Vertex>> {
        let count = checked_count(self, budget)?;
        Ok((0..count).map(|i| self.unrank(i)).collect())
    }
}

/// Explicit hosts must be connected; vertices are indices.
impl RootedHost for Metric {
    type Vertex = usize;

    fn check(&self, v: &usize) -> Result<()> {
        self.graph.check_vertex(*v)
    }

    fn in_interval(&self, a: &usize, b: &usize, x: &usize) -> bool {
        self.dist.in_interval(*a, *b, *x)
    }

    fn interval(&self, a: &usize, b: &usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| self.dist.in_interval(*a, *b, x))
            .collect()
    }

    fn all_vertices(&self, budget: usize) -> Result<Vec<usize>> {
        if self.order() > budget {
            return Err(Error::BudgetExceeded {
                count: self.order() as u128,
                budget,
            });
        }
        Ok((0..self.order()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DaisyGraph<V> {
    pub root: V,
    /// The union of intervals, ascending.
    pub vertices: Vec<V>,
    /// Maximal elements of the interval order: the canonical generator set.
    pub generators: Vec<V>,
    /// Generators as supplied by the caller, kept for provenance.
    pub requested: Vec<V>,
}

impl<V: Ord> DaisyGraph<V> {
    pub fn contains(&self, v: &V) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

impl DaisyGraph<Vertex> {
    pub fn to_labeled(&self, shape: &Shape) -> Result<LabeledGraph> {
        LabeledGraph::new(shape.clone(), self.vertices.iter().cloned())
    }
}

/// `G_r(X)`: the union of `I(root, v)` over `v ∈ X`.
pub fn build_daisy<H: RootedHost>(
    host: &H,
    root: &H::Vertex,
    generators: &[H::Vertex],
) -> Result<DaisyGraph<H::Vertex>> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    host.check(root)?;
    let mut set = BTreeSet::new();
    for g in generators {
        host.check(g)?;
        set.extend(host.interval(root, g));
    }
    let vertices: Vec<_> = set.into_iter().collect();
    let maximal = maximal_elements(host, root, &vertices);
    Ok(DaisyGraph {
        root: root.clone(),
        vertices,
        generators: maximal,
        requested: generators.to_vec(),
    })
}

fn maximal_elements<H: RootedHost>(host: &H, root: &H::Vertex, set: &[H::Vertex]) -> Vec<H::Vertex> {
    set.iter()
        .filter(|u| {
            !set
                .iter()
                .any(|w| w != *u && host.in_interval(root, w, u))
        })
        .cloned()
        .collect()
}

/// The unique antichain of maximal vertices; regenerates `d`.
pub fn minimal_generators<H: RootedHost>(host: &H, d: &DaisyGraph<H::Vertex>) -> Vec<H::Vertex> {
    maximal_elements(host, &d.root, &d.vertices)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaisyViolation<V> {
    /// The first vertex (ascending) whose interval to the root leaks out of
    /// the set; the root itself when the root is missing.
    pub vertex: V,
    /// A vertex of `I(root, vertex)` missing from the set.
    pub missing: V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaisyCheck<V> {
    pub is_daisy: bool,
    pub violation: Option<DaisyViolation<V>>,
}

/// Is `vertices` downward closed towards `root`? That is exactly the
/// condition for being the vertex set of a daisy graph.
pub fn is_daisy<H: RootedHost>(
    host: &H,
    vertices: &[H::Vertex],
    root: &H::Vertex,
) -> Result<DaisyCheck<H::Vertex>> {
    host.check(root)?;
    let set: BTreeSet<&H::Vertex> = vertices.iter().collect();
    for v in &set {
        host.check(v)?;
    }
    if !set.contains(root) {
        return Ok(DaisyCheck {
            is_daisy: false,
            violation: Some(DaisyViolation {
                vertex: root.clone(),
                missing: root.clone(),
            }),
        });
    }
    let violation = set.iter().find_map(|&u| {
        host.interval(root, u)
            .into_iter()
            .find(|w| !set.contains(w))
            .map(|missing| DaisyViolation {
                vertex: u.clone(),
                missing,
            })
    });
    Ok(DaisyCheck {
        is_daisy: violation.is_none(),
        violation,
    })
}

/// The interval order of a host seen from a root, as bitmasks over the
/// ascending vertex list. Down-sets of this order are the daisy graphs.
#[derive(Clone, Debug)]
pub struct DownsetPoset<V> {
    vertices: Vec<V>,
    root: usize,
    /// A linear extension, root first.
    order: Vec<usize>,
    /// `below[v]`: elements strictly below `v`, i.e. `I(root, v) \ {v}`.
    below: Vec<Mask>,
}

impl<V: Clone + Ord + Hash + Debug + Send + Sync> DownsetPoset<V> {
    pub fn new<H: RootedHost<Vertex = V>>(host: &H, root: &V, budget: usize) -> Result<Self> {
        host.check(root)?;
        let vertices = host.all_vertices(budget.min(MAX_VERTICES))?;
        let root_idx = vertices.binary_search(root).expect("root is a host vertex");
        let below: Vec<Mask> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, u)| j != i && host.in_interval(root, v, u))
                    .fold(0, |m, (j, _)| m | bit(j))
            })
            .collect();
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| (below[i].count_ones(), i));
        debug_assert_eq!(order[0], root_idx);
        Ok(DownsetPoset {
            vertices,
            root: root_idx,
            order,
            below,
        })
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn root_index(&self) -> usize {
        self.root
    }

    pub fn below(&self, v: usize) -> Mask {
        self.below[v]
    }

    pub fn members(&self, set: Mask) -> Vec<V> {
        ones(set).map(|i| self.vertices[i].clone()).collect()
    }

    pub fn mask_of(&self, vs: &[V]) -> Option<Mask> {
        vs.iter().try_fold(0, |m, v| {
            self.vertices.binary_search(v).ok().map(|i| m | bit(i))
        })
    }

    pub fn is_downset(&self, set: Mask) -> bool {
        set & bit(self.root) != 0 && ones(set).all(|v| self.below[v] & !set == 0)
    }

    /// Maximal members of a down-set.
    pub fn maximal(&self, set: Mask) -> Mask {
        let covered = ones(set).fold(0, |m, v| m | self.below[v]);
        set & !covered
    }

    pub fn daisy(&self, set: Mask) -> DaisyGraph<V> {
        let generators = self.members(self.maximal(set));
        DaisyGraph {
            root: self.vertices[self.root].clone(),
            vertices: self.members(set),
            requested: generators.clone(),
            generators,
        }
    }

    /// All down-sets containing the root, in a fixed deterministic order.
    pub fn iter(&self) -> DownsetIter<'_, V> {
        DownsetIter {
            poset: self,
            stack: vec![self.start()],
        }
    }

    fn start(&self) -> (usize, Mask) {
        (1, bit(self.root))
    }

    /// Split the enumeration into independent subtrees, listed in
    /// enumeration order. Each down-set lies in exactly one subtree.
    fn prefixes(&self, target: usize) -> Vec<(usize, Mask)> {
        let m = self.order.len();
        let mut states = vec![self.start()];
        while states.len() < target && states.iter().any(|&(pos, _)| pos < m) {
            let mut next = Vec::with_capacity(states.len() * 2);
            for (pos, mask) in states {
                if pos == m {
                    next.push((pos, mask));
                    continue;
                }
                let e = self.order[pos];
                if self.below[e] & !mask == 0 {
                    next.push((pos + 1, mask | bit(e)));
                }
                next.push((pos + 1, mask));
            }
            states = next;
        }
        states
    }

    fn subtree(&self, state: (usize, Mask)) -> DownsetIter<'_, V> {
        DownsetIter {
            poset: self,
            stack: vec![state],
        }
    }

    /// First `Some(f(set))` in enumeration order.
    pub fn find_map_first<R, F>(&self, exec: Exec, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(Mask) -> Option<R> + Sync + Send,
    {
        if !exec.is_parallel() {
            return self.iter().find_map(f);
        }
        let states = self.prefixes(256);
        exec.find_map_first(&states, |&s| self.subtree(s).find_map(&f))
    }

    pub fn count(&self, exec: Exec) -> u64 {
        if !exec.is_parallel() {
            return self.iter().count() as u64;
        }
        let states = self.prefixes(256);
        exec.sum_range(states.len(), |i| self.subtree(states[i]).count() as u64)
    }

    /// Number of down-sets satisfying `pred`.
    pub fn count_where<F>(&self, exec: Exec, pred: F) -> u64
    where
        F: Fn(Mask) -> bool + Sync + Send,
    {
        let states = if exec.is_parallel() { self.prefixes(256) } else { vec![self.start()] };
        exec.sum_range(states.len(), |i| {
            self.subtree(states[i]).filter(|&s| pred(s)).count() as u64
        })
    }
}

/// Depth-first enumeration over a linear extension: an element may join the
/// set only once everything below it has joined.
pub struct DownsetIter<'a, V> {
    poset: &'a DownsetPoset<V>,
    stack: Vec<(usize, Mask)>,
}

impl<V> Iterator for DownsetIter<'_, V> {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        let (mut pos, mut mask) = self.stack.pop()?;
        let order = &self.poset.order;
        while pos < order.len() {
            let e = order[pos];
            if self.poset.below[e] & !mask == 0 {
                self.stack.push((pos + 1, mask));
                mask |= bit(e);
            }
            pos += 1;
        }
        Some(mask)
    }
}

/// Every daisy graph of `host` with respect to `root`, each exactly once.
pub fn enumerate_daisy_graphs<H: RootedHost>(
    host: &H,
    root: &H::Vertex,
    budget: usize,
) -> Result<DaisyGraphs<H::Vertex>> {
    let poset = DownsetPoset::new(host, root, budget)?;
    let stack = vec![poset.start()];
    Ok(DaisyGraphs { poset, stack })
}

/// Owning stream of daisy graphs produced by [`enumerate_daisy_graphs`].
pub struct DaisyGraphs<V> {
    poset: DownsetPoset<V>,
    stack: Vec<(usize, Mask)>,
}

impl<V> DaisyGraphs<V> {
    pub fn poset(&self) -> &DownsetPoset<V> {
        &self.poset
    }
}

impl<V: Clone + Ord + Hash + Debug + Send + Sync> Iterator for DaisyGraphs<V> {
    type Item = DaisyGraph<V>;

    fn next(&mut self) -> Option<Self::Item> {
        let mut it = DownsetIter {
            poset: &self.poset,
            stack: std::mem::take(&mut self.stack),
        };
        let set = it.next();
        self.stack = it.stack;
        set.map(|s| self.poset.daisy(s))
    }
}

/// Record of the coordinate relabeling done by [`canonical_minimal_host`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// Original (1-based) coordinates kept, in order.
    pub kept: Vec<usize>,
    /// For each kept coordinate, old value → new value (`None` if unused).
    pub values: Vec<Vec<Option<usize>>>,
}

impl Relabeling {
    pub fn is_identity(&self, original: &Shape) -> bool {
        self.kept.len() == original.dim()
            && self
                .values
                .iter()
                .all(|m| m.iter().enumerate().all(|(old, new)| *new == Some(old)))
    }

    pub fn apply(&self, v: &Vertex) -> Option<Vertex> {
        self.kept
            .iter()
            .zip(&self.values)
            .map(|(&j, map)| map.get(v.coord(j)).copied().flatten())
            .collect::<Option<Vec<_>>>()
            .map(Vertex)
    }
}

#[derive(Clone, Debug)]
pub struct MinimalHost {
    pub graph: LabeledGraph,
    pub relabeling: Relabeling,
}

/// Shrink the host until every coordinate is used with every value:
/// constant coordinates are dropped and the values used in each remaining
/// coordinate are packed onto `0..k'` in order (so 0 stays 0).
pub fn canonical_minimal_host(g: &LabeledGraph) -> Result<MinimalHost> {
    let shape = g.shape();
    let mut kept = Vec::new();
    let mut values = Vec::new();
    let mut factors = Vec::new();
    for j in 1..=shape.dim() {
        let mut used = vec![false; shape.factors()[j - 1]];
        for v in g.vertices() {
            used[v.coord(j)] = true;
        }
        let count = used.iter().filter(|&&u| u).count();
        if count < 2 {
            continue;
        }
        let mut next = 0;
        let map = used
            .iter()
            .map(|&u| {
                u.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        kept.push(j);
        values.push(map);
        factors.push(count);
    }
    let relabeling = Relabeling { kept, values };
    let vertices = g
        .vertices()
        .iter()
        .map(|v| relabeling.apply(v).expect("value in use"));
    let graph = LabeledGraph::new(Shape::new(factors)?, vertices)?;
    Ok(MinimalHost { graph, relabeling })
}

/// Does every coordinate take every one of its values somewhere in `g`?
pub fn is_minimal_host(g: &LabeledGraph) -> bool {
    let shape = g.shape();
    (1..=shape.dim()).all(|j| {
        let mut used = vec![false; shape.factors()[j - 1]];
        for v in g.vertices() {
            used[v.coord(j)] = true;
        }
        used.iter().all(|&u| u)
    })
}

/// For a daisy graph generated by one vertex `x` of a Hamming graph, the 0/1
/// word `y_i = min(x_i, 1)` of the isomorphic daisy cube.
pub fn daisy_cube_of_singleton(shape: &Shape, d: &DaisyGraph<Vertex>) -> Result<Vec<u8>> {
    let gens = minimal_generators(shape, d);
    let [x] = gens.as_slice() else {
        return Err(Error::NotSingleGenerator(gens.len()));
    };
    Ok(x.coords().iter().map(|&c| c.min(1) as u8).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn vs(list: &[&str]) -> Vec<Vertex> {
        list.iter().map(|s| v(s)).collect()
    }

    fn c6() -> Metric {
        let names = ["u", "x1", "x2", "r", "y1", "y2"];
        let edges = [("u", "x1"), ("x1", "x2"), ("x2", "r"), ("r", "y1"), ("y1", "y2"), ("y2", "u")];
        Metric::new(Graph::from_named_edges(&names, &edges).unwrap())
    }

    #[test]
    fn build_examples() {
        let s = Shape::new([2, 2, 2]).unwrap();
        let root = s.root();
        let d = build_daisy(&s, &root, &[root.clone()]).unwrap();
        assert_eq!(d.vertices, vec![root.clone()]);

        let d = build_daisy(&s, &root, &vs(&["1,1,0", "0,1,1"])).unwrap();
        assert_eq!(d.vertices, vs(&["0,0,0", "0,0,1", "0,1,0", "0,1,1", "1,0,0", "1,1,0"]));
        assert_eq!(d.generators, vs(&["0,1,1", "1,1,0"]));

        let g = c6();
        let r = g.graph.index_of("r").unwrap();
        let u = g.graph.index_of("u").unwrap();
        let d = build_daisy(&g, &r, &[u]).unwrap();
        assert_eq!(d.vertices, (0..6).collect::<Vec<_>>());

        assert_eq!(build_daisy(&s, &root, &[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn recognition_examples() {
        let s = Shape::new([3, 3]).unwrap();
        let root = s.root();
        assert!(is_daisy(&s, &[root.clone()], &root).unwrap().is_daisy);
        let check = is_daisy(&s, &vs(&["0,0", "1,2"]), &root).unwrap();
        assert!(!check.is_daisy);
        let w = check.violation.unwrap();
        assert_eq!(w.vertex, v("1,2"));
        assert_eq!(w.missing, v("0,2"));
        let iv = s.interval(&root, &v("2,1"));
        assert!(is_daisy(&s, &iv, &root).unwrap().is_daisy);
        let check = is_daisy(&s, &vs(&["1,0"]), &root).unwrap();
        assert_eq!(check.violation.unwrap().vertex, root);
    }

    #[test]
    fn generator_examples() {
        let s = Shape::new([2, 2, 2]).unwrap();
        let root = s.root();
        let single = build_daisy(&s, &root, &[root.clone()]).unwrap();
        assert_eq!(minimal_generators(&s, &single), vec![root.clone()]);
        let d = build_daisy(&s, &root, &vs(&["1,1,0", "0,1,1", "0,1,0"])).unwrap();
        assert_eq!(minimal_generators(&s, &d), vs(&["0,1,1", "1,1,0"]));
        assert_eq!(d.requested.len(), 3);
        let d = build_daisy(&s, &root, &vs(&["1,0,1"])).unwrap();
        assert_eq!(minimal_generators(&s, &d), vs(&["1,0,1"]));
    }

    #[test]
    fn enumeration_counts() {
        let count = |f: &[usize]| {
            let s = Shape::new(f.to_vec()).unwrap();
            enumerate_daisy_graphs(&s, &s.root(), 16).unwrap().count()
        };
        assert_eq!(count(&[2]), 2);
        // {00}, {00,01}, {00,10}, {00,01,10} and the whole square.
        assert_eq!(count(&[2, 2]), 5);
        assert_eq!(count(&[3]), 4);
        let s = Shape::new([3]).unwrap();
        let all: Vec<_> = enumerate_daisy_graphs(&s, &s.root(), 16)
            .unwrap()
            .map(|d| d.vertices)
            .collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vs(&["0"]), vs(&["0", "1"]), vs(&["0", "1", "2"]), vs(&["0", "2"])]);
        assert!(matches!(
            enumerate_daisy_graphs(&Shape::new([3, 3]).unwrap(), &v("0,0"), 8),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parallel_split_matches_sequential() {
        let s = Shape::new([3, 2, 2]).unwrap();
        let p = DownsetPoset::new(&s, &s.root(), 16).unwrap();
        let seq: Vec<Mask> = p.iter().collect();
        let mut split = Vec::new();
        for st in p.prefixes(16) {
            split.extend(p.subtree(st));
        }
        assert_eq!(seq, split);
        assert_eq!(p.count(Exec::Parallel), seq.len() as u64);
        let target = seq[seq.len() / 2];
        assert_eq!(
            p.find_map_first(Exec::Parallel, |m| (m == target).then_some(m)),
            Some(target)
        );
    }

    #[test]
    fn minimal_host_examples() {
        let s = Shape::new([3, 3]).unwrap();
        let full = LabeledGraph::full(s.clone(), 100).unwrap();
        let m = canonical_minimal_host(&full).unwrap();
        assert!(m.relabeling.is_identity(&s));
        assert_eq!(m.graph, full);

        let g = LabeledGraph::new(s, vs(&["0,0", "2,0"])).unwrap();
        let m = canonical_minimal_host(&g).unwrap();
        assert_eq!(m.graph.shape().factors(), &[2]);
        assert_eq!(m.graph.vertices(), vs(&["0", "1"]).as_slice());
        assert_eq!(m.relabeling.kept, vec![1]);

        let g = LabeledGraph::new(Shape::new([2, 2]).unwrap(), vs(&["0,0"])).unwrap();
        let m = canonical_minimal_host(&g).unwrap();
        assert_eq!(m.graph.shape(), &Shape::trivial());
        assert_eq!(m.graph.order(), 1);
    }

    #[test]
    fn singleton_cube_word() {
        let s = Shape::new([2, 2]).unwrap();
        let d = build_daisy(&s, &s.root(), &[s.root()]).unwrap();
        assert_eq!(daisy_cube_of_singleton(&s, &d).unwrap(), vec![0, 0]);
        let s = Shape::new([3, 3]).unwrap();
        let d = build_daisy(&s, &s.root(), &vs(&["2,0"])).unwrap();
        assert_eq!(daisy_cube_of_singleton(&s, &d).unwrap(), vec![1, 0]);
        let s = Shape::new([3, 2, 4]).unwrap();
        let d = build_daisy(&s, &s.root(), &vs(&["2,1,3"])).unwrap();
        assert_eq!(daisy_cube_of_singleton(&s, &d).unwrap(), vec![1, 1, 1]);
        let s = Shape::new([3, 3]).unwrap();
        let d = build_daisy(&s, &s.root(), &vs(&["2,0", "0,1"])).unwrap();
        assert_eq!(daisy_cube_of_singleton(&s, &d), Err(Error::NotSingleGenerator(2)));
    }
}
