//! Finite simple graphs and their metric: BFS distances, intervals,
//! isometry tests and clique co-membership of edges.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hamming::{checked_count, Shape, Vertex};

/// An undirected edge stored with `a < b`.
pub type Edge = (usize, usize);

pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A finite simple graph on vertices `0..order()`, each carrying an opaque name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges<S: Into<String>>(names: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let mut adj = vec![Vec::new(); names.len()];
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= names.len() {
                    return Err(Error::UnknownVertex(format!("#{x}")));
                }
            }
            if a == b {
                return Err(Error::SelfLoop(names[a].clone()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge {
                    a: names[v].clone(),
                    b: names[w[0]].clone(),
                });
            }
        }
        Ok(Graph { names, adj })
    }

    /// Build from vertex names and edges given by name.
    pub fn from_named_edges<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_ref(), i))
            .collect();
        let lookup = |n: &S| {
            index
                .get(n.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownVertex(n.as_ref().to_string()))
        };
        let idx = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_edges(names.iter().map(|n| n.as_ref().to_string()).collect(), &idx)
    }

    /// Cycle `C_n` on vertices named `0..n`.
    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(numbered(n), &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(numbered(n), &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        Graph::from_edges(numbered(n), &edges).expect("valid clique")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// All edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn check_edge(&self, (a, b): Edge) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if self.has_edge(a, b) {
            Ok(())
        } else {
            Err(Error::NotAnEdge {
                a: self.names[a].clone(),
                b: self.names[b].clone(),
            })
        }
    }

    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap() + 1;
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// The subgraph induced by `subset` (in the given order), names kept.
    pub fn induced(&self, subset: &[usize]) -> Graph {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = subset
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v].iter().filter_map(|w| pos.get(w).copied()).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph {
            names: subset.iter().map(|&v| self.names[v].clone()).collect(),
            adj,
        }
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// All-pairs shortest-path distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn new(g: &Graph, exec: Exec) -> Self {
        let n = g.order();
        let rows = exec.map_range(n, |s| g.bfs(s));
        let d = rows
            .into_iter()
            .flatten()
            .map(|x| x.map_or(UNREACHABLE, |x| x as u32))
            .collect();
        DistanceMatrix { n, d }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        let x = self.d[u * self.n + v];
        (x != UNREACHABLE).then_some(x as usize)
    }

    /// Distance for a pair known to be connected.
    #[inline]
    pub fn at(&self, u: usize, v: usize) -> usize {
        let x = self.d[u * self.n + v];
        debug_assert_ne!(x, UNREACHABLE);
        x as usize
    }

    pub fn is_connected(&self) -> bool {
        !self.d.contains(&UNREACHABLE)
    }

    pub fn in_interval(&self, u: usize, v: usize, x: usize) -> bool {
        self.at(u, x) + self.at(x, v) == self.at(u, v)
    }
}

/// A graph together with its distance matrix.
#[derive(Clone, Debug)]
pub struct Metric {
    pub graph: Graph,
    pub dist: DistanceMatrix,
}

impl Metric {
    pub fn new(graph: Graph) -> Self {
        Metric::with_exec(graph, Exec::default())
    }

    pub fn with_exec(graph: Graph, exec: Exec) -> Self {
        let dist = DistanceMatrix::new(&graph, exec);
        Metric { graph, dist }
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.dist.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }
}

/// Exact distances from `source` inside `g`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Option<usize>>> {
    g.check_vertex(source)?;
    Ok(g.bfs(source))
}

/// `I_G(u,v) = {x : d(u,x) + d(x,v) = d(u,v)}`, ascending.
pub fn graph_interval(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let du = g.bfs(u);
    let dv = g.bfs(v);
    let Some(d) = du[v] else {
        return Err(Error::Disconnected {
            a: g.name(u).to_string(),
            b: g.name(v).to_string(),
        });
    };
    Ok((0..g.order())
        .filter(|&x| matches!((du[x], dv[x]), (Some(a), Some(b)) if a + b == d))
        .collect())
}

/// Do `e1` and `e2` lie in a common clique? Decided by pairwise adjacency
/// of their (at most four) endpoints.
pub fn edges_share_clique(g: &Graph, e1: Edge, e2: Edge) -> Result<bool> {
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    Ok(share_clique_unchecked(g, e1, e2))
}

pub(crate) fn share_clique_unchecked(g: &Graph, e1: Edge, e2: Edge) -> bool {
    let ends = [e1.0, e1.1, e2.0, e2.1];
    ends.iter().enumerate().all(|(i, &a)| {
        ends[i + 1..]
            .iter()
            .all(|&b| a == b || g.has_edge(a, b))
    })
}

/// A pair whose distance inside a subgraph differs from the host distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceGap<V> {
    pub u: V,
    pub v: V,
    pub host: usize,
    /// `None` when `v` is unreachable from `u` inside the subgraph.
    pub sub: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryReport<V> {
    pub isometric: bool,
    pub witness: Option<DistanceGap<V>>,
}

impl<V> IsometryReport<V> {
    fn from_gap(gap: Option<DistanceGap<V>>) -> Self {
        IsometryReport {
            isometric: gap.is_none(),
            witness: gap,
        }
    }
}

/// First pair `(u, v)`, `u < v` in index order, where BFS distance inside
/// `sub` disagrees with `host_dist`.
fn first_gap<F>(sub: &Graph, host_dist: F, exec: Exec) -> Option<DistanceGap<usize>>
where
    F: Fn(usize, usize) -> usize + Sync + Send,
{
    exec.find_map_first_range(sub.order(), |u| {
        let d = sub.bfs(u);
        (u + 1..sub.order()).find_map(|v| {
            let host = host_dist(u, v);
            (d[v] != Some(host)).then_some(DistanceGap {
                u,
                v,
                host,
                sub: d[v],
            })
        })
    })
}

/// Is `subset` (indices into `host`) isometric in `host`? The witness refers
/// to host vertex indices; `subset` order defines "first".
pub fn isometric_in(host: &Metric, subset: &[usize], exec: Exec) -> IsometryReport<usize> {
    let sub = host.graph.induced(subset);
    let gap = first_gap(&sub, |a, b| host.dist.at(subset[a], subset[b]), exec).map(|g| DistanceGap {
        u: subset[g.u],
        v: subset[g.v],
        ..g
    });
    IsometryReport::from_gap(gap)
}

/// An induced subgraph of a Hamming graph, given by its vertex set.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    shape: Shape,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    graph: Graph,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.vertices == other.vertices
    }
}

impl Eq for LabeledGraph {}

impl LabeledGraph {
    /// Vertices are validated, sorted lexicographically and deduplicated.
    pub fn new(shape: Shape, vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        for v in &vertices {
            shape.validate(v)?;
        }
        vertices.sort();
        vertices.dedup();
        let index: HashMap<Vertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for (a, v) in vertices.iter().enumerate() {
            for j in 1..=shape.dim() {
                for value in v.coord(j) + 1..shape.factors()[j - 1] {
                    if let Some(&b) = index.get(&v.with_coord(j, value)) {
                        edges.push((a, b));
                    }
                }
            }
        }
        let graph = Graph::from_edges(vertices.iter().map(|v| v.to_string()).collect(), &edges)?;
        Ok(LabeledGraph {
            shape,
            vertices,
            index,
            graph,
        })
    }

    /// The whole Hamming graph.
    pub fn full(shape: Shape, budget: usize) -> Result<Self> {
        let count = checked_count(&shape, budget)?;
        let vertices: Vec<Vertex> = (0..count).map(|i| shape.unrank(i)).collect();
        LabeledGraph::new(shape, vertices)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn require(&self, v: &Vertex) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn metric(&self) -> Metric {
        Metric::new(self.graph.clone())
    }

    /// Edges as vertex pairs, in index order.
    pub fn labeled_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()))
            .collect()
    }

    pub fn bfs_from(&self, source: &Vertex) -> Result<HashMap<Vertex, Option<usize>>> {
        let s = self.require(source)?;
        Ok(self
            .graph
            .bfs(s)
            .into_iter()
            .enumerate()
            .map(|(i, d)| (self.vertices[i].clone(), d))
            .collect())
    }
}

/// Is `sub` isometric in its Hamming host? On failure the witness is the
/// lexicographically first pair whose subgraph distance differs from the
/// Hamming distance (unreachable pairs included).
pub fn is_isometric(sub: &LabeledGraph) -> IsometryReport<Vertex> {
    is_isometric_with(sub, Exec::default())
}

pub fn is_isometric_with(sub: &LabeledGraph, exec: Exec) -> IsometryReport<Vertex> {
    let vs = sub.vertices();
    let gap = first_gap(sub.graph(), |a, b| vs[a].hamming(&vs[b]), exec).map(|g| DistanceGap {
        u: vs[g.u].clone(),
        v: vs[g.v].clone(),
        host: g.host,
        sub: g.sub,
    });
    IsometryReport::from_gap(gap)
}
