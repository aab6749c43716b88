//! Expansion and contraction.
//!
//! [`expand`] is the general construction on any connected graph: every
//! vertex `x` is replaced by a clique on the indices `i` with `x ∈ W_i`, and
//! `(x, i)(y, i)` is an edge whenever `xy` is. On labeled daisy graphs the
//! daisy peripheral expansion adds a new coordinate whose value `i` marks the
//! copy of `⟨W_i⟩`, and contraction deletes a coordinate again.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::{bit, ones, Mask};
use crate::daisy::{is_daisy, is_minimal_host, DownsetPoset};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{is_isometric_with, isometric_in, DistanceGap, Edge, Graph, LabeledGraph, Metric};
use crate::hamming::{Shape, Vertex};

/// Why a cover family fails one of the four conditions. Set positions are
/// 0-based indices into [`CoverFamily::sets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverViolation {
    Disjoint { i: usize, j: usize },
    Uncovered { vertex: usize },
    CrossEdge { i: usize, j: usize, a: usize, b: usize },
    NotIsometric { sets: Vec<usize>, gap: DistanceGap<usize> },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::Disjoint { i, j } => write!(f, "sets #{i} and #{j} are disjoint"),
            CoverViolation::Uncovered { vertex } => write!(f, "vertex #{vertex} lies in no set"),
            CoverViolation::CrossEdge { i, j, a, b } => {
                write!(f, "edge #{a}-#{b} joins set #{i} minus set #{j} to set #{j} minus set #{i}")
            }
            CoverViolation::NotIsometric { sets, gap } => write!(
                f,
                "union of sets {sets:?} is not isometric: #{} to #{} is {} in the base, {:?} inside",
                gap.u, gap.v, gap.host, gap.sub
            ),
        }
    }
}

/// The sets of an expansion together with the outcome of each condition:
/// pairwise intersecting, covering, no edges between `W_i \ W_j` and
/// `W_j \ W_i`, and every `⟨W_i⟩`, `⟨W_i ∪ W_j⟩` isometric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFamily {
    /// Sorted, deduplicated base vertex indices.
    pub sets: Vec<Vec<usize>>,
    pub conditions: [bool; 4],
    pub witnesses: [Option<CoverViolation>; 4],
}

impl CoverFamily {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }

    /// The first failed condition (1-based) and its witness.
    pub fn first_violation(&self) -> Option<(usize, &CoverViolation)> {
        self.witnesses
            .iter()
            .enumerate()
            .find_map(|(c, w)| w.as_ref().map(|w| (c + 1, w)))
    }

    fn require_valid(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some((c, w)) => Err(Error::InvalidCover(format!("condition {c}: {w}"))),
        }
    }
}

fn to_mask_sets(n: usize, sets: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    sets.iter()
        .map(|s| {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            if let Some(&x) = set.iter().find(|&&x| x >= n) {
                return Err(Error::UnknownVertex(format!("#{x}")));
            }
            Ok(set.into_iter().collect())
        })
        .collect()
}

/// Check the four expansion conditions literally.
pub fn validate_cover(base: &Metric, sets: &[Vec<usize>]) -> Result<CoverFamily> {
    validate_cover_with(base, sets, Exec::Sequential)
}

pub fn validate_cover_with(base: &Metric, sets: &[Vec<usize>], exec: Exec) -> Result<CoverFamily> {
    base.require_connected()?;
    let n = base.order();
    let sets = to_mask_sets(n, sets)?;
    let member: Vec<Vec<bool>> = sets
        .iter()
        .map(|s| {
            let mut m = vec![false; n];
            for &x in s {
                m[x] = true;
            }
            m
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .collect();

    let disjoint = pairs
        .iter()
        .find(|&&(i, j)| !sets[i].iter().any(|&x| member[j][x]))
        .map(|&(i, j)| CoverViolation::Disjoint { i, j });

    let uncovered = (0..n)
        .find(|&x| !member.iter().any(|m| m[x]))
        .map(|vertex| CoverViolation::Uncovered { vertex });

    let edges = base.graph.edges();
    let cross = pairs.iter().find_map(|&(i, j)| {
        let only = |p: usize, q: usize, x: usize| member[p][x] && !member[q][x];
        edges.iter().find_map(|&(a, b)| {
            ((only(i, j, a) && only(j, i, b)) || (only(i, j, b) && only(j, i, a)))
                .then_some(CoverViolation::CrossEdge { i, j, a, b })
        })
    });

    let mut groups: Vec<Vec<usize>> = (0..sets.len()).map(|i| vec![i]).collect();
    groups.extend(pairs.iter().map(|&(i, j)| vec![i, j]));
    let gaps = exec.map(&groups, |g| {
        let union: BTreeSet<usize> = g.iter().flat_map(|&i| sets[i].iter().copied()).collect();
        let union: Vec<usize> = union.into_iter().collect();
        isometric_in(base, &union, Exec::Sequential).witness
    });
    let not_isometric = groups
        .into_iter()
        .zip(gaps)
        .find_map(|(g, gap)| gap.map(|gap| CoverViolation::NotIsometric { sets: g, gap }));

    let witnesses = [disjoint, uncovered, cross, not_isometric];
    let conditions = [0, 1, 2, 3].map(|c| witnesses[c].is_none());
    Ok(CoverFamily {
        sets,
        conditions,
        witnesses,
    })
}

/// The expanded graph with the origin of each of its vertices.
#[derive(Clone, Debug)]
pub struct ExpansionRecord {
    pub base: Graph,
    pub family: CoverFamily,
    pub graph: Graph,
    /// `provenance[p] = (x, i)`: produced vertex `p` is the copy of base
    /// vertex `x` in set `i`. Ordered by `x`, then `i`.
    pub provenance: Vec<(usize, usize)>,
}

impl ExpansionRecord {
    /// Produced vertices stemming from base vertex `x`.
    pub fn copies(&self, x: usize) -> Vec<usize> {
        (0..self.provenance.len()).filter(|&p| self.provenance[p].0 == x).collect()
    }
}

/// The expansion of `base` relative to a valid family.
pub fn expand(base: &Metric, family: &CoverFamily) -> Result<ExpansionRecord> {
    family.require_valid()?;
    let n = base.order();
    let mut provenance = Vec::new();
    let mut index = vec![vec![None; family.sets.len()]; n];
    for x in 0..n {
        for (i, s) in family.sets.iter().enumerate() {
            if s.binary_search(&x).is_ok() {
                index[x][i] = Some(provenance.len());
                provenance.push((x, i));
            }
        }
    }
    let mut edges: Vec<Edge> = Vec::new();
    for copies in &index {
        let present: Vec<usize> = copies.iter().flatten().copied().collect();
        for (a, &p) in present.iter().enumerate() {
            for &q in &present[a + 1..] {
                edges.push((p, q));
            }
        }
    }
    for (x, y) in base.graph.edges() {
        for i in 0..family.sets.len() {
            if let (Some(p), Some(q)) = (index[x][i], index[y][i]) {
                edges.push((p, q));
            }
        }
    }
    let names: Vec<String> = provenance
        .iter()
        .map(|&(x, i)| format!("{}_{}", base.graph.name(x), i + 1))
        .collect();
    let graph = Graph::from_edges(names, &edges)?;
    Ok(ExpansionRecord {
        base: base.graph.clone(),
        family: family.clone(),
        graph,
        provenance,
    })
}

fn cover_indices(g: &LabeledGraph, covers: &[Vec<Vertex>]) -> Result<Vec<Vec<usize>>> {
    covers
        .iter()
        .map(|w| w.iter().map(|v| g.require(v)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Daisy peripheral expansion with the new coordinate in front.
pub fn daisy_peripheral_expand(g: &LabeledGraph, covers: &[Vec<Vertex>]) -> Result<LabeledGraph> {
    daisy_peripheral_expand_at(g, covers, 1)
}

/// Daisy peripheral expansion relative to `covers = [W_0, …, W_k]`, with the
/// new coordinate inserted at `position` (1-based) and `x ∈ W_i` becoming
/// `x` with value `i` there.
pub fn daisy_peripheral_expand_at(
    g: &LabeledGraph,
    covers: &[Vec<Vertex>],
    position: usize,
) -> Result<LabeledGraph> {
    let shape = g.shape();
    let root = shape.root();
    if position == 0 || position > shape.dim() + 1 {
        return Err(Error::CoordIndexOutOfRange {
            coord: position,
            dim: shape.dim() + 1,
        });
    }
    if covers.len() < 2 {
        return Err(Error::InvalidCover(format!(
            "need W_0 and at least one more set, got {} set(s)",
            covers.len()
        )));
    }
    let base = is_daisy(shape, g.vertices(), &root)?;
    if let Some(v) = base.violation {
        return Err(Error::Precondition(format!(
            "base is not a daisy graph: {} is present but {} is not",
            v.vertex, v.missing
        )));
    }
    if let Some(gap) = is_isometric_with(g, Exec::Sequential).witness {
        return Err(Error::Precondition(format!(
            "base is not isometric: d({}, {}) is {} in the host",
            gap.u, gap.v, gap.host
        )));
    }
    let sets = cover_indices(g, covers)
        .map_err(|e| Error::InvalidCover(format!("cover sets must lie in the base graph: {e}")))?;
    let w0: BTreeSet<usize> = sets[0].iter().copied().collect();
    if w0.len() != g.order() {
        return Err(Error::InvalidCover("peripheral: W_0 must be the whole vertex set".into()));
    }
    for (i, w) in covers.iter().enumerate().skip(1) {
        if let Some(v) = is_daisy(shape, w, &root)?.violation {
            return Err(Error::InvalidCover(format!(
                "daisy: W_{i} is not a daisy graph ({} is present but {} is not)",
                v.vertex, v.missing
            )));
        }
    }
    let family = validate_cover(&g.metric(), &sets)?;
    if let Some((c, w)) = family.first_violation() {
        return Err(Error::InvalidCover(format!("expansion condition {c}: {w}")));
    }
    let new_shape = shape.insert_coord(position, covers.len())?;
    let vertices = covers
        .iter()
        .enumerate()
        .flat_map(|(i, w)| w.iter().map(move |x| x.with_coord_inserted(position, i)));
    LabeledGraph::new(new_shape, vertices)
}

/// A coordinate deletion together with the projected level sets
/// `X_l = { x without coordinate j : x ∈ W_l^j }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub coord: usize,
    pub graph: LabeledGraph,
    pub covers: Vec<Vec<Vertex>>,
}

/// Contract the Δ-class of coordinate `j` by deleting that coordinate.
pub fn contract(g: &LabeledGraph, j: usize) -> Result<Contraction> {
    let shape = g.shape();
    let k = shape.factor(j)?;
    let mut covers = vec![BTreeSet::new(); k];
    for v in g.vertices() {
        covers[v.coord(j)].insert(v.without_coord(j));
    }
    let covers: Vec<Vec<Vertex>> = covers.into_iter().map(|s| s.into_iter().collect()).collect();
    let graph = LabeledGraph::new(shape.remove_coord(j)?, covers.iter().flatten().cloned())?;
    Ok(Contraction {
        coord: j,
        graph,
        covers,
    })
}

impl Contraction {
    /// Expand the contracted graph back along the recorded sets.
    pub fn expand_back(&self) -> Result<ExpansionRecord> {
        let sets = cover_indices(&self.graph, &self.covers)?;
        expand(&self.graph.metric(), &validate_cover(&self.graph.metric(), &sets)?)
    }
}

/// Does expanding `contract(g, j)` give back `g`, with `(x, i)` read as
/// `x` carrying value `i` at coordinate `j`? Returns the first mismatch.
pub fn round_trip(g: &LabeledGraph, j: usize) -> Result<Option<String>> {
    let c = contract(g, j)?;
    let rec = match c.expand_back() {
        Ok(r) => r,
        Err(e) => return Ok(Some(format!("expansion rejected: {e}"))),
    };
    let image: Vec<usize> = rec
        .provenance
        .iter()
        .map(|&(x, i)| g.require(&c.graph.vertex(x).with_coord_inserted(j, i)))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() || image.len() != g.order() {
        return Ok(Some(format!(
            "{} produced vertices for {} original vertices",
            image.len(),
            g.order()
        )));
    }
    let produced: BTreeSet<Edge> = rec
        .graph
        .edges()
        .into_iter()
        .map(|(p, q)| crate::graph::edge(image[p], image[q]))
        .collect();
    let original: BTreeSet<Edge> = g.graph().edges().into_iter().collect();
    if let Some(&(a, b)) = produced.symmetric_difference(&original).next() {
        return Ok(Some(format!(
            "edge {}-{} differs after expansion",
            g.vertex(a),
            g.vertex(b)
        )));
    }
    Ok(None)
}

/// Clique contraction of an edge class on an arbitrary graph: the
/// components of `(V, class)` become single vertices.
#[derive(Clone, Debug)]
pub struct GenericContraction {
    pub graph: Graph,
    /// `blocks[b]`: base vertices merged into contracted vertex `b`,
    /// ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
}

pub fn contract_generic(base: &Graph, class: &[Edge]) -> Result<GenericContraction> {
    for &e in class {
        base.check_edge(e)?;
    }
    let n = base.order();
    let inner = Graph::from_edges(base.names().to_vec(), &dedup_edges(class))?;
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if block_of[s] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = inner
            .bfs(s)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        members.sort_unstable();
        for &v in &members {
            block_of[v] = blocks.len();
        }
        blocks.push(members);
    }
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for (a, b) in base.edges() {
        let (p, q) = (block_of[a], block_of[b]);
        if p != q {
            edges.insert(crate::graph::edge(p, q));
        }
    }
    let names: Vec<String> = blocks
        .iter()
        .map(|b| b.iter().map(|&v| base.name(v)).collect::<Vec<_>>().join("+"))
        .collect();
    let edges: Vec<Edge> = edges.into_iter().collect();
    Ok(GenericContraction {
        graph: Graph::from_edges(names, &edges)?,
        blocks,
    })
}

fn dedup_edges(class: &[Edge]) -> Vec<Edge> {
    let set: BTreeSet<Edge> = class.iter().map(|&(a, b)| crate::graph::edge(a, b)).collect();
    set.into_iter().collect()
}

/// Compare [`contract`] against [`contract_generic`] on the Δ-class of
/// coordinate `j`: every block must project to one vertex and the block
/// graph must equal the coordinate-deleted graph. Returns the first mismatch.
pub fn contraction_agrees_with_generic(g: &LabeledGraph, j: usize) -> Result<Option<String>> {
    let m = g.metric();
    let classes = crate::relations::delta_classes(&m)?;
    let class = crate::relations::class_of_coordinate(g, &classes, j)?;
    let generic = contract_generic(g.graph(), &class.edges)?;
    let fast = contract(g, j)?;
    let mut image = Vec::with_capacity(generic.blocks.len());
    for block in &generic.blocks {
        let proj: BTreeSet<Vertex> = block.iter().map(|&v| g.vertex(v).without_coord(j)).collect();
        if proj.len() != 1 {
            return Ok(Some(format!("block {:?} spans several projections", generic.graph.name(image.len()))));
        }
        image.push(fast.graph.require(proj.iter().next().unwrap())?);
    }
    if image.len() != fast.graph.order() || image.iter().collect::<BTreeSet<_>>().len() != image.len() {
        return Ok(Some(format!(
            "{} blocks against {} contracted vertices",
            image.len(),
            fast.graph.order()
        )));
    }
    let mapped: BTreeSet<Edge> = generic
        .graph
        .edges()
        .into_iter()
        .map(|(p, q)| crate::graph::edge(image[p], image[q]))
        .collect();
    let expected: BTreeSet<Edge> = fast.graph.graph().edges().into_iter().collect();
    Ok((mapped != expected).then(|| "block graph differs from the coordinate-deleted graph".to_string()))
}

/// One contraction step of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionStep {
    /// Coordinate deleted, 1-based in the graph before the step.
    pub coord: usize,
    /// Level sets `X_0, …` to expand along when replaying this step.
    pub covers: Vec<Vec<Vertex>>,
    /// The graph after the step.
    pub result: LabeledGraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub original: LabeledGraph,
    /// Steps in contraction order; the last result is `K1`.
    pub steps: Vec<DecompositionStep>,
}

fn isometric_daisy_violation(g: &LabeledGraph) -> Result<Option<String>> {
    let shape = g.shape();
    if let Some(v) = is_daisy(shape, g.vertices(), &shape.root())?.violation {
        return Ok(Some(format!("{} is present but {} is not", v.vertex, v.missing)));
    }
    if let Some(gap) = is_isometric_with(g, Exec::Sequential).witness {
        return Ok(Some(format!("d({}, {}) is {} in the host, {:?} inside", gap.u, gap.v, gap.host, gap.sub)));
    }
    Ok(None)
}

/// Contract an isometric daisy graph of its minimal host down to `K1`,
/// deleting coordinates from the last to the first.
pub fn decompose_to_k1(g: &LabeledGraph) -> Result<Decomposition> {
    if !is_minimal_host(g) {
        return Err(Error::Precondition(format!("host {} is not minimal", g.shape())));
    }
    if let Some(why) = isometric_daisy_violation(g)? {
        return Err(Error::Precondition(format!("not an isometric daisy graph: {why}")));
    }
    let mut steps = Vec::with_capacity(g.shape().dim());
    let mut current = g.clone();
    for j in (1..=g.shape().dim()).rev() {
        let c = contract(&current, j)?;
        if let Some(why) = isometric_daisy_violation(&c.graph)? {
            return Err(Error::TheoremViolation(format!(
                "contracting coordinate {j} of {} vertices leaves a graph that is not an isometric daisy graph: {why}",
                current.order()
            )));
        }
        for (l, x) in c.covers.iter().enumerate().skip(1) {
            if let Some(v) = is_daisy(c.graph.shape(), x, &c.graph.shape().root())?.violation {
                return Err(Error::TheoremViolation(format!(
                    "level set X_{l} of coordinate {j} is not a daisy graph ({} without {})",
                    v.vertex, v.missing
                )));
            }
        }
        current = c.graph.clone();
        steps.push(DecompositionStep {
            coord: j,
            covers: c.covers,
            result: c.graph,
        });
    }
    Ok(Decomposition {
        original: g.clone(),
        steps,
    })
}

impl Decomposition {
    /// Rebuild from `K1` by daisy peripheral expansions, undoing the steps
    /// in reverse and re-inserting each coordinate where it was deleted.
    pub fn replay(&self) -> Result<LabeledGraph> {
        replay_steps(&self.steps)
    }

    pub fn replays_exactly(&self) -> Result<bool> {
        Ok(self.replay()? == self.original)
    }
}

/// Replay a list of steps (contraction order) starting from `K1`.
pub fn replay_steps(steps: &[DecompositionStep]) -> Result<LabeledGraph> {
    let mut g = LabeledGraph::new(Shape::trivial(), [Vertex(vec![])])?;
    for step in steps.iter().rev() {
        g = daisy_peripheral_expand_at(&g, &step.covers, step.coord)?;
    }
    Ok(g)
}

/// A random daisy peripheral cover family `[V(g), W_1, …, W_l]` with
/// `1 ≤ l ≤ max_extra`; each `W_i` is a random down-set of `g`. The result
/// still has to pass the expansion conditions.
pub fn sample_daisy_cover<R: Rng>(
    g: &LabeledGraph,
    poset: &DownsetPoset<Vertex>,
    inside: Mask,
    max_extra: usize,
    rng: &mut R,
) -> Vec<Vec<Vertex>> {
    let l = rng.gen_range(1..=max_extra.max(1));
    let members: Vec<usize> = ones(inside).collect();
    let mut covers = vec![g.vertices().to_vec()];
    for _ in 0..l {
        let p: f64 = rng.gen_range(0.0..1.0);
        let mut set = bit(poset.root_index());
        let mut picks = members.clone();
        picks.shuffle(rng);
        for v in picks {
            if rng.gen_bool(p * p) {
                set |= bit(v) | poset.below(v);
            }
        }
        covers.push(poset.members(set));
    }
    covers
}
