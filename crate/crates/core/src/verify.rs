//! Verification harness.
//!
//! Each check sweeps a declarative family of instances and yields one
//! [`CheckReport`] per instance. Failures carry a witness that names the
//! instance and the offending vertices, so re-running the check on that
//! instance alone reproduces them. Wall time is kept on the report but never
//! serialized, which keeps reports byte-identical across runs.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{BitGraph, Mask};
use crate::daisy::{build_daisy, daisy_cube_of_singleton, is_daisy, is_minimal_host, DownsetPoset};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expansion::{
    contract, contraction_agrees_with_generic, daisy_peripheral_expand, decompose_to_k1, round_trip,
    sample_daisy_cover,
};
use crate::graph::{graph_interval, is_isometric_with, Graph, LabeledGraph, Metric};
use crate::hamming::{hamming_interval, Shape, Vertex};
use crate::medians::{
    all_distinct_coords, pseudo_medians, quasi_median_hamming, rooted_triangle_condition, triangle_condition_with,
};
use crate::relations::{
    anchored_edge, class_of_coordinate, coordinate_slice, delta_classes_rooted, is_peripheral_class,
    verify_w_equals_wuv,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
            Verdict::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    /// Counts or a certificate for passing runs, the reason for skips.
    pub detail: String,
    pub witness: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

struct Outcome {
    verdict: Verdict,
    detail: String,
    witness: Option<String>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(detail: impl Into<String>, witness: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    fn not_applicable(detail: impl Into<String>, witness: Option<String>) -> Self {
        Outcome {
            verdict: Verdict::NotApplicable,
            detail: detail.into(),
            witness,
        }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Skipped,
            detail: detail.into(),
            witness: None,
        }
    }
}

fn run(check: &str, instance: &str, f: impl FnOnce() -> Result<Outcome>) -> CheckReport {
    let start = Instant::now();
    let outcome = match f() {
        Ok(o) => o,
        Err(Error::BudgetExceeded { count, budget }) => {
            Outcome::skipped(format!("budget exceeded: {count} > {budget}"))
        }
        Err(e) => Outcome::fail("error", e.to_string()),
    };
    CheckReport {
        check: check.to_string(),
        instance: instance.to_string(),
        verdict: outcome.verdict,
        detail: outcome.detail,
        witness: outcome.witness,
        wall_time: start.elapsed(),
    }
}

/// A connected graph with a chosen root.
#[derive(Clone, Debug)]
pub struct RootedGraph {
    pub name: String,
    pub metric: Metric,
    pub root: usize,
}

impl RootedGraph {
    pub fn new(name: impl Into<String>, graph: Graph, root: usize) -> Self {
        RootedGraph {
            name: name.into(),
            metric: Metric::new(graph),
            root,
        }
    }

    /// A Hamming graph rooted at `0^n`.
    pub fn hamming(shape: &Shape) -> Result<Self> {
        let full = LabeledGraph::full(shape.clone(), crate::bits::MAX_VERTICES)?;
        Ok(RootedGraph {
            name: format!("H{shape}"),
            metric: full.metric(),
            root: 0,
        })
    }

    fn vertex_name(&self, v: usize) -> &str {
        self.metric.graph.name(v)
    }
}

/// The 6-cycle `u, x1, x2, r, y1, y2`.
pub fn c6() -> Graph {
    let names = ["u", "x1", "x2", "r", "y1", "y2"];
    let edges = [("u", "x1"), ("x1", "x2"), ("x2", "r"), ("r", "y1"), ("y1", "y2"), ("y2", "u")];
    Graph::from_named_edges(&names, &edges).expect("valid cycle")
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges((0..10).map(|i| i.to_string()).collect(), &edges).expect("valid graph")
}

/// Small graphs of assorted kinds, each rooted at every vertex.
pub fn small_rooted_graphs() -> Vec<RootedGraph> {
    let named = |n: usize, e: &[(usize, usize)]| {
        Graph::from_edges((0..n).map(|i| i.to_string()).collect(), e).expect("valid graph")
    };
    let graphs: Vec<(&str, Graph)> = vec![
        ("K1", Graph::complete(1)),
        ("K2", Graph::complete(2)),
        ("K3", Graph::complete(3)),
        ("K4", Graph::complete(4)),
        ("P4", Graph::path(4)),
        ("K1,3", named(4, &[(0, 1), (0, 2), (0, 3)])),
        ("tree6", named(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])),
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
        ("C6", c6()),
        ("C7", Graph::cycle(7)),
        ("diamond", named(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])),
        ("K2,3", named(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])),
        ("house", named(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)])),
        ("Petersen", petersen()),
    ];
    let mut out = Vec::new();
    for (name, g) in graphs {
        for r in 0..g.order() {
            out.push(RootedGraph::new(format!("{name} rooted at {}", g.name(r)), g.clone(), r));
        }
    }
    out
}

/// Every shape with at most `max_vertices` vertices (including `K1`), with
/// factors non-increasing unless `ordered`.
pub fn shapes_up_to(max_vertices: usize, ordered: bool) -> Vec<Shape> {
    fn rec(prefix: &mut Vec<usize>, product: usize, max: usize, ordered: bool, out: &mut Vec<Shape>) {
        out.push(Shape::new(prefix.clone()).expect("factors >= 2"));
        let cap = if ordered { max / product } else { prefix.last().copied().unwrap_or(max).min(max / product) };
        for k in 2..=cap {
            prefix.push(k);
            rec(prefix, product * k, max, ordered, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, max_vertices, ordered, &mut out);
    out.sort_by(|a, b| (a.dim(), a.factors()).cmp(&(b.dim(), b.factors())));
    out
}

fn parse_shapes(list: &[&str]) -> Vec<Shape> {
    list.iter().map(|s| s.parse().expect("valid shape literal")).collect()
}

// ---------------------------------------------------------------------------
// Hamming preliminaries

pub fn check_hamming_intervals(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    exec.map(shapes, |shape| {
        run("hamming_intervals", &format!("shape {shape}"), || {
            let full = LabeledGraph::full(shape.clone(), 64)?;
            let n = full.order();
            let bad = (0..n).find_map(|u| {
                (0..n).find_map(|v| {
                    let fast = hamming_interval(shape, full.vertex(u), full.vertex(v)).ok()?;
                    let slow: Vec<Vertex> = graph_interval(full.graph(), u, v)
                        .ok()?
                        .into_iter()
                        .map(|x| full.vertex(x).clone())
                        .collect();
                    (fast != slow).then(|| format!("I({}, {})", full.vertex(u), full.vertex(v)))
                })
            });
            Ok(match bad {
                None => Outcome::pass(format!("{} pairs", n * n)),
                Some(w) => Outcome::fail("product rule disagrees with BFS", w),
            })
        })
    })
}

pub fn check_quasi_median_rule(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    shapes
        .iter()
        .map(|shape| {
            run("quasi_median_rule", &format!("shape {shape}"), || {
                let full = LabeledGraph::full(shape.clone(), 64)?;
                let m = full.metric();
                let n = full.order();
                let bad = exec.find_map_first_range(n * n, |uv| {
                    let (u, v) = (uv / n, uv % n);
                    (0..n).find_map(|w| {
                        let (a, b, c) = (full.vertex(u), full.vertex(v), full.vertex(w));
                        let q = quasi_median_hamming(shape, a, b, c).ok()?;
                        let p = pseudo_medians(&m, u, v, w).ok()?;
                        let expected = (full.index_of(&q.x)?, full.index_of(&q.y)?, full.index_of(&q.z)?);
                        let ok = p.size == Some(q.size)
                            && q.size == all_distinct_coords(a, b, c)
                            && p.triples.len() == 1
                            && (p.triples[0].x, p.triples[0].y, p.triples[0].z) == expected;
                        (!ok).then(|| format!("triple ({a}), ({b}), ({c}): enumeration found {} triple(s) of size {:?}", p.triples.len(), p.size))
                    })
                });
                Ok(match bad {
                    None => Outcome::pass(format!("{} triples", n * n * n)),
                    Some(w) => Outcome::fail("coordinate rule disagrees with enumeration", w),
                })
            })
        })
        .collect()
}

pub fn check_triangle_condition_hamming(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    shapes
        .iter()
        .map(|shape| {
            run("triangle_condition_hamming", &format!("shape {shape}"), || {
                let full = LabeledGraph::full(shape.clone(), 1 << 12)?;
                let m = full.metric();
                Ok(match triangle_condition_with(&m, exec)? {
                    None => Outcome::pass(format!("{} candidate triples", crate::medians::triangle_candidates(&m))),
                    Some(t) => Outcome::fail(
                        "triangle condition fails",
                        format!("apex {}, edge {}-{}", full.vertex(t.apex), full.vertex(t.v), full.vertex(t.w)),
                    ),
                })
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Rooted graphs: pseudo-median conditions and isometry of all daisy graphs

/// First daisy graph (as host indices) that is not isometric, in
/// enumeration order.
pub fn first_non_isometric_daisy(m: &Metric, root: usize, exec: Exec) -> Result<Option<Vec<usize>>> {
    let poset = DownsetPoset::new(m, &root, crate::bits::MAX_VERTICES)?;
    let bits = BitGraph::new(m)?;
    Ok(poset.find_map_first(exec, |set: Mask| (!bits.is_isometric(set)).then(|| poset.members(set))))
}

/// First pair `u < v` whose triple `(u, v, root)` has a minimal
/// pseudo-median size rejected by `accept`.
pub fn first_pair_where<F>(m: &Metric, root: usize, exec: Exec, accept: F) -> Result<Option<(usize, usize, Option<usize>)>>
where
    F: Fn(Option<usize>) -> bool + Sync + Send,
{
    m.require_connected()?;
    m.graph.check_vertex(root)?;
    let n = m.order();
    Ok(exec.find_map_first_range(n, |u| {
        (u + 1..n).find_map(|v| {
            let size = pseudo_medians(m, u, v, root).expect("connected").size;
            (!accept(size)).then_some((u, v, size))
        })
    }))
}

fn describe_pair(g: &RootedGraph, (u, v, size): (usize, usize, Option<usize>)) -> String {
    format!(
        "{}: triple ({}, {}, {}) has minimal pseudo-median size {}",
        g.name,
        g.vertex_name(u),
        g.vertex_name(v),
        g.vertex_name(g.root),
        size.map_or("none".to_string(), |s| s.to_string())
    )
}

fn describe_daisy(g: &RootedGraph, set: &[usize]) -> String {
    let names: Vec<&str> = set.iter().map(|&x| g.vertex_name(x)).collect();
    format!("{}: daisy graph {{{}}} is not isometric", g.name, names.join(", "))
}

/// The daisy-isometry conclusion shared by the sufficient conditions.
fn sufficient(g: &RootedGraph, exec: Exec, accept: impl Fn(Option<usize>) -> bool + Sync + Send, label: &str) -> Result<Outcome> {
    if let Some(p) = first_pair_where(&g.metric, g.root, exec, accept)? {
        return Ok(Outcome::not_applicable(format!("hypothesis ({label}) fails"), Some(describe_pair(g, p))));
    }
    Ok(match first_non_isometric_daisy(&g.metric, g.root, exec)? {
        None => Outcome::pass(format!("hypothesis ({label}) holds; every daisy graph isometric")),
        Some(set) => Outcome::fail("hypothesis holds but a daisy graph is not isometric", describe_daisy(g, &set)),
    })
}

pub fn check_sufficient_size0(family: &[RootedGraph], exec: Exec) -> Vec<CheckReport> {
    family
        .iter()
        .map(|g| run("sufficient_size0", &g.name, || sufficient(g, exec, |s| s == Some(0), "size 0")))
        .collect()
}

/// The literal hypothesis: every pair has minimal size exactly 1.
pub fn check_sufficient_size1_strict(family: &[RootedGraph], exec: Exec) -> Vec<CheckReport> {
    family
        .iter()
        .map(|g| run("sufficient_size1_strict", &g.name, || sufficient(g, exec, |s| s == Some(1), "size exactly 1")))
        .collect()
}

/// The combined hypothesis: every pair has minimal size 0 or 1.
pub fn check_sufficient_size01(family: &[RootedGraph], exec: Exec) -> Vec<CheckReport> {
    family
        .iter()
        .map(|g| run("sufficient_size01", &g.name, || sufficient(g, exec, |s| s.is_some_and(|s| s <= 1), "size 0 or 1")))
        .collect()
}

fn rooted_tc(g: &RootedGraph) -> Result<Option<String>> {
    Ok(rooted_triangle_condition(&g.metric, g.root)?.map(|t| {
        format!(
            "{}: edge {}-{} has no common neighbour closer to the root",
            g.name,
            g.vertex_name(t.v),
            g.vertex_name(t.w)
        )
    }))
}

/// Rooted triangle condition and all daisy graphs isometric imply small
/// pseudo-medians for every pair.
pub fn check_necessary_condition(family: &[RootedGraph], exec: Exec) -> Vec<CheckReport> {
    family
        .iter()
        .map(|g| {
            run("necessary_condition", &g.name, || {
                if let Some(w) = rooted_tc(g)? {
                    return Ok(Outcome::not_applicable("rooted triangle condition fails", Some(w)));
                }
                if let Some(set) = first_non_isometric_daisy(&g.metric, g.root, exec)? {
                    return Ok(Outcome::not_applicable("some daisy graph is not isometric", Some(describe_daisy(g, &set))));
                }
                Ok(match first_pair_where(&g.metric, g.root, exec, |s| s.is_some_and(|s| s <= 1))? {
                    None => Outcome::pass("every pair has a pseudo-median of size 0 or 1"),
                    Some(p) => Outcome::fail("all daisy graphs isometric but a pair has no small pseudo-median", describe_pair(g, p)),
                })
            })
        })
        .collect()
}

/// Pair version: rooted triangle condition and `G_r({u, v})` isometric imply
/// a small pseudo-median of `(u, v, r)`.
pub fn check_necessary_pairs(family: &[RootedGraph], exec: Exec) -> Vec<CheckReport> {
    family
        .iter()
        .map(|g| {
            run("necessary_pairs", &g.name, || {
                if let Some(w) = rooted_tc(g)? {
                    return Ok(Outcome::not_applicable("rooted triangle condition fails", Some(w)));
                }
                let m = &g.metric;
                let n = m.order();
                let bits = BitGraph::new(m)?;
                let bad = exec.find_map_first_range(n, |u| {
                    (u + 1..n).find_map(|v| {
                        let d = build_daisy(m, &g.root, &[u, v]).ok()?;
                        let set = d.vertices.iter().fold(0, |s, &x| s | crate::bits::bit(x));
                        if !bits.is_isometric(set) {
                            return None;
                        }
                        let size = pseudo_medians(m, u, v, g.root).ok()?.size;
                        (!size.is_some_and(|s| s <= 1)).then_some((u, v, size))
                    })
                });
                Ok(match bad {
                    None => Outcome::pass(format!("{} pairs", n * n.saturating_sub(1) / 2)),
                    Some(p) => Outcome::fail("isometric pair daisy without small pseudo-median", describe_pair(g, p)),
                })
            })
        })
        .collect()
}

/// Both sides of the characterization, computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationSides {
    /// `None` when every daisy graph is isometric.
    pub non_isometric: Option<Vec<usize>>,
    /// `None` when every pair has a pseudo-median of size at most 1.
    pub large_pair: Option<(usize, usize, Option<usize>)>,
}

pub fn characterization_sides(m: &Metric, root: usize, exec: Exec) -> Result<CharacterizationSides> {
    Ok(CharacterizationSides {
        non_isometric: first_non_isometric_daisy(m, root, exec)?,
        large_pair: first_pair_where(m, root, exec, |s| s.is_some_and(|s| s <= 1))?,
    })
}

pub fn check_characterization(family: &[RootedGraph], exec: Exec) -> Vec<CheckReport> {
    family
        .iter()
        .map(|g| {
            run("characterization", &g.name, || {
                if let Some(w) = rooted_tc(g)? {
                    return Ok(Outcome::not_applicable("rooted triangle condition fails", Some(w)));
                }
                let sides = characterization_sides(&g.metric, g.root, exec)?;
                let left = sides.non_isometric.is_none();
                let right = sides.large_pair.is_none();
                let mut detail = format!("all daisy graphs isometric: {left}; all pairs small: {right}");
                if let Some(set) = &sides.non_isometric {
                    let _ = write!(detail, "; {}", describe_daisy(g, set));
                }
                if let Some(p) = sides.large_pair {
                    let _ = write!(detail, "; {}", describe_pair(g, p));
                }
                Ok(if left == right {
                    Outcome::pass(detail)
                } else {
                    Outcome::fail("biconditional broken", detail)
                })
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The six-cycle

/// Facts about the 6-cycle rooted at `r`, recorded for the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C6Facts {
    pub u_daisy_is_whole_graph: bool,
    pub u_daisy_isometric: bool,
    /// Minimal pseudo-median sizes of `(x1, y1, r)` and `(x1, y2, r)`.
    pub size_x1_y1_r: Option<usize>,
    pub size_x1_y2_r: Option<usize>,
    pub x1_y2_daisy_isometric: bool,
    pub first_non_isometric: Option<Vec<String>>,
    pub rooted_triangle_condition: bool,
}

pub fn c6_facts(exec: Exec) -> Result<C6Facts> {
    let m = Metric::new(c6());
    let id = |s: &str| m.graph.index_of(s).expect("C6 vertex");
    let r = id("r");
    let whole = build_daisy(&m, &r, &[id("u")])?;
    let pair = build_daisy(&m, &r, &[id("x1"), id("y2")])?;
    let iso = |vs: &[usize]| crate::graph::isometric_in(&m, vs, exec).isometric;
    Ok(C6Facts {
        u_daisy_is_whole_graph: whole.vertices.len() == 6,
        u_daisy_isometric: iso(&whole.vertices),
        size_x1_y1_r: pseudo_medians(&m, id("x1"), id("y1"), r)?.size,
        size_x1_y2_r: pseudo_medians(&m, id("x1"), id("y2"), r)?.size,
        x1_y2_daisy_isometric: iso(&pair.vertices),
        first_non_isometric: first_non_isometric_daisy(&m, r, exec)?
            .map(|s| s.into_iter().map(|x| m.graph.name(x).to_string()).collect()),
        rooted_triangle_condition: rooted_triangle_condition(&m, r)?.is_none(),
    })
}

/// `G_r({u})` is all of C6 and isometric although `(x1, y2, r)` has no
/// pseudo-median of size 0 or 1, and `G_r({x1, y2})` is not isometric.
pub fn check_c6_example(exec: Exec) -> Vec<CheckReport> {
    vec![run("c6_example", "C6 rooted at r", || {
        let f = c6_facts(exec)?;
        let detail = format!(
            "G_r({{u}}) whole: {}, isometric: {}; size(x1,y2,r) = {:?}; size(x1,y1,r) = {:?}; G_r({{x1,y2}}) isometric: {}",
            f.u_daisy_is_whole_graph, f.u_daisy_isometric, f.size_x1_y2_r, f.size_x1_y1_r, f.x1_y2_daisy_isometric
        );
        let ok = f.u_daisy_is_whole_graph
            && f.u_daisy_isometric
            && f.size_x1_y2_r.is_some_and(|s| s >= 2)
            && !f.x1_y2_daisy_isometric
            && f.rooted_triangle_condition;
        Ok(if ok {
            Outcome {
                verdict: Verdict::Pass,
                detail,
                witness: Some("non-isometric daisy graph G_r({x1, y2}) = {r, x1, x2, y1, y2, u}: d(x1, y2) is 2 in C6, 4 inside".into()),
            }
        } else {
            Outcome::fail("C6 facts differ", detail)
        })
    })]
}

// ---------------------------------------------------------------------------
// Daisy graphs of Hamming graphs

pub fn check_singleton_daisy_cube(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    exec.map(shapes, |shape| {
        run("singleton_daisy_cube", &format!("shape {shape}"), || {
            let xs = crate::hamming::enumerate_vertices(shape, 1 << 12)?;
            let cube = Shape::new(vec![2; shape.dim()])?;
            for x in &xs {
                let d = build_daisy(shape, &shape.root(), std::slice::from_ref(x))?;
                let y = daisy_cube_of_singleton(shape, &d)?;
                let yv = Vertex(y.iter().map(|&b| b as usize).collect());
                let target = build_daisy(&cube, &cube.root(), &[yv])?;
                let phi = |v: &Vertex| Vertex(v.coords().iter().map(|&c| c.min(1)).collect());
                let g = d.to_labeled(shape)?;
                let image: Vec<Vertex> = g.vertices().iter().map(phi).collect();
                let distinct: BTreeSet<&Vertex> = image.iter().collect();
                let onto = distinct.len() == image.len() && distinct.into_iter().cloned().collect::<Vec<_>>() == target.vertices;
                let h = target.to_labeled(&cube)?;
                let edges_ok = g.graph().edges().len() == h.graph().edges().len()
                    && g.graph().edges().iter().all(|&(a, b)| h.graph().has_edge(h.index_of(&image[a]).unwrap(), h.index_of(&image[b]).unwrap()));
                if !onto || !edges_ok {
                    return Ok(Outcome::fail("coordinate map is not an isomorphism", format!("shape {shape}, generator {x}")));
                }
            }
            Ok(Outcome::pass(format!("{} generators", xs.len())))
        })
    })
}

/// The path from `u` to `v` built in the proof of the two-generator
/// theorem. If both lie in `I(x, 0)` (or both in `I(y, 0)`) the first
/// differing coordinate is fixed at each step; otherwise coordinates where
/// `v` is 0 are cleared first, then the (at most one) coordinate where both
/// are nonzero is switched, then the coordinates where `u` is 0 are filled.
pub fn pair_path(x: &Vertex, y: &Vertex, u: &Vertex, v: &Vertex) -> Vec<Vertex> {
    let root = Vertex(vec![0; u.len()]);
    let same_side = (u.between(x, &root) && v.between(x, &root)) || (u.between(y, &root) && v.between(y, &root));
    let mut path = vec![u.clone()];
    let mut cur = u.clone();
    let diff: Vec<usize> = (1..=u.len()).filter(|&j| u.coord(j) != v.coord(j)).collect();
    let order: Vec<usize> = if same_side {
        diff
    } else {
        let cleared = diff.iter().copied().filter(|&j| v.coord(j) == 0);
        let switched = diff.iter().copied().filter(|&j| u.coord(j) != 0 && v.coord(j) != 0);
        let filled = diff.iter().copied().filter(|&j| u.coord(j) == 0);
        cleared.chain(switched).chain(filled).collect()
    };
    for j in order {
        cur = cur.with_coord(j, v.coord(j));
        path.push(cur.clone());
    }
    path
}

/// Is `path` a shortest `u,v`-path of the Hamming graph inside `G_0({x,y})`?
pub fn valid_pair_path(x: &Vertex, y: &Vertex, u: &Vertex, v: &Vertex, path: &[Vertex]) -> bool {
    let root = Vertex(vec![0; u.len()]);
    path.first() == Some(u)
        && path.last() == Some(v)
        && path.len() == u.hamming(v) + 1
        && path.windows(2).all(|w| w[0].hamming(&w[1]) == 1)
        && path.iter().all(|p| p.between(x, &root) || p.between(y, &root))
}

/// One pair of generators of the two-generator theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInstance {
    pub x: Vertex,
    pub y: Vertex,
    pub isometric: bool,
    /// Minimal pseudo-median size of `(x, y, 0^n)` in the host.
    pub host_size: Option<usize>,
    /// The same size computed inside the daisy graph itself.
    pub inner_size: Option<usize>,
    /// First vertex pair of an isometric instance whose constructed path fails.
    pub bad_path: Option<(Vertex, Vertex)>,
}

pub fn pair_instances(shape: &Shape, exec: Exec) -> Result<Vec<PairInstance>> {
    let full = LabeledGraph::full(shape.clone(), crate::bits::MAX_VERTICES)?;
    let host = full.metric();
    let bits = BitGraph::new(&host)?;
    let n = full.order();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let out = exec.map(&pairs, |&(a, b)| -> Result<PairInstance> {
        let (x, y) = (full.vertex(a).clone(), full.vertex(b).clone());
        let d = build_daisy(shape, &shape.root(), &[x.clone(), y.clone()])?;
        let g = d.to_labeled(shape)?;
        let set = g.vertices().iter().fold(0, |s, v| s | crate::bits::bit(full.index_of(v).unwrap()));
        let isometric = bits.is_isometric(set);
        let host_size = pseudo_medians(&host, a, b, 0)?.size;
        let gm = g.metric();
        let gi = |v: &Vertex| g.index_of(v).unwrap();
        let inner_size = pseudo_medians(&gm, gi(&x), gi(&y), gi(&shape.root()))?.size;
        let mut bad_path = None;
        if isometric {
            'outer: for u in g.vertices() {
                for v in g.vertices() {
                    if !valid_pair_path(&x, &y, u, v, &pair_path(&x, &y, u, v)) {
                        bad_path = Some((u.clone(), v.clone()));
                        break 'outer;
                    }
                }
            }
        }
        Ok(PairInstance {
            x,
            y,
            isometric,
            host_size,
            inner_size,
            bad_path,
        })
    });
    out.into_iter().collect()
}

pub fn check_pair_theorem(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    shapes
        .iter()
        .map(|shape| {
            run("pair_theorem", &format!("shape {shape}"), || {
                let pairs = pair_instances(shape, exec)?;
                let small = |s: Option<usize>| s.is_some_and(|s| s <= 1);
                if let Some(p) = pairs.iter().find(|p| p.isometric != small(p.host_size)) {
                    return Ok(Outcome::fail(
                        "isometry disagrees with the pseudo-median size",
                        format!("shape {shape}, X = {{{}, {}}}: isometric {}, size {:?}", p.x, p.y, p.isometric, p.host_size),
                    ));
                }
                if let Some(p) = pairs.iter().find(|p| p.bad_path.is_some()) {
                    let (u, v) = p.bad_path.clone().unwrap();
                    return Ok(Outcome::fail(
                        "constructed path is not a shortest path inside the daisy graph",
                        format!("shape {shape}, X = {{{}, {}}}, u = {u}, v = {v}", p.x, p.y),
                    ));
                }
                let iso = pairs.iter().filter(|p| p.isometric).count();
                let inner = pairs.iter().filter(|p| p.isometric != small(p.inner_size)).count();
                Ok(Outcome::pass(format!(
                    "{} pairs, {iso} isometric; sizes measured inside the daisy graph disagree on {inner}",
                    pairs.len()
                )))
            })
        })
        .collect()
}

/// Isometric daisy graphs of `shape` whose minimal host is `shape` itself.
pub fn isometric_minimal_daisies(shape: &Shape, exec: Exec) -> Result<Vec<LabeledGraph>> {
    let full = LabeledGraph::full(shape.clone(), crate::bits::MAX_VERTICES)?;
    let bits = BitGraph::new(&full.metric())?;
    let poset = DownsetPoset::new(shape, &shape.root(), crate::bits::MAX_VERTICES)?;
    let sets: Vec<Mask> = poset.iter().filter(|&s| bits.is_isometric(s)).collect();
    let graphs = exec.map(&sets, |&s| LabeledGraph::new(shape.clone(), poset.members(s)));
    let mut out = Vec::new();
    for g in graphs {
        let g = g?;
        if is_minimal_host(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Structural facts about one isometric daisy graph of its minimal host.
/// Returns the first violated one.
pub fn structure_violation(g: &LabeledGraph) -> Result<Option<String>> {
    let shape = g.shape();
    let n = shape.dim();
    let m = g.metric();
    let root = g.require(&shape.root())?;
    for j in 1..=n {
        let slice = coordinate_slice(g, j)?;
        for (i, level) in slice.levels.iter().enumerate() {
            if !level.is_empty() && !verify_w_equals_wuv(g, &m, j, i)? {
                return Ok(Some(format!("W_{i}^{j} is not the W-set of its root edge")));
            }
        }
    }
    let classes = delta_classes_rooted(&m, root)?;
    if let Some(c) = classes.iter().find(|c| c.anchor.is_none()) {
        let (a, b) = c.edges[0];
        return Ok(Some(format!("Δ-class of {}-{} has no edge at the root", g.vertex(a), g.vertex(b))));
    }
    for c in &classes {
        anchored_edge(g, c)?;
    }
    if classes.len() != n {
        return Ok(Some(format!("{} Δ-classes for {n} coordinates", classes.len())));
    }
    for j in 1..=n {
        let class = class_of_coordinate(g, &classes, j)?;
        let expected: Vec<_> = g
            .graph()
            .edges()
            .into_iter()
            .filter(|&(a, b)| g.vertex(a).coord(j) != g.vertex(b).coord(j))
            .collect();
        if class.edges != expected {
            return Ok(Some(format!("Δ-class of coordinate {j} is not the set of edges changing it")));
        }
        if !is_peripheral_class(g, j)? {
            return Ok(Some(format!("Δ-class of coordinate {j} is not peripheral")));
        }
        let c = contract(g, j)?;
        for (i, x) in c.covers.iter().enumerate() {
            if let Some(v) = is_daisy(c.graph.shape(), x, &c.graph.shape().root())?.violation {
                return Ok(Some(format!(
                    "projection of W_{i}^{j} is not a daisy graph: {} without {}",
                    v.vertex, v.missing
                )));
            }
        }
    }
    Ok(None)
}

pub fn check_structure_lemmas(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    shapes
        .iter()
        .map(|shape| {
            run("structure_lemmas", &format!("shape {shape}"), || {
                let graphs = isometric_minimal_daisies(shape, exec)?;
                let found = exec.find_map_first(&graphs, |g| match structure_violation(g) {
                    Ok(None) => None,
                    Ok(Some(w)) => Some(format!("graph {{{}}}: {w}", vertex_list(g))),
                    Err(e) => Some(format!("graph {{{}}}: {e}", vertex_list(g))),
                });
                Ok(match found {
                    None => Outcome::pass(format!("{} graphs", graphs.len())),
                    Some(w) => Outcome::fail("structure violated", w),
                })
            })
        })
        .collect()
}

fn vertex_list(g: &LabeledGraph) -> String {
    g.vertices().iter().map(|v| format!("({v})")).collect::<Vec<_>>().join(" ")
}

/// Forward and backward directions of the expansion characterization for
/// one base graph: decompose and replay, then `samples` valid sampled cover
/// families (plus every family with up to two extra sets when the host has
/// at most six vertices) must expand to isometric daisy graphs.
pub fn expansion_violation(g: &LabeledGraph, rng: &mut ChaCha8Rng, samples: usize) -> Result<Option<String>> {
    let d = match decompose_to_k1(g) {
        Ok(d) => d,
        Err(e) => return Ok(Some(format!("decomposition failed: {e}"))),
    };
    if d.steps.len() != g.shape().dim() {
        return Ok(Some(format!("{} steps for {} coordinates", d.steps.len(), g.shape().dim())));
    }
    if !d.replays_exactly()? {
        return Ok(Some("replay does not reproduce the graph".into()));
    }
    let shape = g.shape();
    let poset = DownsetPoset::new(shape, &shape.root(), crate::bits::MAX_VERTICES)?;
    let inside = poset.mask_of(g.vertices()).expect("vertices of the host");
    let forward = |covers: &[Vec<Vertex>]| -> Result<Option<String>> {
        let out = match daisy_peripheral_expand(g, covers) {
            Ok(o) => o,
            Err(Error::InvalidCover(_)) => return Ok(Some(String::new())),
            Err(e) => return Err(e),
        };
        let root = out.shape().root();
        let bad = out.shape().factors()[0] != covers.len()
            || !is_daisy(out.shape(), out.vertices(), &root)?.is_daisy
            || !is_isometric_with(&out, Exec::Sequential).isometric;
        Ok(bad.then(|| {
            let sets: Vec<String> = covers
                .iter()
                .map(|w| format!("{{{}}}", w.iter().map(|v| format!("({v})")).collect::<Vec<_>>().join(" ")))
                .collect();
            format!("expansion along {} is not an isometric daisy graph", sets.join(", "))
        }))
    };
    let mut valid = 0;
    let mut attempts = 0;
    while valid < samples && attempts < samples * 50 {
        attempts += 1;
        let covers = sample_daisy_cover(g, &poset, inside, 3, rng);
        match forward(&covers)? {
            Some(w) if w.is_empty() => {}
            Some(w) => return Ok(Some(w)),
            None => valid += 1,
        }
    }
    if valid < samples {
        return Ok(Some(format!("only {valid} valid cover families in {attempts} samples")));
    }
    if shape.vertex_count().is_some_and(|c| c <= 6) {
        let daisies: Vec<Vec<Vertex>> = poset
            .iter()
            .filter(|&s| s & !inside == 0)
            .map(|s| poset.members(s))
            .collect();
        for a in &daisies {
            if let Some(w) = forward(&[g.vertices().to_vec(), a.clone()])?.filter(|w| !w.is_empty()) {
                return Ok(Some(w));
            }
            for b in &daisies {
                if let Some(w) = forward(&[g.vertices().to_vec(), a.clone(), b.clone()])?.filter(|w| !w.is_empty()) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

pub fn check_expansion_theorems(shapes: &[Shape], seed: u64, samples: usize, exec: Exec) -> Vec<CheckReport> {
    let indexed: Vec<(usize, &Shape)> = shapes.iter().enumerate().collect();
    exec.map(&indexed, |&(k, shape)| {
        run("expansion_theorems", &format!("shape {shape}"), || {
            let graphs = isometric_minimal_daisies(shape, Exec::Sequential)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            for g in &graphs {
                if let Some(w) = expansion_violation(g, &mut rng, samples)? {
                    return Ok(Outcome::fail("expansion characterization violated", format!("graph {{{}}}: {w}", vertex_list(g))));
                }
            }
            Ok(Outcome::pass(format!("{} graphs, {samples} valid sampled families each, seed {seed}", graphs.len())))
        })
    })
}

pub fn check_round_trip(shapes: &[Shape], exec: Exec) -> Vec<CheckReport> {
    shapes
        .iter()
        .map(|shape| {
            run("round_trip", &format!("shape {shape}"), || {
                let graphs = isometric_minimal_daisies(shape, exec)?;
                let found = exec.find_map_first(&graphs, |g| {
                    (1..=shape.dim()).find_map(|j| {
                        let rt = round_trip(g, j).map_err(|e| e.to_string());
                        let generic = if g.order() <= 12 {
                            contraction_agrees_with_generic(g, j).map_err(|e| e.to_string())
                        } else {
                            Ok(None)
                        };
                        match (rt, generic) {
                            (Ok(None), Ok(None)) => None,
                            (Ok(Some(w)) | Err(w), _) | (_, Ok(Some(w)) | Err(w)) => {
                                Some(format!("graph {{{}}}, coordinate {j}: {w}", vertex_list(g)))
                            }
                        }
                    })
                });
                Ok(match found {
                    None => Outcome::pass(format!("{} graphs", graphs.len())),
                    Some(w) => Outcome::fail("round trip mismatch", w),
                })
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Suites

pub const CHECK_NAMES: &[&str] = &[
    "c6_example",
    "characterization",
    "expansion_theorems",
    "hamming_intervals",
    "necessary_condition",
    "necessary_pairs",
    "pair_theorem",
    "quasi_median_rule",
    "round_trip",
    "singleton_daisy_cube",
    "structure_lemmas",
    "sufficient_size0",
    "sufficient_size01",
    "sufficient_size1_strict",
    "triangle_condition_hamming",
];

/// Statement → check covering it.
pub const COVERAGE: &[(&str, &str)] = &[
    ("intervals of Hamming graphs follow the coordinate-wise product rule", "hamming_intervals"),
    ("quasi-median coordinate rule gives the unique minimal pseudo-median, sized by all-distinct coordinates", "quasi_median_rule"),
    ("size-0 pseudo-medians with the root make every daisy graph isometric", "sufficient_size0"),
    ("size-1 pseudo-medians with the root make every daisy graph isometric", "sufficient_size1_strict"),
    ("size 0 or 1 pseudo-medians with the root make every daisy graph isometric", "sufficient_size01"),
    ("isometric daisy graphs with C6 as converse counterexample", "c6_example"),
    ("rooted triangle condition plus all daisy graphs isometric give small pseudo-medians", "necessary_condition"),
    ("rooted triangle condition plus isometric two-generator daisy graph give a small pseudo-median", "necessary_pairs"),
    ("all daisy graphs isometric iff small pseudo-medians, under the rooted triangle condition", "characterization"),
    ("Hamming graphs satisfy the triangle condition", "triangle_condition_hamming"),
    ("all daisy graphs of a Hamming graph isometric iff small pseudo-medians", "characterization"),
    ("a one-generator daisy graph of a Hamming graph is a daisy cube", "singleton_daisy_cube"),
    ("a two-generator daisy graph is isometric iff its generators have a small pseudo-median with the root", "pair_theorem"),
    ("daisy peripheral expansion of an isometric daisy graph is an isometric daisy graph", "expansion_theorems"),
    ("every nonempty W_i^j is the W-set of an edge", "structure_lemmas"),
    ("every Δ-class has an edge at the root", "structure_lemmas"),
    ("there are exactly n Δ-classes, one per coordinate", "structure_lemmas"),
    ("every Δ-class is peripheral", "structure_lemmas"),
    ("every slice W_i^j induces a daisy graph of the coordinate-deleted host", "structure_lemmas"),
    ("contraction of a Δ-class is undone by a daisy peripheral expansion", "round_trip"),
    ("isometric daisy graphs of minimal hosts are exactly iterated daisy peripheral expansions of K1", "expansion_theorems"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Quick,
    Full,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            other => Err(Error::Parse(format!("unknown suite {other:?}; expected quick or full"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Quick => "quick",
            Suite::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Sampled valid cover families per base graph.
    pub samples: usize,
    /// Largest host (vertex count) swept by the rooted-graph checks.
    pub budget: usize,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        match suite {
            Suite::Quick => SuiteConfig {
                suite,
                seed: DEFAULT_SEED,
                samples: 20,
                budget: 12,
            },
            Suite::Full => SuiteConfig {
                suite,
                seed: DEFAULT_SEED,
                samples: 100,
                budget: 27,
            },
        }
    }
}

/// Instance families of a suite.
#[derive(Clone, Debug)]
pub struct Families {
    pub interval_shapes: Vec<Shape>,
    pub median_shapes: Vec<Shape>,
    pub triangle_shapes: Vec<Shape>,
    pub rooted: Vec<RootedGraph>,
    pub pair_shapes: Vec<Shape>,
    pub structure_shapes: Vec<Shape>,
    pub expansion_shapes: Vec<Shape>,
}

impl Families {
    pub fn for_config(config: &SuiteConfig) -> Result<Self> {
        let full = config.suite == Suite::Full;
        let mut rooted = small_rooted_graphs();
        for s in shapes_up_to(config.budget, false) {
            rooted.push(RootedGraph::hamming(&s)?);
        }
        let triangle_shapes = if full {
            shapes_up_to(64, true).into_iter().filter(|s| s.dim() <= 3 && s.factors().iter().all(|&k| k <= 4)).collect()
        } else {
            parse_shapes(&["2,2", "3,3", "2,2,2", "4,3"])
        };
        Ok(Families {
            interval_shapes: if full { shapes_up_to(64, true) } else { shapes_up_to(16, true) },
            median_shapes: parse_shapes(&["3,3", "2,2,2"]),
            triangle_shapes,
            rooted,
            pair_shapes: parse_shapes(&["3,3", "4,2", "2,2,2"]),
            structure_shapes: parse_shapes(&["2,2", "3,2", "3,3", "2,2,2"]),
            expansion_shapes: shapes_up_to(if full { 12 } else { 8 }, true),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| r.verdict == Verdict::Fail).count()
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.reports.iter().filter(|r| r.verdict == v).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# daisy verify suite={} seed={} samples={} budget={}\n",
            self.config.suite, self.config.seed, self.config.samples, self.config.budget
        );
        for r in &self.reports {
            let _ = writeln!(s, "{:<4} {:<28} {:<32} {}", r.verdict, r.check, r.instance, r.detail);
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "     witness: {w}");
            }
        }
        let _ = writeln!(
            s,
            "summary: {} pass, {} fail, {} skipped, {} not applicable",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skipped),
            self.count(Verdict::NotApplicable)
        );
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Run every check of the suite. Reports are ordered by check name, then by
/// the family order of the instances.
pub fn run_suite(config: &SuiteConfig, exec: Exec) -> Result<SuiteReport> {
    let f = Families::for_config(config)?;
    let mut reports = Vec::new();
    reports.extend(check_c6_example(exec));
    reports.extend(check_characterization(&f.rooted, exec));
    reports.extend(check_expansion_theorems(&f.expansion_shapes, config.seed, config.samples, exec));
    reports.extend(check_hamming_intervals(&f.interval_shapes, exec));
    reports.extend(check_necessary_condition(&f.rooted, exec));
    reports.extend(check_necessary_pairs(&f.rooted, exec));
    reports.extend(check_pair_theorem(&f.pair_shapes, exec));
    reports.extend(check_quasi_median_rule(&f.median_shapes, exec));
    reports.extend(check_round_trip(&f.structure_shapes, exec));
    reports.extend(check_singleton_daisy_cube(&f.structure_shapes, exec));
    reports.extend(check_structure_lemmas(&f.structure_shapes, exec));
    reports.extend(check_sufficient_size0(&f.rooted, exec));
    reports.extend(check_sufficient_size01(&f.rooted, exec));
    reports.extend(check_sufficient_size1_strict(&f.rooted, exec));
    reports.extend(check_triangle_condition_hamming(&f.triangle_shapes, exec));
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(SuiteReport {
        config: config.clone(),
        reports,
    })
}

/// Human-readable list of the shapes in a family.
pub fn describe_shapes(shapes: &[Shape]) -> String {
    shapes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn coverage_manifest_is_complete() {
        let names: BTreeSet<&str> = CHECK_NAMES.iter().copied().collect();
        assert_eq!(names.len(), CHECK_NAMES.len());
        for (_, check) in COVERAGE {
            assert!(names.contains(check), "{check}");
        }
        for name in CHECK_NAMES {
            assert!(COVERAGE.iter().any(|(_, c)| c == name), "{name} covers nothing");
        }
        let report = run_suite(&SuiteConfig { budget: 4, samples: 2, ..SuiteConfig::new(Suite::Quick) }, Exec::Sequential).unwrap();
        let run: BTreeSet<&str> = report.reports.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(run, names);
    }

    #[test]
    fn shape_families() {
        let s: Vec<String> = shapes_up_to(4, false).iter().map(|s| s.to_string()).collect();
        assert_eq!(s, vec!["()", "(2)", "(3)", "(4)", "(2,2)"]);
        // (), (2) to (6), (2,2), (2,3), (3,2)
        assert_eq!(shapes_up_to(6, true).len(), 9);
    }

    #[test]
    fn c6_check() {
        let f = c6_facts(Exec::Sequential).unwrap();
        assert!(f.u_daisy_is_whole_graph && f.u_daisy_isometric && f.rooted_triangle_condition);
        assert_eq!(f.size_x1_y1_r, Some(0));
        assert_eq!(f.size_x1_y2_r, Some(2));
        assert!(!f.x1_y2_daisy_isometric);
        assert!(f.first_non_isometric.is_some());
        assert!(check_c6_example(Exec::Sequential)[0].passed());
    }

    #[test]
    fn rooted_checks_on_examples() {
        let fam = small_rooted_graphs();
        let by_name = |n: &str| fam.iter().find(|g| g.name == n).unwrap().clone();
        let p4 = by_name("P4 rooted at 1");
        assert_eq!(check_sufficient_size0(&[p4], Exec::Sequential)[0].verdict, Verdict::Pass);
        let k3 = by_name("K3 rooted at 0");
        assert_eq!(check_sufficient_size01(&[k3], Exec::Sequential)[0].verdict, Verdict::Pass);
        let c6r = by_name("C6 rooted at r");
        assert_eq!(check_sufficient_size01(&[c6r.clone()], Exec::Sequential)[0].verdict, Verdict::NotApplicable);
        assert_eq!(check_characterization(&[c6r], Exec::Sequential)[0].verdict, Verdict::Pass);
        let cube = RootedGraph::hamming(&"2,2,2".parse().unwrap()).unwrap();
        assert_eq!(check_sufficient_size0(&[cube], Exec::Sequential)[0].verdict, Verdict::Pass);
        let k1 = by_name("K1 rooted at 0");
        assert_eq!(check_characterization(&[k1], Exec::Sequential)[0].verdict, Verdict::Pass);
    }

    #[test]
    fn pair_theorem_on_3_3() {
        let shape: Shape = "3,3".parse().unwrap();
        let pairs = pair_instances(&shape, Exec::Sequential).unwrap();
        assert_eq!(pairs.len(), 36);
        let p = pairs.iter().find(|p| p.x == v("1,1") && p.y == v("2,2")).unwrap();
        assert_eq!(p.host_size, Some(2));
        assert!(!p.isometric);
        // Measured inside the daisy graph the same triple looks small.
        assert_eq!(p.inner_size, Some(1));
        assert!(check_pair_theorem(&[shape], Exec::Sequential)[0].passed());
    }

    #[test]
    fn pair_paths() {
        let (x, y) = (v("1,1,0"), v("0,2,1"));
        let (u, w) = (v("1,1,0"), v("0,2,1"));
        let path = pair_path(&x, &y, &u, &w);
        assert_eq!(path, vec![v("1,1,0"), v("0,1,0"), v("0,2,0"), v("0,2,1")]);
        assert!(valid_pair_path(&x, &y, &u, &w, &path));
    }

    #[test]
    fn structure_on_full_3_3() {
        let g = LabeledGraph::full("3,3".parse().unwrap(), 100).unwrap();
        assert_eq!(structure_violation(&g).unwrap(), None);
        let k1 = LabeledGraph::new(Shape::trivial(), [Vertex(vec![])]).unwrap();
        assert_eq!(structure_violation(&k1).unwrap(), None);
    }

    #[test]
    fn reports_are_deterministic() {
        let config = SuiteConfig { budget: 6, samples: 3, ..SuiteConfig::new(Suite::Quick) };
        let a = run_suite(&config, Exec::Parallel).unwrap();
        let b = run_suite(&config, Exec::Sequential).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.failures(), 0, "{}", a.to_text());
    }
}
