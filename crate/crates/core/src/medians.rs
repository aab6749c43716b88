//! Pseudo-medians, quasi-medians and the (rooted) triangle condition.
//!
//! A pseudo-median of `(u, v, w)` is a triple `(x, y, z)` such that `x, y`
//! lie together on a shortest `u,v`-path, `y, z` on a shortest `v,w`-path,
//! `x, z` on a shortest `u,w`-path, all three pairwise distances are equal,
//! and that common distance (the size) is as small as possible.
//! [`pseudo_medians`] enumerates them for any connected graph; on Hamming
//! graphs [`quasi_median_hamming`] gives the unique one coordinate-wise.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Metric;
use crate::hamming::{Shape, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MedianTriple<V> {
    pub x: V,
    pub y: V,
    pub z: V,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoMedians<V> {
    /// Minimal size, `None` if no triple satisfies the path and equal-distance
    /// conditions.
    pub size: Option<usize>,
    /// Every triple of minimal size, in `(u-side, v-side, w-side)` role order, sorted.
    pub triples: Vec<MedianTriple<V>>,
}

/// Is there a shortest `a,b`-path through both `p` and `q` (in either order)?
#[inline]
fn on_common_path(m: &Metric, a: usize, b: usize, p: usize, q: usize) -> bool {
    let d = &m.dist;
    let ab = d.at(a, b);
    let pq = d.at(p, q);
    d.at(a, p) + pq + d.at(q, b) == ab || d.at(a, q) + pq + d.at(p, b) == ab
}

fn check_triple(m: &Metric, u: usize, v: usize, w: usize) -> Result<()> {
    for x in [u, v, w] {
        m.graph.check_vertex(x)?;
    }
    for (a, b) in [(u, v), (v, w), (u, w)] {
        if m.dist.get(a, b).is_none() {
            return Err(Error::Disconnected {
                a: m.graph.name(a).to_string(),
                b: m.graph.name(b).to_string(),
            });
        }
    }
    Ok(())
}

/// All pseudo-medians of `(u, v, w)` by exhaustive enumeration.
///
/// Every candidate `x` is in `I(u,v) ∩ I(u,w)`, `y` in `I(u,v) ∩ I(v,w)` and
/// `z` in `I(v,w) ∩ I(u,w)`; all combinations are tested against the
/// definition.
pub fn pseudo_medians(m: &Metric, u: usize, v: usize, w: usize) -> Result<PseudoMedians<usize>> {
    pseudo_medians_with(m, u, v, w, Exec::Sequential)
}

pub fn pseudo_medians_with(
    m: &Metric,
    u: usize,
    v: usize,
    w: usize,
    exec: Exec,
) -> Result<PseudoMedians<usize>> {
    check_triple(m, u, v, w)?;
    let d = &m.dist;
    let n = m.order();
    let xs: Vec<usize> = (0..n).filter(|&x| d.in_interval(u, v, x) && d.in_interval(u, w, x)).collect();
    let ys: Vec<usize> = (0..n).filter(|&y| d.in_interval(u, v, y) && d.in_interval(v, w, y)).collect();
    let zs: Vec<usize> = (0..n).filter(|&z| d.in_interval(v, w, z) && d.in_interval(u, w, z)).collect();

    let per_x = exec.map(&xs, |&x| {
        let mut best: Option<usize> = None;
        let mut found = Vec::new();
        for &y in &ys {
            let s = d.at(x, y);
            if best.is_some_and(|b| s > b) || !on_common_path(m, u, v, x, y) {
                continue;
            }
            for &z in &zs {
                if d.at(y, z) != s
                    || d.at(x, z) != s
                    || !on_common_path(m, v, w, y, z)
                    || !on_common_path(m, u, w, x, z)
                {
                    continue;
                }
                if best.is_none_or(|b| s < b) {
                    best = Some(s);
                    found.clear();
                }
                found.push(MedianTriple { x, y, z, size: s });
            }
        }
        (best, found)
    });

    let size = per_x.iter().filter_map(|(b, _)| *b).min();
    let mut triples: Vec<_> = per_x
        .into_iter()
        .filter(|(b, _)| *b == size)
        .flat_map(|(_, t)| t)
        .collect();
    triples.sort();
    triples.dedup();
    Ok(PseudoMedians { size, triples })
}

/// Does `(u, v, r)` have a pseudo-median of size 0 or 1?
pub fn has_small_pseudo_median(m: &Metric, u: usize, v: usize, r: usize) -> Result<bool> {
    Ok(pseudo_medians(m, u, v, r)?.size.is_some_and(|s| s <= 1))
}

/// The quasi-median of a Hamming triple: coordinates where the three values
/// are pairwise distinct keep their own values, every other coordinate takes
/// the majority value. The size is the number of all-distinct coordinates.
pub fn quasi_median_hamming(
    shape: &Shape,
    u: &Vertex,
    v: &Vertex,
    w: &Vertex,
) -> Result<MedianTriple<Vertex>> {
    for a in [u, v, w] {
        shape.validate(a)?;
    }
    let n = shape.dim();
    let (mut x, mut y, mut z) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let mut size = 0;
    for j in 0..n {
        let (a, b, c) = (u.0[j], v.0[j], w.0[j]);
        if a != b && b != c && a != c {
            size += 1;
            x.push(a);
            y.push(b);
            z.push(c);
        } else {
            let p = if a == b || a == c { a } else { b };
            x.push(p);
            y.push(p);
            z.push(p);
        }
    }
    Ok(MedianTriple {
        x: Vertex(x),
        y: Vertex(y),
        z: Vertex(z),
        size,
    })
}

/// Number of coordinates where `u`, `v`, `w` are pairwise distinct.
pub fn all_distinct_coords(u: &Vertex, v: &Vertex, w: &Vertex) -> usize {
    u.0.iter()
        .zip(&v.0)
        .zip(&w.0)
        .filter(|((a, b), c)| a != b && b != c && a != c)
        .count()
}

/// `(apex, v, w)` with `vw` an edge, `d(apex,v) = d(apex,w) ≥ 2` and no
/// common neighbour of `v, w` one step closer to the apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleViolation {
    pub apex: usize,
    pub v: usize,
    pub w: usize,
}

fn violation_at(m: &Metric, apex: usize, edges: &[(usize, usize)]) -> Option<TriangleViolation> {
    let d = &m.dist;
    edges.iter().find_map(|&(v, w)| {
        let k = d.at(apex, v);
        if k < 2 || d.at(apex, w) != k {
            return None;
        }
        let ok = m
            .graph
            .neighbors(v)
            .iter()
            .any(|&x| m.graph.has_edge(x, w) && d.at(x, apex) == k - 1);
        (!ok).then_some(TriangleViolation { apex, v, w })
    })
}

/// Equidistant adjacent pairs `(apex, v, w)` the triangle condition must
/// handle. Empty exactly when no apex sees an edge at equal distance ≥ 2.
pub fn triangle_candidates(m: &Metric) -> usize {
    let d = &m.dist;
    let edges = m.graph.edges();
    (0..m.order())
        .map(|a| {
            edges
                .iter()
                .filter(|&&(v, w)| d.at(a, v) >= 2 && d.at(a, v) == d.at(a, w))
                .count()
        })
        .sum()
}

/// Does the connected graph satisfy the triangle condition? Returns the
/// first violation in (apex, edge) order.
pub fn triangle_condition(m: &Metric) -> Result<Option<TriangleViolation>> {
    triangle_condition_with(m, Exec::default())
}

pub fn triangle_condition_with(m: &Metric, exec: Exec) -> Result<Option<TriangleViolation>> {
    m.require_connected()?;
    let edges = m.graph.edges();
    Ok(exec.find_map_first_range(m.order(), |apex| violation_at(m, apex, &edges)))
}

/// The triangle condition with the apex fixed at the root.
pub fn rooted_triangle_condition(m: &Metric, root: usize) -> Result<Option<TriangleViolation>> {
    m.require_connected()?;
    m.graph.check_vertex(root)?;
    Ok(violation_at(m, root, &m.graph.edges()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, LabeledGraph};

    fn c6() -> Metric {
        let names = ["u", "x1", "x2", "r", "y1", "y2"];
        let edges = [("u", "x1"), ("x1", "x2"), ("x2", "r"), ("r", "y1"), ("y1", "y2"), ("y2", "u")];
        Metric::new(Graph::from_named_edges(&names, &edges).unwrap())
    }

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    /// Literal definition over all vertex triples.
    fn brute_force(m: &Metric, u: usize, v: usize, w: usize) -> PseudoMedians<usize> {
        let n = m.order();
        let mut all = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let s = m.dist.at(x, y);
                    if m.dist.at(y, z) == s
                        && m.dist.at(x, z) == s
                        && on_common_path(m, u, v, x, y)
                        && on_common_path(m, v, w, y, z)
                        && on_common_path(m, u, w, x, z)
                    {
                        all.push(MedianTriple { x, y, z, size: s });
                    }
                }
            }
        }
        let size = all.iter().map(|t| t.size).min();
        all.retain(|t| Some(t.size) == size);
        PseudoMedians { size, triples: all }
    }

    #[test]
    fn trivial_triple() {
        let m = c6();
        let p = pseudo_medians(&m, 2, 2, 2).unwrap();
        assert_eq!(p.size, Some(0));
        assert_eq!(p.triples, vec![MedianTriple { x: 2, y: 2, z: 2, size: 0 }]);
    }

    #[test]
    fn c6_small_pseudo_medians() {
        let m = c6();
        let id = |s| m.graph.index_of(s).unwrap();
        // x1 and y1 are antipodal, so r itself is a median.
        let p = pseudo_medians(&m, id("x1"), id("y1"), id("r")).unwrap();
        assert_eq!(p.size, Some(0));
        assert_eq!(p.triples, vec![MedianTriple { x: id("r"), y: id("r"), z: id("r"), size: 0 }]);
        assert!(has_small_pseudo_median(&m, id("x1"), id("y1"), id("r")).unwrap());
        let p = pseudo_medians(&m, id("x1"), id("y2"), id("r")).unwrap();
        assert_eq!(p.size, Some(2));
        assert!(!has_small_pseudo_median(&m, id("x1"), id("y2"), id("r")).unwrap());
        assert!(has_small_pseudo_median(&m, id("r"), id("u"), id("r")).unwrap());
    }

    #[test]
    fn hamming_example_agrees_with_quasi_median() {
        let s = Shape::new([3, 3]).unwrap();
        let full = LabeledGraph::full(s.clone(), 100).unwrap();
        let m = full.metric();
        let i = |x: &str| full.index_of(&v(x)).unwrap();
        let p = pseudo_medians(&m, i("1,1"), i("2,1"), i("0,0")).unwrap();
        assert_eq!(p.size, Some(1));
        assert_eq!(
            p.triples,
            vec![MedianTriple { x: i("1,1"), y: i("2,1"), z: i("0,1"), size: 1 }]
        );
        let q = quasi_median_hamming(&s, &v("1,1"), &v("2,1"), &v("0,0")).unwrap();
        assert_eq!((q.x, q.y, q.z, q.size), (v("1,1"), v("2,1"), v("0,1"), 1));
        assert!(!has_small_pseudo_median(&m, i("1,1"), i("2,2"), i("0,0")).unwrap());
    }

    #[test]
    fn quasi_median_examples() {
        let s = Shape::new([3, 3, 3]).unwrap();
        let u = v("1,1,0");
        let q = quasi_median_hamming(&s, &u, &u, &u).unwrap();
        assert_eq!((q.x, q.size), (u.clone(), 0));
        let q = quasi_median_hamming(&s, &v("1,1,0"), &v("2,2,0"), &v("0,0,0")).unwrap();
        assert_eq!((q.x, q.y, q.z, q.size), (v("1,1,0"), v("2,2,0"), v("0,0,0"), 2));
        assert!(quasi_median_hamming(&s, &v("1,1"), &u, &u).is_err());
    }

    #[test]
    fn candidate_restriction_matches_brute_force() {
        let graphs = [c6(), Metric::new(Graph::cycle(5)), Metric::new(Graph::complete(4)), {
            let full = LabeledGraph::full(Shape::new([3, 2]).unwrap(), 100).unwrap();
            full.metric()
        }];
        for m in &graphs {
            let n = m.order();
            for u in 0..n {
                for v in 0..n {
                    for w in 0..n {
                        let fast = pseudo_medians(m, u, v, w).unwrap();
                        let slow = brute_force(m, u, v, w);
                        assert_eq!(fast, slow, "triple {u} {v} {w}");
                        assert_eq!(fast, pseudo_medians_with(m, u, v, w, Exec::Parallel).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn disconnected_triple_is_an_error() {
        let m = Metric::new(Graph::from_edges(vec!["a", "b"], &[]).unwrap());
        assert!(matches!(pseudo_medians(&m, 0, 1, 0), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn triangle_condition_examples() {
        for f in [vec![2, 2, 2], vec![3, 3], vec![4, 4, 4]] {
            let full = LabeledGraph::full(Shape::new(f).unwrap(), 100).unwrap();
            let m = full.metric();
            assert_eq!(triangle_condition(&m).unwrap(), None);
            assert_eq!(rooted_triangle_condition(&m, 0).unwrap(), None);
        }
        let m = c6();
        assert_eq!(triangle_candidates(&m), 0);
        assert_eq!(triangle_condition(&m).unwrap(), None);
        for r in 0..6 {
            assert_eq!(rooted_triangle_condition(&m, r).unwrap(), None);
        }
        let c4 = Metric::new(Graph::cycle(4));
        assert_eq!(triangle_candidates(&c4), 0);

        let c5 = Metric::new(Graph::cycle(5));
        assert_eq!(
            triangle_condition(&c5).unwrap(),
            Some(TriangleViolation { apex: 0, v: 2, w: 3 })
        );
        for r in 0..5 {
            assert!(rooted_triangle_condition(&c5, r).unwrap().is_some());
        }
    }
}
