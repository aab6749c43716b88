//! Implicit arithmetic of Hamming graphs `K_{k_1} □ … □ K_{k_n}`.
//!
//! The host graph is never materialized: a [`Shape`] carries the factor sizes
//! and every operation works coordinate by coordinate. Coordinates take values
//! in `0..k_j`, so the root is always `0^n`. Coordinate *indices* are numbered
//! from 1, matching the usual `j ∈ [n]` convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vertices any enumeration will produce.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 16;

/// Factor sizes of a Hamming graph. The empty shape is `K_1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Shape {
    factors: Vec<usize>,
}

impl Shape {
    pub fn new(factors: impl Into<Vec<usize>>) -> Result<Self> {
        let factors = factors.into();
        if let Some((index, &size)) = factors.iter().enumerate().find(|(_, &k)| k < 2) {
            return Err(Error::InvalidFactor {
                index: index + 1,
                size,
            });
        }
        Ok(Shape { factors })
    }

    /// The one-vertex graph.
    pub fn trivial() -> Self {
        Shape::default()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Number of coordinates `n`.
    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    /// Size of factor `j` (1-based).
    pub fn factor(&self, j: usize) -> Result<usize> {
        self.check_coord(j)?;
        Ok(self.factors[j - 1])
    }

    /// Product of the factors, `None` on overflow.
    pub fn vertex_count(&self) -> Option<usize> {
        self.factors.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k))
    }

    pub fn root(&self) -> Vertex {
        Vertex(vec![0; self.dim()])
    }

    pub fn check_coord(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.dim() {
            return Err(Error::CoordIndexOutOfRange {
                coord: j,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    pub fn validate(&self, v: &Vertex) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::ShapeMismatch {
                vertex: v.to_string(),
                shape: self.to_string(),
                got: v.len(),
                expected: self.dim(),
            });
        }
        for (j, (&x, &k)) in v.0.iter().zip(&self.factors).enumerate() {
            if x >= k {
                return Err(Error::CoordinateOutOfRange {
                    vertex: v.to_string(),
                    coord: j + 1,
                    value: x,
                    factor: k,
                });
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.validate(v).is_ok()
    }

    pub fn vertex(&self, coords: impl Into<Vec<usize>>) -> Result<Vertex> {
        let v = Vertex(coords.into());
        self.validate(&v)?;
        Ok(v)
    }

    /// Position of `v` in lexicographic order (mixed radix, last coordinate fastest).
    pub fn rank(&self, v: &Vertex) -> usize {
        v.0.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &k)| acc * k + x)
    }

    pub fn unrank(&self, mut index: usize) -> Vertex {
        let mut coords = vec![0; self.dim()];
        for (c, &k) in coords.iter_mut().zip(&self.factors).rev() {
            *c = index % k;
            index /= k;
        }
        Vertex(coords)
    }

    /// The shape with coordinate `j` deleted.
    pub fn remove_coord(&self, j: usize) -> Result<Shape> {
        self.check_coord(j)?;
        let mut factors = self.factors.clone();
        factors.remove(j - 1);
        Ok(Shape { factors })
    }

    /// The shape with a new factor of size `k` placed at position `j` (1..=n+1).
    pub fn insert_coord(&self, j: usize, k: usize) -> Result<Shape> {
        if j == 0 || j > self.dim() + 1 {
            return Err(Error::CoordIndexOutOfRange {
                coord: j,
                dim: self.dim() + 1,
            });
        }
        let mut factors = self.factors.clone();
        factors.insert(j - 1, k);
        Shape::new(factors)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.factors))
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Comma-separated factor sizes; surrounding parentheses are optional and
    /// the empty string is `K_1`.
    fn from_str(s: &str) -> Result<Self> {
        Shape::new(parse_list(s)?)
    }
}

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Shape::new(v)
    }
}

impl From<Shape> for Vec<usize> {
    fn from(s: Shape) -> Self {
        s.factors
    }
}

/// A vertex of a Hamming graph: one coordinate per factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate `j` (1-based).
    pub fn coord(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    /// Number of differing coordinates. Lengths are assumed equal.
    pub fn hamming(&self, other: &Vertex) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// Is `self` on a shortest `a,b`-path, i.e. does every coordinate agree
    /// with `a` or `b`?
    pub fn between(&self, a: &Vertex, b: &Vertex) -> bool {
        self.0
            .iter()
            .zip(a.0.iter().zip(&b.0))
            .all(|(x, (p, q))| x == p || x == q)
    }

    pub fn without_coord(&self, j: usize) -> Vertex {
        let mut coords = self.0.clone();
        coords.remove(j - 1);
        Vertex(coords)
    }

    pub fn with_coord_inserted(&self, j: usize, value: usize) -> Vertex {
        let mut coords = self.0.clone();
        coords.insert(j - 1, value);
        Vertex(coords)
    }

    pub fn with_coord(&self, j: usize, value: usize) -> Vertex {
        let mut coords = self.0.clone();
        coords[j - 1] = value;
        Vertex(coords)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Comma-separated coordinates, e.g. `1,0,2`. Parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        parse_list(s).map(Vertex)
    }
}

impl From<Vec<usize>> for Vertex {
    fn from(v: Vec<usize>) -> Self {
        Vertex(v)
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad integer {:?} in {s:?}: {e}", t.trim())))
        })
        .collect()
}

fn check_pair(shape: &Shape, u: &Vertex, v: &Vertex) -> Result<()> {
    shape.validate(u)?;
    shape.validate(v)
}

/// Number of coordinates in which `u` and `v` differ; this is the graph distance.
pub fn hamming_distance(shape: &Shape, u: &Vertex, v: &Vertex) -> Result<usize> {
    check_pair(shape, u, v)?;
    Ok(u.hamming(v))
}

pub fn is_adjacent(shape: &Shape, u: &Vertex, v: &Vertex) -> Result<bool> {
    Ok(hamming_distance(shape, u, v)? == 1)
}

/// `I(u,v)` by the product rule: free choice of `u_j` or `v_j` in every
/// differing coordinate. Returned in lexicographic order.
pub fn hamming_interval(shape: &Shape, u: &Vertex, v: &Vertex) -> Result<Vec<Vertex>> {
    check_pair(shape, u, v)?;
    Ok(interval_unchecked(u, v))
}

pub(crate) fn interval_unchecked(u: &Vertex, v: &Vertex) -> Vec<Vertex> {
    let mut out = vec![Vertex(Vec::with_capacity(u.len()))];
    for (&a, &b) in u.0.iter().zip(&v.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mut next = Vec::with_capacity(out.len() * if lo == hi { 1 } else { 2 });
        for w in &out {
            let mut p = w.clone();
            p.0.push(lo);
            next.push(p);
            if lo != hi {
                let mut q = w.clone();
                q.0.push(hi);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `e^j_i`: the vertex `0^{j-1} i 0^{n-j}`.
pub fn unit_vertex(shape: &Shape, j: usize, i: usize) -> Result<Vertex> {
    let k = shape.factor(j)?;
    let mut coords = vec![0; shape.dim()];
    if i >= k {
        return Err(Error::CoordinateOutOfRange {
            vertex: format!("e^{j}_{i}"),
            coord: j,
            value: i,
            factor: k,
        });
    }
    coords[j - 1] = i;
    Ok(Vertex(coords))
}

/// All vertices in lexicographic order, refusing shapes larger than `budget`.
pub fn enumerate_vertices(shape: &Shape, budget: usize) -> Result<Vec<Vertex>> {
    let count = checked_count(shape, budget)?;
    Ok((0..count).map(|i| shape.unrank(i)).collect())
}

pub(crate) fn checked_count(shape: &Shape, budget: usize) -> Result<usize> {
    match shape.vertex_count() {
        Some(c) if c <= budget => Ok(c),
        Some(c) => Err(Error::BudgetExceeded {
            count: c as u128,
            budget,
        }),
        None => Err(Error::BudgetExceeded {
            count: u128::MAX,
            budget,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn distance_examples() {
        let s2 = Shape::new([2, 2]).unwrap();
        assert_eq!(hamming_distance(&s2, &v("0,0"), &v("0,0")).unwrap(), 0);
        let s = Shape::new([3, 3]).unwrap();
        assert_eq!(hamming_distance(&s, &v("1,2"), &v("1,0")).unwrap(), 1);
        let s = Shape::new([2, 3, 2]).unwrap();
        assert_eq!(hamming_distance(&s, &v("1,2,1"), &v("0,1,1")).unwrap(), 2);
    }

    #[test]
    fn distance_rejects_mismatch() {
        let s = Shape::new([3, 3]).unwrap();
        assert!(matches!(
            hamming_distance(&s, &v("1,2,0"), &v("1,0")),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            hamming_distance(&s, &v("3,0"), &v("1,0")),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn adjacency_examples() {
        let s = Shape::new([3, 3]).unwrap();
        assert!(is_adjacent(&s, &v("0,0"), &v("2,0")).unwrap());
        assert!(!is_adjacent(&s, &v("0,0"), &v("1,1")).unwrap());
        assert!(!is_adjacent(&s, &v("0,0"), &v("0,0")).unwrap());
    }

    #[test]
    fn interval_examples() {
        let s = Shape::new([3, 3]).unwrap();
        let got = hamming_interval(&s, &v("0,0"), &v("1,2")).unwrap();
        assert_eq!(got, vec![v("0,0"), v("0,2"), v("1,0"), v("1,2")]);
        assert_eq!(hamming_interval(&s, &v("2,1"), &v("2,1")).unwrap(), vec![v("2,1")]);
        let s = Shape::new([2, 2, 2]).unwrap();
        let got = hamming_interval(&s, &v("0,0,0"), &v("1,0,1")).unwrap();
        assert_eq!(got, vec![v("0,0,0"), v("0,0,1"), v("1,0,0"), v("1,0,1")]);
    }

    #[test]
    fn unit_vertices() {
        let s = Shape::new([3, 3]).unwrap();
        assert_eq!(unit_vertex(&s, 2, 2).unwrap(), v("0,2"));
        assert_eq!(unit_vertex(&s, 1, 0).unwrap(), v("0,0"));
        let s = Shape::new([2, 3, 2]).unwrap();
        assert_eq!(unit_vertex(&s, 2, 1).unwrap(), v("0,1,0"));
        assert!(unit_vertex(&s, 0, 0).is_err());
        assert!(unit_vertex(&s, 4, 0).is_err());
        assert!(unit_vertex(&s, 1, 2).is_err());
    }

    #[test]
    fn enumeration() {
        let s = Shape::new([2, 2]).unwrap();
        let all = enumerate_vertices(&s, 100).unwrap();
        assert_eq!(all, vec![v("0,0"), v("0,1"), v("1,0"), v("1,1")]);
        assert_eq!(enumerate_vertices(&Shape::trivial(), 1).unwrap(), vec![Vertex(vec![])]);
        let s = Shape::new([3]).unwrap();
        assert_eq!(enumerate_vertices(&s, 3).unwrap(), vec![v("0"), v("1"), v("2")]);
        assert!(matches!(
            enumerate_vertices(&Shape::new([4, 4]).unwrap(), 15),
            Err(Error::BudgetExceeded { count: 16, .. })
        ));
    }

    #[test]
    fn factor_of_one_rejected() {
        assert!(matches!(
            Shape::new([3, 1]),
            Err(Error::InvalidFactor { index: 2, size: 1 })
        ));
        assert!(Shape::new([0]).is_err());
        assert_eq!("".parse::<Shape>().unwrap(), Shape::trivial());
        assert_eq!("(3,2)".parse::<Shape>().unwrap().factors(), &[3, 2]);
    }

    #[test]
    fn rank_roundtrip() {
        let s = Shape::new([3, 2, 4]).unwrap();
        for i in 0..24 {
            assert_eq!(s.rank(&s.unrank(i)), i);
        }
    }

    fn shape_and_two_vertices() -> impl Strategy<Value = (Shape, Vertex, Vertex, Vertex)> {
        prop::collection::vec(2usize..5, 0..5).prop_flat_map(|f| {
            let coords = |f: &Vec<usize>| f.iter().map(|&k| 0..k).collect::<Vec<_>>();
            (
                Just(Shape::new(f.clone()).unwrap()),
                coords(&f).prop_map(Vertex),
                coords(&f).prop_map(Vertex),
                coords(&f).prop_map(Vertex),
            )
        })
    }

    proptest! {
        #[test]
        fn metric_axioms((s, a, b, c) in shape_and_two_vertices()) {
            let d = |x: &Vertex, y: &Vertex| hamming_distance(&s, x, y).unwrap();
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
            prop_assert_eq!(d(&a, &b) == 0, a == b);
        }

        #[test]
        fn interval_size_and_membership((s, a, b, c) in shape_and_two_vertices()) {
            let iv = hamming_interval(&s, &a, &b).unwrap();
            prop_assert_eq!(iv.len(), 1usize << a.hamming(&b));
            let on_path = a.hamming(&c) + c.hamming(&b) == a.hamming(&b);
            prop_assert_eq!(iv.binary_search(&c).is_ok(), on_path);
            prop_assert_eq!(c.between(&a, &b), on_path);
        }
    }
}
