//! Weighted plumbing / dual resolution graphs and their exact linear algebra.
//!
//! A [`PlumbingGraph`] is a finite multigraph whose vertices represent the
//! irreducible components of an exceptional divisor. Each vertex carries a
//! genus, an optional Euler number (self-intersection) and an optional
//! multiplicity of a designated function along the component. Arrows mark
//! strict transforms of curve germs and attach to vertices.
//!
//! All values are immutable after construction in the sense that every
//! operation returns a new graph; nothing here uses interior mutability, so
//! the types are safe to share across threads.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a graph vertex. Ordering is lexicographic on the underlying
/// string; matrix rows and deterministic rewriting orders rely on it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Self {
        VertexId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

/// Data attached to one vertex (one irreducible exceptional component).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    /// Genus of the component; 0 for rational curves.
    #[serde(default)]
    pub genus: u32,
    /// Self-intersection. `None` models shape-only graphs whose weights are
    /// not known; numeric operations fail loudly on `None`.
    pub euler: Option<i64>,
    /// Multiplicity of the total transform of a designated function along
    /// this component, when tracked.
    pub mult: Option<u64>,
    /// Optional display label, carried through serialization untouched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Vertex {
    pub fn new(id: impl Into<String>, genus: u32, euler: Option<i64>) -> Self {
        Vertex {
            id: VertexId::new(id),
            genus,
            euler,
            mult: None,
            name: None,
        }
    }

    pub fn with_mult(mut self, mult: u64) -> Self {
        self.mult = Some(mult);
        self
    }
}

/// Arrow: the strict transform of a curve germ, attached at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub at: VertexId,
    #[serde(default)]
    pub label: String,
    /// Multiplicity of the designated function along the branch (its weight
    /// in the divisor). `None` for branches that are only tracked.
    pub mult: Option<u64>,
}

/// An arrow whose supporting vertex has been blown down to nothing: the
/// record of a smooth germ with a marked smooth curve through it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeArrow {
    #[serde(default)]
    pub label: String,
    pub mult: Option<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("edge endpoint {0} does not exist")]
    DanglingEdge(VertexId),
    #[error("arrow attached to missing vertex {0}")]
    DanglingArrow(VertexId),
    #[error("vertex {0} has unknown euler number")]
    UnknownEulerNumber(VertexId),
}

/// A weighted plumbing graph: vertex set, edge multiset, arrow list.
///
/// Edges are stored as normalized ordered pairs and kept sorted, so two
/// graphs built through different move sequences compare equal exactly when
/// they have identical vertex data, edge multisets and arrow multisets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlumbingGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    arrows: Vec<Arrow>,
    free_arrows: Vec<FreeArrow>,
}

impl PlumbingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        if self.vertices.contains_key(&v.id) {
            return Err(GraphError::DuplicateVertex(v.id));
        }
        self.vertices.insert(v.id.clone(), v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: &VertexId, b: &VertexId) -> Result<(), GraphError> {
        for e in [a, b] {
            if !self.vertices.contains_key(e) {
                return Err(GraphError::DanglingEdge(e.clone()));
            }
        }
        let pair = normalize_pair(a.clone(), b.clone());
        let pos = self.edges.partition_point(|e| *e <= pair);
        self.edges.insert(pos, pair);
        Ok(())
    }

    pub fn add_arrow(&mut self, arrow: Arrow) -> Result<(), GraphError> {
        if !self.vertices.contains_key(&arrow.at) {
            return Err(GraphError::DanglingArrow(arrow.at));
        }
        let pos = self.arrows.partition_point(|a| *a <= arrow);
        self.arrows.insert(pos, arrow);
        Ok(())
    }

    pub fn add_free_arrow(&mut self, arrow: FreeArrow) {
        let pos = self.free_arrows.partition_point(|a| *a <= arrow);
        self.free_arrows.insert(pos, arrow);
    }

    /// Builds a graph from parts, checking referential integrity.
    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<(VertexId, VertexId)>,
        arrows: Vec<Arrow>,
    ) -> Result<Self, GraphError> {
        let mut g = PlumbingGraph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (a, b) in edges {
            g.add_edge(&a, &b)?;
        }
        for a in arrows {
            g.add_arrow(a)?;
        }
        Ok(g)
    }

    /// Convenience: a linear chain of genus-0 vertices `E1 - E2 - ...` with
    /// the given Euler numbers.
    pub fn chain(eulers: &[i64]) -> Self {
        let mut g = PlumbingGraph::new();
        for (i, e) in eulers.iter().enumerate() {
            g.add_vertex(Vertex::new(format!("E{}", i + 1), 0, Some(*e)))
                .expect("fresh ids");
        }
        for i in 1..eulers.len() {
            let a = VertexId::new(format!("E{}", i));
            let b = VertexId::new(format!("E{}", i + 1));
            g.add_edge(&a, &b).expect("endpoints exist");
        }
        g
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices.get(id)
    }

    pub fn vertex_mut(&mut self, id: &VertexId) -> Option<&mut Vertex> {
        self.vertices.get_mut(id)
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.vertices.contains_key(id)
    }

    /// Vertices in lexicographic id order, which is the matrix row order.
    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn free_arrows(&self) -> &[FreeArrow] {
        &self.free_arrows
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of edge endpoints at `v`; a self-loop counts twice.
    pub fn edge_degree(&self, v: &VertexId) -> usize {
        self.edges
            .iter()
            .map(|(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn arrow_count_at(&self, v: &VertexId) -> usize {
        self.arrows.iter().filter(|a| &a.at == v).count()
    }

    pub fn self_loop_count(&self, v: &VertexId) -> usize {
        self.edges.iter().filter(|(a, b)| a == v && b == v).count()
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    /// Multiset of neighbors of `v` (self excluded), with edge multiplicity.
    pub fn neighbor_counts(&self, v: &VertexId) -> BTreeMap<&VertexId, usize> {
        let mut out = BTreeMap::new();
        for (a, b) in &self.edges {
            if a == v && b != v {
                *out.entry(b).or_insert(0) += 1;
            } else if b == v && a != v {
                *out.entry(a).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn edges_between(&self, a: &VertexId, b: &VertexId) -> usize {
        let pair = normalize_pair(a.clone(), b.clone());
        self.edges.iter().filter(|e| **e == pair).count()
    }

    pub fn remove_one_edge(&mut self, a: &VertexId, b: &VertexId) -> bool {
        let pair = normalize_pair(a.clone(), b.clone());
        if let Some(pos) = self.edges.iter().position(|e| *e == pair) {
            self.edges.remove(pos);
            true
        } else {
            false
        }
    }

    /// Removes a vertex together with its incident edges and arrows; the
    /// removed arrows are returned in sorted order.
    pub fn remove_vertex(&mut self, v: &VertexId) -> Result<Vec<Arrow>, GraphError> {
        if !self.vertices.contains_key(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        self.vertices.remove(v);
        self.edges.retain(|(a, b)| a != v && b != v);
        let mut removed = Vec::new();
        self.arrows.retain(|a| {
            if &a.at == v {
                removed.push(a.clone());
                false
            } else {
                true
            }
        });
        Ok(removed)
    }

    pub fn euler_of(&self, v: &VertexId) -> Result<i64, GraphError> {
        let vx = self
            .vertices
            .get(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
        vx.euler
            .ok_or_else(|| GraphError::UnknownEulerNumber(v.clone()))
    }

    /// True when the graph is connected (the empty graph counts as
    /// connected). Arrows are ignored.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.keys().next() else {
            return true;
        };
        let mut seen: BTreeMap<&VertexId, bool> =
            self.vertices.keys().map(|k| (k, false)).collect();
        let mut stack = vec![start];
        seen.insert(start, true);
        while let Some(v) = stack.pop() {
            for (a, b) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if let Some(flag) = seen.get_mut(other) {
                    if !*flag {
                        *flag = true;
                        stack.push(other);
                    }
                }
            }
        }
        seen.values().all(|&f| f)
    }

    /// Connected, acyclic, all degrees at most two, all genera zero.
    /// Arrows are ignored. The empty graph is a (degenerate) bamboo.
    pub fn is_bamboo(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        if !self.is_connected() {
            return false;
        }
        if self.edge_count() != self.vertex_count() - 1 {
            return false; // connected + this rules out cycles and multi-edges
        }
        self.vertices
            .values()
            .all(|v| v.genus == 0 && self.edge_degree(&v.id) <= 2)
    }

    /// Genus positive, or at least three incident edges plus arrows.
    pub fn is_rupture_vertex(&self, v: &VertexId) -> Result<bool, GraphError> {
        let vx = self
            .vertices
            .get(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
        Ok(vx.genus > 0 || self.edge_degree(v) + self.arrow_count_at(v) >= 3)
    }

    /// The symmetric intersection matrix in lexicographic vertex order:
    /// diagonal = Euler number plus twice the self-loop count, off-diagonal
    /// = number of edges joining the two vertices.
    pub fn intersection_matrix(&self) -> Result<Vec<Vec<BigInt>>, GraphError> {
        let ids: Vec<&VertexId> = self.vertices.keys().collect();
        let index: BTreeMap<&VertexId, usize> =
            ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let n = ids.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, id) in ids.iter().enumerate() {
            let e = self.euler_of(id)?;
            m[i][i] = BigInt::from(e);
        }
        for (a, b) in &self.edges {
            let i = index[a];
            let j = index[b];
            if i == j {
                m[i][i] += 2;
            } else {
                m[i][j] += 1;
                m[j][i] += 1;
            }
        }
        Ok(m)
    }

    /// Exact determinant of the intersection matrix (1 for the empty graph).
    pub fn determinant(&self) -> Result<BigInt, GraphError> {
        let m = self.intersection_matrix()?;
        Ok(det_bareiss(m))
    }

    /// Exact test: leading principal minors alternate in sign starting
    /// negative. No floating point is involved.
    pub fn is_negative_definite(&self) -> Result<bool, GraphError> {
        let m = self.intersection_matrix()?;
        Ok(negative_definite(m))
    }
}

pub(crate) fn normalize_pair(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Fraction-free Bareiss elimination; returns the exact determinant.
pub(crate) fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Leading principal minors via Bareiss pivots; definite matrices never hit
/// a zero pivot, so a zero pivot means "not negative definite".
pub(crate) fn negative_definite(mut m: Vec<Vec<BigInt>>) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    let mut prev = BigInt::from(1);
    for k in 0..n {
        // After k elimination rounds, m[k][k] is the (k+1)-st leading
        // principal minor.
        let minor = m[k][k].clone();
        let want_negative = k % 2 == 0;
        if minor.is_zero()
            || (want_negative && minor.is_positive())
            || (!want_negative && minor.is_negative())
        {
            return false;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = minor;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::from(1);
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let sub: Vec<Vec<BigInt>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[i][c].clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det_cofactor(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn bamboo_matrix_is_the_tridiagonal_one() {
        let g = PlumbingGraph::chain(&[-3, -2, -3]);
        let m = g.intersection_matrix().unwrap();
        let expect: Vec<Vec<i64>> = vec![vec![-3, 1, 0], vec![1, -2, 1], vec![0, 1, -3]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[i][j], BigInt::from(expect[i][j]));
            }
        }
    }

    #[test]
    fn single_vertex_and_empty_matrices() {
        let g = PlumbingGraph::chain(&[-1]);
        assert_eq!(
            g.intersection_matrix().unwrap(),
            vec![vec![BigInt::from(-1)]]
        );
        assert_eq!(g.determinant().unwrap(), BigInt::from(-1));
        let e = PlumbingGraph::new();
        assert!(e.intersection_matrix().unwrap().is_empty());
        assert_eq!(e.determinant().unwrap(), BigInt::from(1));
        assert!(e.is_negative_definite().unwrap());
    }

    #[test]
    fn determinant_of_weighted_bamboo() {
        let g = PlumbingGraph::chain(&[-3, -2, -3]);
        assert_eq!(g.determinant().unwrap(), BigInt::from(-12));
    }

    #[test]
    fn a_chain_determinant_recurrence() {
        // chain of (n-1) vertices all -2 has determinant (-1)^(n-1) * n
        for n in 2u64..=9 {
            let eulers: Vec<i64> = vec![-2; (n - 1) as usize];
            let g = PlumbingGraph::chain(&eulers);
            let expect = if (n - 1) % 2 == 0 {
                BigInt::from(n)
            } else {
                -BigInt::from(n)
            };
            assert_eq!(g.determinant().unwrap(), expect);
            let m = g.intersection_matrix().unwrap();
            assert_eq!(det_cofactor(&m), expect);
        }
    }

    #[test]
    fn definiteness_examples() {
        assert!(PlumbingGraph::chain(&[-3, -2, -3])
            .is_negative_definite()
            .unwrap());
        assert!(PlumbingGraph::chain(&[-1]).is_negative_definite().unwrap());
        assert!(!PlumbingGraph::chain(&[0]).is_negative_definite().unwrap());
        // A null direction: the fiber of an elliptic fibration shape
        assert!(!PlumbingGraph::chain(&[-2, -1, -2])
            .is_negative_definite()
            .unwrap());
    }

    #[test]
    fn unknown_euler_fails_loudly() {
        let mut g = PlumbingGraph::new();
        g.add_vertex(Vertex::new("E1", 0, None)).unwrap();
        assert_eq!(
            g.determinant().unwrap_err(),
            GraphError::UnknownEulerNumber(VertexId::new("E1"))
        );
    }

    #[test]
    fn bamboo_predicate() {
        let g = PlumbingGraph::chain(&[-3, -2, -3]);
        assert!(g.is_bamboo());
        let single = PlumbingGraph::chain(&[-2]);
        assert!(single.is_bamboo());

        // a cycle is not a bamboo
        let mut c = PlumbingGraph::chain(&[-2, -2, -2]);
        c.add_edge(&VertexId::new("E1"), &VertexId::new("E3"))
            .unwrap();
        assert!(!c.is_bamboo());

        // positive genus disqualifies
        let mut h = PlumbingGraph::new();
        h.add_vertex(Vertex::new("E1", 1, Some(-2))).unwrap();
        assert!(!h.is_bamboo());
    }

    #[test]
    fn rupture_vertices() {
        let g = PlumbingGraph::chain(&[-3, -2, -3]);
        assert!(!g.is_rupture_vertex(&VertexId::new("E2")).unwrap());

        let mut star = PlumbingGraph::chain(&[-2, -2, -2]);
        star.add_vertex(Vertex::new("E4", 0, Some(-2))).unwrap();
        star.add_edge(&VertexId::new("E2"), &VertexId::new("E4"))
            .unwrap();
        assert!(star.is_rupture_vertex(&VertexId::new("E2")).unwrap());

        let mut torus = PlumbingGraph::new();
        torus.add_vertex(Vertex::new("E1", 1, Some(-1))).unwrap();
        assert!(torus.is_rupture_vertex(&VertexId::new("E1")).unwrap());
    }

    #[test]
    fn self_loop_contributes_two_on_diagonal() {
        let mut g = PlumbingGraph::chain(&[-4]);
        let v = VertexId::new("E1");
        g.add_edge(&v, &v).unwrap();
        assert!(g.has_self_loops());
        let m = g.intersection_matrix().unwrap();
        assert_eq!(m[0][0], BigInt::from(-2));
    }
}
