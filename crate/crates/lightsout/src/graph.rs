//! Simple undirected graphs on up to 64 vertices.
//!
//! The adjacency matrix is stored as one `u64` row per vertex, so neighborhood
//! operations, complements and joins are word operations. All derived
//! quantities (degrees, components, excess degree) are computed on demand.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Bits 0..n-1 set.
#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// A set of vertices of a graph on at most 64 vertices, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    pub bits: u64,
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { bits: 0 };

    pub fn new(bits: u64) -> Self {
        VertexSet { bits }
    }

    /// Raw membership mask; bit v is set when vertex v is in the set.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        (self.bits >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.bits |= 1 << v;
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Cardinality parity: 0 (even) or 1 (odd).
    #[inline]
    pub fn parity(&self) -> u32 {
        self.bits.count_ones() & 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..MAX_VERTICES).filter(move |v| (bits >> v) & 1 == 1)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut bits = 0;
        for v in vs {
            debug_assert!(v < MAX_VERTICES);
            bits |= 1 << v;
        }
        VertexSet { bits }
    }
}

/// Structural facts used by the complement-solvability reduction laws.
#[derive(Clone, Debug)]
pub struct StructuralSummary {
    /// Degree of each vertex, indexed by vertex.
    pub degrees: Vec<usize>,
    pub isolated_vertices: VertexSet,
    /// Edges whose both endpoints have degree 1, as (u, v) with u < v.
    pub isolated_edges: Vec<(usize, usize)>,
    /// Vertices adjacent to every other vertex.
    pub dominating_vertices: VertexSet,
    /// Connected components as vertex sets, ordered by smallest member.
    pub components: Vec<VertexSet>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                requested: n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.rows[v] = low_mask(n) & !(1 << v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::parse(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::parse(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::parse(format!("duplicate edge ({u}, {v})")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Build directly from adjacency rows; debug-checks symmetry and no loops.
    pub(crate) fn from_rows(n: usize, rows: &[u64]) -> Graph {
        debug_assert!(n <= MAX_VERTICES && rows.len() >= n);
        let rows = rows[..n].to_vec();
        let g = Graph { n, rows };
        debug_assert!(g.check_invariants());
        g
    }

    #[cfg(debug_assertions)]
    fn check_invariants(&self) -> bool {
        for v in 0..self.n {
            if self.rows[v] & !low_mask(self.n) != 0 {
                return false;
            }
            if (self.rows[v] >> v) & 1 == 1 {
                return false;
            }
            for u in 0..v {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    #[cfg(not(debug_assertions))]
    #[allow(dead_code)]
    fn check_invariants(&self) -> bool {
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u] >> v) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    /// Open neighborhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 1..self.n {
            let mut below = self.rows[v] & low_mask(v);
            while below != 0 {
                let u = below.trailing_zeros() as usize;
                below &= below - 1;
                out.push((u, v));
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn complement(&self) -> Graph {
        let mask = low_mask(self.n);
        let rows = (0..self.n)
            .map(|v| !self.rows[v] & mask & !(1 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                requested: n,
                max: MAX_VERTICES,
            });
        }
        let mut rows = Vec::with_capacity(n);
        rows.extend_from_slice(&self.rows);
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    /// Join: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(self.n);
        let right = low_mask(g.n) & !left;
        for v in 0..self.n {
            g.rows[v] |= right;
        }
        for v in self.n..g.n {
            g.rows[v] |= left;
        }
        Ok(g)
    }

    pub fn add_isolated_vertices(&self, count: usize) -> Result<Graph> {
        let n = self.n + count;
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                requested: n,
                max: MAX_VERTICES,
            });
        }
        let mut rows = self.rows.clone();
        rows.resize(n, 0);
        Ok(Graph { n, rows })
    }

    /// Append `count` disjoint edges on fresh vertices.
    pub fn add_isolated_edges(&self, count: usize) -> Result<Graph> {
        let mut g = self.add_isolated_vertices(2 * count)?;
        for t in 0..count {
            g.set_edge(self.n + 2 * t, self.n + 2 * t + 1);
        }
        Ok(g)
    }

    /// Delete the vertices in `drop`, compacting the remaining labels in order.
    pub fn delete_vertices(&self, drop: VertexSet) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop.contains(v)).collect();
        let mut rows = vec![0u64; keep.len()];
        for (new_v, &old_v) in keep.iter().enumerate() {
            for (new_u, &old_u) in keep.iter().enumerate() {
                if self.has_edge(old_u, old_v) {
                    rows[new_v] |= 1 << new_u;
                }
            }
        }
        Graph {
            n: keep.len(),
            rows,
        }
    }

    /// Relabel by `perm`, where slot i of the result holds vertex perm[i].
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            rows: vec![0; self.n],
        };
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        let mut bits = 0;
        for v in 0..self.n {
            if self.rows[v] == 0 {
                bits |= 1 << v;
            }
        }
        VertexSet { bits }
    }

    pub fn isolated_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            if self.rows[u].count_ones() == 1 {
                let v = self.rows[u].trailing_zeros() as usize;
                if u < v && self.rows[v].count_ones() == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn dominating_vertices(&self) -> VertexSet {
        let all = low_mask(self.n);
        let mut bits = 0;
        for v in 0..self.n {
            if self.rows[v] | (1 << v) == all {
                bits |= 1 << v;
            }
        }
        VertexSet { bits }
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if (seen >> v) & 1 == 1 {
                continue;
            }
            // Bitmask BFS from v.
            let mut comp = 1u64 << v;
            loop {
                let mut frontier = 0;
                let mut m = comp;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    frontier |= self.rows[u];
                }
                let grown = comp | frontier;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(VertexSet { bits: comp });
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Excess degree: (#isolated vertices) - n + sum of degrees.
    /// Invariant under adding isolated vertices or isolated edges.
    pub fn excess_degree(&self) -> usize {
        let iso = self.isolated_vertices().len();
        let degsum = 2 * self.edge_count();
        // iso - n + degsum >= 0: every edge removes at most 2 from the isolated count.
        (iso + degsum) - self.n
    }

    pub fn structural_summary(&self) -> StructuralSummary {
        StructuralSummary {
            degrees: self.degrees(),
            isolated_vertices: self.isolated_vertices(),
            isolated_edges: self.isolated_edges(),
            dominating_vertices: self.dominating_vertices(),
            components: self.components(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn from_edges_validates() {
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn complement_involution() {
        let g = path(5);
        assert_eq!(g.complement().complement(), g);
        let k = Graph::complete(4).unwrap();
        assert_eq!(k.complement().edge_count(), 0);
    }

    #[test]
    fn complement_edge_count() {
        let g = path(6);
        assert_eq!(g.edge_count() + g.complement().edge_count(), 15);
    }

    #[test]
    fn join_structure() {
        let p3 = path(3);
        let e2 = Graph::empty(2).unwrap();
        let j = p3.join(&e2).unwrap();
        assert_eq!(j.n(), 5);
        // 2 path edges + 3*2 cross edges.
        assert_eq!(j.edge_count(), 8);
        assert!(j.has_edge(0, 3) && j.has_edge(2, 4) && !j.has_edge(3, 4));
    }

    #[test]
    fn join_with_empty_graph_is_identity() {
        let g = path(4);
        let e0 = Graph::empty(0).unwrap();
        assert_eq!(g.join(&e0).unwrap(), g);
    }

    #[test]
    fn delete_vertices_compacts() {
        // Path 0-1-2-3-4; deleting {1, 3} leaves three isolated vertices.
        let g = path(5);
        let h = g.delete_vertices(VertexSet::from_iter([1, 3]));
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 0);
        // Deleting the endpoints keeps the middle path.
        let h = g.delete_vertices(VertexSet::from_iter([0, 4]));
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn excess_degree_examples() {
        // P4 + K2: excess 2.
        let g = path(4).disjoint_union(&path(2)).unwrap();
        assert_eq!(g.excess_degree(), 2);
        // Invariant under isolated-vertex and isolated-edge padding.
        assert_eq!(g.add_isolated_vertices(7).unwrap().excess_degree(), 2);
        assert_eq!(g.add_isolated_edges(3).unwrap().excess_degree(), 2);
        assert_eq!(Graph::empty(5).unwrap().excess_degree(), 0);
        assert_eq!(Graph::complete(4).unwrap().excess_degree(), 8);
        // Star K_{1,3}: 0 - 4 + 6 = 2.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.excess_degree(), 2);
    }

    #[test]
    fn structural_summary_basics() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (2, 4)]).unwrap();
        let s = g.structural_summary();
        assert_eq!(s.degrees, vec![1, 1, 2, 1, 1, 0]);
        assert_eq!(s.isolated_vertices, VertexSet::from_iter([5]));
        assert_eq!(s.isolated_edges, vec![(0, 1)]);
        assert!(s.dominating_vertices.is_empty());
        assert_eq!(s.components.len(), 3);
        assert_eq!(s.components[1], VertexSet::from_iter([2, 3, 4]));

        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.dominating_vertices().len(), 3);
    }

    #[test]
    fn components_of_cycle() {
        let mut g = path(6);
        g.set_edge(5, 0);
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = path(4);
        let h = g.relabel(&[3, 1, 0, 2]);
        assert_eq!(h.edge_count(), g.edge_count());
        // Slot 0 now holds old vertex 3 (degree 1), slot 1 old vertex 1 (degree 2).
        assert_eq!(h.degree(0), 1);
        assert_eq!(h.degree(1), 2);
    }

    #[test]
    fn vertex_set_display() {
        let s = VertexSet::from_iter([0, 2, 5]);
        assert_eq!(s.to_string(), "{0, 2, 5}");
        assert_eq!(s.len(), 3);
        assert_eq!(s.parity(), 1);
    }

    #[test]
    fn max_capacity_graph() {
        let g = Graph::complete(64).unwrap();
        assert_eq!(g.edge_count(), 64 * 63 / 2);
        assert_eq!(g.complement().edge_count(), 0);
    }
}
