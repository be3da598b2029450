//! Simple undirected graphs on at most 64 labeled vertices.
//!
//! Adjacency is stored as one `u64` bitset per vertex; the degree array is
//! derived once at construction and never mutated afterwards.

use std::fmt;

use crate::error::GraphError;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    degrees: Vec<u32>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices. `n = 0` is allowed and denotes the
    /// empty graph (for instance the 2-core of a tree).
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Self {
            adj: vec![0; n],
            degrees: vec![0; n],
            edge_count: 0,
        })
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_adjacency(rows: &[u64]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Self::empty(n)?;
        let mask = low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: (63 - (row & !mask).leading_zeros()) as usize,
                    n,
                });
            }
            if row >> u & 1 == 1 {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            for v in bits(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(GraphError::AsymmetricAdjacency { u, v });
                }
            }
        }
        g.adj.copy_from_slice(rows);
        g.recount();
        Ok(g)
    }

    pub(crate) fn from_adjacency_unchecked(rows: Vec<u64>) -> Self {
        let n = rows.len();
        let mut g = Self {
            adj: rows,
            degrees: vec![0; n],
            edge_count: 0,
        };
        g.recount();
        g
    }

    fn recount(&mut self) {
        let mut total = 0usize;
        for (d, row) in self.degrees.iter_mut().zip(&self.adj) {
            *d = row.count_ones();
            total += *d as usize;
        }
        self.edge_count = total / 2;
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && !self.has_edge(u, v));
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edge_count += 1;
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v));
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.degrees[u] -= 1;
        self.degrees[v] -= 1;
        self.edge_count -= 1;
    }

    /// Returns a copy with the extra edge `uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    #[inline]
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Neighborhood of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| bits(row & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Bitset of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n())
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reachable_from(&self, start: usize, blocked: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen & !blocked;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as vertex bitsets, ordered by smallest member.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.reachable_from(left.trailing_zeros() as usize, 0);
            out.push(c);
            left &= !c;
        }
        out
    }

    /// Connectivity; the empty graph and the single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.reachable_from(0, 0) == self.vertex_mask()
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        bits(set)
            .map(|v| (self.adj[v] & set).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Subgraph induced by `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let rows = vertices
            .iter()
            .map(|&v| {
                bits(self.adj[v])
                    .filter(|&w| pos[w] != usize::MAX)
                    .fold(0u64, |acc, w| acc | 1 << pos[w])
            })
            .collect();
        Self::from_adjacency_unchecked(rows)
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        debug_assert_eq!(order.len(), self.n());
        self.induced(order)
    }

    /// Path `P_n`: `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameters(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// Star `S_n` with center 0.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mask with the low `k` bits set.
#[inline]
pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterates the set bits of `x`, lowest first.
#[inline]
pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edge_lists() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop { vertex: 0 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 1, v: 0 })
        );
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(Graph::empty(65).is_err());
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn handshake_and_edge_order() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 1), (1, 2), (3, 0)]).unwrap();
        assert_eq!(g.m(), 4);
        assert_eq!(g.degrees().iter().sum::<u32>(), 8);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (1, 2), (2, 3)]
        );
    }

    #[test]
    fn adjacency_must_be_symmetric() {
        assert!(matches!(
            Graph::from_adjacency(&[0b10, 0b00]),
            Err(GraphError::AsymmetricAdjacency { .. })
        ));
        let g = Graph::from_adjacency(&[0b10, 0b01]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(5).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![0b0011, 0b1100]);
    }

    #[test]
    fn induced_relabels_in_order() {
        let c5 = Graph::cycle(5).unwrap();
        let sub = c5.induced(&[4, 0, 1]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}
