//! Simple directed graphs without loops, digons or parallel edges.
//!
//! Adjacency is kept in both directions as sorted lists, which are the
//! canonical representation, plus one bit row per vertex and direction for
//! the set intersections that dominate the statistics code.

mod generate;
mod io;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use generate::{
    circulant, directed_cycle, random_mfree, random_outregular, transitive_tournament, GenSpec,
};
pub use io::{from_json, parse_edge_list, to_edge_list, to_json, EdgeListJson};

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("digon between {0} and {1}")]
    Digon(Vertex, Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("offset {0} must lie in 1..n")]
    InvalidOffset(usize),
    #[error("offsets {0} and {1} together create digons")]
    DigonOffsetPair(usize, usize),
    #[error("outdegree {r} is infeasible on {n} vertices (need r < n/2)")]
    InfeasibleDegree { n: usize, r: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Immutable digraph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    out_bits: Vec<FixedBitSet>,
    in_bits: Vec<FixedBitSet>,
    edge_count: usize,
}

impl Digraph {
    /// Builds and validates a digraph from ordered pairs.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut out_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if out_bits[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            if out_bits[v].contains(u) {
                return Err(GraphError::Digon(v.min(u), v.max(u)));
            }
            out_bits[u].insert(v);
            out_adj[u].push(v);
        }
        Ok(Self::from_out_lists(n, out_adj))
    }

    /// Assembles the structure from out-lists already known to be valid.
    pub(crate) fn from_out_lists(n: usize, mut out_adj: Vec<Vec<Vertex>>) -> Self {
        let mut in_adj = vec![Vec::new(); n];
        let mut out_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut in_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut edge_count = 0;
        for (u, outs) in out_adj.iter_mut().enumerate() {
            outs.sort_unstable();
            for &v in outs.iter() {
                in_adj[v].push(u);
                out_bits[u].insert(v);
                in_bits[v].insert(u);
            }
            edge_count += outs.len();
        }
        // pushed in increasing u, so in-lists are already sorted
        Digraph {
            n,
            out_adj,
            in_adj,
            out_bits,
            in_bits,
            edge_count,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_out_lists(n, vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_bits(&self, v: Vertex) -> &FixedBitSet {
        &self.out_bits[v]
    }

    pub fn in_bits(&self, v: Vertex) -> &FixedBitSet {
        &self.in_bits[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.out_bits[u].contains(v)
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn min_out_degree(&self) -> Option<(Vertex, usize)> {
        (0..self.n)
            .map(|v| (v, self.out_degree(v)))
            .min_by_key(|&(v, d)| (d, v))
    }

    /// The common outdegree when every vertex has the same one.
    pub fn outregular_degree(&self) -> Option<usize> {
        let r = self.out_adj.first().map_or(0, Vec::len);
        self.out_adj.iter().all(|o| o.len() == r).then_some(r)
    }

    /// Number of unordered non-adjacent vertex pairs.
    ///
    /// Without digons every adjacent pair carries exactly one edge, so this
    /// is `C(n, 2) - |E|`.
    pub fn gamma(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.edge_count
    }

    /// Subgraph induced on `vertices`; the returned map sends new ids to
    /// original ids (in increasing order of the originals).
    pub fn induced_subgraph(&self, vertices: &BTreeSet<Vertex>) -> (Digraph, Vec<Vertex>) {
        let index_map: Vec<Vertex> = vertices.iter().copied().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in index_map.iter().enumerate() {
            local[v] = i;
        }
        let out_adj = index_map
            .iter()
            .map(|&v| {
                self.out_adj[v]
                    .iter()
                    .filter(|&&w| local[w] != usize::MAX)
                    .map(|&w| local[w])
                    .collect()
            })
            .collect();
        (Digraph::from_out_lists(index_map.len(), out_adj), index_map)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Digraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut out_adj = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            out_adj[perm[u]].push(perm[v]);
        }
        Digraph::from_out_lists(self.n, out_adj)
    }

    /// Copy with edges removed.
    pub fn without_edges(&self, removed: &[Edge]) -> Digraph {
        let gone: BTreeSet<Edge> = removed.iter().copied().collect();
        let out_adj = self
            .out_adj
            .iter()
            .enumerate()
            .map(|(u, outs)| {
                outs.iter()
                    .copied()
                    .filter(|&v| !gone.contains(&(u, v)))
                    .collect()
            })
            .collect();
        Digraph::from_out_lists(self.n, out_adj)
    }

    /// Kahn's algorithm; `None` when a directed cycle remains.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut ready: Vec<Vertex> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn builds_directed_triangle() {
        let d = triangle();
        assert_eq!(d.edge_count(), 3);
        assert_eq!(d.out_neighbors(2), &[0]);
        assert_eq!(d.in_neighbors(0), &[2]);
    }

    #[test]
    fn rejects_digon() {
        let err = Digraph::from_edge_list(2, [(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::Digon(0, 1));
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(
            Digraph::from_edge_list(3, [(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            Digraph::from_edge_list(3, [(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Digraph::from_edge_list(3, [(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn five_cycle_is_one_outregular() {
        let d = Digraph::from_edge_list(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(d.outregular_degree(), Some(1));
        assert_eq!(d.gamma(), 5);
    }

    #[test]
    fn gamma_of_known_graphs() {
        assert_eq!(transitive_tournament(4).gamma(), 0);
        assert_eq!(circulant(7, &[1, 2]).unwrap().gamma(), 7);
    }

    #[test]
    fn induced_subgraphs() {
        let (empty, map) = triangle().induced_subgraph(&BTreeSet::new());
        assert_eq!(empty.n(), 0);
        assert!(map.is_empty());

        let (sub, map) = triangle().induced_subgraph(&[0, 1].into_iter().collect());
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map, vec![0, 1]);

        let c = circulant(9, &[1, 2, 3, 4]).unwrap();
        let nbhd: BTreeSet<_> = c.out_neighbors(0).iter().copied().collect();
        let (sub, map) = c.induced_subgraph(&nbhd);
        let edges: Vec<_> = sub.edges().map(|(a, b)| (map[a], map[b])).collect();
        assert_eq!(edges, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn topological_order_detects_cycles() {
        assert!(triangle().topological_order().is_none());
        assert_eq!(
            transitive_tournament(4).topological_order(),
            Some(vec![0, 1, 2, 3])
        );
    }
}
