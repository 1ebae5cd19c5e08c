//! Girth oracles and the constructive short-cycle finder.

mod expansion;
mod finder;

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, Vertex};

pub use expansion::{
    expand_sets, Anchor, BaseSets, DenseSubgraph, Expansion, ExpansionError, ExpansionMode,
    ExpansionTrace, Pivot,
};
pub use finder::{
    find_short_cycle_constructive, find_short_cycle_with, ConstructiveResult, FinderConfig,
    FinderError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BfsOracle,
    ExpansionDisjointness,
    DenseSubgraphRecursion,
}

/// An explicit directed cycle `v0 -> v1 -> ... -> v_{k-1} -> v0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<Vertex>,
    pub length: usize,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("cycle of length {0} is shorter than 3")]
    TooShort(usize),
    #[error("stored length {stored} differs from {actual} vertices")]
    LengthMismatch { stored: usize, actual: usize },
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("({0}, {1}) is not an edge")]
    MissingEdge(Vertex, Vertex),
}

impl CycleWitness {
    pub fn new(vertices: Vec<Vertex>, provenance: Provenance) -> Self {
        CycleWitness {
            length: vertices.len(),
            vertices,
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks the shape of the witness without a graph.
    pub fn check_shape(&self) -> Result<(), WitnessError> {
        if self.length != self.vertices.len() {
            return Err(WitnessError::LengthMismatch {
                stored: self.length,
                actual: self.vertices.len(),
            });
        }
        if self.vertices.len() < 3 {
            return Err(WitnessError::TooShort(self.vertices.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                return Err(WitnessError::RepeatedVertex(v));
            }
        }
        Ok(())
    }

    /// Checks every consecutive pair, including the closing one, against `d`.
    pub fn validate(&self, d: &Digraph) -> Result<(), WitnessError> {
        self.check_shape()?;
        let k = self.vertices.len();
        for i in 0..k {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if !d.has_edge(a, b) {
                return Err(WitnessError::MissingEdge(a, b));
            }
        }
        Ok(())
    }

    pub(crate) fn mapped(self, map: &[Vertex], provenance: Provenance) -> Self {
        CycleWitness::new(self.vertices.iter().map(|&v| map[v]).collect(), provenance)
    }
}

/// Shortest cycle through `source` of length at most `limit`, as a vertex
/// sequence starting at `source`.
fn shortest_cycle_through(d: &Digraph, source: Vertex, limit: usize) -> Option<Vec<Vertex>> {
    let n = d.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([source]);
    dist[source] = 0;
    while let Some(x) = queue.pop_front() {
        if dist[x] + 1 > limit {
            break;
        }
        if d.out_bits(x).contains(source) {
            let mut path = vec![x];
            let mut cur = x;
            while cur != source {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in d.out_neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

fn shortest_cycle_within(d: &Digraph, limit: usize) -> Option<CycleWitness> {
    let best = (0..d.n())
        .into_par_iter()
        .filter_map(|s| shortest_cycle_through(d, s, limit).map(|c| (c.len(), s, c)))
        .min_by_key(|&(len, s, _)| (len, s))?;
    Some(CycleWitness::new(best.2, Provenance::BfsOracle))
}

/// A shortest directed cycle, found by BFS from every vertex.
pub fn shortest_cycle(d: &Digraph) -> Option<CycleWitness> {
    shortest_cycle_within(d, usize::MAX)
}

/// Exact girth; `None` for acyclic digraphs.
pub fn girth(d: &Digraph) -> Option<usize> {
    shortest_cycle(d).map(|w| w.len())
}

/// Whether `d` has no directed cycle of length at most `m`; otherwise a
/// shortest cycle is returned alongside.
pub fn is_m_free(d: &Digraph, m: usize) -> (bool, Option<CycleWitness>) {
    match shortest_cycle_within(d, m) {
        Some(w) => (false, Some(w)),
        None => (true, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, directed_cycle, transitive_tournament};

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&directed_cycle(5)), Some(5));
        assert_eq!(girth(&transitive_tournament(6)), None);
        assert_eq!(girth(&circulant(7, &[1, 2]).unwrap()), Some(4));
        let c9 = circulant(9, &[1, 2, 3, 4]).unwrap();
        let w = shortest_cycle(&c9).unwrap();
        assert_eq!(w.len(), 3);
        w.validate(&c9).unwrap();
    }

    #[test]
    fn m_free_examples() {
        let c5 = directed_cycle(5);
        assert_eq!(is_m_free(&c5, 4), (true, None));
        let (free, w) = is_m_free(&c5, 5);
        assert!(!free);
        assert_eq!(w.unwrap().len(), 5);
        let (free, w) = is_m_free(&circulant(9, &[1, 2, 3, 4]).unwrap(), 3);
        assert!(!free);
        assert_eq!(w.unwrap().length, 3);
    }

    #[test]
    fn witness_validation_errors() {
        let c5 = directed_cycle(5);
        let bad = CycleWitness::new(vec![0, 1, 3], Provenance::BfsOracle);
        assert_eq!(bad.validate(&c5), Err(WitnessError::MissingEdge(1, 3)));
        let bad = CycleWitness::new(vec![0, 1, 0], Provenance::BfsOracle);
        assert_eq!(bad.validate(&c5), Err(WitnessError::RepeatedVertex(0)));
        let bad = CycleWitness::new(vec![0, 1], Provenance::BfsOracle);
        assert_eq!(bad.validate(&c5), Err(WitnessError::TooShort(2)));
    }
}
