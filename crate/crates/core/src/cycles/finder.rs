//! Constructive search for a directed cycle of length at most `m` in a
//! digraph of minimum outdegree at least `ceil(alpha n)`.
//!
//! The digraph is first trimmed to be exactly `r`-outregular. Every edge
//! is then expanded in lexicographic order; a failed disjointness check
//! yields the cycle, and a dense pivot-free structure is a strictly smaller
//! instance satisfying the same hypothesis, so the search restarts inside
//! it. Small instances go straight to the BFS oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expansion::{expand_sets, Anchor, Expansion, ExpansionMode};
use super::{shortest_cycle_within, CycleWitness, Provenance};
use crate::graph::{Digraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinderConfig {
    /// Instances with at most this many vertices are solved by BFS.
    pub base_case_cutoff: usize,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            base_case_cutoff: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructiveResult {
    pub witness: CycleWitness,
    pub recursion_depth: usize,
    /// Edges whose expansion completed without finding anything.
    pub completed_expansions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinderError {
    #[error("vertex {vertex} has outdegree {out_degree} < required {required}")]
    HypothesisViolated {
        vertex: Vertex,
        out_degree: usize,
        required: usize,
    },
    #[error("every expansion completed on an instance with {n} vertices (depth {depth}); the counting argument rules this out for alpha >= alpha(m)")]
    InternalContradiction { n: usize, depth: usize },
}

pub(crate) fn required_out_degree(alpha: f64, n: usize) -> usize {
    ((alpha * n as f64).ceil().max(0.0) as usize).max(1)
}

/// Keeps the `r` smallest out-neighbors of every vertex.
fn trim_to_outregular(d: &Digraph, r: usize) -> Digraph {
    let out_adj = (0..d.n())
        .map(|v| d.out_neighbors(v)[..r].to_vec())
        .collect();
    Digraph::from_out_lists(d.n(), out_adj)
}

pub fn find_short_cycle_constructive(
    d: &Digraph,
    m: usize,
    alpha: f64,
) -> Result<ConstructiveResult, FinderError> {
    find_short_cycle_with(d, m, alpha, FinderConfig::default())
}

pub fn find_short_cycle_with(
    d: &Digraph,
    m: usize,
    alpha: f64,
    config: FinderConfig,
) -> Result<ConstructiveResult, FinderError> {
    let required = required_out_degree(alpha, d.n());
    if let Some((vertex, out_degree)) = d.min_out_degree() {
        if out_degree < required {
            return Err(FinderError::HypothesisViolated {
                vertex,
                out_degree,
                required,
            });
        }
    }

    let mut current = trim_to_outregular(d, required);
    let mut to_original: Vec<Vertex> = (0..d.n()).collect();
    let mut depth = 0;
    let mut completed = 0;

    'instance: loop {
        let provenance = |p| {
            if depth > 0 {
                Provenance::DenseSubgraphRecursion
            } else {
                p
            }
        };
        if current.n() <= config.base_case_cutoff {
            return match shortest_cycle_within(&current, m) {
                Some(w) => Ok(ConstructiveResult {
                    witness: w.mapped(&to_original, provenance(Provenance::BfsOracle)),
                    recursion_depth: depth,
                    completed_expansions: completed,
                }),
                None => Err(FinderError::InternalContradiction {
                    n: current.n(),
                    depth,
                }),
            };
        }

        let edges: Vec<_> = current.edges().collect();
        for (u, v) in edges {
            let t_uv = current.out_bits(u).intersection_count(current.out_bits(v));
            let mode = if t_uv > 0 {
                ExpansionMode::BaseTriangle
            } else {
                ExpansionMode::NoBaseTriangle
            };
            let outcome = expand_sets(&current, alpha, m, Anchor::Edge(u, v), mode)
                .expect("anchor is an edge and mode matches t(u,v)");
            match outcome {
                Expansion::Cycle(w) => {
                    return Ok(ConstructiveResult {
                        witness: w
                            .mapped(&to_original, provenance(Provenance::ExpansionDisjointness)),
                        recursion_depth: depth,
                        completed_expansions: completed,
                    })
                }
                Expansion::Dense(dense) => {
                    let (sub, local) = current.induced_subgraph(&dense.vertices);
                    let r = required_out_degree(alpha, sub.n());
                    debug_assert!(sub.min_out_degree().is_none_or(|(_, k)| k >= r));
                    current = trim_to_outregular(&sub, r);
                    to_original = local.iter().map(|&x| to_original[x]).collect();
                    depth += 1;
                    continue 'instance;
                }
                Expansion::Complete(_) => completed += 1,
            }
        }
        return Err(FinderError::InternalContradiction {
            n: current.n(),
            depth,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::girth;
    use crate::graph::{circulant, directed_cycle, random_outregular};

    #[test]
    fn circulant_nine_gives_triangle() {
        let d = circulant(9, &[1, 2, 3, 4]).unwrap();
        let res = find_short_cycle_constructive(&d, 3, 0.3543).unwrap();
        assert_eq!(res.witness.len(), 3);
        res.witness.validate(&d).unwrap();
    }

    #[test]
    fn circulant_twelve_gives_triangle() {
        let d = circulant(12, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(girth(&d), Some(3));
        let res = find_short_cycle_constructive(&d, 3, 0.3543).unwrap();
        assert!(res.witness.len() <= 3);
        res.witness.validate(&d).unwrap();
    }

    #[test]
    fn outdegree_zero_violates_hypothesis() {
        let d = Digraph::from_edge_list(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            find_short_cycle_constructive(&d, 3, 0.3543),
            Err(FinderError::HypothesisViolated {
                vertex: 3,
                out_degree: 0,
                required: 2
            })
        );
        assert!(matches!(
            find_short_cycle_constructive(&directed_cycle(20), 3, 0.3543),
            Err(FinderError::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn expansion_path_without_bfs_shortcut() {
        let config = FinderConfig {
            base_case_cutoff: 0,
        };
        for seed in 0..20 {
            let n = 16 + seed as usize % 9;
            let r = required_out_degree(0.2887, n);
            let d = random_outregular(n, r, seed).unwrap();
            let res = find_short_cycle_with(&d, 4, 0.2887, config).unwrap();
            assert!(res.witness.len() <= 4);
            res.witness.validate(&d).unwrap();
        }
    }
}
