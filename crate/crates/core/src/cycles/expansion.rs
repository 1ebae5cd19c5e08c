//! Layered out-neighborhood expansion around an edge or a vertex.
//!
//! Starting from `N+(v)`, each step picks a pivot of small outdegree inside
//! the current structure `G_k = N+(v) ∪ S_1 ∪ ... ∪ S_{k-1}` and adds its
//! remaining out-neighbors as the next layer `S_k`. Layers must avoid the
//! in-neighborhoods of the anchor; when one does not, the parent links give
//! a directed cycle of bounded length. When no pivot of outdegree at most
//! `alpha * |G_k|` exists, the dense structure itself is reported.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CycleWitness, Provenance};
use crate::graph::{Digraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpansionMode {
    /// Edge anchor, `m - 3` layers, first pivot taken in `N+(v)`.
    NoBaseTriangle,
    /// Edge anchor with `t(u,v) > 0`, `m - 2` layers, first pivot taken in
    /// `N+(u) ∩ N+(v)`.
    BaseTriangle,
    /// Vertex anchor, `m - 2` layers, bounds the indegree of the anchor.
    IndegreeLemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    Edge(Vertex, Vertex),
    Vertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pivot {
    pub vertex: Vertex,
    /// Order of the induced subgraph the pivot was chosen from.
    pub subgraph_size: usize,
    /// Outdegree of the pivot inside that subgraph.
    pub inner_out_degree: usize,
    /// Outdegree of the pivot in the whole digraph.
    pub out_degree: usize,
}

/// The anchor's fixed sets. For a vertex anchor `in_u_minus_in_v` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSets {
    pub out_v: Vec<Vertex>,
    pub in_v: Vec<Vertex>,
    pub in_u_minus_in_v: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTrace {
    pub mode: ExpansionMode,
    pub anchor: Anchor,
    pub alpha: f64,
    pub m: usize,
    pub base: BaseSets,
    pub pivots: Vec<Pivot>,
    /// `layers[k]` holds `S_{k+1}`; every member's parent is `pivots[k]`.
    pub layers: Vec<Vec<Vertex>>,
    /// Guaranteed value of `|S_1| + ... + |S_k|` given the actual pivot
    /// outdegrees.
    pub cumulative_lower_bounds: Vec<f64>,
}

impl ExpansionTrace {
    pub fn cumulative_sizes(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0, |acc, l| {
                *acc += l.len();
                Some(*acc)
            })
            .collect()
    }

    /// Total size of the mutually disjoint sets the trace certifies.
    pub fn covered(&self) -> usize {
        let anchor = usize::from(matches!(self.anchor, Anchor::Vertex(_)));
        anchor
            + self.base.out_v.len()
            + self.base.in_v.len()
            + self.base.in_u_minus_in_v.len()
            + self.layers.iter().map(Vec::len).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseSubgraph {
    /// 1-based index of the layer whose pivot could not be found.
    pub step: usize,
    pub vertices: BTreeSet<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expansion {
    Complete(ExpansionTrace),
    Cycle(CycleWitness),
    Dense(DenseSubgraph),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

struct Structure<'a> {
    d: &'a Digraph,
    anchor_u: Option<Vertex>,
    v: Vertex,
    members: FixedBitSet,
    parent: Vec<Option<Vertex>>,
}

impl Structure<'_> {
    /// Path `v -> ... -> x` following parent links back to `N+(v)`.
    fn path_from_v(&self, x: Vertex) -> Vec<Vertex> {
        let mut chain = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            chain.push(p);
            cur = p;
        }
        chain.push(self.v);
        chain.reverse();
        chain
    }

    /// Path `u -> ... -> x`, entering the structure directly when the first
    /// chain vertex is also an out-neighbor of `u`.
    fn path_from_u(&self, x: Vertex) -> Vec<Vertex> {
        let u = self.anchor_u.expect("edge anchor");
        let mut path = self.path_from_v(x);
        if self.d.has_edge(u, path[1]) {
            path[0] = u;
        } else {
            path.insert(0, u);
        }
        path
    }

    /// Minimum inner outdegree vertex among `candidates`, ties by id.
    fn pivot_among(&self, candidates: &FixedBitSet, alpha: f64) -> Result<Pivot, DenseSubgraph> {
        let size = candidates.count_ones(..);
        let best = candidates
            .ones()
            .map(|x| (self.d.out_bits(x).intersection_count(candidates), x))
            .min();
        match best {
            Some((inner, x)) if inner as f64 <= alpha * size as f64 => Ok(Pivot {
                vertex: x,
                subgraph_size: size,
                inner_out_degree: inner,
                out_degree: self.d.out_degree(x),
            }),
            _ => Err(DenseSubgraph {
                step: 0,
                vertices: candidates.ones().collect(),
            }),
        }
    }
}

fn to_bits(n: usize, items: impl IntoIterator<Item = Vertex>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    b.extend(items);
    b
}

/// Runs the layered expansion for one anchor.
///
/// Returns a complete trace with `m - 3` (no base triangle) or `m - 2`
/// layers, a cycle of length at most `m` read off a failed disjointness
/// check, or the dense induced subgraph on which no pivot exists.
pub fn expand_sets(
    d: &Digraph,
    alpha: f64,
    m: usize,
    anchor: Anchor,
    mode: ExpansionMode,
) -> Result<Expansion, ExpansionError> {
    let n = d.n();
    if m < 3 {
        return Err(ExpansionError::HypothesisViolated(format!("m = {m} < 3")));
    }
    let (anchor_u, v) = match (anchor, mode) {
        (Anchor::Edge(u, v), ExpansionMode::NoBaseTriangle | ExpansionMode::BaseTriangle) => {
            if !d.has_edge(u, v) {
                return Err(ExpansionError::HypothesisViolated(format!(
                    "({u}, {v}) is not an edge"
                )));
            }
            (Some(u), v)
        }
        (Anchor::Vertex(v), ExpansionMode::IndegreeLemma) => {
            if v >= n {
                return Err(ExpansionError::HypothesisViolated(format!(
                    "vertex {v} out of range"
                )));
            }
            (None, v)
        }
        _ => {
            return Err(ExpansionError::HypothesisViolated(format!(
                "anchor {anchor:?} does not fit mode {mode:?}"
            )))
        }
    };

    let out_v = d.out_bits(v).clone();
    let in_v = d.in_bits(v);
    let in_u = anchor_u.map(|u| d.in_bits(u));
    let base = BaseSets {
        out_v: d.out_neighbors(v).to_vec(),
        in_v: d.in_neighbors(v).to_vec(),
        in_u_minus_in_v: in_u.map_or(Vec::new(), |b| b.difference(in_v).collect()),
    };

    let mut st = Structure {
        d,
        anchor_u,
        v,
        members: out_v.clone(),
        parent: vec![None; n],
    };

    // base sets: N+(v) ∩ N-(u) closes the triangle u -> v -> x -> u
    if let Some(x) = in_u.and_then(|b| out_v.intersection(b).next()) {
        let u = anchor_u.unwrap();
        return Ok(Expansion::Cycle(CycleWitness::new(
            vec![u, v, x],
            Provenance::ExpansionDisjointness,
        )));
    }

    let (layer_count, t_uv) = match mode {
        ExpansionMode::NoBaseTriangle => (m - 3, 0),
        ExpansionMode::BaseTriangle => {
            let u = anchor_u.unwrap();
            let t = d.out_bits(u).intersection_count(&out_v);
            if t == 0 {
                return Err(ExpansionError::HypothesisViolated(format!(
                    "edge ({u}, {v}) is the base of no transitive triangle"
                )));
            }
            (m - 2, t)
        }
        ExpansionMode::IndegreeLemma => (m - 2, 0),
    };

    let out_deg_v = d.out_degree(v) as f64;
    let mut pivots = Vec::with_capacity(layer_count);
    let mut layers: Vec<Vec<Vertex>> = Vec::with_capacity(layer_count);
    let mut bounds = Vec::with_capacity(layer_count);
    let mut prev_bound = 0.0;

    for k in 1..=layer_count {
        let pivot = if k == 1 && mode == ExpansionMode::BaseTriangle {
            let common = to_bits(n, d.out_bits(anchor_u.unwrap()).intersection(&out_v));
            st.pivot_among(&common, alpha)
        } else {
            let members = st.members.clone();
            st.pivot_among(&members, alpha)
        };
        let pivot = match pivot {
            Ok(p) => p,
            Err(mut dense) => {
                dense.step = k;
                return Ok(Expansion::Dense(dense));
            }
        };
        let w = pivot.vertex;
        let layer: Vec<Vertex> = d.out_bits(w).difference(&st.members).collect();
        for &x in &layer {
            st.parent[x] = Some(w);
        }

        // disjointness from {v}, N-(v) and N-(u) \ N-(v)
        if layer.contains(&v) {
            return Ok(Expansion::Cycle(CycleWitness::new(
                st.path_from_v(w),
                Provenance::ExpansionDisjointness,
            )));
        }
        if let Some(&x) = layer.iter().find(|&&x| in_v.contains(x)) {
            return Ok(Expansion::Cycle(CycleWitness::new(
                st.path_from_v(x),
                Provenance::ExpansionDisjointness,
            )));
        }
        if let Some(b) = in_u {
            if let Some(&x) = layer.iter().find(|&&x| b.contains(x)) {
                return Ok(Expansion::Cycle(CycleWitness::new(
                    st.path_from_u(x),
                    Provenance::ExpansionDisjointness,
                )));
            }
        }

        let bound = if k == 1 && mode == ExpansionMode::BaseTriangle {
            // |S_1| >= d+(w_1) - alpha t(u,v) - p(u,v)
            let p_uv = d.out_degree(v) - t_uv;
            pivot.out_degree as f64 - alpha * t_uv as f64 - p_uv as f64
        } else {
            pivot.out_degree as f64 - alpha * out_deg_v + (1.0 - alpha) * prev_bound
        };
        prev_bound = bound;
        bounds.push(bound);

        st.members.extend(layer.iter().copied());
        pivots.push(pivot);
        layers.push(layer);
    }

    Ok(Expansion::Complete(ExpansionTrace {
        mode,
        anchor,
        alpha,
        m,
        base,
        pivots,
        layers,
        cumulative_lower_bounds: bounds,
    }))
}
