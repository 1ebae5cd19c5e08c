//! Per-edge and per-vertex counting statistics.
//!
//! For an edge `(u, v)`:
//! * `p(u,v) = |N+(v) \ N+(u)|`, induced 2-paths starting with `(u, v)`;
//! * `q(u,v) = |N-(u) \ N-(v)|`, induced 2-paths ending with `(u, v)`;
//! * `t(u,v) = |N+(u) ∩ N+(v)|`, transitive triangles with base `(u, v)`;
//! * `f(u,v)`, unordered non-adjacent pairs inside `N+(u) ∩ N+(v)`.
//!
//! For a vertex `v`, `t(v)` counts edges inside `N+(v)` and
//! `f(v) = C(d+(v), 2) - t(v)` the missing ones.

mod audit;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Digraph, Vertex};

pub use audit::{
    audit_lemma1, audit_lemma3, audit_lemma45, audit_lemma6, audit_tauineq1, audit_tauineq2,
    AuditError, AuditItem, AuditParams, AuditReport, InequalityId, Lemma45Report, Subject, Verdict,
    VERDICT_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeStat {
    pub u: Vertex,
    pub v: Vertex,
    pub p: usize,
    pub q: usize,
    pub t: usize,
    pub f: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStat {
    pub v: Vertex,
    pub out_degree: usize,
    pub in_degree: usize,
    pub t: usize,
    pub f: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeStats {
    /// One record per edge, in lexicographic edge order.
    pub edges: Vec<EdgeStat>,
    pub vertices: Vec<VertexStat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalStats {
    pub n: usize,
    pub edge_count: usize,
    /// Common outdegree when the digraph is outregular.
    pub r: Option<usize>,
    /// Transitive triangles, summed over edges.
    pub transitive_triangles: u64,
    /// The same count summed over source vertices.
    pub transitive_triangles_by_vertex: u64,
    /// `T / (n r^2)`, present only for `r`-outregular inputs with `r >= 1`.
    pub tau: Option<f64>,
    pub sum_p: u64,
    pub sum_q: u64,
    pub sum_f_edge: u64,
    pub sum_f_vertex: u64,
    pub sum_indegree_sq: u64,
    pub out2claws: u64,
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Edges of `d` with both ends in `set`.
fn edges_inside(d: &Digraph, set: &FixedBitSet) -> usize {
    set.ones()
        .map(|x| d.out_bits(x).intersection_count(set))
        .sum()
}

fn edge_stat(d: &Digraph, u: Vertex, v: Vertex) -> EdgeStat {
    let mut common = d.out_bits(u).clone();
    common.intersect_with(d.out_bits(v));
    let t = common.count_ones(..);
    EdgeStat {
        u,
        v,
        p: d.out_bits(v).difference_count(d.out_bits(u)),
        q: d.in_bits(u).difference_count(d.in_bits(v)),
        t,
        f: choose2(t) - edges_inside(d, &common),
    }
}

pub fn compute_edge_stats(d: &Digraph) -> (EdgeStats, GlobalStats) {
    let edge_list: Vec<_> = d.edges().collect();
    let edges: Vec<EdgeStat> = edge_list
        .par_iter()
        .map(|&(u, v)| edge_stat(d, u, v))
        .collect();
    let vertices: Vec<VertexStat> = (0..d.n())
        .into_par_iter()
        .map(|v| {
            let t = edges_inside(d, d.out_bits(v));
            VertexStat {
                v,
                out_degree: d.out_degree(v),
                in_degree: d.in_degree(v),
                t,
                f: choose2(d.out_degree(v)) - t,
            }
        })
        .collect();

    let sum = |f: &dyn Fn(&EdgeStat) -> usize| edges.iter().map(|e| f(e) as u64).sum::<u64>();
    let transitive_triangles = sum(&|e| e.t);
    let r = d.outregular_degree();
    let tau = r
        .filter(|&r| r >= 1)
        .map(|r| transitive_triangles as f64 / (d.n() as f64 * (r * r) as f64));
    let global = GlobalStats {
        n: d.n(),
        edge_count: d.edge_count(),
        r,
        transitive_triangles,
        transitive_triangles_by_vertex: vertices.iter().map(|s| s.t as u64).sum(),
        tau,
        sum_p: sum(&|e| e.p),
        sum_q: sum(&|e| e.q),
        sum_f_edge: sum(&|e| e.f),
        sum_f_vertex: vertices.iter().map(|s| s.f as u64).sum(),
        sum_indegree_sq: vertices
            .iter()
            .map(|s| (s.in_degree * s.in_degree) as u64)
            .sum(),
        out2claws: vertices.iter().map(|s| choose2(s.out_degree) as u64).sum(),
    };
    (EdgeStats { edges, vertices }, global)
}
