//! Minimum feedback arc sets and the missing-edge bounds built on them.
//!
//! Every result is given by a vertex order; the removed edges are exactly the
//! edges pointing backwards in that order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::c;
use crate::cycles::is_m_free;
use crate::graph::{Digraph, Edge, Vertex};

/// Largest order handled by the subset DP.
pub const EXACT_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FasError {
    #[error("exact feedback arc set limited to n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("digraph has a cycle of length {length} <= m = {m}")]
    NotMFree { m: usize, length: usize },
    #[error("digraph has no missing edges")]
    GammaZero,
    #[error("m must be >= 3, got {0}")]
    MOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FasResult {
    pub beta: usize,
    pub removed: Vec<Edge>,
    pub order: Vec<Vertex>,
    pub exact: bool,
}

impl FasResult {
    fn from_order(d: &Digraph, order: Vec<Vertex>, exact: bool) -> FasResult {
        let removed = backward_edges(d, &order);
        FasResult {
            beta: removed.len(),
            removed,
            order,
            exact,
        }
    }

    /// `order` is a permutation, `removed` its backward edges, and the rest acyclic.
    pub fn is_consistent(&self, d: &Digraph) -> bool {
        let mut seen = vec![false; d.n()];
        if self.order.len() != d.n() {
            return false;
        }
        for &v in &self.order {
            if v >= d.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.beta == self.removed.len()
            && self.removed == backward_edges(d, &self.order)
            && d.without_edges(&self.removed).is_acyclic()
    }
}

/// Edges `(u, v)` with `v` before `u` in `order`, lexicographically sorted.
pub fn backward_edges(d: &Digraph, order: &[Vertex]) -> Vec<Edge> {
    let mut pos = vec![0; d.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    d.edges().filter(|&(u, v)| pos[u] > pos[v]).collect()
}

/// Exact minimum via DP over prefix sets: appending `v` after the set `S`
/// costs the edges from `v` into `S`.
pub fn beta_exact(d: &Digraph) -> Result<FasResult, FasError> {
    let n = d.n();
    if n > EXACT_MAX_N {
        return Err(FasError::TooLarge {
            n,
            max: EXACT_MAX_N,
        });
    }
    let out_mask: Vec<u32> = (0..n)
        .map(|v| d.out_neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full = (1usize << n) - 1;
    let mut cost = vec![u32::MAX; full + 1];
    let mut last = vec![0u8; full + 1];
    cost[0] = 0;
    for set in 0..full {
        let base = cost[set];
        let mut free = !set & full;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let next = set | (1 << v);
            let total = base + (out_mask[v] & set as u32).count_ones();
            if total < cost[next] {
                cost[next] = total;
                last[next] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = last[set] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    let result = FasResult::from_order(d, order, true);
    debug_assert_eq!(result.beta as u32, cost[full]);
    Ok(result)
}

/// Sink/source stripping; otherwise the vertex maximizing `outdeg - indeg`
/// among the remaining vertices, smallest id on ties.
pub fn beta_heuristic(d: &Digraph) -> FasResult {
    let n = d.n();
    let mut alive = vec![true; n];
    let mut outdeg: Vec<isize> = (0..n).map(|v| d.out_degree(v) as isize).collect();
    let mut indeg: Vec<isize> = (0..n).map(|v| d.in_degree(v) as isize).collect();
    let mut head = Vec::with_capacity(n);
    let mut tail = Vec::new();
    let mut left = n;

    let remove =
        |v: Vertex, alive: &mut Vec<bool>, outdeg: &mut Vec<isize>, indeg: &mut Vec<isize>| {
            alive[v] = false;
            for &w in d.out_neighbors(v) {
                indeg[w] -= 1;
            }
            for &w in d.in_neighbors(v) {
                outdeg[w] -= 1;
            }
        };

    while left > 0 {
        if let Some(v) = (0..n).find(|&v| alive[v] && outdeg[v] == 0) {
            tail.push(v);
            remove(v, &mut alive, &mut outdeg, &mut indeg);
        } else if let Some(v) = (0..n).find(|&v| alive[v] && indeg[v] == 0) {
            head.push(v);
            remove(v, &mut alive, &mut outdeg, &mut indeg);
        } else {
            let v = (0..n)
                .filter(|&v| alive[v])
                .max_by_key(|&v| (outdeg[v] - indeg[v], std::cmp::Reverse(v)))
                .expect("some vertex remains");
            head.push(v);
            remove(v, &mut alive, &mut outdeg, &mut indeg);
        }
        left -= 1;
    }
    head.extend(tail.into_iter().rev());
    FasResult::from_order(d, head, false)
}

/// Exact for `n <= 20`, heuristic above.
pub fn beta_best(d: &Digraph) -> FasResult {
    beta_exact(d).unwrap_or_else(|_| beta_heuristic(d))
}

fn require_m_free(d: &Digraph, m: usize) -> Result<(), FasError> {
    if m < 3 {
        return Err(FasError::MOutOfRange(m));
    }
    match is_m_free(d, m) {
        (true, _) => Ok(()),
        (false, w) => Err(FasError::NotMFree {
            m,
            length: w.map_or(0, |w| w.len()),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fact1Verdict {
    Holds,
    Violated,
    /// Heuristic beta exceeded the threshold; the true beta may not.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fact1Report {
    pub m: usize,
    pub beta: usize,
    pub gamma: usize,
    pub c_m: f64,
    pub threshold: f64,
    pub exact: bool,
    pub verdict: Fact1Verdict,
}

/// `beta(G) <= c_m gamma(G)` on an `m`-free digraph.
pub fn check_fact1(d: &Digraph, m: usize) -> Result<Fact1Report, FasError> {
    require_m_free(d, m)?;
    let fas = beta_best(d);
    let gamma = d.gamma();
    let c_m = c(m);
    let threshold = c_m * gamma as f64;
    let verdict = match (fas.beta as f64 <= threshold, fas.exact) {
        (true, _) => Fact1Verdict::Holds,
        (false, true) => Fact1Verdict::Violated,
        (false, false) => Fact1Verdict::Inconclusive,
    };
    Ok(Fact1Report {
        m,
        beta: fas.beta,
        gamma,
        c_m,
        threshold,
        exact: fas.exact,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub m: usize,
    pub min_out_degree: Option<usize>,
    pub gamma: usize,
    pub c_m: f64,
    pub bound: f64,
    pub holds: bool,
    pub witness_vertex: Option<Vertex>,
}

/// Some vertex has outdegree at most `sqrt(2 c_m gamma)`.
pub fn check_lemma2(d: &Digraph, m: usize) -> Result<Lemma2Report, FasError> {
    require_m_free(d, m)?;
    let gamma = d.gamma();
    let c_m = c(m);
    let bound = (2.0 * c_m * gamma as f64).sqrt();
    let min = d.min_out_degree();
    Ok(Lemma2Report {
        m,
        min_out_degree: min.map(|(_, k)| k),
        gamma,
        c_m,
        bound,
        holds: min.is_none_or(|(_, k)| k as f64 <= bound),
        witness_vertex: min.map(|(v, _)| v),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SullivanReport {
    pub m: usize,
    pub beta: usize,
    pub gamma: usize,
    pub ratio: f64,
    /// `2 / ((m+1)(m-2))`.
    pub conjectured: f64,
}

/// Diagnostic `beta / gamma` next to the conjectured extreme ratio.
pub fn sullivan_ratio(d: &Digraph, m: usize) -> Result<SullivanReport, FasError> {
    require_m_free(d, m)?;
    let gamma = d.gamma();
    if gamma == 0 {
        return Err(FasError::GammaZero);
    }
    let beta = beta_exact(d)?.beta;
    Ok(SullivanReport {
        m,
        beta,
        gamma,
        ratio: beta as f64 / gamma as f64,
        conjectured: 2.0 / ((m + 1) * (m - 2)) as f64,
    })
}
