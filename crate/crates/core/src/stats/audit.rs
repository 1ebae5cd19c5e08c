//! Evaluation of the counting inequalities satisfied by a minimal
//! `m`-free, `r`-outregular counterexample.
//!
//! Every item is stored as `lhs <= rhs` with `slack = rhs - lhs`, so a
//! non-negative slack means the inequality holds for that item. Violations
//! are data: the inequalities are only proved for minimal counterexamples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{compute_edge_stats, EdgeStats, GlobalStats};
use crate::cycles::is_m_free;
use crate::graph::{Digraph, Vertex};

/// Slack above `-VERDICT_TOLERANCE` counts as holding.
pub const VERDICT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InequalityId {
    Lemma1,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    Tauineq1,
    Tauineq2,
}

impl InequalityId {
    pub fn name(self) -> &'static str {
        match self {
            InequalityId::Lemma1 => "lemma1",
            InequalityId::Lemma3 => "lemma3",
            InequalityId::Lemma4 => "lemma4",
            InequalityId::Lemma5 => "lemma5",
            InequalityId::Lemma6 => "lemma6",
            InequalityId::Tauineq1 => "tauineq1",
            InequalityId::Tauineq2 => "tauineq2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Subject {
    Edge { u: Vertex, v: Vertex },
    Vertex { v: Vertex },
    Aggregate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditItem {
    pub subject: Subject,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl AuditItem {
    fn new(subject: Subject, lhs: f64, rhs: f64) -> Self {
        AuditItem {
            subject,
            lhs,
            rhs,
            slack: rhs - lhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -VERDICT_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditParams {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub tau: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    AllHold,
    Violated { count: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub inequality: InequalityId,
    pub params: AuditParams,
    pub items: Vec<AuditItem>,
    pub verdict: Verdict,
    pub min_slack: Option<f64>,
}

impl AuditReport {
    fn new(inequality: InequalityId, params: AuditParams, items: Vec<AuditItem>) -> Self {
        let violated = items.iter().filter(|i| !i.holds()).count();
        let min_slack = items.iter().map(|i| i.slack).reduce(f64::min);
        AuditReport {
            inequality,
            params,
            items,
            verdict: if violated == 0 {
                Verdict::AllHold
            } else {
                Verdict::Violated { count: violated }
            },
            min_slack,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &AuditItem> {
        self.items.iter().filter(|i| !i.holds())
    }

    /// Recomputes every slack and the verdict from the stored sides.
    pub fn is_consistent(&self) -> bool {
        let slacks_ok = self.items.iter().all(|i| i.slack == i.rhs - i.lhs);
        let again = AuditReport::new(self.inequality, self.params.clone(), self.items.clone());
        slacks_ok && again.verdict == self.verdict
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma45Report {
    pub lemma4: AuditReport,
    pub lemma5: AuditReport,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("m must be >= 3, got {0}")]
    MOutOfRange(usize),
    #[error("digraph is not outregular")]
    NotOutregular,
    #[error("digraph is not {m}-free: it has a cycle of length {length}")]
    NotMFree { m: usize, length: usize },
    #[error("tau = {0} >= 1/2 leaves the square-root bound undefined")]
    TauOverHalf(f64),
}

struct Prepared {
    stats: EdgeStats,
    global: GlobalStats,
    r: usize,
}

fn prepare(d: &Digraph, m: usize) -> Result<Prepared, AuditError> {
    if m < 3 {
        return Err(AuditError::MOutOfRange(m));
    }
    let r = d.outregular_degree().ok_or(AuditError::NotOutregular)?;
    if let (false, Some(w)) = is_m_free(d, m) {
        return Err(AuditError::NotMFree { m, length: w.len() });
    }
    let (stats, global) = compute_edge_stats(d);
    Ok(Prepared { stats, global, r })
}

fn params(p: &Prepared, m: usize) -> AuditParams {
    AuditParams {
        n: p.global.n,
        r: p.r,
        m,
        alpha: None,
        c: None,
        a: None,
        b: None,
        tau: p.global.tau,
    }
}

fn pow(base: f64, exp: usize) -> f64 {
    base.powi(exp as i32)
}

/// Per edge: `n >= (1-(1-a)^(m-2))/a r + d-(v) + q(u,v) + (1-a)^(m-2) t(u,v)`.
pub fn audit_lemma1(d: &Digraph, alpha: f64, m: usize) -> Result<AuditReport, AuditError> {
    let p = prepare(d, m)?;
    let decay = pow(1.0 - alpha, m - 2);
    let head = (1.0 - decay) / alpha * p.r as f64;
    let n = d.n() as f64;
    let items = p
        .stats
        .edges
        .iter()
        .map(|e| {
            let lhs = head + d.in_degree(e.v) as f64 + e.q as f64 + decay * e.t as f64;
            AuditItem::new(Subject::Edge { u: e.u, v: e.v }, lhs, n)
        })
        .collect();
    let mut prm = params(&p, m);
    prm.alpha = Some(alpha);
    Ok(AuditReport::new(InequalityId::Lemma1, prm, items))
}

/// Per vertex: `d-(v) <= a_m r` with `a_m = (1-alpha)^(m-1)/alpha`.
pub fn audit_lemma3(d: &Digraph, alpha: f64, m: usize) -> Result<AuditReport, AuditError> {
    let p = prepare(d, m)?;
    let a = pow(1.0 - alpha, m - 1) / alpha;
    let bound = a * p.r as f64;
    let items = p
        .stats
        .vertices
        .iter()
        .map(|s| AuditItem::new(Subject::Vertex { v: s.v }, s.in_degree as f64, bound))
        .collect();
    let mut prm = params(&p, m);
    prm.alpha = Some(alpha);
    prm.a = Some(a);
    Ok(AuditReport::new(InequalityId::Lemma3, prm, items))
}

/// Aggregates `Σ f(u,v) < b r Σ f(v)` and
/// `Σ sqrt f(u,v) < n r^2 sqrt(b (1/2 - tau))`.
pub fn audit_lemma45(d: &Digraph, m: usize, b: f64) -> Result<Lemma45Report, AuditError> {
    let p = prepare(d, m)?;
    let tau = p.global.tau.unwrap_or(0.0);
    if tau >= 0.5 {
        return Err(AuditError::TauOverHalf(tau));
    }
    let r = p.r as f64;
    let n = d.n() as f64;
    let mut prm = params(&p, m);
    prm.b = Some(b);

    let lemma4 = AuditItem::new(
        Subject::Aggregate,
        p.global.sum_f_edge as f64,
        b * r * p.global.sum_f_vertex as f64,
    );
    let sqrt_sum: f64 = p.stats.edges.iter().map(|e| (e.f as f64).sqrt()).sum();
    let lemma5 = AuditItem::new(
        Subject::Aggregate,
        sqrt_sum,
        n * r * r * (b * (0.5 - tau)).sqrt(),
    );
    Ok(Lemma45Report {
        lemma4: AuditReport::new(InequalityId::Lemma4, prm.clone(), vec![lemma4]),
        lemma5: AuditReport::new(InequalityId::Lemma5, prm, vec![lemma5]),
    })
}

/// Per edge: lemma 1 with the triangle term replaced by
/// `(1-alpha)^(m-3) (t(u,v) - sqrt(2 c f(u,v)))`.
pub fn audit_lemma6(d: &Digraph, alpha: f64, m: usize, c: f64) -> Result<AuditReport, AuditError> {
    let p = prepare(d, m)?;
    let head = (1.0 - pow(1.0 - alpha, m - 2)) / alpha * p.r as f64;
    let decay = pow(1.0 - alpha, m - 3);
    let n = d.n() as f64;
    let items = p
        .stats
        .edges
        .iter()
        .map(|e| {
            let correction = e.t as f64 - (2.0 * c * e.f as f64).sqrt();
            let lhs = head + d.in_degree(e.v) as f64 + e.q as f64 + decay * correction;
            AuditItem::new(Subject::Edge { u: e.u, v: e.v }, lhs, n)
        })
        .collect();
    let mut prm = params(&p, m);
    prm.alpha = Some(alpha);
    prm.c = Some(c);
    Ok(AuditReport::new(InequalityId::Lemma6, prm, items))
}

/// `tau (1 - (1-alpha)^(m-2)) >= 2 - (1-alpha)^(m-2) / alpha`.
pub fn audit_tauineq1(d: &Digraph, alpha: f64, m: usize) -> Result<AuditReport, AuditError> {
    let p = prepare(d, m)?;
    let tau = p.global.tau.unwrap_or(0.0);
    let decay = pow(1.0 - alpha, m - 2);
    let item = AuditItem::new(Subject::Aggregate, 2.0 - decay / alpha, tau * (1.0 - decay));
    let mut prm = params(&p, m);
    prm.alpha = Some(alpha);
    Ok(AuditReport::new(InequalityId::Tauineq1, prm, vec![item]))
}

/// `tau (1 - (1-alpha)^(m-3)) + (1-alpha)^(m-3) sqrt(b c (1 - 2 tau))
///  >= 2 - (1-alpha)^(m-2) / alpha`.
pub fn audit_tauineq2(
    d: &Digraph,
    alpha: f64,
    m: usize,
    b: f64,
    c: f64,
) -> Result<AuditReport, AuditError> {
    let p = prepare(d, m)?;
    let tau = p.global.tau.unwrap_or(0.0);
    if tau >= 0.5 {
        return Err(AuditError::TauOverHalf(tau));
    }
    let d3 = pow(1.0 - alpha, m - 3);
    let rhs = tau * (1.0 - d3) + d3 * (b * c * (1.0 - 2.0 * tau)).sqrt();
    let item = AuditItem::new(
        Subject::Aggregate,
        2.0 - pow(1.0 - alpha, m - 2) / alpha,
        rhs,
    );
    let mut prm = params(&p, m);
    prm.alpha = Some(alpha);
    prm.b = Some(b);
    prm.c = Some(c);
    Ok(AuditReport::new(InequalityId::Tauineq2, prm, vec![item]))
}
