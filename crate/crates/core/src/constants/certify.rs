//! Numerical certificates for the two contradiction arguments.
//!
//! Theorem 1: an `r`-outregular `m`-free digraph forces
//! `(1-alpha)^(m-2) > 3 alpha / (2 - alpha)`, which fails just above `alpha(m)`.
//!
//! Theorem 2: on `(tau*, 1/2)` the upper estimate
//! `g(tau) = A tau + B sqrt(1 - 2 tau) - K` must be negative, with
//! `A = 1 - (1-alpha)^(m-3)`, `B = (1-alpha)^(m-3) sqrt(b c)` and
//! `K = 2 - (1-alpha)^(m-2) / alpha`. The square-root term decreases in
//! `tau`, so on a cell `[tau_i, tau_i + h]` we have `g <= g(tau_i) + A h`;
//! sampling plus this margin covers the whole interval.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ab, alpha, c, check_alpha, check_m, powu, tau_star, ConstantsError};

pub const DEFAULT_GRID: usize = 1_000_000;

/// Offset above and below `alpha(m)` for the Theorem-1 checks.
const THEOREM1_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertVerdict {
    Certified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Evidence {
    pub alpha_root: f64,
    pub epsilon: f64,
    /// `(1-alpha)^(m-2)` and `3 alpha/(2-alpha)` at `alpha_root + epsilon`.
    pub lhs: f64,
    pub rhs: f64,
    /// Whether the same comparison succeeds at `alpha_root - epsilon`.
    pub contradiction_below_root: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Evidence {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub tau_star: f64,
    pub interval_lo: f64,
    pub interval_hi: f64,
    /// `tau* >= 1/2`: no `tau < 1/2` satisfies the first inequality.
    pub empty_interval: bool,
    pub grid_points: usize,
    pub step: f64,
    pub slope_bound: f64,
    /// Largest sampled `g(tau_i)` and where it occurs.
    pub max_sample: f64,
    pub argmax_tau: f64,
    /// Largest `g(tau_i) + A h` over cells.
    pub max_cell_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "kebab-case")]
pub enum Evidence {
    Theorem1(Theorem1Evidence),
    Theorem2(Theorem2Evidence),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub m: usize,
    pub alpha: f64,
    pub verdict: CertVerdict,
    pub evidence: Evidence,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == CertVerdict::Certified
    }

    /// A certified verdict must be backed by its evidence.
    pub fn is_consistent(&self) -> bool {
        if !self.is_certified() {
            return true;
        }
        match &self.evidence {
            Evidence::Theorem1(e) => e.lhs < e.rhs,
            Evidence::Theorem2(e) => {
                e.empty_interval || (e.max_sample < 0.0 && e.max_cell_bound < 0.0)
            }
        }
    }
}

/// `(1-alpha)^(m-2) < 3 alpha / (2 - alpha)`, the contradiction with `tau < 1/2`.
pub fn theorem1_contradiction(m: usize, alpha_val: f64) -> bool {
    powu(1.0 - alpha_val, m - 2) < 3.0 * alpha_val / (2.0 - alpha_val)
}

pub fn certify_theorem1(m: usize) -> Result<Certificate, ConstantsError> {
    check_m(m, 3)?;
    let root = alpha(m);
    let above = root + THEOREM1_EPSILON;
    let lhs = powu(1.0 - above, m - 2);
    let rhs = 3.0 * above / (2.0 - above);
    let verdict = if lhs < rhs {
        CertVerdict::Certified
    } else {
        CertVerdict::Failed
    };
    Ok(Certificate {
        m,
        alpha: above,
        verdict,
        evidence: Evidence::Theorem1(Theorem1Evidence {
            alpha_root: root,
            epsilon: THEOREM1_EPSILON,
            lhs,
            rhs,
            contradiction_below_root: theorem1_contradiction(m, root - THEOREM1_EPSILON),
        }),
    })
}

pub fn certify_theorem2(m: usize, alpha_val: f64) -> Result<Certificate, ConstantsError> {
    certify_theorem2_with(m, alpha_val, DEFAULT_GRID)
}

#[derive(Clone, Copy)]
struct Sample {
    value: f64,
    index: usize,
}

fn max_sample(x: Sample, y: Sample) -> Sample {
    if y.value > x.value || (y.value == x.value && y.index < x.index) {
        y
    } else {
        x
    }
}

/// Certifies on a uniform grid of `grid >= 2` points over `[max(tau*, 0), 1/2]`.
///
/// Returns `GridTooCoarse` when every sample is negative but the slope
/// margin does not close some cell.
pub fn certify_theorem2_with(
    m: usize,
    alpha_val: f64,
    grid: usize,
) -> Result<Certificate, ConstantsError> {
    check_m(m, 3)?;
    check_alpha(alpha_val)?;
    let grid = grid.max(2);
    let (a, b) = ab(m, alpha_val);
    let cm = c(m);
    let ts = tau_star(m, alpha_val)?;
    let lo = ts.max(0.0);
    let hi = 0.5;

    let decay3 = powu(1.0 - alpha_val, m - 3);
    let slope = 1.0 - decay3;
    let root_coeff = decay3 * (b * cm).sqrt();
    let k = 2.0 - powu(1.0 - alpha_val, m - 2) / alpha_val;
    let g = |tau: f64| slope * tau + root_coeff * (1.0 - 2.0 * tau).max(0.0).sqrt() - k;

    let mut evidence = Theorem2Evidence {
        a,
        b,
        c: cm,
        tau_star: ts,
        interval_lo: lo,
        interval_hi: hi,
        empty_interval: ts >= hi,
        grid_points: 0,
        step: 0.0,
        slope_bound: slope,
        max_sample: f64::NEG_INFINITY,
        argmax_tau: lo,
        max_cell_bound: f64::NEG_INFINITY,
    };
    if evidence.empty_interval {
        return Ok(Certificate {
            m,
            alpha: alpha_val,
            verdict: CertVerdict::Certified,
            evidence: Evidence::Theorem2(evidence),
        });
    }

    let h = (hi - lo) / (grid - 1) as f64;
    let tau_at = |i: usize| if i == grid - 1 { hi } else { lo + i as f64 * h };
    let identity = || {
        (
            Sample {
                value: f64::NEG_INFINITY,
                index: usize::MAX,
            },
            Sample {
                value: f64::NEG_INFINITY,
                index: usize::MAX,
            },
        )
    };
    let (best, cell) = (0..grid)
        .into_par_iter()
        .map(|i| {
            let v = g(tau_at(i));
            let cell = if i + 1 < grid { v + slope * h } else { v };
            (
                Sample { value: v, index: i },
                Sample {
                    value: cell,
                    index: i,
                },
            )
        })
        .reduce(identity, |x, y| {
            (max_sample(x.0, y.0), max_sample(x.1, y.1))
        });

    evidence.grid_points = grid;
    evidence.step = h;
    evidence.max_sample = best.value;
    evidence.argmax_tau = tau_at(best.index);
    evidence.max_cell_bound = cell.value;

    if best.value >= 0.0 {
        return Ok(Certificate {
            m,
            alpha: alpha_val,
            verdict: CertVerdict::Failed,
            evidence: Evidence::Theorem2(evidence),
        });
    }
    if cell.value >= 0.0 {
        return Err(ConstantsError::GridTooCoarse {
            grid,
            tau: tau_at(cell.index),
            bound: cell.value,
        });
    }
    Ok(Certificate {
        m,
        alpha: alpha_val,
        verdict: CertVerdict::Certified,
        evidence: Evidence::Theorem2(evidence),
    })
}

/// Smallest `alpha` in `[lo, hi]` (to within `tol`) that `certify_theorem2_with`
/// certifies, assuming `hi` certifies. A derived quantity.
pub fn search_theorem2_alpha(
    m: usize,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> Result<f64, ConstantsError> {
    let certified =
        |x: f64| matches!(certify_theorem2_with(m, x, grid), Ok(cert) if cert.is_certified());
    if !certified(hi) {
        return Err(ConstantsError::InvalidAlpha(hi));
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if certified(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
