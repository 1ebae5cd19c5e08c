//! Numeric constants of the minimum-outdegree bounds.
//!
//! `alpha(m)` is the root in `(0, 1)` of `(1-x)^(m-2) = 3x / (2-x)`; it is
//! found by bisection since the left side decreases and the right side
//! increases on the whole interval. The feedback-arc-set route uses the
//! published constants `c_m`, the tabulated improved values `beta(m)` for
//! `3 <= m <= 8`, and the derived `a_m`, `b_m` and `tau*_m`.

mod certify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use certify::{
    certify_theorem1, certify_theorem2, certify_theorem2_with, search_theorem2_alpha,
    theorem1_contradiction, CertVerdict, Certificate, Evidence, Theorem1Evidence, Theorem2Evidence,
    DEFAULT_GRID,
};

/// Bracket width at which the bisection for `alpha(m)` stops.
pub const DEFAULT_ROOT_TOL: f64 = 1e-13;

/// `beta(3..=8)` from the improved-bound table.
const BETA_TABLE: [f64; 6] = [0.35296, 0.28688, 0.24647, 0.21851, 0.19732, 0.18068];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstantsError {
    #[error("m = {m} is out of range (need m >= {min})")]
    OutOfRange { m: usize, min: usize },
    #[error("alpha = {0} must lie in (0, 1)")]
    InvalidAlpha(f64),
    #[error("1 - (1-alpha)^(m-2) vanishes")]
    DegenerateDenominator,
    #[error("grid of {grid} points cannot cover the gap at tau = {tau} (bound {bound:e})")]
    GridTooCoarse { grid: usize, tau: f64, bound: f64 },
    #[error("W0 is undefined at x = {0} < -1/e")]
    LambertDomain(f64),
}

fn check_m(m: usize, min: usize) -> Result<(), ConstantsError> {
    if m < min {
        Err(ConstantsError::OutOfRange { m, min })
    } else {
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<(), ConstantsError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(ConstantsError::InvalidAlpha(alpha))
    }
}

pub(crate) fn powu(base: f64, exp: usize) -> f64 {
    base.powi(exp as i32)
}

/// `(1-x)^(m-2) - 3x/(2-x)`; strictly decreasing on `(0, 1)`.
pub fn alpha_equation(m: usize, x: f64) -> f64 {
    powu(1.0 - x, m - 2) - 3.0 * x / (2.0 - x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub value: f64,
    pub residual: f64,
    pub bracket_width: f64,
    pub iterations: usize,
}

/// Bisection for `alpha(m)` down to a bracket of width `tol`.
pub fn alpha_with_tol(m: usize, tol: f64) -> Result<RootResult, ConstantsError> {
    check_m(m, 3)?;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if alpha_equation(m, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let value = 0.5 * (lo + hi);
    Ok(RootResult {
        value,
        residual: alpha_equation(m, value),
        bracket_width: hi - lo,
        iterations,
    })
}

/// `alpha(m)` for `m >= 3`.
///
/// # Panics
/// If `m < 3`.
pub fn alpha(m: usize) -> f64 {
    alpha_with_tol(m, DEFAULT_ROOT_TOL)
        .expect("alpha(m) needs m >= 3")
        .value
}

/// The feedback-arc-set constant `c_m`.
pub fn c(m: usize) -> f64 {
    match m {
        0..=2 => panic!("c(m) needs m >= 3"),
        3 => 0.8616,
        4 => (3.0 - 5f64.sqrt()) / 2.0,
        5 => 2.0 - 3f64.sqrt(),
        _ => 1.0 / (m - 2) as f64,
    }
}

/// Tabulated `beta(m)`, present for `3 <= m <= 8`.
pub fn beta_table(m: usize) -> Option<f64> {
    (3..=8).contains(&m).then(|| BETA_TABLE[m - 3])
}

/// `a = (1-alpha)^(m-1) / alpha` and `b = (a^2 c + 2a - 1) / (2a (1 + c))`.
pub fn ab(m: usize, alpha_val: f64) -> (f64, f64) {
    let a = powu(1.0 - alpha_val, m - 1) / alpha_val;
    let cm = c(m);
    let b = (a * a * cm + 2.0 * a - 1.0) / (2.0 * a * (1.0 + cm));
    (a, b)
}

/// Equality point of `tau (1 - (1-alpha)^(m-2)) >= 2 - (1-alpha)^(m-2) / alpha`.
pub fn tau_star(m: usize, alpha_val: f64) -> Result<f64, ConstantsError> {
    check_m(m, 3)?;
    let decay = powu(1.0 - alpha_val, m - 2);
    let denom = 1.0 - decay;
    if denom <= 0.0 || !denom.is_finite() {
        return Err(ConstantsError::DegenerateDenominator);
    }
    Ok((2.0 - decay / alpha_val) / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambertResult {
    pub w: f64,
    /// `|w e^w - x| / max(1, |x|)`.
    pub residual: f64,
    pub iterations: usize,
}

/// Principal branch `W0` by Halley iteration.
pub fn lambert_w0(x: f64) -> Result<LambertResult, ConstantsError> {
    let branch = -(-1.0f64).exp();
    if !x.is_finite() || x < branch {
        return Err(ConstantsError::LambertDomain(x));
    }
    let mut w = if x < 0.0 {
        // expansion around the branch point
        let p = (2.0 * (1.0 + std::f64::consts::E * x)).sqrt();
        -1.0 + p - p * p / 3.0
    } else {
        x.ln_1p()
    };
    let mut iterations = 0;
    while iterations < 100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 || w == -1.0 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        iterations += 1;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(LambertResult {
        w,
        residual: (w * w.exp() - x).abs() / x.abs().max(1.0),
        iterations,
    })
}

/// `W0(2(m - 2.5)/3) / (m - 2.5)`, an upper estimate for `alpha(m)`.
pub fn lambert_bound(m: usize) -> f64 {
    assert!(m >= 3, "lambert_bound needs m >= 3");
    let s = m as f64 - 2.5;
    lambert_w0(2.0 * s / 3.0).expect("argument is positive").w / s
}

/// `3 ln((2 + sqrt 7) / 3)`.
pub fn shen_constant() -> f64 {
    3.0 * ((2.0 + 7f64.sqrt()) / 3.0).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShenBounds {
    pub general: f64,
    pub large: Option<f64>,
}

/// Shen's bounds: the general one for `m >= 4`, `1/(m-73)` for `m >= 74`.
pub fn shen_bounds(m: usize) -> Result<ShenBounds, ConstantsError> {
    check_m(m, 4)?;
    Ok(ShenBounds {
        general: shen_constant() / (m - 3) as f64,
        large: (m >= 74).then(|| 1.0 / (m - 73) as f64),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BestBound {
    Alpha,
    ShenGeneral,
    ShenLarge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSet {
    pub m: usize,
    pub alpha: f64,
    pub alpha_residual: f64,
    pub c: f64,
    pub beta_table: Option<f64>,
    /// `a`, `b` and `tau*` evaluated at `beta_table`.
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub tau_star: Option<f64>,
    pub lambert_bound: f64,
    pub shen_general: Option<f64>,
    pub shen_large: Option<f64>,
    pub best: BestBound,
}

impl BoundSet {
    pub fn for_m(m: usize, tol: f64) -> Result<BoundSet, ConstantsError> {
        let root = alpha_with_tol(m, tol)?;
        let beta = beta_table(m);
        let (a, b) = match beta {
            Some(x) => {
                let (a, b) = ab(m, x);
                (Some(a), Some(b))
            }
            None => (None, None),
        };
        let shen = shen_bounds(m).ok();
        let shen_general = shen.map(|s| s.general);
        let shen_large = shen.and_then(|s| s.large);
        let mut best = (root.value, BestBound::Alpha);
        for (val, kind) in [
            (shen_general, BestBound::ShenGeneral),
            (shen_large, BestBound::ShenLarge),
        ] {
            if let Some(v) = val {
                if v < best.0 {
                    best = (v, kind);
                }
            }
        }
        Ok(BoundSet {
            m,
            alpha: root.value,
            alpha_residual: root.residual,
            c: c(m),
            beta_table: beta,
            a,
            b,
            tau_star: beta.map(|x| tau_star(m, x)).transpose()?,
            lambert_bound: lambert_bound(m),
            shen_general,
            shen_large,
            best: best.1,
        })
    }

    /// Range and residual checks that any stored row must pass.
    pub fn is_consistent(&self) -> bool {
        self.m >= 3
            && self.alpha > 0.0
            && self.alpha < 1.0
            && self.alpha_residual.abs() < 1e-12
            && (alpha_equation(self.m, self.alpha) - self.alpha_residual).abs() < 1e-15
            && self.alpha <= self.lambert_bound
    }
}

pub fn bound_table(m_from: usize, m_to: usize) -> Result<Vec<BoundSet>, ConstantsError> {
    bound_table_with_tol(m_from, m_to, DEFAULT_ROOT_TOL)
}

pub fn bound_table_with_tol(
    m_from: usize,
    m_to: usize,
    tol: f64,
) -> Result<Vec<BoundSet>, ConstantsError> {
    check_m(m_from, 3)?;
    (m_from..=m_to).map(|m| BoundSet::for_m(m, tol)).collect()
}
