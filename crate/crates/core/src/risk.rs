//! Empirical risk and VC-type upper bounds on the expected risk.
//!
//! The general regression bound is
//!
//! ```text
//! R <= R_emp / (1 - c sqrt(eta))_+ ,
//! eta = a1 (h [ln(a2 n / h) + 1] - ln(delta / 4)) / n
//! ```
//!
//! holding with probability at least `1 - delta`. With `a1 = a2 = c = 1` and
//! `delta = 4 / sqrt(n)` it reduces to
//!
//! ```text
//! R <= R_emp / (1 - sqrt(p - p ln p + ln(n) / (2n)))_+ ,   p = h / n.
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::float17;
use crate::scalar::Real;

/// Denominators at or below this value make the bound infinite.
pub const CLIP_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaRule {
    /// Use `BoundConfig::delta` as given.
    Fixed,
    /// `delta = 4 / sqrt(n)`.
    #[default]
    FourOverSqrtN,
}

/// Constants of the general bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundConfig {
    #[serde(with = "float17")]
    pub a1: f64,
    #[serde(with = "float17")]
    pub a2: f64,
    #[serde(with = "float17")]
    pub c: f64,
    /// Only read under [`DeltaRule::Fixed`].
    #[serde(with = "float17")]
    pub delta: f64,
    pub delta_rule: DeltaRule,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self { a1: 1.0, a2: 1.0, c: 1.0, delta: 0.05, delta_rule: DeltaRule::FourOverSqrtN }
    }
}

impl BoundConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a1", self.a1), ("a2", self.a2), ("c", self.c)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("bound constant {name} must be positive (got {v})")));
            }
        }
        if self.delta_rule == DeltaRule::Fixed && !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::invalid(format!("fixed delta must lie in (0, 1) (got {})", self.delta)));
        }
        Ok(())
    }

    /// True when the general bound coincides with the reduced form.
    pub fn is_reduced(&self) -> bool {
        self.a1 == 1.0 && self.a2 == 1.0 && self.c == 1.0 && self.delta_rule == DeltaRule::FourOverSqrtN
    }

    pub fn delta_for(&self, n: usize) -> f64 {
        match self.delta_rule {
            DeltaRule::Fixed => self.delta,
            DeltaRule::FourOverSqrtN => 4.0 / (n as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDiagnostic {
    /// The capacity term came out negative, which the bound does not cover.
    NegativeEta,
}

/// Outcome of evaluating a bound for one fitted model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskReport<T> {
    pub empirical_risk: T,
    pub h: T,
    pub n: usize,
    pub p: T,
    pub delta: T,
    /// Guaranteed risk; `+inf` when clipped.
    pub bound: T,
    pub clipped: bool,
    pub diagnostic: Option<BoundDiagnostic>,
}

impl<T: Real> RiskReport<T> {
    pub fn is_finite(&self) -> bool {
        !self.clipped
    }
}

/// Mean squared residual.
pub fn empirical_risk<T: Real>(targets: &[T], predictions: &[T]) -> Result<T> {
    if targets.len() != predictions.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} targets, {} predictions",
            targets.len(),
            predictions.len()
        )));
    }
    if targets.is_empty() {
        return Err(Error::invalid("empirical risk of an empty sample"));
    }
    let ss = targets
        .iter()
        .zip(predictions)
        .fold(T::zero(), |acc, (&y, &f)| acc + (y - f) * (y - f));
    Ok(ss / T::from_count(targets.len()))
}

fn check_inputs<T: Real>(mse: T, h: T, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("sample size must be positive"));
    }
    if !(h >= T::zero()) || !h.is_finite() {
        return Err(Error::invalid(format!("capacity must be finite and >= 0 (got {h:?})")));
    }
    if !(mse >= T::zero()) || !mse.is_finite() {
        return Err(Error::invalid(format!("empirical risk must be finite and >= 0 (got {mse:?})")));
    }
    Ok(())
}

fn finish<T: Real>(mse: T, denom: T) -> (T, bool) {
    if denom <= T::lit(CLIP_EPSILON) {
        (T::infinity(), true)
    } else {
        (mse / denom, false)
    }
}

/// Penalty argument `p - p ln p + ln(n) / (2n)`, with `p ln p = 0` at `p = 0`.
pub fn reduced_penalty<T: Real>(h: T, n: usize) -> T {
    let nf = T::from_count(n);
    let p = h / nf;
    let plnp = if p == T::zero() { T::zero() } else { p * p.ln() };
    p - plnp + nf.ln() / (T::lit(2.0) * nf)
}

/// Reduced bound with `a1 = a2 = c = 1` and `delta = 4 / sqrt(n)`.
///
/// Capacities above the sample size (`p > 1`) are clipped: the penalty
/// formula turns back down there and would report a finite bound for a
/// model with more degrees of freedom than data.
pub fn vc_bound_reduced<T: Real>(mse: T, h: T, n: usize) -> Result<RiskReport<T>> {
    check_inputs(mse, h, n)?;
    let nf = T::from_count(n);
    let p = h / nf;
    let g = reduced_penalty(h, n);
    let (bound, clipped) = if p > T::one() {
        (T::infinity(), true)
    } else {
        finish(mse, T::one() - g.sqrt())
    };
    Ok(RiskReport {
        empirical_risk: mse,
        h,
        n,
        p,
        delta: T::lit(4.0) / nf.sqrt(),
        bound,
        clipped,
        diagnostic: None,
    })
}

/// General bound with configurable constants.
pub fn vc_bound_general<T: Real>(mse: T, h: T, n: usize, cfg: &BoundConfig) -> Result<RiskReport<T>> {
    check_inputs(mse, h, n)?;
    cfg.validate()?;
    let nf = T::from_count(n);
    let delta = T::lit(cfg.delta_for(n));
    let a1 = T::lit(cfg.a1);
    let a2 = T::lit(cfg.a2);
    let capacity = if h == T::zero() { T::zero() } else { h * ((a2 * nf / h).ln() + T::one()) };
    let eta = a1 * (capacity - (delta / T::lit(4.0)).ln()) / nf;
    let (bound, clipped, diagnostic) = if eta < T::zero() {
        (T::infinity(), true, Some(BoundDiagnostic::NegativeEta))
    } else {
        let (b, c) = finish(mse, T::one() - T::lit(cfg.c) * eta.sqrt());
        (b, c, None)
    };
    Ok(RiskReport { empirical_risk: mse, h, n, p: h / nf, delta, bound, clipped, diagnostic })
}

/// Reduced bound when `cfg` is the default setting, general bound otherwise.
pub fn guaranteed_risk<T: Real>(mse: T, h: T, n: usize, cfg: &BoundConfig) -> Result<RiskReport<T>> {
    if cfg.is_reduced() {
        vc_bound_reduced(mse, h, n)
    } else {
        vc_bound_general(mse, h, n, cfg)
    }
}

/// Probability `1 - 4 / sqrt(n)` with which the reduced bound holds.
pub fn realized_confidence<T: Real>(n: usize) -> Result<T> {
    if n <= 16 {
        return Err(Error::ConfidenceUndefined { n });
    }
    Ok(T::one() - T::lit(4.0) / T::from_count(n).sqrt())
}

#[derive(Serialize, Deserialize)]
struct ReportRepr {
    #[serde(with = "float17")]
    empirical_risk: f64,
    #[serde(with = "float17")]
    h: f64,
    n: usize,
    #[serde(with = "float17")]
    p: f64,
    #[serde(with = "float17")]
    delta: f64,
    #[serde(with = "float17")]
    bound: f64,
    clipped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagnostic: Option<BoundDiagnostic>,
}

impl<T: Real> Serialize for RiskReport<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportRepr {
            empirical_risk: self.empirical_risk.as_f64(),
            h: self.h.as_f64(),
            n: self.n,
            p: self.p.as_f64(),
            delta: self.delta.as_f64(),
            bound: self.bound.as_f64(),
            clipped: self.clipped,
            diagnostic: self.diagnostic,
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for RiskReport<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ReportRepr::deserialize(d)?;
        Ok(RiskReport {
            empirical_risk: T::lit(r.empirical_risk),
            h: T::lit(r.h),
            n: r.n,
            p: T::lit(r.p),
            delta: T::lit(r.delta),
            bound: T::lit(r.bound),
            clipped: r.clipped,
            diagnostic: r.diagnostic,
        })
    }
}
