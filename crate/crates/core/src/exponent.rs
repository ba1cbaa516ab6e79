//! Closed-form variable exponents α(t).

use crate::error::{Error, Result};

/// Slack allowed above 1 for round-off in the parameterisation.
const UPPER_SLACK: f64 = 1e-14;

/// Functional form of α(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentKind {
    /// α(t) = value
    Constant { value: f64 },
    /// α(t) = c0 + c1·t
    Linear { c0: f64, c1: f64 },
    /// α(t) = c0 + c1·exp(-rate·t)
    ExpDecay { c0: f64, c1: f64, rate: f64 },
}

/// A validated variable exponent on the horizon [0, horizon].
///
/// Construction checks 0 < α_* ≤ α(t) ≤ 1 on the whole horizon, where α_* is
/// the infimum. `horizon` may be infinite for forms that stay bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentSpec {
    kind: ExponentKind,
    horizon: f64,
}

impl ExponentSpec {
    pub fn new(kind: ExponentKind, horizon: f64) -> Result<Self> {
        if horizon.is_nan() || horizon <= 0.0 {
            return Err(Error::InvalidExponent(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        let params_finite = match kind {
            ExponentKind::Constant { value } => value.is_finite(),
            ExponentKind::Linear { c0, c1 } => c0.is_finite() && c1.is_finite(),
            ExponentKind::ExpDecay { c0, c1, rate } => {
                c0.is_finite() && c1.is_finite() && rate.is_finite() && rate >= 0.0
            }
        };
        if !params_finite {
            return Err(Error::InvalidExponent(format!("bad parameters {kind:?}")));
        }
        let spec = Self { kind, horizon };
        let (lo, hi) = spec.range();
        if lo.is_nan() || lo <= 0.0 || hi > 1.0 + UPPER_SLACK || !hi.is_finite() {
            return Err(Error::InvalidExponent(format!(
                "{kind:?} leaves (0, 1] on [0, {horizon}]: range [{lo}, {hi}]"
            )));
        }
        Ok(spec)
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(ExponentKind::Constant { value }, f64::INFINITY)
    }

    pub fn linear(c0: f64, c1: f64, horizon: f64) -> Result<Self> {
        Self::new(ExponentKind::Linear { c0, c1 }, horizon)
    }

    pub fn exp_decay(c0: f64, c1: f64, rate: f64) -> Result<Self> {
        Self::new(ExponentKind::ExpDecay { c0, c1, rate }, f64::INFINITY)
    }

    pub fn kind(&self) -> ExponentKind {
        self.kind
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// α(t).
    pub fn eval(&self, t: f64) -> f64 {
        match self.kind {
            ExponentKind::Constant { value } => value,
            ExponentKind::Linear { c0, c1 } => c0 + c1 * t,
            ExponentKind::ExpDecay { c0, c1, rate } => c0 + c1 * (-rate * t).exp(),
        }
    }

    /// α′(t), exact.
    pub fn derivative(&self, t: f64) -> f64 {
        match self.kind {
            ExponentKind::Constant { .. } => 0.0,
            ExponentKind::Linear { c1, .. } => c1,
            ExponentKind::ExpDecay { c1, rate, .. } => -c1 * rate * (-rate * t).exp(),
        }
    }

    /// (inf, sup) of α over the horizon. All forms are monotone, so the
    /// extremes sit at the endpoints (or at the limit for infinite horizons).
    pub fn range(&self) -> (f64, f64) {
        let a0 = self.eval(0.0);
        let end = if self.horizon.is_finite() {
            self.eval(self.horizon)
        } else {
            match self.limit() {
                Some(l) => l,
                None => match self.kind {
                    ExponentKind::Linear { c1, .. } if c1 > 0.0 => f64::INFINITY,
                    _ => f64::NEG_INFINITY,
                },
            }
        };
        (a0.min(end), a0.max(end))
    }

    /// α_*, the infimum on the horizon.
    pub fn infimum(&self) -> f64 {
        self.range().0
    }

    /// sup |α′| on the horizon.
    pub fn max_abs_derivative(&self) -> f64 {
        match self.kind {
            ExponentKind::Constant { .. } => 0.0,
            ExponentKind::Linear { c1, .. } => c1.abs(),
            ExponentKind::ExpDecay { .. } => self.derivative(0.0).abs(),
        }
    }

    /// lim_{t→∞} α(t), if it exists.
    pub fn limit(&self) -> Option<f64> {
        match self.kind {
            ExponentKind::Constant { value } => Some(value),
            ExponentKind::Linear { c0, c1 } => (c1 == 0.0).then_some(c0),
            ExponentKind::ExpDecay { c0, c1, rate } => Some(if rate > 0.0 { c0 } else { c0 + c1 }),
        }
    }
}
