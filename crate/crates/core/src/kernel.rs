//! Memory kernels: the variable-exponent Abel kernel, its short- and
//! long-time asymptotes, the Mittag–Leffler kernel and the classical
//! constant-exponent Abel kernel.

use std::io::Write;

use crate::error::{Error, Result};
use crate::exponent::ExponentSpec;
use crate::gamma::{gamma, rgamma};
use crate::mittag_leffler::mittag_leffler_e1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    /// k(t) = t^{α(t)−1} / Γ(α(t))
    Multiscale(ExponentSpec),
    /// k₀(t) = t^{α(0)+α′(0)t−1} / Γ(α(0))
    ShortAsymptote(ExponentSpec),
    /// k_∞(t) = t^{α_∞−1} / Γ(α_∞), α_∞ = lim α(t)
    LongAsymptote(ExponentSpec),
    /// k_E(t) = E_β(−t^β)
    MittagLeffler { beta: f64 },
    /// t^{α−1} / Γ(α)
    ConstantAbel { alpha: f64 },
}

impl KernelFamily {
    /// Builds a family, checking the parameters each variant needs.
    pub fn validated(self) -> Result<Self> {
        match self {
            KernelFamily::LongAsymptote(spec) => {
                let lim = spec
                    .limit()
                    .ok_or_else(|| Error::InvalidExponent(format!("{:?} has no limit at infinity", spec.kind())))?;
                if !(lim > 0.0 && lim <= 1.0) {
                    return Err(Error::InvalidExponent(format!("limit {lim} outside (0, 1]")));
                }
            }
            KernelFamily::MittagLeffler { beta } => {
                if !(beta > 0.0 && beta <= 1.0) {
                    return Err(Error::InvalidParameter(format!("beta = {beta} outside (0, 1]")));
                }
            }
            KernelFamily::ConstantAbel { alpha } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    return Err(Error::InvalidParameter(format!("alpha = {alpha} outside (0, 1]")));
                }
            }
            KernelFamily::Multiscale(_) | KernelFamily::ShortAsymptote(_) => {}
        }
        Ok(self)
    }

    /// Exponent p of the leading behaviour t^{p−1} near t = 0, when p < 1.
    /// `None` means the kernel is bounded at the origin.
    pub fn singularity_exponent(&self) -> Option<f64> {
        let p = match self {
            KernelFamily::Multiscale(s) => {
                if s.eval(0.0) < 1.0 {
                    s.infimum()
                } else {
                    return None;
                }
            }
            KernelFamily::ShortAsymptote(s) => s.eval(0.0),
            KernelFamily::LongAsymptote(s) => s.limit().unwrap_or(1.0),
            KernelFamily::ConstantAbel { alpha } => *alpha,
            KernelFamily::MittagLeffler { .. } => return None,
        };
        (p < 1.0).then_some(p)
    }

    /// Power q of the first-panel substitution σ = τ v^q. For a t^{p−1}
    /// singularity q = 1/p removes it exactly. The Mittag–Leffler kernel is
    /// bounded but behaves like 1 − c t^β; an integer q ≥ max(2, 1/β) makes
    /// the transformed integrand smooth enough for Gauss–Legendre.
    pub fn endpoint_power(&self) -> Option<f64> {
        match self {
            KernelFamily::MittagLeffler { beta } if *beta < 1.0 => Some((1.0 / beta).ceil().max(2.0)),
            _ => self.singularity_exponent().map(|p| 1.0 / p),
        }
    }

    pub fn is_bounded_at_zero(&self) -> bool {
        self.singularity_exponent().is_none()
    }

    /// Evaluates the kernel at t.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!("kernel evaluated at t = {t}")));
        }
        if t == 0.0 {
            return if self.is_bounded_at_zero() {
                Ok(self.value_at_zero())
            } else {
                Err(Error::Domain("kernel is singular at t = 0".into()))
            };
        }
        Ok(match self {
            KernelFamily::Multiscale(s) => {
                let a = s.eval(t);
                ((a - 1.0) * t.ln()).exp() * rgamma(a)
            }
            KernelFamily::ShortAsymptote(s) => {
                let a0 = s.eval(0.0);
                ((a0 + s.derivative(0.0) * t - 1.0) * t.ln()).exp() / gamma(a0)
            }
            KernelFamily::LongAsymptote(s) => {
                let a = s.limit().unwrap_or(1.0);
                ((a - 1.0) * t.ln()).exp() * rgamma(a)
            }
            KernelFamily::ConstantAbel { alpha } => ((alpha - 1.0) * t.ln()).exp() * rgamma(*alpha),
            KernelFamily::MittagLeffler { beta } => mittag_leffler_e1(*beta, t.powf(*beta))?,
        })
    }

    fn value_at_zero(&self) -> f64 {
        // every bounded family here has exponent 1 at the origin and Γ(1) = 1
        1.0
    }
}

/// Grid spacing for [`kernel_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Sample grid from `t_min` to `t_max`, endpoints included exactly.
pub fn sample_grid(t_min: f64, t_max: f64, n_points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("bad range [{t_min}, {t_max}]")));
    }
    if n_points < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let last = (n_points - 1) as f64;
    let mut ts: Vec<f64> = (0..n_points)
        .map(|i| {
            let s = i as f64 / last;
            match spacing {
                Spacing::Linear => t_min + s * (t_max - t_min),
                Spacing::Log => (t_min.ln() + s * (t_max.ln() - t_min.ln())).exp(),
            }
        })
        .collect();
    ts[0] = t_min;
    ts[n_points - 1] = t_max;
    Ok(ts)
}

/// Tabulates (t, k(t)) on a linear or logarithmic grid.
pub fn kernel_table(
    family: &KernelFamily,
    t_min: f64,
    t_max: f64,
    n_points: usize,
    spacing: Spacing,
) -> Result<Vec<(f64, f64)>> {
    sample_grid(t_min, t_max, n_points, spacing)?
        .into_iter()
        .map(|t| family.eval(t).map(|k| (t, k)))
        .collect()
}

/// Writes a kernel table as CSV with header `t,k`.
pub fn write_kernel_table<W: Write>(out: W, table: &[(f64, f64)]) -> std::io::Result<()> {
    let cols = [
        table.iter().map(|p| p.0).collect::<Vec<_>>(),
        table.iter().map(|p| p.1).collect::<Vec<_>>(),
    ];
    crate::csvio::write_columns(out, &["t", "k"], &cols)
}
