//! One-parameter Mittag–Leffler function on the negative real axis,
//! E_β(−x) = Σ_i (−x)^i / Γ(βi + 1), for 0 < β ≤ 1 and x ≥ 0.
//!
//! Three evaluators are combined:
//!
//! * the power series, used while its largest term stays below
//!   [`SERIES_PEAK_MAX`] so that cancellation costs at most a few digits;
//! * the algebraic asymptotic expansion Σ_j (−1)^{j+1} x^{−j} / Γ(1 − βj),
//!   used when its smallest term is below [`ASYMPTOTIC_TAIL_MAX`];
//! * otherwise the spectral representation
//!   E_β(−x) = sin(βπ)/(βπ) ∫_0^∞ exp(−(xu)^{1/β}) / (u² + 2u cos(βπ) + 1) du,
//!   integrated with adaptive Gauss–Legendre.
//!
//! β = 1 is the exponential, E_1(−x) = e^{−x}.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, rgamma};
use crate::quadrature;

/// Largest admissible series term magnitude.
pub const SERIES_PEAK_MAX: f64 = 1e3;
/// Largest admissible first-omitted asymptotic term.
pub const ASYMPTOTIC_TAIL_MAX: f64 = 1e-14;

const MAX_TERMS: usize = 20_000;
const INTEGRAL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlBranch {
    Exponential,
    Series,
    Asymptotic,
    Integral,
}

fn check_domain(beta: f64, x: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Domain(format!("Mittag-Leffler needs 0 < beta <= 1, got {beta}")));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("Mittag-Leffler needs finite x >= 0, got {x}")));
    }
    Ok(())
}

/// E_β(−x).
pub fn mittag_leffler_e1(beta: f64, x: f64) -> Result<f64> {
    check_domain(beta, x)?;
    let branch = select_branch(beta, x);
    Ok(eval_branch(branch, beta, x))
}

/// Chooses the evaluator for (β, x).
pub fn select_branch(beta: f64, x: f64) -> MlBranch {
    if beta == 1.0 {
        return MlBranch::Exponential;
    }
    if series_peak(beta, x) <= SERIES_PEAK_MAX {
        return MlBranch::Series;
    }
    if asymptotic(beta, x).1 <= ASYMPTOTIC_TAIL_MAX {
        return MlBranch::Asymptotic;
    }
    MlBranch::Integral
}

/// Evaluates E_β(−x) with a specific branch regardless of whether it is the
/// accurate one for these arguments.
pub fn eval_branch(branch: MlBranch, beta: f64, x: f64) -> f64 {
    match branch {
        MlBranch::Exponential => (-x).exp(),
        MlBranch::Series => series(beta, x),
        MlBranch::Asymptotic => asymptotic(beta, x).0,
        MlBranch::Integral => spectral_integral(beta, x),
    }
}

/// ln of |x^i / Γ(βi + 1)|.
fn ln_series_term(beta: f64, x: f64, i: usize) -> f64 {
    i as f64 * x.ln() - ln_gamma(beta * i as f64 + 1.0)
}

/// Magnitude of the largest series term.
pub fn series_peak(beta: f64, x: f64) -> f64 {
    if x <= 1.0 {
        return 1.0;
    }
    let mut best = 0.0_f64;
    for i in 1..MAX_TERMS {
        let l = ln_series_term(beta, x, i);
        if l < best {
            break;
        }
        best = l;
    }
    best.exp()
}

fn series_term(beta: f64, x: f64, i: usize) -> f64 {
    let arg = beta * i as f64 + 1.0;
    let pow = x.powi(i as i32);
    let mag = if arg < 170.0 && pow.is_finite() {
        pow * rgamma(arg)
    } else {
        ln_series_term(beta, x, i).exp()
    };
    if i.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Power series, summed until past the peak and negligible against the sum.
pub fn series(beta: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let mut sum = 1.0;
    let mut prev = 1.0_f64;
    let mut past_peak = false;
    for i in 1..MAX_TERMS {
        let term = series_term(beta, x, i);
        sum += term;
        let mag = term.abs();
        if mag < prev {
            past_peak = true;
        }
        if past_peak && (mag <= 1e-16 * sum.abs() || mag < 1e-300) {
            break;
        }
        prev = mag;
    }
    sum
}

/// Asymptotic expansion truncated just before its smallest term.
/// Returns (value, magnitude of the first omitted term).
pub fn asymptotic(beta: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (f64::NAN, f64::INFINITY);
    }
    let lnx = x.ln();
    let mut sum = 0.0;
    let mut smallest = f64::INFINITY;
    for j in 1..MAX_TERMS {
        let z = beta * j as f64;
        // 1/Γ(1 − z) = Γ(z) sin(πz) / π
        let s = (PI * z).sin();
        let mag = if (z - z.round()).abs() < 1e-15 || s == 0.0 {
            0.0
        } else {
            (-(j as f64) * lnx + ln_gamma(z) + s.abs().ln() - PI.ln()).exp()
        };
        if mag == 0.0 {
            continue;
        }
        if mag >= smallest {
            return (sum, smallest);
        }
        if mag <= 1e-17 * sum.abs() {
            return (sum, mag);
        }
        smallest = mag;
        let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * s.signum() * mag;
    }
    (sum, smallest)
}

/// Spectral (Laplace) representation, valid for 0 < β < 1.
pub fn spectral_integral(beta: f64, x: f64) -> f64 {
    let c = (beta * PI).cos();
    let s = (beta * PI).sin();
    let p = 1.0 / beta;
    let integrand = |u: f64| (-(x * u).powf(p)).exp() / (u * u + 2.0 * u * c + 1.0);
    // beyond u_max the exponential is below e^{-46}
    let u_max = if x > 0.0 { 46f64.powf(beta) / x } else { f64::INFINITY };
    let mut cuts = vec![0.0];
    let peak = -c;
    let width = s;
    for b in [peak - 4.0 * width, peak, peak + 4.0 * width, 1.0, 4.0] {
        if b > 0.0 && b < u_max && !cuts.contains(&b) {
            cuts.push(b);
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.push(u_max.min(1e6));
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        let tol = INTEGRAL_TOL * beta * PI / s.max(1e-300);
        acc += quadrature::adaptive(&integrand, w[0], w[1], tol).unwrap_or(f64::NAN);
    }
    if u_max > 1e6 {
        // ∫_U^∞ du / u² for the slowly decaying tail when x is tiny
        acc += 1.0 / 1e6;
    }
    s / (beta * PI) * acc
}
