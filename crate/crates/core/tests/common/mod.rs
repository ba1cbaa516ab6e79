//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

pub mod reference;

use abel_pide::fem::TriDiagMatrix;

/// Tanh-sinh quadrature on [a, b]; tolerates integrable endpoint singularities.
/// The step is halved until two successive estimates agree to `tol`.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let pi2 = std::f64::consts::FRAC_PI_2;
    // x = mid + half·tanh(π/2 sinh t); evaluate through the distance to the
    // nearer endpoint so values next to a singular end stay accurate.
    let term = |t: f64| -> f64 {
        let u = pi2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let d = half * 2.0 * e / (1.0 + e); // half·(1 − tanh|u|)
        let x = if u >= 0.0 { b - d } else { a + d };
        if d <= 0.0 || x <= a || x >= b {
            return 0.0;
        }
        let w = half * pi2 * t.cosh() / u.cosh().powi(2);
        if w == 0.0 {
            return 0.0;
        }
        f(x) * w
    };
    let t_max = 6.5;
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        sum += term(k as f64 * h) + term(-(k as f64) * h);
        k += 1;
    }
    let mut est = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            sum += term(k as f64 * h) + term(-(k as f64) * h);
            k += 2;
        }
        let next = sum * h;
        if (next - est).abs() <= tol {
            return next;
        }
        est = next;
    }
    est
}

/// Dense row-major matrix built from a tridiagonal one.
pub fn dense(a: &TriDiagMatrix) -> Vec<Vec<f64>> {
    let n = a.diag.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = a.diag[i];
        if i + 1 < n {
            m[i][i + 1] = a.sup[i];
            m[i + 1][i] = a.sub[i];
        }
    }
    m
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Vec<f64> {
    let n = rhs.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        m.swap(c, p);
        rhs.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if f != 0.0 {
                let pivot = m[c].clone();
                m[r][c..].iter_mut().zip(&pivot[c..]).for_each(|(v, p)| *v -= f * p);
                rhs[r] -= f * rhs[c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| m[r][k] * x[k]).sum();
        x[r] = (rhs[r] - s) / m[r][r];
    }
    x
}

pub fn dense_mul(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// 1/Γ(α) · ∫_m^{m+1} s^{α−1} ds and the falling/rising moments, scaled by
/// τ^α: returns (A_m, B_m, w_m) for the constant Abel kernel.
pub fn abel_weights_closed_form(alpha: f64, tau: f64, m: usize) -> (f64, f64, f64) {
    let g = statrs::function::gamma::gamma(alpha);
    let (s0, s1) = (m as f64, m as f64 + 1.0);
    let p = |s: f64| s.powf(alpha) / alpha; // ∫ s^{α−1}
    let q = |s: f64| s.powf(alpha + 1.0) / (alpha + 1.0); // ∫ s^α
    let scale = tau.powf(alpha) / g;
    let w = scale * (p(s1) - p(s0));
    let a = scale * (s1 * (p(s1) - p(s0)) - (q(s1) - q(s0)));
    let b = scale * ((q(s1) - q(s0)) - s0 * (p(s1) - p(s0)));
    (a, b, w)
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}
