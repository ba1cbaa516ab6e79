//! Product-integration weights for the memory term and the discrete memory
//! operators built from them.
//!
//! On a uniform grid the weight attached to φ^j in the n-th history sum
//! depends only on the lag n − j, so the weights are stored as two
//! sequences indexed by lag:
//!
//! ```text
//! A_m = ∫_{t_m}^{t_{m+1}} k(σ) (t_{m+1} − σ)/τ dσ      a_{n,j} = A_{n−j}
//! B_m = ∫_{t_m}^{t_{m+1}} k(σ) (σ − t_m)/τ dσ          b_{n,j} = B_{n−j}
//! ```

use std::io::Write;

use crate::error::{Error, Result};
use crate::kernel::KernelFamily;
use crate::par::Execution;
use crate::quadrature;

/// Default absolute weight tolerance (scaled by τ).
pub const DEFAULT_TOL: f64 = 1e-12;

/// Uniform time grid t_n = n·τ, τ = T/N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_final: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, steps: usize) -> Result<Self> {
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "final time must be positive, got {t_final}"
            )));
        }
        if steps == 0 {
            return Err(Error::InvalidParameter("need at least one time step".into()));
        }
        Ok(Self { t_final, steps })
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn tau(&self) -> f64 {
        self.t_final / self.steps as f64
    }

    pub fn node(&self, n: usize) -> f64 {
        if n == self.steps {
            self.t_final
        } else {
            n as f64 * self.tau()
        }
    }
}

/// Linear-interpolation product-integration weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryWeights {
    a: Vec<f64>,
    b: Vec<f64>,
    grid: TimeGrid,
    family: KernelFamily,
}

#[derive(Clone, Copy)]
enum PanelWeight {
    /// (t_{m+1} − σ)/τ
    Falling,
    /// (σ − t_m)/τ
    Rising,
    Unit,
}

impl PanelWeight {
    fn at(self, s: f64) -> f64 {
        match self {
            PanelWeight::Falling => 1.0 - s,
            PanelWeight::Rising => s,
            PanelWeight::Unit => 1.0,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol <= 1e-8 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "weight tolerance must lie in (0, 1e-8], got {tol}"
        )))
    }
}

/// ∫ over panel m of k(σ)·w((σ − t_m)/τ) dσ.
fn panel_integral(family: &KernelFamily, tau: f64, m: usize, weight: PanelWeight, tol: f64) -> Result<f64> {
    let abs_tol = tol * tau;
    let eval = |sigma: f64| family.eval(sigma).unwrap_or(f64::NAN);
    match (m, family.endpoint_power()) {
        (0, Some(q)) => {
            // σ = τ v^q, dσ = τ q v^{q − 1} dv
            let f = |v: f64| {
                let s = v.powf(q);
                eval(tau * s) * weight.at(s) * (tau * q) * v.powf(q - 1.0)
            };
            quadrature::adaptive(&f, 0.0, 1.0, abs_tol)
        }
        _ => {
            let t0 = m as f64 * tau;
            let f = |sigma: f64| eval(sigma) * weight.at((sigma - t0) / tau);
            quadrature::adaptive(&f, t0, t0 + tau, abs_tol)
        }
    }
}

impl MemoryWeights {
    /// Computes A_m, B_m for m = 0..N−1, each to absolute accuracy tol·τ.
    pub fn compute(family: KernelFamily, grid: TimeGrid, tol: f64) -> Result<Self> {
        Self::compute_with(family, grid, tol, Execution::default())
    }

    pub fn compute_with(family: KernelFamily, grid: TimeGrid, tol: f64, exec: Execution) -> Result<Self> {
        check_tol(tol)?;
        let family = family.validated()?;
        let tau = grid.tau();
        let pairs = exec.map_indices(grid.steps(), |m| -> Result<(f64, f64)> {
            Ok((
                panel_integral(&family, tau, m, PanelWeight::Falling, tol)?,
                panel_integral(&family, tau, m, PanelWeight::Rising, tol)?,
            ))
        });
        let mut a = Vec::with_capacity(grid.steps());
        let mut b = Vec::with_capacity(grid.steps());
        for p in pairs {
            let (am, bm) = p?;
            a.push(am);
            b.push(bm);
        }
        Ok(Self { a, b, grid, family })
    }

    /// Builds weights from precomputed lag sequences.
    pub fn from_parts(a: Vec<f64>, b: Vec<f64>, grid: TimeGrid, family: KernelFamily) -> Result<Self> {
        for v in [&a, &b] {
            if v.len() != grid.steps() {
                return Err(Error::LengthMismatch {
                    expected: grid.steps(),
                    got: v.len(),
                });
            }
        }
        Ok(Self { a, b, grid, family })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn family(&self) -> &KernelFamily {
        &self.family
    }

    /// A_m by lag.
    pub fn lag_a(&self) -> &[f64] {
        &self.a
    }

    /// B_m by lag.
    pub fn lag_b(&self) -> &[f64] {
        &self.b
    }

    /// a_{n,j}, 1 ≤ j ≤ n ≤ N.
    pub fn a(&self, n: usize, j: usize) -> f64 {
        debug_assert!(1 <= j && j <= n && n <= self.grid.steps());
        self.a[n - j]
    }

    /// b_{n,j}, 1 ≤ j ≤ n ≤ N.
    pub fn b(&self, n: usize, j: usize) -> f64 {
        debug_assert!(1 <= j && j <= n && n <= self.grid.steps());
        self.b[n - j]
    }

    /// Coefficients c_0..c_n with II_{n−1/2}(φ) = Σ_i c_i φ^i.
    pub fn averaged_coefficients(&self, n: usize) -> Vec<f64> {
        assert!(n >= 1 && n <= self.grid.steps());
        let (a, b) = (&self.a, &self.b);
        let b_or_zero = |k: isize| if k >= 0 { b[k as usize] } else { 0.0 };
        let mut c = vec![0.0; n + 1];
        c[0] = 0.5 * (b[n - 1] + b_or_zero(n as isize - 2));
        for (i, ci) in c.iter_mut().enumerate().take(n).skip(1) {
            *ci = 0.5 * (a[n - i] + a[n - i - 1] + b[n - i - 1] + b_or_zero(n as isize - i as isize - 2));
        }
        c[n] = 0.5 * a[0];
        c
    }

    /// Writes the weights as CSV `m,A,B`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let m: Vec<f64> = (0..self.a.len()).map(|i| i as f64).collect();
        crate::csvio::write_columns(out, &["m", "A", "B"], &[m, self.a.clone(), self.b.clone()])
    }
}

fn check_history(values: &[Vec<f64>], max_n: usize) -> Result<usize> {
    let Some(first) = values.first() else {
        return Err(Error::LengthMismatch { expected: 1, got: 0 });
    };
    let n = values.len() - 1;
    if n > max_n {
        return Err(Error::InvalidParameter(format!(
            "history length {n} exceeds grid steps {max_n}"
        )));
    }
    for v in values {
        if v.len() != first.len() {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                got: v.len(),
            });
        }
    }
    Ok(n)
}

fn axpy(acc: &mut [f64], c: f64, x: &[f64]) {
    for (a, x) in acc.iter_mut().zip(x) {
        *a += c * x;
    }
}

/// II_n(φ) = Σ_{j=1..n} [a_{n,j} φ^j + b_{n,j} φ^{j−1}] for values φ^0..φ^n.
pub fn memory_sum_full(w: &MemoryWeights, values: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = check_history(values, w.grid.steps())?;
    let mut acc = vec![0.0; values[0].len()];
    for j in 1..=n {
        axpy(&mut acc, w.a(n, j), &values[j]);
        axpy(&mut acc, w.b(n, j), &values[j - 1]);
    }
    Ok(acc)
}

/// II_{n−1/2}(φ) = Σ_j a_{n,j}(φ^j + φ^{j−1})/2 + Σ_j b_{n,j}(φ^{j−1} + φ^{j−2})/2
/// − a_{n,1} φ^0/2, with φ^{−1} = 0.
pub fn memory_sum_averaged(w: &MemoryWeights, values: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = check_history(values, w.grid.steps())?;
    if n == 0 {
        return Err(Error::InvalidParameter("averaged memory sum needs n >= 1".into()));
    }
    let mut acc = vec![0.0; values[0].len()];
    for j in 1..=n {
        let a = 0.5 * w.a(n, j);
        let b = 0.5 * w.b(n, j);
        axpy(&mut acc, a, &values[j]);
        axpy(&mut acc, a, &values[j - 1]);
        axpy(&mut acc, b, &values[j - 1]);
        if j >= 2 {
            axpy(&mut acc, b, &values[j - 2]);
        }
    }
    axpy(&mut acc, -0.5 * w.a(n, 1), &values[0]);
    Ok(acc)
}

/// Rectangle-rule weights w_m = ∫_{t_m}^{t_{m+1}} k(σ) dσ for the
/// backward-Euler baseline, I φ(t_n) ≈ Σ_{j=1..n} w_{n−j} φ^j.
#[derive(Debug, Clone, PartialEq)]
pub struct RectWeights {
    w: Vec<f64>,
    grid: TimeGrid,
    family: KernelFamily,
}

impl RectWeights {
    pub fn compute(family: KernelFamily, grid: TimeGrid, tol: f64) -> Result<Self> {
        Self::compute_with(family, grid, tol, Execution::default())
    }

    pub fn compute_with(family: KernelFamily, grid: TimeGrid, tol: f64, exec: Execution) -> Result<Self> {
        check_tol(tol)?;
        let family = family.validated()?;
        let tau = grid.tau();
        let w = exec
            .map_indices(grid.steps(), |m| {
                panel_integral(&family, tau, m, PanelWeight::Unit, tol)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { w, grid, family })
    }

    pub fn lag(&self) -> &[f64] {
        &self.w
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn family(&self) -> &KernelFamily {
        &self.family
    }
}
