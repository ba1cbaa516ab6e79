//! Time stepping for u_t − μ u_xx − ζ (k ∗ u_xx) = f on (a, b) × (0, T] with
//! homogeneous Dirichlet data.
//!
//! Two schemes share the Galerkin space discretization:
//!
//! * `Cn2`: Crank–Nicolson in time with the averaged linear-interpolation
//!   memory operator II_{n−1/2}; second order in τ and h.
//! * `Be1`: backward Euler with rectangle-rule memory weights; first order
//!   in τ. Used as the baseline.

use std::io::Write;

use crate::error::{Error, Result};
use crate::fem::{assemble_load, assemble_mass, assemble_stiffness, discrete_l2_norm, nodal_interpolate, Mesh1D};
use crate::kernel::KernelFamily;
use crate::memory::{MemoryWeights, RectWeights, TimeGrid};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Cn2,
    Be1,
}

/// Source term f(x, t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Forcing {
    Zero,
    Constant {
        value: f64,
    },
    /// amplitude · exp(−rate·t − (x − x0)² / (2 σ_x²))
    GaussSource {
        amplitude: f64,
        x0: f64,
        sigma_x: f64,
        rate: f64,
    },
}

impl Forcing {
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        match *self {
            Forcing::Zero => 0.0,
            Forcing::Constant { value } => value,
            Forcing::GaussSource {
                amplitude,
                x0,
                sigma_x,
                rate,
            } => {
                let d = x - x0;
                amplitude * (-rate * t - d * d / (2.0 * sigma_x * sigma_x)).exp()
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Forcing::Zero)
            || matches!(self, Forcing::Constant { value } if *value == 0.0)
            || matches!(self, Forcing::GaussSource { amplitude, .. } if *amplitude == 0.0)
    }
}

/// Initial datum u₀(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initial {
    Zero,
    /// sin(π (x − a)/(b − a)), the first Dirichlet eigenfunction
    Sine,
}

impl Initial {
    pub fn eval(&self, x: f64, a: f64, b: f64) -> f64 {
        match self {
            Initial::Zero => 0.0,
            Initial::Sine => (std::f64::consts::PI * (x - a) / (b - a)).sin(),
        }
    }
}

/// Everything needed to run one simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub domain: (f64, f64),
    pub t_final: f64,
    /// Number of spatial subintervals M.
    pub cells: usize,
    /// Number of time steps N.
    pub steps: usize,
    /// Viscosity μ > 0.
    pub mu: f64,
    /// Memory coefficient ζ ≥ 0 (zero switches the memory off).
    pub zeta: f64,
    pub kernel: KernelFamily,
    pub forcing: Forcing,
    pub initial: Initial,
    pub scheme: Scheme,
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::InvalidParameter(format!("mu must be positive, got {}", self.mu)));
        }
        if !(self.zeta >= 0.0 && self.zeta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "zeta must be non-negative, got {}",
                self.zeta
            )));
        }
        self.mesh()?;
        self.grid()?;
        self.kernel.validated()?;
        if let KernelFamily::Multiscale(s) | KernelFamily::ShortAsymptote(s) = self.kernel {
            if s.horizon() < self.t_final {
                return Err(Error::InvalidExponent(format!(
                    "exponent validated on [0, {}] but T = {}",
                    s.horizon(),
                    self.t_final
                )));
            }
        }
        Ok(())
    }

    pub fn mesh(&self) -> Result<Mesh1D> {
        Mesh1D::new(self.domain.0, self.domain.1, self.cells)
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.t_final, self.steps)
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_cells(mut self, cells: usize) -> Self {
        self.cells = cells;
        self
    }

    fn load(&self, mesh: &Mesh1D, t: f64) -> Vec<f64> {
        if self.forcing.is_zero() {
            return vec![0.0; mesh.unknowns()];
        }
        assemble_load(mesh, |x| self.forcing.eval(x, t))
    }

    fn initial_state(&self, mesh: &Mesh1D) -> Vec<f64> {
        let (a, b) = self.domain;
        nodal_interpolate(mesh, |x| self.initial.eval(x, a, b))
    }
}

/// Nodal states U⁰..U^N on a mesh and time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub mesh: Mesh1D,
    pub grid: TimeGrid,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least U^0")
    }

    /// Linear interpolation of U^n at x; boundary values are zero.
    pub fn probe(&self, x: f64, n: usize) -> Result<f64> {
        let (a, b) = (self.mesh.a(), self.mesh.b());
        if !(x >= a && x <= b) {
            return Err(Error::Domain(format!("probe point {x} outside [{a}, {b}]")));
        }
        let state = self
            .states
            .get(n)
            .ok_or_else(|| Error::InvalidParameter(format!("step {n} beyond N = {}", self.grid.steps())))?;
        let cells = self.mesh.cells();
        let nodal = |j: usize| if j == 0 || j == cells { 0.0 } else { state[j - 1] };
        let s = (x - a) / self.mesh.h();
        let j = (s.floor() as usize).min(cells - 1);
        let frac = s - j as f64;
        if frac == 0.0 {
            return Ok(nodal(j));
        }
        Ok((1.0 - frac) * nodal(j) + frac * nodal(j + 1))
    }

    /// Time series (t_n, U^n(x)) for n = 0..N.
    pub fn probe_series(&self, x: f64) -> Result<Vec<(f64, f64)>> {
        (0..self.states.len())
            .map(|n| Ok((self.grid.node(n), self.probe(x, n)?)))
            .collect()
    }

    /// (t_n, (U^n(x) − U^{n−1}(x))/τ) for n = 1..N.
    pub fn difference_quotient_series(&self, x: f64) -> Result<Vec<(f64, f64)>> {
        let tau = self.grid.tau();
        let p = self.probe_series(x)?;
        Ok(p.windows(2).map(|w| (w[1].0, (w[1].1 - w[0].1) / tau)).collect())
    }

    /// Writes `t,x_1,...,x_{M-1}`, one row per time level.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut header = vec!["t".to_string()];
        header.extend((1..self.mesh.cells()).map(|j| format!("x_{j}")));
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows = self.states.iter().enumerate().map(|(n, u)| {
            std::iter::once(Some(self.grid.node(n)))
                .chain(u.iter().copied().map(Some))
                .collect()
        });
        crate::csvio::write_rows(out, &header, rows)
    }

    /// Discrete norm of U^n.
    pub fn norm(&self, n: usize) -> f64 {
        discrete_l2_norm(&self.mesh, &self.states[n])
    }
}

/// Writes a probe series as CSV `t,u`.
pub fn write_probe_csv<W: Write>(out: W, series: &[(f64, f64)]) -> std::io::Result<()> {
    let t = series.iter().map(|p| p.0).collect();
    let u = series.iter().map(|p| p.1).collect();
    crate::csvio::write_columns(out, &["t", "u"], &[t, u])
}

fn check_finite(state: &[f64], step: usize) -> Result<()> {
    if state.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { step })
    }
}

fn check_grid(config: &ModelConfig, grid: &TimeGrid, family: &KernelFamily) -> Result<TimeGrid> {
    let expected = config.grid()?;
    if *grid != expected {
        return Err(Error::InvalidParameter(format!(
            "weights built for {grid:?}, configuration needs {expected:?}"
        )));
    }
    if *family != config.kernel {
        return Err(Error::InvalidParameter("weights built for a different kernel".into()));
    }
    Ok(expected)
}

/// Crank–Nicolson Galerkin scheme. Per step solves
///
/// (M/τ + (μ/2 + ζA_0/2) S) U^n
///     = (M/τ − μ/2 S) U^{n−1} − ζ S Σ_{i<n} c_i U^i + (F^n + F^{n−1})/2
///
/// where Σ_i c_i U^i = II_{n−1/2}(U) and c_n = A_0/2 sits on the left.
pub fn run_cn(config: &ModelConfig, weights: &MemoryWeights) -> Result<Trajectory> {
    config.validate()?;
    let grid = check_grid(config, weights.grid(), weights.family())?;
    let mesh = config.mesh()?;
    let tau = grid.tau();
    let (mu, zeta) = (config.mu, config.zeta);
    let a = weights.lag_a();
    let b = weights.lag_b();
    let mass = assemble_mass(&mesh);
    let stiff = assemble_stiffness(&mesh);
    let lhs = mass.combine(1.0 / tau, &stiff, 0.5 * mu + 0.5 * zeta * a[0]);
    let factor = lhs.factor()?;
    let explicit = mass.combine(1.0 / tau, &stiff, -0.5 * mu);

    // lag coefficients d_k for 1 ≤ i ≤ n−1, k = n − i
    let b_or_zero = |k: isize| if k >= 0 { b[k as usize] } else { 0.0 };
    let lag: Vec<f64> = (0..grid.steps())
        .map(|k| {
            if k == 0 {
                0.0
            } else {
                0.5 * (a[k] + a[k - 1] + b[k - 1] + b_or_zero(k as isize - 2))
            }
        })
        .collect();

    let dim = mesh.unknowns();
    let mut states = Vec::with_capacity(grid.steps() + 1);
    states.push(config.initial_state(&mesh));
    let mut load_prev = config.load(&mesh, 0.0);
    let mut hist = vec![0.0; dim];
    let mut work = vec![0.0; dim];
    for n in 1..=grid.steps() {
        let load_next = config.load(&mesh, grid.node(n));
        hist.iter_mut().for_each(|h| *h = 0.0);
        if zeta != 0.0 {
            let c0 = 0.5 * (b[n - 1] + b_or_zero(n as isize - 2));
            axpy(&mut hist, c0, &states[0]);
            for (i, u) in states.iter().enumerate().take(n).skip(1) {
                axpy(&mut hist, lag[n - i], u);
            }
        }
        explicit.mul_vec_into(&states[n - 1], &mut work);
        let mut rhs = work.clone();
        stiff.mul_vec_into(&hist, &mut work);
        for k in 0..dim {
            rhs[k] += -zeta * work[k] + 0.5 * (load_next[k] + load_prev[k]);
        }
        factor.solve_in_place(&mut rhs)?;
        check_finite(&rhs, n)?;
        states.push(rhs);
        load_prev = load_next;
    }
    Ok(Trajectory { mesh, grid, states })
}

/// Backward-Euler baseline with rectangle-rule memory:
///
/// (M/τ + (μ + ζ w_0) S) U^n = M/τ U^{n−1} − ζ S Σ_{j=1}^{n−1} w_{n−j} U^j + F^n
pub fn run_be(config: &ModelConfig, weights: &RectWeights) -> Result<Trajectory> {
    config.validate()?;
    let grid = check_grid(config, weights.grid(), weights.family())?;
    let mesh = config.mesh()?;
    let tau = grid.tau();
    let (mu, zeta) = (config.mu, config.zeta);
    let w = weights.lag();
    let mass = assemble_mass(&mesh);
    let stiff = assemble_stiffness(&mesh);
    let factor = mass.combine(1.0 / tau, &stiff, mu + zeta * w[0]).factor()?;
    let dim = mesh.unknowns();
    let mut states = Vec::with_capacity(grid.steps() + 1);
    states.push(config.initial_state(&mesh));
    let mut hist = vec![0.0; dim];
    let mut work = vec![0.0; dim];
    for n in 1..=grid.steps() {
        let load = config.load(&mesh, grid.node(n));
        hist.iter_mut().for_each(|h| *h = 0.0);
        if zeta != 0.0 {
            for (j, u) in states.iter().enumerate().take(n).skip(1) {
                axpy(&mut hist, w[n - j], u);
            }
        }
        let mut rhs: Vec<f64> = states[n - 1].iter().map(|u| u / tau).collect();
        rhs = mass.mul_vec(&rhs);
        stiff.mul_vec_into(&hist, &mut work);
        for k in 0..dim {
            rhs[k] += -zeta * work[k] + load[k];
        }
        factor.solve_in_place(&mut rhs)?;
        check_finite(&rhs, n)?;
        states.push(rhs);
    }
    Ok(Trajectory { mesh, grid, states })
}

fn axpy(acc: &mut [f64], c: f64, x: &[f64]) {
    for (a, x) in acc.iter_mut().zip(x) {
        *a += c * x;
    }
}

/// Builds the weights the configured scheme needs and runs it.
pub fn simulate(config: &ModelConfig, tol: f64, exec: Execution) -> Result<Trajectory> {
    config.validate()?;
    let grid = config.grid()?;
    match config.scheme {
        Scheme::Cn2 => run_cn(config, &MemoryWeights::compute_with(config.kernel, grid, tol, exec)?),
        Scheme::Be1 => run_be(config, &RectWeights::compute_with(config.kernel, grid, tol, exec)?),
    }
}

/// Energy stability ratio
/// max_m ‖U^m‖² / (‖U⁰‖² + τ‖∇U⁰‖² + τ Σ_n ‖f^{n−1/2}‖²)
/// using lattice norms for U and f and the stiffness form for ‖∇U⁰‖².
pub fn stability_ratio(config: &ModelConfig, traj: &Trajectory) -> f64 {
    let mesh = &traj.mesh;
    let tau = traj.grid.tau();
    let u0 = &traj.states[0];
    let grad2: f64 = {
        let su = assemble_stiffness(mesh).mul_vec(u0);
        su.iter().zip(u0).map(|(a, b)| a * b).sum()
    };
    let nodes = mesh.interior_nodes();
    let fnorm2 = |t0: f64, t1: f64| {
        let v: Vec<f64> = nodes
            .iter()
            .map(|&x| 0.5 * (config.forcing.eval(x, t0) + config.forcing.eval(x, t1)))
            .collect();
        discrete_l2_norm(mesh, &v).powi(2)
    };
    let mut denom = traj.norm(0).powi(2) + tau * grad2;
    let mut worst: f64 = 0.0;
    for m in 1..traj.states.len() {
        denom += tau * fnorm2(traj.grid.node(m - 1), traj.grid.node(m));
        worst = worst.max(traj.norm(m).powi(2) / denom);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentSpec;

    fn base() -> ModelConfig {
        ModelConfig {
            domain: (0.0, 1.0),
            t_final: 1.0,
            cells: 16,
            steps: 32,
            mu: 1.0,
            zeta: 1.0,
            kernel: KernelFamily::Multiscale(ExponentSpec::linear(1.0, -0.8, 1.0).unwrap()),
            forcing: Forcing::Constant { value: 1.0 },
            initial: Initial::Sine,
            scheme: Scheme::Cn2,
        }
    }

    #[test]
    fn zero_data_gives_zero_trajectory() {
        for scheme in [Scheme::Cn2, Scheme::Be1] {
            let cfg = ModelConfig {
                forcing: Forcing::Zero,
                initial: Initial::Zero,
                scheme,
                ..base()
            };
            let traj = simulate(&cfg, 1e-12, Execution::Sequential).unwrap();
            assert!(traj.states.iter().flatten().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn symmetric_data_gives_symmetric_states() {
        let traj = simulate(&base(), 1e-12, Execution::Sequential).unwrap();
        let m = traj.mesh.cells();
        for u in &traj.states {
            for j in 1..m {
                assert!((u[j - 1] - u[m - j - 1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn probe_behaviour() {
        let traj = simulate(&base(), 1e-12, Execution::Sequential).unwrap();
        let n = 5;
        assert_eq!(traj.probe(traj.mesh.node(3), n).unwrap(), traj.states[n][2]);
        assert_eq!(traj.probe(0.0, n).unwrap(), 0.0);
        assert_eq!(traj.probe(1.0, n).unwrap(), 0.0);
        let mid = 0.5 * (traj.mesh.node(3) + traj.mesh.node(4));
        let expect = 0.5 * (traj.states[n][2] + traj.states[n][3]);
        assert!((traj.probe(mid, n).unwrap() - expect).abs() < 1e-15);
        assert!(traj.probe(1.5, n).is_err());
        assert!(traj.probe(0.5, 33).is_err());
    }

    #[test]
    fn difference_quotients() {
        let mesh = Mesh1D::new(0.0, 1.0, 4).unwrap();
        let grid = TimeGrid::new(1.0, 4).unwrap();
        let flat = Trajectory {
            mesh,
            grid,
            states: vec![vec![1.0; 3]; 5],
        };
        assert!(flat.difference_quotient_series(0.5).unwrap().iter().all(|p| p.1 == 0.0));
        let ramp = Trajectory {
            mesh,
            grid,
            states: (0..5).map(|n| vec![n as f64 * 0.25 * 3.0; 3]).collect(),
        };
        let dq = ramp.difference_quotient_series(0.5).unwrap();
        assert_eq!(dq.len(), 4);
        assert!(dq.iter().all(|p| (p.1 - 3.0).abs() < 1e-12));
    }

    #[test]
    fn rejects_mismatched_weights() {
        let cfg = base();
        let w = MemoryWeights::compute(cfg.kernel, TimeGrid::new(1.0, 16).unwrap(), 1e-12).unwrap();
        assert!(run_cn(&cfg, &w).is_err());
        let bad = ModelConfig { mu: 0.0, ..cfg };
        assert!(bad.validate().is_err());
        let short = ModelConfig { t_final: 2.0, ..cfg };
        assert!(short.validate().is_err());
    }

    #[test]
    fn csv_exports() {
        let cfg = ModelConfig {
            cells: 4,
            steps: 2,
            ..base()
        };
        let traj = simulate(&cfg, 1e-12, Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("t,x_1,x_2,x_3\n0.0,"));
        assert_eq!(s.lines().count(), 4);
        let mut buf = Vec::new();
        write_probe_csv(&mut buf, &traj.probe_series(0.5).unwrap()).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("t,u\n"));
    }
}
