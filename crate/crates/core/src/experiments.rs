//! Convergence studies, parameter sweeps, the kernel crossover experiment and
//! kernel comparison tables.

use std::path::Path;

use crate::error::{Error, Result};
use crate::exponent::ExponentSpec;
use crate::fem::discrete_l2_norm;
use crate::gamma::rgamma;
use crate::kernel::{sample_grid, KernelFamily, Spacing};
use crate::memory::MemoryWeights;
use crate::mittag_leffler::mittag_leffler_e1;
use crate::par::Execution;
use crate::stepper::{run_cn, simulate, write_probe_csv, Forcing, Initial, ModelConfig, Scheme, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    KernelCompare,
    Solve,
    ConvergeTime,
    ConvergeSpace,
    ParameterStudy,
    Crossover,
}

/// A fully resolved experiment: model, refinement levels and sweep values.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub base: ModelConfig,
    /// N values (time study) or M values (space study).
    pub levels: Vec<usize>,
    /// Constant exponents swept by the parameter study.
    pub alpha_values: Vec<f64>,
    /// Viscosities swept by the parameter study.
    pub mu_values: Vec<f64>,
    /// Probe location; defaults to the domain midpoint.
    pub probe_x: Option<f64>,
    pub tol: f64,
}

impl ExperimentConfig {
    pub fn preset(kind: ExperimentKind) -> Self {
        let base = match kind {
            ExperimentKind::ParameterStudy => parameter_study_model(),
            ExperimentKind::Crossover => crossover_model(KernelFamily::Multiscale(crossover_exponent())),
            _ => convergence_model(Scheme::Cn2),
        };
        let levels = match kind {
            ExperimentKind::ConvergeTime => vec![64, 128, 256, 512, 1024],
            ExperimentKind::ConvergeSpace => vec![32, 64, 128, 256, 512],
            _ => Vec::new(),
        };
        let base = match kind {
            ExperimentKind::ConvergeSpace => base.with_steps(32),
            _ => base,
        };
        Self {
            kind,
            base,
            levels,
            alpha_values: vec![0.2, 0.5, 0.8, 1.0],
            mu_values: vec![0.1, 0.2, 0.4],
            probe_x: None,
            tol: crate::memory::DEFAULT_TOL,
        }
    }

    pub fn probe_point(&self) -> f64 {
        self.probe_x.unwrap_or(0.5 * (self.base.domain.0 + self.base.domain.1))
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if matches!(self.kind, ExperimentKind::ConvergeTime | ExperimentKind::ConvergeSpace) {
            check_levels(&self.levels)?;
        }
        Ok(())
    }
}

/// Refinement levels must be non-empty and double at every step.
pub fn check_levels(levels: &[usize]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::InvalidParameter("no refinement levels".into()));
    }
    if levels[0] == 0 {
        return Err(Error::InvalidParameter("refinement levels must be positive".into()));
    }
    for w in levels.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(Error::InvalidParameter(format!(
                "refinement levels must double: {} -> {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Homogeneous test problem on (0,1): μ = ζ = 1, T = 1, α(t) = 1 − 4t/5,
/// u₀ = sin(πx), f ≡ 1, M = 32.
pub fn convergence_model(scheme: Scheme) -> ModelConfig {
    ModelConfig {
        domain: (0.0, 1.0),
        t_final: 1.0,
        cells: 32,
        steps: 64,
        mu: 1.0,
        zeta: 1.0,
        kernel: KernelFamily::Multiscale(ExponentSpec::linear(1.0, -0.8, 1.0).expect("valid exponent")),
        forcing: Forcing::Constant { value: 1.0 },
        initial: Initial::Sine,
        scheme,
    }
}

/// Short-time problem behind the initial-regularity comparison: same data as
/// [`convergence_model`] on [0, 0.1] with the given kernel.
pub fn initial_layer_model(kernel: KernelFamily, steps: usize) -> ModelConfig {
    ModelConfig {
        t_final: 0.1,
        steps,
        kernel,
        ..convergence_model(Scheme::Cn2)
    }
}

/// Point-source problem on (0,1), T = 10, μ = 0.1, ζ = 1,
/// f = exp(−t − (x − 0.5)²/2), M = 128, N = 1024, α(t) = 1 − t/20.
pub fn parameter_study_model() -> ModelConfig {
    ModelConfig {
        domain: (0.0, 1.0),
        t_final: 10.0,
        cells: 128,
        steps: 1024,
        mu: 0.1,
        zeta: 1.0,
        kernel: KernelFamily::Multiscale(ExponentSpec::linear(1.0, -0.05, 10.0).expect("valid exponent")),
        forcing: Forcing::GaussSource {
            amplitude: 1.0,
            x0: 0.5,
            sigma_x: 1.0,
            rate: 1.0,
        },
        initial: Initial::Zero,
        scheme: Scheme::Cn2,
    }
}

/// α(t) = 0.9 + 0.1 e^{−0.1 t}.
pub fn crossover_exponent() -> ExponentSpec {
    ExponentSpec::exp_decay(0.9, 0.1, 0.1).expect("valid exponent")
}

/// Vibration problem on (0,10), T = 150, μ = 0.4, ζ = 0.05,
/// f = exp(−t/2 − (x − 5)²/8), M = 128, N = 512.
pub fn crossover_model(kernel: KernelFamily) -> ModelConfig {
    ModelConfig {
        domain: (0.0, 10.0),
        t_final: 150.0,
        cells: 128,
        steps: 512,
        mu: 0.4,
        zeta: 0.05,
        kernel,
        forcing: Forcing::GaussSource {
            amplitude: 1.0,
            x0: 5.0,
            sigma_x: 2.0,
            rate: 0.5,
        },
        initial: Initial::Zero,
        scheme: Scheme::Cn2,
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    /// N (time study) or M (space study).
    pub level: usize,
    pub error: f64,
    /// log₂ of the ratio to the previous row's error; `None` on the first row.
    pub rate: Option<f64>,
}

/// rate_i = log₂(e_{i−1} / e_i).
pub fn convergence_rates(errors: &[f64]) -> Vec<Option<f64>> {
    std::iter::once(None)
        .chain(errors.windows(2).map(|w| Some((w[0] / w[1]).log2())))
        .take(errors.len())
        .collect()
}

fn rows(levels: &[usize], errors: Vec<f64>) -> Vec<ConvergenceRow> {
    let rates = convergence_rates(&errors);
    levels
        .iter()
        .zip(errors)
        .zip(rates)
        .map(|((&level, error), rate)| ConvergenceRow { level, error, rate })
        .collect()
}

/// E₂(N) = ‖U^N(τ) − U^{2N}(τ/2)‖ at the final time on the fixed mesh.
pub fn converge_time(base: &ModelConfig, levels: &[usize], tol: f64, exec: Execution) -> Result<Vec<ConvergenceRow>> {
    check_levels(levels)?;
    let mut runs: Vec<usize> = levels.to_vec();
    runs.push(2 * levels[levels.len() - 1]);
    let finals = exec
        .map_slice(&runs, |&n| {
            simulate(&base.with_steps(n), tol, exec).map(|t| t.final_state().to_vec())
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mesh = base.mesh()?;
    let errors = finals
        .windows(2)
        .map(|w| {
            let diff: Vec<f64> = w[0].iter().zip(&w[1]).map(|(a, b)| a - b).collect();
            discrete_l2_norm(&mesh, &diff)
        })
        .collect();
    Ok(rows(levels, errors))
}

/// F₂(M) = ‖U_j(h) − U_{2j}(h/2)‖ on the coarse mesh at the final time.
pub fn converge_space(base: &ModelConfig, levels: &[usize], tol: f64, exec: Execution) -> Result<Vec<ConvergenceRow>> {
    check_levels(levels)?;
    let mut runs: Vec<usize> = levels.to_vec();
    runs.push(2 * levels[levels.len() - 1]);
    base.validate()?;
    let finals = match base.scheme {
        Scheme::Cn2 => {
            let weights = MemoryWeights::compute_with(base.kernel, base.grid()?, tol, exec)?;
            exec.map_slice(&runs, |&m| {
                run_cn(&base.with_cells(m), &weights).map(|t| t.final_state().to_vec())
            })
        }
        Scheme::Be1 => exec.map_slice(&runs, |&m| {
            simulate(&base.with_cells(m), tol, exec).map(|t| t.final_state().to_vec())
        }),
    }
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut errors = Vec::with_capacity(levels.len());
    for (i, &m) in levels.iter().enumerate() {
        let mesh = base.with_cells(m).mesh()?;
        let (coarse, fine) = (&finals[i], &finals[i + 1]);
        // coarse unknown j−1 is node j; the same point is fine node 2j, unknown 2j−1
        let diff: Vec<f64> = (1..m).map(|j| coarse[j - 1] - fine[2 * j - 1]).collect();
        errors.push(discrete_l2_norm(&mesh, &diff));
    }
    Ok(rows(levels, errors))
}

/// A labelled probe series u(x*, t_n).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRun {
    pub label: String,
    pub series: Vec<(f64, f64)>,
}

impl ProbeRun {
    pub fn max_abs(&self) -> f64 {
        self.series.iter().map(|p| p.1.abs()).fold(0.0, f64::max)
    }
}

/// Sweeps constant exponents, then viscosities under α(t) = 1 − t/20.
pub fn parameter_study(cfg: &ExperimentConfig, exec: Execution) -> Result<Vec<ProbeRun>> {
    let base = cfg.base;
    let x = cfg.probe_point();
    let mut jobs: Vec<(String, ModelConfig)> = Vec::new();
    for &a in &cfg.alpha_values {
        let kernel = KernelFamily::Multiscale(ExponentSpec::constant(a)?);
        jobs.push((format!("alpha_{a}"), ModelConfig { kernel, ..base }));
    }
    let varying = KernelFamily::Multiscale(ExponentSpec::linear(1.0, -1.0 / 20.0, base.t_final)?);
    for &mu in &cfg.mu_values {
        jobs.push((
            format!("mu_{mu}"),
            ModelConfig {
                kernel: varying,
                mu,
                ..base
            },
        ));
    }
    exec.map_slice(&jobs, |(label, model)| {
        let traj = simulate(model, cfg.tol, exec)?;
        Ok(ProbeRun {
            label: label.clone(),
            series: traj.probe_series(x)?,
        })
    })
    .into_iter()
    .collect()
}

/// Probe histories under k, k₀ and k_∞ with the pointwise gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverReport {
    pub t: Vec<f64>,
    pub u_k: Vec<f64>,
    pub u_k0: Vec<f64>,
    pub u_kinf: Vec<f64>,
}

impl CrossoverReport {
    pub fn gap_short(&self) -> Vec<f64> {
        self.u_k.iter().zip(&self.u_k0).map(|(a, b)| (a - b).abs()).collect()
    }

    pub fn gap_long(&self) -> Vec<f64> {
        self.u_k.iter().zip(&self.u_kinf).map(|(a, b)| (a - b).abs()).collect()
    }
}

/// Runs the model under the multiscale kernel of `spec` and under both of
/// its asymptotes.
pub fn crossover(base: &ModelConfig, spec: ExponentSpec, x: f64, tol: f64, exec: Execution) -> Result<CrossoverReport> {
    let kernels = [
        KernelFamily::Multiscale(spec),
        KernelFamily::ShortAsymptote(spec),
        KernelFamily::LongAsymptote(spec),
    ];
    let trajs: Vec<Trajectory> = exec
        .map_slice(&kernels, |&kernel| {
            simulate(&ModelConfig { kernel, ..*base }, tol, exec)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let series = |tr: &Trajectory| {
        tr.probe_series(x)
            .map(|s| s.into_iter().map(|p| p.1).collect::<Vec<_>>())
    };
    Ok(CrossoverReport {
        t: (0..=base.steps).map(|n| trajs[0].grid.node(n)).collect(),
        u_k: series(&trajs[0])?,
        u_k0: series(&trajs[1])?,
        u_kinf: series(&trajs[2])?,
    })
}

/// Columns `t,k,k0,kinf,kE`: the multiscale kernel of `spec`, its two
/// asymptotes, and the Mittag–Leffler kernel with parameter `beta`.
pub fn kernel_compare(
    spec: ExponentSpec,
    beta: f64,
    t_min: f64,
    t_max: f64,
    n_points: usize,
) -> Result<(Vec<&'static str>, Vec<Vec<f64>>)> {
    let ts = sample_grid(t_min, t_max, n_points, Spacing::Log)?;
    let fams = [
        KernelFamily::Multiscale(spec),
        KernelFamily::ShortAsymptote(spec),
        KernelFamily::LongAsymptote(spec).validated()?,
        KernelFamily::MittagLeffler { beta }.validated()?,
    ];
    let mut cols = vec![ts.clone()];
    for f in fams {
        cols.push(ts.iter().map(|&t| f.eval(t)).collect::<Result<Vec<_>>>()?);
    }
    Ok((vec!["t", "k", "k0", "kinf", "kE"], cols))
}

/// Columns for k(t; a) with α(t; a) = 0.7 + 0.3 e^{−a t}, the limiting power
/// law t^{−0.3}/Γ(0.7) and the Mittag–Leffler kernel with β = 0.3.
pub fn kernel_family_compare(
    rates: &[f64],
    t_min: f64,
    t_max: f64,
    n_points: usize,
) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let ts = sample_grid(t_min, t_max, n_points, Spacing::Log)?;
    let mut header = vec!["t".to_string()];
    let mut cols = vec![ts.clone()];
    for &a in rates {
        let fam = KernelFamily::Multiscale(ExponentSpec::exp_decay(0.7, 0.3, a)?);
        header.push(format!("k_a{a}"));
        cols.push(ts.iter().map(|&t| fam.eval(t)).collect::<Result<Vec<_>>>()?);
    }
    header.push("kinf".into());
    cols.push(ts.iter().map(|&t| t.powf(-0.3) * rgamma(0.7)).collect());
    header.push("kE".into());
    cols.push(
        ts.iter()
            .map(|&t| mittag_leffler_e1(0.3, t.powf(0.3)))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok((header, cols))
}

/// First time on the grid after which |k(t;a)/k(t;∞) − 1| stays below `rel`.
pub fn power_law_onset(rate: f64, rel: f64, ts: &[f64]) -> Result<Option<f64>> {
    let fam = KernelFamily::Multiscale(ExponentSpec::exp_decay(0.7, 0.3, rate)?);
    let mut onset = None;
    for &t in ts {
        let ratio = fam.eval(t)? / (t.powf(-0.3) * rgamma(0.7));
        if (ratio - 1.0).abs() < rel {
            onset.get_or_insert(t);
        } else {
            onset = None;
        }
    }
    Ok(onset)
}

/// Writes a convergence table with header `<level>,<error>,rate`.
pub fn write_convergence_csv<W: std::io::Write>(
    out: W,
    level_name: &str,
    error_name: &str,
    rows: &[ConvergenceRow],
) -> std::io::Result<()> {
    crate::csvio::write_rows(
        out,
        &[level_name, error_name, "rate"],
        rows.iter().map(|r| vec![Some(r.level as f64), Some(r.error), r.rate]),
    )
}

/// Writes each probe run to `<dir>/<prefix><label>.csv`.
pub fn write_probe_runs(dir: &Path, prefix: &str, runs: &[ProbeRun]) -> std::io::Result<()> {
    for run in runs {
        let f = std::fs::File::create(dir.join(format!("{prefix}{}.csv", run.label)))?;
        write_probe_csv(std::io::BufWriter::new(f), &run.series)?;
    }
    Ok(())
}
