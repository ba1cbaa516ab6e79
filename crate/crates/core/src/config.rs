//! Flat `key = value` experiment configuration.
//!
//! Keys are dotted (`model.mu`, `alpha.kind`, `grid.N`, ...) and values are
//! TOML scalars, so a config file is valid TOML. Every key is optional; an
//! absent key keeps the preset value of the experiment being run.
//!
//! ```text
//! model.mu = 1.0
//! model.zeta = 1.0
//! alpha.kind = "linear"     # constant | linear | exp_decay
//! alpha.c0 = 1.0
//! alpha.c1 = -0.8
//! grid.M = 32
//! grid.N = 64
//! grid.T = 1.0
//! scheme = "cn2"            # cn2 | be1
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::experiments::{ExperimentConfig, ExperimentKind};
use crate::exponent::{ExponentKind, ExponentSpec};
use crate::kernel::KernelFamily;
use crate::stepper::{Forcing, Initial, Scheme};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}`: {msg}")]
    BadValue { key: String, msg: String },
    #[error(transparent)]
    Model(#[from] crate::error::Error),
}

const KNOWN_KEYS: &[&str] = &[
    "model.mu",
    "model.zeta",
    "alpha.kind",
    "alpha.c0",
    "alpha.c1",
    "alpha.a",
    "kernel.kind",
    "kernel.beta",
    "grid.M",
    "grid.N",
    "grid.T",
    "domain.a",
    "domain.b",
    "forcing.kind",
    "forcing.value",
    "forcing.amplitude",
    "forcing.x0",
    "forcing.sigma_x",
    "forcing.rate",
    "initial.kind",
    "scheme",
    "experiment.levels",
    "experiment.alphas",
    "experiment.mus",
    "probe.x",
    "weights.tol",
];

fn flatten(prefix: &str, table: &toml::Table, out: &mut BTreeMap<String, toml::Value>) {
    for (k, v) in table {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            toml::Value::Table(t) => flatten(&key, t, out),
            other => {
                out.insert(key, other.clone());
            }
        }
    }
}

struct Keys(BTreeMap<String, toml::Value>);

impl Keys {
    fn bad(key: &str, msg: impl Into<String>) -> ConfigError {
        ConfigError::BadValue {
            key: key.into(),
            msg: msg.into(),
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(f)) => Ok(Some(*f)),
            Some(toml::Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(v) => Err(Self::bad(key, format!("expected a number, got {v}"))),
        }
    }

    fn count(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(i)) if *i > 0 => Ok(Some(*i as usize)),
            Some(v) => Err(Self::bad(key, format!("expected a positive integer, got {v}"))),
        }
    }

    fn text(&self, key: &str) -> Result<Option<&str>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.as_str())),
            Some(v) => Err(Self::bad(key, format!("expected a string, got {v}"))),
        }
    }

    fn floats(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Array(xs)) => xs
                .iter()
                .map(|x| match x {
                    toml::Value::Float(f) => Ok(*f),
                    toml::Value::Integer(i) => Ok(*i as f64),
                    v => Err(Self::bad(key, format!("expected numbers, got {v}"))),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(v) => Err(Self::bad(key, format!("expected an array, got {v}"))),
        }
    }

    fn counts(&self, key: &str) -> Result<Option<Vec<usize>>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Array(xs)) => xs
                .iter()
                .map(|x| match x {
                    toml::Value::Integer(i) if *i > 0 => Ok(*i as usize),
                    v => Err(Self::bad(key, format!("expected positive integers, got {v}"))),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(v) => Err(Self::bad(key, format!("expected an array, got {v}"))),
        }
    }
}

/// Parses config text on top of the preset for `kind`.
pub fn parse_experiment(text: &str, kind: ExperimentKind) -> Result<ExperimentConfig, ConfigError> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::Parse(e.to_string()))?;
    let mut flat = BTreeMap::new();
    flatten("", &table, &mut flat);
    if let Some(k) = flat.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(ConfigError::UnknownKey(k.clone()));
    }
    let keys = Keys(flat);
    let mut cfg = ExperimentConfig::preset(kind);
    let base = &mut cfg.base;

    if let Some(v) = keys.float("model.mu")? {
        base.mu = v;
    }
    if let Some(v) = keys.float("model.zeta")? {
        base.zeta = v;
    }
    if let Some(v) = keys.float("grid.T")? {
        base.t_final = v;
    }
    if let Some(v) = keys.count("grid.M")? {
        base.cells = v;
    }
    if let Some(v) = keys.count("grid.N")? {
        base.steps = v;
    }
    if let Some(v) = keys.float("domain.a")? {
        base.domain.0 = v;
    }
    if let Some(v) = keys.float("domain.b")? {
        base.domain.1 = v;
    }
    if let Some(s) = keys.text("scheme")? {
        base.scheme = match s {
            "cn2" => Scheme::Cn2,
            "be1" => Scheme::Be1,
            other => return Err(Keys::bad("scheme", format!("unknown scheme `{other}`"))),
        };
    }
    if let Some(s) = keys.text("initial.kind")? {
        base.initial = match s {
            "zero" => Initial::Zero,
            "sine" | "sine_ic" => Initial::Sine,
            other => return Err(Keys::bad("initial.kind", format!("unknown initial datum `{other}`"))),
        };
    }
    base.forcing = parse_forcing(&keys, base.forcing)?;

    let exponent = parse_exponent(&keys, base.t_final)?;
    if let Some(kind) = keys.text("kernel.kind")? {
        let spec = || {
            exponent
                .or_else(|| exponent_of(&base.kernel))
                .ok_or_else(|| Keys::bad("kernel.kind", "this kernel needs an alpha.* exponent"))
        };
        base.kernel = match kind {
            "multiscale" => KernelFamily::Multiscale(spec()?),
            "short" | "short_asymptote" => KernelFamily::ShortAsymptote(spec()?),
            "long" | "long_asymptote" => KernelFamily::LongAsymptote(spec()?),
            "constant_abel" => KernelFamily::ConstantAbel {
                alpha: keys
                    .float("alpha.c0")?
                    .ok_or_else(|| Keys::bad("alpha.c0", "required for constant_abel"))?,
            },
            "mittag_leffler" => KernelFamily::MittagLeffler {
                beta: keys
                    .float("kernel.beta")?
                    .ok_or_else(|| Keys::bad("kernel.beta", "required"))?,
            },
            other => return Err(Keys::bad("kernel.kind", format!("unknown kernel `{other}`"))),
        };
    } else if let Some(spec) = exponent {
        base.kernel = match base.kernel {
            KernelFamily::ShortAsymptote(_) => KernelFamily::ShortAsymptote(spec),
            KernelFamily::LongAsymptote(_) => KernelFamily::LongAsymptote(spec),
            _ => KernelFamily::Multiscale(spec),
        };
    }

    if let Some(v) = keys.counts("experiment.levels")? {
        cfg.levels = v;
    }
    if let Some(v) = keys.floats("experiment.alphas")? {
        cfg.alpha_values = v;
    }
    if let Some(v) = keys.floats("experiment.mus")? {
        cfg.mu_values = v;
    }
    if let Some(v) = keys.float("probe.x")? {
        cfg.probe_x = Some(v);
    }
    if let Some(v) = keys.float("weights.tol")? {
        cfg.tol = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exponent_of(kernel: &KernelFamily) -> Option<ExponentSpec> {
    match kernel {
        KernelFamily::Multiscale(s) | KernelFamily::ShortAsymptote(s) | KernelFamily::LongAsymptote(s) => Some(*s),
        _ => None,
    }
}

fn parse_exponent(keys: &Keys, t_final: f64) -> Result<Option<ExponentSpec>, ConfigError> {
    let Some(kind) = keys.text("alpha.kind")? else {
        return Ok(None);
    };
    let need = |k: &str| keys.float(k)?.ok_or_else(|| Keys::bad(k, "required by alpha.kind"));
    let kind = match kind {
        "constant" => ExponentKind::Constant {
            value: need("alpha.c0")?,
        },
        "linear" => ExponentKind::Linear {
            c0: need("alpha.c0")?,
            c1: need("alpha.c1")?,
        },
        "exp_decay" => ExponentKind::ExpDecay {
            c0: need("alpha.c0")?,
            c1: need("alpha.c1")?,
            rate: need("alpha.a")?,
        },
        other => return Err(Keys::bad("alpha.kind", format!("unknown exponent form `{other}`"))),
    };
    let horizon = match kind {
        ExponentKind::Linear { .. } => t_final,
        _ => f64::INFINITY,
    };
    Ok(Some(ExponentSpec::new(kind, horizon)?))
}

fn parse_forcing(keys: &Keys, current: Forcing) -> Result<Forcing, ConfigError> {
    let Some(kind) = keys.text("forcing.kind")? else {
        return Ok(current);
    };
    Ok(match kind {
        "zero" => Forcing::Zero,
        "one" => Forcing::Constant { value: 1.0 },
        "constant" => Forcing::Constant {
            value: keys.float("forcing.value")?.unwrap_or(1.0),
        },
        "gauss_source" => {
            let (a0, x0, s0, r0) = match current {
                Forcing::GaussSource {
                    amplitude,
                    x0,
                    sigma_x,
                    rate,
                } => (amplitude, x0, sigma_x, rate),
                _ => (1.0, 0.5, 1.0, 1.0),
            };
            Forcing::GaussSource {
                amplitude: keys.float("forcing.amplitude")?.unwrap_or(a0),
                x0: keys.float("forcing.x0")?.unwrap_or(x0),
                sigma_x: keys.float("forcing.sigma_x")?.unwrap_or(s0),
                rate: keys.float("forcing.rate")?.unwrap_or(r0),
            }
        }
        other => return Err(Keys::bad("forcing.kind", format!("unknown forcing `{other}`"))),
    })
}
