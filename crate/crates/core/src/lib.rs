//! Variable-exponent ("multiscale") Abel kernels and a solver for the
//! viscoelastic integro-differential equation
//!
//! ```text
//! u_t − μ Δu − ζ ∫_0^t k(t − s) Δu(s) ds = f,   k(t) = t^{α(t)−1} / Γ(α(t)),
//! ```
//!
//! on an interval with homogeneous Dirichlet data. Time is discretized by a
//! Crank–Nicolson scheme with linear-interpolation product integration of
//! the memory term (second order), or by a backward-Euler baseline (first
//! order); space by piecewise-linear Galerkin elements.
//!
//! Data-parallel loops (weight tables, refinement levels, parameter sweeps)
//! run on rayon when the default `parallel` feature is enabled and fall back
//! to plain iterators otherwise. See [`par::Execution`].

pub mod config;
pub mod csvio;
pub mod error;
pub mod experiments;
pub mod exponent;
pub mod fem;
pub mod gamma;
pub mod kernel;
pub mod memory;
pub mod mittag_leffler;
pub mod par;
pub mod quadrature;
pub mod stepper;

pub use error::{Error, Result};
pub use exponent::{ExponentKind, ExponentSpec};
pub use kernel::KernelFamily;
pub use memory::{memory_sum_averaged, memory_sum_full, MemoryWeights, RectWeights, TimeGrid};
pub use mittag_leffler::mittag_leffler_e1;
pub use par::Execution;
pub use stepper::{run_be, run_cn, simulate, Forcing, Initial, ModelConfig, Scheme, Trajectory};
