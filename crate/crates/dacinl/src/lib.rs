//! Static non-linearity of current-steering DACs: Monte Carlo simulation and
//! exact limit laws.
//!
//! A DAC built from `n = 2^N - 1` unit current sources suffers random
//! mismatch between those sources, which shows up as integral non-linearity
//! (INL) of its transfer characteristic. This crate simulates that effect for
//! the thermometer, binary, and segmented architectures, and evaluates the
//! exact limit distributions of the normalized worst-case INL as the
//! resolution grows:
//!
//! * thermometer coding converges to the maximal absolute excursion of a
//!   Brownian bridge (the Kolmogorov distribution) — see [`thermo`];
//! * binary coding converges to half the total absolute dyadic block
//!   increment of a Brownian bridge, a weighted series of standard normals —
//!   see [`binary`].
//!
//! The limit laws give yield predictions in closed form (thermometer) or
//! from a cheap one-dimensional sampler (binary), with no need to simulate
//! millions of unit currents at high resolution.
//!
//! ```
//! use dacinl::{run_trials, Architecture, DacSpec, TrialConfig};
//!
//! let config = TrialConfig {
//!     spec: DacSpec::from_relative_matching(8, 1.0, 0.02).unwrap(),
//!     architecture: Architecture::Binary,
//!     trials: 2000,
//!     seed: 7,
//!     workers: 1,
//! };
//! let summary = run_trials(&config).unwrap();
//! let limit_mean = dacinl::binary::mean_m(1e-8).unwrap();
//! assert!((summary.mean - limit_mean).abs() < 0.1);
//! ```
//!
//! Everything is deterministic given a seed: random quantities come from
//! counter-based substreams (see [`rng`]), so the worker count never changes
//! a result.

pub mod binary;
pub mod cli;
pub mod error;
pub mod export;
pub mod mismatch;
pub mod montecarlo;
pub mod quad;
pub mod rng;
pub mod stats;
pub mod thermo;
pub mod transfer;

pub use error::{Error, Result};
pub use mismatch::{i_lsb, sample_unit_currents, DacSpec, UnitCurrentVector};
pub use montecarlo::{
    compare_architectures, run_trials, yield_mc, EmpiricalSummary, TrialConfig, YieldEstimate,
};
pub use thermo::{kolmogorov_cdf, mean_x, quantile_x, var_x, yield_thermometer, KolmogorovLaw};
pub use transfer::{
    nonlinearity, normalized_inl_max, switching_matrix, transfer, Architecture,
    NonlinearityProfile, SwitchingMatrix, TransferCurve,
};
