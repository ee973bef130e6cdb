//! Trial engine: simulates many chips per architecture, summarises the
//! empirical distribution of the normalized `INL_max`, estimates yield, and
//! runs the convergence-rate experiments.
//!
//! Determinism contract: every result is a pure function of
//! `(spec, architecture, trials, seed)`. Trial `t` draws all of its
//! randomness from seeds derived as `(seed, t)`, and merge order is trial
//! order, so the worker count never changes any output bit.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mismatch::{sample_unit_currents, DacSpec};
use crate::rng::{derive_seed, substream};
use crate::stats;
use crate::transfer::{nonlinearity, normalized_inl_max, transfer, Architecture};

/// Probabilities reported in every summary.
pub const DEFAULT_QUANTILES: &[f64] = &[0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99];

/// Normal quantile for the 95% intervals used throughout.
pub const Z_95: f64 = 1.959963984540054;

/// Per-trial endpoint check: `INL_0` and `INL_n` must vanish to this
/// tolerance (plain summation keeps rounding far below it for N <= 20).
const ENDPOINT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct TrialConfig {
    pub spec: DacSpec,
    pub architecture: Architecture,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
}

impl TrialConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        if self.spec.sigma_u <= 0.0 {
            return Err(Error::ZeroSigma);
        }
        self.architecture.validate(self.spec.resolution_bits)
    }
}

/// Summary of one Monte Carlo run. `samples` is the sorted sample array (the
/// empirical CDF); `mean` is the arithmetic mean of the samples.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalSummary {
    pub trials: usize,
    pub mean: f64,
    pub variance: Option<f64>,
    pub standard_error_mean: Option<f64>,
    pub quantiles: Vec<(f64, f64)>,
    #[serde(skip)]
    pub samples: Vec<f64>,
}

impl EmpiricalSummary {
    /// Build from samples in trial order (the mean is taken in that order so
    /// it is reproducible bit-for-bit).
    pub fn from_samples(mut samples: Vec<f64>) -> Self {
        let trials = samples.len();
        let mean = stats::mean(&samples);
        let variance = stats::sample_variance(&samples);
        let standard_error_mean = variance.map(|v| (v / trials as f64).sqrt());
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let quantiles = DEFAULT_QUANTILES
            .iter()
            .map(|&p| (p, stats::quantile_sorted(&samples, p)))
            .collect();
        Self {
            trials,
            mean,
            variance,
            standard_error_mean,
            quantiles,
            samples,
        }
    }
}

/// Yield estimate with a 95% Wilson interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct YieldEstimate {
    pub threshold_lsb: f64,
    #[serde(rename = "yield")]
    pub probability: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TrialOutcome {
    pub inl_max_lsb: f64,
    pub normalized: f64,
}

fn simulate_trial(spec: &DacSpec, architecture: Architecture, trial_seed: u64) -> Result<TrialOutcome> {
    let units = sample_unit_currents(spec, trial_seed);
    let curve = transfer(architecture, &units)?;
    let profile = nonlinearity(&curve, units.i_lsb())?;
    let n = units.len();
    if profile.inl[0].abs() > ENDPOINT_TOLERANCE || profile.inl[n].abs() > ENDPOINT_TOLERANCE {
        return Err(Error::InvariantViolation(format!(
            "INL endpoints must vanish: INL_0 = {}, INL_n = {}",
            profile.inl[0], profile.inl[n]
        )));
    }
    let normalized = normalized_inl_max(&profile, spec, units.i_lsb())?;
    Ok(TrialOutcome {
        inl_max_lsb: profile.inl_max,
        normalized,
    })
}

fn run_parallel<T, F>(trials: usize, workers: usize, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        pool.install(|| (0..trials).into_par_iter().map(&task).collect())
    } else {
        (0..trials).map(task).collect()
    }
}

pub(crate) fn run_trial_outcomes(config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    let spec = config.spec;
    let architecture = config.architecture;
    let seed = config.seed;
    run_parallel(config.trials, config.workers, move |t| {
        simulate_trial(&spec, architecture, derive_seed(seed, t as u64))
    })
}

/// Simulate `config.trials` chips and summarise the normalized `INL_max`.
pub fn run_trials(config: &TrialConfig) -> Result<EmpiricalSummary> {
    let outcomes = run_trial_outcomes(config)?;
    Ok(EmpiricalSummary::from_samples(
        outcomes.iter().map(|o| o.normalized).collect(),
    ))
}

/// Fraction of simulated chips with `INL_max <= threshold_lsb` (LSB units),
/// with a 95% Wilson interval.
pub fn yield_mc(config: &TrialConfig, threshold_lsb: f64) -> Result<YieldEstimate> {
    if threshold_lsb.is_nan() || threshold_lsb < 0.0 {
        return Err(Error::NegativeArgument {
            name: "threshold_lsb",
            value: threshold_lsb,
        });
    }
    let outcomes = run_trial_outcomes(config)?;
    let hits = outcomes
        .iter()
        .filter(|o| o.inl_max_lsb <= threshold_lsb)
        .count() as u64;
    let trials = outcomes.len() as u64;
    let (ci_low, ci_high) = stats::wilson_interval(hits, trials, Z_95);
    Ok(YieldEstimate {
        threshold_lsb,
        probability: hits as f64 / trials as f64,
        ci_low,
        ci_high,
    })
}

/// Side-by-side summaries plus the two-sample KS distance between the
/// normalized `INL_max` samples of two configurations at equal resolution.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub arch_a: Architecture,
    pub arch_b: Architecture,
    pub a: EmpiricalSummary,
    pub b: EmpiricalSummary,
    pub mean_difference: f64,
    pub combined_se: f64,
    pub ks_distance: f64,
    pub ks_p_value: f64,
}

pub fn compare_architectures(
    spec_a: &DacSpec,
    arch_a: Architecture,
    spec_b: &DacSpec,
    arch_b: Architecture,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<ComparisonReport> {
    if spec_a.resolution_bits != spec_b.resolution_bits {
        return Err(Error::MismatchedResolution {
            a: spec_a.resolution_bits,
            b: spec_b.resolution_bits,
        });
    }
    let config_a = TrialConfig {
        spec: *spec_a,
        architecture: arch_a,
        trials,
        seed: derive_seed(seed, 1),
        workers,
    };
    let config_b = TrialConfig {
        spec: *spec_b,
        architecture: arch_b,
        trials,
        seed: derive_seed(seed, 2),
        workers,
    };
    let a = run_trials(&config_a)?;
    let b = run_trials(&config_b)?;
    let ks_distance = stats::ks_two_sample(&a.samples, &b.samples);
    let ks_p_value = stats::ks_p_value(ks_distance, a.trials, b.trials)?;
    let mean_difference = a.mean - b.mean;
    let combined_se = match (a.variance, b.variance) {
        (Some(va), Some(vb)) => (va / a.trials as f64 + vb / b.trials as f64).sqrt(),
        _ => f64::NAN,
    };
    Ok(ComparisonReport {
        arch_a,
        arch_b,
        a,
        b,
        mean_difference,
        combined_se,
        ks_distance,
        ks_p_value,
    })
}

/// One grid point of a convergence experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConvergenceRow {
    pub size: u64,
    pub observed: f64,
    pub bound: f64,
}

/// Deviation of the discrete-grid bridge maximum from a much finer grid,
/// against the `sqrt(log n / n)` envelope.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub statistic: String,
    pub trials: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Least-squares slope of `log observed` against `log size`, ignoring
    /// zero observations.
    pub fn fitted_slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.observed > 0.0)
            .map(|r| ((r.size as f64).ln(), r.observed.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        Some(sxy / sxx)
    }
}

/// Thermometer convergence experiment: on shared bridge paths sampled at
/// `n_fine` points, measure `E|max over n grid points - max over the fine
/// grid|` for each `n` in `n_grid`. All grid sizes must be powers of two
/// dividing `n_fine`.
pub fn convergence_thermo(
    n_grid: &[u64],
    trials: usize,
    seed: u64,
    n_fine: u64,
    workers: usize,
) -> Result<ConvergenceReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(
            "n_grid must be non-empty and strictly increasing".into(),
        ));
    }
    if !n_fine.is_power_of_two() || n_fine > (1 << 26) {
        return Err(Error::InvalidGrid(format!(
            "n_fine must be a power of two up to 2^26, got {n_fine}"
        )));
    }
    for &n in n_grid {
        if !n.is_power_of_two() || n > n_fine {
            return Err(Error::InvalidGrid(format!(
                "grid size {n} must be a power of two dividing n_fine = {n_fine}"
            )));
        }
    }

    let per_trial = run_parallel(trials, workers, |t| {
        let mut rng = substream(derive_seed(seed, t as u64), 0);
        let scale = 1.0 / (n_fine as f64).sqrt();
        let mut walk = Vec::with_capacity(n_fine as usize);
        let mut acc = 0.0;
        for _ in 0..n_fine {
            let z: f64 = rng.sample(StandardNormal);
            acc += z * scale;
            walk.push(acc);
        }
        let w1 = acc;
        let inv = 1.0 / n_fine as f64;
        let bridge_abs = |k: u64| (walk[(k - 1) as usize] - k as f64 * inv * w1).abs();
        let mut fine_max = 0.0f64;
        for k in 1..=n_fine {
            fine_max = fine_max.max(bridge_abs(k));
        }
        let gaps: Vec<f64> = n_grid
            .iter()
            .map(|&n| {
                let step = n_fine / n;
                let mut grid_max = 0.0f64;
                let mut k = step;
                while k <= n_fine {
                    grid_max = grid_max.max(bridge_abs(k));
                    k += step;
                }
                fine_max - grid_max
            })
            .collect();
        Ok(gaps)
    })?;

    let mut rows = Vec::with_capacity(n_grid.len());
    for (g, &n) in n_grid.iter().enumerate() {
        let observed = per_trial.iter().map(|gaps| gaps[g]).sum::<f64>() / trials as f64;
        let bound = ((n as f64).ln() / n as f64).sqrt();
        rows.push(ConvergenceRow {
            size: n,
            observed,
            bound,
        });
    }
    Ok(ConvergenceReport {
        statistic: "mean absolute gap between discrete and fine-grid bridge maxima".into(),
        trials,
        rows,
    })
}

/// One resolution of the binary coupling experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BinaryConvergenceRow {
    pub bits: u32,
    pub mean_abs_diff: f64,
    pub exceedance: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BinaryConvergenceReport {
    pub epsilon: f64,
    pub depth: usize,
    pub trials: usize,
    pub rows: Vec<BinaryConvergenceRow>,
}

/// Envelope constant `8 + 4 / (sqrt(2 pi) - sqrt(pi))` from the coupling
/// bound `P(|M_N - M| > eps) <= C N^2 2^(-N/2) / eps`.
pub fn binary_envelope_constant() -> f64 {
    use std::f64::consts::PI;
    8.0 + 4.0 / ((2.0 * PI).sqrt() - PI.sqrt())
}

/// Binary convergence experiment: couple the exact finite-resolution
/// statistic `M_N` and the truncated limit series on one bridge sampled at
/// the union of the block boundaries `(2^m - 1)/n` and the dyadic points
/// `2^-l`, and report `P(|M_N - M| > eps)` against the envelope.
pub fn convergence_binary(
    bits_grid: &[u32],
    trials: usize,
    seed: u64,
    epsilon: f64,
    depth: usize,
    workers: usize,
) -> Result<BinaryConvergenceReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if bits_grid.is_empty() || bits_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(
            "bits_grid must be non-empty and strictly increasing".into(),
        ));
    }
    if bits_grid.iter().any(|&b| !(1..=30).contains(&b)) {
        return Err(Error::InvalidGrid("resolutions must lie in 1..=30".into()));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidTolerance {
            name: "epsilon",
            value: epsilon,
        });
    }
    if depth == 0 {
        return Err(Error::OrderTooSmall {
            name: "depth",
            min: 1,
            got: 0,
        });
    }

    let c = binary_envelope_constant();
    let mut rows = Vec::with_capacity(bits_grid.len());
    for (grid_index, &bits) in bits_grid.iter().enumerate() {
        let n = (1u64 << bits) - 1;
        // union of DAC block boundaries and dyadic points, ascending
        let mut times: Vec<f64> = (1..=bits)
            .map(|m| ((1u64 << m) - 1) as f64 / n as f64)
            .chain((1..=depth).map(|l| (-(l as f64)).exp2()))
            .collect();
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        times.dedup();
        let dac_index: Vec<usize> = (1..=bits)
            .map(|m| {
                let t = ((1u64 << m) - 1) as f64 / n as f64;
                times.binary_search_by(|x| x.partial_cmp(&t).unwrap()).unwrap()
            })
            .collect();
        let dyadic_index: Vec<usize> = (1..=depth)
            .map(|l| {
                let t = (-(l as f64)).exp2();
                times.binary_search_by(|x| x.partial_cmp(&t).unwrap()).unwrap()
            })
            .collect();
        let steps: Vec<f64> = times
            .iter()
            .scan(0.0, |prev, &t| {
                let dt = t - *prev;
                *prev = t;
                Some(dt.sqrt())
            })
            .collect();

        let experiment_seed = derive_seed(seed, grid_index as u64);
        let diffs = run_parallel(trials, workers, |t| {
            let mut rng = substream(derive_seed(experiment_seed, t as u64), 0);
            let mut walk = Vec::with_capacity(times.len());
            let mut acc = 0.0;
            for &s in &steps {
                let z: f64 = rng.sample(StandardNormal);
                acc += s * z;
                walk.push(acc);
            }
            let w1 = acc;
            let bridge = |i: usize| walk[i] - times[i] * w1;

            let mut m_n = 0.0;
            let mut prev = 0.0;
            for &i in &dac_index {
                let b = bridge(i);
                m_n += (b - prev).abs();
                prev = b;
            }
            m_n *= 0.5;

            // truncated series: increments between consecutive dyadic points
            // from 2^-depth up to B(1) = 0, excluding any tail below 2^-depth
            let mut ascending = dyadic_index.iter().rev();
            let mut prev = bridge(*ascending.next().unwrap());
            let mut m_tilde = 0.0;
            for &i in ascending {
                let b = bridge(i);
                m_tilde += (b - prev).abs();
                prev = b;
            }
            m_tilde += prev.abs();
            m_tilde *= 0.5;

            Ok((m_n - m_tilde).abs())
        })?;

        let mean_abs_diff = diffs.iter().sum::<f64>() / trials as f64;
        let exceedance = diffs.iter().filter(|&&d| d > epsilon).count() as f64 / trials as f64;
        let bound = c * (bits as f64).powi(2) * (-(bits as f64) / 2.0).exp2() / epsilon;
        rows.push(BinaryConvergenceRow {
            bits,
            mean_abs_diff,
            exceedance,
            bound,
        });
    }
    Ok(BinaryConvergenceReport {
        epsilon,
        depth,
        trials,
        rows,
    })
}
