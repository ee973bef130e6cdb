//! Mismatch model: i.i.d. normal unit currents and per-chip derived quantities.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::substream;

/// Design parameters of a current-steering DAC.
///
/// A converter with `resolution_bits = N` is built from `n = 2^N - 1` unit
/// current sources, each manufactured as an independent normal draw with mean
/// `mean_current` and standard deviation `sigma_u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DacSpec {
    pub resolution_bits: u32,
    pub mean_current: f64,
    pub sigma_u: f64,
}

impl DacSpec {
    pub fn new(resolution_bits: u32, mean_current: f64, sigma_u: f64) -> Result<Self> {
        if !(1..=30).contains(&resolution_bits) {
            return Err(Error::ResolutionOutOfRange(resolution_bits));
        }
        if !mean_current.is_finite() || mean_current <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "mean_current must be positive and finite, got {mean_current}"
            )));
        }
        if !sigma_u.is_finite() || sigma_u < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "sigma_u must be non-negative and finite, got {sigma_u}"
            )));
        }
        Ok(Self {
            resolution_bits,
            mean_current,
            sigma_u,
        })
    }

    /// Build a spec from the relative matching ratio `sigma_u / mean_current`.
    pub fn from_relative_matching(
        resolution_bits: u32,
        mean_current: f64,
        relative_matching: f64,
    ) -> Result<Self> {
        if !relative_matching.is_finite() || relative_matching < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "relative matching must be non-negative and finite, got {relative_matching}"
            )));
        }
        Self::new(resolution_bits, mean_current, relative_matching * mean_current)
    }

    /// Number of unit current sources, `2^N - 1`.
    pub fn unit_count(&self) -> usize {
        (1usize << self.resolution_bits) - 1
    }

    /// `sigma_u / mean_current`.
    pub fn relative_matching(&self) -> f64 {
        self.sigma_u / self.mean_current
    }
}

/// One manufactured chip: the realized unit currents plus derived quantities.
///
/// `full_scale` is the plain left-to-right sum of the currents and
/// `i_lsb = full_scale / n`, both fixed at construction so every consumer
/// sees identical values.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCurrentVector {
    currents: Vec<f64>,
    i_lsb: f64,
    full_scale: f64,
}

impl UnitCurrentVector {
    pub fn from_currents(currents: Vec<f64>) -> Result<Self> {
        if currents.is_empty() {
            return Err(Error::EmptyCurrents);
        }
        if currents.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCurrent);
        }
        Ok(Self::new_unchecked(currents))
    }

    fn new_unchecked(currents: Vec<f64>) -> Self {
        let full_scale: f64 = currents.iter().sum();
        let i_lsb = full_scale / currents.len() as f64;
        Self {
            currents,
            i_lsb,
            full_scale,
        }
    }

    pub fn currents(&self) -> &[f64] {
        &self.currents
    }

    pub fn len(&self) -> usize {
        self.currents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.currents.is_empty()
    }

    pub fn i_lsb(&self) -> f64 {
        self.i_lsb
    }

    pub fn full_scale(&self) -> f64 {
        self.full_scale
    }
}

/// Per-chip average step size, `(sum of currents) / n`.
pub fn i_lsb(currents: &[f64]) -> Result<f64> {
    if currents.is_empty() {
        return Err(Error::EmptyCurrents);
    }
    if currents.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFiniteCurrent);
    }
    Ok(currents.iter().sum::<f64>() / currents.len() as f64)
}

/// Draw the `n` unit currents of one chip.
///
/// Unit `j` comes from the substream keyed by `(seed, j)` (ziggurat normals on
/// SplitMix64), so the result is a pure function of `(spec, seed)` no matter
/// how the units are evaluated or parallelised. Negative draws are kept: the
/// mismatch model is unconditionally normal.
pub fn sample_unit_currents(spec: &DacSpec, seed: u64) -> UnitCurrentVector {
    let n = spec.unit_count();
    let mut currents = Vec::with_capacity(n);
    for unit in 0..n {
        let mut rng = substream(seed, unit as u64);
        let z: f64 = rng.sample(StandardNormal);
        currents.push(spec.mean_current + spec.sigma_u * z);
    }
    UnitCurrentVector::new_unchecked(currents)
}
