//! Binary-architecture limit law `M`: series representation, moments,
//! covariance structure, truncated densities, dyadic bridge sampler, and the
//! half-normal characteristic function.

mod bridge;
mod charfn;
mod covariance;
mod density;
mod moments;

pub use bridge::{
    dyadic_bridge, dyadic_bridge_from_normals, sample_m, sample_m_from_normals, DyadicBridge,
    DEFAULT_LEVELS,
};
pub use charfn::{dawson, half_normal_cf, MAX_FREQUENCY};
pub use covariance::{cov_matrix, det_cov, inv_cov, triangular_factor, MAX_COV_ORDER};
pub use density::{density_m1, density_m_mc, density_mm, GridSpec, MAX_QUAD_ORDER};
pub use moments::{abs_product_mean, block_variance, mean_m, rho, var_m};

use crate::error::{Error, Result};
use crate::mismatch::DacSpec;
use crate::montecarlo::YieldEstimate;
use crate::rng::substream;
use crate::stats::wilson_interval;

/// Limit yield of a binary DAC: `P(M <= inl_spec_lsb * mean / (sigma sqrt(n)))`
/// estimated from `samples` draws of the truncated series (no closed-form CDF
/// is available), with a 95% Wilson interval.
pub fn yield_binary(
    inl_spec_lsb: f64,
    spec: &DacSpec,
    samples: usize,
    levels: usize,
    seed: u64,
) -> Result<YieldEstimate> {
    if spec.sigma_u <= 0.0 {
        return Err(Error::ZeroSigma);
    }
    if inl_spec_lsb.is_nan() || inl_spec_lsb <= 0.0 {
        return Err(Error::NegativeArgument {
            name: "inl_spec_lsb",
            value: inl_spec_lsb,
        });
    }
    if samples == 0 {
        return Err(Error::NoTrials);
    }
    let n = spec.unit_count() as f64;
    let threshold = inl_spec_lsb * spec.mean_current / (spec.sigma_u * n.sqrt());
    let mut hits = 0u64;
    for i in 0..samples {
        let mut rng = substream(seed, i as u64);
        if sample_m(levels, &mut rng)? <= threshold {
            hits += 1;
        }
    }
    let probability = hits as f64 / samples as f64;
    let (ci_low, ci_high) = wilson_interval(hits, samples as u64, 1.959963984540054);
    Ok(YieldEstimate {
        threshold_lsb: inl_spec_lsb,
        probability,
        ci_low,
        ci_high,
    })
}
