//! Dyadic sampling of the Brownian bridge and the series sampler for the
//! binary limit law.
//!
//! The bridge values at `t = 2^-l` follow the midpoint recursion
//! `B(2^-l) = B(2^-(l-1)) / 2 + 2^{-(l+1)/2} Z_l` starting from `B(1) = 0`,
//! so the block increments `N_l = B(2^-(l-1)) - B(2^-l)` carry variance
//! `v_l = 2^-l - 2^-2l` and covariance `-2^-(l+k)`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default truncation depth for samplers. The omitted tail contributes less
/// than `sum_{l>40} 2^{-l/2} / sqrt(2 pi) < 3e-7` to the mean of `M`.
pub const DEFAULT_LEVELS: usize = 40;

/// Brownian bridge evaluated at the dyadic points `2^-1, ..., 2^-depth`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicBridge {
    values: Vec<f64>,
}

impl DyadicBridge {
    pub fn depth(&self) -> usize {
        self.values.len()
    }

    /// Bridge values; entry `l - 1` is `B(2^-l)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `B(2^-level)` for `level` in `1..=depth`.
    pub fn value(&self, level: usize) -> f64 {
        self.values[level - 1]
    }

    /// Block increments `N_l = B(2^-(l-1)) - B(2^-l)` with `B(1) = 0`.
    pub fn increments(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.values
            .iter()
            .map(|&v| {
                let inc = prev - v;
                prev = v;
                inc
            })
            .collect()
    }

    /// `(1/2) sum_l |N_l|` — the truncated limit statistic.
    pub fn half_abs_increment_sum(&self) -> f64 {
        let mut prev = 0.0;
        let mut acc = 0.0;
        for &v in &self.values {
            acc += (prev - v).abs();
            prev = v;
        }
        0.5 * acc
    }
}

/// Build a dyadic bridge from explicitly supplied standard normals.
pub fn dyadic_bridge_from_normals(normals: &[f64]) -> DyadicBridge {
    let mut values = Vec::with_capacity(normals.len());
    let mut b = 0.0;
    for (l, &z) in normals.iter().enumerate() {
        let scale = (-((l + 2) as f64) / 2.0).exp2();
        b = 0.5 * b + scale * z;
        values.push(b);
    }
    DyadicBridge { values }
}

/// Sample a dyadic bridge down to `2^-depth`.
pub fn dyadic_bridge<R: Rng + ?Sized>(depth: usize, rng: &mut R) -> Result<DyadicBridge> {
    if depth == 0 {
        return Err(Error::OrderTooSmall {
            name: "depth",
            min: 1,
            got: 0,
        });
    }
    let normals: Vec<f64> = (0..depth).map(|_| rng.sample(StandardNormal)).collect();
    Ok(dyadic_bridge_from_normals(&normals))
}

/// Evaluate the truncated series for `M` from explicit normals:
/// `M = (1/2) sum_l 2^{-(l+1)/2} |Q_l - Z_l|` with
/// `Q_1 = 0` and `Q_{l+1} = (Q_l + Z_l) / sqrt(2)`.
///
/// Each term equals `|N_l|` of the dyadic bridge built from the same normals,
/// and the inner sum is maintained incrementally so one draw costs O(levels).
pub fn sample_m_from_normals(normals: &[f64]) -> f64 {
    let mut q = 0.0;
    let mut acc = 0.0;
    for (l, &z) in normals.iter().enumerate() {
        let scale = (-((l + 2) as f64) / 2.0).exp2();
        acc += scale * (q - z).abs();
        q = (q + z) * std::f64::consts::FRAC_1_SQRT_2;
    }
    0.5 * acc
}

/// One draw of the truncated limit statistic `M`.
pub fn sample_m<R: Rng + ?Sized>(levels: usize, rng: &mut R) -> Result<f64> {
    if levels == 0 {
        return Err(Error::OrderTooSmall {
            name: "levels",
            min: 1,
            got: 0,
        });
    }
    let mut q = 0.0;
    let mut acc = 0.0;
    for l in 0..levels {
        let z: f64 = rng.sample(StandardNormal);
        let scale = (-((l + 2) as f64) / 2.0).exp2();
        acc += scale * (q - z).abs();
        q = (q + z) * std::f64::consts::FRAC_1_SQRT_2;
    }
    Ok(0.5 * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::moments::{block_variance, mean_m, var_m};
    use crate::rng::substream;
    use approx::assert_relative_eq;

    #[test]
    fn zero_noise_gives_zero() {
        assert_eq!(sample_m_from_normals(&[0.0; 10]), 0.0);
        let bridge = dyadic_bridge_from_normals(&[0.0; 10]);
        assert!(bridge.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_level_is_quarter_abs_z() {
        for z in [-1.3, 0.4, 2.2] {
            assert_relative_eq!(sample_m_from_normals(&[z]), z.abs() / 4.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn first_dyadic_value_is_half_z() {
        let bridge = dyadic_bridge_from_normals(&[1.7]);
        assert_eq!(bridge.value(1), 0.5 * 1.7);
    }

    #[test]
    fn series_and_bridge_increments_agree_pathwise() {
        let mut rng = substream(99, 0);
        let normals: Vec<f64> = (0..40).map(|_| rng.sample(rand_distr::StandardNormal)).collect();
        let bridge = dyadic_bridge_from_normals(&normals);
        assert_relative_eq!(
            sample_m_from_normals(&normals),
            bridge.half_abs_increment_sum(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn zero_depth_is_rejected() {
        let mut rng = substream(1, 1);
        assert!(dyadic_bridge(0, &mut rng).is_err());
        assert!(sample_m(0, &mut rng).is_err());
    }

    #[test]
    fn dyadic_variance_matches_bridge_variance() {
        let draws = 1_000_000usize;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for i in 0..draws {
            let mut rng = substream(17, i as u64);
            let b = dyadic_bridge(2, &mut rng).unwrap();
            let v = b.value(2);
            sum += v;
            sum2 += v * v;
        }
        let mean = sum / draws as f64;
        let var = sum2 / draws as f64 - mean * mean;
        let v2 = block_variance(2).unwrap();
        let se = v2 * (2.0 / draws as f64).sqrt();
        assert!(
            (var - v2).abs() < 3.0 * se,
            "Var(B(1/4)) = {var}, expected {v2}"
        );
    }

    #[test]
    fn increment_covariances_match_the_formula() {
        let draws = 1_000_000usize;
        let mut acc = [[0.0f64; 3]; 3];
        for i in 0..draws {
            let mut rng = substream(23, i as u64);
            let incs = dyadic_bridge(3, &mut rng).unwrap().increments();
            for a in 0..3 {
                for b in 0..3 {
                    acc[a][b] += incs[a] * incs[b];
                }
            }
        }
        for (l, k) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let cov = acc[l - 1][k - 1] / draws as f64;
            let expected = -(-((l + k) as f64)).exp2();
            let vl = block_variance(l as u32).unwrap();
            let vk = block_variance(k as u32).unwrap();
            let se = ((vl * vk + expected * expected) / draws as f64).sqrt();
            assert!(
                (cov - expected).abs() < 4.0 * se,
                "Cov(N_{l}, N_{k}) = {cov}, expected {expected}"
            );
        }
    }

    #[test]
    fn sample_moments_match_the_series_moments() {
        let draws = 1_000_000usize;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for i in 0..draws {
            let mut rng = substream(31, i as u64);
            let m = sample_m(DEFAULT_LEVELS, &mut rng).unwrap();
            sum += m;
            sum2 += m * m;
        }
        let mean = sum / draws as f64;
        let var = sum2 / draws as f64 - mean * mean;
        let mean_ref = mean_m(1e-9).unwrap();
        let var_ref = var_m(60).unwrap();
        let se_mean = (var_ref / draws as f64).sqrt();
        assert!(
            (mean - mean_ref).abs() < 4.0 * se_mean,
            "sample mean {mean} vs {mean_ref}"
        );
        // kurtosis-based SE bound: Var(s^2) <= E[M^4]/draws; M is light-tailed
        let se_var = var_ref * (8.0 / draws as f64).sqrt();
        assert!(
            (var - var_ref).abs() < 4.0 * se_var,
            "sample variance {var} vs {var_ref}"
        );
    }

    #[test]
    fn truncation_tail_is_bounded() {
        // common random numbers: extend each path from L to 2L levels
        const SQRT_2PI: f64 = 2.5066282746310002;
        for levels in [10usize, 20] {
            let draws = 200_000usize;
            let mut gap_sum = 0.0;
            for i in 0..draws {
                let mut rng = substream(47, i as u64);
                let normals: Vec<f64> = (0..2 * levels)
                    .map(|_| rng.sample(rand_distr::StandardNormal))
                    .collect();
                let short = sample_m_from_normals(&normals[..levels]);
                let long = sample_m_from_normals(&normals);
                gap_sum += long - short;
            }
            let gap = (gap_sum / draws as f64).abs();
            let bound: f64 = ((levels + 1) as u32..=(levels as u32 + 400))
                .map(|l| block_variance(l).unwrap().sqrt() / SQRT_2PI)
                .sum();
            assert!(
                gap < bound,
                "L={levels}: mean gap {gap} exceeds tail bound {bound}"
            );
        }
    }
}
