//! Densities of the truncated statistic `M^(m) = (1/2)(|N_1| + ... + |N_m|)`.
//!
//! The quadrature route integrates the joint density of `(|N_1|, ..., |N_m|)`
//! over the simplex `{n_i >= 0, sum n_i = 2y}`; the Monte Carlo route is a
//! reflected Gaussian kernel estimate over draws of the truncated series.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::binary::bridge::sample_m;
use crate::binary::covariance::{det_cov, inv_cov};
use crate::error::{Error, Result};
use crate::quad;
use crate::rng::substream;

/// Above this order the nested quadrature cost explodes; use [`density_m_mc`].
pub const MAX_QUAD_ORDER: usize = 5;

/// Closed-form density of `M^(1)`: `4 sqrt(2/pi) exp(-8 y^2)`.
pub fn density_m1(y: f64) -> f64 {
    4.0 * (2.0 / PI).sqrt() * (-8.0 * y * y).exp()
}

struct SimplexDensity {
    sigma_inv: DMatrix<f64>,
    normalizer: f64,
    order: usize,
    axis_tol: f64,
}

impl SimplexDensity {
    /// Joint density of the componentwise absolute values: the sum of the
    /// multivariate normal density over all 2^m sign assignments.
    fn abs_joint(&self, point: &[f64]) -> f64 {
        let m = self.order;
        let mut total = 0.0;
        let mut signed = [0.0f64; MAX_QUAD_ORDER];
        for mask in 0u32..(1u32 << m) {
            for (i, &p) in point.iter().enumerate() {
                signed[i] = if (mask >> i) & 1 == 1 { -p } else { p };
            }
            let mut quad_form = 0.0;
            for (row, &sr) in signed.iter().enumerate().take(m) {
                let mut inner = 0.0;
                for (col, &sc) in signed.iter().enumerate().take(m) {
                    inner += self.sigma_inv[(row, col)] * sc;
                }
                quad_form += sr * inner;
            }
            total += (-0.5 * quad_form).exp();
        }
        total * self.normalizer
    }

    /// Integrate the remaining axes; `point[..filled]` is fixed and `budget`
    /// is what is left of `2y`.
    fn nested(&self, point: [f64; MAX_QUAD_ORDER], filled: usize, budget: f64, axes_left: usize) -> f64 {
        if axes_left == 0 {
            let mut point = point;
            point[filled] = budget;
            return self.abs_joint(&point[..=filled]);
        }
        quad::integrate(
            |x| {
                let mut point = point;
                point[filled] = x;
                self.nested(point, filled + 1, budget - x, axes_left - 1)
            },
            0.0,
            budget,
            self.axis_tol,
        )
    }
}

/// Density of `M^(m)` at `y` by nested adaptive quadrature (`m <= 5`);
/// `m = 1` evaluates the closed form directly.
pub fn density_mm(y: f64, order: usize, quad_tol: f64) -> Result<f64> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::NegativeArgument { name: "y", value: y });
    }
    if order < 1 {
        return Err(Error::OrderTooSmall {
            name: "order",
            min: 1,
            got: order,
        });
    }
    if order > MAX_QUAD_ORDER {
        return Err(Error::OrderTooLarge {
            name: "order",
            got: order,
            max: MAX_QUAD_ORDER,
            hint: "use the Monte Carlo density for larger truncations",
        });
    }
    if !quad_tol.is_finite() || quad_tol <= 0.0 {
        return Err(Error::InvalidTolerance {
            name: "quad_tol",
            value: quad_tol,
        });
    }
    if order == 1 {
        return Ok(density_m1(y));
    }
    let det = det_cov(order)?;
    let ctx = SimplexDensity {
        sigma_inv: inv_cov(order)?,
        normalizer: 1.0 / ((2.0 * PI).powf(order as f64 / 2.0) * det.sqrt()),
        order,
        axis_tol: quad_tol / order as f64,
    };
    Ok(2.0 * ctx.nested([0.0; MAX_QUAD_ORDER], 0, 2.0 * y, order - 1))
}

/// Evaluation grid `min, min + step, ..., <= max`.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite() && self.step.is_finite())
            || self.step <= 0.0
            || self.max < self.min
            || self.min < 0.0
        {
            return Err(Error::InvalidGrid(format!(
                "grid [{}, {}] step {} is not usable",
                self.min, self.max, self.step
            )));
        }
        let count = ((self.max - self.min) / self.step).floor() as usize + 1;
        Ok((0..count).map(|i| self.min + i as f64 * self.step).collect())
    }
}

/// Kernel density estimate of `M^(levels)` on a grid from `samples` draws of
/// the truncated series, using a Gaussian kernel of width `bandwidth`
/// reflected at zero (so the estimate keeps its mass on `[0, inf)`).
pub fn density_m_mc(
    levels: usize,
    samples: usize,
    bandwidth: f64,
    grid: GridSpec,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    if levels == 0 {
        return Err(Error::OrderTooSmall {
            name: "levels",
            min: 1,
            got: 0,
        });
    }
    if samples < 10_000 {
        return Err(Error::OrderTooSmall {
            name: "samples",
            min: 10_000,
            got: samples,
        });
    }
    if !bandwidth.is_finite() || bandwidth <= 0.0 {
        return Err(Error::DegenerateBandwidth(bandwidth));
    }
    let points = grid.points()?;

    // Bin the draws first; evaluating the kernel per (sample, grid point)
    // would cost samples * grid evaluations.
    let bin_width = bandwidth / 4.0;
    let mut bins: Vec<u32> = Vec::new();
    let mut max_draw = 0.0f64;
    for i in 0..samples {
        let mut rng = substream(seed, i as u64);
        let draw = sample_m(levels, &mut rng)?;
        max_draw = max_draw.max(draw);
        let idx = (draw / bin_width) as usize;
        if idx >= bins.len() {
            bins.resize(idx + 1, 0);
        }
        bins[idx] += 1;
    }

    let window = (8.0 * bandwidth / bin_width).ceil() as isize;
    let norm = 1.0 / (samples as f64 * bandwidth * (2.0 * PI).sqrt());
    let kernel = |u: f64| (-0.5 * u * u).exp();
    let estimate: Vec<(f64, f64)> = points
        .iter()
        .map(|&y| {
            let center = (y / bin_width) as isize;
            let lo = (center - window).max(0) as usize;
            let hi = ((center + window) as usize).min(bins.len().saturating_sub(1));
            let mut acc = 0.0;
            for (idx, &count) in bins.iter().enumerate().take(hi + 1).skip(lo) {
                if count == 0 {
                    continue;
                }
                let x = (idx as f64 + 0.5) * bin_width;
                let direct = kernel((y - x) / bandwidth);
                let reflected = kernel((y + x) / bandwidth);
                acc += count as f64 * (direct + reflected);
            }
            (y, acc * norm)
        })
        .collect();
    Ok(estimate)
}
