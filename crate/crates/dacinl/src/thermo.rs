//! Thermometer-architecture limit law: the maximal absolute excursion of a
//! Brownian bridge, i.e. Kolmogorov's distribution
//! `P(X <= x) = 1 + 2 sum_{k>=1} (-1)^k exp(-2 k^2 x^2)`.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::mismatch::DacSpec;

/// Below this point the CDF is returned as exactly 0: the true mass there is
/// below 1e-200 and the alternating series is numerically useless.
const LOWER_CUTOFF: f64 = 0.05;

const MAX_TERMS: usize = 1000;

/// The law of `X = max_t |B_t|` for a Brownian bridge `B`.
#[derive(Debug, Clone, Copy)]
pub struct KolmogorovLaw {
    /// Absolute size at which the alternating series is truncated; the
    /// truncation error is bounded by the first omitted term.
    pub series_tolerance: f64,
}

impl Default for KolmogorovLaw {
    fn default() -> Self {
        Self {
            series_tolerance: 1e-16,
        }
    }
}

impl KolmogorovLaw {
    pub fn new(series_tolerance: f64) -> Result<Self> {
        if !series_tolerance.is_finite() || series_tolerance <= 0.0 || series_tolerance > 1e-3 {
            return Err(Error::InvalidTolerance {
                name: "series_tolerance",
                value: series_tolerance,
            });
        }
        Ok(Self { series_tolerance })
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::NegativeArgument {
                name: "x",
                value: x,
            });
        }
        if x < LOWER_CUTOFF {
            return Ok(0.0);
        }
        let mut sum = 0.0;
        let mut sign = -1.0;
        for k in 1..=MAX_TERMS {
            let kk = (k * k) as f64;
            let term = (-2.0 * kk * x * x).exp();
            sum += sign * term;
            sign = -sign;
            if term < self.series_tolerance {
                break;
            }
        }
        let value = 1.0 + 2.0 * sum;
        // below ~1e-12 the series result is pure cancellation noise
        if value < 1e-12 {
            return Ok(0.0);
        }
        Ok(value.clamp(0.0, 1.0))
    }

    /// `E[X] = (sqrt(2 pi) / 2) ln 2`.
    pub fn mean(&self) -> f64 {
        mean_x()
    }

    /// `Var(X) = pi^2 / 12 - (pi / 2) (ln 2)^2`.
    pub fn variance(&self) -> f64 {
        var_x()
    }

    /// Inverse CDF by bisection on `[1e-6, 10]`, stopping when
    /// `|CDF(x) - p| < tol`.
    pub fn quantile(&self, p: f64, tol: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::InvalidTolerance {
                name: "tol",
                value: tol,
            });
        }
        let mut lo = 1e-6;
        let mut hi = 10.0;
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let c = self.cdf(mid)?;
            if (c - p).abs() < tol {
                return Ok(mid);
            }
            if c < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(mid)
    }
}

/// CDF of the Kolmogorov law; `tol` bounds the series truncation error and
/// must lie in `(0, 1e-3]`. The series is in practice truncated at terms
/// below 1e-16, which more than satisfies any permitted `tol`.
pub fn kolmogorov_cdf(x: f64, tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 || tol > 1e-3 {
        return Err(Error::InvalidTolerance {
            name: "tol",
            value: tol,
        });
    }
    KolmogorovLaw::default().cdf(x)
}

/// `E[X] = (sqrt(2 pi) / 2) ln 2 ~= 0.8687312`.
pub fn mean_x() -> f64 {
    (2.0 * PI).sqrt() / 2.0 * LN_2
}

/// `Var(X) = pi^2 / 12 - (pi / 2) (ln 2)^2 ~= 0.0677732`.
pub fn var_x() -> f64 {
    PI * PI / 12.0 - PI / 2.0 * LN_2 * LN_2
}

/// Inverse CDF of the Kolmogorov law.
pub fn quantile_x(p: f64, tol: f64) -> Result<f64> {
    KolmogorovLaw::default().quantile(p, tol)
}

/// Limit yield of a thermometer DAC: the probability that `INL_max` stays
/// below `inl_spec_lsb` (in LSB units), evaluated as
/// `CDF(inl_spec_lsb * mean_current / (sigma_u sqrt(n)))`.
pub fn yield_thermometer(inl_spec_lsb: f64, spec: &DacSpec) -> Result<f64> {
    if spec.sigma_u <= 0.0 {
        return Err(Error::ZeroSigma);
    }
    if inl_spec_lsb.is_nan() || inl_spec_lsb <= 0.0 {
        return Err(Error::NegativeArgument {
            name: "inl_spec_lsb",
            value: inl_spec_lsb,
        });
    }
    let n = spec.unit_count() as f64;
    let x = inl_spec_lsb * spec.mean_current / (spec.sigma_u * n.sqrt());
    KolmogorovLaw::default().cdf(x)
}
