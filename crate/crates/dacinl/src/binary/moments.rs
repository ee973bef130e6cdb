//! Closed-form moment machinery for the binary limit law
//! `M = (1/2) sum_l |N_l|`, where `N_l` is the l-th dyadic block increment of
//! a Brownian bridge with variance `v_l = 2^-l - 2^-2l`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.5066282746310002;

/// `v_l = 2^-l - 2^-2l`, the variance of the l-th block increment.
pub fn block_variance(level: u32) -> Result<f64> {
    if level < 1 {
        return Err(Error::OrderTooSmall {
            name: "level",
            min: 1,
            got: level as usize,
        });
    }
    let l = level as f64;
    Ok((-l).exp2() - (-2.0 * l).exp2())
}

/// Correlation of two distinct block increments:
/// `rho_lk = -2^-(l+k) / sqrt(v_l v_k)`, always in (-1, 0).
pub fn rho(l: u32, k: u32) -> Result<f64> {
    if l == k {
        return Err(Error::EqualBlockIndices);
    }
    let vl = block_variance(l)?;
    let vk = block_variance(k)?;
    Ok(-(-((l + k) as f64)).exp2() / (vl.sqrt() * vk.sqrt()))
}

/// `E[|Y1||Y2|]` for standard bivariate normals with correlation `rho`:
/// `(2/pi) (sqrt(1 - rho^2) + rho asin(rho))`.
pub fn abs_product_mean(rho: f64) -> Result<f64> {
    if !rho.is_finite() || rho.abs() > 1.0 {
        return Err(Error::InvalidCorrelation(rho));
    }
    Ok(2.0 / PI * ((1.0 - rho * rho).sqrt() + rho * rho.asin()))
}

/// `E[M] = (2 pi)^{-1/2} sum_l sqrt(v_l)`, summed until the geometric tail
/// bound `sum_{l>L} 2^{-l/2} / sqrt(2 pi)` drops below `tol`.
pub fn mean_m(tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidTolerance {
            name: "tol",
            value: tol,
        });
    }
    let tail_factor = 1.0 / (1.0 - FRAC_1_SQRT_2);
    let mut acc = 0.0;
    for level in 1..=2200u32 {
        acc += block_variance(level)?.sqrt();
        let tail = (-((level + 1) as f64) / 2.0).exp2() * tail_factor / SQRT_2PI;
        if tail < tol {
            break;
        }
    }
    Ok(acc / SQRT_2PI)
}

/// `Var(M)`: the exact diagonal `(1/6)(1 - 2/pi)` plus the truncated double
/// sum `(1/pi) sum_{l<k<=L} sqrt(v_l v_k) (sqrt(1-rho^2) - 1 + rho asin rho)`.
pub fn var_m(l_max: u32) -> Result<f64> {
    if l_max < 2 {
        return Err(Error::OrderTooSmall {
            name: "l_max",
            min: 2,
            got: l_max as usize,
        });
    }
    let diagonal = (1.0 - 2.0 / PI) / 6.0;
    let sqrt_v: Vec<f64> = (1..=l_max)
        .map(|l| block_variance(l).map(f64::sqrt))
        .collect::<Result<_>>()?;
    let mut off = 0.0;
    for l in 1..=l_max {
        for k in (l + 1)..=l_max {
            let r = rho(l, k)?;
            let term = (1.0 - r * r).sqrt() - 1.0 + r * r.asin();
            off += sqrt_v[(l - 1) as usize] * sqrt_v[(k - 1) as usize] * term;
        }
    }
    Ok(off / PI + diagonal)
}
