//! Sample summaries, empirical quantiles, two-sample Kolmogorov–Smirnov
//! tests, and binomial confidence intervals.

use crate::error::{Error, Result};
use crate::thermo::KolmogorovLaw;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance; `None` for fewer than two samples.
pub fn sample_variance(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some(ss / (xs.len() - 1) as f64)
}

/// Asymptotic standard error of the sample variance,
/// `sqrt((m4 - m2^2) / n)` with biased central moments (so the radicand is
/// non-negative for every sample).
pub fn variance_standard_error(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let n = xs.len() as f64;
    let m2: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n;
    let m4: f64 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    Some(((m4 - m2 * m2).max(0.0) / n).sqrt())
}

/// Linear-interpolation quantile of a sorted sample.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty() && (0.0..=1.0).contains(&p));
    if sorted.len() == 1 {
        return sorted[0];
    }
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Two-sample Kolmogorov–Smirnov statistic; both inputs must be sorted.
/// Ties are handled by advancing both samples through each distinct value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic p-value for the two-sample statistic via the Kolmogorov law:
/// `p = 1 - K(sqrt(n_a n_b / (n_a + n_b)) d)`.
pub fn ks_p_value(statistic: f64, n_a: usize, n_b: usize) -> Result<f64> {
    if n_a == 0 || n_b == 0 {
        return Err(Error::NoTrials);
    }
    let ne = (n_a as f64 * n_b as f64) / (n_a + n_b) as f64;
    let k = KolmogorovLaw::default().cdf(ne.sqrt() * statistic)?;
    Ok(1.0 - k)
}

/// Wilson score interval for a binomial proportion at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // endpoints are exact at the degenerate corners
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}
