//! Acceptance suite: one test per release criterion, each printing a single
//! PASS/FAIL line with the measured numbers.
//!
//! Reference values marked "oracle" were computed independently of this
//! crate (30-digit series evaluation, exact Gaussian moment sums, or a
//! separate high-trial simulation) and are frozen here. Monte Carlo criteria
//! compare against the exact finite-resolution expectation where one exists;
//! the gap between finite resolution and the limit law is itself checked
//! against the theoretical envelopes (criterion 13 measures its decay rate).

// reference constants keep their oracle digits
#![allow(clippy::excessive_precision)]

use dacinl::binary::{
    block_variance, cov_matrix, density_m_mc, density_mm, det_cov, dyadic_bridge, half_normal_cf,
    inv_cov, mean_m, sample_m, var_m, GridSpec,
};
use dacinl::montecarlo::{
    binary_envelope_constant, compare_architectures, convergence_binary, convergence_thermo,
    run_trials, TrialConfig,
};
use dacinl::rng::substream;
use dacinl::stats::{ks_p_value, ks_two_sample, variance_standard_error};
use dacinl::thermo::{mean_x, var_x, KolmogorovLaw};
use dacinl::{quad, Architecture, DacSpec};

use std::process::Command;

/// 30-digit evaluation of (sqrt(2 pi)/2) ln 2.
const MEAN_X_ORACLE: f64 = 0.86873116063615914;
/// 30-digit evaluation of pi^2/12 - (pi/2)(ln 2)^2.
const VAR_X_ORACLE: f64 = 0.067773203963865079;
/// 30-digit series evaluation of (2 pi)^{-1/2} sum sqrt(2^-l - 2^-2l).
const MEAN_M_ORACLE: f64 = 0.83979228142131630;
/// 30-digit evaluation of the variance double sum at L = 60.
const VAR_M_60_ORACLE: f64 = 0.080066019696697386;
/// Exact mean of the N = 12 binary statistic:
/// (2 pi)^{-1/2} sum_m sqrt(d_m (1 - d_m)), d_m = 2^{m-1} / 4095.
const MEAN_M12_EXACT: f64 = 0.824809556385;
/// Mean of the discrete bridge |max| on 1023 grid points, from an
/// independent 2e6-trial bridge-path simulation (se 1.9e-4).
const MEAN_X1023_ORACLE: f64 = 0.850550;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_01_closed_form_moments_of_x() {
    let mean = mean_x();
    let var = var_x();
    // Independent quadrature route over the series CDF.
    let law = KolmogorovLaw::default();
    let mean_quad = quad::integrate(|x| 1.0 - law.cdf(x).unwrap(), 0.0, 10.0, 1e-9);
    let pass = (mean - MEAN_X_ORACLE).abs() < 5e-6
        && (mean - mean_quad).abs() < 5e-6
        && (var - 0.0677732).abs() < 5e-8
        && (var - VAR_X_ORACLE).abs() < 5e-8;
    report(
        "01 moments of X",
        pass,
        &format!("mean_X = {mean:.10} (oracle {MEAN_X_ORACLE:.10}, quadrature {mean_quad:.10}), var_X = {var:.10}"),
    );
}

#[test]
fn criterion_02_series_mean_of_m() {
    let mean = mean_m(1e-8).unwrap();
    let pass = (mean - 0.839792).abs() < 1e-6 && (mean - MEAN_M_ORACLE).abs() < 1e-7;
    report(
        "02 series mean of M",
        pass,
        &format!("mean_M(1e-8) = {mean:.9} vs 0.839792 ± 1e-6"),
    );
}

#[test]
fn criterion_03_variance_double_sum() {
    let start = std::time::Instant::now();
    let var = var_m(60).unwrap();
    let elapsed = start.elapsed();
    let pass = (var - 0.080066).abs() < 1e-5
        && (var - VAR_M_60_ORACLE).abs() < 1e-8
        && elapsed.as_secs_f64() < 1.0;
    report(
        "03 variance of M",
        pass,
        &format!("var_M(60) = {var:.9} vs 0.080066 ± 1e-5 in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_04_determinant_identity() {
    let mut worst = 0.0f64;
    for m in 1..=10 {
        let closed = (2.0f64).powf(-(m as f64) * (m as f64 + 3.0) / 2.0);
        let numeric = cov_matrix(m).unwrap().determinant();
        worst = worst.max(((numeric - closed) / closed).abs());
        assert_eq!(det_cov(m).unwrap(), closed);
    }
    report(
        "04 determinant of Sigma",
        worst < 1e-10,
        &format!("max relative deviation over m = 1..10 is {worst:.2e}"),
    );
}

#[test]
fn criterion_05_inverse_consistency() {
    let mut worst = 0.0f64;
    for m in 1..=10 {
        let sigma = cov_matrix(m).unwrap();
        let inv = inv_cov(m).unwrap();
        let product = sigma * &inv;
        for i in 0..m {
            for j in 0..m {
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((product[(i, j)] - expected).abs());
            }
        }
    }
    let inv2 = inv_cov(2).unwrap();
    let hand = [[6.0, 4.0], [4.0, 8.0]];
    let mut hand_worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            hand_worst = hand_worst.max((inv2[(i, j)] - hand[i][j]).abs());
        }
    }
    report(
        "05 inverse of Sigma",
        worst < 1e-10 && hand_worst < 1e-12,
        &format!("max |Sigma Sigma^-1 - I| = {worst:.2e}; inv_cov(2) vs [[6,4],[4,8]] off by {hand_worst:.2e}"),
    );
}

#[test]
fn criterion_06_thermometer_monte_carlo() {
    let start = std::time::Instant::now();
    let config = TrialConfig {
        spec: DacSpec::new(10, 1.0, 0.02).unwrap(),
        architecture: Architecture::Thermometer,
        trials: 20_000,
        seed: 61,
        workers: 1,
    };
    let summary = run_trials(&config).unwrap();
    let elapsed = start.elapsed();
    let se = summary.standard_error_mean.unwrap();
    let variance = summary.variance.unwrap();
    let se_var = variance_standard_error(&summary.samples).unwrap();

    // mean against the finite-n reference, which itself must sit inside the
    // discretization envelope 4 sqrt(ln n / n) of the limit mean
    let n = 1023.0f64;
    let envelope = 4.0 * (n.ln() / n).sqrt();
    let mean_ok = (summary.mean - MEAN_X1023_ORACLE).abs() < 3.0 * se;
    let limit_ok = (summary.mean - mean_x()).abs() < envelope;
    let var_ok = (variance - 0.0677732).abs() < 4.0 * se_var;
    let time_ok = elapsed.as_secs_f64() < 30.0;
    report(
        "06 thermometer MC",
        mean_ok && limit_ok && var_ok && time_ok,
        &format!(
            "mean {:.6} vs finite-n oracle {MEAN_X1023_ORACLE} (3se = {:.6}), gap to limit {:.6} < {envelope:.4}, var {variance:.6} vs 0.0677732 (4se = {:.6}), {elapsed:.2?}",
            summary.mean,
            3.0 * se,
            (summary.mean - mean_x()).abs(),
            4.0 * se_var
        ),
    );
}

#[test]
fn criterion_07_binary_monte_carlo() {
    let start = std::time::Instant::now();
    let config = TrialConfig {
        spec: DacSpec::new(12, 1.0, 0.02).unwrap(),
        architecture: Architecture::Binary,
        trials: 20_000,
        seed: 71,
        workers: 1,
    };
    let summary = run_trials(&config).unwrap();
    let elapsed = start.elapsed();
    let se = summary.standard_error_mean.unwrap();

    // exact finite-resolution reference, plus the series tail bound linking
    // it to the limit mean
    let mean_ok = (summary.mean - MEAN_M12_EXACT).abs() < 3.0 * se;
    let tail_bound: f64 = (13u32..=400)
        .map(|l| block_variance(l).unwrap().sqrt() / (2.0 * std::f64::consts::PI).sqrt())
        .sum();
    let limit_ok = (summary.mean - mean_m(1e-8).unwrap()).abs() < tail_bound + 3.0 * se;
    let time_ok = elapsed.as_secs_f64() < 60.0;
    report(
        "07 binary MC",
        mean_ok && limit_ok && time_ok,
        &format!(
            "mean {:.6} vs exact E[M_12] = {MEAN_M12_EXACT} (3se = {:.6}), gap to limit {:.6} <= tail {tail_bound:.6} + 3se, {elapsed:.2?}",
            summary.mean,
            3.0 * se,
            (summary.mean - mean_m(1e-8).unwrap()).abs()
        ),
    );
}

#[test]
fn criterion_08_representation_equivalence() {
    let count = 100_000usize;
    let mut from_bridge: Vec<f64> = (0..count)
        .map(|i| {
            let mut rng = substream(81, i as u64);
            dyadic_bridge(40, &mut rng).unwrap().half_abs_increment_sum()
        })
        .collect();
    let mut from_series: Vec<f64> = (0..count)
        .map(|i| {
            let mut rng = substream(82, i as u64);
            sample_m(40, &mut rng).unwrap()
        })
        .collect();
    from_bridge.sort_by(|a, b| a.partial_cmp(b).unwrap());
    from_series.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let d = ks_two_sample(&from_bridge, &from_series);
    let p = ks_p_value(d, count, count).unwrap();
    report(
        "08 representation equivalence",
        p > 0.01,
        &format!("two-sample KS D = {d:.5}, p = {p:.4} (1e5 vs 1e5 draws at L = 40)"),
    );
}

#[test]
fn criterion_09_architecture_separation() {
    let spec = DacSpec::new(12, 1.0, 0.02).unwrap();
    let report_cmp = compare_architectures(
        &spec,
        Architecture::Thermometer,
        &spec,
        Architecture::Binary,
        50_000,
        91,
        4,
    )
    .unwrap();
    let diff = report_cmp.mean_difference;
    let se = report_cmp.combined_se;
    report(
        "09 architecture separation",
        diff > 0.0 && diff > 3.0 * se,
        &format!(
            "thermometer - binary mean difference = {diff:.5} ({:.1} combined se; thermo {:.5}, binary {:.5})",
            diff / se,
            report_cmp.a.mean,
            report_cmp.b.mean
        ),
    );
}

#[test]
fn criterion_10_density_of_truncated_m() {
    // m = 1: quadrature entry point matches the closed form
    let mut worst_m1 = 0.0f64;
    for y in [0.0f64, 0.2, 0.5, 1.0] {
        let closed = 4.0 * (2.0 / std::f64::consts::PI).sqrt() * (-8.0 * y * y).exp();
        worst_m1 = worst_m1.max((density_mm(y, 1, 1e-8).unwrap() - closed).abs());
    }
    let m1_ok = worst_m1 < 1e-10;

    // m = 2..4: normalization and sup-distance to a 1e6-sample KDE. The
    // comparison grid starts 4 bandwidths above zero: the reflected kernel
    // carries O(h) bias inside that boundary layer for densities that vanish
    // at the origin, which is an estimator property, not a density error
    // (the y = 0 values are checked exactly against the degenerate simplex).
    let mut detail = format!("m=1 closed-form gap {worst_m1:.1e}");
    let mut all_ok = m1_ok;
    for m in 2..=4usize {
        let mass = quad::integrate(|y| density_mm(y, m, 1e-7).unwrap(), 0.0, 4.0, 1e-5);
        assert_eq!(density_mm(0.0, m, 1e-7).unwrap(), 0.0);
        let grid = GridSpec {
            min: 0.04,
            max: 2.2,
            step: 0.02,
        };
        let kde = density_m_mc(m, 1_000_000, 0.01, grid, 100 + m as u64).unwrap();
        let sup = kde
            .iter()
            .map(|&(y, f)| (f - density_mm(y, m, 1e-7).unwrap()).abs())
            .fold(0.0f64, f64::max);
        let ok = (mass - 1.0).abs() < 1e-3 && sup < 0.05;
        all_ok &= ok;
        detail.push_str(&format!("; m={m}: mass {mass:.5}, sup gap {sup:.4}"));
    }
    report("10 density of M^(m)", all_ok, &detail);
}

#[test]
fn criterion_11_half_normal_characteristic_function() {
    let at_zero = half_normal_cf(0.0).unwrap();
    let zero_ok = at_zero.re == 0.5 && at_zero.im == 0.0;

    let mut worst_quad = 0.0f64;
    for k in [0.5, 1.0, 2.0, 4.0] {
        let h = half_normal_cf(k).unwrap();
        let re_ref = quad::integrate(
            |z| (k * z).cos() * (-0.5 * z * z).exp(),
            0.0,
            12.0,
            1e-13,
        ) / (2.0 * std::f64::consts::PI).sqrt();
        let im_ref = quad::integrate(|x| ((x * x - k * k) / 2.0).exp(), 0.0, k, 1e-13)
            / (2.0 * std::f64::consts::PI).sqrt();
        worst_quad = worst_quad.max((h.re - re_ref).abs().max((h.im - im_ref).abs()));
    }

    let mut worst_sym = 0.0f64;
    for k in [0.25, 0.5, 1.0, 2.0, 4.0, 10.0, 30.0] {
        let total = half_normal_cf(k).unwrap() + half_normal_cf(-k).unwrap();
        worst_sym = worst_sym.max((total.re - (-0.5 * k * k).exp()).abs().max(total.im.abs()));
    }
    report(
        "11 half-normal characteristic function",
        zero_ok && worst_quad < 1e-8 && worst_sym < 1e-12,
        &format!("h(0) exact, quadrature gap {worst_quad:.1e}, symmetry gap {worst_sym:.1e}"),
    );
}

#[test]
fn criterion_12_segmented_endpoints() {
    let spec = DacSpec::new(8, 1.0, 0.02).unwrap();
    let units = dacinl::sample_unit_currents(&spec, 121);
    let binary = dacinl::transfer(Architecture::Binary, &units).unwrap();
    let thermo = dacinl::transfer(Architecture::Thermometer, &units).unwrap();
    let s0 = dacinl::transfer(Architecture::Segmented { segmentation: 0 }, &units).unwrap();
    let s8 = dacinl::transfer(Architecture::Segmented { segmentation: 8 }, &units).unwrap();
    let mut worst = 0.0f64;
    for k in 1..=units.len() {
        let rel_b = ((s0.outputs[k] - binary.outputs[k]) / binary.outputs[k]).abs();
        let rel_t = ((s8.outputs[k] - thermo.outputs[k]) / thermo.outputs[k]).abs();
        worst = worst.max(rel_b.max(rel_t));
    }
    report(
        "12 segmented endpoints",
        worst < 1e-12,
        &format!("worst relative deviation per code {worst:.2e} (S=0 vs binary, S=8 vs thermometer)"),
    );
}

#[test]
fn criterion_13_convergence_rates() {
    let grid: Vec<u64> = (6..=14).map(|e| 1u64 << e).collect();
    let thermo = convergence_thermo(&grid, 300, 131, 1 << 20, 4).unwrap();
    let slope = thermo.fitted_slope().unwrap();
    let slope_ok = (slope - (-0.5)).abs() < 0.1;

    let bits: Vec<u32> = (8..=16).collect();
    let binary = convergence_binary(&bits, 2000, 132, 0.1, 40, 4).unwrap();
    let envelope_ok = binary
        .rows
        .iter()
        .all(|row| row.exceedance <= row.bound);
    let c = binary_envelope_constant();
    report(
        "13 convergence rates",
        slope_ok && envelope_ok,
        &format!(
            "thermometer log-log slope {slope:.3} (target -0.5 ± 0.1); binary exceedance below C N^2 2^(-N/2)/eps with C = {c:.4} at every N in 8..=16"
        ),
    );
}

#[test]
fn criterion_14_determinism_across_workers() {
    let bin = env!("CARGO_BIN_EXE_dacinl");
    let dir = std::env::temp_dir().join("dacinl-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "7"] {
        let path = dir.join(format!("summary-{workers}.json"));
        let status = Command::new(bin)
            .args([
                "simulate",
                "--bits",
                "8",
                "--arch",
                "binary",
                "--sigma-rel",
                "0.02",
                "--trials",
                "4000",
                "--seed",
                "42",
                "--workers",
                workers,
                "--output",
                "json",
                "--out-file",
                path.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    report(
        "14 determinism across workers",
        outputs[0] == outputs[1],
        &format!(
            "byte-identical output documents for --workers 1 and --workers 7 ({} bytes)",
            outputs[0].len()
        ),
    );
}
