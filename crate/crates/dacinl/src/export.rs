//! Plot-ready CSV and JSON serialisation.
//!
//! CSV dialect: comma separators, `.` decimals, one header row, LF line
//! endings. Floats are written with 17 significant digits so files parse
//! back losslessly. JSON documents carry a top-level `"schema": 1`.

use std::io::Write;

use crate::montecarlo::{
    BinaryConvergenceReport, ComparisonReport, ConvergenceReport, EmpiricalSummary, YieldEstimate,
};
use crate::transfer::{NonlinearityProfile, TransferCurve};

pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits: enough for a lossless f64 round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn summary_csv(summary: &EmpiricalSummary) -> String {
    let mut out = String::from("stat,value\n");
    out.push_str(&format!("trials,{}\n", summary.trials));
    out.push_str(&format!("mean,{}\n", fmt_f64(summary.mean)));
    out.push_str(&format!(
        "variance,{}\n",
        summary.variance.map_or_else(|| "nan".into(), fmt_f64)
    ));
    out.push_str(&format!(
        "standard_error_mean,{}\n",
        summary
            .standard_error_mean
            .map_or_else(|| "nan".into(), fmt_f64)
    ));
    for &(p, value) in &summary.quantiles {
        out.push_str(&format!("q{p},{}\n", fmt_f64(value)));
    }
    out
}

/// Transfer curve plus its profile as `k,i_out,dnl,inl` (DNL is empty at
/// code 0, where it is undefined).
pub fn profile_csv(curve: &TransferCurve, profile: &NonlinearityProfile) -> String {
    let mut out = String::from("k,i_out,dnl,inl\n");
    for (k, &i_out) in curve.outputs.iter().enumerate() {
        let dnl = if k == 0 {
            String::new()
        } else {
            fmt_f64(profile.dnl[k - 1])
        };
        out.push_str(&format!(
            "{k},{},{dnl},{}\n",
            fmt_f64(i_out),
            fmt_f64(profile.inl[k])
        ));
    }
    out
}

/// Transfer curve plus profile as a JSON document.
pub fn profile_json(
    curve: &TransferCurve,
    profile: &NonlinearityProfile,
) -> serde_json::Result<String> {
    #[derive(serde::Serialize)]
    struct Doc<'a> {
        schema: u32,
        architecture: String,
        i_out: &'a [f64],
        dnl: &'a [f64],
        inl: &'a [f64],
        inl_max: f64,
    }
    let mut s = serde_json::to_string_pretty(&Doc {
        schema: SCHEMA_VERSION,
        architecture: curve.architecture.to_string(),
        i_out: &curve.outputs,
        dnl: &profile.dnl,
        inl: &profile.inl,
        inl_max: profile.inl_max,
    })?;
    s.push('\n');
    Ok(s)
}

/// Density grid with a comment line recording how it was produced.
pub fn density_csv(rows: &[(f64, f64)], meta: &str) -> String {
    let mut out = format!("# {meta}\ny,density\n");
    for &(y, f) in rows {
        out.push_str(&format!("{},{}\n", fmt_f64(y), fmt_f64(f)));
    }
    out
}

pub fn yield_csv(estimate: &YieldEstimate) -> String {
    format!(
        "threshold_lsb,yield,ci_low,ci_high\n{},{},{},{}\n",
        fmt_f64(estimate.threshold_lsb),
        fmt_f64(estimate.probability),
        fmt_f64(estimate.ci_low),
        fmt_f64(estimate.ci_high)
    )
}

pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = format!("# {} ({} trials)\nn,observed,bound\n", report.statistic, report.trials);
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.size,
            fmt_f64(row.observed),
            fmt_f64(row.bound)
        ));
    }
    out
}

pub fn binary_convergence_csv(report: &BinaryConvergenceReport) -> String {
    let mut out = format!(
        "# coupled |M_N - M| at epsilon {} ({} trials, depth {})\nbits,mean_abs_diff,exceedance,bound\n",
        fmt_f64(report.epsilon),
        report.trials,
        report.depth
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.bits,
            fmt_f64(row.mean_abs_diff),
            fmt_f64(row.exceedance),
            fmt_f64(row.bound)
        ));
    }
    out
}

pub fn comparison_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("stat,a,b\n");
    out.push_str(&format!("architecture,{},{}\n", report.arch_a, report.arch_b));
    out.push_str(&format!(
        "mean,{},{}\n",
        fmt_f64(report.a.mean),
        fmt_f64(report.b.mean)
    ));
    out.push_str(&format!(
        "variance,{},{}\n",
        report.a.variance.map_or_else(|| "nan".into(), fmt_f64),
        report.b.variance.map_or_else(|| "nan".into(), fmt_f64)
    ));
    out.push_str(&format!(
        "mean_difference,{},\n",
        fmt_f64(report.mean_difference)
    ));
    out.push_str(&format!("combined_se,{},\n", fmt_f64(report.combined_se)));
    out.push_str(&format!("ks_distance,{},\n", fmt_f64(report.ks_distance)));
    out.push_str(&format!("ks_p_value,{},\n", fmt_f64(report.ks_p_value)));
    out
}

/// Raw samples as little-endian 64-bit floats.
pub fn write_samples_le<W: Write>(writer: &mut W, samples: &[f64]) -> std::io::Result<()> {
    for &x in samples {
        writer.write_all(&x.to_le_bytes())?;
    }
    Ok(())
}
