//! Command-line front end.
//!
//! Subcommands: `simulate`, `analytic`, `density`, `yield`, `convergence`,
//! `compare`. Every run echoes its fully-resolved configuration (defaults
//! included) to stderr before results; result documents go to stdout or
//! `--out-file`. Exit codes: 0 success, 2 usage error, 1 runtime error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::binary;
use crate::error::Error;
use crate::export;
use crate::mismatch::DacSpec;
use crate::montecarlo::{
    compare_architectures, convergence_binary, convergence_thermo, run_trials, yield_mc,
    TrialConfig,
};
use crate::thermo;
use crate::transfer::Architecture;

#[derive(Parser)]
#[command(
    name = "dacinl",
    version,
    about = "Static non-linearity (INL/DNL) simulation and limit-law analytics for current-steering DACs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo simulation of the normalized INL_max distribution
    Simulate(SimulateArgs),
    /// Closed-form quantities of the limit laws
    Analytic(AnalyticArgs),
    /// Density of the truncated binary limit statistic
    Density(DensityArgs),
    /// Yield prediction, analytic or Monte Carlo
    #[command(name = "yield")]
    Yield(YieldArgs),
    /// Convergence-rate experiments
    Convergence(ConvergenceArgs),
    /// Compare two architectures at equal resolution
    Compare(CompareArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ArchChoice {
    Thermo,
    Binary,
    Segmented,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawChoice {
    Thermo,
    Binary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhatChoice {
    Mean,
    Var,
    Cdf,
    Quantile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DensityMode {
    Quad,
    Mc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum YieldMethod {
    Analytic,
    Mc,
}

#[derive(Args)]
struct SpecArgs {
    /// DAC resolution in bits; the converter has 2^bits - 1 unit currents
    #[arg(long)]
    bits: u32,
    /// Relative matching sigma_u / mean_current
    #[arg(long, default_value_t = 0.02)]
    sigma_rel: f64,
    /// Absolute unit-current sigma; overrides --sigma-rel
    #[arg(long, conflicts_with = "sigma_rel")]
    sigma_u: Option<f64>,
    /// Designed unit current
    #[arg(long, default_value_t = 1.0)]
    mean_current: f64,
}

impl SpecArgs {
    fn build(&self) -> Result<DacSpec, Failure> {
        let spec = match self.sigma_u {
            Some(sigma) => DacSpec::new(self.bits, self.mean_current, sigma),
            None => DacSpec::from_relative_matching(self.bits, self.mean_current, self.sigma_rel),
        };
        spec.map_err(|e| Failure::Usage(format!("--bits/--sigma-rel/--mean-current: {e}")))
    }
}

#[derive(Args)]
struct ArchArgs {
    /// Architecture to simulate
    #[arg(long, value_enum)]
    arch: ArchChoice,
    /// Number of thermometer-coded MSBs; required for --arch segmented
    #[arg(long)]
    segmentation: Option<u32>,
}

impl ArchArgs {
    fn build(&self, bits: u32) -> Result<Architecture, Failure> {
        let arch = match (self.arch, self.segmentation) {
            (ArchChoice::Thermo, None) => Architecture::Thermometer,
            (ArchChoice::Binary, None) => Architecture::Binary,
            (ArchChoice::Segmented, Some(s)) => Architecture::Segmented { segmentation: s },
            (ArchChoice::Segmented, None) => {
                return Err(Failure::Usage(
                    "--segmentation is required with --arch segmented".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(Failure::Usage(
                    "--segmentation is only valid with --arch segmented".into(),
                ))
            }
        };
        arch.validate(bits)
            .map_err(|e| Failure::Usage(format!("--segmentation: {e}")))?;
        Ok(arch)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Monte Carlo trials
    #[arg(long, default_value_t = 20_000)]
    trials: usize,
    /// RNG seed; DACINL_SEED overrides the default
    #[arg(long, env = "DACINL_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (results are identical for any value)
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl RunArgs {
    fn validate(&self) -> Result<(), Failure> {
        if self.trials == 0 {
            return Err(Failure::Usage("--trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Result document format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,
    /// Write the result document here instead of stdout
    #[arg(long)]
    out_file: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, content: &str) -> Result<(), Failure> {
        match &self.out_file {
            Some(path) => fs::write(path, content).map_err(|e| Failure::Runtime(e.into())),
            None => {
                print!("{content}");
                std::io::stdout()
                    .flush()
                    .map_err(|e| Failure::Runtime(e.into()))
            }
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    arch: ArchArgs,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Also dump the sorted raw samples as little-endian f64
    #[arg(long)]
    dump_samples: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyticArgs {
    /// Which limit law
    #[arg(long, value_enum)]
    law: LawChoice,
    /// Which quantity
    #[arg(long, value_enum)]
    what: WhatChoice,
    /// Point at which to evaluate the CDF
    #[arg(long)]
    x: Option<f64>,
    /// Probability for the quantile
    #[arg(long)]
    p: Option<f64>,
    /// Series / root-finding tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Truncation order for the binary variance double sum
    #[arg(long, default_value_t = 60)]
    l_max: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DensityArgs {
    /// Truncation order m of the statistic
    #[arg(long)]
    m: usize,
    /// Evaluation mode
    #[arg(long, value_enum)]
    mode: DensityMode,
    #[arg(long, default_value_t = 0.0)]
    grid_min: f64,
    #[arg(long, default_value_t = 2.5)]
    grid_max: f64,
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// Per-point quadrature tolerance (quad mode)
    #[arg(long, default_value_t = 1e-6)]
    quad_tol: f64,
    /// Monte Carlo sample count (mc mode)
    #[arg(long, default_value_t = 1_000_000)]
    trials: usize,
    /// Kernel bandwidth (mc mode)
    #[arg(long, default_value_t = 0.01)]
    bandwidth: f64,
    /// RNG seed (mc mode); DACINL_SEED overrides the default
    #[arg(long, env = "DACINL_SEED", default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct YieldArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    arch: ArchArgs,
    /// INL specification threshold in LSB units
    #[arg(long)]
    threshold_lsb: f64,
    /// Prediction method
    #[arg(long, value_enum)]
    method: YieldMethod,
    /// Series truncation depth for the binary analytic path
    #[arg(long, default_value_t = 40)]
    levels: usize,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Which experiment: thermometer grid gap or binary coupling
    #[arg(long, value_enum)]
    arch: LawChoice,
    /// Smallest grid exponent (thermo: n = 2^e)
    #[arg(long, default_value_t = 6)]
    log2_n_min: u32,
    /// Largest grid exponent (thermo)
    #[arg(long, default_value_t = 14)]
    log2_n_max: u32,
    /// Fine-grid exponent used as the reference (thermo)
    #[arg(long, default_value_t = 20)]
    log2_n_fine: u32,
    /// Smallest resolution (binary)
    #[arg(long, default_value_t = 8)]
    bits_min: u32,
    /// Largest resolution (binary)
    #[arg(long, default_value_t = 16)]
    bits_max: u32,
    /// Exceedance threshold (binary)
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Series truncation depth (binary)
    #[arg(long, default_value_t = 40)]
    depth: usize,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// First architecture
    #[arg(long, value_enum)]
    arch_a: ArchChoice,
    #[arg(long)]
    segmentation_a: Option<u32>,
    /// Second architecture
    #[arg(long, value_enum)]
    arch_b: ArchChoice,
    #[arg(long)]
    segmentation_b: Option<u32>,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Analytic(args) => analytic(args),
        Command::Density(args) => density(args),
        Command::Yield(args) => yield_cmd(args),
        Command::Convergence(args) => convergence(args),
        Command::Compare(args) => compare(args),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let mut cmd = Cli::command();
            let styled = cmd.render_usage();
            eprintln!("error: {msg}\n{styled}");
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn echo_config(lines: &[(&str, String)]) {
    for (key, value) in lines {
        eprintln!("# {key} = {value}");
    }
}

#[derive(Serialize)]
struct Document<C: Serialize, R: Serialize> {
    schema: u32,
    command: &'static str,
    config: C,
    result: R,
}

fn to_json<C: Serialize, R: Serialize>(doc: &Document<C, R>) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(doc).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    args.run.validate()?;
    let spec = args.spec.build()?;
    let architecture = args.arch.build(spec.resolution_bits)?;
    let config = TrialConfig {
        spec,
        architecture,
        trials: args.run.trials,
        seed: args.run.seed,
        workers: args.run.workers,
    };
    echo_config(&[
        ("command", "simulate".into()),
        ("bits", spec.resolution_bits.to_string()),
        ("mean_current", spec.mean_current.to_string()),
        ("sigma_u", spec.sigma_u.to_string()),
        ("relative_matching", spec.relative_matching().to_string()),
        ("architecture", architecture.to_string()),
        ("trials", config.trials.to_string()),
        ("seed", config.seed.to_string()),
        ("workers", config.workers.to_string()),
    ]);
    let summary = run_trials(&config)?;
    if let Some(path) = &args.dump_samples {
        let mut file = fs::File::create(path).map_err(Error::from)?;
        export::write_samples_le(&mut file, &summary.samples).map_err(Error::from)?;
    }
    let content = match args.output.output {
        OutputFormat::Csv => export::summary_csv(&summary),
        OutputFormat::Json => to_json(&Document {
            schema: export::SCHEMA_VERSION,
            command: "simulate",
            config: &config,
            result: &summary,
        })?,
    };
    args.output.emit(&content)
}

#[derive(Serialize)]
struct AnalyticConfig {
    law: String,
    what: String,
    x: Option<f64>,
    p: Option<f64>,
    tol: f64,
}

fn analytic(args: AnalyticArgs) -> Result<(), Failure> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let (law_name, what_name) = (
        match args.law {
            LawChoice::Thermo => "thermo",
            LawChoice::Binary => "binary",
        },
        match args.what {
            WhatChoice::Mean => "mean",
            WhatChoice::Var => "var",
            WhatChoice::Cdf => "cdf",
            WhatChoice::Quantile => "quantile",
        },
    );
    echo_config(&[
        ("command", "analytic".into()),
        ("law", law_name.into()),
        ("what", what_name.into()),
        ("x", format!("{:?}", args.x)),
        ("p", format!("{:?}", args.p)),
        ("tol", args.tol.to_string()),
        ("l_max", args.l_max.to_string()),
    ]);
    let (quantity, value) = match (args.law, args.what) {
        (LawChoice::Thermo, WhatChoice::Mean) => ("mean_X", thermo::mean_x()),
        (LawChoice::Thermo, WhatChoice::Var) => ("var_X", thermo::var_x()),
        (LawChoice::Thermo, WhatChoice::Cdf) => {
            let x = args
                .x
                .ok_or_else(|| Failure::Usage("--x is required for --what cdf".into()))?;
            let tol = args.tol.min(1e-3);
            ("cdf_X", thermo::kolmogorov_cdf(x, tol)?)
        }
        (LawChoice::Thermo, WhatChoice::Quantile) => {
            let p = args
                .p
                .ok_or_else(|| Failure::Usage("--p is required for --what quantile".into()))?;
            ("quantile_X", thermo::quantile_x(p, args.tol)?)
        }
        (LawChoice::Binary, WhatChoice::Mean) => ("mean_M", binary::mean_m(args.tol)?),
        (LawChoice::Binary, WhatChoice::Var) => ("var_M", binary::var_m(args.l_max)?),
        (LawChoice::Binary, WhatChoice::Cdf | WhatChoice::Quantile) => {
            return Err(Failure::Usage(
                "no closed-form CDF exists for the binary law; use `dacinl yield --method mc` \
                 or the Monte Carlo density instead"
                    .into(),
            ));
        }
    };
    // 12 significant digits
    let printed = format!("{quantity},{value:.11e}\n");
    let content = match args.output.output {
        OutputFormat::Csv => format!("quantity,value\n{printed}"),
        OutputFormat::Json => to_json(&Document {
            schema: export::SCHEMA_VERSION,
            command: "analytic",
            config: AnalyticConfig {
                law: law_name.into(),
                what: what_name.into(),
                x: args.x,
                p: args.p,
                tol: args.tol,
            },
            result: serde_json::json!({ "quantity": quantity, "value": value }),
        })?,
    };
    args.output.emit(&content)
}

#[derive(Serialize)]
struct DensityConfig {
    m: usize,
    mode: String,
    grid_min: f64,
    grid_max: f64,
    grid_step: f64,
    quad_tol: f64,
    trials: usize,
    bandwidth: f64,
    seed: u64,
}

fn density(args: DensityArgs) -> Result<(), Failure> {
    if args.m < 1 {
        return Err(Failure::Usage("--m must be at least 1".into()));
    }
    if args.mode == DensityMode::Quad && args.m > binary::MAX_QUAD_ORDER {
        return Err(Failure::Usage(format!(
            "--mode quad supports --m up to {}; use --mode mc for larger truncations",
            binary::MAX_QUAD_ORDER
        )));
    }
    let mode_name = match args.mode {
        DensityMode::Quad => "quad",
        DensityMode::Mc => "mc",
    };
    echo_config(&[
        ("command", "density".into()),
        ("m", args.m.to_string()),
        ("mode", mode_name.into()),
        ("grid_min", args.grid_min.to_string()),
        ("grid_max", args.grid_max.to_string()),
        ("grid_step", args.grid_step.to_string()),
        ("quad_tol", args.quad_tol.to_string()),
        ("trials", args.trials.to_string()),
        ("bandwidth", args.bandwidth.to_string()),
        ("seed", args.seed.to_string()),
    ]);
    let grid = binary::GridSpec {
        min: args.grid_min,
        max: args.grid_max,
        step: args.grid_step,
    };
    let rows: Vec<(f64, f64)> = match args.mode {
        DensityMode::Quad => grid
            .points()?
            .into_iter()
            .map(|y| binary::density_mm(y, args.m, args.quad_tol).map(|f| (y, f)))
            .collect::<Result<_, _>>()?,
        DensityMode::Mc => {
            binary::density_m_mc(args.m, args.trials, args.bandwidth, grid, args.seed)?
        }
    };
    let meta = match args.mode {
        DensityMode::Quad => format!("mode=quad m={} quad_tol={}", args.m, args.quad_tol),
        DensityMode::Mc => format!(
            "mode=mc m={} trials={} bandwidth={} seed={}",
            args.m, args.trials, args.bandwidth, args.seed
        ),
    };
    let content = match args.output.output {
        OutputFormat::Csv => export::density_csv(&rows, &meta),
        OutputFormat::Json => to_json(&Document {
            schema: export::SCHEMA_VERSION,
            command: "density",
            config: DensityConfig {
                m: args.m,
                mode: mode_name.into(),
                grid_min: args.grid_min,
                grid_max: args.grid_max,
                grid_step: args.grid_step,
                quad_tol: args.quad_tol,
                trials: args.trials,
                bandwidth: args.bandwidth,
                seed: args.seed,
            },
            result: &rows,
        })?,
    };
    args.output.emit(&content)
}

fn yield_cmd(args: YieldArgs) -> Result<(), Failure> {
    args.run.validate()?;
    if !(args.threshold_lsb.is_finite() && args.threshold_lsb > 0.0) {
        return Err(Failure::Usage(format!(
            "--threshold-lsb must be positive, got {}",
            args.threshold_lsb
        )));
    }
    let spec = args.spec.build()?;
    if spec.sigma_u <= 0.0 {
        return Err(Failure::Usage(
            "--sigma-rel/--sigma-u must be positive for yield prediction".into(),
        ));
    }
    let architecture = args.arch.build(spec.resolution_bits)?;
    let method_name = match args.method {
        YieldMethod::Analytic => "analytic",
        YieldMethod::Mc => "mc",
    };
    echo_config(&[
        ("command", "yield".into()),
        ("bits", spec.resolution_bits.to_string()),
        ("mean_current", spec.mean_current.to_string()),
        ("sigma_u", spec.sigma_u.to_string()),
        ("architecture", architecture.to_string()),
        ("threshold_lsb", args.threshold_lsb.to_string()),
        ("method", method_name.into()),
        ("levels", args.levels.to_string()),
        ("trials", args.run.trials.to_string()),
        ("seed", args.run.seed.to_string()),
        ("workers", args.run.workers.to_string()),
    ]);
    #[derive(Serialize)]
    struct YieldConfig {
        spec: DacSpec,
        architecture: Architecture,
        threshold_lsb: f64,
        method: String,
        trials: usize,
        seed: u64,
    }
    let config = YieldConfig {
        spec,
        architecture,
        threshold_lsb: args.threshold_lsb,
        method: method_name.into(),
        trials: args.run.trials,
        seed: args.run.seed,
    };
    let content = match (args.method, architecture) {
        (YieldMethod::Analytic, Architecture::Thermometer) => {
            let value = thermo::yield_thermometer(args.threshold_lsb, &spec)?;
            match args.output.output {
                OutputFormat::Csv => format!("threshold_lsb,yield\n{},{}\n",
                    export::fmt_f64(args.threshold_lsb), export::fmt_f64(value)),
                OutputFormat::Json => to_json(&Document {
                    schema: export::SCHEMA_VERSION,
                    command: "yield",
                    config: &config,
                    result: serde_json::json!({ "yield": value }),
                })?,
            }
        }
        (YieldMethod::Analytic, Architecture::Binary) => {
            let estimate = binary::yield_binary(
                args.threshold_lsb,
                &spec,
                args.run.trials,
                args.levels,
                args.run.seed,
            )?;
            match args.output.output {
                OutputFormat::Csv => export::yield_csv(&estimate),
                OutputFormat::Json => to_json(&Document {
                    schema: export::SCHEMA_VERSION,
                    command: "yield",
                    config: &config,
                    result: &estimate,
                })?,
            }
        }
        (YieldMethod::Analytic, Architecture::Segmented { .. }) => {
            return Err(Failure::Usage(
                "--method analytic supports thermometer and binary only; \
                 use --method mc for segmented architectures"
                    .into(),
            ));
        }
        (YieldMethod::Mc, _) => {
            let config_mc = TrialConfig {
                spec,
                architecture,
                trials: args.run.trials,
                seed: args.run.seed,
                workers: args.run.workers,
            };
            let estimate = yield_mc(&config_mc, args.threshold_lsb)?;
            match args.output.output {
                OutputFormat::Csv => export::yield_csv(&estimate),
                OutputFormat::Json => to_json(&Document {
                    schema: export::SCHEMA_VERSION,
                    command: "yield",
                    config: &config,
                    result: &estimate,
                })?,
            }
        }
    };
    args.output.emit(&content)
}

fn convergence(args: ConvergenceArgs) -> Result<(), Failure> {
    args.run.validate()?;
    match args.arch {
        LawChoice::Thermo => {
            if args.log2_n_min > args.log2_n_max || args.log2_n_max > args.log2_n_fine {
                return Err(Failure::Usage(
                    "--log2-n-min <= --log2-n-max <= --log2-n-fine is required".into(),
                ));
            }
            echo_config(&[
                ("command", "convergence".into()),
                ("arch", "thermo".into()),
                ("log2_n_min", args.log2_n_min.to_string()),
                ("log2_n_max", args.log2_n_max.to_string()),
                ("log2_n_fine", args.log2_n_fine.to_string()),
                ("trials", args.run.trials.to_string()),
                ("seed", args.run.seed.to_string()),
                ("workers", args.run.workers.to_string()),
            ]);
            let grid: Vec<u64> = (args.log2_n_min..=args.log2_n_max).map(|e| 1 << e).collect();
            let report = convergence_thermo(
                &grid,
                args.run.trials,
                args.run.seed,
                1 << args.log2_n_fine,
                args.run.workers,
            )?;
            let slope = report.fitted_slope();
            let content = match args.output.output {
                OutputFormat::Csv => {
                    let mut csv = export::convergence_csv(&report);
                    if let Some(s) = slope {
                        csv.push_str(&format!("# fitted_log_log_slope = {}\n", export::fmt_f64(s)));
                    }
                    csv
                }
                OutputFormat::Json => to_json(&Document {
                    schema: export::SCHEMA_VERSION,
                    command: "convergence",
                    config: serde_json::json!({
                        "arch": "thermo",
                        "log2_n_min": args.log2_n_min,
                        "log2_n_max": args.log2_n_max,
                        "log2_n_fine": args.log2_n_fine,
                        "trials": args.run.trials,
                        "seed": args.run.seed,
                    }),
                    result: serde_json::json!({
                        "report": &report,
                        "fitted_slope": slope,
                    }),
                })?,
            };
            args.output.emit(&content)
        }
        LawChoice::Binary => {
            if args.bits_min > args.bits_max {
                return Err(Failure::Usage("--bits-min must not exceed --bits-max".into()));
            }
            echo_config(&[
                ("command", "convergence".into()),
                ("arch", "binary".into()),
                ("bits_min", args.bits_min.to_string()),
                ("bits_max", args.bits_max.to_string()),
                ("epsilon", args.epsilon.to_string()),
                ("depth", args.depth.to_string()),
                ("trials", args.run.trials.to_string()),
                ("seed", args.run.seed.to_string()),
                ("workers", args.run.workers.to_string()),
            ]);
            let grid: Vec<u32> = (args.bits_min..=args.bits_max).collect();
            let report = convergence_binary(
                &grid,
                args.run.trials,
                args.run.seed,
                args.epsilon,
                args.depth,
                args.run.workers,
            )?;
            let content = match args.output.output {
                OutputFormat::Csv => export::binary_convergence_csv(&report),
                OutputFormat::Json => to_json(&Document {
                    schema: export::SCHEMA_VERSION,
                    command: "convergence",
                    config: serde_json::json!({
                        "arch": "binary",
                        "bits_min": args.bits_min,
                        "bits_max": args.bits_max,
                        "epsilon": args.epsilon,
                        "depth": args.depth,
                        "trials": args.run.trials,
                        "seed": args.run.seed,
                    }),
                    result: &report,
                })?,
            };
            args.output.emit(&content)
        }
    }
}

fn compare(args: CompareArgs) -> Result<(), Failure> {
    args.run.validate()?;
    let spec = args.spec.build()?;
    let arch_a = ArchArgs {
        arch: args.arch_a,
        segmentation: args.segmentation_a,
    }
    .build(spec.resolution_bits)?;
    let arch_b = ArchArgs {
        arch: args.arch_b,
        segmentation: args.segmentation_b,
    }
    .build(spec.resolution_bits)?;
    echo_config(&[
        ("command", "compare".into()),
        ("bits", spec.resolution_bits.to_string()),
        ("mean_current", spec.mean_current.to_string()),
        ("sigma_u", spec.sigma_u.to_string()),
        ("arch_a", arch_a.to_string()),
        ("arch_b", arch_b.to_string()),
        ("trials", args.run.trials.to_string()),
        ("seed", args.run.seed.to_string()),
        ("workers", args.run.workers.to_string()),
    ]);
    let report = compare_architectures(
        &spec,
        arch_a,
        &spec,
        arch_b,
        args.run.trials,
        args.run.seed,
        args.run.workers,
    )?;
    let content = match args.output.output {
        OutputFormat::Csv => export::comparison_csv(&report),
        OutputFormat::Json => to_json(&Document {
            schema: export::SCHEMA_VERSION,
            command: "compare",
            config: serde_json::json!({
                "bits": spec.resolution_bits,
                "mean_current": spec.mean_current,
                "sigma_u": spec.sigma_u,
                "arch_a": arch_a.to_string(),
                "arch_b": arch_b.to_string(),
                "trials": args.run.trials,
                "seed": args.run.seed,
            }),
            result: &report,
        })?,
    };
    args.output.emit(&content)
}
