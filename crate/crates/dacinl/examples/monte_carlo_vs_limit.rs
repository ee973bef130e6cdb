//! Full-chip Monte Carlo of the normalized INL_max against the limit laws,
//! showing both the agreement and the finite-resolution gap.
//!
//! ```bash
//! cargo run --example monte_carlo_vs_limit
//! ```

use dacinl::binary::mean_m;
use dacinl::mean_x;
use dacinl::{run_trials, Architecture, DacSpec, TrialConfig};

fn main() -> dacinl::Result<()> {
    println!("architecture  bits  trials   mc mean    mc var     limit mean");
    for (arch, bits) in [
        (Architecture::Thermometer, 10u32),
        (Architecture::Thermometer, 14),
        (Architecture::Binary, 10),
        (Architecture::Binary, 14),
    ] {
        let config = TrialConfig {
            spec: DacSpec::from_relative_matching(bits, 1.0, 0.02)?,
            architecture: arch,
            trials: 10_000,
            seed: 7,
            workers: 4,
        };
        let summary = run_trials(&config)?;
        let limit = match arch {
            Architecture::Thermometer => mean_x(),
            _ => mean_m(1e-9)?,
        };
        println!(
            "{arch:<13} {bits:>4} {:>7}   {:.6}   {:.6}   {limit:.6}",
            summary.trials,
            summary.mean,
            summary.variance.unwrap(),
        );
    }
    println!(
        "\nthe Monte Carlo means approach the limit values from below as the\n\
         resolution grows; the residual gap decays like the convergence-rate\n\
         experiments show (see the convergence_rates example)"
    );
    Ok(())
}
