//! Thermometer and binary DACs built from the same unit currents do not share
//! a non-linearity distribution: the thermometer mean is higher, its variance
//! lower, and a two-sample KS test tells the samples apart.
//!
//! ```bash
//! cargo run --example architecture_comparison
//! ```

use dacinl::{compare_architectures, Architecture, DacSpec};

fn main() -> dacinl::Result<()> {
    let spec = DacSpec::from_relative_matching(12, 1.0, 0.02)?;
    let report = compare_architectures(
        &spec,
        Architecture::Thermometer,
        &spec,
        Architecture::Binary,
        20_000,
        23,
        4,
    )?;
    println!("normalized INL_max at 12 bits, 20k chips per architecture:");
    println!(
        "  thermometer  mean {:.5}  variance {:.5}",
        report.a.mean,
        report.a.variance.unwrap()
    );
    println!(
        "  binary       mean {:.5}  variance {:.5}",
        report.b.mean,
        report.b.variance.unwrap()
    );
    println!(
        "  mean difference {:+.5} ({:.1} combined standard errors)",
        report.mean_difference,
        report.mean_difference / report.combined_se
    );
    println!(
        "  two-sample KS distance {:.4}, p = {:.2e}",
        report.ks_distance, report.ks_p_value
    );

    let same = compare_architectures(
        &spec,
        Architecture::Binary,
        &spec,
        Architecture::Binary,
        20_000,
        29,
        4,
    )?;
    println!(
        "\nsame architecture on both sides (independent seeds): KS p = {:.3}",
        same.ks_p_value
    );
    Ok(())
}
