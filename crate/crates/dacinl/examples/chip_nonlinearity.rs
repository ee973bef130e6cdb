//! Simulate one manufactured chip and export its transfer characteristic and
//! DNL/INL profile for each architecture.
//!
//! ```bash
//! cargo run --example chip_nonlinearity
//! ```

use dacinl::{export, nonlinearity, sample_unit_currents, transfer, Architecture, DacSpec};

fn main() -> dacinl::Result<()> {
    let spec = DacSpec::from_relative_matching(6, 1.0, 0.02)?;
    let chip = sample_unit_currents(&spec, 2024);
    println!(
        "one chip at {} bits: n = {}, full scale = {:.6}, i_lsb = {:.6}\n",
        spec.resolution_bits,
        chip.len(),
        chip.full_scale(),
        chip.i_lsb()
    );

    for arch in [
        Architecture::Thermometer,
        Architecture::Binary,
        Architecture::Segmented { segmentation: 3 },
    ] {
        let curve = transfer(arch, &chip)?;
        let profile = nonlinearity(&curve, chip.i_lsb())?;
        println!(
            "{arch}: INL_max = {:.4} LSB, worst DNL = {:.4} LSB",
            profile.inl_max,
            profile
                .dnl
                .iter()
                .fold(0.0f64, |acc, &d| acc.max(d.abs()))
        );
        // the same data as plot-ready CSV (first few rows)
        let csv = export::profile_csv(&curve, &profile);
        for line in csv.lines().take(5) {
            println!("    {line}");
        }
        println!("    ...");
    }

    // full JSON document for downstream tooling
    let curve = transfer(Architecture::Binary, &chip)?;
    let profile = nonlinearity(&curve, chip.i_lsb())?;
    let json = export::profile_json(&curve, &profile)?;
    println!("\nJSON export starts with:");
    for line in json.lines().take(6) {
        println!("    {line}");
    }
    Ok(())
}
