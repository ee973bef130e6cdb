//! How fast the finite-resolution statistics approach their limits.
//!
//! The thermometer experiment measures the gap between the bridge maximum on
//! an n-point grid and on a much finer reference grid (expected rate
//! ~ sqrt(log n / n)); the binary experiment couples the exact
//! finite-resolution statistic with the truncated limit series on one bridge
//! and reports the exceedance probability against its envelope.
//!
//! ```bash
//! cargo run --example convergence_rates
//! ```

use dacinl::montecarlo::{convergence_binary, convergence_thermo};

fn main() -> dacinl::Result<()> {
    let grid: Vec<u64> = (6..=13).map(|e| 1u64 << e).collect();
    let thermo = convergence_thermo(&grid, 200, 31, 1 << 18, 4)?;
    println!("thermometer: E|max over n points - max over 2^18 points|");
    println!("  n        observed    sqrt(log n / n)");
    for row in &thermo.rows {
        println!("  {:<7}  {:.6}    {:.6}", row.size, row.observed, row.bound);
    }
    println!(
        "  fitted log-log slope: {:.3} (theory: -1/2 up to the log factor)\n",
        thermo.fitted_slope().unwrap()
    );

    let bits: Vec<u32> = (6..=14).step_by(2).collect();
    let binary = convergence_binary(&bits, 2000, 37, 0.1, 40, 4)?;
    println!("binary: coupled |M_N - M| at eps = {}", binary.epsilon);
    println!("  bits   E|diff|     P(|diff| > eps)   envelope");
    for row in &binary.rows {
        println!(
            "  {:<5}  {:.6}    {:<16.4} {:.3}",
            row.bits, row.mean_abs_diff, row.exceedance, row.bound
        );
    }
    Ok(())
}
