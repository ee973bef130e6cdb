//! The two limit laws of the normalized worst-case INL: closed-form moments,
//! CDF and quantiles for the thermometer law, series moments for the binary
//! law.
//!
//! ```bash
//! cargo run --example limit_laws
//! ```

use dacinl::binary::{mean_m, var_m};
use dacinl::thermo::KolmogorovLaw;
use dacinl::{mean_x, var_x};

fn main() -> dacinl::Result<()> {
    println!("thermometer limit law X = max |bridge|");
    println!("  mean     {:.12}", mean_x());
    println!("  variance {:.12}", var_x());

    let law = KolmogorovLaw::default();
    println!("  x      P(X <= x)");
    for x in [0.4, 0.6, 0.8, 1.0, 1.2, 1.5, 2.0] {
        println!("  {x:.2}   {:.9}", law.cdf(x)?);
    }
    println!("  p      quantile");
    for p in [0.1, 0.25, 0.5, 0.75, 0.9, 0.99] {
        println!("  {p:.2}   {:.6}", law.quantile(p, 1e-10)?);
    }

    println!("\nbinary limit law M = half the total absolute dyadic increment");
    println!("  mean     {:.12}   (series, tail below 1e-10)", mean_m(1e-10)?);
    println!("  variance {:.12}   (double sum to L = 60)", var_m(60)?);
    println!(
        "\nthe thermometer law has the larger mean ({:+.6}) but the smaller variance ({:+.6})",
        mean_x() - mean_m(1e-10)?,
        var_x() - var_m(60)?
    );
    Ok(())
}
