//! Densities of the truncated binary statistic M^(m): exact quadrature for
//! small m, kernel estimate for the full law.
//!
//! ```bash
//! cargo run --example density_of_m > density.csv
//! ```

use dacinl::binary::{density_m_mc, density_mm, GridSpec};

fn main() -> dacinl::Result<()> {
    let grid = GridSpec {
        min: 0.0,
        max: 2.0,
        step: 0.05,
    };
    let full = density_m_mc(40, 400_000, 0.015, grid, 3)?;

    println!("y,m1,m2,m3,m4,full");
    for (i, &(y, f_full)) in full.iter().enumerate() {
        let f1 = density_mm(y, 1, 1e-7)?;
        let f2 = density_mm(y, 2, 1e-7)?;
        let f3 = density_mm(y, 3, 1e-7)?;
        let f4 = density_mm(y, 4, 1e-6)?;
        println!("{y:.3},{f1:.6},{f2:.6},{f3:.6},{f4:.6},{f_full:.6}");
        if i == 0 {
            eprintln!("# m=1 closed form at 0: {f1:.6}; higher truncations vanish at 0");
        }
    }
    eprintln!("# columns m1..m4 are exact quadrature; `full` is a 4e5-sample KDE at depth 40");
    Ok(())
}
