//! The dyadic bridge sampler behind the binary limit law: bridge values at
//! t = 2^-l, their block increments, and the equivalence with the direct
//! series sampler.
//!
//! ```bash
//! cargo run --example bridge_sampler
//! ```

use dacinl::binary::{block_variance, dyadic_bridge, sample_m, DEFAULT_LEVELS};
use dacinl::rng::substream;
use dacinl::stats::{ks_p_value, ks_two_sample};

fn main() -> dacinl::Result<()> {
    // empirical moments of the first increments
    let draws = 200_000usize;
    let mut var = [0.0f64; 3];
    let mut cov12 = 0.0f64;
    for i in 0..draws {
        let mut rng = substream(1, i as u64);
        let incs = dyadic_bridge(3, &mut rng)?.increments();
        for (v, inc) in var.iter_mut().zip(&incs) {
            *v += inc * inc;
        }
        cov12 += incs[0] * incs[1];
    }
    println!("block increment moments over {draws} bridges:");
    for (l, &v) in var.iter().enumerate() {
        println!(
            "  Var(N_{})  sampled {:.5}   formula {:.5}",
            l + 1,
            v / draws as f64,
            block_variance(l as u32 + 1)?
        );
    }
    println!(
        "  Cov(N_1,N_2) sampled {:.5}   formula {:.5}",
        cov12 / draws as f64,
        -(2.0f64).powi(-3)
    );

    // the bridge route and the series route draw the same distribution
    let count = 30_000usize;
    let mut a: Vec<f64> = (0..count)
        .map(|i| {
            let mut rng = substream(2, i as u64);
            dyadic_bridge(DEFAULT_LEVELS, &mut rng)
                .unwrap()
                .half_abs_increment_sum()
        })
        .collect();
    let mut b: Vec<f64> = (0..count)
        .map(|i| {
            let mut rng = substream(3, i as u64);
            sample_m(DEFAULT_LEVELS, &mut rng).unwrap()
        })
        .collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let d = ks_two_sample(&a, &b);
    println!(
        "\nbridge-increment sums vs series draws: KS D = {:.5}, p = {:.3}",
        d,
        ks_p_value(d, count, count)?
    );
    Ok(())
}
