//! Generate seeded synthetic transaction groups, sweep support thresholds,
//! and emit the benchmark grid as CSV.
//!
//! Run with `cargo run --release --example synthetic_benchmark`.

use freqmine::bench::{generate_synthetic, rows_to_csv, run_comparison, GeneratorConfig};
use freqmine::fraction::Fraction;

fn main() {
    let mut datasets = Vec::new();
    for (i, n) in [200usize, 400, 600].into_iter().enumerate() {
        let cfg = GeneratorConfig {
            n_transactions: n,
            n_items: 24,
            mean_len: 5.0,
            skew: 0.9,
            seed: 42 + i as u64,
        };
        datasets.push((
            format!("t{n}"),
            generate_synthetic(&cfg).expect("valid config"),
        ));
    }
    let sweep: Vec<Fraction> = (1..=3).map(|i| Fraction::new(i * 3, 100)).collect();

    let rows = run_comparison(&datasets, &sweep, true);
    print!("{}", rows_to_csv(&rows));
}
