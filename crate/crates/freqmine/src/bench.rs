//! Seeded synthetic workloads and the miner comparison harness.
//!
//! Wall-clock timings are reported but the headline metric is
//! `records_read`, which is deterministic for a given input and threshold
//! and therefore reproducible across machines.

use std::fmt::Write as _;
use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Poisson;
use serde::Serialize;

use crate::apriori::mine_classic;
use crate::error::{Error, Result};
use crate::fpgrowth::mine_fpgrowth;
use crate::fraction::Fraction;
use crate::tid_index::mine_improved;
use crate::transactions::{TransactionDB, TransactionDbBuilder};

/// Shape of one synthetic dataset. Item popularity follows a power law:
/// item rank r gets weight (r+1)^-skew, so a handful of items dominate the
/// way best-sellers do in real baskets. Transaction lengths are Poisson
/// around `mean_len`, clamped to [1, n_items]; items within a transaction
/// are drawn without replacement.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub n_transactions: usize,
    pub n_items: usize,
    pub mean_len: f64,
    pub skew: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            n_transactions: 1000,
            n_items: 32,
            mean_len: 6.0,
            skew: 0.9,
            seed: 42,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_transactions == 0 {
            return Err(Error::ConfigError("n_transactions must be positive".into()));
        }
        if self.n_items < 2 {
            return Err(Error::ConfigError("n_items must be at least 2".into()));
        }
        if !self.mean_len.is_finite() || self.mean_len <= 0.0 || self.mean_len > self.n_items as f64
        {
            return Err(Error::ConfigError(
                "mean_len must be in (0, n_items]".into(),
            ));
        }
        if !self.skew.is_finite() || self.skew < 0.0 {
            return Err(Error::ConfigError("skew must be non-negative".into()));
        }
        Ok(())
    }
}

/// Deterministic synthetic database: the same config always yields the
/// same transactions, byte for byte.
pub fn generate_synthetic(cfg: &GeneratorConfig) -> Result<TransactionDB> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let names: Vec<String> = (0..cfg.n_items)
        .map(|r| format!("item{:04}", r + 1))
        .collect();
    let weights: Vec<f64> = (0..cfg.n_items)
        .map(|r| ((r + 1) as f64).powf(-cfg.skew))
        .collect();
    let pick = WeightedIndex::new(&weights)
        .map_err(|e| Error::ConfigError(format!("bad popularity weights: {e}")))?;
    let lengths =
        Poisson::new(cfg.mean_len).map_err(|e| Error::ConfigError(format!("bad mean_len: {e}")))?;
    let mut builder = TransactionDbBuilder::new();
    let mut chosen = std::collections::BTreeSet::new();
    for _ in 0..cfg.n_transactions {
        let len = (lengths.sample(&mut rng).round() as usize).clamp(1, cfg.n_items);
        chosen.clear();
        while chosen.len() < len {
            chosen.insert(pick.sample(&mut rng));
        }
        builder.add_transaction(chosen.iter().map(|&r| names[r].as_str()));
    }
    Ok(builder.build())
}

/// The five stock groups: 500 to 2500 transactions in steps of 500, all
/// other knobs at their defaults, seeds offset per group.
pub fn default_groups(seed: u64) -> Vec<(String, GeneratorConfig)> {
    [500usize, 1000, 1500, 2000, 2500]
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            (
                format!("t{n}"),
                GeneratorConfig {
                    n_transactions: n,
                    seed: seed.wrapping_add(i as u64),
                    ..GeneratorConfig::default()
                },
            )
        })
        .collect()
}

/// The stock minimum-support sweep, as exact fractions of the database
/// size: 2%, 4%, 6%, 8%, 10%.
pub fn default_sweep() -> Vec<Fraction> {
    (1..=5).map(|i| Fraction::new(i * 2, 100)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Classic,
    Improved,
    FpGrowth,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::Improved => "improved",
            Algorithm::FpGrowth => "fpgrowth",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classic" => Ok(Algorithm::Classic),
            "improved" => Ok(Algorithm::Improved),
            "fpgrowth" => Ok(Algorithm::FpGrowth),
            other => Err(format!(
                "unknown algorithm `{other}` (expected classic, improved, or fpgrowth)"
            )),
        }
    }
}

/// One measured cell of the comparison grid.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    pub algorithm: String,
    pub min_sup: f64,
    pub elapsed_ms: f64,
    pub records_read: u64,
    pub candidates: u64,
    pub frequent_count: u64,
    /// Percent fewer records read than the classic run on the same cell;
    /// absent on the classic rows themselves.
    pub reduction_pct: Option<f64>,
}

/// Runs classic and improved (and optionally FP-growth) over every dataset
/// and threshold. Fractional thresholds convert per dataset by exact
/// ceiling. Row order is fixed: dataset, then threshold, then algorithm.
pub fn run_comparison(
    datasets: &[(String, TransactionDB)],
    min_sups: &[Fraction],
    include_fpgrowth: bool,
) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for (label, db) in datasets {
        let m = db.num_transactions() as u64;
        for frac in min_sups {
            let abs = frac.ceil_mul(m).max(1);

            let start = Instant::now();
            let classic = mine_classic(db, abs);
            let classic_ms = start.elapsed().as_secs_f64() * 1e3;
            let baseline_reads = classic.stats.total_records_read();
            rows.push(BenchRow {
                dataset: label.clone(),
                algorithm: Algorithm::Classic.name().to_string(),
                min_sup: frac.as_f64(),
                elapsed_ms: classic_ms,
                records_read: baseline_reads,
                candidates: classic.stats.total_candidates(),
                frequent_count: classic.total_frequent(),
                reduction_pct: None,
            });

            let start = Instant::now();
            let improved = mine_improved(db, abs);
            let improved_ms = start.elapsed().as_secs_f64() * 1e3;
            rows.push(BenchRow {
                dataset: label.clone(),
                algorithm: Algorithm::Improved.name().to_string(),
                min_sup: frac.as_f64(),
                elapsed_ms: improved_ms,
                records_read: improved.stats.total_records_read(),
                candidates: improved.stats.total_candidates(),
                frequent_count: improved.total_frequent(),
                reduction_pct: reduction_rate(
                    baseline_reads as f64,
                    improved.stats.total_records_read() as f64,
                ),
            });

            if include_fpgrowth {
                let start = Instant::now();
                let fp = mine_fpgrowth(db, abs);
                let fp_ms = start.elapsed().as_secs_f64() * 1e3;
                let fp_reads = 2 * m;
                rows.push(BenchRow {
                    dataset: label.clone(),
                    algorithm: Algorithm::FpGrowth.name().to_string(),
                    min_sup: frac.as_f64(),
                    elapsed_ms: fp_ms,
                    records_read: fp_reads,
                    candidates: 0,
                    frequent_count: fp.iter().map(|l| l.rows.len() as u64).sum(),
                    reduction_pct: reduction_rate(baseline_reads as f64, fp_reads as f64),
                });
            }
        }
    }
    rows
}

/// Percent reduction of `improved` relative to `baseline`, rounded half up
/// to two decimals. None when the baseline is not positive.
pub fn reduction_rate(baseline: f64, improved: f64) -> Option<f64> {
    if baseline.is_nan() || baseline <= 0.0 {
        return None;
    }
    let pct = 100.0 * (baseline - improved) / baseline;
    Some((pct * 100.0).round() / 100.0)
}

pub const CSV_HEADER: &str =
    "dataset,algorithm,min_sup,elapsed_ms,records_read,candidates,frequent_count,reduction_pct";

/// CSV rendering. No field ever contains a comma: dataset labels are
/// caller-chosen single tokens and everything else is numeric.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let reduction = r
            .reduction_pct
            .map(|v| format!("{v:.2}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{:.3},{},{},{},{}",
            r.dataset,
            r.algorithm,
            r.min_sup,
            r.elapsed_ms,
            r.records_read,
            r.candidates,
            r.frequent_count,
            reduction
        );
    }
    out
}

/// JSON mirror of the CSV rows.
pub fn rows_to_json(rows: &[BenchRow]) -> String {
    serde_json::to_string_pretty(rows).expect("bench rows serialize")
}
