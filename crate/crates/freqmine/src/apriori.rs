//! Level-wise frequent-itemset mining with full-database counting scans.
//!
//! This is the baseline miner: candidates of size k are generated from the
//! frequent (k-1)-itemsets, then every candidate is counted by scanning all
//! m transaction records. [`ScanStats`] makes that cost visible so the
//! targeted variant in [`crate::tid_index`] can be compared against it.

use crate::error::Result;
use crate::parallel::parallel_map;
use crate::transactions::{
    subset_of_sorted, ItemId, Itemset, PartitionPlan, Tid, Transaction, TransactionDB,
};

/// One frequent itemset with its support count and, for scan-based miners,
/// the ids of the transactions it was found in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentItemset {
    pub items: Itemset,
    pub support: u64,
    pub found_in: Option<Vec<Tid>>,
}

/// All frequent itemsets of one size, rows in ascending itemset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentLevel {
    pub k: usize,
    pub rows: Vec<FrequentItemset>,
}

impl FrequentLevel {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, items: &Itemset) -> Option<&FrequentItemset> {
        self.rows
            .binary_search_by(|r| r.items.cmp(items))
            .ok()
            .map(|i| &self.rows[i])
    }

    pub fn contains_ids(&self, ids: &[ItemId]) -> bool {
        self.rows
            .binary_search_by(|r| r.items.ids().cmp(ids))
            .is_ok()
    }
}

/// Candidate itemsets of size k awaiting a counting scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub k: usize,
    pub candidates: Vec<Itemset>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Per-level scan accounting.
///
/// `records_read` counts transaction-record examinations per candidate: a
/// full-scan pass over m records for a set of n candidates adds m * n, a
/// targeted pass adds only the records actually fetched. The level-1 pass
/// tallies every item at once and adds exactly m. `passes` counts logical
/// per-candidate scans, so for the full-scan miner
/// `records_read == m * passes` holds level by level after level 1.
/// `candidates_generated` is recorded when a level's candidate set is built.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanStats {
    levels: Vec<LevelScan>,
    passes: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LevelScan {
    pub records_read: u64,
    pub candidates_generated: u64,
}

impl ScanStats {
    pub fn new() -> Self {
        Self::default()
    }

    fn level_mut(&mut self, k: usize) -> &mut LevelScan {
        assert!(k >= 1);
        if self.levels.len() < k {
            self.levels.resize(k, LevelScan::default());
        }
        &mut self.levels[k - 1]
    }

    pub(crate) fn add_records(&mut self, k: usize, n: u64) {
        self.level_mut(k).records_read += n;
    }

    pub(crate) fn add_candidates(&mut self, k: usize, n: u64) {
        self.level_mut(k).candidates_generated += n;
    }

    pub(crate) fn add_passes(&mut self, n: u64) {
        self.passes += n;
    }

    /// Levels in order; index 0 holds level 1.
    pub fn levels(&self) -> &[LevelScan] {
        &self.levels
    }

    pub fn records_read_at(&self, k: usize) -> u64 {
        self.levels
            .get(k.wrapping_sub(1))
            .map_or(0, |l| l.records_read)
    }

    pub fn candidates_at(&self, k: usize) -> u64 {
        self.levels
            .get(k.wrapping_sub(1))
            .map_or(0, |l| l.candidates_generated)
    }

    pub fn total_records_read(&self) -> u64 {
        self.levels.iter().map(|l| l.records_read).sum()
    }

    pub fn total_candidates(&self) -> u64 {
        self.levels.iter().map(|l| l.candidates_generated).sum()
    }

    pub fn passes(&self) -> u64 {
        self.passes
    }

    /// Adds another accounting onto this one, level by level.
    pub fn merge(&mut self, other: &ScanStats) {
        for (k, l) in other.levels.iter().enumerate() {
            let mine = self.level_mut(k + 1);
            mine.records_read += l.records_read;
            mine.candidates_generated += l.candidates_generated;
        }
        self.passes += other.passes;
    }
}

/// Frequent levels (1..K, all nonempty) plus the scan accounting that
/// produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineResult {
    pub levels: Vec<FrequentLevel>,
    pub stats: ScanStats,
}

impl MineResult {
    pub fn level(&self, k: usize) -> Option<&FrequentLevel> {
        self.levels.iter().find(|l| l.k == k)
    }

    pub fn total_frequent(&self) -> u64 {
        self.levels.iter().map(|l| l.rows.len() as u64).sum()
    }

    pub fn iter_itemsets(&self) -> impl Iterator<Item = &FrequentItemset> {
        self.levels.iter().flat_map(|l| l.rows.iter())
    }
}

/// Execution knobs shared by the miners. `plan` splits counting scans into
/// contiguous partitions whose partial results merge deterministically;
/// `threads` caps worker threads (0 or 1 means sequential). Neither changes
/// any output, including the scan accounting.
#[derive(Debug, Clone, Default)]
pub struct MineOptions {
    pub plan: Option<PartitionPlan>,
    pub threads: usize,
}

impl MineOptions {
    pub fn sequential() -> Self {
        Self::default()
    }
}

/// Per-item (support, tid list) counting shared by the level-1 scan and the
/// F1 index build. One pass over the records, optionally split by plan.
pub(crate) fn count_items(db: &TransactionDB, opts: &MineOptions) -> Result<Vec<(u64, Vec<Tid>)>> {
    let n = db.num_items();
    let slices: Vec<&[Transaction]> = match &opts.plan {
        Some(plan) => plan.slices(db)?,
        None => vec![db.transactions()],
    };
    let partials = parallel_map(&slices, opts.threads.max(1), |part| {
        let mut counts: Vec<(u64, Vec<Tid>)> = vec![(0, Vec::new()); n];
        for t in *part {
            for &id in t.items.ids() {
                let e = &mut counts[id as usize];
                e.0 += 1;
                e.1.push(t.tid);
            }
        }
        counts
    });
    let mut merged: Vec<(u64, Vec<Tid>)> = vec![(0, Vec::new()); n];
    for part in partials {
        for (id, (c, tids)) in part.into_iter().enumerate() {
            merged[id].0 += c;
            merged[id].1.extend(tids);
        }
    }
    Ok(merged)
}

/// Level-1 scan: tallies every item in one pass over the records and keeps
/// those at or above `min_sup`, in first-appearance (id) order.
pub fn find_frequent_1(db: &TransactionDB, min_sup: u64, stats: &mut ScanStats) -> FrequentLevel {
    find_frequent_1_with(db, min_sup, &MineOptions::default(), stats)
        .expect("default options cannot fail")
}

pub fn find_frequent_1_with(
    db: &TransactionDB,
    min_sup: u64,
    opts: &MineOptions,
    stats: &mut ScanStats,
) -> Result<FrequentLevel> {
    assert!(min_sup >= 1, "min_sup must be at least 1");
    let counts = count_items(db, opts)?;
    stats.add_candidates(1, db.num_items() as u64);
    stats.add_records(1, db.num_transactions() as u64);
    stats.add_passes(1);
    let rows = counts
        .into_iter()
        .enumerate()
        .filter(|(_, (sup, _))| *sup >= min_sup)
        .map(|(id, (support, tids))| FrequentItemset {
            items: Itemset::single(id as ItemId),
            support,
            found_in: Some(tids),
        })
        .collect();
    Ok(FrequentLevel { k: 1, rows })
}

/// Joins frequent (k-1)-itemsets that share their first k-2 items, then
/// prunes any candidate with an infrequent (k-1)-subset. Output is in
/// ascending itemset order with no duplicates.
pub fn generate_candidates(prev: &FrequentLevel) -> CandidateSet {
    let k = prev.k + 1;
    let prefix = prev.k - 1;
    let rows = &prev.rows;
    let mut candidates = Vec::new();
    for i in 0..rows.len() {
        let a = rows[i].items.ids();
        for row_j in &rows[i + 1..] {
            let b = row_j.items.ids();
            if a[..prefix] != b[..prefix] {
                break;
            }
            let mut ids = a.to_vec();
            ids.push(b[prefix]);
            let cand = Itemset::from_sorted(ids);
            if all_proper_subsets_frequent(&cand, prev) {
                candidates.push(cand);
            }
        }
    }
    CandidateSet { k, candidates }
}

fn all_proper_subsets_frequent(cand: &Itemset, prev: &FrequentLevel) -> bool {
    let ids = cand.ids();
    let mut sub = Vec::with_capacity(ids.len() - 1);
    (0..ids.len()).all(|skip| {
        sub.clear();
        sub.extend(
            ids.iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &x)| x),
        );
        prev.contains_ids(&sub)
    })
}

/// Counts every candidate by scanning all m records, recording m reads per
/// candidate. Rows keep candidate order, which is ascending.
pub fn count_supports_full_scan(
    db: &TransactionDB,
    cand: &CandidateSet,
    min_sup: u64,
    stats: &mut ScanStats,
) -> FrequentLevel {
    count_supports_full_scan_with(db, cand, min_sup, &MineOptions::default(), stats)
        .expect("default options cannot fail")
}

pub fn count_supports_full_scan_with(
    db: &TransactionDB,
    cand: &CandidateSet,
    min_sup: u64,
    opts: &MineOptions,
    stats: &mut ScanStats,
) -> Result<FrequentLevel> {
    let n = cand.candidates.len();
    if n == 0 {
        return Ok(FrequentLevel {
            k: cand.k,
            rows: Vec::new(),
        });
    }
    let slices: Vec<&[Transaction]> = match &opts.plan {
        Some(plan) => plan.slices(db)?,
        None => vec![db.transactions()],
    };
    let partials = parallel_map(&slices, opts.threads.max(1), |part| {
        let mut counts: Vec<(u64, Vec<Tid>)> = vec![(0, Vec::new()); n];
        for t in *part {
            for (ci, c) in cand.candidates.iter().enumerate() {
                if subset_of_sorted(c.ids(), t.items.ids()) {
                    counts[ci].0 += 1;
                    counts[ci].1.push(t.tid);
                }
            }
        }
        counts
    });
    let mut merged: Vec<(u64, Vec<Tid>)> = vec![(0, Vec::new()); n];
    for part in partials {
        for (ci, (c, tids)) in part.into_iter().enumerate() {
            merged[ci].0 += c;
            merged[ci].1.extend(tids);
        }
    }
    stats.add_records(cand.k, db.num_transactions() as u64 * n as u64);
    stats.add_passes(n as u64);
    let rows = cand
        .candidates
        .iter()
        .zip(merged)
        .filter(|(_, (sup, _))| *sup >= min_sup)
        .map(|(items, (support, tids))| FrequentItemset {
            items: items.clone(),
            support,
            found_in: Some(tids),
        })
        .collect();
    Ok(FrequentLevel { k: cand.k, rows })
}

/// The full level-wise miner with whole-database counting scans.
pub fn mine_classic(db: &TransactionDB, min_sup: u64) -> MineResult {
    mine_classic_with(db, min_sup, &MineOptions::default()).expect("default options cannot fail")
}

pub fn mine_classic_with(
    db: &TransactionDB,
    min_sup: u64,
    opts: &MineOptions,
) -> Result<MineResult> {
    let mut stats = ScanStats::new();
    let mut levels = Vec::new();
    let f1 = find_frequent_1_with(db, min_sup, opts, &mut stats)?;
    if f1.is_empty() {
        return Ok(MineResult { levels, stats });
    }
    levels.push(f1);
    loop {
        let cand = generate_candidates(levels.last().unwrap());
        if cand.is_empty() {
            break;
        }
        stats.add_candidates(cand.k, cand.len() as u64);
        let level = count_supports_full_scan_with(db, &cand, min_sup, opts, &mut stats)?;
        if level.is_empty() {
            break;
        }
        levels.push(level);
    }
    Ok(MineResult { levels, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_frequent;

    const GROCERIES: &str = include_str!("../data/groceries.basket");

    fn sample() -> TransactionDB {
        TransactionDB::parse_basket(GROCERIES, true).unwrap().db
    }

    fn named(db: &TransactionDB, names: &[&str]) -> Itemset {
        Itemset::new(
            names
                .iter()
                .map(|n| db.dictionary().id(n).unwrap())
                .collect(),
        )
    }

    fn level_from(sets: &[&[ItemId]], k: usize) -> FrequentLevel {
        let mut rows: Vec<FrequentItemset> = sets
            .iter()
            .map(|ids| FrequentItemset {
                items: Itemset::new(ids.to_vec()),
                support: 1,
                found_in: None,
            })
            .collect();
        rows.sort_by(|a, b| a.items.cmp(&b.items));
        FrequentLevel { k, rows }
    }

    #[test]
    fn level_1_supports_and_tids() {
        let db = sample();
        let mut stats = ScanStats::new();
        let f1 = find_frequent_1(&db, 2, &mut stats);
        assert_eq!(f1.k, 1);
        assert_eq!(f1.len(), 6);
        let milk = f1.get(&named(&db, &["Milk"])).unwrap();
        assert_eq!(milk.support, 5);
        assert_eq!(milk.found_in.as_deref(), Some(&[1, 2, 5, 6, 7][..]));
        assert_eq!(stats.records_read_at(1), 7);
        assert_eq!(stats.passes(), 1);
        assert_eq!(stats.candidates_at(1), 6);

        let mut stats = ScanStats::new();
        let f1 = find_frequent_1(&db, 3, &mut stats);
        assert_eq!(f1.len(), 5);
        assert!(f1.get(&named(&db, &["Coffee"])).is_none());
    }

    #[test]
    fn candidate_join_on_singletons() {
        let db = sample();
        let mut stats = ScanStats::new();
        let f1 = find_frequent_1(&db, 2, &mut stats);
        let c2 = generate_candidates(&f1);
        assert_eq!(c2.k, 2);
        assert_eq!(c2.len(), 15);
        assert!(c2.candidates.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn candidate_prune_drops_unsupported_subsets() {
        // {a,b} and {a,c} join to {a,b,c}, but {b,c} is not frequent
        let prev = level_from(&[&[0, 1], &[0, 2]], 2);
        assert!(generate_candidates(&prev).is_empty());

        let prev = level_from(&[&[0, 1], &[0, 2], &[1, 2]], 2);
        let c3 = generate_candidates(&prev);
        assert_eq!(c3.candidates, vec![Itemset::new(vec![0, 1, 2])]);
    }

    #[test]
    fn sample_c3_has_seven_candidates() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let f2 = result.level(2).unwrap();
        assert_eq!(f2.len(), 10);
        let c3 = generate_candidates(f2);
        assert_eq!(c3.len(), 7);
        assert!(c3
            .candidates
            .contains(&named(&db, &["Milk", "Bread", "Butter"])));
        assert!(c3
            .candidates
            .contains(&named(&db, &["Cheese", "Bread", "Butter"])));
        // pruned: {Milk, Cheese, Jam} would need frequent {Cheese, Jam}
        assert!(!c3
            .candidates
            .contains(&named(&db, &["Milk", "Cheese", "Jam"])));
    }

    #[test]
    fn full_scan_counts_and_accounting() {
        let db = sample();
        let cand = CandidateSet {
            k: 2,
            candidates: vec![
                named(&db, &["Milk", "Cheese"]),
                named(&db, &["Bread", "Jam"]),
            ],
        };
        let mut stats = ScanStats::new();
        let level = count_supports_full_scan(&db, &cand, 2, &mut stats);
        assert_eq!(stats.records_read_at(2), 14);
        assert_eq!(stats.passes(), 2);
        let mc = level.get(&named(&db, &["Milk", "Cheese"])).unwrap();
        assert_eq!(mc.support, 2);
        assert_eq!(mc.found_in.as_deref(), Some(&[1, 7][..]));
        let bj = level.get(&named(&db, &["Bread", "Jam"])).unwrap();
        assert_eq!(bj.support, 3);
        assert_eq!(bj.found_in.as_deref(), Some(&[3, 6, 7][..]));
    }

    #[test]
    fn empty_candidate_set_reads_nothing() {
        let db = sample();
        let mut stats = ScanStats::new();
        let level = count_supports_full_scan(
            &db,
            &CandidateSet {
                k: 2,
                candidates: vec![],
            },
            2,
            &mut stats,
        );
        assert!(level.is_empty());
        assert_eq!(stats.total_records_read(), 0);
        assert_eq!(stats.passes(), 0);
    }

    #[test]
    fn classic_mine_matches_oracle_on_the_sample() {
        let db = sample();
        let result = mine_classic(&db, 2);
        assert_eq!(result.levels.len(), 4);
        let oracle = brute_force_frequent(&db, 2, 7);
        for level in &result.levels {
            assert_eq!(
                level.len(),
                oracle.count_of_size(level.k),
                "level {}",
                level.k
            );
            for row in &level.rows {
                assert_eq!(oracle.support(&row.items), Some(row.support));
                assert_eq!(oracle.tids(&row.items), row.found_in.as_deref());
            }
        }
        // the four-item level survives: {Milk, Bread, Butter, Jam} in T6 and T7
        let f4 = result.level(4).unwrap();
        assert_eq!(f4.len(), 1);
        assert_eq!(
            f4.rows[0].items,
            named(&db, &["Milk", "Bread", "Butter", "Jam"])
        );
        assert_eq!(f4.rows[0].found_in.as_deref(), Some(&[6, 7][..]));
    }

    #[test]
    fn classic_scan_accounting_on_the_sample() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let stats = &result.stats;
        assert_eq!(stats.records_read_at(1), 7);
        assert_eq!(stats.records_read_at(2), 7 * 15);
        assert_eq!(stats.records_read_at(3), 7 * 7);
        assert_eq!(stats.records_read_at(4), 7);
        assert_eq!(stats.total_records_read(), 168);
        assert_eq!(stats.passes(), 24);
        assert_eq!(stats.candidates_at(2), 15);
        assert_eq!(stats.candidates_at(3), 7);
        assert_eq!(stats.candidates_at(4), 1);
        // every full-scan level reads m records per candidate
        for k in 2..=4 {
            assert_eq!(stats.records_read_at(k), 7 * stats.candidates_at(k));
        }
    }

    #[test]
    fn high_threshold_mines_nothing() {
        let db = sample();
        let result = mine_classic(&db, 8);
        assert!(result.levels.is_empty());
        assert_eq!(result.stats.records_read_at(1), 7);
    }

    #[test]
    fn partitioned_and_threaded_runs_are_identical() {
        let db = sample();
        let plain = mine_classic(&db, 2);
        for parts in [1, 2, 3, 7] {
            let opts = MineOptions {
                plan: Some(PartitionPlan::with_parts(&db, parts).unwrap()),
                threads: 4,
            };
            let split = mine_classic_with(&db, 2, &opts).unwrap();
            assert_eq!(plain, split, "parts={parts}");
        }
    }
}
