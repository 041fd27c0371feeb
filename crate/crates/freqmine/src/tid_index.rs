//! TID-indexed mining: targeted counting scans.
//!
//! The level-1 pass is extended to record, for every frequent item, the ids
//! of the transactions containing it. When a candidate is counted later,
//! only the TID list of its least-supported member item is fetched: any
//! transaction containing the whole candidate necessarily contains that
//! item, so nothing is missed while most of the database is never touched.

use std::sync::Arc;

use crate::apriori::{
    count_items, generate_candidates, FrequentItemset, FrequentLevel, MineOptions, MineResult,
    ScanStats,
};
use crate::error::{Error, Result};
use crate::transactions::{subset_of_sorted, ItemDictionary, ItemId, Itemset, Tid, TransactionDB};

/// One row of the index: a frequent item, its support, and the ascending
/// list of transaction ids containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F1Entry {
    pub item: ItemId,
    pub support: u64,
    pub tids: Vec<Tid>,
}

/// The level-1 index: entries in item-id order plus an id lookup table.
#[derive(Debug, Clone)]
pub struct F1Index {
    entries: Vec<F1Entry>,
    pos: Vec<Option<u32>>,
    dict: Arc<ItemDictionary>,
}

impl F1Index {
    pub fn entries(&self) -> &[F1Entry] {
        &self.entries
    }

    pub fn get(&self, item: ItemId) -> Option<&F1Entry> {
        let slot = *self.pos.get(item as usize)?;
        slot.map(|i| &self.entries[i as usize])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dictionary(&self) -> &ItemDictionary {
        &self.dict
    }

    /// The index viewed as a frequent level, identical to what the plain
    /// level-1 scan returns.
    pub fn to_level(&self) -> FrequentLevel {
        FrequentLevel {
            k: 1,
            rows: self
                .entries
                .iter()
                .map(|e| FrequentItemset {
                    items: Itemset::single(e.item),
                    support: e.support,
                    found_in: Some(e.tids.clone()),
                })
                .collect(),
        }
    }
}

/// Builds the index in one pass over the records (partition by partition
/// when a plan is given; partial lists merge additively in partition order,
/// which keeps every TID list globally sorted).
pub fn build_f1_index(db: &TransactionDB, min_sup: u64, stats: &mut ScanStats) -> F1Index {
    build_f1_index_with(db, min_sup, &MineOptions::default(), stats)
        .expect("default options cannot fail")
}

pub fn build_f1_index_with(
    db: &TransactionDB,
    min_sup: u64,
    opts: &MineOptions,
    stats: &mut ScanStats,
) -> Result<F1Index> {
    assert!(min_sup >= 1, "min_sup must be at least 1");
    let counts = count_items(db, opts)?;
    stats.add_candidates(1, db.num_items() as u64);
    stats.add_records(1, db.num_transactions() as u64);
    stats.add_passes(1);
    let mut entries = Vec::new();
    let mut pos = vec![None; db.num_items()];
    for (id, (support, tids)) in counts.into_iter().enumerate() {
        if support >= min_sup {
            pos[id] = Some(entries.len() as u32);
            entries.push(F1Entry {
                item: id as ItemId,
                support,
                tids,
            });
        }
    }
    Ok(F1Index {
        entries,
        pos,
        dict: db.shared_dictionary(),
    })
}

/// The candidate member with the smallest support; ties break toward the
/// lexicographically smallest item name so runs are reproducible.
pub fn min_support_item(candidate: &Itemset, index: &F1Index) -> Result<ItemId> {
    let mut best: Option<&F1Entry> = None;
    for &id in candidate.ids() {
        let entry = index
            .get(id)
            .ok_or_else(|| Error::IndexMiss(index.dict.name(id).to_string()))?;
        best = Some(match best {
            None => entry,
            Some(cur) => {
                let name = |e: &F1Entry| index.dict.name(e.item);
                if (entry.support, name(entry)) < (cur.support, name(cur)) {
                    entry
                } else {
                    cur
                }
            }
        });
    }
    best.map(|e| e.item)
        .ok_or_else(|| Error::IndexMiss(String::from("<empty candidate>")))
}

/// The TID list a targeted count of `item` will fetch.
pub fn target_transactions(item: ItemId, index: &F1Index) -> Result<&[Tid]> {
    index
        .get(item)
        .map(|e| e.tids.as_slice())
        .ok_or_else(|| Error::IndexMiss(index.dict.name(item).to_string()))
}

/// Counts one candidate by fetching only the records in `target`, adding
/// `target.len()` reads at the candidate's level. Returns the support and
/// the ids of the matching transactions.
pub fn count_candidate_targeted(
    db: &TransactionDB,
    candidate: &Itemset,
    target: &[Tid],
    stats: &mut ScanStats,
) -> Result<(u64, Vec<Tid>)> {
    let found = scan_targets(db, candidate, target)?;
    stats.add_records(candidate.len(), target.len() as u64);
    stats.add_passes(1);
    Ok((found.len() as u64, found))
}

fn scan_targets(db: &TransactionDB, candidate: &Itemset, target: &[Tid]) -> Result<Vec<Tid>> {
    let mut found = Vec::new();
    for &tid in target {
        let t = db.by_tid(tid)?;
        if subset_of_sorted(candidate.ids(), t.items.ids()) {
            found.push(tid);
        }
    }
    Ok(found)
}

/// The level-wise miner with targeted counting: identical output to the
/// full-scan miner, far fewer record reads past level 1.
pub fn mine_improved(db: &TransactionDB, min_sup: u64) -> MineResult {
    mine_improved_with(db, min_sup, &MineOptions::default()).expect("default options cannot fail")
}

pub fn mine_improved_with(
    db: &TransactionDB,
    min_sup: u64,
    opts: &MineOptions,
) -> Result<MineResult> {
    let mut stats = ScanStats::new();
    let mut levels = Vec::new();
    let index = build_f1_index_with(db, min_sup, opts, &mut stats)?;
    if index.is_empty() {
        return Ok(MineResult { levels, stats });
    }
    levels.push(index.to_level());
    loop {
        let cand = generate_candidates(levels.last().unwrap());
        if cand.is_empty() {
            break;
        }
        stats.add_candidates(cand.k, cand.len() as u64);
        let counted = crate::parallel::parallel_map(
            &cand.candidates,
            opts.threads.max(1),
            |c| -> Result<(u64, Vec<Tid>, u64)> {
                let item = min_support_item(c, &index)?;
                let target = target_transactions(item, &index)?;
                let found = scan_targets(db, c, target)?;
                Ok((found.len() as u64, found, target.len() as u64))
            },
        );
        let mut rows = Vec::new();
        for (items, counted) in cand.candidates.iter().zip(counted) {
            let (support, found, reads) = counted?;
            stats.add_records(cand.k, reads);
            stats.add_passes(1);
            if support >= min_sup {
                rows.push(FrequentItemset {
                    items: items.clone(),
                    support,
                    found_in: Some(found),
                });
            }
        }
        if rows.is_empty() {
            break;
        }
        levels.push(FrequentLevel { k: cand.k, rows });
    }
    Ok(MineResult { levels, stats })
}
