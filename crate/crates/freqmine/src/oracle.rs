//! Brute-force reference miner.
//!
//! Enumerates every subset of every transaction and tallies exact supports
//! and TID lists. Exponential in transaction length, so it refuses
//! transactions longer than 15 items; it exists as ground truth for tests
//! and sanity checks, not for real mining.

use std::collections::BTreeMap;

use crate::transactions::{ItemId, Itemset, Tid, TransactionDB};

pub const MAX_BRUTE_FORCE_LEN: usize = 15;

/// Exact support and TID list per itemset, ordered by itemset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SupportMap {
    entries: BTreeMap<Itemset, (u64, Vec<Tid>)>,
}

impl SupportMap {
    pub fn support(&self, items: &Itemset) -> Option<u64> {
        self.entries.get(items).map(|e| e.0)
    }

    pub fn tids(&self, items: &Itemset) -> Option<&[Tid]> {
        self.entries.get(items).map(|e| e.1.as_slice())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Itemset, u64, &[Tid])> {
        self.entries.iter().map(|(k, v)| (k, v.0, v.1.as_slice()))
    }

    /// Entries of a given size, in itemset order.
    pub fn of_size(&self, k: usize) -> impl Iterator<Item = (&Itemset, u64, &[Tid])> {
        self.iter().filter(move |(s, _, _)| s.len() == k)
    }

    pub fn count_of_size(&self, k: usize) -> usize {
        self.of_size(k).count()
    }
}

/// Tallies every itemset of size 1..=max_k occurring in at least `min_sup`
/// transactions. Panics if `min_sup` or `max_k` is zero, or if any
/// transaction exceeds [`MAX_BRUTE_FORCE_LEN`] items.
pub fn brute_force_frequent(db: &TransactionDB, min_sup: u64, max_k: usize) -> SupportMap {
    assert!(min_sup >= 1, "min_sup must be at least 1");
    assert!(max_k >= 1, "max_k must be at least 1");
    let mut acc: BTreeMap<Itemset, (u64, Vec<Tid>)> = BTreeMap::new();
    for t in db.transactions() {
        let ids = t.items.ids();
        assert!(
            ids.len() <= MAX_BRUTE_FORCE_LEN,
            "brute force oracle is limited to transactions of at most {MAX_BRUTE_FORCE_LEN} items"
        );
        for mask in 1u32..(1u32 << ids.len()) {
            if (mask.count_ones() as usize) > max_k {
                continue;
            }
            let subset: Vec<ItemId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &id)| id)
                .collect();
            let entry = acc.entry(Itemset::from_sorted(subset)).or_default();
            entry.0 += 1;
            entry.1.push(t.tid);
        }
    }
    acc.retain(|_, (sup, _)| *sup >= min_sup);
    SupportMap { entries: acc }
}
