//! Frequent-itemset mining over transaction databases.
//!
//! Three miners produce identical frequent itemsets over the same input and
//! threshold:
//!
//! * [`apriori::mine_classic`]: level-wise candidate generation where every
//!   candidate is counted by scanning all m transaction records.
//! * [`tid_index::mine_improved`]: the same level-wise search, but the
//!   level-1 pass also records each frequent item's transaction-id list;
//!   counting a candidate then touches only the TID list of its rarest
//!   member item.
//! * [`fpgrowth::mine_fpgrowth`]: two scans build a frequent-pattern tree
//!   that is mined recursively with no candidate generation at all.
//!
//! Scan work is tracked in [`apriori::ScanStats`] as per-candidate record
//! reads, giving a deterministic, hardware-independent cost measure that
//! the [`bench`] harness reports next to wall-clock times.
//! [`rules::generate_rules`] turns mined levels into association rules with
//! exact rational confidences, and [`oracle::brute_force_frequent`] is the
//! slow ground truth the fast paths are tested against.
//!
//! ```
//! use freqmine::transactions::TransactionDB;
//!
//! let parsed = TransactionDB::parse_basket("bread milk\nbread butter\nmilk bread", false)?;
//! let result = freqmine::mine_improved(&parsed.db, 2);
//! assert_eq!(result.total_frequent(), 3); // bread, milk, {bread, milk}
//! # Ok::<(), freqmine::Error>(())
//! ```

pub mod apriori;
pub mod bench;
pub mod error;
pub mod fpgrowth;
pub mod fraction;
pub mod oracle;
mod parallel;
pub mod report;
pub mod rules;
pub mod tid_index;
pub mod transactions;

pub use crate::apriori::{
    count_supports_full_scan, find_frequent_1, generate_candidates, mine_classic,
    mine_classic_with, CandidateSet, FrequentItemset, FrequentLevel, MineOptions, MineResult,
    ScanStats,
};
pub use crate::error::{Error, Result};
pub use crate::fpgrowth::{build_fptree, mine_fpgrowth, FPTree};
pub use crate::fraction::Fraction;
pub use crate::rules::{generate_rules, AssociationRule};
pub use crate::tid_index::{build_f1_index, mine_improved, mine_improved_with, F1Index};
pub use crate::transactions::{
    compute_partition_count, ItemDictionary, ItemId, Itemset, PartitionPlan, Tid, Transaction,
    TransactionDB,
};

/// Worker-thread cap read from `FREQMINE_THREADS`. Unset, empty, `0`, or
/// unparsable values mean sequential. Thread count never changes any
/// output, only how counting work is spread.
pub fn threads_from_env() -> usize {
    std::env::var("FREQMINE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}
