//! Count one candidate pair the cheap way: look up each member's TID list
//! in the level-1 index, scan only the shorter list, and compare the reads
//! against a full pass over the database.
//!
//! Run with `cargo run --example targeted_scan`.

use freqmine::apriori::{count_supports_full_scan, CandidateSet, ScanStats};
use freqmine::tid_index::{
    build_f1_index, count_candidate_targeted, min_support_item, target_transactions,
};
use freqmine::transactions::{Itemset, TransactionDB};

const BASKET: &str = include_str!("../data/groceries.basket");

fn main() {
    let db = TransactionDB::parse_basket(BASKET, true)
        .expect("bundled basket parses")
        .db;
    let dict = db.dictionary();
    let index = build_f1_index(&db, 2, &mut ScanStats::new());

    let pair = Itemset::new(vec![dict.id("Milk").unwrap(), dict.id("Cheese").unwrap()]);
    println!("candidate: {{{}}}", pair.display(dict));

    let item = min_support_item(&pair, &index).expect("members are indexed");
    let target = target_transactions(item, &index).unwrap();
    println!(
        "rarest member: {} (support {}, appears in {})",
        dict.name(item),
        target.len(),
        target
            .iter()
            .map(|t| format!("T{t}"))
            .collect::<Vec<_>>()
            .join(",")
    );

    let mut targeted = ScanStats::new();
    let (support, found) = count_candidate_targeted(&db, &pair, target, &mut targeted).unwrap();
    println!(
        "targeted count: support {} in {} ({} records read)",
        support,
        found
            .iter()
            .map(|t| format!("T{t}"))
            .collect::<Vec<_>>()
            .join(","),
        targeted.records_read_at(pair.len())
    );

    let mut full = ScanStats::new();
    let cand = CandidateSet {
        k: pair.len(),
        candidates: vec![pair.clone()],
    };
    count_supports_full_scan(&db, &cand, 2, &mut full);
    println!(
        "full scan of the same candidate: {} records read",
        full.records_read_at(pair.len())
    );
}
