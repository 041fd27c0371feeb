//! Mine the same input with full-database counting scans and with targeted
//! TID-list scans, then show the per-level read counts side by side.
//!
//! Run with `cargo run --example compare_scans`.

use freqmine::apriori::mine_classic;
use freqmine::report;
use freqmine::tid_index::mine_improved;
use freqmine::transactions::TransactionDB;

const BASKET: &str = include_str!("../data/groceries.basket");

fn main() {
    let db = TransactionDB::parse_basket(BASKET, true)
        .expect("bundled basket parses")
        .db;
    let min_sup = 2;

    let classic = mine_classic(&db, min_sup);
    let improved = mine_improved(&db, min_sup);

    println!(
        "{} transactions, min_sup {}\n",
        db.num_transactions(),
        min_sup
    );
    print!("{}", report::compare_table(&classic, &improved));
}
