//! Mine frequent itemsets from the bundled grocery basket and print every
//! level with supports and TID lists.
//!
//! Run with `cargo run --example mine_basket`.

use freqmine::report;
use freqmine::tid_index::mine_improved;
use freqmine::transactions::TransactionDB;

const BASKET: &str = include_str!("../data/groceries.basket");

fn main() {
    let db = TransactionDB::parse_basket(BASKET, true)
        .expect("bundled basket parses")
        .db;
    let min_sup = 2;
    let result = mine_improved(&db, min_sup);

    println!(
        "{} transactions, {} items, min_sup {}",
        db.num_transactions(),
        db.num_items(),
        min_sup
    );
    println!(
        "{} frequent itemsets across {} levels\n",
        result.total_frequent(),
        result.levels.len()
    );
    print!("{}", report::levels_table(&result.levels, db.dictionary()));
}
