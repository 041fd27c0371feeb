//! Derive association rules from the mined levels and print them from
//! strongest to weakest.
//!
//! Run with `cargo run --example association_rules`.

use freqmine::fraction::Fraction;
use freqmine::rules::generate_rules;
use freqmine::tid_index::mine_improved;
use freqmine::transactions::TransactionDB;

const BASKET: &str = include_str!("../data/groceries.basket");

fn main() {
    let db = TransactionDB::parse_basket(BASKET, true)
        .expect("bundled basket parses")
        .db;
    let min_sup = 2;
    let min_conf = Fraction::new(3, 4);

    let result = mine_improved(&db, min_sup);
    let rules = generate_rules(&result.levels, min_conf, db.dictionary())
        .expect("complete levels yield rules");

    println!(
        "{} rules at min_sup {} and min_conf {}:",
        rules.len(),
        min_sup,
        min_conf.to_decimal_4dp()
    );
    for rule in &rules {
        println!("  {}", rule.display(db.dictionary()));
    }
}
