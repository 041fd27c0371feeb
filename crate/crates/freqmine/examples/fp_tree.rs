//! Build a frequent-pattern tree, print its shape, and walk one item's
//! conditional pattern base.
//!
//! Run with `cargo run --example fp_tree`.

use freqmine::apriori::ScanStats;
use freqmine::fpgrowth::{build_fptree, mine_fpgrowth, order_items};
use freqmine::tid_index::build_f1_index;
use freqmine::transactions::TransactionDB;

const BASKET: &str = include_str!("../data/groceries.basket");

fn main() {
    let db = TransactionDB::parse_basket(BASKET, true)
        .expect("bundled basket parses")
        .db;
    let dict = db.dictionary();
    let min_sup = 3;

    let index = build_f1_index(&db, min_sup, &mut ScanStats::new());
    let order: Vec<&str> = order_items(&index)
        .iter()
        .map(|&id| dict.name(id))
        .collect();
    println!(
        "insertion order (support desc, name asc): {}",
        order.join(", ")
    );

    let tree = build_fptree(&db, min_sup);
    println!("\ntree at min_sup {min_sup}:");
    print!("{}", tree.dump());

    let jam = dict.id("Jam").unwrap();
    let base = tree.pattern_base(jam).unwrap();
    println!("\nconditional pattern base of Jam:");
    for (path, count) in &base.paths {
        let names: Vec<&str> = path.iter().map(|&id| dict.name(id)).collect();
        println!("  {{{}}} x{count}", names.join(", "));
    }

    let levels = mine_fpgrowth(&db, min_sup);
    let total: usize = levels.iter().map(|l| l.rows.len()).sum();
    println!("\n{total} frequent itemsets mined from the tree");
}
