//! Table, CSV, and JSON renderings of mining output.
//!
//! Table rows print as `items | support | tids`; CSV fields are comma-free
//! by construction (item names inside a field are space-joined).

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::apriori::{FrequentLevel, MineResult, ScanStats};
use crate::bench::reduction_rate;
use crate::rules::AssociationRule;
use crate::transactions::{ItemDictionary, Itemset, Tid};

fn tid_list(found: Option<&[Tid]>) -> String {
    match found {
        None => "-".to_string(),
        Some(tids) => tids
            .iter()
            .map(|t| format!("T{t}"))
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn names(set: &Itemset, dict: &ItemDictionary) -> Vec<String> {
    set.ids()
        .iter()
        .map(|&id| dict.name(id).to_string())
        .collect()
}

pub fn levels_table(levels: &[FrequentLevel], dict: &ItemDictionary) -> String {
    if levels.is_empty() {
        return String::from("no frequent itemsets\n");
    }
    let mut out = String::new();
    for level in levels {
        let _ = writeln!(out, "F{}: {} itemsets", level.k, level.rows.len());
        for row in &level.rows {
            let _ = writeln!(
                out,
                "{} | {} | {}",
                row.items.display(dict),
                row.support,
                tid_list(row.found_in.as_deref())
            );
        }
    }
    out
}

pub fn levels_csv(levels: &[FrequentLevel], dict: &ItemDictionary) -> String {
    let mut out = String::from("k,itemset,support,found_in\n");
    for level in levels {
        for row in &level.rows {
            let found = match &row.found_in {
                None => String::new(),
                Some(tids) => tids
                    .iter()
                    .map(|t| format!("T{t}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            let _ = writeln!(
                out,
                "{},{},{},{}",
                level.k,
                names(&row.items, dict).join(" "),
                row.support,
                found
            );
        }
    }
    out
}

pub fn levels_json_value(levels: &[FrequentLevel], dict: &ItemDictionary) -> Value {
    json!(levels
        .iter()
        .map(|level| {
            json!({
                "k": level.k,
                "itemsets": level.rows.iter().map(|row| {
                    json!({
                        "items": names(&row.items, dict),
                        "support": row.support,
                        "found_in": row.found_in,
                    })
                }).collect::<Vec<_>>(),
            })
        })
        .collect::<Vec<_>>())
}

pub fn stats_json_value(stats: &ScanStats) -> Value {
    json!({
        "records_read": stats.total_records_read(),
        "passes": stats.passes(),
        "candidates": stats.total_candidates(),
        "levels": stats.levels().iter().enumerate().map(|(i, l)| {
            json!({
                "k": i + 1,
                "records_read": l.records_read,
                "candidates": l.candidates_generated,
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn rules_table(rules: &[AssociationRule], dict: &ItemDictionary) -> String {
    if rules.is_empty() {
        return String::from("no rules\n");
    }
    let mut out = String::new();
    for rule in rules {
        let _ = writeln!(out, "{}", rule.display(dict));
    }
    out
}

pub fn rules_csv(rules: &[AssociationRule], dict: &ItemDictionary) -> String {
    let mut out = String::from("antecedent,consequent,support,confidence\n");
    for rule in rules {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            names(&rule.antecedent, dict).join(" "),
            names(&rule.consequent, dict).join(" "),
            rule.support,
            rule.confidence.to_decimal_4dp()
        );
    }
    out
}

pub fn rules_json_value(rules: &[AssociationRule], dict: &ItemDictionary) -> Value {
    json!(rules
        .iter()
        .map(|rule| {
            json!({
                "antecedent": names(&rule.antecedent, dict),
                "consequent": names(&rule.consequent, dict),
                "support": rule.support,
                "confidence": rule.confidence.as_f64(),
                "confidence_display": rule.confidence.to_decimal_4dp(),
            })
        })
        .collect::<Vec<_>>())
}

/// Side-by-side per-level scan costs of a full-scan run and a targeted run
/// over the same input and threshold.
pub fn compare_table(classic: &MineResult, improved: &MineResult) -> String {
    let depth = classic
        .stats
        .levels()
        .len()
        .max(improved.stats.levels().len());
    let mut out = String::from("level | candidates | full_scan_reads | targeted_reads\n");
    for k in 1..=depth {
        let _ = writeln!(
            out,
            "{k} | {} | {} | {}",
            classic.stats.candidates_at(k),
            classic.stats.records_read_at(k),
            improved.stats.records_read_at(k)
        );
    }
    let base = classic.stats.total_records_read();
    let targeted = improved.stats.total_records_read();
    let _ = writeln!(
        out,
        "total | {} | {} | {}",
        classic.stats.total_candidates(),
        base,
        targeted
    );
    match reduction_rate(base as f64, targeted as f64) {
        Some(pct) => {
            let _ = writeln!(out, "records_read reduction: {pct:.2}%");
        }
        None => {
            let _ = writeln!(out, "records_read reduction: n/a");
        }
    }
    let (a, b) = (classic.total_frequent(), improved.total_frequent());
    if a == b {
        let _ = writeln!(out, "frequent itemsets: {a} (equal)");
    } else {
        let _ = writeln!(out, "frequent itemsets: MISMATCH ({a} vs {b})");
    }
    out
}
