//! Association-rule generation from mined frequent levels.
//!
//! Every frequent itemset L of size >= 2 is split into every non-empty
//! antecedent A and consequent L - A. Confidence sup(L) / sup(A) is kept
//! exact; nothing is rounded until display.

use std::collections::HashMap;

use crate::apriori::FrequentLevel;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::transactions::{ItemDictionary, ItemId, Itemset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationRule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    /// Support of the full itemset (antecedent plus consequent).
    pub support: u64,
    pub confidence: Fraction,
}

impl AssociationRule {
    /// `A => B | support | confidence` with four confidence decimals.
    pub fn display(&self, dict: &ItemDictionary) -> String {
        format!(
            "{} => {} | {} | {}",
            self.antecedent.display(dict),
            self.consequent.display(dict),
            self.support,
            self.confidence.to_decimal_4dp()
        )
    }
}

/// Enumerates every rule meeting `min_conf`, ordered by confidence
/// descending, then support descending, then antecedent and consequent
/// name order. Every proper subset of a frequent itemset is itself
/// frequent, so all antecedent supports must be present in `levels`;
/// a miss means the levels were not produced by a complete miner.
pub fn generate_rules(
    levels: &[FrequentLevel],
    min_conf: Fraction,
    dict: &ItemDictionary,
) -> Result<Vec<AssociationRule>> {
    let mut support: HashMap<&[ItemId], u64> = HashMap::new();
    for level in levels {
        for row in &level.rows {
            support.insert(row.items.ids(), row.support);
        }
    }
    let mut rules = Vec::new();
    for level in levels.iter().filter(|l| l.k >= 2) {
        for row in &level.rows {
            let ids = row.items.ids();
            for mask in 1u32..(1u32 << ids.len()) - 1 {
                let antecedent: Vec<ItemId> = ids
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &id)| id)
                    .collect();
                let a_sup = *support.get(antecedent.as_slice()).ok_or_else(|| {
                    Error::InconsistentInput(Itemset::from_sorted(antecedent.clone()).display(dict))
                })?;
                let confidence = Fraction::new(row.support, a_sup);
                if confidence >= min_conf {
                    let antecedent = Itemset::from_sorted(antecedent);
                    let consequent = row.items.without(&antecedent);
                    rules.push(AssociationRule {
                        antecedent,
                        consequent,
                        support: row.support,
                        confidence,
                    });
                }
            }
        }
    }
    rules.sort_by(|a, b| {
        b.confidence
            .cmp(&a.confidence)
            .then_with(|| b.support.cmp(&a.support))
            .then_with(|| name_order(&a.antecedent, &b.antecedent, dict))
            .then_with(|| name_order(&a.consequent, &b.consequent, dict))
    });
    Ok(rules)
}

fn name_order(a: &Itemset, b: &Itemset, dict: &ItemDictionary) -> std::cmp::Ordering {
    let names = |s: &Itemset| {
        s.ids()
            .iter()
            .map(|&id| dict.name(id).to_string())
            .collect::<Vec<_>>()
    };
    names(a).cmp(&names(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apriori::mine_classic;
    use crate::transactions::TransactionDB;

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

    #[test]
    fn pair_rule_confidences_are_exact() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let rules = generate_rules(&result.levels, Fraction::new(1, 2), db.dictionary()).unwrap();
        let butter_milk = rules
            .iter()
            .find(|r| {
                r.antecedent == named(&db, &["Butter"]) && r.consequent == named(&db, &["Milk"])
            })
            .expect("Butter => Milk");
        assert_eq!(butter_milk.support, 3);
        assert_eq!(butter_milk.confidence, Fraction::new(3, 4));
        assert_eq!(
            butter_milk.display(db.dictionary()),
            "Butter => Milk | 3 | 0.7500"
        );
    }

    #[test]
    fn threshold_filters_rules() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let all = generate_rules(&result.levels, Fraction::new(1, 1), db.dictionary()).unwrap();
        // only certainty-1 rules survive; Coffee occurs only with Milk
        assert!(all
            .iter()
            .any(|r| r.antecedent == named(&db, &["Coffee"])
                && r.consequent == named(&db, &["Milk"])));
        assert!(all.iter().all(|r| r.confidence == Fraction::new(1, 1)));
    }

    #[test]
    fn rules_come_from_levels_two_and_up() {
        let db = sample();
        let result = mine_classic(&db, 5);
        assert_eq!(result.levels.len(), 1);
        let rules = generate_rules(&result.levels, Fraction::new(1, 2), db.dictionary()).unwrap();
        assert!(rules.is_empty());
    }

    #[test]
    fn every_split_of_every_itemset_is_considered() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let rules = generate_rules(&result.levels, Fraction::new(0, 1), db.dictionary()).unwrap();
        let expected: usize = result
            .levels
            .iter()
            .filter(|l| l.k >= 2)
            .flat_map(|l| l.rows.iter())
            .map(|r| (1usize << r.items.len()) - 2)
            .sum();
        assert_eq!(rules.len(), expected);
    }

    #[test]
    fn ordering_is_confidence_then_support_then_names() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let rules = generate_rules(&result.levels, Fraction::new(1, 2), db.dictionary()).unwrap();
        for pair in rules.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!(a.confidence >= b.confidence);
            if a.confidence == b.confidence {
                assert!(a.support >= b.support);
                if a.support == b.support {
                    assert_ne!(
                        name_order(&a.antecedent, &b.antecedent, db.dictionary()).then(name_order(
                            &a.consequent,
                            &b.consequent,
                            db.dictionary()
                        )),
                        std::cmp::Ordering::Greater
                    );
                }
            }
        }
    }

    #[test]
    fn missing_subset_support_is_reported() {
        let db = sample();
        let result = mine_classic(&db, 2);
        let only_pairs: Vec<FrequentLevel> =
            result.levels.iter().filter(|l| l.k == 2).cloned().collect();
        assert!(matches!(
            generate_rules(&only_pairs, Fraction::new(1, 2), db.dictionary()),
            Err(Error::InconsistentInput(_))
        ));
    }
}
