//! FP-growth: frequent-pattern tree construction and pattern-growth mining.
//!
//! Two passes over the database: one to find frequent items, one to insert
//! each transaction (filtered to frequent items, sorted by a fixed global
//! order) into a prefix tree. Shared prefixes collapse into shared nodes,
//! and per-item node links let mining walk all occurrences of an item
//! without touching the records again. No TID lists are produced.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::apriori::{FrequentItemset, FrequentLevel, ScanStats};
use crate::error::{Error, Result};
use crate::tid_index::{build_f1_index, F1Index};
use crate::transactions::{ItemDictionary, ItemId, Itemset, TransactionDB};

#[derive(Debug, Clone)]
pub struct FPNode {
    /// None only for the root.
    pub item: Option<ItemId>,
    pub count: u64,
    pub parent: Option<usize>,
    /// Child node ids, ordered by the tree's item order.
    children: Vec<usize>,
    /// Next node carrying the same item, in creation order.
    pub node_link: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct HeaderEntry {
    pub item: ItemId,
    /// Sum of the counts of every node carrying this item.
    pub total: u64,
    head: Option<usize>,
    tail: Option<usize>,
}

/// All prefix paths leading to one item, each with the count of the node it
/// was read from. Prefixes are in the tree's item order; paths that would
/// be empty (nodes hanging directly off the root) are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalPatternBase {
    pub item: ItemId,
    pub paths: Vec<(Vec<ItemId>, u64)>,
}

#[derive(Debug, Clone)]
pub struct FPTree {
    nodes: Vec<FPNode>,
    header: Vec<HeaderEntry>,
    /// item id -> position in `header`, which is also the sort rank.
    header_pos: Vec<Option<u32>>,
    dict: Arc<ItemDictionary>,
}

pub const ROOT: usize = 0;

impl FPTree {
    fn empty(items_in_order: &[ItemId], num_items: usize, dict: Arc<ItemDictionary>) -> Self {
        let mut header_pos = vec![None; num_items];
        let header = items_in_order
            .iter()
            .enumerate()
            .map(|(i, &item)| {
                header_pos[item as usize] = Some(i as u32);
                HeaderEntry {
                    item,
                    total: 0,
                    head: None,
                    tail: None,
                }
            })
            .collect();
        FPTree {
            nodes: vec![FPNode {
                item: None,
                count: 0,
                parent: None,
                children: Vec::new(),
                node_link: None,
            }],
            header,
            header_pos,
            dict,
        }
    }

    /// Inserts one path of items (already in header order) with a count.
    fn insert(&mut self, path: &[ItemId], count: u64) {
        let mut at = ROOT;
        for &item in path {
            let rank = self.header_pos[item as usize].expect("item is in the header");
            let pos = self.nodes[at].children.binary_search_by_key(&rank, |&c| {
                let it = self.nodes[c].item.expect("children are not the root");
                self.header_pos[it as usize].expect("tree items are in the header")
            });
            let child = match pos {
                Ok(i) => {
                    let id = self.nodes[at].children[i];
                    self.nodes[id].count += count;
                    id
                }
                Err(i) => {
                    let id = self.nodes.len();
                    self.nodes.push(FPNode {
                        item: Some(item),
                        count,
                        parent: Some(at),
                        children: Vec::new(),
                        node_link: None,
                    });
                    self.nodes[at].children.insert(i, id);
                    let entry = &mut self.header[rank as usize];
                    match entry.tail {
                        Some(tail) => self.nodes[tail].node_link = Some(id),
                        None => entry.head = Some(id),
                    }
                    entry.tail = Some(id);
                    id
                }
            };
            self.header[rank as usize].total += count;
            at = child;
        }
    }

    pub fn node(&self, id: usize) -> &FPNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.header.is_empty()
    }

    pub fn header(&self) -> &[HeaderEntry] {
        &self.header
    }

    pub fn header_entry(&self, item: ItemId) -> Option<&HeaderEntry> {
        let pos = *self.header_pos.get(item as usize)?;
        pos.map(|i| &self.header[i as usize])
    }

    pub fn children_of(&self, id: usize) -> &[usize] {
        &self.nodes[id].children
    }

    /// Walks an item's node-link chain in creation order.
    pub fn chain(&self, item: ItemId) -> ChainIter<'_> {
        ChainIter {
            tree: self,
            next: self.header_entry(item).and_then(|e| e.head),
        }
    }

    /// Collects the prefix paths of every node carrying `item`.
    pub fn pattern_base(&self, item: ItemId) -> Result<ConditionalPatternBase> {
        let entry = self
            .header_entry(item)
            .ok_or_else(|| Error::UnknownItem(self.dict.name(item).to_string()))?;
        let mut paths = Vec::new();
        let mut at = entry.head;
        while let Some(id) = at {
            let node = &self.nodes[id];
            let mut prefix = Vec::new();
            let mut up = node.parent;
            while let Some(pid) = up {
                if let Some(it) = self.nodes[pid].item {
                    prefix.push(it);
                }
                up = self.nodes[pid].parent;
            }
            prefix.reverse();
            if !prefix.is_empty() {
                paths.push((prefix, node.count));
            }
            at = node.node_link;
        }
        Ok(ConditionalPatternBase { item, paths })
    }

    /// Builds the conditional tree for a pattern base: items whose count
    /// within the base reaches `min_sup`, in this tree's order.
    pub fn conditional_tree(&self, base: &ConditionalPatternBase, min_sup: u64) -> FPTree {
        let mut cond_support: HashMap<ItemId, u64> = HashMap::new();
        for (path, count) in &base.paths {
            for &item in path {
                *cond_support.entry(item).or_insert(0) += count;
            }
        }
        let survivors: Vec<ItemId> = self
            .header
            .iter()
            .map(|e| e.item)
            .filter(|it| cond_support.get(it).is_some_and(|&c| c >= min_sup))
            .collect();
        let mut tree = FPTree::empty(&survivors, self.header_pos.len(), Arc::clone(&self.dict));
        if survivors.is_empty() {
            return tree;
        }
        let mut filtered = Vec::new();
        for (path, count) in &base.paths {
            filtered.clear();
            filtered.extend(
                path.iter()
                    .copied()
                    .filter(|it| tree.header_pos[*it as usize].is_some()),
            );
            if !filtered.is_empty() {
                tree.insert(&filtered, *count);
            }
        }
        tree
    }

    /// Indented rendering, one `<item>:<count>` per line, children in item
    /// order.
    pub fn dump(&self) -> String {
        let mut out = String::from("root\n");
        self.dump_node(ROOT, 1, &mut out);
        out
    }

    fn dump_node(&self, id: usize, depth: usize, out: &mut String) {
        for &child in &self.nodes[id].children {
            let node = &self.nodes[child];
            let name = self
                .dict
                .name(node.item.expect("children are not the root"));
            for _ in 0..depth {
                out.push_str("  ");
            }
            let _ = writeln!(out, "{}:{}", name, node.count);
            self.dump_node(child, depth + 1, out);
        }
    }
}

pub struct ChainIter<'a> {
    tree: &'a FPTree,
    next: Option<usize>,
}

impl<'a> Iterator for ChainIter<'a> {
    type Item = &'a FPNode;

    fn next(&mut self) -> Option<Self::Item> {
        let id = self.next?;
        let node = &self.tree.nodes[id];
        self.next = node.node_link;
        Some(node)
    }
}

/// The global insertion order: support descending, item name ascending on
/// ties.
pub fn order_items(index: &F1Index) -> Vec<ItemId> {
    let mut items: Vec<ItemId> = index.entries().iter().map(|e| e.item).collect();
    items.sort_by(|&a, &b| {
        let (ea, eb) = (index.get(a).unwrap(), index.get(b).unwrap());
        eb.support
            .cmp(&ea.support)
            .then_with(|| index.dictionary().name(a).cmp(index.dictionary().name(b)))
    });
    items
}

/// Two scans: frequent items first, then every transaction filtered to
/// them, sorted by the global order, and inserted.
pub fn build_fptree(db: &TransactionDB, min_sup: u64) -> FPTree {
    let index = build_f1_index(db, min_sup, &mut ScanStats::new());
    let order = order_items(&index);
    let mut tree = FPTree::empty(&order, db.num_items(), db.shared_dictionary());
    let mut path = Vec::new();
    for t in db.transactions() {
        path.clear();
        path.extend(
            t.items
                .ids()
                .iter()
                .copied()
                .filter(|id| tree.header_pos[*id as usize].is_some()),
        );
        path.sort_by_key(|id| tree.header_pos[*id as usize].unwrap());
        if !path.is_empty() {
            tree.insert(&path, 1);
        }
    }
    tree
}

/// Full pattern-growth mining. Output levels match the scan-based miners
/// itemset for itemset and support for support, but carry no TID lists.
pub fn mine_fpgrowth(db: &TransactionDB, min_sup: u64) -> Vec<FrequentLevel> {
    assert!(min_sup >= 1, "min_sup must be at least 1");
    let tree = build_fptree(db, min_sup);
    let mut found: Vec<(Itemset, u64)> = Vec::new();
    mine_tree(&tree, &[], min_sup, &mut found);
    let max_k = found.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    let mut levels = Vec::new();
    for k in 1..=max_k {
        let mut rows: Vec<FrequentItemset> = found
            .iter()
            .filter(|(s, _)| s.len() == k)
            .map(|(s, sup)| FrequentItemset {
                items: s.clone(),
                support: *sup,
                found_in: None,
            })
            .collect();
        rows.sort_by(|a, b| a.items.cmp(&b.items));
        levels.push(FrequentLevel { k, rows });
    }
    levels
}

fn mine_tree(tree: &FPTree, suffix: &[ItemId], min_sup: u64, out: &mut Vec<(Itemset, u64)>) {
    for entry in tree.header.iter().rev() {
        debug_assert!(entry.total >= min_sup);
        let mut items = suffix.to_vec();
        items.push(entry.item);
        out.push((Itemset::new(items.clone()), entry.total));
        let base = tree
            .pattern_base(entry.item)
            .expect("header items have pattern bases");
        if base.paths.is_empty() {
            continue;
        }
        let cond = tree.conditional_tree(&base, min_sup);
        if !cond.is_empty() {
            mine_tree(&cond, &items, min_sup, out);
        }
    }
}
