//! Transaction database model: interned items, canonical itemsets, the
//! basket text format, and contiguous partitioning.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ItemId = u32;
pub type Tid = u32;

/// Interned item names. Ids are dense and assigned in first-appearance order.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct ItemDictionary {
    names: Vec<String>,
    by_name: HashMap<String, ItemId>,
}

impl ItemDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> ItemId {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        let id = self.names.len() as ItemId;
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn id(&self, name: &str) -> Option<ItemId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: ItemId) -> &str {
        &self.names[id as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }
}

/// Canonical itemset: item ids in strictly ascending order, no duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Canonicalizes arbitrary input: sorts and removes duplicates.
    pub fn new(mut ids: Vec<ItemId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Itemset(ids)
    }

    /// Wraps ids already known to be strictly ascending.
    pub fn from_sorted(ids: Vec<ItemId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Itemset(ids)
    }

    pub fn single(id: ItemId) -> Self {
        Itemset(vec![id])
    }

    pub fn ids(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        subset_of_sorted(&self.0, &other.0)
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Itemset(out)
    }

    /// Set difference `self - other`.
    pub fn without(&self, other: &Itemset) -> Itemset {
        Itemset(
            self.0
                .iter()
                .copied()
                .filter(|id| !other.contains(*id))
                .collect(),
        )
    }

    /// Item names joined with `", "`.
    pub fn display(&self, dict: &ItemDictionary) -> String {
        let mut out = String::new();
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(dict.name(*id));
        }
        out
    }
}

/// Subset test over two strictly ascending id slices.
pub(crate) fn subset_of_sorted(sub: &[ItemId], sup: &[ItemId]) -> bool {
    let mut j = 0;
    for &x in sub {
        loop {
            if j == sup.len() {
                return false;
            }
            if sup[j] == x {
                j += 1;
                break;
            }
            if sup[j] > x {
                return false;
            }
            j += 1;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: Tid,
    pub items: Itemset,
}

/// An in-memory transaction database with consecutive tids starting at 1
/// (or at an offset for partition slices) and a shared item dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDB {
    transactions: Vec<Transaction>,
    dictionary: Arc<ItemDictionary>,
}

/// Result of parsing basket text: the database plus how many blank data
/// lines were skipped (zero in strict mode, which errors instead).
#[derive(Debug)]
pub struct ParsedBasket {
    pub db: TransactionDB,
    pub skipped_lines: usize,
}

impl TransactionDB {
    pub fn from_parts(transactions: Vec<Transaction>, dictionary: Arc<ItemDictionary>) -> Self {
        debug_assert!(transactions.windows(2).all(|w| w[1].tid == w[0].tid + 1));
        TransactionDB {
            transactions,
            dictionary,
        }
    }

    /// Parses the basket text format: one transaction per line, items
    /// separated by commas and/or whitespace, `#` lines are comments,
    /// duplicate items within a line collapse. Lines with no items are
    /// skipped (counted) unless `strict`, which turns them into errors.
    pub fn parse_basket(input: &str, strict: bool) -> Result<ParsedBasket> {
        let mut builder = TransactionDbBuilder::new();
        let mut skipped = 0usize;
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            let items: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect();
            if items.is_empty() {
                if strict {
                    return Err(Error::BlankLine(idx + 1));
                }
                skipped += 1;
                continue;
            }
            builder.add_transaction(items);
        }
        if builder.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        Ok(ParsedBasket {
            db: builder.build(),
            skipped_lines: skipped,
        })
    }

    pub fn num_transactions(&self) -> usize {
        self.transactions.len()
    }

    pub fn num_items(&self) -> usize {
        self.dictionary.len()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn dictionary(&self) -> &ItemDictionary {
        &self.dictionary
    }

    pub fn shared_dictionary(&self) -> Arc<ItemDictionary> {
        Arc::clone(&self.dictionary)
    }

    pub fn first_tid(&self) -> Option<Tid> {
        self.transactions.first().map(|t| t.tid)
    }

    pub fn last_tid(&self) -> Option<Tid> {
        self.transactions.last().map(|t| t.tid)
    }

    /// Constant-time tid lookup; tids are consecutive by construction.
    pub fn by_tid(&self, tid: Tid) -> Result<&Transaction> {
        let first = self.first_tid().ok_or(Error::CorruptIndex(tid))?;
        if tid < first {
            return Err(Error::CorruptIndex(tid));
        }
        self.transactions
            .get((tid - first) as usize)
            .ok_or(Error::CorruptIndex(tid))
    }

    /// Serializes back to basket text: item names space-separated, one
    /// transaction per line in tid order.
    pub fn to_basket_string(&self) -> String {
        let mut out = String::new();
        for t in &self.transactions {
            for (i, id) in t.items.ids().iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(self.dictionary.name(*id));
            }
            out.push('\n');
        }
        out
    }

    /// Splits into `parts` contiguous slices whose sizes differ by at most
    /// one, preserving tids and sharing the dictionary.
    pub fn partition(&self, parts: usize) -> Result<Vec<TransactionDB>> {
        let m = self.transactions.len();
        if parts == 0 || parts > m {
            return Err(Error::TooManyPartitions { parts, m });
        }
        let base = m / parts;
        let extra = m % parts;
        let mut out = Vec::with_capacity(parts);
        let mut start = 0;
        for i in 0..parts {
            let len = base + usize::from(i < extra);
            out.push(TransactionDB {
                transactions: self.transactions[start..start + len].to_vec(),
                dictionary: Arc::clone(&self.dictionary),
            });
            start += len;
        }
        Ok(out)
    }
}

/// Incrementally builds a [`TransactionDB`], interning names in encounter
/// order and assigning tids 1, 2, 3, ...
#[derive(Debug, Default)]
pub struct TransactionDbBuilder {
    dict: ItemDictionary,
    transactions: Vec<Transaction>,
}

impl TransactionDbBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one transaction; duplicate names collapse. Returns its tid.
    /// Panics on an empty item list (callers filter those out first).
    pub fn add_transaction<'a, I>(&mut self, names: I) -> Tid
    where
        I: IntoIterator<Item = &'a str>,
    {
        let ids: Vec<ItemId> = names.into_iter().map(|n| self.dict.intern(n)).collect();
        let items = Itemset::new(ids);
        assert!(
            !items.is_empty(),
            "transactions must contain at least one item"
        );
        let tid = (self.transactions.len() + 1) as Tid;
        self.transactions.push(Transaction { tid, items });
        tid
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn build(self) -> TransactionDB {
        TransactionDB {
            transactions: self.transactions,
            dictionary: Arc::new(self.dict),
        }
    }
}

/// Largest exponent k with base^k <= n: how many times a database of n
/// records can be halved (base 2) or split by `base` while every cluster
/// keeps at least one record.
pub fn compute_partition_count(n: u64, base: u32) -> Result<u32> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut k = 0u32;
    let mut p = 1u64;
    while let Some(next) = p.checked_mul(base as u64) {
        if next > n {
            break;
        }
        p = next;
        k += 1;
    }
    Ok(k)
}

/// A partitioning scheme: `base^exponent` contiguous tid ranges of
/// near-equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    base: u32,
    exponent: u32,
    ranges: Vec<(Tid, Tid)>,
}

impl PartitionPlan {
    /// Plans `base^k` partitions for the maximal k that keeps every
    /// partition nonempty.
    pub fn from_base(db: &TransactionDB, base: u32) -> Result<Self> {
        let n = db.num_transactions() as u64;
        if n == 0 {
            return Err(Error::EmptyDatabase);
        }
        let exponent = compute_partition_count(n, base)?;
        let parts = (base as u64).pow(exponent) as usize;
        Ok(Self::split(db, base, exponent, parts))
    }

    /// Plans an explicit number of partitions.
    pub fn with_parts(db: &TransactionDB, parts: usize) -> Result<Self> {
        let m = db.num_transactions();
        if parts == 0 || parts > m {
            return Err(Error::TooManyPartitions { parts, m });
        }
        if parts == 1 {
            return Ok(Self::split(db, 2, 0, 1));
        }
        Ok(Self::split(db, parts as u32, 1, parts))
    }

    fn split(db: &TransactionDB, base: u32, exponent: u32, parts: usize) -> Self {
        let m = db.num_transactions();
        let first = db.first_tid().expect("nonempty database");
        let size = m / parts;
        let extra = m % parts;
        let mut ranges = Vec::with_capacity(parts);
        let mut start = first;
        for i in 0..parts {
            let len = (size + usize::from(i < extra)) as Tid;
            ranges.push((start, start + len - 1));
            start += len;
        }
        PartitionPlan {
            base,
            exponent,
            ranges,
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn ranges(&self) -> &[(Tid, Tid)] {
        &self.ranges
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    /// Transaction slices of `db` corresponding to the planned ranges.
    pub fn slices<'a>(&self, db: &'a TransactionDB) -> Result<Vec<&'a [Transaction]>> {
        let first = db.first_tid().ok_or(Error::EmptyDatabase)?;
        let m = db.num_transactions();
        let mut out = Vec::with_capacity(self.ranges.len());
        for &(lo, hi) in &self.ranges {
            if lo < first || hi < lo {
                return Err(Error::CorruptIndex(lo));
            }
            let a = (lo - first) as usize;
            let b = (hi - first) as usize + 1;
            if b > m {
                return Err(Error::CorruptIndex(hi));
            }
            out.push(&db.transactions()[a..b]);
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{} partitions (base {})", self.ranges.len(), self.base);
        out
    }
}
