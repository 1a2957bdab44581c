//! Items, itemsets, sequences and the curve type shared by every counter.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Interned token identifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Item(pub u32);

impl Item {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl From<u32> for Item {
    fn from(id: u32) -> Self {
        Item(id)
    }
}

/// A non-empty set of distinct query items, kept in the order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemSet {
    items: Vec<Item>,
}

impl ItemSet {
    pub fn new(items: impl IntoIterator<Item = Item>) -> Result<Self> {
        let items: Vec<Item> = items.into_iter().collect();
        if items.is_empty() {
            return Err(Error::EmptyItemSet);
        }
        for (i, a) in items.iter().enumerate() {
            if items[..i].contains(a) {
                return Err(Error::DuplicateItem(*a));
            }
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Always false; an itemset cannot be empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, item: Item) -> bool {
        self.items.contains(&item)
    }

    /// One past the largest item id, for sizing dense lookup tables.
    pub fn id_bound(&self) -> usize {
        self.items.iter().map(|i| i.index() + 1).max().unwrap_or(0)
    }
}

/// A sequence holding one item per index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequence {
    items: Vec<Item>,
}

impl Sequence {
    pub fn new(items: Vec<Item>) -> Self {
        Self { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_slice(&self) -> &[Item] {
        &self.items
    }

    /// The window of length `len` ending at `index`, i.e. `T[index-len+1 ..= index]`.
    pub fn window(&self, index: usize, len: usize) -> Result<&[Item]> {
        if index >= self.items.len() || len == 0 || len > index + 1 {
            return Err(Error::WindowOutOfRange {
                index,
                len,
                n: self.items.len(),
            });
        }
        Ok(&self.items[index + 1 - len..=index])
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = Item;

    fn index(&self, i: usize) -> &Item {
        &self.items[i]
    }
}

impl FromIterator<Item> for Sequence {
    fn from_iter<I: IntoIterator<Item = Item>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// A sequence holding a (possibly empty) set of items per index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiSequence {
    sets: Vec<Vec<Item>>,
}

impl MultiSequence {
    /// Builds a multi-sequence, dropping repeated items within an index.
    pub fn new(sets: Vec<Vec<Item>>) -> Self {
        let sets = sets
            .into_iter()
            .map(|mut set| {
                let mut seen = 0;
                for i in 0..set.len() {
                    if !set[..seen].contains(&set[i]) {
                        set.swap(seen, i);
                        seen += 1;
                    }
                }
                set.truncate(seen);
                set
            })
            .collect();
        Self { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<Item>] {
        &self.sets
    }

    /// Total number of (index, item) pairs.
    pub fn event_count(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }
}

impl From<&Sequence> for MultiSequence {
    fn from(seq: &Sequence) -> Self {
        Self {
            sets: seq.as_slice().iter().map(|&i| vec![i]).collect(),
        }
    }
}

/// A non-empty string of items to be matched contiguously.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    symbols: Vec<Item>,
}

impl Pattern {
    pub fn new(symbols: Vec<Item>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[Item] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Bijection between source tokens and dense item ids, assigned in
/// first-appearance order.
#[derive(Clone, Debug, Default)]
pub struct Interner {
    tokens: Vec<String>,
    ids: HashMap<String, Item>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, token: &str) -> Item {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = Item(self.tokens.len() as u32);
        self.tokens.push(token.to_owned());
        self.ids.insert(token.to_owned(), id);
        id
    }

    pub fn get(&self, token: &str) -> Option<Item> {
        self.ids.get(token).copied()
    }

    pub fn resolve(&self, item: Item) -> Option<&str> {
        self.tokens.get(item.index()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Interns a token stream into a sequence and its symbol table.
pub fn intern<I, S>(tokens: I) -> (Sequence, Interner)
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut table = Interner::new();
    let seq = tokens
        .into_iter()
        .map(|t| table.intern(t.as_ref()))
        .collect();
    (seq, table)
}

/// Interns every character of `text` as its own item.
pub fn intern_chars(text: &str) -> (Sequence, Interner) {
    let mut buf = [0u8; 4];
    let mut table = Interner::new();
    let seq = text
        .chars()
        .map(|c| table.intern(c.encode_utf8(&mut buf)))
        .collect();
    (seq, table)
}

/// Co-occurrence count for every window length `x` in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CooccurrenceCurve {
    counts: Vec<u64>,
}

impl CooccurrenceCurve {
    /// `counts[x - 1]` is the count for window length `x`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    /// Sequence length (the largest window length).
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Count for window length `x`; zero outside `1..=n`.
    pub fn get(&self, x: usize) -> u64 {
        if x == 0 {
            return 0;
        }
        self.counts.get(x - 1).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(x, count)` pairs in ascending `x`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }
}
