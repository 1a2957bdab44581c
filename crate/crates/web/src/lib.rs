//! Browser demo. The functions here take the strings a page collects from its
//! form fields and return flat numeric arrays ready for plotting. The
//! `wasm-bindgen` exports in the `bindings` module are thin wrappers over them.

use cooccur::continuous::{self, TimestampedEvents};
use cooccur::sequence::Interner;
use cooccur::{itemset, pattern, Item, ItemSet, Pattern, PatternSet, Sequence};

#[cfg(target_arch = "wasm32")]
mod bindings;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DemoError {
    #[error("enter at least one item")]
    NoItems,
    #[error("line {0}: expected `item,time`")]
    BadEvent(usize),
    #[error("{0}")]
    Core(String),
}

impl From<cooccur::Error> for DemoError {
    fn from(e: cooccur::Error) -> Self {
        Self::Core(e.to_string())
    }
}

/// How the text box is split into symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    Chars,
    Words,
}

impl Split {
    pub fn from_flag(words: bool) -> Self {
        if words {
            Split::Words
        } else {
            Split::Chars
        }
    }

    fn symbols<'a>(self, text: &'a str) -> Box<dyn Iterator<Item = String> + 'a> {
        match self {
            Split::Chars => Box::new(text.chars().filter(|c| !c.is_control()).map(String::from)),
            Split::Words => Box::new(text.split_whitespace().map(str::to_owned)),
        }
    }
}

fn list(field: &str) -> Vec<&str> {
    field
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn read_text(text: &str, split: Split) -> (Sequence, Interner) {
    let mut names = Interner::new();
    let seq = split.symbols(text).map(|s| names.intern(&s)).collect();
    (seq, names)
}

fn query(names: &mut Interner, items: &str) -> Result<ItemSet, DemoError> {
    let ids: Vec<Item> = list(items).into_iter().map(|s| names.intern(s)).collect();
    if ids.is_empty() {
        return Err(DemoError::NoItems);
    }
    Ok(ItemSet::new(ids)?)
}

/// Counts for window lengths `1..=n` and the nonzero histogram buckets.
#[derive(Debug, PartialEq)]
pub struct ItemsetView {
    pub curve: Vec<u64>,
    pub buckets: Vec<(usize, i64)>,
}

pub fn itemset_view(text: &str, items: &str, split: Split) -> Result<ItemsetView, DemoError> {
    let (seq, mut names) = read_text(text, split);
    let set = query(&mut names, items)?;
    let hist = itemset::awlco(&seq, &set);
    Ok(ItemsetView {
        curve: hist.curve(set.len())?.counts().to_vec(),
        buckets: hist.sorted(),
    })
}

pub fn pattern_counts(text: &str, patterns: &str, split: Split) -> Result<Vec<u64>, DemoError> {
    let (seq, mut names) = read_text(text, split);
    let mut pats = Vec::new();
    for p in list(patterns) {
        let symbols: Vec<Item> = split.symbols(p).map(|s| names.intern(&s)).collect();
        pats.push(Pattern::new(symbols)?);
    }
    if pats.is_empty() {
        return Err(DemoError::NoItems);
    }
    let set = PatternSet::new(pats)?;
    Ok(pattern::pattern_curve(&seq, &set)?.counts().to_vec())
}

/// One point of a radius sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub radius: f64,
    pub estimate: f64,
    pub exact: f64,
    pub bound: f64,
}

/// Estimated and exact probabilities for `steps` radii evenly spaced over
/// `(0, max_radius]`. Events are `item,time` lines; blank lines are skipped.
pub fn probability_sweep(
    events: &str,
    items: &str,
    horizon: f64,
    grid: f64,
    max_radius: f64,
    steps: usize,
) -> Result<Vec<SweepPoint>, DemoError> {
    let mut names = Interner::new();
    let mut parsed = Vec::new();
    for (idx, line) in events.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (item, time) = line.split_once(',').ok_or(DemoError::BadEvent(idx + 1))?;
        let time: f64 = time
            .trim()
            .parse()
            .map_err(|_| DemoError::BadEvent(idx + 1))?;
        parsed.push((names.intern(item.trim()), time));
    }
    let set = query(&mut names, items)?;
    let ev = TimestampedEvents::new(parsed, horizon)?;
    (1..=steps.max(1))
        .map(|s| {
            let radius = max_radius * s as f64 / steps.max(1) as f64;
            let est = continuous::estimate_probability(&ev, &set, grid, radius)?;
            Ok(SweepPoint {
                radius,
                estimate: est.estimate,
                exact: continuous::exact_probability(&ev, &set, radius)?,
                bound: est.bound,
            })
        })
        .collect()
}
