//! Co-occurrence over multi-sequences, where each index holds a set of items.
//!
//! With `Y = X_i ∩ I` observed at index `i`, the histogram changes only when
//! the whole group of items tied for the oldest last-seen position lies in
//! `Y`. Then the gap ending at the oldest item closes (+1 at `i - m - 1`) and
//! the gap bounded by the oldest item outside `Y` is withdrawn
//! (-1 at `i - m' - 1`). Items of `Y` are then recorded at `i` as a tie.

use crate::book_stack::BookStack;
use crate::error::{Error, Result};
use crate::histogram::{GapHistogram, SignedGapUpdate, Step};
use crate::sequence::{CooccurrenceCurve, Item, ItemSet, MultiSequence};
use crate::MAX_ORACLE_ITEMS;

#[derive(Clone, Debug)]
pub struct MultiAwlco {
    stack: BookStack,
    hist: GapHistogram,
    pos: usize,
    observed: Vec<Item>,
}

impl MultiAwlco {
    pub fn new(set: &ItemSet) -> Self {
        Self {
            stack: BookStack::new(set),
            hist: GapHistogram::new(0),
            pos: 0,
            observed: Vec::with_capacity(set.len()),
        }
    }

    pub fn stack(&self) -> &BookStack {
        &self.stack
    }

    /// Feeds the item set at the next index and returns the updates applied.
    pub fn push(&mut self, events: &[Item]) -> Step {
        let i = self.pos as i64;
        self.pos += 1;
        self.hist.set_len(self.pos);

        self.observed.clear();
        for &e in events {
            if self.stack.contains(e) && !self.observed.contains(&e) {
                self.observed.push(e);
            }
        }
        if self.observed.is_empty() {
            return Step::default();
        }

        let mut step = Step::default();
        let observed = &self.observed;
        if self.stack.oldest_ties().all(|(e, _)| observed.contains(&e)) {
            let (_, m) = self.stack.oldest();
            let rest = self.stack.min_last_seen_excluding(observed);
            step = Step::new(
                SignedGapUpdate::add(i - m - 1),
                rest.map(|m2| SignedGapUpdate::sub(i - m2 - 1)),
            );
            for u in step.iter() {
                self.hist
                    .apply(u)
                    .expect("gap lengths never exceed the positions consumed");
            }
        }
        for &e in &self.observed {
            let _ = self.stack.touch(e, i);
        }
        step
    }

    pub fn finish(mut self) -> GapHistogram {
        let (_, m) = self.stack.oldest();
        self.hist
            .apply(SignedGapUpdate::add(self.pos as i64 - 1 - m))
            .expect("final gap fits the sequence");
        self.hist
    }
}

pub fn multi_awlco(seq: &MultiSequence, set: &ItemSet) -> GapHistogram {
    let mut run = MultiAwlco::new(set);
    for events in seq.sets() {
        run.push(events);
    }
    run.finish()
}

/// Minimum support is 1: a single index can hold the whole itemset.
pub fn multi_curve(seq: &MultiSequence, set: &ItemSet) -> Result<CooccurrenceCurve> {
    multi_awlco(seq, set).curve(1)
}

/// Netted histogram change at index `i` by direct inclusion–exclusion.
///
/// Every non-empty `A ⊆ I` meeting `observed` has its current gap closed at
/// `i`; that gap began after the most recent member of `A`, so its length is
/// `i - max_{e in A} last_seen(e) - 1`. Weights are `(-1)^(|A|+1)`. Returned
/// updates are non-void, netted per length and sorted by length.
pub fn subset_enumeration_update(
    set: &ItemSet,
    last_seen: &[i64],
    observed: &[Item],
    i: i64,
) -> Result<Vec<SignedGapUpdate>> {
    let k = set.len();
    if k > MAX_ORACLE_ITEMS {
        return Err(Error::TooManyItems {
            count: k,
            max: MAX_ORACLE_ITEMS,
        });
    }
    if last_seen.len() != k {
        return Err(Error::InvalidArgument(format!(
            "{} last-seen positions for {} items",
            last_seen.len(),
            k
        )));
    }
    let hit: usize = set
        .items()
        .iter()
        .enumerate()
        .filter(|(_, e)| observed.contains(e))
        .map(|(b, _)| 1 << b)
        .sum();
    let mut net = std::collections::BTreeMap::<i64, i64>::new();
    for mask in 1usize..(1 << k) {
        if mask & hit == 0 {
            continue;
        }
        let latest = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| last_seen[b])
            .max()
            .unwrap();
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *net.entry(i - latest - 1).or_insert(0) += sign;
    }
    Ok(net
        .into_iter()
        .flat_map(|(length, d)| {
            let unit = d.signum();
            (0..d.abs()).map(move |_| SignedGapUpdate {
                length,
                delta: unit,
            })
        })
        .filter(|u| !u.is_void())
        .collect())
}

/// Window scan oracle: a window co-occurs iff every query item appears in at
/// least one of its index sets. Windows are grown rightward from each left
/// edge.
pub fn brute_force_multi_curve(seq: &MultiSequence, set: &ItemSet) -> CooccurrenceCurve {
    let sets = seq.sets();
    let n = sets.len();
    let mut counts = vec![0u64; n];
    let mut present = vec![false; set.len()];
    for l in 0..n {
        present.iter_mut().for_each(|p| *p = false);
        let mut missing = set.len();
        for r in l..n {
            for e in &sets[r] {
                if let Some(b) = set.items().iter().position(|q| q == e) {
                    if !present[b] {
                        present[b] = true;
                        missing -= 1;
                    }
                }
            }
            if missing == 0 {
                counts[r - l] += 1;
            }
        }
    }
    CooccurrenceCurve::from_counts(counts)
}
