//! Co-occurrence of an itemset in a sequence with one item per index.

use crate::book_stack::{BookStack, NEVER};
use crate::error::{Error, Result};
use crate::histogram::{GapHistogram, SignedGapUpdate, Step};
use crate::sequence::{CooccurrenceCurve, Item, ItemSet, Sequence};
use crate::MAX_ORACLE_ITEMS;

/// Number of windows of length `x` containing every item of `set`, in one
/// pass with `O(|I|)` space.
pub fn single_counting(seq: &Sequence, set: &ItemSet, x: usize) -> Result<u64> {
    let mut counter = SingleCounter::new(set, x)?;
    for &item in seq.as_slice() {
        counter.push(item);
    }
    counter.finish()
}

/// Streaming single-window-length counter.
///
/// A window ending at `i` co-occurs iff the least recently seen query item
/// was seen within it, i.e. `i - oldest < x`.
#[derive(Clone, Debug)]
pub struct SingleCounter {
    stack: BookStack,
    window: usize,
    pos: usize,
    count: u64,
}

impl SingleCounter {
    pub fn new(set: &ItemSet, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::InvalidArgument(
                "window length must be at least 1".into(),
            ));
        }
        Ok(Self {
            stack: BookStack::new(set),
            window,
            pos: 0,
            count: 0,
        })
    }

    pub fn push(&mut self, item: Item) {
        let i = self.pos;
        self.pos += 1;
        if self.stack.contains(item) {
            let _ = self.stack.touch(item, i as i64);
        }
        let (_, oldest) = self.stack.oldest();
        if i + 1 >= self.window && oldest != NEVER && i as i64 - oldest < self.window as i64 {
            self.count += 1;
        }
    }

    /// The count, or an error if the window is longer than the sequence.
    pub fn finish(self) -> Result<u64> {
        if self.window > self.pos {
            return Err(Error::InvalidArgument(format!(
                "window length {} outside 1..={}",
                self.window, self.pos
            )));
        }
        Ok(self.count)
    }
}

/// Window scan oracle: every window `[l, r]` is decided on its own by
/// checking that each query item occurs in it. Windows sharing a left edge
/// are visited in order of growing `r` so presence flags carry over;
/// `O(n^2 |I|)` overall.
pub fn brute_force_curve(seq: &Sequence, set: &ItemSet) -> CooccurrenceCurve {
    let items = seq.as_slice();
    let n = items.len();
    let slots: Vec<Option<usize>> = items
        .iter()
        .map(|e| set.items().iter().position(|q| q == e))
        .collect();
    let mut counts = vec![0u64; n];
    let mut present = vec![false; set.len()];
    for l in 0..n {
        present.iter_mut().for_each(|p| *p = false);
        let mut missing = set.len();
        for r in l..n {
            if let Some(b) = slots[r] {
                if !present[b] {
                    present[b] = true;
                    missing -= 1;
                }
            }
            if missing == 0 {
                counts[r - l] += 1;
            }
        }
    }
    CooccurrenceCurve::from_counts(counts)
}

/// Gap histogram by explicit subset enumeration, `O(n 2^|I|)`.
///
/// For every non-empty `A` it tracks where the current maximal `A`-gap began
/// and closes it at each occurrence of a member of `A` and at the end of the
/// sequence, weighting by `(-1)^(|A|+1)`.
pub fn gap_counting_naive(seq: &Sequence, set: &ItemSet) -> Result<GapHistogram> {
    let k = set.len();
    if k > MAX_ORACLE_ITEMS {
        return Err(Error::TooManyItems {
            count: k,
            max: MAX_ORACLE_ITEMS,
        });
    }
    let n = seq.len();
    let subsets = 1usize << k;
    let sign = |mask: usize| if mask.count_ones() % 2 == 1 { 1 } else { -1 };
    let mut start = vec![-1i64; subsets];
    let mut h = GapHistogram::new(n);
    for (i, item) in seq.as_slice().iter().enumerate() {
        let Some(bit) = set.items().iter().position(|e| e == item) else {
            continue;
        };
        for mask in 1..subsets {
            if mask & (1 << bit) != 0 {
                h.apply(SignedGapUpdate {
                    length: i as i64 - start[mask] - 1,
                    delta: sign(mask),
                })?;
                start[mask] = i as i64;
            }
        }
    }
    for mask in 1..subsets {
        h.apply(SignedGapUpdate {
            length: n as i64 - 1 - start[mask],
            delta: sign(mask),
        })?;
    }
    Ok(h)
}

/// Streaming all-window-length counter over single items.
///
/// The histogram changes only when the incoming item is the strict unique
/// oldest entry of the book-stack: the gap of that item closes (+1) and the
/// gap of the remaining items, bounded by the next oldest, is withdrawn (-1).
#[derive(Clone, Debug)]
pub struct Awlco {
    stack: BookStack,
    hist: GapHistogram,
    pos: usize,
    updates: usize,
}

impl Awlco {
    pub fn new(set: &ItemSet) -> Self {
        Self {
            stack: BookStack::new(set),
            hist: GapHistogram::new(0),
            pos: 0,
            updates: 0,
        }
    }

    /// Feeds the item at the next index. Items outside the query only
    /// advance the position.
    pub fn push(&mut self, item: Item) -> Step {
        let i = self.pos as i64;
        self.pos += 1;
        self.hist.set_len(self.pos);
        if !self.stack.contains(item) {
            return Step::default();
        }
        let mut step = Step::default();
        // Both lookups are registered and positions strictly increase, so
        // neither can fail.
        if self.stack.is_unique_oldest(item).unwrap_or(false) {
            let (_, oldest) = self.stack.oldest();
            let next = self.stack.second_oldest().map(|(_, p)| p);
            step = Step::new(
                SignedGapUpdate::add(i - oldest - 1),
                next.map(|p| SignedGapUpdate::sub(i - p - 1)),
            );
            for u in step.iter() {
                self.apply(u);
            }
        }
        let _ = self.stack.touch(item, i);
        step
    }

    fn apply(&mut self, u: SignedGapUpdate) {
        self.updates += 1;
        self.hist
            .apply(u)
            .expect("gap lengths never exceed the positions consumed");
    }

    /// Number of histogram updates applied so far.
    pub fn updates(&self) -> usize {
        self.updates
    }

    pub fn len(&self) -> usize {
        self.pos
    }

    pub fn is_empty(&self) -> bool {
        self.pos == 0
    }

    /// Closes the final gap and returns the complete histogram.
    pub fn finish(mut self) -> GapHistogram {
        let (_, oldest) = self.stack.oldest();
        let u = SignedGapUpdate::add(self.pos as i64 - 1 - oldest);
        if !u.is_void() {
            self.apply(u);
        }
        self.hist
    }
}

/// Gap histogram of `set` over `seq` in a single pass.
pub fn awlco(seq: &Sequence, set: &ItemSet) -> GapHistogram {
    let mut run = Awlco::new(set);
    for &item in seq.as_slice() {
        run.push(item);
    }
    run.finish()
}

/// Co-occurrence counts for every window length.
pub fn all_window_curve(seq: &Sequence, set: &ItemSet) -> Result<CooccurrenceCurve> {
    awlco(seq, set).curve(set.len())
}
