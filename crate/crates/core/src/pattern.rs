//! Co-occurrence of string patterns.
//!
//! A window contains a pattern iff some occurrence both starts and ends inside
//! it. Occurrences of one pattern end in the same order they start, so at the
//! window's right edge the only start that matters is that of the most
//! recently completed occurrence. Pattern counting is therefore the
//! multi-sequence problem with the set of patterns completing at `i` as
//! `X_i`, except that a completed pattern is recorded at its start rather
//! than at `i`.

use crate::book_stack::BookStack;
use crate::error::{Error, Result};
use crate::histogram::{GapHistogram, SignedGapUpdate, Step};
use crate::sequence::{CooccurrenceCurve, Item, ItemSet, Pattern, Sequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
    longest: usize,
}

impl PatternSet {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::EmptyItemSet);
        }
        for (i, p) in patterns.iter().enumerate() {
            if patterns[..i].contains(p) {
                return Err(Error::DuplicatePattern);
            }
        }
        let longest = patterns.iter().map(Pattern::len).max().unwrap_or(1);
        Ok(Self { patterns, longest })
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Length of the longest pattern.
    pub fn longest(&self) -> usize {
        self.longest
    }
}

/// A matched occurrence `seq[start..=end]` of pattern number `pattern`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub pattern: usize,
    pub start: usize,
    pub end: usize,
}

/// Per-position partial matches: one machine is spawned at every index whose
/// symbol starts a pattern and lives until it mismatches or completes.
#[derive(Clone, Debug)]
pub struct Matcher<'p> {
    patterns: &'p PatternSet,
    /// `(pattern, start)` of every live partial match.
    live: Vec<(usize, usize)>,
    completed: Vec<Occurrence>,
}

impl<'p> Matcher<'p> {
    pub fn new(patterns: &'p PatternSet) -> Self {
        Self {
            patterns,
            live: Vec::new(),
            completed: Vec::new(),
        }
    }

    pub fn live_machines(&self) -> usize {
        self.live.len()
    }

    /// Advances every machine by `symbol` at index `i` (indices must be fed
    /// in order) and returns the occurrences ending exactly at `i`.
    pub fn completions_at(&mut self, i: usize, symbol: Item) -> &[Occurrence] {
        let pats = self.patterns.patterns();
        self.completed.clear();
        let completed = &mut self.completed;
        self.live.retain(|&(p, start)| {
            let sym = pats[p].symbols();
            let at = i - start;
            if sym[at] != symbol {
                return false;
            }
            if at + 1 == sym.len() {
                completed.push(Occurrence {
                    pattern: p,
                    start,
                    end: i,
                });
                return false;
            }
            true
        });
        for (p, pat) in pats.iter().enumerate() {
            if pat.symbols()[0] == symbol {
                if pat.len() == 1 {
                    completed.push(Occurrence {
                        pattern: p,
                        start: i,
                        end: i,
                    });
                } else {
                    self.live.push((p, i));
                }
            }
        }
        &self.completed
    }
}

/// Every occurrence of every pattern, by direct comparison at each start.
pub fn find_occurrences(seq: &Sequence, patterns: &PatternSet) -> Vec<Occurrence> {
    let s = seq.as_slice();
    let mut out = Vec::new();
    for (p, pat) in patterns.patterns().iter().enumerate() {
        let len = pat.len();
        for start in 0..s.len().saturating_sub(len - 1) {
            if &s[start..start + len] == pat.symbols() {
                out.push(Occurrence {
                    pattern: p,
                    start,
                    end: start + len - 1,
                });
            }
        }
    }
    out
}

/// Streaming all-window-length counter over patterns.
#[derive(Clone, Debug)]
pub struct Pawlco<'p> {
    matcher: Matcher<'p>,
    /// Items are pattern numbers; positions are occurrence starts.
    stack: BookStack,
    hist: GapHistogram,
    pos: usize,
    done: Vec<Item>,
}

impl<'p> Pawlco<'p> {
    pub fn new(patterns: &'p PatternSet) -> Self {
        let ids =
            ItemSet::new((0..patterns.len() as u32).map(Item)).expect("pattern sets are non-empty");
        Self {
            matcher: Matcher::new(patterns),
            stack: BookStack::new(&ids),
            hist: GapHistogram::new(0),
            pos: 0,
            done: Vec::new(),
        }
    }

    pub fn live_machines(&self) -> usize {
        self.matcher.live_machines()
    }

    /// Start of the most recent completed occurrence of pattern `p`, or -1.
    pub fn last_start(&self, p: usize) -> i64 {
        self.stack.last_seen(Item(p as u32)).unwrap_or(-1)
    }

    pub fn push(&mut self, symbol: Item) -> Step {
        let i = self.pos as i64;
        self.pos += 1;
        self.hist.set_len(self.pos);
        let occ = self.matcher.completions_at(i as usize, symbol);
        if occ.is_empty() {
            return Step::default();
        }
        self.done.clear();
        self.done.extend(occ.iter().map(|o| Item(o.pattern as u32)));

        let mut step = Step::default();
        let done = &self.done;
        if self.stack.oldest_ties().all(|(e, _)| done.contains(&e)) {
            let (_, m) = self.stack.oldest();
            // New starts can be older than every untouched pattern, so the
            // new minimum ranges over both.
            let fresh = occ.iter().map(|o| o.start as i64).min();
            let rest = self.stack.min_last_seen_excluding(done);
            let m_new = match (fresh, rest) {
                (Some(a), Some(b)) => a.min(b),
                (a, b) => a.or(b).expect("at least one completion"),
            };
            step = Step::new(
                SignedGapUpdate::add(i - m - 1),
                Some(SignedGapUpdate::sub(i - m_new - 1)),
            );
            for u in step.iter() {
                self.hist
                    .apply(u)
                    .expect("gap lengths never exceed the positions consumed");
            }
        }
        for o in occ {
            let _ = self.stack.touch(Item(o.pattern as u32), o.start as i64);
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

pub fn pawlco(seq: &Sequence, patterns: &PatternSet) -> GapHistogram {
    let mut run = Pawlco::new(patterns);
    for &s in seq.as_slice() {
        run.push(s);
    }
    run.finish()
}

/// Counts for every window length; windows shorter than the longest pattern
/// are zero.
pub fn pattern_curve(seq: &Sequence, patterns: &PatternSet) -> Result<CooccurrenceCurve> {
    pawlco(seq, patterns).curve(patterns.longest())
}

/// Window scan oracle: a window `[l, r]` counts iff every pattern has an
/// occurrence with `start >= l` and `end <= r`. Occurrences come from
/// [`find_occurrences`]; windows are grown rightward from each left edge.
pub fn brute_force_pattern_curve(seq: &Sequence, patterns: &PatternSet) -> CooccurrenceCurve {
    let n = seq.len();
    let mut by_end: Vec<Vec<Occurrence>> = vec![Vec::new(); n];
    for o in find_occurrences(seq, patterns) {
        by_end[o.end].push(o);
    }
    let mut counts = vec![0u64; n];
    let mut present = vec![false; patterns.len()];
    for l in 0..n {
        present.iter_mut().for_each(|p| *p = false);
        let mut missing = patterns.len();
        for r in l..n {
            for o in &by_end[r] {
                if o.start >= l && !present[o.pattern] {
                    present[o.pattern] = true;
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
