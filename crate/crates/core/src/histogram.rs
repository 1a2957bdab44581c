//! Sparse signed gap histogram and curve reconstruction.
//!
//! `H[k]` nets the maximal gaps of length `k` over every non-empty subset of
//! the query, odd-sized subsets counting +1 and even-sized ones -1. Given a
//! complete histogram the co-occurrence count for window length `x` is
//!
//! ```text
//! co(x) = (n - x + 1) - sum_{k >= x} (k - x + 1) * H[k]
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sequence::CooccurrenceCurve;

/// One signed gap-length update. Lengths of zero or less carry no windows and
/// are dropped on application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedGapUpdate {
    pub length: i64,
    pub delta: i64,
}

impl SignedGapUpdate {
    pub fn add(length: i64) -> Self {
        Self { length, delta: 1 }
    }

    pub fn sub(length: i64) -> Self {
        Self { length, delta: -1 }
    }

    pub fn is_void(&self) -> bool {
        self.length <= 0 || self.delta == 0
    }
}

/// The (at most two) non-void updates produced by one step of a counter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Step {
    pub plus: Option<SignedGapUpdate>,
    pub minus: Option<SignedGapUpdate>,
}

impl Step {
    pub(crate) fn new(plus: SignedGapUpdate, minus: Option<SignedGapUpdate>) -> Self {
        Self {
            plus: Some(plus).filter(|u| !u.is_void()),
            minus: minus.filter(|u| !u.is_void()),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SignedGapUpdate> {
        self.plus.into_iter().chain(self.minus)
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_none() && self.minus.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GapHistogram {
    n: usize,
    buckets: HashMap<usize, i64>,
}

impl GapHistogram {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            buckets: HashMap::new(),
        }
    }

    /// Builds a histogram from `(k, H[k])` pairs, summing repeated keys.
    pub fn from_buckets(n: usize, buckets: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut h = Self::new(n);
        for (k, v) in buckets {
            h.add(k as i64, v)?;
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Widens the sequence length; used by streaming counters that learn `n`
    /// only at the end.
    pub(crate) fn set_len(&mut self, n: usize) {
        debug_assert!(n >= self.n);
        self.n = n;
    }

    pub fn apply(&mut self, u: SignedGapUpdate) -> Result<()> {
        self.add(u.length, u.delta)
    }

    fn add(&mut self, length: i64, delta: i64) -> Result<()> {
        if length <= 0 || delta == 0 {
            return Ok(());
        }
        if length as u64 > self.n as u64 {
            return Err(Error::GapTooLong { length, n: self.n });
        }
        let k = length as usize;
        let v = self.buckets.entry(k).or_insert(0);
        *v += delta;
        if *v == 0 {
            self.buckets.remove(&k);
        }
        Ok(())
    }

    pub fn get(&self, k: usize) -> i64 {
        self.buckets.get(&k).copied().unwrap_or(0)
    }

    /// Number of nonzero buckets.
    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Nonzero buckets in ascending gap length.
    pub fn sorted(&self) -> Vec<(usize, i64)> {
        let mut v: Vec<_> = self.buckets.iter().map(|(&k, &h)| (k, h)).collect();
        v.sort_unstable();
        v
    }

    /// `sum_k k * H[k]`.
    pub fn gap_mass(&self) -> i128 {
        self.buckets
            .iter()
            .map(|(&k, &h)| k as i128 * h as i128)
            .sum()
    }

    /// Pointwise sum of two histograms over the same sequence length.
    pub fn merge(&self, other: &GapHistogram) -> Result<GapHistogram> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (&k, &h) in &other.buckets {
            out.add(k as i64, h)?;
        }
        Ok(out)
    }

    /// Reconstructs the co-occurrence curve in `O(n + buckets)` using two
    /// running suffix sums, `A(x) = sum_{k>=x} H[k]` and
    /// `B(x) = sum_{k>=x} k H[k]`, so that
    /// `co(x) = (n - x + 1) - (B(x) - (x - 1) A(x))`.
    ///
    /// Counts below `min_support` are forced to zero; a nonzero value there is
    /// logged as a consistency warning.
    pub fn curve(&self, min_support: usize) -> Result<CooccurrenceCurve> {
        let n = self.n;
        let mut desc = self.sorted();
        desc.reverse();
        let mut next = desc.into_iter().peekable();
        let (mut a, mut b) = (0i128, 0i128);
        let mut counts = vec![0u64; n];
        for x in (1..=n).rev() {
            while let Some(&(k, h)) = next.peek() {
                if k < x {
                    break;
                }
                a += h as i128;
                b += k as i128 * h as i128;
                next.next();
            }
            let value = (n - x + 1) as i128 - (b - (x as i128 - 1) * a);
            counts[x - 1] = checked_count(x, value, n)?;
        }
        clamp_below_support(&mut counts, min_support);
        Ok(CooccurrenceCurve::from_counts(counts))
    }

    /// Quadratic reference reconstruction, summing `(k - x + 1) H[k]` over
    /// every `k` in `x..=n` for each `x`.
    pub fn curve_naive(&self, min_support: usize) -> Result<CooccurrenceCurve> {
        let n = self.n;
        let mut counts = vec![0u64; n];
        for x in 1..=n {
            let mut lost = 0i128;
            for k in x..=n {
                lost += (k - x + 1) as i128 * self.get(k) as i128;
            }
            counts[x - 1] = checked_count(x, (n - x + 1) as i128 - lost, n)?;
        }
        clamp_below_support(&mut counts, min_support);
        Ok(CooccurrenceCurve::from_counts(counts))
    }
}

fn checked_count(x: usize, value: i128, n: usize) -> Result<u64> {
    let max = n - x + 1;
    if value < 0 || value > max as i128 {
        return Err(Error::Inconsistent { x, value, max });
    }
    Ok(value as u64)
}

fn clamp_below_support(counts: &mut [u64], min_support: usize) {
    let below = min_support.saturating_sub(1).min(counts.len());
    for (i, c) in counts[..below].iter_mut().enumerate() {
        if *c != 0 {
            log::warn!(
                "histogram gave {} windows of length {} below the minimum support {}",
                c,
                i + 1,
                min_support
            );
            *c = 0;
        }
    }
}
