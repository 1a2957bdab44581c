//! Random cross-checks of every single-pass counter against its oracle.

use std::fmt;

use cooccur::{
    itemset, multi, pattern, Item, ItemSet, MultiSequence, Pattern, PatternSet, Sequence,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub checked: usize,
    pub mismatches: usize,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.mismatches == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed {}: {} checks, {} mismatches",
            self.seed, self.checked, self.mismatches
        )
    }
}

fn random_itemset(rng: &mut impl Rng, alphabet: u32, max: usize) -> ItemSet {
    // One id past the alphabet stands for an item that never occurs.
    let mut pool: Vec<Item> = (0..=alphabet).map(Item).collect();
    pool.shuffle(rng);
    let k = rng.gen_range(1..=max.min(pool.len()));
    ItemSet::new(pool.into_iter().take(k)).expect("distinct")
}

/// Runs `cases` instances of each family.
pub fn run(seed: u64, cases: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report {
        seed,
        ..Report::default()
    };
    let mut check = |ok: bool| {
        report.checked += 1;
        report.mismatches += usize::from(!ok);
    };

    for _ in 0..cases {
        let alphabet = rng.gen_range(1..=8);
        let n = rng.gen_range(0..=200);
        let seq: Sequence = (0..n).map(|_| Item(rng.gen_range(0..alphabet))).collect();
        let set = random_itemset(&mut rng, alphabet, 4);
        let fast = itemset::awlco(&seq, &set);
        check(itemset::gap_counting_naive(&seq, &set).ok() == Some(fast.clone()));
        check(fast.curve(set.len()).ok() == Some(itemset::brute_force_curve(&seq, &set)));
    }

    for _ in 0..cases {
        let k = rng.gen_range(1..=5);
        let alphabet = k as u32 + rng.gen_range(0..3);
        let n = rng.gen_range(0..=150);
        let sets = (0..n)
            .map(|_| {
                let m = rng.gen_range(0..=3);
                (0..m).map(|_| Item(rng.gen_range(0..alphabet))).collect()
            })
            .collect();
        let seq = MultiSequence::new(sets);
        let set = ItemSet::new((0..k as u32).map(Item)).expect("distinct");
        check(
            multi::multi_curve(&seq, &set).ok() == Some(multi::brute_force_multi_curve(&seq, &set)),
        );
    }

    for _ in 0..cases {
        let alphabet = rng.gen_range(1..=4);
        let n = rng.gen_range(0..=120);
        let seq: Sequence = (0..n).map(|_| Item(rng.gen_range(0..alphabet))).collect();
        let mut pats: Vec<Vec<Item>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let len = rng.gen_range(1..=4);
                (0..len).map(|_| Item(rng.gen_range(0..alphabet))).collect()
            })
            .collect();
        pats.sort();
        pats.dedup();
        let ps = PatternSet::new(
            pats.into_iter()
                .map(|p| Pattern::new(p).expect("non-empty"))
                .collect(),
        )
        .expect("distinct");
        check(
            pattern::pattern_curve(&seq, &ps).ok()
                == Some(pattern::brute_force_pattern_curve(&seq, &ps)),
        );
    }
    report
}
