use cooccur::continuous::{estimate_probability, exact_probability, pad, TimestampedEvents};
use cooccur::{Item, ItemSet, MultiSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TAU: f64 = 8.0;

fn random_events(rng: &mut impl Rng, k: u32) -> TimestampedEvents {
    let count = rng.gen_range(1..=50);
    let events = (0..count)
        .map(|_| (Item(rng.gen_range(0..=k)), rng.gen_range(0.0..TAU)))
        .collect();
    TimestampedEvents::new(events, TAU).unwrap()
}

#[test]
fn halving_the_grid_stays_within_the_coarser_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3u32);
        let ev = random_events(&mut rng, k);
        let set = ItemSet::new((0..k).map(Item)).unwrap();
        // A multiple of the coarsest half-cell is exact on every grid below.
        let radius = rng.gen_range(1..=4) as f64 * TAU / 16.0;
        let exact = exact_probability(&ev, &set, radius).unwrap();
        let grids = [TAU / 8.0, TAU / 16.0, TAU / 32.0, TAU / 64.0];
        let runs: Vec<_> = grids
            .iter()
            .map(|&t| estimate_probability(&ev, &set, t, radius).unwrap())
            .collect();
        for pair in runs.windows(2) {
            let (coarse, fine) = (&pair[0], &pair[1]);
            let (e0, e1) = (
                (coarse.estimate - exact).abs(),
                (fine.estimate - exact).abs(),
            );
            assert!(
                e1 <= e0 + coarse.bound + 1e-9,
                "t {} -> {}: error {e0} -> {e1}, bound {}",
                coarse.t,
                fine.t,
                coarse.bound
            );
        }
    }
}

#[test]
fn padding_shifts_by_half_the_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(0..40);
        let sets: Vec<Vec<Item>> = (0..n)
            .map(|_| {
                (0..rng.gen_range(0..3))
                    .map(|_| Item(rng.gen_range(0..4)))
                    .collect()
            })
            .collect();
        let seq = MultiSequence::new(sets);
        let x = 2 * rng.gen_range(1..6);
        let padded = pad(&seq, x).unwrap();
        assert_eq!(padded.len(), seq.len() + x);
        assert_eq!(padded.event_count(), seq.event_count());
        assert_eq!(&padded.sets()[x / 2..x / 2 + n], seq.sets());
    }
}

#[test]
fn estimate_converges_on_a_shared_instant() {
    let ev = TimestampedEvents::new(vec![(Item(0), 5.0), (Item(1), 5.0)], 10.0).unwrap();
    let set = ItemSet::new([Item(0), Item(1)]).unwrap();
    let mut last = f64::INFINITY;
    for t in [0.5, 0.1, 0.01, 0.001] {
        let est = estimate_probability(&ev, &set, t, 1.0).unwrap();
        let err = (est.estimate - 0.2).abs();
        assert!(err <= last + 1e-12, "t={t}: {err} after {last}");
        last = err;
    }
    assert!(last < 1e-3);
}
