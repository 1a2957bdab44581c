//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any of them fails.

use std::io::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use cooccur::continuous::{self, TimestampedEvents};
use cooccur::sequence::{intern, intern_chars};
use cooccur::{
    book_stack::NEVER, itemset, multi, pattern, BookStack, GapHistogram, Item, ItemSet, MultiAwlco,
    MultiSequence, Pattern, PatternSet, Sequence, SignedGapUpdate,
};
use cooccur_cli::args::Cli;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_c0cc;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("worked examples", worked_examples),
        ("itemset oracle equivalence", itemset_oracles),
        ("multi-item oracle equivalence", multi_oracles),
        ("pattern oracle equivalence", pattern_oracles),
        ("space and time scaling", complexity),
        ("continuous t/x bound", continuous_bound),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!out.pass);
        println!(
            "criterion {} [{verdict}] {name} ({:.2}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            out.detail
        );
        let _ = std::io::stdout().flush();
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn set(items: impl IntoIterator<Item = u32>) -> ItemSet {
    ItemSet::new(items.into_iter().map(Item)).expect("distinct, non-empty")
}

fn random_sequence(rng: &mut impl Rng, n: usize, alphabet: u32) -> Sequence {
    (0..n).map(|_| Item(rng.gen_range(0..alphabet))).collect()
}

fn random_itemset(rng: &mut impl Rng, alphabet: u32, max: usize) -> ItemSet {
    let mut pool: Vec<u32> = (0..=alphabet).collect();
    pool.shuffle(rng);
    let k = rng.gen_range(1..=max.min(pool.len()));
    set(pool.into_iter().take(k))
}

fn space_bound(n: usize, k: usize) -> usize {
    2 * ((2 * n * k) as f64).sqrt().ceil() as usize
}

fn worked_examples() -> Outcome {
    let mut failures = Vec::new();

    let (seq, names) = intern_chars("abcabe");
    let (a, b) = (names.get("a").unwrap(), names.get("b").unwrap());
    let ab = ItemSet::new([a, b]).unwrap();
    let co = itemset::single_counting(&seq, &ab, 4).unwrap();
    if co != 3 {
        failures.push(format!("co(abcabe, {{a,b}}, 4) = {co}"));
    }
    let from_curve = itemset::all_window_curve(&seq, &ab).unwrap().get(4);
    if from_curve != 3 {
        failures.push(format!("curve at x=4 is {from_curve}"));
    }

    let mut stack = BookStack::new(&ab);
    let mut tesla = Vec::new();
    for (i, &e) in seq.as_slice().iter().enumerate() {
        if stack.contains(e) {
            stack.touch(e, i as i64).unwrap();
        }
        let (_, m) = stack.oldest();
        tesla.push(if m == NEVER {
            "inf".to_string()
        } else {
            (i as i64 - m).to_string()
        });
    }
    if tesla != ["inf", "1", "2", "2", "1", "2"] {
        failures.push(format!("max-tesla replay {tesla:?}"));
    }

    let (seq, names) = intern(["c", "a", "t", "d", "o", "g", "c", "a", "t"]);
    let word = |w: &str| {
        Pattern::new(
            w.chars()
                .map(|c| names.get(&c.to_string()).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let ps = PatternSet::new(vec![word("cat"), word("dog")]).unwrap();
    let got = pattern::pattern_curve(&seq, &ps).unwrap().get(7);
    if got != 2 {
        failures.push(format!("catdogcat at x=7 is {got}"));
    }

    Outcome::new(
        failures.is_empty(),
        if failures.is_empty() {
            "all three match".into()
        } else {
            failures.join("; ")
        },
    )
}

fn itemset_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = 1000;
    let mut bad = Vec::new();
    for case in 0..cases {
        let alphabet = rng.gen_range(1..=8);
        let n = rng.gen_range(0..=200);
        let seq = random_sequence(&mut rng, n, alphabet);
        let s = random_itemset(&mut rng, alphabet, 4);
        let hist = itemset::awlco(&seq, &s);
        let curve_ok = hist.curve(s.len()).ok() == Some(itemset::brute_force_curve(&seq, &s));
        let hist_ok = itemset::gap_counting_naive(&seq, &s).ok() == Some(hist);
        if !(curve_ok && hist_ok) {
            bad.push(case);
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{cases} instances, mismatching cases {bad:?}"),
    )
}

/// Runs the incremental counter and compares every step with the subset
/// enumeration net, then the curve with the window scan.
fn multi_agrees(seq: &MultiSequence, s: &ItemSet) -> bool {
    let mut run = MultiAwlco::new(s);
    for (i, events) in seq.sets().iter().enumerate() {
        let last: Vec<i64> = s
            .items()
            .iter()
            .map(|&e| run.stack().last_seen(e).unwrap())
            .collect();
        let observed: Vec<Item> = events.iter().copied().filter(|&e| s.contains(e)).collect();
        let Ok(expected) = multi::subset_enumeration_update(s, &last, &observed, i as i64) else {
            return false;
        };
        let mut got: Vec<SignedGapUpdate> = run.push(events).iter().collect();
        got.sort();
        if got != expected {
            return false;
        }
    }
    let hist = run.finish();
    hist.curve(1).ok() == Some(multi::brute_force_multi_curve(seq, s))
}

fn multi_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let cases = 500;
    let mut bad = Vec::new();
    for case in 0..cases {
        let k = rng.gen_range(1..=5u32);
        let alphabet = k + rng.gen_range(0..3);
        let n = rng.gen_range(0..=150);
        let sets = (0..n)
            .map(|_| {
                let m = rng.gen_range(0..=3);
                (0..m).map(|_| Item(rng.gen_range(0..alphabet))).collect()
            })
            .collect();
        if !multi_agrees(&MultiSequence::new(sets), &set(0..k)) {
            bad.push(format!("random #{case}"));
        }
    }

    let (a, b, c) = (Item(0), Item(1), Item(2));
    let abc = set(0..3);
    let constructed: Vec<(&str, Vec<Vec<Item>>)> = vec![
        (
            "never-seen tie, one observed",
            vec![vec![], vec![a], vec![], vec![b]],
        ),
        (
            "never-seen tie, all at once",
            vec![vec![], vec![], vec![a, b, c]],
        ),
        (
            "never-seen tie, partial cover",
            vec![vec![a, b], vec![], vec![c]],
        ),
        (
            "simultaneous oldest, both refreshed",
            vec![vec![a, b], vec![c], vec![], vec![a, b]],
        ),
        (
            "simultaneous oldest, one refreshed",
            vec![vec![a, b], vec![c], vec![a], vec![b]],
        ),
        (
            "repeated tie groups",
            vec![
                vec![a, c],
                vec![b],
                vec![a, c],
                vec![b],
                vec![a, b, c],
                vec![c],
            ],
        ),
    ];
    for (name, sets) in &constructed {
        if !multi_agrees(&MultiSequence::new(sets.clone()), &abc) {
            bad.push((*name).to_string());
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{cases} random + {} constructed tie cases, failing {bad:?}",
            constructed.len()
        ),
    )
}

fn pattern_set(pats: Vec<Vec<u32>>) -> PatternSet {
    PatternSet::new(
        pats.into_iter()
            .map(|p| Pattern::new(p.into_iter().map(Item).collect()).unwrap())
            .collect(),
    )
    .unwrap()
}

fn pattern_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let random = 500;
    let mut bad = Vec::new();
    let mut check = |label: String, seq: &Sequence, ps: &PatternSet| {
        if pattern::pattern_curve(seq, ps).ok() != Some(pattern::brute_force_pattern_curve(seq, ps))
        {
            bad.push(label);
        }
    };
    for case in 0..random {
        let alphabet = rng.gen_range(1..=4);
        let n = rng.gen_range(0..=120);
        let seq = random_sequence(&mut rng, n, alphabet);
        let mut pats: Vec<Vec<u32>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (0..rng.gen_range(1..=4))
                    .map(|_| rng.gen_range(0..alphabet))
                    .collect()
            })
            .collect();
        pats.sort();
        pats.dedup();
        check(format!("random #{case}"), &seq, &pattern_set(pats));
    }
    let shapes: [(&str, Vec<Vec<u32>>); 4] = [
        ("{a,ab}", vec![vec![0], vec![0, 1]]),
        ("{ab,b}", vec![vec![0, 1], vec![1]]),
        ("{aba,ba}", vec![vec![0, 1, 0], vec![1, 0]]),
        ("{aa,a,ba}", vec![vec![0, 0], vec![0], vec![1, 0]]),
    ];
    let per_shape = 50;
    for (name, pats) in &shapes {
        let ps = pattern_set(pats.clone());
        for case in 0..per_shape {
            let n = rng.gen_range(0..=120);
            let seq = random_sequence(&mut rng, n, 3);
            check(format!("{name} #{case}"), &seq, &ps);
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{random} random + {} nested/same-end instances, failing {bad:?}",
            shapes.len() * per_shape
        ),
    )
}

fn median_awlco_time(seq: &Sequence, s: &ItemSet) -> Duration {
    let mut times: Vec<Duration> = (0..5)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(itemset::awlco(std::hint::black_box(seq), s));
            start.elapsed()
        })
        .collect();
    times.sort();
    times[2]
}

fn complexity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut worst: Option<(usize, usize, usize)> = None;
    let mut violations = 0;
    let mut runs = 0;
    for _ in 0..500 {
        let alphabet = rng.gen_range(1..=8);
        let n = rng.gen_range(0..=2000);
        let seq = random_sequence(&mut rng, n, alphabet);
        let s = random_itemset(&mut rng, alphabet, 6);
        let hist: GapHistogram = itemset::awlco(&seq, &s);
        let bound = space_bound(n, s.len());
        runs += 1;
        if hist.len() > bound {
            violations += 1;
        }
        if worst.is_none_or(|(b, l, _)| hist.len() * b > l * bound.max(1)) {
            worst = Some((bound.max(1), hist.len(), n));
        }
    }
    let (wb, wl, wn) = worst.unwrap_or((1, 0, 0));
    let space_ok = violations == 0;

    let s = set(0..4);
    let n = 400_000;
    let short = random_sequence(&mut rng, n, 8);
    let long = random_sequence(&mut rng, 2 * n, 8);
    median_awlco_time(&short, &s);
    let t1 = median_awlco_time(&short, &s);
    let t2 = median_awlco_time(&long, &s);
    let ratio = t2.as_secs_f64() / t1.as_secs_f64().max(1e-9);
    let time_ok = ratio <= 2.5;

    Outcome::new(
        space_ok && time_ok,
        format!(
            "(a) {runs} runs, {violations} over the bucket bound, tightest {wl}/{wb} at n={wn}; \
             (b) n={n}: {:.1} ms, 2n: {:.1} ms, ratio {ratio:.2}",
            t1.as_secs_f64() * 1e3,
            t2.as_secs_f64() * 1e3
        ),
    )
}

fn continuous_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let tau = 10.0;
    let cases = 200;
    let mut violations = 0;
    let mut worst = (0.0f64, String::new());
    for case in 0..cases {
        let k = rng.gen_range(1..=3u32);
        let count = rng.gen_range(1..=50);
        let events: Vec<(Item, f64)> = (0..count)
            .map(|_| (Item(rng.gen_range(0..=k)), rng.gen_range(0.0..tau)))
            .collect();
        let ev = TimestampedEvents::new(events, tau).unwrap();
        let s = set(0..k);
        let t = tau / [16.0, 32.0, 64.0, 128.0][rng.gen_range(0..4)];
        let x = 2 * rng.gen_range(2..=10usize);
        let radius = x as f64 * t / 2.0;
        let est = continuous::estimate_probability(&ev, &s, t, radius).unwrap();
        let exact = continuous::exact_probability(&ev, &s, radius).unwrap();
        assert_eq!(est.x, x, "window length for radius {radius}");
        let err = (est.estimate - exact).abs();
        if err > est.bound + 1e-9 {
            violations += 1;
        }
        let ratio = err / est.bound;
        if ratio > worst.0 {
            worst = (
                ratio,
                format!(
                    "case {case}: t={t}, x={x}, estimate {:.6}, exact {exact:.6}",
                    est.estimate
                ),
            );
        }
    }
    Outcome::new(
        violations == 0,
        format!(
            "{cases} event sets, {violations} exceed t/x; worst error is {:.2}x the bound ({})",
            worst.0, worst.1
        ),
    )
}

/// Runs one `cooccur` command line in-process and returns its exit code
/// and standard output.
fn cooccur(args: &[&str]) -> (i32, Vec<u8>) {
    let argv = std::iter::once("cooccur").chain(args.iter().copied());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(_) => return (1, Vec::new()),
    };
    let mut out = Vec::new();
    match cooccur_cli::run(&cli, &mut out) {
        Ok(()) => (0, out),
        Err(e) => (e.exit_code(), out),
    }
}

fn cli_determinism() -> Outcome {
    let mut problems = Vec::new();

    let seeds: Vec<u64> = (0..100).collect();
    let failed: Vec<u64> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(25)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .copied()
                        .filter(|seed| {
                            cooccur(&["fuzz", "--verify", "--seed", &seed.to_string()]).0 != 0
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    if !failed.is_empty() {
        problems.push(format!("fuzz failed for seeds {failed:?}"));
    }

    let dir = tempfile::tempdir().expect("temp dir");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut compared = 0;
    for case in 0..20 {
        let n = rng.gen_range(1..=300);
        let words = ["w", "x", "y", "z", "q"];
        let text: Vec<&str> = (0..n).map(|_| *words.choose(&mut rng).unwrap()).collect();
        let path = dir.path().join(format!("case{case}.txt"));
        std::fs::write(&path, text.join(" ")).unwrap();
        let k = rng.gen_range(1..=3);
        let items = words[..k].join(",");
        let path = path.to_str().unwrap();

        let hist = cooccur(&["--output", "csv", "hist", "--items", &items, path]);
        let curve = cooccur(&["--output", "csv", "curve", "--items", &items, path]);
        let ((hist_code, hist), (curve_code, curve)) = (hist, curve);
        if hist_code != 0 || curve_code != 0 {
            problems.push(format!("case {case}: command failed"));
            continue;
        }
        let offline = curve_from_hist_csv(&String::from_utf8_lossy(&hist), n);
        if offline.as_bytes() != curve.as_slice() {
            problems.push(format!(
                "case {case}: curve CSV differs from histogram reconstruction"
            ));
        }
        compared += 1;
    }
    Outcome::new(
        problems.is_empty(),
        format!("100 fuzz seeds, {compared} hist/curve pairs compared; {problems:?}"),
    )
}

/// `co(x) = (n - x + 1) - sum_{k >= x} (k - x + 1) H[k]`, evaluated directly.
fn curve_from_hist_csv(csv: &str, n: usize) -> String {
    let buckets: Vec<(i64, i64)> = csv
        .lines()
        .map(|l| {
            let (k, h) = l.split_once(',').expect("k,h row");
            (k.parse().unwrap(), h.parse().unwrap())
        })
        .collect();
    let n = n as i64;
    let mut out = String::new();
    for x in 1..=n {
        let gaps: i64 = buckets
            .iter()
            .filter(|(k, _)| *k >= x)
            .map(|(k, h)| (k - x + 1) * h)
            .sum();
        out.push_str(&format!("{x},{}\n", n - x + 1 - gaps));
    }
    out
}
