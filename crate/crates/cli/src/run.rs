use std::io::Write;
use std::time::Instant;

use cooccur::continuous::{self, TimestampedEvents};
use cooccur::{
    itemset, multi, pattern, Awlco, CooccurrenceCurve, GapHistogram, Item, ItemSet, MultiAwlco,
    MultiSequence, Pattern, PatternSet, Pawlco, Sequence, SingleCounter,
};

use crate::args::{
    Cli, Command, CountArgs, CurveArgs, InputFormat, OutputKind, PatternArgs, ProbArgs,
};
use crate::error::CliError;
use crate::fuzz;
use crate::input::{self, Query};
use crate::output::{self, Meta};

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = cli.output.unwrap_or(OutputKind::Csv);
    let cap = cli.max_oracle_n;
    match &cli.command {
        Command::Count(a) => count(a, kind, out),
        Command::Curve(a) => curve(a, kind, cap, out),
        Command::Hist(a) => hist(a, kind, cap, out),
        Command::Patterns(a) => patterns(a, kind, cap, out),
        Command::Prob(a) => prob(a, cli.output.unwrap_or(OutputKind::Json), out),
        Command::Fuzz(a) => {
            let report = fuzz::run(a.seed, a.cases);
            writeln!(out, "{report}")?;
            if a.verify && !report.is_clean() {
                return Err(CliError::Consistency(format!(
                    "fuzz seed {} found {} mismatches",
                    a.seed, report.mismatches
                )));
            }
            Ok(())
        }
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn query(format: InputFormat, items: &[String]) -> Result<Query, CliError> {
    Query::new(items.iter().map(|s| input::normalize(format, s)).collect())
}

fn reject_events(format: InputFormat) -> Result<(), CliError> {
    if format == InputFormat::Events {
        return Err(CliError::Usage(
            "events input is only accepted by `prob`".into(),
        ));
    }
    Ok(())
}

fn too_long(cap: usize) -> CliError {
    CliError::Usage(format!(
        "input exceeds {cap} elements; raise --max-oracle-n to use the oracle"
    ))
}

/// Materializes a symbol input for the oracles, keeping only the query
/// distinction (every other token shares one id).
fn collect_symbols(a: &CurveArgs, q: &mut Query, cap: usize) -> Result<Sequence, CliError> {
    let reader = input::open(a.input.input.as_deref())?;
    let mut items = Vec::new();
    input::for_each_symbol(reader, a.input.format, |s| items.push(q.classify(s)))?;
    if items.len() > cap {
        return Err(too_long(cap));
    }
    Ok(Sequence::new(items))
}

fn collect_sets(a: &CurveArgs, q: &mut Query, cap: usize) -> Result<MultiSequence, CliError> {
    let reader = input::open(a.input.input.as_deref())?;
    let mut sets = Vec::new();
    input::for_each_set(reader, |row| {
        sets.push(row.iter().map(|s| q.classify(s)).collect())
    })?;
    if sets.len() > cap {
        return Err(too_long(cap));
    }
    Ok(MultiSequence::new(sets))
}

fn stream_awlco(a: &CurveArgs, q: &mut Query) -> Result<GapHistogram, CliError> {
    let reader = input::open(a.input.input.as_deref())?;
    let mut run = Awlco::new(&q.itemset());
    input::for_each_symbol(reader, a.input.format, |s| {
        run.push(q.classify(s));
    })?;
    Ok(run.finish())
}

fn stream_multi(a: &CurveArgs, q: &mut Query) -> Result<GapHistogram, CliError> {
    let reader = input::open(a.input.input.as_deref())?;
    let mut run = MultiAwlco::new(&q.itemset());
    let mut row = Vec::new();
    input::for_each_set(reader, |tokens| {
        row.clear();
        row.extend(tokens.iter().map(|s| q.classify(s)));
        run.push(&row);
    })?;
    Ok(run.finish())
}

fn count(a: &CountArgs, kind: OutputKind, out: &mut dyn Write) -> Result<(), CliError> {
    let format = a.input.format;
    reject_events(format)?;
    let mut q = query(format, &a.items)?;
    let set = q.itemset();
    let start = Instant::now();
    let reader = input::open(a.input.input.as_deref())?;
    let (n, value, algorithm) = if format == InputFormat::Sets {
        let mut run = MultiAwlco::new(&set);
        let mut row = Vec::new();
        input::for_each_set(reader, |tokens| {
            row.clear();
            row.extend(tokens.iter().map(|s| q.classify(s)));
            run.push(&row);
        })?;
        let h = run.finish();
        let n = h.n();
        if a.window == 0 || a.window > n {
            return Err(CliError::Usage(format!(
                "window length {} outside 1..={n}",
                a.window
            )));
        }
        (n, h.curve(1)?.get(a.window), "multi_awlco")
    } else {
        let mut counter = SingleCounter::new(&set, a.window)?;
        let mut n = 0;
        input::for_each_symbol(reader, format, |s| {
            n += 1;
            counter.push(q.classify(s));
        })?;
        (n, counter.finish()?, "single_counting")
    };
    q.warn_unseen();
    let meta = Meta {
        n,
        items: q.names(),
        algorithm,
        wall_time_ms: millis(start),
    };
    output::write_count(out, kind, meta, a.window, value)
}

fn mismatch(what: &str, fast: &CooccurrenceCurve, slow: &CooccurrenceCurve) -> CliError {
    let x = fast
        .iter()
        .zip(slow.iter())
        .find(|(f, s)| f != s)
        .map(|((x, _), _)| x)
        .unwrap_or(0);
    CliError::Consistency(format!(
        "{what}: single-pass and brute-force curves differ at x={x} ({} vs {})",
        fast.get(x),
        slow.get(x)
    ))
}

fn curve(a: &CurveArgs, kind: OutputKind, cap: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let format = a.input.format;
    reject_events(format)?;
    let mut q = query(format, &a.items)?;
    let set = q.itemset();
    let start = Instant::now();
    let multi = format == InputFormat::Sets;
    let (curve, algorithm) = if a.oracle || a.verify {
        let (slow, fast) = if multi {
            let seq = collect_sets(a, &mut q, cap)?;
            (
                multi::brute_force_multi_curve(&seq, &set),
                a.verify
                    .then(|| multi::multi_curve(&seq, &set))
                    .transpose()?,
            )
        } else {
            let seq = collect_symbols(a, &mut q, cap)?;
            (
                itemset::brute_force_curve(&seq, &set),
                a.verify
                    .then(|| itemset::all_window_curve(&seq, &set))
                    .transpose()?,
            )
        };
        match fast {
            Some(fast) if fast != slow => return Err(mismatch("curve", &fast, &slow)),
            Some(fast) => (fast, "verified"),
            None => (slow, "brute_force"),
        }
    } else if multi {
        (stream_multi(a, &mut q)?.curve(1)?, "multi_awlco")
    } else {
        (stream_awlco(a, &mut q)?.curve(set.len())?, "awlco")
    };
    q.warn_unseen();
    let meta = Meta {
        n: curve.n(),
        items: q.names(),
        algorithm,
        wall_time_ms: millis(start),
    };
    output::write_curve(out, kind, meta, &curve)
}

/// Histogram of a multi-sequence built only from the subset-enumeration
/// updates, with the end of the sequence treated as an index observing every
/// item.
fn enumerated_multi_hist(seq: &MultiSequence, set: &ItemSet) -> Result<GapHistogram, CliError> {
    let n = seq.len();
    let mut last = vec![-1i64; set.len()];
    let mut h = GapHistogram::new(n);
    let apply = |h: &mut GapHistogram, last: &[i64], seen: &[Item], i: usize| {
        for u in multi::subset_enumeration_update(set, last, seen, i as i64)? {
            h.apply(u)?;
        }
        Ok::<_, CliError>(())
    };
    for (i, events) in seq.sets().iter().enumerate() {
        let seen: Vec<Item> = events
            .iter()
            .copied()
            .filter(|e| set.contains(*e))
            .collect();
        apply(&mut h, &last, &seen, i)?;
        for e in seen {
            last[e.index()] = i as i64;
        }
    }
    apply(&mut h, &last, set.items(), n)?;
    Ok(h)
}

fn hist(a: &CurveArgs, kind: OutputKind, cap: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let format = a.input.format;
    reject_events(format)?;
    let mut q = query(format, &a.items)?;
    let set = q.itemset();
    let start = Instant::now();
    let multi = format == InputFormat::Sets;
    let (h, algorithm) = if a.oracle || a.verify {
        let (slow, fast) = if multi {
            let seq = collect_sets(a, &mut q, cap)?;
            (
                enumerated_multi_hist(&seq, &set)?,
                a.verify.then(|| multi::multi_awlco(&seq, &set)),
            )
        } else {
            let seq = collect_symbols(a, &mut q, cap)?;
            (
                itemset::gap_counting_naive(&seq, &set)?,
                a.verify.then(|| itemset::awlco(&seq, &set)),
            )
        };
        match fast {
            Some(fast) if fast != slow => {
                return Err(CliError::Consistency(
                    "single-pass and subset-enumeration histograms differ".into(),
                ))
            }
            Some(fast) => (fast, "verified"),
            None => (slow, "gap_counting"),
        }
    } else if multi {
        (stream_multi(a, &mut q)?, "multi_awlco")
    } else {
        (stream_awlco(a, &mut q)?, "awlco")
    };
    q.warn_unseen();
    let meta = Meta {
        n: h.n(),
        items: q.names(),
        algorithm,
        wall_time_ms: millis(start),
    };
    output::write_hist(out, kind, meta, &h)
}

fn patterns(
    a: &PatternArgs,
    kind: OutputKind,
    cap: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let format = a.input.format;
    if matches!(format, InputFormat::Sets | InputFormat::Events) {
        return Err(CliError::Usage(
            "patterns need a tokens, chars or fasta input".into(),
        ));
    }
    // Every distinct symbol used by a pattern becomes a query id.
    let split: Vec<Vec<String>> = a
        .patterns
        .iter()
        .map(|p| {
            let p = input::normalize(format, p);
            match format {
                InputFormat::Tokens => p.split_whitespace().map(str::to_owned).collect(),
                _ => p.chars().map(String::from).collect(),
            }
        })
        .collect();
    let mut symbols: Vec<String> = Vec::new();
    for s in split.iter().flatten() {
        if !symbols.contains(s) {
            symbols.push(s.clone());
        }
    }
    if symbols.is_empty() {
        return Err(CliError::Usage("patterns must be non-empty".into()));
    }
    let mut q = Query::new(symbols)?;
    let pats = split
        .iter()
        .map(|p| {
            Pattern::new(
                p.iter()
                    .map(|s| q.id(s).expect("symbol registered"))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ps = PatternSet::new(pats)?;
    let names = a.patterns.clone();

    let start = Instant::now();
    let reader = input::open(a.input.input.as_deref())?;
    let (curve, algorithm) = if a.oracle || a.verify {
        let mut items = Vec::new();
        input::for_each_symbol(reader, format, |s| items.push(q.classify(s)))?;
        if items.len() > cap {
            return Err(too_long(cap));
        }
        let seq = Sequence::new(items);
        let slow = pattern::brute_force_pattern_curve(&seq, &ps);
        if a.verify {
            let fast = pattern::pattern_curve(&seq, &ps)?;
            if fast != slow {
                return Err(mismatch("patterns", &fast, &slow));
            }
            (fast, "verified")
        } else {
            (slow, "brute_force")
        }
    } else {
        let mut run = Pawlco::new(&ps);
        input::for_each_symbol(reader, format, |s| {
            run.push(q.classify(s));
        })?;
        (run.finish().curve(ps.longest())?, "pawlco")
    };
    let meta = Meta {
        n: curve.n(),
        items: &names,
        algorithm,
        wall_time_ms: millis(start),
    };
    output::write_curve(out, kind, meta, &curve)
}

fn prob(a: &ProbArgs, kind: OutputKind, out: &mut dyn Write) -> Result<(), CliError> {
    if a.format != InputFormat::Events {
        return Err(CliError::Usage("prob reads an events CSV".into()));
    }
    for (name, v) in [("tau", a.tau), ("grid", a.grid), ("radius", a.radius)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::Usage(format!("--{name} must be positive")));
        }
    }
    let mut q = Query::new(a.items.iter().map(|s| s.trim().to_owned()).collect())?;
    let set = q.itemset();
    let start = Instant::now();
    let rows = input::read_events(input::open(a.input.as_deref())?)?;
    let events: Vec<(Item, f64)> = rows
        .iter()
        .map(|(name, t)| (q.classify(name), *t))
        .collect();
    let ev = TimestampedEvents::new(events, a.tau).map_err(|e| CliError::Input(e.to_string()))?;
    let est = continuous::estimate_probability(&ev, &set, a.grid, a.radius)?;
    if est.vacuous {
        eprintln!(
            "warning: radius {} is under half a grid cell; the error bound is vacuous",
            a.radius
        );
    }
    let exact = a
        .oracle
        .then(|| continuous::exact_probability(&ev, &set, a.radius))
        .transpose()?;
    q.warn_unseen();
    output::write_probability(out, kind, q.names(), millis(start), &est, exact)
}
