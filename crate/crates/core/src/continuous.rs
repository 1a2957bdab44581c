//! Probability that every query item occurs within a time radius of a
//! uniformly random instant, estimated by snapping timestamps to a grid and
//! counting co-occurring windows over the resulting multi-sequence.

use crate::error::{Error, Result};
use crate::multi;
use crate::sequence::{Item, ItemSet, MultiSequence};

/// Events `(item, time)` on the horizon `[0, tau]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimestampedEvents {
    events: Vec<(Item, f64)>,
    horizon: f64,
}

impl TimestampedEvents {
    pub fn new(events: Vec<(Item, f64)>, horizon: f64) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if let Some(&(item, t)) = events
            .iter()
            .find(|(_, t)| !(t.is_finite() && (0.0..=horizon).contains(t)))
        {
            return Err(Error::InvalidArgument(format!(
                "event {item:?} at {t} lies outside [0, {horizon}]"
            )));
        }
        Ok(Self { events, horizon })
    }

    pub fn events(&self) -> &[(Item, f64)] {
        &self.events
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of grid cells of width `t` covering `[0, tau]`. A ratio within
    /// rounding noise of an integer is taken as that integer.
    pub fn cell_count(&self, t: f64) -> usize {
        let r = self.horizon / t;
        let near = r.round();
        let cells = if (r - near).abs() <= 1e-9 * r.max(1.0) {
            near
        } else {
            r.ceil()
        };
        (cells as usize).max(1)
    }

    /// Snaps every event to the cell `floor(time / t)`. Times at the horizon
    /// are clamped into the last cell.
    pub fn discretize(&self, t: f64) -> Result<MultiSequence> {
        check_positive("grid width", t)?;
        let cells = self.cell_count(t);
        let mut sets = vec![Vec::new(); cells];
        for &(item, time) in &self.events {
            let c = ((time / t).floor() as usize).min(cells - 1);
            sets[c].push(item);
        }
        Ok(MultiSequence::new(sets))
    }
}

fn check_positive(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} must be positive, got {v}"
        )))
    }
}

/// Surrounds `seq` with `x / 2` empty cells on each side.
pub fn pad(seq: &MultiSequence, x: usize) -> Result<MultiSequence> {
    if !x.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("padding width {x} is odd")));
    }
    let half = x / 2;
    let mut sets = Vec::with_capacity(seq.len() + x);
    sets.extend(std::iter::repeat_with(Vec::new).take(half));
    sets.extend(seq.sets().iter().cloned());
    sets.extend(std::iter::repeat_with(Vec::new).take(half));
    Ok(MultiSequence::new(sets))
}

/// Window length in cells for `radius`: the even integer nearest to
/// `2 radius / t`, rounding ties up. `None` when that is zero.
pub fn window_cells(radius: f64, t: f64) -> Option<usize> {
    let half = (radius / t + 0.5).floor();
    (half >= 1.0).then(|| 2 * half as usize)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub estimate: f64,
    /// `t / x`.
    pub bound: f64,
    /// Window length in cells.
    pub x: usize,
    /// Grid width.
    pub t: f64,
    /// Set when the radius is below half a cell; `x` is then forced to 2 and
    /// the bound says nothing useful.
    pub vacuous: bool,
}

pub fn estimate_probability(
    ev: &TimestampedEvents,
    set: &ItemSet,
    t: f64,
    radius: f64,
) -> Result<Estimate> {
    check_positive("grid width", t)?;
    check_positive("radius", radius)?;
    let (x, vacuous) = match window_cells(radius, t) {
        Some(x) => (x, false),
        None => {
            log::warn!("radius {radius} is under half a grid cell of {t}; using a 2-cell window");
            (2, true)
        }
    };
    let padded = pad(&ev.discretize(t)?, x)?;
    let count = multi::multi_curve(&padded, set)?.get(x);
    Ok(Estimate {
        estimate: count as f64 * t / ev.horizon(),
        bound: t / x as f64,
        x,
        t,
        vacuous,
    })
}

/// Exact probability by interval arithmetic: the measure of
/// `∩_{e in I} ∪_{(e, w)} (w - r, w + r)` within `[0, tau]`, over `tau`.
pub fn exact_probability(ev: &TimestampedEvents, set: &ItemSet, radius: f64) -> Result<f64> {
    check_positive("radius", radius)?;
    let tau = ev.horizon();
    let mut common: Option<Vec<(f64, f64)>> = None;
    for &item in set.items() {
        let mut spans: Vec<(f64, f64)> = ev
            .events()
            .iter()
            .filter(|(e, _)| *e == item)
            .map(|&(_, w)| ((w - radius).max(0.0), (w + radius).min(tau)))
            .collect();
        if spans.is_empty() {
            return Ok(0.0);
        }
        let union = union_of(&mut spans);
        common = Some(match common {
            None => union,
            Some(prev) => intersect(&prev, &union),
        });
    }
    let measure: f64 = common.unwrap_or_default().iter().map(|(a, b)| b - a).sum();
    Ok(measure / tau)
}

fn union_of(spans: &mut [(f64, f64)]) -> Vec<(f64, f64)> {
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
    for &(a, b) in spans.iter() {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn intersect(x: &[(f64, f64)], y: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < x.len() && j < y.len() {
        let a = x[i].0.max(y[j].0);
        let b = x[i].1.min(y[j].1);
        if a < b {
            out.push((a, b));
        }
        if x[i].1 < y[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}
