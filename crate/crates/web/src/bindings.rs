use wasm_bindgen::prelude::*;

use crate::{itemset_view, pattern_counts, probability_sweep, DemoError, Split};

fn js(e: DemoError) -> JsError {
    JsError::new(&e.to_string())
}

/// Curve for window lengths `1..=n`.
#[wasm_bindgen(js_name = itemsetCurve)]
pub fn itemset_curve(text: &str, items: &str, words: bool) -> Result<Vec<f64>, JsError> {
    let view = itemset_view(text, items, Split::from_flag(words)).map_err(js)?;
    Ok(view.curve.into_iter().map(|c| c as f64).collect())
}

/// Nonzero histogram buckets as `[k0, h0, k1, h1, ...]`.
#[wasm_bindgen(js_name = gapHistogram)]
pub fn gap_histogram(text: &str, items: &str, words: bool) -> Result<Vec<f64>, JsError> {
    let view = itemset_view(text, items, Split::from_flag(words)).map_err(js)?;
    Ok(view
        .buckets
        .into_iter()
        .flat_map(|(k, h)| [k as f64, h as f64])
        .collect())
}

#[wasm_bindgen(js_name = patternCurve)]
pub fn pattern_curve(text: &str, patterns: &str, words: bool) -> Result<Vec<f64>, JsError> {
    let counts = pattern_counts(text, patterns, Split::from_flag(words)).map_err(js)?;
    Ok(counts.into_iter().map(|c| c as f64).collect())
}

/// `[radius, estimate, exact, bound]` per step, flattened.
#[wasm_bindgen(js_name = probabilitySweep)]
pub fn sweep(
    events: &str,
    items: &str,
    horizon: f64,
    grid: f64,
    max_radius: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    let pts = probability_sweep(events, items, horizon, grid, max_radius, steps).map_err(js)?;
    Ok(pts
        .into_iter()
        .flat_map(|p| [p.radius, p.estimate, p.exact, p.bound])
        .collect())
}
