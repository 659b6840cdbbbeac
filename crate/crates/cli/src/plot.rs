//! Figures: risk and error boxplots, capacity bars and prediction overlays.

use srmks::{
    fit, impulse_response, BoxStats, BoxplotSummary, ExperimentConfig, IterationRecord, KernelFamily, Metric,
};

use crate::svg::{tick_label, Axis, Svg};
use crate::Failure;

const WIDTH: f64 = 900.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const PANEL: f64 = 260.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn metric_title(m: Metric) -> &'static str {
    match m {
        Metric::Bound => "Guaranteed risk of the selected smoother",
        Metric::TrueMse => "MSE against the noise-free response",
        Metric::H => "Effective degrees of freedom",
    }
}

fn family_label(f: KernelFamily) -> &'static str {
    match f {
        KernelFamily::Se => "SE",
        KernelFamily::Sdof => "SDOF",
    }
}

/// Horizontal grid lines and labels for `axis` inside `[top, bottom]`.
fn y_axis(svg: &mut Svg, axis: &Axis, top: f64, bottom: f64) {
    svg.line("axis", (LEFT, top), (LEFT, bottom));
    svg.line("axis", (LEFT, bottom), (WIDTH - RIGHT, bottom));
    for v in axis.ticks() {
        let y = axis.map(v);
        svg.line("grid", (LEFT, y), (WIDTH - RIGHT, y));
        svg.text("tick", (LEFT - 6.0, y + 4.0), "end", &tick_label(v));
    }
}

fn groups(summary: &BoxplotSummary) -> Vec<(usize, KernelFamily)> {
    let mut keys: Vec<(usize, KernelFamily)> = summary.entries.iter().map(|e| (e.n, e.family)).collect();
    keys.dedup();
    keys
}

fn slot_center(i: usize, count: usize) -> f64 {
    let slot = (WIDTH - LEFT - RIGHT) / count as f64;
    LEFT + slot * (i as f64 + 0.5)
}

/// One panel per metric with one box per (n, family). Whiskers span the
/// finite minimum and maximum; infinite values are counted under the box.
pub fn boxplot(summary: &BoxplotSummary) -> String {
    let keys = groups(summary);
    let height = TOP + Metric::ALL.len() as f64 * (PANEL + BOTTOM);
    let mut svg = Svg::new(WIDTH, height);
    let half = ((WIDTH - LEFT - RIGHT) / keys.len() as f64 * 0.3).min(40.0);

    for (p, metric) in Metric::ALL.into_iter().enumerate() {
        let top = TOP + p as f64 * (PANEL + BOTTOM);
        let bottom = top + PANEL;
        let stats: Vec<&BoxStats> = keys.iter().map(|&(n, f)| summary.get(n, f, metric).expect("group")).collect();
        let finite: Vec<f64> = stats.iter().flat_map(|s| [s.min, s.max]).filter(|v| v.is_finite()).collect();
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if finite.is_empty() { (0.0, 1.0) } else { (lo, hi) };
        let axis = Axis::fit(lo, hi, bottom, top, metric != Metric::H);

        let scale = if axis.is_log() { " (log scale)" } else { "" };
        svg.text("title", (LEFT, top - 12.0), "start", &format!("{}{scale}", metric_title(metric)));
        y_axis(&mut svg, &axis, top, bottom);

        for (i, (&(n, family), s)) in keys.iter().zip(&stats).enumerate() {
            let x = slot_center(i, keys.len());
            svg.open_group(
                "box",
                &[
                    ("metric", metric.as_str().into()),
                    ("n", n.to_string()),
                    ("family", family.as_str().into()),
                    ("count", s.count.to_string()),
                    ("infinite", s.infinite_count.to_string()),
                ],
            );
            let class = family.as_str();
            if s.median.is_finite() {
                svg.line(class, (x, axis.map(s.min)), (x, axis.map(s.max)));
                svg.rect(class, (x - half, axis.map(s.q1)), (x + half, axis.map(s.q3)));
                svg.line(&format!("{class} median"), (x - half, axis.map(s.median)), (x + half, axis.map(s.median)));
            } else {
                svg.text("note", (x, (top + bottom) / 2.0), "middle", "all infinite");
            }
            if s.infinite_count > 0 {
                svg.text("note", (x, bottom - 6.0), "middle", &format!("inf: {}", s.infinite_count));
            }
            svg.text("tick", (x, bottom + 18.0), "middle", &format!("n={n} {}", family_label(family)));
            svg.close_group();
        }
    }
    svg.finish()
}

/// Median effective degrees of freedom per (n, family) as bars, with
/// whiskers from the lower to the upper quartile.
pub fn complexity(records: &[IterationRecord]) -> Result<String, Failure> {
    let mut keys: Vec<(usize, KernelFamily)> = records.iter().map(|r| (r.n, r.family)).collect();
    keys.sort();
    keys.dedup();
    let stats = keys
        .iter()
        .map(|&(n, f)| {
            let hs: Vec<f64> = records.iter().filter(|r| r.n == n && r.family == f).map(|r| r.h).collect();
            BoxStats::from_values(&hs)
        })
        .collect::<srmks::Result<Vec<_>>>()?;

    let top = TOP;
    let bottom = top + PANEL;
    let mut svg = Svg::new(WIDTH, top + PANEL + BOTTOM);
    let hi = stats.iter().map(|s| s.q3).fold(0.0, f64::max);
    let axis = Axis::exact(0.0, if hi > 0.0 { hi * 1.1 } else { 1.0 }, bottom, top);
    svg.text("title", (LEFT, top - 12.0), "start", "Effective degrees of freedom of the selected smoother (median, quartiles)");
    y_axis(&mut svg, &axis, top, bottom);

    let half = ((WIDTH - LEFT - RIGHT) / keys.len() as f64 * 0.3).min(40.0);
    for (i, (&(n, family), s)) in keys.iter().zip(&stats).enumerate() {
        let x = slot_center(i, keys.len());
        svg.open_group(
            "bar",
            &[("n", n.to_string()), ("family", family.as_str().into()), ("median", tick_label(s.median))],
        );
        let class = family.as_str();
        svg.rect(class, (x - half, axis.map(0.0)), (x + half, axis.map(s.median)));
        svg.line(class, (x, axis.map(s.q1)), (x, axis.map(s.q3)));
        svg.text("tick", (x, bottom + 18.0), "middle", &format!("n={n} {}", family_label(family)));
        svg.close_group();
    }
    Ok(svg.finish())
}

/// Noise-free response, training samples and the SE and SDOF smoothers of
/// one iteration, regenerated from the experiment configuration.
pub fn predictions(
    cfg: &ExperimentConfig,
    records: &[IterationRecord],
    n: Option<usize>,
    iteration: usize,
) -> Result<String, Failure> {
    let n = n.unwrap_or_else(|| records.iter().map(|r| r.n).max().unwrap_or(0));
    let chosen: Vec<&IterationRecord> = records.iter().filter(|r| r.n == n && r.iteration == iteration).collect();
    if chosen.is_empty() {
        return Err(Failure::Usage(format!("no records for n = {n}, iteration {iteration}")));
    }
    let plan_index = cfg
        .plans
        .iter()
        .position(|p| p.sample_count() == n)
        .ok_or_else(|| Failure::Usage(format!("configuration has no sampling plan with n = {n}")))?;
    let data = cfg.training_set(plan_index, iteration)?;
    if chosen.iter().any(|r| r.seed != data.seed()) {
        return Err(Failure::Usage("records were not produced by this configuration (seed mismatch)".into()));
    }

    let grid = cfg.plans[plan_index].base_grid::<f64>();
    let truth = grid.iter().map(|&t| impulse_response(&cfg.params, t)).collect::<srmks::Result<Vec<_>>>()?;
    let mut curves = Vec::new();
    for family in KernelFamily::ALL {
        if let Some(r) = chosen.iter().find(|r| r.family == family) {
            let model = fit(&r.chosen_spec, &data, data.sigma_n())?;
            curves.push((family, model.predict_many(&grid)));
        }
    }

    let amplitude = truth
        .iter()
        .chain(data.y())
        .chain(curves.iter().flat_map(|(_, c)| c))
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let top = TOP;
    let bottom = top + 2.0 * PANEL;
    let mut svg = Svg::new(WIDTH, bottom + BOTTOM);
    let x_axis = Axis::exact(grid[0], grid[grid.len() - 1], LEFT, WIDTH - RIGHT);
    let y_axis_map = Axis::fit(-amplitude, amplitude, bottom, top, false);
    svg.text("title", (LEFT, top - 12.0), "start", &format!("Predictions, n = {n}, iteration {iteration}"));
    y_axis(&mut svg, &y_axis_map, top, bottom);
    for v in x_axis.ticks() {
        svg.text("tick", (x_axis.map(v), bottom + 18.0), "middle", &tick_label(v));
    }
    svg.text("tick", ((LEFT + WIDTH - RIGHT) / 2.0, bottom + 38.0), "middle", "t [s]");

    let path = |values: &[f64]| -> Vec<(f64, f64)> {
        grid.iter().zip(values).map(|(&t, &v)| (x_axis.map(t), y_axis_map.map(v))).collect()
    };
    for (&t, &y) in data.t().iter().zip(data.y()) {
        svg.circle("sample", (x_axis.map(t), y_axis_map.map(y)), 1.8);
    }
    svg.polyline("truth", &path(&truth));
    for (family, values) in &curves {
        svg.polyline(family.as_str(), &path(values));
    }

    let legend = [("truth", "noise-free response"), ("se", "SE smoother"), ("sdof", "SDOF smoother")];
    for (i, (class, label)) in legend.iter().enumerate() {
        let y = top + 14.0 + 16.0 * i as f64;
        let x = WIDTH - RIGHT - 170.0;
        svg.line(class, (x, y - 4.0), (x + 24.0, y - 4.0));
        svg.text("legend", (x + 30.0, y), "start", label);
    }
    Ok(svg.finish())
}
