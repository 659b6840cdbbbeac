//! Monte-Carlo model-selection study.
//!
//! For every sampling plan and every repetition a fresh noise realisation is
//! drawn (seed `base_seed + iteration`), both structures are searched, and the
//! winning smoother of each is scored against the noise-free response on the
//! plan's full base grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::float17;
use crate::kernels::{KernelFamily, KernelSpec};
use crate::oscillator::{generate_training_set, impulse_response, OscillatorParams, SamplingPlan, TrainingSet};
use crate::risk::{empirical_risk, BoundConfig};
use crate::smoother::SpectralCache;
use crate::srm::{default_sdof_grid, default_se_grid, fit_candidate, srm_select_with, GridSettings};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub params: OscillatorParams<f64>,
    /// One plan per sample size. Each plan's own `seed` is replaced by the
    /// per-iteration seed.
    pub plans: Vec<SamplingPlan>,
    pub repetitions: usize,
    pub base_seed: u64,
    pub grids: GridSettings,
    pub bound_config: BoundConfig,
}

impl Default for ExperimentConfig {
    /// Reference study: 100 repetitions at n = 63, 126 and 251, SNR 10.
    fn default() -> Self {
        Self {
            params: OscillatorParams::reference(),
            plans: [16, 8, 4].iter().map(|&d| SamplingPlan::reference(d, 0)).collect(),
            repetitions: 100,
            base_seed: 20_230_101,
            grids: GridSettings::default(),
            bound_config: BoundConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::invalid("repetitions must be at least 1"));
        }
        if self.plans.is_empty() {
            return Err(Error::invalid("experiment needs at least one sampling plan"));
        }
        for plan in &self.plans {
            plan.validate()?;
        }
        self.bound_config.validate()
    }

    pub fn iteration_seed(&self, iteration: usize) -> u64 {
        self.base_seed.wrapping_add(iteration as u64)
    }

    /// Plan `plan_index` with the seed of `iteration` substituted.
    pub fn plan_for(&self, plan_index: usize, iteration: usize) -> Result<SamplingPlan> {
        let plan = self
            .plans
            .get(plan_index)
            .ok_or_else(|| Error::invalid(format!("no plan with index {plan_index}")))?;
        Ok(SamplingPlan { seed: self.iteration_seed(iteration), ..plan.clone() })
    }

    /// Regenerates the training set of one (plan, iteration) unit.
    pub fn training_set(&self, plan_index: usize, iteration: usize) -> Result<TrainingSet<f64>> {
        generate_training_set(&self.params, &self.plan_for(plan_index, iteration)?)
    }
}

/// Winner of one structure in one repetition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub n: usize,
    pub iteration: usize,
    pub seed: u64,
    pub family: KernelFamily,
    pub chosen_spec: KernelSpec<f64>,
    #[serde(with = "float17")]
    pub sigma_n: f64,
    #[serde(with = "float17")]
    pub emp_risk: f64,
    #[serde(with = "float17")]
    pub h: f64,
    #[serde(with = "float17")]
    pub p: f64,
    #[serde(with = "float17")]
    pub delta: f64,
    #[serde(with = "float17")]
    pub bound: f64,
    pub clipped: bool,
    pub degenerate: bool,
    /// MSE against the noise-free response on the plan's base grid.
    #[serde(with = "float17")]
    pub true_mse: f64,
}

fn tag(n: usize, iteration: usize, stage: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| Error::Experiment { n, iteration, stage: stage.to_string(), source: Box::new(e) }
}

/// Runs both structures on one (plan, iteration) unit.
///
/// Depends only on `cfg`, `plan_index` and `iteration`, so any unit can be
/// reproduced in isolation. The cache must only ever see this plan's inputs
/// for sharing to pay off, but correctness does not depend on it.
pub fn run_iteration(
    cfg: &ExperimentConfig,
    plan_index: usize,
    iteration: usize,
    cache: Option<&SpectralCache<f64>>,
) -> Result<Vec<IterationRecord>> {
    let plan = cfg.plan_for(plan_index, iteration)?;
    let n = plan.sample_count();
    let data = generate_training_set(&cfg.params, &plan).map_err(tag(n, iteration, "data"))?;
    let dense = plan.base_grid::<f64>();
    let truth = dense
        .iter()
        .map(|&t| impulse_response(&cfg.params, t))
        .collect::<Result<Vec<_>>>()
        .map_err(tag(n, iteration, "data"))?;

    KernelFamily::ALL
        .iter()
        .map(|&family| {
            let stage = family.as_str();
            let grid = match family {
                KernelFamily::Se => default_se_grid(&data, &cfg.grids.se),
                KernelFamily::Sdof => default_sdof_grid(&data, &cfg.params, &cfg.grids.sdof),
            }
            .map_err(tag(n, iteration, stage))?;
            let sel = srm_select_with(&grid, &data, &cfg.bound_config, cache).map_err(tag(n, iteration, stage))?;
            let model = fit_candidate(&sel.best_spec, &data, cache).map_err(tag(n, iteration, stage))?;
            let true_mse = empirical_risk(&truth, &model.predict_many(&dense)).map_err(tag(n, iteration, stage))?;
            let r = &sel.best_report;
            Ok(IterationRecord {
                n,
                iteration,
                seed: plan.seed,
                family,
                chosen_spec: sel.best_spec,
                sigma_n: data.sigma_n(),
                emp_risk: r.empirical_risk,
                h: r.h,
                p: r.p,
                delta: r.delta,
                bound: r.bound,
                clipped: r.clipped,
                degenerate: sel.degenerate,
                true_mse,
            })
        })
        .collect()
}

/// Runs every (plan, iteration) unit, in parallel on the current rayon pool.
///
/// Records come back sorted by (n, iteration, family); one record per plan,
/// iteration and family.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<IterationRecord>> {
    cfg.validate()?;
    let caches: Vec<SpectralCache<f64>> = cfg.plans.iter().map(|_| SpectralCache::new()).collect();
    let units: Vec<(usize, usize)> = (0..cfg.plans.len())
        .flat_map(|p| (0..cfg.repetitions).map(move |i| (p, i)))
        .collect();
    let batches = units
        .par_iter()
        .map(|&(p, i)| run_iteration(cfg, p, i, Some(&caches[p])))
        .collect::<Result<Vec<_>>>()?;
    let mut records: Vec<IterationRecord> = batches.into_iter().flatten().collect();
    records.sort_by_key(|r| (r.n, r.iteration, r.family));
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Bound,
    TrueMse,
    H,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Bound, Metric::TrueMse, Metric::H];

    pub fn of(self, r: &IterationRecord) -> f64 {
        match self {
            Metric::Bound => r.bound,
            Metric::TrueMse => r.true_mse,
            Metric::H => r.h,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Bound => "bound",
            Metric::TrueMse => "true_mse",
            Metric::H => "h",
        }
    }
}

/// Five-number summary plus mean over the finite values of one group.
///
/// `count` includes infinite values; `infinite_count` says how many. When
/// every value is infinite all statistics are `inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    #[serde(with = "float17")]
    pub min: f64,
    #[serde(with = "float17")]
    pub q1: f64,
    #[serde(with = "float17")]
    pub median: f64,
    #[serde(with = "float17")]
    pub q3: f64,
    #[serde(with = "float17")]
    pub max: f64,
    #[serde(with = "float17")]
    pub mean: f64,
    pub count: usize,
    pub infinite_count: usize,
}

/// Quantile of sorted data by linear interpolation between order statistics:
/// position `q (m - 1)` in zero-based order.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

impl BoxStats {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("no values to summarise"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("cannot summarise NaN values"));
        }
        let mut finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        let infinite_count = values.len() - finite.len();
        if finite.is_empty() {
            let inf = f64::INFINITY;
            return Ok(Self {
                min: inf,
                q1: inf,
                median: inf,
                q3: inf,
                max: inf,
                mean: inf,
                count: values.len(),
                infinite_count,
            });
        }
        finite.sort_by(f64::total_cmp);
        Ok(Self {
            min: finite[0],
            q1: quantile(&finite, 0.25),
            median: quantile(&finite, 0.5),
            q3: quantile(&finite, 0.75),
            max: finite[finite.len() - 1],
            mean: finite.iter().sum::<f64>() / finite.len() as f64,
            count: values.len(),
            infinite_count,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub n: usize,
    pub family: KernelFamily,
    pub metric: Metric,
    pub stats: BoxStats,
}

/// Box statistics per (n, family, metric), sorted in that order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotSummary {
    pub entries: Vec<SummaryEntry>,
}

impl BoxplotSummary {
    pub fn get(&self, n: usize, family: KernelFamily, metric: Metric) -> Option<&BoxStats> {
        self.entries
            .iter()
            .find(|e| e.n == n && e.family == family && e.metric == metric)
            .map(|e| &e.stats)
    }

    pub fn sample_sizes(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.entries.iter().map(|e| e.n).collect();
        ns.dedup();
        ns
    }
}

fn groups(records: &[IterationRecord]) -> Vec<(usize, KernelFamily)> {
    let mut keys: Vec<(usize, KernelFamily)> = records.iter().map(|r| (r.n, r.family)).collect();
    keys.sort();
    keys.dedup();
    keys
}

pub fn summarize(records: &[IterationRecord]) -> Result<BoxplotSummary> {
    if records.is_empty() {
        return Err(Error::invalid("no records to summarise"));
    }
    let mut entries = Vec::new();
    for (n, family) in groups(records) {
        let group: Vec<&IterationRecord> = records.iter().filter(|r| r.n == n && r.family == family).collect();
        for metric in Metric::ALL {
            let values: Vec<f64> = group.iter().map(|r| metric.of(r)).collect();
            entries.push(SummaryEntry { n, family, metric, stats: BoxStats::from_values(&values)? });
        }
    }
    Ok(BoxplotSummary { entries })
}

/// Median capacity per sample size for one family and its relative spread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacitySpread {
    pub family: KernelFamily,
    /// (n, median h), ascending in n.
    pub medians: Vec<(usize, f64)>,
    /// `(max - min) / min` over the medians.
    pub spread: f64,
}

pub fn edf_stability(records: &[IterationRecord], family: KernelFamily) -> Result<CapacitySpread> {
    let medians: Vec<(usize, f64)> = groups(records)
        .into_iter()
        .filter(|&(_, f)| f == family)
        .map(|(n, _)| {
            let mut hs: Vec<f64> = records
                .iter()
                .filter(|r| r.n == n && r.family == family)
                .map(|r| r.h)
                .collect();
            hs.sort_by(f64::total_cmp);
            (n, quantile(&hs, 0.5))
        })
        .collect();
    if medians.len() < 2 {
        return Err(Error::invalid(format!(
            "capacity spread needs {family} records for at least two sample sizes"
        )));
    }
    let lo = medians.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    let hi = medians.iter().map(|m| m.1).fold(f64::NEG_INFINITY, f64::max);
    let spread = if hi == lo {
        0.0
    } else if lo > 0.0 {
        (hi - lo) / lo
    } else {
        f64::INFINITY
    };
    Ok(CapacitySpread { family, medians, spread })
}

pub fn sdof_edf_stability(records: &[IterationRecord]) -> Result<CapacitySpread> {
    edf_stability(records, KernelFamily::Sdof)
}
