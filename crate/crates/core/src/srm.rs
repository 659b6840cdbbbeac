//! Structural risk minimisation over nested sets of kernel smoothers.
//!
//! A structure is an ordered list of candidate kernels whose capacity grows
//! along the list. For SE kernels the nesting parameter is the length scale:
//! element `k` admits every `l >= c_k` with `c_1 > c_2 > ...`, so candidates
//! are listed by descending length scale. The SDOF structure only varies the
//! signal scale, since the oscillator coefficients are known.
//!
//! Selection fits every candidate, bounds its expected risk from the training
//! MSE and the effective degrees of freedom, and keeps the candidate with the
//! smallest bound. Structures are then compared by their minima.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::float17;
use crate::kernels::{KernelFamily, KernelSpec};
use crate::oscillator::{OscillatorParams, TrainingSet};
use crate::risk::{empirical_risk, guaranteed_risk, BoundConfig, RiskReport};
use crate::scalar::Real;
use crate::smoother::{fit, FittedSmoother, SpectralCache};

/// Ordered candidates of one kernel family.
#[derive(Debug, Clone)]
pub struct StructureGrid<T: Real> {
    family: KernelFamily,
    candidates: Vec<KernelSpec<T>>,
    ordering_note: String,
}

impl<T: Real> StructureGrid<T> {
    /// Wraps an explicit candidate list; all candidates must share a family.
    pub fn new(candidates: Vec<KernelSpec<T>>, ordering_note: impl Into<String>) -> Result<Self> {
        let family = candidates
            .first()
            .ok_or_else(|| Error::invalid("structure grid has no candidates"))?
            .family();
        if candidates.iter().any(|c| c.family() != family) {
            return Err(Error::invalid("structure grid mixes kernel families"));
        }
        Ok(Self { family, candidates, ordering_note: ordering_note.into() })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn candidates(&self) -> &[KernelSpec<T>] {
        &self.candidates
    }

    pub fn ordering_note(&self) -> &str {
        &self.ordering_note
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

fn check_range<T: Real>(name: &str, (lo, hi): (T, T), count: usize) -> Result<()> {
    if !(lo > T::zero()) || !hi.is_finite() || !(lo < hi) {
        return Err(Error::invalid(format!(
            "{name} range must satisfy 0 < lo < hi < inf (got {lo:?}, {hi:?})"
        )));
    }
    if count == 0 {
        return Err(Error::invalid(format!("{name} grid needs at least one value")));
    }
    Ok(())
}

/// `count` log-spaced values from `lo` to `hi` inclusive, ascending. A single
/// value is `lo`.
pub fn log_space<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let ratio = (hi / lo).ln();
            let last = T::from_count(count - 1);
            let mut out: Vec<T> = (0..count)
                .map(|i| lo * (ratio * T::from_count(i) / last).exp())
                .collect();
            out[0] = lo;
            out[count - 1] = hi;
            out
        }
    }
}

/// SE structure: length scales descending (primary), signal scales ascending.
pub fn build_se_grid<T: Real>(
    sigma_f_range: (T, T),
    l_range: (T, T),
    n_sigma: usize,
    n_l: usize,
) -> Result<StructureGrid<T>> {
    check_range("sigma_f", sigma_f_range, n_sigma)?;
    check_range("length scale", l_range, n_l)?;
    let sigmas = log_space(sigma_f_range.0, sigma_f_range.1, n_sigma);
    let mut ls = log_space(l_range.0, l_range.1, n_l);
    ls.reverse();
    let mut candidates = Vec::with_capacity(n_sigma * n_l);
    for &l in &ls {
        for &s in &sigmas {
            candidates.push(KernelSpec::se(s, l)?);
        }
    }
    StructureGrid::new(
        candidates,
        "SE: length scale descending (capacity increasing), sigma_f ascending within each length scale",
    )
}

/// SDOF structure: signal scales ascending, oscillator fixed.
pub fn build_sdof_grid<T: Real>(
    params: &OscillatorParams<T>,
    sigma_f_range: (T, T),
    n_sigma: usize,
) -> Result<StructureGrid<T>> {
    check_range("sigma_f", sigma_f_range, n_sigma)?;
    let candidates = log_space(sigma_f_range.0, sigma_f_range.1, n_sigma)
        .into_iter()
        .map(|s| KernelSpec::sdof(s, *params))
        .collect::<Result<Vec<_>>>()?;
    StructureGrid::new(candidates, "SDOF: sigma_f ascending, m, c, k fixed")
}

/// Default SE grid relative to the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeGridSettings {
    pub n_sigma: usize,
    pub n_l: usize,
    /// Signal-scale range as multiples of RMS(y).
    #[serde(with = "float17")]
    pub sigma_f_lo: f64,
    #[serde(with = "float17")]
    pub sigma_f_hi: f64,
    /// Length-scale range; defaults to smallest training gap .. training span.
    #[serde(with = "float17::opt")]
    pub l_min: Option<f64>,
    #[serde(with = "float17::opt")]
    pub l_max: Option<f64>,
}

impl Default for SeGridSettings {
    fn default() -> Self {
        Self { n_sigma: 10, n_l: 30, sigma_f_lo: 0.1, sigma_f_hi: 10.0, l_min: None, l_max: None }
    }
}

/// How the SDOF signal-scale range relates to RMS(y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdofScale {
    /// The kernel's marginal standard deviation `sqrt(k(t, t))` spans the
    /// factor range times RMS(y).
    #[default]
    Marginal,
    /// `sigma_f` itself spans the factor range times RMS(y).
    Raw,
}

/// Default SDOF grid relative to the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SdofGridSettings {
    pub n_sigma: usize,
    #[serde(with = "float17")]
    pub sigma_f_lo: f64,
    #[serde(with = "float17")]
    pub sigma_f_hi: f64,
    pub scale: SdofScale,
}

impl Default for SdofGridSettings {
    fn default() -> Self {
        Self { n_sigma: 30, sigma_f_lo: 0.1, sigma_f_hi: 10.0, scale: SdofScale::Marginal }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSettings {
    pub se: SeGridSettings,
    pub sdof: SdofGridSettings,
}

fn data_scale<T: Real>(data: &TrainingSet<T>) -> Result<T> {
    let rms = data.rms_y();
    if !(rms > T::zero()) {
        return Err(Error::invalid("cannot scale a grid to all-zero targets"));
    }
    Ok(rms)
}

pub fn default_se_grid<T: Real>(data: &TrainingSet<T>, s: &SeGridSettings) -> Result<StructureGrid<T>> {
    let rms = data_scale(data)?;
    let l_min = match s.l_min {
        Some(v) => T::lit(v),
        None => data
            .min_gap()
            .ok_or_else(|| Error::invalid("default length-scale range needs two or more samples"))?,
    };
    let l_max = s.l_max.map_or_else(|| data.span(), T::lit);
    build_se_grid(
        (rms * T::lit(s.sigma_f_lo), rms * T::lit(s.sigma_f_hi)),
        (l_min, l_max),
        s.n_sigma,
        s.n_l,
    )
}

pub fn default_sdof_grid<T: Real>(
    data: &TrainingSet<T>,
    params: &OscillatorParams<T>,
    s: &SdofGridSettings,
) -> Result<StructureGrid<T>> {
    let rms = data_scale(data)?;
    let unit = match s.scale {
        SdofScale::Marginal => rms / KernelSpec::sdof(T::one(), *params)?.unit_variance().sqrt(),
        SdofScale::Raw => rms,
    };
    build_sdof_grid(params, (unit * T::lit(s.sigma_f_lo), unit * T::lit(s.sigma_f_hi)), s.n_sigma)
}

/// One evaluated candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct TraceEntry<T: Real> {
    pub spec: KernelSpec<T>,
    pub report: RiskReport<T>,
}

/// Winner of one structure plus the full evaluation trace in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SelectionResult<T: Real> {
    pub family: KernelFamily,
    pub best_index: usize,
    pub best_spec: KernelSpec<T>,
    pub best_report: RiskReport<T>,
    /// Every candidate's bound was infinite; the winner is the smallest capacity.
    pub degenerate: bool,
    pub trace: Vec<TraceEntry<T>>,
}

/// Fits one candidate, through the cache when one is supplied.
pub fn fit_candidate<T: Real>(
    spec: &KernelSpec<T>,
    data: &TrainingSet<T>,
    cache: Option<&SpectralCache<T>>,
) -> Result<FittedSmoother<T>> {
    match cache {
        Some(cache) if data.sigma_n() > T::zero() => {
            cache.get(spec, data.t())?.fit(spec.sigma_f(), data, data.sigma_n())
        }
        _ => fit(spec, data, data.sigma_n()),
    }
}

/// Fits `spec` and bounds its expected risk.
pub fn evaluate_candidate<T: Real>(
    spec: &KernelSpec<T>,
    data: &TrainingSet<T>,
    bound: &BoundConfig,
    cache: Option<&SpectralCache<T>>,
) -> Result<RiskReport<T>> {
    let model = fit_candidate(spec, data, cache)?;
    let mse = empirical_risk(data.y(), model.fitted_values().as_slice())?;
    guaranteed_risk(mse, model.effective_dof(), data.len(), bound)
}

/// `a` beats `b`: smaller bound, then smaller capacity.
fn beats<T: Real>(a: &RiskReport<T>, b: &RiskReport<T>) -> bool {
    a.bound < b.bound || (a.bound == b.bound && a.h < b.h)
}

/// Exhaustive selection with the reduced bound and direct fits.
pub fn srm_select<T: Real>(grid: &StructureGrid<T>, data: &TrainingSet<T>) -> Result<SelectionResult<T>> {
    srm_select_with(grid, data, &BoundConfig::default(), None)
}

/// Exhaustive selection. Every fit uses `data.sigma_n()` as the noise level.
///
/// Ties go to the smaller capacity, then to the earlier grid position. When
/// every bound is infinite the smallest capacity wins and the result is
/// flagged degenerate.
pub fn srm_select_with<T: Real>(
    grid: &StructureGrid<T>,
    data: &TrainingSet<T>,
    bound: &BoundConfig,
    cache: Option<&SpectralCache<T>>,
) -> Result<SelectionResult<T>> {
    if grid.is_empty() {
        return Err(Error::invalid("structure grid has no candidates"));
    }
    let trace = grid
        .candidates()
        .iter()
        .map(|spec| {
            evaluate_candidate(spec, data, bound, cache).map(|report| TraceEntry { spec: *spec, report })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best = 0;
    for (i, entry) in trace.iter().enumerate().skip(1) {
        if beats(&entry.report, &trace[best].report) {
            best = i;
        }
    }
    Ok(SelectionResult {
        family: grid.family(),
        best_index: best,
        best_spec: trace[best].spec,
        best_report: trace[best].report,
        degenerate: trace[best].report.clipped,
        trace,
    })
}

/// Picks the structure whose best bound is smallest (ties: smaller capacity,
/// then earlier in the list).
pub fn compare_structures<T: Real>(results: &[SelectionResult<T>]) -> Result<&SelectionResult<T>> {
    let (first, rest) = results
        .split_first()
        .ok_or_else(|| Error::invalid("no structures to compare"))?;
    Ok(rest.iter().fold(first, |best, r| {
        if beats(&r.best_report, &best.best_report) {
            r
        } else {
            best
        }
    }))
}
