use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use srmks::format::{float17, fmt_float};
use srmks::io::{csv_table, parse_records_csv, records_csv, to_json, trace_csv, training_csv, TrainingSetFile};
use srmks::risk::guaranteed_risk;
use srmks::{
    compare_structures, default_sdof_grid, default_se_grid, empirical_risk, generate_training_set,
    impulse_response, run_experiment, srm_select_with, summarize, BoundConfig, ExperimentConfig, KernelFamily,
    KernelSpec, Metric, OscillatorParams, RiskReport, SamplingPlan, SdofGridSettings, SeGridSettings,
    SelectionResult, SpectralCache, TrainingSet,
};

use crate::{plot, ExperimentArgs, Failure, FitArgs, PlotArgs, PlotKind, SelectArgs, SimulateArgs};

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

/// Reads and deserialises a JSON file; any failure is an I/O or parse error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| io_failure(path, e))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    srmks::io::write_text(&path, text).map_err(|e| io_failure(&path, e))
}

#[derive(Serialize)]
struct Provenance<'a, A: Serialize> {
    command: &'static str,
    version: &'static str,
    args: &'a A,
}

fn write_provenance<A: Serialize>(dir: &Path, command: &'static str, args: &A) -> Result<(), Failure> {
    let record = Provenance { command, version: env!("CARGO_PKG_VERSION"), args };
    write(dir, "config.json", &to_json(&record)?)
}

fn load_training(path: &Path) -> Result<(TrainingSetFile, TrainingSet), Failure> {
    let file: TrainingSetFile = read_json(path)?;
    let set = file.training_set().map_err(|e| io_failure(path, e))?;
    Ok((file, set))
}

pub fn simulate(a: &SimulateArgs) -> Result<(), Failure> {
    let params = OscillatorParams::new(a.m, a.c, a.k)?;
    let plan = SamplingPlan {
        t_start: a.t_start,
        t_end: a.t_end,
        base_points: a.base_points,
        decimation: a.decimation,
        snr: a.snr,
        seed: a.seed,
    };
    let set = generate_training_set::<f64>(&params, &plan)?;
    write(&a.out, "training.csv", &training_csv(&set)?)?;
    write(&a.out, "training.json", &to_json(&TrainingSetFile::new(&set, &params, &plan))?)?;
    write_provenance(&a.out, "simulate", a)?;
    println!("n = {}", set.len());
    println!("sigma_n = {}", fmt_float(set.sigma_n()));
    Ok(())
}

#[derive(Serialize)]
struct FitOutput {
    kernel: KernelSpec,
    n: usize,
    #[serde(with = "float17")]
    sigma_n: f64,
    #[serde(with = "float17")]
    jitter: f64,
    report: RiskReport,
    #[serde(with = "float17::vec")]
    weights: Vec<f64>,
}

pub fn fit(a: &FitArgs) -> Result<(), Failure> {
    let (file, data) = load_training(&a.data)?;
    let spec: KernelSpec = read_json(&a.kernel)?;
    let sigma_n = a.sigma_n.unwrap_or(data.sigma_n());
    let model = srmks::fit(&spec, &data, sigma_n)?;
    let mse = empirical_risk(data.y(), model.fitted_values().as_slice())?;
    let report = guaranteed_risk(mse, model.effective_dof(), data.len(), &BoundConfig::default())?;

    let grid = file.plan.base_grid::<f64>();
    let rows = grid
        .iter()
        .map(|&t| {
            Ok(vec![fmt_float(t), fmt_float(model.predict(t)), fmt_float(impulse_response(&file.params, t)?)])
        })
        .collect::<srmks::Result<Vec<_>>>()?;
    let output = FitOutput {
        kernel: spec,
        n: data.len(),
        sigma_n,
        jitter: model.jitter(),
        report,
        weights: model.weights().iter().copied().collect(),
    };
    write(&a.out, "fit.json", &to_json(&output)?)?;
    write(&a.out, "predictions.csv", &csv_table(&["t", "prediction", "true_h"], rows)?)?;
    write_provenance(&a.out, "fit", a)?;
    println!("edf = {}", fmt_float(report.h));
    println!("emp_risk = {}", fmt_float(report.empirical_risk));
    println!("bound = {}", fmt_float(report.bound));
    Ok(())
}

#[derive(Serialize)]
struct StructureSummary<'a> {
    family: KernelFamily,
    candidates: usize,
    best_index: usize,
    best_spec: &'a KernelSpec,
    best_report: &'a RiskReport,
    degenerate: bool,
}

#[derive(Serialize)]
struct SelectionOutput<'a> {
    n: usize,
    #[serde(with = "float17")]
    sigma_n: f64,
    winner: KernelFamily,
    structures: Vec<StructureSummary<'a>>,
}

pub fn select(a: &SelectArgs) -> Result<(), Failure> {
    let (file, data) = load_training(&a.data)?;
    let base = file.params;
    let params = OscillatorParams::new(a.m.unwrap_or(base.m()), a.c.unwrap_or(base.c()), a.k.unwrap_or(base.k()))?;
    let se = SeGridSettings {
        n_sigma: a.se_n_sigma,
        n_l: a.se_n_l,
        sigma_f_lo: a.sigma_f_lo,
        sigma_f_hi: a.sigma_f_hi,
        l_min: a.l_min,
        l_max: a.l_max,
    };
    let sdof = SdofGridSettings {
        n_sigma: a.sdof_n_sigma,
        sigma_f_lo: a.sigma_f_lo,
        sigma_f_hi: a.sigma_f_hi,
        scale: a.sdof_scale.into(),
    };

    let cache = SpectralCache::new();
    let results = a
        .family
        .families()
        .into_iter()
        .map(|family| {
            let grid = match family {
                KernelFamily::Se => default_se_grid(&data, &se)?,
                KernelFamily::Sdof => default_sdof_grid(&data, &params, &sdof)?,
            };
            srm_select_with(&grid, &data, &BoundConfig::default(), Some(&cache))
        })
        .collect::<srmks::Result<Vec<SelectionResult>>>()?;
    let winner = compare_structures(&results)?.family;

    let output = SelectionOutput {
        n: data.len(),
        sigma_n: data.sigma_n(),
        winner,
        structures: results
            .iter()
            .map(|r| StructureSummary {
                family: r.family,
                candidates: r.trace.len(),
                best_index: r.best_index,
                best_spec: &r.best_spec,
                best_report: &r.best_report,
                degenerate: r.degenerate,
            })
            .collect(),
    };
    write(&a.out, "selection.json", &to_json(&output)?)?;
    write(&a.out, "trace.csv", &trace_csv(&results)?)?;
    write_provenance(&a.out, "select", a)?;
    for r in &results {
        println!(
            "{}: bound = {}, h = {}, candidate {} of {}",
            r.family,
            fmt_float(r.best_report.bound),
            fmt_float(r.best_report.h),
            r.best_index + 1,
            r.trace.len()
        );
    }
    println!("winner = {winner}");
    Ok(())
}

pub fn experiment(a: &ExperimentArgs) -> Result<(), Failure> {
    let mut cfg = match &a.config {
        Some(path) => read_json::<ExperimentConfig>(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(reps) = a.reps {
        cfg.repetitions = reps;
    }
    if let Some(seed) = a.seed {
        cfg.base_seed = seed;
    }
    cfg.validate()?;

    let records = run_experiment(&cfg)?;
    let summary = summarize(&records)?;
    write(&a.out, "records.csv", &records_csv(&records)?)?;
    write(&a.out, "summary.json", &to_json(&summary)?)?;
    write(&a.out, "config.json", &to_json(&cfg)?)?;

    for n in summary.sample_sizes() {
        for family in KernelFamily::ALL {
            let (Some(bound), Some(h)) = (summary.get(n, family, Metric::Bound), summary.get(n, family, Metric::H))
            else {
                continue;
            };
            println!(
                "n = {n:>4} {family:>4}: median bound {}, median h {}, infinite bounds {}/{}",
                fmt_float(bound.median),
                fmt_float(h.median),
                bound.infinite_count,
                bound.count
            );
        }
    }
    Ok(())
}

fn sibling_config(records: &Path) -> PathBuf {
    records.parent().unwrap_or_else(|| Path::new("")).join("config.json")
}

pub fn plot(a: &PlotArgs) -> Result<(), Failure> {
    let records = parse_records_csv(&read(&a.records)?).map_err(|e| io_failure(&a.records, e))?;
    let (name, svg) = match a.kind {
        PlotKind::Boxplot => ("boxplot.svg", plot::boxplot(&summarize(&records)?)),
        PlotKind::Complexity => ("complexity.svg", plot::complexity(&records)?),
        PlotKind::Predictions => {
            let path = a.config.clone().unwrap_or_else(|| sibling_config(&a.records));
            let cfg: ExperimentConfig = read_json(&path)?;
            ("predictions.svg", plot::predictions(&cfg, &records, a.n, a.iteration)?)
        }
    };
    write(&a.out, name, &svg)?;
    write_provenance(&a.out, "plot", a)?;
    println!("{}", a.out.join(name).display());
    Ok(())
}
