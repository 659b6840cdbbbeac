use srmks::{
    compare_structures, default_sdof_grid, default_se_grid, fit, generate_training_set, srm_select,
    srm_select_with, BoundConfig, KernelFamily, OscillatorParams, SamplingPlan, SdofGridSettings,
    SeGridSettings, SpectralCache, TrainingSet,
};

fn reference_data(decimation: usize, seed: u64) -> TrainingSet {
    generate_training_set(&OscillatorParams::reference(), &SamplingPlan::reference(decimation, seed)).unwrap()
}

#[test]
fn se_capacity_grows_along_grid_order() {
    let data = reference_data(16, 3);
    let settings = SeGridSettings::default();
    let grid = default_se_grid(&data, &settings).unwrap();
    let result = srm_select(&grid, &data).unwrap();
    for j in 0..settings.n_sigma {
        let hs: Vec<f64> = (0..settings.n_l).map(|i| result.trace[i * settings.n_sigma + j].report.h).collect();
        for w in hs.windows(2) {
            assert!(w[1] >= w[0] - 1e-9, "sigma_f column {j}: {hs:?}");
        }
    }
}

#[test]
fn sdof_smoother_tracks_response_at_low_noise() {
    let p = OscillatorParams::reference();
    let plan = SamplingPlan { snr: 1e4, ..SamplingPlan::reference(4, 11) };
    let data = generate_training_set(&p, &plan).unwrap();
    assert_eq!(data.len(), 251);
    let grid = default_sdof_grid(&data, &p, &SdofGridSettings::default()).unwrap();
    let best = srm_select(&grid, &data).unwrap();
    let model = fit(&best.best_spec, &data, data.sigma_n()).unwrap();
    let truth = p.impulse_response(0.15).unwrap();
    let err = (model.predict(0.15) - truth).abs();
    assert!(err <= 3.0 * data.sigma_n(), "error {err:e}, sigma_n {:e}", data.sigma_n());
}

#[test]
fn se_winner_bound_dominates_its_empirical_risk() {
    let data = reference_data(16, 20_230_101);
    let grid = default_se_grid(&data, &SeGridSettings::default()).unwrap();
    let r = srm_select(&grid, &data).unwrap().best_report;
    assert!(r.bound >= r.empirical_risk, "{r:?}");
}

#[test]
fn sdof_structure_wins_at_largest_sample() {
    let p = OscillatorParams::reference();
    let data = reference_data(4, 20_230_101);
    let se = srm_select(&default_se_grid(&data, &SeGridSettings::default()).unwrap(), &data).unwrap();
    let sdof = srm_select(&default_sdof_grid(&data, &p, &SdofGridSettings::default()).unwrap(), &data).unwrap();
    let results = [se, sdof];
    assert_eq!(compare_structures(&results).unwrap().family, KernelFamily::Sdof);
}

#[test]
fn cached_and_direct_routes_agree() {
    let data = reference_data(16, 5);
    let grid = default_se_grid(&data, &SeGridSettings { n_sigma: 5, n_l: 8, ..Default::default() }).unwrap();
    let cache = SpectralCache::new();
    let cfg = BoundConfig::default();
    let direct = srm_select_with(&grid, &data, &cfg, None).unwrap();
    let cached = srm_select_with(&grid, &data, &cfg, Some(&cache)).unwrap();
    assert_eq!(cache.len(), 8);
    assert_eq!(direct.best_index, cached.best_index);
    for (a, b) in direct.trace.iter().zip(&cached.trace) {
        assert_eq!(a.report.clipped, b.report.clipped);
        approx::assert_relative_eq!(a.report.h, b.report.h, max_relative = 1e-9);
        if !a.report.clipped {
            approx::assert_relative_eq!(a.report.bound, b.report.bound, max_relative = 1e-6);
        }
    }
}
