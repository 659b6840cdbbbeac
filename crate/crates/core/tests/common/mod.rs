//! Independent oracles and property checks shared by the integration tests
//! and the acceptance runner. Every check returns `Err` with a readable
//! message instead of panicking so a runner can report it.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use srmks::risk::CLIP_EPSILON;
use srmks::{
    build_se_grid, default_sdof_grid, default_se_grid, fit, generate_training_set, gram, kernel_eval,
    srm_select, srm_select_with, vc_bound_general, vc_bound_reduced, BoundConfig, KernelSpec, OscillatorParams,
    SamplingPlan, SdofGridSettings, SeGridSettings, TrainingSet,
};

pub type Check = Result<(), String>;
pub type Property = (&'static str, fn() -> Check);

// ---------------------------------------------------------------- oracles

/// Fourth-order Runge-Kutta solution of `m x'' + c x' + k x = 0`,
/// `x(0) = 0`, `x'(0) = 1/m`, reported at `times` (any order, all >= 0).
/// Steps never exceed `dt`; each target time is hit exactly.
pub fn rk4_impulse(m: f64, c: f64, k: f64, times: &[f64], dt: f64) -> Vec<f64> {
    let accel = |x: f64, v: f64| -(c * v + k * x) / m;
    let mut order: Vec<usize> = (0..times.len()).collect();
    order.sort_by(|&a, &b| times[a].total_cmp(&times[b]));

    let mut out = vec![0.0; times.len()];
    let (mut x, mut v, mut now) = (0.0f64, 1.0 / m, 0.0f64);
    for i in order {
        let span = times[i] - now;
        let steps = (span / dt).ceil().max(0.0) as usize;
        if steps > 0 {
            let h = span / steps as f64;
            for _ in 0..steps {
                let (k1x, k1v) = (v, accel(x, v));
                let (k2x, k2v) = (v + 0.5 * h * k1v, accel(x + 0.5 * h * k1x, v + 0.5 * h * k1v));
                let (k3x, k3v) = (v + 0.5 * h * k2v, accel(x + 0.5 * h * k2x, v + 0.5 * h * k2v));
                let (k4x, k4v) = (v + h * k3v, accel(x + h * k3x, v + h * k3v));
                x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
                v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            }
            now = times[i];
        }
        out[i] = x;
    }
    out
}

/// Kernel value straight from the closed forms, using only the raw
/// hyperparameters.
pub fn kernel_by_hand(spec: &KernelSpec, a: f64, b: f64) -> f64 {
    let sf2 = spec.sigma_f() * spec.sigma_f();
    if let Some(l) = spec.length_scale() {
        return sf2 * (-(a - b) * (a - b) / (2.0 * l * l)).exp();
    }
    let p = spec.oscillator().expect("sdof kernel");
    let (m, c, k) = (p.m(), p.c(), p.k());
    let wn = (k / m).sqrt();
    let z = c / (2.0 * (k * m).sqrt());
    let wd = wn * (1.0 - z * z).sqrt();
    let tau = (a - b).abs();
    sf2 / (4.0 * m * m * z * wn.powi(3))
        * (-z * wn * tau).exp()
        * ((wd * tau).cos() + z * wn / wd * (wd * tau).sin())
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|j| a[row][j] * x[j]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

fn regularised(spec: &KernelSpec, t: &[f64], sigma_n: f64) -> Vec<Vec<f64>> {
    (0..t.len())
        .map(|i| {
            (0..t.len())
                .map(|j| kernel_by_hand(spec, t[i], t[j]) + if i == j { sigma_n * sigma_n } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Smoother predictions `k_*^T (K + sigma_n^2 I)^{-1} y` by dense solve.
pub fn dense_predict(spec: &KernelSpec, t: &[f64], y: &[f64], sigma_n: f64, t_star: &[f64]) -> Vec<f64> {
    let alpha = gauss_solve(regularised(spec, t, sigma_n), y.to_vec());
    t_star
        .iter()
        .map(|&s| t.iter().zip(&alpha).map(|(&ti, &a)| kernel_by_hand(spec, s, ti) * a).sum())
        .collect()
}

/// `trace(K (K + sigma_n^2 I)^{-1})`, one dense solve per column.
pub fn trace_edf(spec: &KernelSpec, t: &[f64], sigma_n: f64) -> f64 {
    let n = t.len();
    let a = regularised(spec, t, sigma_n);
    (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = gauss_solve(a.clone(), e);
            // (K A^{-1})_{jj}; A^{-1} is symmetric so its column j is row j.
            (0..n).map(|i| kernel_by_hand(spec, t[j], t[i]) * col[i]).sum::<f64>()
        })
        .sum()
}

// ------------------------------------------------------------- strategies

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn oscillator_strategy() -> impl Strategy<Value = OscillatorParams> {
    (0.5f64..2.0, 1e-3f64..0.5, 10.0f64..2000.0).prop_map(|(m, zeta, wn)| {
        let k = m * wn * wn;
        OscillatorParams::new(m, 2.0 * zeta * (k * m).sqrt(), k).unwrap()
    })
}

pub fn se_strategy() -> impl Strategy<Value = KernelSpec> {
    (0.1f64..10.0, 1e-3f64..1.0).prop_map(|(s, l)| KernelSpec::se(s, l).unwrap())
}

pub fn kernel_strategy() -> BoxedStrategy<KernelSpec> {
    prop_oneof![
        se_strategy(),
        (0.1f64..10.0, oscillator_strategy()).prop_map(|(s, p)| KernelSpec::sdof(s, p).unwrap()),
    ]
    .boxed()
}

/// Strictly increasing times in `[0, 0.3)`.
pub fn times_strategy(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..0.3, 1..=max_len).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    })
}

/// A kernel, inputs, targets on the kernel's scale and a noise level between
/// 1% and 100% of the kernel's marginal standard deviation.
pub fn instance_strategy(max_len: usize) -> impl Strategy<Value = (KernelSpec, Vec<f64>, Vec<f64>, f64)> {
    (kernel_strategy(), times_strategy(max_len), 0.01f64..1.0).prop_flat_map(|(spec, t, ratio)| {
        let scale = spec.variance().sqrt();
        let n = t.len();
        (
            Just(spec),
            Just(t),
            prop::collection::vec(-1.0f64..1.0, n).prop_map(move |y| y.into_iter().map(|v| v * scale).collect()),
            Just(ratio * scale),
        )
    })
}

fn data(t: &[f64], y: &[f64], sigma_n: f64) -> TrainingSet {
    TrainingSet::new(t.to_vec(), y.to_vec(), vec![0.0; t.len()], sigma_n, 0).unwrap()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn rel_gap(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    max_abs(&diff) / max_abs(b).max(f64::MIN_POSITIVE)
}

// ----------------------------------------------------------------- checks

/// Closed-form response against RK4: 1e-8 relative at t = 1 ms, and on 1000
/// random times within 1e-6 of the local envelope `exp(-zeta wn t) / (m wd)`.
pub fn check_impulse_vs_ode() -> Check {
    let p = OscillatorParams::reference();
    let dt = 1e-6;
    let single = rk4_impulse(p.m(), p.c(), p.k(), &[0.001], dt)[0];
    let closed = p.impulse_response(0.001).map_err(|e| e.to_string())?;
    if ((single - closed) / closed).abs() > 1e-8 {
        return Err(format!("t = 0.001: ode {single:e}, closed form {closed:e}"));
    }

    run(1, prop::collection::vec(0.0f64..0.3, 1000), |times| {
        let ode = rk4_impulse(p.m(), p.c(), p.k(), &times, dt);
        for (&t, &x) in times.iter().zip(&ode) {
            let h = p.impulse_response(t).unwrap();
            let env = p.envelope(t);
            prop_assert!((x - h).abs() <= 1e-6 * env, "t = {t}: ode {x:e}, closed form {h:e}, envelope {env:e}");
        }
        Ok(())
    })
}

/// Library fit and predictions against the dense-solve oracle: one fixed
/// n = 5 case to 1e-10 and 50 random cases (n <= 8) to 1e-8, both relative to
/// the largest oracle value.
pub fn check_fit_vs_dense_solve() -> Check {
    let spec = KernelSpec::se(1.0, 0.05).unwrap();
    let t = [0.0, 0.05, 0.1, 0.15, 0.2];
    let y = [0.3, -0.1, 0.8, 0.2, -0.5];
    let stars = [0.0, 0.025, 0.12, 0.2, 0.31];
    let model = fit(&spec, &data(&t, &y, 0.1), 0.1).map_err(|e| e.to_string())?;
    let gap = rel_gap(&model.predict_many(&stars), &dense_predict(&spec, &t, &y, 0.1, &stars));
    if gap > 1e-10 {
        return Err(format!("fixed n = 5 case: relative gap {gap:e}"));
    }

    run(50, (instance_strategy(8), prop::collection::vec(0.0f64..0.35, 1..6)), |((spec, t, y, s), stars)| {
        let model = fit(&spec, &data(&t, &y, s), s).unwrap();
        let mut points = t.clone();
        points.extend(&stars);
        let gap = rel_gap(&model.predict_many(&points), &dense_predict(&spec, &t, &y, s, &points));
        prop_assert!(gap <= 1e-8, "relative gap {gap:e}");
        Ok(())
    })
}

/// Spectral edf against `trace(K (K + sigma_n^2 I)^{-1})`: a fixed n = 6
/// case and 50 random cases, 1e-8 absolute.
pub fn check_edf_vs_trace() -> Check {
    let spec = KernelSpec::se(1.0, 0.1).unwrap();
    let t = [0.0, 0.05, 0.1, 0.15, 0.2, 0.25];
    let model = fit(&spec, &data(&t, &[0.0; 6], 0.3), 0.3).map_err(|e| e.to_string())?;
    let want = trace_edf(&spec, &t, 0.3);
    if (model.effective_dof() - want).abs() > 1e-8 {
        return Err(format!("fixed n = 6 case: edf {} vs trace {want}", model.effective_dof()));
    }
    run(50, instance_strategy(8), |(spec, t, y, s)| {
        let edf = fit(&spec, &data(&t, &y, s), s).unwrap().effective_dof();
        let want = trace_edf(&spec, &t, s);
        prop_assert!((edf - want).abs() <= 1e-8, "edf {edf} vs trace {want}");
        Ok(())
    })
}

fn bound_case() -> impl Strategy<Value = (f64, f64, usize)> {
    (0.0f64..10.0, 1usize..5000, 0.0f64..1.0).prop_map(|(mse, n, frac)| (mse, frac * n as f64, n))
}

/// General bound with unit constants and `delta = 4 / sqrt(n)` reproduces
/// the reduced bound to 1e-10 relative.
pub fn check_general_matches_reduced() -> Check {
    let cfg = BoundConfig::default();
    run(100, bound_case(), |(mse, h, n)| {
        let r = vc_bound_reduced(mse, h, n).unwrap();
        let g = vc_bound_general(mse, h, n, &cfg).unwrap();
        prop_assert_eq!(r.clipped, g.clipped);
        if !r.clipped {
            let scale = r.bound.abs().max(f64::MIN_POSITIVE);
            prop_assert!((r.bound - g.bound).abs() <= 1e-10 * scale, "{} vs {}", r.bound, g.bound);
        }
        Ok(())
    })
}

/// Penalty argument written out independently.
pub fn penalty_by_hand(h: f64, n: usize) -> f64 {
    let nf = n as f64;
    let p = h / nf;
    let plogp = if p > 0.0 { p * p.ln() } else { 0.0 };
    p - plogp + nf.ln() / (2.0 * nf)
}

/// The reduced bound is infinite exactly when `1 - sqrt(g) <= 1e-12`, on
/// random cases and on cases straddling the boundary.
pub fn check_clipping_rule() -> Check {
    fn agrees(mse: f64, h: f64, n: usize) -> Result<(), String> {
        let r = vc_bound_reduced(mse, h, n).map_err(|e| e.to_string())?;
        let denom = 1.0 - penalty_by_hand(h, n).sqrt();
        if (denom - CLIP_EPSILON).abs() < 1e-15 {
            return Ok(()); // within rounding of the threshold itself
        }
        let expect = denom <= CLIP_EPSILON;
        if r.clipped != expect || r.bound.is_infinite() != expect {
            return Err(format!("mse {mse}, h {h}, n {n}: denominator {denom:e}, report {r:?}"));
        }
        if !expect && (r.bound - mse / denom).abs() > 1e-9 * (mse / denom).max(f64::MIN_POSITIVE) {
            return Err(format!("mse {mse}, h {h}, n {n}: bound {} vs {}", r.bound, mse / denom));
        }
        Ok(())
    }

    run(100, bound_case(), |(mse, h, n)| agrees(mse, h, n).map_err(TestCaseError::fail))?;

    for n in [2usize, 17, 63, 126, 251, 1000] {
        // g is increasing in h on [0, n]; bisect for g = 1.
        let (mut lo, mut hi) = (0.0, n as f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if penalty_by_hand(mid, n) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        for h in [lo * (1.0 - 1e-6), lo, hi, (hi * (1.0 + 1e-6)).min(n as f64), n as f64] {
            agrees(1.0, h, n)?;
        }
    }
    Ok(())
}

/// `k(t, t') == k(t', t)` bit for bit.
pub fn check_kernel_symmetry() -> Check {
    run(200, (kernel_strategy(), -1.0f64..1.0, -1.0f64..1.0), |(spec, a, b)| {
        prop_assert_eq!(kernel_eval(&spec, a, b).to_bits(), kernel_eval(&spec, b, a).to_bits());
        Ok(())
    })
}

/// `k(t + s, t' + s) == k(t, t')` up to the rounding of the shift.
pub fn check_kernel_stationarity() -> Check {
    run(200, (kernel_strategy(), 0.0f64..0.3, 0.0f64..0.3, -1.0f64..1.0), |(spec, a, b, s)| {
        let k0 = spec.variance();
        let gap = (kernel_eval(&spec, a + s, b + s) - kernel_eval(&spec, a, b)).abs();
        prop_assert!(gap <= 1e-9 * k0, "shift {s}: gap {gap:e}, k(0) {k0:e}");
        Ok(())
    })
}

/// Gram matrices on up to 50 points: smallest eigenvalue >= -1e-10 * largest.
pub fn check_gram_psd() -> Check {
    run(100, (kernel_strategy(), times_strategy(50)), |(spec, t)| {
        let eig = gram(&spec, &t).unwrap().values().symmetric_eigenvalues();
        let max = eig.max();
        let min = eig.min();
        prop_assert!(min >= -1e-10 * max, "eigenvalues in [{min:e}, {max:e}]");
        Ok(())
    })
}

/// Scaling sigma_f by `a` scales the kernel by `a^2`.
pub fn check_sigma_f_scaling() -> Check {
    run(200, (kernel_strategy(), 0.1f64..10.0, 0.0f64..0.3, 0.0f64..0.3), |(spec, a, t, u)| {
        let scaled = spec.with_sigma_f(spec.sigma_f() * a).unwrap();
        let want = a * a * kernel_eval(&spec, t, u);
        let got = kernel_eval(&scaled, t, u);
        prop_assert!((got - want).abs() <= 1e-12 * a * a * spec.variance(), "{got:e} vs {want:e}");
        Ok(())
    })
}

/// edf never increases along a 10-point ascending noise grid.
pub fn check_edf_monotone_in_noise() -> Check {
    run(100, (kernel_strategy(), times_strategy(30)), |(spec, t)| {
        let scale = spec.variance().sqrt();
        let y = vec![0.0; t.len()];
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let s = scale * 1e-3 * 10f64.powf(i as f64 * 4.0 / 9.0);
            let edf = fit(&spec, &data(&t, &y, s), s).unwrap().effective_dof();
            prop_assert!(edf <= prev + 1e-9, "sigma_n {s:e}: edf {edf} after {prev}");
            prev = edf;
        }
        Ok(())
    })
}

/// SE edf never increases along a 10-point ascending length-scale grid.
pub fn check_edf_monotone_in_length_scale() -> Check {
    run(100, (0.1f64..10.0, times_strategy(30), 0.01f64..1.0), |(sf, t, ratio)| {
        let s = ratio * sf;
        let y = vec![0.0; t.len()];
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let l = 1e-3 * 10f64.powf(i as f64 * 3.0 / 9.0);
            let spec = KernelSpec::se(sf, l).unwrap();
            let edf = fit(&spec, &data(&t, &y, s), s).unwrap().effective_dof();
            prop_assert!(edf <= prev + 1e-9, "l {l:e}: edf {edf} after {prev}");
            prev = edf;
        }
        Ok(())
    })
}

/// Predictions are linear in the targets.
pub fn check_prediction_linearity() -> Check {
    let strategy = (instance_strategy(12), -3.0f64..3.0, prop::collection::vec(0.0f64..0.35, 1..6))
        .prop_flat_map(|(inst, a, stars)| {
            let n = inst.1.len();
            (Just(inst), Just(a), Just(stars), prop::collection::vec(-1.0f64..1.0, n))
        });
    run(100, strategy, |((spec, t, y1, s), a, stars, y2)| {
        let y2: Vec<f64> = y2.iter().map(|v| v * spec.variance().sqrt()).collect();
        let y3: Vec<f64> = y1.iter().zip(&y2).map(|(p, q)| p + a * q).collect();
        let p1 = fit(&spec, &data(&t, &y1, s), s).unwrap().predict_many(&stars);
        let p2 = fit(&spec, &data(&t, &y2, s), s).unwrap().predict_many(&stars);
        let p3 = fit(&spec, &data(&t, &y3, s), s).unwrap().predict_many(&stars);
        for i in 0..stars.len() {
            let want = p1[i] + a * p2[i];
            let scale = p1[i].abs() + a.abs() * p2[i].abs() + f64::MIN_POSITIVE;
            prop_assert!((p3[i] - want).abs() <= 1e-10 * scale, "{} vs {want}", p3[i]);
        }
        Ok(())
    })
}

/// For fixed mse > 0 the bound is nondecreasing in h over [0, n] and turns
/// infinite exactly once.
pub fn check_bound_monotone_in_h() -> Check {
    run(100, (0.01f64..10.0, 2usize..2000), |(mse, n)| {
        let mut prev = 0.0;
        let mut transitions = 0;
        let mut was_inf = false;
        for i in 0..=200 {
            let h = n as f64 * i as f64 / 200.0;
            let b = vc_bound_reduced(mse, h, n).unwrap().bound;
            prop_assert!(b >= prev, "h {h}: bound {b} after {prev}");
            if b.is_infinite() && !was_inf {
                transitions += 1;
            }
            prop_assert!(!(was_inf && b.is_finite()), "finite again at h {h}");
            was_inf = b.is_infinite();
            prev = b;
        }
        prop_assert_eq!(transitions, 1);
        Ok(())
    })
}

/// Finite bounds never undercut the empirical risk.
pub fn check_bound_dominates_mse() -> Check {
    let cfg = BoundConfig { a1: 2.0, a2: 0.5, c: 1.5, delta: 0.05, delta_rule: srmks::DeltaRule::Fixed };
    run(200, bound_case(), |(mse, h, n)| {
        for r in [vc_bound_reduced(mse, h, n).unwrap(), vc_bound_general(mse, h, n, &cfg).unwrap()] {
            prop_assert!(r.bound >= mse, "bound {} below mse {mse}", r.bound);
        }
        Ok(())
    })
}

fn small_data_strategy() -> impl Strategy<Value = TrainingSet> {
    (prop::sample::select(vec![16usize, 32, 64]), 2.0f64..100.0, any::<u64>()).prop_map(|(d, snr, seed)| {
        let plan = SamplingPlan { snr, ..SamplingPlan::reference(d, seed) };
        generate_training_set(&OscillatorParams::reference(), &plan).unwrap()
    })
}

/// Every candidate is evaluated, in grid order, and the winner's bound is
/// no larger than any other candidate's.
pub fn check_srm_exhaustive_and_dominant() -> Check {
    let se = SeGridSettings { n_sigma: 4, n_l: 6, ..SeGridSettings::default() };
    let sdof = SdofGridSettings { n_sigma: 8, ..SdofGridSettings::default() };
    run(30, small_data_strategy(), |set| {
        let grids = [
            default_se_grid(&set, &se).unwrap(),
            default_sdof_grid(&set, &OscillatorParams::reference(), &sdof).unwrap(),
        ];
        for grid in &grids {
            let r = srm_select_with(grid, &set, &BoundConfig::default(), None).unwrap();
            prop_assert_eq!(r.trace.len(), grid.len());
            for (entry, spec) in r.trace.iter().zip(grid.candidates()) {
                prop_assert_eq!(&entry.spec, spec);
                let b = &entry.report;
                let w = &r.best_report;
                prop_assert!(w.bound <= b.bound, "winner {} vs candidate {}", w.bound, b.bound);
                if w.bound == b.bound {
                    prop_assert!(w.h <= b.h);
                }
                if b.is_finite() {
                    prop_assert!(b.bound >= b.empirical_risk);
                }
            }
            prop_assert_eq!(r.degenerate, r.trace.iter().all(|e| e.report.clipped));
            prop_assert_eq!(&r.trace[r.best_index].spec, &r.best_spec);
        }
        Ok(())
    })
}

/// Data generation and selection are pure functions of their inputs.
pub fn check_determinism() -> Check {
    let grid = build_se_grid((1e-4, 1e-2), (1e-3, 0.3), 3, 4).unwrap();
    run(20, (prop::sample::select(vec![16usize, 32]), any::<u64>()), |(d, seed)| {
        let plan = SamplingPlan::reference(d, seed);
        let p = OscillatorParams::reference();
        let a = generate_training_set(&p, &plan).unwrap();
        let b = generate_training_set(&p, &plan).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(srm_select(&grid, &a).unwrap(), srm_select(&grid, &b).unwrap());
        Ok(())
    })
}

/// The invariant suite, by name.
pub const PROPERTY_SUITE: &[Property] = &[
    ("kernel symmetry", check_kernel_symmetry),
    ("kernel stationarity", check_kernel_stationarity),
    ("gram positive semi-definite", check_gram_psd),
    ("sigma_f scaling", check_sigma_f_scaling),
    ("edf monotone in noise level", check_edf_monotone_in_noise),
    ("edf monotone in SE length scale", check_edf_monotone_in_length_scale),
    ("prediction linearity", check_prediction_linearity),
    ("bound monotone in capacity", check_bound_monotone_in_h),
    ("bound dominates empirical risk", check_bound_dominates_mse),
    ("SRM exhaustive with dominant winner", check_srm_exhaustive_and_dominant),
    ("determinism", check_determinism),
];
