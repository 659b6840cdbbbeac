//! Single-degree-of-freedom mass-damper-spring system.
//!
//! The system `m x'' + c x' + k x = F(t)` is excited by a unit impulse at
//! `t = 0`, i.e. it starts from `x(0) = 0`, `x'(0) = 1/m`. For the underdamped
//! case the response has the closed form
//!
//! ```text
//! h(t) = exp(-zeta * omega_n * t) * sin(omega_d * t) / (m * omega_d)
//! ```
//!
//! Training sets are decimated samples of `h` on a uniform base grid with
//! additive Gaussian noise whose variance is set from a power signal-to-noise
//! ratio.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::float17;
use crate::scalar::Real;

/// Physical coefficients of the oscillator plus the derived modal quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams<T> {
    m: T,
    c: T,
    k: T,
    omega_n: T,
    zeta: T,
    omega_d: T,
}

impl<T: Real> OscillatorParams<T> {
    /// Builds parameters from mass, damping and stiffness.
    ///
    /// Requires `m > 0`, `c >= 0`, `k > 0` and an underdamped system
    /// (`zeta < 1`).
    pub fn new(m: T, c: T, k: T) -> Result<Self> {
        if !(m.is_finite() && c.is_finite() && k.is_finite()) {
            return Err(Error::invalid("oscillator coefficients must be finite"));
        }
        if !(m > T::zero()) || !(c >= T::zero()) || !(k > T::zero()) {
            return Err(Error::invalid(format!(
                "oscillator needs m > 0, c >= 0, k > 0 (got m={m:?}, c={c:?}, k={k:?})"
            )));
        }
        let omega_n = (k / m).sqrt();
        let zeta = c / (T::lit(2.0) * (k * m).sqrt());
        if !(zeta < T::one()) {
            return Err(Error::invalid(format!(
                "system is not underdamped (zeta = {zeta:?})"
            )));
        }
        let omega_d = omega_n * (T::one() - zeta * zeta).sqrt();
        Ok(Self { m, c, k, omega_n, zeta, omega_d })
    }

    /// The case-study system: `m = 1`, `c = 20`, `k = 1e6`.
    pub fn reference() -> Self {
        Self::new(T::lit(1.0), T::lit(20.0), T::lit(1.0e6)).expect("reference system is valid")
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// Natural frequency `sqrt(k/m)` in rad/s.
    pub fn omega_n(&self) -> T {
        self.omega_n
    }

    /// Damping ratio `c / (2 sqrt(k m))`.
    pub fn zeta(&self) -> T {
        self.zeta
    }

    /// Damped natural frequency `omega_n sqrt(1 - zeta^2)` in rad/s.
    pub fn omega_d(&self) -> T {
        self.omega_d
    }

    /// Decay envelope `exp(-zeta omega_n t) / (m omega_d)` bounding `|h(t)|`.
    pub fn envelope(&self, t: T) -> T {
        (-self.zeta * self.omega_n * t).exp() / (self.m * self.omega_d)
    }

    /// Unit-impulse response at time `t >= 0`.
    pub fn impulse_response(&self, t: T) -> Result<T> {
        impulse_response(self, t)
    }

    pub fn cast<U: Real>(&self) -> OscillatorParams<U> {
        OscillatorParams::new(
            U::lit(self.m.as_f64()),
            U::lit(self.c.as_f64()),
            U::lit(self.k.as_f64()),
        )
        .expect("valid parameters stay valid under precision change")
    }
}

/// Unit-impulse response `h(t)` of the oscillator.
pub fn impulse_response<T: Real>(params: &OscillatorParams<T>, t: T) -> Result<T> {
    if !t.is_finite() || t < T::zero() {
        return Err(Error::invalid(format!(
            "impulse response needs finite t >= 0 (got {t:?})"
        )));
    }
    Ok((-params.zeta * params.omega_n * t).exp() * (params.omega_d * t).sin()
        / (params.m * params.omega_d))
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    #[serde(with = "float17")]
    m: f64,
    #[serde(with = "float17")]
    c: f64,
    #[serde(with = "float17")]
    k: f64,
}

impl<T: Real> Serialize for OscillatorParams<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ParamsRepr { m: self.m.as_f64(), c: self.c.as_f64(), k: self.k.as_f64() }.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for OscillatorParams<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ParamsRepr::deserialize(d)?;
        OscillatorParams::new(T::lit(r.m), T::lit(r.c), T::lit(r.k))
            .map_err(serde::de::Error::custom)
    }
}

/// How a training set is sampled from the response.
///
/// `base_points` uniform times on `[t_start, t_end]` (inclusive) are
/// decimated by keeping every `decimation`-th point from index 0, giving
/// `floor((base_points - 1) / decimation) + 1` samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    #[serde(with = "float17")]
    pub t_start: f64,
    #[serde(with = "float17")]
    pub t_end: f64,
    pub base_points: usize,
    pub decimation: usize,
    /// Ratio of signal mean square to noise variance; `inf` gives noiseless data.
    #[serde(with = "float17")]
    pub snr: f64,
    pub seed: u64,
}

impl SamplingPlan {
    /// Base grid of 1001 points on `[0, 0.3]` with SNR 10.
    ///
    /// Decimations 16, 8 and 4 give 63, 126 and 251 samples.
    pub fn reference(decimation: usize, seed: u64) -> Self {
        Self { t_start: 0.0, t_end: 0.3, base_points: 1001, decimation, snr: 10.0, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_start.is_finite() && self.t_end.is_finite()) || !(self.t_end > self.t_start) {
            return Err(Error::InvalidPlan(format!(
                "need finite t_end > t_start (got [{}, {}])",
                self.t_start, self.t_end
            )));
        }
        if self.base_points < 2 {
            return Err(Error::InvalidPlan("base_points must be at least 2".into()));
        }
        if self.decimation < 1 {
            return Err(Error::InvalidPlan("decimation must be at least 1".into()));
        }
        if !(self.snr > 0.0) {
            return Err(Error::InvalidPlan(format!("snr must be positive (got {})", self.snr)));
        }
        Ok(())
    }

    /// Number of samples kept after decimation.
    pub fn sample_count(&self) -> usize {
        (self.base_points.saturating_sub(1)) / self.decimation.max(1) + 1
    }

    /// All `base_points` uniform times on `[t_start, t_end]`.
    pub fn base_grid<T: Real>(&self) -> Vec<T> {
        let last = (self.base_points - 1) as f64;
        let span = self.t_end - self.t_start;
        (0..self.base_points)
            .map(|i| T::lit(self.t_start + span * (i as f64) / last))
            .collect()
    }

    /// Times kept after decimation.
    pub fn sample_times<T: Real>(&self) -> Vec<T> {
        self.base_grid::<T>().into_iter().step_by(self.decimation).collect()
    }
}

/// Noisy samples of the impulse response.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet<T> {
    t: Vec<T>,
    y: Vec<T>,
    true_h: Vec<T>,
    sigma_n: T,
    seed: u64,
}

impl<T: Real> TrainingSet<T> {
    pub fn new(t: Vec<T>, y: Vec<T>, true_h: Vec<T>, sigma_n: T, seed: u64) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::EmptyData);
        }
        if y.len() != t.len() || true_h.len() != t.len() {
            return Err(Error::invalid(format!(
                "length mismatch: t={}, y={}, true_h={}",
                t.len(),
                y.len(),
                true_h.len()
            )));
        }
        if t.iter().chain(&y).chain(&true_h).any(|v| !v.is_finite()) {
            return Err(Error::invalid("training data must be finite"));
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("training times must be strictly increasing"));
        }
        if !(sigma_n >= T::zero()) || !sigma_n.is_finite() {
            return Err(Error::invalid(format!("sigma_n must be finite and >= 0 (got {sigma_n:?})")));
        }
        Ok(Self { t, y, true_h, sigma_n, seed })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn t(&self) -> &[T] {
        &self.t
    }

    pub fn y(&self) -> &[T] {
        &self.y
    }

    pub fn true_h(&self) -> &[T] {
        &self.true_h
    }

    /// Standard deviation of the noise that generated `y`.
    pub fn sigma_n(&self) -> T {
        self.sigma_n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Root mean square of the noisy targets.
    pub fn rms_y(&self) -> T {
        let ss = self.y.iter().fold(T::zero(), |acc, &v| acc + v * v);
        (ss / T::from_count(self.y.len())).sqrt()
    }

    /// Smallest gap between consecutive training times, `None` for a single point.
    pub fn min_gap(&self) -> Option<T> {
        self.t
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(None, |acc: Option<T>, g| Some(acc.map_or(g, |a| a.min(g))))
    }

    pub fn span(&self) -> T {
        self.t[self.t.len() - 1] - self.t[0]
    }

    /// Same inputs and noise level with different targets.
    pub fn with_targets(&self, y: Vec<T>) -> Result<Self> {
        Self::new(self.t.clone(), y, self.true_h.clone(), self.sigma_n, self.seed)
    }
}

/// Samples the impulse response according to `plan` and adds seeded noise.
///
/// Noise is drawn from a ChaCha20 stream seeded with `plan.seed` through
/// `SeedableRng::seed_from_u64`; standard normal variates come from the
/// ziggurat sampler of `rand_distr::StandardNormal`, in `f64`, and are scaled
/// by `sigma_n = sqrt(mean(true_h^2) / snr)` over the kept points.
pub fn generate_training_set<T: Real>(
    params: &OscillatorParams<T>,
    plan: &SamplingPlan,
) -> Result<TrainingSet<T>> {
    plan.validate()?;
    let n = plan.sample_count();
    if n < 2 {
        return Err(Error::InvalidPlan(format!(
            "decimation {} of {} base points leaves {n} sample(s); need at least 2",
            plan.decimation, plan.base_points
        )));
    }
    let t = plan.sample_times::<T>();
    debug_assert_eq!(t.len(), n);
    let true_h = t
        .iter()
        .map(|&ti| impulse_response(params, ti))
        .collect::<Result<Vec<_>>>()?;

    let mean_square = true_h.iter().fold(T::zero(), |acc, &h| acc + h * h) / T::from_count(n);
    let sigma_n = (mean_square / T::lit(plan.snr)).sqrt();

    let mut rng = ChaCha20Rng::seed_from_u64(plan.seed);
    let y = true_h
        .iter()
        .map(|&h| {
            let z: f64 = StandardNormal.sample(&mut rng);
            h + sigma_n * T::lit(z)
        })
        .collect();
    TrainingSet::new(t, y, true_h, sigma_n, plan.seed)
}
