//! Kernel smoother `f(t*) = k(t*)^T (K + sigma_n^2 I)^{-1} y` and its
//! effective degrees of freedom `sum_i lambda_i / (lambda_i + sigma_n^2)`.
//!
//! Two routes produce a [`FittedSmoother`]:
//!
//! * [`fit`] builds the Gram matrix, solves the regularised system with a
//!   Cholesky factorisation and computes the spectrum separately;
//! * [`UnitSpectrum::fit`] reuses one eigendecomposition of the unit-scale
//!   Gram matrix `K_1 = U diag(lambda) U^T`, valid for every `sigma_f` since
//!   `K = sigma_f^2 K_1`. Structure searches evaluate many `sigma_f` values on
//!   the same inputs, so this removes all cubic work from the inner loop.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::kernels::{cross_vector, gram, KernelSpec};
use crate::oscillator::TrainingSet;
use crate::scalar::Real;

/// Jitter retries after the first failed factorisation.
pub const MAX_JITTER_RETRIES: usize = 3;
/// First jitter, relative to the mean diagonal of `K`.
pub const INITIAL_RELATIVE_JITTER: f64 = 1e-12;

/// A fitted smoother. Immutable once built.
#[derive(Debug, Clone)]
pub struct FittedSmoother<T: Real> {
    kernel: KernelSpec<T>,
    t_train: Vec<T>,
    sigma_n: T,
    weights: DVector<T>,
    eigenvalues: Vec<T>,
    edf: T,
    fitted: DVector<T>,
    jitter: T,
}

impl<T: Real> FittedSmoother<T> {
    pub fn kernel(&self) -> &KernelSpec<T> {
        &self.kernel
    }

    pub fn t_train(&self) -> &[T] {
        &self.t_train
    }

    pub fn sigma_n(&self) -> T {
        self.sigma_n
    }

    /// `alpha = (K + sigma_n^2 I)^{-1} y`.
    pub fn weights(&self) -> &DVector<T> {
        &self.weights
    }

    /// Spectrum of `K`, descending, negatives clamped to zero.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn effective_dof(&self) -> T {
        self.edf
    }

    /// Predictions at the training inputs, `K alpha`.
    pub fn fitted_values(&self) -> &DVector<T> {
        &self.fitted
    }

    /// Diagonal jitter that was needed to factorise, zero in the usual case.
    pub fn jitter(&self) -> T {
        self.jitter
    }

    pub fn len(&self) -> usize {
        self.t_train.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_train.is_empty()
    }

    pub fn predict(&self, t_star: T) -> T {
        cross_vector(&self.kernel, &self.t_train, t_star).dot(&self.weights)
    }

    pub fn predict_many(&self, t_star: &[T]) -> Vec<T> {
        t_star.iter().map(|&t| self.predict(t)).collect()
    }
}

pub fn predict<T: Real>(model: &FittedSmoother<T>, t_star: T) -> T {
    model.predict(t_star)
}

pub fn effective_dof<T: Real>(model: &FittedSmoother<T>) -> T {
    model.effective_dof()
}

/// `sum_i lambda_i / (lambda_i + sigma_n^2)`; a zero eigenvalue contributes
/// zero even when `sigma_n = 0`.
pub fn edf_from_spectrum<T: Real>(eigenvalues: &[T], sigma_n: T) -> T {
    let s2 = sigma_n * sigma_n;
    eigenvalues.iter().fold(T::zero(), |acc, &l| {
        if l > T::zero() {
            acc + l / (l + s2)
        } else {
            acc
        }
    })
}

fn check_sigma_n<T: Real>(sigma_n: T) -> Result<()> {
    if !(sigma_n >= T::zero()) || !sigma_n.is_finite() {
        return Err(Error::invalid(format!("sigma_n must be finite and >= 0 (got {sigma_n:?})")));
    }
    Ok(())
}

fn clamped_descending<T: Real>(values: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = values.map(|l| l.max(T::zero())).collect();
    out.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    out
}

/// Fits the smoother by direct factorisation of `K + sigma_n^2 I`.
///
/// If the Cholesky factorisation fails, a diagonal jitter starting at
/// `1e-12 * trace(K) / n` is added and grown tenfold, for at most three
/// retries.
pub fn fit<T: Real>(
    spec: &KernelSpec<T>,
    data: &TrainingSet<T>,
    sigma_n: T,
) -> Result<FittedSmoother<T>> {
    check_sigma_n(sigma_n)?;
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let n = data.len();
    let k = gram(spec, data.t())?.into_values();
    let y = DVector::from_column_slice(data.y());

    let noise = DMatrix::from_diagonal_element(n, n, sigma_n * sigma_n);
    let base = &k + noise;
    let start = T::lit(INITIAL_RELATIVE_JITTER) * k.trace() / T::from_count(n);
    let mut jitter = T::zero();
    let mut chol = Cholesky::new(base.clone());
    let mut retries = 0;
    while chol.is_none() && retries < MAX_JITTER_RETRIES {
        jitter = if retries == 0 { start } else { jitter * T::lit(10.0) };
        retries += 1;
        chol = Cholesky::new(&base + DMatrix::from_diagonal_element(n, n, jitter));
    }
    let chol = chol.ok_or(Error::SingularSystem { jitter: jitter.as_f64() })?;
    let weights = chol.solve(&y);
    let fitted = &k * &weights;

    let eigenvalues = clamped_descending(k.symmetric_eigenvalues().iter().copied());
    let edf = edf_from_spectrum(&eigenvalues, sigma_n);
    Ok(FittedSmoother {
        kernel: *spec,
        t_train: data.t().to_vec(),
        sigma_n,
        weights,
        eigenvalues,
        edf,
        fitted,
        jitter,
    })
}

/// Eigendecomposition of the Gram matrix of a kernel with `sigma_f = 1`.
#[derive(Debug, Clone)]
pub struct UnitSpectrum<T: Real> {
    kernel: KernelSpec<T>,
    inputs: Vec<T>,
    eigenvalues: DVector<T>,
    eigenvectors: DMatrix<T>,
}

impl<T: Real> UnitSpectrum<T> {
    /// Decomposes the Gram matrix of `spec` rescaled to unit `sigma_f`.
    pub fn new(spec: &KernelSpec<T>, inputs: &[T]) -> Result<Self> {
        let unit = spec.with_sigma_f(T::one())?;
        let k = gram(&unit, inputs)?.into_values();
        let eig = SymmetricEigen::new(k);
        Ok(Self {
            kernel: unit,
            inputs: inputs.to_vec(),
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn kernel(&self) -> &KernelSpec<T> {
        &self.kernel
    }

    pub fn inputs(&self) -> &[T] {
        &self.inputs
    }

    /// Fits the smoother for kernel scale `sigma_f` through the cached
    /// decomposition.
    ///
    /// With `sigma_n = 0` the spectral inverse is ill-posed for a
    /// rank-deficient `K`, so this falls back to [`fit`].
    pub fn fit(&self, sigma_f: T, data: &TrainingSet<T>, sigma_n: T) -> Result<FittedSmoother<T>> {
        check_sigma_n(sigma_n)?;
        if data.t() != self.inputs.as_slice() {
            return Err(Error::invalid("training inputs differ from the decomposed inputs"));
        }
        let spec = self.kernel.with_sigma_f(sigma_f)?;
        if sigma_n == T::zero() {
            return fit(&spec, data, sigma_n);
        }
        let s2 = sigma_n * sigma_n;
        let scale = sigma_f * sigma_f;
        let u = &self.eigenvectors;
        let coeffs = u.tr_mul(&DVector::from_column_slice(data.y()));

        let n = self.inputs.len();
        let mut inv = DVector::zeros(n);
        let mut smooth = DVector::zeros(n);
        for i in 0..n {
            let lambda = scale * self.eigenvalues[i];
            let denom = lambda + s2;
            inv[i] = coeffs[i] / denom;
            smooth[i] = lambda * coeffs[i] / denom;
        }
        let weights = u * inv;
        let fitted = u * smooth;

        let eigenvalues = clamped_descending(self.eigenvalues.iter().map(|&l| scale * l));
        let edf = edf_from_spectrum(&eigenvalues, sigma_n);
        Ok(FittedSmoother {
            kernel: spec,
            t_train: self.inputs.clone(),
            sigma_n,
            weights,
            eigenvalues,
            edf,
            fitted,
            jitter: T::zero(),
        })
    }
}

/// Thread-safe memo of [`UnitSpectrum`]s keyed by unit kernel and inputs.
#[derive(Debug, Default)]
pub struct SpectralCache<T: Real> {
    entries: Mutex<HashMap<Vec<u64>, Arc<UnitSpectrum<T>>>>,
}

impl<T: Real> SpectralCache<T> {
    pub fn new() -> Self {
        Self { entries: Mutex::new(HashMap::new()) }
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("spectral cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Returns the decomposition for `spec` (any `sigma_f`) on `inputs`,
    /// computing it on first use.
    pub fn get(&self, spec: &KernelSpec<T>, inputs: &[T]) -> Result<Arc<UnitSpectrum<T>>> {
        let key = cache_key(spec, inputs);
        if let Some(hit) = self.entries.lock().expect("spectral cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        // Computed outside the lock; a concurrent duplicate yields identical bits.
        let spectrum = Arc::new(UnitSpectrum::new(spec, inputs)?);
        let mut entries = self.entries.lock().expect("spectral cache poisoned");
        Ok(Arc::clone(entries.entry(key).or_insert(spectrum)))
    }
}

fn cache_key<T: Real>(spec: &KernelSpec<T>, inputs: &[T]) -> Vec<u64> {
    let mut key = Vec::with_capacity(inputs.len() + 4);
    match spec {
        KernelSpec::Se { length_scale, .. } => {
            key.push(0);
            key.push(length_scale.as_f64().to_bits());
        }
        KernelSpec::Sdof { params, .. } => {
            key.push(1);
            key.extend([params.m(), params.c(), params.k()].iter().map(|v| v.as_f64().to_bits()));
        }
    }
    key.extend(inputs.iter().map(|v| v.as_f64().to_bits()));
    key
}
