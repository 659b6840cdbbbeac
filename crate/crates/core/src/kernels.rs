//! Covariance functions on the time axis and the matrices built from them.
//!
//! Two stationary families are provided:
//!
//! * squared exponential, `sigma_f^2 exp(-(t - t')^2 / (2 l^2))`;
//! * SDOF, the stationary response covariance of a linear oscillator driven
//!   by white noise,
//!   `sigma_f^2 / (4 m^2 zeta omega_n^3) exp(-zeta omega_n tau)
//!    [cos(omega_d tau) + zeta omega_n / omega_d sin(omega_d tau)]`
//!   with `tau = |t - t'|`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::float17;
use crate::oscillator::OscillatorParams;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelFamily {
    Se,
    Sdof,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 2] = [KernelFamily::Se, KernelFamily::Sdof];

    pub fn as_str(self) -> &'static str {
        match self {
            KernelFamily::Se => "se",
            KernelFamily::Sdof => "sdof",
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "se" => Ok(KernelFamily::Se),
            "sdof" => Ok(KernelFamily::Sdof),
            other => Err(Error::Parse(format!("unknown kernel family {other:?}"))),
        }
    }
}

/// A kernel family together with its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec<T> {
    Se { sigma_f: T, length_scale: T },
    Sdof { sigma_f: T, params: OscillatorParams<T> },
}

impl<T: Real> KernelSpec<T> {
    pub fn se(sigma_f: T, length_scale: T) -> Result<Self> {
        check_sigma_f(sigma_f)?;
        if !(length_scale > T::zero()) || !length_scale.is_finite() {
            return Err(Error::invalid(format!(
                "SE length scale must be positive and finite (got {length_scale:?})"
            )));
        }
        Ok(KernelSpec::Se { sigma_f, length_scale })
    }

    /// SDOF kernel for the given oscillator. The prefactor divides by the
    /// damping ratio, so an undamped system is rejected.
    pub fn sdof(sigma_f: T, params: OscillatorParams<T>) -> Result<Self> {
        check_sigma_f(sigma_f)?;
        if !(params.zeta() > T::zero()) {
            return Err(Error::invalid("SDOF kernel needs a damped system (zeta > 0)"));
        }
        Ok(KernelSpec::Sdof { sigma_f, params })
    }

    pub fn family(&self) -> KernelFamily {
        match self {
            KernelSpec::Se { .. } => KernelFamily::Se,
            KernelSpec::Sdof { .. } => KernelFamily::Sdof,
        }
    }

    pub fn sigma_f(&self) -> T {
        match *self {
            KernelSpec::Se { sigma_f, .. } | KernelSpec::Sdof { sigma_f, .. } => sigma_f,
        }
    }

    pub fn length_scale(&self) -> Option<T> {
        match *self {
            KernelSpec::Se { length_scale, .. } => Some(length_scale),
            KernelSpec::Sdof { .. } => None,
        }
    }

    pub fn oscillator(&self) -> Option<&OscillatorParams<T>> {
        match self {
            KernelSpec::Se { .. } => None,
            KernelSpec::Sdof { params, .. } => Some(params),
        }
    }

    /// Same kernel with a different signal scale.
    pub fn with_sigma_f(&self, sigma_f: T) -> Result<Self> {
        match *self {
            KernelSpec::Se { length_scale, .. } => Self::se(sigma_f, length_scale),
            KernelSpec::Sdof { params, .. } => Self::sdof(sigma_f, params),
        }
    }

    /// Kernel value at zero lag divided by `sigma_f^2`.
    pub fn unit_variance(&self) -> T {
        match self {
            KernelSpec::Se { .. } => T::one(),
            KernelSpec::Sdof { params, .. } => sdof_unit_variance(params),
        }
    }

    /// Kernel value at zero lag, `k(t, t)`.
    pub fn variance(&self) -> T {
        let s = self.sigma_f();
        s * s * self.unit_variance()
    }

    #[inline]
    pub fn eval(&self, t: T, t_prime: T) -> T {
        match self {
            KernelSpec::Se { sigma_f, length_scale } => {
                let d = t - t_prime;
                *sigma_f * *sigma_f * (-(d * d) / (T::lit(2.0) * *length_scale * *length_scale)).exp()
            }
            KernelSpec::Sdof { sigma_f, params } => {
                let tau = (t - t_prime).abs();
                let decay = params.zeta() * params.omega_n();
                let wd = params.omega_d();
                *sigma_f * *sigma_f * sdof_unit_variance(params)
                    * (-decay * tau).exp()
                    * ((wd * tau).cos() + decay / wd * (wd * tau).sin())
            }
        }
    }
}

fn check_sigma_f<T: Real>(sigma_f: T) -> Result<()> {
    if !(sigma_f > T::zero()) || !sigma_f.is_finite() {
        return Err(Error::invalid(format!(
            "sigma_f must be positive and finite (got {sigma_f:?})"
        )));
    }
    Ok(())
}

fn sdof_unit_variance<T: Real>(p: &OscillatorParams<T>) -> T {
    let wn = p.omega_n();
    T::one() / (T::lit(4.0) * p.m() * p.m() * p.zeta() * wn * wn * wn)
}

/// `k(t, t')` for the given kernel.
pub fn kernel_eval<T: Real>(spec: &KernelSpec<T>, t: T, t_prime: T) -> T {
    spec.eval(t, t_prime)
}

/// Symmetric matrix of pairwise kernel values over a set of inputs.
#[derive(Debug, Clone)]
pub struct GramMatrix<T: Real> {
    values: DMatrix<T>,
    kernel: KernelSpec<T>,
    inputs: Vec<T>,
}

impl<T: Real> GramMatrix<T> {
    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    pub fn into_values(self) -> DMatrix<T> {
        self.values
    }

    pub fn kernel(&self) -> &KernelSpec<T> {
        &self.kernel
    }

    pub fn inputs(&self) -> &[T] {
        &self.inputs
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn trace(&self) -> T {
        self.values.trace()
    }
}

/// Gram matrix `K[i][j] = k(t_i, t_j)`.
///
/// Each unordered pair is evaluated once and mirrored, so the result is
/// exactly symmetric.
pub fn gram<T: Real>(spec: &KernelSpec<T>, t: &[T]) -> Result<GramMatrix<T>> {
    if t.is_empty() {
        return Err(Error::EmptyData);
    }
    if t.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("Gram inputs must be finite"));
    }
    let n = t.len();
    let mut values = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..=j {
            let v = spec.eval(t[i], t[j]);
            values[(i, j)] = v;
            values[(j, i)] = v;
        }
    }
    Ok(GramMatrix { values, kernel: *spec, inputs: t.to_vec() })
}

/// Vector of `k(t_train[i], t_star)`.
pub fn cross_vector<T: Real>(spec: &KernelSpec<T>, t_train: &[T], t_star: T) -> DVector<T> {
    DVector::from_iterator(t_train.len(), t_train.iter().map(|&ti| spec.eval(ti, t_star)))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
enum SpecRepr {
    Se {
        #[serde(with = "float17")]
        sigma_f: f64,
        #[serde(with = "float17")]
        length_scale: f64,
    },
    Sdof {
        #[serde(with = "float17")]
        sigma_f: f64,
        #[serde(with = "float17")]
        m: f64,
        #[serde(with = "float17")]
        c: f64,
        #[serde(with = "float17")]
        k: f64,
    },
}

impl<T: Real> Serialize for KernelSpec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            KernelSpec::Se { sigma_f, length_scale } => SpecRepr::Se {
                sigma_f: sigma_f.as_f64(),
                length_scale: length_scale.as_f64(),
            },
            KernelSpec::Sdof { sigma_f, params } => SpecRepr::Sdof {
                sigma_f: sigma_f.as_f64(),
                m: params.m().as_f64(),
                c: params.c().as_f64(),
                k: params.k().as_f64(),
            },
        };
        repr.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for KernelSpec<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = match SpecRepr::deserialize(d)? {
            SpecRepr::Se { sigma_f, length_scale } => {
                KernelSpec::se(T::lit(sigma_f), T::lit(length_scale))
            }
            SpecRepr::Sdof { sigma_f, m, c, k } => {
                OscillatorParams::new(T::lit(m), T::lit(c), T::lit(k))
                    .and_then(|p| KernelSpec::sdof(T::lit(sigma_f), p))
            }
        };
        spec.map_err(serde::de::Error::custom)
    }
}
