//! Tunnel-diode activation function (TDAF).
//!
//! The activation is the I-V characteristic of a tunnel diode,
//!
//! ```text
//! I(V)  = J1(V) + J2(V)
//! J1(V) = a * ln((1 + e^(alpha + eta V)) / (1 + e^(alpha - eta V))) * (pi/2 + atan((c - n1 V) / d))
//! J2(V) = h * (e^(gamma V) - 1)
//! ```
//!
//! with `alpha = q (b - c) / (kB T)`, `eta = q n1 / (kB T)` and `gamma = q n2 / (kB T)`.
//! `J1` produces the first rising branch and the negative differential
//! resistance (NDR) region; `J2` takes over at high voltage.
//!
//! The log-ratio is evaluated as a difference of softplus terms so that
//! `|alpha +- eta V|` can reach several hundred without overflow.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Elementary charge (C), CODATA 2018 exact value.
pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;
/// Boltzmann constant (J/K), CODATA 2018 exact value.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Default output gain applied when the I-V curve is used as an activation.
pub const DEFAULT_GAIN: f64 = 25.0;

/// Diode parameters plus the activation gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TdafParams {
    /// Current scale (A).
    pub a: f64,
    /// Voltage offset (V). The default already carries the tenfold increase
    /// over the reference device.
    pub b: f64,
    /// Peak-position voltage (V).
    pub c: f64,
    /// Arctan width (V).
    pub d: f64,
    pub n1: f64,
    pub n2: f64,
    /// Excess-current scale (A).
    pub h: f64,
    /// Temperature (K).
    pub temperature: f64,
    pub q: f64,
    pub k_b: f64,
    /// Multiplier on the current when used as an activation.
    pub gain: f64,
}

impl Default for TdafParams {
    fn default() -> Self {
        Self {
            a: 0.0039,
            b: 0.5,
            c: 0.0874,
            d: 0.0073,
            n1: 0.0352,
            n2: 0.0031,
            h: 0.0367,
            temperature: 300.0,
            q: ELECTRON_CHARGE,
            k_b: BOLTZMANN,
            gain: DEFAULT_GAIN,
        }
    }
}

impl TdafParams {
    pub fn with_gain(mut self, gain: f64) -> Self {
        self.gain = gain;
        self
    }

    /// Derived exponents `(alpha, eta, gamma)`.
    ///
    /// Only `T <= 0` is rejected here; the positivity of `eta` and `gamma`
    /// is checked by [`TdafParams::validate`].
    pub fn coefficients(&self) -> Result<TdafCoefficients> {
        if !(self.temperature > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be positive, got {}",
                self.temperature
            )));
        }
        let thermal = self.k_b * self.temperature;
        let coeffs = TdafCoefficients {
            alpha: self.q * (self.b - self.c) / thermal,
            eta: self.q * self.n1 / thermal,
            gamma: self.q * self.n2 / thermal,
        };
        if !(coeffs.alpha.is_finite() && coeffs.eta.is_finite() && coeffs.gamma.is_finite()) {
            return Err(Error::InvalidParameter(
                "derived coefficients are not finite".into(),
            ));
        }
        Ok(coeffs)
    }

    pub fn validate(&self) -> Result<TdafCoefficients> {
        let fields = [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("n1", self.n1),
            ("n2", self.n2),
            ("h", self.h),
            ("gain", self.gain),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} is not finite")));
            }
        }
        for (name, value) in [("d", self.d), ("a", self.a), ("h", self.h)] {
            if value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        let coeffs = self.coefficients()?;
        if coeffs.eta <= 0.0 || coeffs.gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eta and gamma must be positive, got eta={} gamma={}",
                coeffs.eta, coeffs.gamma
            )));
        }
        Ok(coeffs)
    }
}

/// Exponents derived from the physical constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdafCoefficients {
    pub alpha: f64,
    /// 1/V
    pub eta: f64,
    /// 1/V
    pub gamma: f64,
}

/// `ln(1 + e^z)` without overflow.
#[inline]
fn softplus_tail(z: f64) -> f64 {
    (-z.abs()).exp().ln_1p()
}

#[inline]
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// A validated TDAF with precomputed coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tdaf {
    params: TdafParams,
    coeffs: TdafCoefficients,
}

impl Tdaf {
    pub fn new(params: TdafParams) -> Result<Self> {
        let coeffs = params.validate()?;
        Ok(Self { params, coeffs })
    }

    pub fn params(&self) -> &TdafParams {
        &self.params
    }

    pub fn coefficients(&self) -> TdafCoefficients {
        self.coeffs
    }

    /// `ln((1 + e^(alpha + eta V)) / (1 + e^(alpha - eta V)))`.
    ///
    /// When both exponents are positive the linear part is exactly `2 eta V`,
    /// which keeps full relative precision near `V = 0`.
    fn log_ratio(&self, v: f64) -> f64 {
        let TdafCoefficients { alpha, eta, .. } = self.coeffs;
        let up = alpha + eta * v;
        let down = alpha - eta * v;
        let linear = if up >= 0.0 && down >= 0.0 {
            2.0 * eta * v
        } else {
            up.max(0.0) - down.max(0.0)
        };
        linear + (softplus_tail(up) - softplus_tail(down))
    }

    fn arctan_arg(&self, v: f64) -> f64 {
        (self.params.c - self.params.n1 * v) / self.params.d
    }

    pub(crate) fn current_raw(&self, v: f64) -> f64 {
        let p = &self.params;
        let j1 = p.a * self.log_ratio(v) * (FRAC_PI_2 + self.arctan_arg(v).atan());
        let j2 = p.h * (self.coeffs.gamma * v).exp_m1();
        j1 + j2
    }

    pub(crate) fn derivative_raw(&self, v: f64) -> f64 {
        let p = &self.params;
        let TdafCoefficients { alpha, eta, gamma } = self.coeffs;
        let u = self.arctan_arg(v);
        let d_log_ratio = eta * (logistic(alpha + eta * v) + logistic(alpha - eta * v));
        let d_arctan = (-p.n1 / p.d) / (1.0 + u * u);
        let dj1 = p.a * (d_log_ratio * (FRAC_PI_2 + u.atan()) + self.log_ratio(v) * d_arctan);
        let dj2 = p.h * gamma * (gamma * v).exp();
        dj1 + dj2
    }

    /// Diode current `I(V)` in amperes.
    pub fn current(&self, v: f64) -> Result<f64> {
        check_finite(v)?;
        Ok(self.current_raw(v))
    }

    /// Differential conductance `dI/dV` in A/V.
    pub fn derivative(&self, v: f64) -> Result<f64> {
        check_finite(v)?;
        Ok(self.derivative_raw(v))
    }

    /// Elementwise `gain * I(x_i)`.
    pub fn activate(&self, x: &[f64]) -> Result<Vec<f64>> {
        x.iter()
            .map(|&v| self.current(v).map(|i| self.params.gain * i))
            .collect()
    }

    /// Elementwise `gain * I'(x_i)`.
    pub fn activate_grad(&self, x: &[f64]) -> Result<Vec<f64>> {
        x.iter()
            .map(|&v| self.derivative(v).map(|g| self.params.gain * g))
            .collect()
    }
}

fn check_finite(v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("voltage {v}")))
    }
}

/// Free-function form of [`TdafParams::coefficients`].
pub fn derive_coefficients(params: &TdafParams) -> Result<TdafCoefficients> {
    params.coefficients()
}

pub fn tdaf_current(v: f64, params: &TdafParams) -> Result<f64> {
    Tdaf::new(*params)?.current(v)
}

pub fn tdaf_derivative(v: f64, params: &TdafParams) -> Result<f64> {
    Tdaf::new(*params)?.derivative(v)
}

/// One row of an I-V sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvPoint {
    pub voltage: f64,
    pub current: f64,
    pub conductance: f64,
}

/// Evaluates the raw (gain-free) curve on `points` evenly spaced voltages
/// from `start` to `end` inclusive.
pub fn iv_curve(params: &TdafParams, start: f64, end: f64, points: usize) -> Result<Vec<IvPoint>> {
    if points < 2 || !(end > start) {
        return Err(Error::InvalidParameter(format!(
            "iv grid needs at least 2 points and start < end, got {points} on [{start}, {end}]"
        )));
    }
    let tdaf = Tdaf::new(*params)?;
    let span = end - start;
    (0..points)
        .map(|k| {
            let v = if k == points - 1 { end } else { start + span * k as f64 / (points - 1) as f64 };
            Ok(IvPoint {
                voltage: v,
                current: tdaf.current(v)?,
                conductance: tdaf.derivative(v)?,
            })
        })
        .collect()
}
