//! Closed forms for the Gaussian chirplet `⁴√(ε/π)·exp(−(ε − iβ)x²/2)`.
//!
//! These are the analytic oracles the numerical paths are checked against:
//! the field itself, its Wigner function (a Gaussian tilted onto the line
//! `ν = βx`), its Radon projection along `x = D·x′ − B·ν′`, and the output
//! intensity after the inverse system `[D, −B, −C, A]`.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ray::RayMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpletParams {
    epsilon: f64,
    beta: f64,
}

impl ChirpletParams {
    pub fn new(epsilon: f64, beta: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidChirplet(epsilon));
        }
        Ok(Self { epsilon, beta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(D − Bβ)² + B²ε²`, the squared stretch of the projected Gaussian.
    fn stretch(&self, d: f64, b: f64) -> f64 {
        let skew = d - b * self.beta;
        skew * skew + b * b * self.epsilon * self.epsilon
    }
}

pub fn chirplet_field(p: &ChirpletParams, x: f64) -> Complex64 {
    let amplitude = libm::pow(p.epsilon / PI, 0.25);
    let exponent = Complex64::new(-p.epsilon, p.beta) * (0.5 * x * x);
    exponent.exp() * amplitude
}

/// `(1/π)·exp(−[εx² + (ν − βx)²/ε])`.
pub fn chirplet_wigner(p: &ChirpletParams, nu: f64, x: f64) -> f64 {
    let off = nu - p.beta * x;
    libm::exp(-(p.epsilon * x * x + off * off / p.epsilon)) / PI
}

/// Projection of [`chirplet_wigner`] onto the lines `x = D·x′ − B·ν′`.
pub fn chirplet_radon(p: &ChirpletParams, d: f64, b: f64, x: f64) -> Result<f64> {
    if d == 0.0 && b == 0.0 {
        return Err(Error::DegenerateLine);
    }
    let s = p.stretch(d, b);
    Ok(libm::sqrt(p.epsilon / PI / s) * libm::exp(-p.epsilon * x * x / s))
}

/// `|φ₀(x)|²` for the chirplet sent through the inverse of `m`.
///
/// Only the intensity is exposed: the amplitude's overall phase depends on
/// the square-root branch and is irrelevant here. The result depends on
/// `m` only through `(D, B)`; `A` enters the amplitude as the pure phase
/// `e^{−iAx²/(2B)}`. For `B = 0` the projection formula is already exact.
pub fn chirplet_fresnel_intensity(p: &ChirpletParams, m: &RayMatrix, x: f64) -> f64 {
    chirplet_radon(p, m.d(), m.b(), x).expect("unimodular matrix never has D = B = 0")
}

/// Coefficient `1/(2B(Bε + iD − iβB))` of `−x²` in the output amplitude's
/// exponent. Twice its real part is the Gaussian intensity exponent.
pub fn output_exponent(p: &ChirpletParams, d: f64, b: f64) -> Complex64 {
    let denom = Complex64::new(b * p.epsilon, d - p.beta * b) * (2.0 * b);
    denom.inv()
}

/// `ε/((D − Bβ)² + B²ε²)`, the real intensity exponent of the projection.
pub fn projection_exponent(p: &ChirpletParams, d: f64, b: f64) -> f64 {
    p.epsilon / p.stretch(d, b)
}
