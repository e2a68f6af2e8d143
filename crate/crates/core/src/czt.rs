//! Fractional-stride discrete Fourier sums via the chirp-z (Bluestein)
//! factorization.
//!
//! A [`ScaledDft`] evaluates
//!
//! ```text
//! y_j = Σ_k a_k · exp(i·σ·t_k·w_j),   t_k = t0 + k·dt,  w_j = w0 + j·dw
//! ```
//!
//! for arbitrary real `σ`, strides and offsets, in O((N + M) log(N + M)).
//! The product `k·j` is split as `(k² + j² − (j − k)²)/2`, turning the sum
//! into a chirp multiply, a linear convolution with a chirp, and a second
//! chirp multiply. Up to rounding this is the same number as the direct
//! double loop.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fft::Radix2Fft;

/// Uniform lattice `origin + k·step`, `k = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub origin: f64,
    pub step: f64,
    pub len: usize,
}

impl Lattice {
    pub fn new(origin: f64, step: f64, len: usize) -> Self {
        Self { origin, step, len }
    }

    #[inline]
    pub fn at(&self, k: usize) -> f64 {
        self.origin + k as f64 * self.step
    }
}

#[inline]
fn cis(phase: f64) -> Complex64 {
    Complex64::new(libm::cos(phase), libm::sin(phase))
}

/// Reusable plan for one `(input lattice, output lattice, σ)` triple.
#[derive(Debug, Clone)]
pub struct ScaledDft {
    input: Lattice,
    output: Lattice,
    fft: Radix2Fft,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
    filter_spectrum: Vec<Complex64>,
}

impl ScaledDft {
    pub fn new(input: Lattice, output: Lattice, sigma: f64) -> Self {
        let n_in = input.len;
        let n_out = output.len;
        let alpha = sigma * input.step * output.step;
        let size = (n_in + n_out).saturating_sub(1).max(1).next_power_of_two();
        let fft = Radix2Fft::new(size);

        let pre = (0..n_in)
            .map(|k| {
                let kf = k as f64;
                cis(sigma * output.origin * kf * input.step + 0.5 * alpha * kf * kf)
            })
            .collect();
        let post = (0..n_out)
            .map(|j| {
                let jf = j as f64;
                cis(sigma * input.origin * (output.origin + jf * output.step) + 0.5 * alpha * jf * jf)
            })
            .collect();

        // h_m = exp(-iα m²/2) for m in -(n_in-1)..=(n_out-1), wrapped circularly.
        let mut filter = vec![Complex64::new(0.0, 0.0); size];
        for (m, h) in filter.iter_mut().take(n_out).enumerate() {
            let mf = m as f64;
            *h = cis(-0.5 * alpha * mf * mf);
        }
        for m in 1..n_in {
            let mf = m as f64;
            filter[size - m] = cis(-0.5 * alpha * mf * mf);
        }
        fft.forward(&mut filter);

        Self {
            input,
            output,
            fft,
            pre,
            post,
            filter_spectrum: filter,
        }
    }

    pub fn input(&self) -> Lattice {
        self.input
    }

    pub fn output(&self) -> Lattice {
        self.output
    }

    /// Evaluates the sum for `samples` (length must equal the input lattice).
    pub fn apply(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.output.len];
        self.apply_into(samples, &mut out, &mut Vec::new());
        out
    }

    /// Allocation-reusing variant of [`apply`](Self::apply); `scratch` is
    /// resized as needed.
    pub fn apply_into(&self, samples: &[Complex64], out: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        assert_eq!(samples.len(), self.input.len, "input length mismatch");
        assert_eq!(out.len(), self.output.len, "output length mismatch");
        let size = self.fft.len();
        scratch.clear();
        scratch.resize(size, Complex64::new(0.0, 0.0));
        for ((s, a), p) in scratch.iter_mut().zip(samples).zip(&self.pre) {
            *s = a * p;
        }
        self.fft.forward(scratch);
        for (s, h) in scratch.iter_mut().zip(&self.filter_spectrum) {
            *s *= h;
        }
        self.fft.inverse(scratch);
        let scale = 1.0 / size as f64;
        for ((o, s), p) in out.iter_mut().zip(scratch.iter()).zip(&self.post) {
            *o = s * p * scale;
        }
    }
}

/// Literal O(N·M) evaluation of the same sum. Test oracle and small-size fallback.
pub fn direct_scaled_dft(samples: &[Complex64], input: Lattice, output: Lattice, sigma: f64) -> Vec<Complex64> {
    (0..output.len)
        .map(|j| {
            let w = output.at(j);
            samples
                .iter()
                .enumerate()
                .map(|(k, a)| a * cis(sigma * input.at(k) * w))
                .sum()
        })
        .collect()
}
