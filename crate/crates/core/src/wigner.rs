//! Wigner distribution of a sampled field, from either its spatial samples
//! or its angular spectrum, plus the two marginals.
//!
//! The lag integral `∫ du/(2π) e^{iνu} ψ*(x + u/2) ψ(x − u/2)` is taken on
//! lags `u = 2k·dx`, so both arguments land on grid nodes and no
//! interpolation of `ψ` is needed. The price is that the computed
//! distribution is periodic in `ν` with period `π/dx`; the frequency window
//! must therefore stay within `|ν| ≤ π/(2·dx)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::czt::{Lattice, ScaledDft};
use crate::error::Result;
use crate::field::{DomainTag, SampledField};
use crate::fourier::check_band;
use crate::grid::Grid1D;

/// Boundary magnitude (relative to peak) above which the source field is
/// considered truncated by its window.
pub const LEAK_THRESHOLD: f64 = 1e-8;

/// Real phase-space distribution, `values[i·n_ν + j] = W(ν_j, x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerDistribution {
    x_grid: Grid1D,
    nu_grid: Grid1D,
    values: Vec<f64>,
    imag_residue: f64,
    boundary_leak: f64,
}

impl WignerDistribution {
    pub fn x_grid(&self) -> &Grid1D {
        &self.x_grid
    }

    pub fn nu_grid(&self) -> &Grid1D {
        &self.nu_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.nu_grid.n() + j]
    }

    /// Values at fixed `x_i` across the frequency axis.
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.nu_grid.n();
        &self.values[i * n..(i + 1) * n]
    }

    /// Largest imaginary part discarded when taking the real part.
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    /// End-sample magnitude of the source field relative to its peak.
    pub fn boundary_leak(&self) -> f64 {
        self.boundary_leak
    }

    pub fn is_leaking(&self) -> bool {
        self.boundary_leak > LEAK_THRESHOLD
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// `Σ W·dx·dν`.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.x_grid.dx() * self.nu_grid.dx()
    }

    /// Index of the largest value as `(i over x, j over ν)`.
    pub fn argmax(&self) -> (usize, usize) {
        let n = self.nu_grid.n();
        let k = self
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(k, _)| k);
        (k / n, k % n)
    }
}

/// Rows of `∫ ds/(2π) e^{iσ·w·s} f*(t + s/2) f(t − s/2)` for every node
/// `t` of the field grid, evaluated at every node `w` of `target`.
/// Returns (row-major values over `field grid × target`, imaginary residue).
fn lag_transform(field: &SampledField, target: &Grid1D, sigma: f64) -> (Vec<f64>, f64) {
    let grid = field.grid();
    let n = grid.n();
    let psi = field.samples();
    let half = (n - 1) / 2;
    let lag_step = 2.0 * grid.dx();
    let plan = ScaledDft::new(
        Lattice::new(-(half as f64) * lag_step, lag_step, 2 * half + 1),
        target.lattice(),
        sigma,
    );
    let scale = lag_step / (2.0 * PI);

    let m = target.n();
    let mut values = vec![0.0; n * m];
    let mut residue: f64 = 0.0;
    let mut products = vec![Complex64::new(0.0, 0.0); 2 * half + 1];
    let mut row = vec![Complex64::new(0.0, 0.0); m];
    let mut scratch = Vec::new();
    for i in 0..n {
        let reach = i.min(n - 1 - i).min(half);
        if psi[i - reach..=i + reach].iter().all(|s| s.re == 0.0 && s.im == 0.0) {
            continue;
        }
        products.iter_mut().for_each(|p| *p = Complex64::new(0.0, 0.0));
        for k in 0..=reach {
            products[half + k] = psi[i + k].conj() * psi[i - k];
            products[half - k] = psi[i - k].conj() * psi[i + k];
        }
        plan.apply_into(&products, &mut row, &mut scratch);
        for (dst, v) in values[i * m..(i + 1) * m].iter_mut().zip(&row) {
            *dst = v.re * scale;
            residue = residue.max((v.im * scale).abs());
        }
    }
    (values, residue)
}

/// Wigner function `W(ν′, x′)` of a spatial field on `field grid × nu_grid`.
pub fn wigner_from_spatial(field: &SampledField, nu_grid: &Grid1D) -> Result<WignerDistribution> {
    field.expect_domain(DomainTag::Space)?;
    check_band(nu_grid, PI / (2.0 * field.grid().dx()))?;
    let (values, imag_residue) = lag_transform(field, nu_grid, 1.0);
    Ok(WignerDistribution {
        x_grid: *field.grid(),
        nu_grid: *nu_grid,
        values,
        imag_residue,
        boundary_leak: field.boundary_magnitude(),
    })
}

/// Wigner function from the angular spectrum,
/// `∫ ds/(2π) e^{−ix′s} ψ̃*(ν′ + s/2) ψ̃(ν′ − s/2)`, on `x_grid × spectrum grid`.
pub fn wigner_from_spectrum(spectrum: &SampledField, x_grid: &Grid1D) -> Result<WignerDistribution> {
    spectrum.expect_domain(DomainTag::Frequency)?;
    check_band(x_grid, PI / (2.0 * spectrum.grid().dx()))?;
    let (by_nu, imag_residue) = lag_transform(spectrum, x_grid, -1.0);
    let (n_nu, n_x) = (spectrum.grid().n(), x_grid.n());
    let mut values = vec![0.0; n_x * n_nu];
    for j in 0..n_nu {
        for i in 0..n_x {
            values[i * n_nu + j] = by_nu[j * n_x + i];
        }
    }
    Ok(WignerDistribution {
        x_grid: *x_grid,
        nu_grid: *spectrum.grid(),
        values,
        imag_residue,
        boundary_leak: spectrum.boundary_magnitude(),
    })
}

/// `Σ_j W(ν_j, x_i)·dν`, approximating `|ψ(x_i)|²`.
pub fn marginal_space(w: &WignerDistribution) -> Vec<f64> {
    let dnu = w.nu_grid.dx();
    (0..w.x_grid.n()).map(|i| w.row(i).iter().sum::<f64>() * dnu).collect()
}

/// `Σ_i W(ν_j, x_i)·dx`, approximating `|ψ̃(ν_j)|²`.
pub fn marginal_frequency(w: &WignerDistribution) -> Vec<f64> {
    let mut out = vec![0.0; w.nu_grid.n()];
    for i in 0..w.x_grid.n() {
        for (o, v) in out.iter_mut().zip(w.row(i)) {
            *o += v;
        }
    }
    let dx = w.x_grid.dx();
    out.iter_mut().for_each(|o| *o *= dx);
    out
}
