//! Unitary continuous Fourier transform on uniform grids.
//!
//! Convention: `ψ̃(ν) = (1/√(2π)) ∫ ψ(x) e^{-ixν} dx`, inverse with
//! `e^{+ixν}`. This is the sign for which the Wigner frequency marginal is
//! `|ψ̃(ν)|²` (not `|ψ̃(−ν)|²`) and for which the spectral Wigner formula
//! with kernel `e^{-ix s}` reproduces the spatial one.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::czt::ScaledDft;
use crate::error::{Error, Result};
use crate::field::{DomainTag, SampledField};
use crate::grid::Grid1D;

/// Relative slack on band-limit comparisons, so that grids built exactly at
/// the limit are accepted.
pub(crate) const LIMIT_SLACK: f64 = 1e-12;

/// Largest `|ν|` a rectangle-rule transform of samples spaced `dx` can
/// represent without wrap-around.
pub fn max_representable(dx: f64) -> f64 {
    PI / dx
}

/// The DFT-dual grid of `grid`: same node count, spacing `2π/(n·dx)`,
/// centered on zero.
pub fn dual_grid(grid: &Grid1D) -> Grid1D {
    let n = grid.n();
    let dnu = 2.0 * PI / (n as f64 * grid.dx());
    Grid1D::new(n, dnu, -((n / 2) as f64) * dnu).expect("dual of a valid grid is valid")
}

pub(crate) fn check_band(target: &Grid1D, limit: f64) -> Result<()> {
    let half_width = target.max_abs();
    if half_width > limit * (1.0 + LIMIT_SLACK) {
        Err(Error::Nyquist {
            half_width,
            max_representable: limit,
        })
    } else {
        Ok(())
    }
}

/// Forward transform for `Space` fields, inverse for `Frequency` fields,
/// evaluated at every node of `target`.
pub fn unitary_ft(field: &SampledField, target: &Grid1D) -> Result<SampledField> {
    let grid = field.grid();
    check_band(target, max_representable(grid.dx()))?;
    let sigma = match field.domain() {
        DomainTag::Space => -1.0,
        DomainTag::Frequency => 1.0,
    };
    let plan = ScaledDft::new(grid.lattice(), target.lattice(), sigma);
    let scale = grid.dx() / libm::sqrt(2.0 * PI);
    let samples = plan
        .apply(field.samples())
        .into_iter()
        .map(|v| v * Complex64::new(scale, 0.0))
        .collect();
    SampledField::new(*target, samples, field.domain().conjugate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::czt::direct_scaled_dft;
    use crate::field::{hermite_gauss, l2_norm, sample_function};
    use crate::grid::make_centered_grid;

    fn grid() -> Grid1D {
        make_centered_grid(1024, 8.0).unwrap()
    }

    fn gaussian(x: f64) -> Complex64 {
        Complex64::new(PI.powf(-0.25) * (-0.5 * x * x).exp(), 0.0)
    }

    #[test]
    fn gaussian_is_self_reciprocal() {
        let g = grid();
        let f = sample_function(&g, gaussian, DomainTag::Space).unwrap();
        let spec = unitary_ft(&f, &g).unwrap();
        assert_eq!(spec.domain(), DomainTag::Frequency);
        for (nu, v) in g.coords().zip(spec.samples()) {
            assert!((v - gaussian(nu)).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = grid();
        let spec = unitary_ft(&SampledField::zeros(g, DomainTag::Space), &g).unwrap();
        assert!(spec.samples().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn kernel_sign_moves_positive_momentum_to_positive_frequency() {
        let g = grid();
        let f = sample_function(&g, |x| gaussian(x) * Complex64::from_polar(1.0, 3.0 * x), DomainTag::Space).unwrap();
        let spec = unitary_ft(&f, &g).unwrap();
        let (argmax, _) = spec
            .samples()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap();
        assert!((g.coord(argmax) - 3.0).abs() < g.dx());
    }

    #[test]
    fn matches_direct_summation() {
        let g = make_centered_grid(256, 8.0).unwrap();
        let target = make_centered_grid(200, 5.0).unwrap();
        let f = hermite_gauss(&g, 3).unwrap();
        let fast = unitary_ft(&f, &target).unwrap();
        let scale = g.dx() / (2.0 * PI).sqrt();
        let slow = direct_scaled_dft(f.samples(), g.lattice(), target.lattice(), -1.0);
        for (a, b) in fast.samples().iter().zip(slow) {
            assert!((a - b * scale).norm() < 1e-12);
        }
    }

    #[test]
    fn nyquist_violation_reports_limit() {
        let g = make_centered_grid(64, 8.0).unwrap();
        let too_wide = make_centered_grid(64, 20.0).unwrap();
        match unitary_ft(&hermite_gauss(&g, 0).unwrap(), &too_wide) {
            Err(Error::Nyquist { max_representable, .. }) => {
                assert!((max_representable - PI / 0.25).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dual_grid_is_at_the_limit() {
        let g = grid();
        let d = dual_grid(&g);
        assert!((d.max_abs() - PI / g.dx()).abs() < 1e-12);
        let h = hermite_gauss(&g, 2).unwrap();
        let spec = unitary_ft(&h, &d).unwrap();
        assert!((l2_norm(&spec) - 1.0).abs() < 1e-12);
    }
}
