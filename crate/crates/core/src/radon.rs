//! Line integrals of a Wigner distribution across phase space.
//!
//! Spatial projections integrate along `x = D·x′ − B·ν′`, frequency
//! projections along `ν = A·ν′ − C·x′`. Both are evaluated by substituting
//! the line into the distribution: one phase-space coordinate runs over its
//! grid nodes, the other is interpolated, and the Jacobian `1/|coefficient|`
//! of the eliminated coordinate is applied. The running coordinate is the
//! one along which the line crosses fewer cells of the other axis.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::interp;
use crate::wigner::{marginal_frequency, marginal_space, WignerDistribution};

/// Densities below this are treated as quadrature noise; anything more
/// negative is flagged.
pub const NEGATIVE_NOISE_FLOOR: f64 = -1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectionMode {
    /// Line parameters `(D, B)`.
    Spatial,
    /// Line parameters `(A, C)`.
    Frequency,
}

impl ProjectionMode {
    pub fn name(self) -> &'static str {
        match self {
            ProjectionMode::Spatial => "spatial",
            ProjectionMode::Frequency => "frequency",
        }
    }
}

/// A tomogram: the projected density on `out_grid`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadonProjection {
    pub out_grid: Grid1D,
    pub density: Vec<f64>,
    pub line_params: (f64, f64),
    pub mode: ProjectionMode,
}

impl RadonProjection {
    /// `Σ density·d(out)`.
    pub fn mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.out_grid.dx()
    }

    pub fn min(&self) -> f64 {
        self.density.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// True when some density value is below [`NEGATIVE_NOISE_FLOOR`].
    pub fn has_negative_excursion(&self) -> bool {
        self.min() < NEGATIVE_NOISE_FLOOR
    }
}

/// `R(x) = ∬ dx′ dν′ δ(x − D·x′ + B·ν′) W(ν′, x′)` on `out_grid`.
pub fn radon_spatial(w: &WignerDistribution, d: f64, b: f64, out_grid: &Grid1D) -> Result<RadonProjection> {
    Ok(RadonProjection {
        out_grid: *out_grid,
        density: project(w, d, -b, out_grid)?,
        line_params: (d, b),
        mode: ProjectionMode::Spatial,
    })
}

/// `R(ν) = ∬ dx′ dν′ δ(ν − A·ν′ + C·x′) W(ν′, x′)` on `out_grid`.
pub fn radon_frequency(w: &WignerDistribution, a: f64, c: f64, out_grid: &Grid1D) -> Result<RadonProjection> {
    Ok(RadonProjection {
        out_grid: *out_grid,
        density: project(w, -c, a, out_grid)?,
        line_params: (a, c),
        mode: ProjectionMode::Frequency,
    })
}

/// Integrates `W` along the lines `out = kx·x′ + kν·ν′`.
fn project(w: &WignerDistribution, kx: f64, knu: f64, out_grid: &Grid1D) -> Result<Vec<f64>> {
    if kx == 0.0 && knu == 0.0 {
        return Err(Error::DegenerateLine);
    }
    let xg = *w.x_grid();
    let ng = *w.nu_grid();

    // Lines parallel to an axis collapse onto a marginal.
    if knu == 0.0 {
        let marginal = marginal_space(w);
        let jac = 1.0 / kx.abs();
        return Ok(out_grid
            .coords()
            .map(|t| jac * interp::linear(&marginal, xg.position(t / kx)))
            .collect());
    }
    if kx == 0.0 {
        let marginal = marginal_frequency(w);
        let jac = 1.0 / knu.abs();
        return Ok(out_grid
            .coords()
            .map(|t| jac * interp::linear(&marginal, ng.position(t / knu)))
            .collect());
    }

    if knu.abs() * ng.span() >= kx.abs() * xg.span() {
        // Run over x′ nodes, interpolate along ν′ = (out − kx·x′)/kν.
        let weight = xg.dx() / knu.abs();
        let rows: Vec<(f64, &[f64])> = (0..xg.n())
            .map(|i| (xg.coord(i), w.row(i)))
            .filter(|(_, row)| row.iter().any(|v| *v != 0.0))
            .collect();
        Ok(out_grid
            .coords()
            .map(|t| {
                let sum: f64 = rows
                    .iter()
                    .map(|(x, row)| interp::linear(row, ng.position((t - kx * x) / knu)))
                    .sum();
                sum * weight
            })
            .collect())
    } else {
        // Run over ν′ nodes, interpolate along x′ = (out − kν·ν′)/kx.
        let (nx, nn) = (xg.n(), ng.n());
        let mut columns = alloc::vec![0.0; nx * nn];
        for i in 0..nx {
            for (j, v) in w.row(i).iter().enumerate() {
                columns[j * nx + i] = *v;
            }
        }
        let cols: Vec<(f64, &[f64])> = (0..nn)
            .map(|j| (ng.coord(j), &columns[j * nx..(j + 1) * nx]))
            .filter(|(_, col)| col.iter().any(|v| *v != 0.0))
            .collect();
        let weight = ng.dx() / kx.abs();
        Ok(out_grid
            .coords()
            .map(|t| {
                let sum: f64 = cols
                    .iter()
                    .map(|(nu, col)| interp::linear(col, xg.position((t - knu * nu) / kx)))
                    .sum();
                sum * weight
            })
            .collect())
    }
}
