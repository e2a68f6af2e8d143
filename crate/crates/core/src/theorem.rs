//! Both sides of the tomography theorem, side by side.
//!
//! Spatial mode: the intensity of `collins_dual_spatial(ψ, m)` against the
//! Radon projection of `W_ψ` along `x = D·x′ − B·ν′`. Frequency mode: the
//! intensity of `collins_frequency(ψ̃, m)` against the projection along
//! `ν = A·ν′ − C·x′`. Both sides are evaluated on the same output grid, so
//! no resampling enters the error.
//!
//! The Wigner distribution depends only on the field, so
//! [`Theorem::new`] computes it once and [`Theorem::report`] is cheap per
//! matrix.

use alloc::vec::Vec;

use crate::collins::{collins_dual_spatial, collins_frequency};
use crate::error::{Error, Result};
use crate::field::{l2_norm, DomainTag, SampledField};
use crate::grid::Grid1D;
use crate::radon::{radon_frequency, radon_spatial, ProjectionMode, RadonProjection};
use crate::ray::RayMatrix;
use crate::wigner::{wigner_from_spatial, wigner_from_spectrum, WignerDistribution};

/// Mass deviation beyond which a report is flagged as leaking out of the
/// window.
pub const MASS_TOLERANCE: f64 = 2e-3;

/// Auxiliary phase-space axis and the output grid.
///
/// In spatial mode `aux` is the frequency axis of the Wigner distribution;
/// in frequency mode it is the position axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyGrids {
    pub aux: Grid1D,
    pub out: Grid1D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub mode: ProjectionMode,
    pub matrix: RayMatrix,
    /// Output intensity on `rhs.out_grid`.
    pub lhs: Vec<f64>,
    pub rhs: RadonProjection,
    pub err_linf: f64,
    pub err_l1: f64,
    pub mass_lhs: f64,
    pub mass_rhs: f64,
    /// `‖ψ‖²` of the input.
    pub input_mass: f64,
    /// The Wigner distribution did not decay inside its window.
    pub wigner_leak: bool,
}

impl TheoremReport {
    pub fn out_grid(&self) -> &Grid1D {
        &self.rhs.out_grid
    }

    /// Either side lost more than [`MASS_TOLERANCE`] (relative to the input
    /// norm) outside the window.
    pub fn window_leak(&self) -> bool {
        let tol = MASS_TOLERANCE * self.input_mass;
        self.wigner_leak
            || (self.mass_lhs - self.input_mass).abs() > tol
            || (self.mass_rhs - self.input_mass).abs() > tol
    }

    /// Acceptance is keyed on the pointwise error.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.err_linf <= tolerance
    }
}

/// A field with its Wigner distribution, ready to be checked against any
/// number of matrices.
#[derive(Debug, Clone)]
pub struct Theorem {
    field: SampledField,
    wigner: WignerDistribution,
    out: Grid1D,
    input_mass: f64,
}

impl Theorem {
    /// Spatial fields use spatial mode, spectra frequency mode.
    pub fn new(field: &SampledField, grids: &VerifyGrids) -> Result<Self> {
        let wigner = match field.domain() {
            DomainTag::Space => wigner_from_spatial(field, &grids.aux)?,
            DomainTag::Frequency => wigner_from_spectrum(field, &grids.aux)?,
        };
        let norm = l2_norm(field);
        Ok(Self {
            field: field.clone(),
            wigner,
            out: grids.out,
            input_mass: norm * norm,
        })
    }

    pub fn mode(&self) -> ProjectionMode {
        match self.field.domain() {
            DomainTag::Space => ProjectionMode::Spatial,
            DomainTag::Frequency => ProjectionMode::Frequency,
        }
    }

    pub fn wigner(&self) -> &WignerDistribution {
        &self.wigner
    }

    pub fn report(&self, m: &RayMatrix) -> Result<TheoremReport> {
        let (output, rhs) = match self.mode() {
            ProjectionMode::Spatial => (
                collins_dual_spatial(&self.field, m, &self.out)?,
                radon_spatial(&self.wigner, m.d(), m.b(), &self.out)?,
            ),
            ProjectionMode::Frequency => (
                collins_frequency(&self.field, m, &self.out)?,
                radon_frequency(&self.wigner, m.a(), m.c(), &self.out)?,
            ),
        };
        let lhs = output.intensity();
        let dx = self.out.dx();
        let (err_linf, err_sum) = lhs
            .iter()
            .zip(&rhs.density)
            .map(|(l, r)| libm::fabs(l - r))
            .fold((0.0, 0.0), |(m, s), e| (f64::max(m, e), s + e));
        Ok(TheoremReport {
            mode: self.mode(),
            matrix: *m,
            mass_lhs: lhs.iter().sum::<f64>() * dx,
            mass_rhs: rhs.mass(),
            lhs,
            rhs,
            err_linf,
            err_l1: err_sum * dx,
            input_mass: self.input_mass,
            wigner_leak: self.wigner.is_leaking(),
        })
    }
}

pub fn verify_spatial(field: &SampledField, m: &RayMatrix, grids: &VerifyGrids) -> Result<TheoremReport> {
    field.expect_domain(DomainTag::Space)?;
    Theorem::new(field, grids)?.report(m)
}

pub fn verify_frequency(spectrum: &SampledField, m: &RayMatrix, grids: &VerifyGrids) -> Result<TheoremReport> {
    spectrum.expect_domain(DomainTag::Frequency)?;
    Theorem::new(spectrum, grids)?.report(m)
}

/// One entry of a sweep; a failed verification is kept as its error.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCase {
    pub field_index: usize,
    pub matrix_index: usize,
    pub outcome: Result<TheoremReport>,
}

/// Every field against every matrix, field-major. Each field's domain picks
/// its mode.
pub fn sweep(fields: &[SampledField], matrices: &[RayMatrix], grids: &VerifyGrids) -> Result<Vec<SweepCase>> {
    if fields.is_empty() {
        return Err(Error::EmptyInput("fields"));
    }
    if matrices.is_empty() {
        return Err(Error::EmptyInput("matrices"));
    }
    let mut cases = Vec::with_capacity(fields.len() * matrices.len());
    for (field_index, field) in fields.iter().enumerate() {
        let theorem = Theorem::new(field, grids);
        for (matrix_index, m) in matrices.iter().enumerate() {
            let outcome = match &theorem {
                Ok(t) => t.report(m),
                Err(e) => Err(e.clone()),
            };
            cases.push(SweepCase {
                field_index,
                matrix_index,
                outcome,
            });
        }
    }
    Ok(cases)
}
