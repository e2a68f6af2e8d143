//! Collins diffraction integrals for paraxial ABCD systems.
//!
//! Every public entry point reduces to one engine that applies
//!
//! ```text
//! φ(x) = 1/√(2πi·b) ∫ exp[(i/2b)(a·x′² − 2x′x + d·x²)] ψ(x′) dx′
//! ```
//!
//! for some unimodular `(a, b, c, d)`:
//!
//! * [`collins_spatial`] uses the system matrix itself;
//! * [`collins_dual_spatial`] uses `[D, −B, −C, A]`, the inverse system;
//! * [`collins_frequency`] acts on angular spectra and uses `(A, C, B, D)`,
//!   i.e. the integral with prefactor `1/√(2πiC)` and phase
//!   `(i/2C)(D·ν² − 2ν′ν + A·ν′²)`.
//!
//! The engine picks one of three evaluation paths:
//!
//! * **chirp**: pre-chirp `e^{iax′²/2b}`, a fractional-stride Fourier sum
//!   with kernel `e^{−ix′x/b}` (chirp-z), post-chirp `e^{idx²/2b}`. This is
//!   the rectangle-rule quadrature of the integral, refactored; it is used
//!   whenever its chirps are resolved by the grids.
//! * **split**: for small `|b|` the kernel chirps cannot be sampled, but the
//!   factorization `[[a,b],[c,d]] = lens(c/a) · scale(a) · free(b/a)` can: the
//!   free-space part is a transfer function `e^{−i(b/a)ν²/2}` on the
//!   spectrum, and the scaling is a Fourier-series evaluation at `x/a`.
//! * **degenerate**: `|b| ≤ 1e-9·dx²`, where the integral collapses to
//!   `φ(x) = (1/√a)·e^{icx²/2a}·ψ(x/a)`.
//!
//! Square roots are taken on the principal branch. The branch only changes
//! a global phase; intensities do not depend on it.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::czt::{Lattice, ScaledDft};
use crate::error::{Error, Result};
use crate::field::{DomainTag, SampledField, SUPPORT_THRESHOLD};
use crate::fourier::{dual_grid, LIMIT_SLACK};
use crate::grid::Grid1D;
use crate::interp;
use crate::ray::{dual, RayMatrix};

/// Cost guard for [`collins_direct_oracle`].
pub const MAX_DIRECT_SAMPLES: usize = 4096;

/// `|b|` below `DEGENERATE_FACTOR·dx²` takes the degenerate path.
pub const DEGENERATE_FACTOR: f64 = 1e-9;

/// Evaluation strategy chosen by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollinsPath {
    Degenerate,
    Chirp,
    Split,
}

/// Which literal kernel [`collins_direct_oracle`] sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    /// `1/√(2πiB)·exp[(i/2B)(Ax′² − 2x′x + Dx²)]` on spatial fields.
    Spatial,
    /// `1/√(−2πiB)·exp[(−i/2B)(Dx′² − 2x′x + Ax²)]` on spatial fields.
    Dual,
    /// `1/√(2πiC)·exp[(i/2C)(Dν² − 2ν′ν + Aν′²)]` on angular spectra.
    Frequency,
}

#[inline]
fn cis(phase: f64) -> Complex64 {
    Complex64::new(libm::cos(phase), libm::sin(phase))
}

/// Engine parameters; `(a, b, c, d)` in the Collins form above.
#[derive(Debug, Clone, Copy)]
struct Lct {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl From<&RayMatrix> for Lct {
    fn from(m: &RayMatrix) -> Self {
        Self {
            a: m.a(),
            b: m.b(),
            c: m.c(),
            d: m.d(),
        }
    }
}

/// `-1` flips every square-root branch; used to check that intensities do
/// not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Branch {
    Principal,
    #[cfg_attr(not(test), allow(dead_code))]
    Negated,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Principal => 1.0,
            Branch::Negated => -1.0,
        }
    }
}

fn required_n(span: f64, dx_needed: f64) -> usize {
    let n = libm::ceil(span / dx_needed) as usize;
    n + n % 2
}

fn within(rate: f64, limit: f64) -> bool {
    rate <= limit * (1.0 + LIMIT_SLACK)
}

fn check_chirp_path(lct: &Lct, grid: &Grid1D, support: f64, out: &Grid1D) -> Result<()> {
    let (a, b, d) = (lct.a.abs(), lct.b.abs(), lct.d.abs());
    let out_reach = out.max_abs();
    let in_limit = PI / grid.dx();
    // local frequency of the pre-chirp over the field's support
    let pre = a * support / b;
    if !within(pre, in_limit) {
        return Err(Error::Undersampled {
            which: "input",
            required_n: required_n(grid.span(), PI * b / (a * support)),
        });
    }
    // the Fourier kernel e^{-ix′x/b}, sampled in x′
    let kernel = out_reach / b;
    if !within(kernel, in_limit) {
        return Err(Error::Undersampled {
            which: "kernel",
            required_n: required_n(grid.span(), PI * b / out_reach),
        });
    }
    let post = d * out_reach / b;
    if !within(post, PI / out.dx()) {
        return Err(Error::Undersampled {
            which: "output",
            required_n: required_n(out.span(), PI * b / (d * out_reach)),
        });
    }
    Ok(())
}

fn check_split_path(lct: &Lct, grid: &Grid1D, support: f64, spectral_support: f64, out: &Grid1D) -> Result<()> {
    if lct.a.abs() <= 1e-12 {
        return Err(Error::DegenerateKernel("a"));
    }
    // Free propagation by b/a moves spectral content ν to x + (b/a)ν; it has
    // to stay inside the periodic window.
    let reach = support + (lct.b / lct.a).abs() * spectral_support;
    let half_span = 0.5 * grid.span();
    if !within(reach, half_span) {
        return Err(Error::Undersampled {
            which: "input",
            required_n: required_n(2.0 * reach, grid.dx()),
        });
    }
    let out_reach = out.max_abs();
    let post = (lct.c / lct.a).abs() * out_reach;
    if !within(post, PI / out.dx()) {
        return Err(Error::Undersampled {
            which: "output",
            required_n: required_n(out.span(), PI / ((lct.c / lct.a).abs() * out_reach)),
        });
    }
    Ok(())
}

fn support_radius(samples: &[Complex64], grid: &Grid1D) -> f64 {
    let peak = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let cutoff = SUPPORT_THRESHOLD * peak;
    samples
        .iter()
        .enumerate()
        .filter(|(_, s)| s.norm() > cutoff)
        .map(|(k, _)| grid.coord(k).abs())
        .fold(0.0, f64::max)
}

/// Rectangle-rule unitary transform of raw samples onto `target`.
fn transform(samples: &[Complex64], grid: &Grid1D, target: &Grid1D, sigma: f64) -> Vec<Complex64> {
    let scale = grid.dx() / libm::sqrt(2.0 * PI);
    ScaledDft::new(grid.lattice(), target.lattice(), sigma)
        .apply(samples)
        .into_iter()
        .map(|v| v * scale)
        .collect()
}

fn choose_path(samples: &[Complex64], grid: &Grid1D, lct: &Lct, out: &Grid1D) -> Result<CollinsPath> {
    if lct.b.abs() <= DEGENERATE_FACTOR * grid.dx() * grid.dx() {
        if lct.a.abs() <= 1e-12 {
            return Err(Error::DegenerateKernel("a"));
        }
        return Ok(CollinsPath::Degenerate);
    }
    let support = support_radius(samples, grid);
    if support == 0.0 {
        // zero field: any path returns zero
        return Ok(CollinsPath::Chirp);
    }
    match check_chirp_path(lct, grid, support, out) {
        Ok(()) => Ok(CollinsPath::Chirp),
        Err(chirp_err) => {
            let spec_grid = dual_grid(grid);
            let spectrum = transform(samples, grid, &spec_grid, -1.0);
            let spectral_support = support_radius(&spectrum, &spec_grid);
            check_split_path(lct, grid, support, spectral_support, out)
                .map(|_| CollinsPath::Split)
                .map_err(|_| chirp_err)
        }
    }
}

fn run_path(
    samples: &[Complex64],
    grid: &Grid1D,
    lct: &Lct,
    out: &Grid1D,
    path: CollinsPath,
    branch: Branch,
) -> Vec<Complex64> {
    let Lct { a, b, c, d } = *lct;
    match path {
        CollinsPath::Degenerate => {
            let amp = Complex64::new(a, 0.0).sqrt().inv() * branch.sign();
            out.coords()
                .map(|x| amp * cis(0.5 * c / a * x * x) * interp::cubic(samples, grid.position(x / a)))
                .collect()
        }
        CollinsPath::Chirp => {
            let prefactor = Complex64::new(0.0, 2.0 * PI * b).sqrt().inv() * (branch.sign() * grid.dx());
            let pre: Vec<Complex64> = samples
                .iter()
                .zip(grid.coords())
                .map(|(s, x)| s * cis(0.5 * a / b * x * x))
                .collect();
            let plan = ScaledDft::new(grid.lattice(), out.lattice(), -1.0 / b);
            plan.apply(&pre)
                .into_iter()
                .zip(out.coords())
                .map(|(v, x)| v * prefactor * cis(0.5 * d / b * x * x))
                .collect()
        }
        CollinsPath::Split => {
            let ratio = b / a;
            let spec_grid = dual_grid(grid);
            let mut spectrum = transform(samples, grid, &spec_grid, -1.0);
            for (s, nu) in spectrum.iter_mut().zip(spec_grid.coords()) {
                *s *= cis(-0.5 * ratio * nu * nu);
            }
            let scaled = Lattice::new(out.x0() / a, out.dx() / a, out.n());
            let back = ScaledDft::new(spec_grid.lattice(), scaled, 1.0).apply(&spectrum);
            let back_scale = spec_grid.dx() / libm::sqrt(2.0 * PI);
            // Phase of the stationary-phase limit of the Collins prefactor,
            // so this path continues the chirp path without a sign jump.
            let quarter = 0.25 * PI * (libm::copysign(1.0, a) * libm::copysign(1.0, b) - libm::copysign(1.0, b));
            let amp = cis(quarter) * (branch.sign() / libm::sqrt(a.abs()));
            let (lo, hi) = (grid.x0(), grid.last());
            back.into_iter()
                .zip(out.coords())
                .map(|(v, x)| {
                    let y = x / a;
                    if y < lo || y > hi {
                        Complex64::new(0.0, 0.0)
                    } else {
                        v * back_scale * amp * cis(0.5 * c / a * x * x)
                    }
                })
                .collect()
        }
    }
}

fn apply_lct(field: &SampledField, lct: Lct, out: &Grid1D, branch: Branch) -> Result<SampledField> {
    let path = choose_path(field.samples(), field.grid(), &lct, out)?;
    let samples = run_path(field.samples(), field.grid(), &lct, out, path, branch);
    SampledField::new(*out, samples, field.domain())
}

/// Path the engine would take for `collins_spatial(field, m, out)`.
pub fn spatial_path(field: &SampledField, m: &RayMatrix, out: &Grid1D) -> Result<CollinsPath> {
    choose_path(field.samples(), field.grid(), &Lct::from(m), out)
}

/// Collins integral of a spatial field through `m`.
pub fn collins_spatial(field: &SampledField, m: &RayMatrix, out: &Grid1D) -> Result<SampledField> {
    field.expect_domain(DomainTag::Space)?;
    apply_lct(field, Lct::from(m), out, Branch::Principal)
}

/// Collins integral through the inverse system `[D, −B, −C, A]`.
pub fn collins_dual_spatial(field: &SampledField, m: &RayMatrix, out: &Grid1D) -> Result<SampledField> {
    field.expect_domain(DomainTag::Space)?;
    apply_lct(field, Lct::from(&dual(m)), out, Branch::Principal)
}

fn frequency_lct(m: &RayMatrix) -> Lct {
    Lct {
        a: m.a(),
        b: m.c(),
        c: m.b(),
        d: m.d(),
    }
}

/// Angular-spectrum Collins integral with kernel
/// `1/√(2πiC)·exp[(i/2C)(Dν² − 2ν′ν + Aν′²)]`. For `C → 0` the output is
/// `(1/√A)·e^{iBν²/2A}·ψ̃(ν/A)`.
pub fn collins_frequency(spectrum: &SampledField, m: &RayMatrix, out: &Grid1D) -> Result<SampledField> {
    spectrum.expect_domain(DomainTag::Frequency)?;
    apply_lct(spectrum, frequency_lct(m), out, Branch::Principal)
}

/// Literal O(N²) rectangle-rule sum of the selected kernel.
pub fn collins_direct_oracle(
    field: &SampledField,
    m: &RayMatrix,
    out: &Grid1D,
    mode: KernelMode,
) -> Result<SampledField> {
    let grid = field.grid();
    let n = grid.n().max(out.n());
    if n > MAX_DIRECT_SAMPLES {
        return Err(Error::TooLarge {
            max: MAX_DIRECT_SAMPLES,
            got: n,
        });
    }
    let eps = DEGENERATE_FACTOR * grid.dx() * grid.dx();
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let kernel: &dyn Fn(f64, f64) -> Complex64 = match mode {
        KernelMode::Spatial | KernelMode::Dual => {
            field.expect_domain(DomainTag::Space)?;
            if b.abs() <= eps {
                return Err(Error::DegenerateKernel("B"));
            }
            if mode == KernelMode::Spatial {
                &move |x: f64, xp: f64| {
                    let pref = Complex64::new(0.0, 2.0 * PI * b).sqrt().inv();
                    pref * cis(0.5 / b * (a * xp * xp - 2.0 * xp * x + d * x * x))
                }
            } else {
                &move |x: f64, xp: f64| {
                    let pref = Complex64::new(0.0, -2.0 * PI * b).sqrt().inv();
                    pref * cis(-0.5 / b * (d * xp * xp - 2.0 * xp * x + a * x * x))
                }
            }
        }
        KernelMode::Frequency => {
            field.expect_domain(DomainTag::Frequency)?;
            if c.abs() <= eps {
                return Err(Error::DegenerateKernel("C"));
            }
            &move |nu: f64, nup: f64| {
                let pref = Complex64::new(0.0, 2.0 * PI * c).sqrt().inv();
                pref * cis(0.5 / c * (d * nu * nu - 2.0 * nup * nu + a * nup * nup))
            }
        }
    };
    let dx = grid.dx();
    let samples = out
        .coords()
        .map(|x| {
            field
                .samples()
                .iter()
                .zip(grid.coords())
                .map(|(s, xp)| kernel(x, xp) * s)
                .sum::<Complex64>()
                * dx
        })
        .collect();
    SampledField::new(*out, samples, field.domain())
}
