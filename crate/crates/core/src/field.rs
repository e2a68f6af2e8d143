use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// Highest Hermite–Gauss order the default grids resolve.
pub const MAX_HERMITE_ORDER: usize = 20;

/// Samples below this fraction of the peak magnitude count as outside the
/// field's support.
pub const SUPPORT_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainTag {
    Space,
    Frequency,
}

impl DomainTag {
    pub fn name(self) -> &'static str {
        match self {
            DomainTag::Space => "space",
            DomainTag::Frequency => "frequency",
        }
    }

    pub fn conjugate(self) -> Self {
        match self {
            DomainTag::Space => DomainTag::Frequency,
            DomainTag::Frequency => DomainTag::Space,
        }
    }
}

/// Complex samples of a field (or its angular spectrum) on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: Grid1D,
    samples: Vec<Complex64>,
    domain: DomainTag,
}

impl SampledField {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>, domain: DomainTag) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::LengthMismatch {
                expected: grid.n(),
                got: samples.len(),
            });
        }
        if let Some(k) = samples.iter().position(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(Error::NonFiniteSample { coord: grid.coord(k) });
        }
        Ok(Self { grid, samples, domain })
    }

    pub fn zeros(grid: Grid1D, domain: DomainTag) -> Self {
        Self {
            grid,
            samples: alloc::vec![Complex64::new(0.0, 0.0); grid.n()],
            domain,
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn domain(&self) -> DomainTag {
        self.domain
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub(crate) fn expect_domain(&self, domain: DomainTag) -> Result<()> {
        if self.domain == domain {
            Ok(())
        } else {
            Err(Error::WrongDomain {
                expected: domain.name(),
                got: self.domain.name(),
            })
        }
    }

    /// `|ψ_k|²` at every node.
    pub fn intensity(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_sqr()).collect()
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// Largest end-sample magnitude relative to the peak; a non-negligible
    /// value means the window truncates the field and the rectangle rule
    /// loses its spectral accuracy.
    pub fn boundary_magnitude(&self) -> f64 {
        let peak = self.peak();
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.samples.len();
        self.samples[0].norm().max(self.samples[n - 1].norm()) / peak
    }

    /// Largest `|coordinate|` among samples above [`SUPPORT_THRESHOLD`]·peak.
    /// Zero for an all-zero field.
    pub fn support_radius(&self) -> f64 {
        let cutoff = SUPPORT_THRESHOLD * self.peak();
        self.samples
            .iter()
            .enumerate()
            .filter(|(_, s)| s.norm() > cutoff)
            .map(|(k, _)| self.grid.coord(k).abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            samples: self.samples.iter().map(|s| s * factor).collect(),
            ..self.clone()
        }
    }

    /// `Σ_i w_i·f_i` over fields sharing one grid and domain.
    pub fn superpose(terms: &[(Complex64, &SampledField)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or(Error::EmptyInput("superposition"))?;
        let mut out = Self::zeros(first.grid, first.domain);
        for (w, f) in terms {
            if f.grid != first.grid {
                return Err(Error::InvalidGrid("superposed fields must share one grid"));
            }
            f.expect_domain(first.domain)?;
            for (o, s) in out.samples.iter_mut().zip(&f.samples) {
                *o += w * s;
            }
        }
        Ok(out)
    }

    /// Rescales to unit [`l2_norm`]; the zero field is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = l2_norm(self);
        if norm == 0.0 {
            self.clone()
        } else {
            self.scaled(Complex64::new(1.0 / norm, 0.0))
        }
    }
}

/// Samples `f` at every grid node.
pub fn sample_function<F>(grid: &Grid1D, f: F, domain: DomainTag) -> Result<SampledField>
where
    F: Fn(f64) -> Complex64,
{
    let samples = grid.coords().map(f).collect();
    SampledField::new(*grid, samples, domain)
}

/// Rectangle-rule `√(Σ|ψ_k|²·dx)`.
pub fn l2_norm(field: &SampledField) -> f64 {
    let sum: f64 = field.samples.iter().map(|s| s.norm_sqr()).sum();
    libm::sqrt(sum * field.grid.dx())
}

/// Rectangle-rule `Σ conj(a_k)·b_k·dx`.
pub fn inner_product(a: &SampledField, b: &SampledField) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::InvalidGrid("inner product needs a shared grid"));
    }
    let sum: Complex64 = a.samples.iter().zip(&b.samples).map(|(x, y)| x.conj() * y).sum();
    Ok(sum * a.grid.dx())
}

/// Hermite–Gauss function of the given order, renormalized under [`l2_norm`].
///
/// Uses the three-term recurrence on the normalized functions
/// `ψ_{n+1} = √(2/(n+1))·x·ψ_n − √(n/(n+1))·ψ_{n−1}` which stays stable
/// where the bare polynomials overflow.
pub fn hermite_gauss(grid: &Grid1D, order: usize) -> Result<SampledField> {
    if order > MAX_HERMITE_ORDER {
        return Err(Error::OrderOutOfRange(order));
    }
    let samples = grid
        .coords()
        .map(|x| Complex64::new(hermite_gauss_value(order, x), 0.0))
        .collect();
    let field = SampledField::new(*grid, samples, DomainTag::Space)?;
    Ok(field.normalized())
}

/// Continuum-normalized Hermite–Gauss value at `x`.
pub fn hermite_gauss_value(order: usize, x: f64) -> f64 {
    let mut prev = libm::pow(PI, -0.25) * libm::exp(-0.5 * x * x);
    if order == 0 {
        return prev;
    }
    let mut cur = core::f64::consts::SQRT_2 * x * prev;
    for n in 1..order {
        let nf = n as f64;
        let next = libm::sqrt(2.0 / (nf + 1.0)) * x * cur - libm::sqrt(nf / (nf + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    cur
}
