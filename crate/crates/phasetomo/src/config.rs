//! Run configuration: a TOML file plus command-line overrides.
//!
//! ```toml
//! [field]
//! kind = "chirplet"          # chirplet | hermite | superposition
//! epsilon = 1.0
//! beta = 0.5
//!
//! [grid]
//! n = 1024
//! half_width = 8.0
//!
//! [run]
//! mode = "spatial"           # spatial | frequency | both
//! matrices = ["1,0.7,0,1", "free:0.7 lens:2.0"]
//! tolerance = 1e-4
//! out_dir = "out"
//! ```
//!
//! Everything is validated by [`RunConfig::resolve`] before any output is
//! written.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use phasetomo_core::{
    chirplet_field, compose, fourier_stage, free_space, hermite_gauss, make_centered_grid, sample_function,
    thin_lens, ChirpletParams, DomainTag, Grid1D, RayMatrix, RelaySampler, SampledField,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpec {
    Chirplet { epsilon: f64, beta: f64 },
    Hermite { order: usize },
    /// Weighted sum of other fields, normalized to unit norm.
    Superposition { terms: Vec<Term> },
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Term {
    /// Complex weight as `[re, im]`.
    pub weight: [f64; 2],
    pub field: FieldSpec,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub n: usize,
    pub half_width: f64,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
    pub half_width: f64,
    /// Frequency axis; defaults to `n` points over the widest window the
    /// position sampling supports, capped at `half_width`.
    pub nu: Option<AxisSpec>,
    /// Comparison grid; defaults to the position axis in spatial mode and
    /// the frequency axis in frequency mode.
    pub out: Option<AxisSpec>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    #[default]
    Spatial,
    Frequency,
    Both,
}

/// Seeded relay systems appended to the explicit matrix list.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RandomMatrices {
    pub count: usize,
    pub seed: u64,
    #[serde(default = "default_b_abs")]
    pub b_abs: [f64; 2],
    /// When set, matrices are drawn for the frequency-domain check.
    pub c_abs: Option<[f64; 2]>,
}

fn default_b_abs() -> [f64; 2] {
    [0.1, 3.0]
}

#[derive(Debug, Clone, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default)]
    pub matrices: Vec<String>,
    pub random: Option<RandomMatrices>,
    pub tolerance: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub run: RunSpec,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub half_width: Option<f64>,
    pub matrices: Vec<String>,
    pub tolerance: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct Plan {
    pub field: SampledField,
    pub x_grid: Grid1D,
    pub nu_grid: Grid1D,
    /// Explicit comparison grid, if configured.
    pub out_grid: Option<Grid1D>,
    pub mode: ModeSpec,
    pub matrices: Vec<RayMatrix>,
    pub tolerance: f64,
    pub out_dir: PathBuf,
    pub half_width: f64,
}

impl Plan {
    pub fn out_for(&self, domain: DomainTag) -> Grid1D {
        self.out_grid.unwrap_or(match domain {
            DomainTag::Space => self.x_grid,
            DomainTag::Frequency => self.nu_grid,
        })
    }
}

impl RunConfig {
    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Applies overrides and validates every field, grid and matrix.
    pub fn resolve(&self, ov: &Overrides) -> CliResult<Plan> {
        let n = ov.n.unwrap_or(self.grid.n);
        let half_width = ov.half_width.unwrap_or(self.grid.half_width);
        let x_grid = centered("grid", n, half_width)?;
        let nu_grid = match self.grid.nu {
            Some(a) => centered("grid.nu", a.n, a.half_width)?,
            None => centered("grid.nu", n, half_width.min(PI / (2.0 * x_grid.dx())))?,
        };
        let out_grid = self.grid.out.map(|a| centered("grid.out", a.n, a.half_width)).transpose()?;
        let field = build_field(&self.field, &x_grid, "field")?;

        let sources = if ov.matrices.is_empty() { &self.run.matrices } else { &ov.matrices };
        let mut matrices = sources
            .iter()
            .enumerate()
            .map(|(i, s)| parse_matrix(s).map_err(|e| CliError::invalid(format!("run.matrices[{i}] \"{s}\""), e)))
            .collect::<CliResult<Vec<_>>>()?;
        if ov.matrices.is_empty() {
            if let Some(r) = &self.run.random {
                matrices.extend(random_matrices(r)?);
            }
        }
        if matrices.is_empty() {
            return Err(CliError::invalid("run.matrices", "no matrices given"));
        }

        let tolerance = ov.tolerance.or(self.run.tolerance).unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(CliError::invalid("run.tolerance", "must be positive"));
        }
        let out_dir = ov
            .out_dir
            .clone()
            .or_else(|| self.run.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("phasetomo-out"));
        Ok(Plan {
            field,
            x_grid,
            nu_grid,
            out_grid,
            mode: self.run.mode,
            matrices,
            tolerance,
            out_dir,
            half_width,
        })
    }
}

fn centered(name: &str, n: usize, half_width: f64) -> CliResult<Grid1D> {
    make_centered_grid(n, half_width).map_err(|e| CliError::invalid(name, e))
}

pub fn build_field(spec: &FieldSpec, grid: &Grid1D, name: &str) -> CliResult<SampledField> {
    let field = match spec {
        FieldSpec::Chirplet { epsilon, beta } => {
            let p = ChirpletParams::new(*epsilon, *beta).map_err(|e| CliError::invalid(name, e))?;
            sample_function(grid, |x| chirplet_field(&p, x), DomainTag::Space)?
        }
        FieldSpec::Hermite { order } => hermite_gauss(grid, *order).map_err(|e| CliError::invalid(name, e))?,
        FieldSpec::Superposition { terms } => {
            if terms.is_empty() {
                return Err(CliError::invalid(name, "superposition has no terms"));
            }
            let parts = terms
                .iter()
                .enumerate()
                .map(|(i, t)| build_field(&t.field, grid, &format!("{name}.terms[{i}]")))
                .collect::<CliResult<Vec<_>>>()?;
            let weighted: Vec<_> = terms
                .iter()
                .zip(&parts)
                .map(|(t, f)| (num_complex::Complex64::new(t.weight[0], t.weight[1]), f))
                .collect();
            let sum = SampledField::superpose(&weighted)?;
            if phasetomo_core::l2_norm(&sum) == 0.0 {
                return Err(CliError::invalid(name, "superposition is identically zero"));
            }
            sum.normalized()
        }
    };
    Ok(field)
}

/// `"A,B,C,D"`, or optical elements applied left to right:
/// `"free:0.7 lens:2.0 fourier"` (separated by whitespace or `;`).
pub fn parse_matrix(text: &str) -> Result<RayMatrix, String> {
    let text = text.trim();
    if text.contains(',') {
        return text.parse::<RayMatrix>().map_err(|e| e.to_string());
    }
    let mut total = RayMatrix::identity();
    let mut seen = false;
    for token in text.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty()) {
        let (name, arg) = match token.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (token, None),
        };
        let value = || -> Result<f64, String> {
            let arg = arg.ok_or_else(|| format!("element '{name}' needs a value, e.g. '{name}:1.0'"))?;
            let v: f64 = arg.parse().map_err(|_| format!("'{arg}' is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("'{arg}' is not finite"))
            }
        };
        let element = match name {
            "free" => free_space(value()?),
            "lens" => thin_lens(value()?).map_err(|e| e.to_string())?,
            "fourier" if arg.is_none() => fourier_stage(),
            _ => return Err(format!("unknown element '{token}' (expected free:D, lens:F or fourier)")),
        };
        total = compose(&total, &element);
        seen = true;
    }
    if seen {
        Ok(total)
    } else {
        Err("empty matrix".to_string())
    }
}

fn random_matrices(r: &RandomMatrices) -> CliResult<Vec<RayMatrix>> {
    let range = |v: [f64; 2], name: &str| {
        if v[0] >= 0.0 && v[0] < v[1] && v[1].is_finite() {
            Ok((v[0], v[1]))
        } else {
            Err(CliError::invalid(format!("run.random.{name}"), "expected [lo, hi] with 0 <= lo < hi"))
        }
    };
    let sampler = match r.c_abs {
        Some(c) => RelaySampler::for_frequency(range(c, "c_abs")?),
        None => RelaySampler::for_spatial(range(r.b_abs, "b_abs")?),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
    Ok((0..r.count).map(|_| sampler.sample(&mut rng)).collect())
}
