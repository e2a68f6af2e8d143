//! Command implementations. Each returns the files to write and a status;
//! nothing touches the file system until [`write_outputs`].

use std::io::Write;
use std::path::Path;

use log::{info, warn};
use phasetomo_core::{
    chirplet_field, chirplet_radon, collins_dual_spatial, collins_frequency, collins_spatial, dual,
    make_centered_grid, radon_frequency, radon_spatial, sample_function, unitary_ft, wigner_from_spatial,
    wigner_from_spectrum, ChirpletParams, DomainTag, RayMatrix, SampledField, Theorem, TheoremReport, VerifyGrids,
    WignerDistribution,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ModeSpec, Plan};
use crate::error::{CliError, CliResult};
use crate::formats::csv;
use crate::formats::report::{CaseRecord, Report, REPORT_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    ToleranceFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::ToleranceFailure => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    /// `(file name, contents)`, in write order.
    pub files: Vec<(String, String)>,
    pub status: Status,
}

impl Outcome {
    fn pass(files: Vec<(String, String)>) -> Self {
        Self {
            files,
            status: Status::Pass,
        }
    }
}

fn domains(mode: ModeSpec) -> &'static [DomainTag] {
    match mode {
        ModeSpec::Spatial => &[DomainTag::Space],
        ModeSpec::Frequency => &[DomainTag::Frequency],
        ModeSpec::Both => &[DomainTag::Space, DomainTag::Frequency],
    }
}

fn mode_name(domain: DomainTag) -> &'static str {
    match domain {
        DomainTag::Space => "spatial",
        DomainTag::Frequency => "frequency",
    }
}

fn axis_name(domain: DomainTag) -> &'static str {
    match domain {
        DomainTag::Space => "x",
        DomainTag::Frequency => "nu",
    }
}

/// The configured field in the requested domain, sampled on its axis.
fn input_for(plan: &Plan, domain: DomainTag) -> CliResult<SampledField> {
    Ok(match domain {
        DomainTag::Space => plan.field.clone(),
        DomainTag::Frequency => unitary_ft(&plan.field, &plan.nu_grid)?,
    })
}

fn wigner_for(plan: &Plan, domain: DomainTag) -> CliResult<WignerDistribution> {
    let w = match domain {
        DomainTag::Space => wigner_from_spatial(&plan.field, &plan.nu_grid)?,
        DomainTag::Frequency => wigner_from_spectrum(&input_for(plan, domain)?, &plan.x_grid)?,
    };
    if w.is_leaking() {
        warn!("{} Wigner distribution does not decay inside its window", mode_name(domain));
    }
    Ok(w)
}

fn theorem_for(plan: &Plan, domain: DomainTag) -> CliResult<Theorem> {
    let aux = match domain {
        DomainTag::Space => plan.nu_grid,
        DomainTag::Frequency => plan.x_grid,
    };
    let grids = VerifyGrids {
        aux,
        out: plan.out_for(domain),
    };
    Ok(Theorem::new(&input_for(plan, domain)?, &grids)?)
}

/// Both sides of the theorem for every configured mode and matrix.
pub fn verify(plan: &Plan) -> CliResult<Outcome> {
    let theorems: Vec<(DomainTag, Result<Theorem, String>)> = domains(plan.mode)
        .iter()
        .map(|&d| (d, theorem_for(plan, d).map_err(|e| e.to_string())))
        .collect();
    let jobs: Vec<(DomainTag, &Result<Theorem, String>, &RayMatrix)> = theorems
        .iter()
        .flat_map(|(d, t)| plan.matrices.iter().map(move |m| (*d, t, m)))
        .collect();
    let results: Vec<(DomainTag, RayMatrix, Result<TheoremReport, String>)> = jobs
        .par_iter()
        .map(|(d, t, m)| {
            let r = match t {
                Ok(t) => t.report(m).map_err(|e| e.to_string()),
                Err(e) => Err(e.clone()),
            };
            (*d, **m, r)
        })
        .collect();

    let mut files = Vec::new();
    let mut cases = Vec::new();
    let mut failed = None;
    let mut out_of_tolerance = false;
    for (i, (domain, m, result)) in results.into_iter().enumerate() {
        let mut record = CaseRecord {
            mode: mode_name(domain).to_string(),
            matrix: m.to_array(),
            n: plan.x_grid.n(),
            half_width: plan.half_width,
            err_linf: None,
            err_l1: None,
            mass_lhs: None,
            mass_rhs: None,
            pass: false,
            window_leak: None,
            error: None,
        };
        match result {
            Ok(r) => {
                let pass = r.passes(plan.tolerance);
                info!("case {i} ({}, {:?}): err_linf {:.3e}", record.mode, record.matrix, r.err_linf);
                if r.window_leak() {
                    warn!("case {i}: mass leaves the window (lhs {:.6}, rhs {:.6})", r.mass_lhs, r.mass_rhs);
                }
                if r.rhs.has_negative_excursion() {
                    warn!("case {i}: projection dips below the noise floor ({:.3e})", r.rhs.min());
                }
                out_of_tolerance |= !pass;
                let axis = axis_name(domain);
                files.push((format!("case_{i}_lhs.csv"), csv::columns(r.out_grid(), axis, &["lhs"], &[&r.lhs])));
                files.push((
                    format!("case_{i}_rhs.csv"),
                    csv::columns(r.out_grid(), axis, &["rhs"], &[&r.rhs.density]),
                ));
                record.err_linf = Some(r.err_linf);
                record.err_l1 = Some(r.err_l1);
                record.mass_lhs = Some(r.mass_lhs);
                record.mass_rhs = Some(r.mass_rhs);
                record.window_leak = Some(r.window_leak());
                record.pass = pass;
            }
            Err(e) => {
                warn!("case {i} failed: {e}");
                failed.get_or_insert_with(|| e.clone());
                record.error = Some(e);
            }
        }
        cases.push(record);
    }
    let report = Report {
        version: REPORT_VERSION,
        cases,
    };
    files.push(("report.json".to_string(), report.to_json()));
    if let Some(e) = failed {
        // The report still documents every case; the caller writes it
        // before reporting the error.
        return Err(CliError::CaseFailed { message: e, files });
    }
    Ok(Outcome {
        files,
        status: if out_of_tolerance { Status::ToleranceFailure } else { Status::Pass },
    })
}

pub fn wigner(plan: &Plan) -> CliResult<Outcome> {
    let mut files = Vec::new();
    for &d in domains(plan.mode) {
        files.push((format!("wigner_{}.csv", mode_name(d)), csv::wigner(&wigner_for(plan, d)?)));
    }
    Ok(Outcome::pass(files))
}

/// Projections with `(D, B)` of `m` in spatial mode and `(A, C)` in
/// frequency mode.
pub fn radon(plan: &Plan, m: &RayMatrix) -> CliResult<Outcome> {
    let mut files = Vec::new();
    for &d in domains(plan.mode) {
        let w = wigner_for(plan, d)?;
        let out = plan.out_for(d);
        let r = match d {
            DomainTag::Space => radon_spatial(&w, m.d(), m.b(), &out)?,
            DomainTag::Frequency => radon_frequency(&w, m.a(), m.c(), &out)?,
        };
        if r.has_negative_excursion() {
            warn!("projection dips below the noise floor ({:.3e})", r.min());
        }
        files.push((format!("radon_{}.csv", mode_name(d)), csv::columns(&out, axis_name(d), &["R"], &[&r.density])));
    }
    Ok(Outcome::pass(files))
}

/// The output field through `m`, or through its inverse with `dual`.
pub fn propagate(plan: &Plan, m: &RayMatrix, use_dual: bool) -> CliResult<Outcome> {
    let mut files = Vec::new();
    for &d in domains(plan.mode) {
        let input = input_for(plan, d)?;
        let out = plan.out_for(d);
        let field = match (d, use_dual) {
            (DomainTag::Space, false) => collins_spatial(&input, m, &out)?,
            (DomainTag::Space, true) => collins_dual_spatial(&input, m, &out)?,
            (DomainTag::Frequency, false) => collins_frequency(&input, m, &out)?,
            (DomainTag::Frequency, true) => collins_frequency(&input, &dual(m), &out)?,
        };
        files.push((
            format!("propagate_{}.csv", mode_name(d)),
            csv::complex_field(&out, axis_name(d), field.samples()),
        ));
    }
    Ok(Outcome::pass(files))
}

#[derive(Debug, Clone)]
pub struct DemoArgs {
    pub epsilon: f64,
    pub beta: f64,
    pub matrix: RayMatrix,
    pub n: usize,
    pub half_width: f64,
    pub tolerance: f64,
}

impl Default for DemoArgs {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            beta: 0.5,
            matrix: RayMatrix::new(1.0, 0.7, 0.0, 1.0).expect("unimodular"),
            n: 1024,
            half_width: 8.0,
            tolerance: 1e-4,
        }
    }
}

#[derive(Debug, Serialize)]
struct DemoSummary {
    epsilon: f64,
    beta: f64,
    matrix: [f64; 4],
    n: usize,
    half_width: f64,
    /// Deviation is measured where `|x| <= compare_half_width`.
    compare_half_width: f64,
    max_deviation: f64,
    tolerance: f64,
    pass: bool,
}

/// Numerical output intensity of a Gaussian chirplet next to its
/// closed-form projection.
pub fn chirplet_demo(args: &DemoArgs) -> CliResult<Outcome> {
    let p = ChirpletParams::new(args.epsilon, args.beta).map_err(|e| CliError::invalid("epsilon", e))?;
    let grid = make_centered_grid(args.n, args.half_width).map_err(|e| CliError::invalid("grid", e))?;
    let field = sample_function(&grid, |x| chirplet_field(&p, x), DomainTag::Space)?;
    let m = &args.matrix;
    let lhs = collins_dual_spatial(&field, m, &grid)?.intensity();
    let rhs = grid
        .coords()
        .map(|x| chirplet_radon(&p, m.d(), m.b(), x))
        .collect::<Result<Vec<f64>, _>>()?;
    // stay clear of the window edge, where the sampled field is truncated
    let compare_half_width = 0.75 * args.half_width;
    let max_deviation = grid
        .coords()
        .zip(lhs.iter().zip(&rhs))
        .filter(|(x, _)| x.abs() <= compare_half_width)
        .map(|(_, (l, r))| (l - r).abs())
        .fold(0.0, f64::max);
    let pass = max_deviation <= args.tolerance;
    info!("chirplet demo: max deviation {max_deviation:.3e}");
    let summary = DemoSummary {
        epsilon: args.epsilon,
        beta: args.beta,
        matrix: m.to_array(),
        n: args.n,
        half_width: args.half_width,
        compare_half_width,
        max_deviation,
        tolerance: args.tolerance,
        pass,
    };
    let mut json = serde_json::to_string_pretty(&summary).expect("summary is plain data");
    json.push('\n');
    Ok(Outcome {
        files: vec![
            ("chirplet_demo.csv".to_string(), csv::columns(&grid, "x", &["lhs", "rhs"], &[&lhs, &rhs])),
            ("summary.json".to_string(), json),
        ],
        status: if pass { Status::Pass } else { Status::ToleranceFailure },
    })
}

/// Writes every file through a temporary in the target directory and
/// renames it into place.
pub fn write_outputs(dir: &Path, files: &[(String, String)]) -> CliResult<()> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    for (name, contents) in files {
        let target = dir.join(name);
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
        tmp.write_all(contents.as_bytes()).map_err(io(&target))?;
        tmp.persist(&target).map_err(|e| CliError::Io {
            path: target.clone(),
            source: e.error,
        })?;
    }
    Ok(())
}
