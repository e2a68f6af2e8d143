//! Acceptance criteria AC1–AC7, one PASS/FAIL line each.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use phasetomo_core::chirplet::{output_exponent, projection_exponent};
use phasetomo_core::collins::spatial_path;
use phasetomo_core::{
    chirplet_field, chirplet_radon, collins_direct_oracle, collins_dual_spatial, collins_frequency, collins_spatial,
    compose, dual, fourier_stage, hermite_gauss, l2_norm, make_centered_grid, marginal_frequency, marginal_space,
    radon_spatial, sample_function, sweep, unitary_ft, wigner_from_spatial, ChirpletParams, CollinsPath, DomainTag,
    Grid1D, KernelMode, RayMatrix, RelaySampler, SampledField, VerifyGrids,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_complex_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn chirplet(g: &Grid1D, e: f64, b: f64) -> SampledField {
    let p = ChirpletParams::new(e, b).unwrap();
    sample_function(g, |x| chirplet_field(&p, x), DomainTag::Space).unwrap()
}

/// HG₀..HG₃ and the normalized mixture HG₀ + 0.5i·HG₂.
fn field_set(g: &Grid1D) -> Vec<SampledField> {
    let mut fields: Vec<SampledField> = (0..4).map(|k| hermite_gauss(g, k).unwrap()).collect();
    let mix = SampledField::superpose(&[(Complex64::new(1.0, 0.0), &fields[0]), (Complex64::new(0.0, 0.5), &fields[2])])
        .unwrap()
        .normalized();
    fields.push(mix);
    fields
}

fn relays(sampler: RelaySampler, seed: u64) -> Vec<RayMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10).map(|_| sampler.sample(&mut rng)).collect()
}

fn worst_sweep(fields: &[SampledField], ms: &[RayMatrix], grids: &VerifyGrids) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for case in sweep(fields, ms, grids).map_err(|e| e.to_string())? {
        let r = case
            .outcome
            .map_err(|e| format!("field {} matrix {}: {e}", case.field_index, case.matrix_index))?;
        worst = worst.max(r.err_linf);
    }
    Ok(worst)
}

fn ac1() -> Verdict {
    let start = Instant::now();
    let g = make_centered_grid(1024, 8.0).unwrap();
    let p = ChirpletParams::new(1.0, 0.5).unwrap();
    let m = RayMatrix::new(1.0, 0.7, 0.0, 1.0).unwrap();
    let f = chirplet(&g, 1.0, 0.5);
    let out = collins_dual_spatial(&f, &m, &g).unwrap().intensity();
    let radon = radon_spatial(&wigner_from_spatial(&f, &g).unwrap(), m.d(), m.b(), &g).unwrap();
    let elapsed = start.elapsed();
    let exact: Vec<f64> = g.coords().map(|x| chirplet_radon(&p, m.d(), m.b(), x).unwrap()).collect();
    let inner: Vec<usize> = (0..g.n()).filter(|&k| g.coord(k).abs() <= 6.0).collect();
    let intensity_err = inner.iter().map(|&k| (out[k] - exact[k]).abs()).fold(0.0, f64::max);
    let radon_err = max_abs_diff(&radon.density, &exact);
    verdict(
        intensity_err <= 1e-4 && radon_err <= 1e-3 && elapsed <= Duration::from_secs(10),
        format!("|output|² vs closed form {intensity_err:.2e} (≤1e-4), projection vs closed form {radon_err:.2e} (≤1e-3), {elapsed:.2?} (≤10 s)"),
    )
}

fn ac2() -> Verdict {
    let start = Instant::now();
    let ms = relays(RelaySampler::for_spatial((0.1, 3.0)), 2024);
    let mut errs = Vec::new();
    for n in [1024, 2048] {
        let g = make_centered_grid(n, 8.0).unwrap();
        match worst_sweep(&field_set(&g), &ms, &VerifyGrids { aux: g, out: g }) {
            Ok(e) => errs.push(e),
            Err(e) => return verdict(false, e),
        }
    }
    let elapsed = start.elapsed();
    verdict(
        errs[0] <= 1e-3 && errs[1] <= 1e-4 && elapsed <= Duration::from_secs(120),
        format!(
            "50 cases, worst err_linf {:.2e} at n=1024 (≤1e-3), {:.2e} at n=2048 (≤1e-4), {elapsed:.2?} (≤2 min)",
            errs[0], errs[1]
        ),
    )
}

fn ac3() -> Verdict {
    let ms = relays(RelaySampler::for_frequency((0.1, 3.0)), 2025);
    let g = make_centered_grid(1024, 8.0).unwrap();
    let spectra: Vec<SampledField> = field_set(&g).iter().map(|f| unitary_ft(f, &g).unwrap()).collect();
    match worst_sweep(&spectra, &ms, &VerifyGrids { aux: g, out: g }) {
        Ok(e) => verdict(e <= 1e-3, format!("50 cases, worst err_linf {e:.2e} at n=1024 (≤1e-3)")),
        Err(e) => verdict(false, e),
    }
}

fn ac4() -> Verdict {
    let g = make_centered_grid(1024, 8.0).unwrap();
    let (mut space, mut freq, mut shared) = (0.0f64, 0.0f64, 0.0f64);
    for f in field_set(&g) {
        let w = wigner_from_spatial(&f, &g).unwrap();
        let ms = marginal_space(&w);
        space = space.max(max_abs_diff(&ms, &f.intensity()));
        freq = freq.max(max_abs_diff(&marginal_frequency(&w), &unitary_ft(&f, &g).unwrap().intensity()));
        shared = shared.max(max_abs_diff(&radon_spatial(&w, 1.0, 0.0, &g).unwrap().density, &ms));
    }
    verdict(
        space <= 1e-4 && freq <= 1e-4 && shared <= 1e-10,
        format!("space marginal {space:.2e}, frequency marginal {freq:.2e} (≤1e-4), axis projection {shared:.2e} (≤1e-10)"),
    )
}

fn ac5() -> Verdict {
    let g = make_centered_grid(512, 8.0).unwrap();
    let f = chirplet(&g, 1.0, 0.5);
    let spec = unitary_ft(&f, &g).unwrap();
    let m = RayMatrix::new(1.0, 0.7, 0.0, 1.0).unwrap();
    let mf = RayMatrix::new(1.5, 0.5, 1.0, 1.0).unwrap();
    let chirp = spatial_path(&f, &m, &g) == Ok(CollinsPath::Chirp) && spatial_path(&f, &dual(&m), &g) == Ok(CollinsPath::Chirp);
    let spatial = max_complex_diff(
        collins_spatial(&f, &m, &g).unwrap().samples(),
        collins_direct_oracle(&f, &m, &g, KernelMode::Spatial).unwrap().samples(),
    );
    let dual_err = max_complex_diff(
        collins_dual_spatial(&f, &m, &g).unwrap().samples(),
        collins_direct_oracle(&f, &m, &g, KernelMode::Dual).unwrap().samples(),
    );
    let freq = max_complex_diff(
        collins_frequency(&spec, &mf, &g).unwrap().samples(),
        collins_direct_oracle(&spec, &mf, &g, KernelMode::Frequency).unwrap().samples(),
    );

    let big = make_centered_grid(1024, 8.0).unwrap();
    let fb = chirplet(&big, 1.0, 0.5);
    let sb = unitary_ft(&fb, &big).unwrap();
    let norms = [
        l2_norm(&collins_spatial(&fb, &m, &big).unwrap()),
        l2_norm(&collins_dual_spatial(&fb, &m, &big).unwrap()),
        l2_norm(&collins_frequency(&sb, &mf, &big).unwrap()),
    ];
    let norm_err = norms.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    let worst = spatial.max(dual_err).max(freq);
    verdict(
        chirp && worst <= 1e-10 && norm_err <= 1e-6,
        format!("fast vs direct sum: spatial {spatial:.2e}, dual {dual_err:.2e}, frequency {freq:.2e} (≤1e-10); norm drift {norm_err:.2e} (≤1e-6)"),
    )
}

fn ac6() -> Verdict {
    let mut ms = relays(RelaySampler::for_spatial((0.1, 3.0)), 6);
    ms.extend([RayMatrix::new(1.0, 0.7, 0.0, 1.0).unwrap(), RayMatrix::new(1.5, 0.5, 1.0, 1.0).unwrap(), fourier_stage()]);
    let inverse = ms
        .iter()
        .map(|m| compose(m, &dual(m)).max_abs_diff(&RayMatrix::identity()))
        .fold(0.0, f64::max);

    let mut identity = 0.0f64;
    for e in [0.5, 1.0, 2.0] {
        for beta in [-1.0, 0.0, 0.5] {
            let p = ChirpletParams::new(e, beta).unwrap();
            for m in &ms {
                let z = output_exponent(&p, m.d(), m.b());
                let sum = z + z.conj();
                let want = e / ((m.d() - m.b() * beta).powi(2) + m.b() * m.b() * e * e);
                identity = identity.max((sum.re - want).abs()).max(sum.im.abs());
                identity = identity.max((projection_exponent(&p, m.d(), m.b()) - want).abs());
            }
        }
    }

    let g = make_centered_grid(1024, 8.0).unwrap();
    let f = chirplet(&g, 1.0, 0.5);
    let duality = ms
        .iter()
        .map(|m| {
            let a = collins_dual_spatial(&f, m, &g).unwrap();
            let b = collins_spatial(&f, &dual(m), &g).unwrap();
            max_complex_diff(a.samples(), b.samples())
        })
        .fold(0.0, f64::max);
    verdict(
        inverse <= 1e-10 && identity <= 1e-12 && duality <= 1e-10,
        format!("m·dual(m) − I {inverse:.2e} (≤1e-10), exponent identity {identity:.2e} (≤1e-12), kernel duality {duality:.2e} (≤1e-10)"),
    )
}

fn ac7() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_phasetomo");
    let ac1 = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join("ac1.toml");
    let tmp = tempfile::tempdir().unwrap();
    let dir = |name: &str| tmp.path().join(name).to_str().unwrap().to_string();
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap_or(-1);

    let demo = run(&["chirplet-demo", "--out-dir", &dir("demo")]);
    let deviation = std::fs::read_to_string(tmp.path().join("demo").join("summary.json"))
        .ok()
        .and_then(|t| serde_json::from_str::<serde_json::Value>(&t).ok())
        .and_then(|v| v["max_deviation"].as_f64())
        .unwrap_or(f64::INFINITY);
    let ac1 = ac1.to_str().unwrap();
    let det = run(&["verify", "--config", ac1, "--matrix", "1,0.7,0,2", "--out-dir", &dir("det")]);
    let coarse = run(&["verify", "--config", ac1, "--n", "64", "--out-dir", &dir("coarse")]);
    verdict(
        demo == 0 && deviation <= 1e-4 && det == 1 && coarse == 2,
        format!("demo exit {demo} with deviation {deviation:.2e}, det≠1 exit {det}, n=64 exit {coarse} (want 0, 1, 2)"),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check); 7] =
        [("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7)];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        println!("{name} {}  {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
