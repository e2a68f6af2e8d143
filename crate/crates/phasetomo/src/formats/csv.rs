//! Plot-ready CSV tables. Every float is printed with 17 significant
//! digits, which round-trips `f64` exactly.

use num_complex::Complex64;
use phasetomo_core::{Grid1D, WignerDistribution};

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn table<I>(header: Vec<String>, rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Header row plus one row per grid point.
pub fn columns(grid: &Grid1D, axis: &str, names: &[&str], data: &[&[f64]]) -> String {
    debug_assert_eq!(names.len(), data.len());
    let header = std::iter::once(axis).chain(names.iter().copied()).map(String::from).collect();
    let rows = grid
        .coords()
        .enumerate()
        .map(|(k, x)| std::iter::once(x).chain(data.iter().map(|col| col[k])).map(float).collect());
    table(header, rows)
}

/// `axis,re,im,intensity`.
pub fn complex_field(grid: &Grid1D, axis: &str, samples: &[Complex64]) -> String {
    let re: Vec<f64> = samples.iter().map(|s| s.re).collect();
    let im: Vec<f64> = samples.iter().map(|s| s.im).collect();
    let intensity: Vec<f64> = samples.iter().map(|s| s.norm_sqr()).collect();
    columns(grid, axis, &["re", "im", "intensity"], &[&re, &im, &intensity])
}

/// Row-major table: the header holds the frequency values, each row starts
/// with its position.
pub fn wigner(w: &WignerDistribution) -> String {
    let header = std::iter::once("x\\nu".to_string()).chain(w.nu_grid().coords().map(float)).collect();
    let rows = w
        .x_grid()
        .coords()
        .enumerate()
        .map(|(i, x)| std::iter::once(x).chain(w.row(i).iter().copied()).map(float).collect());
    table(header, rows)
}
