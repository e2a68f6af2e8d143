use core::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance on `|AD − BC − 1|` for matrices built in code.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Looser tolerance for matrices typed by a user as decimal text.
pub const PARSE_TOL: f64 = 1e-9;

/// Real 2×2 ray-transfer matrix `[[A, B], [C, D]]` with `AD − BC = 1`,
/// acting on `(x, ν)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl RayMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_tolerance(a, b, c, d, UNIMODULAR_TOL)
    }

    pub fn with_tolerance(a: f64, b: f64, c: f64, d: f64, tol: f64) -> Result<Self> {
        let m = Self { a, b, c, d };
        let det = m.det();
        if !det.is_finite() || (det - 1.0).abs() > tol {
            return Err(Error::NotUnimodular { det });
        }
        Ok(m)
    }

    pub const fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Raw product `self · rhs` (no unimodularity check).
    fn mul(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let (p, q) = (self.to_array(), other.to_array());
        p.iter().zip(&q).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

/// Cascade: `m1` is traversed first, so the result is `m2 · m1`.
pub fn compose(m1: &RayMatrix, m2: &RayMatrix) -> RayMatrix {
    m2.mul(m1)
}

/// `[D, −B, −C, A]`, the inverse of a unimodular matrix.
pub fn dual(m: &RayMatrix) -> RayMatrix {
    RayMatrix {
        a: m.d,
        b: -m.b,
        c: -m.c,
        d: m.a,
    }
}

pub fn free_space(distance: f64) -> RayMatrix {
    RayMatrix { a: 1.0, b: distance, c: 0.0, d: 1.0 }
}

pub fn thin_lens(focal_length: f64) -> Result<RayMatrix> {
    if focal_length == 0.0 || !focal_length.is_finite() {
        return Err(Error::ZeroFocalLength);
    }
    Ok(RayMatrix {
        a: 1.0,
        b: 0.0,
        c: -1.0 / focal_length,
        d: 1.0,
    })
}

/// `(0, 1, −1, 0)`: maps a field onto its angular spectrum.
pub fn fourier_stage() -> RayMatrix {
    RayMatrix { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
}

/// Parses `"A,B,C,D"`.
impl FromStr for RayMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut vals = [0.0; 4];
        let mut parts = s.split(',');
        for v in vals.iter_mut() {
            let part = parts.next().ok_or(Error::Parse("expected four comma-separated numbers A,B,C,D"))?;
            *v = part.trim().parse().map_err(|_| Error::Parse("matrix entry is not a number"))?;
        }
        if parts.next().is_some() {
            return Err(Error::Parse("expected four comma-separated numbers A,B,C,D"));
        }
        Self::with_tolerance(vals[0], vals[1], vals[2], vals[3], PARSE_TOL)
    }
}

/// Draws relay systems `free(d1) → lens(f) → free(d2)` until the product
/// satisfies the configured bounds. Every candidate is a product of
/// unimodular elements, so the result is unimodular by construction.
#[derive(Debug, Clone, Copy)]
pub struct RelaySampler {
    /// Accepted range of `|B|`.
    pub b_abs: (f64, f64),
    /// Accepted range of `|C|`; `None` accepts any.
    pub c_abs: Option<(f64, f64)>,
    /// Upper bound on `|A|` and `|D|`.
    pub max_diagonal: f64,
    /// Free-space distances are drawn from `[-max_distance, max_distance]`.
    pub max_distance: f64,
    /// Lens powers `1/f` are drawn from `±[min_power, max_power]`.
    pub power: (f64, f64),
}

impl RelaySampler {
    pub fn for_spatial(b_abs: (f64, f64)) -> Self {
        Self {
            b_abs,
            c_abs: None,
            max_diagonal: 2.0,
            max_distance: 2.5,
            power: (0.1, 2.0),
        }
    }

    pub fn for_frequency(c_abs: (f64, f64)) -> Self {
        Self {
            b_abs: (0.0, 3.0),
            c_abs: Some(c_abs),
            max_diagonal: 2.0,
            max_distance: 1.5,
            power: c_abs,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RayMatrix {
        loop {
            let d1 = rng.gen_range(-self.max_distance..=self.max_distance);
            let d2 = rng.gen_range(-self.max_distance..=self.max_distance);
            let mut power = rng.gen_range(self.power.0..=self.power.1);
            if rng.gen::<bool>() {
                power = -power;
            }
            let lens = thin_lens(1.0 / power).expect("power is bounded away from zero");
            let m = compose(&compose(&free_space(d1), &lens), &free_space(d2));
            let within = |v: f64, (lo, hi): (f64, f64)| v.abs() >= lo && v.abs() <= hi;
            if within(m.b, self.b_abs)
                && self.c_abs.is_none_or(|r| within(m.c, r))
                && m.a.abs() <= self.max_diagonal
                && m.d.abs() <= self.max_diagonal
            {
                return m;
            }
        }
    }
}
