use crate::error::{Error, Result};
use crate::czt::Lattice;

/// Uniform sampling lattice for one real coordinate (position or spatial
/// frequency). Node `k` sits at `x0 + k·dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    dx: f64,
    x0: f64,
}

impl Grid1D {
    pub fn new(n: usize, dx: f64, x0: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid("need at least two samples"));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid("spacing must be finite and positive"));
        }
        if !x0.is_finite() || !(n as f64 * dx).is_finite() {
            return Err(Error::InvalidGrid("grid extent must be finite"));
        }
        Ok(Self { n, dx, x0 })
    }

    /// Symmetric grid on `[-half_width, half_width)` with node `n/2` at exactly 0.
    pub fn centered(n: usize, half_width: f64) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid("centered grid needs an even sample count"));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid("half-width must be finite and positive"));
        }
        let grid = Self::new(n, 2.0 * half_width / n as f64, -half_width)?;
        debug_assert_eq!(grid.coord(n / 2), 0.0);
        Ok(grid)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn x0(&self) -> f64 {
        self.x0
    }

    #[inline]
    pub fn coord(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.dx
    }

    pub fn coords(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.coord(k))
    }

    pub fn last(&self) -> f64 {
        self.coord(self.n - 1)
    }

    /// `n·dx`.
    pub fn span(&self) -> f64 {
        self.n as f64 * self.dx
    }

    /// Largest `|coordinate|` on the grid.
    pub fn max_abs(&self) -> f64 {
        self.x0.abs().max(self.last().abs())
    }

    /// Fractional index of coordinate `x` (may lie outside `0..n-1`).
    #[inline]
    pub fn position(&self, x: f64) -> f64 {
        (x - self.x0) / self.dx
    }

    pub(crate) fn lattice(&self) -> Lattice {
        Lattice::new(self.x0, self.dx, self.n)
    }

    /// Same node count and spacing, shifted so that node 0 sits at `x0`.
    pub fn with_origin(&self, x0: f64) -> Self {
        Self { x0, ..*self }
    }
}

/// Centered grid with spacing `2·half_width/n`; rejects odd `n`.
pub fn make_centered_grid(n: usize, half_width: f64) -> Result<Grid1D> {
    Grid1D::centered(n, half_width)
}
