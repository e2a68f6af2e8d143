//! Interpolation of uniformly sampled data at fractional indices. Reads
//! outside `0..len` are zero (compactly supported data).

use core::ops::{Add, Mul};

use num_traits::Zero;

#[inline]
fn at<T: Copy + Zero>(data: &[T], i: isize) -> T {
    if i >= 0 && (i as usize) < data.len() {
        data[i as usize]
    } else {
        T::zero()
    }
}

/// Piecewise-linear interpolation at fractional index `pos`.
#[inline]
pub fn linear<T>(data: &[T], pos: f64) -> T
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
{
    if !(pos > -1.0 && pos < data.len() as f64) {
        return T::zero();
    }
    let base = libm::floor(pos);
    let t = pos - base;
    let i = base as isize;
    if t == 0.0 {
        return at(data, i);
    }
    at(data, i) * (1.0 - t) + at(data, i + 1) * t
}

/// Four-point cubic Lagrange interpolation at fractional index `pos`;
/// exact on nodes and for cubic polynomials.
#[inline]
pub fn cubic<T>(data: &[T], pos: f64) -> T
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
{
    if !(pos > -2.0 && pos < data.len() as f64 + 1.0) {
        return T::zero();
    }
    let base = libm::floor(pos);
    let t = pos - base;
    let i = base as isize;
    if t == 0.0 {
        return at(data, i);
    }
    let wm1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    let w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    let w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    let w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
    at(data, i - 1) * wm1 + at(data, i) * w0 + at(data, i + 1) * w1 + at(data, i + 2) * w2
}
