//! Phase-space tomography of paraxial optical systems.
//!
//! Sampled complex fields are pushed through ABCD (ray-matrix) systems with
//! Collins diffraction integrals and compared against Radon projections of
//! their Wigner distributions. Everything here works without `std`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chirplet;
pub mod collins;
pub mod czt;
pub mod error;
pub mod fft;
pub mod field;
pub mod fourier;
pub mod grid;
pub mod interp;
pub mod radon;
pub mod ray;
pub mod theorem;
pub mod wigner;

pub use chirplet::{chirplet_field, chirplet_fresnel_intensity, chirplet_radon, chirplet_wigner, ChirpletParams};
pub use collins::{
    collins_direct_oracle, collins_dual_spatial, collins_frequency, collins_spatial, CollinsPath, KernelMode,
};
pub use error::{Error, Result};
pub use field::{hermite_gauss, l2_norm, sample_function, DomainTag, SampledField};
pub use fourier::{dual_grid, unitary_ft};
pub use grid::{make_centered_grid, Grid1D};
pub use radon::{radon_frequency, radon_spatial, ProjectionMode, RadonProjection};
pub use ray::{compose, dual, fourier_stage, free_space, thin_lens, RayMatrix, RelaySampler};
pub use wigner::{marginal_frequency, marginal_space, wigner_from_spatial, wigner_from_spectrum, WignerDistribution};
pub use theorem::{sweep, verify_frequency, verify_spatial, SweepCase, Theorem, TheoremReport, VerifyGrids};
