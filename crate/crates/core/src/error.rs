use thiserror::Error;

/// Everything that can go wrong inside the core toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("non-finite field value at coordinate {coord}")]
    NonFiniteSample { coord: f64 },

    #[error("sample count {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("expected a {expected} field, got a {got} field")]
    WrongDomain {
        expected: &'static str,
        got: &'static str,
    },

    #[error("target grid exceeds the representable band: half-width {half_width} > {max_representable}")]
    Nyquist {
        half_width: f64,
        max_representable: f64,
    },

    #[error("{which} chirp is undersampled; a grid of at least {required_n} samples is needed")]
    Undersampled {
        which: &'static str,
        required_n: usize,
    },

    #[error("hermite-gauss order {0} out of range (max {max})", max = crate::field::MAX_HERMITE_ORDER)]
    OrderOutOfRange(usize),

    #[error("ray matrix is not unimodular: determinant AD - BC = {det}, expected 1")]
    NotUnimodular { det: f64 },

    #[error("thin lens focal length must be non-zero")]
    ZeroFocalLength,

    #[error("degenerate line family: both line parameters are zero")]
    DegenerateLine,

    #[error("degenerate kernel parameter for the requested mode (|{0}| too small)")]
    DegenerateKernel(&'static str),

    #[error("direct quadrature limited to {max} samples, got {got}")]
    TooLarge { max: usize, got: usize },

    #[error("chirplet epsilon must be positive, got {0}")]
    InvalidChirplet(f64),

    #[error("empty {0} list")]
    EmptyInput(&'static str),

    #[error("cannot parse ray matrix: {0}")]
    Parse(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
