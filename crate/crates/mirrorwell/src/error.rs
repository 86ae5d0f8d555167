use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} out of supported range: {value}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("series did not converge within {terms} terms (a={a}, b={b}, z={z})")]
    SeriesNonConvergence { a: f64, b: f64, z: f64, terms: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("energy window [{e_min}, {e_max}] exhausted: found {found} of {requested} eigenvalues")]
    WindowExhausted {
        e_min: f64,
        e_max: f64,
        found: usize,
        requested: usize,
    },

    #[error("wavefunction does not decay at the sample boundaries (|psi| = {boundary:.3e})")]
    InsufficientDecay { boundary: f64 },

    #[error("unknown potential name: {0:?}")]
    UnknownPotential(String),

    #[error("grid too coarse: {points} interior points for {requested} eigenvalues")]
    GridTooCoarse { points: usize, requested: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
