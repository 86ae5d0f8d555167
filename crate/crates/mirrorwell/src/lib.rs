//! Exact spectra and eigenfunctions of the piecewise-analytic double
//! well min[(x+d)², (x−d)²] and its dual single well max[(x+d)², (x−d)²].
//!
//! The analytic route evaluates confluent hypergeometric connection
//! conditions at the origin and root-finds them in the energy; the
//! polynomial route solves Hermite-type constraints for the special
//! closed-form states; a finite-difference oracle cross-checks both and
//! handles the potentials with no analytic treatment.

pub mod connection;
pub mod error;
pub mod export;
mod extended;
pub mod oracle;
pub mod polyparams;
pub mod potentials;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;
pub mod tridiag;
pub mod wavefun;

pub use connection::{condition, ConditionValue, ParitySector, WellKind};
pub use error::{Error, Result};
pub use oracle::{fd_spectrum, GridSpec, OracleResult};
pub use polyparams::{parameter_set, PolynomialEigenstate, PolynomialParameterSet};
pub use potentials::{PotentialFamily, PotentialSpec, WallSide};
pub use spectrum::{find_eigenvalues, EigenvalueRecord, Method, ScanConfig, SpectrumResult};
pub use wavefun::{evaluate_eigenfunction, sample, SampledWavefunction};
