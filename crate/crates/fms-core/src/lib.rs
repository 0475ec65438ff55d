//! Numerical laboratory for driven non-Hermitian two-level systems.
//!
//! The crate simulates parametric non-Hermitian Hamiltonian families near
//! exceptional points, extracts Stokes/monodromy data from one-period Floquet
//! propagators, computes quantum-geometric tensors and their singular parts,
//! measures scaling laws, evaluates Milnor/Tjurina numbers of polynomial germs
//! in exact arithmetic, and performs Borel-Pade lateral resummation with a
//! measured Stokes constant.
//!
//! All operations are pure functions of their inputs and safe to call from
//! concurrent workers.

pub mod error;
pub mod linalg;
pub mod series;
pub mod peaks;
pub mod pade;
pub mod quad;
pub mod models;
pub mod floquet;
pub mod geometry;
pub mod scaling;
pub mod invariants;
pub mod resurgence;
pub mod isometry;

pub use error::Error;
pub use linalg::{CMatrix, C64};
pub use series::{FitResult, RealSeries};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
