//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension {dim} outside supported range 1..=8")]
    UnsupportedDim { dim: usize },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    EigNoConverge { iterations: usize, residual: f64 },

    #[error("matrix exponential overflow: scaled norm {norm:.3e}")]
    ExpmOverflow { norm: f64 },

    #[error("singular matrix in {context}")]
    Singular { context: &'static str },

    #[error("singular Hankel system for [{m}/{n}]; try [{}/{}]", m.saturating_sub(1), n.saturating_sub(1))]
    SingularHankel { m: usize, n: usize },

    #[error("integrand does not decay along the ray (tail estimate {tail:.3e} after {panels} panels)")]
    NonDecayingIntegrand { tail: f64, panels: usize },

    #[error("log-log fit needs strictly positive data ({context})")]
    NonPositiveData { context: &'static str },

    #[error("too few points: got {got}, need at least {need}")]
    TooFewPoints { got: usize, need: usize },

    #[error("propagator not converged at {steps} steps: |U_N - U_2N| = {delta:.3e} (previous {prev_delta:.3e})")]
    PropagatorNoConverge {
        steps: usize,
        delta: f64,
        prev_delta: f64,
    },

    #[error("eigenvalue branch tracking failed: step overlap {overlap:.3} below 0.5")]
    BranchTrackingLost { overlap: f64 },

    #[error("degenerate spectrum at the requested point (splitting {splitting:.3e})")]
    DegenerateSpectrum { splitting: f64 },

    #[error("finite-difference stencil touches the exceptional point (distance {distance:.3e}, step {step:.3e})")]
    SingularStencil { distance: f64, step: f64 },

    #[error("no bracket for the adiabaticity-breakdown root in [{lo:.3e}, {hi:.3e}] at omega {omega:.3e}")]
    NoBracket { lo: f64, hi: f64, omega: f64 },

    #[error("germ is non-isolated or beyond truncation degree {max_degree}")]
    NonIsolatedGerm { max_degree: u32 },

    #[error("germ parse error at offset {offset}: {message}")]
    GermParse { offset: usize, message: String },

    #[error("Pade pole at {pole_re:.6}+{pole_im:.6}i within {distance:.3e} of the integration ray; increase the lateral angle")]
    PoleOnRay {
        pole_re: f64,
        pole_im: f64,
        distance: f64,
    },

    #[error("resurgent correction leaves imaginary residual {residual:.3e} (sigma or action inconsistent)")]
    InconsistentCorrection { residual: f64 },

    #[error("{0}")]
    Invalid(String),
}
