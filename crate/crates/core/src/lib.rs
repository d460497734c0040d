//! Semi-analytic solver for the linear Klein-Gordon field
//!
//! ```text
//! Φ_tt + n Φ_t − e^{−2t} ΔΦ + m² Φ = f,   Φ(x,0) = φ₀(x),   Φ_t(x,0) = φ₁(x)
//! ```
//!
//! on an exponentially expanding spatially flat background (Hubble constant
//! normalised to 1). The solution is assembled from flat-space wave
//! propagators composed with Gauss-hypergeometric kernels; an independent
//! explicit finite-difference scheme ([`fdref`]) serves as the numerical
//! oracle. On top of the solver sit two experiment layers: tail measurements
//! that locate the mass values for which the field is tail-free ([`huygens`]),
//! and the large-time expansion of the solution at the distinguished mass
//! m = √(n²−1)/2 ([`asymptotics`]).
//!
//! Everything is deterministic pure math in `f64`; no threads, no RNG.

#![allow(clippy::manual_is_multiple_of)] // k % 2 == 0 reads as parity here

pub mod asymptotics;
pub mod desitter;
pub mod fdref;
pub mod huygens;
pub mod kernels;
pub mod quad;
pub mod special;
pub mod wave;

pub use desitter::{CauchyProblem, Forcing, Method, SolutionField};
pub use kernels::{KernelValue, MassParams, MassRegime};
pub use wave::RadialProfile;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer argument {0}")]
    GammaPole(f64),
    #[error("hypergeometric argument z={0} outside [0,1)")]
    HypDomain(f64),
    #[error("hypergeometric series did not reach target accuracy (z={z}, {terms} terms)")]
    HypNonConvergence { z: f64, terms: usize },
    #[error("mass parameter outside the domain of this operation: {0}")]
    MassDomain(String),
    #[error("point (z={z}, t={t}) outside the light cone of (0, t0={t0})")]
    KernelDomain { z: f64, t: f64, t0: f64 },
    #[error("kernel evaluation {dist:.3e} from the cone boundary is refused")]
    KernelSingularity { dist: f64 },
    #[error("quadrature failed to converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("imaginary residue {im:.3e} too large for physical value {re:.3e}")]
    ImaginaryResidue { re: f64, im: f64 },
    #[error("derivative order {required} exceeds available order {available}")]
    DerivOrder { required: usize, available: usize },
    #[error("profile derivatives disagree with finite differences (err={0:.3e})")]
    ProfileSmoothness(f64),
    #[error("support radius {0} must lie strictly inside the unit horizon")]
    SupportTooLarge(f64),
    #[error("CFL violated: dt={dt} > 0.9*dr = {limit}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("field blow-up at t={t:.3} (|phi| = {mag:.3e})")]
    BlowUp { t: f64, mag: f64 },
    #[error("probe point (r={r}, t={t}) outside the grid")]
    OutOfGrid { r: f64, t: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
