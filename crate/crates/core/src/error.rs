//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("basis dimension {dim} exceeds the configured limit {limit}")]
    BasisTooLarge { dim: u128, limit: usize },

    #[error("operator was built for a different basis (tag {found:#x}, expected {expected:#x})")]
    BasisMismatch { expected: u64, found: u64 },

    #[error("empty subspace: no basis states with excitation number >= {min_excitation}")]
    EmptySubspace { min_excitation: usize },

    #[error("site {site} out of range 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("mode index {k} out of range 1..={n}")]
    ModeOutOfRange { k: usize, n: usize },

    #[error("flat band: xi must be positive for a propagating photon")]
    FlatBand,

    #[error("edge coupling eta must be positive: the scatterer is decoupled from the leads")]
    ZeroEdgeCoupling,

    #[error("incident frequency {omega} lies outside the open propagation band ({lo}, {hi})")]
    OutOfBand { omega: f64, lo: f64, hi: f64 },

    #[error(
        "dense solver limit: dimension {dim} exceeds {limit}; \
         diagonalize sector-wise or reduce the excitation cutoff"
    )]
    DenseLimit { dim: usize, limit: usize },

    #[error("bound state psi_{label} not identified (found {found} bound states); {hint}")]
    MissingBoundState {
        label: usize,
        found: usize,
        hint: String,
    },

    #[error("eigensolver failed")]
    EigenFailure,

    #[error("small denominator: iterate at {energy} passes within {gap:e} of an unperturbed level")]
    SmallDenominator { energy: f64, gap: f64 },

    #[error("scattering system singular at omega_in = {omega_in} (incident energy on an eigenvalue pole)")]
    OnPole { omega_in: f64 },

    #[error("flow conservation violated: defect {defect:e} (solver or truncation fault)")]
    ConservationViolation { defect: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
