use std::fmt;

/// Crate-wide error type. Every failure mode a caller can hit is a concrete
/// variant; none of them wrap panics or foreign errors.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation at a pole (Li_k at z = 1 for k <= 1, zeta at 1, ...).
    Pole { what: String },
    /// Argument outside every supported evaluation domain.
    UnsupportedDomain { what: String },
    /// A series was requested outside its convergence region and no
    /// regularized method was selected.
    Divergent { what: String },
    /// Parity or ordering constraint of a closed form violated
    /// (e.g. Bernoulli product forms need r, s of the same parity).
    ParityDomain { what: String },
    /// Identity or constant id not present in the catalog/registry.
    UnknownId { id: String },
    /// Requested precision below the supported minimum.
    PrecisionTooLow { min: u32, got: u32 },
    /// Extrapolation table failed to converge (differences not decreasing).
    ExtrapolationStalled { what: String },
    /// A closed form hit a zero denominator or log/atan domain edge.
    PoleInClosedForm { what: String },
    /// Registry data file failed to parse or violated record invariants.
    Registry { what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { what } => write!(f, "pole: {what}"),
            Error::UnsupportedDomain { what } => write!(f, "unsupported domain: {what}"),
            Error::Divergent { what } => write!(f, "divergent: {what}"),
            Error::ParityDomain { what } => write!(f, "parity/domain constraint: {what}"),
            Error::UnknownId { id } => write!(f, "unknown id: {id}"),
            Error::PrecisionTooLow { min, got } => {
                write!(f, "precision too low: need at least {min} bits, got {got}")
            }
            Error::ExtrapolationStalled { what } => write!(f, "extrapolation stalled: {what}"),
            Error::PoleInClosedForm { what } => write!(f, "closed-form pole: {what}"),
            Error::Registry { what } => write!(f, "registry: {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
