use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix determinant must be positive")]
    NonPositiveDeterminant,
    #[error("insufficient float precision: {0}")]
    Precision(String),
    #[error("matrix is not a member of {0}")]
    NotMember(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("series leading coefficient is not an exact {0}-th power")]
    RootOfNonPower(u32),
    #[error("series is not a unit (zero or unknown leading coefficient)")]
    NonUnit,
    #[error("prefactor exponent {0} is not a multiple of the series step")]
    NonIntegralLead(String),
    #[error("series truncation too short: need {needed}, have {have}")]
    InsufficientTruncation { needed: i64, have: i64 },
    #[error("series evaluation diverged (measured ratio {0} >= 1)")]
    Diverged(String),
    #[error("unknown Hauptmodul id {0}")]
    UnknownId(String),
    #[error("replicate of {0} at a = {1} is not in the catalog")]
    ReplicateNotInCatalog(String, u64),
    #[error("harmonic identity f^d = g(q^d) + c fails for {0}")]
    HarmonicMismatch(String),
    #[error("Faber structure violated: nonzero coefficient at degree {0}")]
    StructureViolation(usize),
    #[error("certification inconclusive: {0}")]
    Inconclusive(String),
    #[error("usage: {0}")]
    Usage(String),
}
