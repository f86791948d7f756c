use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("structure has {0} elements; at most {max} supported", max = crate::bits::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("semigroup is not completely simple")]
    NotCompletelySimple,
    #[error("subsemigroup count exceeded cap after {0} sets")]
    CapExceeded(usize),
    #[error("Rees matrix semigroup is not normalized")]
    NotNormalized,
    #[error("morphism components do not match: {0}")]
    ComponentMismatch(String),
    #[error("morphism has not been validated")]
    NotValidated,
    #[error("morphism violates compatibility at row {row}, column {col}")]
    Incompatible { row: usize, col: usize },
    #[error("morphism moves the normalized row or column")]
    NormalizationNotFixed,
    #[error("no representative with coefficients in the idempotent-generated subgroup")]
    NoRestrictionFound,
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid amalgam: {0}")]
    InvalidAmalgam(String),
    #[error("amalgam core mismatch: {0}")]
    CoreMismatch(String),
    #[error("no group amalgam found within size bound {0}")]
    NoGroupAmalgamFound(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
