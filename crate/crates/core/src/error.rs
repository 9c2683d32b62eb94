use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must satisfy 1 <= n <= {max}, got {n}")]
    InvalidDimension { n: usize, max: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("context mismatch: n = {left} vs n = {right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("element is not parity-homogeneous")]
    InhomogeneousParity,
    #[error("Kostant pairing needs Weyl-only elements")]
    CliffordFactorsPresent,
    #[error("determinant pairing needs Clifford-only elements")]
    WeylFactorsPresent,
    #[error("leading part of the zero element is undefined")]
    ZeroElement,
    #[error("chord endpoints must differ, got ({0},{0})")]
    DegenerateChord(usize),
    #[error("invalid index sequence {seq:?}: {reason}")]
    InvalidSequence { seq: Vec<usize>, reason: &'static str },
    #[error("unsupported dimension n = {0} for this operation")]
    UnsupportedDimension(usize),
    #[error("diagram is not uncrossable")]
    NotUncrossable,
    #[error("removing chord ({0},{1}) does not leave an uncrossed diagram")]
    BadRemovableChord(usize, usize),
    #[error("resource guard: {what} needs {needed} monomials, cap is {cap}")]
    ResourceGuard { what: &'static str, needed: usize, cap: usize },
    #[error("rewriting did not terminate within {0} steps")]
    RewriteBudget(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
