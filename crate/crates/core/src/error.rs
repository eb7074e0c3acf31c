use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("differential does not square to zero at cohomological degree {0}")]
    NotAComplex(i64),
    #[error("linear forms are dependent: {0}")]
    DependentForms(String),
    #[error("matrix has no finite order up to {0}")]
    OrderBoundExceeded(u32),
    #[error("group closure exceeded {0} elements")]
    ClosureBoundExceeded(usize),
    #[error("not a finite group action: {0}")]
    NotAGroup(String),
}
