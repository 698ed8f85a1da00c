use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: &'static str },
    #[error("the zero polynomial is not allowed")]
    ZeroPolynomial,
    #[error("polynomial has content {content}; divide it out first")]
    NotPrimitive { content: String },
    #[error("polynomial degree {degree} is below the required {required}")]
    DegreeTooSmall { degree: usize, required: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("root table covers prime powers up to {bound}, but {needed} is required")]
    TableTooSmall { needed: u64, bound: u64 },
    #[error("equal-degree splitting modulo {p} did not separate roots after {attempts} attempts")]
    SplittingFailed { p: u64, attempts: u32 },
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}
