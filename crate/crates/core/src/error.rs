use thiserror::Error;

/// Errors shared by all kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different rings.
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation needs a proper, nonzero ideal.
    #[error("{0} requires a proper nonzero ideal")]
    ZeroOrUnitIdeal(&'static str),

    #[error("resource limit exceeded: {what} needs {required}, cap is {limit}")]
    ResourceLimit {
        what: String,
        required: u64,
        limit: u64,
    },

    #[error("missing family entry for block {block}, exponent {exponent}")]
    MissingFamilyEntry { block: usize, exponent: u32 },

    #[error("inclusion condition violated at block {block}: family({block},{larger}) is not contained in family({block},{smaller})")]
    InclusionViolation {
        block: usize,
        larger: u32,
        smaller: u32,
    },

    #[error("product compatibility violated at block {block}: family({block},{a})*family({block},{b}) is not contained in family({block},{a2})*family({block},{b2})")]
    Condition5Violation {
        block: usize,
        a: u32,
        b: u32,
        a2: u32,
        b2: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
