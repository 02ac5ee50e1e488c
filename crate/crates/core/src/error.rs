use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i lies outside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("series coefficient {index} is not finite")]
    NonFinite { index: usize },

    #[error("division by a series whose constant term {0:e} vanishes")]
    VanishingConstant(f64),

    #[error("operation requires constant term {expected}, found {found_re}+{found_im}i")]
    WrongConstantTerm {
        expected: f64,
        found_re: f64,
        found_im: f64,
    },

    #[error("function is not normalized: {0}")]
    NotNormalized(String),

    #[error("truncation order {found} is below the required {required}")]
    OrderTooLow { required: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("small denominator {value:e} at coefficient {index}")]
    SmallDenominator { index: usize, value: f64 },

    #[error("trajectory left the disk at t={t} (|u|={modulus})")]
    DiskEscape { t: f64, modulus: f64 },

    #[error("step size underflow at t={t} (h={h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("{0}")]
    NotAGenerator(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
