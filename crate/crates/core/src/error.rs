use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    GeneratorOutOfRange { gen: u32, rank: usize },
    EmptyGenerators,
    CapExceeded { what: &'static str, cap: usize },
    Parse { line: usize, col: usize, msg: String },
    UnresolvedName(String),
    DimensionMismatch { expected: usize, found: usize },
    Containment(String),
    Hypothesis(String),
    NonFree,
    InvalidTable(String),
    ZeroElement,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GeneratorOutOfRange { gen, rank } => {
                write!(f, "generator index {} out of range for rank {}", gen, rank)
            }
            Error::EmptyGenerators => write!(f, "empty generator list"),
            Error::CapExceeded { what, cap } => write!(f, "{} exceeded cap {}", what, cap),
            Error::Parse { line, col, msg } => write!(f, "{}:{}: {}", line, col, msg),
            Error::UnresolvedName(n) => write!(f, "unresolved name `{}`", n),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
            Error::Containment(m) => write!(f, "containment violated: {}", m),
            Error::Hypothesis(m) => write!(f, "hypothesis violated: {}", m),
            Error::NonFree => write!(f, "input is not free abelian"),
            Error::InvalidTable(m) => write!(f, "invalid coset table: {}", m),
            Error::ZeroElement => write!(f, "operation undefined on the zero element"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
