use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    /// A theorem hypothesis (congruence, residuosity) does not hold for the input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-real symbol: {a}^((p-1)/{order}) mod {p} = {value} is not +-1")]
    NonRealSymbol {
        a: i64,
        p: u64,
        order: u64,
        value: u64,
    },

    #[error("{p} is not of the form x^2 + {d}y^2 with x, y > 0")]
    NotRepresentable { p: u64, d: u64 },

    #[error("cyclotomic order {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("ring mismatch: Z[zeta_{left}] vs Z[zeta_{right}]")]
    RingMismatch { left: usize, right: usize },

    #[error("argument within {distance:e} of a tangent pole")]
    PoleProximity { distance: f64 },

    #[error("p = {0} is outside the p = 1 (mod 8) branch")]
    BranchViolation(u64),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that mean "the statement does not apply here" rather
    /// than "the input was malformed".
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis(_) | Error::NotRepresentable { .. } | Error::BranchViolation(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
