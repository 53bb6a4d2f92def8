use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// An iterative method hit its iteration cap.
    NoConvergence {
        method: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },
    /// The eigencondition shows no sign change where a root is expected.
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// A located root falls outside the interval that must contain it.
    BracketViolation { value: f64, lo: f64, hi: f64 },
    /// The solved state has the wrong number of radial nodes.
    NodeMismatch { expected: u32, found: u32 },
    /// A P-number table is missing the linear eigenvalue for (n, ℓ).
    IncompleteTable { n: u32, ell: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::NoConvergence {
                method,
                iterations,
                lo,
                hi,
            } => write!(
                f,
                "{method} did not converge after {iterations} iterations (last interval [{lo}, {hi}])"
            ),
            Error::NoSignChange { lo, hi, f_lo, f_hi } => {
                write!(f, "no sign change on [{lo}, {hi}] (values {f_lo}, {f_hi})")
            }
            Error::BracketViolation { value, lo, hi } => {
                write!(f, "root {value} lies outside its bracket [{lo}, {hi}]")
            }
            Error::NodeMismatch { expected, found } => {
                write!(f, "expected {expected} radial nodes, found {found}")
            }
            Error::IncompleteTable { n, ell } => {
                write!(f, "no linear-potential eigenvalue for n={n}, l={ell}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
