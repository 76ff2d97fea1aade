use num_complex::Complex64;
use std::fmt;

/// Error taxonomy shared by every module in the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// The zero polynomial was supplied where the theory requires a nonzero one.
    ZeroPolynomial,
    /// A nonzero constant has no roots to solve for.
    DegreeZero,
    /// A coefficient sequence must have at least one entry.
    EmptyPoly,
    /// A coefficient with a NaN or infinite component was rejected.
    NonFinite,
    /// `log_derivative` was asked to divide by a value below the guard threshold.
    EvalAtRoot,
    /// The leading coefficient (in the descending-index convention) is zero.
    LeadingZero,
    /// The two polynomials do not share the same ambient degree.
    AmbientMismatch { left: usize, right: usize },
    /// Epsilon must be strictly positive.
    InvalidEpsilon,
    /// The iteration budget was exhausted; carries the best iterates found.
    NoConvergence {
        best: Vec<Complex64>,
        residuals: Vec<f64>,
    },
    /// A point or assignment has the wrong number of variables.
    ArityMismatch { expected: usize, got: usize },
    /// `restrict` needs a strict subset of variables fixed; use `eval` instead.
    FullAssignment,
    /// The candidate point does not evaluate to zero within tolerance.
    NotAZero { magnitude: f64 },
    /// A coordinate of the candidate point lies outside the closure of its factor.
    OutsideClosure { index: usize },
    /// Malformed or schema-invalid JSON input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not admissible here"),
            Error::DegreeZero => write!(f, "a nonzero constant polynomial has no roots"),
            Error::EmptyPoly => write!(f, "a polynomial needs at least one coefficient"),
            Error::NonFinite => write!(f, "coefficients must have finite components"),
            Error::EvalAtRoot => write!(f, "evaluation point is too close to a root"),
            Error::LeadingZero => write!(f, "leading coefficient must be nonzero"),
            Error::AmbientMismatch { left, right } => {
                write!(f, "ambient degrees differ: {left} vs {right}")
            }
            Error::InvalidEpsilon => write!(f, "epsilon must be strictly positive"),
            Error::NoConvergence { best, .. } => {
                write!(f, "root iteration did not converge ({} iterates)", best.len())
            }
            Error::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} variables, got {got}")
            }
            Error::FullAssignment => {
                write!(f, "restriction must leave at least one variable free")
            }
            Error::NotAZero { magnitude } => {
                write!(f, "point is not a zero: |f(alpha)| = {magnitude:e}")
            }
            Error::OutsideClosure { index } => {
                write!(f, "coordinate {index} lies outside the closure of its factor")
            }
            Error::Parse(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
