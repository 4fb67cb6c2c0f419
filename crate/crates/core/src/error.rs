use std::fmt;

use thiserror::Error;

/// Malformed or out-of-range semiring values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("malformed value {0:?}")]
    Malformed(String),
    #[error("value {0} is negative")]
    Negative(String),
    #[error("value {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("a min-max chain needs at least two labels")]
    ChainTooShort,
    #[error("duplicate chain label {0:?}")]
    DuplicateLabel(String),
    #[error("{0:?} is not a label of the chain")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value assigned to indeterminate {0:?}")]
    MissingAssignment(String),
}

/// One reason an equation system is ill-formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateIndeterminate(String),
    MissingEquation(String),
    UndeclaredEquation(String),
    ZeroCoefficient { equation: String, term: usize },
    DuplicateMonomial { equation: String, term: usize },
    UndeclaredIndeterminate { equation: String, term: usize, name: String },
    InfiniteExponent { equation: String, term: usize, name: String },
    NameClash(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateIndeterminate(x) => write!(f, "indeterminate {x:?} declared twice"),
            MissingEquation(x) => write!(f, "no equation for indeterminate {x:?}"),
            UndeclaredEquation(x) => write!(f, "equation for undeclared indeterminate {x:?}"),
            ZeroCoefficient { equation, term } => {
                write!(f, "equations.{equation}[{term}]: coefficient is the semiring zero")
            }
            DuplicateMonomial { equation, term } => {
                write!(f, "equations.{equation}[{term}]: monomial repeats an earlier term")
            }
            UndeclaredIndeterminate { equation, term, name } => {
                write!(f, "equations.{equation}[{term}]: monomial mentions undeclared {name:?}")
            }
            InfiniteExponent { equation, term, name } => write!(
                f,
                "equations.{equation}[{term}]: exponent of {name:?} is inf, which the closed-form path does not accept"
            ),
            NameClash(x) => {
                write!(f, "{x:?} is used both as a coefficient indeterminate and a solve-for indeterminate")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid equation system: {}", render_violations(.0))]
pub struct SystemError(pub Vec<Violation>);

fn render_violations(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration exceeded the budget of {limit} nodes")]
    TreeBudgetExceeded { limit: usize },
    #[error("brute force would visit {needed} valuations, budget is {limit}")]
    SearchBudgetExceeded { needed: u128, limit: u128 },
    #[error("no {0} fixed point exists among the enumerated valuations")]
    NoExtremum(&'static str),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
