use thiserror::Error;

/// Errors produced by distribution constructors, evaluators and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution or transform parameter violates its positivity/range
    /// constraint.
    #[error("invalid parameter {name} = {value}: must be {constraint}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// An evaluation argument lies outside the operation's domain.
    #[error("{name} = {value} outside {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The requested operation needs a proper counting distribution, which
    /// only exists for a > 1.
    #[error("Harris counting distribution requires a > 1 (got a = {a})")]
    NotACountingLaw { a: f64 },

    /// A psi construction produced a function that increases somewhere on the
    /// validation grid.
    #[error("psi is not non-increasing (increase detected near x = {x})")]
    NonMonotonePsi { x: f64 },

    /// The semi-stable pair (a, c) yields a non-positive power exponent.
    /// A non-increasing psi on (0, inf) forces ln(a)/ln(c) > 0, so with a > 1
    /// the scale constant must satisfy c > 1.
    #[error(
        "semi-stable exponent ln(a)/ln(c) = {theta} is not positive; \
         with a > 1 the scale change must satisfy c > 1 \
         (the orientation c < 1 admits only degenerate solutions)"
    )]
    WrongOrientation { theta: f64 },

    /// A statistical routine was handed an empty sample.
    #[error("empty sample")]
    EmptySample,

    /// A process configuration is internally inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
