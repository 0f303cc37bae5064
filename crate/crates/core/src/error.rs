use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature could not reach the requested accuracy.
    #[error(
        "quadrature did not converge: estimated error {estimated_error:e} exceeds \
         tolerance {tolerance:e} after {intervals} subintervals (partial value {value:e})"
    )]
    Quadrature {
        value: f64,
        estimated_error: f64,
        tolerance: f64,
        intervals: usize,
    },

    /// The requested scheme, mode and regime do not combine.
    #[error("usage error: {0}")]
    Usage(String),

    /// Exhaustive enumeration would exceed the supported pattern space.
    #[error("capacity error: pattern space of 2^{bits} exceeds the limit of 2^{limit}")]
    Capacity { bits: u32, limit: u32 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

/// Checks that `p` is a probability.
pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {p} is not a probability")))
    }
}

/// Checks that `rate` is a finite, nonnegative rate in bits per channel use.
pub(crate) fn check_rate(name: &str, rate: f64) -> Result<()> {
    if rate.is_finite() && rate >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {rate} must be a finite nonnegative rate")))
    }
}
