use core::fmt;

/// Errors reported by the public entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `n` was zero.
    ZeroArgument,
    /// `n` exceeds the largest argument the fixed-width accumulators support.
    TooLarge { n: u64, max: u64 },
    /// An oracle was asked for an argument above its memory/time guard.
    GuardExceeded { n: u64, guard: u64 },
    /// The hyperbola split `a` violates `⌊n/a⌋ ≤ isqrt(n) ≤ a ≤ n`.
    InvalidSplit { n: u64, a: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroArgument => write!(f, "argument must be at least 1"),
            Error::TooLarge { n, max } => {
                write!(f, "n = {n} exceeds the supported maximum {max}")
            }
            Error::GuardExceeded { n, guard } => {
                write!(f, "n = {n} exceeds the oracle guard {guard}")
            }
            Error::InvalidSplit { n, a } => {
                write!(
                    f,
                    "split a = {a} is invalid for n = {n} (need n/a <= isqrt(n) <= a <= n)"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
