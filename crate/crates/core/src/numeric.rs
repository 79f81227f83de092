//! Integer primitives and the hyperbola split.

use crate::Error;

/// Largest `n` the fixed-width (`i128`) accumulators support.
pub const MAX_N: u64 = 10_000_000_000_000_000_000;

/// Below this argument the batched algorithm is bypassed in favour of the
/// oracle when the caller asks for automatic dispatch.
pub const FALLBACK_THRESHOLD: u64 = 100_000;

/// `⌊√n⌋`, computed without floating point.
#[inline]
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// `⌊n/d⌋`. `d` must be nonzero.
#[inline]
pub fn floor_div(n: u64, d: u64) -> u64 {
    debug_assert!(d != 0, "floor_div by zero");
    n / d
}

/// Split point of the hyperbola `a·b ≈ n` shared by both Φ algorithms.
///
/// Always satisfies `1 ≤ b ≤ isqrt(n) ≤ a ≤ n` and `b = ⌊n/a⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TuningConfig {
    n: u64,
    a: u64,
    b: u64,
    fallback: bool,
}

impl TuningConfig {
    /// Builds a config from an explicit split `a`.
    pub fn new(n: u64, a: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        if n > MAX_N {
            return Err(Error::TooLarge { n, max: MAX_N });
        }
        if a < isqrt(n) || a > n || n / a > isqrt(n) {
            return Err(Error::InvalidSplit { n, a });
        }
        Ok(Self {
            n,
            a,
            b: n / a,
            fallback: n < FALLBACK_THRESHOLD,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// True when `n` is below [`FALLBACK_THRESHOLD`] and automatic dispatch
    /// should use the oracle.
    pub fn is_fallback(&self) -> bool {
        self.fallback
    }
}

/// Tuned split `a = clamp(round(c·(n / max(1, ln ln n))^{2/3}), isqrt(n)+1, n)`.
///
/// This is the asymptotically optimal choice for the batched algorithm. For
/// `n` below [`FALLBACK_THRESHOLD`] the config is still well formed but is
/// flagged with [`TuningConfig::is_fallback`].
pub fn default_split(n: u64, c: f64) -> Result<TuningConfig, Error> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if n > MAX_N {
        return Err(Error::TooLarge { n, max: MAX_N });
    }
    assert!(
        c > 0.0 && c.is_finite(),
        "tuning coefficient must be positive"
    );
    let nf = n as f64;
    let lnln = if n > 2 { libm::log(libm::log(nf)) } else { 1.0 };
    let lnln = lnln.max(1.0);
    let raw = libm::round(c * libm::pow(nf / lnln, 2.0 / 3.0));
    let lo = (isqrt(n) + 1).min(n);
    let a = if raw >= n as f64 {
        n
    } else {
        (raw as u64).clamp(lo, n)
    };
    TuningConfig::new(n, a)
}
