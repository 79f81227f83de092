//! Exact algorithms for the totient-summatory function `Φ(n) = Σ_{k≤n} φ(k)`
//! and the Mertens function `M(n) = Σ_{k≤n} μ(k)`.
//!
//! Three routes to `Φ(n)` are provided:
//!
//! * [`phi_oracle`]: a segmented totient sieve, linear time, used as the
//!   ground truth for testing.
//! * [`phi_mertens_first`]: the hyperbola-method algorithm that sieves the
//!   Möbius function up to `a ≈ n^{2/3}` and keeps `Θ(√n)` Mertens values.
//! * [`phi_space_saving`]: the same computation restructured so that Mertens
//!   contributions are flushed in batches of size `b = ⌊n/a⌋`, keeping only
//!   `Θ̃(n^{1/3})` integers resident.
//!
//! The crate is `no_std` and only needs `alloc`. Timing, IO, and the command
//! line live in the `phisum` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod mertens;
pub mod numeric;
pub mod probe;
pub mod sieve;
pub mod summatory;

pub use error::Error;
pub use mertens::{
    mertens_hyperbola, mertens_oracle, mertens_table, LargeMertensMap, MertensTable,
};
pub use numeric::{default_split, floor_div, isqrt, TuningConfig, FALLBACK_THRESHOLD, MAX_N};
pub use probe::{NoProbe, Phase, Probe, Source};
pub use sieve::{
    mobius_segment, primes_upto, stream_mobius, MobiusSieve, PrimeTable, SieveSegment,
};
pub use summatory::baseline::{phi_mertens_first, phi_mertens_first_probed, phi_oracle};
pub use summatory::cbrt::{phi_space_saving, phi_space_saving_probed};
pub use summatory::{PeakElements, PhiResult};

/// Exact accumulator type for `X`, `Y`, `Z` and `Φ(n)`.
///
/// `|Φ(n)|` and every partial sum of `X` stay below `0.83·n²`, which is under
/// `2^126` for `n ≤ 10^19`.
pub type WideInt = i128;
