//! Totient-summatory algorithms.
//!
//! Both fast algorithms evaluate the hyperbola split of `φ = μ * I` at
//! `a·b ≈ n`:
//!
//! ```text
//! Φ(n) = Σ_{x≤a} μ(x)·T(⌊n/x⌋) + Σ_{y≤b} y·M(⌊n/y⌋) − T(b)·M(a)
//!        ╰──────── X ────────╯   ╰────── Y ──────╯   ╰─── Z ───╯
//! ```
//!
//! with `T(v) = v(v+1)/2`. They differ in how the `M(⌊n/y⌋)` are assembled.

use crate::numeric::TuningConfig;
use crate::WideInt;

pub mod baseline;
pub mod cbrt;

/// `v(v+1)/2`, exact for every `v ≤ 10^19`.
#[inline]
pub(crate) fn triangular(v: u64) -> WideInt {
    let v = u128::from(v);
    (v * (v + 1) / 2) as WideInt
}

/// Element counts of the long-lived arrays of one run.
///
/// The sieve entry counts one slot per window position plus the prime table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PeakElements {
    /// `M′`, the table of `M(⌊n/y⌋)` being assembled.
    pub m_prime: u64,
    /// The sliding Mertens batch window.
    pub batch: u64,
    /// Möbius sieve working set.
    pub sieve: u64,
    /// Stored Möbius values (baseline only).
    pub mobius: u64,
    /// Stored small Mertens values (baseline only).
    pub mertens: u64,
}

impl PeakElements {
    pub fn total(&self) -> u64 {
        self.m_prime + self.batch + self.sieve + self.mobius + self.mertens
    }
}

/// Value of `Φ(n)` together with the split used and the space it took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiResult {
    pub n: u64,
    pub value: WideInt,
    pub config: TuningConfig,
    pub peak: PeakElements,
}
