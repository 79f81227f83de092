//! Instrumentation hooks.
//!
//! Both Φ algorithms are generic over a [`Probe`]. Every hook has an empty
//! default body, so the production path ([`NoProbe`]) compiles to the bare
//! algorithm with no logging left behind.

/// Phases of the Φ algorithms, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    /// Parameter setup and allocation.
    Init,
    /// Sieving `x ≤ isqrt(n)`.
    One,
    /// Sieving `isqrt(n) < x ≤ a`.
    Two,
    /// Completing `M(⌊n/y⌋)` for `y = b, …, 1`.
    Three,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::Init, Phase::One, Phase::Two, Phase::Three];

    pub fn name(self) -> &'static str {
        match self {
            Phase::Init => "init",
            Phase::One => "phase1",
            Phase::Two => "phase2",
            Phase::Three => "phase3",
        }
    }
}

/// Which part of an algorithm subtracted a Mertens value from `M′_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// Batched phase-1 flush (arguments `≤ isqrt(n)`).
    PhaseOneFlush,
    /// Batched phase-2 flush (arguments stored during phase 2).
    PhaseTwoFlush,
    /// The phase-3 inner loop.
    PhaseThree,
}

#[allow(unused_variables)]
pub trait Probe {
    /// Called when the algorithm enters `phase`.
    fn enter_phase(&mut self, phase: Phase) {}

    /// Called once the algorithm has finished.
    fn finish(&mut self) {}

    /// The sieve has delivered every `x ≤ done` out of `total`.
    fn progress(&mut self, done: u64, total: u64) {}

    /// `M(arg)` was subtracted from `M′_y`.
    fn mertens_contribution(&mut self, source: Source, y: u64, arg: u64) {}

    /// Phase 2 stored `M(⌊n/index⌋) = value` in the batch window.
    fn batch_store(&mut self, index: u64, value: i64) {}

    /// Phase 3 is about to complete `M′_y`, whose partial value is `value`.
    fn small_partial(&mut self, y: u64, value: i128) {}

    /// Phase 3 wrote the final `M′_y = M(⌊n/y⌋)`.
    fn small_final(&mut self, y: u64, value: i128) {}

    /// Final values of the three hyperbola terms, `Φ = X + Y − Z`.
    fn accumulators(&mut self, x: i128, y: i128, z: i128) {}

    /// Whether the algorithm should report [`Probe::mertens_contribution`]
    /// events. Checked once per flush so the event loops can be skipped.
    fn wants_contributions(&self) -> bool {
        false
    }
}

/// Probe that records nothing.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoProbe;

impl Probe for NoProbe {}

impl<P: Probe + ?Sized> Probe for &mut P {
    fn enter_phase(&mut self, phase: Phase) {
        (**self).enter_phase(phase)
    }
    fn finish(&mut self) {
        (**self).finish()
    }
    fn progress(&mut self, done: u64, total: u64) {
        (**self).progress(done, total)
    }
    fn mertens_contribution(&mut self, source: Source, y: u64, arg: u64) {
        (**self).mertens_contribution(source, y, arg)
    }
    fn batch_store(&mut self, index: u64, value: i64) {
        (**self).batch_store(index, value)
    }
    fn small_partial(&mut self, y: u64, value: i128) {
        (**self).small_partial(y, value)
    }
    fn small_final(&mut self, y: u64, value: i128) {
        (**self).small_final(y, value)
    }
    fn accumulators(&mut self, x: i128, y: i128, z: i128) {
        (**self).accumulators(x, y, z)
    }
    fn wants_contributions(&self) -> bool {
        (**self).wants_contributions()
    }
}
