//! `Φ(n)` in `Θ(n^{2/3}(ln ln n)^{1/3})` time and `Θ(n^{1/3}(ln ln n)^{2/3})`
//! space.
//!
//! This is the Mertens-first algorithm with its `Θ(√n)` arrays removed:
//!
//! * the Möbius part of each `M(⌊n/y⌋)` recursion is applied while sieving
//!   ([`phase1_accumulate`]);
//! * Mertens values are gathered into a window of `b` consecutive entries and
//!   pushed into `M′` in bulk ([`phase1_flush`], [`phase2_flush`]);
//! * whatever is left for `M′_y` depends only on `M′_{y'}` with `y' > y` and
//!   is resolved at the end ([`phase3_finalize`]).
//!
//! Only `M′` (`b` entries), the window (`b` entries) and the sieve working set
//! are resident.

use alloc::vec;
use alloc::vec::Vec;

use super::{triangular, PeakElements, PhiResult};
use crate::numeric::{isqrt, TuningConfig};
use crate::probe::{NoProbe, Phase, Probe, Source};
use crate::sieve::MobiusSieve;
use crate::WideInt;

/// `M′_y` for `1 ≤ y ≤ b`.
///
/// By the time phase 3 has passed `y`, `M′_y = M(⌊n/y⌋)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallTable {
    // index 0 unused
    values: Vec<WideInt>,
}

impl SmallTable {
    pub fn new(b: u64) -> Self {
        Self {
            values: vec![0; b as usize + 1],
        }
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, y: u64) -> WideInt {
        debug_assert!(y >= 1);
        self.values[y as usize]
    }

    #[inline]
    fn slot(&mut self, y: u64) -> &mut WideInt {
        debug_assert!(y >= 1);
        &mut self.values[y as usize]
    }
}

/// Which indexing the batch window currently uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchPhase {
    /// Index `x` holds `M(x)`; indices ascend from the least stored one.
    One,
    /// Index `s` holds `M(⌊n/s⌋)`; indices descend from the first stored one.
    Two,
}

/// Fixed-capacity window of at most `b` consecutive Mertens values.
#[derive(Debug, Clone)]
pub struct MertensBatch {
    phase: BatchPhase,
    // phase one: least index; phase two: greatest index
    first: u64,
    values: Vec<i64>,
    capacity: usize,
}

impl MertensBatch {
    pub fn new(b: u64) -> Self {
        Self {
            phase: BatchPhase::One,
            first: 0,
            values: Vec::with_capacity(b as usize),
            capacity: b as usize,
        }
    }

    pub fn phase(&self) -> BatchPhase {
        self.phase
    }

    pub fn capacity(&self) -> u64 {
        self.capacity as u64
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.values.len() == self.capacity
    }

    /// Least live index (`A` in phase one, `B` in phase two).
    pub fn least(&self) -> u64 {
        match self.phase {
            BatchPhase::One => self.first,
            BatchPhase::Two => self.first + 1 - self.len(),
        }
    }

    /// Greatest live index (`x` in phase one, `A` in phase two).
    pub fn greatest(&self) -> u64 {
        match self.phase {
            BatchPhase::One => self.first + self.len() - 1,
            BatchPhase::Two => self.first,
        }
    }

    /// Appends the value for the next index, which must extend the window
    /// contiguously (upwards in phase one, downwards in phase two).
    pub fn push(&mut self, index: u64, value: i64) {
        assert!(!self.is_full(), "Mertens batch overflow at index {index}");
        if self.values.is_empty() {
            self.first = index;
        } else {
            let expected = match self.phase {
                BatchPhase::One => self.first + self.len(),
                BatchPhase::Two => self.first - self.len(),
            };
            assert_eq!(index, expected, "Mertens batch indices are not contiguous");
        }
        self.values.push(value);
    }

    #[inline]
    pub fn get(&self, index: u64) -> i64 {
        debug_assert!(
            (self.least()..=self.greatest()).contains(&index),
            "index {index} outside batch window [{}, {}]",
            self.least(),
            self.greatest()
        );
        let offset = match self.phase {
            BatchPhase::One => index - self.first,
            BatchPhase::Two => self.first - index,
        };
        self.values[offset as usize]
    }

    pub fn clear(&mut self) {
        self.values.clear();
    }

    /// Switches to phase-two indexing. The window must be empty.
    pub fn enter_phase_two(&mut self) {
        assert!(self.is_empty(), "phase switch with a live window");
        self.phase = BatchPhase::Two;
    }
}

/// Loop state shared by the phases.
#[derive(Debug, Clone)]
pub struct PhaseState {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    /// `isqrt(n)`.
    pub root: u64,
    /// `M(x)` after the current outer iteration.
    pub m: i64,
    /// Next quotient `⌊n/x⌋` to checkpoint in phase 2.
    pub s: u64,
    /// `⌊n/s⌋`, the `x` at which that checkpoint happens.
    pub chi: u64,
    /// Next `M′` index to receive its `isqrt` term.
    pub d: u64,
    /// `isqrt(⌊n/d⌋)`, the `x` at which that happens.
    pub gamma: u64,
    pub x_acc: WideInt,
    pub y_acc: WideInt,
    pub z_acc: WideInt,
}

impl PhaseState {
    pub fn new(config: &TuningConfig) -> Self {
        let (n, a, b) = (config.n(), config.a(), config.b());
        let root = isqrt(n);
        let mut s = root;
        if root == n / root {
            s -= 1;
        }
        Self {
            n,
            a,
            b,
            root,
            m: 0,
            s,
            chi: n.checked_div(s).unwrap_or(u64::MAX),
            d: b,
            gamma: isqrt(n / b),
            x_acc: 0,
            y_acc: 0,
            z_acc: 0,
        }
    }
}

/// Phase-1 work for `x ≤ isqrt(n)`, after `state.m` has been advanced to
/// `M(x)`.
///
/// Subtracts `μ(x)·⌊⌊n/x⌋/y⌋` from `M′_y` for `y ≤ min(b, ⌊n/x²⌋)` (skipped for
/// `x = 1` and non-squarefree `x`), then adds `1 − ⌊n/d⌋ + x·M(x)` to every
/// `M′_d` whose `isqrt(⌊n/d⌋)` equals `x`.
pub fn phase1_accumulate(state: &mut PhaseState, x: u64, mu: i8, small: &mut SmallTable) {
    let n = state.n;
    if x > 1 && mu != 0 {
        let v = n / x;
        let upto = state.b.min(v / x) as usize;
        let slots = &mut small.values[1..=upto];
        if mu > 0 {
            for (slot, y) in slots.iter_mut().zip(1u64..) {
                *slot -= WideInt::from(v / y);
            }
        } else {
            for (slot, y) in slots.iter_mut().zip(1u64..) {
                *slot += WideInt::from(v / y);
            }
        }
    }
    while x == state.gamma {
        let d = state.d;
        *small.slot(d) += 1 - WideInt::from(n / d) + WideInt::from(state.m) * WideInt::from(x);
        state.d -= 1;
        state.gamma = n.checked_div(state.d).map_or(u64::MAX, isqrt);
    }
}

/// Pushes a phase-one window `[A, x]` of `M` values into `M′`.
///
/// For every `t ≤ b` and every `ℓ ≥ 2` with `ℓ ≤ isqrt(n/t)` and
/// `A ≤ ⌊n/(ℓt)⌋ ≤ x`, subtracts `M(⌊n/(ℓt)⌋)` from `M′_t`. The window is
/// cleared afterwards.
pub fn phase1_flush<P: Probe>(
    batch: &mut MertensBatch,
    n: u64,
    b: u64,
    small: &mut SmallTable,
    probe: &mut P,
) {
    debug_assert_eq!(batch.phase(), BatchPhase::One);
    if batch.is_empty() {
        return;
    }
    let want = probe.wants_contributions();
    let low = batch.least();
    let x = batch.greatest();
    for t in 1..=b {
        let l_min = (1 + n / (t * (x + 1))).max(2);
        let l_max = isqrt(n / t).min(n / (t * low));
        if l_min > l_max {
            continue;
        }
        let mut acc: i64 = 0;
        for l in l_min..=l_max {
            let k = n / (l * t);
            acc += batch.get(k);
            if want {
                probe.mertens_contribution(Source::PhaseOneFlush, t, k);
            }
        }
        *small.slot(t) -= WideInt::from(acc);
    }
    batch.clear();
}

/// Phase-2 checkpoint at `x = χ`: stores `M(x)` at index `⌊n/x⌋` unless that
/// index is `b` (which phase 3 owns), then advances `s` and `χ`.
pub fn phase2_collect<P: Probe>(
    state: &mut PhaseState,
    x: u64,
    batch: &mut MertensBatch,
    probe: &mut P,
) {
    debug_assert_eq!(x, state.chi);
    let v = state.n / x;
    if v != state.b {
        debug_assert_eq!(v, state.s);
        batch.push(v, state.m);
        probe.batch_store(v, state.m);
    }
    state.s -= 1;
    state.chi = state.n.checked_div(state.s).unwrap_or(u64::MAX);
}

/// Pushes a phase-two window `[B, A]` into `M′`.
///
/// For every `y ≤ b` and `2 ≤ t ≤ isqrt(n/y)` with `k = ⌊n/(ty)⌋ > isqrt(n)`
/// and `B ≤ ⌊n/k⌋ ≤ A`, subtracts `M(k)` (stored at index `⌊n/k⌋`) from
/// `M′_y`. The window is cleared afterwards.
pub fn phase2_flush<P: Probe>(
    batch: &mut MertensBatch,
    n: u64,
    b: u64,
    small: &mut SmallTable,
    probe: &mut P,
) {
    debug_assert_eq!(batch.phase(), BatchPhase::Two);
    if batch.is_empty() {
        return;
    }
    let want = probe.wants_contributions();
    let root = isqrt(n);
    let (high, low) = (batch.greatest(), batch.least());
    for y in 1..=b {
        let t_lo = (low / y).max(2);
        let t_hi = high / y + 1;
        let mut acc: i64 = 0;
        for t in t_lo..=t_hi {
            // t·t·y and k are monotone in t, so the first failure ends the scan
            if u128::from(t) * u128::from(t) * u128::from(y) > u128::from(n) {
                break;
            }
            let k = n / (t * y);
            if k <= root {
                break;
            }
            let index = n / k;
            if index < low {
                continue;
            }
            if index > high {
                break;
            }
            acc += batch.get(index);
            if want {
                probe.mertens_contribution(Source::PhaseTwoFlush, y, k);
            }
        }
        *small.slot(y) -= WideInt::from(acc);
    }
    batch.clear();
}

/// Completes `M′_y` for `y = b, …, 1` and returns `Y = Σ y·M′_y`.
///
/// The remaining terms are `M(⌊v/t⌋)` with `v = ⌊n/y⌋`, `t ≥ 2`, whose index
/// `⌊n/⌊v/t⌋⌋` is at most `b`; these are read from `M′` itself, which already
/// holds final values there because `y` decreases. The scan over `t` stops as
/// soon as `⌊v/t⌋·(b+1) ≤ n` (or `⌊v/t⌋ ≤ isqrt(n)`).
pub fn phase3_finalize<P: Probe>(small: &mut SmallTable, n: u64, b: u64, probe: &mut P) -> WideInt {
    let want = probe.wants_contributions();
    let root = isqrt(n);
    let limit = u128::from(b) + 1;
    let mut y_acc: WideInt = 0;
    for y in (1..=b).rev() {
        let v = n / y;
        probe.small_partial(y, small.get(y));
        let mut acc: WideInt = 0;
        for t in 2.. {
            let k = v / t;
            if k <= root || u128::from(k) * limit <= u128::from(n) {
                break;
            }
            let index = n / k;
            debug_assert!(index > y && index <= b);
            acc -= small.get(index);
            if want {
                probe.mertens_contribution(Source::PhaseThree, y, k);
            }
        }
        let slot = small.slot(y);
        *slot += acc;
        probe.small_final(y, *slot);
        y_acc += WideInt::from(y) * *slot;
    }
    y_acc
}

/// Batched evaluation of `Φ(n)`.
pub fn phi_space_saving(config: &TuningConfig) -> PhiResult {
    phi_space_saving_probed(config, &mut NoProbe)
}

/// [`phi_space_saving`] reporting to `probe`.
pub fn phi_space_saving_probed<P: Probe>(config: &TuningConfig, probe: &mut P) -> PhiResult {
    probe.enter_phase(Phase::Init);
    let mut state = PhaseState::new(config);
    let (n, a, b, root) = (state.n, state.a, state.b, state.root);
    let mut small = SmallTable::new(b);
    let mut batch = MertensBatch::new(b);
    let mut sieve = MobiusSieve::with_default_block(a);
    let peak = PeakElements {
        m_prime: small.len(),
        batch: batch.capacity(),
        sieve: sieve.working_set(),
        mobius: 0,
        mertens: 0,
    };

    probe.enter_phase(Phase::One);
    while let Some((lo, seg)) = sieve.next_segment() {
        let hi = lo + seg.len() as u64 - 1;
        for (x, &mu) in (lo..).zip(seg) {
            state.m += i64::from(mu);
            if mu != 0 {
                state.x_acc += WideInt::from(mu) * triangular(n / x);
            }
            if x <= root {
                batch.push(x, state.m);
                phase1_accumulate(&mut state, x, mu, &mut small);
                if x % b == 0 || x == root {
                    phase1_flush(&mut batch, n, b, &mut small, probe);
                }
                if x == root {
                    batch.enter_phase_two();
                    if x < a {
                        probe.enter_phase(Phase::Two);
                    }
                }
            } else if x == state.chi {
                phase2_collect(&mut state, x, &mut batch, probe);
            }
            if x == a || (x > root && batch.is_full()) {
                phase2_flush(&mut batch, n, b, &mut small, probe);
            }
            if x == a {
                state.z_acc = WideInt::from(state.m) * triangular(b);
            }
        }
        probe.progress(hi, a);
    }

    probe.enter_phase(Phase::Three);
    state.y_acc = phase3_finalize(&mut small, n, b, probe);
    probe.accumulators(state.x_acc, state.y_acc, state.z_acc);
    probe.finish();

    PhiResult {
        n,
        value: state.x_acc + state.y_acc - state.z_acc,
        config: *config,
        peak,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::default_split;
    use crate::summatory::baseline::phi_prefix_table;

    #[derive(Default)]
    struct Count(u64);

    impl Probe for Count {
        fn mertens_contribution(&mut self, _: Source, _: u64, _: u64) {
            self.0 += 1;
        }
        fn wants_contributions(&self) -> bool {
            true
        }
    }

    #[test]
    fn flush_one_empty_range() {
        // n = 100, b = 4, x = 4, A = 1: for t = 1, ℓ_min = 21 > ℓ_max = 10.
        let mut batch = MertensBatch::new(4);
        for (x, m) in [(1, 1), (2, 0), (3, -1), (4, -1)] {
            batch.push(x, m);
        }
        let mut small = SmallTable::new(4);
        let mut count = Count::default();
        phase1_flush(&mut batch, 100, 4, &mut small, &mut count);
        assert_eq!(count.0, 0);
        assert!(batch.is_empty());
        assert!((1..=4).all(|y| small.get(y) == 0));
    }

    #[test]
    fn accumulate_guards() {
        let cfg = TuningConfig::new(100, 22).unwrap();
        let mut state = PhaseState::new(&cfg);
        state.gamma = u64::MAX;
        let mut small = SmallTable::new(4);
        state.m = 1;
        phase1_accumulate(&mut state, 1, 1, &mut small);
        phase1_accumulate(&mut state, 4, 0, &mut small);
        assert!((1..=4).all(|y| small.get(y) == 0));
        phase1_accumulate(&mut state, 2, -1, &mut small);
        // y ≤ min(4, 25): += ⌊50/y⌋
        assert_eq!([1, 2, 3, 4].map(|y| small.get(y)), [50, 25, 16, 12]);
    }

    #[test]
    fn collect_gatekeeping() {
        // n = 100, a = 25 → b = 4; the checkpoint x = 25 has ⌊n/x⌋ = b.
        let cfg = TuningConfig::new(100, 25).unwrap();
        let mut state = PhaseState::new(&cfg);
        assert_eq!((state.s, state.chi), (9, 11));
        let mut batch = MertensBatch::new(4);
        batch.enter_phase_two();
        state.m = -2;
        phase2_collect(&mut state, 11, &mut batch, &mut NoProbe);
        assert_eq!((batch.least(), batch.greatest()), (9, 9));
        batch.clear();
        state.s = 4;
        state.chi = 25;
        phase2_collect(&mut state, 25, &mut batch, &mut NoProbe);
        assert!(batch.is_empty());
        assert_eq!(state.s, 3);
    }

    #[test]
    fn flush_two_empty_is_noop() {
        let mut batch = MertensBatch::new(3);
        batch.enter_phase_two();
        let mut small = SmallTable::new(3);
        phase2_flush(&mut batch, 1000, 3, &mut small, &mut NoProbe);
        assert!((1..=3).all(|y| small.get(y) == 0));
    }

    #[test]
    #[should_panic(expected = "not contiguous")]
    fn batch_rejects_gaps() {
        let mut batch = MertensBatch::new(4);
        batch.enter_phase_two();
        batch.push(10, 0);
        batch.push(8, 0);
    }

    #[test]
    fn phase3_immediate_break() {
        // n = 100, b = 4: y = 4 has v = 25 and ⌊25/2⌋·5 = 60 ≤ 100, so it reads
        // nothing; y = 2 has ⌊50/2⌋·5 = 125 > 100 and reads M′_4.
        #[derive(Default)]
        struct Reads(Vec<(u64, u64)>);
        impl Probe for Reads {
            fn mertens_contribution(&mut self, _: Source, y: u64, arg: u64) {
                self.0.push((y, arg));
            }
            fn wants_contributions(&self) -> bool {
                true
            }
        }
        let mut small = SmallTable::new(4);
        let mut reads = Reads::default();
        phase3_finalize(&mut small, 100, 4, &mut reads);
        assert!(reads.0.iter().all(|&(y, _)| y != 4));
        assert!(reads.0.contains(&(2, 25)));
    }

    #[test]
    fn matches_oracle_small_n() {
        let table = phi_prefix_table(4000).unwrap();
        for n in 1..=4000u64 {
            let cfg = default_split(n, 1.0).unwrap();
            assert_eq!(phi_space_saving(&cfg).value, table[n as usize], "n = {n}");
        }
    }

    #[test]
    fn every_split_small_n() {
        let table = phi_prefix_table(600).unwrap();
        for n in 1..=600u64 {
            for a in isqrt(n)..=n {
                let Ok(cfg) = TuningConfig::new(n, a) else {
                    continue;
                };
                assert_eq!(
                    phi_space_saving(&cfg).value,
                    table[n as usize],
                    "n = {n}, a = {a}"
                );
            }
        }
    }
}
