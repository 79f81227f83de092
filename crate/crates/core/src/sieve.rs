//! Segmented Möbius sieve.
//!
//! A window `[lo, hi]` is sieved with the primes `p ≤ √hi`. Each slot keeps
//! the running sign of `μ` and the product of the small primes found so far;
//! a product short of the slot's value means exactly one prime factor above
//! `√hi` remains, which flips the sign once more.

use alloc::vec;
use alloc::vec::Vec;

use crate::numeric::isqrt;

/// Largest block size picked by [`MobiusSieve::default_block`].
pub const MAX_DEFAULT_BLOCK: u64 = 1 << 18;

/// All primes up to a bound, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Every prime `≤ bound()` is present.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Sieve of Eratosthenes over the odd numbers up to `limit`.
pub fn primes_upto(limit: u64) -> PrimeTable {
    let mut primes = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    if limit >= 3 {
        // slot i stands for 2i + 1
        let slots = ((limit - 1) / 2 + 1) as usize;
        let mut composite = vec![false; slots];
        let mut i = 1;
        while i < slots {
            if !composite[i] {
                let p = 2 * i as u64 + 1;
                primes.push(p);
                let mut j = (p * p / 2) as usize;
                while j < slots {
                    composite[j] = true;
                    j += p as usize;
                }
            }
            i += 1;
        }
    }
    PrimeTable {
        bound: limit,
        primes,
    }
}

/// Möbius values on a window: `mu()[i] = μ(lo + i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSegment {
    lo: u64,
    mu: Vec<i8>,
}

impl SieveSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.mu.len() as u64 - 1
    }

    pub fn mu(&self) -> &[i8] {
        &self.mu
    }

    /// `μ(x)` for `lo ≤ x ≤ hi`.
    pub fn get(&self, x: u64) -> i8 {
        self.mu[(x - self.lo) as usize]
    }
}

/// Exact `μ` on `[lo, hi]`. Panics if `primes` does not reach `isqrt(hi)`.
pub fn mobius_segment(lo: u64, hi: u64, primes: &PrimeTable) -> SieveSegment {
    assert!(1 <= lo && lo <= hi, "invalid window [{lo}, {hi}]");
    assert!(
        primes.bound() >= isqrt(hi),
        "prime table does not reach isqrt({hi})"
    );
    let len = (hi - lo + 1) as usize;
    let mut mu = vec![0i8; len];
    let mut prod = vec![0u64; len];
    fill_segment(lo, primes.primes(), &mut mu, &mut prod);
    SieveSegment { lo, mu }
}

fn fill_segment(lo: u64, primes: &[u64], mu: &mut [i8], prod: &mut [u64]) {
    let len = mu.len();
    debug_assert_eq!(len, prod.len());
    let hi = lo + len as u64 - 1;
    mu.fill(1);
    prod.fill(1);
    for &p in primes {
        let sq = p * p;
        if sq > hi {
            break;
        }
        let mut i = (lo.div_ceil(p) * p - lo) as usize;
        while i < len {
            mu[i] = -mu[i];
            prod[i] *= p;
            i += p as usize;
        }
        let mut i = (lo.div_ceil(sq) * sq - lo) as usize;
        while i < len {
            mu[i] = 0;
            i += sq as usize;
        }
    }
    for (x, (m, &q)) in (lo..).zip(mu.iter_mut().zip(prod.iter())) {
        if q != x {
            *m = -*m;
        }
    }
}

/// Streams `μ(1), μ(2), …, μ(limit)` one window at a time.
///
/// Only one window (two arrays of `block` slots) and the primes up to
/// `isqrt(limit)` are ever resident.
#[derive(Debug)]
pub struct MobiusSieve {
    limit: u64,
    next_lo: u64,
    primes: PrimeTable,
    mu: Vec<i8>,
    prod: Vec<u64>,
}

impl MobiusSieve {
    pub fn new(limit: u64, block: u64) -> Self {
        assert!(limit >= 1 && block >= 1);
        let block = block.min(limit) as usize;
        Self {
            limit,
            next_lo: 1,
            primes: primes_upto(isqrt(limit)),
            mu: vec![0; block],
            prod: vec![0; block],
        }
    }

    /// `min(isqrt(limit)` rounded up to a power of two`, 2^18)`.
    pub fn default_block(limit: u64) -> u64 {
        isqrt(limit)
            .max(1)
            .next_power_of_two()
            .min(MAX_DEFAULT_BLOCK)
    }

    pub fn with_default_block(limit: u64) -> Self {
        Self::new(limit, Self::default_block(limit))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn block(&self) -> usize {
        self.mu.len()
    }

    pub fn primes(&self) -> &PrimeTable {
        &self.primes
    }

    /// Resident element count: one slot per window position plus the prime
    /// table.
    pub fn working_set(&self) -> u64 {
        (self.primes.len() + self.mu.len()) as u64
    }

    /// Sieves the next window and returns `(lo, μ(lo..))`, or `None` once
    /// `limit` has been passed.
    pub fn next_segment(&mut self) -> Option<(u64, &[i8])> {
        if self.next_lo > self.limit {
            return None;
        }
        let lo = self.next_lo;
        let len = (self.limit - lo + 1).min(self.mu.len() as u64) as usize;
        fill_segment(
            lo,
            self.primes.primes(),
            &mut self.mu[..len],
            &mut self.prod[..len],
        );
        self.next_lo = lo + len as u64;
        Some((lo, &self.mu[..len]))
    }
}

/// Calls `visitor(x, μ(x))` for `x = 1..=limit` in increasing order.
pub fn stream_mobius<F: FnMut(u64, i8)>(limit: u64, block: u64, mut visitor: F) {
    let mut sieve = MobiusSieve::new(limit, block);
    while let Some((lo, mu)) = sieve.next_segment() {
        for (x, &m) in (lo..).zip(mu) {
            visitor(x, m);
        }
    }
}

/// Dense `μ(0..=limit)` with `μ(0)` stored as 0.
pub fn mobius_upto(limit: u64) -> Vec<i8> {
    let mut out = Vec::with_capacity(limit as usize + 1);
    out.push(0);
    if limit >= 1 {
        stream_mobius(limit, MobiusSieve::default_block(limit), |_, m| out.push(m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu_by_trial_division(mut x: u64) -> i8 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= x {
            if x.is_multiple_of(p) {
                x /= p;
                if x.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if x > 1 {
            sign = -sign;
        }
        sign
    }

    fn is_prime(x: u64) -> bool {
        x >= 2
            && (2..)
                .take_while(|d| d * d <= x)
                .all(|d| !x.is_multiple_of(d))
    }

    #[test]
    fn primes_small() {
        assert!(primes_upto(1).is_empty());
        assert_eq!(primes_upto(2).primes(), &[2]);
        assert_eq!(primes_upto(10).primes(), &[2, 3, 5, 7]);
        let hundred = primes_upto(100);
        assert_eq!(hundred.len(), 25);
        assert_eq!(*hundred.primes().last().unwrap(), 97);
    }

    #[test]
    fn primes_match_trial_division() {
        let want: Vec<u64> = (1..=20_000).filter(|&x| is_prime(x)).collect();
        assert_eq!(primes_upto(20_000).primes(), &want[..]);
    }

    #[test]
    fn segment_examples() {
        let primes = primes_upto(100);
        assert_eq!(
            mobius_segment(1, 10, &primes).mu(),
            &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
        );
        assert_eq!(mobius_segment(97, 97, &primes).mu(), &[-1]);
        assert_eq!(mobius_segment(7919, 7919, &primes).mu(), &[-1]);
        assert_eq!(mobius_segment(49, 49, &primes).mu(), &[0]);
        assert_eq!(mobius_segment(10_000, 10_000, &primes).mu(), &[0]);
    }

    #[test]
    fn segment_matches_trial_division() {
        let primes = primes_upto(isqrt(1_000_100));
        let seg = mobius_segment(999_000, 1_000_100, &primes);
        for x in seg.lo()..=seg.hi() {
            assert_eq!(seg.get(x), mu_by_trial_division(x), "x = {x}");
        }
        let seg = mobius_segment(1, 5000, &primes_upto(80));
        for x in 1..=5000 {
            assert_eq!(seg.get(x), mu_by_trial_division(x), "x = {x}");
        }
    }

    #[test]
    #[should_panic(expected = "prime table")]
    fn incomplete_prime_table_panics() {
        mobius_segment(1, 1000, &primes_upto(10));
    }

    #[test]
    fn stream_single() {
        let mut calls = Vec::new();
        stream_mobius(1, 1, |x, m| calls.push((x, m)));
        assert_eq!(calls, [(1, 1)]);
    }

    #[test]
    fn stream_small_blocks() {
        let mut got = Vec::new();
        stream_mobius(10, 3, |x, m| got.push((x, m)));
        let whole = mobius_segment(1, 10, &primes_upto(10));
        let want: Vec<_> = (1..=10).zip(whole.mu().iter().copied()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn default_block_rule() {
        assert_eq!(MobiusSieve::default_block(1), 1);
        assert_eq!(MobiusSieve::default_block(1_000_000), 1024);
        assert_eq!(MobiusSieve::default_block(44_943_526), 8192);
        assert_eq!(MobiusSieve::default_block(1 << 40), 1 << 18);
    }

    #[test]
    fn working_set_bound() {
        let sieve = MobiusSieve::new(1_000_000, 777);
        assert_eq!(sieve.working_set(), 168 + 777);
    }
}
