#![allow(dead_code)]

use std::collections::BTreeMap;

use phisum_core::{isqrt, Probe, Source};

/// Records every instrumentation event.
#[derive(Debug, Default)]
pub struct Recorder {
    pub events: Vec<(Source, u64, u64)>,
    pub stores: Vec<(u64, i64)>,
    pub partial: BTreeMap<u64, i128>,
    pub finals: BTreeMap<u64, i128>,
    pub accumulators: Option<(i128, i128, i128)>,
}

impl Probe for Recorder {
    fn mertens_contribution(&mut self, source: Source, y: u64, arg: u64) {
        self.events.push((source, y, arg));
    }
    fn batch_store(&mut self, index: u64, value: i64) {
        self.stores.push((index, value));
    }
    fn small_partial(&mut self, y: u64, value: i128) {
        self.partial.insert(y, value);
    }
    fn small_final(&mut self, y: u64, value: i128) {
        self.finals.insert(y, value);
    }
    fn accumulators(&mut self, x: i128, y: i128, z: i128) {
        self.accumulators = Some((x, y, z));
    }
    fn wants_contributions(&self) -> bool {
        true
    }
}

impl Recorder {
    pub fn pairs(&self, source: Option<Source>) -> Vec<(u64, u64)> {
        let mut v: Vec<_> = self
            .events
            .iter()
            .filter(|(s, _, _)| source.is_none_or(|want| *s == want))
            .map(|&(_, y, k)| (y, k))
            .collect();
        v.sort_unstable();
        v
    }
}

/// μ(0..=limit) by trial division.
pub fn mobius_trial(limit: u64) -> Vec<i8> {
    let mut out = vec![0i8; limit as usize + 1];
    for (x, slot) in out.iter_mut().enumerate().skip(1) {
        let mut x = x as u64;
        let mut sign = 1i8;
        let mut p = 2;
        while p * p <= x {
            if x.is_multiple_of(p) {
                x /= p;
                if x.is_multiple_of(p) {
                    sign = 0;
                    break;
                }
                sign = -sign;
            }
            p += 1;
        }
        *slot = if sign != 0 && x > 1 { -sign } else { sign };
    }
    out
}

/// M(0..=limit) as plain prefix sums of a trial-division μ.
pub fn mertens_prefix(limit: u64) -> Vec<i64> {
    let mut acc = 0i64;
    mobius_trial(limit)
        .into_iter()
        .map(|m| {
            acc += i64::from(m);
            acc
        })
        .collect()
}

/// Multiset of `(y, ⌊n/(xy)⌋)` for `1 ≤ y ≤ b`, `2 ≤ x ≤ isqrt(n/y)`: every
/// Mertens value the unrestructured recursion subtracts from `M′_y`.
pub fn recursion_pairs(n: u64, b: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for y in 1..=b {
        for x in 2..=isqrt(n / y) {
            out.push((y, n / (x * y)));
        }
    }
    out.sort_unstable();
    out
}
