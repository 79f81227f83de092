//! The totient-sieve oracle and the `Θ(√n)`-space Mertens-first algorithm.

use alloc::vec;
use alloc::vec::Vec;

use super::{triangular, PeakElements, PhiResult};
use crate::numeric::{isqrt, TuningConfig};
use crate::probe::{NoProbe, Phase, Probe, Source};
use crate::sieve::{primes_upto, MobiusSieve};
use crate::{Error, WideInt};

/// Largest argument accepted by [`phi_oracle`].
pub const ORACLE_GUARD: u64 = 1_000_000_000;

/// Streams `φ(1), …, φ(limit)` one window at a time.
///
/// Each slot accumulates `φ` of its smallest-prime part together with the
/// product of the prime powers found; what is left over is a single prime
/// above `√hi`.
fn stream_totient<F: FnMut(u64, u64)>(limit: u64, block: u64, mut visitor: F) {
    let primes = primes_upto(isqrt(limit));
    let block = block.min(limit).max(1) as usize;
    let mut phi = vec![0u64; block];
    let mut prod = vec![0u64; block];
    let mut lo = 1u64;
    while lo <= limit {
        let len = (limit - lo + 1).min(block as u64) as usize;
        let hi = lo + len as u64 - 1;
        let (phi, prod) = (&mut phi[..len], &mut prod[..len]);
        phi.fill(1);
        prod.fill(1);
        for &p in primes.primes() {
            if p * p > hi {
                break;
            }
            let mut i = (lo.div_ceil(p) * p - lo) as usize;
            while i < len {
                phi[i] *= p - 1;
                prod[i] *= p;
                i += p as usize;
            }
            let mut pk = p * p;
            loop {
                let mut i = (lo.div_ceil(pk) * pk - lo) as usize;
                while i < len {
                    phi[i] *= p;
                    prod[i] *= p;
                    i += pk as usize;
                }
                match pk.checked_mul(p) {
                    Some(next) if next <= hi => pk = next,
                    _ => break,
                }
            }
        }
        for (i, (f, &q)) in phi.iter_mut().zip(prod.iter()).enumerate() {
            let x = lo + i as u64;
            if q != x {
                *f *= x / q - 1;
            }
            visitor(x, *f);
        }
        lo = hi + 1;
    }
}

/// `Φ(n)` by summing a segmented totient sieve. Guarded at `n ≤ 10^9`.
pub fn phi_oracle(n: u64) -> Result<WideInt, Error> {
    Ok(phi_oracle_at(&[n])?[0])
}

/// `Φ` at each of `points` (any order) from a single sieve pass up to the
/// largest point.
pub fn phi_oracle_at(points: &[u64]) -> Result<Vec<WideInt>, Error> {
    let Some(&max) = points.iter().max() else {
        return Ok(Vec::new());
    };
    if points.contains(&0) {
        return Err(Error::ZeroArgument);
    }
    if max > ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            n: max,
            guard: ORACLE_GUARD,
        });
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);
    let mut out = vec![0; points.len()];
    let mut next = 0;
    let mut sum: WideInt = 0;
    stream_totient(max, MobiusSieve::default_block(max).max(1 << 12), |x, f| {
        sum += WideInt::from(f);
        while next < order.len() && points[order[next]] == x {
            out[order[next]] = sum;
            next += 1;
        }
    });
    Ok(out)
}

/// `Φ(k)` for every `k ≤ limit` (index 0 holds 0).
pub fn phi_prefix_table(limit: u64) -> Result<Vec<WideInt>, Error> {
    if limit > ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            n: limit,
            guard: ORACLE_GUARD,
        });
    }
    let mut out = Vec::with_capacity(limit as usize + 1);
    out.push(0);
    if limit >= 1 {
        let mut sum: WideInt = 0;
        stream_totient(limit, 1 << 14, |_, f| {
            sum += WideInt::from(f);
            out.push(sum);
        });
    }
    Ok(out)
}

/// Mertens-first evaluation of `Φ(n)` in `Θ̃(n^{2/3})` time and `Θ(√n)` space.
pub fn phi_mertens_first(config: &TuningConfig) -> PhiResult {
    phi_mertens_first_probed(config, &mut NoProbe)
}

/// [`phi_mertens_first`] reporting to `probe`.
pub fn phi_mertens_first_probed<P: Probe>(config: &TuningConfig, probe: &mut P) -> PhiResult {
    let (n, a, b) = (config.n(), config.a(), config.b());
    let r = isqrt(n);
    probe.enter_phase(Phase::Init);

    // s walks down the quotients ⌊n/x⌋ that phase 2 must checkpoint; χ = ⌊n/s⌋
    // is the x at which the next one is reached.
    let mut s = r;
    if r == n / r {
        s -= 1;
    }
    let mut chi = n.checked_div(s).unwrap_or(u64::MAX);

    let mut mu_small = vec![0i8; r as usize + 1];
    let mut mertens = vec![0i64; r as usize + 1];
    let mut m_prime = vec![0i64; (n / r) as usize + 1];
    let mut sieve = MobiusSieve::with_default_block(a);
    let peak = PeakElements {
        m_prime: n / r,
        batch: 0,
        sieve: sieve.working_set(),
        mobius: r,
        mertens: r,
    };

    let mut x_acc: WideInt = 0;
    let mut z_acc: WideInt = 0;
    let mut m = 0i64;

    probe.enter_phase(Phase::One);
    while let Some((lo, seg)) = sieve.next_segment() {
        let hi = lo + seg.len() as u64 - 1;
        for (x, &mu) in (lo..).zip(seg) {
            m += i64::from(mu);
            if mu != 0 {
                x_acc += WideInt::from(mu) * triangular(n / x);
            }
            if x <= r {
                mertens[x as usize] = m;
                mu_small[x as usize] = mu;
                if x == r && x < a {
                    probe.enter_phase(Phase::Two);
                }
            } else if x == chi {
                let v = n / x;
                if v != b {
                    m_prime[v as usize] = m;
                }
                s -= 1;
                chi = n.checked_div(s).unwrap_or(u64::MAX);
            }
            if x == a {
                z_acc = WideInt::from(m) * triangular(b);
            }
        }
        probe.progress(hi, a);
    }

    probe.enter_phase(Phase::Three);
    let want = probe.wants_contributions();
    let mut y_acc: WideInt = 0;
    for y in (1..=b).rev() {
        let v = n / y;
        let rv = isqrt(v);
        let mut acc =
            1 - WideInt::from(v) + WideInt::from(rv) * WideInt::from(mertens[rv as usize]);
        for x in 2..=rv {
            let q = v / x;
            acc -= WideInt::from(mu_small[x as usize]) * WideInt::from(q);
            if q <= r {
                acc -= WideInt::from(mertens[q as usize]);
            } else {
                acc -= WideInt::from(m_prime[(n / q) as usize]);
            }
            if want {
                probe.mertens_contribution(Source::PhaseThree, y, q);
            }
        }
        let slot = &mut m_prime[y as usize];
        *slot += i64::try_from(acc).expect("Mertens value out of range");
        probe.small_final(y, WideInt::from(*slot));
        y_acc += WideInt::from(y) * WideInt::from(*slot);
    }
    probe.accumulators(x_acc, y_acc, z_acc);
    probe.finish();

    PhiResult {
        n,
        value: x_acc + y_acc - z_acc,
        config: *config,
        peak,
    }
}
