//! Mertens-function tables, the hyperbola recursion and a summation oracle.
//!
//! The recursion comes from splitting `Σ_{xy≤n} μ(x) = 1` at `α·β = n`:
//!
//! ```text
//! M(n) = 1 + ⌊β⌋·M(α) − Σ_{x=1}^{α} μ(x)·⌊n/x⌋ − Σ_{y=2}^{⌊β⌋} M(⌊n/y⌋)
//! ```
//!
//! Only `⌊β⌋ = ⌊n/α⌋` is ever used, so any integer `1 ≤ α ≤ n` works.

use alloc::vec;
use alloc::vec::Vec;

use crate::numeric::isqrt;
use crate::sieve::{stream_mobius, MobiusSieve};
use crate::Error;

/// Largest argument accepted by [`mertens_oracle`].
pub const ORACLE_GUARD: u64 = 1_000_000_000;

/// `M(x)` for `0 ≤ x ≤ limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MertensTable {
    values: Vec<i64>,
}

impl MertensTable {
    /// Prefix sums of a dense Möbius vector (`mu[0]` is ignored).
    pub fn from_mobius(mu: &[i8]) -> Self {
        let mut values = Vec::with_capacity(mu.len().max(1));
        values.push(0);
        let mut m = 0i64;
        for &v in mu.iter().skip(1) {
            m += i64::from(v);
            values.push(m);
        }
        Self { values }
    }

    pub fn limit(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// `M(x)`; panics above [`MertensTable::limit`].
    #[inline]
    pub fn get(&self, x: u64) -> i64 {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Exact `M(x)` for every `x ≤ limit`, streaming the sieve.
pub fn mertens_table(limit: u64) -> MertensTable {
    let mut values = Vec::with_capacity(limit as usize + 1);
    values.push(0);
    let mut m = 0i64;
    stream_mobius(
        limit.max(1),
        MobiusSieve::default_block(limit.max(1)),
        |_, mu| {
            m += i64::from(mu);
            values.push(m);
        },
    );
    values.truncate(limit as usize + 1);
    MertensTable { values }
}

/// `y ↦ M(⌊n/y⌋)` for `1 ≤ y ≤ β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeMertensMap {
    n: u64,
    values: Vec<i64>,
}

impl LargeMertensMap {
    /// Fills entries `1..=beta` from `f(y) = M(⌊n/y⌋)`.
    pub fn from_fn(n: u64, beta: u64, mut f: impl FnMut(u64) -> i64) -> Self {
        let mut values = Vec::with_capacity(beta as usize + 1);
        values.push(0);
        values.extend((1..=beta).map(&mut f));
        Self { n, values }
    }

    /// Computes every `M(⌊n/y⌋)`, `y = ⌊n/α⌋` down to 1, with the recursion,
    /// reading small arguments from `small` and `mu`.
    ///
    /// Requires `isqrt(n) ≤ alpha ≤ small.limit()` and `mu` covering
    /// `isqrt(n)`.
    pub fn build(n: u64, alpha: u64, small: &MertensTable, mu: &[i8]) -> Self {
        assert!(alpha >= isqrt(n) && alpha >= 1 && alpha <= small.limit());
        let beta = n / alpha;
        let mut values = vec![0i64; beta as usize + 1];
        for y in (1..=beta).rev() {
            let v = n / y;
            let root = isqrt(v);
            let m = hyperbola_with(v, root, small.get(root), mu, |z| {
                let k = v / z;
                if k <= alpha {
                    small.get(k)
                } else {
                    values[(y * z) as usize]
                }
            });
            values[y as usize] = m;
        }
        Self { n, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Largest key.
    pub fn beta(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// `M(⌊n/y⌋)`.
    #[inline]
    pub fn get(&self, y: u64) -> i64 {
        assert!(y >= 1, "keys start at 1");
        self.values[y as usize]
    }
}

fn hyperbola_with(
    n: u64,
    alpha: u64,
    m_alpha: i64,
    mu: &[i8],
    mut large: impl FnMut(u64) -> i64,
) -> i64 {
    let beta = n / alpha;
    let mut acc = 1 + i128::from(beta) * i128::from(m_alpha);
    for x in 1..=alpha {
        let m = mu[x as usize];
        if m != 0 {
            acc -= i128::from(m) * i128::from(n / x);
        }
    }
    for y in 2..=beta {
        acc -= i128::from(large(y));
    }
    i64::try_from(acc).expect("Mertens value out of range")
}

/// `M(n)` from one application of the hyperbola recursion.
///
/// `small` must cover `[1, alpha]`, `large` must cover `2..=⌊n/alpha⌋`, and
/// `mu[x] = μ(x)` for `x ≤ alpha`.
pub fn mertens_hyperbola(
    n: u64,
    alpha: u64,
    small: &MertensTable,
    large: &LargeMertensMap,
    mu: &[i8],
) -> i64 {
    assert!(
        n >= 1 && (1..=n).contains(&alpha),
        "alpha = {alpha} out of range for n = {n}"
    );
    assert!(small.limit() >= alpha, "small table stops before alpha");
    assert!(mu.len() as u64 > alpha, "Möbius values stop before alpha");
    let beta = n / alpha;
    assert!(
        beta < 2 || large.beta() >= beta,
        "large map stops before beta"
    );
    debug_assert!(beta < 2 || large.n() == n);
    hyperbola_with(n, alpha, small.get(alpha), mu, |y| large.get(y))
}

/// `M(n)` by summing streamed Möbius values. Guarded at `n ≤ 10^9`.
pub fn mertens_oracle(n: u64) -> Result<i64, Error> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if n > ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            n,
            guard: ORACLE_GUARD,
        });
    }
    let mut m = 0i64;
    stream_mobius(n, MobiusSieve::default_block(n), |_, mu| m += i64::from(mu));
    Ok(m)
}
