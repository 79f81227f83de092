use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phisum_core::summatory::baseline::{phi_oracle_at, phi_prefix_table};
use phisum_core::{default_split, phi_mertens_first, phi_space_saving, Error, WideInt};

/// Largest exhaustive range accepted by [`selftest`].
pub const SELFTEST_LIMIT_GUARD: u64 = 1_000_000;

pub const RANDOM_LO: u64 = 100_000;
pub const RANDOM_HI: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestOutcome {
    pub passed: bool,
    /// Deterministic transcript: identical inputs give identical bytes.
    pub report: String,
}

fn check(n: u64, oracle: WideInt, report: &mut String) -> bool {
    let cfg = default_split(n, 1.0).expect("n is in range");
    let first = phi_mertens_first(&cfg).value;
    let saving = phi_space_saving(&cfg).value;
    if first == oracle && saving == oracle {
        return true;
    }
    let _ = writeln!(
        report,
        "MISMATCH at n = {n} (a = {}): oracle {oracle}, mertens-first {first}, space-saving {saving}",
        cfg.a()
    );
    false
}

/// `random_count` seeded arguments in `[10^5, 10^9]`.
pub fn random_arguments(random_count: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..random_count)
        .map(|_| rng.gen_range(RANDOM_LO..=RANDOM_HI))
        .collect()
}

/// Oracle vs Mertens-first vs space-saving on every `n ≤ limit` and on
/// `random_count` seeded arguments. The space-saving algorithm runs with its
/// default split even below the fallback threshold.
pub fn selftest(limit: u64, random_count: u64, seed: u64) -> Result<SelftestOutcome, Error> {
    if limit == 0 {
        return Err(Error::ZeroArgument);
    }
    if limit > SELFTEST_LIMIT_GUARD {
        return Err(Error::GuardExceeded {
            n: limit,
            guard: SELFTEST_LIMIT_GUARD,
        });
    }
    let mut report = String::new();
    let table = phi_prefix_table(limit)?;
    let exhaustive_ok = (1..=limit).all(|n| check(n, table[n as usize], &mut report));
    let _ = writeln!(
        report,
        "exhaustive 1..={limit}: {}",
        if exhaustive_ok { "ok" } else { "FAILED" }
    );

    let mut random_ok = true;
    if exhaustive_ok && random_count > 0 {
        let points = random_arguments(random_count, seed);
        let oracle = phi_oracle_at(&points)?;
        random_ok = points
            .iter()
            .zip(&oracle)
            .all(|(&n, &v)| check(n, v, &mut report));
        let _ = writeln!(
            report,
            "random {random_count} in [{RANDOM_LO}, {RANDOM_HI}] seed {seed}: {}",
            if random_ok { "ok" } else { "FAILED" }
        );
    }
    let passed = exhaustive_ok && random_ok;
    let _ = writeln!(report, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(SelftestOutcome { passed, report })
}
