//! Driver for the `phisum` command line: timing, reports, and the
//! differential self-test.

pub mod probe;
pub mod run;
pub mod selftest;

pub use probe::RunProbe;
pub use run::{run, Algorithm, OutputFormat, RunError, RunReport, RunRequest};
pub use selftest::{selftest, SelftestOutcome};

/// Peak resident-set size of this process in kB, when the OS reports it.
pub fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|line| line.strip_prefix("VmHWM:"))
        .and_then(|rest| rest.trim().trim_end_matches("kB").trim().parse().ok())
}
