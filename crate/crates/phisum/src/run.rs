use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::Serialize;

use phisum_core::summatory::baseline::ORACLE_GUARD;
use phisum_core::{
    default_split, phi_mertens_first_probed, phi_oracle, phi_space_saving_probed, Error,
    PeakElements, Phase, TuningConfig, WideInt, FALLBACK_THRESHOLD,
};

use crate::probe::RunProbe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Oracle,
    MertensFirst,
    SpaceSaving,
    Auto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::MertensFirst => "mertens-first",
            Algorithm::SpaceSaving => "space-saving",
            Algorithm::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunRequest {
    pub n: u64,
    pub algorithm: Algorithm,
    pub c: f64,
    pub a_override: Option<u64>,
    pub output: OutputFormat,
    pub verify: Option<WideInt>,
    pub progress: bool,
    pub instrument: bool,
}

impl RunRequest {
    pub fn new(n: u64) -> Self {
        Self {
            n,
            algorithm: Algorithm::Auto,
            c: 1.0,
            a_override: None,
            output: OutputFormat::Text,
            verify: None,
            progress: false,
            instrument: false,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Invalid(Error),
    Usage(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Invalid(e) => e.fmt(f),
            RunError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Invalid(e)
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq)]
pub struct PhaseTimesMs {
    pub init: f64,
    pub phase1: f64,
    pub phase2: f64,
    pub phase3: f64,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Contributions {
    pub phase1_flush: u64,
    pub phase2_flush: u64,
    pub phase3: u64,
}

/// Result of one invocation. Serializes to the JSON report.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunReport {
    pub n: u64,
    pub algorithm: Algorithm,
    /// Algorithm actually run once `auto` is resolved.
    pub dispatched: Algorithm,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub c: f64,
    /// `Φ(n)` in decimal.
    pub phi: String,
    pub phase_times_ms: PhaseTimesMs,
    pub peak_elements: PeakElementsReport,
    pub wall_time_ms: f64,
    pub verified: Option<bool>,
    /// Peak resident-set size, informational only.
    pub rss_kb: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contributions: Option<Contributions>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct PeakElementsReport {
    pub m_prime: u64,
    pub batch: u64,
    pub sieve: u64,
    pub mobius: u64,
    pub mertens: u64,
}

impl From<PeakElements> for PeakElementsReport {
    fn from(p: PeakElements) -> Self {
        Self {
            m_prime: p.m_prime,
            batch: p.batch,
            sieve: p.sieve,
            mobius: p.mobius,
            mertens: p.mertens,
        }
    }
}

impl RunReport {
    /// `Φ(n)` as an integer.
    pub fn value(&self) -> WideInt {
        self.phi.parse().expect("report holds a decimal integer")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Phi({}) = {}", self.n, self.phi);
        let _ = writeln!(out, "algorithm:      {}", self.dispatched.name());
        if let (Some(a), Some(b)) = (self.a, self.b) {
            let _ = writeln!(out, "split:          a = {a}, b = {b}, c = {}", self.c);
        }
        let t = &self.phase_times_ms;
        let _ = writeln!(
            out,
            "phase times:    init {:.1} ms, phase1 {:.1} ms, phase2 {:.1} ms, phase3 {:.1} ms",
            t.init, t.phase1, t.phase2, t.phase3
        );
        let p = &self.peak_elements;
        let _ = writeln!(
            out,
            "peak elements:  m_prime {}, batch {}, sieve {}, mobius {}, mertens {}",
            p.m_prime, p.batch, p.sieve, p.mobius, p.mertens
        );
        let _ = writeln!(out, "wall time:      {:.1} ms", self.wall_time_ms);
        if let Some(kb) = self.rss_kb {
            let _ = writeln!(out, "peak rss:       {kb} kB");
        }
        if let Some(c) = &self.contributions {
            let _ = writeln!(
                out,
                "contributions:  phase1 flush {}, phase2 flush {}, phase3 {}",
                c.phase1_flush, c.phase2_flush, c.phase3
            );
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified:       {}", if v { "yes" } else { "NO" });
        }
        out
    }
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Computes `Φ(n)` as requested.
///
/// `auto` runs the oracle below the fallback threshold and the space-saving
/// algorithm above it.
pub fn run(req: &RunRequest) -> Result<RunReport, RunError> {
    if !(req.c > 0.0 && req.c.is_finite()) {
        return Err(RunError::Usage(format!(
            "tuning coefficient must be positive, got {}",
            req.c
        )));
    }
    let config = match req.a_override {
        Some(a) => TuningConfig::new(req.n, a)?,
        None => default_split(req.n, req.c)?,
    };
    let dispatched = match req.algorithm {
        Algorithm::Auto if req.n < FALLBACK_THRESHOLD => Algorithm::Oracle,
        Algorithm::Auto => Algorithm::SpaceSaving,
        other => other,
    };
    if dispatched == Algorithm::Oracle && req.n > ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            n: req.n,
            guard: ORACLE_GUARD,
        }
        .into());
    }

    let mut probe = RunProbe::new(req.progress, req.instrument);
    let start = Instant::now();
    let (value, peak, split) = match dispatched {
        Algorithm::Oracle => (phi_oracle(req.n)?, PeakElements::default(), None),
        Algorithm::MertensFirst => {
            let r = phi_mertens_first_probed(&config, &mut probe);
            (r.value, r.peak, Some(config))
        }
        Algorithm::SpaceSaving => {
            let r = phi_space_saving_probed(&config, &mut probe);
            (r.value, r.peak, Some(config))
        }
        Algorithm::Auto => unreachable!(),
    };
    let wall = start.elapsed();

    let phase_times_ms = if dispatched == Algorithm::Oracle {
        PhaseTimesMs {
            phase1: ms(wall),
            ..Default::default()
        }
    } else {
        PhaseTimesMs {
            init: ms(probe.phase_time(Phase::Init)),
            phase1: ms(probe.phase_time(Phase::One)),
            phase2: ms(probe.phase_time(Phase::Two)),
            phase3: ms(probe.phase_time(Phase::Three)),
        }
    };
    let contributions = match (dispatched, probe.contributions()) {
        (Algorithm::SpaceSaving | Algorithm::MertensFirst, Some([p1, p2, p3])) => {
            Some(Contributions {
                phase1_flush: p1,
                phase2_flush: p2,
                phase3: p3,
            })
        }
        _ => None,
    };

    Ok(RunReport {
        n: req.n,
        algorithm: req.algorithm,
        dispatched,
        a: split.map(|c| c.a()),
        b: split.map(|c| c.b()),
        c: req.c,
        phi: value.to_string(),
        phase_times_ms,
        peak_elements: peak.into(),
        wall_time_ms: ms(wall),
        verified: req.verify.map(|v| v == value),
        rss_kb: crate::peak_rss_kb(),
        contributions,
    })
}
