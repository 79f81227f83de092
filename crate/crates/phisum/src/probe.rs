use std::time::{Duration, Instant};

use phisum_core::{Phase, Probe, Source};

/// Probe used by the CLI: per-phase wall times, optional progress on stderr,
/// and optional contribution counting.
#[derive(Debug)]
pub struct RunProbe {
    current: Option<(Phase, Instant)>,
    times: [Duration; 4],
    progress: Option<Instant>,
    contributions: Option<[u64; 3]>,
}

impl RunProbe {
    pub fn new(progress: bool, instrument: bool) -> Self {
        Self {
            current: None,
            times: [Duration::ZERO; 4],
            progress: progress.then(Instant::now),
            contributions: instrument.then_some([0; 3]),
        }
    }

    pub fn phase_time(&self, phase: Phase) -> Duration {
        self.times[phase as usize]
    }

    /// Contribution counts by source (phase-1 flush, phase-2 flush, phase 3),
    /// if instrumentation was requested.
    pub fn contributions(&self) -> Option<[u64; 3]> {
        self.contributions
    }

    fn close(&mut self) {
        if let Some((phase, start)) = self.current.take() {
            self.times[phase as usize] += start.elapsed();
        }
    }
}

impl Probe for RunProbe {
    fn enter_phase(&mut self, phase: Phase) {
        self.close();
        self.current = Some((phase, Instant::now()));
    }

    fn finish(&mut self) {
        self.close();
    }

    fn progress(&mut self, done: u64, total: u64) {
        if let Some(last) = &mut self.progress {
            if last.elapsed() >= Duration::from_secs(1) {
                *last = Instant::now();
                let pct = 100.0 * done as f64 / total.max(1) as f64;
                eprintln!("sieved {done}/{total} ({pct:.1}%)");
            }
        }
    }

    fn mertens_contribution(&mut self, source: Source, _y: u64, _arg: u64) {
        if let Some(counts) = &mut self.contributions {
            counts[source as usize] += 1;
        }
    }

    fn wants_contributions(&self) -> bool {
        self.contributions.is_some()
    }
}
