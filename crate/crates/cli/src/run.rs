//! One run of a registry case with all of its output files.

use std::path::PathBuf;
use std::time::Instant;

use dffv_core::bench::{run_case, Solution, SolutionRef};
use dffv_core::RunLog;
use log::{info, warn};

use crate::config::RunConfig;
use crate::output::{write_json, write_schlieren, write_snapshot, Meta, Timing};

#[derive(Debug)]
pub struct RunSummary {
    pub solution: Solution,
    pub log: RunLog,
    /// Deterministic files, in the order written. The timing file is not
    /// among them.
    pub files: Vec<PathBuf>,
    pub timing: PathBuf,
}

/// Runs `config` and writes snapshots, metadata and timing into
/// `config.out`, which is created if needed.
pub fn execute(config: &RunConfig) -> anyhow::Result<RunSummary> {
    let spec = config.spec()?;
    let dir = &config.out;
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    let mut write_error = None;
    let started = Instant::now();
    let (solution, log) = run_case(&spec, &config.settings(), |record, state| {
        let Some(every) = config.snapshot_interval else { return };
        let done = record.index + 1;
        if write_error.is_some() || done % every != 0 {
            return;
        }
        let prefix = format!("{}_step{done:06}", config.case);
        match write_snapshot(dir, &prefix, state, config.format) {
            Ok(paths) => files.extend(paths),
            Err(e) => write_error = Some(e),
        }
    })?;
    let wall = started.elapsed().as_secs_f64();
    if let Some(e) = write_error {
        return Err(e.into());
    }
    info!("{}: {} steps to t = {} in {wall:.2} s", config.case, log.step_count(), solution.time());

    files.extend(write_snapshot(dir, &config.case, solution.as_ref(), config.format)?);
    if config.schlieren {
        match solution.as_ref() {
            SolutionRef::Euler2D(s) => files.push(write_schlieren(dir, &config.case, &s.u, config.format)?),
            _ => warn!("schlieren output needs a 2-D case; skipped"),
        }
    }
    let meta_path = dir.join(format!("{}_meta.json", config.case));
    let mut listed = files.clone();
    listed.push(meta_path.clone());
    write_json(&meta_path, &Meta::new(config, &log, solution.time(), &listed))?;
    files.push(meta_path);

    let timing = dir.join(format!("{}_timing.json", config.case));
    write_json(&timing, &Timing { wall_seconds: wall, threads: rayon::current_num_threads() })?;
    Ok(RunSummary { solution, log, files, timing })
}
