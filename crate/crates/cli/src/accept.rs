//! The full acceptance suite: the solver criteria plus byte-for-byte
//! determinism of the written files.

use std::path::Path;

use dffv_core::acceptance::{criteria, Outcome};
use serde::Serialize;

use crate::config::{OutputFormat, Overrides, RunConfig};
use crate::run::execute;

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Outcome> for ReportEntry {
    fn from(o: &Outcome) -> Self {
        ReportEntry { id: o.id, name: o.name.to_string(), passed: o.passed, detail: o.detail.clone() }
    }
}

/// Runs every criterion in order, handing each outcome to `report` as soon
/// as it is known.
pub fn run_suite(mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let mut all = Vec::new();
    for c in criteria() {
        let o = c.run();
        report(&o);
        all.push(o);
    }
    let o = determinism();
    report(&o);
    all.push(o);
    all
}

fn files_in(dir: &Path) -> std::io::Result<Vec<(String, Vec<u8>)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        if name.ends_with("_timing.json") {
            continue;
        }
        out.push((name, std::fs::read(&path)?));
    }
    out.sort();
    Ok(out)
}

/// Runs `config` twice into fresh directories, the second time on a pool of
/// `threads` workers, and compares every deterministic file.
fn identical_runs(mut config: RunConfig, threads: (usize, usize)) -> anyhow::Result<(bool, usize)> {
    let mut listings = Vec::new();
    for n in [threads.0, threads.1] {
        let dir = tempfile::tempdir()?;
        config.out = dir.path().to_path_buf();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
        pool.install(|| execute(&config))?;
        listings.push(files_in(dir.path())?);
    }
    Ok((listings[0] == listings[1], listings[0].len()))
}

fn determinism_check() -> anyhow::Result<(bool, String)> {
    let sod = RunConfig::resolve(Overrides {
        case: Some("sod".into()),
        snapshot_interval: Some(50),
        ..Overrides::default()
    })?;
    let explosion = RunConfig::resolve(Overrides {
        case: Some("explosion".into()),
        n: Some(64),
        t_final: Some(0.1),
        format: Some(OutputFormat::Grid),
        schlieren: Some(true),
        ..Overrides::default()
    })?;
    let (a, na) = identical_runs(sod, (1, 1))?;
    let (b, nb) = identical_runs(explosion, (1, 4))?;
    Ok((
        a && b,
        format!(
            "sod: {na} files {}; explosion on 1 and 4 threads: {nb} files {}",
            if a { "identical" } else { "differ" },
            if b { "identical" } else { "differ" }
        ),
    ))
}

pub fn determinism() -> Outcome {
    let (passed, detail) = match determinism_check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e:#}")),
    };
    Outcome { id: 10, name: "bitwise determinism", passed, detail }
}
