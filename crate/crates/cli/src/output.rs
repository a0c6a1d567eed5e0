//! Files written by a run. Numbers are printed with 17 significant digits so
//! that they read back bit for bit.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use dffv_core::bench::{schlieren_field, SolutionRef, SCHLIEREN_K};
use dffv_core::{Field1D, Field2D, RunLog};
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};

pub const GRID_MAGIC: &[u8; 8] = b"DFFVGRID";

const U_1D: [&str; 3] = ["rho", "rho_u", "E"];
const V_1D: [&str; 3] = ["rho", "u", "p"];
const U_2D: [&str; 4] = ["rho", "rho_u", "rho_v", "E"];
const V_2D: [&str; 4] = ["rho", "u", "v", "p"];

#[derive(Debug, thiserror::Error)]
pub enum GridFileError {
    #[error("not a grid file")]
    BadMagic,
    #[error("grid file ends early")]
    Truncated,
    #[error("component name is not utf-8")]
    BadName,
}

/// Contents of a grid file: `nx × ny` values per named component, x fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFile {
    pub nx: usize,
    pub ny: usize,
    pub names: Vec<String>,
    pub components: Vec<Vec<f64>>,
}

impl GridFile {
    fn from_field<const M: usize>(field: &Field2D<M>, names: [&str; M]) -> Self {
        let components = (0..M)
            .map(|k| {
                let mut c = Vec::with_capacity(field.nx * field.ny);
                for j in 0..field.ny as isize {
                    for i in 0..field.nx as isize {
                        c.push(field.at(i, j)[k]);
                    }
                }
                c
            })
            .collect();
        GridFile { nx: field.nx, ny: field.ny, names: names.map(String::from).to_vec(), components }
    }

    fn from_line<const M: usize>(field: &Field1D<M>, names: [&str; M]) -> Self {
        let components = (0..M).map(|k| field.interior().iter().map(|w| w[k]).collect()).collect();
        GridFile { nx: field.n_interior(), ny: 1, names: names.map(String::from).to_vec(), components }
    }

    /// Magic, `u32` nx, ny and component count, the names as `u32` length
    /// plus utf-8 bytes, then the components one after another as
    /// little-endian doubles.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(20 + 8 * self.nx * self.ny * self.names.len());
        out.extend_from_slice(GRID_MAGIC);
        for v in [self.nx, self.ny, self.names.len()] {
            out.extend_from_slice(&(v as u32).to_le_bytes());
        }
        for name in &self.names {
            out.extend_from_slice(&(name.len() as u32).to_le_bytes());
            out.extend_from_slice(name.as_bytes());
        }
        for c in &self.components {
            for v in c {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, GridFileError> {
        let mut rest = bytes.strip_prefix(GRID_MAGIC.as_slice()).ok_or(GridFileError::BadMagic)?;
        let mut take = |n: usize| -> Result<&[u8], GridFileError> {
            if rest.len() < n {
                return Err(GridFileError::Truncated);
            }
            let (head, tail) = rest.split_at(n);
            rest = tail;
            Ok(head)
        };
        let mut u32_at = || -> Result<usize, GridFileError> { Ok(u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize) };
        let (nx, ny, m) = (u32_at()?, u32_at()?, u32_at()?);
        let mut names = Vec::with_capacity(m);
        for _ in 0..m {
            let len = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
            names.push(String::from_utf8(take(len)?.to_vec()).map_err(|_| GridFileError::BadName)?);
        }
        let mut components = Vec::with_capacity(m);
        for _ in 0..m {
            let raw = take(8 * nx * ny)?;
            components.push(raw.chunks_exact(8).map(|b| f64::from_le_bytes(b.try_into().unwrap())).collect());
        }
        Ok(GridFile { nx, ny, names, components })
    }
}

fn create(path: &Path) -> io::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_csv_1d<const M: usize>(path: &Path, field: &Field1D<M>, names: [&str; M]) -> io::Result<()> {
    let mut w = create(path)?;
    writeln!(w, "x,{}", names.join(","))?;
    for (i, v) in field.interior().iter().enumerate() {
        write!(w, "{:.16e}", field.center(i as isize))?;
        for x in v {
            write!(w, ",{x:.16e}")?;
        }
        writeln!(w)?;
    }
    w.flush()
}

fn write_csv_2d<const M: usize>(path: &Path, field: &Field2D<M>, names: [&str; M]) -> io::Result<()> {
    let mut w = create(path)?;
    writeln!(w, "x,y,{}", names.join(","))?;
    for j in 0..field.ny as isize {
        for i in 0..field.nx as isize {
            let (x, y) = field.center(i, j);
            write!(w, "{x:.16e},{y:.16e}")?;
            for v in field.at(i, j) {
                write!(w, ",{v:.16e}")?;
            }
            writeln!(w)?;
        }
    }
    w.flush()
}

fn write_grid(path: &Path, grid: &GridFile) -> io::Result<()> {
    std::fs::write(path, grid.encode())
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Grid => "grid",
    }
}

/// Writes the fields of `solution` as `<prefix>_<mesh>.<ext>` and returns
/// the paths.
pub fn write_snapshot(dir: &Path, prefix: &str, solution: SolutionRef<'_>, format: OutputFormat) -> io::Result<Vec<PathBuf>> {
    let ext = extension(format);
    let path = |mesh: &str| dir.join(format!("{prefix}_{mesh}.{ext}"));
    let mut written = Vec::new();
    match (solution, format) {
        (SolutionRef::Euler1D(s), OutputFormat::Csv) => {
            write_csv_1d(&path("U"), &s.u, U_1D)?;
            write_csv_1d(&path("V"), &s.v, V_1D)?;
            written.extend([path("U"), path("V")]);
        }
        (SolutionRef::Euler1D(s), OutputFormat::Grid) => {
            write_grid(&path("U"), &GridFile::from_line(&s.u, U_1D))?;
            write_grid(&path("V"), &GridFile::from_line(&s.v, V_1D))?;
            written.extend([path("U"), path("V")]);
        }
        (SolutionRef::Advection(s), OutputFormat::Csv) => {
            write_csv_1d(&path("U"), &s.u, ["u"])?;
            write_csv_1d(&path("V"), &s.v, ["u"])?;
            written.extend([path("U"), path("V")]);
        }
        (SolutionRef::Advection(s), OutputFormat::Grid) => {
            write_grid(&path("U"), &GridFile::from_line(&s.u, ["u"]))?;
            write_grid(&path("V"), &GridFile::from_line(&s.v, ["u"]))?;
            written.extend([path("U"), path("V")]);
        }
        (SolutionRef::Euler2D(s), OutputFormat::Csv) => {
            write_csv_2d(&path("U"), &s.u, U_2D)?;
            write_csv_2d(&path("Vx"), &s.vx, V_2D)?;
            write_csv_2d(&path("Vy"), &s.vy, V_2D)?;
            written.extend([path("U"), path("Vx"), path("Vy")]);
        }
        (SolutionRef::Euler2D(s), OutputFormat::Grid) => {
            write_grid(&path("U"), &GridFile::from_field(&s.u, U_2D))?;
            write_grid(&path("Vx"), &GridFile::from_field(&s.vx, V_2D))?;
            write_grid(&path("Vy"), &GridFile::from_field(&s.vy, V_2D))?;
            written.extend([path("U"), path("Vx"), path("Vy")]);
        }
    }
    Ok(written)
}

/// Schlieren raster of the primal density as `<prefix>_schlieren.<ext>`.
pub fn write_schlieren(dir: &Path, prefix: &str, u: &Field2D<4>, format: OutputFormat) -> io::Result<PathBuf> {
    let raster = schlieren_field(u, SCHLIEREN_K).map_err(io::Error::other)?;
    let path = dir.join(format!("{prefix}_schlieren.{}", extension(format)));
    match format {
        OutputFormat::Grid => {
            let grid = GridFile { nx: u.nx, ny: u.ny, names: vec!["schlieren".into()], components: vec![raster] };
            write_grid(&path, &grid)?;
        }
        OutputFormat::Csv => {
            let mut w = create(&path)?;
            writeln!(w, "x,y,schlieren")?;
            for j in 0..u.ny {
                for i in 0..u.nx {
                    let (x, y) = u.center(i as isize, j as isize);
                    writeln!(w, "{x:.16e},{y:.16e},{:.16e}", raster[j * u.nx + i])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(path)
}

/// Reproducible summary of a run. Wall-clock time lives in a separate file.
#[derive(Debug, Clone, Serialize)]
pub struct Meta<'a> {
    pub case: &'a str,
    pub config: &'a RunConfig,
    pub final_time: f64,
    pub steps: usize,
    pub initial_total: &'a [f64],
    pub final_total: &'a [f64],
    pub outflow: &'a [f64],
    pub drift: Vec<f64>,
    pub balance_residual: Vec<f64>,
    pub files: Vec<String>,
}

impl<'a> Meta<'a> {
    pub fn new(config: &'a RunConfig, log: &'a RunLog, final_time: f64, files: &[PathBuf]) -> Self {
        Meta {
            case: &config.case,
            config,
            final_time,
            steps: log.step_count(),
            initial_total: &log.initial_total,
            final_total: &log.final_total,
            outflow: &log.outflow,
            drift: log.drift(),
            balance_residual: log.balance_residual(),
            files: files
                .iter()
                .filter_map(|p| p.file_name().map(|f| f.to_string_lossy().into_owned()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub threads: usize,
}

pub fn write_json(path: &Path, value: &impl Serialize) -> io::Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()
}
