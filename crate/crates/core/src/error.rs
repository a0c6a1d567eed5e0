use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where in a simulation a failure was detected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellLocation {
    pub mesh: &'static str,
    pub i: isize,
    pub j: isize,
}

impl std::fmt::Display for CellLocation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} cell ({}, {})", self.mesh, self.i, self.j)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-admissible state: density {density:e}, pressure {pressure:e}")]
    NonAdmissible { density: f64, pressure: f64 },

    #[error("{source} at {location}, t = {time}")]
    NonAdmissibleAt {
        #[source]
        source: Box<Error>,
        location: CellLocation,
        time: f64,
    },

    #[error("eigenvector matrix is numerically singular (condition estimate {condition:e})")]
    DegenerateEigenbasis { condition: f64 },

    #[error("invalid resolution: {0}")]
    BadResolution(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("initial states generate vacuum: pressure positivity condition {critical:e} <= {du:e}")]
    VacuumFormation { critical: f64, du: f64 },

    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),

    #[error("grid is not square: {nx} x {ny}")]
    NonSquareGrid { nx: usize, ny: usize },

    #[error("unknown case `{0}`")]
    UnknownCase(String),
}

impl Error {
    /// Attach a cell location and time to an admissibility failure.
    pub fn at(self, location: CellLocation, time: f64) -> Error {
        match self {
            e @ Error::NonAdmissible { .. } => Error::NonAdmissibleAt {
                source: Box::new(e),
                location,
                time,
            },
            other => other,
        }
    }
}
