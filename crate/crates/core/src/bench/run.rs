//! Running registry cases with optional overrides.

use crate::bench::cases::{CaseSpec, Problem};
use crate::dffv::{DualField1D, DualField2D, RunLog, Scheme1D, Scheme2D, SchemeParams, StepRecord};
use crate::error::{Error, Result};
use crate::euler::{Euler1D, Euler2D};
use crate::grid::{Grid1D, Grid2D};
use crate::system::LinearAdvection;

/// Resolved settings of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub nx: usize,
    pub ny: usize,
    pub t_final: f64,
    pub params: SchemeParams,
}

impl RunSettings {
    pub fn defaults(spec: &CaseSpec) -> Self {
        RunSettings { nx: spec.nx, ny: spec.ny, t_final: spec.t_final, params: spec.params() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Euler1D(DualField1D<3>),
    Euler2D(DualField2D<4>),
    Advection(DualField1D<1>),
}

/// Borrowed view handed to observers during a run.
#[derive(Debug, Clone, Copy)]
pub enum SolutionRef<'a> {
    Euler1D(&'a DualField1D<3>),
    Euler2D(&'a DualField2D<4>),
    Advection(&'a DualField1D<1>),
}

impl Solution {
    pub fn as_ref(&self) -> SolutionRef<'_> {
        match self {
            Solution::Euler1D(s) => SolutionRef::Euler1D(s),
            Solution::Euler2D(s) => SolutionRef::Euler2D(s),
            Solution::Advection(s) => SolutionRef::Advection(s),
        }
    }

    pub fn time(&self) -> f64 {
        match self {
            Solution::Euler1D(s) => s.time,
            Solution::Euler2D(s) => s.time,
            Solution::Advection(s) => s.time,
        }
    }
}

pub fn grid_1d(spec: &CaseSpec, n: usize) -> Result<Grid1D> {
    Grid1D::new(spec.x_range.0, spec.x_range.1, n)
}

pub fn grid_2d(spec: &CaseSpec, nx: usize, ny: usize) -> Result<Grid2D> {
    let y = spec
        .y_range
        .ok_or_else(|| Error::BadParameter(format!("case `{}` is one-dimensional", spec.name)))?;
    Grid2D::new(spec.x_range, y, nx, ny)
}

pub fn scheme_1d(spec: &CaseSpec, n: usize, params: SchemeParams) -> Result<Scheme1D<Euler1D, 3>> {
    let Problem::Euler1D { bc, .. } = spec.problem else {
        return Err(Error::BadParameter(format!("case `{}` is not a 1-D Euler case", spec.name)));
    };
    Scheme1D::new(Euler1D::new(spec.gas()), grid_1d(spec, n)?, bc, params)
}

pub fn scheme_2d(spec: &CaseSpec, nx: usize, ny: usize, params: SchemeParams) -> Result<Scheme2D<Euler2D, 4>> {
    let Problem::Euler2D { bc, .. } = spec.problem else {
        return Err(Error::BadParameter(format!("case `{}` is not a 2-D Euler case", spec.name)));
    };
    Scheme2D::new(Euler2D::new(spec.gas()), grid_2d(spec, nx, ny)?, bc, params)
}

/// Initialise and run `spec`; `observer` sees every completed step.
pub fn run_case(
    spec: &CaseSpec,
    settings: &RunSettings,
    mut observer: impl FnMut(&StepRecord, SolutionRef<'_>),
) -> Result<(Solution, RunLog)> {
    match spec.problem {
        Problem::Euler1D { ic, .. } => {
            let scheme = scheme_1d(spec, settings.nx, settings.params)?;
            let state = scheme.initialize(ic, spec.quadrature)?;
            let (end, log) =
                scheme.run_to_time(state, settings.t_final, |s, r| observer(r, SolutionRef::Euler1D(s)))?;
            Ok((Solution::Euler1D(end), log))
        }
        Problem::Euler2D { ic, .. } => {
            let scheme = scheme_2d(spec, settings.nx, settings.ny, settings.params)?;
            let state = scheme.initialize(ic, spec.quadrature)?;
            let (end, log) =
                scheme.run_to_time(state, settings.t_final, |s, r| observer(r, SolutionRef::Euler2D(s)))?;
            Ok((Solution::Euler2D(end), log))
        }
        Problem::Advection { speed, bc, ic } => {
            let scheme = Scheme1D::new(LinearAdvection::new(speed), grid_1d(spec, settings.nx)?, bc, settings.params)?;
            let state = scheme.initialize(ic, spec.quadrature)?;
            let (end, log) =
                scheme.run_to_time(state, settings.t_final, |s, r| observer(r, SolutionRef::Advection(s)))?;
            Ok((Solution::Advection(end), log))
        }
    }
}
