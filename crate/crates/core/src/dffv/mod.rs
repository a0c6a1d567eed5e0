//! The coupled dual-formulation stepper.
//!
//! Conserved averages `Ū` live on the primal mesh, primitive averages `V̄` on
//! the staggered mesh(es). Each stage updates `Ū` with fluxes evaluated
//! directly at the staggered averages (no reconstruction) and `V̄` with the
//! path-conservative central-upwind kernel; after the full Runge–Kutta step a
//! conservative post-processing rebuilds `V̄` from a limited reconstruction of
//! `U` and corrects `Ū` without changing its total.

mod one_d;
mod post;
mod two_d;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Field1D, Field2D};
use crate::pccu::PccuParams;

pub use one_d::Scheme1D;
pub use post::post_process_line;
pub use two_d::Scheme2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeIntegrator {
    /// Three-stage strong-stability-preserving Runge–Kutta.
    Ssprk3,
    /// Single forward-Euler stage per step.
    ForwardEuler,
}

impl TimeIntegrator {
    /// Weights of the stage right-hand sides in the composed update.
    fn stage_weights(self) -> &'static [f64] {
        match self {
            TimeIntegrator::Ssprk3 => &[1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
            TimeIntegrator::ForwardEuler => &[1.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeParams {
    pub theta: f64,
    pub cfl: f64,
    pub post_processing: bool,
    /// Keep the `δV` correction in the primitive flux.
    pub anti_diffusion: bool,
    pub integrator: TimeIntegrator,
}

impl Default for SchemeParams {
    fn default() -> Self {
        SchemeParams {
            theta: 1.3,
            cfl: 0.475,
            post_processing: true,
            anti_diffusion: true,
            integrator: TimeIntegrator::Ssprk3,
        }
    }
}

impl SchemeParams {
    pub fn validate(&self) -> Result<()> {
        if !(1.0..=2.0).contains(&self.theta) {
            return Err(Error::BadParameter(format!("theta must lie in [1, 2], got {}", self.theta)));
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::BadParameter(format!("cfl must lie in (0, 1), got {}", self.cfl)));
        }
        Ok(())
    }

    pub(crate) fn pccu(&self) -> PccuParams {
        PccuParams { theta: self.theta, anti_diffusion: self.anti_diffusion }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualField1D<const M: usize> {
    pub u: Field1D<M>,
    pub v: Field1D<M>,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualField2D<const M: usize> {
    pub u: Field2D<M>,
    pub vx: Field2D<M>,
    pub vy: Field2D<M>,
    pub time: f64,
}

/// How the next time step is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    /// CFL-limited from the current state, never stepping past `until`.
    Adaptive { until: f64 },
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    /// Time after the step.
    pub time: f64,
    pub dt: f64,
    pub max_speed: f64,
    /// Net amount of each conserved quantity that left the domain during the
    /// step (boundary fluxes plus the post-processing boundary terms).
    pub outflow: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunLog {
    pub steps: Vec<StepRecord>,
    /// `∫Ū` at the start and end of the run.
    pub initial_total: Vec<f64>,
    pub final_total: Vec<f64>,
    pub outflow: Vec<f64>,
}

impl RunLog {
    pub(crate) fn new(initial_total: Vec<f64>) -> Self {
        let m = initial_total.len();
        RunLog {
            steps: Vec::new(),
            final_total: initial_total.clone(),
            initial_total,
            outflow: vec![0.0; m],
        }
    }

    pub(crate) fn push(&mut self, record: StepRecord, total: Vec<f64>) {
        for (acc, o) in self.outflow.iter_mut().zip(&record.outflow) {
            *acc += o;
        }
        self.final_total = total;
        self.steps.push(record);
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Change of the totals, relative to the initial totals. Components whose
    /// initial total is exactly zero report the absolute change.
    pub fn drift(&self) -> Vec<f64> {
        self.initial_total
            .iter()
            .zip(&self.final_total)
            .map(|(&a, &b)| if a == 0.0 { (b - a).abs() } else { (b - a).abs() / a.abs() })
            .collect()
    }

    /// `|∫Ū(t) − ∫Ū(0) + outflow|` per component.
    pub fn balance_defect(&self) -> Vec<f64> {
        (0..self.initial_total.len())
            .map(|k| (self.final_total[k] - self.initial_total[k] + self.outflow[k]).abs())
            .collect()
    }

    /// [`balance_defect`](Self::balance_defect) relative to the scale of the
    /// totals involved. Meaningless for components whose totals vanish, such
    /// as the momentum of a flow at rest.
    pub fn balance_residual(&self) -> Vec<f64> {
        (0..self.initial_total.len())
            .map(|k| {
                let (a, b, o) = (self.initial_total[k], self.final_total[k], self.outflow[k]);
                let scale = a.abs().max(b.abs()).max(o.abs()).max(f64::MIN_POSITIVE);
                (b - a + o).abs() / scale
            })
            .collect()
    }
}
