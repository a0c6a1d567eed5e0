//! Dual-formulation finite-volume (DF-FV) solver for hyperbolic systems of
//! conservation laws.
//!
//! Conserved cell averages live on a primal mesh while primitive cell averages
//! live on one (1-D) or two (2-D) meshes shifted by half a cell. The primitive
//! system is advanced with a path-conservative central-upwind scheme, whose
//! averages feed a flux-only update of the conserved ones; a conservative
//! post-processing step couples both sets once per time step.
//!
//! The crate is organised bottom-up:
//!
//! - [`system`] / [`euler`]: the system trait and its Euler and linear
//!   advection instances,
//! - [`grid`]: overlapping meshes, fields and ghost cells,
//! - [`recon`]: minmod limiters and characteristic reconstruction,
//! - [`pccu`]: the semi-discrete right-hand side of the primitive system,
//! - [`dffv`]: conservative update, post-processing and time stepping,
//! - [`riemann`]: exact reference solutions,
//! - [`bench`]: benchmark registry, norms, studies and visualisation rasters,
//! - [`acceptance`]: the end-to-end verification suite.

pub mod acceptance;
pub mod bench;
pub mod dffv;
pub mod error;
pub mod euler;
pub mod grid;
pub mod linalg;
pub mod pccu;
pub mod recon;
pub mod riemann;
pub mod system;

pub use dffv::{
    DualField1D, DualField2D, RunLog, Scheme1D, Scheme2D, SchemeParams, StepRecord,
    TimeIntegrator,
};
pub use error::{Error, Result};
pub use euler::{Euler1D, Euler2D, GasConstants};
pub use system::VarKind;
pub use grid::{
    BoundaryCondition, Boundaries1D, Boundaries2D, Field1D, Field2D, Grid1D, Grid2D, Mesh1D,
    Mesh2D, Quadrature,
};
pub use system::{Axis, EigenFrame, HyperbolicSystem, LinearAdvection, Matrix, Vector};
