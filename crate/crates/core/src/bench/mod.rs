//! Benchmark cases, error measurement, refinement studies and rasters.

pub mod cases;
pub mod convergence;
pub mod norms;
pub mod radial;
pub mod raster;
pub mod run;

pub use cases::{case_registry, find_case, CaseSpec, Exact, Problem};
pub use convergence::{convergence_study, ErrorReport};
pub use norms::{coarsen_1d, l1_against_reference_1d, l1_diff_1d, l1_diff_2d, l1_error_1d, l1_error_2d, rate};
pub use radial::{radial_reference, RadialProfile};
pub use raster::{diagonal_slice, schlieren, schlieren_field, SCHLIEREN_K};
pub use run::{run_case, RunSettings, Solution, SolutionRef};
