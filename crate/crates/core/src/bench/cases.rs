//! Registry of the benchmark problems.

use crate::dffv::SchemeParams;
use crate::error::{Error, Result};
use crate::euler::GasConstants;
use crate::grid::{Boundaries1D, Boundaries2D, BoundaryCondition, Quadrature};
use crate::riemann::{vortex_exact, ShockVortex};
use crate::system::Vector;

pub const GAMMA: f64 = 1.4;

pub const SOD_LEFT: Vector<3> = [1.0, 0.0, 1.0];
pub const SOD_RIGHT: Vector<3> = [0.125, 0.0, 0.1];
pub const DOUBLE_RAREFACTION_LEFT: Vector<3> = [1.0, -2.0, 0.4];
pub const DOUBLE_RAREFACTION_RIGHT: Vector<3> = [1.0, 2.0, 0.4];
pub const SHU_OSHER_LEFT: Vector<3> = [3.857143, 2.629369, 10.333333];

pub const CFG3_NE: Vector<4> = [1.5, 0.0, 0.0, 1.5];
pub const CFG3_NW: Vector<4> = [0.5323, 1.206, 0.0, 0.3];
pub const CFG3_SW: Vector<4> = [0.138, 1.206, 1.206, 0.029];
pub const CFG3_SE: Vector<4> = [0.5323, 0.0, 1.206, 0.3];

#[derive(Debug, Clone, Copy)]
pub enum Problem {
    Euler1D { bc: Boundaries1D<3>, ic: fn(f64) -> Vector<3> },
    Euler2D { bc: Boundaries2D<4>, ic: fn(f64, f64) -> Vector<4> },
    Advection { speed: f64, bc: Boundaries1D<1>, ic: fn(f64) -> Vector<1> },
}

/// Closed-form solution available for error measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exact {
    Riemann { left: Vector<3>, right: Vector<3>, x0: f64 },
    Vortex,
    /// Periodic transport of the initial data with constant speed.
    Transport,
}

#[derive(Debug, Clone, Copy)]
pub struct CaseSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub x_range: (f64, f64),
    /// `None` for 1-D cases.
    pub y_range: Option<(f64, f64)>,
    pub nx: usize,
    pub ny: usize,
    pub t_final: f64,
    pub theta: f64,
    pub quadrature: Quadrature,
    pub problem: Problem,
    pub exact: Option<Exact>,
}

impl CaseSpec {
    pub fn is_2d(&self) -> bool {
        self.y_range.is_some()
    }

    pub fn params(&self) -> SchemeParams {
        SchemeParams { theta: self.theta, ..SchemeParams::default() }
    }

    pub fn gas(&self) -> GasConstants {
        GasConstants { gamma: GAMMA, ..GasConstants::default() }
    }
}

/// `below` left of `x0`, `above` right of it, and their mean on the jump
/// itself, which is the exact average of a cell centered there.
fn across<const M: usize>(x: f64, x0: f64, below: Vector<M>, above: Vector<M>) -> Vector<M> {
    if x < x0 {
        below
    } else if x > x0 {
        above
    } else {
        std::array::from_fn(|k| 0.5 * (below[k] + above[k]))
    }
}

fn riemann_1d(left: Vector<3>, right: Vector<3>, x0: f64) -> impl Fn(f64) -> Vector<3> {
    move |x| across(x, x0, left, right)
}

fn sod(x: f64) -> Vector<3> {
    riemann_1d(SOD_LEFT, SOD_RIGHT, 0.5)(x)
}

fn double_rarefaction(x: f64) -> Vector<3> {
    riemann_1d(DOUBLE_RAREFACTION_LEFT, DOUBLE_RAREFACTION_RIGHT, 0.5)(x)
}

fn shu_osher(x: f64) -> Vector<3> {
    across(x, -4.0, SHU_OSHER_LEFT, [1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0])
}

fn woodward_colella(x: f64) -> Vector<3> {
    let middle = [1.0, 0.0, 1e-2];
    if x < 0.5 {
        across(x, 0.1, [1.0, 0.0, 1e3], middle)
    } else {
        across(x, 0.9, middle, [1.0, 0.0, 1e2])
    }
}

fn vortex(x: f64, y: f64) -> Vector<4> {
    vortex_exact(x, y, 0.0, &GasConstants::default())
}

fn explosion(x: f64, y: f64) -> Vector<4> {
    if (x * x + y * y).sqrt() < 0.4 {
        [1.0, 0.0, 0.0, 1.0]
    } else {
        [0.125, 0.0, 0.0, 0.1]
    }
}

fn shock_vortex(x: f64, y: f64) -> Vector<4> {
    ShockVortex::default().initial_state(x, y, &GasConstants::default())
}

fn riemann2d_cfg3(x: f64, y: f64) -> Vector<4> {
    let south = across(x, 1.0, CFG3_SW, CFG3_SE);
    let north = across(x, 1.0, CFG3_NW, CFG3_NE);
    across(y, 1.0, south, north)
}

fn sine(x: f64) -> Vector<1> {
    [(2.0 * std::f64::consts::PI * x).sin()]
}

pub fn case_registry() -> Vec<CaseSpec> {
    use BoundaryCondition::*;
    let free1 = Boundaries1D::uniform(Free);
    let free2 = Boundaries2D::uniform(Free);
    let sv = ShockVortex::default();
    let gas = GasConstants::default();
    vec![
        CaseSpec {
            name: "vortex",
            description: "isentropic vortex advected diagonally in a periodic box",
            x_range: (-10.0, 10.0),
            y_range: Some((-10.0, 10.0)),
            nx: 100,
            ny: 100,
            t_final: 0.1,
            theta: 1.3,
            quadrature: Quadrature::Gauss3,
            problem: Problem::Euler2D { bc: Boundaries2D::uniform(Periodic), ic: vortex },
            exact: Some(Exact::Vortex),
        },
        CaseSpec {
            name: "sod",
            description: "Sod shock tube",
            x_range: (0.0, 1.0),
            y_range: None,
            nx: 200,
            ny: 1,
            t_final: 0.2,
            theta: 1.3,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler1D { bc: free1, ic: sod },
            exact: Some(Exact::Riemann { left: SOD_LEFT, right: SOD_RIGHT, x0: 0.5 }),
        },
        CaseSpec {
            name: "double_rarefaction",
            description: "two rarefactions forming a near-vacuum",
            x_range: (0.0, 1.0),
            y_range: None,
            nx: 200,
            ny: 1,
            t_final: 0.15,
            theta: 1.3,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler1D { bc: free1, ic: double_rarefaction },
            exact: Some(Exact::Riemann {
                left: DOUBLE_RAREFACTION_LEFT,
                right: DOUBLE_RAREFACTION_RIGHT,
                x0: 0.5,
            }),
        },
        CaseSpec {
            name: "shu_osher",
            description: "shock interacting with a density sine wave",
            x_range: (-5.0, 5.0),
            y_range: None,
            nx: 600,
            ny: 1,
            t_final: 1.8,
            theta: 1.3,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler1D {
                bc: Boundaries1D { left: Inflow(SHU_OSHER_LEFT), right: Free },
                ic: shu_osher,
            },
            exact: None,
        },
        CaseSpec {
            name: "woodward_colella",
            description: "interacting blast waves between solid walls",
            x_range: (0.0, 1.0),
            y_range: None,
            nx: 400,
            ny: 1,
            t_final: 0.038,
            theta: 1.1,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler1D { bc: Boundaries1D::uniform(SolidWall), ic: woodward_colella },
            exact: None,
        },
        CaseSpec {
            name: "explosion",
            description: "cylindrical explosion",
            x_range: (-1.0, 1.0),
            y_range: Some((-1.0, 1.0)),
            nx: 400,
            ny: 400,
            t_final: 0.25,
            theta: 1.3,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler2D { bc: free2, ic: explosion },
            exact: None,
        },
        CaseSpec {
            name: "shock_vortex",
            description: "vortex passing through a stationary shock",
            x_range: (0.0, 2.0),
            y_range: Some((0.0, 1.0)),
            nx: 600,
            ny: 301,
            t_final: 0.7,
            theta: 1.3,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler2D {
                bc: Boundaries2D {
                    left: Inflow(sv.upstream(&gas)),
                    right: Free,
                    bottom: SolidWall,
                    top: SolidWall,
                },
                ic: shock_vortex,
            },
            exact: None,
        },
        CaseSpec {
            name: "riemann2d_cfg3",
            description: "2-D Riemann problem, configuration 3",
            x_range: (0.0, 1.2),
            y_range: Some((0.0, 1.2)),
            nx: 1000,
            ny: 1000,
            t_final: 1.0,
            theta: 1.3,
            quadrature: Quadrature::Midpoint,
            problem: Problem::Euler2D { bc: free2, ic: riemann2d_cfg3 },
            exact: None,
        },
        CaseSpec {
            name: "linear_advection",
            description: "sine wave transported once around a periodic interval",
            x_range: (0.0, 1.0),
            y_range: None,
            nx: 100,
            ny: 1,
            t_final: 1.0,
            theta: 1.3,
            quadrature: Quadrature::Gauss3,
            problem: Problem::Advection { speed: 1.0, bc: Boundaries1D::uniform(Periodic), ic: sine },
            exact: Some(Exact::Transport),
        },
    ]
}

pub fn find_case(name: &str) -> Result<CaseSpec> {
    case_registry()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownCase(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_literals() {
        let names: Vec<_> = case_registry().iter().map(|c| c.name).collect();
        assert_eq!(names.len(), 9);
        let sod = find_case("sod").unwrap();
        assert_eq!((sod.nx, sod.t_final, sod.x_range), (200, 0.2, (0.0, 1.0)));
        let Problem::Euler1D { ic, bc } = sod.problem else { panic!() };
        assert_eq!(ic(0.2), [1.0, 0.0, 1.0]);
        assert_eq!(ic(0.7), [0.125, 0.0, 0.1]);
        assert_eq!(bc, Boundaries1D::uniform(BoundaryCondition::Free));

        let wc = find_case("woodward_colella").unwrap();
        assert_eq!((wc.nx, wc.t_final, wc.theta), (400, 0.038, 1.1));
        let Problem::Euler1D { ic, bc } = wc.problem else { panic!() };
        assert_eq!((ic(0.05), ic(0.5), ic(0.95)), ([1.0, 0.0, 1000.0], [1.0, 0.0, 0.01], [1.0, 0.0, 100.0]));
        assert_eq!(bc, Boundaries1D::uniform(BoundaryCondition::SolidWall));

        let so = find_case("shu_osher").unwrap();
        let Problem::Euler1D { ic, .. } = so.problem else { panic!() };
        assert_eq!(ic(-4.5), [3.857143, 2.629369, 10.333333]);
        assert_eq!(ic(0.0), [1.0, 0.0, 1.0]);

        let r = find_case("riemann2d_cfg3").unwrap();
        assert_eq!((r.nx, r.ny, r.t_final, r.x_range), (1000, 1000, 1.0, (0.0, 1.2)));
        let Problem::Euler2D { ic, .. } = r.problem else { panic!() };
        assert_eq!(ic(1.1, 1.1), [1.5, 0.0, 0.0, 1.5]);
        assert_eq!(ic(0.5, 1.1), [0.5323, 1.206, 0.0, 0.3]);
        assert_eq!(ic(0.5, 0.5), [0.138, 1.206, 1.206, 0.029]);
        assert_eq!(ic(1.1, 0.5), [0.5323, 0.0, 1.206, 0.3]);

        let ex = find_case("explosion").unwrap();
        let Problem::Euler2D { ic, .. } = ex.problem else { panic!() };
        assert_eq!(ic(0.2, 0.2), [1.0, 0.0, 0.0, 1.0]);
        assert_eq!(ic(0.3, 0.3), [0.125, 0.0, 0.0, 0.1]);

        let dr = find_case("double_rarefaction").unwrap();
        assert_eq!((dr.nx, dr.t_final), (200, 0.15));
        assert!(matches!(find_case("nope"), Err(Error::UnknownCase(_))));
    }
}
