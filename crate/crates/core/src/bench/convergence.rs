//! Grid-refinement studies.

use std::fmt::Write;

use crate::bench::cases::{CaseSpec, Exact, Problem};
use crate::bench::norms::{l1_against_reference_1d, l1_error_1d, l1_error_2d, rate};
use crate::bench::run::{run_case, RunSettings, Solution};
use crate::dffv::SchemeParams;
use crate::error::{Error, Result};
use crate::riemann::{solve_riemann, vortex_exact};

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ErrorReport {
    pub case: String,
    pub resolutions: Vec<usize>,
    pub columns: Vec<String>,
    /// `errors[level][column]`.
    pub errors: Vec<Vec<f64>>,
}

impl ErrorReport {
    /// `rates[level][column]`; undefined on the coarsest level or for
    /// vanishing errors.
    pub fn rates(&self) -> Vec<Vec<Option<f64>>> {
        self.errors
            .iter()
            .enumerate()
            .map(|(l, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &e)| if l == 0 { None } else { rate(self.errors[l - 1][c], e) })
                    .collect()
            })
            .collect()
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Plain-text table with an error and a rate column per component.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:>6}", "N");
        for c in &self.columns {
            let _ = write!(out, " | {:>12} {:>6}", c, "rate");
        }
        out.push('\n');
        let rates = self.rates();
        for (l, n) in self.resolutions.iter().enumerate() {
            let _ = write!(out, "{n:>6}");
            for (c, e) in self.errors[l].iter().enumerate() {
                let r = rates[l][c].map_or_else(|| "--".to_string(), |r| format!("{r:.2}"));
                let _ = write!(out, " | {e:>12.3e} {r:>6}");
            }
            out.push('\n');
        }
        out
    }
}

fn settings(spec: &CaseSpec, n: usize, params: SchemeParams) -> RunSettings {
    let ny = if spec.is_2d() { n } else { 1 };
    RunSettings { nx: n, ny, t_final: spec.t_final, params }
}

/// Errors per resolution. Cases with a closed-form solution are compared
/// against exact cell averages; 1-D Euler cases without one are compared
/// against the same scheme on a mesh eight times finer than the finest level.
pub fn convergence_study(spec: &CaseSpec, resolutions: &[usize], params: SchemeParams) -> Result<ErrorReport> {
    if resolutions.is_empty() {
        return Err(Error::BadParameter("no resolutions given".into()));
    }
    let t = spec.t_final;
    let q = spec.quadrature;
    let gas = spec.gas();
    let mut columns = Vec::new();
    let mut errors = Vec::new();
    let reference = match (spec.exact, spec.problem) {
        (None, Problem::Euler1D { .. }) => {
            let finest = *resolutions.iter().max().unwrap_or(&0);
            match run_case(spec, &settings(spec, 8 * finest, params), |_, _| {})?.0 {
                Solution::Euler1D(s) => Some(s.u),
                _ => None,
            }
        }
        (None, _) => {
            return Err(Error::BadParameter(format!(
                "case `{}` has no exact solution for a refinement study",
                spec.name
            )))
        }
        _ => None,
    };
    for &n in resolutions {
        let (solution, _) = run_case(spec, &settings(spec, n, params), |_, _| {})?;
        let row = match (&solution, spec.exact) {
            (Solution::Euler2D(s), Some(Exact::Vortex)) => {
                columns = ["rho (U)", "rho*u (U)", "E (U)", "v (Vx)", "p (Vy)"].map(String::from).to_vec();
                let sys = crate::euler::Euler2D::new(gas);
                let cons = |x: f64, y: f64| {
                    use crate::system::HyperbolicSystem;
                    sys.prim_to_cons(&vortex_exact(x, y, t, &gas)).unwrap_or([f64::NAN; 4])
                };
                let prim = |x: f64, y: f64| vortex_exact(x, y, t, &gas);
                let eu = l1_error_2d(&s.u, cons, q, (true, true));
                let evx = l1_error_2d(&s.vx, prim, q, (true, true));
                let evy = l1_error_2d(&s.vy, prim, q, (true, true));
                vec![eu[0], eu[1], eu[3], evx[2], evy[3]]
            }
            (Solution::Euler1D(s), Some(Exact::Riemann { left, right, x0 })) => {
                columns = ["rho (U)", "rho*u (U)", "E (U)", "rho (V)", "u (V)", "p (V)"].map(String::from).to_vec();
                let riemann = solve_riemann(left, right, &gas)?;
                let sys = crate::euler::Euler1D::new(gas);
                let cons = |x: f64| {
                    use crate::system::HyperbolicSystem;
                    sys.prim_to_cons(&riemann.at(x, t, x0)).unwrap_or([f64::NAN; 3])
                };
                let eu = l1_error_1d(&s.u, cons, q, false);
                let ev = l1_error_1d(&s.v, |x| riemann.at(x, t, x0), q, false);
                eu.into_iter().chain(ev).collect()
            }
            (Solution::Advection(s), Some(Exact::Transport)) => {
                columns = vec!["U".into(), "V".into()];
                let Problem::Advection { speed, ic, .. } = spec.problem else { unreachable!() };
                let (a, b) = spec.x_range;
                let exact = |x: f64| ic(a + (x - speed * t - a).rem_euclid(b - a));
                let eu = l1_error_1d(&s.u, exact, q, true);
                let ev = l1_error_1d(&s.v, exact, q, true);
                vec![eu[0], ev[0]]
            }
            (Solution::Euler1D(s), None) => {
                columns = ["rho (U)", "rho*u (U)", "E (U)"].map(String::from).to_vec();
                let r = reference.as_ref().ok_or_else(|| Error::BadParameter("missing reference".into()))?;
                l1_against_reference_1d(&s.u, r)?
            }
            _ => {
                return Err(Error::BadParameter(format!("no error measure for case `{}`", spec.name)));
            }
        };
        log::info!("{} N = {n}: {row:?}", spec.name);
        errors.push(row);
    }
    Ok(ErrorReport { case: spec.name.to_string(), resolutions: resolutions.to_vec(), columns, errors })
}
