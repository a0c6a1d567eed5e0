use log::trace;

use super::post::post_process_line;
use super::{DualField1D, RunLog, SchemeParams, StepRecord, StepSize, TimeIntegrator};
use crate::error::{CellLocation, Error, Result};
use crate::grid::{try_sample_1d, Boundaries1D, Field1D, Grid1D, Mesh1D, Quadrature};
use crate::linalg::compensated_sum;
use crate::pccu::{prim_rhs_line, LineError};
use crate::system::{Axis, HyperbolicSystem, VarKind, Vector};

/// Time derivatives of both fields at one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct Rhs1D<const M: usize> {
    pub du: Vec<Vector<M>>,
    pub dv: Vec<Vector<M>>,
    pub max_speed: f64,
    /// `F(right edge) − F(left edge)` of the conserved flux.
    pub boundary_flux: Vector<M>,
}

#[derive(Debug, Clone)]
pub struct Scheme1D<S, const M: usize> {
    pub system: S,
    pub grid: Grid1D,
    pub bc: Boundaries1D<M>,
    pub params: SchemeParams,
}

fn locate(e: LineError, mesh: &'static str, time: f64) -> Error {
    e.error.at(CellLocation { mesh, i: e.index, j: 0 }, time)
}

impl<S: HyperbolicSystem<M>, const M: usize> Scheme1D<S, M> {
    pub fn new(system: S, grid: Grid1D, bc: Boundaries1D<M>, params: SchemeParams) -> Result<Self> {
        params.validate()?;
        bc.validate()?;
        Ok(Scheme1D { system, grid, bc, params })
    }

    /// Cell averages of the primitive initial data `ic` on the staggered mesh
    /// and of `U(ic)` on the primal mesh.
    pub fn initialize(&self, ic: impl Fn(f64) -> Vector<M>, quadrature: Quadrature) -> Result<DualField1D<M>> {
        let periodic = self.bc.is_periodic();
        let sys = &self.system;
        let u = try_sample_1d(&self.grid, Mesh1D::Primal, quadrature, periodic, |x| sys.prim_to_cons(&ic(x)))?;
        let v = try_sample_1d(&self.grid, Mesh1D::Staggered, quadrature, periodic, |x| {
            let w = ic(x);
            sys.prim_to_cons(&w)?;
            Ok(w)
        })?;
        let mut state = DualField1D { u, v, time: 0.0 };
        self.fill_ghosts(&mut state)?;
        Ok(state)
    }

    pub fn fill_ghosts(&self, state: &mut DualField1D<M>) -> Result<()> {
        state.u.fill_ghosts(&self.bc, &self.system, VarKind::Conserved)?;
        state.v.fill_ghosts(&self.bc, &self.system, VarKind::Primitive)
    }

    /// `∫Ū` per component, summed with compensation.
    pub fn totals(&self, state: &DualField1D<M>) -> Vec<f64> {
        (0..M)
            .map(|k| compensated_sum(state.u.interior().iter().map(|w| w[k])) * self.grid.dx)
            .collect()
    }

    /// Conserved update: fluxes evaluated directly at `U(V̄)` on the
    /// staggered cells. Ghosts are not used.
    pub fn cons_rhs(&self, state: &DualField1D<M>) -> Result<(Vec<Vector<M>>, Vector<M>)> {
        let n = self.grid.n;
        let mut flux = Vec::with_capacity(n + 1);
        for (i, v) in state.v.interior().iter().enumerate() {
            let f = self
                .system
                .prim_to_cons(v)
                .and_then(|u| self.system.flux_cons(&u, Axis::X))
                .map_err(|e| e.at(CellLocation { mesh: "staggered", i: i as isize, j: 0 }, state.time))?;
            flux.push(f);
        }
        let inv_h = 1.0 / self.grid.dx;
        let du = (0..n)
            .map(|j| {
                let mut out = [0.0; M];
                for k in 0..M {
                    out[k] = -(inv_h * (flux[j + 1][k] - flux[j][k]));
                }
                out
            })
            .collect();
        let mut edge = [0.0; M];
        for k in 0..M {
            edge[k] = flux[n][k] - flux[0][k];
        }
        Ok((du, edge))
    }

    /// Primitive update and the largest one-sided speed. Needs ghosts.
    pub fn prim_rhs(&self, state: &DualField1D<M>) -> Result<(Vec<Vector<M>>, f64)> {
        prim_rhs_line(
            &self.system,
            &state.v.data,
            state.v.n_interior(),
            self.grid.ghost,
            self.grid.dx,
            &self.params.pccu(),
            Axis::X,
        )
        .map_err(|e| locate(e, "staggered", state.time))
    }

    pub fn rhs(&self, state: &DualField1D<M>) -> Result<Rhs1D<M>> {
        let (du, boundary_flux) = self.cons_rhs(state)?;
        let (dv, max_speed) = self.prim_rhs(state)?;
        Ok(Rhs1D { du, dv, max_speed, boundary_flux })
    }

    fn dt_for_speed(&self, max_speed: f64) -> f64 {
        if max_speed > 0.0 {
            self.params.cfl * self.grid.dx / max_speed
        } else {
            self.params.cfl * self.grid.dx
        }
    }

    /// CFL time step from freshly computed speeds of `state`.
    pub fn max_stable_dt(&self, state: &DualField1D<M>) -> Result<f64> {
        let mut s = state.clone();
        self.fill_ghosts(&mut s)?;
        Ok(self.dt_for_speed(self.prim_rhs(&s)?.1))
    }

    /// Conservative post-processing of a completed step. Ghosts of both
    /// inputs must be filled. Returns the new fields and the change of `∫Ū`.
    pub fn post_process(&self, u_star: &Field1D<M>, v_star: &Field1D<M>, time: f64) -> Result<(Field1D<M>, Field1D<M>, Vector<M>)> {
        let out = post_process_line(&self.system, &u_star.data, &v_star.data, self.grid.n, self.grid.ghost, self.grid.dx)
            .map_err(|e| locate(e, "staggered", time))?;
        let u = Field1D::from_interior(self.grid, Mesh1D::Primal, &out.u)?;
        let v = Field1D::from_interior(self.grid, Mesh1D::Staggered, &out.v)?;
        let mut change = out.boundary;
        for c in change.iter_mut() {
            *c *= self.grid.dx;
        }
        Ok((u, v, change))
    }

    /// One full time step, post-processing included.
    pub fn step(&self, state: &DualField1D<M>, size: StepSize, index: usize) -> Result<(DualField1D<M>, StepRecord)> {
        let mut s0 = state.clone();
        self.fill_ghosts(&mut s0)?;
        let r0 = self.rhs(&s0)?;
        let (dt, finish) = match size {
            StepSize::Fixed(dt) => (dt, None),
            StepSize::Adaptive { until } => {
                let dt = self.dt_for_speed(r0.max_speed);
                if state.time + dt >= until {
                    (until - state.time, Some(until))
                } else {
                    (dt, None)
                }
            }
        };
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::BadParameter(format!("non-positive time step {dt:e} at t = {}", state.time)));
        }

        let weights = self.params.integrator.stage_weights();
        let mut fluxes = vec![r0.boundary_flux];
        let mut cur = advance(&s0, &s0, &r0, dt, 0.0);
        if self.params.integrator == TimeIntegrator::Ssprk3 {
            self.fill_ghosts(&mut cur)?;
            let r1 = self.rhs(&cur)?;
            fluxes.push(r1.boundary_flux);
            cur = advance(&s0, &cur, &r1, dt, 0.75);
            self.fill_ghosts(&mut cur)?;
            let r2 = self.rhs(&cur)?;
            fluxes.push(r2.boundary_flux);
            cur = advance(&s0, &cur, &r2, dt, 1.0 / 3.0);
        }
        let mut outflow = vec![0.0; M];
        for (w, f) in weights.iter().zip(&fluxes) {
            for k in 0..M {
                outflow[k] += dt * w * f[k];
            }
        }

        self.fill_ghosts(&mut cur)?;
        let time = finish.unwrap_or(state.time + dt);
        if self.params.post_processing {
            let (u, v, change) = self.post_process(&cur.u, &cur.v, time)?;
            cur.u = u;
            cur.v = v;
            for k in 0..M {
                outflow[k] -= change[k];
            }
        }
        cur.time = time;
        self.check_admissible(&cur)?;
        self.fill_ghosts(&mut cur)?;
        trace!("step {index}: t = {time}, dt = {dt:e}");
        Ok((cur, StepRecord { index, time, dt, max_speed: r0.max_speed, outflow }))
    }

    fn check_admissible(&self, state: &DualField1D<M>) -> Result<()> {
        for (i, u) in state.u.interior().iter().enumerate() {
            self.system
                .cons_to_prim(u)
                .map_err(|e| e.at(CellLocation { mesh: "primal", i: i as isize, j: 0 }, state.time))?;
        }
        for (i, v) in state.v.interior().iter().enumerate() {
            self.system
                .prim_to_cons(v)
                .map_err(|e| e.at(CellLocation { mesh: "staggered", i: i as isize, j: 0 }, state.time))?;
        }
        Ok(())
    }

    /// Steps until `t_final`, clipping the last step to land on it exactly.
    /// `observer` sees the state after every step.
    pub fn run_to_time(
        &self,
        state: DualField1D<M>,
        t_final: f64,
        mut observer: impl FnMut(&DualField1D<M>, &StepRecord),
    ) -> Result<(DualField1D<M>, RunLog)> {
        if t_final < state.time {
            return Err(Error::BadParameter(format!(
                "final time {t_final} precedes current time {}",
                state.time
            )));
        }
        let mut log = RunLog::new(self.totals(&state));
        let mut cur = state;
        while cur.time < t_final {
            let (next, record) = self.step(&cur, StepSize::Adaptive { until: t_final }, log.step_count())?;
            observer(&next, &record);
            log.push(record, self.totals(&next));
            cur = next;
        }
        Ok((cur, log))
    }

    /// `n` steps of constant size `dt`.
    pub fn run_steps(
        &self,
        state: DualField1D<M>,
        dt: f64,
        n: usize,
        mut observer: impl FnMut(&DualField1D<M>, &StepRecord),
    ) -> Result<(DualField1D<M>, RunLog)> {
        let mut log = RunLog::new(self.totals(&state));
        let mut cur = state;
        for index in 0..n {
            let (next, record) = self.step(&cur, StepSize::Fixed(dt), index)?;
            observer(&next, &record);
            log.push(record, self.totals(&next));
            cur = next;
        }
        Ok((cur, log))
    }
}

/// `c·S₀ + (1−c)·(S + dt·L)` on the interior of both fields.
fn advance<const M: usize>(s0: &DualField1D<M>, s: &DualField1D<M>, r: &Rhs1D<M>, dt: f64, c: f64) -> DualField1D<M> {
    let mut out = s.clone();
    combine(out.u.interior_mut(), s0.u.interior(), s.u.interior(), &r.du, dt, c);
    combine(out.v.interior_mut(), s0.v.interior(), s.v.interior(), &r.dv, dt, c);
    out
}

pub(crate) fn combine<const M: usize>(
    out: &mut [Vector<M>],
    w0: &[Vector<M>],
    w: &[Vector<M>],
    l: &[Vector<M>],
    dt: f64,
    c: f64,
) {
    for (((o, a), b), d) in out.iter_mut().zip(w0).zip(w).zip(l) {
        for k in 0..M {
            let euler = b[k] + dt * d[k];
            o[k] = if c == 0.0 { euler } else { c * a[k] + (1.0 - c) * euler };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::Euler1D;
    use crate::grid::BoundaryCondition;
    use crate::system::LinearAdvection;

    fn sod_scheme(n: usize, bc: BoundaryCondition<3>) -> Scheme1D<Euler1D, 3> {
        Scheme1D::new(
            Euler1D::default(),
            Grid1D::new(0.0, 1.0, n).unwrap(),
            Boundaries1D::uniform(bc),
            SchemeParams::default(),
        )
        .unwrap()
    }

    fn sod(x: f64) -> [f64; 3] {
        if x < 0.5 {
            [1.0, 0.0, 1.0]
        } else {
            [0.125, 0.0, 0.1]
        }
    }

    #[test]
    fn constant_state_unchanged() {
        let s = sod_scheme(20, BoundaryCondition::Free);
        let st = s.initialize(|_| [1.0, 0.3, 2.0], Quadrature::Midpoint).unwrap();
        let (du, _) = s.cons_rhs(&st).unwrap();
        assert!(du.iter().all(|d| d.iter().all(|&x| x == 0.0)));
        let (next, _) = s.step(&st, StepSize::Adaptive { until: 1.0 }, 0).unwrap();
        for (a, b) in next.u.interior().iter().zip(st.u.interior()) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() <= 1e-14 * b[k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn cons_rhs_telescopes() {
        let s = sod_scheme(40, BoundaryCondition::Free);
        let st = s.initialize(|x| [1.0 + 0.2 * x, 0.3 * x, 1.0 + x * x], Quadrature::Gauss3).unwrap();
        let (du, edge) = s.cons_rhs(&st).unwrap();
        for k in 0..3 {
            let total = compensated_sum(du.iter().map(|d| d[k])) * s.grid.dx;
            assert!((total + edge[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn sod_initial_dt() {
        let s = sod_scheme(200, BoundaryCondition::Free);
        let st = s.initialize(sod, Quadrature::Midpoint).unwrap();
        let dt = s.max_stable_dt(&st).unwrap();
        // fastest wave at t = 0 is the left sound speed
        let want = 0.475 * 0.005 / 1.4f64.sqrt();
        assert!((dt - want).abs() < 1e-15);
        let s = sod_scheme(10, BoundaryCondition::Free);
        let st = s.initialize(|_| [1.0, 0.0, 1.0], Quadrature::Midpoint).unwrap();
        assert!((s.max_stable_dt(&st).unwrap() - 0.475 * 0.1 / 1.4f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn run_to_time_lands_exactly() {
        let s = sod_scheme(50, BoundaryCondition::Free);
        let st = s.initialize(sod, Quadrature::Midpoint).unwrap();
        let (same, log) = s.run_to_time(st.clone(), 0.0, |_, _| {}).unwrap();
        assert_eq!(log.step_count(), 0);
        assert_eq!(same, st);
        let (end, log) = s.run_to_time(st, 0.05, |_, _| {}).unwrap();
        assert_eq!(end.time, 0.05);
        assert!(log.step_count() > 0);
    }

    #[test]
    fn free_boundary_balance() {
        let s = sod_scheme(60, BoundaryCondition::Free);
        let st = s.initialize(|x| [1.0 + 0.5 * (6.0 * x).sin(), 0.5, 1.0 + 0.2 * x], Quadrature::Gauss3).unwrap();
        let (_, log) = s.run_to_time(st, 0.1, |_, _| {}).unwrap();
        for r in log.balance_residual() {
            assert!(r < 1e-10, "{r}");
        }
    }

    #[test]
    fn inflow_boundary_balance() {
        let s = Scheme1D::new(
            Euler1D::default(),
            Grid1D::new(-5.0, 5.0, 80).unwrap(),
            Boundaries1D { left: BoundaryCondition::Inflow([3.857143, 2.629369, 10.333333]), right: BoundaryCondition::Free },
            SchemeParams::default(),
        )
        .unwrap();
        let st = s
            .initialize(
                |x| if x < -4.0 { [3.857143, 2.629369, 10.333333] } else { [1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0] },
                Quadrature::Midpoint,
            )
            .unwrap();
        let (_, log) = s.run_to_time(st, 0.3, |_, _| {}).unwrap();
        for r in log.balance_residual() {
            assert!(r < 1e-10, "{r}");
        }
    }

    #[test]
    fn forward_euler_advection_matches_upwind_update() {
        let params = SchemeParams { integrator: TimeIntegrator::ForwardEuler, post_processing: false, ..SchemeParams::default() };
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let s = Scheme1D::new(LinearAdvection::new(1.0), grid, Boundaries1D::uniform(BoundaryCondition::Periodic), params).unwrap();
        let st = s.initialize(|x| [if x < 0.5 { 1.0 } else { 0.0 }], Quadrature::Midpoint).unwrap();
        let dt = 0.45 * grid.dx;
        let (next, _) = s.step(&st, StepSize::Fixed(dt), 0).unwrap();
        // primal: Ū_j − λ(V̄_{j+½} − V̄_{j−½}), λ = aΔt/Δx
        for j in 0..10 {
            let want = st.u.at(j)[0] - 0.45 * (st.v.at(j + 1)[0] - st.v.at(j)[0]);
            assert!((next.u.at(j)[0] - want).abs() < 1e-15);
        }
    }
}
