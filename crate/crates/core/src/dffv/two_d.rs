use log::trace;
use rayon::prelude::*;

use super::one_d::combine;
use super::post::post_process_line;
use super::{DualField2D, RunLog, SchemeParams, StepRecord, StepSize, TimeIntegrator};
use crate::error::{CellLocation, Error, Result};
use crate::grid::{try_sample_2d, Boundaries2D, BoundaryCondition, Field2D, Grid2D, Mesh2D, Quadrature};
use crate::linalg::compensated_sum;
use crate::pccu::{prim_rhs_line, LineResult};
use crate::system::{Axis, HyperbolicSystem, VarKind, Vector};

/// Time derivative of one staggered field with the largest speeds seen by
/// the `x` and `y` parts of its update.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimRhs2D<const M: usize> {
    /// Row-major interior values.
    pub values: Vec<Vector<M>>,
    pub max_speed_x: f64,
    pub max_speed_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rhs2D<const M: usize> {
    pub du: Vec<Vector<M>>,
    pub dvx: PrimRhs2D<M>,
    pub dvy: PrimRhs2D<M>,
    /// Net conserved flux out through the four sides, integrated along them.
    pub boundary_flux: Vector<M>,
}

impl<const M: usize> Rhs2D<M> {
    pub fn max_speeds(&self) -> (f64, f64) {
        (
            self.dvx.max_speed_x.max(self.dvy.max_speed_x),
            self.dvx.max_speed_y.max(self.dvy.max_speed_y),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Scheme2D<S, const M: usize> {
    pub system: S,
    pub grid: Grid2D,
    pub bc: Boundaries2D<M>,
    pub params: SchemeParams,
}

/// Apply `f` to every line index in `0..count` in parallel, keeping order.
/// Errors report the first failing line.
fn lines<T: Send>(
    count: usize,
    axis: Axis,
    mesh: &'static str,
    time: f64,
    f: impl Fn(isize) -> LineResult<T> + Sync + Send,
) -> Result<Vec<T>> {
    (0..count as isize)
        .into_par_iter()
        .map(|k| {
            f(k).map_err(|e| {
                let (i, j) = match axis {
                    Axis::X => (e.index, k),
                    Axis::Y => (k, e.index),
                };
                e.error.at(CellLocation { mesh, i, j }, time)
            })
        })
        .collect()
}

/// Row-major interior of a field.
fn interior<const M: usize>(f: &Field2D<M>) -> Vec<Vector<M>> {
    f.interior_iter().copied().collect()
}

fn set_interior<const M: usize>(f: &mut Field2D<M>, values: &[Vector<M>]) {
    for j in 0..f.ny {
        for i in 0..f.nx {
            *f.at_mut(i as isize, j as isize) = values[j * f.nx + i];
        }
    }
}

fn from_rows<const M: usize>(f: &mut Field2D<M>, rows: &[Vec<Vector<M>>]) {
    for (j, row) in rows.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            *f.at_mut(i as isize, j as isize) = *v;
        }
    }
}

fn from_columns<const M: usize>(f: &mut Field2D<M>, cols: &[Vec<Vector<M>>]) {
    for (i, col) in cols.iter().enumerate() {
        for (j, v) in col.iter().enumerate() {
            *f.at_mut(i as isize, j as isize) = *v;
        }
    }
}

fn sum_into<const M: usize>(acc: &mut Vector<M>, parts: impl Iterator<Item = Vector<M>>, scale: f64) {
    let parts: Vec<Vector<M>> = parts.collect();
    for k in 0..M {
        acc[k] += scale * compensated_sum(parts.iter().map(|p| p[k]));
    }
}

impl<S: HyperbolicSystem<M>, const M: usize> Scheme2D<S, M> {
    pub fn new(system: S, grid: Grid2D, bc: Boundaries2D<M>, params: SchemeParams) -> Result<Self> {
        params.validate()?;
        bc.validate()?;
        Ok(Scheme2D { system, grid, bc, params })
    }

    fn periodic(&self) -> (bool, bool) {
        (
            matches!(self.bc.left, BoundaryCondition::Periodic),
            matches!(self.bc.bottom, BoundaryCondition::Periodic),
        )
    }

    pub fn initialize(
        &self,
        ic: impl Fn(f64, f64) -> Vector<M> + Sync,
        quadrature: Quadrature,
    ) -> Result<DualField2D<M>> {
        let sys = &self.system;
        let periodic = self.periodic();
        let u = try_sample_2d(&self.grid, Mesh2D::Primal, quadrature, periodic, |x, y| sys.prim_to_cons(&ic(x, y)))?;
        let prim = |x: f64, y: f64| {
            let w = ic(x, y);
            sys.prim_to_cons(&w)?;
            Ok(w)
        };
        let vx = try_sample_2d(&self.grid, Mesh2D::XStaggered, quadrature, periodic, prim)?;
        let vy = try_sample_2d(&self.grid, Mesh2D::YStaggered, quadrature, periodic, prim)?;
        let mut state = DualField2D { u, vx, vy, time: 0.0 };
        self.fill_ghosts(&mut state)?;
        Ok(state)
    }

    pub fn fill_ghosts(&self, state: &mut DualField2D<M>) -> Result<()> {
        state.u.fill_ghosts(&self.bc, &self.system, VarKind::Conserved)?;
        state.vx.fill_ghosts(&self.bc, &self.system, VarKind::Primitive)?;
        state.vy.fill_ghosts(&self.bc, &self.system, VarKind::Primitive)
    }

    pub fn totals(&self, state: &DualField2D<M>) -> Vec<f64> {
        (0..M)
            .map(|k| compensated_sum(state.u.interior_iter().map(|w| w[k])) * self.grid.cell_area())
            .collect()
    }

    fn staggered_flux(&self, field: &Field2D<M>, axis: Axis, time: f64) -> Result<Vec<Vec<Vector<M>>>> {
        let sys = &self.system;
        let mesh = field.mesh.name();
        lines(field.ny, Axis::X, mesh, time, |j| {
            (0..field.nx as isize)
                .map(|i| {
                    sys.prim_to_cons(field.at(i, j))
                        .and_then(|u| sys.flux_cons(&u, axis))
                        .map_err(|error| crate::pccu::LineError { index: i, error })
                })
                .collect()
        })
    }

    /// Conserved update from fluxes at `U(V̄ˣ)` and `U(V̄ʸ)`; row-major, plus
    /// the net flux out through the boundary.
    pub fn cons_rhs(&self, state: &DualField2D<M>) -> Result<(Vec<Vector<M>>, Vector<M>)> {
        let (fx, gy) = rayon::join(
            || self.staggered_flux(&state.vx, Axis::X, state.time),
            || self.staggered_flux(&state.vy, Axis::Y, state.time),
        );
        let (fx, gy) = (fx?, gy?);
        let (nx, ny) = (self.grid.x.n, self.grid.y.n);
        let inv_dx = 1.0 / self.grid.x.dx;
        let inv_dy = 1.0 / self.grid.y.dx;
        let mut du = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let mut out = [0.0; M];
                for k in 0..M {
                    let x_part = -(inv_dx * (fx[j][i + 1][k] - fx[j][i][k]));
                    let y_part = -(inv_dy * (gy[j + 1][i][k] - gy[j][i][k]));
                    out[k] = x_part + y_part;
                }
                du.push(out);
            }
        }
        let mut edge = [0.0; M];
        sum_into(
            &mut edge,
            (0..ny).map(|j| {
                let mut d = [0.0; M];
                for k in 0..M {
                    d[k] = fx[j][nx][k] - fx[j][0][k];
                }
                d
            }),
            self.grid.y.dx,
        );
        sum_into(
            &mut edge,
            (0..nx).map(|i| {
                let mut d = [0.0; M];
                for k in 0..M {
                    d[k] = gy[ny][i][k] - gy[0][i][k];
                }
                d
            }),
            self.grid.x.dx,
        );
        Ok((du, edge))
    }

    /// Primitive update of one staggered field (ghosts filled): the `x` part
    /// runs along rows in the frames of `A`, the `y` part along columns in
    /// the frames of `ℬ`.
    pub fn prim_rhs(&self, field: &Field2D<M>, time: f64) -> Result<PrimRhs2D<M>> {
        let sys = &self.system;
        let params = self.params.pccu();
        let g = self.grid.ghost();
        let mesh = field.mesh.name();
        let (tx, ty) = rayon::join(
            || {
                lines(field.ny, Axis::X, mesh, time, |j| {
                    prim_rhs_line(sys, &field.line(Axis::X, j), field.nx, g, self.grid.x.dx, &params, Axis::X)
                })
            },
            || {
                lines(field.nx, Axis::Y, mesh, time, |i| {
                    prim_rhs_line(sys, &field.line(Axis::Y, i), field.ny, g, self.grid.y.dx, &params, Axis::Y)
                })
            },
        );
        let (tx, ty) = (tx?, ty?);
        let mut values = Vec::with_capacity(field.nx * field.ny);
        for j in 0..field.ny {
            for i in 0..field.nx {
                let (a, b) = (&tx[j].0[i], &ty[i].0[j]);
                let mut out = [0.0; M];
                for k in 0..M {
                    out[k] = a[k] + b[k];
                }
                values.push(out);
            }
        }
        let max_speed_x = tx.iter().fold(0.0f64, |m, r| m.max(r.1));
        let max_speed_y = ty.iter().fold(0.0f64, |m, r| m.max(r.1));
        Ok(PrimRhs2D { values, max_speed_x, max_speed_y })
    }

    pub fn prim_rhs_2d_x(&self, state: &DualField2D<M>) -> Result<PrimRhs2D<M>> {
        self.prim_rhs(&state.vx, state.time)
    }

    pub fn prim_rhs_2d_y(&self, state: &DualField2D<M>) -> Result<PrimRhs2D<M>> {
        self.prim_rhs(&state.vy, state.time)
    }

    pub fn rhs(&self, state: &DualField2D<M>) -> Result<Rhs2D<M>> {
        let (cons, (dvx, dvy)) = rayon::join(
            || self.cons_rhs(state),
            || rayon::join(|| self.prim_rhs_2d_x(state), || self.prim_rhs_2d_y(state)),
        );
        let (du, boundary_flux) = cons?;
        Ok(Rhs2D { du, dvx: dvx?, dvy: dvy?, boundary_flux })
    }

    fn dt_for_speeds(&self, (a, b): (f64, f64)) -> f64 {
        let denom = a / self.grid.x.dx + b / self.grid.y.dx;
        if denom > 0.0 {
            self.params.cfl / denom
        } else {
            self.params.cfl * self.grid.x.dx
        }
    }

    pub fn max_stable_dt(&self, state: &DualField2D<M>) -> Result<f64> {
        let mut s = state.clone();
        self.fill_ghosts(&mut s)?;
        let (a, b) = rayon::join(|| self.prim_rhs_2d_x(&s), || self.prim_rhs_2d_y(&s));
        let (a, b) = (a?, b?);
        Ok(self.dt_for_speeds((a.max_speed_x.max(b.max_speed_x), a.max_speed_y.max(b.max_speed_y))))
    }

    /// One directional post-processing sweep of the primal field `u` (ghosts
    /// filled) against the staggered field `v` of the same direction.
    fn sweep(&self, u: &Field2D<M>, v: &Field2D<M>, axis: Axis, time: f64) -> Result<(Field2D<M>, Field2D<M>, Vector<M>)> {
        let sys = &self.system;
        let g = self.grid.ghost();
        let along = self.grid.along(axis);
        let count = u.len_along(axis.other());
        let parts = lines(count, axis, v.mesh.name(), time, |k| {
            post_process_line(sys, &u.line(axis, k), &v.line(axis, k), along.n, g, along.dx)
        })?;
        let mut u_new = u.clone();
        let mut v_new = v.clone();
        let us: Vec<_> = parts.iter().map(|p| p.u.clone()).collect();
        let vs: Vec<_> = parts.iter().map(|p| p.v.clone()).collect();
        match axis {
            Axis::X => {
                from_rows(&mut u_new, &us);
                from_rows(&mut v_new, &vs);
            }
            Axis::Y => {
                from_columns(&mut u_new, &us);
                from_columns(&mut v_new, &vs);
            }
        }
        u_new.fill_ghosts(&self.bc, sys, VarKind::Conserved)?;
        let mut change = [0.0; M];
        sum_into(&mut change, parts.iter().map(|p| p.boundary), self.grid.cell_area());
        Ok((u_new, v_new, change))
    }

    /// Post-processing in `x`-then-`y` and `y`-then-`x` order from the same
    /// starred fields, averaged. Ghosts of the inputs must be filled.
    pub fn post_process(&self, star: &DualField2D<M>) -> Result<(DualField2D<M>, Vector<M>)> {
        let t = star.time;
        let (xy, yx) = rayon::join(
            || -> Result<_> {
                let (u1, vx, c1) = self.sweep(&star.u, &star.vx, Axis::X, t)?;
                let (u2, vy, c2) = self.sweep(&u1, &star.vy, Axis::Y, t)?;
                Ok((u2, vx, vy, c1, c2))
            },
            || -> Result<_> {
                let (u1, vy, c1) = self.sweep(&star.u, &star.vy, Axis::Y, t)?;
                let (u2, vx, c2) = self.sweep(&u1, &star.vx, Axis::X, t)?;
                Ok((u2, vx, vy, c1, c2))
            },
        );
        let (a, b) = (xy?, yx?);
        let mean = |p: &Field2D<M>, q: &Field2D<M>| {
            let mut out = p.clone();
            for (o, w) in out.data.iter_mut().zip(&q.data) {
                for k in 0..M {
                    o[k] = 0.5 * (o[k] + w[k]);
                }
            }
            out
        };
        let mut change = [0.0; M];
        for k in 0..M {
            change[k] = 0.5 * ((a.3[k] + a.4[k]) + (b.3[k] + b.4[k]));
        }
        let state = DualField2D { u: mean(&a.0, &b.0), vx: mean(&a.1, &b.1), vy: mean(&a.2, &b.2), time: t };
        Ok((state, change))
    }

    pub fn step(&self, state: &DualField2D<M>, size: StepSize, index: usize) -> Result<(DualField2D<M>, StepRecord)> {
        let mut s0 = state.clone();
        self.fill_ghosts(&mut s0)?;
        let r0 = self.rhs(&s0)?;
        let speeds = r0.max_speeds();
        let (dt, finish) = match size {
            StepSize::Fixed(dt) => (dt, None),
            StepSize::Adaptive { until } => {
                let dt = self.dt_for_speeds(speeds);
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

        let time = finish.unwrap_or(state.time + dt);
        cur.time = time;
        self.fill_ghosts(&mut cur)?;
        if self.params.post_processing {
            let (next, change) = self.post_process(&cur)?;
            cur = next;
            for k in 0..M {
                outflow[k] -= change[k];
            }
        }
        self.check_admissible(&cur)?;
        self.fill_ghosts(&mut cur)?;
        trace!("step {index}: t = {time}, dt = {dt:e}");
        let max_speed = speeds.0.max(speeds.1);
        Ok((cur, StepRecord { index, time, dt, max_speed, outflow }))
    }

    fn check_admissible(&self, state: &DualField2D<M>) -> Result<()> {
        let sys = &self.system;
        let check = |f: &Field2D<M>, cons: bool| -> Result<()> {
            for j in 0..f.ny as isize {
                for i in 0..f.nx as isize {
                    let w = f.at(i, j);
                    let r = if cons { sys.cons_to_prim(w).map(|_| ()) } else { sys.prim_to_cons(w).map(|_| ()) };
                    r.map_err(|e| e.at(CellLocation { mesh: f.mesh.name(), i, j }, state.time))?;
                }
            }
            Ok(())
        };
        check(&state.u, true)?;
        check(&state.vx, false)?;
        check(&state.vy, false)
    }

    pub fn run_to_time(
        &self,
        state: DualField2D<M>,
        t_final: f64,
        mut observer: impl FnMut(&DualField2D<M>, &StepRecord),
    ) -> Result<(DualField2D<M>, RunLog)> {
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

    pub fn run_steps(
        &self,
        state: DualField2D<M>,
        dt: f64,
        n: usize,
        mut observer: impl FnMut(&DualField2D<M>, &StepRecord),
    ) -> Result<(DualField2D<M>, RunLog)> {
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

fn advance<const M: usize>(s0: &DualField2D<M>, s: &DualField2D<M>, r: &Rhs2D<M>, dt: f64, c: f64) -> DualField2D<M> {
    let mut out = s.clone();
    let stage = |o: &mut Field2D<M>, f0: &Field2D<M>, f: &Field2D<M>, l: &[Vector<M>]| {
        let mut vals = interior(f);
        combine(&mut vals, &interior(f0), &interior(f), l, dt, c);
        set_interior(o, &vals);
    };
    stage(&mut out.u, &s0.u, &s.u, &r.du);
    stage(&mut out.vx, &s0.vx, &s.vx, &r.dvx.values);
    stage(&mut out.vy, &s0.vy, &s.vy, &r.dvy.values);
    out
}
