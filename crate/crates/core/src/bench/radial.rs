//! Cylindrically symmetric 1-D Euler solver used as a reference for radial
//! problems: `(rU)_t + (rF(U))_r = (0, p, 0)` on `[0, R]` with a reflecting
//! axis and a free outer boundary, HLL fluxes, minmod slopes in primitive
//! variables and the same three-stage Runge–Kutta method.

use crate::error::{Error, Result};
use crate::euler::{Euler1D, GasConstants};
use crate::recon::minmod2;
use crate::system::{Axis, HyperbolicSystem, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// Cell centres.
    pub r: Vec<f64>,
    /// Primitive states `(ρ, u_r, p)`.
    pub v: Vec<Vector<3>>,
}

impl RadialProfile {
    /// Piecewise-linear interpolation of component `k` at radius `r`.
    pub fn interpolate(&self, r: f64, k: usize) -> f64 {
        let n = self.r.len();
        if r <= self.r[0] {
            return self.v[0][k];
        }
        if r >= self.r[n - 1] {
            return self.v[n - 1][k];
        }
        let i = self.r.partition_point(|&x| x <= r) - 1;
        let t = (r - self.r[i]) / (self.r[i + 1] - self.r[i]);
        (1.0 - t) * self.v[i][k] + t * self.v[i + 1][k]
    }
}

fn hll(sys: &Euler1D, vl: &Vector<3>, vr: &Vector<3>) -> Result<Vector<3>> {
    let ul = sys.prim_to_cons(vl)?;
    let ur = sys.prim_to_cons(vr)?;
    let fl = sys.flux_cons(&ul, Axis::X)?;
    let fr = sys.flux_cons(&ur, Axis::X)?;
    let cl = sys.gas.sound_speed(vl[0], vl[2]);
    let cr = sys.gas.sound_speed(vr[0], vr[2]);
    let sl = (vl[1] - cl).min(vr[1] - cr);
    let sr = (vl[1] + cl).max(vr[1] + cr);
    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let mut f = [0.0; 3];
    for k in 0..3 {
        f[k] = (sr * fl[k] - sl * fr[k] + sl * sr * (ur[k] - ul[k])) / (sr - sl);
    }
    Ok(f)
}

/// Runs the radial problem with initial data `ic(r)` to `t_final`.
pub fn radial_reference(
    ic: impl Fn(f64) -> Vector<3>,
    r_max: f64,
    n: usize,
    t_final: f64,
    cfl: f64,
    gas: GasConstants,
) -> Result<RadialProfile> {
    if n < 4 {
        return Err(Error::BadResolution(format!("need at least 4 radial cells, got {n}")));
    }
    let sys = Euler1D::new(gas);
    let dr = r_max / n as f64;
    let centers: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dr).collect();
    let faces: Vec<f64> = (0..=n).map(|i| i as f64 * dr).collect();
    let volumes: Vec<f64> = (0..n).map(|i| 0.5 * (faces[i + 1].powi(2) - faces[i].powi(2))).collect();
    let mut u: Vec<Vector<3>> = centers.iter().map(|&r| sys.prim_to_cons(&ic(r))).collect::<Result<_>>()?;

    let rhs = |u: &[Vector<3>]| -> Result<(Vec<Vector<3>>, f64)> {
        let mut v: Vec<Vector<3>> = u.iter().map(|w| sys.cons_to_prim(w)).collect::<Result<_>>()?;
        // two ghosts on each side: mirror at the axis, copy outside
        let mut ext = Vec::with_capacity(n + 4);
        for g in [1, 0] {
            let [rho, vel, p] = v[g];
            ext.push([rho, -vel, p]);
        }
        ext.append(&mut v);
        let last = ext[ext.len() - 1];
        ext.push(last);
        ext.push(last);
        let mut slopes = vec![[0.0; 3]; n + 2];
        for i in 1..n + 3 {
            for k in 0..3 {
                slopes[i - 1][k] = minmod2(ext[i][k] - ext[i - 1][k], ext[i + 1][k] - ext[i][k]);
            }
        }
        let mut flux = Vec::with_capacity(n + 1);
        let mut smax = 0.0f64;
        for f in 0..=n {
            // face f lies between ext[f + 1] and ext[f + 2]
            let mut vl = ext[f + 1];
            let mut vr = ext[f + 2];
            for k in 0..3 {
                vl[k] += 0.5 * slopes[f][k];
                vr[k] -= 0.5 * slopes[f + 1][k];
            }
            let cl = sys.gas.sound_speed(vl[0], vl[2]);
            let cr = sys.gas.sound_speed(vr[0], vr[2]);
            smax = smax.max(vl[1].abs() + cl).max(vr[1].abs() + cr);
            flux.push(hll(&sys, &vl, &vr)?);
        }
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let p = ext[i + 2][2];
            let mut d = [0.0; 3];
            for k in 0..3 {
                d[k] = -(faces[i + 1] * flux[i + 1][k] - faces[i] * flux[i][k]) / volumes[i];
            }
            d[1] += p * dr / volumes[i];
            out.push(d);
        }
        Ok((out, smax))
    };

    let mut t = 0.0;
    let mut steps = 0usize;
    while t < t_final {
        let (l0, smax) = rhs(&u)?;
        let dt = (cfl * dr / smax).min(t_final - t);
        let u1: Vec<Vector<3>> = u.iter().zip(&l0).map(|(a, d)| std::array::from_fn(|k| a[k] + dt * d[k])).collect();
        let (l1, _) = rhs(&u1)?;
        let u2: Vec<Vector<3>> = u
            .iter()
            .zip(u1.iter().zip(&l1))
            .map(|(a, (b, d))| std::array::from_fn(|k| 0.75 * a[k] + 0.25 * (b[k] + dt * d[k])))
            .collect();
        let (l2, _) = rhs(&u2)?;
        u = u
            .iter()
            .zip(u2.iter().zip(&l2))
            .map(|(a, (b, d))| std::array::from_fn(|k| a[k] / 3.0 + 2.0 / 3.0 * (b[k] + dt * d[k])))
            .collect();
        t += dt;
        steps += 1;
    }
    log::debug!("radial reference: {steps} steps on {n} cells");
    let v = u.iter().map(|w| sys.cons_to_prim(w)).collect::<Result<_>>()?;
    Ok(RadialProfile { r: centers, v })
}
