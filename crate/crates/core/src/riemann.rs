//! Reference solutions: the exact Riemann solver for the 1-D Euler
//! equations, the isentropic vortex, and the shock–vortex initial data.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::euler::GasConstants;
use crate::system::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wave {
    Shock,
    Rarefaction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub left: Vector<3>,
    pub right: Vector<3>,
    pub p_star: f64,
    pub u_star: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
    pub gamma: f64,
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 100;

/// Pressure function of one side and its derivative.
fn side_function(p: f64, [rho, _, pk]: Vector<3>, gamma: f64) -> (f64, f64) {
    let c = (gamma * pk / rho).sqrt();
    if p > pk {
        let a = 2.0 / ((gamma + 1.0) * rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * pk;
        let q = (a / (p + b)).sqrt();
        ((p - pk) * q, q * (1.0 - 0.5 * (p - pk) / (p + b)))
    } else {
        let z = (gamma - 1.0) / (2.0 * gamma);
        let r = p / pk;
        (
            2.0 * c / (gamma - 1.0) * (r.powf(z) - 1.0),
            r.powf(-(gamma + 1.0) / (2.0 * gamma)) / (rho * c),
        )
    }
}

/// Sum of both side functions plus the velocity jump; its root is `p*`.
pub fn pressure_function(p: f64, left: &Vector<3>, right: &Vector<3>, gamma: f64) -> f64 {
    side_function(p, *left, gamma).0 + side_function(p, *right, gamma).0 + (right[1] - left[1])
}

fn bisect(left: Vector<3>, right: Vector<3>, gamma: f64) -> f64 {
    let f = |p: f64| pressure_function(p, &left, &right, gamma);
    let mut lo = 0.0f64;
    let mut hi = left[2].max(right[2]);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    while (hi - lo) > NEWTON_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn solve_riemann(left: Vector<3>, right: Vector<3>, gas: &GasConstants) -> Result<RiemannSolution> {
    let gamma = gas.gamma;
    gas.check(left[0], left[2])?;
    gas.check(right[0], right[2])?;
    let cl = gas.sound_speed(left[0], left[2]);
    let cr = gas.sound_speed(right[0], right[2]);
    let du = right[1] - left[1];
    let critical = 2.0 * (cl + cr) / (gamma - 1.0);
    if critical <= du {
        return Err(Error::VacuumFormation { critical, du });
    }

    // two-rarefaction estimate as the starting point
    let z = (gamma - 1.0) / (2.0 * gamma);
    let guess = ((cl + cr - 0.5 * (gamma - 1.0) * du) / (cl / left[2].powf(z) + cr / right[2].powf(z))).powf(1.0 / z);
    let mut p = guess.max(1e-14);
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        let (fl, dl) = side_function(p, left, gamma);
        let (fr, dr) = side_function(p, right, gamma);
        let mut next = p - (fl + fr + du) / (dl + dr);
        if next <= 0.0 {
            next = 0.5 * p;
        }
        let change = 2.0 * (next - p).abs() / (next + p);
        p = next;
        if change < NEWTON_TOL {
            converged = true;
            break;
        }
    }
    if !converged || !p.is_finite() {
        log::debug!("Newton iteration for p* did not converge, bisecting");
        p = bisect(left, right, gamma);
    }
    let fl = side_function(p, left, gamma).0;
    let fr = side_function(p, right, gamma).0;
    let u_star = 0.5 * (left[1] + right[1]) + 0.5 * (fr - fl);
    let wave = |pk: f64| if p > pk { Wave::Shock } else { Wave::Rarefaction };
    Ok(RiemannSolution {
        left,
        right,
        p_star: p,
        u_star,
        left_wave: wave(left[2]),
        right_wave: wave(right[2]),
        gamma,
    })
}

impl RiemannSolution {
    /// Primitive state at similarity coordinate `ξ = x/t`.
    pub fn sample(&self, xi: f64) -> Vector<3> {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        let g6 = (g - 1.0) / (g + 1.0);
        let z = (g - 1.0) / (2.0 * g);
        // mirror the right side onto the left so one branch handles both
        let (state, x, sign) = if xi <= us {
            (self.left, xi, 1.0)
        } else {
            let [r, u, p] = self.right;
            ([r, -u, p], -xi, -1.0)
        };
        let us = sign * us;
        let [rho, u, p] = state;
        let c = (g * p / rho).sqrt();
        let out = if ps > p {
            let s = u - c * ((g + 1.0) / (2.0 * g) * ps / p + z).sqrt();
            if x <= s {
                state
            } else {
                [rho * (ps / p + g6) / (g6 * ps / p + 1.0), us, ps]
            }
        } else {
            let head = u - c;
            let c_star = c * (ps / p).powf(z);
            let tail = us - c_star;
            if x <= head {
                state
            } else if x > tail {
                [rho * (ps / p).powf(1.0 / g), us, ps]
            } else {
                let cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (u - x));
                let uf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * u + x);
                [rho * (cf / c).powf(2.0 / (g - 1.0)), uf, p * (cf / c).powf(2.0 * g / (g - 1.0))]
            }
        };
        [out[0], sign * out[1], out[2]]
    }

    /// State at `x` and time `t > 0` for a jump initially at `x0`.
    pub fn at(&self, x: f64, t: f64, x0: f64) -> Vector<3> {
        self.sample((x - x0) / t)
    }

    /// Range of the density over the whole wave pattern.
    pub fn density_range(&self) -> (f64, f64) {
        let g = self.gamma;
        let g6 = (g - 1.0) / (g + 1.0);
        let star = |[rho, _, p]: Vector<3>| {
            if self.p_star > p {
                rho * (self.p_star / p + g6) / (g6 * self.p_star / p + 1.0)
            } else {
                rho * (self.p_star / p).powf(1.0 / g)
            }
        };
        let vals = [self.left[0], self.right[0], star(self.left), star(self.right)];
        (
            vals.iter().copied().fold(f64::INFINITY, f64::min),
            vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// State behind a stationary normal shock of Mach number `mach_s` facing the
/// 2-D primitive state `left`.
pub fn stationary_shock_state(left: &Vector<4>, mach_s: f64, gas: &GasConstants) -> Vector<4> {
    let g = gas.gamma;
    let m2 = mach_s * mach_s;
    [
        (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0) * left[0],
        ((g - 1.0) * m2 + 2.0) / ((g + 1.0) * m2) * left[1],
        0.0,
        (2.0 * g * m2 - (g - 1.0)) / (g + 1.0) * left[3],
    ]
}

/// Side length of the periodic box of the isentropic vortex.
pub const VORTEX_BOX: (f64, f64) = (-10.0, 10.0);

fn wrap_box(x: f64) -> f64 {
    let (lo, hi) = VORTEX_BOX;
    lo + (x - lo).rem_euclid(hi - lo)
}

/// Isentropic vortex advected with unit velocity in both directions.
pub fn vortex_exact(x: f64, y: f64, t: f64, gas: &GasConstants) -> Vector<4> {
    let g = gas.gamma;
    let (x, y) = (wrap_box(x - t), wrap_box(y - t));
    let kappa = 5.0 / (2.0 * PI) * ((1.0 - x * x - y * y) / 2.0).exp();
    let rho = (1.0 - (g - 1.0) * kappa * kappa / (2.0 * g)).powf(1.0 / (g - 1.0));
    [rho, 1.0 - kappa * y, 1.0 + kappa * x, rho.powf(g)]
}

/// Geometry of the shock–vortex interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockVortex {
    pub mach_s: f64,
    pub mach_v: f64,
    pub center: (f64, f64),
    pub a: f64,
    pub b: f64,
    pub shock_x: f64,
    /// Specific gas constant; cancels in all non-dimensional ratios.
    pub r_gas: f64,
}

impl Default for ShockVortex {
    fn default() -> Self {
        ShockVortex {
            mach_s: 1.5,
            mach_v: 0.9,
            center: (0.25, 0.5),
            a: 0.075,
            b: 0.175,
            shock_x: 0.5,
            r_gas: 287.0,
        }
    }
}

impl ShockVortex {
    pub fn upstream(&self, gas: &GasConstants) -> Vector<4> {
        [1.0, gas.gamma.sqrt() * self.mach_s, 0.0, 1.0]
    }

    pub fn downstream(&self, gas: &GasConstants) -> Vector<4> {
        stationary_shock_state(&self.upstream(gas), self.mach_s, gas)
    }

    fn v_max(&self, gas: &GasConstants) -> f64 {
        self.mach_v * gas.gamma.sqrt()
    }

    /// Angular velocity at radius `r`.
    pub fn v_theta(&self, r: f64, gas: &GasConstants) -> f64 {
        let (a, b, vm) = (self.a, self.b, self.v_max(gas));
        if r <= a {
            vm * r / a
        } else if r < b {
            vm * a / (a * a - b * b) * (r - b * b / r)
        } else {
            0.0
        }
    }

    /// Temperature at radius `r`.
    pub fn temperature(&self, r: f64, gas: &GasConstants) -> f64 {
        let g = gas.gamma;
        let (a, b, vm, rg) = (self.a, self.b, self.v_max(gas), self.r_gas);
        let up = self.upstream(gas);
        let t3 = up[3] / (up[0] * rg);
        let k = (g - 1.0) / (rg * g);
        let outer = k * vm * vm * a * a / ((a * a - b * b) * (a * a - b * b));
        let shape = |r: f64| r * r / 2.0 - 2.0 * b * b * r.ln() - b.powi(4) / (2.0 * r * r);
        let bb = t3 - outer * shape(b);
        let aa = bb + outer * shape(a) - k * vm * vm / 2.0;
        if r <= a {
            aa + k * vm * vm / (a * a) * r * r / 2.0
        } else if r < b {
            bb + outer * shape(r)
        } else {
            t3
        }
    }

    pub fn initial_state(&self, x: f64, y: f64, gas: &GasConstants) -> Vector<4> {
        if x >= self.shock_x {
            return self.downstream(gas);
        }
        let up = self.upstream(gas);
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let r = dx.hypot(dy);
        if r >= self.b {
            return up;
        }
        let g = gas.gamma;
        let t3 = up[3] / (up[0] * self.r_gas);
        let ratio = self.temperature(r, gas) / t3;
        let vt = self.v_theta(r, gas);
        let (sin, cos) = if r > 0.0 { (dy / r, dx / r) } else { (0.0, 1.0) };
        [
            up[0] * ratio.powf(1.0 / (g - 1.0)),
            up[1] - vt * sin,
            up[2] + vt * cos,
            up[3] * ratio.powf(g / (g - 1.0)),
        ]
    }
}
