//! Compressible Euler equations of an ideal gas in 1-D and 2-D.
//!
//! Conserved variables are `(ρ, ρu, E)` / `(ρ, ρu, ρv, E)`, primitive ones
//! `(ρ, u, p)` / `(ρ, u, v, p)`, closed by `E = p/(γ−1) + ½ρ(u²+v²)`.
//!
//! The quasi-linear primitive matrix in `x` is
//!
//! ```text
//!     | u  ρ  0  0  |
//! A = | 0  u  0 1/ρ |      eigenvalues u−c, u, u, u+c,  c² = γp/ρ
//!     | 0  0  u  0  |
//!     | 0  γp 0  u  |
//! ```
//!
//! with right eigenvectors (columns of `Q`) `(1, −c/ρ, 0, c²)`, `(1, 0, 0, 0)`,
//! `(0, 0, 1, 0)`, `(1, c/ρ, 0, c²)` and left eigenvectors (rows of `Q⁻¹`)
//! `(0, −ρ/2c, 0, 1/2c²)`, `(1, 0, 0, −1/c²)`, `(0, 0, 1, 0)`,
//! `(0, ρ/2c, 0, 1/2c²)`. The `y` matrix is the same with the roles of `u` and
//! `v` exchanged, and the 1-D frame is the 2-D one with the shear row and
//! column removed. Keeping that embedding exact makes y-independent 2-D runs
//! reproduce 1-D arithmetic bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm_inf;
use crate::system::{Axis, EigenFrame, HyperbolicSystem, Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasConstants {
    pub gamma: f64,
    /// Density and pressure must stay strictly above this value.
    pub vacuum_floor: f64,
}

impl Default for GasConstants {
    fn default() -> Self {
        GasConstants {
            gamma: 1.4,
            vacuum_floor: 1e-12,
        }
    }
}

impl GasConstants {
    pub fn new(gamma: f64, vacuum_floor: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::BadParameter(format!("gamma must exceed 1, got {gamma}")));
        }
        if !(vacuum_floor > 0.0) {
            return Err(Error::BadParameter(format!(
                "vacuum floor must be positive, got {vacuum_floor}"
            )));
        }
        Ok(GasConstants { gamma, vacuum_floor })
    }

    #[inline]
    pub fn check(&self, density: f64, pressure: f64) -> Result<()> {
        // written so that NaN fails
        if density > self.vacuum_floor && pressure > self.vacuum_floor {
            Ok(())
        } else {
            Err(Error::NonAdmissible { density, pressure })
        }
    }

    #[inline]
    pub fn sound_speed(&self, density: f64, pressure: f64) -> f64 {
        (self.gamma * pressure / density).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Euler1D {
    pub gas: GasConstants,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Euler2D {
    pub gas: GasConstants,
}

impl Euler1D {
    pub fn new(gas: GasConstants) -> Self {
        Euler1D { gas }
    }
}

impl Euler2D {
    pub fn new(gas: GasConstants) -> Self {
        Euler2D { gas }
    }
}

/// Frame of the 1-D primitive matrix; eigenvalue order `u−c, u, u+c`.
fn acoustic_frame_1d(gas: &GasConstants, v: &Vector<3>) -> Result<EigenFrame<3>> {
    let [rho, u, p] = *v;
    gas.check(rho, p)?;
    let c = gas.sound_speed(rho, p);
    let c2 = c * c;
    let r = c / rho;
    let l = rho / (2.0 * c);
    let h = 1.0 / (2.0 * c2);
    EigenFrame {
        q: [[1.0, 1.0, 1.0], [-r, 0.0, r], [c2, 0.0, c2]],
        q_inv: [[0.0, -l, h], [1.0, 0.0, -1.0 / c2], [0.0, l, h]],
        eigenvalues: [u - c, u, u + c],
    }
    .checked()
}

/// Frame of the 2-D primitive matrix along `axis`; eigenvalue order
/// `w−c, w (entropy), w (shear), w+c` where `w` is the normal velocity.
fn acoustic_frame_2d(gas: &GasConstants, v: &Vector<4>, axis: Axis) -> Result<EigenFrame<4>> {
    let [rho, u, vy, p] = *v;
    gas.check(rho, p)?;
    let c = gas.sound_speed(rho, p);
    let c2 = c * c;
    let r = c / rho;
    let l = rho / (2.0 * c);
    let h = 1.0 / (2.0 * c2);
    let frame = match axis {
        Axis::X => EigenFrame {
            q: [
                [1.0, 1.0, 0.0, 1.0],
                [-r, 0.0, 0.0, r],
                [0.0, 0.0, 1.0, 0.0],
                [c2, 0.0, 0.0, c2],
            ],
            q_inv: [
                [0.0, -l, 0.0, h],
                [1.0, 0.0, 0.0, -1.0 / c2],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, l, 0.0, h],
            ],
            eigenvalues: [u - c, u, u, u + c],
        },
        Axis::Y => EigenFrame {
            q: [
                [1.0, 1.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0],
                [-r, 0.0, 0.0, r],
                [c2, 0.0, 0.0, c2],
            ],
            q_inv: [
                [0.0, 0.0, -l, h],
                [1.0, 0.0, 0.0, -1.0 / c2],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, l, h],
            ],
            eigenvalues: [vy - c, vy, vy, vy + c],
        },
    };
    frame.checked()
}

#[cfg(debug_assertions)]
fn debug_validate<const M: usize>(frame: &EigenFrame<M>, a: &Matrix<M>) {
    let scale = norm_inf(&frame.q) * norm_inf(&frame.q_inv);
    debug_assert!(
        frame.diagonalization_residual(a) <= 1e-10 * scale.max(1.0),
        "analytic eigenframe does not diagonalize the quasi-linear matrix"
    );
}

#[cfg(not(debug_assertions))]
#[inline]
fn debug_validate<const M: usize>(_frame: &EigenFrame<M>, _a: &Matrix<M>) {}

impl HyperbolicSystem<3> for Euler1D {
    fn prim_to_cons(&self, v: &Vector<3>) -> Result<Vector<3>> {
        let [rho, u, p] = *v;
        self.gas.check(rho, p)?;
        Ok([rho, rho * u, p / (self.gas.gamma - 1.0) + 0.5 * rho * (u * u)])
    }

    fn cons_to_prim(&self, w: &Vector<3>) -> Result<Vector<3>> {
        let [rho, m, e] = *w;
        if !(rho > self.gas.vacuum_floor) {
            return Err(Error::NonAdmissible { density: rho, pressure: f64::NAN });
        }
        let u = m / rho;
        let p = (self.gas.gamma - 1.0) * (e - 0.5 * rho * (u * u));
        self.gas.check(rho, p)?;
        Ok([rho, u, p])
    }

    fn flux_cons(&self, w: &Vector<3>, _axis: Axis) -> Result<Vector<3>> {
        let [_, u, p] = self.cons_to_prim(w)?;
        let [_, m, e] = *w;
        Ok([m, m * u + p, u * (e + p)])
    }

    fn flux_prim(&self, v: &Vector<3>, _axis: Axis) -> Vector<3> {
        let [rho, u, p] = *v;
        [rho * u, 0.5 * (u * u), p * u]
    }

    fn noncons_matrix(&self, v: &Vector<3>, _axis: Axis) -> Matrix<3> {
        let [rho, _, p] = *v;
        let g1 = self.gas.gamma - 1.0;
        [[0.0, 0.0, 0.0], [0.0, 0.0, -1.0 / rho], [0.0, -g1 * p, 0.0]]
    }

    fn quasilinear_matrix(&self, v: &Vector<3>, axis: Axis) -> Matrix<3> {
        let [rho, u, p] = *v;
        let jac = [[u, rho, 0.0], [0.0, u, 0.0], [0.0, p, u]];
        let b = self.noncons_matrix(v, axis);
        let mut a = jac;
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] -= b[i][j];
            }
        }
        a
    }

    fn speed_bounds(&self, v: &Vector<3>, _axis: Axis) -> Result<(f64, f64)> {
        let [rho, u, p] = *v;
        self.gas.check(rho, p)?;
        let c = self.gas.sound_speed(rho, p);
        Ok((u - c, u + c))
    }

    fn eigen_frame(&self, v: &Vector<3>, axis: Axis) -> Result<EigenFrame<3>> {
        let frame = acoustic_frame_1d(&self.gas, v)?;
        debug_validate(&frame, &self.quasilinear_matrix(v, axis));
        Ok(frame)
    }

    fn normal_velocity_index(&self, axis: Axis) -> Option<usize> {
        match axis {
            Axis::X => Some(1),
            Axis::Y => None,
        }
    }
}

impl HyperbolicSystem<4> for Euler2D {
    fn prim_to_cons(&self, v: &Vector<4>) -> Result<Vector<4>> {
        let [rho, u, w, p] = *v;
        self.gas.check(rho, p)?;
        Ok([
            rho,
            rho * u,
            rho * w,
            p / (self.gas.gamma - 1.0) + 0.5 * rho * (u * u + w * w),
        ])
    }

    fn cons_to_prim(&self, q: &Vector<4>) -> Result<Vector<4>> {
        let [rho, mx, my, e] = *q;
        if !(rho > self.gas.vacuum_floor) {
            return Err(Error::NonAdmissible { density: rho, pressure: f64::NAN });
        }
        let u = mx / rho;
        let w = my / rho;
        let p = (self.gas.gamma - 1.0) * (e - 0.5 * rho * (u * u + w * w));
        self.gas.check(rho, p)?;
        Ok([rho, u, w, p])
    }

    fn flux_cons(&self, q: &Vector<4>, axis: Axis) -> Result<Vector<4>> {
        let [_, u, w, p] = self.cons_to_prim(q)?;
        let [_, mx, my, e] = *q;
        Ok(match axis {
            Axis::X => [mx, mx * u + p, mx * w, u * (e + p)],
            Axis::Y => [my, my * u, my * w + p, w * (e + p)],
        })
    }

    fn flux_prim(&self, v: &Vector<4>, axis: Axis) -> Vector<4> {
        let [rho, u, w, p] = *v;
        match axis {
            Axis::X => [rho * u, 0.5 * (u * u), 0.0, p * u],
            Axis::Y => [rho * w, 0.0, 0.5 * (w * w), p * w],
        }
    }

    fn noncons_matrix(&self, v: &Vector<4>, axis: Axis) -> Matrix<4> {
        let [rho, u, w, p] = *v;
        let g1 = self.gas.gamma - 1.0;
        match axis {
            Axis::X => [
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, -1.0 / rho],
                [0.0, 0.0, -u, 0.0],
                [0.0, -g1 * p, 0.0, 0.0],
            ],
            Axis::Y => [
                [0.0, 0.0, 0.0, 0.0],
                [0.0, -w, 0.0, 0.0],
                [0.0, 0.0, 0.0, -1.0 / rho],
                [0.0, 0.0, -g1 * p, 0.0],
            ],
        }
    }

    fn quasilinear_matrix(&self, v: &Vector<4>, axis: Axis) -> Matrix<4> {
        let [rho, u, w, p] = *v;
        let jac = match axis {
            Axis::X => [
                [u, rho, 0.0, 0.0],
                [0.0, u, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, p, 0.0, u],
            ],
            Axis::Y => [
                [w, 0.0, rho, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, w, 0.0],
                [0.0, 0.0, p, w],
            ],
        };
        let b = self.noncons_matrix(v, axis);
        let mut a = jac;
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] -= b[i][j];
            }
        }
        a
    }

    fn speed_bounds(&self, v: &Vector<4>, axis: Axis) -> Result<(f64, f64)> {
        let [rho, u, w, p] = *v;
        self.gas.check(rho, p)?;
        let c = self.gas.sound_speed(rho, p);
        let vn = match axis {
            Axis::X => u,
            Axis::Y => w,
        };
        Ok((vn - c, vn + c))
    }

    fn eigen_frame(&self, v: &Vector<4>, axis: Axis) -> Result<EigenFrame<4>> {
        let frame = acoustic_frame_2d(&self.gas, v, axis)?;
        debug_validate(&frame, &self.quasilinear_matrix(v, axis));
        Ok(frame)
    }

    fn normal_velocity_index(&self, axis: Axis) -> Option<usize> {
        Some(match axis {
            Axis::X => 1,
            Axis::Y => 2,
        })
    }
}
