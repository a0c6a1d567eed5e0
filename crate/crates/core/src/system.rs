//! The interface every hyperbolic system must provide to the staggered kernels.
//!
//! A system is described twice: in conservative form `U_t + F(U)_x = 0` and in
//! a quasi-linear primitive form `V_t + F̃(V)_x = B(V) V_x`. The kernels are
//! generic over the number of components `M`, so the same code path serves the
//! scalar linear advection test and the 1-D/2-D Euler equations.

use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, mat_vec, norm_inf, off_diagonal_max};

pub type Vector<const M: usize> = [f64; M];
pub type Matrix<const M: usize> = [[f64; M]; M];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// Frames above this condition estimate are treated as a singular basis.
pub const MAX_FRAME_CONDITION: f64 = 1e12;

/// Similarity transform `q_inv · A · q = diag(eigenvalues)` of a quasi-linear
/// matrix, used to move into local characteristic variables.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFrame<const M: usize> {
    pub q: Matrix<M>,
    pub q_inv: Matrix<M>,
    /// Ascending.
    pub eigenvalues: Vector<M>,
}

impl<const M: usize> EigenFrame<M> {
    pub fn identity(eigenvalue: f64) -> Self {
        EigenFrame {
            q: identity(),
            q_inv: identity(),
            eigenvalues: [eigenvalue; M],
        }
    }

    #[inline]
    pub fn to_characteristic(&self, v: &Vector<M>) -> Vector<M> {
        mat_vec(&self.q_inv, v)
    }

    #[inline]
    pub fn from_characteristic(&self, g: &Vector<M>) -> Vector<M> {
        mat_vec(&self.q, g)
    }

    /// `‖Q‖∞ ‖Q⁻¹‖∞`.
    pub fn condition_estimate(&self) -> f64 {
        norm_inf(&self.q) * norm_inf(&self.q_inv)
    }

    /// Rejects frames whose eigenvector matrix is numerically singular.
    pub fn checked(self) -> Result<Self> {
        let condition = self.condition_estimate();
        if condition.is_finite() && condition <= MAX_FRAME_CONDITION {
            Ok(self)
        } else {
            Err(Error::DegenerateEigenbasis { condition })
        }
    }

    /// Largest off-diagonal entry of `q_inv · a · q`, relative to `‖a‖∞`.
    pub fn diagonalization_residual(&self, a: &Matrix<M>) -> f64 {
        let d = mat_mul(&self.q_inv, &mat_mul(a, &self.q));
        off_diagonal_max(&d) / norm_inf(a).max(f64::MIN_POSITIVE)
    }

    /// Largest entry of `q_inv · q - I`.
    pub fn inverse_residual(&self) -> f64 {
        let p = mat_mul(&self.q_inv, &self.q);
        let mut m: f64 = 0.0;
        for (i, row) in p.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                m = m.max((x - e).abs());
            }
        }
        m
    }
}

/// Whether a field holds conserved or primitive variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Conserved,
    Primitive,
}

pub trait HyperbolicSystem<const M: usize>: Sync + Send {
    fn prim_to_cons(&self, v: &Vector<M>) -> Result<Vector<M>>;

    fn cons_to_prim(&self, u: &Vector<M>) -> Result<Vector<M>>;

    /// Conservative flux `F(U)` (or `G(U)` along `Y`).
    fn flux_cons(&self, u: &Vector<M>, axis: Axis) -> Result<Vector<M>>;

    /// Primitive-form flux `F̃(V)` (or `G̃(V)`).
    fn flux_prim(&self, v: &Vector<M>, axis: Axis) -> Vector<M>;

    /// Nonconservative matrix `B(V)` (or `C(V)`).
    fn noncons_matrix(&self, v: &Vector<M>, axis: Axis) -> Matrix<M>;

    /// `∂F̃/∂V − B`.
    fn quasilinear_matrix(&self, v: &Vector<M>, axis: Axis) -> Matrix<M>;

    /// Smallest and largest eigenvalue of the quasi-linear matrix.
    fn speed_bounds(&self, v: &Vector<M>, axis: Axis) -> Result<(f64, f64)>;

    fn eigen_frame(&self, v: &Vector<M>, axis: Axis) -> Result<EigenFrame<M>>;

    /// Component holding the velocity (primitive) or momentum (conserved)
    /// normal to a wall across `axis`, if the system has one.
    fn normal_velocity_index(&self, axis: Axis) -> Option<usize>;

    /// Converts between variable kinds; identity when `from == to`.
    fn convert(&self, w: &Vector<M>, from: VarKind, to: VarKind) -> Result<Vector<M>> {
        match (from, to) {
            (VarKind::Primitive, VarKind::Conserved) => self.prim_to_cons(w),
            (VarKind::Conserved, VarKind::Primitive) => self.cons_to_prim(w),
            _ => Ok(*w),
        }
    }
}

/// Scalar linear advection `U_t + a U_x = 0`; conservative and primitive forms
/// coincide and there is no nonconservative product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAdvection {
    pub speed: f64,
}

impl LinearAdvection {
    pub fn new(speed: f64) -> Self {
        LinearAdvection { speed }
    }
}

impl HyperbolicSystem<1> for LinearAdvection {
    fn prim_to_cons(&self, v: &Vector<1>) -> Result<Vector<1>> {
        Ok(*v)
    }

    fn cons_to_prim(&self, u: &Vector<1>) -> Result<Vector<1>> {
        Ok(*u)
    }

    fn flux_cons(&self, u: &Vector<1>, _axis: Axis) -> Result<Vector<1>> {
        Ok([self.speed * u[0]])
    }

    fn flux_prim(&self, v: &Vector<1>, _axis: Axis) -> Vector<1> {
        [self.speed * v[0]]
    }

    fn noncons_matrix(&self, _v: &Vector<1>, _axis: Axis) -> Matrix<1> {
        [[0.0]]
    }

    fn quasilinear_matrix(&self, _v: &Vector<1>, _axis: Axis) -> Matrix<1> {
        [[self.speed]]
    }

    fn speed_bounds(&self, _v: &Vector<1>, _axis: Axis) -> Result<(f64, f64)> {
        Ok((self.speed, self.speed))
    }

    fn eigen_frame(&self, _v: &Vector<1>, _axis: Axis) -> Result<EigenFrame<1>> {
        Ok(EigenFrame::identity(self.speed))
    }

    fn normal_velocity_index(&self, _axis: Axis) -> Option<usize> {
        None
    }
}
