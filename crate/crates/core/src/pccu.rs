//! Semi-discrete right-hand side of the primitive (nonconservative) system on
//! a staggered line of cells: path-conservative central-upwind fluxes with the
//! built-in anti-diffusion, plus the cell and path fluctuation terms.
//!
//! The same line kernel serves the 1-D scheme and both 2-D sweeps; in 2-D the
//! `x` part uses the frames and fluxes of `A`, the `y` part those of `ℬ`.

use crate::error::{Error, Result};
use crate::linalg::mat_vec;
use crate::recon::{characteristic_reconstruct, minmod2};
use crate::system::{Axis, HyperbolicSystem, Vector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceData<const M: usize> {
    pub v_minus: Vector<M>,
    pub v_plus: Vector<M>,
    pub a_minus: f64,
    pub a_plus: f64,
}

impl<const M: usize> InterfaceData<M> {
    pub fn is_degenerate(&self) -> bool {
        let scale = 1.0f64.max(self.a_plus.abs()).max(self.a_minus.abs());
        self.a_plus - self.a_minus < 1e-12 * scale
    }

    /// Coefficients `a⁺/(a⁺−a⁻)` and `a⁻/(a⁺−a⁻)` multiplying the path term.
    pub fn psi_weights(&self) -> (f64, f64) {
        if self.is_degenerate() {
            (0.5, -0.5)
        } else {
            let d = self.a_plus - self.a_minus;
            (self.a_plus / d, self.a_minus / d)
        }
    }

    pub fn max_speed(&self) -> f64 {
        self.a_plus.abs().max(self.a_minus.abs())
    }
}

/// One-sided speeds clipped to straddle zero.
pub fn local_speeds<S, const M: usize>(
    sys: &S,
    v_minus: &Vector<M>,
    v_plus: &Vector<M>,
    axis: Axis,
) -> Result<(f64, f64)>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let (lm_lo, lm_hi) = sys.speed_bounds(v_minus, axis)?;
    let (lp_lo, lp_hi) = sys.speed_bounds(v_plus, axis)?;
    Ok((lm_lo.min(lp_lo).min(0.0), lm_hi.max(lp_hi).max(0.0)))
}

pub fn interface<S, const M: usize>(
    sys: &S,
    v_minus: Vector<M>,
    v_plus: Vector<M>,
    axis: Axis,
) -> Result<InterfaceData<M>>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let (a_minus, a_plus) = local_speeds(sys, &v_minus, &v_plus, axis)?;
    Ok(InterfaceData { v_minus, v_plus, a_minus, a_plus })
}

/// Central-upwind flux of the primitive system. With `anti_diffusion` off the
/// correction `δV` is dropped, which gives the unmodified path-conservative
/// central-upwind flux.
pub fn cu_flux_with_antidiffusion<S, const M: usize>(
    sys: &S,
    iface: &InterfaceData<M>,
    axis: Axis,
    anti_diffusion: bool,
) -> Vector<M>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let fm = sys.flux_prim(&iface.v_minus, axis);
    let fp = sys.flux_prim(&iface.v_plus, axis);
    let mut out = [0.0; M];
    if iface.is_degenerate() {
        for k in 0..M {
            out[k] = 0.5 * (fm[k] + fp[k]);
        }
        return out;
    }
    let (am, ap) = (iface.a_minus, iface.a_plus);
    let d = ap - am;
    let diss = ap * am / d;
    for k in 0..M {
        let (vm, vp) = (iface.v_minus[k], iface.v_plus[k]);
        let dv = if anti_diffusion {
            let star = (ap * vp - am * vm - fp[k] + fm[k]) / d;
            minmod2(star - vm, vp - star)
        } else {
            0.0
        };
        out[k] = (ap * fm[k] - am * fp[k]) / d + diss * (vp - vm - dv);
    }
    out
}

/// `B(V̄)(V_right − V_left)` over one cell.
pub fn noncons_cell_term<S, const M: usize>(
    sys: &S,
    v_bar: &Vector<M>,
    v_left: &Vector<M>,
    v_right: &Vector<M>,
    axis: Axis,
) -> Vector<M>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let mut jump = [0.0; M];
    for k in 0..M {
        jump[k] = v_right[k] - v_left[k];
    }
    mat_vec(&sys.noncons_matrix(v_bar, axis), &jump)
}

/// Linear-path fluctuation `½[B(V⁻)+B(V⁺)](V⁺−V⁻)` across an interface.
pub fn noncons_path_term<S, const M: usize>(sys: &S, iface: &InterfaceData<M>, axis: Axis) -> Vector<M>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let bm = sys.noncons_matrix(&iface.v_minus, axis);
    let bp = sys.noncons_matrix(&iface.v_plus, axis);
    let mut b = [[0.0; M]; M];
    for r in 0..M {
        for c in 0..M {
            b[r][c] = 0.5 * (bm[r][c] + bp[r][c]);
        }
    }
    let mut jump = [0.0; M];
    for k in 0..M {
        jump[k] = iface.v_plus[k] - iface.v_minus[k];
    }
    mat_vec(&b, &jump)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PccuParams {
    pub theta: f64,
    pub anti_diffusion: bool,
}

/// A failure inside a line sweep, tagged with the cell index on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineError {
    pub index: isize,
    pub error: Error,
}

pub type LineResult<T> = std::result::Result<T, LineError>;

pub(crate) fn tag<T>(r: Result<T>, index: isize) -> LineResult<T> {
    r.map_err(|error| LineError { index, error })
}

/// Time derivative of `n` staggered cell averages along one line.
///
/// `line` holds the averages with `ghost` ghost cells on each side. Returns
/// the derivatives of the interior cells and the largest `|a±|` seen.
pub fn prim_rhs_line<S, const M: usize>(
    sys: &S,
    line: &[Vector<M>],
    n: usize,
    ghost: usize,
    h: f64,
    params: &PccuParams,
    axis: Axis,
) -> LineResult<(Vec<Vector<M>>, f64)>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    debug_assert!(ghost >= 2 && line.len() == n + 2 * ghost);
    let g = ghost as isize;
    let at = |i: isize| &line[(i + g) as usize];
    let ni = n as isize;

    // endpoint values of cells -1..=n, stored at offset +1
    let mut lo = Vec::with_capacity(n + 2);
    let mut hi = Vec::with_capacity(n + 2);
    for i in -1..=ni {
        let (l, r) = tag(
            characteristic_reconstruct(sys, at(i - 1), at(i), at(i + 1), h, params.theta, axis),
            i,
        )?;
        lo.push(l);
        hi.push(r);
    }

    // interface k sits between cells k-1 and k
    let mut flux = Vec::with_capacity(n + 1);
    let mut psi = Vec::with_capacity(n + 1);
    let mut weights = Vec::with_capacity(n + 1);
    let mut max_speed = 0.0f64;
    for k in 0..=ni {
        let iface = tag(interface(sys, hi[k as usize], lo[k as usize + 1], axis), k)?;
        max_speed = max_speed.max(iface.max_speed());
        flux.push(cu_flux_with_antidiffusion(sys, &iface, axis, params.anti_diffusion));
        psi.push(noncons_path_term(sys, &iface, axis));
        weights.push(iface.psi_weights());
    }

    let inv_h = 1.0 / h;
    let mut rhs = Vec::with_capacity(n);
    for j in 0..n {
        let cell = noncons_cell_term(sys, at(j as isize), &lo[j + 1], &hi[j + 1], axis);
        let (w_plus_left, _) = weights[j];
        let (_, w_minus_right) = weights[j + 1];
        let mut out = [0.0; M];
        for k in 0..M {
            let bracket = flux[j + 1][k] - flux[j][k] - cell[k] - w_plus_left * psi[j][k]
                + w_minus_right * psi[j + 1][k];
            out[k] = -(inv_h * bracket);
        }
        rhs.push(out);
    }
    Ok((rhs, max_speed))
}
