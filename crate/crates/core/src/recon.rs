//! Slope limiters and piecewise-linear reconstruction.

use log::debug;

use crate::error::{Error, Result};
use crate::system::{Axis, HyperbolicSystem, Vector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimiterParams {
    pub theta: f64,
}

impl LimiterParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&theta) {
            return Err(Error::BadParameter(format!("theta must lie in [1, 2], got {theta}")));
        }
        Ok(LimiterParams { theta })
    }
}

/// Smallest value if all are positive, largest if all negative, zero otherwise.
pub fn minmod(values: &[f64]) -> f64 {
    let Some((&first, rest)) = values.split_first() else {
        return 0.0;
    };
    let mut out = first;
    for &c in rest {
        if out > 0.0 && c > 0.0 {
            out = out.min(c);
        } else if out < 0.0 && c < 0.0 {
            out = out.max(c);
        } else {
            return 0.0;
        }
    }
    out
}

#[inline]
pub fn minmod2(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        a.min(b)
    } else if a < 0.0 && b < 0.0 {
        a.max(b)
    } else {
        0.0
    }
}

#[inline]
pub fn minmod3(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Component-wise generalized minmod slope of three consecutive averages.
pub fn generalized_minmod_slope<const M: usize>(
    w_minus: &Vector<M>,
    w_center: &Vector<M>,
    w_plus: &Vector<M>,
    h: f64,
    theta: f64,
) -> Vector<M> {
    let mut s = [0.0; M];
    for k in 0..M {
        let back = theta * (w_center[k] - w_minus[k]) / h;
        let central = (w_plus[k] - w_minus[k]) / (2.0 * h);
        let fwd = theta * (w_plus[k] - w_center[k]) / h;
        s[k] = minmod3(back, central, fwd);
    }
    s
}

/// Endpoint values `(w − h/2·s, w + h/2·s)` of a limited linear profile.
#[inline]
pub fn linear_endpoints<const M: usize>(w: &Vector<M>, slope: &Vector<M>, h: f64) -> (Vector<M>, Vector<M>) {
    let mut lo = *w;
    let mut hi = *w;
    for k in 0..M {
        let d = 0.5 * h * slope[k];
        lo[k] -= d;
        hi[k] += d;
    }
    (lo, hi)
}

pub fn componentwise_reconstruct<const M: usize>(
    w_minus: &Vector<M>,
    w_center: &Vector<M>,
    w_plus: &Vector<M>,
    h: f64,
    theta: f64,
) -> (Vector<M>, Vector<M>) {
    let s = generalized_minmod_slope(w_minus, w_center, w_plus, h, theta);
    linear_endpoints(w_center, &s, h)
}

/// Reconstruct the centre cell of a three-cell stencil in the local
/// characteristic variables of the centre average. Returns the values at the
/// cell's left and right endpoints.
pub fn characteristic_reconstruct<S, const M: usize>(
    sys: &S,
    w_minus: &Vector<M>,
    w_center: &Vector<M>,
    w_plus: &Vector<M>,
    h: f64,
    theta: f64,
    axis: Axis,
) -> Result<(Vector<M>, Vector<M>)>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let frame = match sys.eigen_frame(w_center, axis) {
        Ok(f) => f,
        Err(Error::DegenerateEigenbasis { condition }) => {
            debug!("degenerate eigenbasis (condition {condition:e}), limiting component-wise");
            return Ok(componentwise_reconstruct(w_minus, w_center, w_plus, h, theta));
        }
        Err(e) => return Err(e),
    };
    let gm = frame.to_characteristic(w_minus);
    let gc = frame.to_characteristic(w_center);
    let gp = frame.to_characteristic(w_plus);
    let s = generalized_minmod_slope(&gm, &gc, &gp, h, theta);
    let (lo, hi) = linear_endpoints(&gc, &s, h);
    Ok((frame.from_characteristic(&lo), frame.from_characteristic(&hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{Euler1D, Euler2D};
    use crate::system::LinearAdvection;
    use proptest::prelude::*;

    #[test]
    fn minmod_cases() {
        assert_eq!(minmod(&[1.0, 2.0, 3.0]), 1.0);
        assert_eq!(minmod(&[-1.0, 2.0]), 0.0);
        assert_eq!(minmod(&[-1.0, -2.0, -0.5]), -0.5);
        assert_eq!(minmod(&[0.0, 1.0]), 0.0);
        assert_eq!(minmod2(3.0, 2.0), 2.0);
        assert_eq!(minmod3(-3.0, -2.0, -4.0), -2.0);
    }

    #[test]
    fn generalized_slope_cases() {
        let s = generalized_minmod_slope(&[0.0], &[1.0], &[2.0], 1.0, 1.3);
        assert_eq!(s, [1.0]);
        let s = generalized_minmod_slope(&[0.0], &[1.0], &[0.0], 1.0, 1.3);
        assert_eq!(s, [0.0]);
        // minmod(2, 1.5, 4)
        let s = generalized_minmod_slope(&[0.0], &[1.0], &[3.0], 1.0, 2.0);
        assert_eq!(s, [1.5]);
    }

    #[test]
    fn theta_range() {
        assert!(LimiterParams::new(1.3).is_ok());
        assert!(LimiterParams::new(0.9).is_err());
        assert!(LimiterParams::new(2.1).is_err());
    }

    #[test]
    fn constant_reproduced_exactly() {
        let sys = Euler1D::default();
        let v = [0.7, -0.3, 2.1];
        let (lo, hi) = characteristic_reconstruct(&sys, &v, &v, &v, 0.01, 1.3, Axis::X).unwrap();
        for k in 0..3 {
            assert!((lo[k] - v[k]).abs() <= 1e-15 * v[k].abs().max(1.0));
            assert!((hi[k] - v[k]).abs() <= 1e-15 * v[k].abs().max(1.0));
        }
    }

    #[test]
    fn linear_entropy_wave_unclipped() {
        // ρ varies linearly, u and p constant: only the entropy characteristic changes
        let sys = Euler1D::default();
        let h = 0.1;
        let (lo, hi) = characteristic_reconstruct(
            &sys,
            &[1.0, 0.5, 1.0],
            &[1.1, 0.5, 1.0],
            &[1.2, 0.5, 1.0],
            h,
            1.3,
            Axis::X,
        )
        .unwrap();
        assert!((lo[0] - 1.05).abs() < 1e-13);
        assert!((hi[0] - 1.15).abs() < 1e-13);
        assert!((lo[1] - 0.5).abs() < 1e-13 && (hi[2] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn sod_jump_no_overshoot() {
        let sys = Euler1D::default();
        let l = [1.0, 0.0, 1.0];
        let r = [0.125, 0.0, 0.1];
        for (a, b, c) in [(l, l, r), (l, r, r)] {
            let (lo, hi) = characteristic_reconstruct(&sys, &a, &b, &c, 0.005, 1.3, Axis::X).unwrap();
            for k in [0, 2] {
                let mn = a[k].min(c[k]) - 1e-12;
                let mx = a[k].max(c[k]) + 1e-12;
                assert!(lo[k] >= mn && lo[k] <= mx, "{lo:?}");
                assert!(hi[k] >= mn && hi[k] <= mx, "{hi:?}");
            }
        }
    }

    #[test]
    fn second_order_on_sine() {
        let sys = LinearAdvection::new(1.0);
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let avg = |i: f64| {
                let (a, b) = (i * h, (i + 1.0) * h);
                [((2.0 * std::f64::consts::PI * a).cos() - (2.0 * std::f64::consts::PI * b).cos())
                    / (2.0 * std::f64::consts::PI * h)]
            };
            let mut e = 0.0f64;
            for i in 0..n {
                let x = i as f64;
                let (lo, hi) =
                    characteristic_reconstruct(&sys, &avg(x - 1.0), &avg(x), &avg(x + 1.0), h, 1.3, Axis::X)
                        .unwrap();
                e += h * (lo[0] - (2.0 * std::f64::consts::PI * x * h).sin()).abs();
                e += h * (hi[0] - (2.0 * std::f64::consts::PI * (x + 1.0) * h).sin()).abs();
            }
            e
        };
        let rate = (err(100) / err(200)).log2();
        assert!(rate >= 1.8, "rate {rate}");
    }

    #[test]
    fn two_d_frames_reduce_to_one_d() {
        let s1 = Euler1D::default();
        let s2 = Euler2D::default();
        let (a, b, c) = ([1.0, 0.2, 1.0], [0.6, 0.1, 0.5], [0.125, 0.0, 0.1]);
        let e = |v: [f64; 3]| [v[0], v[1], 0.0, v[2]];
        let (lo1, hi1) = characteristic_reconstruct(&s1, &a, &b, &c, 0.01, 1.3, Axis::X).unwrap();
        let (lo2, hi2) = characteristic_reconstruct(&s2, &e(a), &e(b), &e(c), 0.01, 1.3, Axis::X).unwrap();
        assert_eq!([lo1[0], lo1[1], lo1[2]], [lo2[0], lo2[1], lo2[3]]);
        assert_eq!([hi1[0], hi1[1], hi1[2]], [hi2[0], hi2[1], hi2[3]]);
    }

    proptest! {
        #[test]
        fn characteristic_endpoints_bounded(
            a in prop::array::uniform3(-5.0f64..5.0),
            b in prop::array::uniform3(-5.0f64..5.0),
            c in prop::array::uniform3(-5.0f64..5.0),
            theta in 1.0f64..2.0,
        ) {
            let sys = Euler1D::default();
            let v = |g: [f64; 3]| [1.0 + 0.1 * g[0].abs(), g[1], 1.0 + 0.1 * g[2].abs()];
            let (va, vb, vc) = (v(a), v(b), v(c));
            let frame = sys.eigen_frame(&vb, Axis::X).unwrap();
            let (lo, hi) = characteristic_reconstruct(&sys, &va, &vb, &vc, 0.1, theta, Axis::X).unwrap();
            let (ga, gb, gc) = (
                frame.to_characteristic(&va),
                frame.to_characteristic(&vb),
                frame.to_characteristic(&vc),
            );
            for g in [frame.to_characteristic(&lo), frame.to_characteristic(&hi)] {
                for k in 0..3 {
                    let mn = ga[k].min(gb[k]).min(gc[k]);
                    let mx = ga[k].max(gb[k]).max(gc[k]);
                    let tol = 1e-10 * (1.0 + mx.abs().max(mn.abs()));
                    prop_assert!(g[k] >= mn - tol && g[k] <= mx + tol);
                }
            }
        }
    }
}
