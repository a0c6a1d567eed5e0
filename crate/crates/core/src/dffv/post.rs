use crate::pccu::{tag, LineResult};
use crate::recon::minmod2;
use crate::system::{HyperbolicSystem, Vector};

/// Result of the post-processing along one line.
#[derive(Debug, Clone, PartialEq)]
pub struct LinePost<const M: usize> {
    /// Corrected primal averages, `n` cells.
    pub u: Vec<Vector<M>>,
    /// Rebuilt staggered primitive averages, `n + 1` cells.
    pub v: Vec<Vector<M>>,
    /// `Σ ū_new − Σ ū` produced by the edge cells; zero for periodic ghosts.
    pub boundary: Vector<M>,
}

/// Conservative post-processing along one line of `n` primal cells.
///
/// `u` holds primal conserved averages and `v` the staggered primitive
/// averages, both with `ghost` ghost cells filled. The staggered averages are
/// converted to point values of `U` at the primal interfaces, a limited slope
/// `2·minmod` of the two one-sided differences is built in every primal cell,
/// the two one-sided interface values are averaged into `U**`, and the primal
/// averages are replaced by the mean of their two interface values.
pub fn post_process_line<S, const M: usize>(
    sys: &S,
    u: &[Vector<M>],
    v: &[Vector<M>],
    n: usize,
    ghost: usize,
    h: f64,
) -> LineResult<LinePost<M>>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    debug_assert!(u.len() == n + 2 * ghost && v.len() == n + 1 + 2 * ghost);
    let g = ghost as isize;
    let ni = n as isize;
    let ubar = |j: isize| &u[(j + g) as usize];

    // U at interfaces -1..=n+1, stored at offset +1
    let mut ustar = Vec::with_capacity(n + 3);
    for i in -1..=ni + 1 {
        ustar.push(tag(sys.prim_to_cons(&v[(i + g) as usize]), i)?);
    }
    let us = |i: isize| &ustar[(i + 1) as usize];

    // limited slopes in primal cells -1..=n, offset +1
    let inv_h = 1.0 / h;
    let mut slope = Vec::with_capacity(n + 2);
    for j in -1..=ni {
        let (c, l, r) = (ubar(j), us(j), us(j + 1));
        let mut s = [0.0; M];
        for k in 0..M {
            s[k] = 2.0 * minmod2((c[k] - l[k]) * inv_h, (r[k] - c[k]) * inv_h);
        }
        slope.push(s);
    }
    let sl = |j: isize| &slope[(j + 1) as usize];

    let half_h = 0.5 * h;
    let mut ustar2 = Vec::with_capacity(n + 1);
    let mut vnew = Vec::with_capacity(n + 1);
    for i in 0..=ni {
        let (a, sa) = (ubar(i - 1), sl(i - 1));
        let (b, sb) = (ubar(i), sl(i));
        let mut w = [0.0; M];
        for k in 0..M {
            let minus = half_h.mul_add(sa[k], a[k]);
            let plus = (-half_h).mul_add(sb[k], b[k]);
            w[k] = 0.5 * (minus + plus);
        }
        vnew.push(tag(sys.cons_to_prim(&w), i)?);
        ustar2.push(w);
    }

    let mut unew = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = [0.0; M];
        for k in 0..M {
            w[k] = 0.5 * (ustar2[j][k] + ustar2[j + 1][k]);
        }
        unew.push(w);
    }

    let mut boundary = [0.0; M];
    let eighth_h = 0.125 * h;
    for k in 0..M {
        let left = 0.25 * (ubar(-1)[k] - ubar(0)[k]) + eighth_h * (sl(-1)[k] + sl(0)[k]);
        let right = 0.25 * (ubar(ni)[k] - ubar(ni - 1)[k]) - eighth_h * (sl(ni - 1)[k] + sl(ni)[k]);
        boundary[k] = left + right;
    }
    Ok(LinePost { u: unew, v: vnew, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::Euler1D;
    use crate::linalg::compensated_sum;
    use crate::system::LinearAdvection;

    #[test]
    fn constant_state_is_fixed_point() {
        let sys = Euler1D::default();
        let v = [0.8, 0.4, 1.3];
        let u = sys.prim_to_cons(&v).unwrap();
        let out = post_process_line(&sys, &vec![u; 10], &vec![v; 11], 6, 2, 0.1).unwrap();
        for w in &out.u {
            for k in 0..3 {
                assert!((w[k] - u[k]).abs() <= 1e-15 * u[k].abs());
            }
        }
        for w in &out.v {
            for k in 0..3 {
                assert!((w[k] - v[k]).abs() <= 1e-14 * v[k].abs());
            }
        }
    }

    /// Hand computation with globally linear data `U = x` on unit cells:
    /// `ū_j = j + ½`, interface values `U*_i = i`, slopes `2·minmod(½, ½) = 1`,
    /// so `U** = i` exactly and the corrected averages are unchanged.
    #[test]
    fn linear_data_reproduced() {
        let sys = LinearAdvection::new(1.0);
        let u: Vec<[f64; 1]> = (-2..5).map(|j| [j as f64 + 0.5]).collect();
        let v: Vec<[f64; 1]> = (-2..6).map(|i| [i as f64]).collect();
        let out = post_process_line(&sys, &u, &v, 3, 2, 1.0).unwrap();
        assert_eq!(out.v, vec![[0.0], [1.0], [2.0], [3.0]]);
        assert_eq!(out.u, vec![[0.5], [1.5], [2.5]]);
        assert_eq!(out.boundary, [0.0]);
    }

    #[test]
    fn boundary_term_accounts_for_sum_change() {
        let sys = Euler1D::default();
        let n = 12;
        let v: Vec<[f64; 3]> = (0..n + 5)
            .map(|i| [1.0 + 0.3 * (i as f64).sin(), 0.1 * i as f64, 1.0 + 0.2 * (0.7 * i as f64).cos()])
            .collect();
        let u: Vec<[f64; 3]> = (0..n + 4)
            .map(|j| {
                let a = sys.prim_to_cons(&v[j]).unwrap();
                let b = sys.prim_to_cons(&v[j + 1]).unwrap();
                [0.5 * (a[0] + b[0]) + 0.01, 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])]
            })
            .collect();
        let out = post_process_line(&sys, &u, &v, n, 2, 0.1).unwrap();
        for k in 0..3 {
            let before = compensated_sum(u[2..2 + n].iter().map(|w| w[k]));
            let after = compensated_sum(out.u.iter().map(|w| w[k]));
            assert!((after - before - out.boundary[k]).abs() < 1e-13, "{k}");
        }
    }
}
