//! Fixed-size dense helpers for the small matrices of the kernels.

use crate::system::{Matrix, Vector};

#[inline]
pub fn mat_vec<const M: usize>(a: &Matrix<M>, x: &Vector<M>) -> Vector<M> {
    let mut y = [0.0; M];
    for (yi, row) in y.iter_mut().zip(a) {
        let mut s = 0.0;
        for (aij, xj) in row.iter().zip(x) {
            s += aij * xj;
        }
        *yi = s;
    }
    y
}

pub fn mat_mul<const M: usize>(a: &Matrix<M>, b: &Matrix<M>) -> Matrix<M> {
    let mut c = [[0.0; M]; M];
    for i in 0..M {
        for j in 0..M {
            let mut s = 0.0;
            for k in 0..M {
                s += a[i][k] * b[k][j];
            }
            c[i][j] = s;
        }
    }
    c
}

#[inline]
pub fn mat_add<const M: usize>(a: &Matrix<M>, b: &Matrix<M>) -> Matrix<M> {
    let mut c = *a;
    for (ci, bi) in c.iter_mut().zip(b) {
        for (cij, bij) in ci.iter_mut().zip(bi) {
            *cij += bij;
        }
    }
    c
}

pub fn identity<const M: usize>() -> Matrix<M> {
    let mut c = [[0.0; M]; M];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    c
}

/// Infinity-norm (max absolute row sum).
pub fn norm_inf<const M: usize>(a: &Matrix<M>) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest absolute entry of `a - diag(a)`, i.e. how far `a` is from diagonal.
pub fn off_diagonal_max<const M: usize>(a: &Matrix<M>) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..M {
        for j in 0..M {
            if i != j {
                m = m.max(a[i][j].abs());
            }
        }
    }
    m
}

#[inline]
pub fn axpy<const M: usize>(alpha: f64, x: &Vector<M>, y: &Vector<M>) -> Vector<M> {
    let mut z = *y;
    for (zi, xi) in z.iter_mut().zip(x) {
        *zi += alpha * xi;
    }
    z
}

#[inline]
pub fn sub<const M: usize>(a: &Vector<M>, b: &Vector<M>) -> Vector<M> {
    let mut z = *a;
    for (zi, bi) in z.iter_mut().zip(b) {
        *zi -= bi;
    }
    z
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut c = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}
