//! Schlieren shading and diagonal slices of 2-D fields.

use crate::error::{Error, Result};
use crate::grid::Field2D;

pub const SCHLIEREN_K: f64 = 80.0;

/// Shading `exp(−K|∇ρ| / max|∇ρ|)` of a row-major `nx × ny` density raster.
/// Central differences inside, one-sided at the edges; the maximum is taken
/// over interior points only.
pub fn schlieren(rho: &[f64], nx: usize, ny: usize, dx: f64, dy: f64, k: f64) -> Result<Vec<f64>> {
    if nx < 3 || ny < 3 {
        return Err(Error::BadResolution(format!("schlieren needs at least 3 x 3 points, got {nx} x {ny}")));
    }
    if rho.len() != nx * ny {
        return Err(Error::IncompatibleGrids(format!("{} values for a {nx} x {ny} raster", rho.len())));
    }
    let at = |i: usize, j: usize| rho[j * nx + i];
    let deriv = |i: usize, n: usize, h: f64, f: &dyn Fn(usize) -> f64| {
        if i == 0 {
            (f(1) - f(0)) / h
        } else if i == n - 1 {
            (f(n - 1) - f(n - 2)) / h
        } else {
            (f(i + 1) - f(i - 1)) / (2.0 * h)
        }
    };
    let mut grad = vec![0.0; nx * ny];
    let mut max_interior = 0.0f64;
    for j in 0..ny {
        for i in 0..nx {
            let gx = deriv(i, nx, dx, &|ii| at(ii, j));
            let gy = deriv(j, ny, dy, &|jj| at(i, jj));
            let g = gx.hypot(gy);
            grad[j * nx + i] = g;
            if i > 0 && i + 1 < nx && j > 0 && j + 1 < ny {
                max_interior = max_interior.max(g);
            }
        }
    }
    if max_interior < 1e-14 {
        return Ok(vec![1.0; nx * ny]);
    }
    Ok(grad.iter().map(|g| (-k * g / max_interior).exp()).collect())
}

/// Schlieren raster of the density (component 0) of a 2-D field.
pub fn schlieren_field<const M: usize>(field: &Field2D<M>, k: f64) -> Result<Vec<f64>> {
    let rho: Vec<f64> = field.interior_iter().map(|w| w[0]).collect();
    schlieren(&rho, field.nx, field.ny, field.grid.x.dx, field.grid.y.dx, k)
}

/// Values of cells `(i, i)` with the signed radius `√(x²+y²)·sign(x)` of
/// their centres.
pub fn diagonal_slice<const M: usize>(field: &Field2D<M>) -> Result<Vec<(f64, [f64; M])>> {
    if field.grid.x.n != field.grid.y.n {
        return Err(Error::NonSquareGrid { nx: field.grid.x.n, ny: field.grid.y.n });
    }
    let n = field.nx.min(field.ny);
    Ok((0..n as isize)
        .map(|i| {
            let (x, y) = field.center(i, i);
            let r = x.hypot(y) * if x < 0.0 { -1.0 } else { 1.0 };
            (r, *field.at(i, i))
        })
        .collect())
}
