//! Discrete `L¹` norms and conservative restriction.

use crate::error::{Error, Result};
use crate::grid::{sample_1d, sample_2d, Field1D, Field2D, Mesh1D, Quadrature};
use crate::linalg::compensated_sum;
use crate::system::{Axis, Vector};

/// Cell weight along one axis: staggered edge cells stick half out of the
/// domain and count with half their width.
fn edge_weight(mesh: Mesh1D, i: usize, n_int: usize) -> f64 {
    match mesh {
        Mesh1D::Staggered if i == 0 || i + 1 == n_int => 0.5,
        _ => 1.0,
    }
}

/// `Σ |a − b| · |cell ∩ Ω|` per component.
pub fn l1_diff_1d<const M: usize>(a: &Field1D<M>, b: &Field1D<M>) -> Result<Vec<f64>> {
    if a.grid != b.grid || a.mesh != b.mesh {
        return Err(Error::IncompatibleGrids("fields live on different meshes".into()));
    }
    let n = a.n_interior();
    let h = a.grid.dx;
    Ok((0..M)
        .map(|k| {
            compensated_sum(
                a.interior()
                    .iter()
                    .zip(b.interior())
                    .enumerate()
                    .map(|(i, (x, y))| (x[k] - y[k]).abs() * h * edge_weight(a.mesh, i, n)),
            )
        })
        .collect())
}

pub fn l1_diff_2d<const M: usize>(a: &Field2D<M>, b: &Field2D<M>) -> Result<Vec<f64>> {
    if a.grid != b.grid || a.mesh != b.mesh {
        return Err(Error::IncompatibleGrids("fields live on different meshes".into()));
    }
    let (mx, my) = (a.mesh.along(Axis::X), a.mesh.along(Axis::Y));
    let area = a.grid.cell_area();
    Ok((0..M)
        .map(|k| {
            let mut terms = Vec::with_capacity(a.nx * a.ny);
            for j in 0..a.ny {
                for i in 0..a.nx {
                    let w = edge_weight(mx, i, a.nx) * edge_weight(my, j, a.ny);
                    let d = a.at(i as isize, j as isize)[k] - b.at(i as isize, j as isize)[k];
                    terms.push(d.abs() * area * w);
                }
            }
            compensated_sum(terms)
        })
        .collect())
}

/// Error against exact cell averages formed with `quadrature`.
pub fn l1_error_1d<const M: usize>(
    field: &Field1D<M>,
    exact: impl Fn(f64) -> Vector<M>,
    quadrature: Quadrature,
    periodic: bool,
) -> Vec<f64> {
    let reference = sample_1d(&field.grid, field.mesh, quadrature, periodic, exact);
    match l1_diff_1d(field, &reference) {
        Ok(e) => e,
        Err(_) => unreachable!(),
    }
}

pub fn l1_error_2d<const M: usize>(
    field: &Field2D<M>,
    exact: impl Fn(f64, f64) -> Vector<M> + Sync,
    quadrature: Quadrature,
    periodic: (bool, bool),
) -> Vec<f64> {
    let reference = sample_2d(&field.grid, field.mesh, quadrature, periodic, exact);
    match l1_diff_2d(field, &reference) {
        Ok(e) => e,
        Err(_) => unreachable!(),
    }
}

/// Average groups of `factor` consecutive primal cells of `fine` onto a mesh
/// with `n / factor` cells.
pub fn coarsen_1d<const M: usize>(fine: &Field1D<M>, factor: usize) -> Result<Field1D<M>> {
    if fine.mesh != Mesh1D::Primal {
        return Err(Error::IncompatibleGrids("only primal fields can be coarsened".into()));
    }
    if factor == 0 || fine.grid.n % factor != 0 {
        return Err(Error::IncompatibleGrids(format!(
            "{} cells cannot be coarsened by {factor}",
            fine.grid.n
        )));
    }
    let g = fine.grid;
    let coarse = crate::grid::Grid1D::new(g.x_left, g.x_right, g.n / factor)?;
    let cells: Vec<Vector<M>> = fine
        .interior()
        .chunks(factor)
        .map(|chunk| {
            let mut out = [0.0; M];
            for k in 0..M {
                out[k] = compensated_sum(chunk.iter().map(|w| w[k])) / factor as f64;
            }
            out
        })
        .collect();
    Field1D::from_interior(coarse, Mesh1D::Primal, &cells)
}

/// Error of `field` against a finer primal `reference` restricted onto its mesh.
pub fn l1_against_reference_1d<const M: usize>(field: &Field1D<M>, reference: &Field1D<M>) -> Result<Vec<f64>> {
    let gf = field.grid;
    let gr = reference.grid;
    if gf.x_left != gr.x_left || gf.x_right != gr.x_right || gr.n % gf.n != 0 {
        return Err(Error::IncompatibleGrids(format!("{} cells cannot restrict onto {}", gr.n, gf.n)));
    }
    let restricted = coarsen_1d(reference, gr.n / gf.n)?;
    l1_diff_1d(field, &restricted)
}

/// Observed order `log₂(e_coarse / e_fine)` for a refinement by two.
pub fn rate(e_coarse: f64, e_fine: f64) -> Option<f64> {
    if e_coarse > 0.0 && e_fine > 0.0 {
        Some((e_coarse / e_fine).log2())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use proptest::prelude::*;

    #[test]
    fn zero_and_offset() {
        let g = Grid1D::new(0.0, 2.0, 10).unwrap();
        let a = sample_1d(&g, Mesh1D::Primal, Quadrature::Midpoint, false, |x| [x.sin()]);
        assert_eq!(l1_diff_1d(&a, &a).unwrap(), vec![0.0]);
        let b = sample_1d(&g, Mesh1D::Primal, Quadrature::Midpoint, false, |x| [x.sin() + 0.1]);
        assert!((l1_diff_1d(&a, &b).unwrap()[0] - 0.2).abs() < 1e-14);
        // staggered mesh also covers exactly the domain
        let a = sample_1d(&g, Mesh1D::Staggered, Quadrature::Midpoint, false, |_| [0.0]);
        let b = sample_1d(&g, Mesh1D::Staggered, Quadrature::Midpoint, false, |_| [0.1]);
        assert!((l1_diff_1d(&a, &b).unwrap()[0] - 0.2).abs() < 1e-14);
    }

    #[test]
    fn coarsening_preserves_integral() {
        let g = Grid1D::new(-1.0, 3.0, 64).unwrap();
        let f = sample_1d(&g, Mesh1D::Primal, Quadrature::Gauss3, false, |x| [x.exp(), x * x]);
        let c = coarsen_1d(&f, 8).unwrap();
        for k in 0..2 {
            let fine = compensated_sum(f.interior().iter().map(|w| w[k])) * f.grid.dx;
            let coarse = compensated_sum(c.interior().iter().map(|w| w[k])) * c.grid.dx;
            assert!((fine - coarse).abs() < 1e-13 * fine.abs());
        }
        assert!(coarsen_1d(&f, 5).is_err());
        let s = sample_1d(&g, Mesh1D::Staggered, Quadrature::Midpoint, false, |x| [x]);
        assert!(coarsen_1d(&s, 2).is_err());
    }

    #[test]
    fn incompatible_meshes() {
        let g = Grid1D::new(0.0, 1.0, 10).unwrap();
        let a = sample_1d(&g, Mesh1D::Primal, Quadrature::Midpoint, false, |_| [0.0]);
        let b = sample_1d(&g, Mesh1D::Staggered, Quadrature::Midpoint, false, |_| [0.0]);
        assert!(matches!(l1_diff_1d(&a, &b), Err(Error::IncompatibleGrids(_))));
    }

    #[test]
    fn rates() {
        assert_eq!(rate(4.0, 1.0), Some(2.0));
        assert_eq!(rate(0.0, 0.0), None);
    }

    proptest! {
        #[test]
        fn triangle_inequality(
            a in prop::collection::vec(-3.0f64..3.0, 8),
            b in prop::collection::vec(-3.0f64..3.0, 8),
            c in prop::collection::vec(-3.0f64..3.0, 8),
        ) {
            let g = Grid1D::new(0.0, 1.0, 8).unwrap();
            let f = |v: &Vec<f64>| {
                let cells: Vec<[f64; 1]> = v.iter().map(|&x| [x]).collect();
                Field1D::from_interior(g, Mesh1D::Primal, &cells).unwrap()
            };
            let (fa, fb, fc) = (f(&a), f(&b), f(&c));
            let ab = l1_diff_1d(&fa, &fb).unwrap()[0];
            let bc = l1_diff_1d(&fb, &fc).unwrap()[0];
            let ac = l1_diff_1d(&fa, &fc).unwrap()[0];
            prop_assert!(ac <= ab + bc + 1e-12);
        }
    }
}
