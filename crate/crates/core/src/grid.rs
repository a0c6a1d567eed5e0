//! Overlapping uniform meshes and the cell-average fields that live on them.
//!
//! In 1-D the primal cells are `I_j = [x_{j−½}, x_{j+½}]`, `j = 0..n`, and the
//! staggered cells `I_{j+½} = [x_j, x_{j+1}]` are centred on the primal
//! interfaces, so there are `n + 1` of them and the two outermost ones stick
//! half a cell out of the domain. In 2-D there is a primal mesh plus one mesh
//! shifted in `x` and one shifted in `y`.
//!
//! Indices below are zero-based: primal cell `i` is centred at
//! `x_left + (i + ½)dx`, staggered cell `i` at `x_left + i dx`.

use crate::error::{Error, Result};
use crate::system::{Axis, HyperbolicSystem, VarKind, Vector};

/// Ghost layers on every side; the widest stencil reaches two neighbours.
pub const GHOST: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n: usize,
    pub dx: f64,
    pub ghost: usize,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::BadResolution(format!("need at least 4 cells, got {n}")));
        }
        if !(x_right > x_left) {
            return Err(Error::BadResolution(format!(
                "domain bounds out of order: [{x_left}, {x_right}]"
            )));
        }
        Ok(Grid1D {
            x_left,
            x_right,
            n,
            dx: (x_right - x_left) / n as f64,
            ghost: GHOST,
        })
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    #[inline]
    pub fn primal_center(&self, i: isize) -> f64 {
        (i as f64 + 0.5).mul_add(self.dx, self.x_left)
    }

    #[inline]
    pub fn staggered_center(&self, i: isize) -> f64 {
        (i as f64).mul_add(self.dx, self.x_left)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mesh1D {
    Primal,
    Staggered,
}

impl Mesh1D {
    pub fn interior_len(self, n: usize) -> usize {
        match self {
            Mesh1D::Primal => n,
            Mesh1D::Staggered => n + 1,
        }
    }

    pub fn center(self, grid: &Grid1D, i: isize) -> f64 {
        match self {
            Mesh1D::Primal => grid.primal_center(i),
            Mesh1D::Staggered => grid.staggered_center(i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition<const M: usize> {
    Periodic,
    /// Zeroth-order extrapolation; also used for "transmissive" boundaries.
    Free,
    /// Fixed primitive state in the ghost cells.
    Inflow(Vector<M>),
    /// Mirror image with the normal velocity (momentum) negated.
    SolidWall,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundaries1D<const M: usize> {
    pub left: BoundaryCondition<M>,
    pub right: BoundaryCondition<M>,
}

impl<const M: usize> Boundaries1D<M> {
    pub fn uniform(bc: BoundaryCondition<M>) -> Self {
        Boundaries1D { left: bc, right: bc }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.left, BoundaryCondition::Periodic)
    }

    pub fn validate(&self) -> Result<()> {
        let lp = matches!(self.left, BoundaryCondition::Periodic);
        let rp = matches!(self.right, BoundaryCondition::Periodic);
        if lp != rp {
            return Err(Error::BadParameter(
                "periodic boundaries must be set on both sides".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundaries2D<const M: usize> {
    pub left: BoundaryCondition<M>,
    pub right: BoundaryCondition<M>,
    pub bottom: BoundaryCondition<M>,
    pub top: BoundaryCondition<M>,
}

impl<const M: usize> Boundaries2D<M> {
    pub fn uniform(bc: BoundaryCondition<M>) -> Self {
        Boundaries2D { left: bc, right: bc, bottom: bc, top: bc }
    }

    pub fn along(&self, axis: Axis) -> Boundaries1D<M> {
        match axis {
            Axis::X => Boundaries1D { left: self.left, right: self.right },
            Axis::Y => Boundaries1D { left: self.bottom, right: self.top },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.along(Axis::X).validate()?;
        self.along(Axis::Y).validate()
    }
}

/// A line of cells inside some field buffer: `data[offset + (i + ghost) * stride]`
/// for `i` in `-ghost .. n_int + ghost`.
struct LineView {
    offset: usize,
    stride: usize,
    n_int: usize,
    ghost: usize,
    staggered: bool,
    n_cells: usize,
}

impl LineView {
    #[inline]
    fn pos(&self, i: isize) -> usize {
        self.offset + ((i + self.ghost as isize) as usize) * self.stride
    }
}

fn fill_line<S, const M: usize>(
    data: &mut [Vector<M>],
    line: &LineView,
    bc: &Boundaries1D<M>,
    sys: &S,
    kind: VarKind,
    axis: Axis,
) -> Result<()>
where
    S: HyperbolicSystem<M> + ?Sized,
{
    let n_int = line.n_int as isize;
    let n = line.n_cells as isize;
    let shift = if line.staggered { 1 } else { 0 };
    let normal = sys.normal_velocity_index(axis);
    for g in 1..=line.ghost as isize {
        for (side, bc) in [(0, &bc.left), (1, &bc.right)] {
            let dst = if side == 0 { -g } else { n_int - 1 + g };
            let value = match bc {
                BoundaryCondition::Periodic => {
                    let src = if side == 0 { dst + n } else { dst - n };
                    data[line.pos(src)]
                }
                BoundaryCondition::Free => {
                    let src = if side == 0 { 0 } else { n_int - 1 };
                    data[line.pos(src)]
                }
                BoundaryCondition::Inflow(state) => {
                    sys.convert(state, VarKind::Primitive, kind)?
                }
                BoundaryCondition::SolidWall => {
                    let src = if side == 0 { g - 1 + shift } else { n_int - g - shift };
                    let mut w = data[line.pos(src)];
                    if let Some(k) = normal {
                        w[k] = -w[k];
                    }
                    w
                }
            };
            let p = line.pos(dst);
            data[p] = value;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field1D<const M: usize> {
    pub grid: Grid1D,
    pub mesh: Mesh1D,
    /// Interior cells with `grid.ghost` ghost cells on each side.
    pub data: Vec<Vector<M>>,
}

impl<const M: usize> Field1D<M> {
    pub fn filled(grid: Grid1D, mesh: Mesh1D, value: Vector<M>) -> Self {
        let len = mesh.interior_len(grid.n) + 2 * grid.ghost;
        Field1D { grid, mesh, data: vec![value; len] }
    }

    pub fn from_interior(grid: Grid1D, mesh: Mesh1D, interior: &[Vector<M>]) -> Result<Self> {
        let n_int = mesh.interior_len(grid.n);
        if interior.len() != n_int {
            return Err(Error::IncompatibleGrids(format!(
                "expected {n_int} interior cells, got {}",
                interior.len()
            )));
        }
        let mut f = Field1D::filled(grid, mesh, [0.0; M]);
        f.interior_mut().copy_from_slice(interior);
        Ok(f)
    }

    pub fn n_interior(&self) -> usize {
        self.mesh.interior_len(self.grid.n)
    }

    pub fn interior(&self) -> &[Vector<M>] {
        let g = self.grid.ghost;
        &self.data[g..g + self.n_interior()]
    }

    pub fn interior_mut(&mut self) -> &mut [Vector<M>] {
        let g = self.grid.ghost;
        let n = self.n_interior();
        &mut self.data[g..g + n]
    }

    /// Cell `i` counted from the first interior cell; negative indices and
    /// indices past the interior address ghosts.
    #[inline]
    pub fn at(&self, i: isize) -> &Vector<M> {
        &self.data[(i + self.grid.ghost as isize) as usize]
    }

    pub fn center(&self, i: isize) -> f64 {
        self.mesh.center(&self.grid, i)
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_interior() as isize).map(|i| self.center(i)).collect()
    }

    pub fn fill_ghosts<S>(&mut self, bc: &Boundaries1D<M>, sys: &S, kind: VarKind) -> Result<()>
    where
        S: HyperbolicSystem<M> + ?Sized,
    {
        let line = LineView {
            offset: 0,
            stride: 1,
            n_int: self.n_interior(),
            ghost: self.grid.ghost,
            staggered: self.mesh == Mesh1D::Staggered,
            n_cells: self.grid.n,
        };
        fill_line(&mut self.data, &line, bc, sys, kind, Axis::X)
    }

    pub fn is_finite(&self) -> bool {
        self.interior().iter().all(|w| w.iter().all(|x| x.is_finite()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        Ok(Grid2D {
            x: Grid1D::new(x_range.0, x_range.1, nx)?,
            y: Grid1D::new(y_range.0, y_range.1, ny)?,
        })
    }

    pub fn along(&self, axis: Axis) -> &Grid1D {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn ghost(&self) -> usize {
        self.x.ghost
    }

    pub fn cell_area(&self) -> f64 {
        self.x.dx * self.y.dx
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mesh2D {
    Primal,
    /// Shifted by half a cell in `x`: `(nx + 1) × ny` cells.
    XStaggered,
    /// Shifted by half a cell in `y`: `nx × (ny + 1)` cells.
    YStaggered,
}

impl Mesh2D {
    pub fn along(self, axis: Axis) -> Mesh1D {
        match (self, axis) {
            (Mesh2D::XStaggered, Axis::X) | (Mesh2D::YStaggered, Axis::Y) => Mesh1D::Staggered,
            _ => Mesh1D::Primal,
        }
    }

    pub fn dims(self, grid: &Grid2D) -> (usize, usize) {
        (
            self.along(Axis::X).interior_len(grid.x.n),
            self.along(Axis::Y).interior_len(grid.y.n),
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Mesh2D::Primal => "primal",
            Mesh2D::XStaggered => "x-staggered",
            Mesh2D::YStaggered => "y-staggered",
        }
    }
}

/// Row-major (`x` fastest) cell averages on one of the three 2-D meshes.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D<const M: usize> {
    pub grid: Grid2D,
    pub mesh: Mesh2D,
    pub nx: usize,
    pub ny: usize,
    pub data: Vec<Vector<M>>,
}

impl<const M: usize> Field2D<M> {
    pub fn filled(grid: Grid2D, mesh: Mesh2D, value: Vector<M>) -> Self {
        let (nx, ny) = mesh.dims(&grid);
        let g = grid.ghost();
        Field2D { grid, mesh, nx, ny, data: vec![value; (nx + 2 * g) * (ny + 2 * g)] }
    }

    #[inline]
    pub fn row_len(&self) -> usize {
        self.nx + 2 * self.grid.ghost()
    }

    #[inline]
    pub fn index(&self, i: isize, j: isize) -> usize {
        let g = self.grid.ghost() as isize;
        ((i + g) + (j + g) * self.row_len() as isize) as usize
    }

    #[inline]
    pub fn at(&self, i: isize, j: isize) -> &Vector<M> {
        &self.data[self.index(i, j)]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize, j: isize) -> &mut Vector<M> {
        let k = self.index(i, j);
        &mut self.data[k]
    }

    pub fn center(&self, i: isize, j: isize) -> (f64, f64) {
        (
            self.mesh.along(Axis::X).center(&self.grid.x, i),
            self.mesh.along(Axis::Y).center(&self.grid.y, j),
        )
    }

    /// Interior cells, row by row.
    pub fn interior_iter(&self) -> impl Iterator<Item = &Vector<M>> + '_ {
        (0..self.ny as isize)
            .flat_map(move |j| (0..self.nx as isize).map(move |i| self.at(i, j)))
    }

    /// Number of interior cells along `axis`.
    pub fn len_along(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.nx,
            Axis::Y => self.ny,
        }
    }

    /// Copies line `k` along `axis` (ghosts included) into a contiguous buffer.
    pub fn line(&self, axis: Axis, k: isize) -> Vec<Vector<M>> {
        let g = self.grid.ghost() as isize;
        let n = self.len_along(axis) as isize;
        (-g..n + g)
            .map(|i| match axis {
                Axis::X => *self.at(i, k),
                Axis::Y => *self.at(k, i),
            })
            .collect()
    }

    pub fn fill_ghosts<S>(&mut self, bc: &Boundaries2D<M>, sys: &S, kind: VarKind) -> Result<()>
    where
        S: HyperbolicSystem<M> + ?Sized,
    {
        let g = self.grid.ghost();
        let row = self.row_len();
        // x first on interior rows, then y on every column so corners are set
        for j in 0..self.ny {
            let line = LineView {
                offset: (j + g) * row,
                stride: 1,
                n_int: self.nx,
                ghost: g,
                staggered: self.mesh.along(Axis::X) == Mesh1D::Staggered,
                n_cells: self.grid.x.n,
            };
            fill_line(&mut self.data, &line, &bc.along(Axis::X), sys, kind, Axis::X)?;
        }
        for i in 0..row {
            let line = LineView {
                offset: i,
                stride: row,
                n_int: self.ny,
                ghost: g,
                staggered: self.mesh.along(Axis::Y) == Mesh1D::Staggered,
                n_cells: self.grid.y.n,
            };
            fill_line(&mut self.data, &line, &bc.along(Axis::Y), sys, kind, Axis::Y)?;
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.interior_iter().all(|w| w.iter().all(|x| x.is_finite()))
    }
}

/// Per-axis quadrature used to form cell averages of analytic data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrature {
    Midpoint,
    Gauss3,
    Gauss5,
}

impl Quadrature {
    /// Nodes on `[-½, ½]` and weights summing to one.
    pub fn rule(self) -> (&'static [f64], &'static [f64]) {
        const G3X: [f64; 3] = [-0.387_298_334_620_741_7, 0.0, 0.387_298_334_620_741_7];
        const G3W: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];
        const G5X: [f64; 5] = [
            -0.453_089_922_969_332_2,
            -0.269_234_655_052_841_5,
            0.0,
            0.269_234_655_052_841_5,
            0.453_089_922_969_332_2,
        ];
        const G5W: [f64; 5] = [
            0.118_463_442_528_094_54,
            0.239_314_335_249_683_23,
            0.284_444_444_444_444_45,
            0.239_314_335_249_683_23,
            0.118_463_442_528_094_54,
        ];
        match self {
            Quadrature::Midpoint => (&[0.0], &[1.0]),
            Quadrature::Gauss3 => (&G3X, &G3W),
            Quadrature::Gauss5 => (&G5X, &G5W),
        }
    }
}

fn wrap(x: f64, lo: f64, hi: f64) -> f64 {
    let l = hi - lo;
    let r = (x - lo).rem_euclid(l);
    lo + r
}

/// Cell averages of `f` on a 1-D mesh; with `periodic` the sample points are
/// wrapped into the domain so the two edge staggered cells coincide.
pub fn sample_1d<const M: usize>(
    grid: &Grid1D,
    mesh: Mesh1D,
    quadrature: Quadrature,
    periodic: bool,
    f: impl Fn(f64) -> Vector<M>,
) -> Field1D<M> {
    match try_sample_1d(grid, mesh, quadrature, periodic, |x| Ok(f(x))) {
        Ok(field) => field,
        Err(_) => unreachable!(),
    }
}

pub fn try_sample_1d<const M: usize>(
    grid: &Grid1D,
    mesh: Mesh1D,
    quadrature: Quadrature,
    periodic: bool,
    f: impl Fn(f64) -> Result<Vector<M>>,
) -> Result<Field1D<M>> {
    let (nodes, weights) = quadrature.rule();
    let mut field = Field1D::filled(*grid, mesh, [0.0; M]);
    for i in 0..field.n_interior() as isize {
        let xc = field.center(i);
        let mut acc = [0.0; M];
        for (xi, wi) in nodes.iter().zip(weights) {
            let mut x = xi.mul_add(grid.dx, xc);
            if periodic {
                x = wrap(x, grid.x_left, grid.x_right);
            }
            let v = f(x)?;
            for (a, b) in acc.iter_mut().zip(v) {
                *a += wi * b;
            }
        }
        field.interior_mut()[i as usize] = acc;
    }
    Ok(field)
}

/// Tensor-product version of [`sample_1d`].
pub fn sample_2d<const M: usize>(
    grid: &Grid2D,
    mesh: Mesh2D,
    quadrature: Quadrature,
    periodic: (bool, bool),
    f: impl Fn(f64, f64) -> Vector<M> + Sync,
) -> Field2D<M> {
    match try_sample_2d(grid, mesh, quadrature, periodic, |x, y| Ok(f(x, y))) {
        Ok(field) => field,
        Err(_) => unreachable!(),
    }
}

pub fn try_sample_2d<const M: usize>(
    grid: &Grid2D,
    mesh: Mesh2D,
    quadrature: Quadrature,
    periodic: (bool, bool),
    f: impl Fn(f64, f64) -> Result<Vector<M>> + Sync,
) -> Result<Field2D<M>> {
    use rayon::prelude::*;
    let (nodes, weights) = quadrature.rule();
    let mut field = Field2D::filled(*grid, mesh, [0.0; M]);
    let (nx, ny) = (field.nx, field.ny);
    let rows: Vec<Vec<Vector<M>>> = (0..ny as isize)
        .into_par_iter()
        .map(|j| {
            (0..nx as isize)
                .map(|i| {
                    let (xc, yc) = field.center(i, j);
                    let mut acc = [0.0; M];
                    for (yq, wy) in nodes.iter().zip(weights) {
                        let mut y = yq.mul_add(grid.y.dx, yc);
                        if periodic.1 {
                            y = wrap(y, grid.y.x_left, grid.y.x_right);
                        }
                        for (xq, wx) in nodes.iter().zip(weights) {
                            let mut x = xq.mul_add(grid.x.dx, xc);
                            if periodic.0 {
                                x = wrap(x, grid.x.x_left, grid.x.x_right);
                            }
                            let v = f(x, y)?;
                            let w = wx * wy;
                            for (a, b) in acc.iter_mut().zip(v) {
                                *a += w * b;
                            }
                        }
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    for (j, row) in rows.into_iter().enumerate() {
        for (i, v) in row.into_iter().enumerate() {
            *field.at_mut(i as isize, j as isize) = v;
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{Euler1D, Euler2D};
    use crate::system::LinearAdvection;

    #[test]
    fn centers_from_index() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let p: Vec<f64> = (0..4).map(|i| g.primal_center(i)).collect();
        assert_eq!(p, [0.125, 0.375, 0.625, 0.875]);
        let s: Vec<f64> = (0..5).map(|i| g.staggered_center(i)).collect();
        assert_eq!(s, [0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = Grid1D::new(-10.0, 10.0, 100).unwrap();
        assert_eq!(g.dx, 0.2);
        let g2 = Grid2D::new((0.0, 1.2), (0.0, 1.2), 4, 5).unwrap();
        assert_eq!(Mesh2D::XStaggered.dims(&g2), (5, 5));
        assert_eq!(Mesh2D::YStaggered.dims(&g2), (4, 6));
    }

    #[test]
    fn staggered_offset_is_half_cell() {
        let g = Grid1D::new(-1.3, 2.9, 137).unwrap();
        for i in 0..137 {
            let d = g.primal_center(i) - g.staggered_center(i);
            assert!((d - 0.5 * g.dx).abs() <= 4.0 * f64::EPSILON * 2.9);
            let d2 = g.staggered_center(i + 1) - g.primal_center(i);
            assert!((d2 - 0.5 * g.dx).abs() <= 4.0 * f64::EPSILON * 2.9);
        }
    }

    #[test]
    fn bad_resolution() {
        assert!(matches!(Grid1D::new(0.0, 1.0, 3), Err(Error::BadResolution(_))));
        assert!(Grid1D::new(1.0, 0.0, 10).is_err());
    }

    #[test]
    fn periodic_primal_ghosts_wrap() {
        let sys = LinearAdvection::new(1.0);
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let mut f = Field1D::from_interior(g, Mesh1D::Primal, &[[1.0], [2.0], [3.0], [4.0]]).unwrap();
        f.fill_ghosts(&Boundaries1D::uniform(BoundaryCondition::Periodic), &sys, VarKind::Conserved)
            .unwrap();
        assert_eq!(*f.at(-1), [4.0]);
        assert_eq!(*f.at(-2), [3.0]);
        assert_eq!(*f.at(4), [1.0]);
        assert_eq!(*f.at(5), [2.0]);
    }

    #[test]
    fn periodic_staggered_ghosts_skip_duplicate_edge_cell() {
        let sys = LinearAdvection::new(1.0);
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let vals = [[0.0], [1.0], [2.0], [3.0], [0.0]];
        let mut f = Field1D::from_interior(g, Mesh1D::Staggered, &vals).unwrap();
        f.fill_ghosts(&Boundaries1D::uniform(BoundaryCondition::Periodic), &sys, VarKind::Primitive)
            .unwrap();
        assert_eq!(*f.at(-1), [3.0]);
        assert_eq!(*f.at(-2), [2.0]);
        assert_eq!(*f.at(5), [1.0]);
        assert_eq!(*f.at(6), [2.0]);
    }

    #[test]
    fn free_and_wall_ghosts() {
        let sys = Euler1D::default();
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let interior = [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0], [1.5, 2.5, 3.5]];
        let mut f = Field1D::from_interior(g, Mesh1D::Primal, &interior).unwrap();
        f.fill_ghosts(&Boundaries1D::uniform(BoundaryCondition::Free), &sys, VarKind::Primitive)
            .unwrap();
        assert_eq!(*f.at(-1), interior[0]);
        assert_eq!(*f.at(-2), interior[0]);
        assert_eq!(*f.at(4), interior[3]);
        f.fill_ghosts(&Boundaries1D::uniform(BoundaryCondition::SolidWall), &sys, VarKind::Primitive)
            .unwrap();
        assert_eq!(*f.at(-1), [1.0, -2.0, 3.0]);
        assert_eq!(*f.at(-2), [4.0, -5.0, 6.0]);
        assert_eq!(*f.at(4), [1.5, -2.5, 3.5]);
        // staggered: the edge cell sits on the wall, ghosts mirror its neighbours
        let s = [[1.0, 0.0, 1.0], [1.0, 2.0, 3.0], [2.0, 1.0, 2.0], [3.0, 1.0, 3.0], [4.0, 0.5, 4.0]];
        let mut f = Field1D::from_interior(g, Mesh1D::Staggered, &s).unwrap();
        f.fill_ghosts(&Boundaries1D::uniform(BoundaryCondition::SolidWall), &sys, VarKind::Primitive)
            .unwrap();
        assert_eq!(*f.at(-1), [1.0, -2.0, 3.0]);
        assert_eq!(*f.at(-2), [2.0, -1.0, 2.0]);
        assert_eq!(*f.at(5), [3.0, -1.0, 3.0]);
    }

    #[test]
    fn inflow_ghosts_convert_to_field_kind() {
        let sys = Euler1D::default();
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let mut f = Field1D::filled(g, Mesh1D::Primal, [1.0, 0.0, 2.5]);
        let bc = Boundaries1D { left: BoundaryCondition::Inflow([1.0, 1.0, 1.0]), right: BoundaryCondition::Free };
        f.fill_ghosts(&bc, &sys, VarKind::Conserved).unwrap();
        let e = f.at(-1);
        assert_eq!((e[0], e[1]), (1.0, 1.0));
        assert!((e[2] - 3.0).abs() < 1e-15);
        f.fill_ghosts(&bc, &sys, VarKind::Primitive).unwrap();
        assert_eq!(*f.at(-2), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn ghost_fill_is_idempotent_and_leaves_interior() {
        let sys = Euler2D::default();
        let grid = Grid2D::new((0.0, 1.0), (0.0, 2.0), 5, 6).unwrap();
        for mesh in [Mesh2D::Primal, Mesh2D::XStaggered, Mesh2D::YStaggered] {
            let mut f = sample_2d(&grid, mesh, Quadrature::Midpoint, (false, false), |x, y| {
                [1.0 + x, x - y, y * x, 2.0 + y]
            });
            let before: Vec<_> = f.interior_iter().copied().collect();
            let bc = Boundaries2D {
                left: BoundaryCondition::SolidWall,
                right: BoundaryCondition::Free,
                bottom: BoundaryCondition::Periodic,
                top: BoundaryCondition::Periodic,
            };
            f.fill_ghosts(&bc, &sys, VarKind::Primitive).unwrap();
            let once = f.clone();
            f.fill_ghosts(&bc, &sys, VarKind::Primitive).unwrap();
            assert_eq!(once, f);
            let after: Vec<_> = f.interior_iter().copied().collect();
            assert_eq!(before, after);
            // wall in x negates u only
            let a = *f.at(-1, 2);
            let src = if mesh == Mesh2D::XStaggered { *f.at(1, 2) } else { *f.at(0, 2) };
            assert_eq!(a, [src[0], -src[1], src[2], src[3]]);
        }
    }

    #[test]
    fn sampling_constants_and_linears_exactly() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        let f = sample_1d(&g, Mesh1D::Primal, Quadrature::Gauss3, false, |_| [0.3]);
        assert!(f.interior().iter().all(|v| (v[0] - 0.3).abs() < 1e-16));
        let f = sample_1d(&g, Mesh1D::Staggered, Quadrature::Midpoint, false, |x| [x]);
        for (i, v) in f.interior().iter().enumerate() {
            assert_eq!(v[0], g.staggered_center(i as isize));
        }
    }

    #[test]
    fn periodic_sampling_wraps_edge_cells() {
        let g = Grid1D::new(0.0, 1.0, 10).unwrap();
        let f = sample_1d(&g, Mesh1D::Staggered, Quadrature::Midpoint, true, |x| {
            [if x < 0.5 { 1.0 } else { 0.0 }]
        });
        assert_eq!(f.interior()[0], f.interior()[10]);
    }

    #[test]
    fn periodic_sum_invariant_under_rotation() {
        let g = Grid1D::new(0.0, 1.0, 16).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        let base = |x: f64| [(tau * x).sin() + (2.0 * tau * x).cos().powi(2)];
        let f0 = sample_1d(&g, Mesh1D::Primal, Quadrature::Gauss3, true, base);
        let f1 = sample_1d(&g, Mesh1D::Primal, Quadrature::Gauss3, true, |x| base(x + 3.0 / 16.0));
        let s0 = crate::linalg::compensated_sum(f0.interior().iter().map(|v| v[0]));
        let s1 = crate::linalg::compensated_sum(f1.interior().iter().map(|v| v[0]));
        assert!((s0 - s1).abs() < 1e-13);
    }
}
