use dffv_core::bench::{find_case, run_case, schlieren_field, RunSettings, Solution, SCHLIEREN_K};
use dffv_core::grid::sample_2d;
use dffv_core::{
    Boundaries2D, BoundaryCondition, DualField2D, Euler2D, Grid2D, Mesh2D, Quadrature, Scheme2D, SchemeParams,
};

fn sod_x(x: f64, _y: f64) -> [f64; 4] {
    if x < 0.5 {
        [1.0, 0.0, 0.0, 1.0]
    } else {
        [0.125, 0.0, 0.0, 0.1]
    }
}

fn free_scheme(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Scheme2D<Euler2D, 4> {
    Scheme2D::new(
        Euler2D::default(),
        Grid2D::new(x, y, nx, ny).unwrap(),
        Boundaries2D::uniform(BoundaryCondition::Free),
        SchemeParams::default(),
    )
    .unwrap()
}

fn swap_xy(w: &[f64; 4]) -> [f64; 4] {
    [w[0], w[2], w[1], w[3]]
}

#[test]
fn constant_state_is_preserved() {
    let s = free_scheme(12, 10, (0.0, 1.0), (0.0, 1.0));
    let st = s.initialize(|_, _| [0.7, 0.3, -0.2, 1.1], Quadrature::Midpoint).unwrap();
    let (end, _) = s.run_steps(st.clone(), 0.01, 5, |_, _| {}).unwrap();
    for (a, b) in end.u.data.iter().zip(&st.u.data) {
        for k in 0..4 {
            assert!((a[k] - b[k]).abs() <= 1e-14, "{a:?} vs {b:?}");
        }
    }
    for (a, b) in end.vy.data.iter().zip(&st.vy.data) {
        for k in 0..4 {
            assert!((a[k] - b[k]).abs() <= 1e-14, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn y_sweep_mirrors_x_sweep_bitwise() {
    let n = 40;
    let sx = free_scheme(n, 6, (0.0, 1.0), (0.0, 0.15));
    let sy = free_scheme(6, n, (0.0, 0.15), (0.0, 1.0));
    let ax = sx.initialize(sod_x, Quadrature::Midpoint).unwrap();
    let ay = sy.initialize(|x, y| swap_xy(&sod_x(y, x)), Quadrature::Midpoint).unwrap();
    let dt = 0.4 * sx.max_stable_dt(&ax).unwrap();
    let (ex, _) = sx.run_steps(ax, dt, 8, |_, _| {}).unwrap();
    let (ey, _) = sy.run_steps(ay, dt, 8, |_, _| {}).unwrap();
    for j in 0..6 {
        for i in 0..n as isize {
            assert_eq!(*ex.u.at(i, j), swap_xy(ey.u.at(j, i)));
            assert_eq!(*ex.vy.at(i, j), swap_xy(ey.vx.at(j, i)));
        }
        for i in 0..=n as isize {
            assert_eq!(*ex.vx.at(i, j), swap_xy(ey.vy.at(j, i)));
        }
    }
}

#[test]
fn periodic_vortex_conserves_totals() {
    let spec = find_case("vortex").unwrap();
    let settings = RunSettings { nx: 40, ny: 40, t_final: 0.05, ..RunSettings::defaults(&spec) };
    let (_, log) = run_case(&spec, &settings, |_, _| {}).unwrap();
    assert!(log.step_count() > 0);
    for (k, d) in log.drift().into_iter().enumerate() {
        assert!(d <= 1e-12, "component {k}: {d:e}");
    }
}

#[test]
fn explosion_is_symmetric_and_balanced() {
    let spec = find_case("explosion").unwrap();
    let settings = RunSettings { nx: 40, ny: 40, t_final: 0.1, ..RunSettings::defaults(&spec) };
    let (solution, log) = run_case(&spec, &settings, |_, _| {}).unwrap();
    let Solution::Euler2D(s) = solution else { panic!("2-D case") };
    for j in 0..40 {
        for i in 0..40 {
            assert_eq!(*s.u.at(i, j), swap_xy(s.u.at(j, i)));
        }
    }
    let (rel, abs) = (log.balance_residual(), log.balance_defect());
    for k in [0, 3] {
        assert!(rel[k] < 1e-10, "{rel:?}");
    }
    for k in [1, 2] {
        assert!(abs[k] < 1e-13, "{abs:?}");
    }
}

fn run_2d(name: &str, nx: usize, ny: usize) -> DualField2D<4> {
    let spec = find_case(name).unwrap();
    let settings = RunSettings { nx, ny, ..RunSettings::defaults(&spec) };
    match run_case(&spec, &settings, |_, _| {}).unwrap().0 {
        Solution::Euler2D(s) => s,
        _ => panic!("2-D case"),
    }
}

/// Centre of the steepest density rise along row `j`.
fn steepest_rise(s: &DualField2D<4>, j: isize) -> f64 {
    let (mut best, mut at) = (f64::NEG_INFINITY, f64::NAN);
    for i in 0..s.u.nx as isize - 1 {
        let d = s.u.at(i + 1, j)[0] - s.u.at(i, j)[0];
        if d > best {
            best = d;
            at = 0.5 * (s.u.center(i, j).0 + s.u.center(i + 1, j).0);
        }
    }
    at
}

#[test]
fn shock_vortex_front_stays_near_its_station() {
    let s = run_2d("shock_vortex", 60, 31);
    let h = s.u.grid.x.dx;
    for j in [0, 15, 30] {
        let x = steepest_rise(&s, j);
        assert!((x - 0.5).abs() <= 2.0 * h, "row {j}: front at {x}");
    }
}

#[test]
fn shock_vortex_schlieren_marks_initial_shock() {
    let spec = find_case("shock_vortex").unwrap();
    let dffv_core::bench::Problem::Euler2D { ic, .. } = spec.problem else { panic!() };
    let grid = Grid2D::new(spec.x_range, spec.y_range.unwrap(), 80, 40).unwrap();
    let gas = spec.gas();
    let cons = sample_2d(&grid, Mesh2D::Primal, Quadrature::Midpoint, (false, false), |x, y| {
        use dffv_core::HyperbolicSystem;
        Euler2D::new(gas).prim_to_cons(&ic(x, y)).unwrap()
    });
    let raster = schlieren_field(&cons, SCHLIEREN_K).unwrap();
    // darkest pixel of the bottom row, far from the vortex
    let row = &raster[..80];
    let i = (0..80).min_by(|&a, &b| row[a].total_cmp(&row[b])).unwrap();
    let x = grid.x.primal_center(i as isize);
    assert!((x - 0.5).abs() <= 1.5 * grid.x.dx, "darkest column at {x}");
}

#[test]
fn riemann_cfg3_quadrants() {
    let s = run_2d("riemann2d_cfg3", 40, 40);
    for j in 0..40 {
        for i in 0..40 {
            assert_eq!(*s.u.at(i, j), swap_xy(s.u.at(j, i)));
        }
    }
    // the south-west state keeps streaming in through the free corner
    assert!((s.u.at(0, 0)[0] - 0.138).abs() < 1e-3);
    // the north-east quadrant is compressed but not emptied
    let ne = s.u.at(38, 38)[0];
    assert!(ne > 1.4 && ne < 1.7, "{ne}");
    // the north-west state survives in its far corner
    assert!((s.u.at(0, 39)[0] - 0.5323).abs() < 0.02);
}
