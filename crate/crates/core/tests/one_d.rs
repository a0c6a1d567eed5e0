use dffv_core::bench::{convergence_study, find_case, run_case, RunSettings, Solution};
use dffv_core::riemann::solve_riemann;
use dffv_core::{GasConstants, HyperbolicSystem};

fn run_1d(name: &str, settings: impl FnOnce(RunSettings) -> RunSettings) -> Solution {
    let spec = find_case(name).unwrap();
    run_case(&spec, &settings(RunSettings::defaults(&spec)), |_, _| {}).unwrap().0
}

#[test]
fn runs_are_bitwise_repeatable() {
    let a = run_1d("sod", |s| RunSettings { nx: 80, ..s });
    let b = run_1d("sod", |s| RunSettings { nx: 80, ..s });
    assert_eq!(a, b);
}

#[test]
fn sod_error_halves_under_refinement() {
    let spec = find_case("sod").unwrap();
    let r = convergence_study(&spec, &[100, 200], spec.params()).unwrap();
    let rates = r.rates();
    let rho = rates[1][0].unwrap();
    // first order at discontinuities
    assert!(rho > 0.7 && rho < 1.3, "{rho}");
}

#[test]
fn sod_plateau_values() {
    let Solution::Euler1D(s) = run_1d("sod", |s| s) else { panic!() };
    let exact = solve_riemann([1.0, 0.0, 1.0], [0.125, 0.0, 0.1], &GasConstants::default()).unwrap();
    // between contact and shock the pressure and velocity are the star values
    let mid = s.v.interior().iter().enumerate().find(|(i, _)| (s.v.center(*i as isize) - 0.78).abs() < 1e-9);
    let (_, v) = mid.expect("staggered centre at x = 0.78");
    assert!((v[1] - exact.u_star).abs() < 5e-3, "{v:?}");
    assert!((v[2] - exact.p_star).abs() < 5e-3, "{v:?}");
}

#[test]
fn woodward_colella_stays_admissible() {
    let Solution::Euler1D(s) = run_1d("woodward_colella", |s| RunSettings { nx: 200, ..s }) else { panic!() };
    let sys = dffv_core::Euler1D::default();
    for w in s.u.interior() {
        let v = sys.cons_to_prim(w).unwrap();
        assert!(v[0] > 0.0 && v[2] > 0.0);
    }
    let peak = s.u.interior().iter().map(|w| w[0]).fold(0.0, f64::max);
    // colliding blast waves compress the gas well beyond its initial density
    assert!(peak > 3.0, "{peak}");
}

#[test]
fn advection_converges_at_second_order() {
    let spec = find_case("linear_advection").unwrap();
    let r = convergence_study(&spec, &[50, 100, 200], spec.params()).unwrap();
    for rate in &r.rates()[2] {
        let rate = rate.unwrap();
        assert!(rate > 1.6, "{}", r.table());
    }
}

#[test]
fn shu_osher_inflow_state_is_held() {
    let Solution::Euler1D(s) = run_1d("shu_osher", |s| RunSettings { nx: 200, t_final: 0.5, ..s }) else { panic!() };
    let v = s.v.interior()[0];
    for (a, b) in v.iter().zip([3.857143, 2.629369, 10.333333]) {
        assert!((a - b).abs() < 1e-9, "{v:?}");
    }
}
