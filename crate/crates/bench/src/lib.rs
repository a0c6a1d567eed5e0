//! Fixtures shared by the solver benchmarks.

use dffv_core::bench::run::{scheme_1d, scheme_2d};
use dffv_core::bench::{find_case, Problem};
use dffv_core::{DualField1D, DualField2D, Euler1D, Euler2D, Result, Scheme1D, Scheme2D};

/// Sod tube on `n` cells, initialised.
pub fn sod(n: usize) -> Result<(Scheme1D<Euler1D, 3>, DualField1D<3>)> {
    let spec = find_case("sod")?;
    let Problem::Euler1D { ic, .. } = spec.problem else { unreachable!() };
    let scheme = scheme_1d(&spec, n, spec.params())?;
    let state = scheme.initialize(ic, spec.quadrature)?;
    Ok((scheme, state))
}

/// Cylindrical explosion on an `n`×`n` mesh, initialised.
pub fn explosion(n: usize) -> Result<(Scheme2D<Euler2D, 4>, DualField2D<4>)> {
    let spec = find_case("explosion")?;
    let Problem::Euler2D { ic, .. } = spec.problem else { unreachable!() };
    let scheme = scheme_2d(&spec, n, n, spec.params())?;
    let state = scheme.initialize(ic, spec.quadrature)?;
    Ok((scheme, state))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let (_, s) = sod(16).unwrap();
        assert_eq!(s.u.n_interior(), 16);
        let (_, s) = explosion(8).unwrap();
        assert_eq!(s.time, 0.0);
    }
}
