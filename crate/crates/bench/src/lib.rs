//! Benchmark fixtures at production problem sizes.

use nic_core::{
    coefficients_general, discretize, Complex64, DiscreteSystem, Geometry, Result, ScatteringProblem, Scheme,
};

/// Assembled system for `U = H_m^{(1)}(kr)` outside `r = 1` on the NIC map.
pub fn hankel_system(k: f64, m: i32, scheme: Scheme, n: usize) -> Result<DiscreteSystem> {
    let height = Geometry::nic(1.0).height(1.0)?;
    let op = coefficients_general(2, m, k, &height, None)?;
    let grid = nic_core::solver::grid_for(&height, scheme, n)?;
    discretize(&op, &grid, Complex64::new(1.0, 0.0))
}

/// Sound-soft circle at `k` with `modes` overriding the truncation rule.
pub fn scattering(k: f64, geometry: Geometry, scheme: Scheme, n: usize, modes: Option<u32>) -> ScatteringProblem {
    ScatteringProblem { k, r0: 1.0, geometry, scheme, n, modes }
}
