use num_complex::Complex64;
use std::f64::consts::PI;

use super::ModeSolution;
use crate::error::{Error, Result};
use crate::geometry::{physical_value, HeightFunction};

/// A two-dimensional field on a `(ρ, θ)` tensor grid, row-major in `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSolution {
    pub nodes: Vec<f64>,
    pub thetas: Vec<f64>,
    /// `values[j * thetas.len() + l] = u(ρ_j, θ_l)`.
    pub values: Vec<Complex64>,
    /// Physical `U` at the same points; `None` at `ρ = S`. Present when a
    /// height was supplied.
    pub physical: Option<Vec<Option<Complex64>>>,
}

impl FieldSolution {
    pub fn at(&self, j: usize, l: usize) -> Complex64 {
        self.values[j * self.thetas.len() + l]
    }

    pub fn physical_at(&self, j: usize, l: usize) -> Option<Complex64> {
        self.physical.as_ref().and_then(|p| p[j * self.thetas.len() + l])
    }
}

fn uniform_angles(theta_count: usize) -> Vec<f64> {
    (0..theta_count).map(|l| 2.0 * PI * l as f64 / theta_count as f64).collect()
}

fn synthesize(
    nodes: Vec<f64>,
    modes: &[i32],
    profiles: &[Vec<Complex64>],
    theta_count: usize,
    height: Option<&HeightFunction>,
    k: f64,
) -> Result<FieldSolution> {
    if theta_count == 0 {
        return Err(Error::config("theta_count must be positive"));
    }
    let thetas = uniform_angles(theta_count);
    let phases: Vec<Vec<Complex64>> = modes
        .iter()
        .map(|&m| thetas.iter().map(|&t| Complex64::from_polar(1.0, f64::from(m) * t)).collect())
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); nodes.len() * theta_count];
    for (mi, profile) in profiles.iter().enumerate() {
        for (j, &v) in profile.iter().enumerate() {
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &mut values[j * theta_count..(j + 1) * theta_count];
            for (out, p) in row.iter_mut().zip(&phases[mi]) {
                *out += v * p;
            }
        }
    }
    let physical = height.map(|h| {
        values
            .iter()
            .enumerate()
            .map(|(idx, &u)| physical_value(h, 2, k, nodes[idx / theta_count], u))
            .collect()
    });
    Ok(FieldSolution { nodes, thetas, values, physical })
}

fn check_shared_grid(modes: &[ModeSolution]) -> Result<()> {
    let first = modes.first().ok_or_else(|| Error::config("no modes to reconstruct"))?;
    if modes.iter().any(|m| m.grid.nodes() != first.grid.nodes()) {
        return Err(Error::config("modes are solved on different grids"));
    }
    Ok(())
}

/// `u(ρ_j, θ_l) = Σ_m u_m(ρ_j) e^{imθ_l}` on the solver nodes and
/// `theta_count` uniform angles, with physical values when `height` is given.
pub fn reconstruct_field(
    modes: &[ModeSolution],
    theta_count: usize,
    height: Option<&HeightFunction>,
    k: f64,
) -> Result<FieldSolution> {
    check_shared_grid(modes)?;
    let ms: Vec<i32> = modes.iter().map(|m| m.m).collect();
    let profiles: Vec<Vec<Complex64>> = modes.iter().map(|m| m.values.clone()).collect();
    synthesize(modes[0].grid.nodes().to_vec(), &ms, &profiles, theta_count, height, k)
}

/// As [`reconstruct_field`], with each mode interpolated to `rhos` by the
/// scheme's own interpolant.
pub fn reconstruct_field_at(
    modes: &[ModeSolution],
    rhos: &[f64],
    theta_count: usize,
    height: Option<&HeightFunction>,
    k: f64,
) -> Result<FieldSolution> {
    check_shared_grid(modes)?;
    let ms: Vec<i32> = modes.iter().map(|m| m.m).collect();
    let profiles = modes
        .iter()
        .map(|m| rhos.iter().map(|&rho| m.grid.interpolate(&m.values, rho)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    synthesize(rhos.to_vec(), &ms, &profiles, theta_count, height, k)
}

/// Value of one mode at `ρ = S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldValue {
    pub m: i32,
    pub value: Complex64,
}

/// Per-mode values at the last node, which must be `S` of `height`'s map.
pub fn farfield_extract(modes: &[ModeSolution], height: &HeightFunction) -> Result<Vec<FarFieldValue>> {
    let outer = height.map().outer();
    modes
        .iter()
        .map(|mode| {
            let last = mode.grid.last();
            if last != outer {
                return Err(Error::config(format!("grid ends at {last}, not at S = {outer}")));
            }
            Ok(FarFieldValue { m: mode.m, value: mode.values[mode.values.len() - 1] })
        })
        .collect()
}

/// Far-field pattern `F(θ)` with `U ~ F(θ) e^{ikr}/√r`, from
/// `F = u(S) e^{ik lim(h - g)}`.
pub fn far_field_pattern(
    modes: &[ModeSolution],
    height: &HeightFunction,
    k: f64,
    theta_count: usize,
) -> Result<Vec<(f64, Complex64)>> {
    let offset = height
        .asymptotic_phase_offset()
        .ok_or_else(|| Error::config("height has no asymptotic phase"))?;
    let values = farfield_extract(modes, height)?;
    let shift = Complex64::from_polar(1.0, k * offset);
    Ok(uniform_angles(theta_count)
        .into_iter()
        .map(|t| {
            let sum: Complex64 = values.iter().map(|v| v.value * Complex64::from_polar(1.0, f64::from(v.m) * t)).sum();
            (t, sum * shift)
        })
        .collect())
}
