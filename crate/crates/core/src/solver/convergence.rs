use num_complex::Complex64;
use serde::Serialize;
use std::time::Instant;

use super::{error_norms_values, grid_for, reconstruct_field, solve, solve_scattering, ErrorNorms, Geometry};
use super::{ModeSolution, ScatteringProblem};
use crate::assembly::{coefficients_general, discretize, Scheme};
use crate::error::{Error, Result};
use crate::geometry::{transformed_value, HeightFunction};
use crate::reference::{hankel_mode, plane_wave_1d, reflection_sign, scattering_series, RadialReference};
use crate::specfun::hankel1;

/// A problem with a closed-form solution, solved at several resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum ConvergenceProblem {
    /// `U = e^{ikx}` on `[a, ∞)`.
    PlaneWave1d { k: f64, a: f64, geometry: Geometry },
    /// `U = H_m^{(1)}(kr)` on `[r_in, ∞)`.
    HankelMode { k: f64, m: i32, r_in: f64, geometry: Geometry },
    /// Sound-soft circle; errors over the `(ρ, θ)` field.
    Scattering { k: f64, r0: f64, geometry: Geometry, modes: Option<u32>, theta_count: usize },
}

/// One solve compared with its closed form at the solver nodes.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub n: usize,
    pub height: HeightFunction,
    /// Per-mode solutions (a single entry for radial problems).
    pub solutions: Vec<ModeSolution>,
    /// Numeric and exact values; for scattering, the `(ρ, θ)` field in
    /// row-major order.
    pub numeric: Vec<Complex64>,
    pub exact: Vec<Complex64>,
    pub norms: ErrorNorms,
    /// Largest behavioral-boundary residual over the modes.
    pub boundary_residual: f64,
    pub runtime_s: f64,
}

fn radial_run(
    k: f64,
    dimension: u32,
    m: i32,
    height: HeightFunction,
    physical_datum: Complex64,
    reference: &dyn RadialReference,
    scheme: Scheme,
    n: usize,
) -> Result<(Vec<ModeSolution>, Vec<Complex64>, Vec<Complex64>)> {
    let op = coefficients_general(dimension, m, k, &height, None)?;
    let grid = grid_for(&height, scheme, n)?;
    let datum = transformed_value(&height, dimension, k, height.map().rho_in(), physical_datum);
    let solution = solve(&discretize(&op, &grid, datum)?)?;
    let exact = grid.nodes().iter().map(|&rho| reference.transformed(rho)).collect::<Result<Vec<_>>>()?;
    let numeric = solution.values.clone();
    Ok((vec![solution], numeric, exact))
}

impl ConvergenceProblem {
    pub fn wavenumber(&self) -> f64 {
        match *self {
            ConvergenceProblem::PlaneWave1d { k, .. }
            | ConvergenceProblem::HankelMode { k, .. }
            | ConvergenceProblem::Scattering { k, .. } => k,
        }
    }

    pub fn height(&self) -> Result<HeightFunction> {
        match *self {
            ConvergenceProblem::PlaneWave1d { a, geometry, .. } => geometry.height(a),
            ConvergenceProblem::HankelMode { r_in, geometry, .. } => geometry.height(r_in),
            ConvergenceProblem::Scattering { r0, geometry, .. } => geometry.height(r0),
        }
    }

    /// Solves at resolution `n` and compares with the closed form.
    pub fn run(&self, scheme: Scheme, n: usize) -> Result<RunOutcome> {
        let start = Instant::now();
        let height = self.height()?;
        let (solutions, numeric, exact) = match *self {
            ConvergenceProblem::PlaneWave1d { k, a, .. } => {
                let reference = plane_wave_1d(k, height);
                radial_run(k, 1, 0, height, Complex64::from_polar(1.0, k * a), &reference, scheme, n)?
            }
            ConvergenceProblem::HankelMode { k, m, r_in, .. } => {
                let reference = hankel_mode(k, m, height)?;
                let datum = hankel1(m.unsigned_abs(), k * r_in)? * reflection_sign(m);
                radial_run(k, 2, m, height, datum, &reference, scheme, n)?
            }
            ConvergenceProblem::Scattering { k, r0, geometry, modes, theta_count } => {
                let problem = ScatteringProblem { k, r0, geometry, scheme, n, modes };
                let sol = solve_scattering(&problem)?;
                let field = reconstruct_field(&sol.modes, theta_count, None, k)?;
                let series = scattering_series(k, r0, sol.max_mode, height)?;
                let mut exact = Vec::with_capacity(field.values.len());
                for &rho in &field.nodes {
                    let profiles = series.radial_profiles(rho)?;
                    for &theta in &field.thetas {
                        exact.push(
                            series
                                .modes()
                                .zip(&profiles)
                                .map(|(m, p)| p * Complex64::from_polar(1.0, f64::from(m) * theta))
                                .sum(),
                        );
                    }
                }
                (sol.modes, field.values, exact)
            }
        };
        let norms = error_norms_values(&numeric, &exact)?;
        let boundary_residual = solutions.iter().map(|s| s.boundary_residual).fold(0.0, f64::max);
        Ok(RunOutcome {
            n,
            height,
            solutions,
            numeric,
            exact,
            norms,
            boundary_residual,
            runtime_s: start.elapsed().as_secs_f64(),
        })
    }
}

/// Errors and timing at one resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub error_max: f64,
    pub error_l2: f64,
    /// `ln(e_prev/e) / ln(N/N_prev)` against the previous record, by max norm.
    pub observed_order: Option<f64>,
    pub runtime_s: f64,
}

/// Observed orders between successive `(N, error)` pairs; the first entry
/// is `None`.
pub fn observed_orders(points: &[(usize, f64)]) -> Vec<Option<f64>> {
    let mut out = vec![None; points.len()];
    for i in 1..points.len() {
        let ((n0, e0), (n1, e1)) = (points[i - 1], points[i]);
        if e0 > 0.0 && e1 > 0.0 {
            out[i] = Some((e0 / e1).ln() / (n1 as f64 / n0 as f64).ln());
        }
    }
    out
}

/// Runs `problem` at each `N` in increasing order.
pub fn convergence_study(problem: &ConvergenceProblem, scheme: Scheme, n_list: &[usize]) -> Result<Vec<ConvergenceRecord>> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::config("N list must be non-empty and strictly increasing"));
    }
    let mut records = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let outcome = problem.run(scheme, n)?;
        records.push(ConvergenceRecord {
            n,
            error_max: outcome.norms.max_rel,
            error_l2: outcome.norms.l2_rel,
            observed_order: None,
            runtime_s: outcome.runtime_s,
        });
    }
    let points: Vec<(usize, f64)> = records.iter().map(|r| (r.n, r.error_max)).collect();
    for (record, order) in records.iter_mut().zip(observed_orders(&points)) {
        record.observed_order = order;
    }
    Ok(records)
}
