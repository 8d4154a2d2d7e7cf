use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{grid_for, solve, Geometry, ModeSolution};
use crate::assembly::{coefficients_general, discretize, Scheme};
use crate::error::{Error, Result};
use crate::geometry::{transformed_value, HeightFunction};
use crate::reference::{i_pow, scattering_coefficient};
use crate::specfun::{bessel_j, bessel_j_signed, MAX_ORDER};

/// Bound on `2 Σ_{m>M} |J_m(kR_0)|`, the boundary-data error left by
/// truncating the incident expansion at `M`.
pub const TRUNCATION_TAIL_TOLERANCE: f64 = 1e-12;

/// Coefficient decay demanded at the truncation order.
pub const COEFFICIENT_DECAY: f64 = 1e-12;

/// Mode count: start from `ceil(kR_0 + 4(kR_0)^{1/3} + 8)` and raise it
/// until the neglected incident modes sum below
/// [`TRUNCATION_TAIL_TOLERANCE`].
pub fn truncation_rule(k: f64, r0: f64) -> Result<u32> {
    let z = k * r0;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::config(format!("kR0 must be positive, got {z}")));
    }
    let base = (z + 4.0 * z.cbrt() + 8.0).ceil() as u32;
    let top = MAX_ORDER.min(base + 120);
    let magnitudes = (0..=top).map(|m| bessel_j(m, z).map(f64::abs)).collect::<Result<Vec<_>>>()?;
    let mut tail: f64 = 2.0 * magnitudes[(base as usize + 1).min(top as usize)..].iter().sum::<f64>();
    let mut m = base;
    while tail >= TRUNCATION_TAIL_TOLERANCE {
        m += 1;
        if m >= top {
            return Err(Error::Unsupported(format!(
                "kR0 = {z} needs more than {top} modes"
            )));
        }
        tail -= 2.0 * magnitudes[m as usize];
    }
    Ok(m)
}

/// Transformed Dirichlet datum of mode `m` at `ρ_0`:
/// `√R_0 e^{-ikh(ρ_0)} (-i^m J_m(kR_0))`.
pub fn scattering_mode_data(m: i32, k: f64, r0: f64, height: &HeightFunction) -> Result<Complex64> {
    let incident = i_pow(m) * bessel_j_signed(m, k * r0)?;
    Ok(transformed_value(height, 2, k, height.map().rho_in(), -incident))
}

/// Scattering of `e^{ikx}` off a sound-soft circle of radius `r0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringProblem {
    pub k: f64,
    pub r0: f64,
    pub geometry: Geometry,
    pub scheme: Scheme,
    pub n: usize,
    /// Highest mode; `None` applies [`truncation_rule`].
    pub modes: Option<u32>,
}

impl ScatteringProblem {
    pub fn height(&self) -> Result<HeightFunction> {
        self.geometry.height(self.r0)
    }

    pub fn max_mode(&self) -> Result<u32> {
        match self.modes {
            Some(m) => Ok(m),
            None => truncation_rule(self.k, self.r0),
        }
    }
}

/// Post hoc check of the mode count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationCheck {
    pub max_mode: u32,
    /// `ceil(kR_0 + 4(kR_0)^{1/3} + 8)`.
    pub heuristic: u32,
    /// `|c_M| / max |c_m|`.
    pub coefficient_ratio: f64,
    /// `2 Σ_{m>M} |J_m(kR_0)|`.
    pub incident_tail: f64,
    pub pass: bool,
}

fn truncation_check(k: f64, r0: f64, max_mode: u32) -> Result<TruncationCheck> {
    let z = k * r0;
    let heuristic = (z + 4.0 * z.cbrt() + 8.0).ceil() as u32;
    let mut largest = 0.0_f64;
    for m in 0..=max_mode {
        largest = largest.max(scattering_coefficient(m as i32, k, r0)?.norm());
    }
    let last = scattering_coefficient(max_mode as i32, k, r0)?.norm();
    let coefficient_ratio = if largest > 0.0 { last / largest } else { 0.0 };
    let top = MAX_ORDER.min(max_mode + 120);
    let mut incident_tail = 0.0;
    for m in max_mode + 1..=top {
        incident_tail += 2.0 * bessel_j(m, z)?.abs();
    }
    Ok(TruncationCheck {
        max_mode,
        heuristic,
        coefficient_ratio,
        incident_tail,
        pass: coefficient_ratio < COEFFICIENT_DECAY,
    })
}

/// Per-mode solutions for `m = -M..=M`, in that order.
#[derive(Debug, Clone)]
pub struct ScatteringSolution {
    pub problem: ScatteringProblem,
    pub height: HeightFunction,
    pub max_mode: u32,
    pub modes: Vec<ModeSolution>,
    pub truncation: TruncationCheck,
}

impl ScatteringSolution {
    pub fn mode(&self, m: i32) -> Option<&ModeSolution> {
        let idx = m + self.max_mode as i32;
        usize::try_from(idx).ok().and_then(|i| self.modes.get(i))
    }
}

fn solve_mode(problem: &ScatteringProblem, height: &HeightFunction, m: i32) -> Result<ModeSolution> {
    let inner = || -> Result<ModeSolution> {
        let op = coefficients_general(2, m, problem.k, height, None)?;
        let grid = grid_for(height, problem.scheme, problem.n)?;
        let datum = scattering_mode_data(m, problem.k, problem.r0, height)?;
        solve(&discretize(&op, &grid, datum)?)
    };
    inner().map_err(|e| Error::Mode { m, source: Box::new(e) })
}

/// Solves the listed modes one after another.
pub fn solve_modes(problem: &ScatteringProblem, modes: &[i32]) -> Result<Vec<ModeSolution>> {
    let height = problem.height()?;
    modes.iter().map(|&m| solve_mode(problem, &height, m)).collect()
}

/// Solves every mode `-M..=M` independently and in parallel; negative modes
/// are solved, not mirrored.
pub fn solve_scattering(problem: &ScatteringProblem) -> Result<ScatteringSolution> {
    if !(problem.k > 0.0 && problem.r0 > 0.0) {
        return Err(Error::config("k and R0 must be positive"));
    }
    let height = problem.height()?;
    let max_mode = problem.max_mode()?;
    if max_mode > MAX_ORDER {
        return Err(Error::Unsupported(format!("{max_mode} modes exceed order {MAX_ORDER}")));
    }
    let truncation = truncation_check(problem.k, problem.r0, max_mode)?;
    let top = max_mode as i32;
    let modes = (-top..=top)
        .into_par_iter()
        .map(|m| solve_mode(problem, &height, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScatteringSolution { problem: *problem, height, max_mode, modes, truncation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_rule_covers_the_tail() {
        let m = truncation_rule(40.0, 1.0).unwrap();
        assert!(m >= 62, "{m}");
        let check = truncation_check(40.0, 1.0, m).unwrap();
        assert!(check.incident_tail < TRUNCATION_TAIL_TOLERANCE);
        assert!(check.pass);
        assert_eq!(check.heuristic, 62);
        assert!(truncation_rule(0.0, 1.0).is_err());
    }

    #[test]
    fn mode_data_is_symmetric() {
        let height = Geometry::nic(1.0).height(1.0).unwrap();
        for m in 1..30 {
            let p = scattering_mode_data(m, 40.0, 1.0, &height).unwrap();
            let n = scattering_mode_data(-m, 40.0, 1.0, &height).unwrap();
            assert_eq!(p, n);
        }
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let problem = ScatteringProblem {
            k: 6.0,
            r0: 1.0,
            geometry: Geometry::nic(1.0),
            scheme: Scheme::Chebyshev,
            n: 24,
            modes: Some(8),
        };
        let par = solve_scattering(&problem).unwrap();
        let order: Vec<i32> = (-8..=8).rev().collect();
        let seq = solve_modes(&problem, &order).unwrap();
        for s in seq {
            assert_eq!(par.mode(s.m).unwrap().values, s.values);
        }
    }

    #[test]
    fn negative_modes_match_positive_ones() {
        let problem = ScatteringProblem {
            k: 10.0,
            r0: 1.0,
            geometry: Geometry::nic(1.0),
            scheme: Scheme::Fd2,
            n: 64,
            modes: Some(12),
        };
        let sol = solve_scattering(&problem).unwrap();
        for m in 1..=12 {
            let (p, n) = (sol.mode(m).unwrap(), sol.mode(-m).unwrap());
            for (a, b) in p.values.iter().zip(&n.values) {
                assert!((a - b).norm() <= 1e-14 * a.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn mode_failure_names_the_mode() {
        let problem = ScatteringProblem {
            k: 10.0,
            r0: 1.0,
            geometry: Geometry::nil(2.0, 2.2, 2).unwrap(),
            scheme: Scheme::Chebyshev,
            n: 16,
            modes: Some(2),
        };
        match solve_scattering(&problem) {
            Err(Error::Mode { m, source }) => {
                assert!((-2..=2).contains(&m));
                assert!(matches!(*source, Error::Config(_)));
            }
            other => panic!("{other:?}"),
        }
    }
}
