//! Direct solves of assembled systems, the scattering mode loop, field
//! reconstruction, error norms and convergence studies.

mod convergence;
mod field;
mod scattering;

use num_complex::Complex64;
use serde::Serialize;

use crate::assembly::{build_grid, DiscreteSystem, Grid, Scheme};
use crate::error::{Error, Result};
use crate::geometry::{CompactificationMap, FieldSample, HeightFunction, HeightKind, LayerConfig, MapKind};
use crate::linalg::{lu_factor, norm_inf};

pub use convergence::{convergence_study, observed_orders, ConvergenceProblem, ConvergenceRecord, RunOutcome};
pub use field::{far_field_pattern, farfield_extract, reconstruct_field, reconstruct_field_at, FarFieldValue, FieldSolution};
pub use scattering::{
    scattering_mode_data, solve_modes, solve_scattering, truncation_rule, ScatteringProblem, ScatteringSolution,
    TruncationCheck, TRUNCATION_TAIL_TOLERANCE,
};

/// Solution of one radial problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSolution {
    pub m: i32,
    pub grid: Grid,
    pub values: Vec<Complex64>,
    pub dirichlet_datum: Complex64,
    /// `|u' + (c0/c1) u - src/c1|` at the degenerate end with the scheme's
    /// own derivative row; zero for truncated problems.
    pub boundary_residual: f64,
    /// `‖Ax - b‖∞ / (‖A‖∞ ‖x‖∞)`.
    pub relative_residual: f64,
}

/// Solves `system` by dense LU with partial pivoting. The Dirichlet entries
/// of the result are set to their data exactly.
pub fn solve(system: &DiscreteSystem) -> Result<ModeSolution> {
    let factors = lu_factor(&system.matrix)?;
    let mut values = factors.solve(&system.rhs);
    let ax = system.matrix.mul_vec(&values);
    let residual = ax.iter().zip(&system.rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let scale = system.matrix.norm_inf() * norm_inf(&values);
    let relative_residual = if scale > 0.0 { residual / scale } else { residual };
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Singular(format!(
            "solution is not finite; pivots span [{:e}, {:e}]",
            factors.pivot_range.0, factors.pivot_range.1
        )));
    }
    let (row, datum) = system.dirichlet_row;
    values[row] = datum;
    if let Some((row, value)) = system.outer_dirichlet {
        values[row] = value;
    }
    let boundary_residual = system.behavioral.as_ref().map_or(0.0, |b| b.residual(&values));
    Ok(ModeSolution {
        m: system.mode,
        grid: system.grid.clone(),
        values,
        dirichlet_datum: datum,
        boundary_residual,
        relative_residual,
    })
}

/// Where the transformation acts: the whole exterior or an outer layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    /// Rational map `r = ρ/(1-ρ)` with the hyperboloidal height of speed `K`.
    Nic { speed: f64 },
    /// Identity inside `R`, layer map on `[R, S]`, layer height `h = g - ρ/K`.
    Nil { layer: LayerConfig, speed: f64 },
}

impl Geometry {
    pub fn nic(speed: f64) -> Self {
        Geometry::Nic { speed }
    }

    pub fn nil(interface: f64, outer: f64, exponent: u32) -> Result<Self> {
        Ok(Geometry::Nil { layer: LayerConfig::new(interface, outer, exponent)?, speed: 1.0 })
    }

    /// Height on a map whose inner edge is the physical radius `r_in`.
    pub fn height(&self, r_in: f64) -> Result<HeightFunction> {
        match *self {
            Geometry::Nic { speed } => {
                let map = CompactificationMap::with_physical_inner(MapKind::Rational, r_in)?;
                HeightFunction::hyperboloidal(speed, map)
            }
            Geometry::Nil { layer, speed } => {
                let map = CompactificationMap::with_physical_inner(MapKind::Layer(layer), r_in)?;
                HeightFunction::new(HeightKind::Layer { speed }, map)
            }
        }
    }
}

/// Grid spanning the map of `height`, split at the layer interface for the
/// two-domain scheme.
pub fn grid_for(height: &HeightFunction, scheme: Scheme, n: usize) -> Result<Grid> {
    let map = height.map();
    let interface = map.layer_config().map(|l| l.interface);
    if scheme == Scheme::TwoDomainChebyshev && interface.is_none() {
        return Err(Error::config("cheb2 needs a layer geometry"));
    }
    build_grid(scheme, n, map.rho_in(), map.outer(), interface)
}

/// Relative and absolute discrete error norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorNorms {
    /// `max|e| / max|exact|`, or `max|e|` when `relative` is false.
    pub max_rel: f64,
    /// `‖e‖₂ / ‖exact‖₂`, or `‖e‖₂` when `relative` is false.
    pub l2_rel: f64,
    pub max_abs: f64,
    pub l2_abs: f64,
    /// False when the exact field vanishes and absolute norms are returned.
    pub relative: bool,
}

pub fn error_norms_values(numeric: &[Complex64], exact: &[Complex64]) -> Result<ErrorNorms> {
    if numeric.len() != exact.len() {
        return Err(Error::config(format!("{} values against {} exact values", numeric.len(), exact.len())));
    }
    let (mut max_abs, mut sq, mut max_ref, mut sq_ref) = (0.0_f64, 0.0, 0.0_f64, 0.0);
    for (a, b) in numeric.iter().zip(exact) {
        let e = (a - b).norm();
        max_abs = max_abs.max(e);
        sq += e * e;
        max_ref = max_ref.max(b.norm());
        sq_ref += b.norm_sqr();
    }
    let l2_abs = sq.sqrt();
    let relative = max_ref > 0.0;
    Ok(ErrorNorms {
        max_rel: if relative { max_abs / max_ref } else { max_abs },
        l2_rel: if relative { l2_abs / sq_ref.sqrt() } else { l2_abs },
        max_abs,
        l2_abs,
        relative,
    })
}

/// Error norms of `numeric` against `exact` on shared nodes.
pub fn error_norms(numeric: &FieldSample, exact: &FieldSample) -> Result<ErrorNorms> {
    if numeric.nodes != exact.nodes {
        return Err(Error::config("fields are sampled on different nodes"));
    }
    if numeric.representation != exact.representation {
        return Err(Error::config("fields use different representations"));
    }
    error_norms_values(&numeric.values, &exact.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{coefficients_general, discretize};
    use crate::geometry::Representation;
    use crate::linalg::CMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_system() {
        let grid = build_grid(Scheme::Chebyshev, 2, -1.0, 1.0, None).unwrap();
        let mut matrix = CMatrix::identity(3);
        matrix[(2, 2)] = c(1.0, 0.0);
        let system = DiscreteSystem {
            matrix,
            rhs: vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)],
            dirichlet_row: (0, c(1.0, 0.0)),
            outer_dirichlet: None,
            behavioral: None,
            grid,
            mode: 0,
        };
        let sol = solve(&system).unwrap();
        assert_eq!(sol.values, vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]);
        assert_eq!(sol.relative_residual, 0.0);
    }

    #[test]
    fn norms() {
        let exact: Vec<Complex64> = (0..10).map(|j| c(f64::from(j).sin(), 1.0)).collect();
        let same = error_norms_values(&exact, &exact).unwrap();
        assert_eq!((same.max_rel, same.l2_rel), (0.0, 0.0));
        let doubled: Vec<Complex64> = exact.iter().map(|v| v * 2.0).collect();
        let n = error_norms_values(&doubled, &exact).unwrap();
        assert!((n.max_rel - 1.0).abs() < 1e-15 && (n.l2_rel - 1.0).abs() < 1e-15);
        let zero = vec![c(0.0, 0.0); 10];
        let z = error_norms_values(&exact, &zero).unwrap();
        assert!(!z.relative);
        assert_eq!(z.max_abs, z.max_rel);
        let a = FieldSample::new(vec![0.0, 1.0], vec![c(1.0, 0.0); 2], Representation::Transformed, 1, 1.0).unwrap();
        let b = FieldSample::new(vec![0.0, 2.0], vec![c(1.0, 0.0); 2], Representation::Transformed, 1, 1.0).unwrap();
        assert!(error_norms(&a, &b).is_err());
    }

    #[test]
    fn dirichlet_entry_is_exact_and_solution_is_linear() {
        let height = Geometry::nic(40.0).height(1.0).unwrap();
        let op = coefficients_general(1, 0, 40.0, &height, None).unwrap();
        let grid = grid_for(&height, Scheme::Chebyshev, 32).unwrap();
        let (a, b) = (c(0.3, -1.7), c(2.0, 0.5));
        let sa = solve(&discretize(&op, &grid, a).unwrap()).unwrap();
        let sb = solve(&discretize(&op, &grid, b).unwrap()).unwrap();
        let (alpha, beta) = (c(1.5, 2.0), c(-0.25, 0.75));
        let sab = solve(&discretize(&op, &grid, alpha * a + beta * b).unwrap()).unwrap();
        assert_eq!(sa.values[0], a);
        let combo: Vec<Complex64> = sa.values.iter().zip(&sb.values).map(|(x, y)| alpha * x + beta * y).collect();
        let e = error_norms_values(&sab.values, &combo).unwrap();
        assert!(e.max_rel < 1e-12, "{e:?}");
    }

    #[test]
    fn geometries() {
        let nic = Geometry::nic(1.0).height(1.0).unwrap();
        assert_eq!(nic.map().rho_in(), 0.5);
        let nil = Geometry::nil(2.0, 2.2, 2).unwrap().height(1.0).unwrap();
        assert_eq!(nil.map().rho_in(), 1.0);
        assert_eq!(nil.height(1.5), 0.0);
        assert!(grid_for(&nic, Scheme::TwoDomainChebyshev, 8).is_err());
        assert_eq!(grid_for(&nil, Scheme::TwoDomainChebyshev, 8).unwrap().len(), 17);
    }
}
