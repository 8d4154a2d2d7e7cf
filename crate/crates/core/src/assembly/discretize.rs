use num_complex::Complex64;

use super::grid::{Differentiation, Grid, Scheme, StencilRow};
use super::{End, RadialOperator};
use crate::error::{Error, Result};
use crate::geometry::MapKind;
use crate::linalg::CMatrix;

/// The degenerate-end row, kept for checking the behavioral relation
/// `u' + (c0/c1) u = src/c1` on the discrete solution.
#[derive(Debug, Clone, PartialEq)]
pub struct BehavioralRow {
    pub index: usize,
    /// The scheme's own first-derivative row at the end node.
    pub d1: StencilRow,
    /// `c0/c1` at the end.
    pub ratio: Complex64,
    /// `src/c1` at the end.
    pub forcing: Complex64,
}

impl BehavioralRow {
    /// `|u' + (c0/c1) u - src/c1|` at the end node.
    pub fn residual(&self, values: &[Complex64]) -> f64 {
        (Differentiation::apply(&self.d1, values) + self.ratio * values[self.index] - self.forcing).norm()
    }
}

/// An assembled linear system for one radial problem.
#[derive(Debug, Clone)]
pub struct DiscreteSystem {
    pub matrix: CMatrix,
    pub rhs: Vec<Complex64>,
    /// `(row, value)` of the Dirichlet condition at the physical end.
    pub dirichlet_row: (usize, Complex64),
    /// Second Dirichlet row of a truncated standard problem.
    pub outer_dirichlet: Option<(usize, Complex64)>,
    pub behavioral: Option<BehavioralRow>,
    pub grid: Grid,
    pub mode: i32,
}

impl DiscreteSystem {
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }
}

fn check_domain(op: &RadialOperator, grid: &Grid) -> Result<()> {
    let (a, b) = op.domain();
    let tol = 1e-12 * (b - a).abs().max(1.0);
    if (grid.first() - a).abs() > tol || (grid.last() - b).abs() > tol {
        return Err(Error::config(format!(
            "grid [{}, {}] does not match operator domain [{a}, {b}]",
            grid.first(),
            grid.last()
        )));
    }
    if grid.scheme() == Scheme::Chebyshev {
        if let Some(MapKind::Layer(layer)) = op.height().map(|h| h.map().kind()) {
            if layer.exponent < 4 {
                return Err(Error::config(format!(
                    "single-domain Chebyshev needs a layer exponent of at least 4 (got {}); use cheb2 or fd2",
                    layer.exponent
                )));
            }
        }
    }
    if grid.scheme() == Scheme::TwoDomainChebyshev {
        let layer = op.height().and_then(|h| h.map().layer_config());
        let r = grid.nodes()[grid.interface_index().unwrap_or(0)];
        match layer {
            Some(cfg) if (cfg.interface - r).abs() <= tol => {}
            _ => {
                return Err(Error::config(
                    "two-domain Chebyshev grid must split at the interface of a layer map",
                ))
            }
        }
    }
    Ok(())
}

fn add_row(matrix: &mut CMatrix, i: usize, row: &StencilRow, scale: Complex64) {
    if scale == Complex64::new(0.0, 0.0) {
        return;
    }
    for &(j, w) in row {
        matrix[(i, j)] += scale * w;
    }
}

fn assemble(op: &RadialOperator, grid: &Grid, dirichlet: &[(usize, Complex64)]) -> Result<DiscreteSystem> {
    check_domain(op, grid)?;
    let n = grid.len();
    let diff = grid.differentiation();
    let mut matrix = CMatrix::zeros(n, n);
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    let end_index = op.degenerate_end().map(|end| match end {
        End::Inner => 0,
        End::Outer => n - 1,
    });
    let mut behavioral = None;
    for (i, &rho) in grid.nodes().iter().enumerate() {
        if let Some(&(_, value)) = dirichlet.iter().find(|(j, _)| *j == i) {
            matrix[(i, i)] = Complex64::new(1.0, 0.0);
            rhs[i] = value;
            continue;
        }
        if Some(i) == grid.interface_index() {
            add_row(&mut matrix, i, diff.interface_jump.as_ref().unwrap(), Complex64::new(1.0, 0.0));
            continue;
        }
        let c = op.coefficients(rho);
        if let Some(term) = c.first_nonfinite() {
            return Err(Error::Regularity { term, rho });
        }
        let at_end = Some(i) == end_index;
        // At the degenerate end c2 vanishes analytically; FD2 drops the term
        // rather than apply a one-sided second-derivative stencil.
        if !(at_end && grid.scheme() == Scheme::Fd2) {
            add_row(&mut matrix, i, &diff.d2[i], c.c2);
        }
        add_row(&mut matrix, i, &diff.d1[i], c.c1);
        matrix[(i, i)] += c.c0;
        rhs[i] = c.src;
        if at_end {
            if c.c1.norm() == 0.0 {
                return Err(Error::Assembly(format!("c1 vanishes at the degenerate end rho = {rho}")));
            }
            behavioral = Some(BehavioralRow {
                index: i,
                d1: diff.d1[i].clone(),
                ratio: c.c0 / c.c1,
                forcing: c.src / c.c1,
            });
        }
    }
    for i in 0..n {
        if matrix.row(i).iter().all(|v| v.norm() == 0.0) {
            return Err(Error::Assembly(format!("row {i} (rho = {}) is identically zero", grid.nodes()[i])));
        }
    }
    if !matrix.is_finite() {
        return Err(Error::Assembly("matrix has non-finite entries".into()));
    }
    Ok(DiscreteSystem {
        matrix,
        rhs,
        dirichlet_row: dirichlet[0],
        outer_dirichlet: dirichlet.get(1).copied(),
        behavioral,
        grid: grid.clone(),
        mode: op.mode(),
    })
}

/// Assembles `op` on `grid` with a Dirichlet datum at the physical end and
/// the equation itself at the degenerate end (no boundary data there).
pub fn discretize(op: &RadialOperator, grid: &Grid, dirichlet_value: Complex64) -> Result<DiscreteSystem> {
    let index = match op.degenerate_end() {
        Some(End::Outer) => 0,
        Some(End::Inner) => grid.len() - 1,
        None => {
            return Err(Error::config(
                "operator has no degenerate end; use discretize_truncated with data at both ends",
            ))
        }
    };
    assemble(op, grid, &[(index, dirichlet_value)])
}

/// Assembles a truncated problem with Dirichlet data at both ends.
pub fn discretize_truncated(
    op: &RadialOperator,
    grid: &Grid,
    inner_value: Complex64,
    outer_value: Complex64,
) -> Result<DiscreteSystem> {
    if op.degenerate_end().is_some() {
        return Err(Error::config("a degenerate end takes no boundary data"));
    }
    assemble(op, grid, &[(0, inner_value), (grid.len() - 1, outer_value)])
}
