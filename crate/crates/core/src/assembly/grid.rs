use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Discretization scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Second-order finite differences on a uniform grid.
    #[serde(rename = "fd2")]
    Fd2,
    /// Chebyshev collocation on Gauss-Lobatto points.
    #[serde(rename = "cheb")]
    Chebyshev,
    /// Two Chebyshev grids sharing a node at a layer interface.
    #[serde(rename = "cheb2")]
    TwoDomainChebyshev,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Fd2 => "fd2",
            Scheme::Chebyshev => "cheb",
            Scheme::TwoDomainChebyshev => "cheb2",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fd2" => Ok(Scheme::Fd2),
            "cheb" => Ok(Scheme::Chebyshev),
            "cheb2" => Ok(Scheme::TwoDomainChebyshev),
            _ => Err(Error::config(format!("unknown scheme `{s}`; expected fd2, cheb or cheb2"))),
        }
    }
}

/// Sparse row of a differentiation operator: `(column, weight)` pairs.
pub type StencilRow = Vec<(usize, f64)>;

/// Ascending nodes on `[ρ_in, S]` for one scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    scheme: Scheme,
    nodes: Vec<f64>,
    interface_index: Option<usize>,
    /// Intervals per subdomain.
    intervals: usize,
}

/// `N + 1` Chebyshev-Lobatto points `cos(πj/N)`, ascending.
fn lobatto(n: usize) -> Vec<f64> {
    // sin form keeps the set exactly symmetric about 0.
    (0..=n).map(|j| -((PI * (n as f64 - 2.0 * j as f64)) / (2.0 * n as f64)).sin()).collect()
}

fn affine(x: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut nodes: Vec<f64> = x.iter().map(|&t| a + (b - a) * (1.0 + t) / 2.0).collect();
    nodes[0] = a;
    *nodes.last_mut().unwrap() = b;
    nodes
}

/// Chebyshev differentiation matrix on `[a, b]` for ascending Lobatto
/// nodes, with the diagonal from the negative sum of each row.
fn chebyshev_matrix(n: usize, a: f64, b: f64) -> Vec<Vec<f64>> {
    // Ascending node j corresponds to x = cos(π(n-j)/n).
    let theta = |j: usize| PI * (n - j) as f64 / n as f64;
    let weight = |j: usize| {
        let c = if j == 0 || j == n { 2.0 } else { 1.0 };
        if (n - j) % 2 == 0 { c } else { -c }
    };
    let scale = 2.0 / (b - a);
    let mut d = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..=n {
        let mut sum = 0.0;
        for j in 0..=n {
            if i == j {
                continue;
            }
            // x_i - x_j without cancellation.
            let diff = -2.0 * ((theta(i) + theta(j)) / 2.0).sin() * ((theta(i) - theta(j)) / 2.0).sin();
            let v = weight(i) / weight(j) / diff;
            d[i][j] = v * scale;
            sum += v;
        }
        d[i][i] = -sum * scale;
    }
    d
}

fn dense_rows(d: &[Vec<f64>], offset: usize) -> Vec<StencilRow> {
    d.iter().map(|row| row.iter().enumerate().map(|(j, &v)| (j + offset, v)).collect()).collect()
}

fn square(d: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = d.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let a = d[i][k];
            if a == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a * d[k][j];
            }
        }
    }
    out
}

/// First and second derivative rows per node, plus the interface row of a
/// two-domain grid (left minus right first derivative).
#[derive(Debug, Clone, PartialEq)]
pub struct Differentiation {
    pub d1: Vec<StencilRow>,
    pub d2: Vec<StencilRow>,
    pub interface_jump: Option<StencilRow>,
}

impl Differentiation {
    pub fn apply(row: &StencilRow, values: &[Complex64]) -> Complex64 {
        row.iter().map(|&(j, w)| values[j] * w).sum()
    }
}

/// Builds a grid with `n` intervals on `[rho_in, outer]`; a two-domain grid
/// has `n` intervals on each side of `interface`.
pub fn build_grid(scheme: Scheme, n: usize, rho_in: f64, outer: f64, interface: Option<f64>) -> Result<Grid> {
    if n < 2 || (scheme == Scheme::Fd2 && n < 4) {
        return Err(Error::config(format!("{scheme} needs more intervals than N = {n}")));
    }
    if !(rho_in < outer && rho_in.is_finite() && outer.is_finite()) {
        return Err(Error::config(format!("invalid interval [{rho_in}, {outer}]")));
    }
    let (nodes, interface_index) = match scheme {
        Scheme::Fd2 => {
            let h = (outer - rho_in) / n as f64;
            let mut nodes: Vec<f64> = (0..=n).map(|j| rho_in + h * j as f64).collect();
            nodes[n] = outer;
            (nodes, None)
        }
        Scheme::Chebyshev => (affine(&lobatto(n), rho_in, outer), None),
        Scheme::TwoDomainChebyshev => {
            let r = interface
                .ok_or_else(|| Error::config("two-domain Chebyshev grid needs an interface"))?;
            if !(r > rho_in && r < outer) {
                return Err(Error::config(format!(
                    "interface {r} lies outside ({rho_in}, {outer})"
                )));
            }
            let x = lobatto(n);
            let mut nodes = affine(&x, rho_in, r);
            nodes.extend_from_slice(&affine(&x, r, outer)[1..]);
            (nodes, Some(n))
        }
    };
    Ok(Grid { scheme, nodes, interface_index, intervals: n })
}

impl Grid {
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Intervals per subdomain.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn interface_index(&self) -> Option<usize> {
        self.interface_index
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn differentiation(&self) -> Differentiation {
        match self.scheme {
            Scheme::Fd2 => self.fd2_rows(),
            Scheme::Chebyshev => {
                let d = chebyshev_matrix(self.intervals, self.first(), self.last());
                let d2 = square(&d);
                Differentiation { d1: dense_rows(&d, 0), d2: dense_rows(&d2, 0), interface_jump: None }
            }
            Scheme::TwoDomainChebyshev => {
                let n = self.intervals;
                let r = self.nodes[n];
                let left = chebyshev_matrix(n, self.first(), r);
                let right = chebyshev_matrix(n, r, self.last());
                let (left2, right2) = (square(&left), square(&right));
                let mut d1 = dense_rows(&left, 0);
                let mut d2 = dense_rows(&left2, 0);
                d1.extend(dense_rows(&right, n).into_iter().skip(1));
                d2.extend(dense_rows(&right2, n).into_iter().skip(1));
                let mut jump = d1[n].clone();
                jump.extend(dense_rows(&right, n)[0].iter().map(|&(j, w)| (j, -w)));
                Differentiation { d1, d2, interface_jump: Some(jump) }
            }
        }
    }

    fn fd2_rows(&self) -> Differentiation {
        let n = self.intervals;
        let h = (self.last() - self.first()) / n as f64;
        let (ih, ih2) = (1.0 / h, 1.0 / (h * h));
        let mut d1 = Vec::with_capacity(n + 1);
        let mut d2 = Vec::with_capacity(n + 1);
        d1.push(vec![(0, -1.5 * ih), (1, 2.0 * ih), (2, -0.5 * ih)]);
        d2.push(vec![(0, 2.0 * ih2), (1, -5.0 * ih2), (2, 4.0 * ih2), (3, -ih2)]);
        for i in 1..n {
            d1.push(vec![(i - 1, -0.5 * ih), (i + 1, 0.5 * ih)]);
            d2.push(vec![(i - 1, ih2), (i, -2.0 * ih2), (i + 1, ih2)]);
        }
        d1.push(vec![(n - 2, 0.5 * ih), (n - 1, -2.0 * ih), (n, 1.5 * ih)]);
        d2.push(vec![(n - 3, -ih2), (n - 2, 4.0 * ih2), (n - 1, -5.0 * ih2), (n, 2.0 * ih2)]);
        Differentiation { d1, d2, interface_jump: None }
    }

    /// Interpolates nodal values at `rho`: piecewise linear for FD2,
    /// barycentric Lagrange for Chebyshev grids.
    pub fn interpolate(&self, values: &[Complex64], rho: f64) -> Result<Complex64> {
        if values.len() != self.len() {
            return Err(Error::config(format!("{} values on a grid of {} nodes", values.len(), self.len())));
        }
        let tol = 1e-12 * (self.last() - self.first());
        if !(rho >= self.first() - tol && rho <= self.last() + tol) {
            return Err(Error::domain(format!(
                "rho = {rho} outside grid [{}, {}]",
                self.first(),
                self.last()
            )));
        }
        let rho = rho.clamp(self.first(), self.last());
        match self.scheme {
            Scheme::Fd2 => {
                let j = self.nodes.partition_point(|&x| x <= rho).clamp(1, self.len() - 1);
                let (x0, x1) = (self.nodes[j - 1], self.nodes[j]);
                let t = (rho - x0) / (x1 - x0);
                Ok(values[j - 1] * (1.0 - t) + values[j] * t)
            }
            Scheme::Chebyshev => Ok(barycentric(&self.nodes, values, rho)),
            Scheme::TwoDomainChebyshev => {
                let n = self.intervals;
                if rho <= self.nodes[n] {
                    Ok(barycentric(&self.nodes[..=n], &values[..=n], rho))
                } else {
                    Ok(barycentric(&self.nodes[n..], &values[n..], rho))
                }
            }
        }
    }
}

/// Barycentric interpolation on Lobatto nodes, weights `(-1)^j δ_j`.
fn barycentric(nodes: &[f64], values: &[Complex64], rho: f64) -> Complex64 {
    let n = nodes.len() - 1;
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (j, (&x, &v)) in nodes.iter().zip(values).enumerate() {
        if rho == x {
            return v;
        }
        let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == n {
            w *= 0.5;
        }
        let t = w / (rho - x);
        num += v * t;
        den += t;
    }
    num / den
}
