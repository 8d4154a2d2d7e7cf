//! Transformed radial Helmholtz operators `c2 u'' + c1 u' + c0 u = src` and
//! their discretization.
//!
//! Under a map `r = g(ρ)` with inverse Jacobian `G` and a height `h` with
//! boost `H = G h'`, the per-mode radial equation becomes
//!
//! ```text
//! c2 = G
//! c1 = G' + 2ik H
//! c0 = k² (1 - H²)/G - ((1-d)(3-d)/4 + λ) / (G g²) + ik H'
//! src = (F/G) g^{(d-1)/2} e^{-ikh}
//! ```
//!
//! with `λ` the angular eigenvalue of the mode. `(1 - H²)/G` and `1/(G g²)`
//! come from [`HeightFunction::boost_deficit`] and
//! [`CompactificationMap::inv_jacobian_radius_sq`] in cancelled form, so
//! every coefficient is finite at `ρ = S`, where `c2` vanishes.

mod discretize;
mod dispersion;
mod grid;

use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::HeightFunction;

pub use discretize::{discretize, discretize_truncated, BehavioralRow, DiscreteSystem};
pub use dispersion::{dispersion_compactified, dispersion_transformed};
pub use grid::{build_grid, Grid, Scheme};

/// Source term `F` as a function of the compact coordinate.
pub type Source = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Real or complex coefficient function of the physical coordinate `x`.
pub type CoefficientFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const PROBE_POINTS: usize = 65;

/// Offsets from `S` at which a source is probed for regularity.
pub const SOURCE_PROBE_OFFSETS: [f64; 3] = [1e-2, 1e-4, 1e-6];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub c2: Complex64,
    pub c1: Complex64,
    pub c0: Complex64,
    pub src: Complex64,
}

impl Coefficients {
    fn first_nonfinite(&self) -> Option<&'static str> {
        let bad = |v: Complex64| !(v.re.is_finite() && v.im.is_finite());
        [("c2", self.c2), ("c1", self.c1), ("c0", self.c0), ("src", self.src)]
            .into_iter()
            .find(|&(_, v)| bad(v))
            .map(|(name, _)| name)
    }

    /// Residual of the operator applied to `(u, u', u'')`.
    pub fn residual(&self, u: Complex64, du: Complex64, d2u: Complex64) -> Complex64 {
        self.c2 * d2u + self.c1 * du + self.c0 * u - self.src
    }
}

/// End of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    Inner,
    Outer,
}

/// Coefficients `a(x) U'' + b(x) U' + c(x) U = 0` of a one-dimensional
/// equation on `[x_in, ∞)`, with the boost `H = dh/dx` of the phase used in
/// `u = e^{-ih(x)} U`.
#[derive(Clone)]
pub struct VariableCoefficients {
    pub a: CoefficientFn,
    pub b: CoefficientFn,
    pub c: CoefficientFn,
    pub boost: RealFn,
    /// `dH/dx`.
    pub boost_slope: RealFn,
}

impl fmt::Debug for VariableCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("VariableCoefficients { .. }")
    }
}

#[derive(Clone)]
enum Form {
    Compactified { height: HeightFunction, source: Option<Source>, angular: f64 },
    Standard { source: Option<Source>, angular: f64 },
    Variable(VariableCoefficients),
}

/// A second-order radial operator with its domain and degenerate end.
#[derive(Clone)]
pub struct RadialOperator {
    form: Form,
    dimension: u32,
    mode: i32,
    wavenumber: f64,
    domain: (f64, f64),
    degenerate: Option<End>,
    /// Source value at the degenerate end, extrapolated from inside.
    source_at_end: Complex64,
}

impl fmt::Debug for RadialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = match &self.form {
            Form::Compactified { .. } => "compactified",
            Form::Standard { .. } => "standard",
            Form::Variable(_) => "variable",
        };
        f.debug_struct("RadialOperator")
            .field("form", &form)
            .field("dimension", &self.dimension)
            .field("mode", &self.mode)
            .field("wavenumber", &self.wavenumber)
            .field("domain", &self.domain)
            .field("degenerate", &self.degenerate)
            .finish()
    }
}

/// Angular eigenvalue of mode `m`: `m²` on the circle, `m(m+1)` on the sphere.
fn angular_eigenvalue(dimension: u32, mode: i32) -> Result<f64> {
    match dimension {
        1 if mode == 0 => Ok(0.0),
        1 => Err(Error::config("one-dimensional problems have only the mode m = 0")),
        2 => Ok(f64::from(mode) * f64::from(mode)),
        3 if mode >= 0 => Ok(f64::from(mode) * f64::from(mode + 1)),
        3 => Err(Error::config("spherical harmonic degree must be non-negative")),
        _ => Err(Error::config(format!("dimension must be 1, 2 or 3, got {dimension}"))),
    }
}

/// `(1-d)(3-d)/4`, the term left behind by the `r^{(d-1)/2}` rescaling.
fn dimension_term(dimension: u32) -> f64 {
    let d = f64::from(dimension);
    (1.0 - d) * (3.0 - d) / 4.0
}

/// Quadratic extrapolation to `t = 0` from samples at `t = δ, 2δ, 3δ`.
fn extrapolate(f: impl Fn(f64) -> Complex64, delta: f64) -> Complex64 {
    3.0 * f(delta) - 3.0 * f(2.0 * delta) + f(3.0 * delta)
}

fn check_wavenumber(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::config(format!("wavenumber must be positive, got {k}")))
    }
}

impl RadialOperator {
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn mode(&self) -> i32 {
        self.mode
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// End where the principal part degenerates (`r = ∞`); `None` for a
    /// truncated standard operator.
    pub fn degenerate_end(&self) -> Option<End> {
        self.degenerate
    }

    pub fn height(&self) -> Option<&HeightFunction> {
        match &self.form {
            Form::Compactified { height, .. } => Some(height),
            _ => None,
        }
    }

    /// Ratio `c0/c1` at the degenerate end: the discrete solution there obeys
    /// `u' + (c0/c1) u = src/c1`.
    pub fn behavioral_ratio(&self) -> Option<Complex64> {
        let end = self.degenerate?;
        let rho = match end {
            End::Inner => self.domain.0,
            End::Outer => self.domain.1,
        };
        let c = self.coefficients(rho);
        Some(c.c0 / c.c1)
    }

    pub fn coefficients(&self, rho: f64) -> Coefficients {
        let k = self.wavenumber;
        let ik = Complex64::new(0.0, k);
        match &self.form {
            Form::Compactified { height, source, angular } => {
                let map = height.map();
                let jac = map.inv_jacobian(rho);
                let lower = dimension_term(self.dimension) + angular;
                let angular_part =
                    if lower == 0.0 { 0.0 } else { lower * map.inv_jacobian_radius_sq(rho) };
                let c2 = Complex64::new(jac, 0.0);
                let c1 = map.inv_jacobian_derivative(rho) + 2.0 * ik * height.boost(rho);
                let c0 = k * k * height.boost_deficit(rho) - angular_part + ik * height.boost_derivative(rho);
                let src = match source {
                    None => Complex64::new(0.0, 0.0),
                    Some(_) if rho >= map.outer() => self.source_at_end,
                    Some(f) => compactified_source(f, height, self.dimension, k, rho),
                };
                Coefficients { c2, c1, c0, src }
            }
            Form::Standard { source, angular } => {
                let lower = dimension_term(self.dimension) + angular;
                let c0 = if lower == 0.0 { k * k } else { k * k - lower / (rho * rho) };
                let src = source
                    .as_ref()
                    .map_or(Complex64::new(0.0, 0.0), |f| f(rho) * rho.powf(0.5 * f64::from(self.dimension - 1)));
                Coefficients {
                    c2: Complex64::new(1.0, 0.0),
                    c1: Complex64::new(0.0, 0.0),
                    c0: Complex64::new(c0, 0.0),
                    src,
                }
            }
            Form::Variable(vc) => {
                if rho <= 0.0 {
                    let delta = 1e-3 * self.domain.1;
                    let zero = Complex64::new(0.0, 0.0);
                    let c1 = extrapolate(|t| variable_coefficients(vc, t).1, delta);
                    let c0 = extrapolate(|t| variable_coefficients(vc, t).2, delta);
                    Coefficients { c2: zero, c1, c0, src: zero }
                } else {
                    let (c2, c1, c0) = variable_coefficients(vc, rho);
                    Coefficients { c2, c1, c0, src: Complex64::new(0.0, 0.0) }
                }
            }
        }
    }

    fn probe(&self) -> Result<()> {
        let (a, b) = self.domain;
        for j in 0..PROBE_POINTS {
            let rho = if j + 1 == PROBE_POINTS { b } else { a + (b - a) * j as f64 / (PROBE_POINTS - 1) as f64 };
            if let Some(term) = self.coefficients(rho).first_nonfinite() {
                return Err(Error::Regularity { term, rho });
            }
        }
        Ok(())
    }
}

fn compactified_source(f: &Source, height: &HeightFunction, dimension: u32, k: f64, rho: f64) -> Complex64 {
    let map = height.map();
    let r = map.radius(rho);
    let scale = r.powf(0.5 * f64::from(dimension - 1)) / map.inv_jacobian(rho);
    f(rho) * scale * Complex64::from_polar(1.0, -k * height.height(rho))
}

/// Coefficients in `ρ = 1/x` at `ρ > 0`:
/// `aρ² u'' + (2aρ - b - 2iaH) u' + [(c - aH²)/ρ² + ibH/ρ² - i a dH/dρ] u = 0`.
fn variable_coefficients(vc: &VariableCoefficients, rho: f64) -> (Complex64, Complex64, Complex64) {
    let i = Complex64::i();
    let x = 1.0 / rho;
    let (a, b, c) = ((vc.a)(x), (vc.b)(x), (vc.c)(x));
    let boost = (vc.boost)(x);
    // dH/dρ = -x² dH/dx
    let boost_rho = -x * x * (vc.boost_slope)(x);
    let c2 = a * rho * rho;
    let c1 = 2.0 * a * rho - b - 2.0 * i * a * boost;
    let c0 = (c - a * boost * boost + i * b * boost) * (x * x) - i * a * boost_rho;
    (c2, c1, c0)
}

/// The transformed per-mode operator on `[ρ_in, S]` of `height.map()`.
///
/// `mode` is the azimuthal number `m` for `d = 2` and the degree `ℓ` for
/// `d = 3`; it must be zero for `d = 1`.
pub fn coefficients_general(
    dimension: u32,
    mode: i32,
    k: f64,
    height: &HeightFunction,
    source: Option<Source>,
) -> Result<RadialOperator> {
    check_wavenumber(k)?;
    let angular = angular_eigenvalue(dimension, mode)?;
    let map = height.map();
    let (rho_in, outer) = (map.rho_in(), map.outer());
    if dimension_term(dimension) + angular != 0.0 && rho_in <= 0.0 {
        return Err(Error::config(format!(
            "mode {mode} in dimension {dimension} carries a 1/(G g^2) term; rho_in must be positive"
        )));
    }
    let mut source_at_end = Complex64::new(0.0, 0.0);
    if let Some(f) = &source {
        let probes: Vec<Complex64> = SOURCE_PROBE_OFFSETS
            .iter()
            .map(|eps| compactified_source(f, height, dimension, k, outer - eps))
            .collect();
        let first = probes[0].norm();
        for (eps, v) in SOURCE_PROBE_OFFSETS.iter().zip(&probes) {
            if !(v.re.is_finite() && v.im.is_finite()) || v.norm() > 1e3 * first.max(1.0) {
                return Err(Error::Regularity { term: "src", rho: outer - eps });
            }
        }
        let delta = 1e-4 * (outer - rho_in);
        source_at_end = extrapolate(|t| compactified_source(f, height, dimension, k, outer - t), delta);
    }
    let op = RadialOperator {
        form: Form::Compactified { height: *height, source, angular },
        dimension,
        mode,
        wavenumber: k,
        domain: (rho_in, outer),
        degenerate: Some(End::Outer),
        source_at_end,
    };
    op.probe()?;
    Ok(op)
}

/// The untransformed per-mode operator (`g = ρ`, `H = 0`) on a truncated
/// interval `[r_in, r_out]`, for comparison runs with data at both ends.
pub fn coefficients_standard(
    dimension: u32,
    mode: i32,
    k: f64,
    r_in: f64,
    r_out: f64,
    source: Option<Source>,
) -> Result<RadialOperator> {
    check_wavenumber(k)?;
    let angular = angular_eigenvalue(dimension, mode)?;
    if !(r_in >= 0.0 && r_out > r_in && r_out.is_finite()) {
        return Err(Error::config(format!("invalid interval [{r_in}, {r_out}]")));
    }
    if dimension_term(dimension) + angular != 0.0 && r_in <= 0.0 {
        return Err(Error::config("inner radius must be positive for this mode"));
    }
    let op = RadialOperator {
        form: Form::Standard { source, angular },
        dimension,
        mode,
        wavenumber: k,
        domain: (r_in, r_out),
        degenerate: None,
        source_at_end: Complex64::new(0.0, 0.0),
    };
    op.probe()?;
    Ok(op)
}

/// Estimated decay of one coefficient combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Falloff {
    pub term: &'static str,
    /// Fitted exponent `p` in `|f| ~ x^p`; `None` if `f` vanishes to rounding.
    pub exponent: Option<f64>,
    pub satisfied: bool,
}

/// Decay diagnostics of `b` and `c - aH²` over `x ∈ [1e2, 1e6]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FalloffReport {
    pub terms: Vec<Falloff>,
    pub warnings: Vec<String>,
}

impl FalloffReport {
    pub const REQUIRED_EXPONENT: f64 = -2.0;
    pub const TOLERANCE: f64 = 0.1;

    pub fn pass(&self) -> bool {
        self.terms.iter().all(|t| t.satisfied)
    }
}

fn fit_decay(term: &'static str, f: impl Fn(f64) -> (Complex64, f64)) -> Falloff {
    let (mut sx, mut sy, mut sxx, mut sxy, mut count) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for j in 0..=16 {
        let x = 10f64.powf(2.0 + 0.25 * f64::from(j));
        let (value, scale) = f(x);
        // Values at the rounding floor of the subtraction carry no information.
        if value.norm() <= 64.0 * f64::EPSILON * scale {
            continue;
        }
        let (lx, ly) = (x.ln(), value.norm().ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        count += 1.0;
    }
    if count < 2.0 {
        return Falloff { term, exponent: None, satisfied: true };
    }
    let slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    Falloff {
        term,
        exponent: Some(slope),
        satisfied: slope <= FalloffReport::REQUIRED_EXPONENT + FalloffReport::TOLERANCE,
    }
}

/// The operator for `a U'' + b U' + c U = 0` on `[x_in, ∞)` after
/// `u = e^{-ih} U` and `x = 1/ρ`, on `ρ ∈ [0, 1/x_in]` with infinity at
/// `ρ = 0`. Slow decay of `b` or `c - aH²` is reported, not rejected.
pub fn coefficients_variable_1d(
    coefficients: VariableCoefficients,
    x_in: f64,
) -> Result<(RadialOperator, FalloffReport)> {
    if !(x_in > 0.0 && x_in.is_finite()) {
        return Err(Error::config(format!("inner point x_in must be positive, got {x_in}")));
    }
    let vc = coefficients.clone();
    let b_fit = fit_decay("b", |x| {
        let b = (vc.b)(x);
        (b, b.norm())
    });
    let c_fit = fit_decay("c - aH^2", |x| {
        let (a, c, h) = ((vc.a)(x), (vc.c)(x), (vc.boost)(x));
        let ah2 = a * h * h;
        (c - ah2, c.norm() + ah2.norm())
    });
    let warnings = [&b_fit, &c_fit]
        .iter()
        .filter(|t| !t.satisfied)
        .map(|t| {
            format!(
                "{} decays like x^{:.2}, slower than x^-2; the operator is singular at infinity",
                t.term,
                t.exponent.unwrap_or(f64::NAN)
            )
        })
        .collect();
    let op = RadialOperator {
        form: Form::Variable(coefficients),
        dimension: 1,
        mode: 0,
        wavenumber: 1.0,
        domain: (0.0, 1.0 / x_in),
        degenerate: Some(End::Inner),
        source_at_end: Complex64::new(0.0, 0.0),
    };
    Ok((op, FalloffReport { terms: vec![b_fit, c_fit], warnings }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CompactificationMap, HeightKind, LayerConfig};
    use std::f64::consts::FRAC_PI_2;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn tangent_map_reproduces_the_simple_transformed_equation() {
        let k = 3.0;
        let map = CompactificationMap::tangent(0.0).unwrap();
        let height = HeightFunction::hyperboloidal(1.0, map).unwrap();
        let op = coefficients_general(1, 0, k, &height, None).unwrap();
        for rho in [0.0, 0.3, 0.8, 1.2, 1.5, FRAC_PI_2] {
            let c = op.coefficients(rho);
            let (s, co) = rho.sin_cos();
            let co = if rho >= FRAC_PI_2 { 0.0 } else { co };
            assert!(close(c.c2, Complex64::new(co * co, 0.0), 1e-14));
            assert!(close(c.c1, Complex64::new(-2.0 * co * s, 2.0 * k * s * s), 1e-14));
            let c0 = Complex64::new(k * k * (1.0 + s * s), k * (2.0 * rho).sin());
            assert!(close(c.c0, c0, 1e-14), "rho = {rho}: {} vs {c0}", c.c0);
        }
    }

    #[test]
    fn rational_map_coefficients_one_and_two_dimensions() {
        let (k, speed) = (40.0, 7.0);
        let map = CompactificationMap::rational(0.5).unwrap();
        let height = HeightFunction::hyperboloidal(speed, map).unwrap();
        let op1 = coefficients_general(1, 0, k, &height, None).unwrap();
        let op2 = coefficients_general(2, 5, k, &height, None).unwrap();
        let i = Complex64::i();
        for rho in [0.5, 0.6, 0.75, 0.9, 1.0] {
            let om = 1.0 - rho;
            let c2 = Complex64::new(om * om, 0.0);
            let c1 = -2.0 * (om - i * k * (1.0 - om * om / speed));
            let c0 = k * k * (2.0 / speed - om * om / (speed * speed)) + 2.0 * i * k * om / speed;
            let c = op1.coefficients(rho);
            assert!(close(c.c2, c2, 1e-14) && close(c.c1, c1, 1e-14) && close(c.c0, c0, 1e-14));
            let c = op2.coefficients(rho);
            assert!(close(c.c0, c0 - (25.0 - 0.25) / (rho * rho), 1e-14));
        }
        assert_eq!(op1.coefficients(1.0).c2, Complex64::new(0.0, 0.0));
        assert_eq!(op1.coefficients(1.0).c1, Complex64::new(0.0, 2.0 * k));
    }

    #[test]
    fn degenerate_principal_part_for_every_map() {
        let maps = [
            CompactificationMap::rational(0.2).unwrap(),
            CompactificationMap::tangent(0.2).unwrap(),
            CompactificationMap::layer(0.5, LayerConfig::new(2.0, 2.2, 2).unwrap()).unwrap(),
        ];
        for map in maps {
            for kind in [HeightKind::Hyperboloidal { speed: 2.0 }, HeightKind::Characteristic { offset: 0.0 }] {
                let h = HeightFunction::new(kind, map).unwrap();
                for (d, m) in [(1, 0), (2, 3), (3, 2)] {
                    let op = coefficients_general(d, m, 5.0, &h, None).unwrap();
                    let c = op.coefficients(map.outer());
                    assert_eq!(c.c2, Complex64::new(0.0, 0.0));
                    assert!(c.c1.norm() > 0.0);
                }
            }
        }
    }

    #[test]
    fn standard_operator_is_recovered() {
        let op = coefficients_standard(2, 3, 2.0, 1.0, 2.0, None).unwrap();
        let c = op.coefficients(1.5);
        assert_eq!(c.c2, Complex64::new(1.0, 0.0));
        assert_eq!(c.c1, Complex64::new(0.0, 0.0));
        assert!((c.c0.re - (4.0 - 8.75 / 2.25)).abs() < 1e-14);
        assert!(op.degenerate_end().is_none());
    }

    #[test]
    fn singular_terms_need_positive_inner_edge() {
        let map = CompactificationMap::rational(0.0).unwrap();
        let h = HeightFunction::hyperboloidal(1.0, map).unwrap();
        assert!(coefficients_general(1, 0, 1.0, &h, None).is_ok());
        assert!(matches!(coefficients_general(2, 0, 1.0, &h, None), Err(Error::Config(_))));
        assert!(matches!(coefficients_general(1, 2, 1.0, &h, None), Err(Error::Config(_))));
    }

    #[test]
    fn non_characteristic_linear_height_is_irregular() {
        let map = CompactificationMap::rational(0.5).unwrap();
        let h = HeightFunction::new(HeightKind::Linear { slope: 0.5, offset: 0.0 }, map).unwrap();
        assert!(matches!(coefficients_general(1, 0, 1.0, &h, None), Err(Error::Regularity { term: "c0", .. })));
    }

    #[test]
    fn growing_source_is_rejected() {
        let map = CompactificationMap::rational(0.5).unwrap();
        let h = HeightFunction::hyperboloidal(1.0, map).unwrap();
        let constant: Source = Arc::new(|_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            coefficients_general(1, 0, 1.0, &h, Some(constant)),
            Err(Error::Regularity { term: "src", .. })
        ));
    }

    fn plane_wave_coefficients(k: f64) -> VariableCoefficients {
        VariableCoefficients {
            a: Arc::new(|_| Complex64::new(1.0, 0.0)),
            b: Arc::new(|_| Complex64::new(0.0, 0.0)),
            c: Arc::new(move |_| Complex64::new(k * k, 0.0)),
            boost: Arc::new(move |_| k),
            boost_slope: Arc::new(|_| 0.0),
        }
    }

    #[test]
    fn variable_coefficients_cancel_for_plane_wave_phase() {
        let (op, report) = coefficients_variable_1d(plane_wave_coefficients(3.0), 1.0).unwrap();
        assert!(report.pass());
        assert!(report.terms.iter().all(|t| t.exponent.is_none()));
        let c = op.coefficients(0.0);
        assert_eq!(c.c2, Complex64::new(0.0, 0.0));
        assert!(c.c0.norm() < 1e-10);
        assert!((c.c1 - Complex64::new(0.0, -6.0)).norm() < 1e-12);
        assert_eq!(op.degenerate_end(), Some(End::Inner));
    }

    #[test]
    fn slow_decay_is_flagged() {
        let mut vc = plane_wave_coefficients(3.0);
        vc.b = Arc::new(|_| Complex64::new(1.0, 0.0));
        let (_, report) = coefficients_variable_1d(vc, 1.0).unwrap();
        assert!(!report.pass());
        let b = &report.terms[0];
        assert!(!b.satisfied);
        assert!(b.exponent.unwrap().abs() < 1e-10);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn inverse_square_decay_passes() {
        let k = 2.0;
        let vc = VariableCoefficients {
            a: Arc::new(|_| Complex64::new(1.0, 0.0)),
            b: Arc::new(|x| Complex64::new(2.0 / (x * x), 0.0)),
            c: Arc::new(move |x| Complex64::new(k * k + 1.0 / (x * x), 0.0)),
            boost: Arc::new(move |_| k),
            boost_slope: Arc::new(|_| 0.0),
        };
        let (_, report) = coefficients_variable_1d(vc, 1.0).unwrap();
        assert!(report.pass(), "{report:?}");
        for t in &report.terms {
            assert!((t.exponent.unwrap() + 2.0).abs() < 0.05, "{t:?}");
        }
    }
}
