//! Compactification maps, height functions and the field transformation
//! between the physical unknown `U(r)` and the regular unknown `u(ρ)`.
//!
//! A map `r = g(ρ)` sends the compact interval `[ρ_in, S)` onto `[r_in, ∞)`.
//! Everything the operator assembly needs is exposed in a form that stays
//! finite at `ρ = S`: the inverse Jacobian `G = 1/g'`, its derivative, and
//! the combination `1/(G g²)`. The radius itself is reported as `+∞` at `S`
//! and is never used inside an operator.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Parameters of a null infinity layer: the map is the identity up to the
/// interface `R` and compresses `(R, S)` onto `(R, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayerConfig {
    /// Interface radius `R`.
    pub interface: f64,
    /// Outer boundary `S`, corresponding to `r = ∞`.
    pub outer: f64,
    /// Smoothness exponent `n ≥ 1` of the layer's conformal factor.
    pub exponent: u32,
}

impl LayerConfig {
    pub const DEFAULT_EXPONENT: u32 = 2;

    pub fn new(interface: f64, outer: f64, exponent: u32) -> Result<Self> {
        if !(interface.is_finite() && outer.is_finite()) || interface <= 0.0 {
            return Err(Error::config(format!(
                "layer needs finite 0 < R < S, got R = {interface}, S = {outer}"
            )));
        }
        if interface >= outer {
            return Err(Error::config(format!(
                "layer interface R = {interface} must be below the outer boundary S = {outer}"
            )));
        }
        if exponent < 1 {
            return Err(Error::config("layer exponent n must be at least 1"));
        }
        Ok(Self { interface, outer, exponent })
    }

    fn width(&self) -> f64 {
        self.outer - self.interface
    }

    /// Normalized depth into the layer, zero at and below the interface.
    fn depth(&self, rho: f64) -> f64 {
        if rho <= self.interface {
            0.0
        } else {
            ((rho - self.interface) / self.width()).min(1.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind {
    /// `g(ρ) = ρ/(1-ρ)`, `S = 1`.
    Rational,
    /// `g(ρ) = tan ρ`, `S = π/2`.
    Tangent,
    /// Identity below `R`, `g = R + (ρ-R)/Ω` above.
    Layer(LayerConfig),
}

/// A radial compactification `r = g(ρ)` on `[ρ_in, S]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompactificationMap {
    rho_in: f64,
    kind: MapKind,
}

impl CompactificationMap {
    pub fn new(kind: MapKind, rho_in: f64) -> Result<Self> {
        let map = Self { rho_in, kind };
        let outer = map.outer();
        if !rho_in.is_finite() || rho_in < 0.0 || rho_in >= outer {
            return Err(Error::config(format!(
                "inner edge rho_in = {rho_in} must lie in [0, S) with S = {outer}"
            )));
        }
        if let MapKind::Layer(layer) = kind {
            LayerConfig::new(layer.interface, layer.outer, layer.exponent)?;
            if rho_in >= layer.interface {
                return Err(Error::config(format!(
                    "inner edge rho_in = {rho_in} must lie below the layer interface R = {}",
                    layer.interface
                )));
            }
        }
        Ok(map)
    }

    pub fn rational(rho_in: f64) -> Result<Self> {
        Self::new(MapKind::Rational, rho_in)
    }

    pub fn tangent(rho_in: f64) -> Result<Self> {
        Self::new(MapKind::Tangent, rho_in)
    }

    pub fn layer(rho_in: f64, layer: LayerConfig) -> Result<Self> {
        Self::new(MapKind::Layer(layer), rho_in)
    }

    /// Builds the map whose inner edge corresponds to the physical radius `r_in`.
    pub fn with_physical_inner(kind: MapKind, r_in: f64) -> Result<Self> {
        let probe = Self { rho_in: 0.0, kind };
        let rho_in = probe.inverse(r_in)?;
        Self::new(kind, rho_in)
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn rho_in(&self) -> f64 {
        self.rho_in
    }

    /// Compact coordinate of `r = ∞`.
    pub fn outer(&self) -> f64 {
        match self.kind {
            MapKind::Rational => 1.0,
            MapKind::Tangent => FRAC_PI_2,
            MapKind::Layer(l) => l.outer,
        }
    }

    pub fn layer_config(&self) -> Option<LayerConfig> {
        match self.kind {
            MapKind::Layer(l) => Some(l),
            _ => None,
        }
    }

    fn at_outer(&self, rho: f64) -> bool {
        rho >= self.outer()
    }

    /// Physical radius `g(ρ)`; `+∞` at and beyond `S`.
    pub fn radius(&self, rho: f64) -> f64 {
        if self.at_outer(rho) {
            return f64::INFINITY;
        }
        match self.kind {
            MapKind::Rational => rho / (1.0 - rho),
            MapKind::Tangent => rho.tan(),
            MapKind::Layer(l) => {
                if rho <= l.interface {
                    rho
                } else {
                    l.interface + (rho - l.interface) / self.conformal_factor(rho)
                }
            }
        }
    }

    /// Conformal factor `Ω`, vanishing at `S`.
    pub fn conformal_factor(&self, rho: f64) -> f64 {
        if self.at_outer(rho) {
            return 0.0;
        }
        match self.kind {
            MapKind::Rational => 1.0 - rho,
            MapKind::Tangent => rho.cos(),
            MapKind::Layer(l) => 1.0 - l.depth(rho).powi(l.exponent as i32),
        }
    }

    /// Inverse Jacobian `G = 1/g'`.
    pub fn inv_jacobian(&self, rho: f64) -> f64 {
        if self.at_outer(rho) {
            return 0.0;
        }
        match self.kind {
            MapKind::Rational => (1.0 - rho) * (1.0 - rho),
            MapKind::Tangent => rho.cos().powi(2),
            MapKind::Layer(l) => {
                let n = l.exponent as i32;
                let s = l.depth(rho);
                let omega = 1.0 - s.powi(n);
                omega * omega / (1.0 + f64::from(n - 1) * s.powi(n))
            }
        }
    }

    /// `dG/dρ`.
    pub fn inv_jacobian_derivative(&self, rho: f64) -> f64 {
        let rho = rho.min(self.outer());
        match self.kind {
            MapKind::Rational => -2.0 * (1.0 - rho),
            MapKind::Tangent if rho >= FRAC_PI_2 => 0.0,
            MapKind::Tangent => -(2.0 * rho).sin(),
            MapKind::Layer(l) => {
                if rho <= l.interface {
                    return 0.0;
                }
                let n = l.exponent as i32;
                let nf = f64::from(n);
                let s = l.depth(rho);
                let omega = 1.0 - s.powi(n);
                let denom = 1.0 + (nf - 1.0) * s.powi(n);
                // d/dρ [Ω²/D] with Ω' = -n s^{n-1}/L and D' = n(n-1) s^{n-1}/L.
                let ds = s.powi(n - 1) / l.width();
                -nf * ds * omega * (2.0 * denom + (nf - 1.0) * omega) / (denom * denom)
            }
        }
    }

    /// `1/(G g²)`, the coefficient of the angular and dimension terms.
    pub fn inv_jacobian_radius_sq(&self, rho: f64) -> f64 {
        let rho = rho.min(self.outer());
        match self.kind {
            MapKind::Rational => 1.0 / (rho * rho),
            MapKind::Tangent => 1.0 / rho.sin().powi(2),
            MapKind::Layer(l) => {
                let n = l.exponent as i32;
                let s = l.depth(rho);
                let omega = 1.0 - s.powi(n);
                // `G g² = (RΩ + ρ - R)²/D`, which is `ρ²` inside the interface.
                let shifted = l.interface * omega + (rho - l.interface);
                (1.0 + f64::from(n - 1) * s.powi(n)) / (shifted * shifted)
            }
        }
    }

    /// Compact coordinate of the physical radius `r`.
    pub fn inverse(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::domain(format!("radius must be non-negative, got {r}")));
        }
        if r.is_infinite() {
            return Ok(self.outer());
        }
        Ok(match self.kind {
            MapKind::Rational => r / (1.0 + r),
            MapKind::Tangent => r.atan(),
            MapKind::Layer(l) => {
                if r <= l.interface {
                    r
                } else {
                    // (S-R) s / (1 - s^n) = r - R is increasing in s on [0, 1).
                    let target = r - l.interface;
                    let n = l.exponent as i32;
                    let f = |s: f64| l.width() * s / (1.0 - s.powi(n)) - target;
                    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if f(mid) > 0.0 {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    l.interface + 0.5 * (lo + hi) * l.width()
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HeightKind {
    /// `h = g - ρ/K`, boost `H = 1 - G/K`.
    Hyperboloidal { speed: f64 },
    /// `h = g + offset`, boost `H = 1`.
    Characteristic { offset: f64 },
    /// `h = g - ρ/K` on a layer map; zero in the interior when `K = 1`.
    Layer { speed: f64 },
    /// `h = slope·g + offset`. Only `slope = 1` satisfies the boost conditions.
    Linear { slope: f64, offset: f64 },
}

/// Phase function `h(ρ)` of the rescaling `u = g^{(d-1)/2} e^{-ikh} U`,
/// bound to the map it is defined on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightFunction {
    kind: HeightKind,
    map: CompactificationMap,
}

impl HeightFunction {
    pub fn new(kind: HeightKind, map: CompactificationMap) -> Result<Self> {
        match kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => {
                if !(speed > 0.0 && speed.is_finite()) {
                    return Err(Error::config(format!("speed parameter K must be positive, got {speed}")));
                }
            }
            HeightKind::Characteristic { offset } | HeightKind::Linear { offset, .. } => {
                if !offset.is_finite() {
                    return Err(Error::config("height offset must be finite"));
                }
            }
        }
        if let HeightKind::Layer { .. } = kind {
            if map.layer_config().is_none() {
                return Err(Error::config("layer height requires a layer map"));
            }
        }
        Ok(Self { kind, map })
    }

    pub fn hyperboloidal(speed: f64, map: CompactificationMap) -> Result<Self> {
        Self::new(HeightKind::Hyperboloidal { speed }, map)
    }

    pub fn characteristic(map: CompactificationMap) -> Result<Self> {
        Self::new(HeightKind::Characteristic { offset: 0.0 }, map)
    }

    pub fn layer(map: CompactificationMap) -> Result<Self> {
        Self::new(HeightKind::Layer { speed: 1.0 }, map)
    }

    pub fn kind(&self) -> HeightKind {
        self.kind
    }

    pub fn map(&self) -> &CompactificationMap {
        &self.map
    }

    /// The speed parameter `K`, if the height has one.
    pub fn speed(&self) -> Option<f64> {
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => Some(speed),
            _ => None,
        }
    }

    /// `h(ρ)`; infinite at `S`.
    pub fn height(&self, rho: f64) -> f64 {
        let g = self.map.radius(rho);
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => g - rho / speed,
            HeightKind::Characteristic { offset } => g + offset,
            HeightKind::Linear { slope, offset } => slope * g + offset,
        }
    }

    /// Boost `H = G h'`.
    pub fn boost(&self, rho: f64) -> f64 {
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => {
                1.0 - self.map.inv_jacobian(rho) / speed
            }
            HeightKind::Characteristic { .. } => 1.0,
            HeightKind::Linear { slope, .. } => slope,
        }
    }

    /// `dH/dρ`.
    pub fn boost_derivative(&self, rho: f64) -> f64 {
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => {
                -self.map.inv_jacobian_derivative(rho) / speed
            }
            _ => 0.0,
        }
    }

    /// `(1 - H²)/G` in cancelled form; for the hyperboloidal family this is
    /// `2/K - G/K²`.
    pub fn boost_deficit(&self, rho: f64) -> f64 {
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => {
                2.0 / speed - self.map.inv_jacobian(rho) / (speed * speed)
            }
            HeightKind::Characteristic { .. } => 0.0,
            HeightKind::Linear { slope, .. } => {
                if slope == 1.0 {
                    0.0
                } else {
                    (1.0 - slope * slope) / self.map.inv_jacobian(rho)
                }
            }
        }
    }

    /// `g - h` in closed form, finite at `S` for every regular height.
    pub fn phase_lag(&self, rho: f64) -> f64 {
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => rho / speed,
            HeightKind::Characteristic { offset } => -offset,
            HeightKind::Linear { slope, offset } if slope == 1.0 => -offset,
            HeightKind::Linear { slope, offset } => (1.0 - slope) * self.map.radius(rho) - offset,
        }
    }

    /// `lim (h - g)` at `S`: the constant phase relating `u(S)` to the
    /// far-field pattern. `None` when the limit does not exist.
    pub fn asymptotic_phase_offset(&self) -> Option<f64> {
        match self.kind {
            HeightKind::Hyperboloidal { speed } | HeightKind::Layer { speed } => {
                Some(-self.map.outer() / speed)
            }
            HeightKind::Characteristic { offset } => Some(offset),
            HeightKind::Linear { slope, offset } => (slope == 1.0).then_some(offset),
        }
    }

    pub fn check_boost_conditions(&self, sample_count: usize) -> Result<BoostReport> {
        check_boost_conditions(self, sample_count)
    }
}

/// Outcome of checking `H ≤ 1`, `H(S) = 1` and `G dH/dρ → 0` at `S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoostReport {
    pub samples: usize,
    /// `max H - 1` over the samples; must not exceed the tolerance.
    pub max_boost_excess: f64,
    /// `|H(S) - 1|`.
    pub outer_boost_error: f64,
    /// `|G dH/dρ|` at `S`.
    pub outer_boost_slope: f64,
    pub pass: bool,
}

impl BoostReport {
    pub const EXCESS_TOLERANCE: f64 = 1e-12;
    pub const OUTER_TOLERANCE: f64 = 1e-14;
}

pub fn check_boost_conditions(height: &HeightFunction, sample_count: usize) -> Result<BoostReport> {
    if sample_count < 2 {
        return Err(Error::config("boost check needs at least two samples"));
    }
    let map = height.map();
    let (a, s) = (map.rho_in(), map.outer());
    let step = (s - a) / (sample_count - 1) as f64;
    let max_boost = (0..sample_count)
        .map(|j| if j + 1 == sample_count { s } else { a + step * j as f64 })
        .map(|rho| height.boost(rho))
        .fold(f64::NEG_INFINITY, f64::max);
    let outer_boost_error = (height.boost(s) - 1.0).abs();
    let outer_boost_slope = (map.inv_jacobian(s) * height.boost_derivative(s)).abs();
    let max_boost_excess = max_boost - 1.0;
    let pass = max_boost_excess <= BoostReport::EXCESS_TOLERANCE
        && outer_boost_error < BoostReport::OUTER_TOLERANCE
        && outer_boost_slope < BoostReport::OUTER_TOLERANCE;
    Ok(BoostReport {
        samples: sample_count,
        max_boost_excess,
        outer_boost_error,
        outer_boost_slope,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// Values of `U` at `r = g(ρ)`.
    Physical,
    /// Values of the regular unknown `u`.
    Transformed,
}

/// Nodal values of a radial profile on compact-coordinate nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
    pub representation: Representation,
    pub dimension: u32,
    pub wavenumber: f64,
}

impl FieldSample {
    pub fn new(
        nodes: Vec<f64>,
        values: Vec<Complex64>,
        representation: Representation,
        dimension: u32,
        wavenumber: f64,
    ) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::config(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        if !(1..=3).contains(&dimension) {
            return Err(Error::config(format!("dimension must be 1, 2 or 3, got {dimension}")));
        }
        if !(wavenumber > 0.0 && wavenumber.is_finite()) {
            return Err(Error::config(format!("wavenumber must be positive, got {wavenumber}")));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::config("nodes must be strictly increasing"));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::domain("field values must be finite"));
        }
        Ok(Self { nodes, values, representation, dimension, wavenumber })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Node removed during a conversion, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct DroppedNode {
    pub rho: f64,
    pub reason: &'static str,
}

/// Factor `u/U = g^{(d-1)/2} e^{-ikh}` at a node strictly inside the domain.
fn scale_factor(height: &HeightFunction, dimension: u32, k: f64, rho: f64) -> Complex64 {
    let r = height.map().radius(rho);
    let amplitude = r.powf(0.5 * f64::from(dimension - 1));
    Complex64::from_polar(amplitude, -k * height.height(rho))
}

/// `u = g^{(d-1)/2} e^{-ikh} U` at every node.
pub fn to_transformed(field: &FieldSample, height: &HeightFunction) -> Result<FieldSample> {
    if field.representation != Representation::Physical {
        return Err(Error::domain("to_transformed expects a physical field"));
    }
    let outer = height.map().outer();
    if let Some(rho) = field.nodes.iter().find(|&&rho| rho >= outer) {
        return Err(Error::domain(format!(
            "physical field is undefined at rho = {rho} (r = infinity)"
        )));
    }
    let values = field
        .nodes
        .iter()
        .zip(&field.values)
        .map(|(&rho, &u)| u * scale_factor(height, field.dimension, field.wavenumber, rho))
        .collect();
    Ok(FieldSample {
        nodes: field.nodes.clone(),
        values,
        representation: Representation::Transformed,
        dimension: field.dimension,
        wavenumber: field.wavenumber,
    })
}

/// Inverse of [`to_transformed`]. Nodes at `ρ = S` have no physical value and
/// are dropped; each one is reported.
pub fn to_physical(field: &FieldSample, height: &HeightFunction) -> Result<(FieldSample, Vec<DroppedNode>)> {
    if field.representation != Representation::Transformed {
        return Err(Error::domain("to_physical expects a transformed field"));
    }
    let outer = height.map().outer();
    let mut nodes = Vec::with_capacity(field.len());
    let mut values = Vec::with_capacity(field.len());
    let mut dropped = Vec::new();
    for (&rho, &u) in field.nodes.iter().zip(&field.values) {
        if rho >= outer {
            dropped.push(DroppedNode { rho, reason: "node at null infinity has no physical value" });
            continue;
        }
        nodes.push(rho);
        values.push(u / scale_factor(height, field.dimension, field.wavenumber, rho));
    }
    Ok((
        FieldSample {
            nodes,
            values,
            representation: Representation::Physical,
            dimension: field.dimension,
            wavenumber: field.wavenumber,
        },
        dropped,
    ))
}

/// Physical value `U` from a single transformed value; `None` at `ρ = S`.
pub fn physical_value(height: &HeightFunction, dimension: u32, k: f64, rho: f64, u: Complex64) -> Option<Complex64> {
    (rho < height.map().outer()).then(|| u / scale_factor(height, dimension, k, rho))
}

/// Transformed value `u` from a single physical value at `ρ < S`.
pub fn transformed_value(height: &HeightFunction, dimension: u32, k: f64, rho: f64, big_u: Complex64) -> Complex64 {
    big_u * scale_factor(height, dimension, k, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn layer_map() -> CompactificationMap {
        CompactificationMap::layer(1.0, LayerConfig::new(2.0, 2.2, 2).unwrap()).unwrap()
    }

    #[test]
    fn rational_map_values() {
        let map = CompactificationMap::rational(0.0).unwrap();
        assert_eq!(map.radius(0.5), 1.0);
        assert_eq!(map.inv_jacobian(0.5), 0.25);
        assert_eq!(map.conformal_factor(0.5), 0.5);
        assert_eq!(map.outer(), 1.0);
        assert_eq!(map.inv_jacobian(1.0), 0.0);
        assert_eq!(map.conformal_factor(1.0), 0.0);
        assert!(map.radius(1.0).is_infinite());
    }

    #[test]
    fn tangent_map_values() {
        let map = CompactificationMap::tangent(0.0).unwrap();
        assert!((map.radius(FRAC_PI_4) - 1.0).abs() < 1e-15);
        assert!((map.inv_jacobian(FRAC_PI_4) - 0.5).abs() < 1e-15);
        assert_eq!(map.inv_jacobian(FRAC_PI_2), 0.0);
    }

    #[test]
    fn layer_map_matches_interface() {
        let map = layer_map();
        assert_eq!(map.radius(2.0), 2.0);
        // Central difference just above R.
        let (rho, eps) = (2.0 + 1e-4, 1e-6);
        let slope = (map.radius(rho + eps) - map.radius(rho - eps)) / (2.0 * eps);
        assert!((slope - 1.0).abs() < 1e-6, "slope {slope}");
        assert_eq!(map.inv_jacobian(2.2), 0.0);
    }

    #[test]
    fn invalid_layers_are_rejected() {
        assert!(matches!(LayerConfig::new(2.2, 2.0, 2), Err(Error::Config(_))));
        assert!(matches!(LayerConfig::new(2.0, 2.2, 0), Err(Error::Config(_))));
        let l = LayerConfig::new(2.0, 2.2, 2).unwrap();
        assert!(CompactificationMap::layer(2.1, l).is_err());
    }

    #[test]
    fn inverse_maps_back() {
        for map in [
            CompactificationMap::rational(0.0).unwrap(),
            CompactificationMap::tangent(0.0).unwrap(),
            CompactificationMap::layer(0.5, LayerConfig::new(2.0, 2.2, 3).unwrap()).unwrap(),
        ] {
            for r in [0.3, 1.0, 2.0, 7.5, 120.0] {
                let rho = map.inverse(r).unwrap();
                assert!((map.radius(rho) - r).abs() < 1e-9 * r, "{:?} r = {r}", map.kind());
            }
        }
        let map = CompactificationMap::with_physical_inner(MapKind::Rational, 1.0).unwrap();
        assert_eq!(map.rho_in(), 0.5);
    }

    #[test]
    fn hyperboloidal_height_values() {
        let map = CompactificationMap::rational(0.0).unwrap();
        let h = HeightFunction::hyperboloidal(1.0, map).unwrap();
        assert!((h.height(0.5) - 0.5).abs() < 1e-15);
        // H = G h' = 1 - G/K = 1 - 0.25.
        assert!((h.boost(0.5) - 0.75).abs() < 1e-15);
        let h40 = HeightFunction::hyperboloidal(40.0, map).unwrap();
        assert!((h40.boost(0.0) - 0.975).abs() < 1e-15);
        assert_eq!(h40.boost(1.0), 1.0);
    }

    #[test]
    fn boost_matches_jacobian_times_height_slope() {
        let map = CompactificationMap::rational(0.1).unwrap();
        let h = HeightFunction::hyperboloidal(3.0, map).unwrap();
        for rho in [0.2, 0.4, 0.7, 0.9] {
            let eps = 1e-6;
            let slope = (h.height(rho + eps) - h.height(rho - eps)) / (2.0 * eps);
            assert!((map.inv_jacobian(rho) * slope - h.boost(rho)).abs() < 1e-7);
        }
    }

    #[test]
    fn characteristic_and_layer_heights() {
        let map = CompactificationMap::rational(0.0).unwrap();
        let c = HeightFunction::characteristic(map).unwrap();
        for rho in [0.0, 0.3, 0.99] {
            assert_eq!(c.boost(rho), 1.0);
        }
        let lh = HeightFunction::layer(layer_map()).unwrap();
        assert_eq!(lh.height(1.5), 0.0);
        assert_eq!(lh.boost(1.5), 0.0);
        assert!(HeightFunction::layer(map).is_err());
    }

    #[test]
    fn nonpositive_speed_is_rejected() {
        let map = CompactificationMap::rational(0.0).unwrap();
        assert!(matches!(HeightFunction::hyperboloidal(0.0, map), Err(Error::Config(_))));
        assert!(matches!(HeightFunction::hyperboloidal(-1.0, map), Err(Error::Config(_))));
    }

    #[test]
    fn boost_conditions() {
        let map = CompactificationMap::rational(0.0).unwrap();
        let report = HeightFunction::hyperboloidal(1.0, map).unwrap().check_boost_conditions(101).unwrap();
        assert!(report.pass);
        assert_eq!(report.outer_boost_error, 0.0);

        let broken = HeightFunction::new(HeightKind::Linear { slope: 2.0, offset: 0.0 }, map).unwrap();
        let report = broken.check_boost_conditions(11).unwrap();
        assert!(!report.pass);
        assert_eq!(report.max_boost_excess, 1.0);
        assert!(broken.check_boost_conditions(1).is_err());
    }

    #[test]
    fn plane_wave_flattens() {
        let k = 7.0;
        let map = CompactificationMap::rational(0.2).unwrap();
        let nodes: Vec<f64> = (0..20).map(|j| 0.2 + 0.04 * j as f64).collect();
        let big_u: Vec<Complex64> =
            nodes.iter().map(|&rho| Complex64::from_polar(1.0, k * map.radius(rho))).collect();
        let field = FieldSample::new(nodes.clone(), big_u, Representation::Physical, 1, k).unwrap();

        let hyp = HeightFunction::hyperboloidal(1.0, map).unwrap();
        let u = to_transformed(&field, &hyp).unwrap();
        for (&rho, v) in nodes.iter().zip(&u.values) {
            assert!((v - Complex64::from_polar(1.0, k * rho)).norm() < 1e-12);
        }

        let chr = HeightFunction::characteristic(map).unwrap();
        let u = to_transformed(&field, &chr).unwrap();
        assert!(u.values.iter().all(|v| (v - 1.0).norm() < 1e-12));
    }

    #[test]
    fn spherical_wave_becomes_constant() {
        let k = 3.0;
        let map = CompactificationMap::rational(0.1).unwrap();
        let h = HeightFunction::characteristic(map).unwrap();
        let nodes = vec![0.1, 0.5, 0.9, 1.0];
        let u = FieldSample::new(nodes, vec![Complex64::new(1.0, 0.0); 4], Representation::Transformed, 3, k)
            .unwrap();
        let (phys, dropped) = to_physical(&u, &h).unwrap();
        assert_eq!(dropped.len(), 1);
        assert_eq!(phys.len(), 3);
        for (&rho, v) in phys.nodes.iter().zip(&phys.values) {
            let r = map.radius(rho);
            assert!((v - Complex64::from_polar(1.0 / r, k * r)).norm() < 1e-12);
        }
    }

    #[test]
    fn physical_field_rejects_outer_node() {
        let map = CompactificationMap::rational(0.5).unwrap();
        let h = HeightFunction::hyperboloidal(1.0, map).unwrap();
        let f = FieldSample::new(vec![0.5, 1.0], vec![Complex64::new(1.0, 0.0); 2], Representation::Physical, 1, 1.0)
            .unwrap();
        assert!(matches!(to_transformed(&f, &h), Err(Error::Domain(_))));
    }

    #[test]
    fn layer_angular_coefficient_on_both_sides() {
        let map = CompactificationMap::layer(1.0, LayerConfig::new(2.0, 2.2, 2).unwrap()).unwrap();
        for rho in [1.0, 1.5, 2.0, 2.05, 2.15, 2.19] {
            let direct = 1.0 / (map.inv_jacobian(rho) * map.radius(rho).powi(2));
            assert!((map.inv_jacobian_radius_sq(rho) - direct).abs() < 1e-13 * direct, "{rho}");
        }
    }
}
