//! Closed-form solutions: the 1D plane wave, single Hankel modes, the
//! sound-soft circle scattering series and the plane wave in PML, PAL and
//! null infinity layers.
//!
//! Transformed values use `g - h` from [`HeightFunction::phase_lag`], so
//! they stay accurate up to and including `ρ = S`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{CompactificationMap, HeightFunction, HeightKind, LayerConfig};
use crate::specfun::{bessel_j, hankel1, hankel1_scaled, hankel1_scaled_orders, MAX_ORDER};

/// `i^m` for any integer `m`.
pub fn i_pow(m: i32) -> Complex64 {
    match m.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(-1)^m` for negative `m`, else 1: `Z_{-m} = (-1)^m Z_m` for Bessel
/// functions of integer order.
pub fn reflection_sign(m: i32) -> f64 {
    if m < 0 && m % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

/// A radial reference on the compact coordinate.
pub trait RadialReference {
    /// Transformed value `u(ρ)`, finite at `ρ = S`.
    fn transformed(&self, rho: f64) -> Result<Complex64>;
    /// Physical value `U(g(ρ))`; `None` at `ρ = S`.
    fn physical(&self, rho: f64) -> Result<Option<Complex64>>;
}

/// `U = e^{ikr}` in one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave1d {
    pub k: f64,
    pub height: HeightFunction,
}

/// The plane wave under `height`; for the hyperboloidal height
/// `u(ρ) = e^{i(k/K)ρ}`.
pub fn plane_wave_1d(k: f64, height: HeightFunction) -> PlaneWave1d {
    PlaneWave1d { k, height }
}

impl RadialReference for PlaneWave1d {
    fn transformed(&self, rho: f64) -> Result<Complex64> {
        Ok(Complex64::from_polar(1.0, self.k * self.height.phase_lag(rho)))
    }

    fn physical(&self, rho: f64) -> Result<Option<Complex64>> {
        let map = self.height.map();
        Ok((rho < map.outer()).then(|| Complex64::from_polar(1.0, self.k * map.radius(rho))))
    }
}

/// `U = H_m^{(1)}(kr)` in two dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelMode {
    pub k: f64,
    pub m: i32,
    pub height: HeightFunction,
}

/// The outgoing Hankel mode; transformed,
/// `u(ρ) = √r e^{ik(g-h)} H̄_m^{(1)}(kr)`.
pub fn hankel_mode(k: f64, m: i32, height: HeightFunction) -> Result<HankelMode> {
    if m.unsigned_abs() > MAX_ORDER {
        return Err(Error::Unsupported(format!("order {m} exceeds {MAX_ORDER}")));
    }
    Ok(HankelMode { k, m, height })
}

/// `lim √r H̄_m^{(1)}(kr) = √(2/(πk)) e^{-iπ(m/2 + 1/4)}` as `r → ∞`.
pub fn hankel_far_amplitude(m: i32, k: f64) -> Complex64 {
    Complex64::from_polar((2.0 / (PI * k)).sqrt(), -PI * (0.5 * f64::from(m) + 0.25))
}

impl RadialReference for HankelMode {
    fn transformed(&self, rho: f64) -> Result<Complex64> {
        let map = self.height.map();
        let phase = Complex64::from_polar(1.0, self.k * self.height.phase_lag(rho));
        if rho >= map.outer() {
            return Ok(phase * hankel_far_amplitude(self.m, self.k));
        }
        let r = map.radius(rho);
        let h = hankel1_scaled(self.m.unsigned_abs(), self.k * r)? * reflection_sign(self.m);
        Ok(phase * r.sqrt() * h)
    }

    fn physical(&self, rho: f64) -> Result<Option<Complex64>> {
        let map = self.height.map();
        if rho >= map.outer() {
            return Ok(None);
        }
        Ok(Some(hankel1(self.m.unsigned_abs(), self.k * map.radius(rho))? * reflection_sign(self.m)))
    }
}

/// `c_m = -i^m J_m(kR_0)/H_m^{(1)}(kR_0)`; zero when `H_m` overflows.
pub fn scattering_coefficient(m: i32, k: f64, r0: f64) -> Result<Complex64> {
    let order = m.unsigned_abs();
    let z = k * r0;
    let j = bessel_j(order, z)?;
    match hankel1(order, z) {
        // J_{-m}/H_{-m} = J_m/H_m.
        Ok(h) if h.norm().is_finite() => Ok(-i_pow(m) * j / h),
        Ok(_) | Err(Error::Unsupported(_)) => Ok(Complex64::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Scattered field of the incident wave `e^{ikx}` off a sound-soft circle
/// of radius `R_0`: `U = Σ_{|m|≤M} c_m H_m^{(1)}(kr) e^{imθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringSeries {
    pub k: f64,
    pub r0: f64,
    pub max_mode: u32,
    pub height: HeightFunction,
    /// `c_m` for `m = -M..=M`.
    pub coefficients: Vec<Complex64>,
}

pub fn scattering_series(k: f64, r0: f64, max_mode: u32, height: HeightFunction) -> Result<ScatteringSeries> {
    if !(k > 0.0 && r0 > 0.0) {
        return Err(Error::config("k and R0 must be positive"));
    }
    if max_mode > MAX_ORDER {
        return Err(Error::Unsupported(format!("{max_mode} modes exceed order {MAX_ORDER}")));
    }
    let m = max_mode as i32;
    let coefficients = (-m..=m).map(|m| scattering_coefficient(m, k, r0)).collect::<Result<_>>()?;
    Ok(ScatteringSeries { k, r0, max_mode, height, coefficients })
}

impl ScatteringSeries {
    pub fn modes(&self) -> impl Iterator<Item = i32> {
        let m = self.max_mode as i32;
        -m..=m
    }

    pub fn coefficient(&self, m: i32) -> Complex64 {
        self.coefficients[(m + self.max_mode as i32) as usize]
    }

    /// Transformed radial profiles `c_m √r e^{ik(g-h)} H̄_m(kr)` for
    /// `m = -M..=M`.
    pub fn radial_profiles(&self, rho: f64) -> Result<Vec<Complex64>> {
        let map = self.height.map();
        let phase = Complex64::from_polar(1.0, self.k * self.height.phase_lag(rho));
        let at_infinity = rho >= map.outer();
        let scaled = if at_infinity {
            Vec::new()
        } else {
            let r = map.radius(rho);
            let h = hankel1_scaled_orders(self.max_mode, self.k * r)?;
            h.into_iter().map(|v| v * r.sqrt()).collect()
        };
        Ok(self
            .modes()
            .map(|m| {
                let radial = if at_infinity {
                    hankel_far_amplitude(m, self.k)
                } else {
                    scaled[m.unsigned_abs() as usize] * reflection_sign(m)
                };
                self.coefficient(m) * phase * radial
            })
            .collect())
    }

    pub fn transformed(&self, rho: f64, theta: f64) -> Result<Complex64> {
        let profiles = self.radial_profiles(rho)?;
        Ok(self.modes().zip(profiles).map(|(m, p)| p * Complex64::from_polar(1.0, f64::from(m) * theta)).sum())
    }

    /// `U(r, θ)` at a physical radius `r ≥ R_0`.
    pub fn physical_at_radius(&self, r: f64, theta: f64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for m in self.modes() {
            let c = self.coefficient(m);
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let h = hankel1(m.unsigned_abs(), self.k * r)? * reflection_sign(m);
            sum += c * h * Complex64::from_polar(1.0, f64::from(m) * theta);
        }
        Ok(sum)
    }

    /// Largest `|U(R_0, θ) + e^{ikR_0 cos θ}|` over `theta_count` angles.
    pub fn dirichlet_error(&self, theta_count: usize) -> Result<f64> {
        let mut worst = 0.0_f64;
        for l in 0..theta_count {
            let theta = 2.0 * PI * l as f64 / theta_count as f64;
            let u = self.physical_at_radius(self.r0, theta)?;
            let incident = Complex64::from_polar(1.0, self.k * self.r0 * theta.cos());
            worst = worst.max((u + incident).norm());
        }
        Ok(worst)
    }
}

/// Height used for the null infinity layer plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NilHeight {
    /// `h = g - ρ`, giving `u = e^{ikρ}`.
    #[default]
    Standard,
    /// `h = g + R`, giving the undamped constant `e^{-ikR}`.
    Shifted,
}

/// Plane wave `e^{ikx}` continued through an outer layer `ρ ∈ [R, S]` by a
/// PML, a PAL and a null infinity layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerTrio {
    pub k: f64,
    pub sigma: f64,
    pub interface: f64,
    pub outer: f64,
    pub nil_height: NilHeight,
    nil: HeightFunction,
}

pub const DEFAULT_SIGMA: f64 = 1.0;

pub fn layer_trio(k: f64, sigma: f64, interface: f64, outer: f64, nil_height: NilHeight) -> Result<LayerTrio> {
    if !(sigma > 0.0 && k > 0.0) {
        return Err(Error::config("k and sigma must be positive"));
    }
    let map = CompactificationMap::layer(0.0, LayerConfig::new(interface, outer, LayerConfig::DEFAULT_EXPONENT)?)?;
    let nil = match nil_height {
        NilHeight::Standard => HeightFunction::layer(map)?,
        NilHeight::Shifted => HeightFunction::new(HeightKind::Characteristic { offset: interface }, map)?,
    };
    Ok(LayerTrio { k, sigma, interface, outer, nil_height, nil })
}

impl LayerTrio {
    /// `T(ρ) = (S-R)(ρ-R)/(S-ρ)`, the PAL compression beyond `R`.
    pub fn pal_stretch(&self, rho: f64) -> f64 {
        if rho <= self.interface {
            0.0
        } else if rho >= self.outer {
            f64::INFINITY
        } else {
            (self.outer - self.interface) * (rho - self.interface) / (self.outer - rho)
        }
    }

    /// `U_PML(r) = e^{ikr} e^{-kσ(r-R)}` beyond `R`.
    pub fn pml(&self, r: f64) -> Complex64 {
        let damping = self.k * self.sigma * (r - self.interface).max(0.0);
        Complex64::from_polar((-damping).exp(), self.k * r)
    }

    /// `U_PAL(ρ) = e^{ikR} e^{-kσT(ρ)}`, zero at `S`.
    pub fn pal(&self, rho: f64) -> Complex64 {
        if rho <= self.interface {
            return Complex64::from_polar(1.0, self.k * rho);
        }
        Complex64::from_polar((-self.k * self.sigma * self.pal_stretch(rho)).exp(), self.k * self.interface)
    }

    /// `u_NIL(ρ) = e^{-ikh} e^{ikg}`.
    pub fn nil(&self, rho: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.k * self.nil.phase_lag(rho))
    }
}
