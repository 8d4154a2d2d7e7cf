//! Oracles shared by the integration tests.

#![allow(dead_code)]

use nic_core::specfun::hankel1;
use nic_core::{Complex64, HeightFunction};
use std::path::PathBuf;

pub struct BesselRow {
    pub m: u32,
    pub z: f64,
    pub j: f64,
    pub y: f64,
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

/// Rows of a Bessel table written by `fixtures/gen_bessel.py`.
pub fn bessel_table(name: &str) -> Vec<BesselRow> {
    let mut reader = csv::Reader::from_path(fixture(name)).expect("fixture exists");
    reader
        .records()
        .map(|rec| {
            let rec = rec.expect("well-formed row");
            BesselRow {
                m: rec[0].parse().unwrap(),
                z: rec[1].parse().unwrap(),
                j: rec[2].parse().unwrap(),
                y: rec[3].parse().unwrap(),
            }
        })
        .collect()
}

/// `(u, u', u'')` in `ρ` of `u = g^{(d-1)/2} e^{-ikh} U(g)` given `V = r^{(d-1)/2} U`
/// and `V'` in `r`, and `V'' = -q(r) V`.
fn chain(height: &HeightFunction, k: f64, rho: f64, v: Complex64, dv: Complex64, q: f64) -> [Complex64; 3] {
    let map = height.map();
    let (g_inv, g_inv_d) = (map.inv_jacobian(rho), map.inv_jacobian_derivative(rho));
    let (boost, boost_d) = (height.boost(rho), height.boost_derivative(rho));
    let dg = 1.0 / g_inv;
    let d2g = -g_inv_d / (g_inv * g_inv);
    let dh = boost / g_inv;
    let d2h = boost_d / g_inv - boost * g_inv_d / (g_inv * g_inv);
    let i = Complex64::new(0.0, 1.0);
    let d2v = -q * v;
    let phase = Complex64::from_polar(1.0, -k * height.height(rho));
    let u = phase * v;
    let du = phase * (-i * k * dh * v + dg * dv);
    let d2u = phase
        * ((-i * k * dh).powi(2) * v - i * k * d2h * v - 2.0 * i * k * dh * dg * dv + d2g * dv + dg * dg * d2v);
    [u, du, d2u]
}

/// Closed-form `(u, u', u'')` of the 1D plane wave `U = e^{ikr}`, written as
/// `u = e^{ik(g-h)}` with `(g - h)' = (1 - H)/G` so nothing cancels near `S`.
pub fn plane_wave_jet(height: &HeightFunction, k: f64, rho: f64) -> [Complex64; 3] {
    let map = height.map();
    let (g_inv, g_inv_d) = (map.inv_jacobian(rho), map.inv_jacobian_derivative(rho));
    let boost = height.boost(rho);
    let a = height.boost_deficit(rho) / (1.0 + boost);
    let da = -height.boost_derivative(rho) / g_inv - a * g_inv_d / g_inv;
    let ik = Complex64::new(0.0, k);
    let u = Complex64::from_polar(1.0, k * height.phase_lag(rho));
    [u, ik * a * u, (ik * da + (ik * a).powi(2)) * u]
}

/// Closed-form `(u, u', u'')` of the 2D mode `U = H_m^{(1)}(kr)`.
pub fn hankel_jet(height: &HeightFunction, k: f64, m: u32, rho: f64) -> [Complex64; 3] {
    let r = height.map().radius(rho);
    let z = k * r;
    let h = hankel1(m, z).unwrap();
    let dh = if m == 0 { -hankel1(1, z).unwrap() } else { hankel1(m - 1, z).unwrap() - f64::from(m) / z * h };
    let s = r.sqrt();
    let v = s * h;
    let dv = h / (2.0 * s) + s * k * dh;
    let mu = f64::from(m * m) - 0.25;
    chain(height, k, rho, v, dv, k * k - mu / (r * r))
}
