//! Closed-form solutions inserted into the assembled operators.

mod common;

use nic_core::geometry::LayerConfig;
use nic_core::reference::{hankel_mode, plane_wave_1d, RadialReference};
use nic_core::{coefficients_general, CompactificationMap, Complex64, HeightFunction, MapKind};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn heights(speed: f64) -> Vec<HeightFunction> {
    let layer = LayerConfig::new(2.0, 2.2, 2).unwrap();
    let rational = CompactificationMap::with_physical_inner(MapKind::Rational, 1.0).unwrap();
    let tangent = CompactificationMap::with_physical_inner(MapKind::Tangent, 1.0).unwrap();
    let layered = CompactificationMap::with_physical_inner(MapKind::Layer(layer), 1.0).unwrap();
    vec![
        HeightFunction::hyperboloidal(speed, rational).unwrap(),
        HeightFunction::hyperboloidal(speed, tangent).unwrap(),
        HeightFunction::characteristic(rational).unwrap(),
        HeightFunction::layer(layered).unwrap(),
    ]
}

fn sample(rng: &mut StdRng, height: &HeightFunction) -> f64 {
    let (a, s) = (height.map().rho_in(), height.map().outer());
    rng.gen_range(a..s - 0.01 * (s - a))
}

#[test]
fn plane_wave_in_one_dimension() {
    let mut rng = StdRng::seed_from_u64(1);
    for k in [1.0, 10.0, 40.0] {
        for height in heights(k) {
            let op = coefficients_general(1, 0, k, &height, None).unwrap();
            for _ in 0..100 {
                let rho = sample(&mut rng, &height);
                let [u, du, d2u] = common::plane_wave_jet(&height, k, rho);
                let res = op.coefficients(rho).residual(u, du, d2u).norm();
                assert!(res < 1e-11 * k * k, "{:?} k = {k} rho = {rho}: {res:e}", height.kind());
            }
        }
    }
}

#[test]
fn hyperboloidal_plane_wave_is_exact_at_null_infinity() {
    let k = 40.0;
    let height = heights(k)[0];
    let op = coefficients_general(1, 0, k, &height, None).unwrap();
    let u = Complex64::from_polar(1.0, 1.0);
    let res = op.coefficients(1.0).residual(u, Complex64::new(0.0, 1.0) * u, -u);
    assert!(res.norm() < 1e-11 * k * k);
}

#[test]
fn spherical_wave_in_three_dimensions() {
    // r e^{ikr}/r rescales exactly like the 1D plane wave.
    let mut rng = StdRng::seed_from_u64(2);
    for height in heights(4.0) {
        let op = coefficients_general(3, 0, 4.0, &height, None).unwrap();
        for _ in 0..50 {
            let rho = sample(&mut rng, &height);
            let [u, du, d2u] = common::plane_wave_jet(&height, 4.0, rho);
            assert!(op.coefficients(rho).residual(u, du, d2u).norm() < 1e-11 * 16.0);
        }
    }
}

#[test]
fn hankel_modes_in_two_dimensions() {
    let mut rng = StdRng::seed_from_u64(3);
    for k in [1.0, 10.0, 40.0, 60.0] {
        for height in heights(1.0) {
            for m in [0u32, 1, 7, 20, 40] {
                let op = coefficients_general(2, m as i32, k, &height, None).unwrap();
                for _ in 0..10 {
                    let rho = sample(&mut rng, &height);
                    let [u, du, d2u] = common::hankel_jet(&height, k, m, rho);
                    let res = op.coefficients(rho).residual(u, du, d2u).norm();
                    assert!(res < 1e-8 * k * k * u.norm(), "{:?} k={k} m={m} rho={rho}: {res:e}", height.kind());
                }
            }
        }
    }
}

#[test]
fn references_match_the_closed_form_jets() {
    let mut rng = StdRng::seed_from_u64(4);
    for height in heights(3.0) {
        let wave = plane_wave_1d(5.0, height);
        let mode = hankel_mode(5.0, -3, height).unwrap();
        for _ in 0..20 {
            let rho = sample(&mut rng, &height);
            let [u, ..] = common::plane_wave_jet(&height, 5.0, rho);
            assert!((wave.transformed(rho).unwrap() - u).norm() < 1e-12);
            // H_{-3} = -H_3.
            let [v, ..] = common::hankel_jet(&height, 5.0, 3, rho);
            assert!((mode.transformed(rho).unwrap() + v).norm() < 1e-11 * v.norm());
            let physical = mode.physical(rho).unwrap().unwrap();
            let r = height.map().radius(rho);
            assert!((physical + nic_core::specfun::hankel1(3, 5.0 * r).unwrap()).norm() < 1e-12 * physical.norm());
        }
    }
}
