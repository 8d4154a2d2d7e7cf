mod common;

use nic_core::specfun::{
    bessel_j, bessel_jy_orders, bessel_y, hankel1, hankel1_scaled, hankel1_scaled_orders, CERTIFIED_MAX_ARG,
    CERTIFIED_MAX_ORDER,
};
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn fixture_table_within_certified_envelope() {
    let rows = common::bessel_table("bessel_jy.csv");
    assert!(rows.len() > 300);
    for row in rows {
        assert!(row.m <= CERTIFIED_MAX_ORDER && row.z <= CERTIFIED_MAX_ARG);
        let (j, y) = (bessel_j(row.m, row.z).unwrap(), bessel_y(row.m, row.z).unwrap());
        assert!(rel(j, row.j) <= 1e-10, "J_{}({}) = {j:e}, expected {:e}", row.m, row.z, row.j);
        assert!(rel(y, row.y) <= 1e-10, "Y_{}({}) = {y:e}, expected {:e}", row.m, row.z, row.y);
    }
}

#[test]
fn order_sweep_matches_single_evaluations() {
    // The recurrence start depends on the top order, so agreement is to
    // rounding, not bitwise.
    for z in [0.5, 7.0, 44.0, 310.0] {
        let (j, y) = bessel_jy_orders(120, z).unwrap();
        for m in [0u32, 1, 17, 60, 120] {
            assert!(rel(j[m as usize], bessel_j(m, z).unwrap()) < 1e-13);
            assert!(rel(y[m as usize], bessel_y(m, z).unwrap()) < 1e-13);
        }
    }
}

#[test]
fn large_arguments_keep_the_hankel_modulus() {
    for row in common::bessel_table("bessel_jy_large.csv") {
        let modulus = row.j.hypot(row.y);
        let h = hankel1_scaled(row.m, row.z).unwrap();
        assert!(rel(h.norm(), modulus) < 1e-10, "m = {}, z = {}", row.m, row.z);
    }
}

#[test]
fn scaled_and_unscaled_hankel_agree() {
    for z in [0.7, 12.0, 80.0, 399.0] {
        let scaled = hankel1_scaled_orders(80, z).unwrap();
        for m in (0..=80).step_by(7) {
            let direct = hankel1(m, z).unwrap() * nic_core::Complex64::from_polar(1.0, -z);
            let s = scaled[m as usize];
            assert!((s - direct).norm() <= 1e-13 * direct.norm(), "m = {m}, z = {z}");
        }
    }
}

#[test]
fn scaled_hankel_approaches_its_leading_term() {
    // H̄_m(z) √(πz/2) e^{iπ(m/2+1/4)} = 1 + i(4m² - 1)/(8z) + O(z^-2).
    for m in [0u32, 3, 10] {
        for z in [2e3, 1e4, 1e5] {
            let h = hankel1_scaled(m, z).unwrap();
            let phase = PI * (0.5 * f64::from(m) + 0.25);
            let ratio = h * (PI * z / 2.0).sqrt() * nic_core::Complex64::from_polar(1.0, phase);
            let mu = 4.0 * f64::from(m * m);
            let two_term = nic_core::Complex64::new(1.0, (mu - 1.0) / (8.0 * z));
            assert!((ratio - two_term).norm() < 2.0 * (mu + 9.0).powi(2) / (128.0 * z * z), "m = {m}, z = {z}");
        }
    }
}

#[test]
fn out_of_envelope_orders_are_rejected() {
    assert!(bessel_j(201, 3.0).is_err());
    assert!(hankel1(0, -1.0).is_err());
    assert!(hankel1(0, 0.0).is_err());
}
