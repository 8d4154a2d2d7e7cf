use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

fn check(k: f64, rho: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("wavenumber must be positive, got {k}")));
    }
    if !(0.0..FRAC_PI_2).contains(&rho) {
        return Err(Error::domain(format!("rho = {rho} outside [0, pi/2)")));
    }
    Ok(())
}

/// Local wavenumbers of the equation compactified by `r = tan ρ` without
/// phase rescaling, the roots of `cos²ρ ξ² + 2i cosρ sinρ ξ - k²/cos²ρ = 0`:
/// `ξ± = ±√(k²/cos⁴ρ - tan²ρ) - i tanρ`.
pub fn dispersion_compactified(k: f64, rho: f64) -> Result<(Complex64, Complex64)> {
    check(k, rho)?;
    let (c, t) = (rho.cos(), rho.tan());
    let root = Complex64::new(k * k / c.powi(4) - t * t, 0.0).sqrt();
    let i_tan = Complex64::new(0.0, t);
    Ok((root - i_tan, -root - i_tan))
}

/// Local wavenumbers of the transformed equation, the roots of
/// `(k-ξ)² sin²ρ + i sin 2ρ (k-ξ) + k² - ξ² = 0`: `ξ+ = k` and
/// `ξ- = -(k(1 + sin²ρ) + i sin 2ρ)/cos²ρ`.
pub fn dispersion_transformed(k: f64, rho: f64) -> Result<(Complex64, Complex64)> {
    check(k, rho)?;
    let (s, c) = rho.sin_cos();
    let minus = -Complex64::new(k * (1.0 + s * s), (2.0 * rho).sin()) / (c * c);
    Ok((Complex64::new(k, 0.0), minus))
}
