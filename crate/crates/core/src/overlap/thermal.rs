//! Thermal averages of the pair overlap `S₁₂` over an isotropic Gaussian
//! cloud, and the low-density expansion of `C↑↓` built on them.
//!
//! With `ζ = k σ_rel` the averages reduce to
//! `I₀ = ⟨j₀²⟩ = (1 − e^{−2ζ²})/(2ζ²)` and
//! `I₂ = ⟨j₂²⟩ = −3/ζ⁴ + (1/ζ² + 3/ζ⁴ + 3/ζ⁶)(1 − e^{−2ζ²})/2`.

use super::bessel::legendre_p2;
use super::polarization::Polarization;
use crate::error::{Error, Result};

/// Coefficients of `(1 − e^{−2s})/2 = Σ_{n≥1} g_n sⁿ`.
fn g(n: i32) -> f64 {
    if n < 1 {
        return 0.0;
    }
    let mut c = 0.5;
    for m in 1..=n {
        c *= 2.0 / m as f64;
    }
    if n % 2 == 0 {
        -c
    } else {
        c
    }
}

/// `⟨j₀²⟩` over the relative-coordinate Gaussian.
pub fn mean_j0_sq(zeta: f64) -> f64 {
    let s = zeta * zeta;
    -(-2.0 * s).exp_m1() / (2.0 * s)
}

/// `⟨j₂²⟩`. The closed form cancels as `ζ⁴/15` against `3/ζ⁴` for small
/// `ζ`, so below `ζ = 1` the power series in `s = ζ²` is used instead.
pub fn mean_j2_sq(zeta: f64) -> f64 {
    let s = zeta * zeta;
    if zeta >= 1.0 {
        let half = -0.5 * (-2.0 * s).exp_m1();
        let inv = 1.0 / s;
        -3.0 * inv * inv + (inv + 3.0 * inv * inv + 3.0 * inv * inv * inv) * half
    } else {
        let mut sum = 0.0;
        let mut pow = s * s;
        for m in 2..40 {
            let term = (g(m + 1) + 3.0 * g(m + 2) + 3.0 * g(m + 3)) * pow;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
            pow *= s;
        }
        sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalAverage {
    /// `S̄₁₂` (real: the phase average kills the imaginary part).
    pub mean: f64,
    /// `mean |S₁₂|²`.
    pub mean_sq: f64,
    pub rms: f64,
    /// Leading `ζ ≫ 1` terms of `mean` and `rms`.
    pub mean_low_density: f64,
    pub rms_low_density: f64,
}

/// Thermal mean and mean square of `S₁₂` for density parameter `ζ`,
/// polarization `ε` and incident direction `e_in`.
///
/// `mean = I₀ − P₂(|e_in·ε|) I₂`,
/// `mean_sq = I₀ + (1 + P₂(|ε·ε|))/10 · I₂`.
pub fn thermal_average_s12(
    zeta: f64,
    eps: &Polarization,
    e_in: [f64; 3],
) -> Result<ThermalAverage> {
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::invalid("zeta", zeta, "must be finite and > 0"));
    }
    let e_norm = (e_in[0] * e_in[0] + e_in[1] * e_in[1] + e_in[2] * e_in[2]).sqrt();
    if (e_norm - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("|e_in|", e_norm, "must be a unit vector"));
    }
    let p_in = legendre_p2(eps.projection(e_in));
    let weight = (1.0 + legendre_p2(eps.self_product())) / 10.0;
    let (i0, i2) = (mean_j0_sq(zeta), mean_j2_sq(zeta));
    let mean_sq = i0 + weight * i2;
    let z2 = zeta * zeta;
    Ok(ThermalAverage {
        mean: i0 - p_in * i2,
        mean_sq,
        rms: mean_sq.sqrt(),
        mean_low_density: (1.0 - p_in) / (2.0 * z2),
        rms_low_density: ((11.0 + legendre_p2(eps.self_product())) / 20.0).sqrt() / zeta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrder {
    /// `−(N − 2)/(4N(N − 1)³) · mean|S₁₂|²`.
    pub c2: f64,
    /// `−mean|S₁₂|²/(4N³)`.
    pub c2_large_n: f64,
    /// `c₃ = mean|S₁₂|²/4`.
    pub c3: f64,
}

/// Second-order low-density term of the thermally averaged `C↑↓`.
pub fn second_order_expansion(
    zeta: f64,
    n_atoms: usize,
    eps: &Polarization,
) -> Result<SecondOrder> {
    if n_atoms < 2 {
        return Err(Error::invalid("n_atoms", n_atoms as f64, "must be >= 2"));
    }
    if zeta < 5.0 {
        log::warn!("zeta = {zeta} is outside the low-density regime; the expansion is unreliable");
    }
    // mean|S₁₂|² does not depend on the incident direction.
    let ms = thermal_average_s12(zeta, eps, [0.0, 0.0, 1.0])?.mean_sq;
    let n = n_atoms as f64;
    Ok(SecondOrder {
        c2: -(n - 2.0) / (4.0 * n * (n - 1.0).powi(3)) * ms,
        c2_large_n: -ms / (4.0 * n * n * n),
        c3: ms / 4.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_zeta() -> f64 {
        let sigma_bar = (3.3f64 * 4.5 * 1.7).cbrt();
        2f64.sqrt() * 2.0 * std::f64::consts::PI / 0.78 * sigma_bar
    }

    #[test]
    fn paper_closed_form_for_transverse_light() {
        let z = 2.3;
        let t = thermal_average_s12(z, &Polarization::circular(), [0.0, 0.0, -1.0]).unwrap();
        let e = 1.0 - (-2.0 * z * z).exp();
        let expected =
            -1.5 / z.powi(4) + (3.0 / z.powi(2) + 3.0 / z.powi(4) + 3.0 / z.powi(6)) * e / 4.0;
        assert!((t.mean - expected).abs() < 1e-15);
    }

    #[test]
    fn series_and_closed_form_agree_near_switch() {
        let closed = |z: f64| {
            let s = z * z;
            -3.0 / (s * s)
                + (1.0 / s + 3.0 / (s * s) + 3.0 / (s * s * s)) * (1.0 - (-2.0 * s).exp()) / 2.0
        };
        let z = 0.999_999;
        assert!((mean_j2_sq(z) / closed(z) - 1.0).abs() < 1e-12);
        assert!((mean_j2_sq(1e-3) / (1e-12 / 15.0) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn reference_numbers() {
        let z = reference_zeta();
        assert!((z - 33.0).abs() < 0.5);
        let t = thermal_average_s12(z, &Polarization::circular(), [0.0, 0.0, -1.0]).unwrap();
        assert!((t.mean_low_density - 6.7e-4).abs() < 0.05e-4);
        assert!((t.rms_low_density - (21.0f64 / 40.0).sqrt() / z).abs() < 1e-16);
        assert!((t.rms - 0.022).abs() < 0.0005);
        let so = second_order_expansion(z, 260, &Polarization::circular()).unwrap();
        assert!((so.c3 - 1.2e-4).abs() < 0.05e-4);
    }

    #[test]
    fn dilute_limit_vanishes() {
        let t = thermal_average_s12(1e6, &Polarization::linear_x(), [0.0, 0.0, 1.0]).unwrap();
        assert!(t.mean.abs() < 1e-11);
        assert!(t.rms < 1e-5);
    }

    #[test]
    fn dense_limit_is_full_overlap() {
        let t = thermal_average_s12(1e-4, &Polarization::circular(), [0.0, 0.0, 1.0]).unwrap();
        assert!((t.mean - 1.0).abs() < 1e-7);
        assert!((t.mean_sq - 1.0).abs() < 1e-7);
    }

    #[test]
    fn second_order_vanishes_for_two_atoms() {
        let so = second_order_expansion(33.0, 2, &Polarization::circular()).unwrap();
        assert_eq!(so.c2, 0.0);
        assert!(second_order_expansion(33.0, 1, &Polarization::circular()).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = Polarization::circular();
        assert!(thermal_average_s12(0.0, &p, [0.0, 0.0, 1.0]).is_err());
        assert!(thermal_average_s12(1.0, &p, [0.0, 0.0, 2.0]).is_err());
    }
}
