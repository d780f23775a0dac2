//! Spherical Bessel functions `j₀` and `j₂` of real argument.
//!
//! Below `x = 0.5` both use their power series, which avoids the
//! cancellation in `(3/x³ − 1/x) sin x − 3 cos x/x²`. Above it the
//! trigonometric forms lose at most about three digits.

const SERIES_CUTOFF: f64 = 0.5;

/// `x^n Σ_k (−x²/2)^k / (k! (2n + 2k + 1)!!)`, summed until the terms stop
/// contributing.
fn series(n: u32, x: f64) -> f64 {
    let x2 = x * x;
    let mut double_factorial = 1.0;
    for m in (1..=2 * n + 1).step_by(2) {
        double_factorial *= m as f64;
    }
    let mut term = x.powi(n as i32) / double_factorial;
    let mut sum = term;
    for k in 0..20 {
        term *= -0.5 * x2 / ((k + 1) as f64 * (2 * n + 2 * k + 3) as f64);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

pub fn j0(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        series(0, x)
    } else {
        x.sin() / x
    }
}

pub fn j2(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        series(2, x)
    } else {
        let (s, c) = x.sin_cos();
        let inv = 1.0 / x;
        (3.0 * inv * inv * inv - inv) * s - 3.0 * inv * inv * c
    }
}

/// Legendre polynomial `P₂(z) = (3z² − 1)/2`.
pub fn legendre_p2(z: f64) -> f64 {
    0.5 * (3.0 * z * z - 1.0)
}
