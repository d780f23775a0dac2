use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex polarization unit vector, `ε*·ε = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Polarization {
    eps: [Complex64; 3],
}

fn norm(v: &[Complex64; 3]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

impl Polarization {
    /// Accepts an already normalized vector.
    pub fn new(eps: [Complex64; 3]) -> Result<Self> {
        let n = norm(&eps);
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(
                "polarization norm",
                n,
                "must equal 1 within 1e-12",
            ));
        }
        Ok(Polarization { eps })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(eps: [Complex64; 3]) -> Result<Self> {
        let n = norm(&eps);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::invalid(
                "polarization norm",
                n,
                "must be finite and nonzero",
            ));
        }
        Ok(Polarization {
            eps: eps.map(|c| c / n),
        })
    }

    /// `(1, i, 0)/√2`.
    pub fn circular() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Polarization {
            eps: [
                Complex64::new(s, 0.0),
                Complex64::new(0.0, s),
                Complex64::new(0.0, 0.0),
            ],
        }
    }

    pub fn linear_x() -> Self {
        Polarization {
            eps: [
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        }
    }

    pub fn vector(&self) -> [Complex64; 3] {
        self.eps
    }

    /// `|ε·ε|` without conjugation: 1 for linear, 0 for circular.
    pub fn self_product(&self) -> f64 {
        self.eps.iter().map(|c| c * c).sum::<Complex64>().norm()
    }

    /// `|e·ε|` for a real unit vector `e`.
    pub fn projection(&self, e: [f64; 3]) -> f64 {
        e.iter()
            .zip(&self.eps)
            .map(|(a, b)| *a * b)
            .sum::<Complex64>()
            .norm()
    }
}
