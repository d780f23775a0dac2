//! Monte Carlo over thermal clouds of point atoms.
//!
//! Run `r` draws its positions from a ChaCha8 generator seeded with the
//! master seed on stream `r`, so results do not depend on how runs are
//! scheduled across threads. Per-run results are collected in run order and
//! reduced sequentially.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::collective::collective_overlap;
use super::pair::OverlapMatrix;
use super::polarization::Polarization;
use super::CompensatedSum;
use crate::error::{Error, Result};

/// One realization of atom positions together with the drive geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomCloud {
    pub positions: Vec<[f64; 3]>,
    pub k_in: [f64; 3],
    pub sigmas: [f64; 3],
    pub seed: u64,
}

impl AtomCloud {
    /// Draws `n_atoms` positions with independent Gaussian coordinates.
    pub fn sample(
        n_atoms: usize,
        sigmas: [f64; 3],
        k_in: [f64; 3],
        seed: u64,
        stream: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let positions = (0..n_atoms)
            .map(|_| {
                let mut x = [0.0; 3];
                for (xi, s) in x.iter_mut().zip(sigmas) {
                    let z: f64 = rng.sample(StandardNormal);
                    *xi = s * z;
                }
                x
            })
            .collect();
        AtomCloud {
            positions,
            k_in,
            sigmas,
            seed,
        }
    }

    /// Geometric-mean rms radius `σ̄ = (σ_x σ_y σ_z)^{1/3}`.
    pub fn sigma_bar(&self) -> f64 {
        (self.sigmas[0] * self.sigmas[1] * self.sigmas[2]).cbrt()
    }

    /// `ζ = √2 k_in σ̄`.
    pub fn zeta(&self) -> f64 {
        let k = self.k_in.iter().map(|c| c * c).sum::<f64>().sqrt();
        std::f64::consts::SQRT_2 * k * self.sigma_bar()
    }

    pub fn overlap_matrix(&self, eps: &Polarization) -> OverlapMatrix {
        OverlapMatrix::build(&self.positions, self.k_in, eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub n_atoms: usize,
    /// Rms radii along x, y, z, in the same length unit as `wavelength`.
    pub sigmas: [f64; 3],
    pub wavelength: f64,
    pub eps: Polarization,
    pub n_runs: usize,
    pub seed: u64,
    /// Replace all radii by their geometric mean.
    pub isotropic: bool,
}

impl MonteCarloConfig {
    /// 260 atoms, σ = (3.3, 4.5, 1.7) µm, λ = 0.78 µm, circular polarization,
    /// 100 runs.
    pub fn reference_cloud() -> Self {
        MonteCarloConfig {
            n_atoms: 260,
            sigmas: [3.3, 4.5, 1.7],
            wavelength: 0.78,
            eps: Polarization::circular(),
            n_runs: 100,
            seed: 0,
            isotropic: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms < 2 {
            return Err(Error::invalid(
                "n_atoms",
                self.n_atoms as f64,
                "must be >= 2",
            ));
        }
        if self.n_runs < 2 {
            return Err(Error::invalid(
                "n_runs",
                self.n_runs as f64,
                "must be >= 2 for standard errors",
            ));
        }
        if !(self.wavelength > 0.0 && self.wavelength.is_finite()) {
            return Err(Error::invalid(
                "wavelength",
                self.wavelength,
                "must be finite and > 0",
            ));
        }
        for s in self.sigmas {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::invalid("sigma", s, "must be finite and > 0"));
            }
        }
        Ok(())
    }

    /// `(0, 0, −2π/λ)`.
    pub fn k_in(&self) -> [f64; 3] {
        [0.0, 0.0, -2.0 * std::f64::consts::PI / self.wavelength]
    }

    pub fn effective_sigmas(&self) -> [f64; 3] {
        if self.isotropic {
            let s = (self.sigmas[0] * self.sigmas[1] * self.sigmas[2]).cbrt();
            [s; 3]
        } else {
            self.sigmas
        }
    }

    pub fn zeta(&self) -> f64 {
        let [sx, sy, sz] = self.sigmas;
        std::f64::consts::SQRT_2 * 2.0 * std::f64::consts::PI / self.wavelength
            * (sx * sy * sz).cbrt()
    }
}

/// Result of a single run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunResult {
    pub b_up_dn: f64,
    pub c_up_dn: Complex64,
    pub s12_mean: Complex64,
    pub s12_mean_sq: f64,
}

pub fn run_once(config: &MonteCarloConfig, run_index: u64) -> Result<RunResult> {
    let cloud = AtomCloud::sample(
        config.n_atoms,
        config.effective_sigmas(),
        config.k_in(),
        config.seed,
        run_index,
    );
    let s = cloud.overlap_matrix(&config.eps);
    let overlap = collective_overlap(&s, false)?;
    let (s12_mean, s12_mean_sq) = s.pair_moments();
    Ok(RunResult {
        b_up_dn: overlap.b_up_dn,
        c_up_dn: overlap.c_up_dn,
        s12_mean,
        s12_mean_sq,
    })
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().copied().collect::<CompensatedSum>().value() / n;
        let var = xs
            .iter()
            .map(|x| (x - mean) * (x - mean))
            .collect::<CompensatedSum>()
            .value()
            / (n - 1.0);
        Estimate {
            mean,
            stderr: (var / n).sqrt(),
        }
    }

    /// `|mean − target| ≤ k·sqrt(stderr² + target_err²)`.
    pub fn within(&self, target: f64, target_err: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr.hypot(target_err)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloStats {
    pub n_atoms: usize,
    pub n_runs: usize,
    pub zeta: f64,
    pub b_up_dn: Estimate,
    pub re_c: Estimate,
    pub im_c: Estimate,
    pub s12_re: Estimate,
    pub s12_im: Estimate,
    pub s12_mean_sq: Estimate,
    /// `sqrt(mean|S₁₂|²)` with first-order error propagation.
    pub s12_rms: Estimate,
}

pub fn monte_carlo(config: &MonteCarloConfig) -> Result<MonteCarloStats> {
    config.validate()?;
    let runs = (0..config.n_runs as u64)
        .into_par_iter()
        .map(|r| run_once(config, r))
        .collect::<Result<Vec<_>>>()?;
    let pick = |f: fn(&RunResult) -> f64| -> Estimate {
        Estimate::from_samples(&runs.iter().map(f).collect::<Vec<_>>())
    };
    let ms = pick(|r| r.s12_mean_sq);
    let rms = ms.mean.sqrt();
    Ok(MonteCarloStats {
        n_atoms: config.n_atoms,
        n_runs: config.n_runs,
        zeta: config.zeta(),
        b_up_dn: pick(|r| r.b_up_dn),
        re_c: pick(|r| r.c_up_dn.re),
        im_c: pick(|r| r.c_up_dn.im),
        s12_re: pick(|r| r.s12_mean.re),
        s12_im: pick(|r| r.s12_mean.im),
        s12_mean_sq: ms,
        s12_rms: Estimate {
            mean: rms,
            stderr: ms.stderr / (2.0 * rms),
        },
    })
}
