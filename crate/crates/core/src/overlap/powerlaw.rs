//! Scaling of the mean mode mismatch `B̄↑↓` with atom number.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::montecarlo::{monte_carlo, Estimate, MonteCarloConfig};
use crate::error::{Error, Result};
use crate::fit::fit_line;

/// `floor(10⁵/N²)` runs, at least 2: every atom number costs about the same
/// number of pair overlaps.
pub fn runs_for(n_atoms: usize) -> usize {
    (100_000 / (n_atoms * n_atoms)).max(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawPoint {
    pub n_atoms: usize,
    pub n_runs: usize,
    pub b_up_dn: Estimate,
}

/// `B̄ = c₃ N⁻³` fitted on `log B̄` against `log N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub c3: f64,
    /// From the scatter of the residuals about the fixed-slope line.
    pub c3_err: f64,
    pub free_slope: f64,
    pub free_slope_err: f64,
    pub free_prefactor: f64,
}

impl PowerLawFit {
    /// Fixed-slope fit to `(N, B̄)` pairs, with the free-slope fit alongside.
    pub fn from_points(n: &[f64], b: &[f64]) -> Result<Self> {
        if n.len() != b.len() || n.len() < 3 {
            return Err(Error::FitFailed(format!(
                "need at least 3 matching points, got {} and {}",
                n.len(),
                b.len()
            )));
        }
        if let Some(bad) = b.iter().find(|v| v.is_nan() || **v <= 0.0) {
            return Err(Error::FitFailed(format!("nonpositive mean B = {bad:e}")));
        }
        let xs: Vec<f64> = n.iter().map(|v| v.ln()).collect();
        let ys: Vec<f64> = b.iter().map(|v| v.ln()).collect();
        // With the slope pinned, log c₃ is the mean of log B + 3 log N.
        let shifted: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y + 3.0 * x).collect();
        let m = shifted.len() as f64;
        let log_c3 = shifted.iter().sum::<f64>() / m;
        let var = shifted.iter().map(|v| (v - log_c3).powi(2)).sum::<f64>() / (m - 1.0);
        let log_c3_err = (var / m).sqrt();
        let free = fit_line(&xs, &ys)?;
        let c3 = log_c3.exp();
        Ok(PowerLawFit {
            c3,
            c3_err: c3 * log_c3_err,
            free_slope: free.slope,
            free_slope_err: free.slope_se,
            free_prefactor: free.intercept.exp(),
        })
    }

    pub fn extrapolate(&self, n_atoms: f64) -> f64 {
        self.c3 / (n_atoms * n_atoms * n_atoms)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawStudy {
    pub points: Vec<PowerLawPoint>,
    pub fit: PowerLawFit,
}

/// Seed for atom number `n`: decorrelates the grid points while staying a
/// pure function of the master seed.
fn seed_for(master: u64, n_atoms: usize) -> u64 {
    master ^ (n_atoms as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs the Monte Carlo of `template` at each atom number with
/// [`runs_for`] runs and fits the power law.
pub fn power_law_study(template: &MonteCarloConfig, n_grid: &[usize]) -> Result<PowerLawStudy> {
    if let Some(&n) = n_grid.iter().find(|&&n| n < 3) {
        return Err(Error::invalid(
            "n_atoms",
            n as f64,
            "power-law grid needs N >= 3",
        ));
    }
    let points = n_grid
        .par_iter()
        .map(|&n_atoms| {
            let cfg = MonteCarloConfig {
                n_atoms,
                n_runs: runs_for(n_atoms),
                seed: seed_for(template.seed, n_atoms),
                ..*template
            };
            let stats = monte_carlo(&cfg)?;
            Ok(PowerLawPoint {
                n_atoms,
                n_runs: cfg.n_runs,
                b_up_dn: stats.b_up_dn,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ns: Vec<f64> = points.iter().map(|p| p.n_atoms as f64).collect();
    let bs: Vec<f64> = points.iter().map(|p| p.b_up_dn.mean).collect();
    let fit = PowerLawFit::from_points(&ns, &bs)?;
    Ok(PowerLawStudy { points, fit })
}
