//! Steady state of the linear cavity-field, polarization and spin-wave
//! equations with amplitudes treated as c-numbers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{CavityParams, DetuningSet, QubitBranch, TwoPhotonDetuning};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub e_cav: Complex64,
    pub p: Complex64,
    pub s: Complex64,
    pub e_out: Complex64,
    pub e_m: Complex64,
    pub e_in: Complex64,
    /// Largest equation residual relative to the drive term.
    pub residual: f64,
}

const EQUATIONS: [&str; 3] = ["cavity field", "polarization", "spin wave"];

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve_linear<const N: usize>(
    mut a: [[Complex64; N]; N],
    mut b: [Complex64; N],
) -> Result<[Complex64; N]> {
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0_f64, f64::max);
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        if a[pivot][col].norm() <= 1e-300_f64.max(scale * 1e-15) {
            return Err(Error::SingularSystem {
                equation: EQUATIONS[col.min(EQUATIONS.len() - 1)],
            });
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (target, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *target -= factor * p;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

fn max_residual<const N: usize>(
    a: &[[Complex64; N]; N],
    x: &[Complex64; N],
    b: &[Complex64; N],
) -> f64 {
    let drive = b.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    let worst = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let lhs: Complex64 = row.iter().zip(x).map(|(aij, xj)| aij * xj).sum();
            (lhs - bi).norm()
        })
        .fold(0.0_f64, f64::max);
    if drive > 0.0 {
        worst / drive
    } else {
        worst
    }
}

/// Solves `∂_t𝓔 = ∂_tP = ∂_tS = 0` for drive `e_in`. With a blockaded
/// two-photon detuning the spin wave is not excited and `S = 0`.
pub fn solve_steady_state(
    params: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
    e_in: Complex64,
) -> Result<SteadyState> {
    let i = Complex64::i();
    let g = (params.kappa() * params.gamma() * params.coop()).sqrt();
    let kappa_in = params.kappa_in();
    let drive = -(2.0 * kappa_in).sqrt() * e_in;
    let field_row = -Complex64::new(params.kappa(), -det.delta_c);
    let pol_row = -Complex64::new(params.gamma(), -det.delta_s);
    let zero = Complex64::new(0.0, 0.0);

    let (e_cav, p, s, residual) = match det.two_photon(branch) {
        TwoPhotonDetuning::Finite(delta_2) => {
            let half_omega = 0.5 * params.omega_c();
            let a = [
                [field_row, i * g, zero],
                [i * g, pol_row, i * half_omega],
                [
                    zero,
                    i * half_omega,
                    -Complex64::new(0.5 * params.gamma_rg(), -delta_2),
                ],
            ];
            let b = [drive, zero, zero];
            let x = solve_linear(a, b)?;
            (x[0], x[1], x[2], max_residual(&a, &x, &b))
        }
        TwoPhotonDetuning::Blockaded => {
            let a = [[field_row, i * g], [i * g, pol_row]];
            let b = [drive, zero];
            let x = solve_linear(a, b)?;
            (x[0], x[1], zero, max_residual(&a, &x, &b))
        }
    };
    Ok(SteadyState {
        e_cav,
        p,
        s,
        e_out: (2.0 * kappa_in).sqrt() * e_cav - e_in,
        e_m: (2.0 * params.kappa_h()).sqrt() * e_cav,
        e_in,
        residual,
    })
}

/// `|a| = sqrt(|𝓔_in|² − |𝓔_out|² − |𝓔_m|²)` from energy conservation.
pub fn spontaneous_amplitude(ss: &SteadyState) -> Result<f64> {
    let incoming = ss.e_in.norm_sqr();
    let diff = incoming - ss.e_out.norm_sqr() - ss.e_m.norm_sqr();
    if diff < -1e-10 * incoming.max(f64::MIN_POSITIVE) {
        return Err(Error::NegativeEnergy(diff));
    }
    Ok(diff.max(0.0).sqrt())
}
