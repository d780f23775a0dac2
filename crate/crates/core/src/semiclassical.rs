//! Ring-resonator model: the intracavity field is summed as a geometric
//! series over round trips through a homogeneous EIT medium, with no
//! expansion in the inverse finesse.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fit::fit_line;
use crate::model::{detuned_amplitudes, eit_response, CavityParams, DetuningSet, QubitBranch};

/// Round-trip optics of a ring cavity with a single medium pass per trip.
///
/// Only the product `kLχ₀ = d_t` enters the fields, so the constructors fix
/// `k = L = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripParams {
    pub finesse: f64,
    pub d_t: f64,
    pub chi0: f64,
    pub rho_in: f64,
    pub tau_in: f64,
    pub rho_h: f64,
    pub t_rt: f64,
    pub k: f64,
    pub medium_length: f64,
}

impl RoundTripParams {
    /// Ring cavity whose small-loss limit is `target`: `d_t = 2πC/𝓕`,
    /// `T_rt = π/(κ𝓕)`, `ρ_in = e^{−κ_in T_rt}`, `ρ_H = e^{−κ_H T_rt}`.
    pub fn from_cavity(target: &CavityParams, finesse: f64) -> Result<Self> {
        if !(finesse.is_finite() && finesse > 1.0) {
            return Err(Error::invalid("finesse", finesse, "must be finite and > 1"));
        }
        let t_rt = PI / (target.kappa() * finesse);
        let d_t = 2.0 * PI * target.coop() / finesse;
        let rho_in = (-target.kappa_in() * t_rt).exp();
        Ok(RoundTripParams {
            finesse,
            d_t,
            chi0: d_t,
            rho_in,
            tau_in: complement(rho_in).sqrt(),
            rho_h: (-target.kappa_h() * t_rt).exp(),
            t_rt,
            k: 1.0,
            medium_length: 1.0,
        })
    }

    /// `C = d_t 𝓕/(2π)`.
    pub fn cooperativity(&self) -> f64 {
        self.d_t * self.finesse / (2.0 * PI)
    }

    /// `κ` recovered from `e^{−κT_rt} = ρ_in ρ_H`.
    pub fn kappa(&self) -> f64 {
        -(self.rho_in * self.rho_h).ln() / self.t_rt
    }
}

/// `1 − ρ²`, exact in the subtraction for `ρ` near 1.
fn complement(rho: f64) -> f64 {
    (1.0 - rho) * (1.0 + rho)
}

/// `e^w − 1` for complex `w`, accurate for small `|w|`.
fn exp_m1(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    Complex64::new(w.re.exp_m1() * c - 2.0 * half * half, w.re.exp() * s)
}

/// A ring cavity together with the atomic parameters of its medium.
#[derive(Debug, Clone, Copy)]
pub struct RoundTripCavity {
    pub optics: RoundTripParams,
    pub atoms: CavityParams,
}

impl RoundTripCavity {
    pub fn new(atoms: CavityParams, finesse: f64) -> Result<Self> {
        Ok(RoundTripCavity {
            optics: RoundTripParams::from_cavity(&atoms, finesse)?,
            atoms,
        })
    }
}

/// `χ = iχ₀ γ/(γ − iΔ_s + |Ω_c|²/(2γ_rg − 4iΔ₂))`.
pub fn susceptibility(
    cavity: &RoundTripCavity,
    det: &DetuningSet,
    branch: QubitBranch,
) -> Result<Complex64> {
    let response = eit_response(&cavity.atoms, det, branch)?;
    Ok(Complex64::new(0.0, cavity.optics.chi0) * response)
}

/// Single-pass transmission `τ = exp(ikLχ/2)`.
pub fn medium_transmission(
    cavity: &RoundTripCavity,
    det: &DetuningSet,
    branch: QubitBranch,
) -> Result<Complex64> {
    let chi = susceptibility(cavity, det, branch)?;
    let o = &cavity.optics;
    Ok((Complex64::new(0.0, 0.5 * o.k * o.medium_length) * chi).exp())
}

/// Intracavity amplitude just after the coupler and the three outgoing
/// amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingFields {
    pub c: Complex64,
    pub r: Complex64,
    pub a: Complex64,
    pub m: Complex64,
}

impl RingFields {
    pub fn outgoing_energy(&self) -> f64 {
        self.r.norm_sqr() + self.a.norm_sqr() + self.m.norm_sqr()
    }
}

/// Exact steady state of the ring.
///
/// Per round trip the light crosses the medium, then the HR mirrors, then
/// returns to the coupler. The returning field carries the detuning phase
/// `e^{iΔ_c T_rt}` both into the cavity and onto the reflected port, which
/// keeps the coupler unitary and the energy balance exact.
pub fn intracavity_and_outputs(
    cavity: &RoundTripCavity,
    det: &DetuningSet,
    branch: QubitBranch,
    alpha_in: Complex64,
) -> Result<RingFields> {
    let o = &cavity.optics;
    let chi = susceptibility(cavity, det, branch)?;
    let half_phase = Complex64::new(0.0, 0.5 * o.k * o.medium_length) * chi;
    let tau = half_phase.exp();
    // 1 − |τ|² = 1 − exp(−kL Im χ), without cancellation.
    let absorbed = -(-o.k * o.medium_length * chi.im).exp_m1();
    // log of ρ_in·(round-trip factor); the denominator 1 − e^w is small at
    // high finesse and is evaluated without subtracting from 1.
    let w = (o.rho_in - 1.0).ln_1p()
        + (o.rho_h - 1.0).ln_1p()
        + half_phase
        + Complex64::new(0.0, det.delta_c * o.t_rt);
    if w.re >= 0.0 {
        return Err(Error::Divergent(w.re.exp()));
    }
    let trip = o.rho_h * tau * Complex64::from_polar(1.0, det.delta_c * o.t_rt);
    let c = o.tau_in * alpha_in / -exp_m1(w);
    Ok(RingFields {
        c,
        r: -o.rho_in * alpha_in + o.tau_in * trip * c,
        a: absorbed.max(0.0).sqrt() * c,
        m: complement(o.rho_h).sqrt() * tau * c,
    })
}

/// Amplitude errors of the ring against the closed forms at one finesse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub finesse: f64,
    pub err_r: f64,
    pub err_a: f64,
    pub err_m: f64,
}

impl ConvergencePoint {
    pub fn max_error(&self) -> f64 {
        self.err_r.max(self.err_a).max(self.err_m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub points: Vec<ConvergencePoint>,
    /// Log-log slopes of the error against `𝓕` for r, a, m and the maximum,
    /// fitted over the nonzero errors; NaN when fewer than two remain.
    pub slope_r: f64,
    pub slope_a: f64,
    pub slope_m: f64,
    pub slope_max: f64,
}

/// Errors `|x_ring − x_closed|/|α_in|` for `x ∈ {r, a, m}` over a grid of
/// finesse values, for one branch and detuning set.
pub fn convergence_study(
    target: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
    finesse_grid: &[f64],
) -> Result<ConvergenceStudy> {
    if finesse_grid.len() < 2 || finesse_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(
            "finesse_grid",
            finesse_grid.len() as f64,
            "needs at least two strictly increasing values",
        ));
    }
    let alpha = Complex64::new(1.0, 0.0);
    let closed = detuned_amplitudes(target, det, branch, alpha)?;
    let points = finesse_grid
        .par_iter()
        .map(|&finesse| {
            let cavity = RoundTripCavity::new(*target, finesse)?;
            let ring = intracavity_and_outputs(&cavity, det, branch, alpha)?;
            Ok(ConvergencePoint {
                finesse,
                err_r: (ring.r - closed.r).norm(),
                err_a: (ring.a - closed.a).norm(),
                err_m: (ring.m - closed.m).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // Exactly vanishing errors (an empty lossless cavity) carry no slope.
    let slope = |pick: fn(&ConvergencePoint) -> f64| -> Result<f64> {
        let (xs, ys): (Vec<f64>, Vec<f64>) = points
            .iter()
            .filter(|p| pick(p) > 0.0)
            .map(|p| (p.finesse.ln(), pick(p).ln()))
            .unzip();
        if xs.len() < 2 {
            return Ok(f64::NAN);
        }
        Ok(fit_line(&xs, &ys)?.slope)
    };
    Ok(ConvergenceStudy {
        slope_r: slope(|p| p.err_r)?,
        slope_a: slope(|p| p.err_a)?,
        slope_m: slope(|p| p.err_m)?,
        slope_max: slope(ConvergencePoint::max_error)?,
        points,
    })
}
