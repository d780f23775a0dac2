//! Closed-form input/output amplitudes of a one-sided cavity filled with an
//! EIT medium, in the low-power (linear) regime.
//!
//! All rates are angular frequencies in a common, caller-chosen unit. Only
//! ratios of rates enter the amplitudes, so the resonant results depend on
//! the escape efficiency, the cooperativity and `Λ↓` alone.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Qubit value carried by the stationary Rydberg excitation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QubitBranch {
    /// Stationary excitation present: Rydberg blockade, the medium absorbs.
    Up,
    /// No stationary excitation: EIT, the medium is transparent.
    Dn,
}

impl QubitBranch {
    pub const BOTH: [QubitBranch; 2] = [QubitBranch::Up, QubitBranch::Dn];
}

/// Two-photon detuning of one branch.
///
/// `Blockaded` is the limit `|Δ₂| → ∞`, in which the coupling-field term of
/// the susceptibility is dropped algebraically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TwoPhotonDetuning {
    Finite(f64),
    Blockaded,
}

/// Detunings of the signal light from the cavity, the atomic transition and
/// the two-photon resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetuningSet {
    pub delta_c: f64,
    pub delta_s: f64,
    pub delta_2_up: TwoPhotonDetuning,
    pub delta_2_dn: TwoPhotonDetuning,
}

impl DetuningSet {
    /// Cavity and signal on resonance, EIT branch at two-photon resonance,
    /// blockaded branch infinitely far detuned.
    pub fn resonant() -> Self {
        DetuningSet {
            delta_c: 0.0,
            delta_s: 0.0,
            delta_2_up: TwoPhotonDetuning::Blockaded,
            delta_2_dn: TwoPhotonDetuning::Finite(0.0),
        }
    }

    pub fn two_photon(&self, branch: QubitBranch) -> TwoPhotonDetuning {
        match branch {
            QubitBranch::Up => self.delta_2_up,
            QubitBranch::Dn => self.delta_2_dn,
        }
    }
}

impl Default for DetuningSet {
    fn default() -> Self {
        DetuningSet::resonant()
    }
}

/// Physical parameters of the cavity and the atomic ensemble.
///
/// The coupling Rabi frequency is stored as a nonnegative magnitude because
/// only `|Ω_c|²` enters any amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityParams {
    eta_esc: f64,
    coop: f64,
    kappa: f64,
    gamma: f64,
    omega_c: f64,
    gamma_rg: f64,
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "must be finite and > 0"))
    }
}

impl CavityParams {
    pub fn new(
        eta_esc: f64,
        coop: f64,
        kappa: f64,
        gamma: f64,
        omega_c: f64,
        gamma_rg: f64,
    ) -> Result<Self> {
        if !(eta_esc > 0.0 && eta_esc <= 1.0) {
            return Err(Error::invalid("eta_esc", eta_esc, "must lie in (0, 1]"));
        }
        if !(coop.is_finite() && coop >= 0.0) {
            return Err(Error::invalid("coop", coop, "must be finite and >= 0"));
        }
        check_positive("kappa", kappa)?;
        check_positive("gamma", gamma)?;
        check_positive("gamma_rg", gamma_rg)?;
        if !omega_c.is_finite() {
            return Err(Error::invalid("omega_c", omega_c, "must be finite"));
        }
        Ok(CavityParams {
            eta_esc,
            coop,
            kappa,
            gamma,
            omega_c: omega_c.abs(),
            gamma_rg,
        })
    }

    /// Parameters in units where `κ = γ = γ_rg = 1`, with `Ω_c` chosen so
    /// that the EIT branch has the requested `Λ↓ ≥ 1`.
    pub fn from_lambda(eta_esc: f64, coop: f64, lambda_dn: f64) -> Result<Self> {
        let omega_c = omega_c_for_lambda(1.0, 1.0, lambda_dn)?;
        CavityParams::new(eta_esc, coop, 1.0, 1.0, omega_c, 1.0)
    }

    /// Same rates, coupling Rabi frequency retuned to reach `Λ↓`.
    pub fn with_lambda_dn(&self, lambda_dn: f64) -> Result<Self> {
        let omega_c = omega_c_for_lambda(self.gamma, self.gamma_rg, lambda_dn)?;
        Ok(CavityParams { omega_c, ..*self })
    }

    pub fn with_eta_esc(&self, eta_esc: f64) -> Result<Self> {
        CavityParams::new(
            eta_esc,
            self.coop,
            self.kappa,
            self.gamma,
            self.omega_c,
            self.gamma_rg,
        )
    }

    pub fn eta_esc(&self) -> f64 {
        self.eta_esc
    }
    pub fn coop(&self) -> f64 {
        self.coop
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }
    pub fn gamma_rg(&self) -> f64 {
        self.gamma_rg
    }

    /// Decay rate through the input/output coupler.
    pub fn kappa_in(&self) -> f64 {
        self.eta_esc * self.kappa
    }

    /// Decay rate through the highly reflective mirrors, `κ − κ_in`.
    pub fn kappa_h(&self) -> f64 {
        self.kappa - self.kappa_in()
    }

    pub fn lambda_dn(&self) -> f64 {
        lambda(self, QubitBranch::Dn)
    }
}

fn omega_c_for_lambda(gamma: f64, gamma_rg: f64, lambda_dn: f64) -> Result<f64> {
    if !(lambda_dn.is_finite() && lambda_dn >= 1.0) {
        return Err(Error::invalid(
            "lambda_dn",
            lambda_dn,
            "must be finite and >= 1",
        ));
    }
    Ok((2.0 * gamma * gamma_rg * (lambda_dn * lambda_dn - 1.0)).sqrt())
}

/// `Λ↑ = 1`, `Λ↓ = sqrt(1 + Ω_c²/(2γγ_rg))`.
pub fn lambda(params: &CavityParams, branch: QubitBranch) -> f64 {
    match branch {
        QubitBranch::Up => 1.0,
        QubitBranch::Dn => {
            let p = params;
            (1.0 + p.omega_c * p.omega_c / (2.0 * p.gamma * p.gamma_rg)).sqrt()
        }
    }
}

/// Dimensionless EIT response `γ / (γ − iΔ_s + Ω_c²/(2γ_rg − 4iΔ₂))`.
///
/// Shared by the effective cooperativity and the medium susceptibility.
pub fn eit_response(
    params: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
) -> Result<Complex64> {
    let p = params;
    let mut denom = Complex64::new(p.gamma, -det.delta_s);
    if let TwoPhotonDetuning::Finite(delta_2) = det.two_photon(branch) {
        let spin = Complex64::new(2.0 * p.gamma_rg, -4.0 * delta_2);
        if spin.norm() == 0.0 {
            return Err(Error::SingularDenominator("two-photon term 2γ_rg − 4iΔ₂"));
        }
        denom += p.omega_c * p.omega_c / spin;
    }
    if denom.norm() == 0.0 {
        return Err(Error::SingularDenominator("atomic response γ − iΔ_s + …"));
    }
    Ok(p.gamma / denom)
}

/// `C_eff = C γ / (γ − iΔ_s + Ω_c²/(2γ_rg − 4iΔ₂))`.
pub fn effective_cooperativity(
    params: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
) -> Result<Complex64> {
    Ok(params.coop * eit_response(params, det, branch)?)
}

/// Common denominator `κ − iΔ_c + κ C_eff` of the detuned amplitudes.
fn cavity_denominator(
    params: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
) -> Result<(Complex64, Complex64)> {
    let c_eff = effective_cooperativity(params, det, branch)?;
    let denom = Complex64::new(params.kappa, -det.delta_c) + params.kappa * c_eff;
    if denom.norm() == 0.0 {
        return Err(Error::SingularDenominator(
            "cavity response κ − iΔ_c + κC_eff",
        ));
    }
    Ok((denom, c_eff))
}

/// Cavity reflection coefficient `−1 + 2η_esc κ/(κ − iΔ_c + κC_eff)`.
pub fn reflection_coefficient(
    params: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
) -> Result<Complex64> {
    let (denom, _) = cavity_denominator(params, det, branch)?;
    Ok(-1.0 + 2.0 * params.eta_esc * params.kappa / denom)
}

/// Coherent amplitudes leaving the system for one qubit branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputAmplitudes {
    /// Reflected off the cavity.
    pub r: Complex64,
    /// Spontaneously emitted by the atoms.
    pub a: Complex64,
    /// Lost through the highly reflective mirrors.
    pub m: Complex64,
    pub alpha_in: Complex64,
}

impl OutputAmplitudes {
    /// `(|r|² + |a|² + |m|² − |α_in|²)/|α_in|²`, or the absolute residual
    /// when no light is sent in.
    pub fn energy_residual(&self) -> f64 {
        let out = self.r.norm_sqr() + self.a.norm_sqr() + self.m.norm_sqr();
        let input = self.alpha_in.norm_sqr();
        if input > 0.0 {
            (out - input) / input
        } else {
            out
        }
    }

    /// Amplitudes divided by `α_in`.
    pub fn per_input(&self) -> [Complex64; 3] {
        [
            self.r / self.alpha_in,
            self.a / self.alpha_in,
            self.m / self.alpha_in,
        ]
    }
}

/// Resonant amplitudes (`Δ_c = Δ_s = Δ₂↓ = 0`, `|Δ₂↑| → ∞`):
///
/// ```text
/// r = (−1 + 2η_esc/(1 + C/Λ²)) α_in
/// a = 2 sqrt(η_esc C) / (Λ (1 + C/Λ²)) α_in
/// m = 2 sqrt((1 − η_esc) η_esc) / (1 + C/Λ²) α_in
/// ```
pub fn output_amplitudes(
    params: &CavityParams,
    branch: QubitBranch,
    alpha_in: Complex64,
) -> OutputAmplitudes {
    let eta = params.eta_esc;
    let c = params.coop;
    let lam = lambda(params, branch);
    let buildup = 1.0 + c / (lam * lam);
    OutputAmplitudes {
        r: (-1.0 + 2.0 * eta / buildup) * alpha_in,
        a: (2.0 * (eta * c).sqrt() / (lam * buildup)) * alpha_in,
        m: (2.0 * ((1.0 - eta) * eta).sqrt() / buildup) * alpha_in,
        alpha_in,
    }
}

/// Amplitudes at arbitrary detunings, leading order in the inverse finesse.
///
/// `a = 2κ sqrt(η_esc Re C_eff)/(κ − iΔ_c + κC_eff) α_in`, and likewise for
/// `m`; these conserve energy exactly for every detuning.
pub fn detuned_amplitudes(
    params: &CavityParams,
    det: &DetuningSet,
    branch: QubitBranch,
    alpha_in: Complex64,
) -> Result<OutputAmplitudes> {
    let (denom, c_eff) = cavity_denominator(params, det, branch)?;
    let eta = params.eta_esc;
    let kappa = params.kappa;
    let field = kappa / denom;
    Ok(OutputAmplitudes {
        r: (-1.0 + 2.0 * eta * field) * alpha_in,
        a: 2.0 * (eta * c_eff.re.max(0.0)).sqrt() * field * alpha_in,
        m: 2.0 * (eta * (1.0 - eta)).sqrt() * field * alpha_in,
        alpha_in,
    })
}

/// Shortest input pulse for which self-blockade stays negligible,
/// `T_in ≳ |α_in|²/(2κ)`.
pub fn min_pulse_duration(params: &CavityParams, mean_photons: f64) -> Result<f64> {
    if !(mean_photons.is_finite() && mean_photons >= 0.0) {
        return Err(Error::invalid(
            "mean_photons",
            mean_photons,
            "must be finite and >= 0",
        ));
    }
    Ok(mean_photons / (2.0 * params.kappa))
}
