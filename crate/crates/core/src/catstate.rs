//! Cat states of two coherent amplitudes, photon loss on a beam splitter,
//! and the visibility budget of cat-state generation by cavity reflection.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{lambda, output_amplitudes, CavityParams, QubitBranch};

/// Complex amplitude of a coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentAmplitude(Complex64);

impl CoherentAmplitude {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if alpha.re.is_finite() && alpha.im.is_finite() {
            Ok(CoherentAmplitude(alpha))
        } else {
            Err(Error::invalid("alpha", alpha.norm(), "must be finite"))
        }
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn mean_photons(self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn scaled(self, factor: f64) -> Self {
        CoherentAmplitude(self.0 * factor)
    }
}

impl From<Complex64> for CoherentAmplitude {
    fn from(alpha: Complex64) -> Self {
        CoherentAmplitude(alpha)
    }
}

impl From<f64> for CoherentAmplitude {
    fn from(alpha: f64) -> Self {
        CoherentAmplitude(Complex64::new(alpha, 0.0))
    }
}

/// `⟨a|b⟩ = exp(−|a|²/2 − |b|²/2 + a* b)`.
pub fn coherent_overlap(a: CoherentAmplitude, b: CoherentAmplitude) -> Complex64 {
    let (a, b) = (a.0, b.0);
    (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * b).exp()
}

/// Overlap of coherent states living in two modes with mode overlap `c`:
/// `exp(−|a|²/2 − |b|²/2 + a* c b)`.
pub fn mode_mismatched_overlap(
    a: CoherentAmplitude,
    b: CoherentAmplitude,
    c: Complex64,
) -> Complex64 {
    let (a, b) = (a.0, b.0);
    (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * c * b).exp()
}

/// Maps an angle into `(−π, π]`.
pub fn normalize_phase(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Qubit-light state
/// `f|↑,α↑⟩⟨↑,α↑| + (1−f)|↓,α↓⟩⟨↓,α↓| + V sqrt(f(1−f)) (e^{iθ}|↓,α↓⟩⟨↑,α↑| + h.c.)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatState {
    pub f: f64,
    pub theta: f64,
    pub visibility: f64,
    pub alpha_up: CoherentAmplitude,
    pub alpha_dn: CoherentAmplitude,
}

impl CatState {
    pub fn new(
        f: f64,
        theta: f64,
        visibility: f64,
        alpha_up: CoherentAmplitude,
        alpha_dn: CoherentAmplitude,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::invalid("f", f, "must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::invalid(
                "visibility",
                visibility,
                "must lie in [0, 1]",
            ));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("theta", theta, "must be finite"));
        }
        Ok(CatState {
            f,
            theta: normalize_phase(theta),
            visibility,
            alpha_up,
            alpha_dn,
        })
    }

    /// Pure cat `q↑|↑,−α⟩ + q↓|↓,α⟩` with `f = |q↑|²`, `θ = arg(q↑* q↓)`.
    pub fn pure(q_up: Complex64, q_dn: Complex64, alpha: Complex64) -> Result<Self> {
        let norm = q_up.norm_sqr() + q_dn.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("|q_up|^2 + |q_dn|^2", norm, "must equal 1"));
        }
        CatState::new(
            q_up.norm_sqr(),
            (q_up.conj() * q_dn).arg(),
            1.0,
            (-alpha).into(),
            alpha.into(),
        )
    }

    pub fn effective_size(&self) -> f64 {
        effective_size(self)
    }

    /// Density matrix in the basis `|↑,0⟩…|↑,n⟩, |↓,0⟩…|↓,n⟩`, row-major.
    pub fn density_matrix(&self, cutoff: usize) -> Vec<Complex64> {
        let up = crate::fock::coherent_coefficients(self.alpha_up.value(), cutoff);
        let dn = crate::fock::coherent_coefficients(self.alpha_dn.value(), cutoff);
        let n = cutoff + 1;
        let dim = 2 * n;
        let coherence = self.visibility
            * (self.f * (1.0 - self.f)).sqrt()
            * Complex64::from_polar(1.0, self.theta);
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..n {
            for j in 0..n {
                rho[i * dim + j] = self.f * up[i] * up[j].conj();
                rho[(n + i) * dim + n + j] = (1.0 - self.f) * dn[i] * dn[j].conj();
                // e^{iθ}|↓⟩⟨↑| lives in the lower-left block.
                rho[(n + i) * dim + j] = coherence * dn[i] * up[j].conj();
                rho[j * dim + n + i] = rho[(n + i) * dim + j].conj();
            }
        }
        rho
    }
}

/// `α_eff = |α↑ − α↓|/2`.
pub fn effective_size(cat: &CatState) -> f64 {
    0.5 * (cat.alpha_up.value() - cat.alpha_dn.value()).norm()
}

/// Photon loss `loss = |ρ_bs|²` on a lossless beam splitter with real
/// coefficients, followed by tracing out the reflected light.
///
/// The amplitudes shrink by `sqrt(1 − loss)` and the coherence picks up the
/// overlap `⟨ρα↑|ρα↓⟩`, so that `V ↦ V exp(−2 loss α_eff²)` with the
/// pre-loss effective size.
pub fn apply_beam_splitter(cat: &CatState, loss: f64) -> Result<CatState> {
    if !(0.0..1.0).contains(&loss) {
        return Err(Error::invalid("loss", loss, "must lie in [0, 1)"));
    }
    let tau = (1.0 - loss).sqrt();
    let rho = loss.sqrt();
    let env = coherent_overlap(cat.alpha_up.scaled(rho), cat.alpha_dn.scaled(rho));
    let theta = if env.norm() > 0.0 {
        cat.theta + env.arg()
    } else {
        cat.theta
    };
    CatState::new(
        cat.f,
        theta,
        cat.visibility * env.norm(),
        cat.alpha_up.scaled(tau),
        cat.alpha_dn.scaled(tau),
    )
}

/// Visibility after loss expressed through the post-loss effective size:
/// `V exp(−2 loss/(1 − loss) α_eff,out²)`.
pub fn visibility_after_loss(visibility: f64, loss: f64, alpha_eff_out: f64) -> f64 {
    visibility * (-2.0 * loss / (1.0 - loss) * alpha_eff_out * alpha_eff_out).exp()
}

/// Amplitudes of the light lost during generation, per branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LostAmplitudes {
    pub a_up: Complex64,
    pub m_up: Complex64,
    pub a_dn: Complex64,
    pub m_dn: Complex64,
}

/// Overlap of the spontaneous-emission modes of the two branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeOverlap {
    pub c_up_dn: Complex64,
    /// Keep the phase `exp(i A_mode |α_in|² Im C↑↓)` in `θ`.
    pub include_phase: bool,
}

impl ModeOverlap {
    pub fn perfect() -> Self {
        ModeOverlap {
            c_up_dn: Complex64::new(1.0, 0.0),
            include_phase: false,
        }
    }
}

/// Reflects `α_in` off the cavity with the qubit in `sqrt f|↑⟩ + sqrt(1−f)|↓⟩`
/// and traces out the light lost to the atoms and the mirrors.
///
/// The lost light is `|ℓ⟩ = |a⟩ ⊗ |m⟩`, and the atomic and mirror modes are
/// mutually orthogonal, so `⟨ℓ↑|ℓ↓⟩ = ⟨a↑|a↓⟩⟨m↑|m↓⟩`.
pub fn generate_cat(
    params: &CavityParams,
    f: f64,
    v0: f64,
    theta0: f64,
    alpha_in: Complex64,
) -> Result<(CatState, LostAmplitudes)> {
    generate_cat_with_mode_overlap(params, f, v0, theta0, alpha_in, ModeOverlap::perfect())
}

/// [`generate_cat`] with a spontaneous-emission mode overlap `C↑↓ ≠ 1`.
pub fn generate_cat_with_mode_overlap(
    params: &CavityParams,
    f: f64,
    v0: f64,
    theta0: f64,
    alpha_in: Complex64,
    overlap: ModeOverlap,
) -> Result<(CatState, LostAmplitudes)> {
    if !(0.0..=1.0).contains(&v0) {
        return Err(Error::invalid("v0", v0, "must lie in [0, 1]"));
    }
    let up = output_amplitudes(params, QubitBranch::Up, alpha_in);
    let dn = output_amplitudes(params, QubitBranch::Dn, alpha_in);
    let mirrors = coherent_overlap(up.m.into(), dn.m.into());
    let atoms = mode_mismatched_overlap(up.a.into(), dn.a.into(), overlap.c_up_dn);
    let lost = atoms * mirrors;
    let phase = if overlap.include_phase {
        lost.arg()
    } else {
        let c_real = Complex64::new(overlap.c_up_dn.re, 0.0);
        (mode_mismatched_overlap(up.a.into(), dn.a.into(), c_real) * mirrors).arg()
    };
    let cat = CatState::new(
        f,
        theta0 + phase,
        v0 * lost.norm(),
        up.r.into(),
        dn.r.into(),
    )?;
    Ok((
        cat,
        LostAmplitudes {
            a_up: up.a,
            m_up: up.m,
            a_dn: dn.a,
            m_dn: dn.m,
        },
    ))
}

/// Loss coefficients of cat-state generation.
///
/// `l_cav` is the actual photon loss reducing the effective size; the others
/// measure the visibility reduction. With perfect mode overlap
/// `0 ≤ l_ell ≤ l_gen ≤ l_cav < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBudget {
    pub l_cav: f64,
    pub l_a: f64,
    pub l_m: f64,
    pub l_mode: f64,
    pub l_ell: f64,
    pub l_gen: f64,
    pub a_mode: f64,
    /// `η = η_esc C/(C + 1)`.
    pub eta: f64,
}

impl LossBudget {
    /// `L_gen/(1 − L_gen)`, the exponent per output photon.
    pub fn gen_ratio(&self) -> f64 {
        self.l_gen / (1.0 - self.l_gen)
    }

    /// `V_out/V₀` for a given `|α_in|²`.
    pub fn visibility_ratio_from_input(&self, mean_photons_in: f64) -> f64 {
        (-2.0 * self.l_ell * mean_photons_in).exp()
    }

    /// `V_out/V₀` for a given `α_out²`.
    pub fn visibility_ratio_from_output(&self, alpha_out_sq: f64) -> f64 {
        (-2.0 * self.gen_ratio() * alpha_out_sq).exp()
    }

    /// Largest `α_out²` keeping `V_out/V₀ ≥ ratio` at this operating point.
    pub fn max_output_photons(&self, ratio: f64) -> Result<f64> {
        check_ratio(ratio)?;
        if self.l_gen <= 0.0 {
            return Err(Error::invalid(
                "l_gen",
                self.l_gen,
                "vanishes; photon number unbounded",
            ));
        }
        Ok(-ratio.ln() / (2.0 * self.gen_ratio()))
    }
}

fn check_ratio(ratio: f64) -> Result<()> {
    if ratio > 0.0 && ratio < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "visibility_ratio",
            ratio,
            "must lie in (0, 1)",
        ))
    }
}

/// `η = η_esc C/(C + 1)`.
pub fn eta(params: &CavityParams) -> f64 {
    let c = params.coop();
    params.eta_esc() * c / (c + 1.0)
}

/// Loss budget at the parameters' `Λ↓`, with mode mismatch
/// `b_mode = 1 − Re C↑↓` (0 for perfect overlap).
pub fn loss_budget(params: &CavityParams, b_mode: f64) -> Result<LossBudget> {
    if !(b_mode.is_finite() && b_mode >= 0.0) {
        return Err(Error::invalid("b_mode", b_mode, "must be finite and >= 0"));
    }
    let eta_esc = params.eta_esc();
    let c = params.coop();
    let lam = lambda(params, QubitBranch::Dn);
    let lam2 = lam * lam;
    let eta = eta(params);

    let size = eta * (lam2 - 1.0) / (lam2 + c);
    let l_cav = 1.0 - size * size;
    let atom_mismatch = (lam - c) * (lam - 1.0) / (lam2 + c);
    let l_a = eta / (c + 1.0) * atom_mismatch * atom_mismatch;
    let l_m = (1.0 - eta_esc) / eta_esc * size * size;
    let a_mode = 2.0 * eta_esc * c / ((1.0 + c) * lam * (1.0 + c / lam2));
    let l_mode = a_mode * b_mode;
    let l_ell = l_a + l_m + l_mode;
    let denom = 1.0 - l_cav + l_ell;
    let l_gen = if denom > 0.0 {
        l_ell / denom
    } else {
        // Λ↓ = 1 with perfect overlap: both branches coincide and the ratio
        // is 0/0; the closed form is the continuous extension.
        l_gen_closed_form(params)
    };
    Ok(LossBudget {
        l_cav,
        l_a,
        l_m,
        l_mode,
        l_ell,
        l_gen,
        a_mode,
        eta,
    })
}

/// `L_gen = 1 − η(Λ↓ + 1)²/(Λ↓² + C)`, valid for perfect mode overlap.
pub fn l_gen_closed_form(params: &CavityParams) -> f64 {
    let lam = lambda(params, QubitBranch::Dn);
    1.0 - eta(params) * (lam + 1.0) * (lam + 1.0) / (lam * lam + params.coop())
}

/// Loss budget in the limit `Λ↓ → ∞` (no EIT transparency window left to
/// tune): `L_cav = 1 − η²`, `L_ℓ = η(1 − η)`, `L_gen = 1 − η`.
pub fn loss_budget_large_lambda(params: &CavityParams) -> LossBudget {
    let eta_esc = params.eta_esc();
    let c = params.coop();
    let eta = eta(params);
    let l_a = eta / (c + 1.0);
    let l_m = (1.0 - eta_esc) / eta_esc * eta * eta;
    LossBudget {
        l_cav: 1.0 - eta * eta,
        l_a,
        l_m,
        l_mode: 0.0,
        l_ell: l_a + l_m,
        l_gen: 1.0 - eta,
        a_mode: 0.0,
        eta,
    }
}

/// `∂L_gen/∂Λ↓ = 2η(Λ↓ + 1)(Λ↓ − C)/(Λ↓² + C)²`.
pub fn l_gen_slope(params: &CavityParams) -> f64 {
    let lam = lambda(params, QubitBranch::Dn);
    let c = params.coop();
    let d = lam * lam + c;
    2.0 * eta(params) * (lam + 1.0) * (lam - c) / (d * d)
}

/// `∂²L_gen/∂Λ↓²` at `Λ↓ = C`: `2η_esc/(C(C + 1)²)`.
pub fn l_gen_curvature_at_optimum(params: &CavityParams) -> f64 {
    let c = params.coop();
    2.0 * params.eta_esc() / (c * (c + 1.0) * (c + 1.0))
}

/// The `Λ↓` minimizing `L_gen` at fixed `η_esc` and `C`, which is `C`.
pub fn optimal_lambda(params: &CavityParams) -> Result<f64> {
    let c = params.coop();
    if c <= 0.0 {
        return Err(Error::invalid("coop", c, "must be > 0 for an optimum"));
    }
    Ok(c)
}

/// Largest `α_out²` with `V_out/V₀ ≥ ratio` at the optimum `Λ↓ = C`, where
/// `L_gen = 1 − η_esc`.
pub fn max_photon_number(params: &CavityParams, visibility_ratio: f64) -> Result<f64> {
    check_ratio(visibility_ratio)?;
    let l_gen = 1.0 - params.eta_esc();
    if l_gen <= 0.0 {
        return Err(Error::invalid(
            "l_gen",
            l_gen,
            "vanishes; photon number unbounded",
        ));
    }
    Ok(-visibility_ratio.ln() * (1.0 - l_gen) / (2.0 * l_gen))
}

/// One point of the loss-coefficient and emitted-amplitude curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure2Row {
    pub lambda_dn: f64,
    pub l_a: f64,
    pub l_m: f64,
    pub l_gen: f64,
    pub l_cav: f64,
    pub a_up_over_in: f64,
    pub a_dn_over_in: f64,
}

/// Loss coefficients and `a↑/↓/α_in` over a grid of `Λ↓ ≥ 1`.
pub fn sweep_figure2(eta_esc: f64, coop: f64, lambda_grid: &[f64]) -> Result<Vec<Figure2Row>> {
    lambda_grid
        .par_iter()
        .map(|&lam| {
            let params = CavityParams::from_lambda(eta_esc, coop, lam)?;
            let budget = loss_budget(&params, 0.0)?;
            let one = Complex64::new(1.0, 0.0);
            let up = output_amplitudes(&params, QubitBranch::Up, one);
            let dn = output_amplitudes(&params, QubitBranch::Dn, one);
            Ok(Figure2Row {
                lambda_dn: lam,
                l_a: budget.l_a,
                l_m: budget.l_m,
                l_gen: budget.l_gen,
                l_cav: budget.l_cav,
                a_up_over_in: up.a.re,
                a_dn_over_in: dn.a.re,
            })
        })
        .collect()
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == 0 {
                        lo
                    } else if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}
