//! Truncated Fock-space constructions.
//!
//! These brute-force the photon-number basis instead of using coherent-state
//! algebra, and serve as independent checks of the closed forms elsewhere in
//! the crate.

use num_complex::Complex64;

use crate::catstate::CatState;
use crate::error::{Error, Result};

/// Smallest cutoff satisfying `n_max ≥ |α|² + 10|α| + 20`.
pub fn cutoff_for(alpha_abs: f64) -> usize {
    (alpha_abs * alpha_abs + 10.0 * alpha_abs + 20.0).ceil() as usize
}

/// Fock coefficients `e^{−|α|²/2} αⁿ/√n!` for `n = 0..=cutoff`.
pub fn coherent_coefficients(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut coeffs = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    coeffs.push(c);
    for n in 1..=cutoff {
        c = c * alpha / (n as f64).sqrt();
        coeffs.push(c);
    }
    coeffs
}

/// `1 − Σ|cₙ|²`.
pub fn norm_deficit(coeffs: &[Complex64]) -> f64 {
    1.0 - coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
}

/// Two-mode state as a dense `(n+1) × (n+1)` array indexed `[k][l]`.
#[derive(Debug, Clone)]
pub struct TwoModeState {
    dim: usize,
    amps: Vec<Complex64>,
}

impl TwoModeState {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.amps[k * self.dim + l]
    }

    fn get_mut(&mut self, k: usize, l: usize) -> &mut Complex64 {
        &mut self.amps[k * self.dim + l]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &TwoModeState) -> Complex64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨â⟩` of the first mode.
    pub fn first_mode_mean_field(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..self.dim {
            let s = (k as f64).sqrt();
            for l in 0..self.dim {
                acc += self.get(k - 1, l).conj() * self.get(k, l) * s;
            }
        }
        acc
    }

    /// `Σ_l ψ[k][l] φ*[k'][l]`: the first-mode block of `|ψ⟩⟨φ|` after
    /// tracing out the second mode.
    pub fn partial_trace_second(&self, other: &TwoModeState) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            for kp in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..d {
                    acc += self.get(k, l) * other.get(kp, l).conj();
                }
                out[k * d + kp] = acc;
            }
        }
        out
    }
}

fn binomial_sqrt_table(n_max: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![1.0; n + 1];
        for k in 1..n {
            row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
        }
        rows.push(row);
    }
    rows.into_iter()
        .map(|row| row.into_iter().map(f64::sqrt).collect())
        .collect()
}

/// Sends a single-mode state through `â† ↦ t â† + r b̂†` with the second
/// input in vacuum:
///
/// `|n, 0⟩ ↦ Σ_k sqrt(C(n,k)) tᵏ r^{n−k} |k, n−k⟩`.
pub fn split_mode(coeffs: &[Complex64], t: Complex64, r: Complex64) -> TwoModeState {
    let dim = coeffs.len();
    let binom = binomial_sqrt_table(dim.saturating_sub(1));
    let mut state = TwoModeState {
        dim,
        amps: vec![Complex64::new(0.0, 0.0); dim * dim],
    };
    let t_pow: Vec<Complex64> = (0..dim).map(|k| t.powu(k as u32)).collect();
    let r_pow: Vec<Complex64> = (0..dim).map(|k| r.powu(k as u32)).collect();
    for (n, &cn) in coeffs.iter().enumerate() {
        if cn == Complex64::new(0.0, 0.0) {
            continue;
        }
        for k in 0..=n {
            *state.get_mut(k, n - k) += cn * binom[n][k] * t_pow[k] * r_pow[n - k];
        }
    }
    state
}

/// Outcome of the brute-force beam-splitter computation on a cat state.
#[derive(Debug, Clone, Copy)]
pub struct FockBeamSplitter {
    pub visibility: f64,
    /// `arg` of the environment overlap picked up by the coherence.
    pub phase_shift: f64,
    pub alpha_up: Complex64,
    pub alpha_dn: Complex64,
    pub norm_deficit: f64,
}

/// Beam-splitter loss on a cat state, computed in the truncated Fock basis
/// with real `τ = sqrt(1 − loss)`, `ρ = sqrt(loss)`.
///
/// The visibility is the Frobenius norm of the reduced off-diagonal block
/// times the input visibility. The coherence is rank one, so this equals its
/// only singular value.
pub fn beam_splitter_cat(cat: &CatState, loss: f64, cutoff: usize) -> Result<FockBeamSplitter> {
    if !(0.0..1.0).contains(&loss) {
        return Err(Error::invalid("loss", loss, "must lie in [0, 1)"));
    }
    let t = Complex64::new((1.0 - loss).sqrt(), 0.0);
    let r = Complex64::new(loss.sqrt(), 0.0);
    let up = coherent_coefficients(cat.alpha_up.value(), cutoff);
    let dn = coherent_coefficients(cat.alpha_dn.value(), cutoff);
    let deficit = norm_deficit(&up).max(norm_deficit(&dn));
    let psi_up = split_mode(&up, t, r);
    let psi_dn = split_mode(&dn, t, r);
    let block = psi_dn.partial_trace_second(&psi_up);
    let frobenius = block.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok(FockBeamSplitter {
        visibility: cat.visibility * frobenius,
        phase_shift: block[0].arg(),
        alpha_up: psi_up.first_mode_mean_field(),
        alpha_dn: psi_dn.first_mode_mean_field(),
        norm_deficit: deficit,
    })
}

/// Result of the two-mode overlap construction.
#[derive(Debug, Clone, Copy)]
pub struct LemmaCheck {
    pub brute_force: Complex64,
    pub closed_form: Complex64,
    pub norm_deficit: f64,
}

impl LemmaCheck {
    pub fn error(&self) -> f64 {
        (self.brute_force - self.closed_form).norm()
    }

    pub fn cutoff_sufficient(&self) -> bool {
        self.norm_deficit <= 1e-8
    }
}

/// Overlap of a coherent state `α↑` in mode `c↑` with a coherent state `α↓`
/// in a second, non-orthogonal mode `c↓` with `⟨c↑, c↓⟩ = C↑↓`.
///
/// After Gram-Schmidt, `b̂↓† = â⊥† C⊥↓ + â↑† C↑↓` with
/// `C⊥↓ = sqrt(1 − |C↑↓|²)`; the `c↓` state is built in the `(c↑, c⊥)` Fock
/// basis and projected on the `c↑` state. The closed form is
/// `exp(−|α↑|²/2 − |α↓|²/2 + α↑* C↑↓ α↓)`.
pub fn fock_overlap_lemma_check(
    c_overlap: Complex64,
    alpha_up: Complex64,
    alpha_dn: Complex64,
    cutoff: usize,
) -> Result<LemmaCheck> {
    let c_abs = c_overlap.norm();
    if c_abs.is_nan() || c_abs > 1.0 + 1e-12 {
        return Err(Error::invalid("c_overlap", c_abs, "|C| must not exceed 1"));
    }
    let c_perp = (1.0 - c_abs * c_abs).max(0.0).sqrt();
    let up = coherent_coefficients(alpha_up, cutoff);
    let dn = coherent_coefficients(alpha_dn, cutoff);
    let deficit = norm_deficit(&up).max(norm_deficit(&dn));
    if deficit > 1e-8 {
        log::warn!("Fock cutoff {cutoff} leaves a norm deficit of {deficit:e}");
    }
    let psi_dn = split_mode(&dn, c_overlap, Complex64::new(c_perp, 0.0));
    // The c↑ state has the orthogonal mode in vacuum.
    let brute_force: Complex64 = up
        .iter()
        .enumerate()
        .map(|(k, ck)| ck.conj() * psi_dn.get(k, 0))
        .sum();
    let closed_form = (-0.5 * alpha_up.norm_sqr() - 0.5 * alpha_dn.norm_sqr()
        + alpha_up.conj() * c_overlap * alpha_dn)
        .exp();
    Ok(LemmaCheck {
        brute_force,
        closed_form,
        norm_deficit: deficit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_state_is_normalized() {
        let alpha = Complex64::new(1.5, -0.7);
        let coeffs = coherent_coefficients(alpha, cutoff_for(alpha.norm()));
        assert!(norm_deficit(&coeffs).abs() < 1e-10);
    }

    #[test]
    fn split_preserves_norm_and_photon_number() {
        let alpha = Complex64::new(1.2, 0.4);
        let coeffs = coherent_coefficients(alpha, 40);
        let t = Complex64::new(0.6, 0.0);
        let r = Complex64::new(0.0, 0.8);
        let psi = split_mode(&coeffs, t, r);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
        assert!((psi.first_mode_mean_field() - t * alpha).norm() < 1e-10);
    }

    #[test]
    fn lemma_reduces_to_coherent_overlap_for_identical_modes() {
        let a = Complex64::new(0.8, 0.1);
        let b = Complex64::new(-0.3, 0.9);
        let check = fock_overlap_lemma_check(Complex64::new(1.0, 0.0), a, b, 40).unwrap();
        let direct = crate::catstate::coherent_overlap(a.into(), b.into());
        assert!((check.brute_force - direct).norm() < 1e-12);
    }

    #[test]
    fn lemma_orthogonal_modes() {
        let one = Complex64::new(1.0, 0.0);
        let check = fock_overlap_lemma_check(Complex64::new(0.0, 0.0), one, one, 40).unwrap();
        assert!((check.brute_force - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-12);
        assert!((check.closed_form - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lemma_partial_overlap() {
        let check = fock_overlap_lemma_check(
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 2.0),
            60,
        )
        .unwrap();
        assert!(check.cutoff_sufficient());
        assert!(check.error() < 1e-8, "error {}", check.error());
    }

    #[test]
    fn lemma_flags_small_cutoff() {
        let check = fock_overlap_lemma_check(
            Complex64::new(0.5, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(3.0, 0.0),
            5,
        )
        .unwrap();
        assert!(!check.cutoff_sufficient());
    }

    #[test]
    fn lemma_rejects_overlap_above_one() {
        let one = Complex64::new(1.0, 0.0);
        assert!(fock_overlap_lemma_check(Complex64::new(1.1, 0.0), one, one, 10).is_err());
    }
}
