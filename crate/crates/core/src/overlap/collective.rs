//! Overlap `C↑↓` of the collective mode scattered by all atoms with the mode
//! scattered when one atom, in a Dicke superposition, is dark.
//!
//! In the basis of single-atom modes `s_k` with Gram matrix `S`, the two
//! normalized collective modes have coefficient vectors
//!
//! * `d_k = 1/sqrt(𝒩↓)` (all atoms bright),
//! * `u_k = (W − w_k)/sqrt(𝒩↑)` with `w_i = 1/sqrt(𝒩_i)`, `W = Σ w_i`.
//!
//! `B↑↓ = 1 − Re C↑↓` is of order 10⁻¹² in practice, so it is evaluated as
//! `½ γ†Sγ` with `γ = u − d` rather than by subtracting from 1. That form is
//! nonnegative, and errors in the normalizations enter it only at second
//! order.

use num_complex::Complex64;

use super::pair::OverlapMatrix;
use super::CompensatedSum;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveOverlap {
    pub c_up_dn: Complex64,
    pub b_up_dn: f64,
    /// `C↑↓` from the per-atom overlaps `C_i↓` summed directly; agrees with
    /// `c_up_dn` up to rounding of order 10⁻¹⁶ N.
    pub c_up_dn_direct: Complex64,
    pub n_dn: f64,
    pub n_up: f64,
    pub per_atom: Option<Vec<Complex64>>,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::DegenerateNormalization { name, value })
    }
}

/// `Σ_jk a_j* S_jk b_k` for real coefficient vectors, compensated.
fn quadratic_form(s: &OverlapMatrix, a: &[f64], b: &[f64]) -> Complex64 {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for (j, &aj) in a.iter().enumerate() {
        for (&sjk, &bk) in s.row(j).iter().zip(b) {
            let w = aj * bk;
            re.add(w * sjk.re);
            im.add(w * sjk.im);
        }
    }
    Complex64::new(re.value(), im.value())
}

pub fn collective_overlap(s: &OverlapMatrix, with_per_atom: bool) -> Result<CollectiveOverlap> {
    let n = s.len();
    if n < 2 {
        return Err(Error::invalid("n_atoms", n as f64, "need at least 2 atoms"));
    }
    let ones = vec![1.0; n];

    // Row sums R_i = Σ_j S_ij and 𝒩↓ = Σ_i R_i.
    let rows: Vec<Complex64> = (0..n)
        .map(|i| {
            let re: CompensatedSum = s.row(i).iter().map(|z| z.re).collect();
            let im: CompensatedSum = s.row(i).iter().map(|z| z.im).collect();
            Complex64::new(re.value(), im.value())
        })
        .collect();
    let n_dn = positive(
        "N_dn",
        rows.iter()
            .map(|r| r.re)
            .collect::<CompensatedSum>()
            .value(),
    )?;

    // 𝒩_i: drop row and column i from 𝒩↓.
    let n_i = rows
        .iter()
        .map(|r| {
            let v: CompensatedSum = [n_dn, -2.0 * r.re, 1.0].into_iter().collect();
            positive("N_i", v.value())
        })
        .collect::<Result<Vec<f64>>>()?;
    let w: Vec<f64> = n_i.iter().map(|x| 1.0 / x.sqrt()).collect();
    let w_total = w.iter().copied().collect::<CompensatedSum>().value();
    let v: Vec<f64> = w.iter().map(|wk| w_total - wk).collect();
    let n_up = positive("N_up", quadratic_form(s, &v, &v).re)?;

    let (inv_up, inv_dn) = (1.0 / n_up.sqrt(), 1.0 / n_dn.sqrt());
    let gamma: Vec<f64> = v.iter().map(|vk| vk * inv_up - inv_dn).collect();
    let b_up_dn = 0.5 * quadratic_form(s, &gamma, &gamma).re.max(0.0);
    let im = quadratic_form(s, &gamma, &ones).im * inv_dn;

    let per_atom: Vec<Complex64> = rows
        .iter()
        .zip(&n_i)
        .map(|(r, ni)| (n_dn - r) / (ni * n_dn).sqrt())
        .collect();
    let direct = per_atom
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc + c)
        * inv_up;

    Ok(CollectiveOverlap {
        c_up_dn: Complex64::new(1.0 - b_up_dn, im),
        b_up_dn,
        c_up_dn_direct: direct,
        n_dn,
        n_up,
        per_atom: with_per_atom.then_some(per_atom),
    })
}

/// Mode-mismatch input `b_mode = B↑↓` for the loss budget.
pub fn mode_loss_input(overlap: &CollectiveOverlap) -> f64 {
    overlap.b_up_dn
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::Polarization;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_atoms_overlap_perfectly() {
        let s = OverlapMatrix::from_entries(
            2,
            vec![c(1.0, 0.0), c(0.3, 0.4), c(0.3, -0.4), c(1.0, 0.0)],
        );
        let o = collective_overlap(&s, true).unwrap();
        assert!(o.b_up_dn < 1e-15);
        assert!((o.c_up_dn - 1.0).norm() < 1e-12);
        assert!((o.c_up_dn_direct - 1.0).norm() < 1e-12);
    }

    #[test]
    fn coincident_atoms() {
        let n = 6;
        let s = OverlapMatrix::from_entries(n, vec![c(1.0, 0.0); n * n]);
        let o = collective_overlap(&s, false).unwrap();
        assert!(o.b_up_dn < 1e-15);
        assert_eq!(o.n_dn, 36.0);
        assert!(o.per_atom.is_none());
    }

    #[test]
    fn orthogonal_atoms() {
        // S = identity: both modes are the uniform superposition
        let n = 5;
        let mut e = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            e[i * n + i] = c(1.0, 0.0);
        }
        let o = collective_overlap(&OverlapMatrix::from_entries(n, e), true).unwrap();
        assert!(o.b_up_dn < 1e-16);
        let per_atom = o.per_atom.unwrap();
        let expected = ((n - 1) as f64 / n as f64).sqrt();
        assert!(per_atom.iter().all(|ci| (ci - expected).norm() < 1e-15));
    }

    #[test]
    fn matches_direct_sum() {
        let pos = [
            [0.0, 0.0, 0.0],
            [0.4, 0.1, -0.3],
            [-0.2, 0.5, 0.2],
            [0.1, -0.6, 0.4],
            [0.3, 0.3, 0.3],
        ];
        let s = OverlapMatrix::build(&pos, [0.0, 0.0, -6.0], &Polarization::circular());
        let o = collective_overlap(&s, false).unwrap();
        assert!((o.c_up_dn - o.c_up_dn_direct).norm() < 1e-13);
        assert!(o.c_up_dn.norm() <= 1.0 + 1e-12);
        assert!(o.b_up_dn > 0.0);
    }

    #[test]
    fn rejects_single_atom_and_degenerate_norms() {
        let s = OverlapMatrix::from_entries(1, vec![c(1.0, 0.0)]);
        assert!(collective_overlap(&s, false).is_err());
        let s = OverlapMatrix::from_entries(
            2,
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            collective_overlap(&s, false),
            Err(Error::DegenerateNormalization { .. })
        ));
    }

    #[test]
    fn mode_loss_input_is_b() {
        let s = OverlapMatrix::from_entries(
            2,
            vec![c(1.0, 0.0), c(0.2, 0.0), c(0.2, 0.0), c(1.0, 0.0)],
        );
        let o = collective_overlap(&s, false).unwrap();
        assert_eq!(mode_loss_input(&o), o.b_up_dn);
    }
}
