use num_complex::Complex64;

use super::bessel::{j0, j2, legendre_p2};
use super::polarization::Polarization;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Real part `V_ij` of the far-field dipole-mode overlap for separation
/// `x_ij`: `j₀(kx) + P₂(|e_ij·ε|) j₂(kx)`.
pub fn mode_overlap_v(x_ij: [f64; 3], k: f64, eps: &Polarization) -> f64 {
    let dist = dot(x_ij, x_ij).sqrt();
    if dist == 0.0 {
        return 1.0;
    }
    let e = x_ij.map(|c| c / dist);
    let kx = k * dist;
    j0(kx) + legendre_p2(eps.projection(e)) * j2(kx)
}

/// `S_ij = e^{−iβ_ij} V_ij` with `β_ij = k_in·(x_i − x_j)`.
pub fn pair_overlap(x_i: [f64; 3], x_j: [f64; 3], k_in: [f64; 3], eps: &Polarization) -> Complex64 {
    let x_ij = sub(x_i, x_j);
    let v = mode_overlap_v(x_ij, dot(k_in, k_in).sqrt(), eps);
    let beta = dot(k_in, x_ij);
    Complex64::from_polar(v, -beta)
}

/// Hermitian matrix of pair overlaps with unit diagonal, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix {
    n: usize,
    s: Vec<Complex64>,
}

impl OverlapMatrix {
    pub fn build(positions: &[[f64; 3]], k_in: [f64; 3], eps: &Polarization) -> Self {
        let n = positions.len();
        let mut s = vec![Complex64::new(1.0, 0.0); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = pair_overlap(positions[i], positions[j], k_in, eps);
                s[i * n + j] = v;
                s[j * n + i] = v.conj();
            }
        }
        OverlapMatrix { n, s }
    }

    /// Wraps an explicit matrix; used by tests with hand-built entries.
    pub fn from_entries(n: usize, s: Vec<Complex64>) -> Self {
        assert_eq!(s.len(), n * n, "expected {n}x{n} entries");
        OverlapMatrix { n, s }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.s[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.s[i * self.n..(i + 1) * self.n]
    }

    /// Mean of `S_ij` and of `|S_ij|²` over `i < j`.
    pub fn pair_moments(&self) -> (Complex64, f64) {
        let mut re = super::CompensatedSum::default();
        let mut im = super::CompensatedSum::default();
        let mut sq = super::CompensatedSum::default();
        for i in 0..self.n {
            for &v in &self.row(i)[i + 1..] {
                re.add(v.re);
                im.add(v.im);
                sq.add(v.norm_sqr());
            }
        }
        let pairs = (self.n * (self.n.saturating_sub(1)) / 2).max(1) as f64;
        (
            Complex64::new(re.value(), im.value()) / pairs,
            sq.value() / pairs,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: [f64; 3] = [0.0, 0.0, -1.0];

    #[test]
    fn coincident_atoms_overlap_fully() {
        let x = [0.3, -1.2, 4.0];
        assert_eq!(
            pair_overlap(x, x, K, &Polarization::circular()),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn distant_atoms_are_nearly_orthogonal() {
        for eps in [Polarization::circular(), Polarization::linear_x()] {
            for dir in [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8]] {
                let v = mode_overlap_v(dir.map(|c| 20.0 * c), 1.0, &eps);
                assert!(v.abs() < 0.1);
            }
        }
    }

    #[test]
    fn phase_from_incident_wave() {
        let eps = Polarization::linear_x();
        let s = pair_overlap([0.0, 0.0, 0.5], [0.0, 0.0, 0.0], K, &eps);
        let v = mode_overlap_v([0.0, 0.0, 0.5], 1.0, &eps);
        // β = k_in·x_ij = −0.5
        assert!((s - Complex64::from_polar(v, 0.5)).norm() < 1e-16);
    }

    #[test]
    fn matrix_is_hermitian() {
        let pos = [[0.0, 0.0, 0.0], [1.0, 0.5, -0.2], [-0.7, 2.0, 1.1]];
        let m = OverlapMatrix::build(&pos, [0.0, 0.0, -3.0], &Polarization::circular());
        for i in 0..3 {
            assert_eq!(m.get(i, i), Complex64::new(1.0, 0.0));
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(j, i).conj());
                assert!(m.get(i, j).norm() <= 1.0 + 1e-12);
            }
        }
    }
}
