mod common;

use cavity_cat::catstate::apply_beam_splitter;
use cavity_cat::fock::{beam_splitter_cat, cutoff_for, fock_overlap_lemma_check};
use cavity_cat::overlap::bessel::{j0, j2, legendre_p2};
use cavity_cat::overlap::pair::mode_overlap_v;
use cavity_cat::overlap::thermal::{mean_j0_sq, mean_j2_sq};
use cavity_cat::overlap::{collective_overlap, thermal_average_s12, OverlapMatrix, Polarization};
use cavity_cat::{CatState, CoherentAmplitude};
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn bessel_functions_match_extended_precision() {
    for &(x, ref0, ref2) in BESSEL_TABLE.iter() {
        let e0 = (j0(x) - ref0).abs() / ref0.abs();
        let e2 = (j2(x) - ref2).abs() / ref2.abs();
        assert!(e0 < 1e-10, "j0({x}): relative error {e0:e}");
        assert!(e2 < 1e-10, "j2({x}): relative error {e2:e}");
    }
}

#[test]
fn pair_overlap_at_kx_five_matches_sphere_quadrature() {
    // Separation along z, polarization along x: |e·ε| = 0.
    let eps = Polarization::linear_x();
    let quad = pair_overlap_quadrature(5.0, [0.0, 0.0, 1.0], &eps.vector(), 1e-12);
    let bessel = mode_overlap_v([0.0, 0.0, 5.0], 1.0, &eps);
    assert!((quad - bessel).abs() < 1e-8, "{quad} vs {bessel}");
}

#[test]
fn pair_overlap_far_apart_is_small() {
    for eps in [Polarization::circular(), Polarization::linear_x()] {
        for dir in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], normalize([1.0, 1.0, 1.0])] {
            let v = mode_overlap_v(dir.map(|c| 20.0 * c), 1.0, &eps);
            assert!(v.abs() < 0.1);
        }
    }
}

#[test]
fn angular_weights_of_p2() {
    // ⟨P₂(|n·ε|)⟩ = 0 and ⟨P₂(|n·ε|)²⟩ = (1 + P₂(|ε·ε|))/10 over the sphere.
    for eps in [Polarization::circular(), Polarization::linear_x()] {
        let v = eps.vector();
        let p2 = |n: [f64; 3]| legendre_p2(projection_sq(n, &v).sqrt());
        let mean = sphere_average(&p2, [0.0, 0.0, 1.0], 1e-12);
        let mean_sq = sphere_average(&|n| p2(n).powi(2), [0.0, 0.0, 1.0], 1e-12);
        assert!(mean.abs() < 1e-10);
        assert!((mean_sq - (1.0 + legendre_p2(eps.self_product())) / 10.0).abs() < 1e-10);
    }
}

#[test]
fn thermal_closed_forms_match_radial_quadrature() {
    let zeta = 5.0;
    let upper = 20.0 * zeta;
    // Transverse drive: |e_in·ε| = 0, so P₂ = −1/2.
    let p_in = -0.5;
    for eps in [Polarization::circular(), Polarization::linear_x()] {
        let v = eps.vector();
        let weight = sphere_average(
            &|n| legendre_p2(projection_sq(n, &v).sqrt()).powi(2),
            [0.0, 0.0, 1.0],
            1e-13,
        );
        let mean = adaptive_simpson(
            &|u| {
                let (a, b) = reference_j0_j2(u);
                (a * a - p_in * b * b) * radial_density(u, zeta)
            },
            0.0,
            upper,
            1e-14,
        );
        let mean_sq = adaptive_simpson(
            &|u| {
                let (a, b) = reference_j0_j2(u);
                (a * a + weight * b * b) * radial_density(u, zeta)
            },
            0.0,
            upper,
            1e-14,
        );
        let t = thermal_average_s12(zeta, &eps, [0.0, 0.0, -1.0]).unwrap();
        assert!(
            (t.mean - mean).abs() < 1e-6 * mean.abs(),
            "{} vs {mean}",
            t.mean
        );
        assert!(
            (t.mean_sq - mean_sq).abs() < 1e-6 * mean_sq,
            "{} vs {mean_sq}",
            t.mean_sq
        );
    }
    let i0 = adaptive_simpson(
        &|u| reference_j0_j2(u).0.powi(2) * radial_density(u, zeta),
        0.0,
        upper,
        1e-14,
    );
    let i2 = adaptive_simpson(
        &|u| reference_j0_j2(u).1.powi(2) * radial_density(u, zeta),
        0.0,
        upper,
        1e-14,
    );
    assert!((mean_j0_sq(zeta) / i0 - 1.0).abs() < 1e-9);
    assert!((mean_j2_sq(zeta) / i2 - 1.0).abs() < 1e-9);
}

#[test]
fn small_zeta_series_matches_radial_quadrature() {
    for zeta in [0.05, 0.3, 0.9] {
        let i2 = adaptive_simpson(
            &|u| reference_j0_j2(u).1.powi(2) * radial_density(u, zeta),
            0.0,
            20.0 * zeta,
            1e-16,
        );
        assert!((mean_j2_sq(zeta) / i2 - 1.0).abs() < 1e-8, "zeta {zeta}");
    }
}

#[test]
fn five_atom_collective_overlap_matches_mode_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let eps = Polarization::circular();
    let k_in = [0.0, 0.0, -1.0];
    let grid = DirectionGrid::new(80, 120);
    for _ in 0..3 {
        let positions: Vec<[f64; 3]> = (0..5)
            .map(|_| std::array::from_fn(|_| rng.random_range(-2.0..2.0)))
            .collect();
        let matrix = OverlapMatrix::build(&positions, k_in, &eps);
        let reduced = collective_overlap(&matrix, false).unwrap();
        let brute = collective_overlap_mode_sum(&positions, k_in, &eps.vector(), &grid);
        assert!(
            (reduced.c_up_dn - brute).norm() < 1e-10,
            "{} vs {brute}",
            reduced.c_up_dn
        );
        assert!((reduced.b_up_dn - (1.0 - brute.re)).abs() < 1e-10);
    }
}

#[test]
fn mode_sum_gram_matrix_matches_pair_overlaps() {
    let eps = Polarization::linear_x();
    let k_in = [0.0, 0.0, -1.0];
    let grid = DirectionGrid::new(60, 90);
    let (xi, xj) = ([0.3, -1.1, 0.4], [-0.8, 0.5, 1.2]);
    let fi = atom_far_field(&grid, xi, k_in, &eps.vector());
    let fj = atom_far_field(&grid, xj, k_in, &eps.vector());
    let norm = inner(&grid, &fi, &fi).re;
    let s = inner(&grid, &fi, &fj) / norm;
    let expected = cavity_cat::overlap::pair_overlap(xi, xj, k_in, &eps);
    assert!((s - expected).norm() < 1e-12);
}

#[test]
fn fock_beam_splitter_reproduces_closed_form() {
    for alpha in [c(0.3, 0.0), c(1.0, 1.0), c(0.0, 2.0), c(-1.2, 0.7)] {
        let cat = CatState::pure(c(0.6, 0.0), c(0.0, 0.8), alpha).unwrap();
        for loss in [0.1, 0.5, 0.9] {
            let fock = beam_splitter_cat(&cat, loss, 40).unwrap();
            let closed = apply_beam_splitter(&cat, loss).unwrap();
            assert!(fock.norm_deficit < 1e-10);
            assert!((fock.visibility - closed.visibility).abs() < 1e-6);
            assert!((fock.alpha_up - closed.alpha_up.value()).norm() < 1e-6);
            assert!((fock.alpha_dn - closed.alpha_dn.value()).norm() < 1e-6);
        }
    }
}

#[test]
fn one_lost_photon_costs_e_squared() {
    let alpha = c(1.5, 0.0);
    let loss = 1.0 / alpha.norm_sqr();
    let cat = CatState::pure(c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0), alpha).unwrap();
    let closed = apply_beam_splitter(&cat, loss).unwrap();
    assert!((closed.visibility - (-2.0f64).exp()).abs() < 1e-15);
    let fock = beam_splitter_cat(&cat, loss, cutoff_for(alpha.norm())).unwrap();
    assert!((fock.visibility - (-2.0f64).exp()).abs() < 1e-12);
}

#[test]
fn fock_lemma_reference_points() {
    let one = c(1.0, 0.0);
    let check = fock_overlap_lemma_check(c(0.0, 0.0), one, one, 40).unwrap();
    assert!((check.brute_force - (-1.0f64).exp()).norm() < 1e-14);

    let check = fock_overlap_lemma_check(c(0.5, 0.0), one, c(0.0, 2.0), 60).unwrap();
    assert!(check.cutoff_sufficient());
    assert!(check.error() < 1e-8);

    let (a, b) = (c(0.4, -0.9), c(1.1, 0.2));
    let check = fock_overlap_lemma_check(one, a, b, 50).unwrap();
    let direct = cavity_cat::catstate::coherent_overlap(
        CoherentAmplitude::from(a),
        CoherentAmplitude::from(b),
    );
    assert!((check.brute_force - direct).norm() < 1e-12);
}
