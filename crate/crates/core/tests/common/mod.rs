//! Independent numerical oracles shared by the integration tests.
//!
//! Nothing here calls into the library's overlap code: pair overlaps are
//! integrated over the sphere directly, and collective modes are built from
//! explicit far-field mode functions sampled on a direction grid.

#![allow(dead_code, clippy::excessive_precision, clippy::too_many_arguments)]

use num_complex::Complex64;

/// `(x, j₀(x), j₂(x))` evaluated in 40-digit arithmetic.
pub const BESSEL_TABLE: [(f64, f64, f64); 30] = [
    (1e-8, 0.99999999999999998333, 6.666666666666666619e-18),
    (1e-6, 0.99999999999983333333, 6.6666666666661904762e-14),
    (1e-4, 0.99999999833333333417, 6.6666666619047619061e-10),
    (0.001, 0.99999983333334166667, 6.6666661904762037037e-8),
    (0.01, 0.99998333341666646825, 6.6666190477513225509e-6),
    (0.1, 0.99833416646828152307, 0.00066619060844556870586),
    (0.25, 0.98961583701809171839, 0.004148097739361125267),
    (0.49, 0.96046099626766946159, 0.015733976546340941019),
    (0.5, 0.95885107720840600055, 0.016371106607993412617),
    (0.51, 0.95721028800570096961, 0.017020165972957698238),
    (0.75, 0.90885168003111222231, 0.036016646141108236351),
    (1.0, 0.84147098480789650665, 0.062035052011373861102),
    (1.5, 0.66499665773603628729, 0.12734928368840821565),
    (2.0, 0.4546487134128408477, 0.19844794905714657832),
    (3.0, 0.047040002686622407367, 0.29863749707573354751),
    (4.0, -0.18920062382698206284, 0.27628368577135016005),
    (5.0, -0.19178485493262769378, 0.13473121008512521879),
    (7.5, 0.12506666356996518106, -0.13688365846410174799),
    (10.0, -0.05440211108893698134, 0.077942193628562445468),
    (15.0, 0.043352522677141124389, -0.032645316869994959079),
    (20.0, 0.045647262536381382719, -0.048365523530958962244),
    (33.0, 0.030300359397189913507, -0.030180312271514295346),
    (50.0, -0.0052474970740785757183, 0.0040832408433991454985),
    (75.0, -0.0051704218054590725031, 0.0046760635699762946957),
    (100.0, -0.0050636564110975879366, 0.00480344165248795348),
    (150.0, -0.0047658428641944308762, 0.0046719739776154216013),
    (250.0, -0.003882112078167221552, 0.0038703582981337771105),
    (400.0, -0.0021272983990979412016, 0.0021371078186025056647),
    (
        600.0,
        0.000073637413886455325338,
        -0.000065311604584398723325,
    ),
    (
        1000.0,
        0.00082687954053200256026,
        -0.00082856419712225307322,
    ),
];

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    // Presplitting keeps oscillatory integrands from fooling the first estimate.
    let pieces = 16;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|p| {
            let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            step(f, lo, hi, fa, fm, fb, whole, tol / pieces as f64, 40)
        })
        .sum()
}

/// Adaptive Gauss-Legendre quadrature: a 10-point rule on each interval,
/// bisected until the halves agree with the whole to `tol`.
pub fn adaptive_gauss(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rule(f: &dyn Fn(f64) -> f64, nodes: &[(f64, f64)], a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        half * nodes
            .iter()
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
    fn step(
        f: &dyn Fn(f64) -> f64,
        nodes: &[(f64, f64)],
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (left, right) = (rule(f, nodes, a, m), rule(f, nodes, m, b));
        if depth == 0 || (left + right - whole).abs() <= tol {
            return left + right;
        }
        step(f, nodes, a, m, left, 0.5 * tol, depth - 1)
            + step(f, nodes, m, b, right, 0.5 * tol, depth - 1)
    }
    let nodes = gauss_legendre(10);
    step(f, &nodes, a, b, rule(f, &nodes, a, b), tol, 30)
}

/// Average of `g(n)` over the unit sphere by nested adaptive Gauss-Legendre
/// quadrature in `(cos θ, φ)` about the polar axis `axis`.
pub fn sphere_average(g: &dyn Fn([f64; 3]) -> f64, axis: [f64; 3], tol: f64) -> f64 {
    let (u, w) = orthonormal_frame(axis);
    let outer = |ct: f64| {
        let st = (1.0 - ct * ct).max(0.0).sqrt();
        let inner = |phi: f64| {
            let (sp, cp) = phi.sin_cos();
            let n: [f64; 3] = std::array::from_fn(|c| ct * axis[c] + st * (cp * u[c] + sp * w[c]));
            g(n)
        };
        adaptive_gauss(&inner, 0.0, 2.0 * std::f64::consts::PI, tol)
    };
    adaptive_gauss(&outer, -1.0, 1.0, tol) / (4.0 * std::f64::consts::PI)
}

fn orthonormal_frame(axis: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if axis[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let u = normalize(cross(axis, helper));
    (u, cross(axis, u))
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = dot(a, a).sqrt();
    a.map(|c| c / n)
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `|n·ε|²` for a complex polarization.
pub fn projection_sq(n: [f64; 3], eps: &[Complex64; 3]) -> f64 {
    (0..3).map(|c| n[c] * eps[c]).sum::<Complex64>().norm_sqr()
}

/// `V = (3/2)⟨(1 − |n·ε|²) e^{ik x n·e}⟩` for separation `k x` along unit
/// vector `e`, integrated over the sphere. The sine part cancels under
/// `n → −n`, so only the cosine is integrated.
pub fn pair_overlap_quadrature(kx: f64, e: [f64; 3], eps: &[Complex64; 3], tol: f64) -> f64 {
    let g = |n: [f64; 3]| (1.0 - projection_sq(n, eps)) * (kx * dot(n, e)).cos();
    1.5 * sphere_average(&g, e, tol)
}

/// Radial density of `u = k|x_rel|` when each component of `k x_rel` is
/// normal with standard deviation `zeta`.
pub fn radial_density(u: f64, zeta: f64) -> f64 {
    (2.0 / std::f64::consts::PI).sqrt() * u * u / zeta.powi(3)
        * (-0.5 * u * u / (zeta * zeta)).exp()
}

/// `j₀` and `j₂` from the trigonometric forms, with a series through `x⁸`
/// below 0.5 (truncation error about 2·10⁻¹¹).
pub fn reference_j0_j2(x: f64) -> (f64, f64) {
    if x < 0.5 {
        let x2 = x * x;
        let j0 = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0 + x2.powi(4) / 362_880.0;
        let j2 = x2 / 15.0 * (1.0 - x2 / 14.0 + x2 * x2 / 504.0 - x2 * x2 * x2 / 33_264.0);
        (j0, j2)
    } else {
        let (s, c) = x.sin_cos();
        (s / x, (3.0 / x.powi(3) - 1.0 / x) * s - 3.0 / (x * x) * c)
    }
}

/// Gauss-Legendre nodes and weights on `[−1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Far-field direction grid: Gauss-Legendre in `cos θ`, uniform in `φ`.
pub struct DirectionGrid {
    pub dirs: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl DirectionGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let mut dirs = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (ct, wt) in gauss_legendre(n_theta) {
            let st = (1.0 - ct * ct).sqrt();
            for p in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * p as f64 / n_phi as f64;
                dirs.push([st * phi.cos(), st * phi.sin(), ct]);
                weights.push(wt * 2.0 * std::f64::consts::PI / n_phi as f64);
            }
        }
        DirectionGrid { dirs, weights }
    }
}

/// A vector field sampled on a [`DirectionGrid`].
pub type Field = Vec<[Complex64; 3]>;

/// Far field scattered by an atom at `x` driven by a plane wave `k_in` with
/// polarization `ε`: `(ε − n(n·ε)) e^{i(k_in − k n)·x}`.
pub fn atom_far_field(
    grid: &DirectionGrid,
    x: [f64; 3],
    k_in: [f64; 3],
    eps: &[Complex64; 3],
) -> Field {
    let k = dot(k_in, k_in).sqrt();
    grid.dirs
        .iter()
        .map(|&n| {
            let n_eps: Complex64 = (0..3).map(|c| n[c] * eps[c]).sum();
            let phase =
                Complex64::from_polar(1.0, (0..3).map(|c| (k_in[c] - k * n[c]) * x[c]).sum());
            std::array::from_fn(|c| (eps[c] - n[c] * n_eps) * phase)
        })
        .collect()
}

pub fn inner(grid: &DirectionGrid, a: &Field, b: &Field) -> Complex64 {
    a.iter()
        .zip(b)
        .zip(&grid.weights)
        .map(|((u, v), w)| *w * (0..3).map(|c| u[c].conj() * v[c]).sum::<Complex64>())
        .sum()
}

fn add_scaled(acc: &mut Field, f: &Field, s: Complex64) {
    for (a, b) in acc.iter_mut().zip(f) {
        for c in 0..3 {
            a[c] += s * b[c];
        }
    }
}

fn normalized(grid: &DirectionGrid, f: Field) -> Field {
    let n = inner(grid, &f, &f).re.sqrt();
    f.into_iter().map(|v| v.map(|c| c / n)).collect()
}

/// `⟨c↑|c↓⟩` from explicit mode functions: `c↓` is the normalized field of
/// all atoms, `c↑` the normalized sum over `i` of the normalized fields with
/// atom `i` dark.
pub fn collective_overlap_mode_sum(
    positions: &[[f64; 3]],
    k_in: [f64; 3],
    eps: &[Complex64; 3],
    grid: &DirectionGrid,
) -> Complex64 {
    let zero: Field = vec![[Complex64::new(0.0, 0.0); 3]; grid.dirs.len()];
    let one = Complex64::new(1.0, 0.0);
    let fields: Vec<Field> = positions
        .iter()
        .map(|&x| atom_far_field(grid, x, k_in, eps))
        .collect();
    let mut all = zero.clone();
    for f in &fields {
        add_scaled(&mut all, f, one);
    }
    let mut up = zero.clone();
    for i in 0..fields.len() {
        let mut dark = zero.clone();
        for (j, f) in fields.iter().enumerate() {
            if j != i {
                add_scaled(&mut dark, f, one);
            }
        }
        add_scaled(&mut up, &normalized(grid, dark), one);
    }
    inner(grid, &normalized(grid, up), &normalized(grid, all))
}
