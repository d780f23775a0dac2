//! Python bindings: parameter and loss-budget types, cat states, and the
//! sweeps and Monte Carlo studies behind the command-line tool.

use cavity_cat::catstate::{
    self, loss_budget, loss_budget_large_lambda, max_photon_number, optimal_lambda,
};
use cavity_cat::model::{detuned_amplitudes, output_amplitudes, reflection_coefficient};
use cavity_cat::overlap::montecarlo::{Estimate, MonteCarloConfig};
use cavity_cat::overlap::pair::mode_overlap_v as core_mode_overlap_v;
use cavity_cat::overlap::{
    monte_carlo as core_monte_carlo, power_law_study as core_power_law, Polarization,
};
use cavity_cat::semiclassical::convergence_study as core_convergence;
use cavity_cat::steady::solve_steady_state;
use cavity_cat::{DetuningSet, QubitBranch, TwoPhotonDetuning};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: cavity_cat::Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn branch(name: &str) -> PyResult<QubitBranch> {
    match name {
        "up" => Ok(QubitBranch::Up),
        "dn" | "down" => Ok(QubitBranch::Dn),
        other => Err(PyValueError::new_err(format!(
            "branch must be 'up' or 'dn', got {other:?}"
        ))),
    }
}

fn polarization(name: &str) -> PyResult<Polarization> {
    match name {
        "circular" => Ok(Polarization::circular()),
        "linear-x" | "linear_x" => Ok(Polarization::linear_x()),
        other => Err(PyValueError::new_err(format!(
            "polarization must be 'circular' or 'linear-x', got {other:?}"
        ))),
    }
}

fn detunings(delta_c: f64, delta_s: f64, delta_2: f64) -> DetuningSet {
    DetuningSet {
        delta_c,
        delta_s,
        delta_2_up: TwoPhotonDetuning::Blockaded,
        delta_2_dn: TwoPhotonDetuning::Finite(delta_2),
    }
}

/// Cavity and ensemble parameters in units where κ = γ = γ_rg = 1.
#[pyclass(frozen, module = "cavcat")]
struct CavityParams {
    inner: cavity_cat::CavityParams,
}

#[pymethods]
impl CavityParams {
    #[new]
    #[pyo3(signature = (eta_esc=0.9825, coop=21.0, lambda_dn=21.0))]
    fn new(eta_esc: f64, coop: f64, lambda_dn: f64) -> PyResult<Self> {
        let inner =
            cavity_cat::CavityParams::from_lambda(eta_esc, coop, lambda_dn).map_err(to_py)?;
        Ok(CavityParams { inner })
    }

    /// Parameters from explicit rates and the coupling Rabi frequency.
    #[staticmethod]
    fn from_rates(
        eta_esc: f64,
        coop: f64,
        kappa: f64,
        gamma: f64,
        omega_c: f64,
        gamma_rg: f64,
    ) -> PyResult<Self> {
        let inner = cavity_cat::CavityParams::new(eta_esc, coop, kappa, gamma, omega_c, gamma_rg)
            .map_err(to_py)?;
        Ok(CavityParams { inner })
    }

    #[getter]
    fn eta_esc(&self) -> f64 {
        self.inner.eta_esc()
    }

    #[getter]
    fn coop(&self) -> f64 {
        self.inner.coop()
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma()
    }

    #[getter]
    fn omega_c(&self) -> f64 {
        self.inner.omega_c()
    }

    #[getter]
    fn gamma_rg(&self) -> f64 {
        self.inner.gamma_rg()
    }

    #[getter]
    fn lambda_dn(&self) -> f64 {
        self.inner.lambda_dn()
    }

    /// `(r, a, m)` on resonance for one qubit branch.
    #[pyo3(signature = (branch_name, alpha_in=Complex64::new(1.0, 0.0)))]
    fn output_amplitudes(
        &self,
        branch_name: &str,
        alpha_in: Complex64,
    ) -> PyResult<(Complex64, Complex64, Complex64)> {
        let out = output_amplitudes(&self.inner, branch(branch_name)?, alpha_in);
        Ok((out.r, out.a, out.m))
    }

    /// `(r, a, m)` at arbitrary detunings; the blockaded branch is always
    /// infinitely far from two-photon resonance.
    #[pyo3(signature = (branch_name, alpha_in=Complex64::new(1.0, 0.0), delta_c=0.0, delta_s=0.0, delta_2=0.0))]
    fn detuned_amplitudes(
        &self,
        branch_name: &str,
        alpha_in: Complex64,
        delta_c: f64,
        delta_s: f64,
        delta_2: f64,
    ) -> PyResult<(Complex64, Complex64, Complex64)> {
        let det = detunings(delta_c, delta_s, delta_2);
        let out =
            detuned_amplitudes(&self.inner, &det, branch(branch_name)?, alpha_in).map_err(to_py)?;
        Ok((out.r, out.a, out.m))
    }

    #[pyo3(signature = (branch_name, delta_c=0.0, delta_s=0.0, delta_2=0.0))]
    fn reflection(
        &self,
        branch_name: &str,
        delta_c: f64,
        delta_s: f64,
        delta_2: f64,
    ) -> PyResult<Complex64> {
        let det = detunings(delta_c, delta_s, delta_2);
        reflection_coefficient(&self.inner, &det, branch(branch_name)?).map_err(to_py)
    }

    /// Reflected amplitude from the steady state of the cavity, polarization
    /// and spin-wave equations.
    #[pyo3(signature = (branch_name, alpha_in=Complex64::new(1.0, 0.0), delta_c=0.0, delta_s=0.0, delta_2=0.0))]
    fn steady_state_output(
        &self,
        branch_name: &str,
        alpha_in: Complex64,
        delta_c: f64,
        delta_s: f64,
        delta_2: f64,
    ) -> PyResult<Complex64> {
        let det = detunings(delta_c, delta_s, delta_2);
        let ss =
            solve_steady_state(&self.inner, &det, branch(branch_name)?, alpha_in).map_err(to_py)?;
        Ok(ss.e_out)
    }

    /// Loss budget at this `Λ↓` with mode mismatch `b_mode`.
    #[pyo3(signature = (b_mode=0.0))]
    fn loss_budget(&self, b_mode: f64) -> PyResult<LossBudget> {
        loss_budget(&self.inner, b_mode)
            .map(LossBudget::from)
            .map_err(to_py)
    }

    /// Loss budget in the limit of a very large `Λ↓`.
    fn loss_budget_large_lambda(&self) -> LossBudget {
        loss_budget_large_lambda(&self.inner).into()
    }

    fn __repr__(&self) -> String {
        format!(
            "CavityParams(eta_esc={}, coop={}, lambda_dn={})",
            self.inner.eta_esc(),
            self.inner.coop(),
            self.inner.lambda_dn()
        )
    }
}

#[pyclass(frozen, get_all, module = "cavcat")]
struct LossBudget {
    l_cav: f64,
    l_a: f64,
    l_m: f64,
    l_mode: f64,
    l_ell: f64,
    l_gen: f64,
    a_mode: f64,
    eta: f64,
}

impl From<cavity_cat::LossBudget> for LossBudget {
    fn from(b: cavity_cat::LossBudget) -> Self {
        LossBudget {
            l_cav: b.l_cav,
            l_a: b.l_a,
            l_m: b.l_m,
            l_mode: b.l_mode,
            l_ell: b.l_ell,
            l_gen: b.l_gen,
            a_mode: b.a_mode,
            eta: b.eta,
        }
    }
}

impl LossBudget {
    fn core(&self) -> cavity_cat::LossBudget {
        cavity_cat::LossBudget {
            l_cav: self.l_cav,
            l_a: self.l_a,
            l_m: self.l_m,
            l_mode: self.l_mode,
            l_ell: self.l_ell,
            l_gen: self.l_gen,
            a_mode: self.a_mode,
            eta: self.eta,
        }
    }
}

#[pymethods]
impl LossBudget {
    /// `L_gen/(1 − L_gen)`.
    fn gen_ratio(&self) -> f64 {
        self.core().gen_ratio()
    }

    /// Largest `α_out²` keeping `V_out/V₀ ≥ ratio`.
    fn max_output_photons(&self, ratio: f64) -> PyResult<f64> {
        self.core().max_output_photons(ratio).map_err(to_py)
    }

    fn visibility_ratio_from_output(&self, alpha_out_sq: f64) -> f64 {
        self.core().visibility_ratio_from_output(alpha_out_sq)
    }

    fn __repr__(&self) -> String {
        format!(
            "LossBudget(l_gen={:.6}, l_cav={:.6}, l_a={:.3e}, l_m={:.6}, a_mode={:.6})",
            self.l_gen, self.l_cav, self.l_a, self.l_m, self.a_mode
        )
    }
}

/// Qubit-light superposition with visibility `V` and phase `θ`.
#[pyclass(frozen, module = "cavcat")]
struct CatState {
    inner: catstate::CatState,
}

#[pymethods]
impl CatState {
    #[new]
    fn new(
        f: f64,
        theta: f64,
        visibility: f64,
        alpha_up: Complex64,
        alpha_dn: Complex64,
    ) -> PyResult<Self> {
        let inner = catstate::CatState::new(f, theta, visibility, alpha_up.into(), alpha_dn.into())
            .map_err(to_py)?;
        Ok(CatState { inner })
    }

    /// `q_up|↑,−α⟩ + q_dn|↓,α⟩`.
    #[staticmethod]
    fn pure(q_up: Complex64, q_dn: Complex64, alpha: Complex64) -> PyResult<Self> {
        let inner = catstate::CatState::pure(q_up, q_dn, alpha).map_err(to_py)?;
        Ok(CatState { inner })
    }

    #[getter]
    fn f(&self) -> f64 {
        self.inner.f
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta
    }

    #[getter]
    fn visibility(&self) -> f64 {
        self.inner.visibility
    }

    #[getter]
    fn alpha_up(&self) -> Complex64 {
        self.inner.alpha_up.value()
    }

    #[getter]
    fn alpha_dn(&self) -> Complex64 {
        self.inner.alpha_dn.value()
    }

    fn effective_size(&self) -> f64 {
        self.inner.effective_size()
    }

    /// The state after losing a fraction `loss` of the light.
    fn apply_beam_splitter(&self, loss: f64) -> PyResult<CatState> {
        let inner = catstate::apply_beam_splitter(&self.inner, loss).map_err(to_py)?;
        Ok(CatState { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "CatState(f={}, theta={}, visibility={}, alpha_eff={})",
            self.inner.f,
            self.inner.theta,
            self.inner.visibility,
            self.inner.effective_size()
        )
    }
}

/// Reflects `alpha_in` off the cavity with the qubit prepared with weight
/// `f` on the blockaded branch.
#[pyfunction]
#[pyo3(signature = (params, f=0.5, alpha_in=Complex64::new(1.0, 0.0), v0=1.0, theta0=0.0))]
fn generate_cat(
    params: &CavityParams,
    f: f64,
    alpha_in: Complex64,
    v0: f64,
    theta0: f64,
) -> PyResult<CatState> {
    let (inner, _) =
        catstate::generate_cat(&params.inner, f, v0, theta0, alpha_in).map_err(to_py)?;
    Ok(CatState { inner })
}

/// Optimal operating point: `Λ↓ = C` and its loss budget, with the largest
/// `α_out²` keeping the visibility above `1/e` (`None` when unbounded).
#[pyfunction]
#[pyo3(signature = (eta_esc=0.9825, coop=21.0))]
fn headline<'py>(py: Python<'py>, eta_esc: f64, coop: f64) -> PyResult<Bound<'py, PyDict>> {
    let probe = cavity_cat::CavityParams::from_lambda(eta_esc, coop, 1.0).map_err(to_py)?;
    let lambda_opt = optimal_lambda(&probe).map_err(to_py)?;
    let params = cavity_cat::CavityParams::from_lambda(eta_esc, coop, lambda_opt).map_err(to_py)?;
    let budget = loss_budget(&params, 0.0).map_err(to_py)?;
    let photons = match max_photon_number(&params, (-1.0f64).exp()) {
        Ok(n) => Some(n),
        Err(e) if e.is_validation() && eta_esc >= 1.0 => None,
        Err(e) => return Err(to_py(e)),
    };
    let d = PyDict::new(py);
    d.set_item("lambda_opt", lambda_opt)?;
    d.set_item("l_gen", budget.l_gen)?;
    d.set_item("l_cav", budget.l_cav)?;
    d.set_item("l_a", budget.l_a)?;
    d.set_item("l_m", budget.l_m)?;
    d.set_item("gen_ratio", budget.gen_ratio())?;
    d.set_item("alpha_out_sq_at_1_over_e", photons)?;
    d.set_item("a_mode", budget.a_mode)?;
    d.set_item("eta", budget.eta)?;
    Ok(d)
}

/// Loss coefficients and emitted amplitudes over a grid of `Λ↓`, as a dict
/// of equal-length lists.
#[pyfunction]
fn sweep_figure2<'py>(
    py: Python<'py>,
    eta_esc: f64,
    coop: f64,
    lambda_grid: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let rows = py
        .detach(|| catstate::sweep_figure2(eta_esc, coop, &lambda_grid))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    let col = |f: fn(&catstate::Figure2Row) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    d.set_item("lambda_dn", col(|r| r.lambda_dn))?;
    d.set_item("l_a", col(|r| r.l_a))?;
    d.set_item("l_m", col(|r| r.l_m))?;
    d.set_item("l_gen", col(|r| r.l_gen))?;
    d.set_item("l_cav", col(|r| r.l_cav))?;
    d.set_item("a_up_over_in", col(|r| r.a_up_over_in))?;
    d.set_item("a_dn_over_in", col(|r| r.a_dn_over_in))?;
    Ok(d)
}

/// Real far-field overlap `V` of two dipole modes separated by `x`.
#[pyfunction]
#[pyo3(signature = (x, k=1.0, polarization_name="circular"))]
fn mode_overlap_v(x: [f64; 3], k: f64, polarization_name: &str) -> PyResult<f64> {
    Ok(core_mode_overlap_v(x, k, &polarization(polarization_name)?))
}

fn estimate<'py>(py: Python<'py>, e: &Estimate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("mean", e.mean)?;
    d.set_item("stderr", e.stderr)?;
    Ok(d)
}

fn cloud(
    n_atoms: usize,
    runs: usize,
    seed: u64,
    sigmas: [f64; 3],
    wavelength: f64,
    polarization_name: &str,
    isotropic: bool,
) -> PyResult<MonteCarloConfig> {
    Ok(MonteCarloConfig {
        n_atoms,
        sigmas,
        wavelength,
        eps: polarization(polarization_name)?,
        n_runs: runs,
        seed,
        isotropic,
    })
}

/// Collective mode overlap statistics over `runs` random clouds.
#[pyfunction]
#[pyo3(signature = (n_atoms=260, runs=100, seed=0, sigmas=[3.3, 4.5, 1.7], wavelength=0.78, polarization_name="circular", isotropic=false))]
#[allow(clippy::too_many_arguments)]
fn monte_carlo<'py>(
    py: Python<'py>,
    n_atoms: usize,
    runs: usize,
    seed: u64,
    sigmas: [f64; 3],
    wavelength: f64,
    polarization_name: &str,
    isotropic: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let config = cloud(
        n_atoms,
        runs,
        seed,
        sigmas,
        wavelength,
        polarization_name,
        isotropic,
    )?;
    let stats = py.detach(|| core_monte_carlo(&config)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("n_atoms", stats.n_atoms)?;
    d.set_item("n_runs", stats.n_runs)?;
    d.set_item("zeta", stats.zeta)?;
    d.set_item("b", estimate(py, &stats.b_up_dn)?)?;
    d.set_item("re_c", estimate(py, &stats.re_c)?)?;
    d.set_item("im_c", estimate(py, &stats.im_c)?)?;
    d.set_item("s12_re", estimate(py, &stats.s12_re)?)?;
    d.set_item("s12_im", estimate(py, &stats.s12_im)?)?;
    d.set_item("s12_rms", estimate(py, &stats.s12_rms)?)?;
    Ok(d)
}

/// Mean mode mismatch at each atom number and the `c₃ N⁻³` fit.
#[pyfunction]
#[pyo3(signature = (n_grid, seed=0, sigmas=[3.3, 4.5, 1.7], wavelength=0.78, polarization_name="circular", isotropic=false))]
fn power_law_study<'py>(
    py: Python<'py>,
    n_grid: Vec<usize>,
    seed: u64,
    sigmas: [f64; 3],
    wavelength: f64,
    polarization_name: &str,
    isotropic: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let template = cloud(3, 2, seed, sigmas, wavelength, polarization_name, isotropic)?;
    template.validate().map_err(to_py)?;
    let study = py
        .detach(|| core_power_law(&template, &n_grid))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item(
        "n_atoms",
        study.points.iter().map(|p| p.n_atoms).collect::<Vec<_>>(),
    )?;
    d.set_item(
        "n_runs",
        study.points.iter().map(|p| p.n_runs).collect::<Vec<_>>(),
    )?;
    d.set_item(
        "b_mean",
        study
            .points
            .iter()
            .map(|p| p.b_up_dn.mean)
            .collect::<Vec<_>>(),
    )?;
    d.set_item(
        "b_stderr",
        study
            .points
            .iter()
            .map(|p| p.b_up_dn.stderr)
            .collect::<Vec<_>>(),
    )?;
    d.set_item("c3", study.fit.c3)?;
    d.set_item("c3_err", study.fit.c3_err)?;
    d.set_item("free_slope", study.fit.free_slope)?;
    d.set_item("free_slope_err", study.fit.free_slope_err)?;
    Ok(d)
}

/// Ring-resonator amplitudes against the closed forms over a finesse grid.
#[pyfunction]
#[pyo3(signature = (params, finesse_grid, branch_name="dn", delta_c=0.0, delta_s=0.0, delta_2=0.0))]
fn convergence_study<'py>(
    py: Python<'py>,
    params: &CavityParams,
    finesse_grid: Vec<f64>,
    branch_name: &str,
    delta_c: f64,
    delta_s: f64,
    delta_2: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let det = detunings(delta_c, delta_s, delta_2);
    let b = branch(branch_name)?;
    let study = py
        .detach(|| core_convergence(&params.inner, &det, b, &finesse_grid))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item(
        "finesse",
        study.points.iter().map(|p| p.finesse).collect::<Vec<_>>(),
    )?;
    d.set_item(
        "err_max",
        study
            .points
            .iter()
            .map(|p| p.max_error())
            .collect::<Vec<_>>(),
    )?;
    d.set_item("slope_r", study.slope_r)?;
    d.set_item("slope_a", study.slope_a)?;
    d.set_item("slope_m", study.slope_m)?;
    d.set_item("slope_max", study.slope_max)?;
    Ok(d)
}

#[pymodule]
fn cavcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<CavityParams>()?;
    m.add_class::<LossBudget>()?;
    m.add_class::<CatState>()?;
    m.add_function(wrap_pyfunction!(generate_cat, m)?)?;
    m.add_function(wrap_pyfunction!(headline, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_figure2, m)?)?;
    m.add_function(wrap_pyfunction!(mode_overlap_v, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(power_law_study, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_study, m)?)?;
    Ok(())
}
