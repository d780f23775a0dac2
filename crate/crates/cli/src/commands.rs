//! One function per subcommand, each returning a [`Report`].

use std::f64::consts::E;

use cavity_cat::catstate::{
    loss_budget, loss_budget_large_lambda, max_photon_number, optimal_lambda, sweep_figure2,
};
use cavity_cat::model::{detuned_amplitudes, output_amplitudes};
use cavity_cat::overlap::montecarlo::MonteCarloConfig;
use cavity_cat::overlap::pair::mode_overlap_v;
use cavity_cat::overlap::{monte_carlo, power_law_study, Polarization};
use cavity_cat::semiclassical::{convergence_study, intracavity_and_outputs, RoundTripCavity};
use cavity_cat::steady::solve_steady_state;
use cavity_cat::{CavityParams, DetuningSet, LossBudget, QubitBranch, TwoPhotonDetuning};
use num_complex::Complex64;

use crate::args::*;
use crate::config::ConfigFile;
use crate::error::CliError;
use crate::grid::{parse_float_grid, parse_int_grid, parse_triple, Spacing};
use crate::output::{Cell, Report, Table};

pub const DEFAULT_ETA_ESC: f64 = 0.9825;
pub const DEFAULT_COOP: f64 = 21.0;

/// Values shared by every command after flag and config resolution.
pub struct Context<'a> {
    pub config: &'a ConfigFile,
    pub seed: u64,
}

fn cavity(ctx: &Context, args: &CavityArgs) -> Result<(f64, f64), CliError> {
    Ok((
        ctx.config
            .resolve(args.eta_esc, "eta-esc", DEFAULT_ETA_ESC)?,
        ctx.config.resolve(args.coop, "coop", DEFAULT_COOP)?,
    ))
}

fn branches(arg: BranchArg) -> &'static [QubitBranch] {
    match arg {
        BranchArg::Up => &[QubitBranch::Up],
        BranchArg::Dn => &[QubitBranch::Dn],
        BranchArg::Both => &QubitBranch::BOTH,
    }
}

fn branch_name(branch: QubitBranch) -> &'static str {
    match branch {
        QubitBranch::Up => "up",
        QubitBranch::Dn => "dn",
    }
}

pub fn amplitudes(ctx: &Context, args: &AmplitudesArgs) -> Result<Report, CliError> {
    let cfg = ctx.config;
    let (eta_esc, coop) = cavity(ctx, &args.cavity)?;
    let lambda_dn = cfg.resolve(args.lambda_dn, "lambda-dn", DEFAULT_COOP)?;
    let branch = cfg.resolve(args.branch, "branch", BranchArg::Both)?;
    let alpha_in = Complex64::new(
        cfg.resolve(args.alpha_in, "alpha-in", 1.0)?,
        cfg.resolve(args.alpha_in_im, "alpha-in-im", 0.0)?,
    );
    if !(alpha_in.re.is_finite() && alpha_in.im.is_finite()) {
        return Err(CliError::Invalid("alpha-in must be finite".into()));
    }
    let params = CavityParams::from_lambda(eta_esc, coop, lambda_dn)?;

    let mut table = Table::new(vec![
        "branch",
        "r_re",
        "r_im",
        "a_re",
        "a_im",
        "m_re",
        "m_im",
        "energy_residual",
    ]);
    for &b in branches(branch) {
        let out = output_amplitudes(&params, b, alpha_in);
        table.push(vec![
            branch_name(b).into(),
            out.r.re.into(),
            out.r.im.into(),
            out.a.re.into(),
            out.a.im.into(),
            out.m.re.into(),
            out.m.im.into(),
            out.energy_residual().into(),
        ]);
    }
    Ok(Report {
        table: Some(table),
        summary: vec![],
    })
}

pub fn figure2(ctx: &Context, args: &Figure2Args) -> Result<Report, CliError> {
    let (eta_esc, coop) = cavity(ctx, &args.cavity)?;
    let text = ctx.config.resolve(
        args.lambda_grid.clone(),
        "lambda-grid",
        "1:1000:400".to_string(),
    )?;
    let mut grid = parse_float_grid(&text, Spacing::Log, "lambda-grid")?;
    // The optimum sits at Λ↓ = C; make sure the curve passes through it.
    let (lo, hi) = grid
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if coop >= lo && coop <= hi && !grid.contains(&coop) {
        grid.push(coop);
        grid.sort_by(f64::total_cmp);
    }
    let rows = sweep_figure2(eta_esc, coop, &grid)?;

    let mut table = Table::new(vec![
        "lambda_dn",
        "l_a",
        "l_m",
        "l_gen",
        "l_cav",
        "a_up_over_in",
        "a_dn_over_in",
    ]);
    for r in &rows {
        table.push(vec![
            r.lambda_dn.into(),
            r.l_a.into(),
            r.l_m.into(),
            r.l_gen.into(),
            r.l_cav.into(),
            r.a_up_over_in.into(),
            r.a_dn_over_in.into(),
        ]);
    }
    Ok(Report {
        table: Some(table),
        summary: vec![],
    })
}

pub fn figure3(ctx: &Context, args: &Figure3Args) -> Result<Report, CliError> {
    let cfg = ctx.config;
    let kx_text = cfg.resolve(args.kx_grid.clone(), "kx-grid", "0:50:501".to_string())?;
    let kx_grid = parse_float_grid(&kx_text, Spacing::Linear, "kx-grid")?;
    let default_proj = format!("0,{},1", std::f64::consts::FRAC_1_SQRT_2);
    let proj_text = cfg.resolve(
        args.pol_projections.clone(),
        "pol-projections",
        default_proj,
    )?;
    let projections = parse_float_grid(&proj_text, Spacing::Linear, "pol-projections")?;
    if let Some(p) = projections.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(CliError::Invalid(format!(
            "pol-projections: {p} is outside [0, 1]"
        )));
    }
    if let Some(kx) = kx_grid.iter().find(|kx| **kx < 0.0) {
        return Err(CliError::Invalid(format!("kx-grid: {kx} is negative")));
    }

    let eps = Polarization::linear_x();
    let mut table = Table::new(vec!["projection", "kx", "v"]);
    for &p in &projections {
        // Unit vector in the x-z plane whose overlap with x̂ is p.
        let e = [p, 0.0, (1.0 - p * p).max(0.0).sqrt()];
        for &kx in &kx_grid {
            let v = mode_overlap_v(e.map(|c| c * kx), 1.0, &eps);
            table.push(vec![p.into(), kx.into(), v.into()]);
        }
    }
    Ok(Report {
        table: Some(table),
        summary: vec![],
    })
}

fn cloud_config(
    ctx: &Context,
    args: &CloudArgs,
    n_atoms: usize,
    n_runs: usize,
) -> Result<MonteCarloConfig, CliError> {
    let cfg = ctx.config;
    let base = MonteCarloConfig::reference_cloud();
    let sigmas = match cfg.resolve(args.sigmas.clone(), "sigmas", String::new())? {
        s if s.is_empty() => base.sigmas,
        s => parse_triple(&s, "sigmas")?,
    };
    let eps = match cfg.resolve(args.polarization, "polarization", PolarizationArg::Circular)? {
        PolarizationArg::Circular => Polarization::circular(),
        PolarizationArg::LinearX => Polarization::linear_x(),
    };
    Ok(MonteCarloConfig {
        n_atoms,
        sigmas,
        wavelength: cfg.resolve(args.wavelength, "wavelength", base.wavelength)?,
        eps,
        n_runs,
        seed: ctx.seed,
        isotropic: cfg.resolve_switch(args.isotropic, "isotropic")?,
    })
}

pub fn figure4(ctx: &Context, args: &Figure4Args) -> Result<Report, CliError> {
    let cfg = ctx.config;
    let n_text = cfg.resolve(args.n_grid.clone(), "n-grid", "3:30".to_string())?;
    let n_grid = parse_int_grid(&n_text, "n-grid")?;
    let target = cfg.resolve(args.extrapolate_to, "extrapolate-to", 260.0)?;
    if !(target.is_finite() && target > 0.0) {
        return Err(CliError::Invalid(format!(
            "extrapolate-to: {target} must be positive"
        )));
    }
    // The run count per point is fixed by the study; 2 only passes validation.
    let template = cloud_config(ctx, &args.cloud, 3, 2)?;
    template.validate()?;
    let study = power_law_study(&template, &n_grid)?;

    let mut table = Table::new(vec!["n_atoms", "n_runs", "b_mean", "b_stderr"]);
    for p in &study.points {
        table.push(vec![
            p.n_atoms.into(),
            p.n_runs.into(),
            p.b_up_dn.mean.into(),
            p.b_up_dn.stderr.into(),
        ]);
    }
    let fit = &study.fit;
    Ok(Report {
        table: Some(table),
        summary: vec![
            ("c3", fit.c3.into()),
            ("c3_err", fit.c3_err.into()),
            ("free_slope", fit.free_slope.into()),
            ("free_slope_err", fit.free_slope_err.into()),
            ("free_prefactor", fit.free_prefactor.into()),
            ("extrapolate_to", target.into()),
            ("b_extrapolated", fit.extrapolate(target).into()),
            ("zeta", template.zeta().into()),
        ],
    })
}

/// `α_out²` keeping the visibility above `1/e` of its ideal value, or the
/// sentinel when generation is lossless.
fn photon_limit(result: Result<f64, cavity_cat::Error>, l_gen: f64) -> Result<Cell, CliError> {
    if l_gen <= 0.0 {
        return Ok("unbounded".into());
    }
    match result {
        Ok(n) => Ok(n.into()),
        Err(cavity_cat::Error::InvalidParameter { name: "l_gen", .. }) => Ok("unbounded".into()),
        Err(e) => Err(e.into()),
    }
}

fn budget_summary(budget: &LossBudget) -> Vec<(&'static str, Cell)> {
    vec![
        ("l_gen", budget.l_gen.into()),
        ("l_cav", budget.l_cav.into()),
        ("l_a", budget.l_a.into()),
        ("l_m", budget.l_m.into()),
        ("gen_ratio", budget.gen_ratio().into()),
        ("a_mode", budget.a_mode.into()),
        ("eta", budget.eta.into()),
    ]
}

pub fn headline(ctx: &Context, args: &HeadlineArgs) -> Result<Report, CliError> {
    let (eta_esc, coop) = cavity(ctx, &args.cavity)?;
    let large = ctx
        .config
        .resolve_switch(args.large_lambda, "large-lambda")?;
    let ratio = 1.0 / E;
    let mut summary = Vec::new();
    if large {
        let params = CavityParams::from_lambda(eta_esc, coop, 1.0)?;
        let budget = loss_budget_large_lambda(&params);
        summary.push(("lambda_dn", "infinity".into()));
        summary.push((
            "alpha_out_sq_at_1_over_e",
            photon_limit(budget.max_output_photons(ratio), budget.l_gen)?,
        ));
        summary.extend(budget_summary(&budget));
    } else {
        let lambda_opt = optimal_lambda(&CavityParams::from_lambda(eta_esc, coop, 1.0)?)?;
        let params = CavityParams::from_lambda(eta_esc, coop, lambda_opt)?;
        let budget = loss_budget(&params, 0.0)?;
        summary.push(("lambda_opt", lambda_opt.into()));
        summary.push(("lambda_dn", params.lambda_dn().into()));
        summary.push((
            "alpha_out_sq_at_1_over_e",
            photon_limit(max_photon_number(&params, ratio), 1.0 - eta_esc)?,
        ));
        summary.extend(budget_summary(&budget));
    }
    Ok(Report {
        table: None,
        summary,
    })
}

pub fn xcheck(ctx: &Context, args: &XcheckArgs) -> Result<Report, CliError> {
    let cfg = ctx.config;
    let (eta_esc, coop) = cavity(ctx, &args.cavity)?;
    let lambda_dn = cfg.resolve(args.lambda_dn, "lambda-dn", DEFAULT_COOP)?;
    let branch = match cfg.resolve(args.branch, "branch", BranchArg::Dn)? {
        BranchArg::Up => QubitBranch::Up,
        BranchArg::Dn => QubitBranch::Dn,
        BranchArg::Both => {
            return Err(CliError::Invalid(
                "xcheck takes a single branch, up or dn".into(),
            ))
        }
    };
    let det = DetuningSet {
        delta_c: cfg.resolve(args.delta_c, "delta-c", 0.0)?,
        delta_s: cfg.resolve(args.delta_s, "delta-s", 0.0)?,
        delta_2_up: TwoPhotonDetuning::Blockaded,
        delta_2_dn: TwoPhotonDetuning::Finite(cfg.resolve(args.delta_2, "delta-2", 0.0)?),
    };
    if ![det.delta_c, det.delta_s].iter().all(|d| d.is_finite()) {
        return Err(CliError::Invalid("detunings must be finite".into()));
    }
    let grid_text = cfg.resolve(
        args.finesse_grid.clone(),
        "finesse-grid",
        "1e2,1e3,1e4,1e5".to_string(),
    )?;
    let finesse = parse_float_grid(&grid_text, Spacing::Log, "finesse-grid")?;

    let params = CavityParams::from_lambda(eta_esc, coop, lambda_dn)?;
    let one = Complex64::new(1.0, 0.0);
    let study = convergence_study(&params, &det, branch, &finesse)?;
    let closed = detuned_amplitudes(&params, &det, branch, one)?;
    let steady = solve_steady_state(&params, &det, branch, one)?;

    let mut table = Table::new(vec![
        "finesse",
        "err_r",
        "err_a",
        "err_m",
        "err_max",
        "r_abs_ring",
    ]);
    for p in &study.points {
        let ring =
            intracavity_and_outputs(&RoundTripCavity::new(params, p.finesse)?, &det, branch, one)?;
        table.push(vec![
            p.finesse.into(),
            p.err_r.into(),
            p.err_a.into(),
            p.err_m.into(),
            p.max_error().into(),
            ring.r.norm().into(),
        ]);
    }
    Ok(Report {
        table: Some(table),
        summary: vec![
            ("branch", branch_name(branch).into()),
            ("slope_r", study.slope_r.into()),
            ("slope_a", study.slope_a.into()),
            ("slope_m", study.slope_m.into()),
            ("slope_max", study.slope_max.into()),
            ("r_abs_closed", closed.r.norm().into()),
            ("r_abs_steady", steady.e_out.norm().into()),
            ("steady_err", (steady.e_out - closed.r).norm().into()),
            ("steady_residual", steady.residual.into()),
        ],
    })
}

pub fn mc(ctx: &Context, args: &McArgs) -> Result<Report, CliError> {
    let cfg = ctx.config;
    let base = MonteCarloConfig::reference_cloud();
    let n_atoms = cfg.resolve(args.n_atoms, "n-atoms", base.n_atoms)?;
    let n_runs = cfg.resolve(args.runs, "runs", base.n_runs)?;
    let config = cloud_config(ctx, &args.cloud, n_atoms, n_runs)?;
    let stats = monte_carlo(&config)?;
    let est = |name_mean, name_err, e: cavity_cat::overlap::montecarlo::Estimate| {
        [
            (name_mean, Cell::from(e.mean)),
            (name_err, Cell::from(e.stderr)),
        ]
    };
    let mut summary = vec![
        ("n_atoms", stats.n_atoms.into()),
        ("n_runs", stats.n_runs.into()),
        ("zeta", stats.zeta.into()),
    ];
    summary.extend(est("b_mean", "b_stderr", stats.b_up_dn));
    summary.extend(est("re_c_mean", "re_c_stderr", stats.re_c));
    summary.extend(est("im_c_mean", "im_c_stderr", stats.im_c));
    summary.extend(est("s12_re_mean", "s12_re_stderr", stats.s12_re));
    summary.extend(est("s12_im_mean", "s12_im_stderr", stats.s12_im));
    summary.extend(est("s12_rms", "s12_rms_stderr", stats.s12_rms));
    Ok(Report {
        table: None,
        summary,
    })
}
