//! Command-line front end: problem configs in, solved fields, grids and
//! verification reports out.
//!
//! Exit codes: 0 solved/verified, 1 config or I/O error, 2 no solution or
//! off the closed-form surface, 3 ill-conditioned boundary system,
//! 4 incompatible end data, 5 domain or evaluation error, 6 a residual
//! check failed its tolerance.

mod config;
mod output;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{AxisSpec, GridConfig, SweepConfig, VerifySettings};
use elastics_core::error::Error as CoreError;
use elastics_core::relaxation::{self, RelaxationProblem};
use elastics_core::sov::sov_chi;
use elastics_core::verify::{
    chi_wave_residual, residual_report, sample_points, ResidualReport, SampleDomain,
};
use elastics_core::vibration::{self, VibrationProblem};
use elastics_core::{sweep as families, ModeParams, SolutionFamily};
use output::{
    artifact_path, read_json, write_csv, write_json, ChiGridRow, FamilySpec, GridAxes, GridDoc,
    GridRow, VerifyRecord, GRID_DOC_KIND, SCHEMA_VERSION,
};
use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "elastics",
    version,
    about = "Exact separable elastodynamic fields in a solid cylinder: solvers, grids, checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the forced lateral vibration problem and write its artifacts.
    SolveVibration(CommonArgs),
    /// Solve the forced relaxation problem and write its artifacts.
    SolveRelaxation(CommonArgs),
    /// Evaluate an arbitrary solution family on a grid.
    EvalFamily(CommonArgs),
    /// Evaluate a separated rotational potential on a grid.
    SovChi(CommonArgs),
    /// Re-check a previously written grid artifact.
    Verify(CommonArgs),
    /// Tabulate a parameter sweep.
    Sweep(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Problem configuration (TOML; .json accepted). For verify: the grid
    /// artifact to re-check.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory for artifacts.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Encoding for tabular outputs (grids, sweeps); reports are JSON.
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
    /// Residual tolerance override.
    #[arg(long, value_name = "REAL")]
    tolerance: Option<f64>,
    /// Free shear-branch constant for the resonant vibration subcase.
    #[arg(long = "case4-C", value_name = "REAL")]
    case4_c: Option<f64>,
    /// Seed override for random verification points.
    #[arg(long, value_name = "INT")]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

impl CommonArgs {
    fn want_csv(&self) -> bool {
        self.format != Format::Json
    }

    fn want_json(&self) -> bool {
        self.format != Format::Csv
    }

    fn settings(&self, base: VerifySettings) -> VerifySettings {
        VerifySettings {
            seed: self.seed.unwrap_or(base.seed),
            tolerance: self.tolerance.unwrap_or(base.tolerance),
            ..base
        }
    }
}

fn main() {
    init_threads();
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code(&err)
        }
    };
    std::process::exit(code);
}

/// Cap the global thread pool from the environment; silently keeps the
/// default when unset or unparsable.
fn init_threads() {
    if let Ok(v) = std::env::var("ELASTICS_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::SolveVibration(args) => cmd_solve_vibration(args),
        Cmd::SolveRelaxation(args) => cmd_solve_relaxation(args),
        Cmd::EvalFamily(args) => cmd_eval_family(args),
        Cmd::SovChi(args) => cmd_sov_chi(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Sweep(args) => cmd_sweep(args),
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::NoSolution { .. }) | Some(CoreError::NotClosedForm { .. }) => 2,
        Some(CoreError::IllConditioned { .. }) => 3,
        Some(CoreError::IncompatibleEndData(_)) => 4,
        Some(_) => 5,
        None => 1,
    }
}

/// Interior sampling box for residual checks over a grid: radially inset to
/// a twentieth of the outer radius so the stencil stays off the axis.
fn residual_domain(grid: &GridConfig) -> Result<SampleDomain> {
    let r_hi = grid.r.stop;
    if !(r_hi > 0.0) {
        return Err(CoreError::Domain(
            "residual checks need a positive outer radius in the grid".into(),
        )
        .into());
    }
    Ok(SampleDomain {
        r: [grid.r.start.max(0.05 * r_hi), r_hi],
        theta: [grid.theta.start, grid.theta.stop],
        z: [grid.z.start, grid.z.stop],
        t: [grid.t.start, grid.t.stop],
    })
}

fn grid_points(grid: &GridConfig) -> (GridAxes, Vec<[f64; 4]>) {
    let axes = GridAxes {
        r: grid.r.values(),
        theta: grid.theta.values(),
        z: grid.z.values(),
        t: grid.t.values(),
    };
    let mut pts =
        Vec::with_capacity(axes.r.len() * axes.theta.len() * axes.z.len() * axes.t.len());
    for &t in &axes.t {
        for &z in &axes.z {
            for &theta in &axes.theta {
                for &r in &axes.r {
                    pts.push([r, theta, z, t]);
                }
            }
        }
    }
    (axes, pts)
}

fn eval_displacement_grid(
    family: &SolutionFamily,
    grid: &GridConfig,
) -> Result<(GridAxes, Vec<GridRow>)> {
    grid.validate()?;
    let (axes, pts) = grid_points(grid);
    let rows = pts
        .into_par_iter()
        .map(|[r, theta, z, t]| {
            let u = family.displacement(r, theta, z, t)?;
            Ok(GridRow {
                r,
                theta,
                z,
                t,
                u_r: u.u_r,
                u_theta: u.u_theta,
                u_z: u.u_z,
            })
        })
        .collect::<elastics_core::error::Result<Vec<_>>>()?;
    Ok((axes, rows))
}

#[derive(Serialize)]
struct ResidualDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    tolerance: f64,
    max_rel_residual: f64,
    verdict: &'static str,
    report: &'a ResidualReport,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// Run the residual check, write report.json, print one line, and return
/// whether it passed.
fn check_and_report(
    family: &SolutionFamily,
    domain: &SampleDomain,
    settings: &VerifySettings,
    out: &Path,
) -> Result<(ResidualReport, bool)> {
    let report = residual_report(family, domain, settings.points, settings.seed, settings.scale)?;
    let pass = report.max() <= settings.tolerance;
    let doc = ResidualDoc {
        schema_version: SCHEMA_VERSION,
        kind: "residual-report",
        tolerance: settings.tolerance,
        max_rel_residual: report.max(),
        verdict: verdict(pass),
        report: &report,
    };
    write_json(&artifact_path(out, "report.json"), &doc)?;
    println!(
        "NL residual max: {:.3e} over {} points (tolerance {:.1e}) {}",
        report.max(),
        report.count,
        settings.tolerance,
        verdict(pass)
    );
    Ok((report, pass))
}

fn write_grid(
    args: &CommonArgs,
    family: &SolutionFamily,
    spec: FamilySpec,
    axes: GridAxes,
    rows: Vec<GridRow>,
    settings: &VerifySettings,
    domain: &SampleDomain,
    report: &ResidualReport,
) -> Result<()> {
    if args.want_csv() {
        write_csv(&artifact_path(&args.out, "grid.csv"), &rows)?;
    }
    if args.want_json() {
        let doc = GridDoc {
            schema_version: SCHEMA_VERSION,
            kind: GRID_DOC_KIND.into(),
            family: spec,
            diagnostics: serde_json::to_value(family.diagnostics())?,
            verify: VerifyRecord {
                points: settings.points,
                seed: settings.seed,
                scale: settings.scale,
                tolerance: settings.tolerance,
                domain: *domain,
                max_direct: report.max_direct,
                max_decomposed: report.max_decomposed,
            },
            axes,
            samples: rows,
        };
        write_json(&artifact_path(&args.out, "grid.json"), &doc)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VibrationDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    regime: String,
    resonant: bool,
    free_constant: Option<f64>,
    resonant_zero_index: Option<u32>,
    axial_wavenumber: f64,
    a: [f64; 2],
    boundary: &'a vibration::BoundaryMatrix,
    problem: &'a VibrationProblem,
    diagnostics: &'a elastics_core::FamilyDiagnostics,
}

#[derive(Serialize)]
struct BoundaryDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    grid: [usize; 3],
    tolerance: f64,
    max_error: f64,
    verdict: &'static str,
    report: &'a vibration::BoundaryReport,
}

fn default_vibration_grid(p: &VibrationProblem) -> GridConfig {
    GridConfig {
        r: AxisSpec {
            start: 0.0,
            stop: p.radius,
            count: 8,
        },
        theta: AxisSpec {
            start: 0.0,
            stop: 0.0,
            count: 1,
        },
        z: AxisSpec {
            start: 0.0,
            stop: p.length,
            count: 8,
        },
        t: AxisSpec {
            start: 0.0,
            stop: 2.0 * std::f64::consts::PI / p.omega,
            count: 5,
        },
    }
}

fn cmd_solve_vibration(args: &CommonArgs) -> Result<i32> {
    let cfg = config::load(&args.config)?;
    let material = cfg.material()?;
    let vib = cfg.vibration()?;
    let problem = vib.to_problem(material)?;
    let free_constant = args.case4_c.or(vib.free_constant);
    let sol = vibration::solve(&problem, free_constant)?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;

    println!("regime: {}", sol.regime);
    println!("a: [{}, {}]", sol.a[0], sol.a[1]);
    if sol.resonant {
        println!(
            "resonant shear branch: free constant {} (radial zero {})",
            sol.free_constant.unwrap_or_default(),
            sol.resonant_zero_index.unwrap_or_default()
        );
    }

    let doc = VibrationDoc {
        schema_version: SCHEMA_VERSION,
        kind: "vibration-solution",
        regime: sol.regime.to_string(),
        resonant: sol.resonant,
        free_constant: sol.free_constant,
        resonant_zero_index: sol.resonant_zero_index,
        axial_wavenumber: sol.axial_wavenumber,
        a: sol.a,
        boundary: &sol.boundary,
        problem: &problem,
        diagnostics: sol.family.diagnostics(),
    };
    write_json(&artifact_path(&args.out, "solution.json"), &doc)?;

    let bc = vibration::boundary_report(&sol, 10, 10, 4)?;
    let bc_tol = 1e-9 * problem.amplitude.abs();
    let bc_max = bc
        .max_lateral_normal_error
        .max(bc.max_lateral_shear)
        .max(bc.max_end_axial_displacement)
        .max(bc.max_end_shear);
    let bc_pass = bc_max <= bc_tol;
    write_json(
        &artifact_path(&args.out, "bc_report.json"),
        &BoundaryDoc {
            schema_version: SCHEMA_VERSION,
            kind: "boundary-report",
            grid: [10, 10, 4],
            tolerance: bc_tol,
            max_error: bc_max,
            verdict: verdict(bc_pass),
            report: &bc,
        },
    )?;
    println!(
        "boundary max error: {:.3e} (tolerance {:.3e}) {}",
        bc_max,
        bc_tol,
        verdict(bc_pass)
    );

    let grid = cfg.grid.unwrap_or_else(|| default_vibration_grid(&problem));
    let (axes, rows) = eval_displacement_grid(&sol.family, &grid)?;
    let settings = args.settings(cfg.verify);
    let domain = residual_domain(&grid)?;
    let (report, residual_pass) = check_and_report(&sol.family, &domain, &settings, &args.out)?;
    write_grid(
        args,
        &sol.family,
        FamilySpec::from_family(&sol.family),
        axes,
        rows,
        &settings,
        &domain,
        &report,
    )?;
    Ok(if residual_pass && bc_pass { 0 } else { 6 })
}

#[derive(Serialize)]
struct RelaxationDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    solvable: bool,
    report: Option<String>,
    duration: f64,
    balancing_duration: f64,
    decay_rate_per_time: Option<f64>,
    a1: Option<f64>,
    surface_amplitude: Option<f64>,
    amplitude_per_duration: Option<f64>,
    end_data: Option<String>,
    problem: &'a RelaxationProblem,
    diagnostics: Option<&'a elastics_core::FamilyDiagnostics>,
}

fn default_relaxation_grid(p: &RelaxationProblem) -> GridConfig {
    GridConfig {
        r: AxisSpec {
            start: 0.0,
            stop: p.radius,
            count: 8,
        },
        theta: AxisSpec {
            start: 0.0,
            stop: 0.0,
            count: 1,
        },
        z: AxisSpec {
            start: 0.0,
            stop: p.length,
            count: 8,
        },
        t: AxisSpec {
            start: 0.0,
            stop: p.duration,
            count: 5,
        },
    }
}

fn cmd_solve_relaxation(args: &CommonArgs) -> Result<i32> {
    let cfg = config::load(&args.config)?;
    let material = cfg.material()?;
    let rx = cfg.relaxation()?;
    let problem = rx.to_problem(material)?;
    let balancing = relaxation::solvable_duration(
        &material,
        rx.length,
        rx.axial_parameter,
        rx.decay_base,
        rx.decay_rate,
    )?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;

    let sol = match relaxation::solve(&problem) {
        Ok(sol) => sol,
        Err(err) => {
            write_json(
                &artifact_path(&args.out, "solution.json"),
                &RelaxationDoc {
                    schema_version: SCHEMA_VERSION,
                    kind: "relaxation-solution",
                    solvable: false,
                    report: Some(err.to_string()),
                    duration: problem.duration,
                    balancing_duration: balancing,
                    decay_rate_per_time: None,
                    a1: None,
                    surface_amplitude: None,
                    amplitude_per_duration: None,
                    end_data: None,
                    problem: &problem,
                    diagnostics: None,
                },
            )?;
            return Err(err.into());
        }
    };

    let end_data = match rx.end_data {
        None => None,
        Some(data) => Some(match relaxation::check_end_data(&sol, &data) {
            Ok(()) => "compatible".to_string(),
            Err(err) => {
                write_json(
                    &artifact_path(&args.out, "solution.json"),
                    &RelaxationDoc {
                        schema_version: SCHEMA_VERSION,
                        kind: "relaxation-solution",
                        solvable: true,
                        report: None,
                        duration: problem.duration,
                        balancing_duration: balancing,
                        decay_rate_per_time: Some(sol.decay_rate_per_time),
                        a1: Some(sol.a1),
                        surface_amplitude: Some(sol.surface_amplitude),
                        amplitude_per_duration: Some(sol.surface_amplitude / problem.duration),
                        end_data: Some(err.to_string()),
                        problem: &problem,
                        diagnostics: Some(sol.family.diagnostics()),
                    },
                )?;
                return Err(err.into());
            }
        }),
    };

    println!("solvable: duration {} on the closed-form surface", problem.duration);
    println!(
        "surface amplitude: {} (per duration {})",
        sol.surface_amplitude,
        sol.surface_amplitude / problem.duration
    );
    if let Some(v) = &end_data {
        println!("end data: {v}");
    }

    write_json(
        &artifact_path(&args.out, "solution.json"),
        &RelaxationDoc {
            schema_version: SCHEMA_VERSION,
            kind: "relaxation-solution",
            solvable: true,
            report: None,
            duration: problem.duration,
            balancing_duration: balancing,
            decay_rate_per_time: Some(sol.decay_rate_per_time),
            a1: Some(sol.a1),
            surface_amplitude: Some(sol.surface_amplitude),
            amplitude_per_duration: Some(sol.surface_amplitude / problem.duration),
            end_data,
            problem: &problem,
            diagnostics: Some(sol.family.diagnostics()),
        },
    )?;

    let grid = cfg.grid.unwrap_or_else(|| default_relaxation_grid(&problem));
    let (axes, rows) = eval_displacement_grid(&sol.family, &grid)?;
    let settings = args.settings(cfg.verify);
    let domain = residual_domain(&grid)?;
    let (report, pass) = check_and_report(&sol.family, &domain, &settings, &args.out)?;
    write_grid(
        args,
        &sol.family,
        FamilySpec::from_family(&sol.family),
        axes,
        rows,
        &settings,
        &domain,
        &report,
    )?;
    Ok(if pass { 0 } else { 6 })
}

fn cmd_eval_family(args: &CommonArgs) -> Result<i32> {
    let cfg = config::load(&args.config)?;
    let material = cfg.material()?;
    let fam_cfg = cfg.family()?;
    let grid = *cfg.grid()?;
    let mode = ModeParams::new(fam_cfg.kappa, fam_cfg.tau, fam_cfg.angular_order)?;
    let weights = fam_cfg.coupling_weights.unwrap_or([1.0, 1.0]);
    let mut family = SolutionFamily::new(material, mode, fam_cfg.coefficients.into())?;
    for (s, &w) in weights.iter().enumerate() {
        if w != 1.0 {
            family = family.with_coupling_weight(s, w);
        }
    }

    let (axes, rows) = eval_displacement_grid(&family, &grid)?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let settings = args.settings(cfg.verify);
    let domain = residual_domain(&grid)?;
    let (report, pass) = check_and_report(&family, &domain, &settings, &args.out)?;

    let mut spec = FamilySpec::from_family(&family);
    spec.coupling_weights = weights;
    write_grid(args, &family, spec, axes, rows, &settings, &domain, &report)?;
    Ok(if pass { 0 } else { 6 })
}

#[derive(Serialize)]
struct ChiDoc {
    schema_version: u32,
    kind: &'static str,
    eta_t: f64,
    eta_z: f64,
    eta_theta: f64,
    eta_r: f64,
    /// False when the angular factor cannot close around the full circle.
    periodic: bool,
    descriptor: serde_json::Value,
    verify: VerifySettings,
    max_rel_residual: f64,
    axes: GridAxes,
}

fn cmd_sov_chi(args: &CommonArgs) -> Result<i32> {
    let cfg = config::load(&args.config)?;
    let material = cfg.material()?;
    let sc = cfg.sov_chi()?;
    let grid = *cfg.grid()?;
    grid.validate()?;
    let chi = sov_chi(
        &material,
        sc.eta_t,
        sc.eta_z,
        sc.eta_theta,
        &sc.coefficients.into(),
        sc.angular.into(),
    )?;

    let (axes, pts) = grid_points(&grid);
    let rows = pts
        .into_par_iter()
        .map(|[r, theta, z, t]| {
            let v = chi.value(r, theta, z, t)?;
            Ok(ChiGridRow {
                r,
                theta,
                z,
                t,
                chi: v,
            })
        })
        .collect::<elastics_core::error::Result<Vec<_>>>()?;

    let settings = args.settings(cfg.verify);
    let domain = residual_domain(&grid)?;
    let points = sample_points(&domain, settings.points, settings.seed)?;
    let max_res = points
        .par_iter()
        .map(|p| chi_wave_residual(&material, &chi, p[0], p[1], p[2], p[3], settings.scale))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    let pass = max_res <= settings.tolerance;

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    write_json(
        &artifact_path(&args.out, "chi.json"),
        &ChiDoc {
            schema_version: SCHEMA_VERSION,
            kind: "rotational-potential",
            eta_t: chi.eta_t,
            eta_z: chi.eta_z,
            eta_theta: chi.eta_theta,
            eta_r: chi.eta_r,
            periodic: chi.periodic,
            descriptor: serde_json::to_value(&chi)?,
            verify: settings,
            max_rel_residual: max_res,
            axes,
        },
    )?;
    if args.want_csv() {
        write_csv(&artifact_path(&args.out, "grid.csv"), &rows)?;
    }
    if args.want_json() {
        #[derive(Serialize)]
        struct ChiGridDoc {
            schema_version: u32,
            kind: &'static str,
            samples: Vec<ChiGridRow>,
        }
        write_json(
            &artifact_path(&args.out, "grid.json"),
            &ChiGridDoc {
                schema_version: SCHEMA_VERSION,
                kind: "rotational-potential-grid",
                samples: rows,
            },
        )?;
    }
    println!(
        "rotational potential: periodic = {}, wave residual max {:.3e} {}",
        chi.periodic,
        max_res,
        verdict(pass)
    );
    Ok(if pass { 0 } else { 6 })
}

#[derive(Serialize)]
struct VerifyDoc {
    schema_version: u32,
    kind: &'static str,
    artifact: String,
    points: usize,
    seed: u64,
    scale: f64,
    tolerance: f64,
    max_direct: f64,
    max_decomposed: f64,
    max_rel_residual: f64,
    recorded_max_direct: f64,
    recorded_max_decomposed: f64,
    /// |reproduced - recorded| residual maxima (0 when replayed unchanged).
    reproduction_gap: f64,
    /// Largest |stored - recomputed| over the grid samples; nonzero means
    /// the artifact was edited after it was written.
    field_reproduction_gap: f64,
    verdict: &'static str,
}

fn cmd_verify(args: &CommonArgs) -> Result<i32> {
    let doc: GridDoc = read_json(&args.config)?;
    if doc.kind != GRID_DOC_KIND {
        bail!(
            "{} is a '{}' artifact; verify expects '{}'",
            args.config.display(),
            doc.kind,
            GRID_DOC_KIND
        );
    }
    if doc.schema_version != SCHEMA_VERSION {
        bail!(
            "unsupported schema_version {} (this build writes {})",
            doc.schema_version,
            SCHEMA_VERSION
        );
    }
    let family = doc.family.build()?;
    let settings = args.settings(VerifySettings {
        points: doc.verify.points,
        seed: doc.verify.seed,
        scale: doc.verify.scale,
        tolerance: doc.verify.tolerance,
    });

    let report = residual_report(
        &family,
        &doc.verify.domain,
        settings.points,
        settings.seed,
        settings.scale,
    )?;
    let reproduction_gap = (report.max_direct - doc.verify.max_direct)
        .abs()
        .max((report.max_decomposed - doc.verify.max_decomposed).abs());

    let field_gap = doc
        .samples
        .par_iter()
        .map(|row| {
            let u = family.displacement(row.r, row.theta, row.z, row.t)?;
            Ok((u.u_r - row.u_r)
                .abs()
                .max((u.u_theta - row.u_theta).abs())
                .max((u.u_z - row.u_z).abs()))
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
        .map_err(|e: CoreError| anyhow::Error::from(e))?;

    let pass = report.max() <= settings.tolerance && field_gap == 0.0;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    write_json(
        &artifact_path(&args.out, "report.json"),
        &VerifyDoc {
            schema_version: SCHEMA_VERSION,
            kind: "verification-report",
            artifact: args.config.display().to_string(),
            points: settings.points,
            seed: settings.seed,
            scale: settings.scale,
            tolerance: settings.tolerance,
            max_direct: report.max_direct,
            max_decomposed: report.max_decomposed,
            max_rel_residual: report.max(),
            recorded_max_direct: doc.verify.max_direct,
            recorded_max_decomposed: doc.verify.max_decomposed,
            reproduction_gap,
            field_reproduction_gap: field_gap,
            verdict: verdict(pass),
        },
    )?;
    println!(
        "NL residual max: {:.3e} (recorded {:.3e}, gap {:.3e}; tolerance {:.1e})",
        report.max(),
        doc.verify.max_direct.max(doc.verify.max_decomposed),
        reproduction_gap,
        settings.tolerance
    );
    println!(
        "grid samples: {} rows, reproduction gap {:.3e} {}",
        doc.samples.len(),
        field_gap,
        verdict(pass)
    );
    Ok(if pass { 0 } else { 6 })
}

#[derive(Serialize)]
struct SweepDoc<T: Serialize> {
    schema_version: u32,
    kind: &'static str,
    sweep: &'static str,
    rows: Vec<T>,
}

#[derive(Serialize)]
struct VibrationSweepRow {
    omega_squared: f64,
    omega: f64,
    regime: String,
    solvable: bool,
    note: String,
    a1: Option<f64>,
    a2: Option<f64>,
    resonant: bool,
    max_boundary_error: Option<f64>,
    response_max: Option<f64>,
}

#[derive(Serialize)]
struct RelaxationSweepRow {
    length: f64,
    duration: f64,
    surface_amplitude: f64,
    amplitude_per_duration: f64,
}

#[derive(Serialize)]
struct FamilySweepRow {
    index: usize,
    kappa: f64,
    tau: f64,
    angular_order: u32,
    kind_pressure: String,
    kind_shear: String,
    kind_rotational: String,
    alpha_pressure: f64,
    alpha_shear: f64,
    alpha_rotational: f64,
    max_direct: f64,
    max_decomposed: f64,
}

fn response_max(sol: &vibration::VibrationSolution) -> elastics_core::error::Result<f64> {
    let p = &sol.problem;
    let period = 2.0 * std::f64::consts::PI / p.omega;
    let mut max = 0.0f64;
    for ir in 0..4 {
        for iz in 0..6 {
            for it in 0..4 {
                let r = p.radius * ir as f64 / 3.0;
                let z = p.length * iz as f64 / 5.0;
                let t = period * it as f64 / 4.0;
                let u = sol.family.displacement(r, 0.0, z, t)?;
                max = max.max((u.u_r * u.u_r + u.u_theta * u.u_theta + u.u_z * u.u_z).sqrt());
            }
        }
    }
    Ok(max)
}

fn cmd_sweep(args: &CommonArgs) -> Result<i32> {
    let cfg = config::load(&args.config)?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    match cfg.sweep()? {
        SweepConfig::VibrationFrequency {
            radius,
            length,
            axial_index,
            amplitude,
            omega_squared,
        } => {
            omega_squared.validate("omega_squared")?;
            let material = cfg.material()?;
            let rows = omega_squared
                .values()
                .into_par_iter()
                .map(|w2| -> Result<VibrationSweepRow> {
                    let problem = VibrationProblem {
                        material,
                        radius: *radius,
                        length: *length,
                        axial_index: *axial_index,
                        amplitude: *amplitude,
                        omega: w2.sqrt(),
                    };
                    let regime = vibration::classify(&problem)?;
                    let mut row = VibrationSweepRow {
                        omega_squared: w2,
                        omega: problem.omega,
                        regime: regime.to_string(),
                        solvable: false,
                        note: String::new(),
                        a1: None,
                        a2: None,
                        resonant: false,
                        max_boundary_error: None,
                        response_max: None,
                    };
                    match vibration::solve(&problem, None) {
                        Ok(sol) => {
                            let bc = vibration::boundary_report(&sol, 8, 8, 3)?;
                            row.solvable = true;
                            row.a1 = Some(sol.a[0]);
                            row.a2 = Some(sol.a[1]);
                            row.resonant = sol.resonant;
                            row.max_boundary_error = Some(
                                bc.max_lateral_normal_error
                                    .max(bc.max_lateral_shear)
                                    .max(bc.max_end_axial_displacement)
                                    .max(bc.max_end_shear),
                            );
                            row.response_max = Some(response_max(&sol)?);
                        }
                        Err(CoreError::NoSolution { .. }) => row.note = "no-solution".into(),
                        Err(CoreError::IllConditioned { .. }) => {
                            row.note = "ill-conditioned".into()
                        }
                        Err(other) => return Err(other.into()),
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            write_sweep(args, "vibration-frequency", rows)?;
            Ok(0)
        }
        SweepConfig::RelaxationDuration {
            radius,
            axial_parameter,
            amplitude,
            decay_base,
            decay_rate,
            lengths,
        } => {
            let material = cfg.material()?;
            let rows = lengths
                .par_iter()
                .map(|&length| -> Result<RelaxationSweepRow> {
                    let duration = relaxation::solvable_duration(
                        &material,
                        length,
                        *axial_parameter,
                        *decay_base,
                        *decay_rate,
                    )?;
                    let sol = relaxation::solve(&RelaxationProblem {
                        material,
                        radius: *radius,
                        length,
                        axial_parameter: *axial_parameter,
                        amplitude: *amplitude,
                        decay_base: *decay_base,
                        decay_rate: *decay_rate,
                        duration,
                    })?;
                    Ok(RelaxationSweepRow {
                        length,
                        duration,
                        surface_amplitude: sol.surface_amplitude,
                        amplitude_per_duration: sol.surface_amplitude / duration,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_sweep(args, "relaxation-duration", rows)?;
            Ok(0)
        }
        SweepConfig::Families {
            count,
            seed,
            points,
        } => {
            let settings = args.settings(cfg.verify);
            let fams = families::random_families(*count, *seed)?;
            let domain = families::standard_domain();
            let rows = fams
                .par_iter()
                .enumerate()
                .map(|(index, family)| -> Result<FamilySweepRow> {
                    let rep = residual_report(
                        family,
                        &domain,
                        *points,
                        settings.seed.wrapping_add(index as u64),
                        settings.scale,
                    )?;
                    let d = family.diagnostics();
                    Ok(FamilySweepRow {
                        index,
                        kappa: family.mode().kappa(),
                        tau: family.mode().tau(),
                        angular_order: family.mode().n(),
                        kind_pressure: format!("{:?}", d.kind[0]),
                        kind_shear: format!("{:?}", d.kind[1]),
                        kind_rotational: format!("{:?}", d.kind[2]),
                        alpha_pressure: d.alpha[0],
                        alpha_shear: d.alpha[1],
                        alpha_rotational: d.alpha[2],
                        max_direct: rep.max_direct,
                        max_decomposed: rep.max_decomposed,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let worst = rows
                .iter()
                .map(|r| r.max_direct.max(r.max_decomposed))
                .fold(0.0f64, f64::max);
            let pass = worst <= settings.tolerance;
            println!(
                "{} families: worst NL residual {:.3e} (tolerance {:.1e}) {}",
                rows.len(),
                worst,
                settings.tolerance,
                verdict(pass)
            );
            write_sweep(args, "families", rows)?;
            Ok(if pass { 0 } else { 6 })
        }
    }
}

fn write_sweep<T: Serialize>(args: &CommonArgs, name: &'static str, rows: Vec<T>) -> Result<()> {
    println!("sweep rows: {}", rows.len());
    if args.want_csv() {
        write_csv(&artifact_path(&args.out, "sweep.csv"), &rows)?;
    }
    if args.want_json() {
        write_json(
            &artifact_path(&args.out, "sweep.json"),
            &SweepDoc {
                schema_version: SCHEMA_VERSION,
                kind: "sweep",
                sweep: name,
                rows,
            },
        )?;
    }
    Ok(())
}
