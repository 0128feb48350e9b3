//! Command dispatch for the `gmc` binary.
//!
//! Exit codes: 0 on success, 2 on validation/parse errors, 3 when the
//! solver fails to converge (the report is still written in that case).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::error::{GmcError, Result};
use crate::gaussian::{
    covolume, mc_covolume_oracle, surface_measure_facet, surface_measure_pushforward,
};
use crate::grid::{build_grid, default_scheme, GridResolution, SphericalGrid};
use crate::problem::Problem;
use crate::report;
use crate::solver::{eval_objective, gradient, solve, SolveReport};
use crate::vecn;
use crate::wulff::WulffShape;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gmc",
    about = "Gaussian-Minkowski solver for convex-cone-determined shapes",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Problem file (TOML)
    pub file: PathBuf,
    /// Override every RNG seed in the problem (grid sampling, oracle)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the grid resolution (target node count)
    #[arg(long)]
    pub grid: Option<usize>,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the inverse problem for the measure in the file
    Solve {
        #[command(flatten)]
        opts: CommonOpts,
        /// Also write radial samples of the solution as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Co-volume of the shape given by [shape].support
    Covolume {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Surface measure of [shape].support by both routes
    Surface {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Finite-difference check of the analytic gradient
    CheckGradient {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Staged solve over the file's exhaustion plan
    Exhaust {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Monte Carlo co-volume estimate vs quadrature
    Oracle {
        #[command(flatten)]
        opts: CommonOpts,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let (opts, csv) = match &cli.command {
        Command::Solve { opts, csv } => (opts, csv.clone()),
        Command::Covolume { opts }
        | Command::Surface { opts }
        | Command::CheckGradient { opts }
        | Command::Exhaust { opts }
        | Command::Oracle { opts } => (opts, None),
    };
    match execute(&cli.command, opts, csv.as_deref()) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.report_text, opts.out.as_deref()) {
                eprintln!("gmc: failed to write report: {e}");
                return EXIT_VALIDATION;
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("gmc: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &GmcError) -> i32 {
    match e {
        GmcError::ProbeFailed { .. }
        | GmcError::NoConvergence(_)
        | GmcError::StageFailed { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_VALIDATION,
    }
}

struct Outcome {
    report_text: String,
    exit_code: i32,
}

fn load(opts: &CommonOpts) -> Result<Problem> {
    let text = std::fs::read_to_string(&opts.file)?;
    let mut problem = Problem::parse(&text)?;
    if let Some(seed) = opts.seed {
        problem.config.grid_seed = seed;
        if let Some(o) = problem.oracle.as_mut() {
            o.seed = seed;
        }
    }
    if let Some(grid) = opts.grid {
        problem.config.grid_resolution = grid;
        problem
            .config
            .validate(problem.cone.dim())
            .map_err(|e| GmcError::InvalidConfig(format!("--grid {grid}: {e}")))?;
    }
    Ok(problem)
}

fn problem_grid(problem: &Problem) -> Result<SphericalGrid> {
    build_grid(
        &problem.cone,
        GridResolution::Total(problem.config.grid_resolution),
        problem
            .config
            .grid_scheme
            .unwrap_or_else(|| default_scheme(&problem.cone)),
        problem.config.grid_seed,
    )
}

fn require_support(problem: &Problem, command: &str) -> Result<Vec<f64>> {
    problem.support.clone().ok_or_else(|| GmcError::Validation {
        field: "shape.support".into(),
        message: format!("the {command} command evaluates a fixed shape; add a [shape] section"),
    })
}

fn shape_for(problem: &Problem, support: Vec<f64>) -> Result<WulffShape> {
    WulffShape::new(Arc::clone(&problem.measure), support)
}

fn execute(command: &Command, opts: &CommonOpts, csv: Option<&Path>) -> Result<Outcome> {
    let problem = load(opts)?;
    match command {
        Command::Solve { .. } => {
            let solved = solve(&problem.measure, &problem.config)?;
            if let Some(path) = csv {
                write_radial_csv(path, &problem, &solved)?;
            }
            let doc = report::solve_doc(&solved, &problem.doc);
            Ok(Outcome {
                report_text: report::to_toml(&doc)?,
                exit_code: if solved.converged {
                    EXIT_OK
                } else {
                    EXIT_NO_CONVERGENCE
                },
            })
        }
        Command::Covolume { .. } => {
            let support = require_support(&problem, "covolume")?;
            let grid = problem_grid(&problem)?;
            let shape = shape_for(&problem, support.clone())?;
            let value = covolume(&shape, &grid)?;
            let doc = report::CovolumeDoc {
                covolume: report::CovolumeSection {
                    f: support,
                    value,
                    beta: problem.cone.gaussian_mass(),
                    grid_nodes: grid.len() as u64,
                    grid_scheme: grid.scheme().to_string(),
                },
                problem: problem.doc.clone(),
            };
            Ok(Outcome {
                report_text: report::to_toml(&doc)?,
                exit_code: EXIT_OK,
            })
        }
        Command::Surface { .. } => {
            let support = require_support(&problem, "surface")?;
            let grid = problem_grid(&problem)?;
            let shape = shape_for(&problem, support.clone())?;
            let push = surface_measure_pushforward(&shape, &grid)?;
            let facet = if problem.cone.dim() == 2 {
                Some(surface_measure_facet(&shape)?)
            } else {
                None
            };
            let max_gap = facet.as_ref().map(|fv| {
                fv.masses
                    .iter()
                    .zip(&push.masses)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            });
            let doc = report::SurfaceDoc {
                surface: report::SurfaceSection {
                    f: support,
                    total: push.total,
                    pushforward: push.masses,
                    facet: facet.map(|fv| fv.masses),
                    max_abs_route_gap: max_gap,
                    grid_nodes: grid.len() as u64,
                },
                problem: problem.doc.clone(),
            };
            Ok(Outcome {
                report_text: report::to_toml(&doc)?,
                exit_code: EXIT_OK,
            })
        }
        Command::CheckGradient { .. } => {
            let grid = problem_grid(&problem)?;
            // check at the given shape, or at the solution when none given
            let support = match &problem.support {
                Some(s) => s.clone(),
                None => solve(&problem.measure, &problem.config)?.support,
            };
            let analytic = gradient(&support, &problem.measure, &problem.config, &grid)?;
            let step = 1e-4;
            let mut fd = Vec::with_capacity(support.len());
            for j in 0..support.len() {
                let mut up = support.clone();
                up[j] += step;
                let mut dn = support.clone();
                dn[j] = (dn[j] - step).max(step * 1e-3);
                let hi = eval_objective(&up, &problem.measure, &problem.config, &grid)?;
                let lo = eval_objective(&dn, &problem.measure, &problem.config, &grid)?;
                fd.push((hi - lo) / (up[j] - dn[j]));
            }
            let rel_error: Vec<f64> = analytic
                .iter()
                .zip(&fd)
                .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1e-12))
                .collect();
            let max_rel_error = rel_error.iter().cloned().fold(0.0, f64::max);
            let doc = report::GradientCheckDoc {
                gradient_check: report::GradientCheckSection {
                    f: support,
                    analytic,
                    finite_difference: fd,
                    rel_error,
                    max_rel_error,
                    step,
                },
                problem: problem.doc.clone(),
            };
            Ok(Outcome {
                report_text: report::to_toml(&doc)?,
                exit_code: EXIT_OK,
            })
        }
        Command::Exhaust { .. } => {
            let plan = problem.plan.clone().ok_or_else(|| GmcError::Validation {
                field: "exhaustion".into(),
                message: "the exhaust command needs an [exhaustion] section".into(),
            })?;
            let summary =
                crate::exhaustion::solve_exhaustive(&problem.measure, &plan, &problem.config)?;
            let doc = report::exhaust_doc(&summary, &problem.doc);
            Ok(Outcome {
                report_text: report::to_toml(&doc)?,
                exit_code: EXIT_OK,
            })
        }
        Command::Oracle { .. } => {
            let support = require_support(&problem, "oracle")?;
            let oracle = problem.oracle.clone().ok_or_else(|| GmcError::Validation {
                field: "oracle".into(),
                message: "the oracle command needs an [oracle] section".into(),
            })?;
            let shape = shape_for(&problem, support.clone())?;
            let mc = mc_covolume_oracle(&shape, oracle.samples, oracle.seed);
            let quadrature = problem_grid(&problem)
                .and_then(|grid| covolume(&shape, &grid))
                .ok();
            let doc = report::OracleDocOut {
                oracle_result: report::oracle_section(&support, &mc, quadrature),
                problem: problem.doc.clone(),
            };
            Ok(Outcome {
                report_text: report::to_toml(&doc)?,
                exit_code: EXIT_OK,
            })
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Radial samples of the solved shape for plotting: angle parameters of
/// each grid node plus `ρ(u)`.
fn write_radial_csv(path: &Path, problem: &Problem, solved: &SolveReport) -> Result<()> {
    let grid = problem_grid(problem)?;
    let shape = shape_for(problem, solved.support.clone())?;
    let axis = problem.cone.axis();
    let dim = problem.cone.dim();
    let mut text = String::new();
    match dim {
        2 => text.push_str("angle,rho\n"),
        3 => text.push_str("polar,azimuth,rho\n"),
        _ => text.push_str("polar,rho\n"),
    }
    let basis3 = if dim == 3 {
        Some(crate::cone::orthonormal_complement3(axis))
    } else {
        None
    };
    for k in 0..grid.len() {
        let u = grid.node(k);
        let (rho, _) = shape.radial_core(u)?;
        let polar = vecn::angle_between_units(u, axis);
        match dim {
            2 => {
                // signed angle from the axis
                let perp = vecn::rot90ccw(axis);
                let signed = vecn::dot(u, &perp).atan2(vecn::dot(u, axis));
                text.push_str(&format!("{signed:.12e},{rho:.12e}\n"));
            }
            3 => {
                let (b1, b2) = basis3.as_ref().unwrap();
                let azimuth = vecn::dot(u, b2).atan2(vecn::dot(u, b1));
                text.push_str(&format!("{polar:.12e},{azimuth:.12e},{rho:.12e}\n"));
            }
            _ => text.push_str(&format!("{polar:.12e},{rho:.12e}\n")),
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}
