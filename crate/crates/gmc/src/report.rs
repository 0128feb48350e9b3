//! Report documents emitted by the CLI. Every report is a TOML document
//! with struct-ordered keys (so identical inputs serialize byte-for-byte
//! identically) and carries an echo of the parsed problem that re-parses
//! to the same problem.

use serde::Serialize;

use crate::error::{GmcError, Result};
use crate::exhaustion::ExhaustionSummary;
use crate::gaussian::{McEstimate, MeasureVector};
use crate::problem::ProblemDoc;
use crate::solver::SolveReport;

#[derive(Debug, Clone, Serialize)]
pub struct SolveSection {
    pub f: Vec<f64>,
    pub covolume: f64,
    pub surface_measure: Vec<f64>,
    pub scaled_surface_measure: Vec<f64>,
    pub residual: f64,
    pub kkt_lambda: f64,
    pub constraint_active: bool,
    pub iterations: u64,
    pub objective: f64,
    pub termination: String,
    pub converged: bool,
    pub min_distance: f64,
    pub lambda_bound: f64,
    pub beta: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsSection {
    pub grid_nodes: u64,
    pub grid_scheme: String,
    pub surface_route: String,
    pub surface_est_error: f64,
    pub residual_floor: f64,
    pub pinned: Vec<u64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveDoc {
    pub result: SolveSection,
    pub diagnostics: DiagnosticsSection,
    pub problem: ProblemDoc,
}

pub fn solve_doc(report: &SolveReport, problem: &ProblemDoc) -> SolveDoc {
    SolveDoc {
        result: solve_section(report),
        diagnostics: DiagnosticsSection {
            grid_nodes: report.grid_nodes as u64,
            grid_scheme: report.grid_scheme.to_string(),
            surface_route: route_name(&report.surface),
            surface_est_error: report.surface.est_error,
            residual_floor: report.residual_floor,
            pinned: report.pinned.iter().map(|&j| j as u64).collect(),
            warnings: report.warnings.clone(),
        },
        problem: problem.clone(),
    }
}

fn solve_section(report: &SolveReport) -> SolveSection {
    SolveSection {
        f: report.support.clone(),
        covolume: report.covolume,
        surface_measure: report.surface.masses.clone(),
        scaled_surface_measure: report.scaled_surface.clone(),
        residual: report.residual,
        kkt_lambda: report.kkt_lambda,
        constraint_active: report.constraint_active,
        iterations: report.iterations as u64,
        objective: report.objective,
        termination: report.termination.to_string(),
        converged: report.converged,
        min_distance: report.min_distance,
        lambda_bound: report.lambda_bound,
        beta: report.beta,
        alpha: report.alpha,
    }
}

fn route_name(v: &MeasureVector) -> String {
    match v.route {
        crate::gaussian::MeasureRoute::PushForward => "push-forward".into(),
        crate::gaussian::MeasureRoute::Facet => "facet".into(),
        crate::gaussian::MeasureRoute::MonteCarlo => "monte-carlo".into(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CovolumeDoc {
    pub covolume: CovolumeSection,
    pub problem: ProblemDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct CovolumeSection {
    pub f: Vec<f64>,
    pub value: f64,
    pub beta: f64,
    pub grid_nodes: u64,
    pub grid_scheme: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceDoc {
    pub surface: SurfaceSection,
    pub problem: ProblemDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceSection {
    pub f: Vec<f64>,
    pub pushforward: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_route_gap: Option<f64>,
    pub total: f64,
    pub grid_nodes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradientCheckDoc {
    pub gradient_check: GradientCheckSection,
    pub problem: ProblemDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradientCheckSection {
    pub f: Vec<f64>,
    pub analytic: Vec<f64>,
    pub finite_difference: Vec<f64>,
    pub rel_error: Vec<f64>,
    pub max_rel_error: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleDocOut {
    pub oracle_result: OracleSection,
    pub problem: ProblemDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    pub f: Vec<f64>,
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_distance: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustDoc {
    pub final_result: SolveSection,
    pub exhaustion: ExhaustSection,
    pub problem: ProblemDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustSection {
    pub stage_one_target_mass: f64,
    pub lambda_bound: f64,
    pub stages: Vec<StageSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageSection {
    pub stage: u64,
    pub indices: Vec<u64>,
    pub f: Vec<f64>,
    pub covolume: f64,
    pub residual: f64,
    pub distance: f64,
    pub stage_one_surface_mass: f64,
    pub stage_one_mass_retained: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_diff_common: Option<f64>,
}

pub fn exhaust_doc(summary: &ExhaustionSummary, problem: &ProblemDoc) -> ExhaustDoc {
    ExhaustDoc {
        final_result: solve_section(summary.final_report()),
        exhaustion: ExhaustSection {
            stage_one_target_mass: summary.stage_one_target_mass,
            lambda_bound: summary.lambda_bound,
            stages: summary
                .stages
                .iter()
                .map(|s| StageSection {
                    stage: s.stage as u64,
                    indices: s.indices.iter().map(|&j| j as u64).collect(),
                    f: s.report.support.clone(),
                    covolume: s.report.covolume,
                    residual: s.report.residual,
                    distance: s.distance,
                    stage_one_surface_mass: s.stage_one_surface_mass,
                    stage_one_mass_retained: s.stage_one_mass_retained,
                    sup_diff_common: s.sup_diff_common,
                })
                .collect(),
        },
        problem: problem.clone(),
    }
}

pub fn oracle_section(
    support: &[f64],
    mc: &McEstimate,
    quadrature: Option<f64>,
) -> OracleSection {
    let sigma_distance = quadrature.map(|q| {
        if mc.std_error > 0.0 {
            (q - mc.estimate).abs() / mc.std_error
        } else {
            0.0
        }
    });
    OracleSection {
        f: support.to_vec(),
        estimate: mc.estimate,
        std_error: mc.std_error,
        samples: mc.samples as u64,
        seed: mc.seed,
        quadrature,
        sigma_distance,
    }
}

pub fn to_toml<T: Serialize>(doc: &T) -> Result<String> {
    toml::to_string(doc).map_err(|e| GmcError::Parse(format!("report serialization: {e}")))
}
