//! Problem files: a single TOML document describing the cone, the target
//! measure, solver settings, and optional shape / oracle / exhaustion
//! sections. Parsing is strict (unknown fields are rejected, angle units
//! are explicit) and validation errors name the offending field or atom.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{GmcError, Result};
use crate::exhaustion::ExhaustionPlan;
use crate::grid::GridScheme;
use crate::solver::SolverConfig;
use crate::wulff::{DiscreteMeasure, DEFAULT_DIRECTION_MARGIN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    Rad,
    Deg,
}

impl AngleUnit {
    pub fn to_radians(self, value: f64) -> f64 {
        match self {
            AngleUnit::Rad => value,
            AngleUnit::Deg => value.to_radians(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_unit: Option<AngleUnit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub direction: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    pub atoms: Vec<AtomDoc>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_scheme: Option<GridScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grad_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multi_start: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub support: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDoc {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExhaustionDoc {
    pub stages: Vec<Vec<usize>>,
}

/// The raw document; field order here fixes the serialized key order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub cone: ConeDoc,
    pub measure: MeasureDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustion: Option<ExhaustionDoc>,
}

/// A parsed and validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub doc: ProblemDoc,
    pub cone: Arc<Cone>,
    pub measure: Arc<DiscreteMeasure>,
    pub config: SolverConfig,
    pub support: Option<Vec<f64>>,
    pub oracle: Option<OracleDoc>,
    pub plan: Option<ExhaustionPlan>,
}

fn field_err(field: &str, message: impl Into<String>) -> GmcError {
    GmcError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem> {
        let doc: ProblemDoc =
            toml::from_str(text).map_err(|e| GmcError::Parse(e.to_string()))?;
        Problem::from_doc(doc)
    }

    pub fn from_doc(doc: ProblemDoc) -> Result<Problem> {
        let cone = Arc::new(build_cone(&doc.cone)?);

        let margin = match doc.measure.margin {
            None => DEFAULT_DIRECTION_MARGIN,
            Some(m) if m >= 0.0 => m,
            Some(m) => {
                return Err(field_err(
                    "measure.margin",
                    format!("margin must be non-negative, got {m}"),
                ))
            }
        };
        let atoms: Vec<(Vec<f64>, f64)> = doc
            .measure
            .atoms
            .iter()
            .map(|a| (a.direction.clone(), a.weight))
            .collect();
        let measure = Arc::new(
            DiscreteMeasure::new(Arc::clone(&cone), &atoms, margin)
                .map_err(|e| field_err("measure.atoms", e.to_string()))?,
        );

        let mut config = SolverConfig::default();
        if let Some(s) = &doc.solver {
            if let Some(v) = s.alpha {
                config.alpha = v;
            }
            if let Some(v) = s.grid_resolution {
                config.grid_resolution = v;
            }
            if let Some(v) = s.grid_scheme {
                config.grid_scheme = Some(v);
            }
            if let Some(v) = s.grid_seed {
                config.grid_seed = v;
            }
            if let Some(v) = s.grad_tol {
                config.grad_tol = v;
            }
            if let Some(v) = s.residual_tol {
                config.residual_tol = v;
            }
            if let Some(v) = s.max_iter {
                config.max_iter = v;
            }
            if let Some(v) = s.init_scale {
                config.init_scale = Some(v);
            }
            if let Some(v) = s.multi_start {
                config.multi_start = v;
            }
        }
        config
            .validate(cone.dim())
            .map_err(|e| field_err("solver", e.to_string()))?;

        let support = match &doc.shape {
            None => None,
            Some(s) => {
                if s.support.len() != measure.len() {
                    return Err(field_err(
                        "shape.support",
                        format!(
                            "{} support entries for {} measure atoms",
                            s.support.len(),
                            measure.len()
                        ),
                    ));
                }
                if let Some(i) = s.support.iter().position(|f| f.is_nan() || *f <= 0.0) {
                    return Err(field_err(
                        "shape.support",
                        format!("component {i} is {}, must be positive", s.support[i]),
                    ));
                }
                Some(s.support.clone())
            }
        };

        if let Some(o) = &doc.oracle {
            if o.samples < 10_000 {
                return Err(field_err(
                    "oracle.samples",
                    format!("at least 10000 samples required, got {}", o.samples),
                ));
            }
        }

        let plan = match &doc.exhaustion {
            None => None,
            Some(e) => {
                let plan = ExhaustionPlan::new(e.stages.clone());
                plan.validate(measure.len())
                    .map_err(|err| field_err("exhaustion.stages", err.to_string()))?;
                Some(plan)
            }
        };

        Ok(Problem {
            oracle: doc.oracle.clone(),
            cone,
            measure,
            config,
            support,
            plan,
            doc,
        })
    }
}

fn build_cone(doc: &ConeDoc) -> Result<Cone> {
    match doc.kind.as_str() {
        "circular" => {
            let dim = doc
                .dim
                .ok_or_else(|| field_err("cone.dim", "required for circular cones"))?;
            let axis = doc
                .axis
                .as_ref()
                .ok_or_else(|| field_err("cone.axis", "required for circular cones"))?;
            let angle = doc
                .half_angle
                .ok_or_else(|| field_err("cone.half_angle", "required for circular cones"))?;
            let unit = doc.angle_unit.ok_or_else(|| {
                field_err(
                    "cone.angle_unit",
                    "explicit unit (\"rad\" or \"deg\") is required; there is no default",
                )
            })?;
            if doc.generators.is_some() {
                return Err(field_err(
                    "cone.generators",
                    "not allowed for circular cones",
                ));
            }
            Cone::circular(dim, axis, unit.to_radians(angle))
                .map_err(|e| field_err("cone", e.to_string()))
        }
        "polyhedral" => {
            let generators = doc
                .generators
                .as_ref()
                .ok_or_else(|| field_err("cone.generators", "required for polyhedral cones"))?;
            for (name, present) in [
                ("cone.axis", doc.axis.is_some()),
                ("cone.half_angle", doc.half_angle.is_some()),
            ] {
                if present {
                    return Err(field_err(name, "not allowed for polyhedral cones"));
                }
            }
            Cone::polyhedral(generators).map_err(|e| field_err("cone", e.to_string()))
        }
        other => Err(field_err(
            "cone.kind",
            format!("unknown kind {other:?}; expected \"circular\" or \"polyhedral\""),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUARTER_PLANE: &str = r#"
[cone]
kind = "circular"
dim = 2
axis = [1.0, 1.0]
half_angle = 45.0
angle_unit = "deg"

[[measure.atoms]]
direction = [-1.0, -1.0]
weight = 0.1
"#;

    #[test]
    fn parses_minimal_problem() {
        let p = Problem::parse(QUARTER_PLANE).unwrap();
        assert_eq!(p.cone.dim(), 2);
        assert_eq!(p.measure.len(), 1);
        assert!((p.measure.weights()[0] - 0.1).abs() < 1e-15);
        assert!(p.support.is_none());
    }

    #[test]
    fn angle_unit_is_mandatory() {
        let text = QUARTER_PLANE.replace("angle_unit = \"deg\"\n", "");
        let e = Problem::parse(&text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("cone.angle_unit"), "{msg}");
    }

    #[test]
    fn degrees_and_radians_agree() {
        let deg = Problem::parse(QUARTER_PLANE).unwrap();
        let rad = Problem::parse(
            &QUARTER_PLANE
                .replace("half_angle = 45.0", "half_angle = 0.7853981633974483")
                .replace("\"deg\"", "\"rad\""),
        )
        .unwrap();
        assert!((deg.cone.gaussian_mass() - rad.cone.gaussian_mass()).abs() < 1e-15);
    }

    #[test]
    fn invalid_atom_names_index() {
        let text = format!(
            "{QUARTER_PLANE}\n[[measure.atoms]]\ndirection = [0.0, -1.0]\nweight = 1.0\n"
        );
        let e = Problem::parse(&text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("measure.atoms") && msg.contains("atom 1"), "{msg}");
    }

    #[test]
    fn unknown_fields_rejected_with_location() {
        let text = format!("{QUARTER_PLANE}\n[solver]\nstep_size = 3.0\n");
        let e = Problem::parse(&text).unwrap_err();
        assert!(matches!(e, GmcError::Parse(_)), "{e}");
    }

    #[test]
    fn doc_round_trips_through_serialization() {
        let p = Problem::parse(QUARTER_PLANE).unwrap();
        let echoed = toml::to_string(&p.doc).unwrap();
        let p2 = Problem::parse(&echoed).unwrap();
        assert_eq!(p.measure.len(), p2.measure.len());
        assert!((p.cone.gaussian_mass() - p2.cone.gaussian_mass()).abs() < 1e-15);
        // serialization is stable
        assert_eq!(echoed, toml::to_string(&p2.doc).unwrap());
    }

    #[test]
    fn polyhedral_cone_parses() {
        let text = r#"
[cone]
kind = "polyhedral"
generators = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]

[[measure.atoms]]
direction = [-1.0, -1.0, -1.0]
weight = 0.05
"#;
        let p = Problem::parse(text).unwrap();
        assert_eq!(p.cone.dim(), 3);
        assert!((p.cone.gaussian_mass() - 0.125).abs() < 1e-12);
    }
}
