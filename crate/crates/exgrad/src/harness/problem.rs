//! Experiment files: a single JSON document describing the problem data,
//! the parameter schedule, and the starting point.
//!
//! Parsing and validation are deliberately separate stages. `load` only
//! parses, so diagnostic commands can inspect inadmissible inputs;
//! `build` validates eagerly (structure, schedule conditions by name,
//! starting-point feasibility) and is what the solve path uses.

use crate::equilibrium::Bifunction;
use crate::operators::{FixedPointMap, MonotoneOperator};
use crate::schedule::{validate_schedule, Schedule, DEFAULT_VALIDATION_HORIZON};
use crate::sets::FeasibleSet;
use crate::solver::{
    solve, ProblemError, ProblemInstance, SolveError, SolveResult,
};
use crate::space::{Point, SpaceDescriptor, SpaceError, DEFAULT_GEOMETRY_TOL};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Errors from loading, validating, or running experiment files.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("schedule rejected: {detail}")]
    ScheduleRejected {
        condition: &'static str,
        detail: String,
    },
    #[error("starting point x1 violates the feasible set by {0:.3e}")]
    InfeasibleStart(f64),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// The on-disk experiment document. Field names are part of the file
/// format; unknown fields are rejected to catch typos.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentDocument {
    pub space: SpaceDescriptor,
    pub set: FeasibleSet,
    pub bifunction: Bifunction,
    pub operator: MonotoneOperator,
    #[serde(rename = "mapT")]
    pub map_t: FixedPointMap,
    #[serde(rename = "mapS")]
    pub map_s: FixedPointMap,
    pub schedule: Schedule,
    pub x1: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_solution: Option<Vec<f64>>,
}

/// A document that passed full validation and is ready to run.
#[derive(Debug, Clone)]
pub struct ValidatedExperiment {
    pub problem: ProblemInstance,
    pub schedule: Schedule,
    pub x1: Point,
}

impl ExperimentDocument {
    /// Parse a document from disk without validating it.
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
            path: path.display().to_string(),
            // serde_json messages carry line and column information.
            message: e.to_string(),
        })
    }

    /// The problem portion of the document as a solver instance (no
    /// schedule or start validation). Fails only on coordinate-level
    /// errors in the reference solution.
    pub fn problem(&self) -> Result<ProblemInstance, HarnessError> {
        let reference = self
            .reference_solution
            .as_ref()
            .map(|coords| self.space.point(coords.clone()))
            .transpose()?;
        Ok(ProblemInstance {
            space: self.space.clone(),
            set: self.set.clone(),
            bifunction: self.bifunction.clone(),
            operator: self.operator.clone(),
            map_t: self.map_t.clone(),
            map_s: self.map_s.clone(),
            reference,
        })
    }

    /// Validate everything eagerly: problem structure, schedule
    /// admissibility (failures cite the violated condition by name), and
    /// feasibility of the starting point.
    pub fn build(&self) -> Result<ValidatedExperiment, HarnessError> {
        let problem = self.problem()?;
        problem.validate()?;
        let report = validate_schedule(
            &self.schedule,
            problem.operator.declared_alpha(),
            problem.space.convexity_constant(),
            DEFAULT_VALIDATION_HORIZON,
        );
        if let Some(failure) = report.failures().first() {
            return Err(HarnessError::ScheduleRejected {
                condition: failure.condition,
                detail: failure.detail.clone(),
            });
        }
        let x1 = problem.space.point(self.x1.clone())?;
        let violation = problem.set.violation(x1.coords());
        if violation > DEFAULT_GEOMETRY_TOL * (1.0 + x1.norm()) {
            return Err(HarnessError::InfeasibleStart(violation));
        }
        Ok(ValidatedExperiment {
            problem,
            schedule: self.schedule.clone(),
            x1,
        })
    }
}

impl ValidatedExperiment {
    /// Run the solver on this experiment.
    pub fn run(&self, stop_tol: f64, max_iters: usize) -> Result<SolveResult, HarnessError> {
        Ok(solve(
            &self.problem,
            &self.schedule,
            &self.x1,
            stop_tol,
            max_iters,
        )?)
    }
}
