//! Consolidated hypothesis checker: every assumption the convergence
//! theory places on an experiment file, verified structurally where
//! possible and by deterministic sampling elsewhere, in one report.
//!
//! The checker runs on a *parsed* document, not a validated one, so it
//! can diagnose inadmissible inputs (an oversized step size, a
//! non-monotone bifunction) instead of refusing to look at them.

use crate::equilibrium::{check_bifunction_axioms, resolvent, ResolventQuery};
use crate::harness::problem::ExperimentDocument;
use crate::operators::{check_norm_domination, check_relatively_nonexpansive, estimate_alpha};
use crate::schedule::{validate_schedule, ConditionStatus, DEFAULT_VALIDATION_HORIZON};
use crate::space::DEFAULT_GEOMETRY_TOL;
use std::fmt;

/// Verdict for one checked hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    /// The hypothesis fails but does not prevent the iteration from
    /// running (advisory conditions only).
    Warn,
    Fail,
    /// Not applicable to this document (e.g. no reference solution).
    Skip,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => "WARN",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
        })
    }
}

/// One line of the hypothesis report.
#[derive(Debug, Clone)]
pub struct CheckItem {
    /// Stable identifier: "(A1)".."(A4)" for bifunction axioms,
    /// "(i)".."(iv)" for schedule conditions, descriptive names
    /// otherwise.
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// The full report.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn has_failures(&self) -> bool {
        self.items.iter().any(|i| i.status == CheckStatus::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    /// One line per item plus a tally.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&format!(
                "{}  {:<28} {}\n",
                item.status, item.name, item.detail
            ));
        }
        let count = |s: CheckStatus| self.items.iter().filter(|i| i.status == s).count();
        out.push_str(&format!(
            "result: {} passed, {} warnings, {} failures, {} skipped\n",
            count(CheckStatus::Pass),
            count(CheckStatus::Warn),
            count(CheckStatus::Fail),
            count(CheckStatus::Skip),
        ));
        out
    }
}

fn item(name: impl Into<String>, status: CheckStatus, detail: impl Into<String>) -> CheckItem {
    CheckItem {
        name: name.into(),
        status,
        detail: detail.into(),
    }
}

fn pass_fail(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Run every hypothesis check against a parsed document. `samples`
/// controls the sampling density of the statistical checks; `seed`
/// offsets the deterministic sampler.
pub fn run_checks(document: &ExperimentDocument, samples: usize, seed: u64) -> CheckReport {
    let mut items = Vec::new();

    // Structure: shapes, declared constants, reference feasibility.
    let problem = match document.problem().map_err(|e| e.to_string()).and_then(|p| {
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }) {
        Ok(problem) => {
            items.push(item(
                "structure",
                CheckStatus::Pass,
                "components agree with the space and declared constants are usable",
            ));
            Some(problem)
        }
        Err(message) => {
            items.push(item("structure", CheckStatus::Fail, message));
            None
        }
    };

    if let Some(problem) = &problem {
        let space = &problem.space;
        let set = &problem.set;

        // Bifunction axioms (A1)-(A4).
        let axioms = check_bifunction_axioms(&problem.bifunction, set, space, samples, seed);
        for check in axioms {
            let detail = if check.passed {
                match check.name {
                    "(A1)" => "f vanishes on the diagonal (sampled)".to_string(),
                    "(A2)" => "f(u,y) + f(y,u) <= 0 (sampled)".to_string(),
                    "(A3)" => "f(., y) is continuous toward the diagonal (sampled)".to_string(),
                    _ => "f(u, .) is midpoint convex (sampled)".to_string(),
                }
            } else {
                let witness = check
                    .witness
                    .map(|(a, b)| format!(" at ({a}, {b})"))
                    .unwrap_or_default();
                format!("violated by {:.3e}{witness}", check.worst)
            };
            items.push(item(check.name, pass_fail(check.passed), detail));
        }

        // Relative nonexpansiveness of T and S.
        for (label, map) in [("T", &problem.map_t), ("S", &problem.map_s)] {
            let report = check_relatively_nonexpansive(map, set, space, samples, seed);
            let detail = if report.passed {
                format!(
                    "fixed points are fixed and phi(p, {label}x) <= phi(p, x); worst excess {:.3e}",
                    report.max_excess
                )
            } else if !report.broken_fixed_points.is_empty() {
                format!(
                    "declared fixed point moved by {:.3e}",
                    report.broken_fixed_points[0].1
                )
            } else {
                format!("phi(p, {label}x) exceeded phi(p, x) by {:.3e}", report.max_excess)
            };
            items.push(item(
                format!("{label} relatively nonexpansive"),
                pass_fail(report.passed),
                detail,
            ));
        }

        // Monotonicity and the declared alpha.
        let alpha = estimate_alpha(&problem.operator, set, space, samples, seed);
        let monotone = alpha.min_monotonicity >= -DEFAULT_GEOMETRY_TOL;
        items.push(item(
            "operator monotonicity",
            pass_fail(monotone),
            format!(
                "smallest sampled <Ax-Ay, x-y> = {:.3e}",
                alpha.min_monotonicity
            ),
        ));
        items.push(item(
            "alpha consistency",
            pass_fail(!alpha.declared_inconsistent),
            format!(
                "declared alpha = {}, sampled upper bound = {}",
                alpha.declared, alpha.estimate
            ),
        ));

        // Norm domination needs a known solution.
        match &problem.reference {
            Some(reference) => {
                let report =
                    check_norm_domination(&problem.operator, reference, set, space, samples, seed);
                items.push(item(
                    "norm domination",
                    pass_fail(report.passed),
                    format!(
                        "||Ax|| - ||Ax - Ax*|| <= 0 (sampled); worst excess {:.3e}",
                        report.max_excess
                    ),
                ));
            }
            None => items.push(item(
                "norm domination",
                CheckStatus::Skip,
                "no reference solution supplied",
            )),
        }

        // Schedule conditions (i)-(iv), by name.
        let schedule_report = validate_schedule(
            &document.schedule,
            problem.operator.declared_alpha(),
            space.convexity_constant(),
            DEFAULT_VALIDATION_HORIZON,
        );
        for check in schedule_report.checks {
            let status = match check.status {
                ConditionStatus::Pass => CheckStatus::Pass,
                ConditionStatus::Warn => CheckStatus::Warn,
                ConditionStatus::Fail => CheckStatus::Fail,
            };
            items.push(item(check.condition, status, check.detail));
        }

        // Starting point.
        match space.point(document.x1.clone()) {
            Ok(x1) => {
                let violation = set.violation(x1.coords());
                let feasible = violation <= DEFAULT_GEOMETRY_TOL * (1.0 + x1.norm());
                items.push(item(
                    "x1 feasibility",
                    pass_fail(feasible),
                    format!("set violation {violation:.3e}"),
                ));

                // Resolvent spot check from the starting point.
                let query = ResolventQuery {
                    bifunction: &problem.bifunction,
                    operator: &problem.operator,
                    set,
                    r: document.schedule.r,
                    x: &x1,
                };
                let spot = if feasible {
                    resolvent(&query)
                } else {
                    // Fall back to a feasible query point.
                    set.generalized_projection(&x1)
                        .map_err(Into::into)
                        .and_then(|projected| {
                            resolvent(&ResolventQuery { x: &projected, ..query })
                        })
                };
                match spot {
                    Ok(outcome) => items.push(item(
                        "resolvent spot check",
                        CheckStatus::Pass,
                        format!(
                            "certified output with inner residual {:.3e} in {} iterations",
                            outcome.residual, outcome.iterations
                        ),
                    )),
                    Err(error) => items.push(item(
                        "resolvent spot check",
                        CheckStatus::Fail,
                        error.to_string(),
                    )),
                }
            }
            Err(error) => items.push(item(
                "x1 feasibility",
                CheckStatus::Fail,
                error.to_string(),
            )),
        }
    } else {
        for name in [
            "(A1)",
            "(A2)",
            "(A3)",
            "(A4)",
            "T relatively nonexpansive",
            "S relatively nonexpansive",
            "operator monotonicity",
            "alpha consistency",
            "norm domination",
            "(i)",
            "(ii)",
            "(iii)",
            "(iv)",
            "x1 feasibility",
            "resolvent spot check",
        ] {
            items.push(item(name, CheckStatus::Skip, "not run: structural failure"));
        }
    }

    CheckReport { items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::Bifunction;
    use crate::harness::presets::Preset;
    use crate::schedule::Sequence;

    fn checked(document: &ExperimentDocument) -> CheckReport {
        run_checks(document, 128, 42)
    }

    #[test]
    fn benchmark_document_passes_everything() {
        let report = checked(&Preset::Paper35.document().unwrap());
        assert!(!report.has_failures(), "{}", report.render());
        for item in &report.items {
            assert!(
                matches!(item.status, CheckStatus::Pass),
                "{} was {:?}",
                item.name,
                item.status
            );
        }
        assert_eq!(report.items.len(), 16);
        let rendered = report.render();
        assert!(rendered.contains("PASS  (A2)"));
        assert!(rendered.contains("16 passed, 0 warnings, 0 failures, 0 skipped"));
    }

    #[test]
    fn negative_b_fails_exactly_the_monotonicity_axiom() {
        let mut doc = Preset::Paper35.document().unwrap();
        doc.bifunction = Bifunction::Quadratic1d { a: 9.0, b: -1.0 };
        let report = checked(&doc);
        assert!(report.has_failures());
        assert_eq!(report.find("(A2)").unwrap().status, CheckStatus::Fail);
        for name in ["(A1)", "(A3)", "(A4)", "(i)", "(ii)", "(iii)", "(iv)"] {
            assert_eq!(
                report.find(name).unwrap().status,
                CheckStatus::Pass,
                "{name} should still pass"
            );
        }
    }

    #[test]
    fn oversized_tau_fails_exactly_condition_four() {
        let mut doc = Preset::Paper35.document().unwrap();
        doc.schedule.tau = 0.6;
        let report = checked(&doc);
        assert!(report.has_failures());
        let iv = report.find("(iv)").unwrap();
        assert_eq!(iv.status, CheckStatus::Fail);
        assert!(iv.detail.contains("(iv) 0 < tau < c^2*alpha/2"), "{}", iv.detail);
        assert_eq!(report.find("(A2)").unwrap().status, CheckStatus::Pass);
        assert_eq!(report.find("structure").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn vanishing_gamma_warns_on_condition_two() {
        let mut doc = Preset::Paper35.document().unwrap();
        doc.schedule.alpha = Sequence::affine_reciprocal(1.0 / 3.0, 0.25);
        doc.schedule.beta = Sequence::affine_reciprocal(2.0 / 3.0, -0.25);
        doc.schedule.gamma = Sequence::constant(0.0);
        let report = checked(&doc);
        assert!(!report.has_failures(), "{}", report.render());
        assert_eq!(report.find("(ii)").unwrap().status, CheckStatus::Warn);
        assert_eq!(report.find("(i)").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn missing_reference_skips_norm_domination() {
        let mut doc = Preset::Paper35.document().unwrap();
        doc.reference_solution = None;
        let report = checked(&doc);
        assert_eq!(
            report.find("norm domination").unwrap().status,
            CheckStatus::Skip
        );
        assert!(!report.has_failures());
    }

    #[test]
    fn structural_failure_skips_the_rest() {
        let mut doc = Preset::Paper35.document().unwrap();
        // Quadratic bifunction in a 2-D space is structurally invalid.
        doc.space = crate::space::SpaceDescriptor::euclidean(2).unwrap();
        doc.set = crate::sets::FeasibleSet::bounded_box(vec![-4.0, -4.0], vec![4.0, 4.0]).unwrap();
        doc.x1 = vec![3.5, 0.0];
        doc.reference_solution = Some(vec![0.0, 0.0]);
        let report = checked(&doc);
        assert_eq!(report.find("structure").unwrap().status, CheckStatus::Fail);
        assert!(report.has_failures());
        assert_eq!(report.find("(A1)").unwrap().status, CheckStatus::Skip);
        assert_eq!(report.find("(iv)").unwrap().status, CheckStatus::Skip);
    }

    #[test]
    fn infeasible_start_is_flagged_but_spot_check_survives() {
        let mut doc = Preset::Paper35.document().unwrap();
        doc.x1 = vec![5.0];
        let report = checked(&doc);
        assert_eq!(report.find("x1 feasibility").unwrap().status, CheckStatus::Fail);
        assert_eq!(
            report.find("resolvent spot check").unwrap().status,
            CheckStatus::Pass
        );
    }
}
