//! Scenario files: an algebra, an action on it, and optionally a candidate
//! decomposition, bundled in a JSON format whose rationals are exact "p/q"
//! strings.
//!
//! Parsing separates syntax from mathematics.  Anything serde or the rational
//! parser rejects is a [`ScenarioError::Parse`]; a file that reads fine but
//! describes a structure violating its own laws (associativity, group axioms,
//! Hopf axioms, the homomorphism property, grading multiplicativity, missing
//! rewriting witnesses) is a [`ScenarioError::Validation`] naming the checker
//! that refused it.  Every invariant checker runs at load time, so a parsed
//! [`Scenario`] is safe to hand to any computation in this crate.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::actions::{
    check_generalized_action, check_hopf, check_module_algebra, duality_transform,
    gaction_to_generalized, Action, ActionAlgebra, ActionData, ActionError, GradedAlgebra,
    GroupData, HopfData,
};
use crate::exactalg::{radical, Algebra, AlgebraError, Decomposition, Subspace};
use crate::linalg::Matrix;
use crate::rat::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum ScenarioError {
    /// Malformed JSON or an unreadable rational; the message carries the
    /// serde position ("line L column C") when one is available.
    #[error("parse error: {0}")]
    Parse(String),
    /// Syntactically fine but mathematically inconsistent input.
    #[error("validation error [{checker}]: {detail}")]
    Validation { checker: String, detail: String },
}

fn validation(checker: &str, detail: impl ToString) -> ScenarioError {
    ScenarioError::Validation { checker: checker.into(), detail: detail.to_string() }
}

/// Checker name for an algebra construction failure: associativity gets its
/// own label because it is the canonical "your table is wrong" diagnosis.
fn algebra_error(e: AlgebraError) -> ScenarioError {
    let checker = match &e {
        AlgebraError::Associativity { .. } => "associativity",
        AlgebraError::UnitLaw { .. } => "unit",
        _ => "algebra",
    };
    validation(checker, e)
}

fn action_error(e: ActionError) -> ScenarioError {
    let checker = match &e {
        ActionError::NotGroup(_) | ActionError::BadSubgroup(_) => "group",
        ActionError::NotGraded { .. } => "grading",
        ActionError::Algebra(AlgebraError::Associativity { .. }) => "associativity",
        ActionError::Algebra(AlgebraError::UnitLaw { .. }) => "unit",
        ActionError::Algebra(_) => "algebra",
        _ => "action",
    };
    validation(checker, e)
}

// ---------------------------------------------------------------------------
// File schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    algebra: AlgebraFile,
    action: ActionFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    /// `mult[i][j][k]` is the coefficient of basis vector `k` in `e_i e_j`.
    mult: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ActionFile {
    /// Scalars only.
    Trivial,
    /// A finite group acting by automorphisms on `g0` and anti-automorphisms
    /// off it (`g0` defaults to the whole group); one operator per element.
    Group {
        table: Vec<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        g0: Option<Vec<usize>>,
        operators: Vec<Vec<Vec<String>>>,
    },
    /// A grading by the group with multiplication `table`; basis vector `i`
    /// is homogeneous of degree `component_of[i]`.  Loading turns this into
    /// the dual-group-Hopf action by component projections.
    Grading { table: Vec<Vec<usize>>, component_of: Vec<usize> },
    /// A Hopf algebra (multiplication, unit, comultiplication as one matrix
    /// per basis element, counit, antipode) together with its operators.
    Hopf {
        mult: Vec<Vec<Vec<String>>>,
        unit: Vec<String>,
        labels: Vec<String>,
        comul: Vec<Vec<Vec<String>>>,
        counit: Vec<String>,
        antipode: Vec<Vec<String>>,
        operators: Vec<Vec<Vec<String>>>,
    },
    /// A unital action algebra whose product rule is only required to admit
    /// rewriting witnesses (checked at load time).
    Generalized {
        mult: Vec<Vec<Vec<String>>>,
        unit: Vec<String>,
        labels: Vec<String>,
        operators: Vec<Vec<Vec<String>>>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionFile {
    radical: Vec<Vec<String>>,
    components: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nilpotency: Option<usize>,
}

// ---------------------------------------------------------------------------
// Validated scenario
// ---------------------------------------------------------------------------

/// A fully validated scenario: the algebra, the action in its realized form,
/// the original grading when the file declared one, and an optional candidate
/// decomposition to verify.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: Option<String>,
    pub algebra: Algebra,
    pub action: ActionData,
    /// Present exactly when the file's action kind was `grading`; the
    /// equivalent dual action is stored in `action`.
    pub grading: Option<GradedAlgebra>,
    pub decomposition: Option<Decomposition>,
}

fn parse_rat(s: &str, ctx: &str) -> Result<Rational, ScenarioError> {
    parse_rational(s).map_err(|e| ScenarioError::Parse(format!("{ctx}: {e}")))
}

fn parse_vec(v: &[String], ctx: &str) -> Result<Vec<Rational>, ScenarioError> {
    v.iter().map(|s| parse_rat(s, ctx)).collect()
}

fn parse_rows(rows: &[Vec<String>], ctx: &str) -> Result<Vec<Vec<Rational>>, ScenarioError> {
    rows.iter().map(|r| parse_vec(r, ctx)).collect()
}

fn parse_matrix(rows: &[Vec<String>], ctx: &str) -> Result<Matrix, ScenarioError> {
    let parsed = parse_rows(rows, ctx)?;
    let w = parsed.first().map(|r| r.len()).unwrap_or(0);
    if parsed.iter().any(|r| r.len() != w) {
        return Err(ScenarioError::Parse(format!("{ctx}: ragged matrix rows")));
    }
    Ok(Matrix::from_rows(parsed))
}

fn parse_cube(cube: &[Vec<Vec<String>>], ctx: &str) -> Result<Vec<Vec<Vec<Rational>>>, ScenarioError> {
    cube.iter()
        .enumerate()
        .map(|(i, plane)| parse_rows(plane, &format!("{ctx}[{i}]")))
        .collect()
}

fn parse_operators(ops: &[Vec<Vec<String>>], ctx: &str) -> Result<Vec<Matrix>, ScenarioError> {
    ops.iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, &format!("{ctx}[{i}]")))
        .collect()
}

fn build_action_algebra(
    mult: &[Vec<Vec<String>>],
    unit: &[String],
    labels: &[String],
) -> Result<ActionAlgebra, ScenarioError> {
    let dim = unit.len();
    let table = parse_cube(mult, "action.mult")?;
    let unit = parse_vec(unit, "action.unit")?;
    let algebra = Algebra::new(dim, table, Some(unit)).map_err(algebra_error)?;
    ActionAlgebra::new(algebra, labels.to_vec()).map_err(action_error)
}

/// Parses and validates a scenario file, running every structural checker.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;

    let mult = parse_cube(&file.algebra.mult, "algebra.mult")?;
    let unit = match &file.algebra.unit {
        Some(u) => Some(parse_vec(u, "algebra.unit")?),
        None => None,
    };
    let algebra = Algebra::new(file.algebra.dim, mult, unit).map_err(algebra_error)?;
    let dim = algebra.dim();

    let mut grading = None;
    let action = match &file.action {
        ActionFile::Trivial => ActionData::Trivial,
        ActionFile::Group { table, g0, operators } => {
            let group =
                GroupData::new(table.clone(), g0.as_deref()).map_err(action_error)?;
            let ops = parse_operators(operators, "action.operators")?;
            if ops.len() != group.order() {
                return Err(validation("action", "one operator per group element"));
            }
            let assignment: Vec<(Matrix, bool)> = ops
                .into_iter()
                .enumerate()
                .map(|(g, m)| (m, !group.in_g0(g)))
                .collect();
            let ga = gaction_to_generalized(&group, &algebra, &assignment)
                .map_err(action_error)?;
            ActionData::Group(ga)
        }
        ActionFile::Grading { table, component_of } => {
            let group = GroupData::new(table.clone(), None).map_err(action_error)?;
            let graded = GradedAlgebra::new(algebra.clone(), group, component_of.clone())
                .map_err(action_error)?;
            let dual = duality_transform(&graded);
            grading = Some(graded);
            ActionData::Hopf { hopf: dual.hopf, action: dual.action }
        }
        ActionFile::Hopf { mult, unit, labels, comul, counit, antipode, operators } => {
            let aa = build_action_algebra(mult, unit, labels)?;
            let comul = parse_operators(comul, "action.comul")?;
            let counit = parse_vec(counit, "action.counit")?;
            let antipode = parse_matrix(antipode, "action.antipode")?;
            let hopf = HopfData::new(aa, comul, counit, antipode).map_err(action_error)?;
            let axioms = check_hopf(&hopf);
            if let Some(bad) = axioms.first_failure() {
                return Err(validation("hopf", format!("{}: {}", bad.name, bad.detail)));
            }
            let ops = parse_operators(operators, "action.operators")?;
            let act = Action::new(&hopf.action_algebra, ops).map_err(action_error)?;
            if act.algebra_dim() != dim {
                return Err(validation("action", "operators must act on the algebra"));
            }
            if !check_module_algebra(&hopf, &algebra, &act) {
                return Err(validation(
                    "module-algebra",
                    "h(ab) = (h_(1) a)(h_(2) b) fails on some basis triple",
                ));
            }
            ActionData::Hopf { hopf, action: act }
        }
        ActionFile::Generalized { mult, unit, labels, operators } => {
            let aa = build_action_algebra(mult, unit, labels)?;
            let ops = parse_operators(operators, "action.operators")?;
            let act = Action::new(&aa, ops).map_err(action_error)?;
            if act.algebra_dim() != dim {
                return Err(validation("action", "operators must act on the algebra"));
            }
            let report = check_generalized_action(&aa, &algebra, &act);
            if let Some(g) = report.per_generator.iter().position(Option::is_none) {
                return Err(validation(
                    "generalized-action",
                    format!("no rewriting witness for generator {}", aa.labels[g]),
                ));
            }
            ActionData::Generalized { algebra: aa, action: act }
        }
    };

    let decomposition = match &file.decomposition {
        None => None,
        Some(d) => {
            let rad_rows = parse_rows(&d.radical, "decomposition.radical")?;
            if rad_rows.iter().any(|r| r.len() != dim) {
                return Err(validation("decomposition", "radical rows must match dim"));
            }
            let components = d
                .components
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    let rows = parse_rows(rows, &format!("decomposition.components[{i}]"))?;
                    if rows.iter().any(|r| r.len() != dim) {
                        return Err(validation(
                            "decomposition",
                            "component rows must match dim",
                        ));
                    }
                    Ok(Subspace::span(dim, rows))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let nilpotency = match d.nilpotency {
                Some(p) => p,
                None => radical(&algebra).map_err(algebra_error)?.1,
            };
            Some(Decomposition {
                algebra: algebra.clone(),
                radical: Subspace::span(dim, rad_rows),
                nilpotency,
                components,
            })
        }
    };

    Ok(Scenario { name: file.name, algebra, action, grading, decomposition })
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn fmt_rows(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| fmt_vec(r)).collect()
}

fn fmt_matrix(m: &Matrix) -> Vec<Vec<String>> {
    fmt_rows(&m.rows_vec())
}

fn fmt_cube(cube: &[Vec<Vec<Rational>>]) -> Vec<Vec<Vec<String>>> {
    cube.iter().map(|plane| fmt_rows(plane)).collect()
}

fn fmt_operators(ops: &[Matrix]) -> Vec<Vec<Vec<String>>> {
    ops.iter().map(fmt_matrix).collect()
}

fn group_table(g: &GroupData) -> Vec<Vec<usize>> {
    (0..g.order()).map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect()).collect()
}

fn group_g0(g: &GroupData) -> Vec<usize> {
    (0..g.order()).filter(|&a| g.in_g0(a)).collect()
}

impl Scenario {
    fn to_file(&self) -> ScenarioFile {
        let algebra = AlgebraFile {
            dim: self.algebra.dim(),
            mult: fmt_cube(self.algebra.mult_table()),
            unit: self.algebra.unit().map(|u| fmt_vec(u)),
        };
        let action = if let Some(gr) = &self.grading {
            ActionFile::Grading {
                table: group_table(&gr.group),
                component_of: gr.component_of.clone(),
            }
        } else {
            match &self.action {
                ActionData::Trivial => ActionFile::Trivial,
                ActionData::Group(ga) => ActionFile::Group {
                    table: group_table(&ga.group),
                    g0: Some(group_g0(&ga.group)),
                    operators: fmt_operators(ga.action.operators()),
                },
                ActionData::Hopf { hopf, action } => ActionFile::Hopf {
                    mult: fmt_cube(hopf.action_algebra.algebra.mult_table()),
                    unit: fmt_vec(hopf.action_algebra.algebra.unit().expect("unital")),
                    labels: hopf.action_algebra.labels.clone(),
                    comul: hopf.comul.iter().map(fmt_matrix).collect(),
                    counit: fmt_vec(&hopf.counit),
                    antipode: fmt_matrix(&hopf.antipode),
                    operators: fmt_operators(action.operators()),
                },
                ActionData::Generalized { algebra, action } => ActionFile::Generalized {
                    mult: fmt_cube(algebra.algebra.mult_table()),
                    unit: fmt_vec(algebra.algebra.unit().expect("unital")),
                    labels: algebra.labels.clone(),
                    operators: fmt_operators(action.operators()),
                },
            }
        };
        let decomposition = self.decomposition.as_ref().map(|d| DecompositionFile {
            radical: fmt_rows(d.radical.rows()),
            components: d.components.iter().map(|c| fmt_rows(c.rows())).collect(),
            nilpotency: Some(d.nilpotency),
        });
        ScenarioFile { name: self.name.clone(), algebra, action, decomposition }
    }

    /// Canonical JSON emission; `parse_scenario(s.to_json())` reproduces `s`.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes");
        text.push('\n');
        text
    }

    /// Hex SHA-256 of the canonical emission; identifies the mathematical
    /// content independent of source-file formatting.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_json().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::sweedler_scenario;
    use crate::rat::rat_int;
    use num_traits::{One, Zero};

    fn f2_swap_json() -> String {
        // F x F with the coordinate swap.
        let s = scenario_from_parts(
            Algebra::split_fields(2),
            ActionData::Group(
                gaction_to_generalized(
                    &GroupData::cyclic(2),
                    &Algebra::split_fields(2),
                    &[
                        (Matrix::identity(2), false),
                        (Matrix::from_rows(vec![
                            vec![Rational::zero(), Rational::one()],
                            vec![Rational::one(), Rational::zero()],
                        ]), false),
                    ],
                )
                .unwrap(),
            ),
        );
        s.to_json()
    }

    fn scenario_from_parts(algebra: Algebra, action: ActionData) -> Scenario {
        Scenario { name: None, algebra, action, grading: None, decomposition: None }
    }

    #[test]
    fn roundtrip_is_identity() {
        let text = f2_swap_json();
        let once = parse_scenario(&text).unwrap();
        let twice = parse_scenario(&once.to_json()).unwrap();
        assert_eq!(once.to_json(), twice.to_json());
        assert_eq!(once.digest(), twice.digest());
    }

    #[test]
    fn grading_kind_survives_roundtrip() {
        let graded = GradedAlgebra::new(
            Algebra::matrix_algebra(2),
            GroupData::cyclic(2),
            vec![0, 1, 1, 0],
        )
        .unwrap();
        let dual = duality_transform(&graded);
        let s = Scenario {
            name: Some("m2-z2-graded".into()),
            algebra: graded.algebra.clone(),
            action: ActionData::Hopf { hopf: dual.hopf, action: dual.action },
            grading: Some(graded),
            decomposition: None,
        };
        let text = s.to_json();
        assert!(text.contains("\"kind\": \"grading\""));
        let back = parse_scenario(&text).unwrap();
        assert!(back.grading.is_some());
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_rational_is_a_parse_error() {
        let text = f2_swap_json().replacen("\"1\"", "\"1/0\"", 1);
        match parse_scenario(&text) {
            Err(ScenarioError::Parse(msg)) => assert!(msg.contains("1/0"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_json_reports_position() {
        match parse_scenario("{ \"algebra\": ") {
            Err(ScenarioError::Parse(msg)) => {
                assert!(msg.contains("line"), "serde position missing: {msg}")
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_is_a_validation_error() {
        // Start from F x F and corrupt e0·e0 to e0 + e1.
        let mut mult = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        mult[0][0][0] = Rational::one();
        mult[1][1][1] = Rational::one();
        mult[0][0][1] = Rational::one();
        let file = ScenarioFile {
            name: None,
            algebra: AlgebraFile { dim: 2, mult: fmt_cube(&mult), unit: None },
            action: ActionFile::Trivial,
            decomposition: None,
        };
        let text = serde_json::to_string(&file).unwrap();
        match parse_scenario(&text) {
            Err(ScenarioError::Validation { checker, .. }) => {
                assert_eq!(checker, "associativity")
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn sweedler_file_matches_builtin() {
        let sw = sweedler_scenario();
        let algebra = sw.hopf.action_algebra.algebra.clone();
        let s = Scenario {
            name: Some("sweedler".into()),
            algebra,
            action: ActionData::Hopf { hopf: sw.dual.clone(), action: sw.action.clone() },
            grading: None,
            decomposition: None,
        };
        let back = parse_scenario(&s.to_json()).unwrap();
        match &back.action {
            ActionData::Hopf { hopf, action } => {
                assert_eq!(action.operators(), sw.action.operators());
                assert_eq!(hopf.counit, sw.dual.counit);
                assert_eq!(hopf.antipode, sw.dual.antipode);
            }
            other => panic!("expected hopf action, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_rows_load_canonically() {
        let sw = sweedler_scenario();
        let algebra = sw.hopf.action_algebra.algebra.clone();
        let dim = algebra.dim();
        let rad = vec![
            vec![rat_int(0), rat_int(0), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(5)],
        ];
        let comp = vec![
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(3), rat_int(0), rat_int(0)],
        ];
        let s = Scenario {
            name: None,
            algebra: algebra.clone(),
            action: ActionData::Hopf { hopf: sw.dual.clone(), action: sw.action.clone() },
            grading: None,
            decomposition: Some(Decomposition {
                algebra,
                radical: Subspace::span(dim, rad),
                nilpotency: 2,
                components: vec![Subspace::span(dim, comp)],
            }),
        };
        let back = parse_scenario(&s.to_json()).unwrap();
        let d = back.decomposition.unwrap();
        assert_eq!(d.radical.dim(), 2);
        assert_eq!(d.nilpotency, 2);
        assert_eq!(d.components.len(), 1);
        // Canonical reduced rows: spans normalize regardless of scaling.
        assert_eq!(d.radical.rows()[0][2], Rational::one());
    }

    #[test]
    fn unsolvable_generalized_payload_is_refused() {
        let (h, a, act) = crate::actions::unsolvable_fixture();
        let s = scenario_from_parts(
            a,
            ActionData::Generalized { algebra: h, action: act },
        );
        match parse_scenario(&s.to_json()) {
            Err(ScenarioError::Validation { checker, .. }) => {
                assert_eq!(checker, "generalized-action")
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_parse_errors() {
        let text = f2_swap_json().replacen("\"algebra\"", "\"algebra_\"", 1);
        assert!(matches!(parse_scenario(&text), Err(ScenarioError::Parse(_))));
    }
}
