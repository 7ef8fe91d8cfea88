//! Built-in worked examples with known exact invariants.
//!
//! Each entry packages a scenario together with the exponent its invariant
//! decomposition must produce, so a single report run cross-checks the whole
//! decomposition/exponent pipeline against independently derived values:
//!
//! * matrix pairs graded by a symmetric group, where grading-simple summands
//!   cap the exponent at the summand dimension;
//! * a group algebra with its natural self-grading, which is grading-simple,
//!   so the exponent is the full dimension;
//! * coordinate algebras with permutation actions, where the exponent is the
//!   largest orbit;
//! * a matrix pair whose generator transposes entries and swaps summands (an
//!   anti-automorphism), fusing both summands into one simple piece;
//! * an upper-triangular pair whose radical links two components into a
//!   chain, doubling the exponent;
//! * the four-dimensional Sweedler algebra under its dual action, exercised
//!   through codimension bounds and the explicit alternating witness instead
//!   of an exponent (its radical is not invariant, so no equivariant
//!   decomposition exists).

use crate::actions::{
    duality_transform, gaction_to_generalized, group_algebra, ActionData, GradedAlgebra,
    GroupData,
};
use crate::exactalg::{pi_exponent, verify_decomposition, wedderburn_malcev, Algebra, Subspace};
use crate::identities::{check_bounds, evaluate, sweedler_alternating, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::rat::Rational;
use crate::report::Table;
use crate::scenario::{parse_scenario, Scenario, ScenarioError};
use num_traits::{One, Zero};

/// A named scenario with the exponent it must reproduce (`None` for the
/// Sweedler entry, which has no equivariant decomposition).
pub struct GalleryEntry {
    pub name: &'static str,
    pub scenario: Scenario,
    pub expected_exponent: Option<usize>,
}

fn permutation_operator(dim: usize, image: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for (src, &dst) in image.iter().enumerate() {
        m.set(dst, src, Rational::one());
    }
    m
}

fn group_scenario(
    name: &str,
    algebra: Algebra,
    group: GroupData,
    operators: Vec<Matrix>,
) -> Scenario {
    let assignment: Vec<(Matrix, bool)> =
        operators.into_iter().enumerate().map(|(g, m)| (m, !group.in_g0(g))).collect();
    let ga = gaction_to_generalized(&group, &algebra, &assignment)
        .expect("gallery group action validates");
    Scenario {
        name: Some(name.into()),
        algebra,
        action: ActionData::Group(ga),
        grading: None,
        decomposition: None,
    }
}

fn grading_scenario(name: &str, algebra: Algebra, group: GroupData, degrees: Vec<usize>) -> Scenario {
    let graded = GradedAlgebra::new(algebra.clone(), group, degrees)
        .expect("gallery grading validates");
    let dual = duality_transform(&graded);
    Scenario {
        name: Some(name.into()),
        algebra,
        action: ActionData::Hopf { hopf: dual.hopf, action: dual.action },
        grading: Some(graded),
        decomposition: None,
    }
}

/// Two 2x2 matrix summands graded by the symmetric group on three letters:
/// diagonal units in the trivial degree, off-diagonal units of the two
/// summands in two different transpositions.  Both summands are graded
/// ideals, so the exponent is one summand's dimension.
fn m2_pair_s3_graded() -> Scenario {
    let a = Algebra::direct_sum(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(2));
    grading_scenario(
        "m2-pair-s3-graded",
        a,
        GroupData::symmetric(3),
        vec![0, 2, 2, 0, 0, 1, 1, 0],
    )
}

/// The group algebra of the symmetric group on three letters, graded by
/// itself (`deg g = g`).  Graded-simple, so the exponent is its dimension.
fn fs3_self_graded() -> Scenario {
    let g = GroupData::symmetric(3);
    let a = group_algebra(&g).action_algebra.algebra;
    grading_scenario("fs3-self-graded", a, g, (0..6).collect())
}

/// Split coordinates permuted cyclically; the exponent is the orbit size.
fn coordinate_cycle(name: &'static str, m: usize) -> Scenario {
    let a = Algebra::split_fields(m);
    let cycle: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let mut image: Vec<usize> = (0..m).collect();
    let operators = (0..m)
        .map(|_| {
            let op = permutation_operator(m, &image);
            image = image.iter().map(|&i| cycle[i]).collect();
            op
        })
        .collect();
    group_scenario(name, a, GroupData::cyclic(m), operators)
}

/// Two 2x2 matrix summands with one order-two generator acting by
/// `(x, y) -> (y^T, x^T)`: an anti-automorphism that swaps the summands,
/// leaving no proper invariant ideal.
fn m2_pair_transpose_swap() -> Scenario {
    let a = Algebra::direct_sum(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(2));
    // Basis units per summand in order e11, e12, e21, e22; transpose swaps
    // the off-diagonal units while the summands trade places.
    let sigma = permutation_operator(8, &[4, 6, 5, 7, 0, 2, 1, 3]);
    let group = GroupData::cyclic(2).with_g0(&[0]).expect("index-2 subgroup");
    group_scenario(
        "m2-pair-transpose-swap",
        a,
        group,
        vec![Matrix::identity(8), sigma],
    )
}

/// Two upper-triangular summands swapped by an order-two automorphism; the
/// radical chains the two diagonal components together.
fn ut2_pair_swap() -> Scenario {
    let a = Algebra::direct_sum(&Algebra::upper_triangular(2), &Algebra::upper_triangular(2));
    let swap = permutation_operator(6, &[3, 4, 5, 0, 1, 2]);
    group_scenario(
        "ut2-pair-swap",
        a,
        GroupData::cyclic(2),
        vec![Matrix::identity(6), swap],
    )
}

/// The four-dimensional Sweedler algebra under the action of its dual, with
/// the valid radical rows and a semisimple complement that the action
/// nevertheless fails to stabilize — the standard verification counterexample.
pub fn sweedler() -> Scenario {
    let sw = crate::actions::sweedler_scenario();
    let algebra = sw.hopf.action_algebra.algebra.clone();
    let dim = algebra.dim();
    let e = |i: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        v
    };
    let decomposition = crate::exactalg::Decomposition {
        algebra: algebra.clone(),
        radical: Subspace::span(dim, vec![e(2), e(3)]),
        nilpotency: 2,
        components: vec![Subspace::span(dim, vec![e(0), e(1)])],
    };
    Scenario {
        name: Some("sweedler".into()),
        algebra,
        action: ActionData::Hopf { hopf: sw.dual, action: sw.action },
        grading: None,
        decomposition: Some(decomposition),
    }
}

/// The 2x2 matrix algebra graded by the two-element group (diagonal units in
/// degree zero, off-diagonal in degree one) — the smallest grading whose dual
/// action is nontrivial.  Shipped alongside the gallery for experimentation;
/// not a gallery row.
pub fn m2_z2_graded() -> Scenario {
    grading_scenario(
        "m2-z2-graded",
        Algebra::matrix_algebra(2),
        GroupData::cyclic(2),
        vec![0, 1, 1, 0],
    )
}

/// The commutator of two degree-zero projections, an identity of any algebra
/// whose zero component is commutative: `x^(e) y^(e) - y^(e) x^(e)` with `e`
/// the projection onto degree zero of a two-element grading group.
pub fn degree_zero_commutator() -> (crate::identities::HPolynomial, Vec<String>) {
    let mut f = crate::identities::HPolynomial::new(2, 2);
    let e0 = vec![Rational::one(), Rational::zero()];
    f.add_term(Rational::one(), vec![0, 1], vec![e0.clone(), e0.clone()]).unwrap();
    f.add_term(-Rational::one(), vec![1, 0], vec![e0.clone(), e0]).unwrap();
    let labels = crate::actions::dual_group_hopf(&GroupData::cyclic(2)).action_algebra.labels;
    (f, labels)
}

/// All gallery entries in report order.
pub fn entries() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "m2-pair-s3-graded",
            scenario: m2_pair_s3_graded(),
            expected_exponent: Some(4),
        },
        GalleryEntry {
            name: "fs3-self-graded",
            scenario: fs3_self_graded(),
            expected_exponent: Some(6),
        },
        GalleryEntry {
            name: "f2-swap",
            scenario: coordinate_cycle("f2-swap", 2),
            expected_exponent: Some(2),
        },
        GalleryEntry {
            name: "f3-cycle",
            scenario: coordinate_cycle("f3-cycle", 3),
            expected_exponent: Some(3),
        },
        GalleryEntry {
            name: "m2-pair-transpose-swap",
            scenario: m2_pair_transpose_swap(),
            expected_exponent: Some(8),
        },
        GalleryEntry {
            name: "ut2-pair-swap",
            scenario: ut2_pair_swap(),
            expected_exponent: Some(4),
        },
        GalleryEntry { name: "sweedler", scenario: sweedler(), expected_exponent: None },
    ]
}

/// Computes the exponent of a scenario through the full pipeline —
/// equivariant decomposition, re-verification, longest chain — so a silent
/// corruption of any stage surfaces as an error rather than a wrong number.
pub fn scenario_exponent(s: &Scenario) -> Result<usize, String> {
    let d = wedderburn_malcev(&s.algebra, &s.action).map_err(|e| e.to_string())?;
    let report = verify_decomposition(&s.algebra, s.action.operators(), &d);
    if let Some(bad) = report.first_failure() {
        return Err(format!("{}: {}", bad.name, bad.detail));
    }
    Ok(pi_exponent(&d))
}

/// Codimension rows stay cheap inside the gallery: a row is emitted only
/// when the evaluation space estimate is this small.
const GALLERY_CODIM_ESTIMATE: u128 = 1_000_000;

fn codim_rows(table: &mut Table, entry: &GalleryEntry, cap: u128) {
    let s = &entry.scenario;
    let Ok((h, act)) = s.action.realize(s.algebra.dim()) else {
        table.push(format!("{}:realize", entry.name), "error", "-", false);
        return;
    };
    let d = s.algebra.dim() as u128;
    let hd = h.dim() as u128;
    for n in 1..=3usize {
        let estimate = hd.pow(n as u32).saturating_mul(d.pow(n as u32 + 1));
        if estimate > GALLERY_CODIM_ESTIMATE.min(cap) {
            continue;
        }
        match check_bounds(&s.algebra, &act, n, cap) {
            Ok(b) => table.push(
                format!("{}:c^H_{n}", entry.name),
                b.c_acted.to_string(),
                b.dim_bound.to_string(),
                b.pass,
            ),
            Err(e) => table.push(format!("{}:c^H_{n}", entry.name), e.to_string(), "-", false),
        }
    }
}

fn sweedler_rows(table: &mut Table, s: &Scenario, cap: u128) {
    let Ok((_, act)) = s.action.realize(s.algebra.dim()) else {
        table.push("sweedler:realize", "error", "-", false);
        return;
    };
    match crate::identities::codimension(&s.algebra, &act, 1, cap) {
        Ok((c1, _)) => table.push("sweedler:c^H_1", c1.to_string(), "4", c1 == 4),
        Err(e) => table.push("sweedler:c^H_1", e.to_string(), "4", false),
    }
    match sweedler_alternating(1, 4) {
        Ok((f, args)) => {
            let value = evaluate(&f, &s.algebra, &act, &args);
            let unit = s.algebra.unit().expect("unital");
            let ok = &value == unit;
            let shown = if value.iter().skip(1).all(Rational::is_zero) {
                crate::rat::format_rational(&value[0])
            } else {
                "non-scalar".into()
            };
            table.push("sweedler:witness", shown, "1", ok);
        }
        Err(e) => table.push("sweedler:witness", e.to_string(), "1", false),
    }
}

/// The gallery report: one exponent row per entry with an expected value,
/// plus small codimension-bound rows and the Sweedler witness rows.
pub fn gallery_table(cap: u128) -> Table {
    let entries = entries();
    let mut hasher_input = String::new();
    for e in &entries {
        hasher_input.push_str(&e.scenario.to_json());
    }
    let digest: String = {
        use sha2::{Digest, Sha256};
        Sha256::digest(hasher_input.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    };
    let mut table = Table::new("gallery", digest, true);
    for entry in &entries {
        if let Some(expected) = entry.expected_exponent {
            match scenario_exponent(&entry.scenario) {
                Ok(d) => {
                    table.push(entry.name, d.to_string(), expected.to_string(), d == expected)
                }
                Err(e) => table.push(entry.name, e, expected.to_string(), false),
            }
        }
        if entry.name == "sweedler" {
            sweedler_rows(&mut table, &entry.scenario, cap);
        } else {
            codim_rows(&mut table, entry, cap);
        }
    }
    table
}

/// Convenience wrapper running the gallery at the default resource cap.
pub fn gallery_default() -> Table {
    gallery_table(DEFAULT_CAP)
}

/// Deterministically perturbs one structure constant of a scenario file:
/// entry `seed mod count` of the flattened multiplication table gets 1 added
/// to its numerator.  Used to demonstrate that the gallery catches any
/// corruption of the shipped data.
pub fn perturb_json(text: &str, seed: u64) -> Result<String, ScenarioError> {
    let mut v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    let cells = {
        let mult = v
            .pointer("/algebra/mult")
            .ok_or_else(|| ScenarioError::Parse("missing algebra.mult".into()))?;
        let mut coords = Vec::new();
        if let serde_json::Value::Array(planes) = mult {
            for (i, plane) in planes.iter().enumerate() {
                if let serde_json::Value::Array(rows) = plane {
                    for (j, row) in rows.iter().enumerate() {
                        if let serde_json::Value::Array(cells) = row {
                            for (k, _) in cells.iter().enumerate() {
                                coords.push((i, j, k));
                            }
                        }
                    }
                }
            }
        }
        coords
    };
    if cells.is_empty() {
        return Err(ScenarioError::Parse("empty multiplication table".into()));
    }
    let (i, j, k) = cells[(seed as usize) % cells.len()];
    let path = format!("/algebra/mult/{i}/{j}/{k}");
    let cell = v.pointer_mut(&path).expect("enumerated cell exists");
    let old = cell.as_str().ok_or_else(|| ScenarioError::Parse("mult cell is not a string".into()))?;
    let r = crate::rat::parse_rational(old)
        .map_err(|e| ScenarioError::Parse(format!("{path}: {e}")))?;
    let bumped = r + Rational::one();
    *cell = serde_json::Value::String(crate::rat::format_rational(&bumped));
    Ok(serde_json::to_string_pretty(&v).expect("value serializes") + "\n")
}

/// Loads a perturbed copy of a gallery entry; the caller checks that either
/// validation or the report flags it.
pub fn perturbed_entry(entry: &GalleryEntry, seed: u64) -> Result<Scenario, ScenarioError> {
    let text = perturb_json(&entry.scenario.to_json(), seed)?;
    parse_scenario(&text)
}
