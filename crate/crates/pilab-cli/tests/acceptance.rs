//! End-to-end acceptance checklist.  Each test covers one headline
//! requirement and prints a single line, so `cargo test --test acceptance
//! -- --nocapture` reads as the full checklist.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_rational::BigRational as Rational;
use num_traits::{One, Zero};
use pilab::actions::{
    dual_group_hopf, group_algebra, left_integral, sweedler_scenario, Action, ActionData,
    GroupData,
};
use pilab::exactalg::{pi_exponent, radical, verify_decomposition, wedderburn_malcev};
use pilab::gallery;
use pilab::identities::{
    check_bounds, codimension, evaluate, graded_codimension, is_identity, regev,
    sweedler_alternating, trivial_action, HPolynomial, DEFAULT_CAP,
};
use pilab::linalg::Matrix;
use pilab::rat::rat;
use pilab::symfun::{cocharacter, hook_dim, multiplicity_vanishing_check, partitions};

fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn pass(k: usize, what: &str) {
    println!("ACCEPTANCE {k:02}/10 PASS — {what}");
}

#[test]
fn acceptance_01_gallery_exponents_are_exact() {
    let start = Instant::now();
    for entry in gallery::entries() {
        let Some(expected) = entry.expected_exponent else { continue };
        let got = gallery::scenario_exponent(&entry.scenario)
            .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        assert_eq!(got, expected, "{}", entry.name);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "gallery exponents took {elapsed:?}");
    pass(1, &format!("gallery exponents 4/6/2/3/8/4 exact in {elapsed:?}"));
}

#[test]
fn acceptance_02_sweedler_codimension_bounds_and_witness() {
    let s = gallery::sweedler();
    let (_, act) = s.action.realize(s.algebra.dim()).unwrap();
    let start = Instant::now();
    let mut c_values = Vec::new();
    for n in 1..=3usize {
        let (c, _) = codimension(&s.algebra, &act, n, DEFAULT_CAP).unwrap();
        assert!(
            (c as u128) <= 4u128.pow(n as u32 + 1),
            "c^H_{n} = {c} exceeds 4^{}",
            n + 1
        );
        c_values.push(c);
    }
    let elapsed = start.elapsed();
    assert_eq!(c_values[0], 4, "degree-1 codimension");
    assert!(elapsed.as_secs() < 60, "degree-3 rank took {elapsed:?}");
    let unit = s.algebra.unit().unwrap().clone();
    for n in 4..=8usize {
        let (f, args) = sweedler_alternating(1, n).unwrap();
        let value = evaluate(&f, &s.algebra, &act, &args);
        assert_eq!(value, unit, "witness value at n = {n}");
    }
    pass(
        2,
        &format!(
            "sweedler codimensions {c_values:?} within 4^(n+1), witnesses exact for n=4..8 ({elapsed:?} for ranks)"
        ),
    );
}

#[test]
fn acceptance_03_bound_chain_holds_on_every_gallery_scenario() {
    for entry in gallery::entries() {
        let s = &entry.scenario;
        let (_, act) = s.action.realize(s.algebra.dim()).unwrap();
        for n in 1..=3usize {
            let b = check_bounds(&s.algebra, &act, n, DEFAULT_CAP)
                .unwrap_or_else(|e| panic!("{} n={n}: {e}", entry.name));
            assert!(b.pass, "{} n={n}: {:?}", entry.name, b);
            assert!(b.c_plain <= b.c_acted, "{} n={n}", entry.name);
            assert!((b.c_acted as u128) <= b.label_bound, "{} n={n}", entry.name);
            assert!((b.c_acted as u128) <= b.dim_bound, "{} n={n}", entry.name);
        }
    }
    pass(3, "c_n <= c^H_n <= (dim H)^n c_n and c^H_n <= (dim A)^(n+1) on all gallery scenarios, n <= 3");
}

#[test]
fn acceptance_04_graded_and_dual_codimensions_agree() {
    let mut checked = Vec::new();
    for s in [gallery::m2_z2_graded(), gallery::entries().remove(0).scenario] {
        let gr = s.grading.as_ref().expect("grading scenario");
        let (_, act) = s.action.realize(s.algebra.dim()).unwrap();
        for n in 1..=3usize {
            let direct = graded_codimension(gr, n, DEFAULT_CAP).unwrap();
            let (through_dual, _) = codimension(&s.algebra, &act, n, DEFAULT_CAP).unwrap();
            assert_eq!(direct, through_dual, "{:?} n={n}", s.name);
            checked.push(direct);
        }
    }
    pass(4, &format!("graded codimensions equal dual-action codimensions: {checked:?}"));
}

#[test]
fn acceptance_05_identity_fixtures() {
    let m2 = pilab::exactalg::Algebra::matrix_algebra(2);
    let h = group_algebra(&GroupData::cyclic(2)).action_algebra;

    // Conjugation by diag(1, -1) fixes diagonal units and negates the rest.
    let conj = Matrix::from_rows(vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(-1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
    ]);
    let conj_act = Action::new(&h, vec![Matrix::identity(4), conj]).unwrap();
    // Transposition swaps the off-diagonal units.
    let transpose = Matrix::from_rows(vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
    ]);
    let transpose_act = Action::new(&h, vec![Matrix::identity(4), transpose]).unwrap();

    let commutator_with = |label: Vec<Rational>| {
        let mut f = HPolynomial::new(2, label.len());
        f.add_term(Rational::one(), vec![0, 1], vec![label.clone(), label.clone()]).unwrap();
        f.add_term(-Rational::one(), vec![1, 0], vec![label.clone(), label]).unwrap();
        f
    };

    // Symmetrized letters commute: [x + x^psi, y + y^psi] for the conjugation.
    let sym = commutator_with(vec![rat(1, 1), rat(1, 1)]);
    assert!(is_identity(&sym, &m2, &conj_act, DEFAULT_CAP).unwrap());
    // Antisymmetrized letters for the transpose span one dimension.
    let skew = commutator_with(vec![rat(1, 1), rat(-1, 1)]);
    assert!(is_identity(&skew, &m2, &transpose_act, DEFAULT_CAP).unwrap());
    // Degree-zero letters of the graded matrix algebra commute.
    let s = gallery::m2_z2_graded();
    let (_, dual_act) = s.action.realize(s.algebra.dim()).unwrap();
    let (deg0, _) = gallery::degree_zero_commutator();
    assert!(is_identity(&deg0, &s.algebra, &dual_act, DEFAULT_CAP).unwrap());
    // The plain commutator is not an identity of the matrix algebra.
    let plain = commutator_with(vec![rat(1, 1)]);
    assert!(!is_identity(&plain, &m2, &trivial_action(&m2), DEFAULT_CAP).unwrap());
    pass(5, "symmetrized/antisymmetrized/degree-zero commutators are identities; the plain one is not");
}

#[test]
fn acceptance_06_regev_polynomial_is_central_on_m2() {
    let start = Instant::now();
    let f = regev(2).unwrap();
    let m2 = pilab::exactalg::Algebra::matrix_algebra(2);
    let act = trivial_action(&m2);

    // Terms with the scalar labels folded into the coefficient.
    let terms: Vec<(Vec<usize>, Rational)> = f
        .terms()
        .map(|(word, labels, coeff)| {
            let mut c = coeff.clone();
            for l in labels {
                assert_eq!(l.len(), 1);
                c *= &l[0];
            }
            (word.to_vec(), c)
        })
        .collect();
    assert_eq!(terms.len(), 576);

    // Accumulate every basis 8-tuple's value by walking the nonzero unit
    // chains of each term: a product of matrix units survives only when each
    // unit's row equals the previous unit's column.
    let unit = |u: usize| (u / 2, u % 2);
    let tuples: usize = 4usize.pow(8);
    let mut values: Vec<[Rational; 4]> = vec![
        [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        tuples
    ];
    for (word, coeff) in &terms {
        // Assignments: first unit free, later units' rows are forced.
        for first in 0..4usize {
            let mut stack = vec![(1usize, {
                let mut t = [0usize; 8];
                t[word[0]] = first;
                t
            })];
            while let Some((pos, assign)) = stack.pop() {
                if pos == word.len() {
                    let idx = assign.iter().enumerate().fold(0usize, |acc, (v, &u)| acc + u * 4usize.pow(v as u32));
                    let row = unit(assign[word[0]]).0;
                    let col = unit(assign[word[word.len() - 1]]).1;
                    values[idx][row * 2 + col] += coeff;
                    continue;
                }
                let prev_col = unit(assign[word[pos - 1]]).1;
                for col in 0..2usize {
                    let mut next = assign;
                    next[word[pos]] = prev_col * 2 + col;
                    stack.push((pos + 1, next));
                }
            }
        }
    }

    let mut nonzero = 0usize;
    for v in &values {
        assert!(v[1].is_zero() && v[2].is_zero(), "off-diagonal value");
        assert_eq!(v[0], v[3], "non-scalar diagonal");
        if !v[0].is_zero() {
            nonzero += 1;
        }
    }
    assert!(nonzero > 0, "regev polynomial vanished everywhere");

    // Spot-check the chain accumulation against the generic evaluator.
    for idx in (0..tuples).step_by(997) {
        let args: Vec<Vec<Rational>> = (0..8)
            .map(|v| m2.basis_vec((idx / 4usize.pow(v as u32)) % 4))
            .collect();
        let direct = evaluate(&f, &m2, &act, &args);
        let expected = &values[idx];
        assert_eq!(direct[0], expected[0], "tuple {idx}");
        assert_eq!(direct[1], expected[1], "tuple {idx}");
        assert_eq!(direct[2], expected[2], "tuple {idx}");
        assert_eq!(direct[3], expected[3], "tuple {idx}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "regev sweep took {elapsed:?}");
    pass(
        6,
        &format!("regev(2) scalar on all 65536 tuples, {nonzero} nonzero, in {elapsed:?}"),
    );
}

#[test]
fn acceptance_07_radical_and_decomposition_checks() {
    // The four-dimensional counterexample: exact radical rows.
    let sw = gallery::sweedler();
    let (j, p) = radical(&sw.algebra).unwrap();
    let mut b_row = vec![Rational::zero(); 4];
    b_row[2] = Rational::one();
    let mut cb_row = vec![Rational::zero(); 4];
    cb_row[3] = Rational::one();
    assert_eq!(j.rows(), [b_row, cb_row].as_slice());
    assert_eq!(p, 2);
    // Its candidate decomposition fails exactly at radical invariance.
    let report =
        verify_decomposition(&sw.algebra, sw.action.operators(), sw.decomposition.as_ref().unwrap());
    assert!(report.item("radical").unwrap().passed);
    assert_eq!(report.first_failure().unwrap().name, "radical-invariant");
    // Computed decompositions of the graded pair and the triangular pair verify.
    for name in ["m2-pair-s3-graded", "ut2-pair-swap"] {
        let entry = gallery::entries().into_iter().find(|e| e.name == name).unwrap();
        let d = wedderburn_malcev(&entry.scenario.algebra, &entry.scenario.action).unwrap();
        let r = verify_decomposition(&entry.scenario.algebra, entry.scenario.action.operators(), &d);
        assert!(r.passed(), "{name}: {r}");
    }
    pass(7, "radical of the Sweedler algebra is span{b, cb}; verification passes/fails where it must");
}

#[test]
fn acceptance_08_integral_suite() {
    // Group algebra of order two: the averaged element with counit one.
    let fz2 = group_algebra(&GroupData::cyclic(2));
    let t = left_integral(&fz2).unwrap();
    assert_eq!(t.element, vec![rat(1, 2), rat(1, 2)]);
    assert_eq!(t.counit_value, Rational::one());
    assert!(t.semisimple_hint);

    // Its dual: the coordinate projection at the identity.
    let dual_z2 = dual_group_hopf(&GroupData::cyclic(2));
    let t = left_integral(&dual_z2).unwrap();
    assert_eq!(t.element, vec![Rational::one(), Rational::zero()]);
    assert_eq!(t.counit_value, Rational::one());
    assert_eq!(t.tensor_identity, Some(true));

    // The Sweedler algebra: a multiple of b + cb, counit zero.
    let t = left_integral(&sweedler_scenario().hopf).unwrap();
    assert_eq!(t.element, vec![Rational::zero(), Rational::zero(), Rational::one(), Rational::one()]);
    assert!(t.counit_value.is_zero());
    assert!(!t.semisimple_hint);

    // Tensor identity for the dual of the symmetric group on three letters.
    let dual_s3 = dual_group_hopf(&GroupData::symmetric(3));
    let t = left_integral(&dual_s3).unwrap();
    assert_eq!(t.tensor_identity, Some(true));
    pass(8, "integrals: (1+s)/2, identity projection, b+cb with zero counit; tensor identities hold");
}

/// Standard tableaux counted independently by corner peeling.
fn count_standard(parts: &[usize]) -> u64 {
    if parts.is_empty() {
        return 1;
    }
    let mut total = 0;
    for i in 0..parts.len() {
        let is_corner =
            parts[i] > 0 && (i + 1 == parts.len() || parts[i + 1] < parts[i]);
        if !is_corner {
            continue;
        }
        let mut smaller: Vec<usize> = parts.to_vec();
        smaller[i] -= 1;
        while smaller.last() == Some(&0) {
            smaller.pop();
        }
        total += count_standard(&smaller);
    }
    total
}

#[test]
fn acceptance_09_cocharacter_consistency() {
    // Hook lengths against a brute-force tableau count for every shape.
    for n in 1..=8usize {
        for lambda in partitions(n).unwrap() {
            assert_eq!(
                hook_dim(&lambda),
                count_standard(lambda.parts()),
                "shape {lambda}"
            );
        }
    }

    // Multiplicities on four scenarios with their structure data.  The
    // vanishing pattern uses (d, p) from a verified decomposition, so it
    // applies only where one exists.
    let m2 = pilab::exactalg::Algebra::matrix_algebra(2);
    let f2 = gallery::entries().into_iter().find(|e| e.name == "f2-swap").unwrap().scenario;
    let ut2 = gallery::entries().into_iter().find(|e| e.name == "ut2-pair-swap").unwrap().scenario;
    let runs: Vec<(&str, &pilab::exactalg::Algebra, &ActionData)> = vec![
        ("m2-trivial", &m2, &ActionData::Trivial),
        ("f2-swap", &f2.algebra, &f2.action),
        ("ut2-pair-swap", &ut2.algebra, &ut2.action),
    ];
    for (name, a, data) in &runs {
        let dec = wedderburn_malcev(a, data).unwrap_or_else(|e| panic!("{name}: {e}"));
        let d = pi_exponent(&dec);
        let p = dec.nilpotency;
        let (_, act) = data.realize(a.dim()).unwrap();
        for n in 1..=4usize {
            let rows = cocharacter(a, &act, n, DEFAULT_CAP)
                .unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            let (c, _) = codimension(a, &act, n, DEFAULT_CAP).unwrap();
            let total: u64 =
                rows.iter().map(|r| r.multiplicity * hook_dim(&r.partition)).sum();
            assert_eq!(total, c as u64, "{name} n={n}");
            assert!(
                multiplicity_vanishing_check(&rows, d, p, a.dim()),
                "{name} n={n}: vanishing pattern with d={d}, p={p}"
            );
        }
    }
    // The counterexample algebra has no invariant radical, so no verified
    // decomposition exists; the hook sum still matches, while the vanishing
    // pattern genuinely fails for the naive (d, p) = (2, 2) at n = 4.
    let sw = gallery::sweedler();
    let (_, act) = sw.action.realize(sw.algebra.dim()).unwrap();
    let mut sweedler_rows_at_4 = Vec::new();
    for n in 1..=4usize {
        let rows = cocharacter(&sw.algebra, &act, n, DEFAULT_CAP).unwrap();
        let (c, _) = codimension(&sw.algebra, &act, n, DEFAULT_CAP).unwrap();
        let total: u64 = rows.iter().map(|r| r.multiplicity * hook_dim(&r.partition)).sum();
        assert_eq!(total, c as u64, "sweedler n={n}");
        if n == 4 {
            sweedler_rows_at_4 = rows;
        }
    }
    assert!(!multiplicity_vanishing_check(&sweedler_rows_at_4, 2, 2, 4));
    pass(9, "multiplicities integral, sum m*hook = c^H_n, vanishing pattern holds; hooks = tableau counts to n=8");
}

fn run_pilab(args: &[&str], threads: &str) -> (String, Option<i32>) {
    let exe = env!("CARGO_BIN_EXE_pilab");
    let out = Command::new(exe)
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .current_dir(scenarios_dir())
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code())
}

#[test]
fn acceptance_10_reports_are_byte_identical_across_parallelism() {
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["gallery"], 0),
        (vec!["codim", "--n", "3", "sweedler.json"], 0),
        (vec!["cochar", "--n", "3", "sweedler.json"], 0),
        (vec!["bounds", "--n", "2", "ut2-pair-swap.json"], 0),
        (vec!["exponent", "m2-pair-s3-graded.json"], 0),
        (vec!["verify", "sweedler.json"], 1),
        (vec!["decompose", "fs3-self-graded.json"], 0),
    ];
    for (args, expected_code) in &cases {
        let (out1, code1) = run_pilab(args, "1");
        let (out4, code4) = run_pilab(args, "4");
        assert_eq!(out1, out4, "stdout differs for {args:?}");
        assert_eq!(code1, Some(*expected_code), "exit code for {args:?}");
        assert_eq!(code4, Some(*expected_code), "exit code for {args:?}");
        assert!(!out1.is_empty(), "no output for {args:?}");
    }
    // The documented rows appear verbatim.
    let (exponent_out, _) = run_pilab(&["exponent", "m2-pair-s3-graded.json"], "2");
    assert!(exponent_out.contains("d(A)\t4\tpass"), "{exponent_out}");
    let (codim_out, _) = run_pilab(&["codim", "--n", "1", "sweedler.json"], "2");
    assert!(codim_out.contains("c^H_1\t4"), "{codim_out}");
    assert!(codim_out.contains("\t16\t"), "{codim_out}");
    pass(10, "seven reports byte-identical at 1 vs 4 threads with the contracted exit codes");
}
