//! Symmetric-group machinery: partitions, the hook formula, irreducible
//! characters by border-strip recursion, Young symmetrizers acting on
//! labelled polynomials, cocharacter multiplicities from permutation traces
//! on an evaluation image, and the multiplicity-vanishing predicate.

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::actions::Action;
use crate::exactalg::Algebra;
use crate::identities::{codimension, HPolynomial, IdentityError};
use crate::linalg::{permutation_sign, permutations};
use crate::rat::{as_u64, rat_int, Rational};

#[derive(Debug, Error)]
pub enum SymfunError {
    #[error("combinatorial guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("internal consistency failure: {0}")]
    NonIntegralMultiplicity(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, SymfunError> {
        if parts.is_empty() || parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(SymfunError::Shape(
                "parts must be positive and weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Conjugate partition: column lengths.
    pub fn conjugate(&self) -> Vec<usize> {
        let cols = self.parts[0];
        (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and
/// `(1,…,1)` last. Guarded at `n ≤ 12`.
pub fn partitions(n: usize) -> Result<Vec<Partition>, SymfunError> {
    if n == 0 || n > 12 {
        return Err(SymfunError::GuardExceeded(format!(
            "partitions are enumerated for 1 ≤ n ≤ 12, got {n}"
        )));
    }
    fn descend(left: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for k in (1..=left.min(max)).rev() {
            prefix.push(k);
            descend(left - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    descend(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Dimension of the irreducible representation: `n!` divided by the product
/// of hook lengths.
pub fn hook_dim(lambda: &Partition) -> u64 {
    let n = lambda.n();
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            let h = (row - j) + (conj[j] - i) - 1;
            hooks *= h as u128;
        }
    }
    let mut fact: u128 = 1;
    for k in 2..=n as u128 {
        fact *= k;
    }
    debug_assert_eq!(fact % hooks, 0, "the hook product divides n!");
    (fact / hooks) as u64
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// Number of permutations with the given cycle type: `n! / Π k^{m_k} m_k!`.
pub fn class_size(cycle_type: &Partition) -> u64 {
    let n = cycle_type.n();
    let mut fact: u128 = 1;
    for k in 2..=n as u128 {
        fact *= k;
    }
    let mut z: u128 = 1;
    let mut run = 0usize;
    let parts = &cycle_type.parts;
    for (i, &k) in parts.iter().enumerate() {
        run += 1;
        if i + 1 == parts.len() || parts[i + 1] != k {
            for m in 1..=run as u128 {
                z *= m;
            }
            z *= (k as u128).pow(run as u32);
            run = 0;
        }
    }
    (fact / z) as u64
}

/// A concrete permutation with the given cycle type: consecutive cycles on
/// `0..n`.
pub fn class_representative(cycle_type: &Partition) -> Vec<usize> {
    let n = cycle_type.n();
    let mut p: Vec<usize> = (0..n).collect();
    let mut start = 0usize;
    for &k in &cycle_type.parts {
        for o in 0..k {
            p[start + o] = start + (o + 1) % k;
        }
        start += k;
    }
    p
}

/// Exact irreducible character value by border-strip (hook-removal)
/// recursion over beta-numbers.
pub fn irreducible_character(lambda: &Partition, class: &Partition) -> i64 {
    assert_eq!(lambda.n(), class.n(), "character arguments must partition the same n");
    fn recurse(lambda: &[usize], class: &[usize]) -> i64 {
        if class.is_empty() {
            return if lambda.is_empty() { 1 } else { 0 };
        }
        let strip = class[0];
        let rest = &class[1..];
        let s = lambda.len();
        // Strictly decreasing beta-numbers encode the shape; removing a
        // border strip of the given length lowers one of them.
        let betas: Vec<usize> = (0..s).map(|j| lambda[j] + (s - 1 - j)).collect();
        let mut total = 0i64;
        for j in 0..s {
            if betas[j] < strip {
                continue;
            }
            let target = betas[j] - strip;
            if betas.contains(&target) {
                continue;
            }
            let height = betas.iter().filter(|&&b| target < b && b < betas[j]).count();
            let mut nb: Vec<usize> = betas.clone();
            nb[j] = target;
            nb.sort_unstable_by(|a, b| b.cmp(a));
            let mut nl: Vec<usize> = nb
                .iter()
                .enumerate()
                .map(|(i, &b)| b - (s - 1 - i))
                .collect();
            while nl.last() == Some(&0) {
                nl.pop();
            }
            let sign = if height % 2 == 0 { 1 } else { -1 };
            total += sign * recurse(&nl, rest);
        }
        total
    }
    recurse(&lambda.parts, &class.parts)
}

// ---------------------------------------------------------------------------
// Cocharacters
// ---------------------------------------------------------------------------

/// One multiplicity in the cocharacter decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocharacterRow {
    pub partition: Partition,
    pub multiplicity: u64,
}

/// Decompose the permutation action on the evaluation image into irreducible
/// characters: one trace per conjugacy class (computed concurrently), then
/// exact inner products. Multiplicities must come out as non-negative
/// integers with `Σ m·hook_dim = rank`, anything else is reported as an
/// internal inconsistency.
pub fn cocharacter(
    a: &Algebra,
    act: &Action,
    n: usize,
    cap: u128,
) -> Result<Vec<CocharacterRow>, SymfunError> {
    if n == 0 || n > 5 {
        return Err(SymfunError::GuardExceeded(format!(
            "cocharacters are computed for 1 ≤ n ≤ 5, got {n}"
        )));
    }
    let (rank, image) = codimension(a, act, n, cap)?;
    let classes = partitions(n)?;
    let traces: Vec<Option<Rational>> = classes
        .par_iter()
        .map(|mu| image.trace_of_permutation(&class_representative(mu)))
        .collect();
    let mut class_traces = Vec::with_capacity(classes.len());
    for (mu, tr) in classes.iter().zip(traces) {
        let tr = tr.ok_or_else(|| {
            SymfunError::NonIntegralMultiplicity(format!(
                "the evaluation image is not stable under a permutation of cycle type {mu}"
            ))
        })?;
        class_traces.push(tr);
    }
    let mut fact = Rational::one();
    for k in 2..=n as i64 {
        fact *= rat_int(k);
    }
    let mut rows = Vec::with_capacity(classes.len());
    let mut total_dim: u64 = 0;
    for lambda in &classes {
        let mut sum = Rational::zero();
        for (mu, tr) in classes.iter().zip(&class_traces) {
            let chi = rat_int(irreducible_character(lambda, mu));
            sum += rat_int(class_size(mu) as i64) * chi * tr;
        }
        let m = &sum / &fact;
        let m = as_u64(&m).ok_or_else(|| {
            SymfunError::NonIntegralMultiplicity(format!(
                "multiplicity of {lambda} is not a non-negative integer"
            ))
        })?;
        total_dim += m * hook_dim(lambda);
        rows.push(CocharacterRow { partition: lambda.clone(), multiplicity: m });
    }
    if total_dim != rank as u64 {
        return Err(SymfunError::NonIntegralMultiplicity(format!(
            "multiplicities account for dimension {total_dim} but the image has rank {rank}"
        )));
    }
    Ok(rows)
}

/// Both vanishing conditions on the rows of a cocharacter: every partition
/// with a nonzero multiplicity must keep less than `p` cells below row `d`
/// and must have at most `dim_a` rows.
pub fn multiplicity_vanishing_check(
    rows: &[CocharacterRow],
    d: usize,
    p: usize,
    dim_a: usize,
) -> bool {
    rows.iter().all(|row| {
        if row.multiplicity == 0 {
            return true;
        }
        let parts = row.partition.parts();
        let below: usize = parts.iter().skip(d).sum();
        below < p && parts.len() <= dim_a
    })
}

// ---------------------------------------------------------------------------
// Young symmetrizers
// ---------------------------------------------------------------------------

/// A filling of a partition's cells by `1..n`, row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>) -> Result<Self, SymfunError> {
        let n = shape.n();
        if rows.len() != shape.parts().len()
            || rows.iter().zip(shape.parts()).any(|(r, &len)| r.len() != len)
        {
            return Err(SymfunError::Shape("rows must match the partition".into()));
        }
        let mut seen = vec![false; n];
        for &e in rows.iter().flatten() {
            if e == 0 || e > n || seen[e - 1] {
                return Err(SymfunError::Shape("cells must be filled bijectively by 1..n".into()));
            }
            seen[e - 1] = true;
        }
        Ok(Tableau { shape, rows })
    }

    /// The canonical filling: `1..n` in reading order.
    pub fn row_major(shape: Partition) -> Tableau {
        let mut next = 1usize;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Tableau { shape, rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    fn columns(&self) -> Vec<Vec<usize>> {
        let cols = self.shape.parts()[0];
        (0..cols)
            .map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect())
            .collect()
    }
}

/// Which product order of row symmetrization and column alternation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetrizerKind {
    /// Row symmetrization applied after column alternation.
    E,
    /// Column alternation applied after row symmetrization.
    EStar,
}

/// Sum of `f` permuted by every element of the groups generated by the given
/// disjoint blocks of variables (1-based entries), signed when requested.
fn block_group_apply(f: &HPolynomial, blocks: &[Vec<usize>], signed: bool) -> HPolynomial {
    let n = f.n();
    let active: Vec<&Vec<usize>> = blocks.iter().filter(|b| b.len() > 1).collect();
    if active.is_empty() {
        return f.clone();
    }
    let tables: Vec<Vec<Vec<usize>>> = active.iter().map(|b| permutations(b.len())).collect();
    let mut total = HPolynomial::new(n, f.hdim());
    let mut choice = vec![0usize; active.len()];
    loop {
        let mut m: Vec<usize> = (0..n).collect();
        let mut sign = 1i32;
        for (bi, b) in active.iter().enumerate() {
            let tau = &tables[bi][choice[bi]];
            if signed {
                sign *= permutation_sign(tau);
            }
            for (i, &entry) in b.iter().enumerate() {
                m[entry - 1] = b[tau[i]] - 1;
            }
        }
        let image = f.map_variables(&m);
        let term = if sign < 0 { image.scaled(&rat_int(-1)) } else { image };
        total = add_polys(&total, &term);
        let mut p = choice.len();
        let mut carry = true;
        while carry && p > 0 {
            p -= 1;
            choice[p] += 1;
            if choice[p] < tables[p].len() {
                carry = false;
            } else {
                choice[p] = 0;
            }
        }
        if carry {
            break;
        }
    }
    total
}

fn add_polys(a: &HPolynomial, b: &HPolynomial) -> HPolynomial {
    let mut out = a.clone();
    for (word, labels, coeff) in b.terms() {
        out.add_term(coeff.clone(), word.to_vec(), labels.to_vec())
            .expect("compatible polynomials");
    }
    out
}

/// Apply the Young symmetrizer of the tableau to a polynomial by permuting
/// variable indices: the group-algebra product acts factor by factor, the
/// rightmost factor first.
pub fn young_symmetrizer_apply(
    t: &Tableau,
    f: &HPolynomial,
    kind: SymmetrizerKind,
) -> Result<HPolynomial, SymfunError> {
    if t.n() != f.n() {
        return Err(SymfunError::Shape(
            "the tableau must fill as many cells as the polynomial has variables".into(),
        ));
    }
    let rows = t.rows.clone();
    let cols = t.columns();
    Ok(match kind {
        SymmetrizerKind::E => {
            let after_b = block_group_apply(f, &cols, true);
            block_group_apply(&after_b, &rows, false)
        }
        SymmetrizerKind::EStar => {
            let after_a = block_group_apply(f, &rows, false);
            block_group_apply(&after_a, &cols, true)
        }
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{group_algebra, sweedler_scenario, GroupData};
    use crate::identities::{
        for_each_basis_value, monomial_basis, trivial_action, DEFAULT_CAP,
    };
    use crate::linalg::{rref, Matrix, SparseRow};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions_in_reverse_lexicographic_order() {
        let three = partitions(3).unwrap();
        assert_eq!(three, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions(1).unwrap(), vec![p(&[1])]);
        assert_eq!(partitions(5).unwrap().len(), 7);
        assert_eq!(partitions(12).unwrap().len(), 77);
        assert!(matches!(partitions(13), Err(SymfunError::GuardExceeded(_))));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    /// Count standard Young tableaux by peeling removable corners.
    fn count_standard(parts: &[usize]) -> u64 {
        if parts.is_empty() {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let is_corner = i + 1 == parts.len() || parts[i] > parts[i + 1];
            if !is_corner {
                continue;
            }
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            while smaller.last() == Some(&0) {
                smaller.pop();
            }
            total += count_standard(&smaller);
        }
        total
    }

    #[test]
    fn hook_formula_counts_standard_tableaux() {
        assert_eq!(hook_dim(&p(&[4])), 1);
        assert_eq!(hook_dim(&p(&[2, 1])), 2);
        assert_eq!(hook_dim(&p(&[2, 2])), 2);
        assert_eq!(hook_dim(&p(&[3, 2])), 5);
        for n in 1..=8 {
            for lambda in partitions(n.min(12)).unwrap() {
                assert_eq!(
                    hook_dim(&lambda),
                    count_standard(lambda.parts()),
                    "hook formula disagrees with direct enumeration at {lambda}"
                );
            }
        }
    }

    #[test]
    fn character_table_of_s3_and_special_values() {
        // Classes in partition order: (3), (2,1), (1,1,1).
        let classes = partitions(3).unwrap();
        let table: Vec<Vec<i64>> = partitions(3)
            .unwrap()
            .iter()
            .map(|l| classes.iter().map(|c| irreducible_character(l, c)).collect())
            .collect();
        assert_eq!(table, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);

        for c in partitions(4).unwrap() {
            assert_eq!(irreducible_character(&p(&[4]), &c), 1, "trivial character");
        }
        assert_eq!(irreducible_character(&p(&[1, 1]), &p(&[2])), -1, "sign at a transposition");
        assert_eq!(
            irreducible_character(&p(&[2, 1]), &p(&[1, 1, 1])),
            hook_dim(&p(&[2, 1])) as i64
        );
    }

    #[test]
    fn class_sizes_partition_the_group() {
        for n in 1..=6 {
            let total: u64 = partitions(n).unwrap().iter().map(class_size).sum();
            let fact: u64 = (2..=n as u64).product::<u64>().max(1);
            assert_eq!(total, fact);
        }
        // A representative really has the requested cycle type.
        let rep = class_representative(&p(&[3, 2]));
        assert_eq!(rep, vec![1, 2, 0, 4, 3]);
    }

    #[test]
    fn characters_are_orthonormal() {
        for n in 1..=6 {
            let classes = partitions(n).unwrap();
            let fact: i64 = (2..=n as i64).product::<i64>().max(1);
            for l in &classes {
                for m in &classes {
                    let dot: i64 = classes
                        .iter()
                        .map(|c| {
                            class_size(c) as i64
                                * irreducible_character(l, c)
                                * irreducible_character(m, c)
                        })
                        .sum();
                    assert_eq!(dot, if l == m { fact } else { 0 });
                }
            }
        }
    }

    /// Fully independent trace pipeline: dense monomial value rows, dense
    /// canonical echelon via `rref`, permuted rows re-expressed by solving
    /// against the echelon basis.
    fn dense_cocharacter_oracle(a: &Algebra, act: &Action, n: usize) -> Vec<u64> {
        let d = a.dim();
        let monos = monomial_basis(n, act.operators().len(), 1 << 60).unwrap();
        let tuples = d.pow(n as u32);
        let flat = |f: &HPolynomial| -> Vec<Rational> {
            let mut row = vec![Rational::zero(); tuples * d];
            let mut idx = 0usize;
            for_each_basis_value(f, a, act, 1 << 60, |_, value: &SparseRow<Rational>| {
                for (k, c) in value {
                    row[idx * d + k] = c.clone();
                }
                idx += 1;
                true
            })
            .unwrap();
            row
        };
        let dense_rows: Vec<Vec<Rational>> = monos.iter().map(|f| flat(f)).collect();
        let ech = rref(dense_rows);
        let basis = &ech.rows;
        let rank = basis.len();
        let classes = partitions(n).unwrap();
        let mut traces = Vec::new();
        for mu in &classes {
            let sigma = class_representative(mu);
            // Permute a flattened map through tuple relabeling.
            let mut tr = Rational::zero();
            for (j, row) in basis.iter().enumerate() {
                let mut permuted = vec![Rational::zero(); tuples * d];
                for (col, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let tup = col / d;
                    let coord = col % d;
                    let mut digits = vec![0usize; n];
                    let mut rest = tup;
                    for q in (0..n).rev() {
                        digits[q] = rest % d;
                        rest /= d;
                    }
                    let mut t = vec![0usize; n];
                    for i in 0..n {
                        t[sigma[i]] = digits[i];
                    }
                    let mut enc = 0usize;
                    for &dd in &t {
                        enc = enc * d + dd;
                    }
                    permuted[enc * d + coord] = c.clone();
                }
                let coords = ech.coordinates(&permuted).expect("image is stable");
                tr += coords[j].clone();
            }
            traces.push(tr);
        }
        let mut fact = Rational::one();
        for k in 2..=n as i64 {
            fact *= rat_int(k);
        }
        let mut out = Vec::new();
        for lambda in &classes {
            let mut sum = Rational::zero();
            for (mu, tr) in classes.iter().zip(&traces) {
                sum += rat_int(class_size(mu) as i64)
                    * rat_int(irreducible_character(lambda, mu))
                    * tr;
            }
            out.push(as_u64(&(&sum / &fact)).expect("integral multiplicity"));
        }
        assert_eq!(
            out.iter()
                .zip(&classes)
                .map(|(&m, l)| m * hook_dim(l))
                .sum::<u64>(),
            rank as u64
        );
        out
    }

    #[test]
    fn matrix_algebra_cocharacter_at_two_variables() {
        // Oracle by hand: the image has basis {xy, yx}; the identity has
        // trace 2, the swap exchanges the two maps so its trace is 0; the
        // inner products give m = 1 for both partitions of 2.
        let a = Algebra::matrix_algebra(2);
        let act = trivial_action(&a);
        let rows = cocharacter(&a, &act, 2, DEFAULT_CAP).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].partition, p(&[2]));
        assert_eq!(rows[0].multiplicity, 1);
        assert_eq!(rows[1].partition, p(&[1, 1]));
        assert_eq!(rows[1].multiplicity, 1);
        assert_eq!(dense_cocharacter_oracle(&a, &act, 2), vec![1, 1]);
    }

    #[test]
    fn cocharacters_match_the_dense_oracle() {
        let m2 = Algebra::matrix_algebra(2);
        let trivial = trivial_action(&m2);
        let rows = cocharacter(&m2, &trivial, 3, DEFAULT_CAP).unwrap();
        let got: Vec<u64> = rows.iter().map(|r| r.multiplicity).collect();
        assert_eq!(got, dense_cocharacter_oracle(&m2, &trivial, 3));
        let total: u64 = rows.iter().map(|r| r.multiplicity * hook_dim(&r.partition)).sum();
        assert_eq!(total, 6, "multiplicities account for the full codimension");

        // Two split fields swapped by the group of order two.
        let a = Algebra::split_fields(2);
        let h = group_algebra(&GroupData::cyclic(2)).action_algebra;
        let mut swap = Matrix::zeros(2, 2);
        swap.set(0, 1, rat_int(1));
        swap.set(1, 0, rat_int(1));
        let act = Action::new(&h, vec![Matrix::identity(2), swap]).unwrap();
        let rows = cocharacter(&a, &act, 2, DEFAULT_CAP).unwrap();
        let got: Vec<u64> = rows.iter().map(|r| r.multiplicity).collect();
        assert_eq!(got, dense_cocharacter_oracle(&a, &act, 2));
        let total: u64 = rows.iter().map(|r| r.multiplicity * hook_dim(&r.partition)).sum();
        let c2 = crate::identities::codimension(&a, &act, 2, DEFAULT_CAP).unwrap().0;
        assert_eq!(total, c2 as u64);
    }

    #[test]
    fn one_variable_cocharacter_is_the_codimension() {
        let s = sweedler_scenario();
        let ha = &s.hopf.action_algebra.algebra;
        let rows = cocharacter(ha, &s.action, 1, DEFAULT_CAP).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].multiplicity, 4);
        assert!(matches!(
            cocharacter(ha, &s.action, 6, DEFAULT_CAP),
            Err(SymfunError::GuardExceeded(_))
        ));
    }

    #[test]
    fn vanishing_conditions_filter_partitions() {
        let a = Algebra::matrix_algebra(2);
        let rows = cocharacter(&a, &trivial_action(&a), 2, DEFAULT_CAP).unwrap();
        assert!(multiplicity_vanishing_check(&rows, 4, 1, 4));

        // A fifth row is impossible over a four-dimensional algebra.
        let fake = vec![CocharacterRow { partition: p(&[1, 1, 1, 1, 1]), multiplicity: 1 }];
        assert!(!multiplicity_vanishing_check(&fake, 4, 1, 4));
        let fake = vec![CocharacterRow { partition: p(&[1, 1, 1, 1, 1]), multiplicity: 0 }];
        assert!(multiplicity_vanishing_check(&fake, 4, 1, 4));

        // Too much mass below the exponent row against a nilpotency bound.
        let heavy = vec![CocharacterRow { partition: p(&[2, 1, 1]), multiplicity: 3 }];
        assert!(!multiplicity_vanishing_check(&heavy, 1, 2, 4));
        assert!(multiplicity_vanishing_check(&heavy, 2, 2, 4));

        let ut2 = Algebra::upper_triangular(2);
        let rows = cocharacter(&ut2, &trivial_action(&ut2), 3, DEFAULT_CAP).unwrap();
        assert!(multiplicity_vanishing_check(&rows, 2, 2, 3));
    }

    #[test]
    fn colengths_stay_within_the_row_strip() {
        // Every partition carrying a nonzero multiplicity fits in a strip
        // with at most dim A rows.
        for (a, nmax) in [
            (Algebra::matrix_algebra(2), 4usize),
            (Algebra::upper_triangular(2), 4),
            (Algebra::split_fields(2), 4),
        ] {
            let act = trivial_action(&a);
            for n in 1..=nmax.min(4) {
                let rows = cocharacter(&a, &act, n, DEFAULT_CAP).unwrap();
                for row in rows.iter().filter(|r| r.multiplicity > 0) {
                    assert!(row.partition.parts().len() <= a.dim());
                }
            }
        }
    }

    fn plain_monomial(n: usize) -> HPolynomial {
        let mut f = HPolynomial::new(n, 1);
        f.add_term(rat_int(1), (0..n).collect(), vec![vec![rat_int(1)]; n]).unwrap();
        f
    }

    #[test]
    fn row_and_column_symmetrizers_act_as_documented() {
        // A single row fully symmetrizes.
        let t = Tableau::row_major(p(&[3]));
        let sym = young_symmetrizer_apply(&t, &plain_monomial(3), SymmetrizerKind::E).unwrap();
        assert_eq!(sym.num_terms(), 6);
        assert!(sym.terms().all(|(_, _, c)| *c == rat_int(1)));

        // A single column fully alternates under the e* order.
        let t = Tableau::row_major(p(&[1, 1, 1]));
        let alt =
            young_symmetrizer_apply(&t, &plain_monomial(3), SymmetrizerKind::EStar).unwrap();
        assert_eq!(alt.num_terms(), 6);
        let negs = alt.terms().filter(|(_, _, c)| **c == rat_int(-1)).count();
        assert_eq!(negs, 3);

        // Transposing two entries of the column flips the argument's sign.
        let swapped = young_symmetrizer_apply(
            &t,
            &plain_monomial(3).map_variables(&[1, 0, 2]),
            SymmetrizerKind::EStar,
        )
        .unwrap();
        assert_eq!(swapped, alt.scaled(&rat_int(-1)));

        assert!(young_symmetrizer_apply(&t, &plain_monomial(4), SymmetrizerKind::E).is_err());
    }

    #[test]
    fn star_symmetrizers_are_essentially_idempotent() {
        for n in 1..=4usize {
            for shape in partitions(n).unwrap() {
                let t = Tableau::row_major(shape.clone());
                let f = plain_monomial(n);
                let once = young_symmetrizer_apply(&t, &f, SymmetrizerKind::EStar).unwrap();
                let twice = young_symmetrizer_apply(&t, &once, SymmetrizerKind::EStar).unwrap();
                let mut fact = Rational::one();
                for k in 2..=n as i64 {
                    fact *= rat_int(k);
                }
                let scale = fact / rat_int(hook_dim(&shape) as i64);
                assert_eq!(
                    twice,
                    once.scaled(&scale),
                    "e* squared must be n!/hook_dim times e* at shape {shape}"
                );
            }
        }
    }

    #[test]
    fn tableau_validation() {
        assert!(Tableau::new(p(&[2, 1]), vec![vec![1, 2], vec![3]]).is_ok());
        assert!(Tableau::new(p(&[2, 1]), vec![vec![1, 2, 3]]).is_err());
        assert!(Tableau::new(p(&[2, 1]), vec![vec![1, 1], vec![2]]).is_err());
        assert!(Tableau::new(p(&[2, 1]), vec![vec![0, 1], vec![2]]).is_err());
        let t = Tableau::new(p(&[2, 2]), vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(t.columns(), vec![vec![1, 2], vec![3, 4]]);
    }
}
