//! Multilinear polynomials whose letters carry action labels: evaluation,
//! identity testing, exact codimensions by rank, codimension bound checks,
//! alternation, and the explicit central/alternating constructions used by
//! the exponent machinery.
//!
//! A labelled monomial is `x^{h_1}_{σ(1)} x^{h_2}_{σ(2)} ··· x^{h_n}_{σ(n)}`:
//! position `p` of the word holds variable `σ(p)` acted on by the element
//! `h_p` of the acting algebra. Everything is exact; the expensive paths
//! (rank of the evaluation matrix) stream sparse integer rows through
//! fraction-free elimination and parallelize row generation in fixed order,
//! so results are identical regardless of thread count.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::actions::{
    check_generalized_action, Action, ActionAlgebra, GeneralizedWitness, GradedAlgebra,
    trivial_hopf,
};
use crate::exactalg::{is_h_simple, radical, Algebra};
use crate::linalg::{
    determinant, permutation_sign, permutations, FractionFreeEchelon, Matrix, SparseRow,
};
use crate::rat::{format_rational, parse_rational, rat_int, Rational};

/// Default ceiling on the number of matrix entries (rows × columns) any
/// single rank computation may allocate, and on plain enumeration counts.
pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("resource cap exceeded: the computation needs {needed} entries but the cap is {cap}")]
    ResourceExceeded { needed: u128, cap: u128 },
    #[error("combinatorially infeasible: {0}")]
    FeasibilityLimit(String),
    #[error("needs a split simple operator module: {0}")]
    NotHSimple(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no rewriting witness: {0}")]
    MissingWitness(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

fn factorial_u128(n: usize) -> Option<u128> {
    let mut f: u128 = 1;
    for k in 2..=n as u128 {
        f = f.checked_mul(k)?;
    }
    Some(f)
}

fn pow_u128(base: u128, exp: usize) -> Option<u128> {
    let mut p: u128 = 1;
    for _ in 0..exp {
        p = p.checked_mul(base)?;
    }
    Some(p)
}

fn guard(needed: Option<u128>, cap: u128) -> Result<(), IdentityError> {
    match needed {
        Some(v) if v <= cap => Ok(()),
        Some(v) => Err(IdentityError::ResourceExceeded { needed: v, cap }),
        None => Err(IdentityError::ResourceExceeded { needed: u128::MAX, cap }),
    }
}

// ---------------------------------------------------------------------------
// The polynomial type
// ---------------------------------------------------------------------------

type TermKey = (Vec<usize>, Vec<Vec<Rational>>);
type TermMap = BTreeMap<TermKey, Rational>;

/// A multilinear polynomial in `n` variables with one acting-algebra label
/// per word position. Terms are kept canonically sorted by (word, labels)
/// with no duplicates and no zero coefficients; each word is a permutation
/// of the variables `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolynomial {
    n: usize,
    hdim: usize,
    terms: TermMap,
}

impl HPolynomial {
    pub fn new(n: usize, hdim: usize) -> Self {
        assert!(n >= 1 && hdim >= 1, "need at least one variable and a label space");
        HPolynomial { n, hdim, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order as (word, labels, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &[Vec<Rational>], &Rational)> {
        self.terms.iter().map(|((w, l), c)| (w.as_slice(), l.as_slice(), c))
    }

    /// Add `coeff · x^{labels[0]}_{word[0]} ··· x^{labels[n-1]}_{word[n-1]}`,
    /// merging with an existing equal term.
    pub fn add_term(
        &mut self,
        coeff: Rational,
        word: Vec<usize>,
        labels: Vec<Vec<Rational>>,
    ) -> Result<(), IdentityError> {
        if word.len() != self.n || labels.len() != self.n {
            return Err(IdentityError::Shape("term length must equal the variable count".into()));
        }
        let mut seen = vec![false; self.n];
        for &v in &word {
            if v >= self.n || seen[v] {
                return Err(IdentityError::Shape(
                    "the word must use every variable exactly once".into(),
                ));
            }
            seen[v] = true;
        }
        if labels.iter().any(|l| l.len() != self.hdim) {
            return Err(IdentityError::Shape("every label must have one coordinate per basis element of the acting algebra".into()));
        }
        add_into(&mut self.terms, (word, labels), coeff);
        Ok(())
    }

    /// The polynomial with every coefficient multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> HPolynomial {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect()
        };
        HPolynomial { n: self.n, hdim: self.hdim, terms }
    }

    /// Substitute variable `v ↦ m[v]` in every word; `m` must be a
    /// permutation of `0..n`. Labels stay with their word positions.
    pub fn map_variables(&self, m: &[usize]) -> HPolynomial {
        assert_eq!(m.len(), self.n, "one image per variable");
        let mut terms = BTreeMap::new();
        for ((word, labels), c) in &self.terms {
            let new_word: Vec<usize> = word.iter().map(|&v| m[v]).collect();
            add_into(&mut terms, (new_word, labels.clone()), c.clone());
        }
        HPolynomial { n: self.n, hdim: self.hdim, terms }
    }

    fn from_map(n: usize, hdim: usize, terms: TermMap) -> HPolynomial {
        debug_assert!(terms.keys().all(|(w, l)| {
            let mut seen = vec![false; n];
            w.len() == n
                && l.len() == n
                && w.iter().all(|&v| {
                    let fresh = v < n && !seen[v];
                    if fresh {
                        seen[v] = true;
                    }
                    fresh
                })
                && l.iter().all(|lab| lab.len() == hdim)
        }));
        HPolynomial { n, hdim, terms }
    }
}

fn add_into(map: &mut TermMap, key: TermKey, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration and evaluation
// ---------------------------------------------------------------------------

/// All `n!·hdim^n` labelled monomials with coefficient 1, in lexicographic
/// (word, labels) order: the word runs through permutations lexicographically
/// and the label word through basis indices with the first position most
/// significant.
pub fn monomial_basis(n: usize, hdim: usize, cap: u128) -> Result<Vec<HPolynomial>, IdentityError> {
    if n == 0 || hdim == 0 {
        return Err(IdentityError::Shape("need at least one variable and one label".into()));
    }
    let count = factorial_u128(n).and_then(|f| pow_u128(hdim as u128, n).map(|p| (f, p)));
    guard(count.and_then(|(f, p)| f.checked_mul(p)), cap)?;
    let mut out = Vec::new();
    for word in permutations(n) {
        let mut digits = vec![0usize; n];
        loop {
            let labels: Vec<Vec<Rational>> = digits.iter().map(|&t| basis_label(hdim, t)).collect();
            let mut f = HPolynomial::new(n, hdim);
            f.add_term(Rational::one(), word.clone(), labels)?;
            out.push(f);
            // Big-endian odometer: last position varies fastest.
            let mut p = n;
            let mut carry = true;
            while carry && p > 0 {
                p -= 1;
                digits[p] += 1;
                if digits[p] < hdim {
                    carry = false;
                } else {
                    digits[p] = 0;
                }
            }
            if carry {
                break;
            }
        }
    }
    Ok(out)
}

fn basis_label(hdim: usize, t: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); hdim];
    v[t] = Rational::one();
    v
}

/// Substitute `args` for the variables, apply the label operator to the
/// argument at each word position, multiply left to right in `a`, and sum
/// over terms with coefficients.
pub fn evaluate(f: &HPolynomial, a: &Algebra, act: &Action, args: &[Vec<Rational>]) -> Vec<Rational> {
    assert_eq!(args.len(), f.n, "one argument per variable");
    assert_eq!(act.operators().len(), f.hdim, "label width must match the action");
    assert_eq!(act.algebra_dim(), a.dim(), "the action must operate on the algebra");
    assert!(args.iter().all(|v| v.len() == a.dim()), "arguments live in the algebra");
    let mut total = vec![Rational::zero(); a.dim()];
    for ((word, labels), coeff) in &f.terms {
        let mut value: Option<Vec<Rational>> = None;
        for p in 0..f.n {
            let letter = act.apply(&labels[p], &args[word[p]]);
            value = Some(match value {
                None => letter,
                Some(v) => a.product(&v, &letter),
            });
        }
        let v = value.expect("n >= 1");
        for (t, x) in total.iter_mut().zip(v) {
            *t += x * coeff;
        }
    }
    total
}

/// Sparse evaluation of labelled words on basis arguments: one sparse column
/// per (operator, basis vector) pair, chained through the sparse structure
/// constants with early exit on zero.
struct BasisEvaluator {
    table: Vec<Vec<SparseRow<Rational>>>,
    opcols: Vec<Vec<SparseRow<Rational>>>,
}

impl BasisEvaluator {
    fn new(a: &Algebra, ops: &[Matrix]) -> Self {
        BasisEvaluator {
            table: a.sparse_table(),
            opcols: ops.iter().map(|m| m.sparse_columns()).collect(),
        }
    }

    fn mul(&self, u: &SparseRow<Rational>, v: &SparseRow<Rational>) -> SparseRow<Rational> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, ci) in u {
            for (j, cj) in v {
                let cij = ci * cj;
                for (k, m) in &self.table[*i][*j] {
                    let e = acc.entry(*k).or_insert_with(Rational::zero);
                    *e += &cij * m;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Value of the word whose letters are (operator index, basis index).
    fn word_value(&self, letters: &[(usize, usize)]) -> SparseRow<Rational> {
        let mut value: Option<SparseRow<Rational>> = None;
        for &(op, i) in letters {
            let letter = &self.opcols[op][i];
            if letter.is_empty() {
                return Vec::new();
            }
            value = Some(match value {
                None => letter.clone(),
                Some(v) => {
                    let w = self.mul(&v, letter);
                    if w.is_empty() {
                        return Vec::new();
                    }
                    w
                }
            });
        }
        value.unwrap_or_default()
    }
}

fn decode_tuple(mut idx: usize, n: usize, base: usize) -> Vec<usize> {
    let mut t = vec![0usize; n];
    for p in (0..n).rev() {
        t[p] = idx % base;
        idx /= base;
    }
    t
}

/// Visit the value of `f` on every basis argument tuple, in lexicographic
/// tuple order (first variable most significant); the visitor returns `false`
/// to stop early. Values are sparse coordinate lists.
pub fn for_each_basis_value<F>(
    f: &HPolynomial,
    a: &Algebra,
    act: &Action,
    cap: u128,
    mut visit: F,
) -> Result<(), IdentityError>
where
    F: FnMut(&[usize], &SparseRow<Rational>) -> bool,
{
    assert_eq!(act.operators().len(), f.hdim, "label width must match the action");
    assert_eq!(act.algebra_dim(), a.dim(), "the action must operate on the algebra");
    let d = a.dim();
    guard(pow_u128(d as u128, f.n), cap)?;
    // Distinct labels get one concrete operator each.
    let mut label_keys: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    let mut ops: Vec<Matrix> = Vec::new();
    let mut prepared: Vec<(Rational, Vec<usize>, Vec<usize>)> = Vec::new();
    for ((word, labels), coeff) in &f.terms {
        let mut keys = Vec::with_capacity(f.n);
        for lab in labels {
            let k = match label_keys.get(lab) {
                Some(&k) => k,
                None => {
                    let k = ops.len();
                    label_keys.insert(lab.clone(), k);
                    ops.push(act.operator_of(lab));
                    k
                }
            };
            keys.push(k);
        }
        prepared.push((coeff.clone(), word.clone(), keys));
    }
    let ev = BasisEvaluator::new(a, &ops);
    let total = pow_u128(d as u128, f.n).expect("guarded") as usize;
    let mut letters = vec![(0usize, 0usize); f.n];
    for idx in 0..total {
        let tuple = decode_tuple(idx, f.n, d);
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (coeff, word, keys) in &prepared {
            for p in 0..f.n {
                letters[p] = (keys[p], tuple[word[p]]);
            }
            for (k, c) in ev.word_value(&letters) {
                let e = acc.entry(k).or_insert_with(Rational::zero);
                *e += c * coeff;
            }
        }
        let value: SparseRow<Rational> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !visit(&tuple, &value) {
            return Ok(());
        }
    }
    Ok(())
}

/// True iff the polynomial vanishes on all basis argument tuples, which by
/// multilinearity makes it vanish identically.
pub fn is_identity(
    f: &HPolynomial,
    a: &Algebra,
    act: &Action,
    cap: u128,
) -> Result<bool, IdentityError> {
    let mut vanished = true;
    for_each_basis_value(f, a, act, cap, |_, value| {
        vanished = value.is_empty();
        vanished
    })?;
    Ok(vanished)
}

/// One identity operator on the algebra: the action of the scalars alone.
pub fn trivial_action(a: &Algebra) -> Action {
    let h = trivial_hopf().action_algebra;
    Action::new(&h, vec![Matrix::identity(a.dim())]).expect("the identity operator is an action")
}

// ---------------------------------------------------------------------------
// Codimensions by rank
// ---------------------------------------------------------------------------

/// Canonical basis of the image of the labelled multilinear polynomials
/// inside the space of n-linear maps, flattened over columns
/// `(argument tuple, output coordinate)` in lexicographic order. The row
/// count is the codimension.
#[derive(Debug, Clone)]
pub struct EvaluationImage {
    n: usize,
    adim: usize,
    ncols: usize,
    rows: Vec<SparseRow<Rational>>,
    pivots: Vec<usize>,
}

impl EvaluationImage {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adim(&self) -> usize {
        self.adim
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The flattened map obtained by permuting variables: entry at tuple `t`
    /// of the result is the entry of `row` at the tuple `i ↦ t[sigma[i]]`.
    pub fn permuted_row(&self, row: &SparseRow<Rational>, sigma: &[usize]) -> SparseRow<Rational> {
        assert_eq!(sigma.len(), self.n, "one image per variable");
        let mut out: Vec<(usize, Rational)> = row
            .iter()
            .map(|(col, c)| {
                let tup = col / self.adim;
                let coord = col % self.adim;
                let s = decode_tuple(tup, self.n, self.adim);
                let mut t = vec![0usize; self.n];
                for i in 0..self.n {
                    t[sigma[i]] = s[i];
                }
                let mut enc = 0usize;
                for &d in &t {
                    enc = enc * self.adim + d;
                }
                (enc * self.adim + coord, c.clone())
            })
            .collect();
        out.sort_by_key(|(col, _)| *col);
        out
    }

    /// Coordinates of a flattened map in this basis, or None when it lies
    /// outside the span. Membership is verified by full reconstruction.
    pub fn coordinates(&self, v: &SparseRow<Rational>) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .pivots
            .iter()
            .map(|&p| {
                v.binary_search_by_key(&p, |(col, _)| *col)
                    .map(|i| v[i].1.clone())
                    .unwrap_or_else(|_| Rational::zero())
            })
            .collect();
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (col, x) in row {
                let e = acc.entry(*col).or_insert_with(Rational::zero);
                *e += c * x;
            }
        }
        let rebuilt: SparseRow<Rational> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if &rebuilt == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Trace of the variable permutation acting on the image, or None if the
    /// image fails to be stable under it (which signals an inconsistency).
    pub fn trace_of_permutation(&self, sigma: &[usize]) -> Option<Rational> {
        let mut tr = Rational::zero();
        for (j, row) in self.rows.iter().enumerate() {
            let permuted = self.permuted_row(row, sigma);
            let coords = self.coordinates(&permuted)?;
            tr += coords[j].clone();
        }
        Some(tr)
    }
}

/// Exact codimension: the rank of the matrix whose rows are the labelled
/// monomials and whose columns are all basis-tuple evaluations, together
/// with the canonical image basis. Row generation is chunked and parallel;
/// rows enter the elimination in monomial order, so the result does not
/// depend on the schedule.
pub fn codimension(
    a: &Algebra,
    act: &Action,
    n: usize,
    cap: u128,
) -> Result<(usize, EvaluationImage), IdentityError> {
    let d = a.dim();
    let hd = act.operators().len();
    assert_eq!(act.algebra_dim(), d, "the action must operate on the algebra");
    if n == 0 || d == 0 {
        return Err(IdentityError::Shape("need at least one variable and a nonzero algebra".into()));
    }
    let rows_count = factorial_u128(n).and_then(|f| pow_u128(hd as u128, n).and_then(|p| f.checked_mul(p)));
    let cols_count = pow_u128(d as u128, n + 1);
    let needed = rows_count.and_then(|r| cols_count.and_then(|c| r.checked_mul(c)));
    guard(needed, cap)?;

    // Monomial descriptors in canonical order.
    let mut monos: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for word in permutations(n) {
        let mut digits = vec![0usize; n];
        loop {
            monos.push((word.clone(), digits.clone()));
            let mut p = n;
            let mut carry = true;
            while carry && p > 0 {
                p -= 1;
                digits[p] += 1;
                if digits[p] < hd {
                    carry = false;
                } else {
                    digits[p] = 0;
                }
            }
            if carry {
                break;
            }
        }
    }

    let ev = BasisEvaluator::new(a, act.operators());
    let tuples = pow_u128(d as u128, n).expect("guarded") as usize;
    let ncols = tuples * d;
    let mut ech = FractionFreeEchelon::new(ncols);
    let row_of = |mono: &(Vec<usize>, Vec<usize>)| -> SparseRow<Rational> {
        let (word, labs) = mono;
        let mut row: SparseRow<Rational> = Vec::new();
        let mut letters = vec![(0usize, 0usize); n];
        for tup_idx in 0..tuples {
            let tuple = decode_tuple(tup_idx, n, d);
            for p in 0..n {
                letters[p] = (labs[p], tuple[word[p]]);
            }
            for (k, c) in ev.word_value(&letters) {
                row.push((tup_idx * d + k, c));
            }
        }
        row
    };
    for chunk in monos.chunks(128) {
        let produced: Vec<SparseRow<Rational>> = chunk.par_iter().map(row_of).collect();
        for row in &produced {
            if !row.is_empty() {
                ech.insert_rational(row);
            }
        }
    }
    let (rows, pivots) = ech.to_canonical();
    let rank = rows.len();
    Ok((rank, EvaluationImage { n, adim: d, ncols, rows, pivots }))
}

/// Graded codimension computed directly on degree-labelled monomials: the
/// letter at a position of degree `g` keeps a basis argument exactly when
/// that argument lies in the `g` component, with no action operators
/// involved.
pub fn graded_codimension(gr: &GradedAlgebra, n: usize, cap: u128) -> Result<usize, IdentityError> {
    let a = &gr.algebra;
    let d = a.dim();
    let ord = gr.group.order();
    if n == 0 || d == 0 {
        return Err(IdentityError::Shape("need at least one variable and a nonzero algebra".into()));
    }
    let rows_count =
        factorial_u128(n).and_then(|f| pow_u128(ord as u128, n).and_then(|p| f.checked_mul(p)));
    let needed = rows_count.and_then(|r| pow_u128(d as u128, n + 1).and_then(|c| r.checked_mul(c)));
    guard(needed, cap)?;

    let table = a.sparse_table();
    let tuples = pow_u128(d as u128, n).expect("guarded") as usize;
    let ncols = tuples * d;
    let mut ech = FractionFreeEchelon::new(ncols);
    let mut degrees = vec![0usize; n];
    let perms = permutations(n);
    loop {
        for word in &perms {
            let mut row: SparseRow<Rational> = Vec::new();
            'tuple: for tup_idx in 0..tuples {
                let tuple = decode_tuple(tup_idx, n, d);
                // The letter at position p is the basis argument of the
                // variable there, kept only in the matching component.
                let mut value: Option<SparseRow<Rational>> = None;
                for p in 0..n {
                    let t = tuple[word[p]];
                    if gr.component_of[t] != degrees[p] {
                        continue 'tuple;
                    }
                    let letter: SparseRow<Rational> = vec![(t, Rational::one())];
                    value = Some(match value {
                        None => letter,
                        Some(v) => {
                            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                            for (i, ci) in &v {
                                for (k, m) in &table[*i][t] {
                                    let e = acc.entry(*k).or_insert_with(Rational::zero);
                                    *e += ci * m;
                                }
                            }
                            let w: SparseRow<Rational> =
                                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                            if w.is_empty() {
                                continue 'tuple;
                            }
                            w
                        }
                    });
                }
                for (k, c) in value.expect("n >= 1") {
                    row.push((tup_idx * d + k, c));
                }
            }
            if !row.is_empty() {
                ech.insert_rational(&row);
            }
        }
        let mut p = n;
        let mut carry = true;
        while carry && p > 0 {
            p -= 1;
            degrees[p] += 1;
            if degrees[p] < ord {
                carry = false;
            } else {
                degrees[p] = 0;
            }
        }
        if carry {
            break;
        }
    }
    Ok(ech.rank())
}

/// Both codimension chains at one size: the plain codimension is never above
/// the labelled one, the labelled one is bounded by `(dim H)^n` times the
/// plain one and by `(dim A)^{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub dim_a: usize,
    pub dim_h: usize,
    pub c_plain: usize,
    pub c_acted: usize,
    pub dim_bound: u128,
    pub label_bound: u128,
    pub pass: bool,
}

pub fn check_bounds(
    a: &Algebra,
    act: &Action,
    n: usize,
    cap: u128,
) -> Result<BoundsReport, IdentityError> {
    let (c_plain, _) = codimension(a, &trivial_action(a), n, cap)?;
    let (c_acted, _) = codimension(a, act, n, cap)?;
    let dim_a = a.dim();
    let dim_h = act.operators().len();
    let dim_bound = pow_u128(dim_a as u128, n + 1).unwrap_or(u128::MAX);
    let label_bound = pow_u128(dim_h as u128, n)
        .and_then(|p| p.checked_mul(c_plain as u128))
        .unwrap_or(u128::MAX);
    let pass = c_plain <= c_acted
        && (c_acted as u128) <= label_bound
        && (c_acted as u128) <= dim_bound;
    Ok(BoundsReport { n, dim_a, dim_h, c_plain, c_acted, dim_bound, label_bound, pass })
}

// ---------------------------------------------------------------------------
// Alternation
// ---------------------------------------------------------------------------

fn alternate_map(terms: &TermMap, n: usize, varset: &[usize]) -> TermMap {
    let mut out = TermMap::new();
    for tau in permutations(varset.len()) {
        let sign = rat_int(permutation_sign(&tau) as i64);
        let mut m: Vec<usize> = (0..n).collect();
        for (i, &v) in varset.iter().enumerate() {
            m[v] = varset[tau[i]];
        }
        for ((word, labels), c) in terms {
            let new_word: Vec<usize> = word.iter().map(|&v| m[v]).collect();
            add_into(&mut out, (new_word, labels.clone()), c * &sign);
        }
    }
    out
}

/// Signed sum over all permutations of the given variables:
/// `Σ_τ sign(τ) · (f with the variables of the set permuted by τ)`.
pub fn alternate(f: &HPolynomial, varset: &[usize]) -> HPolynomial {
    let mut seen = vec![false; f.n];
    for &v in varset {
        assert!(v < f.n && !seen[v], "alternating set must be distinct variables of f");
        seen[v] = true;
    }
    HPolynomial::from_map(f.n, f.hdim, alternate_map(&f.terms, f.n, varset))
}

// ---------------------------------------------------------------------------
// Regev's central polynomial
// ---------------------------------------------------------------------------

/// Text-order slots of the block pattern: for each `β = 1..ℓ` the x-slots
/// `(β−1)²..β²` followed by the y-slots with the same indices.
fn regev_slots(ell: usize) -> Vec<(bool, usize)> {
    let mut slots = Vec::with_capacity(2 * ell * ell);
    for beta in 1..=ell {
        for q in (beta - 1) * (beta - 1)..beta * beta {
            slots.push((true, q));
        }
        for q in (beta - 1) * (beta - 1)..beta * beta {
            slots.push((false, q));
        }
    }
    slots
}

/// Regev's central polynomial for `ℓ×ℓ` matrices: `(ℓ²!)²` signed terms in
/// `x_1..x_{ℓ²}, y_1..y_{ℓ²}` (variables `0..ℓ²` and `ℓ²..2ℓ²` here), with
/// interleaved blocks of odd sizes. Expansion is refused for `ℓ ≥ 3`.
pub fn regev(ell: usize) -> Result<HPolynomial, IdentityError> {
    if ell == 0 {
        return Err(IdentityError::Shape("need a positive matrix size".into()));
    }
    if ell > 2 {
        return Err(IdentityError::FeasibilityLimit(format!(
            "expanding the block polynomial for size {ell} needs ({}!)² terms",
            ell * ell
        )));
    }
    let m = ell * ell;
    let slots = regev_slots(ell);
    let mut f = HPolynomial::new(2 * m, 1);
    let one = || vec![Rational::one()];
    for sigma in permutations(m) {
        let ssign = permutation_sign(&sigma);
        for tau in permutations(m) {
            let sign = rat_int((ssign * permutation_sign(&tau)) as i64);
            let word: Vec<usize> = slots
                .iter()
                .map(|&(is_x, q)| if is_x { sigma[q] } else { m + tau[q] })
                .collect();
            let labels = vec![one(); 2 * m];
            f.add_term(sign, word, labels)?;
        }
    }
    Ok(f)
}

/// Value of the block polynomial on concrete operator matrices.
fn regev_operator_value(ell: usize, xs: &[Matrix], ys: &[Matrix]) -> Matrix {
    let m = ell * ell;
    assert!(xs.len() == m && ys.len() == m);
    let dim = xs[0].nrows();
    let slots = regev_slots(ell);
    let mut total = Matrix::zeros(dim, dim);
    for sigma in permutations(m) {
        let ssign = permutation_sign(&sigma);
        for tau in permutations(m) {
            let sign = rat_int((ssign * permutation_sign(&tau)) as i64);
            let mut prod = Matrix::identity(dim);
            for &(is_x, q) in &slots {
                let factor = if is_x { &xs[sigma[q]] } else { &ys[tau[q]] };
                prod = prod.mul(factor);
            }
            total = total.add(&prod.scale(&sign));
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Rewriting a label across a word
// ---------------------------------------------------------------------------

type Letter = (usize, Vec<Rational>);
type WordMap = BTreeMap<Vec<Letter>, Rational>;

/// Distribute the action of `label` over a product of labelled letters using
/// the rewriting witnesses of the generators: on a single letter the labels
/// multiply in the acting algebra; on a longer word the first letter is
/// split off and each witness summand acts on the two parts, in either the
/// straight or the flipped order.
fn expand_label(
    halg: &Algebra,
    wit: &[GeneralizedWitness],
    label: &[Rational],
    word: &[Letter],
) -> WordMap {
    let mut out = WordMap::new();
    if word.len() == 1 {
        let lab = halg.product(label, &word[0].1);
        if lab.iter().any(|c| !c.is_zero()) {
            out.insert(vec![(word[0].0, lab)], Rational::one());
        }
        return out;
    }
    let (first, rest) = (&word[0], &word[1..]);
    for (u, cu) in label.iter().enumerate() {
        if cu.is_zero() {
            continue;
        }
        for (p, q, c) in &wit[u].straight {
            let head = halg.product(&halg.basis_vec(*p), &first.1);
            if head.iter().all(|x| x.is_zero()) {
                continue;
            }
            let tail = expand_label(halg, wit, &halg.basis_vec(*q), rest);
            for (tw, tc) in tail {
                let mut w = Vec::with_capacity(word.len());
                w.push((first.0, head.clone()));
                w.extend(tw);
                let coeff = cu * c * tc;
                merge_word(&mut out, w, coeff);
            }
        }
        for (p, q, c) in &wit[u].flipped {
            // The flipped summand multiplies the tail's image first.
            let head = halg.product(&halg.basis_vec(*q), &first.1);
            if head.iter().all(|x| x.is_zero()) {
                continue;
            }
            let tail = expand_label(halg, wit, &halg.basis_vec(*p), rest);
            for (tw, tc) in tail {
                let mut w = tw;
                w.push((first.0, head.clone()));
                let coeff = cu * c * tc;
                merge_word(&mut out, w, coeff);
            }
        }
    }
    out
}

fn merge_word(map: &mut WordMap, word: Vec<Letter>, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(word) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The alternating identity-map polynomial
// ---------------------------------------------------------------------------

/// Which substitution certifies the constructed polynomial: put the algebra
/// basis into every alternating set in order, the recorded fixed values into
/// their slots, and the probe element into `z_var`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingWitness {
    pub sets: Vec<Vec<usize>>,
    pub fixed: Vec<(usize, Vec<Rational>)>,
    pub z_var: usize,
}

impl AlternatingWitness {
    /// The full argument list for a polynomial in `n` variables over an
    /// algebra of dimension `dim`, probing with `zbar`.
    pub fn args_for(&self, n: usize, dim: usize, zbar: &[Rational]) -> Vec<Vec<Rational>> {
        let mut args = vec![vec![Rational::zero(); dim]; n];
        for set in &self.sets {
            for (i, &v) in set.iter().enumerate() {
                args[v][i] = Rational::one();
            }
        }
        for (v, val) in &self.fixed {
            args[*v] = val.clone();
        }
        args[self.z_var] = zbar.to_vec();
        args
    }
}

/// Whether substituting the witness makes the polynomial act as the
/// identity map in the probe slot, checked on every basis element.
pub fn witness_acts_as_identity(
    f: &HPolynomial,
    b0: &Algebra,
    act: &Action,
    w: &AlternatingWitness,
) -> bool {
    (0..b0.dim()).all(|j| {
        let zbar = b0.basis_vec(j);
        let args = w.args_for(f.n(), b0.dim(), &zbar);
        evaluate(f, b0, act, &args) == zbar
    })
}

/// Build a polynomial alternating in `2k` disjoint sets of size `dim b0`
/// that acts as the identity map on `b0` under the recorded witness
/// substitution. `b0` must be semisimple and its operator module simple and
/// split; the acting algebra must admit rewriting witnesses. Sizes above 2
/// are refused because the block polynomial cannot be expanded.
pub fn build_alternating(
    h: &ActionAlgebra,
    b0: &Algebra,
    act: &Action,
    k: usize,
) -> Result<(HPolynomial, AlternatingWitness), IdentityError> {
    let ell = b0.dim();
    if k == 0 || ell == 0 {
        return Err(IdentityError::Shape("need a nonzero algebra and at least one round".into()));
    }
    let hd = h.dim();
    if act.operators().len() != hd || act.algebra_dim() != ell {
        return Err(IdentityError::Shape("the action must match the acting algebra and b0".into()));
    }
    let (rad, _) = radical(b0).map_err(|e| IdentityError::Shape(e.to_string()))?;
    if rad.dim() > 0 {
        return Err(IdentityError::NotHSimple("b0 has a nonzero radical".into()));
    }
    let (simple, _rank) = is_h_simple(b0, act.operators());
    if !simple {
        return Err(IdentityError::NotHSimple(
            "the operators do not act irreducibly with full matrix image".into(),
        ));
    }
    if ell > 2 {
        return Err(IdentityError::FeasibilityLimit(format!(
            "the construction expands the block polynomial for size {ell}"
        )));
    }
    let report = check_generalized_action(h, b0, act);
    let wit: Vec<GeneralizedWitness> = report
        .per_generator
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            IdentityError::MissingWitness(
                "some generator does not rewrite products through the action".into(),
            )
        })?;
    let id_label = h
        .algebra
        .unit()
        .cloned()
        .ok_or_else(|| IdentityError::Shape("the acting algebra must be unital".into()))?;

    // A basis of the operator space out of left multiplications and
    // left·right·action sandwiches, greedily in index order.
    let mut span = crate::linalg::RatSpan::new(ell * ell);
    let mut ops: Vec<Matrix> = Vec::new();
    for i in 0..ell {
        let m = b0.left_mult(&b0.basis_vec(i));
        if !span.insert(m.vectorize()) {
            return Err(IdentityError::NotHSimple(
                "left multiplications are linearly dependent".into(),
            ));
        }
        ops.push(m);
    }
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    'grow: for i in 0..ell {
        for j in 0..ell {
            for t in 0..hd {
                if span.rank() == ell * ell {
                    break 'grow;
                }
                let m = b0
                    .left_mult(&b0.basis_vec(i))
                    .mul(&b0.right_mult(&b0.basis_vec(j)))
                    .mul(&act.operators()[t]);
                if span.insert(m.vectorize()) {
                    triples.push((i, j, t));
                    ops.push(m);
                }
            }
        }
    }
    if span.rank() < ell * ell {
        return Err(IdentityError::NotHSimple(
            "sandwich operators do not span the full operator space".into(),
        ));
    }
    let s = triples.len();
    debug_assert_eq!(s, ell * ell - ell);

    // The scalar the block polynomial produces on this operator basis.
    let value = regev_operator_value(ell, &ops, &ops);
    let mu = value.get(0, 0).clone();
    assert!(
        !mu.is_zero() && value == Matrix::identity(ell).scale(&mu),
        "the block polynomial must act as a nonzero scalar on an irreducible operator module"
    );

    // Variable layout: x-set, y-set, then the four groups of fixed slots,
    // then the probe variable.
    let xv = |i: usize| i;
    let yv = |i: usize| ell + i;
    let zv = |r: usize| 2 * ell + r;
    let uv = |r: usize| 2 * ell + s + r;
    let vv = |r: usize| 2 * ell + 2 * s + r;
    let wv = |r: usize| 2 * ell + 3 * s + r;
    let probe = 2 * ell + 4 * s;
    let n1 = 2 * ell + 4 * s + 1;

    let m = ell * ell;
    let slots = regev_slots(ell);
    let mut terms = TermMap::new();
    for sigma in permutations(m) {
        let ssign = permutation_sign(&sigma);
        for tau in permutations(m) {
            let sign = rat_int((ssign * permutation_sign(&tau)) as i64);
            let mut words = WordMap::new();
            words.insert(vec![(probe, id_label.clone())], Rational::one());
            for &(is_x, pos) in slots.iter().rev() {
                let opidx = if is_x { sigma[pos] } else { tau[pos] };
                if opidx < ell {
                    // A plain left multiplication by a set variable.
                    let var = if is_x { xv(opidx) } else { yv(opidx) };
                    let mut next = WordMap::new();
                    for (w, c) in words {
                        let mut nw = Vec::with_capacity(w.len() + 1);
                        nw.push((var, id_label.clone()));
                        nw.extend(w);
                        merge_word(&mut next, nw, c);
                    }
                    words = next;
                } else {
                    // A sandwich: action generator inside, then a right and
                    // a left multiplication by fixed-slot variables.
                    let r = opidx - ell;
                    let (_, _, t) = triples[r];
                    let front = if is_x { zv(r) } else { vv(r) };
                    let back = if is_x { uv(r) } else { wv(r) };
                    let mut next = WordMap::new();
                    for (w, c) in words {
                        for (ew, ec) in expand_label(&h.algebra, &wit, &h.algebra.basis_vec(t), &w)
                        {
                            let mut nw = Vec::with_capacity(ew.len() + 2);
                            nw.push((front, id_label.clone()));
                            nw.extend(ew);
                            nw.push((back, id_label.clone()));
                            merge_word(&mut next, nw, c.clone() * ec);
                        }
                    }
                    words = next;
                }
            }
            for (w, c) in words {
                let (word, labels): (Vec<usize>, Vec<Vec<Rational>>) = w.into_iter().unzip();
                add_into(&mut terms, (word, labels), sign.clone() * c);
            }
        }
    }
    let scale = mu.recip();
    for c in terms.values_mut() {
        *c *= &scale;
    }

    let mut sets: Vec<Vec<usize>> = vec![(0..ell).collect(), (ell..2 * ell).collect()];
    let mut fixed: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (r, &(i, j, _)) in triples.iter().enumerate() {
        fixed.push((zv(r), b0.basis_vec(i)));
        fixed.push((uv(r), b0.basis_vec(j)));
        fixed.push((vv(r), b0.basis_vec(i)));
        fixed.push((wv(r), b0.basis_vec(j)));
    }
    fixed.sort_by_key(|(v, _)| *v);
    let mut n = n1;
    let mut z_var = probe;
    let mut xs: Vec<usize> = (0..ell).collect();

    let mut f = HPolynomial::from_map(n, hd, terms);
    let mut witness = AlternatingWitness { sets, fixed, z_var };
    assert!(
        witness_acts_as_identity(&f, b0, act, &witness),
        "the expanded polynomial must reproduce the probe element at the witness"
    );

    // Each further round inserts a fresh pair of alternating sets in front,
    // multiplies them into the tracked set, alternates, and rescales by the
    // trace-form Gram determinant.
    let gram = {
        let mut g = Matrix::zeros(ell, ell);
        for i in 0..ell {
            for j in 0..ell {
                let prod = b0.left_mult(&b0.basis_vec(i)).mul(&b0.left_mult(&b0.basis_vec(j)));
                g.set(i, j, prod.trace());
            }
        }
        g
    };
    let gram_det = determinant(&gram);
    assert!(!gram_det.is_zero(), "the regular trace form is nondegenerate on a semisimple algebra");
    let mut round_scale = rat_int(1);
    for kk in 2..=ell as i64 {
        round_scale *= rat_int(kk);
    }
    let round_scale = (round_scale * &gram_det).recip();

    for _round in 2..=k {
        let shift = 2 * ell;
        let n_new = n + shift;
        let xs_new: Vec<usize> = xs.iter().map(|v| v + shift).collect();
        let mut current: TermMap = f
            .terms
            .iter()
            .map(|((w, l), c)| {
                let nw: Vec<usize> = w.iter().map(|&v| v + shift).collect();
                ((nw, l.clone()), c.clone())
            })
            .collect();
        for j in 0..ell {
            let uj = j;
            let vj = ell + j;
            let mut next = TermMap::new();
            for ((word, labels), c) in &current {
                for &xi in &xs_new {
                    let p = word.iter().position(|&v| v == xi).expect("set variable present");
                    let hlab = &labels[p];
                    let product_word: Vec<Letter> = vec![
                        (uj, id_label.clone()),
                        (vj, id_label.clone()),
                        (xi, id_label.clone()),
                    ];
                    for (ew, ec) in expand_label(&h.algebra, &wit, hlab, &product_word) {
                        let mut nw = Vec::with_capacity(word.len() + 2);
                        let mut nl = Vec::with_capacity(word.len() + 2);
                        for (q, (&wv_, lv)) in word.iter().zip(labels.iter()).enumerate() {
                            if q == p {
                                for (lv2, ll2) in &ew {
                                    nw.push(*lv2);
                                    nl.push(ll2.clone());
                                }
                            } else {
                                nw.push(wv_);
                                nl.push(lv.clone());
                            }
                        }
                        add_into(&mut next, (nw, nl), c * &ec);
                    }
                }
            }
            current = next;
        }
        let uset: Vec<usize> = (0..ell).collect();
        let vset: Vec<usize> = (ell..2 * ell).collect();
        current = alternate_map(&current, n_new, &uset);
        current = alternate_map(&current, n_new, &vset);
        for c in current.values_mut() {
            *c *= &round_scale;
        }
        n = n_new;
        xs = xs_new;
        z_var += shift;
        sets = vec![uset, vset];
        sets.extend(
            witness.sets.iter().map(|set| set.iter().map(|v| v + shift).collect::<Vec<_>>()),
        );
        let fixed: Vec<(usize, Vec<Rational>)> =
            witness.fixed.iter().map(|(v, val)| (v + shift, val.clone())).collect();
        f = HPolynomial::from_map(n, hd, current);
        witness = AlternatingWitness { sets: sets.clone(), fixed, z_var };
        assert!(
            witness_acts_as_identity(&f, b0, act, &witness),
            "every glueing round must preserve the identity-map property"
        );
    }
    Ok((f, witness))
}

// ---------------------------------------------------------------------------
// The explicit four-variable alternating family for the smallest
// self-dual example
// ---------------------------------------------------------------------------

/// `k` blocks of the four-variable alternating polynomial whose positions
/// carry the four dual-basis labels in order, followed by plain variables
/// labelled with the unit of the dual algebra; the witness substitutes the
/// four basis elements per block and the unit elsewhere, and evaluates to
/// the unit.
pub fn sweedler_alternating(
    k: usize,
    n: usize,
) -> Result<(HPolynomial, Vec<Vec<Rational>>), IdentityError> {
    if k == 0 || n < 4 * k {
        return Err(IdentityError::Shape("need n ≥ 4k with at least one block".into()));
    }
    let hdim = 4;
    // Unit of the dual algebra: the counit evaluates to 1 on the first two
    // basis elements of the underlying algebra.
    let unit_label: Vec<Rational> =
        vec![Rational::one(), Rational::one(), Rational::zero(), Rational::zero()];
    let block_labels: Vec<Vec<Rational>> = (0..4).map(|t| basis_label(hdim, t)).collect();
    let mut f = HPolynomial::new(n, hdim);
    let perms4 = permutations(4);
    let mut choice = vec![0usize; k];
    loop {
        let mut coeff = Rational::one();
        let mut word = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for (j, &pi) in choice.iter().enumerate() {
            let sigma = &perms4[pi];
            coeff *= rat_int(permutation_sign(sigma) as i64);
            for p in 0..4 {
                word.push(4 * j + sigma[p]);
                labels.push(block_labels[p].clone());
            }
        }
        for v in 4 * k..n {
            word.push(v);
            labels.push(unit_label.clone());
        }
        f.add_term(coeff, word, labels)?;
        let mut p = k;
        let mut carry = true;
        while carry && p > 0 {
            p -= 1;
            choice[p] += 1;
            if choice[p] < perms4.len() {
                carry = false;
            } else {
                choice[p] = 0;
            }
        }
        if carry {
            break;
        }
    }
    let mut args = Vec::with_capacity(n);
    for _ in 0..k {
        for t in 0..4 {
            args.push(basis_label(4, t));
        }
    }
    for _ in 4 * k..n {
        args.push(basis_label(4, 0));
    }
    Ok((f, args))
}

// ---------------------------------------------------------------------------
// Exchange format
// ---------------------------------------------------------------------------

/// Plain-text form: a size line, a tab-separated label-name line, then one
/// line per term with coefficient, 1-based word, and per-position label
/// coordinates.
pub fn format_polynomial(f: &HPolynomial, hlabels: &[String]) -> String {
    assert_eq!(hlabels.len(), f.hdim, "one name per label coordinate");
    let mut out = String::new();
    out.push_str(&format!("n {}\n", f.n));
    out.push_str("h ");
    out.push_str(&hlabels.join("\t"));
    out.push('\n');
    for ((word, labels), coeff) in &f.terms {
        let w: Vec<String> = word.iter().map(|v| (v + 1).to_string()).collect();
        let l: Vec<String> = labels
            .iter()
            .map(|lab| lab.iter().map(format_rational).collect::<Vec<_>>().join(","))
            .collect();
        out.push_str(&format!(
            "term {} | {} | {}\n",
            format_rational(coeff),
            w.join(" "),
            l.join(" ; ")
        ));
    }
    out
}

pub fn parse_polynomial(src: &str) -> Result<(HPolynomial, Vec<String>), IdentityError> {
    let mut n: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut terms: Vec<(Rational, Vec<usize>, Vec<Vec<Rational>>)> = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| IdentityError::Parse(format!("line {}: {}", lineno + 1, msg));
        if let Some(rest) = line.strip_prefix("n ") {
            n = Some(rest.trim().parse::<usize>().map_err(|_| err("bad variable count"))?);
        } else if let Some(rest) = line.strip_prefix("h ") {
            names = Some(rest.split('\t').map(|s| s.trim().to_string()).collect());
        } else if let Some(rest) = line.strip_prefix("term ") {
            let parts: Vec<&str> = rest.split('|').collect();
            if parts.len() != 3 {
                return Err(err("expected coefficient | word | labels"));
            }
            let coeff = parse_rational(parts[0].trim()).map_err(|_| err("bad coefficient"))?;
            let word: Vec<usize> = parts[1]
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .and_then(|v| v.checked_sub(1))
                        .ok_or_else(|| err("bad word entry"))
                })
                .collect::<Result<_, _>>()?;
            let labels: Vec<Vec<Rational>> = parts[2]
                .split(';')
                .map(|lab| {
                    lab.trim()
                        .split(',')
                        .map(|t| parse_rational(t.trim()).map_err(|_| err("bad label entry")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            terms.push((coeff, word, labels));
        } else {
            return Err(err("unknown directive"));
        }
    }
    let n = n.ok_or_else(|| IdentityError::Parse("missing size line".into()))?;
    let names = names.ok_or_else(|| IdentityError::Parse("missing label line".into()))?;
    let mut f = HPolynomial::new(n, names.len());
    for (coeff, word, labels) in terms {
        f.add_term(coeff, word, labels)?;
    }
    Ok((f, names))
}

// ---------------------------------------------------------------------------
