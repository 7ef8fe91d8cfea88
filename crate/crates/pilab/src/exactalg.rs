//! Finite-dimensional associative algebras given by exact structure constants:
//! canonical subspaces, Jacobson radicals via the regular trace form,
//! equivariant Wedderburn–Malcev decompositions, and the radical-linked
//! component chains that give the polynomial-identity exponent.

use crate::linalg::{self, Matrix, RatSpan, Rref, SparseRow};
use crate::rat::Rational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("structure constant tensor has wrong shape: {0}")]
    ShapeMismatch(String),
    #[error("associativity fails on basis triple ({i}, {j}, {k}): (e{i}e{j})e{k} = {left:?} but e{i}(e{j}e{k}) = {right:?}")]
    Associativity { i: usize, j: usize, k: usize, left: Vec<String>, right: Vec<String> },
    #[error("unit law fails on basis element {index}")]
    UnitLaw { index: usize },
    #[error("trace-form kernel is not nilpotent")]
    NotNilpotentRadical,
    #[error("radical postcondition failed: {0}")]
    RadicalVerification(&'static str),
    #[error("subspace is not multiplicatively closed (basis pair {i}, {j})")]
    NotClosed { i: usize, j: usize },
    #[error("subspace is not a two-sided ideal")]
    NotIdeal,
    #[error("subspace is not invariant under action operator {op_index}")]
    NotInvariant { op_index: usize },
    #[error("basis change matrix is singular")]
    SingularBasisChange,
    #[error("subalgebra is not semisimple (radical has dimension {radical_dim})")]
    NotSemisimple { radical_dim: usize },
    #[error("center does not split over the rationals: {0}")]
    NotSplit(String),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("semisimple lifting failed: {0}")]
    LiftingFailed(String),
    #[error("no averaging available for this action kind: {0}")]
    AveragingUnavailable(String),
    #[error("component construction failed: {0}")]
    ComponentConstruction(String),
    #[error("resource guard tripped: {0}")]
    ResourceExceeded(String),
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(crate::rat::format_rational).collect()
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// Associative algebra on basis `e_0..e_{dim-1}` with structure constants
/// `mult[i][j]` = coordinates of `e_i e_j`, and an optional unit vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    mult: Vec<Vec<Vec<Rational>>>,
    unit: Option<Vec<Rational>>,
}

impl Algebra {
    /// Validates associativity on all basis triples and the unit laws before
    /// constructing; this is the only public constructor.
    pub fn new(
        dim: usize,
        mult: Vec<Vec<Vec<Rational>>>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        if mult.len() != dim
            || mult.iter().any(|r| r.len() != dim)
            || mult.iter().flatten().any(|v| v.len() != dim)
        {
            return Err(AlgebraError::ShapeMismatch(format!(
                "expected {dim}x{dim}x{dim} structure constants"
            )));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::ShapeMismatch("unit vector length".into()));
            }
        }
        let a = Algebra { dim, mult, unit };
        for i in 0..dim {
            for j in 0..dim {
                let eij = a.mult[i][j].clone();
                for k in 0..dim {
                    let left = a.product(&eij, a.basis_vec(k).as_slice());
                    let right = a.product(a.basis_vec(i).as_slice(), &a.mult[j][k]);
                    if left != right {
                        return Err(AlgebraError::Associativity {
                            i,
                            j,
                            k,
                            left: fmt_vec(&left),
                            right: fmt_vec(&right),
                        });
                    }
                }
            }
        }
        if let Some(u) = a.unit.clone() {
            for k in 0..dim {
                let e = a.basis_vec(k);
                if a.product(&u, &e) != e || a.product(&e, &u) != e {
                    return Err(AlgebraError::UnitLaw { index: k });
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Vec<Rational>> {
        self.unit.as_ref()
    }

    pub fn mult_table(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.mult
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Product of two coordinate vectors.
    pub fn product(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `v` on coordinate column vectors.
    pub fn left_mult(&self, v: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(v, &self.basis_vec(j));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn right_mult(&self, v: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(&self.basis_vec(j), v);
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Structure constants as sparse vectors `mult[i][j] -> [(k, c)]`.
    pub fn sparse_table(&self) -> Vec<Vec<SparseRow<Rational>>> {
        self.mult
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (k, c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Solves the two-sided unit equations; `None` when no unit exists.
    pub fn solve_unit(&self) -> Option<Vec<Rational>> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        // u e_j = e_j and e_j u = e_j, coordinates in k.
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n];
                for i in 0..n {
                    row[i] = self.mult[i][j][k].clone();
                }
                rows.push(row);
                rhs.push(if j == k { Rational::one() } else { Rational::zero() });
                let mut row = vec![Rational::zero(); n];
                for i in 0..n {
                    row[i] = self.mult[j][i][k].clone();
                }
                rows.push(row);
                rhs.push(if j == k { Rational::one() } else { Rational::zero() });
            }
        }
        linalg::solve(&Matrix::from_rows(rows), &rhs)
    }

    /// Re-expresses the algebra in the basis given by the columns of `t`.
    pub fn basis_change(&self, t: &Matrix) -> Result<Algebra, AlgebraError> {
        let tinv = linalg::inverse(t).ok_or(AlgebraError::SingularBasisChange)?;
        let n = self.dim;
        let col = |j: usize| -> Vec<Rational> { (0..n).map(|i| t.get(i, j).clone()).collect() };
        let mut mult = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.product(&col(i), &col(j));
                mult[i][j] = tinv.apply(&prod);
            }
        }
        let unit = self.unit.as_ref().map(|u| tinv.apply(u));
        Algebra::new(n, mult, unit)
    }

    // -- stock constructions used by tests and the gallery ------------------

    /// Full matrix algebra `M_k`, basis `e_{ab}` at index `a*k + b`.
    pub fn matrix_algebra(k: usize) -> Algebra {
        let dim = k * k;
        let mut mult = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        if b == c {
                            mult[a * k + b][c * k + d][a * k + d] = Rational::one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![Rational::zero(); dim];
        for a in 0..k {
            unit[a * k + a] = Rational::one();
        }
        Algebra::new(dim, mult, Some(unit)).expect("matrix algebra is associative")
    }

    /// Upper triangular matrices `UT_k`; basis `e_{ab}` for `a <= b` in
    /// lexicographic order of `(a, b)`.
    pub fn upper_triangular(k: usize) -> Algebra {
        let pairs: Vec<(usize, usize)> =
            (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
        let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
        let dim = pairs.len();
        let mut mult = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                if b == c {
                    mult[i][j][idx(a, d)] = Rational::one();
                }
            }
        }
        let mut unit = vec![Rational::zero(); dim];
        for a in 0..k {
            unit[idx(a, a)] = Rational::one();
        }
        Algebra::new(dim, mult, Some(unit)).expect("UT_k is associative")
    }

    /// Split commutative algebra `F^m` with componentwise product.
    pub fn split_fields(m: usize) -> Algebra {
        let mut mult = vec![vec![vec![Rational::zero(); m]; m]; m];
        for i in 0..m {
            mult[i][i][i] = Rational::one();
        }
        Algebra::new(m, mult, Some(vec![Rational::one(); m])).expect("F^m is associative")
    }

    /// Strictly upper triangular `k x k` matrices: nilpotent, no unit.
    pub fn strictly_upper(k: usize) -> Algebra {
        let pairs: Vec<(usize, usize)> =
            (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
        let dim = pairs.len();
        let mut mult = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                if b == c {
                    if let Some(t) = idx(a, d) {
                        mult[i][j][t] = Rational::one();
                    }
                }
            }
        }
        Algebra::new(dim, mult, None).expect("strictly upper triangular is associative")
    }

    pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
        let n = a.dim + b.dim;
        let mut mult = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    mult[i][j][k] = a.mult[i][j][k].clone();
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    mult[a.dim + i][a.dim + j][a.dim + k] = b.mult[i][j][k].clone();
                }
            }
        }
        let unit = match (&a.unit, &b.unit) {
            (Some(ua), Some(ub)) => {
                let mut u = ua.clone();
                u.extend(ub.iter().cloned());
                Some(u)
            }
            _ => None,
        };
        Algebra::new(n, mult, unit).expect("direct sum of associative algebras")
    }
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// Subspace of the coordinate space, stored as its canonical reduced row
/// echelon basis so equal subspaces compare equal componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rref: Rref,
}

impl Subspace {
    pub fn span(ambient: usize, rows: Vec<Vec<Rational>>) -> Subspace {
        assert!(rows.iter().all(|r| r.len() == ambient), "row length mismatch");
        Subspace { ambient, rref: linalg::rref(rows) }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace::span(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(ambient, Matrix::identity(ambient).rows_vec())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rref.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rref.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.rref.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.rref.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows().iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` in the canonical basis; `None` if outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.rref.coordinates(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.rows().to_vec();
        rows.extend(other.rows().iter().cloned());
        Subspace::span(self.ambient, rows)
    }

    /// Image under a linear map acting on coordinate column vectors.
    pub fn apply_map(&self, m: &Matrix) -> Subspace {
        let rows = self.rows().iter().map(|r| m.apply(r)).collect();
        Subspace::span(m.nrows(), rows)
    }

    /// Lifts vectors given in this subspace's basis coordinates back to the
    /// ambient space.
    pub fn lift(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rational::zero(); self.ambient];
        for (c, row) in coords.iter().zip(self.rows()) {
            if !c.is_zero() {
                for (x, r) in out.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x += c * r;
                    }
                }
            }
        }
        out
    }
}

/// Span of all pairwise products of basis vectors of `u` and `v`.
pub fn subspace_product(a: &Algebra, u: &Subspace, v: &Subspace) -> Subspace {
    assert_eq!(u.ambient_dim(), a.dim);
    assert_eq!(v.ambient_dim(), a.dim);
    let mut rows = Vec::with_capacity(u.dim() * v.dim());
    for x in u.rows() {
        for y in v.rows() {
            rows.push(a.product(x, y));
        }
    }
    Subspace::span(a.dim, rows)
}

/// Smallest subspace containing `seed` that is closed under left and right
/// multiplication by the span of `multipliers` and under every operator.
pub(crate) fn closure_with(
    a: &Algebra,
    multipliers: &[Vec<Rational>],
    operators: &[Matrix],
    seed: &Subspace,
) -> Subspace {
    let mut span = RatSpan::new(a.dim);
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for row in seed.rows() {
        if span.insert(row.clone()) {
            queue.push(row.clone());
        }
    }
    let mut basis_rows: Vec<Vec<Rational>> = seed.rows().to_vec();
    while let Some(v) = queue.pop() {
        let mut candidates: Vec<Vec<Rational>> = Vec::new();
        for m in multipliers {
            candidates.push(a.product(m, &v));
            candidates.push(a.product(&v, m));
        }
        for op in operators {
            candidates.push(op.apply(&v));
        }
        for c in candidates {
            if span.insert(c.clone()) {
                basis_rows.push(c.clone());
                queue.push(c);
            }
        }
    }
    Subspace::span(a.dim, basis_rows)
}

/// Closure under multiplication by the whole algebra and the given operators.
pub fn closure(a: &Algebra, operators: &[Matrix], seed: &Subspace) -> Subspace {
    let basis: Vec<Vec<Rational>> = (0..a.dim).map(|i| a.basis_vec(i)).collect();
    closure_with(a, &basis, operators, seed)
}

// ---------------------------------------------------------------------------
// Radical
// ---------------------------------------------------------------------------

/// Gram matrix of the regular trace form `(x, y) -> tr(L_x L_y)`.
fn trace_form_gram(a: &Algebra) -> Matrix {
    let lmats: Vec<Matrix> = (0..a.dim).map(|i| a.left_mult(&a.basis_vec(i))).collect();
    let mut g = Matrix::zeros(a.dim, a.dim);
    for i in 0..a.dim {
        for j in i..a.dim {
            let t = lmats[i].mul(&lmats[j]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    g
}

/// Jacobson radical as the kernel of the regular trace form (characteristic
/// zero), together with its nilpotency index `p` (`J^p = 0`, `p = 1` iff
/// `J = 0`). The result is re-verified: `J` is a nilpotent two-sided ideal
/// and the quotient has zero trace-form kernel.
pub fn radical(a: &Algebra) -> Result<(Subspace, usize), AlgebraError> {
    let g = trace_form_gram(a);
    let j = Subspace::span(a.dim, linalg::nullspace(&g));
    // Nilpotency index.
    let mut power = j.clone();
    let mut p = 1;
    while !power.is_zero() {
        if p > a.dim + 1 {
            return Err(AlgebraError::NotNilpotentRadical);
        }
        power = subspace_product(a, &power, &j);
        p += 1;
    }
    // Independent verification: two-sided ideal.
    for i in 0..a.dim {
        let e = a.basis_vec(i);
        for row in j.rows() {
            if !j.contains(&a.product(&e, row)) || !j.contains(&a.product(row, &e)) {
                return Err(AlgebraError::RadicalVerification("kernel is not an ideal"));
            }
        }
    }
    // Independent verification: quotient is semisimple for the same criterion.
    if !j.is_zero() {
        let (q, _) = quotient_algebra(a, &j)?;
        let gq = trace_form_gram(&q);
        if !linalg::nullspace(&gq).is_empty() {
            return Err(AlgebraError::RadicalVerification("quotient still has radical"));
        }
    }
    Ok((j, p))
}

// ---------------------------------------------------------------------------
// Quotients and restrictions
// ---------------------------------------------------------------------------

/// Linear data of a quotient `A -> A/J`: project along the canonical
/// complement spanned by the standard basis vectors at non-pivot columns.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    ambient: usize,
    ideal: Subspace,
    nonpivot: Vec<usize>,
}

impl QuotientMap {
    pub fn quotient_dim(&self) -> usize {
        self.nonpivot.len()
    }

    /// Coordinates of `v + J` in the quotient basis.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        // Reduce modulo J: afterwards w vanishes on the pivot columns.
        for (row, &p) in self.ideal.rows().iter().zip(self.ideal.pivots()) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.nonpivot.iter().map(|&c| w[c].clone()).collect()
    }

    /// Canonical linear section: quotient basis element `t` lifts to the
    /// standard basis vector at its non-pivot column.
    pub fn lift(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (&c, x) in self.nonpivot.iter().zip(coords) {
            out[c] = x.clone();
        }
        out
    }

    /// Matrix of the induced map on the quotient for an operator that
    /// preserves the ideal.
    pub fn induced(&self, op: &Matrix) -> Matrix {
        let q = self.quotient_dim();
        let mut m = Matrix::zeros(q, q);
        for (j, &c) in self.nonpivot.iter().enumerate() {
            let mut e = vec![Rational::zero(); self.ambient];
            e[c] = Rational::one();
            let col = self.project(&op.apply(&e));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
}

/// Quotient algebra by a two-sided ideal, with the projection data.
pub fn quotient_algebra(a: &Algebra, j: &Subspace) -> Result<(Algebra, QuotientMap), AlgebraError> {
    for i in 0..a.dim {
        let e = a.basis_vec(i);
        for row in j.rows() {
            if !j.contains(&a.product(&e, row)) || !j.contains(&a.product(row, &e)) {
                return Err(AlgebraError::NotIdeal);
            }
        }
    }
    let pivot_set: std::collections::BTreeSet<usize> = j.pivots().iter().copied().collect();
    let nonpivot: Vec<usize> = (0..a.dim).filter(|c| !pivot_set.contains(c)).collect();
    let map = QuotientMap { ambient: a.dim, ideal: j.clone(), nonpivot: nonpivot.clone() };
    let q = map.quotient_dim();
    let mut mult = vec![vec![vec![Rational::zero(); q]; q]; q];
    for (i, &ci) in nonpivot.iter().enumerate() {
        for (k, &ck) in nonpivot.iter().enumerate() {
            let prod = a.product(&a.basis_vec(ci), &a.basis_vec(ck));
            mult[i][k] = map.project(&prod);
        }
    }
    let unit = a.unit.as_ref().map(|u| map.project(u));
    let alg = Algebra::new(q, mult, unit)?;
    Ok((alg, map))
}

/// Structure constants of a multiplicatively closed subspace in its canonical
/// basis; computes the subalgebra's own unit when one exists.
pub fn restrict_algebra(a: &Algebra, s: &Subspace) -> Result<Algebra, AlgebraError> {
    let d = s.dim();
    let mut mult = vec![vec![vec![Rational::zero(); d]; d]; d];
    for (i, x) in s.rows().iter().enumerate() {
        for (j, y) in s.rows().iter().enumerate() {
            let prod = a.product(x, y);
            match s.coordinates(&prod) {
                Some(c) => mult[i][j] = c,
                None => return Err(AlgebraError::NotClosed { i, j }),
            }
        }
    }
    let alg = Algebra::new(d, mult, None)?;
    let unit = alg.solve_unit();
    match unit {
        Some(u) => Algebra::new(d, alg.mult, Some(u)),
        None => Ok(alg),
    }
}

/// Matrix of an operator restricted to an invariant subspace, in the
/// subspace's canonical basis.
pub fn restrict_operator(op: &Matrix, s: &Subspace, op_index: usize) -> Result<Matrix, AlgebraError> {
    let d = s.dim();
    let mut m = Matrix::zeros(d, d);
    for (j, row) in s.rows().iter().enumerate() {
        let img = op.apply(row);
        let coords = s
            .coordinates(&img)
            .ok_or(AlgebraError::NotInvariant { op_index })?;
        for (i, x) in coords.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Decompositions and the polynomial-identity exponent
// ---------------------------------------------------------------------------

/// Wedderburn–Malcev data: `A = B_1 + ... + B_q + J` with action-simple
/// components `B_i` and the radical `J` of nilpotency index `p`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub algebra: Algebra,
    pub radical: Subspace,
    pub nilpotency: usize,
    pub components: Vec<Subspace>,
}

/// Largest total dimension of distinct components linked through the radical:
/// max over ordered sequences of pairwise distinct indices `i_1, ..., i_r`
/// with `B_{i_1} J B_{i_2} J ... J B_{i_r} != 0` of `dim(B_{i_1} + ... +
/// B_{i_r})`; the empty sequence contributes 0.
pub fn pi_exponent(d: &Decomposition) -> usize {
    let q = d.components.len();
    let mut best = 0usize;
    // DFS over chains; prefixes of nonzero chains are nonzero, so pruning on
    // a zero product is exact.
    fn extend(
        d: &Decomposition,
        chain: &Subspace,
        used: u64,
        dim_sum: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(dim_sum);
        let linked = subspace_product(&d.algebra, chain, &d.radical);
        if linked.is_zero() {
            return;
        }
        for (i, b) in d.components.iter().enumerate() {
            if used & (1 << i) != 0 {
                continue;
            }
            let next = subspace_product(&d.algebra, &linked, b);
            if !next.is_zero() {
                extend(d, &next, used | (1 << i), dim_sum + b.dim(), best);
            }
        }
    }
    assert!(q <= 64, "component count exceeds chain search bound");
    for (i, b) in d.components.iter().enumerate() {
        if !b.is_zero() {
            extend(d, b, 1 << i, b.dim(), &mut best);
        }
    }
    best
}

/// Reference variant allowing repeated indices up to `max_len` factors, with
/// the dimension counted over the distinct components used. Exists to check
/// that repetitions never beat the distinct-index maximum.
pub fn pi_exponent_with_repeats(d: &Decomposition, max_len: usize) -> usize {
    let mut best = 0usize;
    fn extend(
        d: &Decomposition,
        chain: &Subspace,
        used: u64,
        len: usize,
        max_len: usize,
        best: &mut usize,
    ) {
        let dim_sum: usize = d
            .components
            .iter()
            .enumerate()
            .filter(|(i, _)| used & (1 << i) != 0)
            .map(|(_, b)| b.dim())
            .sum();
        *best = (*best).max(dim_sum);
        if len == max_len {
            return;
        }
        let linked = subspace_product(&d.algebra, chain, &d.radical);
        if linked.is_zero() {
            return;
        }
        for (i, b) in d.components.iter().enumerate() {
            let next = subspace_product(&d.algebra, &linked, b);
            if !next.is_zero() {
                extend(d, &next, used | (1 << i), len + 1, max_len, best);
            }
        }
    }
    for (i, b) in d.components.iter().enumerate() {
        if !b.is_zero() {
            extend(d, b, 1 << i, 1, max_len, &mut best);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Action-simple components
// ---------------------------------------------------------------------------

/// Burnside-style simplicity certificate: the operator algebra generated by
/// left multiplications, right multiplications, and the action operators is
/// computed as a subspace of endomorphisms; `b0` is split-action-simple iff
/// that algebra is all of `End(b0)`. Returns `(verdict, enveloping_dim)`.
pub fn is_h_simple(b0: &Algebra, operators: &[Matrix]) -> (bool, usize) {
    let n = b0.dim();
    let mut gens: Vec<Matrix> = Vec::with_capacity(2 * n + operators.len());
    for i in 0..n {
        gens.push(b0.left_mult(&b0.basis_vec(i)));
        gens.push(b0.right_mult(&b0.basis_vec(i)));
    }
    gens.extend(operators.iter().cloned());
    let mut span = RatSpan::new(n * n);
    let mut queue: Vec<Matrix> = Vec::new();
    for g in &gens {
        if span.insert(g.vectorize()) {
            queue.push(g.clone());
        }
    }
    while let Some(m) = queue.pop() {
        for g in &gens {
            for p in [g.mul(&m), m.mul(g)] {
                if span.insert(p.vectorize()) {
                    queue.push(p);
                }
            }
        }
    }
    (span.rank() == n * n, span.rank())
}

/// Center of the algebra: all `z` with `zy = yz` for every basis `y`.
fn center(alg: &Algebra) -> Subspace {
    let d = alg.dim();
    let mut stacked = Vec::with_capacity(d * d);
    for y in 0..d {
        let diff = alg.left_mult(&alg.basis_vec(y)).sub(&alg.right_mult(&alg.basis_vec(y)));
        stacked.extend(diff.rows_vec());
    }
    Subspace::span(d, linalg::nullspace(&Matrix::from_rows(stacked)))
}

/// Two-sided simple ideals of a split semisimple algebra, via the primitive
/// idempotents of its center: a generic central element is located
/// deterministically, its minimal polynomial split over the rationals, and
/// the idempotents interpolated from the roots.
fn simple_ideals(alg: &Algebra) -> Result<Vec<Subspace>, AlgebraError> {
    let d = alg.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let unit = alg.unit().cloned().ok_or(AlgebraError::NoUnit)?;
    let z_space = center(alg);
    let m = z_space.dim();
    // Coordinates of a generic candidate z(c) = Σ_k c^k z_k are polynomials
    // in c of degree < m; two of the m eigenvalue functions coincide on at
    // most m−1 points each, so some c below the bound separates them all.
    let bound = m * (m - 1) / 2 * m.saturating_sub(1) + 1;
    for c in 0..=(bound as i64) {
        let mut z = vec![Rational::zero(); d];
        let mut power = Rational::one();
        for row in z_space.rows() {
            for (x, r) in z.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x += &power * r;
                }
            }
            power *= crate::rat::rat_int(c);
        }
        let lz_on_center = restrict_operator(&alg.left_mult(&z), &z_space, 0)?;
        let poly = linalg::minimal_polynomial(&lz_on_center);
        if poly.len() - 1 < m {
            continue;
        }
        let split = linalg::rational_roots(&poly)
            .map_err(|e| AlgebraError::ResourceExceeded(e.to_string()))?;
        if !split.fully_split {
            return Err(AlgebraError::NotSplit(
                "the minimal polynomial of a generic central element has irrational roots".into(),
            ));
        }
        let roots = split.roots;
        if roots.len() != m || (1..m).any(|i| roots[i] == roots[i - 1]) {
            return Err(AlgebraError::ComponentConstruction(
                "central minimal polynomial is not squarefree of full degree".into(),
            ));
        }
        // Lagrange interpolation: e_i = Π_{j≠i} (z − λ_j)/(λ_i − λ_j).
        let mut idempotents = Vec::with_capacity(m);
        for (i, li) in roots.iter().enumerate() {
            let mut e = unit.clone();
            for (j, lj) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let factor: Vec<Rational> =
                    z.iter().zip(&unit).map(|(a, u)| a - lj * u).collect();
                let scale = (li - lj).recip();
                e = alg.product(&e, &factor).into_iter().map(|x| x * &scale).collect();
            }
            idempotents.push(e);
        }
        let mut total = vec![Rational::zero(); d];
        for (i, e) in idempotents.iter().enumerate() {
            if alg.product(e, e) != *e {
                return Err(AlgebraError::ComponentConstruction(
                    "interpolated central element is not idempotent".into(),
                ));
            }
            for (j, f) in idempotents.iter().enumerate() {
                if i != j && alg.product(e, f).iter().any(|x| !x.is_zero()) {
                    return Err(AlgebraError::ComponentConstruction(
                        "central idempotents are not orthogonal".into(),
                    ));
                }
            }
            for (t, x) in total.iter_mut().zip(e) {
                *t += x;
            }
        }
        if total != unit {
            return Err(AlgebraError::ComponentConstruction(
                "central idempotents do not sum to the unit".into(),
            ));
        }
        let mut ideals: Vec<Subspace> = idempotents
            .iter()
            .map(|e| {
                let rows = (0..d).map(|k| alg.product(e, &alg.basis_vec(k))).collect();
                Subspace::span(d, rows)
            })
            .collect();
        if ideals.iter().map(|s| s.dim()).sum::<usize>() != d {
            return Err(AlgebraError::ComponentConstruction(
                "simple ideals do not fill the algebra".into(),
            ));
        }
        ideals.sort_by(|a, b| a.pivots().cmp(b.pivots()).then_with(|| a.rows().cmp(b.rows())));
        return Ok(ideals);
    }
    Err(AlgebraError::NotSplit("no generic central element found within the search bound".into()))
}

/// Minimal act-invariant two-sided ideals of a semisimple invariant
/// subalgebra `b`: the closures of its simple ideals under multiplication by
/// `b` and the action operators, returned as a direct-sum list in canonical
/// order.
pub fn h_simple_components(
    a: &Algebra,
    b: &Subspace,
    operators: &[Matrix],
) -> Result<Vec<Subspace>, AlgebraError> {
    for (op_index, op) in operators.iter().enumerate() {
        for row in b.rows() {
            if !b.contains(&op.apply(row)) {
                return Err(AlgebraError::NotInvariant { op_index });
            }
        }
    }
    let alg_b = restrict_algebra(a, b)?;
    let (jb, _) = radical(&alg_b)?;
    if !jb.is_zero() {
        return Err(AlgebraError::NotSemisimple { radical_dim: jb.dim() });
    }
    let simples = simple_ideals(&alg_b)?;
    let ambient_simples: Vec<Subspace> = simples
        .iter()
        .map(|s| Subspace::span(a.dim, s.rows().iter().map(|r| b.lift(r)).collect()))
        .collect();
    let mut components: Vec<Subspace> = Vec::new();
    for s in &ambient_simples {
        if components.iter().any(|c| c.contains_subspace(s)) {
            continue;
        }
        components.push(closure_with(a, b.rows(), operators, s));
    }
    let total: usize = components.iter().map(|c| c.dim()).sum();
    if total != b.dim() {
        return Err(AlgebraError::ComponentConstruction(
            "invariant closures of the simple ideals overlap".into(),
        ));
    }
    for (i, x) in components.iter().enumerate() {
        for (j, y) in components.iter().enumerate() {
            if i != j && !subspace_product(a, x, y).is_zero() {
                return Err(AlgebraError::ComponentConstruction(
                    "components do not annihilate each other".into(),
                ));
            }
        }
    }
    components.sort_by(|a, b| a.pivots().cmp(b.pivots()).then_with(|| a.rows().cmp(b.rows())));
    Ok(components)
}

// ---------------------------------------------------------------------------
// Equivariant Wedderburn–Malcev decomposition
// ---------------------------------------------------------------------------

/// Verifies every hypothesis a decomposition must satisfy, one report item
/// per condition, in a fixed order.
pub fn verify_decomposition(
    a: &Algebra,
    operators: &[Matrix],
    d: &Decomposition,
) -> crate::report::CheckReport {
    let mut report = crate::report::CheckReport::new("decomposition");
    match radical(a) {
        Ok((j, p)) => {
            let ok = j == d.radical && p == d.nilpotency;
            report.push(
                "radical",
                ok,
                if ok {
                    String::new()
                } else {
                    format!(
                        "computed radical has dim {} and index {}, candidate has dim {} and index {}",
                        j.dim(),
                        p,
                        d.radical.dim(),
                        d.nilpotency
                    )
                },
            );
        }
        Err(e) => report.push("radical", false, e.to_string()),
    }
    let bad_op = operators.iter().enumerate().find_map(|(k, op)| {
        d.radical.rows().iter().any(|r| !d.radical.contains(&op.apply(r))).then_some(k)
    });
    report.push(
        "radical-invariant",
        bad_op.is_none(),
        bad_op.map(|k| format!("operator {k} moves the radical out of itself")).unwrap_or_default(),
    );
    for (i, b) in d.components.iter().enumerate() {
        let bad = operators.iter().enumerate().find_map(|(k, op)| {
            b.rows().iter().any(|r| !b.contains(&op.apply(r))).then_some(k)
        });
        report.push(
            format!("component-{i}-invariant"),
            bad.is_none(),
            bad.map(|k| format!("operator {k} moves the component")).unwrap_or_default(),
        );
        match restrict_algebra(a, b) {
            Ok(alg_b) => match radical(&alg_b) {
                Ok((jb, _)) => report.push(
                    format!("component-{i}-semisimple"),
                    jb.is_zero(),
                    if jb.is_zero() {
                        String::new()
                    } else {
                        format!("has a radical of dimension {}", jb.dim())
                    },
                ),
                Err(e) => report.push(format!("component-{i}-semisimple"), false, e.to_string()),
            },
            Err(e) => report.push(format!("component-{i}-semisimple"), false, e.to_string()),
        }
    }
    let mut annihilate = true;
    let mut detail = String::new();
    for (i, x) in d.components.iter().enumerate() {
        for (j, y) in d.components.iter().enumerate() {
            if i != j && annihilate && !subspace_product(a, x, y).is_zero() {
                annihilate = false;
                detail = format!("component {i} times component {j} is nonzero");
            }
        }
    }
    report.push("components-pairwise-annihilate", annihilate, detail);
    for (i, b) in d.components.iter().enumerate() {
        let verdict = restrict_algebra(a, b).ok().and_then(|alg_b| {
            let ops: Option<Vec<Matrix>> =
                operators.iter().map(|op| restrict_operator(op, b, 0).ok()).collect();
            ops.map(|ops| is_h_simple(&alg_b, &ops))
        });
        match verdict {
            Some((true, dim)) => report.push(
                format!("component-{i}-h-simple"),
                true,
                format!("enveloping algebra has dimension {dim}"),
            ),
            Some((false, dim)) => report.push(
                format!("component-{i}-h-simple"),
                false,
                format!("not split-action-simple: enveloping dimension {dim} < {}", b.dim() * b.dim()),
            ),
            None => report.push(
                format!("component-{i}-h-simple"),
                false,
                "component is not a closed invariant subalgebra",
            ),
        }
    }
    let b_sum = d
        .components
        .iter()
        .fold(Subspace::zero(a.dim), |acc, c| acc.sum(c));
    let dims_add: usize = d.components.iter().map(|c| c.dim()).sum();
    let direct = b_sum.dim() == dims_add
        && b_sum.sum(&d.radical).dim() == a.dim
        && b_sum.dim() + d.radical.dim() == a.dim;
    report.push(
        "direct-sum",
        direct,
        if direct {
            String::new()
        } else {
            format!(
                "components sum to dim {} (expected {}) against a radical of dim {} in dim {}",
                b_sum.dim(),
                dims_add,
                d.radical.dim(),
                a.dim
            )
        },
    );
    report
}

/// Builds the matrix whose column `t` holds the coordinates of the image of
/// the `t`-th quotient basis vector.
fn section_matrix(qmap: &QuotientMap, images: Vec<Vec<Rational>>) -> Matrix {
    let n = images.first().map(|v| v.len()).unwrap_or(0);
    let mut m = Matrix::zeros(n, qmap.quotient_dim());
    for (t, img) in images.into_iter().enumerate() {
        for (i, x) in img.into_iter().enumerate() {
            m.set(i, t, x);
        }
    }
    m
}

/// Equivariant Wedderburn–Malcev decomposition: lifts the semisimple
/// quotient to an invariant complement of the radical by averaging a linear
/// section over the action (group translation, or Hopf integral when the
/// action algebra is semisimple) and then iteratively cancelling the
/// multiplicative defect with trace-form dual bases; the defect order
/// doubles each round. The result is re-verified before being returned.
pub fn wedderburn_malcev(
    a: &Algebra,
    act: &crate::actions::ActionData,
) -> Result<Decomposition, AlgebraError> {
    use crate::actions::ActionData;
    if a.unit().is_none() {
        return Err(AlgebraError::NoUnit);
    }
    if matches!(act, ActionData::Generalized { .. }) {
        return Err(AlgebraError::AveragingUnavailable(
            "a generalized action carries no averaging recipe; supply the decomposition".into(),
        ));
    }
    let operators: Vec<Matrix> = act.operators().to_vec();
    let (j, p) = radical(a)?;
    for op in &operators {
        for row in j.rows() {
            if !j.contains(&op.apply(row)) {
                return Err(AlgebraError::AveragingUnavailable(
                    "the radical is not invariant under the action".into(),
                ));
            }
        }
    }
    if j.is_zero() {
        let components = h_simple_components(a, &Subspace::full(a.dim), &operators)?;
        return Ok(Decomposition {
            algebra: a.clone(),
            radical: j,
            nilpotency: p,
            components,
        });
    }
    let (s_alg, qmap) = quotient_algebra(a, &j)?;
    let q = qmap.quotient_dim();
    let unit_bar = s_alg.unit().cloned().expect("quotient of a unital algebra is unital");
    let one = a.unit().cloned().expect("unit checked above");

    // Canonical linear section, adjusted to send the quotient unit to 1.
    let mut sigma = section_matrix(&qmap, (0..q).map(|t| {
        let mut coords = vec![Rational::zero(); q];
        coords[t] = Rational::one();
        qmap.lift(&coords)
    }).collect());
    let k = unit_bar.iter().position(|x| !x.is_zero()).expect("unit is nonzero");
    let scale = unit_bar[k].clone().recip();
    let delta: Vec<Rational> = one
        .iter()
        .zip(sigma.apply(&unit_bar))
        .map(|(u, s)| (u - s) * &scale)
        .collect();
    for i in 0..a.dim {
        let cur = sigma.get(i, k).clone();
        sigma.set(i, k, cur + &delta[i]);
    }

    // Equivariant averaging.
    match act {
        ActionData::Trivial => {}
        ActionData::Generalized { .. } => unreachable!("refused before the radical computation"),
        ActionData::Group(ga) => {
            for op in ga.action.operators() {
                if op.apply(&one) != one {
                    return Err(AlgebraError::AveragingUnavailable(
                        "a group operator does not fix the unit".into(),
                    ));
                }
            }
            let g = &ga.group;
            let mut sum = Matrix::zeros(a.dim, q);
            for x in 0..g.order() {
                let qop = qmap.induced(&ga.action.operators()[g.inv(x)]);
                sum = sum.add(&ga.action.operators()[x].mul(&sigma).mul(&qop));
            }
            sigma = sum.scale(&crate::rat::rat(1, g.order() as i64));
        }
        ActionData::Hopf { hopf, action } => {
            let integral = crate::actions::left_integral(hopf)
                .map_err(|e| AlgebraError::AveragingUnavailable(e.to_string()))?;
            if !integral.semisimple_hint {
                return Err(AlgebraError::AveragingUnavailable(
                    "the acting Hopf algebra is not semisimple".into(),
                ));
            }
            if !hopf.antipode.mul(&hopf.antipode).is_identity() {
                return Err(AlgebraError::AveragingUnavailable(
                    "the antipode is not involutive".into(),
                ));
            }
            if !crate::actions::check_module_algebra(hopf, a, action) {
                return Err(AlgebraError::AveragingUnavailable(
                    "the action is not a module-algebra action".into(),
                ));
            }
            for (i, op) in action.operators().iter().enumerate() {
                let expected: Vec<Rational> =
                    one.iter().map(|u| u * &hopf.counit[i]).collect();
                if op.apply(&one) != expected {
                    return Err(AlgebraError::AveragingUnavailable(
                        "the action does not fix the unit".into(),
                    ));
                }
            }
            let dt = hopf.comul_of(&integral.element);
            let d = hopf.dim();
            let halg = &hopf.action_algebra.algebra;
            let mut sum = Matrix::zeros(a.dim, q);
            for i in 0..d {
                for jj in 0..d {
                    let c = dt.get(i, jj);
                    if c.is_zero() {
                        continue;
                    }
                    let sop = action.operator_of(&hopf.antipode_of(&halg.basis_vec(jj)));
                    let qop = qmap.induced(&sop);
                    sum = sum.add(&action.operators()[i].mul(&sigma).mul(&qop).scale(c));
                }
            }
            sigma = sum;
        }
    }

    // Dual bases of the trace form on the semisimple quotient.
    let gram = trace_form_gram(&s_alg);
    let ginv = linalg::inverse(&gram).ok_or_else(|| {
        AlgebraError::LiftingFailed("trace form on the quotient is degenerate".into())
    })?;

    // Iterative defect cancellation.
    let max_rounds = (usize::BITS - (p.max(2) - 1).leading_zeros()) as usize + 1;
    let mut rounds = 0;
    loop {
        let col = |mm: &Matrix, t: usize| -> Vec<Rational> {
            (0..a.dim).map(|i| mm.get(i, t).clone()).collect()
        };
        let mut defect = vec![vec![Vec::new(); q]; q];
        let mut all_zero = true;
        for x in 0..q {
            for y in 0..q {
                let prod = a.product(&col(&sigma, x), &col(&sigma, y));
                let lifted = sigma.apply(&s_alg.mult_table()[x][y]);
                let f: Vec<Rational> =
                    prod.iter().zip(&lifted).map(|(p, l)| p - l).collect();
                if f.iter().any(|v| !v.is_zero()) {
                    all_zero = false;
                }
                defect[x][y] = f;
            }
        }
        if all_zero {
            break;
        }
        rounds += 1;
        if rounds > max_rounds {
            return Err(AlgebraError::LiftingFailed(
                "defect cancellation exceeded the nilpotency bound".into(),
            ));
        }
        // g(y)  = Σ_i σ(u_i) f(v_i, y)  with u_i the basis, v_i its trace
        // dual; g'(y) = Σ_i f(y, u_i) σ(v_i); the symmetrized mean stays
        // equivariant for anti-automorphisms as well.
        let mut correction = Matrix::zeros(a.dim, q);
        for y in 0..q {
            let mut gcol = vec![Rational::zero(); a.dim];
            let mut gpcol = vec![Rational::zero(); a.dim];
            for i in 0..q {
                // f(v_i, y) = Σ_k ginv[k][i] f(e_k, y).
                let mut fvy = vec![Rational::zero(); a.dim];
                for k in 0..q {
                    let cc = ginv.get(k, i);
                    if !cc.is_zero() {
                        for (t, x) in defect[k][y].iter().enumerate() {
                            if !x.is_zero() {
                                fvy[t] += cc * x;
                            }
                        }
                    }
                }
                for (t, x) in a.product(&col(&sigma, i), &fvy).into_iter().enumerate() {
                    gcol[t] += x;
                }
                // σ(v_i) = Σ_k ginv[k][i] σ(e_k).
                let mut sv = vec![Rational::zero(); a.dim];
                for k in 0..q {
                    let cc = ginv.get(k, i);
                    if !cc.is_zero() {
                        for (t, x) in col(&sigma, k).iter().enumerate() {
                            if !x.is_zero() {
                                sv[t] += cc * x;
                            }
                        }
                    }
                }
                for (t, x) in a.product(&defect[y][i], &sv).into_iter().enumerate() {
                    gpcol[t] += x;
                }
            }
            let half = crate::rat::rat(1, 2);
            for t in 0..a.dim {
                correction.set(t, y, (&gcol[t] + &gpcol[t]) * &half);
            }
        }
        sigma = sigma.sub(&correction);
    }

    // The image of the section is the invariant semisimple complement.
    let b = Subspace::span(
        a.dim,
        (0..q).map(|t| (0..a.dim).map(|i| sigma.get(i, t).clone()).collect()).collect(),
    );
    if sigma.apply(&unit_bar) != one {
        return Err(AlgebraError::LiftingFailed("lifted section lost the unit".into()));
    }
    let components = h_simple_components(a, &b, &operators)?;
    let decomposition = Decomposition {
        algebra: a.clone(),
        radical: j,
        nilpotency: p,
        components,
    };
    let report = verify_decomposition(a, &operators, &decomposition);
    if !report.passed() {
        let failure = report.first_failure().expect("unpassed report has a failure");
        return Err(AlgebraError::LiftingFailed(format!(
            "internal verification failed at {}: {}",
            failure.name, failure.detail
        )));
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_int, Rational};
    use num_traits::{One, Zero};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rejects_nonassociative_constants() {
        // e1*e1 = e2, e2*e2 = e1, everything else zero: not associative.
        let mut mult = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        mult[0][0][1] = Rational::one();
        mult[1][1][0] = Rational::one();
        let err = Algebra::new(2, mult, None).unwrap_err();
        assert!(matches!(err, AlgebraError::Associativity { .. }), "{err}");
    }

    #[test]
    fn rejects_bad_unit() {
        let mut mult = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        mult[0][0][0] = Rational::one(); // e0 idempotent, e1 kills everything
        let err = Algebra::new(2, mult, Some(v(&[1, 1]))).unwrap_err();
        assert!(matches!(err, AlgebraError::UnitLaw { .. }), "{err}");
    }

    #[test]
    fn matrix_algebra_products() {
        let m2 = Algebra::matrix_algebra(2);
        // e01 * e10 = e00, e10 * e01 = e11, e01 * e01 = 0.
        assert_eq!(m2.product(&m2.basis_vec(1), &m2.basis_vec(2)), v(&[1, 0, 0, 0]));
        assert_eq!(m2.product(&m2.basis_vec(2), &m2.basis_vec(1)), v(&[0, 0, 0, 1]));
        assert!(m2.product(&m2.basis_vec(1), &m2.basis_vec(1)).iter().all(Rational::is_zero));
        assert_eq!(m2.solve_unit(), Some(v(&[1, 0, 0, 1])));
    }

    #[test]
    fn radical_of_semisimple_is_zero() {
        let (j, p) = radical(&Algebra::matrix_algebra(2)).unwrap();
        assert!(j.is_zero());
        assert_eq!(p, 1);
        let (j, p) = radical(&Algebra::split_fields(3)).unwrap();
        assert!(j.is_zero());
        assert_eq!(p, 1);
    }

    #[test]
    fn radical_of_upper_triangular() {
        // UT_2 basis order: e00, e01, e11; radical = span{e01}, J^2 = 0.
        let ut2 = Algebra::upper_triangular(2);
        let (j, p) = radical(&ut2).unwrap();
        assert_eq!(j, Subspace::span(3, vec![v(&[0, 1, 0])]));
        assert_eq!(p, 2);
    }

    #[test]
    fn radical_of_nilpotent_is_everything() {
        let n3 = Algebra::strictly_upper(3);
        let (j, p) = radical(&n3).unwrap();
        assert_eq!(j.dim(), 3);
        assert_eq!(p, 3);
    }

    #[test]
    fn subspace_product_in_m2() {
        let m2 = Algebra::matrix_algebra(2);
        let left = Subspace::span(4, vec![v(&[1, 0, 0, 0])]); // e00
        let prod = subspace_product(&m2, &left, &Subspace::full(4));
        assert_eq!(prod, Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]));
    }

    #[test]
    fn closure_generates_ideals() {
        let ut2 = Algebra::upper_triangular(2);
        let seed = Subspace::span(3, vec![v(&[1, 0, 0])]); // e00
        let c = closure(&ut2, &[], &seed);
        assert_eq!(c, Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]));
        let seed = Subspace::span(3, vec![v(&[0, 1, 0])]);
        assert_eq!(closure(&ut2, &[], &seed).dim(), 1);
    }

    #[test]
    fn closure_is_idempotent_and_extensive() {
        let a = Algebra::direct_sum(&Algebra::matrix_algebra(2), &Algebra::split_fields(1));
        let seed = Subspace::span(5, vec![v(&[1, 2, 0, 0, 3])]);
        let c = closure(&a, &[], &seed);
        assert!(c.contains_subspace(&seed));
        assert_eq!(closure(&a, &[], &c), c);
    }

    #[test]
    fn quotient_of_ut2_is_split() {
        let ut2 = Algebra::upper_triangular(2);
        let (j, _) = radical(&ut2).unwrap();
        let (q, map) = quotient_algebra(&ut2, &j).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.unit(), Some(&v(&[1, 1])));
        // e00 * e11 = 0 in the quotient.
        let prod = q.product(&map.project(&v(&[1, 0, 0])), &map.project(&v(&[0, 0, 1])));
        assert!(prod.iter().all(Rational::is_zero));
        // Non-ideal input is rejected.
        assert!(matches!(
            quotient_algebra(&ut2, &Subspace::span(3, vec![v(&[1, 0, 0])])),
            Err(AlgebraError::NotIdeal)
        ));
    }

    #[test]
    fn restriction_of_diagonal_in_m2() {
        let m2 = Algebra::matrix_algebra(2);
        let diag = Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 0, 0, 1])]);
        let alg = restrict_algebra(&m2, &diag).unwrap();
        assert_eq!(alg.unit(), Some(&v(&[1, 1])));
        // Off-diagonal span is not closed under multiplication.
        let off = Subspace::span(4, vec![v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        assert!(matches!(restrict_algebra(&m2, &off), Err(AlgebraError::NotClosed { .. })));
    }

    #[test]
    fn pi_exponent_of_ut2_by_hand() {
        let ut2 = Algebra::upper_triangular(2);
        let (j, p) = radical(&ut2).unwrap();
        let d = Decomposition {
            algebra: ut2,
            radical: j,
            nilpotency: p,
            components: vec![
                Subspace::span(3, vec![v(&[1, 0, 0])]),
                Subspace::span(3, vec![v(&[0, 0, 1])]),
            ],
        };
        // e00 * e01 * e11 = e01 != 0 links both one-dimensional components.
        assert_eq!(pi_exponent(&d), 2);
        assert_eq!(pi_exponent_with_repeats(&d, 4), 2);
    }

    #[test]
    fn pi_exponent_of_nilpotent_is_zero() {
        let n2 = Algebra::strictly_upper(2);
        let (j, p) = radical(&n2).unwrap();
        let d = Decomposition { algebra: n2, radical: j, nilpotency: p, components: vec![] };
        assert_eq!(pi_exponent(&d), 0);
    }

    #[test]
    fn basis_change_preserves_radical_dimension() {
        let ut2 = Algebra::upper_triangular(2);
        let t = Matrix::from_rows(vec![v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[0, 0, 1])]);
        let changed = ut2.basis_change(&t).unwrap();
        let (j, p) = radical(&changed).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(p, 2);
        let singular = Matrix::from_rows(vec![v(&[1, 1, 0]), v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert!(matches!(ut2.basis_change(&singular), Err(AlgebraError::SingularBasisChange)));
    }

    fn swap_blocks(half: usize) -> Matrix {
        let mut swap = Matrix::zeros(2 * half, 2 * half);
        for i in 0..half {
            swap.set(i, half + i, Rational::one());
            swap.set(half + i, i, Rational::one());
        }
        swap
    }

    #[test]
    fn enveloping_rank_certifies_simplicity() {
        // F x F alone is not simple; the coordinate swap glues it into a
        // single minimal invariant ideal with full enveloping rank.
        let f2 = Algebra::split_fields(2);
        assert_eq!(is_h_simple(&f2, &[]), (false, 2));
        assert_eq!(is_h_simple(&f2, &[swap_blocks(1)]), (true, 4));
        // A matrix block is simple already.
        assert_eq!(is_h_simple(&Algebra::matrix_algebra(2), &[]), (true, 16));
        // The four-dimensional non-semisimple Hopf algebra becomes simple
        // under the action of its dual.
        let s = crate::actions::sweedler_scenario();
        assert_eq!(is_h_simple(&s.hopf.action_algebra.algebra, s.action.operators()), (true, 16));
    }

    #[test]
    fn components_follow_the_operator_orbits() {
        // M_2 + M_2: two components without operators, one under the swap.
        let m2 = Algebra::matrix_algebra(2);
        let a = Algebra::direct_sum(&m2, &m2);
        let full = Subspace::full(8);
        let comps = h_simple_components(&a, &full, &[]).unwrap();
        assert_eq!(comps.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![4, 4]);
        let comps = h_simple_components(&a, &full, &[swap_blocks(4)]).unwrap();
        assert_eq!(comps.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![8]);
        // F^3 with the coordinate rotation: one three-dimensional orbit.
        let f3 = Algebra::split_fields(3);
        let mut rot = Matrix::zeros(3, 3);
        rot.set(1, 0, Rational::one());
        rot.set(2, 1, Rational::one());
        rot.set(0, 2, Rational::one());
        let comps = h_simple_components(&f3, &Subspace::full(3), &[rot]).unwrap();
        assert_eq!(comps.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3]);
        // Inputs with a radical are rejected.
        let ut2 = Algebra::upper_triangular(2);
        assert!(matches!(
            h_simple_components(&ut2, &Subspace::full(3), &[]),
            Err(AlgebraError::NotSemisimple { radical_dim: 1 })
        ));
    }

    #[test]
    fn number_field_center_is_reported_as_not_split() {
        // Q[w]/(w^2 - 2) is semisimple but its idempotents live in a
        // quadratic extension; the minimal polynomial x^2 - 2x - 1 of the
        // generic central element 1 + w has no rational roots.
        let mut mult = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        mult[0][0][0] = Rational::one();
        mult[0][1][1] = Rational::one();
        mult[1][0][1] = Rational::one();
        mult[1][1][0] = rat_int(2);
        let a = Algebra::new(2, mult, Some(v(&[1, 0]))).unwrap();
        let err = h_simple_components(&a, &Subspace::full(2), &[]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotSplit(_)));
    }

    #[test]
    fn lifting_splits_triangular_matrices() {
        use crate::actions::ActionData;
        let ut2 = Algebra::upper_triangular(2);
        let d = wedderburn_malcev(&ut2, &ActionData::Trivial).unwrap();
        assert_eq!(d.radical, Subspace::span(3, vec![v(&[0, 1, 0])]));
        assert_eq!(d.nilpotency, 2);
        assert_eq!(
            d.components,
            vec![
                Subspace::span(3, vec![v(&[1, 0, 0])]),
                Subspace::span(3, vec![v(&[0, 0, 1])]),
            ]
        );
        assert_eq!(pi_exponent(&d), 2);
        // A sheared basis makes the canonical section non-multiplicative,
        // exercising the defect-cancellation loop and the unit adjustment.
        let t = Matrix::from_rows(vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let sheared = ut2.basis_change(&t).unwrap();
        let d = wedderburn_malcev(&sheared, &ActionData::Trivial).unwrap();
        assert!(verify_decomposition(&sheared, &[], &d).passed());
        assert_eq!(pi_exponent(&d), 2);
        // Semisimple input: the complement is everything.
        let d = wedderburn_malcev(&Algebra::matrix_algebra(2), &ActionData::Trivial).unwrap();
        assert!(d.radical.is_zero());
        assert_eq!(d.nilpotency, 1);
        assert_eq!(d.components.len(), 1);
        assert_eq!(pi_exponent(&d), 4);
    }

    #[test]
    fn lifting_averages_over_a_swap_of_triangular_blocks() {
        use crate::actions::{gaction_to_generalized, ActionData, GroupData};
        let ut2 = Algebra::upper_triangular(2);
        let a = Algebra::direct_sum(&ut2, &ut2);
        let z2 = GroupData::cyclic(2);
        let ga = gaction_to_generalized(
            &z2,
            &a,
            &[(Matrix::identity(6), false), (swap_blocks(3), false)],
        )
        .unwrap();
        let d = wedderburn_malcev(&a, &ActionData::Group(ga.clone())).unwrap();
        assert_eq!(d.radical.dim(), 2);
        assert_eq!(d.nilpotency, 2);
        assert_eq!(d.components.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![2, 2]);
        assert!(verify_decomposition(&a, ga.action.operators(), &d).passed());
        assert_eq!(pi_exponent(&d), 4);
    }

    #[test]
    fn lifting_averages_over_an_antiautomorphism() {
        use crate::actions::{gaction_to_generalized, ActionData, GroupData};
        // Reflection across the antidiagonal swaps the diagonal idempotents
        // of UT_2 and reverses products, merging the two components into one.
        let ut2 = Algebra::upper_triangular(2);
        let refl = Matrix::from_rows(vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
        let z2 = GroupData::cyclic(2).with_g0(&[0]).unwrap();
        let ga =
            gaction_to_generalized(&z2, &ut2, &[(Matrix::identity(3), false), (refl, true)])
                .unwrap();
        let d = wedderburn_malcev(&ut2, &ActionData::Group(ga)).unwrap();
        assert_eq!(
            d.components,
            vec![Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 0, 1])])]
        );
        assert_eq!(pi_exponent(&d), 2);
    }

    #[test]
    fn lifting_averages_over_a_dual_group_action() {
        use crate::actions::{duality_transform, ActionData, GradedAlgebra, GroupData};
        // UT_2 with diagonal part in degree zero and e01 in degree one; the
        // dual of the grading group acts by component projections.
        let ut2 = Algebra::upper_triangular(2);
        let graded =
            GradedAlgebra::new(ut2.clone(), GroupData::cyclic(2), vec![0, 1, 0]).unwrap();
        let dual = duality_transform(&graded);
        let ops = dual.action.operators().to_vec();
        let d = wedderburn_malcev(
            &ut2,
            &ActionData::Hopf { hopf: dual.hopf, action: dual.action },
        )
        .unwrap();
        assert_eq!(d.components.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 1]);
        assert!(verify_decomposition(&ut2, &ops, &d).passed());
        assert_eq!(pi_exponent(&d), 2);
    }

    #[test]
    fn lifting_refuses_what_it_cannot_average() {
        use crate::actions::ActionData;
        // The four-dimensional Hopf algebra acted on by its dual: the radical
        // is not an invariant subspace, so no equivariant complement exists.
        let s = crate::actions::sweedler_scenario();
        let err = wedderburn_malcev(
            &s.hopf.action_algebra.algebra,
            &ActionData::Hopf { hopf: s.dual.clone(), action: s.action.clone() },
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::AveragingUnavailable(_)));
        // A generalized action carries no averaging recipe at all.
        let (halg, alg, act) = crate::actions::unsolvable_fixture();
        let err = wedderburn_malcev(
            &alg,
            &ActionData::Generalized { algebra: halg, action: act },
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::AveragingUnavailable(_)));
        // Algebras without a unit are rejected up front.
        let n2 = Algebra::strictly_upper(2);
        assert!(matches!(
            wedderburn_malcev(&n2, &ActionData::Trivial),
            Err(AlgebraError::NoUnit)
        ));
    }

    #[test]
    fn decomposition_checks_fail_in_a_useful_order() {
        let s = crate::actions::sweedler_scenario();
        let alg = s.hopf.action_algebra.algebra.clone();
        let (j, p) = radical(&alg).unwrap();
        assert_eq!(j, Subspace::span(4, vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]));
        assert_eq!(p, 2);
        // The honest radical with the obvious diagonal complement: the
        // radical item passes but its invariance under the dual action fails.
        let candidate = Decomposition {
            algebra: alg.clone(),
            radical: j,
            nilpotency: p,
            components: vec![Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])])],
        };
        let report = verify_decomposition(&alg, s.action.operators(), &candidate);
        assert!(!report.passed());
        assert!(report.item("radical").unwrap().passed);
        assert_eq!(report.first_failure().unwrap().name, "radical-invariant");
        // A correct decomposition passes every item.
        let m2 = Algebra::matrix_algebra(2);
        let d = Decomposition {
            algebra: m2.clone(),
            radical: Subspace::zero(4),
            nilpotency: 1,
            components: vec![Subspace::full(4)],
        };
        let report = verify_decomposition(&m2, &[], &d);
        assert!(report.passed(), "{report}");
    }
}
