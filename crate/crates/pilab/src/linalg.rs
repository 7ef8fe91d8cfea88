//! Dense and sparse exact linear algebra over the rationals: canonical reduced
//! row echelon forms, streaming fraction-free rank, kernels, inverses, minimal
//! polynomials and rational root extraction.

use crate::rat::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix over the rationals. Linear maps act on coordinate
/// column vectors (`apply`); subspace bases are kept as row vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::rat::format_rational(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Matrix times coordinate column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Rational::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// Row-major flattening, used to span spaces of operators.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.data.clone()
    }

    /// Sparse columns: `column(j)` as `(row, value)` pairs.
    pub fn sparse_columns(&self) -> Vec<SparseRow<Rational>> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !self.get(i, j).is_zero())
                    .map(|i| (i, self.get(i, j).clone()))
                    .collect()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Canonical reduced row echelon form (dense)
// ---------------------------------------------------------------------------

/// Canonical reduced row echelon form: nonzero rows only, unit pivots, zeros
/// above and below each pivot, pivot columns strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

/// Reduces the given spanning rows to canonical form. Pivot choice is the
/// first nonzero column, topmost remaining row, so the output is a pure
/// function of the row space.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> Rref {
    let cols = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    if !rows[r][j].is_zero() {
                        let delta = &factor * &rows[r][j];
                        rows[i][j] -= delta;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Rref { rows, pivots }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the row space (in place); the result has zeros at
    /// every pivot column.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Coordinates of `v` in the basis given by the rows, read off the pivot
    /// columns; `None` when `v` is outside the row space.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coeffs: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut check = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coeffs) {
            if !c.is_zero() {
                for (x, r) in check.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= c * r;
                    }
                }
            }
        }
        check.iter().all(Rational::is_zero).then_some(coeffs)
    }
}

/// Basis of the right kernel `{x : M x = 0}`, one canonical vector per free
/// column, ordered by free column index.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let e = rref(m.rows_vec());
    let n = m.ncols();
    let pivot_set: std::collections::BTreeSet<usize> = e.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[f].is_zero() {
                v[p] = -row[f].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `M x = rhs`, free variables set to zero. `None` when inconsistent.
pub fn solve(m: &Matrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.nrows(), rhs.len());
    let n = m.ncols();
    let aug: Vec<Vec<Rational>> = (0..m.nrows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let e = rref(aug);
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        if p == n {
            return None; // pivot in the augmented column: inconsistent
        }
        x[p] = row[n].clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let e = rref(aug);
    if e.pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(Matrix::from_rows(e.rows.into_iter().map(|r| r[n..].to_vec()).collect()))
}

/// Exact determinant by Gaussian elimination with row swaps.
pub fn determinant(m: &Matrix) -> Rational {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let mut rows = m.rows_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det *= &pivot;
        for i in col + 1..n {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            for j in col..n {
                let delta = &factor * &rows[col][j];
                rows[i][j] -= delta;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// Incremental span (dense) for closures and Krylov iterations
// ---------------------------------------------------------------------------

/// Incremental row span with unit pivots; answers membership while growing.
#[derive(Debug, Clone)]
pub struct RatSpan {
    cols: usize,
    rows: BTreeMap<usize, Vec<Rational>>, // pivot column -> row (pivot entry 1)
}

impl RatSpan {
    pub fn new(cols: usize) -> Self {
        RatSpan { cols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut Vec<Rational>) {
        for (&p, row) in &self.rows {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
    }

    /// Adds a vector to the span; `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }
}

// ---------------------------------------------------------------------------
// Streaming fraction-free rank over sparse integer rows
// ---------------------------------------------------------------------------

fn content(row: &[(usize, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(row: &mut Vec<(usize, BigInt)>) {
    if row.is_empty() {
        return;
    }
    let mut g = content(row);
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a*x - b*y` for sparse integer rows; the result drops explicit zeros.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some(&(cx, _)), Some(&(cy, _))) => cx.cmp(&cy),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((x[i].0, a * &x[i].1));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((y[j].0, -(b * &y[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Streaming echelon accumulator: rows arrive one at a time (in a caller-fixed
/// order), are reduced fraction-free (cross-multiplication over the integers,
/// contents divided out) against the pivot rows kept so far, and are retained
/// when independent. No rational division happens during elimination.
#[derive(Debug, Clone)]
pub struct FractionFreeEchelon {
    cols: usize,
    pivots: BTreeMap<usize, Vec<(usize, BigInt)>>, // lead column -> primitive row, positive lead
}

impl FractionFreeEchelon {
    pub fn new(cols: usize) -> Self {
        FractionFreeEchelon { cols, pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a sparse rational row (denominators cleared internally).
    /// Returns `true` when the rank grew.
    pub fn insert_rational(&mut self, row: &SparseRow<Rational>) -> bool {
        let mut lcm = BigInt::one();
        for (_, v) in row {
            lcm = lcm.lcm(v.denom());
        }
        let int_row: Vec<(usize, BigInt)> = row
            .iter()
            .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.insert_int(int_row)
    }

    pub fn insert_int(&mut self, mut row: Vec<(usize, BigInt)>) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        make_primitive(&mut row);
        loop {
            let Some(&(lead, ref lv)) = row.first() else {
                return false;
            };
            debug_assert!(lead < self.cols);
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let pl = p[0].1.clone();
                    let rl = lv.clone();
                    row = combine(&pl, &row, &rl, p);
                    make_primitive(&mut row);
                }
            }
        }
    }

    /// Canonical reduced form of the accumulated row space: sparse rational
    /// rows with unit pivots and zeros above pivots, in pivot-column order.
    pub fn to_canonical(&self) -> (Vec<SparseRow<Rational>>, Vec<usize>) {
        let pivots: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: Vec<SparseRow<Rational>> = self
            .pivots
            .values()
            .map(|r| {
                let lead = Rational::from_integer(r[0].1.clone());
                r.iter()
                    .map(|(c, v)| (*c, Rational::from_integer(v.clone()) / &lead))
                    .collect()
            })
            .collect();
        // Clear entries above each pivot, bottom-up.
        for i in (0..rows.len()).rev() {
            for j in (0..i).rev() {
                let coeff = rows[j]
                    .iter()
                    .find(|(c, _)| *c == pivots[i])
                    .map(|(_, v)| v.clone());
                if let Some(coeff) = coeff {
                    let scaled: SparseRow<Rational> =
                        rows[i].iter().map(|(c, v)| (*c, v * &coeff)).collect();
                    rows[j] = sparse_sub(&rows[j], &scaled);
                }
            }
        }
        (rows, pivots)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if n == 0 {
        return vec![vec![]];
    }
    (0..n).permutations(n).collect()
}

/// Sign of a permutation of `0..n`.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `x - y` on sparse rational rows.
pub fn sparse_sub(x: &SparseRow<Rational>, y: &SparseRow<Rational>) -> SparseRow<Rational> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                out.push((*cx, vx.clone()));
                i += 1;
            }
            (Some((cx, _)), Some((cy, vy))) if cy < cx => {
                out.push((*cy, -vy.clone()));
                j += 1;
            }
            (Some((cx, vx)), Some((_, vy))) => {
                let v = vx - vy;
                if !v.is_zero() {
                    out.push((*cx, v));
                }
                i += 1;
                j += 1;
            }
            (Some((cx, vx)), None) => {
                out.push((*cx, vx.clone()));
                i += 1;
            }
            (None, Some((cy, vy))) => {
                out.push((*cy, -vy.clone()));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Minimal polynomials and rational roots
// ---------------------------------------------------------------------------

/// Monic minimal polynomial of a square matrix, coefficients low to high
/// (so the last entry is 1).
pub fn minimal_polynomial(m: &Matrix) -> Vec<Rational> {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let lead = n * n;
    // Rows are [vectorized power | dependence-tracking tail].
    let mut stored: Vec<(usize, Vec<Rational>)> = Vec::new(); // (pivot in 0..lead, row)
    let mut power = Matrix::identity(n);
    for k in 0..=n {
        let mut row = power.vectorize();
        row.extend(vec![Rational::zero(); n + 1]);
        row[lead + k] = Rational::one();
        for (p, srow) in &stored {
            if !row[*p].is_zero() {
                let factor = row[*p].clone();
                for (x, r) in row.iter_mut().zip(srow) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
        match row[..lead].iter().position(|x| !x.is_zero()) {
            None => {
                // Dependence found: tail holds c_0..c_k with sum c_i M^i = 0.
                let denom = row[lead + k].clone();
                debug_assert!(!denom.is_zero());
                let coeffs: Vec<Rational> =
                    row[lead..lead + k + 1].iter().map(|c| c / &denom).collect();
                return coeffs;
            }
            Some(p) => {
                let inv = row[p].recip();
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                stored.push((p, row));
                stored.sort_by_key(|(p, _)| *p);
            }
        }
        power = power.mul(m);
    }
    unreachable!("minimal polynomial has degree at most the matrix dimension");
}

pub fn poly_eval(poly: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divides `poly` by `(x - r)`; `poly` must vanish at `r`.
pub fn synthetic_div(poly: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = poly.len();
    assert!(n >= 2);
    let mut q = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for i in (0..n - 1).rev() {
        q[i] = &poly[i + 1] + r * &carry;
        carry = q[i].clone();
    }
    debug_assert!(poly_eval(poly, r).is_zero());
    q
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSplit {
    /// Rational roots found (ascending), one entry per extracted linear factor.
    pub roots: Vec<Rational>,
    /// True when deflation reached a constant, i.e. the polynomial splits
    /// into rational linear factors.
    pub fully_split: bool,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("coefficient magnitude exceeds the rational root search bound")]
pub struct RootSearchOverflow;

fn divisors_up_to(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

const ROOT_SEARCH_BOUND: i128 = 1_000_000_000_000;

/// Extracts rational roots by the rational root theorem with exact deflation.
/// Roots are returned in ascending order with multiplicity.
pub fn rational_roots(poly: &[Rational]) -> Result<RootSplit, RootSearchOverflow> {
    let mut current: Vec<Rational> = poly.to_vec();
    let mut roots = Vec::new();
    // Strip leading (high-degree) zeros.
    while current.last().is_some_and(Rational::is_zero) {
        current.pop();
    }
    if current.len() <= 1 {
        return Ok(RootSplit { roots, fully_split: true });
    }
    'outer: loop {
        if current.len() == 1 {
            return Ok(RootSplit { roots, fully_split: true });
        }
        if current.len() == 2 {
            // Linear: root = -c0/c1.
            roots.push(-(&current[0] / &current[1]));
            roots.sort();
            return Ok(RootSplit { roots, fully_split: true });
        }
        if current[0].is_zero() {
            roots.push(Rational::zero());
            current.remove(0);
            continue;
        }
        let mut l = BigInt::one();
        for c in &current {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = current.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let a0 = i128::try_from(ints[0].clone()).map_err(|_| RootSearchOverflow)?;
        let an = i128::try_from(ints[ints.len() - 1].clone()).map_err(|_| RootSearchOverflow)?;
        if a0.abs() > ROOT_SEARCH_BOUND || an.abs() > ROOT_SEARCH_BOUND {
            return Err(RootSearchOverflow);
        }
        for p in divisors_up_to(a0) {
            for q in divisors_up_to(an) {
                for sign in [1i128, -1] {
                    let cand = Rational::new(BigInt::from(sign * p), BigInt::from(q));
                    if poly_eval(&current, &cand).is_zero() {
                        roots.push(cand.clone());
                        current = synthetic_div(&current, &cand);
                        continue 'outer;
                    }
                }
            }
        }
        roots.sort();
        return Ok(RootSplit { roots, fully_split: false });
    }
}
