//! The acting objects: associative action algebras, Hopf algebras with exact
//! axiom checks, group actions mixing automorphisms and anti-automorphisms,
//! group gradings, the grading/dual-action correspondence, left integrals,
//! and integral-averaged equivariant projections.

use crate::exactalg::{Algebra, AlgebraError, Subspace};
use crate::linalg::{self, Matrix};
use crate::rat::{format_rational, Rational};
use crate::report::CheckReport;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("action algebra has no unit")]
    NotUnital,
    #[error("operator assignment is not an algebra homomorphism at basis pair ({i}, {j})")]
    NotHomomorphism { i: usize, j: usize },
    #[error("the unit of the action algebra does not act as the identity")]
    UnitNotIdentity,
    #[error("not a group: {0}")]
    NotGroup(String),
    #[error("invalid automorphism-part subgroup: {0}")]
    BadSubgroup(String),
    #[error("grading law fails on basis pair ({i}, {j})")]
    NotGraded { i: usize, j: usize },
    #[error("element {element} acts with the wrong morphism type for its subgroup membership")]
    WrongMorphismType { element: usize },
    #[error("integral system has only the zero solution")]
    NoIntegral,
    #[error("action algebra is not semisimple: the integral has vanishing counit")]
    NotSemisimple,
    #[error("not a bimodule projection onto the ideal: {0}")]
    NotBimoduleProjection(String),
    #[error("subspace is not invariant under action operator {op_index}")]
    NotInvariant { op_index: usize },
    #[error("operators are not a complete orthogonal family of coordinate projections: {0}")]
    NotDiagonalizable(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

// ---------------------------------------------------------------------------
// Action algebras and actions
// ---------------------------------------------------------------------------

/// A unital associative algebra whose elements act on other algebras, with
/// printable basis labels.
#[derive(Debug, Clone)]
pub struct ActionAlgebra {
    pub algebra: Algebra,
    pub labels: Vec<String>,
}

impl ActionAlgebra {
    pub fn new(algebra: Algebra, labels: Vec<String>) -> Result<Self, ActionError> {
        if algebra.unit().is_none() {
            return Err(ActionError::NotUnital);
        }
        if labels.len() != algebra.dim() {
            return Err(ActionError::Shape("one label per basis element".into()));
        }
        Ok(ActionAlgebra { algebra, labels })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// A representation of an action algebra on a coordinate space: one operator
/// per basis element, verified to be a unital algebra homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    operators: Vec<Matrix>,
}

impl Action {
    pub fn new(h: &ActionAlgebra, operators: Vec<Matrix>) -> Result<Self, ActionError> {
        let hd = h.dim();
        if operators.len() != hd {
            return Err(ActionError::Shape("one operator per basis element".into()));
        }
        let ad = operators.first().map(|m| m.nrows()).unwrap_or(0);
        if operators.iter().any(|m| m.nrows() != ad || m.ncols() != ad) {
            return Err(ActionError::Shape("operators must be square of equal size".into()));
        }
        let mult = h.algebra.mult_table();
        for i in 0..hd {
            for j in 0..hd {
                let mut rhs = Matrix::zeros(ad, ad);
                for (k, c) in mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&operators[k].scale(c));
                    }
                }
                if operators[i].mul(&operators[j]) != rhs {
                    return Err(ActionError::NotHomomorphism { i, j });
                }
            }
        }
        let unit = h.algebra.unit().expect("action algebra is unital");
        let mut u = Matrix::zeros(ad, ad);
        for (k, c) in unit.iter().enumerate() {
            if !c.is_zero() {
                u = u.add(&operators[k].scale(c));
            }
        }
        if !u.is_identity() {
            return Err(ActionError::UnitNotIdentity);
        }
        Ok(Action { operators })
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    pub fn algebra_dim(&self) -> usize {
        self.operators.first().map(|m| m.nrows()).unwrap_or(0)
    }

    /// Operator of a general element of the action algebra.
    pub fn operator_of(&self, coeffs: &[Rational]) -> Matrix {
        let ad = self.algebra_dim();
        let mut m = Matrix::zeros(ad, ad);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.operators[k].scale(c));
            }
        }
        m
    }

    pub fn apply(&self, coeffs: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.operator_of(coeffs).apply(v)
    }
}

// ---------------------------------------------------------------------------
// Groups, gradings
// ---------------------------------------------------------------------------

/// A finite group by Cayley table, with a distinguished subgroup of index at
/// most 2 marking the elements that act by automorphisms (the rest act by
/// anti-automorphisms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    in_g0: Vec<bool>,
    labels: Vec<String>,
}

impl GroupData {
    /// Validates the table as a group and `g0` (default: everything) as a
    /// subgroup of index 1 or 2.
    pub fn new(table: Vec<Vec<usize>>, g0: Option<&[usize]>) -> Result<Self, ActionError> {
        let n = table.len();
        if n == 0 {
            return Err(ActionError::NotGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n) || table.iter().flatten().any(|&x| x >= n) {
            return Err(ActionError::NotGroup("table is not n x n over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| ActionError::NotGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(ActionError::NotGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(ActionError::NotGroup(format!("element {a} has no inverse")));
            }
        }
        let mut in_g0 = vec![true; n];
        if let Some(subset) = g0 {
            in_g0 = vec![false; n];
            for &x in subset {
                if x >= n {
                    return Err(ActionError::BadSubgroup(format!("element {x} out of range")));
                }
                in_g0[x] = true;
            }
            if !in_g0[identity] {
                return Err(ActionError::BadSubgroup("must contain the identity".into()));
            }
            let size = in_g0.iter().filter(|&&b| b).count();
            if size * 2 != n && size != n {
                return Err(ActionError::BadSubgroup(format!(
                    "index must be 1 or 2, got {n}/{size}"
                )));
            }
            for a in 0..n {
                for b in 0..n {
                    if in_g0[a] && in_g0[b] && !in_g0[table[a][b]] {
                        return Err(ActionError::BadSubgroup("not closed under products".into()));
                    }
                }
            }
        }
        let labels =
            (0..n).map(|i| if i == identity { "e".to_string() } else { format!("g{i}") }).collect();
        Ok(GroupData { order: n, table, identity, in_g0, labels })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.table[a][b] == self.identity).expect("group has inverses")
    }

    pub fn in_g0(&self, a: usize) -> bool {
        self.in_g0[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn trivial() -> GroupData {
        GroupData::new(vec![vec![0]], None).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> GroupData {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupData::new(table, None).expect("cyclic group")
    }

    /// Symmetric group on `n` letters; elements are the permutations of
    /// `0..n` in lexicographic order, product `(pq)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> GroupData {
        let perms = crate::linalg::permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                        index(&composed)
                    })
                    .collect()
            })
            .collect();
        GroupData::new(table, None).expect("symmetric group")
    }

    /// Same group with a different automorphism-part subgroup.
    pub fn with_g0(&self, subset: &[usize]) -> Result<GroupData, ActionError> {
        GroupData::new(self.table.clone(), Some(subset))
    }
}

/// A grading by a finite group with coordinate-aligned homogeneous
/// components: basis vector `i` lives in degree `component_of[i]`.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    pub algebra: Algebra,
    pub group: GroupData,
    pub component_of: Vec<usize>,
}

impl GradedAlgebra {
    pub fn new(
        algebra: Algebra,
        group: GroupData,
        component_of: Vec<usize>,
    ) -> Result<Self, ActionError> {
        if component_of.len() != algebra.dim() {
            return Err(ActionError::Shape("one group element per basis vector".into()));
        }
        if component_of.iter().any(|&g| g >= group.order()) {
            return Err(ActionError::Shape("degree out of group range".into()));
        }
        let mult = algebra.mult_table();
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                let target = group.mul(component_of[i], component_of[j]);
                for (k, c) in mult[i][j].iter().enumerate() {
                    if !c.is_zero() && component_of[k] != target {
                        return Err(ActionError::NotGraded { i, j });
                    }
                }
            }
        }
        Ok(GradedAlgebra { algebra, group, component_of })
    }

    pub fn component_subspace(&self, g: usize) -> Subspace {
        let n = self.algebra.dim();
        let rows = (0..n)
            .filter(|&i| self.component_of[i] == g)
            .map(|i| self.algebra.basis_vec(i))
            .collect();
        Subspace::span(n, rows)
    }
}

// ---------------------------------------------------------------------------
// Hopf data
// ---------------------------------------------------------------------------

/// Hopf-algebra structure on an action algebra. `comul[k]` is the matrix of
/// coefficients of `γ_i ⊗ γ_j` in `Δ(γ_k)`; `counit` is a row vector;
/// `antipode` acts on coordinate column vectors.
#[derive(Debug, Clone)]
pub struct HopfData {
    pub action_algebra: ActionAlgebra,
    pub comul: Vec<Matrix>,
    pub counit: Vec<Rational>,
    pub antipode: Matrix,
}

impl HopfData {
    pub fn new(
        action_algebra: ActionAlgebra,
        comul: Vec<Matrix>,
        counit: Vec<Rational>,
        antipode: Matrix,
    ) -> Result<Self, ActionError> {
        let d = action_algebra.dim();
        if comul.len() != d || comul.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(ActionError::Shape("comultiplication tensor".into()));
        }
        if counit.len() != d {
            return Err(ActionError::Shape("counit vector".into()));
        }
        if antipode.nrows() != d || antipode.ncols() != d {
            return Err(ActionError::Shape("antipode matrix".into()));
        }
        Ok(HopfData { action_algebra, comul, counit, antipode })
    }

    pub fn dim(&self) -> usize {
        self.action_algebra.dim()
    }

    /// Coefficient matrix of `Δ(v)` for a general element.
    pub fn comul_of(&self, v: &[Rational]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.comul[k].scale(c));
            }
        }
        m
    }

    pub fn counit_of(&self, v: &[Rational]) -> Rational {
        self.counit.iter().zip(v).map(|(e, x)| e * x).sum()
    }

    pub fn antipode_of(&self, v: &[Rational]) -> Vec<Rational> {
        self.antipode.apply(v)
    }

    /// Coefficients `T[a][b][c]` of `γ_a ⊗ γ_b ⊗ γ_c` in `(Δ⊗id)Δ(v)`.
    pub fn double_comul_of(&self, v: &[Rational]) -> Vec<Matrix> {
        let d = self.dim();
        let dv = self.comul_of(v);
        let mut t = vec![Matrix::zeros(d, d); d];
        for m in 0..d {
            for c in 0..d {
                let coeff = dv.get(m, c);
                if coeff.is_zero() {
                    continue;
                }
                for a in 0..d {
                    for b in 0..d {
                        let x = self.comul[m].get(a, b);
                        if !x.is_zero() {
                            let cur = t[a].get(b, c).clone();
                            t[a].set(b, c, cur + coeff * x);
                        }
                    }
                }
            }
        }
        t
    }
}

/// Itemized verification of all Hopf-algebra axioms on basis elements.
pub fn check_hopf(h: &HopfData) -> CheckReport {
    let mut report = CheckReport::new("hopf-axioms");
    let d = h.dim();
    let alg = &h.action_algebra.algebra;
    let label = |k: usize| h.action_algebra.labels[k].clone();

    // (Δ⊗id)Δ = (id⊗Δ)Δ on basis elements.
    let mut coassoc_fail = None;
    'outer: for k in 0..d {
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let left: Rational =
                        (0..d).map(|m| h.comul[k].get(m, c) * h.comul[m].get(a, b)).sum();
                    let right: Rational =
                        (0..d).map(|m| h.comul[k].get(a, m) * h.comul[m].get(b, c)).sum();
                    if left != right {
                        coassoc_fail = Some(label(k));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.push(
        "coassociativity",
        coassoc_fail.is_none(),
        coassoc_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );

    // (ε⊗id)Δ = id and (id⊗ε)Δ = id.
    let mut left_fail = None;
    let mut right_fail = None;
    for k in 0..d {
        let mut lres = vec![Rational::zero(); d];
        let mut rres = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let c = h.comul[k].get(i, j);
                if !c.is_zero() {
                    lres[j] += c * &h.counit[i];
                    rres[i] += c * &h.counit[j];
                }
            }
        }
        if lres != alg.basis_vec(k) && left_fail.is_none() {
            left_fail = Some(label(k));
        }
        if rres != alg.basis_vec(k) && right_fail.is_none() {
            right_fail = Some(label(k));
        }
    }
    report.push(
        "counit-left",
        left_fail.is_none(),
        left_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );
    report.push(
        "counit-right",
        right_fail.is_none(),
        right_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );

    // Δ is an algebra homomorphism.
    let mult = alg.mult_table();
    let mut comul_mult_fail = None;
    'pairs: for i in 0..d {
        for j in 0..d {
            let mut lhs = Matrix::zeros(d, d);
            for (k, c) in mult[i][j].iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.add(&h.comul[k].scale(c));
                }
            }
            let mut rhs = Matrix::zeros(d, d);
            for a in 0..d {
                for b in 0..d {
                    let ca = h.comul[i].get(a, b);
                    if ca.is_zero() {
                        continue;
                    }
                    for c in 0..d {
                        for e in 0..d {
                            let cb = h.comul[j].get(c, e);
                            if cb.is_zero() {
                                continue;
                            }
                            let f = ca * cb;
                            for (u, m1) in mult[a][c].iter().enumerate() {
                                if m1.is_zero() {
                                    continue;
                                }
                                for (v, m2) in mult[b][e].iter().enumerate() {
                                    if !m2.is_zero() {
                                        let cur = rhs.get(u, v).clone();
                                        rhs.set(u, v, cur + &f * m1 * m2);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                comul_mult_fail = Some(format!("{} * {}", label(i), label(j)));
                break 'pairs;
            }
        }
    }
    report.push(
        "comultiplication-multiplicative",
        comul_mult_fail.is_none(),
        comul_mult_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );

    let unit = alg.unit().expect("action algebra is unital");
    let du = h.comul_of(unit);
    let mut uu = Matrix::zeros(d, d);
    for (i, a) in unit.iter().enumerate() {
        for (j, b) in unit.iter().enumerate() {
            uu.set(i, j, a * b);
        }
    }
    report.push("comultiplication-unit", du == uu, if du == uu { String::new() } else { "Δ(1) ≠ 1⊗1".into() });

    let mut counit_mult_fail = None;
    for i in 0..d {
        for j in 0..d {
            let lhs: Rational =
                mult[i][j].iter().zip(&h.counit).map(|(c, e)| c * e).sum();
            if lhs != &h.counit[i] * &h.counit[j] {
                counit_mult_fail = Some(format!("{} * {}", label(i), label(j)));
            }
        }
    }
    report.push(
        "counit-multiplicative",
        counit_mult_fail.is_none(),
        counit_mult_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );
    let eu = h.counit_of(unit);
    report.push(
        "counit-unit",
        eu.is_one(),
        if eu.is_one() { String::new() } else { format!("ε(1) = {}", format_rational(&eu)) },
    );

    // m(S⊗id)Δ = uε = m(id⊗S)Δ.
    let mut anti_left_fail = None;
    let mut anti_right_fail = None;
    for k in 0..d {
        let mut lhs = vec![Rational::zero(); d];
        let mut rhs = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let c = h.comul[k].get(i, j);
                if c.is_zero() {
                    continue;
                }
                let si = h.antipode_of(&alg.basis_vec(i));
                for (t, x) in alg.product(&si, &alg.basis_vec(j)).into_iter().enumerate() {
                    lhs[t] += c * x;
                }
                let sj = h.antipode_of(&alg.basis_vec(j));
                for (t, x) in alg.product(&alg.basis_vec(i), &sj).into_iter().enumerate() {
                    rhs[t] += c * x;
                }
            }
        }
        let expected: Vec<Rational> = unit.iter().map(|u| u * &h.counit[k]).collect();
        if lhs != expected && anti_left_fail.is_none() {
            anti_left_fail = Some(label(k));
        }
        if rhs != expected && anti_right_fail.is_none() {
            anti_right_fail = Some(label(k));
        }
    }
    report.push(
        "antipode-left",
        anti_left_fail.is_none(),
        anti_left_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );
    report.push(
        "antipode-right",
        anti_right_fail.is_none(),
        anti_right_fail.map(|l| format!("fails at {l}")).unwrap_or_default(),
    );
    report
}

/// Group algebra `FG` with `Δg = g⊗g`, `ε(g) = 1`, `S(g) = g^{-1}`.
pub fn group_algebra(g: &GroupData) -> HopfData {
    let n = g.order();
    let mut mult = vec![vec![vec![Rational::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            mult[a][b][g.mul(a, b)] = Rational::one();
        }
    }
    let mut unit = vec![Rational::zero(); n];
    unit[g.identity()] = Rational::one();
    let algebra = Algebra::new(n, mult, Some(unit)).expect("group algebra is associative");
    let aa = ActionAlgebra::new(algebra, g.labels().to_vec()).expect("group algebra is unital");
    let comul = (0..n)
        .map(|k| {
            let mut m = Matrix::zeros(n, n);
            m.set(k, k, Rational::one());
            m
        })
        .collect();
    let counit = vec![Rational::one(); n];
    let mut antipode = Matrix::zeros(n, n);
    for j in 0..n {
        antipode.set(g.inv(j), j, Rational::one());
    }
    HopfData::new(aa, comul, counit, antipode).expect("group algebra shapes")
}

/// Dual Hopf algebra on the dual basis: multiplication from Δ, Δ from
/// multiplication, unit from ε, counit from the unit, antipode transposed.
pub fn hopf_dual(h: &HopfData) -> Result<HopfData, ActionError> {
    let d = h.dim();
    let mut mult = vec![vec![vec![Rational::zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                mult[i][j][k] = h.comul[k].get(i, j).clone();
            }
        }
    }
    let algebra = Algebra::new(d, mult, Some(h.counit.clone()))?;
    let labels = h.action_algebra.labels.iter().map(|l| format!("g_{l}")).collect();
    let aa = ActionAlgebra::new(algebra, labels)?;
    let orig_mult = h.action_algebra.algebra.mult_table();
    let comul = (0..d)
        .map(|k| {
            let mut m = Matrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, orig_mult[i][j][k].clone());
                }
            }
            m
        })
        .collect();
    let counit = h.action_algebra.algebra.unit().expect("unital").clone();
    HopfData::new(aa, comul, counit, h.antipode.transpose())
}

/// Dual of the group algebra: a direct sum of `|G|` fields on the dual basis
/// `h_g`, with `Δ(h_g) = Σ_{uv=g} h_u ⊗ h_v`.
pub fn dual_group_hopf(g: &GroupData) -> HopfData {
    let mut dual = hopf_dual(&group_algebra(g)).expect("group algebra dualizes");
    dual.action_algebra.labels = g.labels().iter().map(|l| format!("h_{l}")).collect();
    dual
}

/// One-dimensional Hopf algebra; its action is the identity.
pub fn trivial_hopf() -> HopfData {
    group_algebra(&GroupData::trivial())
}

// ---------------------------------------------------------------------------
// Action laws
// ---------------------------------------------------------------------------

/// Module-algebra law `h(ab) = (h_{(1)}a)(h_{(2)}b)` on all basis triples.
pub fn check_module_algebra(h: &HopfData, a: &Algebra, act: &Action) -> bool {
    let d = h.dim();
    let n = a.dim();
    if act.algebra_dim() != n || act.operators().len() != d {
        return false;
    }
    let acted: Vec<Vec<Vec<Rational>>> = (0..d)
        .map(|u| (0..n).map(|i| act.operators()[u].apply(&a.basis_vec(i))).collect())
        .collect();
    for k in 0..d {
        for i in 0..n {
            for j in 0..n {
                let lhs = act.operators()[k].apply(&a.product(&a.basis_vec(i), &a.basis_vec(j)));
                let mut rhs = vec![Rational::zero(); n];
                for u in 0..d {
                    for v in 0..d {
                        let c = h.comul[k].get(u, v);
                        if c.is_zero() {
                            continue;
                        }
                        for (t, x) in a.product(&acted[u][i], &acted[v][j]).into_iter().enumerate()
                        {
                            if !x.is_zero() {
                                rhs[t] += c * x;
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Witness for one generator of a generalized action: `γ(ab) = Σ c·(ua)(vb)
/// + Σ c·(ub)(va)` with `u, v` ranging over the action-algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedWitness {
    pub straight: Vec<(usize, usize, Rational)>,
    pub flipped: Vec<(usize, usize, Rational)>,
}

#[derive(Debug, Clone)]
pub struct GeneralizedActionReport {
    pub per_generator: Vec<Option<GeneralizedWitness>>,
}

impl GeneralizedActionReport {
    pub fn all_solvable(&self) -> bool {
        self.per_generator.iter().all(Option::is_some)
    }

    pub fn as_check_report(&self, labels: &[String]) -> CheckReport {
        let mut r = CheckReport::new("generalized-action");
        for (g, w) in self.per_generator.iter().enumerate() {
            r.push(
                format!("generator {}", labels[g]),
                w.is_some(),
                if w.is_some() { String::new() } else { "no witness decomposition exists".into() },
            );
        }
        r
    }
}

/// Decides for each basis element `γ` whether the bilinear map
/// `(a, b) -> γ(ab)` decomposes through the action as in a generalized
/// action, by one exact linear solve per generator; solutions are re-checked
/// by substitution.
pub fn check_generalized_action(
    h: &ActionAlgebra,
    a: &Algebra,
    act: &Action,
) -> GeneralizedActionReport {
    let hd = h.dim();
    let n = a.dim();
    let acted: Vec<Vec<Vec<Rational>>> = (0..hd)
        .map(|u| (0..n).map(|i| act.operators()[u].apply(&a.basis_vec(i))).collect())
        .collect();
    // Column uv of the straight block: coordinates of (γ_u e_i)(γ_v e_j);
    // flipped block: (γ_u e_j)(γ_v e_i). Row index: (i, j, k).
    let ncols = 2 * hd * hd;
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row_block = vec![vec![Rational::zero(); ncols]; n];
            for u in 0..hd {
                for v in 0..hd {
                    let s = a.product(&acted[u][i], &acted[v][j]);
                    let f = a.product(&acted[u][j], &acted[v][i]);
                    for k in 0..n {
                        row_block[k][u * hd + v] = s[k].clone();
                        row_block[k][hd * hd + u * hd + v] = f[k].clone();
                    }
                }
            }
            rows.extend(row_block);
        }
    }
    let m = Matrix::from_rows(rows);
    let mut per_generator = Vec::with_capacity(hd);
    for g in 0..hd {
        let mut rhs = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let target = act.operators()[g].apply(&a.product(&a.basis_vec(i), &a.basis_vec(j)));
                rhs.extend(target);
            }
        }
        let witness = linalg::solve(&m, &rhs).map(|x| {
            let straight = (0..hd * hd)
                .filter(|&c| !x[c].is_zero())
                .map(|c| (c / hd, c % hd, x[c].clone()))
                .collect();
            let flipped = (0..hd * hd)
                .filter(|&c| !x[hd * hd + c].is_zero())
                .map(|c| (c / hd, c % hd, x[hd * hd + c].clone()))
                .collect();
            GeneralizedWitness { straight, flipped }
        });
        if let Some(w) = &witness {
            debug_assert!(witness_holds(a, act, g, w), "solver witness must re-substitute");
        }
        per_generator.push(witness);
    }
    GeneralizedActionReport { per_generator }
}

/// Direct substitution check of a witness on all basis pairs.
pub fn witness_holds(a: &Algebra, act: &Action, g: usize, w: &GeneralizedWitness) -> bool {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let ei = a.basis_vec(i);
            let ej = a.basis_vec(j);
            let lhs = act.operators()[g].apply(&a.product(&ei, &ej));
            let mut rhs = vec![Rational::zero(); n];
            for (u, v, c) in &w.straight {
                let term = a.product(&act.operators()[*u].apply(&ei), &act.operators()[*v].apply(&ej));
                for (t, x) in term.into_iter().enumerate() {
                    rhs[t] += c * x;
                }
            }
            for (u, v, c) in &w.flipped {
                let term = a.product(&act.operators()[*u].apply(&ej), &act.operators()[*v].apply(&ei));
                for (t, x) in term.into_iter().enumerate() {
                    rhs[t] += c * x;
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// A fixed action whose product rule provably admits no generalized-action
/// witness: the 2-dimensional algebra `F[γ]/(γ²)` acting on `F^4` with
/// `γ e_2 = γ e_3 = e_1`. The bilinear map `(a,b) -> γ(ab) = (a_2 b_2 +
/// a_3 b_3) e_1` lies outside the span of the four decomposable maps.
pub fn unsolvable_fixture() -> (ActionAlgebra, Algebra, Action) {
    let mut mult = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
    mult[0][0][0] = Rational::one();
    mult[0][1][1] = Rational::one();
    mult[1][0][1] = Rational::one();
    let h_alg = Algebra::new(2, mult, Some(vec![Rational::one(), Rational::zero()]))
        .expect("dual numbers are associative");
    let h = ActionAlgebra::new(h_alg, vec!["1".into(), "gamma".into()]).expect("unital");
    let a = Algebra::split_fields(4);
    let mut nil = Matrix::zeros(4, 4);
    nil.set(0, 1, Rational::one());
    nil.set(0, 2, Rational::one());
    let action = Action::new(&h, vec![Matrix::identity(4), nil]).expect("γ² = 0 makes this valid");
    (h, a, action)
}

/// Group action by automorphisms (on `G_0`) and anti-automorphisms (off
/// `G_0`), validated and packaged as an action of the group algebra.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub group: GroupData,
    pub action: Action,
}

pub fn gaction_to_generalized(
    group: &GroupData,
    a: &Algebra,
    assignment: &[(Matrix, bool)],
) -> Result<GroupAction, ActionError> {
    let n = group.order();
    if assignment.len() != n {
        return Err(ActionError::Shape("one operator per group element".into()));
    }
    for (g, (op, is_anti)) in assignment.iter().enumerate() {
        if *is_anti == group.in_g0(g) {
            return Err(ActionError::WrongMorphismType { element: g });
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = op.apply(&a.product(&a.basis_vec(i), &a.basis_vec(j)));
                let (x, y) = if *is_anti { (j, i) } else { (i, j) };
                let rhs = a.product(&op.apply(&a.basis_vec(x)), &op.apply(&a.basis_vec(y)));
                if lhs != rhs {
                    return Err(ActionError::NotHomomorphism { i, j });
                }
            }
        }
    }
    let fg = group_algebra(group);
    let action =
        Action::new(&fg.action_algebra, assignment.iter().map(|(m, _)| m.clone()).collect())?;
    let report = check_generalized_action(&fg.action_algebra, a, &action);
    if !report.all_solvable() {
        return Err(ActionError::PostconditionFailed(
            "group action admits no generalized-action witness".into(),
        ));
    }
    Ok(GroupAction { group: group.clone(), action })
}

// ---------------------------------------------------------------------------
// Grading / dual action duality
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DualAction {
    pub hopf: HopfData,
    pub action: Action,
}

/// The dual group Hopf algebra acting by projections onto homogeneous
/// components: `h_g` projects onto `A^{(g)}`.
pub fn duality_transform(x: &GradedAlgebra) -> DualAction {
    let hopf = dual_group_hopf(&x.group);
    let n = x.algebra.dim();
    let operators = (0..x.group.order())
        .map(|g| {
            let mut m = Matrix::zeros(n, n);
            for (i, &c) in x.component_of.iter().enumerate() {
                if c == g {
                    m.set(i, i, Rational::one());
                }
            }
            m
        })
        .collect();
    let action = Action::new(&hopf.action_algebra, operators)
        .expect("component projections form a dual-group action");
    DualAction { hopf, action }
}

/// Inverse of `duality_transform`: recovers the grading from an action of
/// the dual group Hopf algebra whose operators are a complete orthogonal
/// family of coordinate projections.
pub fn action_to_grading(
    group: &GroupData,
    a: &Algebra,
    act: &Action,
) -> Result<GradedAlgebra, ActionError> {
    let n = a.dim();
    if act.operators().len() != group.order() || act.algebra_dim() != n {
        return Err(ActionError::Shape("one operator per group element".into()));
    }
    let mut component_of = vec![usize::MAX; n];
    for (g, op) in act.operators().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let x = op.get(i, j);
                if i != j {
                    if !x.is_zero() {
                        return Err(ActionError::NotDiagonalizable(format!(
                            "operator {g} has off-diagonal entry at ({i}, {j})"
                        )));
                    }
                } else if x.is_one() {
                    if component_of[i] != usize::MAX {
                        return Err(ActionError::NotDiagonalizable(format!(
                            "basis vector {i} selected by two operators"
                        )));
                    }
                    component_of[i] = g;
                } else if !x.is_zero() {
                    return Err(ActionError::NotDiagonalizable(format!(
                        "operator {g} has non-idempotent diagonal entry at {i}"
                    )));
                }
            }
        }
    }
    if let Some(i) = component_of.iter().position(|&c| c == usize::MAX) {
        return Err(ActionError::NotDiagonalizable(format!(
            "basis vector {i} selected by no operator"
        )));
    }
    GradedAlgebra::new(a.clone(), group.clone(), component_of)
}

// ---------------------------------------------------------------------------
// Integrals and equivariant projections
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Integral {
    /// Canonical representative: first nonzero coordinate 1, then rescaled
    /// to counit value 1 when that value is nonzero.
    pub element: Vec<Rational>,
    pub counit_value: Rational,
    pub semisimple_hint: bool,
    /// `Some(true)` when `ε(t) = 1` and the tensor identity
    /// `t_{(1)}St_{(3)} ⊗ t_{(2)} = 1 ⊗ t` was verified.
    pub tensor_identity: Option<bool>,
}

/// Solves `h t = ε(h) t` for all basis `h` exactly.
pub fn left_integral(h: &HopfData) -> Result<Integral, ActionError> {
    let d = h.dim();
    let alg = &h.action_algebra.algebra;
    let mut stacked = Vec::with_capacity(d * d);
    for i in 0..d {
        let li = alg.left_mult(&alg.basis_vec(i));
        for r in 0..d {
            let mut row: Vec<Rational> = (0..d).map(|c| li.get(r, c).clone()).collect();
            if r < d {
                row[r] -= &h.counit[i];
            }
            stacked.push(row);
        }
    }
    let ns = linalg::nullspace(&Matrix::from_rows(stacked));
    let mut t = ns.into_iter().next().ok_or(ActionError::NoIntegral)?;
    let lead = t.iter().find(|x| !x.is_zero()).expect("nullspace vectors are nonzero").clone();
    for x in &mut t {
        *x /= &lead;
    }
    let mut eps = h.counit_of(&t);
    let semisimple = !eps.is_zero();
    if semisimple {
        for x in &mut t {
            *x /= &eps;
        }
        eps = Rational::one();
    }
    // Re-verify the integral property post hoc.
    for i in 0..d {
        let ht = alg.product(&alg.basis_vec(i), &t);
        let expected: Vec<Rational> = t.iter().map(|x| x * &h.counit[i]).collect();
        if ht != expected {
            return Err(ActionError::PostconditionFailed(format!(
                "integral property fails for basis element {}",
                h.action_algebra.labels[i]
            )));
        }
    }
    let tensor_identity = if semisimple {
        let triple = h.double_comul_of(&t);
        let unit = alg.unit().expect("unital");
        // W[u][v] = Σ_{a,b,c} T[a][b][c] (γ_a S(γ_c))_u with v = b.
        let mut w = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let coeff = triple[a].get(b, c);
                    if coeff.is_zero() {
                        continue;
                    }
                    let sc = h.antipode_of(&alg.basis_vec(c));
                    let prod = alg.product(&alg.basis_vec(a), &sc);
                    for (u, x) in prod.into_iter().enumerate() {
                        if !x.is_zero() {
                            let cur = w.get(u, b).clone();
                            w.set(u, b, cur + coeff * x);
                        }
                    }
                }
            }
        }
        let mut expected = Matrix::zeros(d, d);
        for (u, a) in unit.iter().enumerate() {
            for (v, b) in t.iter().enumerate() {
                expected.set(u, v, a * b);
            }
        }
        Some(w == expected)
    } else {
        None
    };
    Ok(Integral { element: t, counit_value: eps, semisimple_hint: semisimple, tensor_identity })
}

/// Equivariant refinement `π̃(a) = t_{(1)} π((St_{(2)})a)` of a bimodule
/// projection onto an invariant ideal, using the left integral of a
/// semisimple Hopf algebra. All postconditions (idempotence, bimodule
/// property, image, equivariance) are re-verified.
pub fn maschke_projection(
    h: &HopfData,
    act: &Action,
    a: &Algebra,
    i1: &Subspace,
    proj: &Matrix,
) -> Result<Matrix, ActionError> {
    let n = a.dim();
    if act.algebra_dim() != n || proj.nrows() != n || proj.ncols() != n {
        return Err(ActionError::Shape("action/projection dimensions".into()));
    }
    // π is a bimodule projection onto i1: commutes with all left and right
    // multiplications, fixes i1, and maps into i1.
    for i in 0..n {
        let l = a.left_mult(&a.basis_vec(i));
        let r = a.right_mult(&a.basis_vec(i));
        if proj.mul(&l) != l.mul(proj) || proj.mul(&r) != r.mul(proj) {
            return Err(ActionError::NotBimoduleProjection(format!(
                "does not commute with multiplication by basis element {i}"
            )));
        }
        if !i1.contains(&proj.apply(&a.basis_vec(i))) {
            return Err(ActionError::NotBimoduleProjection("image not inside the ideal".into()));
        }
    }
    for row in i1.rows() {
        if proj.apply(row) != *row {
            return Err(ActionError::NotBimoduleProjection("not the identity on the ideal".into()));
        }
    }
    for (op_index, op) in act.operators().iter().enumerate() {
        for row in i1.rows() {
            if !i1.contains(&op.apply(row)) {
                return Err(ActionError::NotInvariant { op_index });
            }
        }
    }
    let t = left_integral(h)?;
    if !t.semisimple_hint {
        return Err(ActionError::NotSemisimple);
    }
    let dt = h.comul_of(&t.element);
    let d = h.dim();
    let sops: Vec<Matrix> = (0..d)
        .map(|j| act.operator_of(&h.antipode_of(&h.action_algebra.algebra.basis_vec(j))))
        .collect();
    let mut tilde = Matrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            let c = dt.get(i, j);
            if !c.is_zero() {
                tilde = tilde.add(&act.operators()[i].mul(proj).mul(&sops[j]).scale(c));
            }
        }
    }
    // Postconditions.
    if tilde.mul(&tilde) != tilde {
        return Err(ActionError::PostconditionFailed("averaged map is not idempotent".into()));
    }
    for i in 0..n {
        let l = a.left_mult(&a.basis_vec(i));
        let r = a.right_mult(&a.basis_vec(i));
        if tilde.mul(&l) != l.mul(&tilde) || tilde.mul(&r) != r.mul(&tilde) {
            return Err(ActionError::PostconditionFailed("averaged map is not a bimodule map".into()));
        }
    }
    let image = Subspace::full(n).apply_map(&tilde);
    if image != *i1 {
        return Err(ActionError::PostconditionFailed("image differs from the ideal".into()));
    }
    for row in i1.rows() {
        if tilde.apply(row) != *row {
            return Err(ActionError::PostconditionFailed("not the identity on the ideal".into()));
        }
    }
    for op in act.operators() {
        if op.mul(&tilde) != tilde.mul(op) {
            return Err(ActionError::PostconditionFailed("averaged map is not equivariant".into()));
        }
    }
    Ok(tilde)
}

/// Group-averaged comparison projection `(1/|G|) Σ_g ρ(g) π ρ(g^{-1})`.
pub fn group_average_projection(group: &GroupData, act: &Action, proj: &Matrix) -> Matrix {
    let n = proj.nrows();
    let mut sum = Matrix::zeros(n, n);
    for g in 0..group.order() {
        sum = sum.add(&act.operators()[g].mul(proj).mul(&act.operators()[group.inv(g)]));
    }
    sum.scale(&crate::rat::rat(1, group.order() as i64))
}

// ---------------------------------------------------------------------------
// The 4-dimensional small Hopf algebra and its self-dual action
// ---------------------------------------------------------------------------

/// The 4-dimensional Hopf algebra on basis `(1, c, b, cb)` with `c² = 1`,
/// `b² = 0`, `bc = −cb`, together with its dual acting on it by
/// `g·h = g(h_{(2)}) h_{(1)}`.
#[derive(Debug, Clone)]
pub struct SweedlerScenario {
    pub hopf: HopfData,
    pub dual: HopfData,
    pub action: Action,
}

pub fn sweedler_scenario() -> SweedlerScenario {
    let one = || Rational::one();
    let z = Rational::zero;
    // Basis order 1, c, b, cb.
    let mut mult = vec![vec![vec![z(); 4]; 4]; 4];
    let set = |m: &mut Vec<Vec<Vec<Rational>>>, i: usize, j: usize, k: usize, v: i64| {
        m[i][j][k] = crate::rat::rat_int(v);
    };
    for j in 0..4 {
        set(&mut mult, 0, j, j, 1);
        if j > 0 {
            set(&mut mult, j, 0, j, 1);
        }
    }
    set(&mut mult, 1, 1, 0, 1); // c·c = 1
    set(&mut mult, 1, 2, 3, 1); // c·b = cb
    set(&mut mult, 1, 3, 2, 1); // c·cb = b
    set(&mut mult, 2, 1, 3, -1); // b·c = −cb
    set(&mut mult, 3, 1, 2, -1); // cb·c = −b
    // b·b = b·cb = cb·b = cb·cb = 0.
    let algebra = Algebra::new(4, mult, Some(vec![one(), z(), z(), z()]))
        .expect("the 4-dimensional relations are associative");
    let aa = ActionAlgebra::new(
        algebra,
        vec!["1".into(), "c".into(), "b".into(), "cb".into()],
    )
    .expect("unital");
    let mut comul = vec![Matrix::zeros(4, 4); 4];
    comul[0].set(0, 0, one()); // Δ1 = 1⊗1
    comul[1].set(1, 1, one()); // Δc = c⊗c
    comul[2].set(1, 2, one()); // Δb = c⊗b + b⊗1
    comul[2].set(2, 0, one());
    comul[3].set(0, 3, one()); // Δ(cb) = 1⊗cb + cb⊗c
    comul[3].set(3, 1, one());
    let counit = vec![one(), one(), z(), z()];
    let mut antipode = Matrix::zeros(4, 4);
    antipode.set(0, 0, one()); // S(1) = 1
    antipode.set(1, 1, one()); // S(c) = c
    antipode.set(3, 2, -one()); // S(b) = −cb
    antipode.set(2, 3, one()); // S(cb) = b
    let hopf = HopfData::new(aa, comul, counit, antipode).expect("shapes");
    let dual = hopf_dual(&hopf).expect("dualizes");
    // g_x sends γ_j to Σ_a Δ(γ_j)[a][x] γ_a.
    let operators = (0..4)
        .map(|x| {
            let mut m = Matrix::zeros(4, 4);
            for j in 0..4 {
                for a in 0..4 {
                    m.set(a, j, hopf.comul[j].get(a, x).clone());
                }
            }
            m
        })
        .collect();
    let action = Action::new(&dual.action_algebra, operators)
        .expect("the dual acts through the comultiplication");
    SweedlerScenario { hopf, dual, action }
}

// ---------------------------------------------------------------------------
// Packaged action kinds
// ---------------------------------------------------------------------------

/// The action kinds the decomposition machinery can average over, plus the
/// generalized kind that it cannot.
#[derive(Debug, Clone)]
pub enum ActionData {
    Trivial,
    Group(GroupAction),
    Hopf { hopf: HopfData, action: Action },
    Generalized { algebra: ActionAlgebra, action: Action },
}

impl ActionData {
    /// All operators to enforce invariance under (empty for the trivial
    /// action).
    pub fn operators(&self) -> &[Matrix] {
        match self {
            ActionData::Trivial => &[],
            ActionData::Group(g) => g.action.operators(),
            ActionData::Hopf { action, .. } => action.operators(),
            ActionData::Generalized { action, .. } => action.operators(),
        }
    }

    /// The acting algebra together with one operator per basis element, on a
    /// module of dimension `adim`; the trivial kind becomes the identity
    /// operator of a one-dimensional acting algebra.
    pub fn realize(&self, adim: usize) -> Result<(ActionAlgebra, Action), ActionError> {
        let found = match self {
            ActionData::Trivial => {
                let h = trivial_hopf().action_algebra;
                let act = Action::new(&h, vec![Matrix::identity(adim)])?;
                return Ok((h, act));
            }
            ActionData::Group(g) => (group_algebra(&g.group).action_algebra, g.action.clone()),
            ActionData::Hopf { hopf, action } => {
                (hopf.action_algebra.clone(), action.clone())
            }
            ActionData::Generalized { algebra, action } => (algebra.clone(), action.clone()),
        };
        if found.1.algebra_dim() != adim {
            return Err(ActionError::Shape(
                "the packaged operators act on a module of a different dimension".into(),
            ));
        }
        Ok(found)
    }
}
