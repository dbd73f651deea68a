//! Finite-dimensional algebras, Lie brackets and Poisson structures.
//!
//! Structure constants are stored sparsely per basis pair. Axiom validation
//! is an `O(dim^3)` sweep over basis triples reporting every violation with
//! its witnessing triple; parsing runs it on every load unless explicitly
//! disabled. Derived subspaces (center, Lie center, commutators,
//! derivations) come out of exact kernel and row-reduction computations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rref_dense, SparseRationalMatrix};
use crate::scalar::{format_rational, Scalar};

/// Sparse linear combination of basis vectors, kept in canonical form:
/// sorted indices, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    coeffs: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(i: usize) -> Self {
        Element::term(i, crate::scalar::int(1))
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut e = Element::default();
        e.add_term(i, c);
        e
    }

    pub fn from_dense(coeffs: &[Scalar]) -> Self {
        let mut e = Element::default();
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(i, c.clone());
        }
        e
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.coeffs {
            self.add_term(i, c * factor);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (&i, c) in &other.coeffs {
            self.add_term(i, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (&i, c) in &other.coeffs {
            self.add_term(i, -c.clone());
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Element {
        let mut out = Element::default();
        out.add_scaled(self, factor);
        out
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| format!("{}*v{}", format_rational(c), i))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which axiom a validation violation refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    Associativity,
    UnitLeft,
    UnitRight,
    Antisymmetry,
    Jacobi,
    Leibniz,
    BimoduleLeftAssociativity,
    BimoduleRightAssociativity,
    BimoduleCommutation,
    BimoduleUnit,
    BracketLeftLeibniz,
    BracketRightLeibniz,
    LieModuleCompatibility,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Associativity => "associativity",
            Axiom::UnitLeft => "left unit",
            Axiom::UnitRight => "right unit",
            Axiom::Antisymmetry => "bracket antisymmetry",
            Axiom::Jacobi => "Jacobi identity",
            Axiom::Leibniz => "Leibniz rule",
            Axiom::BimoduleLeftAssociativity => "left module associativity",
            Axiom::BimoduleRightAssociativity => "right module associativity",
            Axiom::BimoduleCommutation => "left/right action commutation",
            Axiom::BimoduleUnit => "module unit",
            Axiom::BracketLeftLeibniz => "bracket/left-action compatibility",
            Axiom::BracketRightLeibniz => "bracket/right-action compatibility",
            Axiom::LieModuleCompatibility => "Lie module compatibility",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub axiom: Axiom,
    /// Witnessing basis indices, in the order the axiom quantifies them.
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at basis indices {:?}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::AxiomViolations(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all axioms hold");
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Associative unital algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    dim: usize,
    basis_labels: Vec<String>,
    mult: Vec<Vec<Element>>,
    unit: Element,
}

impl FiniteDimAlgebra {
    /// Structural construction: checks shapes and index ranges, not axioms.
    /// The unit must be designated explicitly; it is verified by
    /// [`validate`](Self::validate), never inferred.
    pub fn new(
        dim: usize,
        basis_labels: Vec<String>,
        mult: Vec<Vec<Element>>,
        unit: Element,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimensionalAlgebra);
        }
        if basis_labels.len() != dim {
            return Err(Error::Structural(format!(
                "{} basis labels for dimension {}",
                basis_labels.len(),
                dim
            )));
        }
        if mult.len() != dim || mult.iter().any(|row| row.len() != dim) {
            return Err(Error::Structural(
                "multiplication table must be dim x dim".into(),
            ));
        }
        for row in &mult {
            for e in row {
                check_element_range(e, dim, "multiplication table")?;
            }
        }
        check_element_range(&unit, dim, "unit vector")?;
        if unit.is_zero() {
            return Err(Error::Structural("unit vector is zero".into()));
        }
        Ok(FiniteDimAlgebra {
            dim,
            basis_labels,
            mult,
            unit,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Product of two basis vectors.
    pub fn mult_basis(&self, i: usize, j: usize) -> &Element {
        &self.mult[i][j]
    }

    /// Bilinear product of arbitrary elements.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.mult[i][j], &(a * b));
            }
        }
        out
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.multiply(x, y);
        out.sub_assign(&self.multiply(y, x));
        out
    }

    /// Checks associativity and both unit laws on all basis triples.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let mut lhs = Element::zero();
                    for (c, coeff) in self.mult[i][j].iter() {
                        lhs.add_scaled(&self.mult[c][k], coeff);
                    }
                    let mut rhs = Element::zero();
                    for (c, coeff) in self.mult[j][k].iter() {
                        rhs.add_scaled(&self.mult[i][c], coeff);
                    }
                    lhs.sub_assign(&rhs);
                    if !lhs.is_zero() {
                        out.push(Violation {
                            axiom: Axiom::Associativity,
                            witness: vec![i, j, k],
                        });
                    }
                }
            }
        }
        for i in 0..self.dim {
            if self.multiply(&self.unit, &Element::basis(i)) != Element::basis(i) {
                out.push(Violation {
                    axiom: Axiom::UnitLeft,
                    witness: vec![i],
                });
            }
            if self.multiply(&Element::basis(i), &self.unit) != Element::basis(i) {
                out.push(Violation {
                    axiom: Axiom::UnitRight,
                    witness: vec![i],
                });
            }
        }
        out
    }
}

fn check_element_range(e: &Element, dim: usize, context: &'static str) -> Result<()> {
    if let Some(max) = e.max_index() {
        if max >= dim {
            return Err(Error::IndexOutOfRange {
                index: max,
                bound: dim,
                context,
            });
        }
    }
    Ok(())
}

/// Lie bracket structure constants `{v_i, v_j}`.
#[derive(Clone, Debug)]
pub struct LieBracketTable {
    bracket: Vec<Vec<Element>>,
}

impl LieBracketTable {
    pub fn new(dim: usize, bracket: Vec<Vec<Element>>) -> Result<Self> {
        if bracket.len() != dim || bracket.iter().any(|row| row.len() != dim) {
            return Err(Error::Structural("bracket table must be dim x dim".into()));
        }
        for row in &bracket {
            for e in row {
                check_element_range(e, dim, "bracket table")?;
            }
        }
        Ok(LieBracketTable { bracket })
    }

    pub fn trivial(dim: usize) -> Self {
        LieBracketTable {
            bracket: vec![vec![Element::zero(); dim]; dim],
        }
    }

    /// The scaled commutator bracket `{x, y} = lambda (xy - yx)`.
    pub fn scaled_commutator(algebra: &FiniteDimAlgebra, lambda: &Scalar) -> Self {
        let dim = algebra.dim();
        let mut bracket = vec![vec![Element::zero(); dim]; dim];
        for (i, row) in bracket.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = algebra
                    .commutator(&Element::basis(i), &Element::basis(j))
                    .scaled(lambda);
            }
        }
        LieBracketTable { bracket }
    }

    pub fn dim(&self) -> usize {
        self.bracket.len()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Element {
        &self.bracket[i][j]
    }

    /// Bilinear bracket of arbitrary elements.
    pub fn apply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.bracket[i][j], &(a * b));
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.bracket.iter().flatten().all(Element::is_zero)
    }

    /// Checks antisymmetry (including the diagonal) and Jacobi on basis
    /// triples.
    pub fn validate(&self) -> Vec<Violation> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let mut sum = self.bracket[i][j].clone();
                sum.add_assign(&self.bracket[j][i]);
                if !sum.is_zero() {
                    out.push(Violation {
                        axiom: Axiom::Antisymmetry,
                        witness: vec![i, j],
                    });
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    // {{i,j},k} + {{j,k},i} + {{k,i},j} = 0
                    let mut acc = Element::zero();
                    for (pair, last) in [((i, j), k), ((j, k), i), ((k, i), j)] {
                        for (c, coeff) in self.bracket[pair.0][pair.1].iter() {
                            acc.add_scaled(&self.bracket[c][last], coeff);
                        }
                    }
                    if !acc.is_zero() {
                        out.push(Violation {
                            axiom: Axiom::Jacobi,
                            witness: vec![i, j, k],
                        });
                    }
                }
            }
        }
        out
    }
}

/// A Poisson algebra: associative product plus compatible Lie bracket, with a
/// fixed total order on the basis used for PBW normal forms. The order
/// defaults to the input order of the basis.
#[derive(Clone, Debug)]
pub struct PoissonAlgebra {
    name: String,
    algebra: FiniteDimAlgebra,
    bracket: LieBracketTable,
    /// `basis_order[k]` is the basis index at position `k` of the PBW order.
    basis_order: Vec<usize>,
}

impl PoissonAlgebra {
    pub fn new(algebra: FiniteDimAlgebra, bracket: LieBracketTable) -> Result<Self> {
        if bracket.dim() != algebra.dim() {
            return Err(Error::Structural(format!(
                "bracket table of dimension {} on an algebra of dimension {}",
                bracket.dim(),
                algebra.dim()
            )));
        }
        let basis_order = (0..algebra.dim()).collect();
        Ok(PoissonAlgebra {
            name: "unnamed".into(),
            algebra,
            bracket,
            basis_order,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_basis_order(mut self, order: Vec<usize>) -> Result<Self> {
        let dim = self.dim();
        let mut seen = vec![false; dim];
        if order.len() != dim {
            return Err(Error::Structural("basis order must be a permutation".into()));
        }
        for &i in &order {
            if i >= dim || seen[i] {
                return Err(Error::Structural("basis order must be a permutation".into()));
            }
            seen[i] = true;
        }
        self.basis_order = order;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        &self.algebra
    }

    pub fn bracket(&self) -> &LieBracketTable {
        &self.bracket
    }

    /// Position of basis index `i` in the PBW total order.
    pub fn order_position(&self, i: usize) -> usize {
        self.basis_order.iter().position(|&b| b == i).unwrap()
    }

    pub fn basis_order(&self) -> &[usize] {
        &self.basis_order
    }
}

/// Validates every Poisson axiom, reporting each violation with its
/// witnessing basis triple. An empty report means the input is a Poisson
/// algebra.
pub fn validate_poisson(p: &PoissonAlgebra) -> ValidationReport {
    let mut violations = p.algebra.validate();
    violations.extend(p.bracket.validate());
    let dim = p.dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                // {v_i, v_j v_k} = {v_i, v_j} v_k + v_j {v_i, v_k}
                let lhs = p
                    .bracket
                    .apply(&Element::basis(i), p.algebra.mult_basis(j, k));
                let mut rhs = p
                    .algebra
                    .multiply(p.bracket.bracket_basis(i, j), &Element::basis(k));
                rhs.add_assign(
                    &p.algebra
                        .multiply(&Element::basis(j), p.bracket.bracket_basis(i, k)),
                );
                if lhs != rhs {
                    violations.push(Violation {
                        axiom: Axiom::Leibniz,
                        witness: vec![i, j, k],
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// The standard Poisson algebra `(A, ., lambda[-,-])`.
pub fn standard_poisson(algebra: FiniteDimAlgebra, lambda: &Scalar) -> PoissonAlgebra {
    let bracket = LieBracketTable::scaled_commutator(&algebra, lambda);
    PoissonAlgebra::new(algebra, bracket).expect("tables share the algebra dimension")
}

/// The Poisson algebra with trivial bracket on `A`.
pub fn trivial_poisson(algebra: FiniteDimAlgebra) -> PoissonAlgebra {
    let bracket = LieBracketTable::trivial(algebra.dim());
    PoissonAlgebra::new(algebra, bracket).expect("tables share the algebra dimension")
}

/// A finite quiver; the path-algebra builder requires it acyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn validate(&self) -> Result<()> {
        for &(s, t) in &self.arrows {
            let bound = self.vertices;
            if s >= bound || t >= bound {
                return Err(Error::IndexOutOfRange {
                    index: s.max(t),
                    bound,
                    context: "quiver arrow",
                });
            }
        }
        Ok(())
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm over the vertex set.
        let mut indegree = vec![0usize; self.vertices];
        for &(_, t) in &self.arrows {
            indegree[t] += 1;
        }
        let mut queue: Vec<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        seen == self.vertices
    }
}

/// Path algebra of an acyclic quiver. The basis consists of all paths,
/// length-0 vertex idempotents first, then paths ordered by length and
/// lexicographic arrow sequence. The product is concatenation when
/// composable and zero otherwise; the unit is the sum of idempotents.
pub fn path_algebra(quiver: &Quiver) -> Result<FiniteDimAlgebra> {
    quiver.validate()?;
    if quiver.vertices == 0 {
        return Err(Error::ZeroDimensionalAlgebra);
    }
    if !quiver.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }

    // A path is (source vertex, arrow index sequence); empty = idempotent.
    let mut paths: Vec<(usize, Vec<usize>)> = (0..quiver.vertices).map(|v| (v, vec![])).collect();
    let target = |p: &(usize, Vec<usize>)| -> usize {
        p.1.last().map_or(p.0, |&a| quiver.arrows[a].1)
    };
    let mut frontier: Vec<(usize, Vec<usize>)> = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = target(p);
            for (a, &(s, _)) in quiver.arrows.iter().enumerate() {
                if s == end {
                    let mut word = p.1.clone();
                    word.push(a);
                    next.push((p.0, word));
                }
            }
        }
        next.sort();
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    paths[quiver.vertices..].sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));

    let index: BTreeMap<(usize, Vec<usize>), usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let labels: Vec<String> = paths
        .iter()
        .map(|p| {
            if p.1.is_empty() {
                format!("e{}", p.0)
            } else {
                p.1.iter()
                    .map(|a| format!("a{a}"))
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect();

    let dim = paths.len();
    let mut mult = vec![vec![Element::zero(); dim]; dim];
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            if target(p) == q.0 {
                let mut word = p.1.clone();
                word.extend_from_slice(&q.1);
                let k = index[&(p.0, word)];
                mult[i][j] = Element::basis(k);
            }
        }
    }
    let mut unit = Element::zero();
    for v in 0..quiver.vertices {
        unit.add_term(v, crate::scalar::int(1));
    }
    FiniteDimAlgebra::new(dim, labels, mult, unit)
}

/// Full matrix algebra on `n x n` matrices with the elementary-matrix basis
/// `E_pq`, ordered row-major.
pub fn matrix_algebra(n: usize) -> Result<FiniteDimAlgebra> {
    if n == 0 {
        return Err(Error::ZeroDimensionalAlgebra);
    }
    let dim = n * n;
    let idx = |p: usize, q: usize| p * n + q;
    let labels: Vec<String> = (0..n)
        .flat_map(|p| (0..n).map(move |q| format!("E{}{}", p + 1, q + 1)))
        .collect();
    let mut mult = vec![vec![Element::zero(); dim]; dim];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if q == r {
                        mult[idx(p, q)][idx(r, s)] = Element::basis(idx(p, s));
                    }
                }
            }
        }
    }
    let mut unit = Element::zero();
    for p in 0..n {
        unit.add_term(idx(p, p), crate::scalar::int(1));
    }
    FiniteDimAlgebra::new(dim, labels, mult, unit)
}

/// Basis of the associative center `{z : z v_i = v_i z for all i}`.
pub fn center(algebra: &FiniteDimAlgebra) -> Vec<Element> {
    let dim = algebra.dim();
    let mut m = SparseRationalMatrix::raw(dim * dim, dim);
    for j in 0..dim {
        for i in 0..dim {
            let mut diff = algebra.mult_basis(j, i).clone();
            diff.sub_assign(algebra.mult_basis(i, j));
            for (c, v) in diff.iter() {
                m.add(i * dim + c, j, v.clone());
            }
        }
    }
    m.kernel_basis().into_iter().map(|v| Element::from_dense(&v)).collect()
}

/// Basis of the Lie center `{z : {z, v_i} = 0 for all i}`.
pub fn lie_center(p: &PoissonAlgebra) -> Vec<Element> {
    let dim = p.dim();
    let mut m = SparseRationalMatrix::raw(dim * dim, dim);
    for j in 0..dim {
        for i in 0..dim {
            for (c, v) in p.bracket().bracket_basis(j, i).iter() {
                m.add(i * dim + c, j, v.clone());
            }
        }
    }
    m.kernel_basis().into_iter().map(|v| Element::from_dense(&v)).collect()
}

/// Basis of the commutator subspace `span{v_i v_j - v_j v_i}`.
pub fn commutator_subspace(algebra: &FiniteDimAlgebra) -> Vec<Element> {
    let dim = algebra.dim();
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut diff = algebra.mult_basis(i, j).clone();
            diff.sub_assign(algebra.mult_basis(j, i));
            if !diff.is_zero() {
                rows.push(diff.to_dense(dim));
            }
        }
    }
    rref_dense(&mut rows);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows.iter().map(|r| Element::from_dense(r)).collect()
}

/// Flat index of the linear map coefficient `f(v_a) = sum coeff * v_out`
/// inside `Hom(A, A)`: `a * dim + out`.
fn hom_index(a: usize, out: usize, dim: usize) -> usize {
    a * dim + out
}

/// Basis of the associative derivation space, i.e. the kernel of the
/// Hochschild coboundary on `Hom(A, A)`. Vectors are flat per [`hom_index`].
pub fn derivations(algebra: &FiniteDimAlgebra) -> Vec<Vec<Scalar>> {
    let dim = algebra.dim();
    // Constraint rows: f(v_i v_j) - f(v_i) v_j - v_i f(v_j) = 0, one row per
    // (i, j, output coordinate).
    let mut m = SparseRationalMatrix::raw(dim * dim * dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let row_base = (i * dim + j) * dim;
            for (c, v) in algebra.mult_basis(i, j).iter() {
                for out in 0..dim {
                    m.add(row_base + out, hom_index(c, out, dim), v.clone());
                }
            }
            for out in 0..dim {
                for (c, v) in algebra.mult_basis(out, j).iter() {
                    m.add(row_base + c, hom_index(i, out, dim), -v.clone());
                }
                for (c, v) in algebra.mult_basis(i, out).iter() {
                    m.add(row_base + c, hom_index(j, out, dim), -v.clone());
                }
            }
        }
    }
    m.kernel_basis()
}

/// Basis of the inner derivations `a -> am - ma`, the image of the degree-0
/// Hochschild coboundary.
pub fn inner_derivations(algebra: &FiniteDimAlgebra) -> Vec<Vec<Scalar>> {
    let dim = algebra.dim();
    let mut m = SparseRationalMatrix::raw(dim * dim, dim);
    for k in 0..dim {
        for a in 0..dim {
            let mut diff = algebra.mult_basis(a, k).clone();
            diff.sub_assign(algebra.mult_basis(k, a));
            for (out, v) in diff.iter() {
                m.add(hom_index(a, out, dim), k, v.clone());
            }
        }
    }
    m.column_space_basis()
}

/// A finite-dimensional quasi-Poisson module: a bimodule with an additional
/// Lie action `{-,-}_*`. Action tables are indexed `[algebra basis][module
/// basis]`.
#[derive(Clone, Debug)]
pub struct QuasiPoissonModule {
    dim: usize,
    left: Vec<Vec<Element>>,
    right: Vec<Vec<Element>>,
    lie: Vec<Vec<Element>>,
}

impl QuasiPoissonModule {
    pub fn new(
        algebra_dim: usize,
        dim: usize,
        left: Vec<Vec<Element>>,
        right: Vec<Vec<Element>>,
        lie: Vec<Vec<Element>>,
    ) -> Result<Self> {
        for (name, table) in [("left", &left), ("right", &right), ("lie", &lie)] {
            if table.len() != algebra_dim || table.iter().any(|row| row.len() != dim) {
                return Err(Error::Structural(format!(
                    "{name} action table must be (algebra dim) x (module dim)"
                )));
            }
            for row in table {
                for e in row {
                    check_element_range(e, dim, "module action table")?;
                }
            }
        }
        Ok(QuasiPoissonModule {
            dim,
            left,
            right,
            lie,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_basis(&self, alg: usize, m: usize) -> &Element {
        &self.left[alg][m]
    }

    pub fn right_basis(&self, alg: usize, m: usize) -> &Element {
        &self.right[alg][m]
    }

    pub fn lie_basis(&self, alg: usize, m: usize) -> &Element {
        &self.lie[alg][m]
    }

    pub fn left_act(&self, alg: &Element, m: &Element) -> Element {
        apply_table(&self.left, alg, m)
    }

    pub fn right_act(&self, alg: &Element, m: &Element) -> Element {
        apply_table(&self.right, alg, m)
    }

    pub fn lie_act(&self, alg: &Element, m: &Element) -> Element {
        apply_table(&self.lie, alg, m)
    }

    /// Checks the bimodule axioms and the three bracket compatibilities on
    /// all basis triples.
    pub fn validate(&self, p: &PoissonAlgebra) -> Vec<Violation> {
        let mut out = Vec::new();
        let adim = p.dim();
        let unit = p.algebra().unit();
        for m in 0..self.dim {
            let e = Element::basis(m);
            if self.left_act(unit, &e) != e || self.right_act(unit, &e) != e {
                out.push(Violation {
                    axiom: Axiom::BimoduleUnit,
                    witness: vec![m],
                });
            }
        }
        for i in 0..adim {
            for j in 0..adim {
                for m in 0..self.dim {
                    let em = Element::basis(m);
                    let prod = p.algebra().mult_basis(i, j);
                    let bracket = p.bracket().bracket_basis(i, j);

                    // (v_i v_j) m = v_i (v_j m)
                    let lhs = self.left_act(prod, &em);
                    let rhs = self.left_act(&Element::basis(i), &self.left[j][m]);
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: Axiom::BimoduleLeftAssociativity,
                            witness: vec![i, j, m],
                        });
                    }

                    // m (v_i v_j) = (m v_i) v_j
                    let lhs = self.right_act(prod, &em);
                    let rhs = self.right_act(&Element::basis(j), &self.right[i][m]);
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: Axiom::BimoduleRightAssociativity,
                            witness: vec![i, j, m],
                        });
                    }

                    // (v_i m) v_j = v_i (m v_j)
                    let lhs = self.right_act(&Element::basis(j), &self.left[i][m]);
                    let rhs = self.left_act(&Element::basis(i), &self.right[j][m]);
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: Axiom::BimoduleCommutation,
                            witness: vec![i, j, m],
                        });
                    }

                    // {v_i, v_j m} = {v_i, v_j} m + v_j {v_i, m}
                    let lhs = self.lie_act(&Element::basis(i), &self.left[j][m]);
                    let mut rhs = self.left_act(bracket, &em);
                    rhs.add_assign(&self.left_act(&Element::basis(j), &self.lie[i][m]));
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: Axiom::BracketLeftLeibniz,
                            witness: vec![i, j, m],
                        });
                    }

                    // {v_i, m v_j} = m {v_i, v_j} + {v_i, m} v_j
                    let lhs = self.lie_act(&Element::basis(i), &self.right[j][m]);
                    let mut rhs = self.right_act(bracket, &em);
                    rhs.add_assign(&self.right_act(&Element::basis(j), &self.lie[i][m]));
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: Axiom::BracketRightLeibniz,
                            witness: vec![i, j, m],
                        });
                    }

                    // {{v_i, v_j}, m} = {v_i, {v_j, m}} - {v_j, {v_i, m}}
                    let lhs = self.lie_act(bracket, &em);
                    let mut rhs = self.lie_act(&Element::basis(i), &self.lie[j][m]);
                    rhs.sub_assign(&self.lie_act(&Element::basis(j), &self.lie[i][m]));
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: Axiom::LieModuleCompatibility,
                            witness: vec![i, j, m],
                        });
                    }
                }
            }
        }
        out
    }
}

fn apply_table(table: &[Vec<Element>], alg: &Element, m: &Element) -> Element {
    let mut out = Element::zero();
    for (i, a) in alg.iter() {
        for (k, c) in m.iter() {
            out.add_scaled(&table[i][k], &(a * c));
        }
    }
    out
}

/// The regular bimodule `A` with `{-,-}_* = {-,-}`: every Poisson algebra is
/// a quasi-Poisson module over itself.
pub fn self_module(p: &PoissonAlgebra) -> QuasiPoissonModule {
    let dim = p.dim();
    let mut left = vec![vec![Element::zero(); dim]; dim];
    let mut right = vec![vec![Element::zero(); dim]; dim];
    let mut lie = vec![vec![Element::zero(); dim]; dim];
    for i in 0..dim {
        for m in 0..dim {
            left[i][m] = p.algebra().mult_basis(i, m).clone();
            right[i][m] = p.algebra().mult_basis(m, i).clone();
            lie[i][m] = p.bracket().bracket_basis(i, m).clone();
        }
    }
    QuasiPoissonModule::new(dim, dim, left, right, lie).expect("tables are dimension-consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn a2_quiver() -> Quiver {
        Quiver {
            vertices: 2,
            arrows: vec![(0, 1)],
        }
    }

    #[test]
    fn path_algebra_point_is_ground_field() {
        let a = path_algebra(&Quiver {
            vertices: 1,
            arrows: vec![],
        })
        .unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.validate().is_empty());
    }

    #[test]
    fn path_algebra_a2_structure() {
        let a = path_algebra(&a2_quiver()).unwrap();
        assert_eq!(a.dim(), 3);
        // Basis order: e0, e1, arrow.
        assert_eq!(a.mult_basis(0, 0), &Element::basis(0));
        assert_eq!(a.mult_basis(1, 1), &Element::basis(1));
        assert_eq!(a.mult_basis(0, 1), &Element::zero());
        // e_1 alpha = alpha e_2 = alpha, alpha e_1 = e_2 alpha = 0 in the
        // 1-based notation: source idempotent acts on the left.
        assert_eq!(a.mult_basis(0, 2), &Element::basis(2));
        assert_eq!(a.mult_basis(2, 1), &Element::basis(2));
        assert_eq!(a.mult_basis(2, 0), &Element::zero());
        assert_eq!(a.mult_basis(1, 2), &Element::zero());
        assert!(a.validate().is_empty());
    }

    #[test]
    fn path_algebra_kronecker_dimension() {
        let a = path_algebra(&Quiver {
            vertices: 2,
            arrows: vec![(0, 1), (0, 1)],
        })
        .unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.validate().is_empty());
    }

    #[test]
    fn path_algebra_rejects_cycles() {
        let q = Quiver {
            vertices: 2,
            arrows: vec![(0, 1), (1, 0)],
        };
        assert!(matches!(path_algebra(&q), Err(Error::CyclicQuiver)));
    }

    #[test]
    fn matrix_algebra_m2() {
        let a = matrix_algebra(2).unwrap();
        assert_eq!(a.dim(), 4);
        // E12 E21 = E11
        assert_eq!(a.mult_basis(1, 2), &Element::basis(0));
        let mut unit = Element::basis(0);
        unit.add_assign(&Element::basis(3));
        assert_eq!(a.unit(), &unit);
        assert!(a.validate().is_empty());
        assert!(matrix_algebra(0).is_err());
        assert_eq!(matrix_algebra(1).unwrap().dim(), 1);
    }

    #[test]
    fn standard_poisson_trivial_for_zero_lambda_and_commutative() {
        let a = matrix_algebra(2).unwrap();
        let p = standard_poisson(a, &int(0));
        assert!(p.bracket().is_trivial());

        let dual = crate::catalog::dual_numbers_algebra();
        let p = standard_poisson(dual, &int(5));
        assert!(p.bracket().is_trivial());
    }

    #[test]
    fn a2_standard_bracket_matches_commutators() {
        let a = path_algebra(&a2_quiver()).unwrap();
        let p = standard_poisson(a, &int(1));
        // {e_1, alpha} = alpha, brute-force commutator check over all pairs.
        assert_eq!(p.bracket().bracket_basis(0, 2), &Element::basis(2));
        for i in 0..3 {
            for j in 0..3 {
                let brute = p
                    .algebra()
                    .commutator(&Element::basis(i), &Element::basis(j));
                assert_eq!(p.bracket().bracket_basis(i, j), &brute);
            }
        }
        assert!(validate_poisson(&p).is_valid());
    }

    #[test]
    fn validation_catches_broken_antisymmetry() {
        let a = path_algebra(&a2_quiver()).unwrap();
        let mut table = vec![vec![Element::zero(); 3]; 3];
        table[1][1] = Element::basis(2);
        let bracket = LieBracketTable::new(3, table).unwrap();
        let p = PoissonAlgebra::new(a, bracket).unwrap();
        let report = validate_poisson(&p);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::Antisymmetry && v.witness == vec![1, 1]));
    }

    #[test]
    fn structural_error_before_axiom_checking() {
        let a = path_algebra(&a2_quiver()).unwrap();
        let bracket = LieBracketTable::trivial(2);
        assert!(matches!(
            PoissonAlgebra::new(a, bracket),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn center_of_m2_is_scalars() {
        let a = matrix_algebra(2).unwrap();
        let z = center(&a);
        assert_eq!(z.len(), 1);
        // The one-dimensional center is spanned by the identity.
        let got = &z[0];
        let scaled_unit = a.unit().scaled(&got.coeff(0));
        assert_eq!(got, &scaled_unit);
    }

    #[test]
    fn commutator_subspace_of_m2_is_trace_zero() {
        let a = matrix_algebra(2).unwrap();
        assert_eq!(commutator_subspace(&a).len(), 3);
    }

    #[test]
    fn lie_center_of_trivial_bracket_is_everything() {
        let a = matrix_algebra(2).unwrap();
        let p = trivial_poisson(a);
        assert_eq!(lie_center(&p).len(), 4);
    }

    #[test]
    fn derivations_of_ground_field_vanish() {
        let a = matrix_algebra(1).unwrap();
        assert!(derivations(&a).is_empty());
        assert!(inner_derivations(&a).is_empty());
    }

    #[test]
    fn m2_has_only_inner_derivations() {
        let a = matrix_algebra(2).unwrap();
        assert_eq!(derivations(&a).len(), 3);
        assert_eq!(inner_derivations(&a).len(), 3);
    }

    #[test]
    fn kronecker_outer_derivations() {
        let a = path_algebra(&Quiver {
            vertices: 2,
            arrows: vec![(0, 1), (0, 1)],
        })
        .unwrap();
        assert_eq!(derivations(&a).len() - inner_derivations(&a).len(), 3);
    }

    #[test]
    fn self_module_satisfies_axioms() {
        for p in [
            standard_poisson(path_algebra(&a2_quiver()).unwrap(), &int(1)),
            standard_poisson(matrix_algebra(2).unwrap(), &int(1)),
        ] {
            let m = self_module(&p);
            assert!(m.validate(&p).is_empty());
        }
    }

    #[test]
    fn self_module_of_ground_field() {
        let p = standard_poisson(matrix_algebra(1).unwrap(), &int(1));
        let m = self_module(&p);
        assert_eq!(m.dim(), 1);
        assert!(m.lie_basis(0, 0).is_zero());
    }

    #[test]
    fn center_contained_in_lie_center_of_standard() {
        for lambda in [int(0), int(1), crate::scalar::frac(-3, 2)] {
            let a = matrix_algebra(2).unwrap();
            let p = standard_poisson(a, &lambda);
            let z = center(p.algebra());
            let zl_basis = lie_center(&p);
            let dim = p.dim();
            let cols: Vec<Vec<Scalar>> = zl_basis.iter().map(|e| e.to_dense(dim)).collect();
            for e in &z {
                assert!(crate::linalg::solve_dense(&cols, &e.to_dense(dim)).is_some());
            }
        }
    }
}
