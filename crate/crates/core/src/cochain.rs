//! The quasi-Poisson bicomplex and its specializations.
//!
//! Degree-`n` cochains live in `Hom((+)_{i+j=n} A^i (x) /\^j, M)`. The
//! vertical differential `sigma_V` is the Hochschild coboundary in the
//! tensor direction; the horizontal differential `sigma_H` is the
//! Chevalley-Eilenberg coboundary in the wedge direction; the total
//! differential is `sigma^n = (+) (sigma_V + (-1)^i sigma_H)`. All three are
//! assembled as sparse rational matrices. Specializing to the `j = 0` row
//! gives the Hochschild complex, and to the `i = 0` column the Lie-algebra
//! complex.
//!
//! Conventions fixed here: cochains are column vectors and differentials act
//! by left multiplication; blocks within a degree are ordered by decreasing
//! tensor degree `i`; wedge bases are strictly increasing index subsets;
//! flat indices run `(tuple, subset, module coordinate)` with the module
//! coordinate fastest.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    self_module, Axiom, Element, FiniteDimAlgebra, LieBracketTable, PoissonAlgebra,
    QuasiPoissonModule, Violation,
};
use crate::error::{Error, Result};
use crate::linalg::{solve_dense, SparseRationalMatrix};
use crate::scalar::Scalar;
use crate::Limits;

/// A Lie module over the bracket of a Poisson algebra: enough structure to
/// run the Chevalley-Eilenberg complex on its own.
#[derive(Clone, Debug)]
pub struct LieModuleStructure {
    dim: usize,
    action: Vec<Vec<Element>>,
}

impl LieModuleStructure {
    pub fn new(algebra_dim: usize, dim: usize, action: Vec<Vec<Element>>) -> Result<Self> {
        if action.len() != algebra_dim || action.iter().any(|row| row.len() != dim) {
            return Err(Error::Structural(
                "Lie action table must be (algebra dim) x (module dim)".into(),
            ));
        }
        Ok(LieModuleStructure { dim, action })
    }

    /// The trivial one-dimensional module.
    pub fn trivial(algebra_dim: usize) -> Self {
        LieModuleStructure {
            dim: 1,
            action: vec![vec![Element::zero()]; algebra_dim],
        }
    }

    /// `A` as a Lie module over itself via the bracket.
    pub fn adjoint(p: &PoissonAlgebra) -> Self {
        let dim = p.dim();
        let action = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|m| p.bracket().bracket_basis(i, m).clone())
                    .collect()
            })
            .collect();
        LieModuleStructure { dim, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action_basis(&self, alg: usize, m: usize) -> &Element {
        &self.action[alg][m]
    }

    pub fn act(&self, alg: &Element, m: &Element) -> Element {
        let mut out = Element::zero();
        for (i, a) in alg.iter() {
            for (k, c) in m.iter() {
                out.add_scaled(&self.action[i][k], &(a * c));
            }
        }
        out
    }

    /// Checks the Lie-module axiom `{{a,b},m} = {a,{b,m}} - {b,{a,m}}` on
    /// all basis triples.
    pub fn validate(&self, bracket: &LieBracketTable) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..bracket.dim() {
            for j in 0..bracket.dim() {
                for m in 0..self.dim {
                    let em = Element::basis(m);
                    let lhs = self.act(bracket.bracket_basis(i, j), &em);
                    let mut rhs = self.act(&Element::basis(i), &self.action[j][m]);
                    rhs.sub_assign(&self.act(&Element::basis(j), &self.action[i][m]));
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

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for t in 0..k.min(n - k) {
        out = out * (n - t) as u128 / (t + 1) as u128;
    }
    out
}

/// Lexicographically ordered `k`-subsets of `0..d`.
fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        // Advance the rightmost index that can still move.
        let mut t = k;
        while t > 0 && c[t - 1] == d - k + (t - 1) {
            t -= 1;
        }
        if t == 0 {
            break;
        }
        c[t - 1] += 1;
        for s in t..k {
            c[s] = c[s - 1] + 1;
        }
    }
    out
}

/// One block `Hom(A^i (x) /\^j, M)` inside a cochain degree.
#[derive(Clone, Debug)]
pub struct Block {
    pub i: usize,
    pub j: usize,
    pub offset: usize,
    pub tuple_count: usize,
    pub subsets: Vec<Vec<usize>>,
    pub subset_ranks: BTreeMap<Vec<usize>, usize>,
    pub size: usize,
}

/// Flat indexing of `Hom((+)_{i+j=n} A^i (x) /\^j, M)`, blocks ordered by
/// decreasing `i`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub n: usize,
    pub dim_a: usize,
    pub dim_m: usize,
    pub blocks: Vec<Block>,
    total: usize,
}

impl CochainSpace {
    pub fn new(dim_a: usize, dim_m: usize, n: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut offset: usize = 0;
        for i in (0..=n).rev() {
            let j = n - i;
            if j > dim_a {
                continue;
            }
            let tuple_count = (dim_a as u128).checked_pow(i as u32).ok_or_else(overflow)?;
            let subset_count = binomial(dim_a, j);
            let size = tuple_count
                .checked_mul(subset_count)
                .and_then(|x| x.checked_mul(dim_m as u128))
                .ok_or_else(overflow)?;
            if size > usize::MAX as u128 {
                return Err(overflow());
            }
            let subsets = combinations(dim_a, j);
            let subset_ranks = subsets
                .iter()
                .cloned()
                .enumerate()
                .map(|(r, s)| (s, r))
                .collect();
            blocks.push(Block {
                i,
                j,
                offset,
                tuple_count: tuple_count as usize,
                subsets,
                subset_ranks,
                size: size as usize,
            });
            offset = offset.checked_add(size as usize).ok_or_else(overflow)?;
        }
        Ok(CochainSpace {
            n,
            dim_a,
            dim_m,
            blocks,
            total: offset,
        })
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn block_with_i(&self, i: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.i == i)
    }

    /// Flat index of `(tuple, subset, module coordinate)` within a block.
    fn index(&self, block: &Block, tuple_rank: usize, subset_rank: usize, m: usize) -> usize {
        block.offset + ((tuple_rank * block.subsets.len()) + subset_rank) * self.dim_m + m
    }

    /// First flat index of the truncation `Omega_n^k` (blocks with `i <= k`);
    /// because blocks are ordered by decreasing `i`, the truncation is the
    /// trailing column range.
    pub fn omega_start(&self, k: usize) -> usize {
        self.blocks
            .iter()
            .find(|b| b.i <= k)
            .map_or(self.total, |b| b.offset)
    }
}

fn overflow() -> Error {
    Error::ResourceCap {
        what: "cochain space dimension".into(),
        required: u128::MAX,
        cap: usize::MAX as u128,
    }
}

/// `dim Hom((+)_{i+j=n, j<=dim A} A^i (x) /\^j, M)`, rejected when it exceeds
/// the entry cap.
pub fn cochain_dim(p: &PoissonAlgebra, module_dim: usize, n: usize, limits: &Limits) -> Result<usize> {
    let space = CochainSpace::new(p.dim(), module_dim, n)?;
    let dim = space.total_dim();
    if dim as u128 > limits.entry_cap as u128 {
        return Err(Error::ResourceCap {
            what: format!("degree-{n} cochain space of dimension {dim}"),
            required: dim as u128,
            cap: limits.entry_cap as u128,
        });
    }
    Ok(dim)
}

/// Odometer over base-`d` tuples of fixed length, most significant digit
/// first, yielding ranks in enumeration order.
struct Tuples {
    d: usize,
    current: Option<Vec<usize>>,
}

impl Tuples {
    fn new(d: usize, len: usize) -> Self {
        let current = if d == 0 && len > 0 { None } else { Some(vec![0; len]) };
        Tuples { d, current }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut t = out.clone();
        let mut pos = t.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < self.d {
                self.current = Some(t);
                break;
            }
            t[pos] = 0;
        }
        Some(out)
    }
}

fn tuple_rank(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x)
}

/// Emits the entries of `sigma_V^{i,j}` (block `(i,j)` to `(i+1,j)`) as
/// `(codomain local index, domain local index, value)`.
fn emit_sigma_v(
    algebra: &FiniteDimAlgebra,
    module: &QuasiPoissonModule,
    dom_space: &CochainSpace,
    cod_space: &CochainSpace,
    i: usize,
    j: usize,
    sink: &mut impl FnMut(usize, usize, Scalar),
) {
    let d = algebra.dim();
    let dim_m = module.dim();
    let Some(dom_block) = dom_space.block_with_i(i) else {
        return;
    };
    let Some(cod_block) = cod_space.block_with_i(i + 1) else {
        return;
    };
    debug_assert_eq!(dom_block.j, j);
    for (cod_rank, tuple) in Tuples::new(d, i + 1).enumerate() {
        let first_arg_rank = tuple_rank(&tuple[1..], d);
        let last_arg_rank = tuple_rank(&tuple[..i], d);
        let last_sign = if (i + 1).is_multiple_of(2) { 1 } else { -1 };
        for s_rank in 0..cod_block.subsets.len() {
            // a_1 f(a_2 ... a_{i+1}) via the left action.
            for m in 0..dim_m {
                let dom = dom_space.index(dom_block, first_arg_rank, s_rank, m);
                for (out, v) in module.left_basis(tuple[0], m).iter() {
                    let cod = cod_space.index(cod_block, cod_rank, s_rank, out);
                    sink(cod, dom, v.clone());
                }
            }
            // Inner contractions with alternating signs.
            for k in 0..i {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                for (c, mu) in algebra.mult_basis(tuple[k], tuple[k + 1]).iter() {
                    let mut sub = Vec::with_capacity(i);
                    sub.extend_from_slice(&tuple[..k]);
                    sub.push(c);
                    sub.extend_from_slice(&tuple[k + 2..]);
                    let sub_rank = tuple_rank(&sub, d);
                    let val = mu * crate::scalar::int(sign);
                    for m in 0..dim_m {
                        let dom = dom_space.index(dom_block, sub_rank, s_rank, m);
                        let cod = cod_space.index(cod_block, cod_rank, s_rank, m);
                        sink(cod, dom, val.clone());
                    }
                }
            }
            // (-1)^{i+1} f(a_1 ... a_i) a_{i+1} via the right action.
            for m in 0..dim_m {
                let dom = dom_space.index(dom_block, last_arg_rank, s_rank, m);
                for (out, v) in module.right_basis(tuple[i], m).iter() {
                    let cod = cod_space.index(cod_block, cod_rank, s_rank, out);
                    sink(cod, dom, v * crate::scalar::int(last_sign));
                }
            }
        }
    }
}

/// Emits the entries of `sigma_H^{i,j}` (block `(i,j)` to `(i,j+1)`).
#[allow(clippy::too_many_arguments)]
fn emit_sigma_h(
    bracket: &LieBracketTable,
    lie_action: &dyn Fn(usize, usize) -> Element,
    dim_m: usize,
    dom_space: &CochainSpace,
    cod_space: &CochainSpace,
    i: usize,
    j: usize,
    sink: &mut impl FnMut(usize, usize, Scalar),
) {
    let d = bracket.dim();
    let Some(dom_block) = dom_space.block_with_i(i) else {
        return;
    };
    let Some(cod_block) = cod_space.block_with_i(i) else {
        return;
    };
    debug_assert_eq!(dom_block.j, j);
    debug_assert_eq!(cod_block.j, j + 1);
    for (t_rank, tuple) in Tuples::new(d, i).enumerate() {
        for (s_rank, wedge) in cod_block.subsets.iter().enumerate() {
            for (l, &x_l) in wedge.iter().enumerate() {
                let sign_l = if l % 2 == 0 { 1 } else { -1 };
                let mut rest = wedge.clone();
                rest.remove(l);
                let rest_rank = dom_block.subset_ranks[&rest];
                // {x_l, f(...)}_* term.
                for m in 0..dim_m {
                    let dom = dom_space.index(dom_block, t_rank, rest_rank, m);
                    for (out, v) in lie_action(x_l, m).iter() {
                        let cod = cod_space.index(cod_block, t_rank, s_rank, out);
                        sink(cod, dom, v * crate::scalar::int(sign_l));
                    }
                }
                // -f(... {x_l, a_t} ...) terms over the tensor slots.
                for slot in 0..i {
                    for (c, mu) in bracket.bracket_basis(x_l, tuple[slot]).iter() {
                        let mut sub = tuple.clone();
                        sub[slot] = c;
                        let sub_rank = tuple_rank(&sub, d);
                        let val = mu * crate::scalar::int(-sign_l);
                        for m in 0..dim_m {
                            let dom = dom_space.index(dom_block, sub_rank, rest_rank, m);
                            let cod = cod_space.index(cod_block, t_rank, s_rank, m);
                            sink(cod, dom, val.clone());
                        }
                    }
                }
            }
            // f(({x_p, x_q} /\ ...)) terms.
            for p in 0..wedge.len() {
                for q in p + 1..wedge.len() {
                    let sign_pq = if (p + q) % 2 == 0 { 1 } else { -1 };
                    let mut rest = wedge.clone();
                    rest.remove(q);
                    rest.remove(p);
                    for (c, mu) in bracket.bracket_basis(wedge[p], wedge[q]).iter() {
                        if rest.contains(&c) {
                            continue;
                        }
                        let insert_at = rest.iter().filter(|&&r| r < c).count();
                        let insert_sign = if insert_at % 2 == 0 { 1 } else { -1 };
                        let mut new_wedge = rest.clone();
                        new_wedge.insert(insert_at, c);
                        let new_rank = dom_block.subset_ranks[&new_wedge];
                        let val = mu * crate::scalar::int(sign_pq * insert_sign);
                        for m in 0..dim_m {
                            let dom = dom_space.index(dom_block, t_rank, new_rank, m);
                            let cod = cod_space.index(cod_block, t_rank, s_rank, m);
                            sink(cod, dom, val.clone());
                        }
                    }
                }
            }
        }
    }
}


fn check_matrix_cap(rows: usize, cols: usize, what: &str, limits: &Limits) -> Result<()> {
    let required = rows as u128 * cols as u128;
    if required > limits.entry_cap as u128 {
        return Err(Error::ResourceCap {
            what: format!("{what} ({rows}x{cols})"),
            required,
            cap: limits.entry_cap as u128,
        });
    }
    Ok(())
}

/// Standalone matrix of `sigma_V^{i,j}: Hom(A^i (x) /\^j, M) -> Hom(A^{i+1} (x) /\^j, M)`.
pub fn sigma_v(
    p: &PoissonAlgebra,
    module: &QuasiPoissonModule,
    i: usize,
    j: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    standalone_sigma_v(p.algebra(), module, i, j, limits)
}

fn standalone_sigma_v(
    algebra: &FiniteDimAlgebra,
    module: &QuasiPoissonModule,
    i: usize,
    j: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    let dom = single_block_space(algebra.dim(), module.dim(), i, j)?;
    let cod = single_block_space(algebra.dim(), module.dim(), i + 1, j)?;
    check_matrix_cap(cod.total_dim(), dom.total_dim(), "sigma_V block", limits)?;
    let mut m = SparseRationalMatrix::raw(cod.total_dim(), dom.total_dim());
    emit_sigma_v(algebra, module, &dom, &cod, i, j, &mut |r, c, v| {
        m.add(r, c, v)
    });
    Ok(m)
}

/// Standalone matrix of `sigma_H^{i,j}: Hom(A^i (x) /\^j, M) -> Hom(A^i (x) /\^{j+1}, M)`.
pub fn sigma_h(
    p: &PoissonAlgebra,
    module: &QuasiPoissonModule,
    i: usize,
    j: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    let dom = single_block_space(p.dim(), module.dim(), i, j)?;
    let cod = single_block_space(p.dim(), module.dim(), i, j + 1)?;
    check_matrix_cap(cod.total_dim(), dom.total_dim(), "sigma_H block", limits)?;
    let mut m = SparseRationalMatrix::raw(cod.total_dim(), dom.total_dim());
    let action = |a: usize, k: usize| module.lie_basis(a, k).clone();
    emit_sigma_h(
        p.bracket(),
        &action,
        module.dim(),
        &dom,
        &cod,
        i,
        j,
        &mut |r, c, v| m.add(r, c, v),
    );
    Ok(m)
}

/// A cochain space consisting of a single `(i, j)` block, used for the
/// standalone differentials.
fn single_block_space(dim_a: usize, dim_m: usize, i: usize, j: usize) -> Result<CochainSpace> {
    let mut space = CochainSpace::new(dim_a, dim_m, i + j)?;
    space.blocks.retain(|b| b.i == i);
    if let Some(b) = space.blocks.first_mut() {
        b.offset = 0;
        space.total = b.size;
    } else {
        space.total = 0;
    }
    Ok(space)
}

/// The total differential `sigma^n` from degree `n` to degree `n + 1`.
pub fn total_differential(
    p: &PoissonAlgebra,
    module: &QuasiPoissonModule,
    n: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    total_differential_restricted(p, module, n, usize::MAX, limits)
}

/// The total differential with the domain restricted to the truncation
/// `Omega_n^k` (blocks with `i <= max_i`); the codomain stays full. With
/// `max_i = usize::MAX` this is the full differential.
pub fn total_differential_restricted(
    p: &PoissonAlgebra,
    module: &QuasiPoissonModule,
    n: usize,
    max_i: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    let full_dom = CochainSpace::new(p.dim(), module.dim(), n)?;
    let cod = CochainSpace::new(p.dim(), module.dim(), n + 1)?;
    // Re-picture the domain with only the admitted blocks, offsets packed.
    let mut dom = full_dom.clone();
    dom.blocks.retain(|b| b.i <= max_i);
    let mut offset = 0;
    for b in &mut dom.blocks {
        b.offset = offset;
        offset += b.size;
    }
    dom.total = offset;

    check_matrix_cap(cod.total_dim(), dom.total_dim(), &format!("sigma^{n}"), limits)?;
    let mut m = SparseRationalMatrix::raw(cod.total_dim(), dom.total_dim());
    let lie = |a: usize, k: usize| module.lie_basis(a, k).clone();
    for block_idx in 0..dom.blocks.len() {
        let (i, j) = (dom.blocks[block_idx].i, dom.blocks[block_idx].j);
        emit_sigma_v(p.algebra(), module, &dom, &cod, i, j, &mut |r, c, v| {
            m.add(r, c, v)
        });
        if j < p.dim() {
            let block_sign = crate::scalar::int(if i % 2 == 0 { 1 } else { -1 });
            emit_sigma_h(
                p.bracket(),
                &lie,
                module.dim(),
                &dom,
                &cod,
                i,
                j,
                &mut |r, c, v| m.add(r, c, v * &block_sign),
            );
        }
    }
    Ok(m)
}

/// The Hochschild coboundary `delta^n = sigma_V^{n,0}` on `Hom(A^n, M)`.
pub fn hochschild_differential(
    algebra: &FiniteDimAlgebra,
    module: &QuasiPoissonModule,
    n: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    standalone_sigma_v(algebra, module, n, 0, limits)
}

/// Hochschild complex matrices `delta^n` for `n = 0..=max_n`.
pub fn hochschild_complex(
    algebra: &FiniteDimAlgebra,
    module: &QuasiPoissonModule,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<SparseRationalMatrix>> {
    (0..=max_n)
        .map(|n| hochschild_differential(algebra, module, n, limits))
        .collect()
}

/// The Chevalley-Eilenberg coboundary `d^n = sigma_H^{0,n}` with the given
/// Lie module as coefficients.
pub fn ce_differential(
    bracket: &LieBracketTable,
    coefficients: &LieModuleStructure,
    n: usize,
    limits: &Limits,
) -> Result<SparseRationalMatrix> {
    let d = bracket.dim();
    let dim_m = coefficients.dim();
    let dom = single_block_space(d, dim_m, 0, n)?;
    let cod = single_block_space(d, dim_m, 0, n + 1)?;
    check_matrix_cap(cod.total_dim(), dom.total_dim(), "CE block", limits)?;
    let mut m = SparseRationalMatrix::raw(cod.total_dim(), dom.total_dim());
    let action = |a: usize, k: usize| coefficients.action_basis(a, k).clone();
    emit_sigma_h(bracket, &action, dim_m, &dom, &cod, 0, n, &mut |r, c, v| {
        m.add(r, c, v)
    });
    Ok(m)
}

/// Chevalley-Eilenberg complex matrices `d^n` for `n = 0..=max_n`.
pub fn ce_complex(
    bracket: &LieBracketTable,
    coefficients: &LieModuleStructure,
    max_n: usize,
    limits: &Limits,
) -> Result<Vec<SparseRationalMatrix>> {
    (0..=max_n)
        .map(|n| ce_differential(bracket, coefficients, n, limits))
        .collect()
}

/// Computes `HH^p(A)` with its induced Lie-module structure: cocycle
/// representatives spanning a complement of the coboundaries are chosen by
/// greedy pivoting in flat-index order, each primitive basis element acts by
/// `f -> {v, f(-)} - sum_t f(..., {v, a_t}, ...)`, and the result is
/// projected back onto the chosen complement.
pub fn induced_lie_module_on_hh(
    p: &PoissonAlgebra,
    degree: usize,
    limits: &Limits,
) -> Result<LieModuleStructure> {
    let d = p.dim();
    let module = self_module(p);
    let delta_p = standalone_sigma_v(p.algebra(), &module, degree, 0, limits)?;
    let cocycles = delta_p.kernel_basis();
    let coboundaries: Vec<Vec<Scalar>> = if degree == 0 {
        Vec::new()
    } else {
        standalone_sigma_v(p.algebra(), &module, degree - 1, 0, limits)?.column_space_basis()
    };

    // Greedy complement of the coboundaries inside the cocycles.
    let mut echelon = GreedyEchelon::default();
    for b in &coboundaries {
        echelon.insert(b.clone());
    }
    let mut representatives: Vec<Vec<Scalar>> = Vec::new();
    for z in &cocycles {
        if echelon.insert(z.clone()) {
            representatives.push(z.clone());
        }
    }

    // Columns spanning the cocycle space: coboundaries then representatives.
    let mut span_columns = coboundaries.clone();
    span_columns.extend(representatives.iter().cloned());

    let hom_dim = d.pow(degree as u32) * d;
    let mut action: Vec<Vec<Element>> = vec![Vec::with_capacity(representatives.len()); d];
    #[allow(clippy::needless_range_loop)]
    for g in 0..d {
        for f in &representatives {
            let image = primitive_action_on_hom(p, g, degree, f, hom_dim);
            let coords = solve_dense(&span_columns, &image).ok_or_else(|| {
                Error::InternalConsistency(format!(
                    "primitive action of basis element {g} does not preserve \
                     cocycles modulo coboundaries in degree {degree}"
                ))
            })?;
            let rep_part = Element::from_dense(&coords[coboundaries.len()..]);
            action[g].push(rep_part);
        }
    }

    let result = LieModuleStructure::new(d, representatives.len(), action)?;
    let violations = result.validate(p.bracket());
    if !violations.is_empty() {
        return Err(Error::InternalConsistency(format!(
            "induced action on HH^{degree} is not a Lie module: {}",
            violations[0]
        )));
    }
    Ok(result)
}

/// `(v_g . f)(a_1..a_p) = {v_g, f(a_1..a_p)} - sum_t f(a_1, .., {v_g, a_t}, .., a_p)`
/// on a flat `Hom(A^p, A)` vector.
fn primitive_action_on_hom(
    p: &PoissonAlgebra,
    g: usize,
    degree: usize,
    f: &[Scalar],
    hom_dim: usize,
) -> Vec<Scalar> {
    let d = p.dim();
    let mut out = vec![Scalar::zero(); hom_dim];
    for (t_rank, tuple) in Tuples::new(d, degree).enumerate() {
        let value = Element::from_dense(&f[t_rank * d..(t_rank + 1) * d]);
        let bracketed = p.bracket().apply(&Element::basis(g), &value);
        for (c, v) in bracketed.iter() {
            out[t_rank * d + c] += v;
        }
        for slot in 0..degree {
            for (c, mu) in p.bracket().bracket_basis(g, tuple[slot]).iter() {
                let mut sub = tuple.clone();
                sub[slot] = c;
                let sub_rank = tuple_rank(&sub, d);
                for coord in 0..d {
                    let delta = mu * &f[sub_rank * d + coord];
                    out[t_rank * d + coord] -= delta;
                }
            }
        }
    }
    out
}

/// Forward-elimination state for greedy independence checks in flat-index
/// order.
#[derive(Default)]
struct GreedyEchelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl GreedyEchelon {
    /// Reduces `v` against the rows; inserts and reports `true` when a new
    /// pivot survives.
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    let delta = &factor * y;
                    *x -= delta;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((pivot, v));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }
}
