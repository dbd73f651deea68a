//! Betti tables and structural cross-checks.
//!
//! The full method computes `dim H^n = dim C^n - rank sigma^n - rank
//! sigma^{n-1}` from the assembled differentials. The truncated method
//! replaces both sides with their meets against the coordinate subspace
//! `Omega_n^k` of blocks with tensor degree `i <= k`, which is valid when
//! the Hochschild cohomology vanishes above degree `k`; the hypothesis can
//! be asserted by the caller or verified up to an explicit probe bound.
//! Cross-checks compare dimensions only, never isomorphisms.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::algebra::{
    center, commutator_subspace, lie_center, self_module, FiniteDimAlgebra, PoissonAlgebra,
    QuasiPoissonModule,
};
use crate::cochain::{
    ce_differential, hochschild_differential, induced_lie_module_on_hh, total_differential,
    total_differential_restricted, CochainSpace, LieModuleStructure,
};
use crate::error::{Error, Result};
use crate::linalg::SparseRationalMatrix;
use crate::scalar::int;
use crate::Limits;

/// How a Betti table was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Full,
    Truncated(usize),
    ClosedForm,
}

impl Method {
    pub fn tag(&self) -> String {
        match self {
            Method::Full => "full".into(),
            Method::Truncated(k) => format!("truncated-{k}"),
            Method::ClosedForm => "closed-form".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BettiRow {
    pub n: usize,
    pub cochain_dim: usize,
    pub rank_out: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct BettiTable {
    pub algebra: String,
    /// Which cohomology the table reports: "HQ", "HH" or "HL".
    pub theory: String,
    pub coefficients: String,
    pub method: Method,
    pub rows: Vec<BettiRow>,
    /// Set when the table stops early at the resource cap.
    pub notice: Option<String>,
    /// Per-degree wall time in milliseconds; reporting metadata only.
    pub timing_ms: Vec<u128>,
}

impl BettiTable {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.rows[n].dim
    }
}

/// Ranks a chain of differentials `mats[n]: C^n -> C^{n+1}` and reads off
/// `dim H^n` for `n < mats.len()`.
fn betti_rows_from_differentials(mats: &[SparseRationalMatrix]) -> (Vec<BettiRow>, Vec<u128>) {
    let mut rows = Vec::new();
    let mut timing = Vec::new();
    let mut previous_rank = 0;
    for (n, m) in mats.iter().enumerate() {
        let started = Instant::now();
        let rank = m.rank();
        timing.push(started.elapsed().as_millis());
        // Well-defined because consecutive differentials compose to zero.
        let dim = m
            .cols()
            .checked_sub(rank + previous_rank)
            .expect("image contained in kernel");
        rows.push(BettiRow {
            n,
            cochain_dim: m.cols(),
            rank_out: rank,
            dim,
        });
        previous_rank = rank;
    }
    (rows, timing)
}

/// Assembles differentials degree by degree; a resource-cap rejection after
/// at least one degree yields the partial chain plus a truncation notice.
fn assemble_partial(
    max_degree: usize,
    mut make: impl FnMut(usize) -> Result<SparseRationalMatrix>,
) -> Result<(Vec<SparseRationalMatrix>, Option<String>)> {
    let mut mats = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        match make(n) {
            Ok(m) => mats.push(m),
            Err(e @ Error::ResourceCap { .. }) if !mats.is_empty() => {
                return Ok((mats, Some(format!("table truncated at degree {n}: {e}"))));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((mats, None))
}

/// Quasi-Poisson cohomology dimensions of `P` with coefficients in `module`
/// for degrees `0..=max_degree`. Hitting the resource cap partway yields a
/// partial table with an explicit notice.
pub fn betti_hq(
    p: &PoissonAlgebra,
    module: &QuasiPoissonModule,
    max_degree: usize,
    limits: &Limits,
) -> Result<BettiTable> {
    let violations = module.validate(p);
    if !violations.is_empty() {
        return Err(Error::AxiomViolations(crate::algebra::ValidationReport {
            violations,
        }));
    }
    let (mats, notice) =
        assemble_partial(max_degree, |n| total_differential(p, module, n, limits))?;
    let (rows, timing_ms) = betti_rows_from_differentials(&mats);
    Ok(BettiTable {
        algebra: p.name().into(),
        theory: "HQ".into(),
        coefficients: "module".into(),
        method: Method::Full,
        rows,
        notice,
        timing_ms,
    })
}

/// Hochschild cohomology dimensions of `A` with coefficients in the bimodule
/// part of `module`.
pub fn betti_hh(
    algebra: &FiniteDimAlgebra,
    module: &QuasiPoissonModule,
    max_degree: usize,
    limits: &Limits,
) -> Result<BettiTable> {
    let (mats, notice) = assemble_partial(max_degree, |n| {
        hochschild_differential(algebra, module, n, limits)
    })?;
    let (rows, timing_ms) = betti_rows_from_differentials(&mats);
    Ok(BettiTable {
        algebra: String::new(),
        theory: "HH".into(),
        coefficients: "module".into(),
        method: Method::Full,
        rows,
        notice,
        timing_ms,
    })
}

/// Lie-algebra cohomology dimensions of the bracket of `P` with coefficients
/// in `coefficients`.
pub fn betti_hl(
    p: &PoissonAlgebra,
    coefficients: &LieModuleStructure,
    max_degree: usize,
    limits: &Limits,
) -> Result<BettiTable> {
    let (mats, notice) = assemble_partial(max_degree, |n| {
        ce_differential(p.bracket(), coefficients, n, limits)
    })?;
    let (rows, timing_ms) = betti_rows_from_differentials(&mats);
    Ok(BettiTable {
        algebra: p.name().into(),
        theory: "HL".into(),
        coefficients: "module".into(),
        method: Method::Full,
        rows,
        notice,
        timing_ms,
    })
}

/// `dim HQ^0 = dim (Z(A) meet Z{A})` by a joint kernel computation.
pub fn hq0_direct(p: &PoissonAlgebra) -> usize {
    let d = p.dim();
    let mut m = SparseRationalMatrix::raw(2 * d * d, d);
    for j in 0..d {
        for i in 0..d {
            let mut diff = p.algebra().mult_basis(j, i).clone();
            diff.sub_assign(p.algebra().mult_basis(i, j));
            for (c, v) in diff.iter() {
                m.add(i * d + c, j, v.clone());
            }
            for (c, v) in p.bracket().bracket_basis(j, i).iter() {
                m.add(d * d + i * d + c, j, v.clone());
            }
        }
    }
    m.kernel_dim()
}

/// `dim HQ^1 = dim D(A) - dim A + dim HQ^0`, with `D(A)` the space of pairs
/// of an associative derivation and a Lie derivation satisfying the
/// compatibility `f_1({x,a}) - {x, f_1(a)} = f_0(x) a - a f_0(x)`.
pub fn hq1_direct(p: &PoissonAlgebra) -> usize {
    dim_compatible_pairs(p) + hq0_direct(p) - p.dim()
}

/// Dimension of `D(A)`, the joint kernel of the three constraint systems of
/// the degree-1 description.
pub fn dim_compatible_pairs(p: &PoissonAlgebra) -> usize {
    let d = p.dim();
    let hom = d * d;
    let f1 = |a: usize, out: usize| a * d + out;
    let f0 = |x: usize, out: usize| hom + x * d + out;
    // Row groups: derivation constraints, Lie-derivation constraints,
    // compatibility constraints; one row per (pair, output coordinate).
    let mut m = SparseRationalMatrix::raw(3 * d * d * d, 2 * hom);
    for i in 0..d {
        for j in 0..d {
            let base = (i * d + j) * d;
            // f_1(v_i v_j) = f_1(v_i) v_j + v_i f_1(v_j)
            for (c, v) in p.algebra().mult_basis(i, j).iter() {
                for out in 0..d {
                    m.add(base + out, f1(c, out), v.clone());
                }
            }
            for out in 0..d {
                for (c, v) in p.algebra().mult_basis(out, j).iter() {
                    m.add(base + c, f1(i, out), -v.clone());
                }
                for (c, v) in p.algebra().mult_basis(i, out).iter() {
                    m.add(base + c, f1(j, out), -v.clone());
                }
            }
            // f_0({v_i, v_j}) = {f_0(v_i), v_j} + {v_i, f_0(v_j)}
            let lie_base = d * d * d + (i * d + j) * d;
            for (c, v) in p.bracket().bracket_basis(i, j).iter() {
                for out in 0..d {
                    m.add(lie_base + out, f0(c, out), v.clone());
                }
            }
            for out in 0..d {
                for (c, v) in p.bracket().bracket_basis(out, j).iter() {
                    m.add(lie_base + c, f0(i, out), -v.clone());
                }
                for (c, v) in p.bracket().bracket_basis(i, out).iter() {
                    m.add(lie_base + c, f0(j, out), -v.clone());
                }
            }
            // f_1({x, a}) - {x, f_1(a)} - f_0(x) a + a f_0(x) = 0 at (x, a) = (v_i, v_j)
            let compat_base = 2 * d * d * d + (i * d + j) * d;
            for (c, v) in p.bracket().bracket_basis(i, j).iter() {
                for out in 0..d {
                    m.add(compat_base + out, f1(c, out), v.clone());
                }
            }
            for out in 0..d {
                for (c, v) in p.bracket().bracket_basis(i, out).iter() {
                    m.add(compat_base + c, f1(j, out), -v.clone());
                }
                for (c, v) in p.algebra().mult_basis(out, j).iter() {
                    m.add(compat_base + c, f0(i, out), -v.clone());
                }
                for (c, v) in p.algebra().mult_basis(j, out).iter() {
                    m.add(compat_base + c, f0(i, out), v.clone());
                }
            }
        }
    }
    m.kernel_dim()
}

/// One compared degree of a cross-check.
#[derive(Clone, Debug)]
pub struct DegreeComparison {
    pub n: usize,
    pub left: usize,
    pub right: usize,
}

/// Record of a verified (or asserted) vanishing hypothesis.
#[derive(Clone, Debug)]
pub struct HypothesisRecord {
    pub statement: String,
    pub probe_bound: usize,
    /// `(degree, dimension)` pairs actually computed.
    pub values: Vec<(usize, usize)>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub identity: String,
    pub algebra: String,
    pub degrees: Vec<DegreeComparison>,
    pub hypothesis: Option<HypothesisRecord>,
    pub notes: Vec<String>,
}

impl CrossCheckReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.left == d.right)
            && self.hypothesis.as_ref().is_none_or(|h| h.verified)
    }
}

/// Verifies `HH^p(A) = 0` for `from <= p <= probe_bound`; the returned
/// record keeps every computed dimension.
fn verify_hh_vanishing(
    p: &PoissonAlgebra,
    from: usize,
    probe_bound: usize,
    limits: &Limits,
) -> Result<HypothesisRecord> {
    let module = self_module(p);
    // No partial-table softening here: an unprobeable bound is a resource
    // refusal, not a verified hypothesis.
    let mut mats = Vec::with_capacity(probe_bound + 1);
    for n in 0..=probe_bound {
        mats.push(hochschild_differential(p.algebra(), &module, n, limits)?);
    }
    let (rows, _) = betti_rows_from_differentials(&mats);
    let values: Vec<(usize, usize)> = (from..=probe_bound).map(|n| (n, rows[n].dim)).collect();
    let verified = values.iter().all(|&(_, dim)| dim == 0);
    Ok(HypothesisRecord {
        statement: format!("HH^p(A) = 0 for {from} <= p <= {probe_bound}"),
        probe_bound,
        values,
        verified,
    })
}

/// Hypothesis handling for [`truncated_betti`].
#[derive(Clone, Copy, Debug)]
pub enum Hypothesis {
    /// Caller asserts vanishing; nothing is computed.
    Assert,
    /// Verify up to the probe bound, refusing on failure.
    Verify { probe_bound: usize },
}

/// Truncated quasi-Poisson Betti table: `dim HQ^n = dim(Ker sigma^n meet
/// Omega_n^k) - dim(Im sigma^{n-1} meet Omega_n^k)`, valid when `HH^p(A) = 0`
/// for `p > k`.
pub fn truncated_betti(
    p: &PoissonAlgebra,
    k: usize,
    max_degree: usize,
    hypothesis: Hypothesis,
    limits: &Limits,
) -> Result<BettiTable> {
    if let Hypothesis::Verify { probe_bound } = hypothesis {
        let record = verify_hh_vanishing(p, k + 1, probe_bound, limits)?;
        if !record.verified {
            let offending: Vec<String> = record
                .values
                .iter()
                .filter(|&&(_, dim)| dim != 0)
                .map(|(n, dim)| format!("HH^{n} = {dim}"))
                .collect();
            return Err(Error::HypothesisFailed(format!(
                "truncation to tensor degree {k} requires HH vanishing above {k}: {}",
                offending.join(", ")
            )));
        }
    }

    let module = self_module(p);
    let mut rows = Vec::new();
    let mut timing_ms = Vec::new();
    let mut previous_full: Option<SparseRationalMatrix> = None;
    for n in 0..=max_degree {
        let started = Instant::now();
        let space = CochainSpace::new(p.dim(), module.dim(), n)?;
        let omega_start = space.omega_start(k);
        let omega_dim = space.total_dim() - omega_start;

        let (kernel_meet, rank_restricted) = if omega_dim == 0 {
            (0, 0)
        } else {
            let restricted = total_differential_restricted(p, &module, n, k, limits)?;
            let rank = restricted.rank();
            (omega_dim - rank, rank)
        };

        let image_meet = if n == 0 || omega_dim == 0 {
            0
        } else {
            let selection: BTreeSet<usize> = (omega_start..space.total_dim()).collect();
            let full_prev = match previous_full.take() {
                Some(m) => m,
                None => total_differential(p, &module, n - 1, limits)?,
            };
            full_prev.image_meet_coordinate_subspace(&selection)?
        };

        rows.push(BettiRow {
            n,
            cochain_dim: omega_dim,
            rank_out: rank_restricted,
            dim: kernel_meet - image_meet,
        });
        timing_ms.push(started.elapsed().as_millis());

        // The next degree meets the image of the full sigma^n, unless its
        // truncation is empty.
        let next_space = CochainSpace::new(p.dim(), module.dim(), n + 1)?;
        let next_needed = n < max_degree && next_space.omega_start(k) < next_space.total_dim();
        previous_full = if next_needed {
            Some(total_differential(p, &module, n, limits)?)
        } else {
            None
        };
    }
    Ok(BettiTable {
        algebra: p.name().into(),
        theory: "HQ".into(),
        coefficients: "self".into(),
        method: Method::Truncated(k),
        rows,
        notice: None,
        timing_ms,
    })
}

/// Degree-1 consistency of the standard Poisson algebra:
/// `dim HQ^1 = dim HH^1 + dim Hom(A/[A,A], Z(A))`.
pub fn standard_hq1_check(algebra: &FiniteDimAlgebra, limits: &Limits) -> Result<CrossCheckReport> {
    let p = crate::algebra::standard_poisson(algebra.clone(), &int(1));
    let module = self_module(&p);
    let left = betti_hq(&p, &module, 1, limits)?.dim(1);
    let hh1 = betti_hh(p.algebra(), &module, 1, limits)?.dim(1);
    let commutators = commutator_subspace(p.algebra()).len();
    let z = center(p.algebra()).len();
    let right = hh1 + (p.dim() - commutators) * z;
    Ok(CrossCheckReport {
        identity: "hq1-standard-decomposition".into(),
        algebra: p.name().into(),
        degrees: vec![DegreeComparison { n: 1, left, right }],
        hypothesis: None,
        notes: vec![format!(
            "dim HH^1 = {hh1}, dim A/[A,A] = {}, dim Z(A) = {z}",
            p.dim() - commutators
        )],
    })
}

/// Künneth identity for trivial brackets: `dim HQ^n = sum_{i+j=n} dim HH^i *
/// C(dim A, j)`, both sides computed independently.
pub fn kunneth_check(
    p: &PoissonAlgebra,
    max_degree: usize,
    limits: &Limits,
) -> Result<CrossCheckReport> {
    if !p.bracket().is_trivial() {
        return Err(Error::Precondition(
            "the Künneth identity applies to trivial brackets only".into(),
        ));
    }
    let module = self_module(p);
    let hq = betti_hq(p, &module, max_degree, limits)?;
    let hh = betti_hh(p.algebra(), &module, max_degree, limits)?;
    let degrees = (0..=max_degree)
        .map(|n| {
            let right: usize = (0..=n)
                .map(|i| hh.dim(i) * binomial_usize(p.dim(), n - i))
                .sum();
            DegreeComparison {
                n,
                left: hq.dim(n),
                right,
            }
        })
        .collect();
    Ok(CrossCheckReport {
        identity: "kunneth-trivial-bracket".into(),
        algebra: p.name().into(),
        degrees,
        hypothesis: None,
        notes: vec![format!("HH dims: {:?}", hh.dims())],
    })
}

/// Short-exact-sequence identity: when `HH^p(A) = 0` for `p > 1`,
/// `dim HQ^n = dim HL^{n-1}(A, Der°(A)) + dim HL^n(A, Z(A))`.
pub fn ses_check(p: &PoissonAlgebra, max_degree: usize, limits: &Limits) -> Result<CrossCheckReport> {
    let probe_bound = max_degree + 1;
    let hypothesis = verify_hh_vanishing(p, 2, probe_bound, limits)?;
    if !hypothesis.verified {
        return Err(Error::HypothesisFailed(format!(
            "{}; computed {:?}",
            hypothesis.statement, hypothesis.values
        )));
    }
    let module = self_module(p);
    let hq = betti_hq(p, &module, max_degree, limits)?;
    let outer = induced_lie_module_on_hh(p, 1, limits)?;
    let center_module = induced_lie_module_on_hh(p, 0, limits)?;
    let hl_outer = betti_hl(p, &outer, max_degree, limits)?;
    let hl_center = betti_hl(p, &center_module, max_degree, limits)?;
    let degrees = (0..=max_degree)
        .map(|n| {
            let right = if n == 0 { 0 } else { hl_outer.dim(n - 1) } + hl_center.dim(n);
            DegreeComparison {
                n,
                left: hq.dim(n),
                right,
            }
        })
        .collect();
    Ok(CrossCheckReport {
        identity: "ses-outer-center".into(),
        algebra: p.name().into(),
        degrees,
        hypothesis: Some(hypothesis),
        notes: vec![
            format!("dim Der°(A) = {}", outer.dim()),
            format!("dim Z(A) = {}", center_module.dim()),
        ],
    })
}

/// Tensor identity: when `HH^i(A) = 0` for `i > 0`,
/// `dim HQ^n = dim Z(A) * dim HL^n(A, K)`.
pub fn tensor_check(
    p: &PoissonAlgebra,
    max_degree: usize,
    limits: &Limits,
) -> Result<CrossCheckReport> {
    let probe_bound = max_degree + 1;
    let hypothesis = verify_hh_vanishing(p, 1, probe_bound, limits)?;
    if !hypothesis.verified {
        return Err(Error::HypothesisFailed(format!(
            "{}; computed {:?}",
            hypothesis.statement, hypothesis.values
        )));
    }
    let module = self_module(p);
    let hq = betti_hq(p, &module, max_degree, limits)?;
    let trivial = LieModuleStructure::trivial(p.dim());
    let hl = betti_hl(p, &trivial, max_degree, limits)?;
    let z = center(p.algebra()).len();
    let degrees = (0..=max_degree)
        .map(|n| DegreeComparison {
            n,
            left: hq.dim(n),
            right: z * hl.dim(n),
        })
        .collect();
    Ok(CrossCheckReport {
        identity: "tensor-center-lie".into(),
        algebra: p.name().into(),
        degrees,
        hypothesis: Some(hypothesis),
        notes: vec![format!("dim Z(A) = {z}, HL(A,K) dims: {:?}", hl.dims())],
    })
}

fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out: usize = 1;
    for t in 0..k.min(n - k) {
        out = out * (n - t) / (t + 1);
    }
    out
}

/// `Z(A)` of an inner Poisson algebra is contained in the Lie center; kept
/// as a helper for validation-style checks.
pub fn center_meets_lie_center(p: &PoissonAlgebra) -> bool {
    let z = center(p.algebra());
    let zl = lie_center(p);
    let dim = p.dim();
    let cols: Vec<Vec<crate::scalar::Scalar>> = zl.iter().map(|e| e.to_dense(dim)).collect();
    z.iter()
        .all(|e| crate::linalg::solve_dense(&cols, &e.to_dense(dim)).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn limits() -> Limits {
        Limits::with_entry_cap(1_000_000_000)
    }

    #[test]
    fn hq_of_ground_field() {
        let p = catalog::ground_field_standard();
        let m = self_module(&p);
        let table = betti_hq(&p, &m, 3, &limits()).unwrap();
        assert_eq!(table.dims(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn hq_of_a2_matches_exterior_algebra() {
        let p = catalog::a2_standard();
        let m = self_module(&p);
        let table = betti_hq(&p, &m, 4, &limits()).unwrap();
        assert_eq!(table.dims(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn hq0_and_hq1_direct_formulas() {
        let p = catalog::m2_standard();
        assert_eq!(hq0_direct(&p), 1);
        assert_eq!(hq1_direct(&p), 1);
        assert_eq!(dim_compatible_pairs(&p), 4);

        let a2 = catalog::a2_standard();
        assert_eq!(hq0_direct(&a2), 1);
        assert_eq!(hq1_direct(&a2), 2);

        // Trivial bracket: HQ^0 is the full center.
        let dual = catalog::dual_numbers_trivial();
        assert_eq!(hq0_direct(&dual), 2);
    }

    #[test]
    fn direct_formulas_agree_with_complex_low_degrees() {
        for p in [
            catalog::ground_field_standard(),
            catalog::dual_numbers_trivial(),
            catalog::a2_standard(),
        ] {
            let m = self_module(&p);
            let table = betti_hq(&p, &m, 1, &limits()).unwrap();
            assert_eq!(table.dim(0), hq0_direct(&p), "{} degree 0", p.name());
            assert_eq!(table.dim(1), hq1_direct(&p), "{} degree 1", p.name());
        }
    }

    #[test]
    fn hh_of_ground_field() {
        let p = catalog::ground_field_standard();
        let m = self_module(&p);
        let table = betti_hh(p.algebra(), &m, 3, &limits()).unwrap();
        assert_eq!(table.dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn hl_of_abelian_lie_structure_counts_subsets() {
        let p = catalog::dual_numbers_trivial();
        let trivial = LieModuleStructure::trivial(p.dim());
        let table = betti_hl(&p, &trivial, 3, &limits()).unwrap();
        assert_eq!(table.dims(), vec![1, 2, 1, 0]);
    }

    #[test]
    fn kunneth_for_ground_field() {
        let a = catalog::ground_field_algebra();
        let p = crate::algebra::trivial_poisson(a).with_name("k-trivial");
        let report = kunneth_check(&p, 4, &limits()).unwrap();
        assert!(report.pass(), "{report:?}");
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.left).collect();
        assert_eq!(dims, vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn kunneth_rejects_nontrivial_bracket() {
        let p = catalog::a2_standard();
        assert!(matches!(
            kunneth_check(&p, 2, &limits()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn standard_hq1_check_on_small_algebras() {
        for algebra in [catalog::ground_field_algebra(), catalog::m2_standard().algebra().clone()]
        {
            let report = standard_hq1_check(&algebra, &limits()).unwrap();
            assert!(report.pass(), "{report:?}");
        }
    }

    #[test]
    fn tensor_check_on_a2() {
        let report = tensor_check(&catalog::a2_standard(), 3, &limits()).unwrap();
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn tensor_check_on_ground_field() {
        let report = tensor_check(&catalog::ground_field_standard(), 3, &limits()).unwrap();
        assert!(report.pass(), "{report:?}");
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.left).collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn truncated_matches_full_when_omega_is_everything() {
        let p = catalog::a2_standard();
        let m = self_module(&p);
        let full = betti_hq(&p, &m, 3, &limits()).unwrap();
        let truncated = truncated_betti(&p, 3, 3, Hypothesis::Assert, &limits()).unwrap();
        assert_eq!(full.dims(), truncated.dims());
    }

    #[test]
    fn truncated_matches_full_under_verified_hypothesis() {
        // M2 at k = 0 and Kronecker at k = 1, hypotheses engine-verified.
        let p = catalog::m2_standard();
        let m = self_module(&p);
        let full = betti_hq(&p, &m, 3, &limits()).unwrap();
        let truncated =
            truncated_betti(&p, 0, 3, Hypothesis::Verify { probe_bound: 4 }, &limits()).unwrap();
        assert_eq!(full.dims(), truncated.dims());

        let p = catalog::kronecker_standard();
        let m = self_module(&p);
        let full = betti_hq(&p, &m, 3, &limits()).unwrap();
        let truncated =
            truncated_betti(&p, 1, 3, Hypothesis::Verify { probe_bound: 4 }, &limits()).unwrap();
        assert_eq!(full.dims(), truncated.dims());
    }

    #[test]
    fn m2_tensor_and_ses_checks_degenerate_consistently() {
        // Only inner derivations and a scalar center: the tensor identity
        // forces the Lie cohomology dims (1, 1, 0, 1, 1), and the short
        // exact sequence collapses onto the center term.
        let p = catalog::m2_standard();
        let tensor = tensor_check(&p, 4, &limits()).unwrap();
        assert!(tensor.pass(), "{tensor:?}");
        let hl = betti_hl(&p, &LieModuleStructure::trivial(p.dim()), 4, &limits()).unwrap();
        assert_eq!(hl.dims(), vec![1, 1, 0, 1, 1]);

        let ses = ses_check(&p, 4, &limits()).unwrap();
        assert!(ses.pass(), "{ses:?}");
        let outer = induced_lie_module_on_hh(&p, 1, &limits()).unwrap();
        assert_eq!(outer.dim(), 0);
    }

    #[test]
    fn m2_hochschild_vanishes_positively() {
        let p = catalog::m2_standard();
        let m = self_module(&p);
        let table = betti_hh(p.algebra(), &m, 3, &limits()).unwrap();
        assert_eq!(table.dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn truncated_hypothesis_refusal() {
        // The Kronecker algebra has HH^1 = K^3, so truncating to k = 0 must
        // refuse when verification is requested.
        let p = catalog::kronecker_standard();
        let err = truncated_betti(&p, 0, 2, Hypothesis::Verify { probe_bound: 3 }, &limits());
        assert!(matches!(err, Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn center_lie_center_inclusion_helper() {
        assert!(center_meets_lie_center(&catalog::m2_standard()));
        assert!(center_meets_lie_center(&catalog::kronecker_standard()));
    }

    #[test]
    fn betti_hq_returns_partial_table_at_cap() {
        let p = catalog::m2_standard();
        let m = self_module(&p);
        // Admits sigma^0 (32x4) and sigma^1 (152x32) but not sigma^2
        // (624x152), so degrees 0 and 1 are still reported.
        let tight = Limits { entry_cap: 10_000 };
        let table = betti_hq(&p, &m, 4, &tight).unwrap();
        assert_eq!(table.dims(), vec![1, 1]);
        let notice = table.notice.expect("truncation notice");
        assert!(notice.contains("degree 2"), "{notice}");

        // A cap too small for even the first differential is a hard error.
        let hopeless = Limits { entry_cap: 10 };
        assert!(matches!(
            betti_hq(&p, &m, 4, &hopeless),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn betti_hq_rejects_invalid_module() {
        let p = catalog::a2_standard();
        let dim = p.dim();
        let zero_table = vec![vec![crate::algebra::Element::zero(); dim]; dim];
        // All-zero actions break the module unit axiom.
        let broken = QuasiPoissonModule::new(dim, dim, zero_table.clone(), zero_table.clone(), zero_table)
            .unwrap();
        assert!(matches!(
            betti_hq(&p, &broken, 2, &limits()),
            Err(Error::AxiomViolations(_))
        ));
    }
}
