//! Built-in example algebras and seeded random Poisson algebras.
//!
//! The named constructors cover the structures exercised throughout the test
//! suite: the ground field, dual numbers, the path algebras of the A2/A3
//! quivers and the 2-Kronecker quiver, and the 2x2 matrix algebra. Random
//! Poisson algebras are produced by conjugating a catalog algebra by a random
//! invertible rational matrix, which scrambles every structure constant
//! while provably preserving all axioms.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    matrix_algebra, path_algebra, standard_poisson, trivial_poisson, Element, FiniteDimAlgebra,
    LieBracketTable, PoissonAlgebra, Quiver,
};
use crate::linalg::rref_dense;
use crate::scalar::{frac, int, Scalar};

pub fn a2_quiver() -> Quiver {
    Quiver {
        vertices: 2,
        arrows: vec![(0, 1)],
    }
}

pub fn a3_quiver() -> Quiver {
    Quiver {
        vertices: 3,
        arrows: vec![(0, 1), (1, 2)],
    }
}

pub fn kronecker_quiver() -> Quiver {
    Quiver {
        vertices: 2,
        arrows: vec![(0, 1), (0, 1)],
    }
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field_algebra() -> FiniteDimAlgebra {
    matrix_algebra(1).expect("n = 1 is valid")
}

/// Dual numbers `K[x]/(x^2)`: basis `{1, x}`.
pub fn dual_numbers_algebra() -> FiniteDimAlgebra {
    let mut mult = vec![vec![Element::zero(); 2]; 2];
    mult[0][0] = Element::basis(0);
    mult[0][1] = Element::basis(1);
    mult[1][0] = Element::basis(1);
    FiniteDimAlgebra::new(
        2,
        vec!["1".into(), "x".into()],
        mult,
        Element::basis(0),
    )
    .expect("valid tables")
}

pub fn ground_field_standard() -> PoissonAlgebra {
    standard_poisson(ground_field_algebra(), &int(1)).with_name("k")
}

pub fn dual_numbers_trivial() -> PoissonAlgebra {
    trivial_poisson(dual_numbers_algebra()).with_name("dual-numbers-trivial")
}

pub fn a2_standard() -> PoissonAlgebra {
    standard_poisson(path_algebra(&a2_quiver()).expect("A2 is acyclic"), &int(1)).with_name("a2")
}

pub fn a3_standard() -> PoissonAlgebra {
    standard_poisson(path_algebra(&a3_quiver()).expect("A3 is acyclic"), &int(1)).with_name("a3")
}

pub fn m2_standard() -> PoissonAlgebra {
    standard_poisson(matrix_algebra(2).expect("n = 2 is valid"), &int(1)).with_name("m2")
}

pub fn kronecker_standard() -> PoissonAlgebra {
    standard_poisson(
        path_algebra(&kronecker_quiver()).expect("Kronecker is acyclic"),
        &int(1),
    )
    .with_name("kronecker")
}

/// Every named example, in a fixed order.
pub fn builtin_examples() -> Vec<PoissonAlgebra> {
    vec![
        ground_field_standard(),
        dual_numbers_trivial(),
        a2_standard(),
        a3_standard(),
        m2_standard(),
        kronecker_standard(),
    ]
}

/// Inverts a square rational matrix, if possible.
fn invert(g: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = g.len();
    let mut aug: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row = g[r].clone();
            row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let pivots = rref_dense(&mut aug);
    if pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Re-expresses `p` in the basis `w_i = sum_j g[j][i] v_j`. The conjugated
/// tables satisfy the same axioms, so this turns catalog algebras into
/// arbitrarily scrambled but provably valid Poisson algebras.
#[allow(clippy::needless_range_loop)]
pub fn change_of_basis(p: &PoissonAlgebra, g: &[Vec<Scalar>]) -> Option<PoissonAlgebra> {
    let dim = p.dim();
    let ginv = invert(g)?;
    let old_in_new = |e: &Element| -> Element {
        // v_c = sum_k ginv[k][c] w_k
        let mut out = Element::zero();
        for (c, coeff) in e.iter() {
            for k in 0..dim {
                out.add_term(k, &ginv[k][c] * coeff);
            }
        }
        out
    };
    let new_basis_in_old = |i: usize| -> Element {
        let mut out = Element::zero();
        for j in 0..dim {
            out.add_term(j, g[j][i].clone());
        }
        out
    };

    let mut mult = vec![vec![Element::zero(); dim]; dim];
    let mut bracket = vec![vec![Element::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let wi = new_basis_in_old(i);
            let wj = new_basis_in_old(j);
            mult[i][j] = old_in_new(&p.algebra().multiply(&wi, &wj));
            bracket[i][j] = old_in_new(&p.bracket().apply(&wi, &wj));
        }
    }
    let unit = old_in_new(p.algebra().unit());
    let labels = (0..dim).map(|i| format!("w{i}")).collect();
    let algebra = FiniteDimAlgebra::new(dim, labels, mult, unit).ok()?;
    let bracket = LieBracketTable::new(dim, bracket).ok()?;
    PoissonAlgebra::new(algebra, bracket)
        .ok()
        .map(|q| q.with_name(format!("{}-conjugated", p.name())))
}

/// A seeded random valid Poisson algebra of dimension at most 3: a random
/// catalog base of small dimension, a random bracket choice (trivial or a
/// scaled commutator), then a random change of basis.
pub fn random_poisson(seed: u64) -> PoissonAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: FiniteDimAlgebra = match rng.gen_range(0..4) {
        0 => ground_field_algebra(),
        1 => dual_numbers_algebra(),
        2 => path_algebra(&a2_quiver()).expect("A2 is acyclic"),
        _ => commutative_product_algebra(rng.gen_range(2..=3)),
    };
    let lambda = frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    let p = if rng.gen_bool(0.3) {
        trivial_poisson(base)
    } else {
        standard_poisson(base, &lambda)
    };
    loop {
        let dim = p.dim();
        let g: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        if let Some(q) = change_of_basis(&p, &g) {
            return q.with_name(format!("random-{seed}"));
        }
    }
}

/// `K x K x ... x K` (n factors) with the idempotent basis.
pub fn commutative_product_algebra(n: usize) -> FiniteDimAlgebra {
    let mut mult = vec![vec![Element::zero(); n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        row[i] = Element::basis(i);
    }
    let unit = Element::from_dense(&vec![Scalar::one(); n]);
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    FiniteDimAlgebra::new(n, labels, mult, unit).expect("valid tables")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_poisson;

    #[test]
    fn builtins_are_valid() {
        for p in builtin_examples() {
            let report = validate_poisson(&p);
            assert!(report.is_valid(), "{}: {report}", p.name());
        }
    }

    #[test]
    fn builtin_dimensions() {
        let dims: Vec<usize> = builtin_examples().iter().map(|p| p.dim()).collect();
        assert_eq!(dims, vec![1, 2, 3, 6, 4, 4]);
    }

    #[test]
    fn random_poisson_is_valid_and_seeded() {
        for seed in 0..25 {
            let p = random_poisson(seed);
            assert!(p.dim() <= 3);
            let report = validate_poisson(&p);
            assert!(report.is_valid(), "seed {seed}: {report}");
        }
        // Determinism of the generator.
        let a = random_poisson(7);
        let b = random_poisson(7);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(a.algebra().mult_basis(i, j), b.algebra().mult_basis(i, j));
                assert_eq!(a.bracket().bracket_basis(i, j), b.bracket().bracket_basis(i, j));
            }
        }
    }
}
