//! Randomized structural properties of the algebra layer.

use proptest::prelude::*;

use qpcoh::algebra::{
    center, lie_center, path_algebra, self_module, standard_poisson, validate_poisson, Quiver,
};
use qpcoh::catalog;
use qpcoh::linalg::solve_dense;
use qpcoh::scalar::{frac, Scalar};

prop_compose! {
    fn arbitrary_quiver()(vertices in 1usize..=6)
        (vertices in Just(vertices), arrows in proptest::collection::vec((0usize..6, 0usize..6), 0..=8))
        -> Quiver
    {
        // Orient every arrow upward to force acyclicity.
        let arrows = arrows
            .into_iter()
            .filter_map(|(a, b)| {
                let (s, t) = (a % vertices, b % vertices);
                if s < t { Some((s, t)) } else if t < s { Some((t, s)) } else { None }
            })
            .collect();
        Quiver { vertices, arrows }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_algebras_are_associative_and_unital(quiver in arbitrary_quiver()) {
        prop_assume!(quiver.is_acyclic());
        let algebra = path_algebra(&quiver).unwrap();
        prop_assert!(algebra.validate().is_empty());
    }

    #[test]
    fn standard_poisson_always_validates(quiver in arbitrary_quiver(), num in -3i64..=3, den in 1i64..=3) {
        prop_assume!(quiver.is_acyclic());
        let algebra = path_algebra(&quiver).unwrap();
        prop_assume!(algebra.dim() <= 8);
        let p = standard_poisson(algebra, &frac(num, den));
        prop_assert!(validate_poisson(&p).is_valid());
        prop_assert!(self_module(&p).validate(&p).is_empty());
    }
}

#[test]
fn standard_poisson_validates_on_conjugated_algebras() {
    for seed in 0..30 {
        let p = catalog::random_poisson(seed);
        assert!(validate_poisson(&p).is_valid(), "seed {seed}");
        assert!(self_module(&p).validate(&p).is_empty(), "seed {seed}");
    }
}

#[test]
fn center_contained_in_lie_center_for_standard_brackets() {
    for (name, algebra) in [
        ("m2", catalog::m2_standard().algebra().clone()),
        ("kronecker", catalog::kronecker_standard().algebra().clone()),
        ("a3", catalog::a3_standard().algebra().clone()),
    ] {
        for lambda in [frac(0, 1), frac(1, 1), frac(-7, 3)] {
            let p = standard_poisson(algebra.clone(), &lambda);
            let z = center(p.algebra());
            let zl = lie_center(&p);
            let dim = p.dim();
            let cols: Vec<Vec<Scalar>> = zl.iter().map(|e| e.to_dense(dim)).collect();
            for e in &z {
                assert!(
                    solve_dense(&cols, &e.to_dense(dim)).is_some(),
                    "{name} with lambda {lambda}"
                );
            }
        }
    }
}
