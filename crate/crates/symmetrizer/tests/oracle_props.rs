//! The two symmetrizer characterizations agree: the tensor-definition
//! oracle versus membership in the solved Hessian-symmetry system.

use proptest::prelude::*;

use symmetrizer::algebra::{
    is_symmetrizer_hessian, is_symmetrizer_oracle, solve_symmetrizer_algebra,
};
use symmetrizer::poly::monomials_of_degree;
use symmetrizer::{MPoly, QMatrix, Q};

const NVARS: usize = 4;

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| symmetrizer::qr(n, d))
}

fn homogeneous(degree: u32) -> impl Strategy<Value = MPoly> {
    let monos = monomials_of_degree(NVARS, degree);
    prop::collection::vec(-4i64..=4, monos.len()).prop_map(move |coeffs| {
        MPoly::from_terms(
            NVARS,
            monos
                .iter()
                .cloned()
                .zip(coeffs.into_iter().map(symmetrizer::q)),
        )
    })
}

fn matrix() -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(rational(), NVARS * NVARS)
        .prop_map(|data| QMatrix::from_flat(NVARS, NVARS, data))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_matches_hessian_condition(p in homogeneous(3), a in matrix()) {
        prop_assume!(!p.is_zero());
        let oracle = is_symmetrizer_oracle(&p, &a).unwrap();
        let hessian = is_symmetrizer_hessian(&p, &a).unwrap();
        prop_assert_eq!(oracle, hessian);
    }

    #[test]
    fn oracle_matches_hessian_condition_quartic(p in homogeneous(4), a in matrix()) {
        prop_assume!(!p.is_zero());
        let oracle = is_symmetrizer_oracle(&p, &a).unwrap();
        let hessian = is_symmetrizer_hessian(&p, &a).unwrap();
        prop_assert_eq!(oracle, hessian);
    }

    #[test]
    fn solver_members_satisfy_both_routes(p in homogeneous(3), coeffs in prop::collection::vec(rational(), 8)) {
        prop_assume!(!p.is_zero());
        let alg = solve_symmetrizer_algebra(&p).unwrap();
        // A random element of the solved span passes both characterizations.
        let mut member = QMatrix::zero(NVARS, NVARS);
        for (c, b) in coeffs.iter().zip(alg.basis()) {
            member = member.try_add(&b.scale(c)).unwrap();
        }
        prop_assert!(is_symmetrizer_oracle(&p, &member).unwrap());
        prop_assert!(is_symmetrizer_hessian(&p, &member).unwrap());
        prop_assert!(alg.contains(&member));
    }
}
