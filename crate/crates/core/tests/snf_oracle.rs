mod common;

use common::{dense_matrix, determinantal_invariants, matrix, naive_invariants};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torsion_core::snf::{dense_mul, identity};
use torsion_core::{smith_normal_form, smith_normal_form_with_transforms};

#[test]
fn matches_dense_reduction_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=40);
        let cols = rng.gen_range(1..=40);
        let density = rng.gen_range(0.05..=1.0);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
            .collect();
        let got = smith_normal_form(&matrix(&m)).invariants;
        assert_eq!(got, naive_invariants(&m), "matrix {m:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_determinantal_divisors(m in dense_matrix(4, 4, 6)) {
        prop_assert_eq!(smith_normal_form(&matrix(&m)).invariants, determinantal_invariants(&m));
    }

    #[test]
    fn invariants_form_a_divisibility_chain(m in dense_matrix(12, 12, 9)) {
        let s = smith_normal_form(&matrix(&m));
        for w in s.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.invariants.iter().all(|d| d > &BigInt::zero()));
    }

    #[test]
    fn transforms_diagonalise(m in dense_matrix(10, 10, 9)) {
        let s = smith_normal_form_with_transforms(&matrix(&m));
        let t = s.transforms.as_ref().unwrap();
        let a = matrix(&m).to_dense();
        prop_assert_eq!(dense_mul(&dense_mul(&t.u, &a), &t.v), s.diagonal());
        prop_assert_eq!(dense_mul(&t.u, &t.u_inv), identity(m.len()));
        prop_assert_eq!(dense_mul(&t.v, &t.v_inv), identity(m[0].len()));
    }

    #[test]
    fn transpose_has_same_invariants(m in dense_matrix(10, 10, 9)) {
        let t: Vec<Vec<i64>> = (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect();
        prop_assert_eq!(smith_normal_form(&matrix(&m)).invariants, smith_normal_form(&matrix(&t)).invariants);
    }
}

#[test]
fn large_entries_stay_exact() {
    let big = BigInt::one() << 90u32;
    let m = torsion_core::IntegerMatrix::from_dense(&[
        vec![big.clone(), BigInt::zero()],
        vec![BigInt::zero(), &big * 3],
    ]);
    assert_eq!(smith_normal_form(&m).invariants, vec![big.clone(), big * 3]);
}
