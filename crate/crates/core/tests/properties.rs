//! Property tests for the algebraic invariants of every core module.
//!
//! Random objects are built from a proptest-drawn seed through the same
//! bounded samplers the verification engine uses, so failures shrink to a
//! seed that reproduces them.

use num_bigint::BigInt;
use polyadic_core::blockshift::{
    dense_product, nary_product, nary_product_dense, on_pattern, product_pattern,
    querelement_law_failures, unique_polyadize,
};
use polyadic_core::catalog::{random_grassmann, so2_nary_product, So2Poly};
use polyadic_core::decomposition::{
    diagshift_nary_product, pmatrix_ternary_product, shiftdiag_nary_product, DiagShift, PMatrix,
    ShiftDiag,
};
use polyadic_core::scalar::TextScalar;
use polyadic_core::shiftdeform::{
    derived_sum, double_nu_s, nu_s, quer_tuple, ShiftTuple,
};
use polyadic_core::verify::{
    check_querelement, check_total_associativity, random_invertible, random_matrix, trial_rng,
    BlockShiftStructure, RunConfig, ShiftTupleStructure,
};
use polyadic_core::{
    BlockShiftMatrix, ComplexRational as C, Domain, GrassmannElement, Matrix, Result,
    SuperMatrix, Turn,
};
use proptest::prelude::*;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

/// `mu[..mu[args[pos..pos+n]]..]` for every placement must agree.
fn all_placements_agree<E: PartialEq + Clone>(
    n: usize,
    args: &[E],
    mu: impl Fn(&[E]) -> Result<E>,
) -> bool {
    let results: Vec<E> = (0..n)
        .map(|pos| {
            let inner = mu(&args[pos..pos + n]).unwrap();
            let mut outer = args[..pos].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&args[pos + n..]);
            mu(&outer).unwrap()
        })
        .collect();
    results.windows(2).all(|w| w[0] == w[1])
}

fn random_blockshift(seed: u64, n: usize, dims: Vec<usize>, invertible: bool) -> Vec<BlockShiftMatrix<C>> {
    let s = BlockShiftStructure {
        arity: n,
        dims,
        complex: seed % 2 == 0,
        invertible,
    };
    let mut rng = trial_rng(seed, 0);
    (0..2 * n - 1).map(|_| s.sample_element(&mut rng)).collect()
}

mod scalars {
    use super::*;

    fn sign(a: &GrassmannElement, b: &GrassmannElement) -> C {
        if a.is_odd() && b.is_odd() {
            C::from(-1)
        } else {
            C::from(1)
        }
    }

    proptest! {
        #![proptest_config(cases(64))]

        #[test]
        fn grassmann_associative(seed: u64, n in 0u8..=6, parities in any::<[bool; 3]>()) {
            let mut rng = trial_rng(seed, 0);
            let [a, b, c] = parities.map(|even| random_grassmann(&mut rng, n, even, false));
            let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
            let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn grassmann_mixed_associative(seed: u64, n in 1u8..=6) {
            let mut rng = trial_rng(seed, 0);
            let mut mixed = || {
                let e = random_grassmann(&mut rng, n, true, false);
                let o = random_grassmann(&mut rng, n, false, false);
                e.try_add(&o).unwrap()
            };
            let (a, b, c) = (mixed(), mixed(), mixed());
            prop_assert_eq!(
                a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
                a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn grassmann_graded_commutative(seed: u64, n in 0u8..=6, pa: bool, pb: bool) {
            let mut rng = trial_rng(seed, 0);
            let a = random_grassmann(&mut rng, n, pa, false);
            let b = random_grassmann(&mut rng, n, pb, false);
            let ab = a.try_mul(&b).unwrap();
            let ba = b.try_mul(&a).unwrap().scale(&sign(&a, &b));
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn grassmann_inverse(seed: u64, n in 0u8..=6) {
            let mut rng = trial_rng(seed, 0);
            let a = random_grassmann(&mut rng, n, true, true)
                .try_add(&random_grassmann(&mut rng, n, false, false))
                .unwrap();
            let inv = a.inverse().unwrap();
            let one = GrassmannElement::constant(n, C::from(1));
            prop_assert_eq!(inv.try_mul(&a).unwrap(), one.clone());
            prop_assert_eq!(a.try_mul(&inv).unwrap(), one);
        }

        #[test]
        fn grassmann_zero_body_not_invertible(seed: u64, n in 1u8..=6) {
            let mut rng = trial_rng(seed, 0);
            let a = random_grassmann(&mut rng, n, false, false);
            prop_assert!(a.inverse().is_err());
        }

        #[test]
        fn grassmann_text_round_trip(seed: u64, n in 0u8..=6, even: bool) {
            let mut rng = trial_rng(seed, 0);
            let a = random_grassmann(&mut rng, n, even, false);
            let text = a.to_text();
            let back = GrassmannElement::parse_text(&text, &Domain::Grassmann(n.max(1))).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn complex_text_round_trip(re_n in -1000i64..1000, re_d in 1i64..100, im_n in -1000i64..1000, im_d in 1i64..100) {
            let z = C::from_parts((re_n, re_d), (im_n, im_d));
            let text = z.to_text();
            let back = C::parse_text(&text, &Domain::ComplexRational).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, z);
        }
    }
}

mod matrices {
    use super::*;

    fn random_supermatrix(seed: u64, even: usize, odd: usize, n: u8) -> SuperMatrix {
        let mut rng = trial_rng(seed, 1);
        let d = even + odd;
        let entries = (0..d * d)
            .map(|k| {
                let (r, c) = (k / d, k % d);
                let diag = (r < even) == (c < even);
                random_grassmann(&mut rng, n, diag, diag && r == c)
            })
            .collect();
        SuperMatrix::new(even, odd, Matrix::new(d, d, entries).unwrap()).unwrap()
    }

    proptest! {
        #![proptest_config(cases(48))]

        #[test]
        fn inverse_is_involutive(seed: u64, p in 1usize..=5, complex: bool) {
            let mut rng = trial_rng(seed, 0);
            let m = random_invertible(&mut rng, p, complex);
            let inv = m.inverse().unwrap();
            prop_assert_eq!(inv.inverse().unwrap(), m.clone());
            prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(p));
        }

        #[test]
        fn determinant_multiplicative(seed: u64, p in 1usize..=4, complex: bool) {
            let mut rng = trial_rng(seed, 0);
            let a = random_matrix(&mut rng, p, p, complex);
            let b = random_matrix(&mut rng, p, p, complex);
            let lhs = a.mul(&b).unwrap().determinant().unwrap();
            let rhs = a.determinant().unwrap() * b.determinant().unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.determinant().unwrap(), a.determinant_laplace().unwrap());
        }

        #[test]
        fn supermatrices_closed(seed: u64, even in 0usize..=2, odd in 0usize..=2, n in 1u8..=4) {
            prop_assume!(even + odd > 0);
            let a = random_supermatrix(seed, even, odd, n);
            let b = random_supermatrix(seed.wrapping_add(1), even, odd, n);
            prop_assert!(a.mul(&b).unwrap().is_standard());
            if let Ok(inv) = a.inverse() {
                prop_assert!(inv.is_standard());
                prop_assert_eq!(
                    a.mul(&inv).unwrap().into_matrix(),
                    Matrix::identity(even + odd)
                );
            }
        }
    }
}

mod blockshift {
    use super::*;

    fn cyclic_dims(n: usize, raw: &[usize]) -> Vec<usize> {
        raw.iter().take(n - 1).copied().collect()
    }

    proptest! {
        #![proptest_config(cases(32))]

        #[test]
        fn closure_matches_dense(seed: u64, n in 2usize..=5, raw in prop::collection::vec(1usize..=3, 4)) {
            let qs = random_blockshift(seed, n, cyclic_dims(n, &raw), false);
            let args = &qs[..n];
            let fast = nary_product(args).unwrap();
            prop_assert_eq!(fast.dims(), args[0].dims());
            prop_assert_eq!(&fast, &nary_product_dense(args).unwrap());
            prop_assert_eq!(fast.to_dense(), dense_product(args).unwrap());
        }

        #[test]
        fn totally_associative(seed: u64, n in 3usize..=5, p in 1usize..=2) {
            let qs = random_blockshift(seed, n, vec![p; n - 1], false);
            prop_assert!(all_placements_agree(n, &qs, nary_product));
        }

        #[test]
        fn querelement_law(seed: u64, n in 2usize..=5, p in 1usize..=2) {
            let qs = random_blockshift(seed, n, vec![p; n - 1], true);
            let q = &qs[0];
            let quer = q.querelement().unwrap();
            prop_assert!(querelement_law_failures(q, &quer).unwrap().is_empty());
        }

        #[test]
        fn unique_polyadization_homomorphism(seed: u64, n in 2usize..=5, p in 1usize..=3) {
            let mut rng = trial_rng(seed, 0);
            let bs: Vec<Matrix<C>> = (0..n).map(|_| random_matrix(&mut rng, p, p, true)).collect();
            let images: Vec<_> = bs.iter().map(|b| unique_polyadize(n, b).unwrap()).collect();
            let binary = Matrix::product(&bs).unwrap();
            prop_assert_eq!(nary_product(&images).unwrap(), unique_polyadize(n, &binary).unwrap());
        }

        #[test]
        fn character_homomorphism(seed: u64, n in 2usize..=5, p in 1usize..=2) {
            let qs = random_blockshift(seed, n, vec![p; n - 1], false);
            let chi = |q: &BlockShiftMatrix<C>| q.polyadized_character(Matrix::determinant).unwrap();
            let product = nary_product(&qs[..n]).unwrap();
            let rhs = qs[..n].iter().map(chi).fold(C::from(1), |acc, x| acc * x);
            prop_assert_eq!(chi(&product), rhs);
        }

        #[test]
        fn pattern_law(seed: u64, n in 2usize..=5, k in 1usize..=7, p in 1usize..=2) {
            let s = BlockShiftStructure::square(n, p, false, true).unwrap();
            let mut rng = trial_rng(seed, 0);
            let qs: Vec<_> = (0..k).map(|_| s.sample_element(&mut rng)).collect();
            let dense = dense_product(&qs).unwrap();
            prop_assert_eq!(on_pattern(n, &s.dims, &dense), product_pattern(k, n));
        }
    }
}

mod decomposition {
    use super::*;

    fn random_shiftdiag(seed: u64, n: usize, sizes: &[usize], count: usize) -> Vec<ShiftDiag<C>> {
        let mut rng = trial_rng(seed, 2);
        (0..count)
            .map(|_| {
                let blocks = (0..n - 1)
                    .map(|_| sizes.iter().map(|&q| random_matrix(&mut rng, q, q, false)).collect())
                    .collect();
                ShiftDiag::new(n, blocks).unwrap()
            })
            .collect()
    }

    fn random_diagshift(seed: u64, n: usize, dims: &[Vec<usize>], count: usize) -> Vec<DiagShift<C>> {
        let mut rng = trial_rng(seed, 3);
        (0..count)
            .map(|_| {
                let components = dims
                    .iter()
                    .map(|d| {
                        BlockShiftStructure {
                            arity: n,
                            dims: d.clone(),
                            complex: false,
                            invertible: false,
                        }
                        .sample_element(&mut rng)
                    })
                    .collect();
                DiagShift::new(components).unwrap()
            })
            .collect()
    }

    fn random_pmatrix(seed: u64, q: usize, count: usize) -> Vec<PMatrix<C>> {
        let mut rng = trial_rng(seed, 4);
        (0..count)
            .map(|_| {
                let blocks = std::array::from_fn(|_| random_matrix(&mut rng, q, q, true));
                PMatrix::from_blocks(blocks).unwrap()
            })
            .collect()
    }

    proptest! {
        #![proptest_config(cases(24))]

        #[test]
        fn shiftdiag_closed_and_associative(
            seed: u64,
            n in 2usize..=4,
            sizes in prop::collection::vec(1usize..=2, 1..=3),
        ) {
            let xs = random_shiftdiag(seed, n, &sizes, 2 * n - 1);
            let product = shiftdiag_nary_product(&xs[..n]).unwrap();
            let dense: Vec<_> = xs[..n].iter().map(ShiftDiag::to_dense).collect();
            prop_assert_eq!(product.to_dense(), Matrix::product(&dense).unwrap());
            let sum = xs[0].add(&xs[1]).unwrap();
            prop_assert_eq!(sum.to_dense(), dense[0].add(&dense[1]).unwrap());
            prop_assert!(all_placements_agree(n, &xs, shiftdiag_nary_product));
        }

        #[test]
        fn diagshift_closed_and_associative(
            seed: u64,
            n in 2usize..=4,
            raw in prop::collection::vec(prop::collection::vec(1usize..=2, 3), 1..=3),
        ) {
            let dims: Vec<Vec<usize>> = raw.iter().map(|d| d[..n - 1].to_vec()).collect();
            let xs = random_diagshift(seed, n, &dims, 2 * n - 1);
            let product = diagshift_nary_product(&xs[..n]).unwrap();
            let dense: Vec<_> = xs[..n].iter().map(DiagShift::to_dense).collect();
            prop_assert_eq!(product.to_dense(), Matrix::product(&dense).unwrap());
            let sum = xs[0].add(&xs[1]).unwrap();
            prop_assert_eq!(sum.to_dense(), dense[0].add(&dense[1]).unwrap());
            prop_assert!(all_placements_agree(n, &xs, diagshift_nary_product));
        }

        #[test]
        fn pmatrix_ring(seed: u64, q in 1usize..=2) {
            let ps = random_pmatrix(seed, q, 5);
            let mu = |args: &[PMatrix<C>]| pmatrix_ternary_product(&args[0], &args[1], &args[2]);
            prop_assert!(mu(&ps[..3]).is_ok());
            prop_assert!(all_placements_agree(3, &ps, mu));
            let sum = ps[0].add(&ps[1]).unwrap();
            prop_assert_eq!(sum.to_dense(), ps[0].to_dense().add(&ps[1].to_dense()).unwrap());
        }
    }
}

mod shiftdeform {
    use super::*;

    fn tuples(n: usize, count: usize) -> impl Strategy<Value = Vec<ShiftTuple<BigInt>>> {
        prop::collection::vec(prop::collection::vec(-1000i64..1000, n - 1), count)
            .prop_map(|vs| vs.iter().map(|v| ShiftTuple::from_i64s(v).unwrap()).collect())
    }

    fn arity_and_args(count: impl Fn(usize) -> usize + 'static) -> impl Strategy<Value = (usize, Vec<ShiftTuple<BigInt>>)> {
        (2usize..=6).prop_flat_map(move |n| (Just(n), tuples(n, count(n))))
    }

    fn turn() -> impl Strategy<Value = Turn> {
        (0i64..360, 1i64..=360).prop_map(|(a, b)| Turn::ratio(a, b))
    }

    proptest! {
        #![proptest_config(cases(64))]

        #[test]
        fn totally_associative((n, args) in arity_and_args(|n| 2 * n - 1)) {
            let results: Vec<_> = (0..n).map(|pos| double_nu_s(n, &args, pos).unwrap()).collect();
            prop_assert!(results.windows(2).all(|w| w[0] == w[1]));
        }

        #[test]
        fn querelement_law((n, args) in arity_and_args(|_| 1)) {
            let a = &args[0];
            let quer = quer_tuple(n, a).unwrap();
            for pos in 0..n {
                let mut xs = vec![a.clone(); n];
                xs[pos] = quer.clone();
                prop_assert_eq!(&nu_s(n, &xs).unwrap(), a);
            }
        }

        #[test]
        fn not_componentwise_derived(args in tuples(4, 4), c in -1000i64..1000) {
            let second = args[1].components();
            prop_assume!(second.iter().any(|x| *x != second[0]));
            let mut xs = args.clone();
            xs[2] = ShiftTuple::from_i64s(&[c, c, c]).unwrap();
            prop_assert_ne!(nu_s(4, &xs).unwrap(), derived_sum(4, &xs).unwrap());
        }

        #[test]
        fn turns_match_so2(angles in prop::collection::vec(turn(), 12)) {
            let polys: Vec<So2Poly> = angles
                .chunks(3)
                .map(|c| So2Poly::new(c[0].clone(), c[1].clone(), c[2].clone()))
                .collect();
            let tuples: Vec<_> = polys.iter().map(So2Poly::to_tuple).collect();
            let via_shift = So2Poly::from_tuple(&nu_s(4, &tuples).unwrap()).unwrap();
            prop_assert_eq!(via_shift, so2_nary_product(&polys[0], &polys[1], &polys[2], &polys[3]));
        }
    }
}

mod verify {
    use super::*;

    proptest! {
        #![proptest_config(cases(8))]

        #[test]
        fn reports_reproducible(seed: u64, n in 2usize..=4) {
            let s = BlockShiftStructure::square(n, 2, true, true).unwrap();
            let cfg = RunConfig::new(6, seed);
            let a = check_querelement(&s, |q| q.querelement(), cfg).unwrap();
            let b = check_querelement(&s, |q| q.querelement(), cfg.parallel(true)).unwrap();
            prop_assert!(a.passed());
            prop_assert!(a.same_outcome(&b));
        }

        #[test]
        fn failures_reproducible(seed: u64) {
            let s = ShiftTupleStructure { arity: 4, m: 2 };
            let cfg = RunConfig::new(50, seed);
            let a = check_total_associativity(&s, cfg).unwrap();
            let b = check_total_associativity(&s, cfg.parallel(true)).unwrap();
            prop_assert!(!a.passed());
            prop_assert!(a.counterexample.is_some());
            prop_assert!(a.same_outcome(&b));
            prop_assert_eq!(
                serde_json::to_value(&a.counterexample).unwrap(),
                serde_json::to_value(&b.counterexample).unwrap()
            );
        }
    }
}
