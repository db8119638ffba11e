use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use qswe_core::enumerator::{eval, eval_naive, eval_with, promise_holds, sign_with_promise, EvalOptions, QsweInstance};
use qswe_core::gf2::{nullspace_basis, BitMatrix};
use qswe_core::random::{random_instance, random_matrix, rng};
use qswe_core::{Error, Sign};

fn with_b(inst: &QsweInstance, b: BitMatrix) -> QsweInstance {
    QsweInstance::new(inst.a.clone(), b, inst.x, inst.y).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gray_walk_matches_naive(n in 0usize..13, seed: u64) {
        let inst = random_instance(&mut rng(seed), n, 7);
        prop_assert_eq!(eval(&inst).unwrap(), eval_naive(&inst).unwrap());
    }

    #[test]
    fn bounded_by_x_plus_y_to_the_n(n in 0usize..13, seed: u64) {
        let inst = random_instance(&mut rng(seed), n, 9);
        let s = eval(&inst).unwrap();
        prop_assert!(s.abs() <= num_traits::pow(BigInt::from(inst.x + inst.y), n));
    }

    #[test]
    fn parallel_walk_is_identical(n in 0usize..15, threads in 2usize..6, seed: u64) {
        let inst = random_instance(&mut rng(seed), n, 5);
        let one = eval_with(&inst, &EvalOptions::default()).unwrap();
        let many = eval_with(&inst, &EvalOptions::default().with_threads(threads)).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn only_the_quadratic_form_of_b_matters(n in 1usize..11, seed: u64) {
        let mut g = rng(seed);
        let inst = random_instance(&mut g, n, 5);
        // Adding a symmetric zero-diagonal matrix leaves bᵀBb unchanged.
        let r = random_matrix(&mut g, n, n);
        let mut sym = r.add(&r.transpose()).unwrap();
        for i in 0..n {
            sym.set(i, i, false);
        }
        let moved = with_b(&inst, inst.b.add(&sym).unwrap());
        prop_assert_eq!(eval(&inst).unwrap(), eval(&moved).unwrap());
    }

    #[test]
    fn row_operations_on_a_preserve_the_value(n in 1usize..11, seed: u64) {
        let mut g = rng(seed);
        let inst = random_instance(&mut g, n, 5);
        if inst.m() >= 2 {
            let mut a = inst.a.clone();
            a.xor_row_into(0, 1);
            a.swap_rows(0, inst.m() - 1);
            let moved = QsweInstance::new(a, inst.b.clone(), inst.x, inst.y).unwrap();
            prop_assert_eq!(eval(&inst).unwrap(), eval(&moved).unwrap());
        }
    }

    #[test]
    fn unsigned_unit_weights_count_the_kernel(n in 0usize..13, seed: u64) {
        let inst = random_instance(&mut rng(seed), n, 3);
        let plain = QsweInstance::new(inst.a.clone(), BitMatrix::zeros(n, n), 1, 1).unwrap();
        let dim = nullspace_basis(&inst.a).cols();
        prop_assert_eq!(eval(&plain).unwrap(), BigInt::one() << dim);
    }

    #[test]
    fn sign_decision_matches_direct_comparison(n in 0usize..11, seed: u64) {
        let inst = random_instance(&mut rng(seed), n, 4);
        let s = eval_naive(&inst).unwrap();
        // 4S² vs (x²+y²)ⁿ by repeated multiplication.
        let base = BigInt::from(inst.x * inst.x + inst.y * inst.y);
        let mut rhs = BigInt::one();
        for _ in 0..n {
            rhs *= &base;
        }
        let holds = BigInt::from(4) * &s * &s >= rhs;
        prop_assert_eq!(promise_holds(&s, inst.x, inst.y, n), holds);
        match sign_with_promise(&inst) {
            Ok(sign) => {
                prop_assert!(holds);
                prop_assert_eq!(sign, if s.is_negative() { Sign::Minus } else { Sign::Plus });
            }
            Err(Error::PromiseViolated { .. }) => prop_assert!(!holds),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn kernel_limit_is_enforced() {
    let inst = QsweInstance::new(BitMatrix::zeros(0, 10), BitMatrix::zeros(10, 10), 1, 1).unwrap();
    let opts = EvalOptions::default().with_kernel_limit(8);
    assert!(matches!(
        eval_with(&inst, &opts),
        Err(Error::KernelTooLarge { dim: 10, limit: 8 })
    ));
}

#[test]
fn naive_limit_is_enforced() {
    let inst = QsweInstance::new(BitMatrix::zeros(0, 21), BitMatrix::zeros(21, 21), 1, 1).unwrap();
    assert!(matches!(eval_naive(&inst), Err(Error::LimitExceeded { .. })));
}
