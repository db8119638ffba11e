use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qswe_core::circuit::{embed_real, r_map_check, validate_real, CircuitClass};
use qswe_core::random::{conforming_circuit, mixed_circuit, real_circuit, rng};
use qswe_core::reduction::{amplitude_instance, expand, path_sum_matrix};
use qswe_core::sim::{circuit_unitary, prob_first_qubit_one, solve_probability_sign, Model};
use qswe_core::{eval, Circuit, ExactRational, Gate, Pauli, PauliIndex, Sign};

const KL: [(u64, u64); 3] = [(4, 3), (2, 1), (5, 2)];

fn with_idle_qubit(c: &Circuit) -> Circuit {
    let gates = c
        .gates()
        .iter()
        .map(|g| {
            let mut ps: Vec<Pauli> = g.index.paulis().collect();
            ps.push(Pauli::I);
            Gate::new(PauliIndex::from_paulis(&ps), g.epsilon)
        })
        .collect();
    Circuit::new(c.num_qubits() + 1, c.k(), c.l(), gates).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unitary_up_to_scale(n in 0usize..4, gates in 0usize..7, kl in 0usize..3, seed: u64) {
        let (k, l) = KL[kl];
        let c = mixed_circuit(&mut rng(seed), n, gates, k, l);
        let m = circuit_unitary(&c).unwrap();
        let d = m.dim();
        let scale = num_traits::pow(c.norm_squared(), gates);
        for r in 0..d {
            for s in 0..d {
                let mut acc = Complex::new(BigInt::zero(), BigInt::zero());
                for t in 0..d {
                    acc += m.get(t, r).conj() * m.get(t, s);
                }
                let expect = if r == s { scale.clone() } else { BigInt::zero() };
                prop_assert_eq!(acc, Complex::new(expect, BigInt::zero()));
            }
        }
    }

    #[test]
    fn real_circuits_have_real_unitaries(n in 1usize..5, gates in 0usize..8, seed: u64) {
        let c = real_circuit(&mut rng(seed), n, gates, 2, 1);
        prop_assert!(circuit_unitary(&c).unwrap().is_real());
    }

    #[test]
    fn path_sum_equals_unitary(n in 1usize..4, gates in 0usize..9, kl in 0usize..3, seed: u64) {
        let (k, l) = KL[kl];
        let c = real_circuit(&mut rng(seed), n, gates, k, l);
        let m = circuit_unitary(&c).unwrap();
        let p = path_sum_matrix(&expand(&c).unwrap(), k, l).unwrap();
        let d = m.dim();
        for r in 0..d {
            for s in 0..d {
                prop_assert_eq!(m.get(r, s), &Complex::new(p[r * d + s].clone(), BigInt::zero()));
            }
        }
    }

    #[test]
    fn nonconforming_gates_go_through_the_diagonal(n in 1usize..5, gates in 0usize..9, seed: u64) {
        let c = real_circuit(&mut rng(seed), n, gates, 4, 3);
        let amp = circuit_unitary(&c).unwrap().get(0, 0).clone();
        prop_assert_eq!(amp, Complex::new(eval(&amplitude_instance(&c).unwrap()).unwrap(), BigInt::zero()));
    }

    #[test]
    fn embedding_intertwines(n in 0usize..4, gates in 0usize..6, seed: u64) {
        let c = mixed_circuit(&mut rng(seed), n, gates, 4, 3);
        let e = embed_real(&c);
        prop_assert!(validate_real(&e).class != CircuitClass::Complex);
        prop_assert!(r_map_check(&c).unwrap());
    }

    #[test]
    fn probabilities_are_probabilities(n in 1usize..5, gates in 0usize..8, seed: u64) {
        let c = mixed_circuit(&mut rng(seed), n, gates, 5, 2);
        for model in [Model::Qram, Model::Q1ram] {
            let p = prob_first_qubit_one(&c, model).unwrap();
            prop_assert!(p >= ExactRational::zero() && p <= ExactRational::one());
        }
    }

    #[test]
    fn idle_qubits_do_not_change_probabilities(n in 1usize..4, gates in 0usize..7, seed: u64) {
        let c = mixed_circuit(&mut rng(seed), n, gates, 4, 3);
        let wide = with_idle_qubit(&c);
        for model in [Model::Qram, Model::Q1ram] {
            prop_assert_eq!(prob_first_qubit_one(&c, model).unwrap(), prob_first_qubit_one(&wide, model).unwrap());
        }
    }

    #[test]
    fn qram_probability_from_first_column(n in 1usize..5, gates in 0usize..8, seed: u64) {
        let c = conforming_circuit(&mut rng(seed), n, gates, 4, 3);
        let m = circuit_unitary(&c).unwrap();
        let half = m.dim() / 2;
        let zero: BigInt = (0..half).map(|s| m.get(s, 0).norm_sqr()).sum();
        let total = num_traits::pow(c.norm_squared(), gates);
        let p = prob_first_qubit_one(&c, Model::Qram).unwrap();
        prop_assert_eq!(p, ExactRational::new(&total - zero, total));
    }

    #[test]
    fn probability_sign_matches_bias(num in 0i64..=64) {
        let p = ExactRational::new(BigInt::from(num), BigInt::from(64));
        let bias = &p * BigInt::from(2) - ExactRational::one();
        let four_bias_sq = &bias * &bias * BigInt::from(4);
        match solve_probability_sign(&p) {
            Ok(s) => {
                prop_assert!(four_bias_sq >= ExactRational::one());
                prop_assert_eq!(s, if num < 32 { Sign::Minus } else { Sign::Plus });
            }
            Err(_) => prop_assert!(four_bias_sq < ExactRational::one()),
        }
    }
}
