use proptest::prelude::*;
use qswe_core::gf2::BitMatrix;
use qswe_core::pauli::{expansion_sign, Sign, SignMatrix, SignedPauli};
use qswe_core::random::{random_matrix, random_pauli_index, random_sign, random_vector, rng};
use qswe_core::PauliIndex;

fn column_index(h: &BitMatrix, j: usize) -> PauliIndex {
    PauliIndex::from_bits(h.col(j)).unwrap()
}

proptest! {
    #[test]
    fn multiplication_matches_matrices(n in 0usize..5, seed: u64) {
        let mut g = rng(seed);
        let p = SignedPauli::new(random_pauli_index(&mut g, n), random_sign(&mut g));
        let q = SignedPauli::new(random_pauli_index(&mut g, n), random_sign(&mut g));
        let pq = p.mul(&q).unwrap();
        prop_assert_eq!(pq.to_matrix().unwrap(), p.to_matrix().unwrap().matmul(&q.to_matrix().unwrap()));
    }

    #[test]
    fn multiplication_is_associative(n in 0usize..8, seed: u64) {
        let mut g = rng(seed);
        let [p, q, r] = [(); 3].map(|_| SignedPauli::positive(random_pauli_index(&mut g, n)));
        let left = p.mul(&q).unwrap().mul(&r).unwrap();
        let right = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn square_is_minus_one_to_the_y_count(n in 0usize..8, seed: u64) {
        let p = SignedPauli::positive(random_pauli_index(&mut rng(seed), n));
        let sq = p.mul(&p).unwrap();
        prop_assert!(sq.index.is_identity());
        prop_assert_eq!(sq.sign, Sign::from_parity(p.index.y_count() % 2 == 1));
        if n <= 4 {
            let m = p.to_matrix().unwrap();
            let expect = SignedPauli::new(PauliIndex::identity(n), sq.sign).to_matrix().unwrap();
            prop_assert_eq!(m.matmul(&m), expect);
        }
    }

    #[test]
    fn commutation_parity(n in 0usize..8, seed: u64) {
        let mut g = rng(seed);
        let p = SignedPauli::positive(random_pauli_index(&mut g, n));
        let q = SignedPauli::positive(random_pauli_index(&mut g, n));
        let pq = p.mul(&q).unwrap();
        let qp = q.mul(&p).unwrap();
        let anticommute = p.index.quad_form(&q.index).unwrap() ^ q.index.quad_form(&p.index).unwrap();
        prop_assert_eq!(pq.index, qp.index);
        prop_assert_eq!(pq.sign == qp.sign, !anticommute);
    }

    #[test]
    fn closed_form_sign_matches_sequential_product(n in 0usize..6, gates in 0usize..12, seed: u64) {
        let mut g = rng(seed);
        let h = random_matrix(&mut g, 2 * n, gates);
        let a = random_vector(&mut g, gates);
        let mut acc = SignedPauli::identity(n);
        for j in a.ones() {
            acc = SignedPauli::positive(column_index(&h, j)).mul(&acc).unwrap();
        }
        prop_assert_eq!(acc.index.bits(), &h.mul_vec(&a).unwrap());
        prop_assert_eq!(acc.sign.is_negative(), expansion_sign(&h, &a).unwrap());
    }
}

#[test]
fn sign_matrix_of_identity_index_is_identity() {
    let m = SignedPauli::identity(3).to_matrix().unwrap();
    assert_eq!(m, SignMatrix::identity(8));
}
