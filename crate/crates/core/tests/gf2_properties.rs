use proptest::prelude::*;
use qswe_core::gf2::{
    affine_solutions, factor_rank, full_rank_replacement, lwtr, nullspace_basis, rank, row_reduce, solve_affine,
    BitMatrix, BitVector, SpanBasis,
};
use qswe_core::random::{random_low_rank_matrix, random_matrix, random_vector, replacement_pair, rng};

fn all_vectors(len: usize) -> impl Iterator<Item = BitVector> {
    (0u64..1 << len)
        .map(move |w| BitVector::from_bits(&(0..len).map(|i| w >> (len - 1 - i) & 1 == 1).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn row_reduce_is_a_left_multiplication(rows in 0usize..10, cols in 0usize..10, seed: u64) {
        let a = random_low_rank_matrix(&mut rng(seed), rows, cols);
        let ef = row_reduce(&a);
        prop_assert_eq!(ef.transform.mul(&a).unwrap(), ef.reduced.clone());
        prop_assert_eq!(rank(&ef.transform), rows);
        prop_assert_eq!(ef.rank, rank(&a));
        prop_assert_eq!(ef.pivots.len(), ef.rank);
        for (r, &p) in ef.pivots.iter().enumerate() {
            prop_assert_eq!(ef.reduced.col(p), BitVector::unit(rows, r));
            prop_assert_eq!(ef.reduced.row(r).first_one(), Some(p));
        }
        for r in ef.rank..rows {
            prop_assert!(ef.reduced.row_is_zero(r));
        }
    }

    #[test]
    fn nullspace_has_the_right_dimension(rows in 0usize..10, cols in 0usize..10, seed: u64) {
        let a = random_low_rank_matrix(&mut rng(seed), rows, cols);
        let k = nullspace_basis(&a);
        prop_assert_eq!(k.rows(), cols);
        prop_assert_eq!(k.cols(), cols - rank(&a));
        prop_assert_eq!(rank(&k), k.cols());
        prop_assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn factor_rank_reconstructs(rows in 1usize..13, cols in 1usize..13, seed: u64) {
        let c = random_low_rank_matrix(&mut rng(seed), rows, cols);
        let (x, y) = factor_rank(&c);
        let r = rank(&c);
        prop_assert_eq!((x.cols(), y.cols()), (r, r));
        prop_assert_eq!(rank(&x), r);
        prop_assert_eq!(rank(&y), r);
        prop_assert_eq!(x.mul(&y.transpose()).unwrap(), c);
    }

    #[test]
    fn solve_affine_matches_brute_force(rows in 0usize..8, cols in 0usize..10, seed: u64) {
        let mut g = rng(seed);
        let a = random_low_rank_matrix(&mut g, rows, cols);
        let c = if seed % 2 == 0 {
            a.mul_vec(&random_vector(&mut g, cols)).unwrap()
        } else {
            random_vector(&mut g, rows)
        };
        let solutions: Vec<BitVector> = all_vectors(cols).filter(|v| a.mul_vec(v).unwrap() == c).collect();
        let got = solve_affine(&a, &c).unwrap();
        prop_assert_eq!(got.as_ref(), solutions.iter().min());
        if let Some(sol) = affine_solutions(&a, &c).unwrap() {
            prop_assert_eq!(1usize << sol.dimension(), solutions.len());
            for d in &sol.directions {
                prop_assert!(a.mul_vec(d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn span_basis_tracks_rank(len in 1usize..12, count in 0usize..12, seed: u64) {
        let mut g = rng(seed);
        let vs: Vec<BitVector> = (0..count).map(|_| random_vector(&mut g, len)).collect();
        let mut span = SpanBasis::new(len);
        for v in &vs {
            span.insert(v);
            prop_assert!(span.contains(v));
        }
        prop_assert_eq!(span.dimension(), rank(&BitMatrix::from_row_vectors(len, &vs)));
    }

    #[test]
    fn transpose_reverses_products(n in 1usize..9, m in 1usize..9, p in 1usize..9, seed: u64) {
        let mut g = rng(seed);
        let a = random_matrix(&mut g, n, m);
        let b = random_matrix(&mut g, m, p);
        prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
    }

    #[test]
    fn replacement_postconditions(n in 1usize..9, extra in 0usize..5, seed: u64) {
        let mut g = rng(seed);
        let cols = (n + extra).min(12);
        let (h0, h1) = replacement_pair(&mut g, n, cols);
        let h2 = full_rank_replacement(&h0, &h1).unwrap();
        let g0 = h0.transpose().mul(&h1).unwrap();
        let g2 = h2.transpose().mul(&h1).unwrap();
        prop_assert_eq!(rank(&h2), n);
        prop_assert!(g2.diagonal_is_identity());
        prop_assert_eq!(lwtr(&g2).unwrap(), lwtr(&g0).unwrap());
        for j in n..cols {
            prop_assert_eq!(h2.col(j), h0.col(j));
        }
        if rank(&h0) == n {
            prop_assert_eq!(h2, h0);
        }
    }
}
