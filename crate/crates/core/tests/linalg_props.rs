mod common;

use common::oracle_rank;
use implicit_core::*;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = QMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(lo..=hi, c), r)
            .prop_map(|rows| QMatrix::from_i64_rows(&rows).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
            .prop_map(|rows| QMatrix::from_i64_rows(&rows).unwrap())
    })
}

fn rows_of(m: &QMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return rat(1);
    }
    let mut acc = rat(0);
    for j in 0..m.len() {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].clone() * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in matrix(40, -1, 1)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_matches_oracle(m in matrix(12, -3, 3)) {
        prop_assert_eq!(m.rank(), oracle_rank(&rows_of(&m)));
    }

    #[test]
    fn rank_plus_nullity(m in matrix(12, -2, 2)) {
        let null = m.nullspace_basis();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in &null {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(oracle_rank(&null), null.len());
    }

    #[test]
    fn det_matches_cofactor_expansion(m in square(4)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&rows_of(&m)));
    }

    #[test]
    fn det_vanishes_iff_rank_deficient(m in square(6)) {
        prop_assert_eq!(m.det().unwrap().is_zero(), m.rank() < m.rows());
    }

    #[test]
    fn solve_returns_a_solution(m in matrix(8, -3, 3), x in prop::collection::vec(-5i64..=5, 8)) {
        let x: Vec<Rational> = x[..m.cols()].iter().map(|&v| rat(v)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}
