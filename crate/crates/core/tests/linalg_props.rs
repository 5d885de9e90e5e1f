use arrlie_core::linalg::{proportional, Matrix, SparseEchelon};
use arrlie_core::Rational;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|row| row.into_iter().map(q).collect()).collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(8)) {
        let (r, pivots) = m.rref();
        let (r2, pivots2) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn row_rank_equals_column_rank(m in matrix(8)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn block_diagonal_rank_scales(m in matrix(5), k in 1usize..=4) {
        let b = m.block_diagonal(k);
        prop_assert_eq!(b.rows(), k * m.rows());
        prop_assert_eq!(b.rank(), k * m.rank());
    }

    #[test]
    fn sparse_echelon_agrees_with_dense_rank(m in matrix(6)) {
        let mut e = SparseEchelon::new();
        for i in 0..m.rows() {
            let v: BTreeMap<usize, Rational> =
                m.row(i).iter().enumerate().filter(|(_, x)| **x != q(0)).map(|(j, x)| (j, x.clone())).collect();
            e.insert(v);
        }
        prop_assert_eq!(e.rank(), m.rank());
        for i in 0..m.rows() {
            let v: BTreeMap<usize, Rational> =
                m.row(i).iter().enumerate().filter(|(_, x)| **x != q(0)).map(|(j, x)| (j, x.clone())).collect();
            prop_assert!(e.contains(v));
        }
    }

    #[test]
    fn scaled_forms_are_proportional(f in prop::collection::vec(-4i64..=4, 1..6), c in 1i64..=5, neg in any::<bool>()) {
        prop_assume!(f.iter().any(|&x| x != 0));
        let c = if neg { -c } else { c };
        let g: Vec<Rational> = f.iter().map(|&x| q(x * c) / q(7)).collect();
        let f: Vec<Rational> = f.into_iter().map(q).collect();
        prop_assert!(proportional(&f, &g).unwrap());
    }
}

#[test]
fn zero_forms_are_rejected() {
    assert!(proportional(&[q(0), q(0)], &[q(1), q(0)]).is_err());
}

#[test]
fn independent_forms_are_not_proportional() {
    assert!(!proportional(&[q(1), q(0)], &[q(1), q(1)]).unwrap());
}
