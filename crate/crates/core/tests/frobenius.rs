mod common;

use common::{naive_mul, naive_reduce, NaivePoly};
use kodaira_core::fp_linalg::rank;
use kodaira_core::frobenius::{
    analyze, build_matrix, corank, witness_in_image, FrobeniusProblem, MatrixBudget,
};
use kodaira_core::fp_linalg::EliminationConfig;
use kodaira_core::incidence_ring::{component_dimension, Bidegree};

fn problem(n: usize, p: u64) -> FrobeniusProblem {
    FrobeniusProblem::new(n, p).unwrap()
}

#[test]
fn shapes_from_enumeration() {
    // (3,2): target (0,4), source (0,2)
    assert_eq!(common::enumerate_normal_monomials(3, 0, 4), 35);
    assert_eq!(4 * common::enumerate_normal_monomials(3, 0, 2), 40);
    // (3,3): target (1,7), source (1,4)
    assert_eq!(common::enumerate_normal_monomials(3, 1, 7), 396);
    assert_eq!(4 * common::enumerate_normal_monomials(3, 1, 4), 480);
    for (n, p, rows, cols) in [(3, 2, 35, 40), (3, 3, 396, 480)] {
        let fm = build_matrix(&problem(n, p), &MatrixBudget::default()).unwrap();
        assert_eq!((fm.matrix.rows(), fm.matrix.cols()), (rows, cols));
    }
}

#[test]
fn minimal_rank_and_witness() {
    let fm = build_matrix(&problem(3, 2), &MatrixBudget::default()).unwrap();
    assert_eq!(rank(&fm.matrix), 34);
    assert!(!witness_in_image(&problem(3, 2)).unwrap());
    assert_eq!(problem(3, 2).witness().unwrap().to_string(), "Y0*Y1*Y2*Y3");
}

/// Re-expands every column symbolically and reduces it with the naive
/// rewriting oracle.
#[test]
fn columns_match_naive_reduction() {
    for (n, p) in [(3, 2), (3, 3), (3, 5), (4, 3), (4, 5)] {
        let fm = build_matrix(&problem(n, p), &MatrixBudget::default()).unwrap();
        let step = (fm.col_labels.len() / 400).max(1);
        for c in (0..fm.col_labels.len()).step_by(step) {
            let (i, m) = &fm.col_labels[c];
            let source: NaivePoly = [((m.xexp().to_vec(), m.yexp().to_vec()), 1)].into();
            let mut yexp = vec![0; n + 1];
            yexp[*i] = p as u32;
            let frob: NaivePoly = [((vec![0; n + 1], yexp), 1)].into();
            let expected = naive_reduce(naive_mul(&source, &frob, p), p);
            let stored: NaivePoly = fm
                .matrix
                .column(c)
                .iter()
                .map(|&(r, v)| {
                    let t = &fm.row_basis[r];
                    ((t.xexp().to_vec(), t.yexp().to_vec()), v as u64)
                })
                .collect();
            assert_eq!(stored, expected, "n={n} p={p} column {c}");
        }
    }
}

#[test]
fn pure_y_corank_is_capped_compositions() {
    for (n, p) in [(3u64, 2u64), (4, 3), (6, 5)] {
        let prob = problem(n as usize, p);
        let degree = ((p - 1) * (n - 1) + p) as u32;
        let expected = common::brute_capped_compositions(degree, n as usize + 1, p as u32 - 1);
        assert_eq!(corank(&prob).unwrap(), expected, "n={n} p={p}");
    }
    assert_eq!(common::brute_capped_compositions(4, 4, 1), 1);
    assert_eq!(common::brute_capped_compositions(9, 5, 2), 5);
}

#[test]
fn corank_examples() {
    assert_eq!(corank(&problem(3, 2)).unwrap(), 1);
    assert_eq!(corank(&problem(4, 3)).unwrap(), 5);
    assert!(corank(&problem(3, 3)).unwrap() >= 1);
}

#[test]
fn witness_never_in_image() {
    for (n, p) in [(3, 2), (3, 3), (3, 5), (3, 7), (4, 3), (4, 5), (5, 5)] {
        let prob = problem(n, p);
        let fm = build_matrix(&prob, &MatrixBudget::default()).unwrap();
        let a = analyze(&fm, &EliminationConfig::default()).unwrap();
        let w = a.witness.clone().unwrap();
        assert!(!w.in_image, "n={n} p={p}");
        assert_eq!(w.augmented_rank, a.rank + 1);
        assert!(a.corank() >= 1);
        assert_eq!(a.transpose_rank, a.rank);
    }
}

#[test]
fn rank_nullity_cross_check() {
    for (n, p) in [(3, 2), (3, 3), (3, 5), (4, 3)] {
        let prob = problem(n, p);
        let fm = build_matrix(&prob, &MatrixBudget::default()).unwrap();
        let a = analyze(&fm, &EliminationConfig::default()).unwrap();
        let h0m = component_dimension(n, prob.source_degree).unwrap() as i128;
        let h0t = component_dimension(n, prob.target_degree).unwrap() as i128;
        assert_eq!(
            a.kernel() as i128 - a.corank() as i128,
            (n as i128 + 1) * h0m - h0t
        );
    }
}

#[test]
fn dense_and_sparse_agree_on_real_matrix() {
    let fm = build_matrix(&problem(3, 5), &MatrixBudget::default()).unwrap();
    let dense = analyze(&fm, &EliminationConfig::dense_only()).unwrap();
    let sparse = analyze(&fm, &EliminationConfig::sparse_only()).unwrap();
    assert_eq!(dense, sparse);
    assert_eq!((dense.rows, dense.cols), (6650, 8400));
}

#[test]
fn target_is_source_twisted_by_p() {
    for (n, p) in [(3, 2), (3, 7), (5, 5)] {
        let prob = problem(n, p);
        assert_eq!(prob.target_degree, prob.source_degree.twist(0, p as i64));
        assert_eq!(prob.witness().unwrap().bidegree(), prob.target_degree);
        assert_eq!(prob.source_degree, Bidegree::new(p as i64 + 1 - n as i64, (p as i64 - 1) * (n as i64 - 1)));
    }
}
