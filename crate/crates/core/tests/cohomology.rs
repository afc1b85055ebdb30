mod common;

use kodaira_core::cohomology::{bott_h, product_h, y_cohomology, CohomologyDim};
use kodaira_core::fp_linalg::is_prime;
use kodaira_core::incidence_ring::Bidegree;

fn chi_product(n: usize, d: Bidegree) -> i128 {
    (0..=2 * n)
        .map(|j| {
            let h = product_h(n, d, j) as i128;
            if j % 2 == 0 {
                h
            } else {
                -h
            }
        })
        .sum()
}

#[test]
fn serre_duality_on_pn() {
    for n in 1..=5usize {
        for d in -12..=12i64 {
            for j in 0..=n {
                assert_eq!(bott_h(n, d, j), bott_h(n, -d - n as i64 - 1, n - j), "n={n} d={d} j={j}");
            }
        }
    }
}

#[test]
fn at_most_one_nonzero_degree_on_pn() {
    for n in 1..=6usize {
        for d in -15..=15i64 {
            assert!((0..=n).filter(|&j| bott_h(n, d, j) != 0).count() <= 1);
        }
    }
}

#[test]
fn global_sections_count_monomials() {
    for n in 1..=4usize {
        for d in 0..=6u32 {
            assert_eq!(bott_h(n, d as i64, 0), common::box_vectors(d, n + 1).len() as u128);
        }
    }
}

#[test]
fn euler_characteristic_is_additive_on_y() {
    let mut determined = 0;
    for n in 1..=4usize {
        for a in -8..=8i64 {
            for b in -8..=8i64 {
                let d = Bidegree::new(a, b);
                let table = y_cohomology(n, d);
                if let Some(chi) = table.euler_characteristic() {
                    determined += 1;
                    assert_eq!(
                        chi,
                        chi_product(n, d) - chi_product(n, d.twist(-1, -1)),
                        "n={n} d={d}"
                    );
                }
            }
        }
    }
    assert!(determined > 700, "only {determined} determinate tables");
}

#[test]
fn vanishing_lemma_for_all_admissible_primes() {
    for n in 3..=5usize {
        for p in (2..=31u64).filter(|&p| is_prime(p) && p + 1 >= n as u64) {
            let (ni, pi) = (n as i64, p as i64);
            let t = y_cohomology(n, Bidegree::new(1 - ni, (pi - 1) * (ni - 1)));
            assert!(t.is_fully_determined() && t.is_zero(), "n={n} p={p}");
        }
    }
}

#[test]
fn m_and_its_twist_have_only_sections() {
    for n in 3..=5usize {
        for p in (2..=31u64).filter(|&p| is_prime(p) && p + 1 >= n as u64) {
            let (ni, pi) = (n as i64, p as i64);
            let m = Bidegree::new(pi - ni + 1, (pi - 1) * (ni - 1));
            for d in [m, m.twist(0, pi)] {
                let t = y_cohomology(n, d);
                assert_eq!(t.support(), vec![0], "n={n} p={p} d={d}");
                assert!(matches!(t.get(0), CohomologyDim::Exact(h) if h > 0));
            }
        }
    }
}
