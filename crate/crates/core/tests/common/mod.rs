//! Brute-force oracles shared by the integration tests. None of these call
//! into the library's elimination or reduction code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

/// A polynomial over `Z/p` keyed by `(xexp, yexp)`.
pub type NaivePoly = BTreeMap<(Vec<u32>, Vec<u32>), u64>;

pub fn add_term(poly: &mut NaivePoly, key: (Vec<u32>, Vec<u32>), c: u64, p: u64) {
    let e = poly.entry(key.clone()).or_insert(0);
    *e = (*e + c) % p;
    if *e == 0 {
        poly.remove(&key);
    }
}

/// Reduces modulo `sum X_i Y_i` by repeatedly rewriting one `X_0 Y_0` factor
/// into `-(X_1 Y_1 + ... + X_n Y_n)`.
pub fn naive_reduce(mut poly: NaivePoly, p: u64) -> NaivePoly {
    loop {
        let Some(key) = poly
            .keys()
            .find(|(x, y)| x[0] > 0 && y[0] > 0)
            .cloned()
        else {
            return poly;
        };
        let c = poly.remove(&key).unwrap();
        let (x, y) = key;
        let n = x.len() - 1;
        for i in 1..=n {
            let (mut xx, mut yy) = (x.clone(), y.clone());
            xx[0] -= 1;
            yy[0] -= 1;
            xx[i] += 1;
            yy[i] += 1;
            add_term(&mut poly, (xx, yy), p - c, p);
        }
    }
}

pub fn naive_mul(a: &NaivePoly, b: &NaivePoly, p: u64) -> NaivePoly {
    let mut out = NaivePoly::new();
    for ((ax, ay), ca) in a {
        for ((bx, by), cb) in b {
            let x = ax.iter().zip(bx).map(|(u, v)| u + v).collect();
            let y = ay.iter().zip(by).map(|(u, v)| u + v).collect();
            add_term(&mut out, (x, y), ca * cb % p, p);
        }
    }
    out
}

/// All exponent vectors of length `parts` with entries summing to `total`,
/// by filtering the full box `[0, total]^parts`.
pub fn box_vectors(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    loop {
        if cur.iter().sum::<u32>() == total {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == parts {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= total {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Counts monomials of bidegree `(a, b)` not divisible by `X_0 Y_0`.
pub fn enumerate_normal_monomials(n: usize, a: u32, b: u32) -> usize {
    let xs = box_vectors(a, n + 1);
    let ys = box_vectors(b, n + 1);
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| (x, y)))
        .filter(|(x, y)| x[0] == 0 || y[0] == 0)
        .count()
}

/// Capped compositions by exhaustive enumeration of the box `[0, cap]^parts`.
pub fn brute_capped_compositions(total: u32, parts: usize, cap: u32) -> usize {
    let mut count = 0;
    let mut cur = vec![0u32; parts];
    loop {
        if cur.iter().sum::<u32>() == total {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == parts {
                return count;
            }
            cur[i] += 1;
            if cur[i] <= cap {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Rank of a dense row-major matrix over `Z/p` as `log_p` of the size of its
/// column span, found by enumerating every coefficient vector.
pub fn brute_rank(rows: &[Vec<u64>], p: u64) -> usize {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    let mut span: HashSet<Vec<u64>> = HashSet::new();
    let mut coeffs = vec![0u64; nc];
    loop {
        let image: Vec<u64> = (0..nr)
            .map(|r| (0..nc).map(|c| rows[r][c] * coeffs[c]).sum::<u64>() % p)
            .collect();
        span.insert(image);
        let mut i = 0;
        loop {
            if i == nc {
                let size = span.len();
                let mut rank = 0;
                let mut acc = 1;
                while acc < size {
                    acc *= p as usize;
                    rank += 1;
                }
                assert_eq!(acc, size, "span size is a power of p");
                return rank;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}
