//! Dimensions of line-bundle cohomology on `P^n`, on `P^n x P^n` and on the
//! incidence divisor `Y` cut out by `sum X_i Y_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::binomial::binomial;
use crate::incidence_ring::Bidegree;

/// One entry of a [`CohomologyTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyDim {
    Exact(u128),
    /// The long exact sequence does not determine this dimension without the
    /// rank of a map between nonzero groups.
    Indeterminate,
}

impl CohomologyDim {
    pub fn exact(self) -> Option<u128> {
        match self {
            Self::Exact(d) => Some(d),
            Self::Indeterminate => None,
        }
    }
}

impl fmt::Display for CohomologyDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(d) => write!(f, "{d}"),
            Self::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

impl Serialize for CohomologyDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            // u64 keeps the JSON an ordinary number
            Self::Exact(d) => match u64::try_from(*d) {
                Ok(small) => s.serialize_u64(small),
                Err(_) => s.serialize_u128(*d),
            },
            Self::Indeterminate => s.serialize_str("indeterminate"),
        }
    }
}

/// Cohomology dimensions `h^j` for `j = 0..=dim` of one sheaf on one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub space: String,
    pub bundle: String,
    #[serde(serialize_with = "string_keys")]
    pub dims: BTreeMap<usize, CohomologyDim>,
}

fn string_keys<S: Serializer>(
    dims: &BTreeMap<usize, CohomologyDim>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(dims.len()))?;
    for (j, d) in dims {
        map.serialize_entry(&j.to_string(), d)?;
    }
    map.end()
}

impl CohomologyTable {
    /// Dimension in degree `j`; degrees outside the table are zero.
    pub fn get(&self, j: usize) -> CohomologyDim {
        self.dims.get(&j).copied().unwrap_or(CohomologyDim::Exact(0))
    }

    pub fn is_fully_determined(&self) -> bool {
        self.dims.values().all(|d| d.exact().is_some())
    }

    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|d| *d == CohomologyDim::Exact(0))
    }

    /// Degrees with nonzero (or unknown) cohomology.
    pub fn support(&self) -> Vec<usize> {
        self.dims
            .iter()
            .filter(|(_, d)| **d != CohomologyDim::Exact(0))
            .map(|(&j, _)| j)
            .collect()
    }

    /// Alternating sum, when every entry is exact.
    pub fn euler_characteristic(&self) -> Option<i128> {
        self.dims.iter().try_fold(0i128, |acc, (&j, d)| {
            let v = d.exact()? as i128;
            Some(if j % 2 == 0 { acc + v } else { acc - v })
        })
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}", self.bundle, self.space)?;
        for (j, d) in &self.dims {
            writeln!(f, "  h^{j} = {d}")?;
        }
        Ok(())
    }
}

fn exact_binomial(m: i64, k: usize) -> u128 {
    binomial(m, k as u64).expect("binomial within u128 for cohomology queries")
}

/// `dim H^j(P^n, O(d))`.
///
/// # Panics
///
/// Panics if `j > n` or the value does not fit in `u128`.
pub fn bott_h(n: usize, d: i64, j: usize) -> u128 {
    assert!(j <= n, "degree {j} above dim P^{n}");
    let nn = n as i64;
    if j == 0 && d >= 0 {
        exact_binomial(d + nn, n)
    } else if j == n && d <= -nn - 1 {
        exact_binomial(-d - 1, n)
    } else {
        0
    }
}

/// `dim H^j(P^n x P^n, O(a, b))` by the Kuenneth formula.
pub fn product_h(n: usize, d: Bidegree, j: usize) -> u128 {
    assert!(j <= 2 * n, "degree {j} above dim P^{n} x P^{n}");
    (j.saturating_sub(n)..=j.min(n))
        .map(|r| bott_h(n, d.a, r) * bott_h(n, d.b, j - r))
        .sum()
}

pub fn pn_table(n: usize, d: i64) -> CohomologyTable {
    CohomologyTable {
        space: format!("P^{n}"),
        bundle: format!("O({d})"),
        dims: (0..=n).map(|j| (j, CohomologyDim::Exact(bott_h(n, d, j)))).collect(),
    }
}

pub fn product_table(n: usize, d: Bidegree) -> CohomologyTable {
    CohomologyTable {
        space: format!("P^{n} x P^{n}"),
        bundle: format!("O({},{})", d.a, d.b),
        dims: (0..=2 * n)
            .map(|j| (j, CohomologyDim::Exact(product_h(n, d, j))))
            .collect(),
    }
}

/// Rank of `H^j(P, O(a-1,b-1)) -> H^j(P, O(a,b))`, multiplication by the
/// relation, where it is forced.
///
/// It is zero when either side vanishes, injective on `H^0` (the polynomial
/// ring is a domain) and surjective on `H^{2n}` (dual to an injective
/// multiplication on global sections).
fn forced_rank(n: usize, d: Bidegree, j: usize) -> Option<u128> {
    if j > 2 * n {
        return Some(0);
    }
    let source = product_h(n, d.twist(-1, -1), j);
    let target = product_h(n, d, j);
    if source == 0 || target == 0 {
        Some(0)
    } else if j == 0 {
        Some(source)
    } else if j == 2 * n {
        Some(target)
    } else {
        None
    }
}

/// `dim H^j(Y, O(a,0,b))` for `j = 0..=2n-1`, from the long exact sequence of
/// `0 -> O(a-1,b-1) -> O(a,b) -> O_Y(a,b) -> 0` on `P^n x P^n`.
///
/// `h^j(Y) = coker(phi_j) + ker(phi_{j+1})` where `phi_j` is multiplication
/// by the relation in degree `j`; an entry is marked indeterminate when one of
/// those ranks is not forced.
pub fn y_cohomology(n: usize, d: Bidegree) -> CohomologyTable {
    let lower = d.twist(-1, -1);
    let dims = (0..2 * n)
        .map(|j| {
            let coker = forced_rank(n, d, j).map(|r| product_h(n, d, j) - r);
            let ker = forced_rank(n, d, j + 1).map(|r| product_h(n, lower, j + 1) - r);
            let dim = match (coker, ker) {
                (Some(c), Some(k)) => CohomologyDim::Exact(c + k),
                _ => CohomologyDim::Indeterminate,
            };
            (j, dim)
        })
        .collect();
    CohomologyTable {
        space: format!("Y in P^{n} x P^{n}"),
        bundle: d.bundle_label(),
        dims,
    }
}
