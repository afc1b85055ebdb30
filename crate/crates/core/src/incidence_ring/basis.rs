use super::monomial::{Bidegree, Monomial};
use crate::binomial::binomial;
use crate::error::{Error, Result};

/// `dim H^0(Y, O(a,0,b))`, the number of normal monomials of bidegree
/// `(a, b)`: `C(a+n,n) C(b+n,n) - C(a-1+n,n) C(b-1+n,n)`.
///
/// Negative degrees are allowed and give 0.
pub fn component_dimension(n: usize, d: Bidegree) -> Result<u128> {
    let nn = n as i64;
    let k = n as u64;
    let overflow = || Error::Overflow(format!("component dimension of {d} for n = {n}"));
    let all = binomial(d.a + nn, k)?
        .checked_mul(binomial(d.b + nn, k)?)
        .ok_or_else(overflow)?;
    let divisible = binomial(d.a - 1 + nn, k)?
        .checked_mul(binomial(d.b - 1 + nn, k)?)
        .ok_or_else(overflow)?;
    Ok(all - divisible)
}

/// All monomials of bidegree `d` not divisible by `X_0 Y_0`, in descending
/// monomial order (lexicographic on the concatenated exponent vector, X block
/// first, largest first).
pub fn monomial_basis(n: usize, d: Bidegree) -> Result<Vec<Monomial>> {
    if d.a < 0 || d.b < 0 {
        return Err(Error::NegativeDegree { a: d.a, b: d.b });
    }
    let xs = compositions(d.a as u32, n + 1);
    let ys = compositions(d.b as u32, n + 1);
    // ys with y_0 = 0 form a suffix of the descending list
    let y0_free = ys.iter().position(|y| y[0] == 0).unwrap_or(ys.len());
    let mut out = Vec::with_capacity(component_dimension(n, d)? as usize);
    for x in &xs {
        let allowed = if x[0] > 0 { &ys[y0_free..] } else { &ys[..] };
        for y in allowed {
            let mut exps = Vec::with_capacity(2 * (n + 1));
            exps.extend_from_slice(x);
            exps.extend_from_slice(y);
            out.push(Monomial::from_exps(exps));
        }
    }
    Ok(out)
}

/// Exponent vectors of length `parts` summing to `total`, in descending
/// lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rest).rev() {
            cur[slot] = e;
            rec(rest - e, slot + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, 0, &mut vec![0; parts], &mut out);
    out
}
