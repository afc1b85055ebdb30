use crate::error::{Error, Result};

/// Exact `C(m, k)` with the convention `C(m, k) = 0` when `m < k` (including
/// negative `m`).
pub fn binomial(m: i64, k: u64) -> Result<u128> {
    if m < 0 || (m as u64) < k {
        return Ok(0);
    }
    let m = m as u128;
    let k = (k as u128).min(m - k as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (m - i) is divisible by i + 1; cancel first so the product
        // is the next binomial C(m, i + 1) itself
        let g = gcd(acc, i + 1);
        let factor = (m - i) / ((i + 1) / g);
        acc = (acc / g)
            .checked_mul(factor)
            .ok_or_else(|| Error::Overflow(format!("C({m},{k})")))?;
    }
    Ok(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
