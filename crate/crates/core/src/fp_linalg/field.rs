use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 20;

/// The prime field `F_p` for a validated prime `p < 2^20`.
///
/// Residues are plain `u32` values in `[0, p)`; products are formed in `u64`
/// and reduced immediately, which cannot overflow at this modulus size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MODULUS_LIMIT).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::ZeroInverse(a));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    pub fn scalar(self, value: u64) -> FpScalar {
        FpScalar {
            value: self.reduce(value),
            field: self,
        }
    }

    /// `C(m, k) mod p` via Lucas' theorem.
    pub fn binomial(self, mut m: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1 % self.p;
        while k > 0 {
            let (md, kd) = (m % p, k % p);
            if kd > md {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(md as u32, kd as u32));
            m /= p;
            k /= p;
        }
        acc
    }

    // Requires k <= m < p so every denominator factor is invertible.
    fn small_binomial(self, m: u32, k: u32) -> u32 {
        let k = k.min(m - k);
        let (mut num, mut den) = (1u32, 1u32);
        for i in 0..k {
            num = self.mul(num, m - i);
            den = self.mul(den, i + 1);
        }
        self.mul(num, self.inv(den).expect("denominator below p is a unit"))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Deterministic trial division; the modulus is below `2^20` so this needs at
/// most ~1000 divisions.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `F_p` that carries its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    field: PrimeField,
}

impl FpScalar {
    pub fn new(value: u64, field: PrimeField) -> Self {
        field.scalar(value)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.field.modulus()
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> PrimeField {
        assert_eq!(
            self.field, other.field,
            "arithmetic between different prime fields"
        );
        self.field
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let k = self.same_field(rhs);
        Self {
            value: k.add(self.value, rhs.value),
            field: k,
        }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let k = self.same_field(rhs);
        Self {
            value: k.sub(self.value, rhs.value),
            field: k,
        }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let k = self.same_field(rhs);
        Self {
            value: k.mul(self.value, rhs.value),
            field: k,
        }
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// Multiplicative inverse; fails with [`Error::ZeroInverse`] on zero.
pub fn fp_inverse(x: FpScalar) -> Result<FpScalar> {
    Ok(FpScalar {
        value: x.field.inv(x.value)?,
        field: x.field,
    })
}
