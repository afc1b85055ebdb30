use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A pair of integer degrees `(a, b)`: total X-degree and total Y-degree.
///
/// Reports print it as the twist `O(a,0,b)`; the middle slot is a label only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub a: i64,
    pub b: i64,
}

impl Bidegree {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn twist(self, da: i64, db: i64) -> Self {
        Self {
            a: self.a + da,
            b: self.b + db,
        }
    }

    /// `O(a,0,b)`
    pub fn bundle_label(self) -> String {
        format!("O({},0,{})", self.a, self.b)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A monomial `X^xexp * Y^yexp` in `X_0..X_n, Y_0..Y_n`.
///
/// The derived ordering is lexicographic on `(xexp, yexp)` with `X_0` the
/// heaviest variable, so `X_0 Y_0` leads `sum X_i Y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    // x_0..x_n followed by y_0..y_n
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(xexp: Vec<u32>, yexp: Vec<u32>) -> Result<Self> {
        if xexp.is_empty() || xexp.len() != yexp.len() {
            return Err(Error::InvalidInput(format!(
                "exponent vectors of lengths {} and {}",
                xexp.len(),
                yexp.len()
            )));
        }
        let mut exps = xexp;
        exps.extend(yexp);
        Ok(Self { exps })
    }

    pub(crate) fn from_exps(exps: Vec<u32>) -> Self {
        debug_assert!(exps.len() >= 2 && exps.len() % 2 == 0);
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self {
            exps: vec![0; 2 * (n + 1)],
        }
    }

    /// `X_i^e`
    pub fn x(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = e;
        m
    }

    /// `Y_i^e`
    pub fn y(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.exps[n + 1 + i] = e;
        m
    }

    /// The projective dimension `n`; the monomial has `n + 1` X and Y variables.
    pub fn n(&self) -> usize {
        self.exps.len() / 2 - 1
    }

    pub fn xexp(&self) -> &[u32] {
        &self.exps[..self.exps.len() / 2]
    }

    pub fn yexp(&self) -> &[u32] {
        &self.exps[self.exps.len() / 2..]
    }

    pub(crate) fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn bidegree(&self) -> Bidegree {
        let sum = |v: &[u32]| v.iter().map(|&e| e as i64).sum::<i64>();
        Bidegree::new(sum(self.xexp()), sum(self.yexp()))
    }

    /// Not divisible by `X_0 Y_0`.
    pub fn is_normal(&self) -> bool {
        self.xexp()[0] == 0 || self.yexp()[0] == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::VariableCountMismatch(self.n(), other.n()));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| {
                a.checked_add(*b)
                    .ok_or_else(|| Error::Overflow("monomial exponent".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Self { exps })
    }

    /// Parses the `X0^2*X3*Y1^4` syntax for a ring with `n + 1` variable
    /// pairs. Factors must appear in canonical order (all X before Y, indices
    /// ascending, each variable at most once, exponent 1 omitted); the
    /// constant monomial is written `1`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let fail = |reason: String| Error::Parse {
            text: text.to_string(),
            reason,
        };
        let mut m = Self::one(n);
        if text == "1" {
            return Ok(m);
        }
        if text.is_empty() {
            return Err(fail("empty string".into()));
        }
        let mut last_slot: Option<usize> = None;
        for factor in text.split('*') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let exp: u32 = e
                        .parse()
                        .ok()
                        .filter(|&e| e >= 2)
                        .filter(|_| e.bytes().all(|b| b.is_ascii_digit()) && !e.starts_with('0'))
                        .ok_or_else(|| fail(format!("bad exponent in {factor:?}")))?;
                    (v, exp)
                }
                None => (factor, 1),
            };
            let (block, index) = match var.as_bytes().first() {
                Some(b'X') => (0, &var[1..]),
                Some(b'Y') => (1, &var[1..]),
                _ => return Err(fail(format!("unknown variable {var:?}"))),
            };
            let canonical_index = !index.is_empty()
                && index.bytes().all(|b| b.is_ascii_digit())
                && (index == "0" || !index.starts_with('0'));
            let i: usize = index
                .parse()
                .ok()
                .filter(|_| canonical_index)
                .ok_or_else(|| fail(format!("bad variable index in {var:?}")))?;
            if i > n {
                return Err(fail(format!("variable {var} out of range for n = {n}")));
            }
            let slot = block * (n + 1) + i;
            if last_slot.is_some_and(|s| s >= slot) {
                return Err(fail(format!("factor {factor:?} is out of canonical order")));
            }
            last_slot = Some(slot);
            m.exps[slot] = exp;
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let blocks = [("X", self.xexp()), ("Y", self.yexp())];
        for (name, exps) in blocks {
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{name}{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
