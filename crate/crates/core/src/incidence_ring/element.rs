use std::collections::BTreeMap;
use std::fmt;

use super::basis::compositions;
use super::monomial::{Bidegree, Monomial};
use crate::error::{Error, Result};
use crate::fp_linalg::{FpScalar, PrimeField};

/// A bihomogeneous element of `F_p[X; Y] / (sum X_i Y_i)` in normal form:
/// no stored monomial is divisible by `X_0 Y_0` and no coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    n: usize,
    field: PrimeField,
    terms: BTreeMap<Monomial, u32>,
}

impl RingElement {
    pub fn zero(n: usize, field: PrimeField) -> Self {
        Self {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: &Monomial, field: PrimeField) -> Self {
        let mut out = Self::zero(m.n(), field);
        out.accumulate_reduced(m, 1);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero element.
    pub fn bidegree(&self) -> Option<Bidegree> {
        self.terms.keys().next().map(Monomial::bidegree)
    }

    /// Terms with the leading monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FpScalar)> + '_ {
        self.terms
            .iter()
            .rev()
            .map(|(m, &c)| (m, FpScalar::new(c as u64, self.field)))
    }

    pub fn coefficient(&self, m: &Monomial) -> FpScalar {
        FpScalar::new(self.terms.get(m).copied().unwrap_or(0) as u64, self.field)
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out.check_homogeneous()?;
        Ok(out)
    }

    pub fn scale(&self, c: FpScalar) -> RingElement {
        let k = self.field;
        let mut out = Self::zero(self.n, k);
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), k.mul(v, c.value()));
        }
        out
    }

    /// Normal form of `self * m`.
    pub fn multiply(&self, m: &Monomial) -> Result<RingElement> {
        if m.n() != self.n {
            return Err(Error::VariableCountMismatch(self.n, m.n()));
        }
        let mut out = Self::zero(self.n, self.field);
        for (t, &c) in &self.terms {
            out.accumulate_reduced(&t.mul(m)?, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        let k = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = k.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
        }
    }

    fn accumulate_reduced(&mut self, m: &Monomial, c: u32) {
        for (t, v) in reduce_monomial(m, self.field) {
            self.add_term(t, self.field.mul(v, c));
        }
    }

    fn check_compatible(&self, other: &RingElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(Error::InvalidInput(format!(
                "elements over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    fn check_homogeneous(&self) -> Result<()> {
        let mut degrees = self.terms.keys().map(Monomial::bidegree);
        if let Some(first) = degrees.next() {
            if let Some(second) = degrees.find(|&d| d != first) {
                return Err(Error::MixedDegrees {
                    first: first.to_string(),
                    second: second.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (c.value(), m.bidegree() == Bidegree::new(0, 0)) {
                (1, false) => write!(f, "{m}")?,
                (_, true) => write!(f, "{c}")?,
                _ => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Reduces a coefficient map modulo `sum X_i Y_i`.
///
/// Every input monomial must have `n + 1` variable pairs and all must share
/// one bidegree.
pub fn normal_form<I>(n: usize, field: PrimeField, raw: I) -> Result<RingElement>
where
    I: IntoIterator<Item = (Monomial, u64)>,
{
    let mut out = RingElement::zero(n, field);
    let mut degree: Option<Bidegree> = None;
    for (m, c) in raw {
        if m.n() != n {
            return Err(Error::VariableCountMismatch(n, m.n()));
        }
        let d = m.bidegree();
        match degree {
            Some(first) if first != d => {
                return Err(Error::MixedDegrees {
                    first: first.to_string(),
                    second: d.to_string(),
                })
            }
            _ => degree = Some(d),
        }
        out.accumulate_reduced(&m, field.reduce(c));
    }
    Ok(out)
}

/// Normal form of a single monomial, in closed form.
///
/// With `k = min(x_0, y_0)`, the factor `(X_0 Y_0)^k` is replaced by
/// `(-1)^k (X_1 Y_1 + ... + X_n Y_n)^k`, expanded with multinomial
/// coefficients. Every resulting monomial has `x_0 = 0` or `y_0 = 0`.
pub fn reduce_monomial(m: &Monomial, field: PrimeField) -> Vec<(Monomial, u32)> {
    let n = m.n();
    let k = m.xexp()[0].min(m.yexp()[0]);
    if k == 0 {
        return vec![(m.clone(), 1 % field.modulus())];
    }
    let sign = if k % 2 == 0 { 1 } else { field.neg(1) };
    let mut base = m.exps().to_vec();
    base[0] -= k;
    base[n + 1] -= k;
    let mut out = Vec::new();
    for gamma in compositions(k, n) {
        // multinomial(k; gamma) as a product of binomials
        let mut coeff = sign;
        let mut partial = 0u64;
        for &g in &gamma {
            partial += g as u64;
            coeff = field.mul(coeff, field.binomial(partial, g as u64));
        }
        if coeff == 0 {
            continue;
        }
        let mut exps = base.clone();
        for (i, &g) in gamma.iter().enumerate() {
            exps[i + 1] += g;
            exps[n + 2 + i] += g;
        }
        out.push((Monomial::from_exps(exps), coeff));
    }
    out
}
