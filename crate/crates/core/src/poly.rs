//! Sparse Laurent polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarIndex};
use crate::scalar::{Field, Scalar};

/// A Laurent polynomial: a finite map from monomials to nonzero scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(Scalar::field)
    }

    /// Terms in increasing total order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    /// `max δ` over the support; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn checked_degree(&self) -> Result<u32> {
        self.degree().ok_or(Error::ZeroPolynomial)
    }

    /// The largest support monomial in the total order.
    pub fn max_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn remove_term(&mut self, m: &Monomial) -> Option<Scalar> {
        self.terms.remove(m)
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), &(c * a));
        }
    }

    /// `self += c · m · other`.
    pub fn add_scaled_shifted(&mut self, c: &Scalar, m: &Monomial, other: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (t, a) in &other.terms {
            self.add_term(t.mul(m), &(c * a));
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    /// Multiplication by `x_i`, the map `μ_i`.
    pub fn mul_var(&self, i: VarIndex) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.step(i), a.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &other.terms {
            out.add_scaled_shifted(a, m, self);
        }
        out
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), a);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), &-a);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect(),
        }
    }

    /// Scales so that the coefficient of `m` becomes one.
    pub fn monic_at(&self, m: &Monomial) -> Result<LaurentPoly> {
        let c = self.coeff(m).ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&c.inv().expect("stored coefficients are nonzero")))
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }
}

impl fmt::Display for LaurentPoly {
    /// Text syntax `3*x1^2*x2^-1 - 1/2 + x2^2`, largest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, n, Field::Rational).unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(p("x1 - 1", 1).mul(&p("x1^-1", 1)), p("1 - x1^-1", 1));
        let a = p("x1^2 + 3*x1^-1 - 1/2", 1);
        assert_eq!(a.mul(&p("1", 1)), a);
        assert_eq!(p("x1 + x1^-1", 1).mul(&p("x1 - x1^-1", 1)), p("x1^2 - x1^-2", 1));
    }

    #[test]
    fn degree_of_zero_is_absent() {
        assert_eq!(LaurentPoly::zero(2).degree(), None);
        assert_eq!(LaurentPoly::zero(2).checked_degree(), Err(Error::ZeroPolynomial));
        assert_eq!(p("x1^2*x2^-1 + x1", 2).degree(), Some(3));
    }

    #[test]
    fn display_uses_text_syntax() {
        let a = p("3*x1^2*x2^-1 - 1/2 + x2^2", 2);
        assert_eq!(a.to_string(), "3*x1^2*x2^-1 + x2^2 - 1/2");
        assert_eq!(p("-x1 + 2", 1).to_string(), "-x1 + 2");
    }
}
