//! Choice functions: deterministic selection of an extremal support monomial.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::LaurentPoly;

/// A choice function refining the degree.
///
/// Both strategies first maximize `δ`. `Macaulay` then prefers the largest
/// partial degree `max_i |α_i|`; `LexMax` goes straight to the
/// lexicographic tie-break `x₁ > x₂ > … > x₂⁻¹ > x₁⁻¹`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChoiceFunction {
    #[default]
    Macaulay,
    LexMax,
}

impl ChoiceFunction {
    /// Preference order on monomials; the chosen monomial is the maximum.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            ChoiceFunction::Macaulay => a.cmp(b),
            ChoiceFunction::LexMax => a.cmp_degree_lex(b),
        }
    }

    pub fn choose(self, f: &LaurentPoly) -> Result<Monomial> {
        f.support()
            .max_by(|a, b| self.cmp(a, b))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Sorts monomials from most to least preferred.
    pub fn sort_preferred(self, v: &mut [Monomial]) {
        v.sort_by(|a, b| self.cmp(b, a));
    }
}

impl FromStr for ChoiceFunction {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "macaulay" => Ok(ChoiceFunction::Macaulay),
            "lexmax" => Ok(ChoiceFunction::LexMax),
            other => Err(format!("unknown choice function '{other}'")),
        }
    }
}

impl fmt::Display for ChoiceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChoiceFunction::Macaulay => "macaulay",
            ChoiceFunction::LexMax => "lexmax",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, 2, Field::Rational).unwrap()
    }

    #[test]
    fn unique_extremal_monomial() {
        let g = ChoiceFunction::Macaulay;
        assert_eq!(g.choose(&p("x1^2*x2^-1 + x1")).unwrap(), Monomial::new(&[2, -1]));
        assert_eq!(g.choose(&p("5")).unwrap(), Monomial::new(&[0, 0]));
    }

    #[test]
    fn tie_break_prefers_x1() {
        for g in [ChoiceFunction::Macaulay, ChoiceFunction::LexMax] {
            assert_eq!(g.choose(&p("x1^2 + x2^2")).unwrap(), Monomial::new(&[2, 0]));
        }
    }

    #[test]
    fn strategies_differ_on_partial_degree() {
        let f = p("x1*x2 + x2^2");
        assert_eq!(ChoiceFunction::Macaulay.choose(&f).unwrap(), Monomial::new(&[0, 2]));
        assert_eq!(ChoiceFunction::LexMax.choose(&f).unwrap(), Monomial::new(&[1, 1]));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            ChoiceFunction::Macaulay.choose(&LaurentPoly::zero(2)),
            Err(Error::ZeroPolynomial)
        );
    }
}
