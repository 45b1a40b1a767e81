//! Text syntax for Laurent polynomials and systems.
//!
//! A polynomial is a sum of terms joined by `+` / `-`; each term is an
//! optional coefficient (`3`, `1/2`) followed by `*`-separated factors
//! `x<i>` or `x<i>^<e>` with `e` any signed integer. One polynomial per
//! line in a system file; `#` starts a comment.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::LaurentPoly;
use crate::scalar::Field;

struct RawTerm {
    negative: bool,
    num: BigInt,
    den: BigInt,
    factors: Vec<(usize, i32)>,
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self) -> Result<(usize, i32)> {
        if !self.eat('x') {
            return self.err("expected a variable x<i>");
        }
        let Some(idx) = self.digits() else {
            return self.err("expected a variable index after 'x'");
        };
        let idx: usize = match idx.parse() {
            Ok(v) if v >= 1 => v,
            _ => return self.err("variable indices start at 1"),
        };
        self.skip_ws();
        let mut exp = 1i32;
        if self.eat('^') {
            self.skip_ws();
            let neg = self.eat('-');
            if !neg {
                self.eat('+');
            }
            let Some(e) = self.digits() else {
                return self.err("expected an exponent after '^'");
            };
            let Ok(e) = e.parse::<i32>() else {
                return self.err("exponent out of range");
            };
            exp = if neg { -e } else { e };
        }
        Ok((idx, exp))
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        self.skip_ws();
        let mut t = RawTerm {
            negative,
            num: BigInt::one(),
            den: BigInt::one(),
            factors: Vec::new(),
        };
        let mut need_factor = true;
        if let Some(d) = self.digits() {
            t.num = d.parse().expect("digit string");
            self.skip_ws();
            if self.eat('/') {
                self.skip_ws();
                let Some(d) = self.digits() else {
                    return self.err("expected a denominator after '/'");
                };
                t.den = d.parse().expect("digit string");
                if t.den == BigInt::from(0) {
                    return self.err("zero denominator");
                }
            }
            self.skip_ws();
            if !self.eat('*') {
                need_factor = false;
                if self.peek() == Some('x') {
                    need_factor = true;
                }
            }
        }
        if need_factor {
            loop {
                self.skip_ws();
                t.factors.push(self.factor()?);
                self.skip_ws();
                if !self.eat('*') {
                    break;
                }
            }
        }
        Ok(t)
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut negative = false;
        if self.eat('-') {
            negative = true;
        } else {
            self.eat('+');
        }
        loop {
            terms.push(self.term(negative)?);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(c) => return self.err(format!("unexpected character '{c}'")),
            }
            self.skip_ws();
            if self.peek().is_none() {
                return self.err("dangling operator at end of input");
            }
        }
        Ok(terms)
    }
}

fn max_var(terms: &[RawTerm]) -> usize {
    terms
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.0))
        .max()
        .unwrap_or(0)
}

fn build(terms: Vec<RawTerm>, n: usize, field: Field) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero(n);
    for t in terms {
        let mut exps = vec![0i32; n];
        for (idx, e) in t.factors {
            exps[idx - 1] += e;
        }
        let mut c = field.from_ratio(&t.num, &t.den)?;
        if t.negative {
            c = -c;
        }
        p.add_term(Monomial::new(&exps), &c);
    }
    Ok(p)
}

/// Parses one polynomial in `n` variables.
pub fn parse_poly(text: &str, n: usize, field: Field) -> Result<LaurentPoly> {
    let mut cur = Cursor::new(text, 1);
    let terms = cur.poly()?;
    let used = max_var(&terms);
    if used > n {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("variable x{used} exceeds the declared count {n}"),
        });
    }
    build(terms, n, field)
}

/// A parsed polynomial system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    pub nvars: usize,
    pub polys: Vec<LaurentPoly>,
}

/// Parses a system: one polynomial per non-comment line. The variable count is
/// the largest index used.
pub fn parse_system(text: &str, field: Field) -> Result<System> {
    let mut parsed = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, lineno + 1);
        parsed.push((lineno + 1, cur.poly()?));
    }
    let nvars = parsed.iter().map(|(_, t)| max_var(t)).max().unwrap_or(0).max(1);
    let mut polys = Vec::with_capacity(parsed.len());
    for (lineno, terms) in parsed {
        let p = build(terms, nvars, field)?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomialLine(lineno));
        }
        polys.push(p);
    }
    Ok(System { nvars, polys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn parses_simple_binomial() {
        let p = parse_poly("x1 - 2", 1, Field::Rational).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial::new(&[1])), Some(&Field::Rational.one()));
        assert_eq!(p.coeff(&Monomial::one(1)), Some(&Field::Rational.from_i64(-2)));
    }

    #[test]
    fn parses_rational_coefficients_and_negative_exponents() {
        let p = parse_poly("3*x1^2*x2^-1 - 1/2", 2, Field::Rational).unwrap();
        assert_eq!(p.len(), 2);
        let half = Field::Rational
            .from_ratio(&BigInt::from(-1), &BigInt::from(2))
            .unwrap();
        assert_eq!(p.coeff(&Monomial::one(2)), Some(&half));
        assert_eq!(
            p.coeff(&Monomial::new(&[2, -1])),
            Some(&Scalar::Q(num_rational::BigRational::from_integer(3.into())))
        );
    }

    #[test]
    fn dangling_operator_is_a_syntax_error() {
        match parse_poly("x1 +", 1, Field::Rational) {
            Err(Error::Parse { line: 1, column, .. }) => assert_eq!(column, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn system_infers_variable_count_and_skips_comments() {
        let sys = parse_system("# comment\nx1 - 2\n\nx3*x1^-1 + 1 # trailing\n", Field::Rational)
            .unwrap();
        assert_eq!(sys.nvars, 3);
        assert_eq!(sys.polys.len(), 2);
    }

    #[test]
    fn zero_line_is_rejected() {
        assert_eq!(
            parse_system("x1 - 2\nx1 - x1\n", Field::Rational),
            Err(Error::ZeroPolynomialLine(2))
        );
    }

    #[test]
    fn error_reports_line_and_column() {
        match parse_system("x1\nx2 ^ ^3", Field::Rational) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn implicit_coefficient_product() {
        let p = parse_poly("2x1 + x1*x1", 1, Field::Rational).unwrap();
        assert_eq!(p.to_string(), "x1^2 + 2*x1");
    }
}
