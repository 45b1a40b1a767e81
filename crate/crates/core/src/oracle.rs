//! Brute-force reference for tests: the ideal in the doubled ring
//! `k[x₁…xₙ, y₁…yₙ]` with the extra relations `xᵢyᵢ − 1`, truncated by total
//! degree and eliminated naively.
//!
//! Nothing here goes through the projection or the border-basis machinery, and
//! the elimination is a separate dense implementation, so a bug in the main
//! engine is unlikely to be mirrored here.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::LaurentPoly;
use crate::scalar::{Field, Scalar};

type Exps = Vec<u32>;

/// Number of consecutive sub-degrees that must agree.
pub const STABLE_WINDOW: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleAnswer<T> {
    Stable(T),
    Unstable,
}

impl<T> OracleAnswer<T> {
    pub fn stable(self) -> Option<T> {
        match self {
            OracleAnswer::Stable(v) => Some(v),
            OracleAnswer::Unstable => None,
        }
    }
}

/// `x^α ↦ x^{α⁺} y^{α⁻}`, termwise.
fn doubled(p: &LaurentPoly) -> Vec<(Exps, Scalar)> {
    let n = p.nvars();
    p.terms()
        .map(|(m, c)| {
            let mut e = vec![0u32; 2 * n];
            for (i, &a) in m.exponents().iter().enumerate() {
                if a >= 0 {
                    e[i] = a as u32;
                } else {
                    e[n + i] = (-a) as u32;
                }
            }
            (e, c.clone())
        })
        .collect()
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// All exponent vectors in `v` variables of total degree exactly `d`.
fn monomials_of_degree(v: usize, d: u32) -> Vec<Exps> {
    if v == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(v - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Minimal field arithmetic for the elimination.
trait Arith: Clone {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn from_scalar(&self, s: &Scalar) -> Self::T;
    fn inv(&self, a: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    /// `a − f·b`
    fn sub_mul(&self, a: &Self::T, f: &Self::T, b: &Self::T) -> Self::T;
}

#[derive(Clone)]
struct ModP(u64);

impl Arith for ModP {
    type T = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Fp { value, .. } => *value,
            Scalar::Q(_) => unreachable!("field checked by caller"),
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a as u128, self.0 - 2, 1u128);
        let p = self.0 as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let p = self.0 as u128;
        ((*a as u128 + p - (*f as u128 * *b as u128) % p) % p) as u64
    }
}

#[derive(Clone)]
struct Rat;

impl Arith for Rat {
    type T = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        s.as_rational().cloned().expect("field checked by caller")
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }
}

/// Echelon basis of `span{ m·g : deg(m·g) ≤ D }`.
///
/// Columns run from the highest total degree down, so the pivot of a row is
/// one of its top-degree monomials and rows with pivot degree `≤ e` span the
/// part of the truncation living in degree `≤ e`.
struct Span<A: Arith> {
    arith: A,
    cols: Vec<Exps>,
    index: HashMap<Exps, usize>,
    /// pivot column → row, dense from the pivot onward
    pivots: HashMap<usize, Vec<A::T>>,
}

impl<A: Arith> Span<A> {
    fn new(arith: A, nvars: usize, bound: u32) -> Self {
        let cols: Vec<Exps> = (0..=bound).rev().flat_map(|d| monomials_of_degree(nvars, d)).collect();
        let index = cols.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Span { arith, cols, index, pivots: HashMap::new() }
    }

    fn dense(&self, terms: &[(Exps, Scalar)]) -> Option<Vec<A::T>> {
        let mut row = vec![self.arith.zero(); self.cols.len()];
        for (e, c) in terms {
            let i = *self.index.get(e)?;
            row[i] = self.arith.from_scalar(c);
        }
        Some(row)
    }

    /// Reduces `row` in place; returns the first surviving column.
    fn reduce(&self, row: &mut [A::T]) -> Option<usize> {
        let a = &self.arith;
        for c in 0..row.len() {
            if a.is_zero(&row[c]) {
                continue;
            }
            let Some(p) = self.pivots.get(&c) else {
                return Some(c);
            };
            let f = row[c].clone();
            for (k, v) in p.iter().enumerate() {
                if !a.is_zero(v) {
                    row[c + k] = a.sub_mul(&row[c + k], &f, v);
                }
            }
        }
        None
    }

    fn insert(&mut self, mut row: Vec<A::T>) {
        if let Some(c) = self.reduce(&mut row) {
            let inv = self.arith.inv(&row[c]);
            let tail: Vec<A::T> = row[c..].iter().map(|v| self.arith.mul(v, &inv)).collect();
            self.pivots.insert(c, tail);
        }
    }

    fn hilbert(&self, bound: u32) -> Vec<usize> {
        let mut pivots_at = vec![0usize; bound as usize + 1];
        for &c in self.pivots.keys() {
            pivots_at[total(&self.cols[c]) as usize] += 1;
        }
        let mut monos_at = vec![0usize; bound as usize + 1];
        for e in &self.cols {
            monos_at[total(e) as usize] += 1;
        }
        let (mut m, mut p) = (0, 0);
        (0..=bound as usize)
            .map(|e| {
                m += monos_at[e];
                p += pivots_at[e];
                m - p
            })
            .collect()
    }
}

/// The truncated doubled-ring ideal and its Hilbert function.
pub struct TruncatedIdealSpan {
    nvars: usize,
    bound: u32,
    inner: Inner,
    hilbert: Vec<usize>,
}

enum Inner {
    Prime(Span<ModP>),
    Rational(Span<Rat>),
}

impl TruncatedIdealSpan {
    /// Builds the span for the input system at total degree bound `bound`.
    /// Generators whose doubled image exceeds the bound contribute nothing.
    pub fn build(inputs: &[LaurentPoly], bound: u32) -> TruncatedIdealSpan {
        let nvars = inputs.first().map_or(1, LaurentPoly::nvars);
        let field = inputs.iter().find_map(LaurentPoly::field).unwrap_or(Field::Rational);
        let mut gens: Vec<Vec<(Exps, Scalar)>> = inputs.iter().filter(|p| !p.is_zero()).map(doubled).collect();
        for i in 0..nvars {
            let mut e = vec![0u32; 2 * nvars];
            e[i] = 1;
            e[nvars + i] = 1;
            gens.push(vec![(e, field.one()), (vec![0; 2 * nvars], -field.one())]);
        }
        let rows = move |sink: &mut dyn FnMut(Vec<(Exps, Scalar)>)| {
            for g in &gens {
                let dg = g.iter().map(|(e, _)| total(e)).max().unwrap_or(0);
                if dg > bound {
                    continue;
                }
                for d in 0..=bound - dg {
                    for m in monomials_of_degree(2 * nvars, d) {
                        sink(g.iter().map(|(e, c)| (e.iter().zip(&m).map(|(a, b)| a + b).collect(), c.clone())).collect());
                    }
                }
            }
        };
        let inner = match field {
            Field::Prime(p) => {
                let mut span = Span::new(ModP(p), 2 * nvars, bound);
                rows(&mut |t| {
                    let r = span.dense(&t).expect("within bound");
                    span.insert(r)
                });
                Inner::Prime(span)
            }
            Field::Rational => {
                let mut span = Span::new(Rat, 2 * nvars, bound);
                rows(&mut |t| {
                    let r = span.dense(&t).expect("within bound");
                    span.insert(r)
                });
                Inner::Rational(span)
            }
        };
        let hilbert = match &inner {
            Inner::Prime(s) => s.hilbert(bound),
            Inner::Rational(s) => s.hilbert(bound),
        };
        TruncatedIdealSpan { nvars, bound, inner, hilbert }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `h(e)` = monomials of degree `≤ e` minus the span's dimension there,
    /// for `e = 0..=D`.
    pub fn hilbert(&self) -> &[usize] {
        &self.hilbert
    }

    /// The value of the last run of three equal consecutive entries of
    /// `h(0..D)`. The top sub-degree is left out, and the few just below it
    /// are usually inflated by the truncation, so the run is looked for from
    /// the top down rather than pinned to the end.
    pub fn stable_dim(&self) -> OracleAnswer<usize> {
        let h = &self.hilbert[..self.hilbert.len().saturating_sub(1)];
        h.windows(STABLE_WINDOW)
            .rev()
            .find(|w| w.iter().all(|&v| v == w[0]))
            .map_or(OracleAnswer::Unstable, |w| OracleAnswer::Stable(w[0]))
    }

    /// Whether the doubled image of `p` lies in the span. `None` when the
    /// image does not fit under the bound.
    pub fn contains(&self, p: &LaurentPoly) -> Option<bool> {
        if p.nvars() != self.nvars {
            return None;
        }
        let t = doubled(p);
        Some(match &self.inner {
            Inner::Prime(s) => s.reduce(&mut s.dense(&t)?).is_none(),
            Inner::Rational(s) => s.reduce(&mut s.dense(&t)?).is_none(),
        })
    }
}

/// Quotient dimension of the doubled model, if its Hilbert function settles
/// before `bound`.
pub fn oracle_quotient_dim(inputs: &[LaurentPoly], bound: u32) -> OracleAnswer<usize> {
    TruncatedIdealSpan::build(inputs, bound).stable_dim()
}

/// Ideal membership of `p` in the doubled model, under the same stability
/// rule.
pub fn oracle_membership(inputs: &[LaurentPoly], p: &LaurentPoly, bound: u32) -> OracleAnswer<bool> {
    let span = TruncatedIdealSpan::build(inputs, bound);
    match (span.stable_dim(), span.contains(p)) {
        (OracleAnswer::Stable(_), Some(b)) => OracleAnswer::Stable(b),
        _ => OracleAnswer::Unstable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::generic_system;
    use crate::parse::parse_system;

    fn sys(text: &str, field: Field) -> Vec<LaurentPoly> {
        parse_system(text, field).unwrap().polys
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn single_point() {
        for f in [Field::Rational, Field::GF32003] {
            let s = sys("x1 - 2", f);
            assert_eq!(oracle_quotient_dim(&s, 6), OracleAnswer::Stable(1));
            let inv = sys("x1^-1 - 1/2", f).remove(0);
            assert_eq!(oracle_membership(&s, &inv, 6), OracleAnswer::Stable(true));
            let one = LaurentPoly::constant(1, f.one());
            assert_eq!(oracle_membership(&s, &one, 6), OracleAnswer::Stable(false));
        }
    }

    #[test]
    fn unit_ideal_has_dimension_zero() {
        // x1*x2 is a unit once x1*y1 = 1 and x2*y2 = 1
        let s = sys("x1*x2", Field::Rational);
        assert_eq!(oracle_quotient_dim(&s, 6), OracleAnswer::Stable(0));
    }

    #[test]
    fn two_roots() {
        let s = sys("x1^2 - 3*x1 + 2", Field::Rational);
        let span = TruncatedIdealSpan::build(&s, 7);
        assert_eq!(span.stable_dim(), OracleAnswer::Stable(2));
        assert_eq!(span.hilbert()[0], 1);
    }

    #[test]
    fn generic_diamond_has_sixteen() {
        let s = generic_system(2, 2, Field::GF32003, 7);
        assert_eq!(oracle_quotient_dim(&s, 8), OracleAnswer::Stable(16));
    }

    #[test]
    fn too_small_a_bound_is_unstable() {
        let s = generic_system(2, 2, Field::GF32003, 7);
        assert_eq!(oracle_quotient_dim(&s, 3), OracleAnswer::Unstable);
    }
}
