//! Rewriting families, the projection `π`, the multiplication operators
//! `X_i` and the normal form `σ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{ball, var_indices, Monomial, VarIndex};
use crate::poly::LaurentPoly;
use crate::region::MonomialRegion;

/// A rule `x^α ↦ b_α`, i.e. the rewriting polynomial `x^α - b_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub head: Monomial,
    pub tail: LaurentPoly,
}

impl RewriteRule {
    pub fn new(head: Monomial, tail: LaurentPoly) -> Self {
        RewriteRule { head, tail }
    }

    /// Builds the rule from a polynomial that is monic at `head`.
    pub fn from_poly(head: &Monomial, p: &LaurentPoly) -> Result<Self> {
        let monic = p.monic_at(head)?;
        let mut tail = monic.neg();
        tail.remove_term(head);
        Ok(RewriteRule {
            head: head.clone(),
            tail,
        })
    }

    /// `f_α = x^α - b_α`.
    pub fn polynomial(&self) -> LaurentPoly {
        let one = self
            .tail
            .field()
            .map(|f| f.one())
            .expect("field is known once a tail is nonzero");
        let mut p = self.tail.neg();
        p.add_term(self.head.clone(), &one);
        p
    }

    pub fn degree(&self) -> u32 {
        self.head.degree()
    }
}

/// `π : ⟨B^×⟩_{≤d} → ⟨B⟩_{≤d}`, given by one rule per border monomial.
#[derive(Clone, Debug)]
pub struct Projection {
    nvars: usize,
    degree: u32,
    region: MonomialRegion,
    rules: BTreeMap<Monomial, LaurentPoly>,
    field: crate::scalar::Field,
}

/// JSON form of one rule: `{head, tail: [[exponents, coeff], …]}`.
#[derive(Serialize)]
pub struct RuleRecord {
    pub head: Monomial,
    pub tail: Vec<(Monomial, String)>,
}

impl Projection {
    /// A projection without any validation of the rule shapes.
    pub fn new(
        field: crate::scalar::Field,
        region: MonomialRegion,
        degree: u32,
        rules: impl IntoIterator<Item = RewriteRule>,
    ) -> Self {
        let nvars = region.components().first().map_or(0, |c| c.apex.nvars());
        Projection {
            nvars,
            degree,
            region,
            rules: rules.into_iter().map(|r| (r.head, r.tail)).collect(),
            field,
        }
    }

    /// Like [`Projection::new`], but checks every rule: head in `∂B`, tail in
    /// `⟨B⟩`, `δ(tail) ≤ δ(head) ≤ d`.
    pub fn try_new(
        field: crate::scalar::Field,
        region: MonomialRegion,
        degree: u32,
        rules: impl IntoIterator<Item = RewriteRule>,
    ) -> Result<Self> {
        let mut out = Self::new(field, region, degree, std::iter::empty());
        for r in rules {
            out.insert_rule(r)?;
        }
        Ok(out)
    }

    fn insert_rule(&mut self, r: RewriteRule) -> Result<()> {
        if self.rules.contains_key(&r.head) {
            return Err(Error::DuplicateHead(r.head));
        }
        if self.region.contains(&r.head) || !self.is_border(&r.head) {
            return Err(Error::OutsideDomain(r.head));
        }
        if r.head.degree() > self.degree {
            return Err(Error::DegreeBound {
                degree: r.head.degree(),
                bound: self.degree,
            });
        }
        for m in r.tail.support() {
            if !self.region.contains(m) {
                return Err(Error::NotInB(m.clone()));
            }
            if m.degree() > r.head.degree() {
                return Err(Error::DegreeBound {
                    degree: m.degree(),
                    bound: r.head.degree(),
                });
            }
        }
        self.rules.insert(r.head, r.tail);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> crate::scalar::Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn region(&self) -> &MonomialRegion {
        &self.region
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn tail(&self, head: &Monomial) -> Option<&LaurentPoly> {
        self.rules.get(head)
    }

    pub fn rule(&self, head: &Monomial) -> Option<RewriteRule> {
        self.rules
            .get(head)
            .map(|t| RewriteRule::new(head.clone(), t.clone()))
    }

    /// The rewriting family `F`, as rules, in increasing head order.
    pub fn rewriting_family(&self) -> Vec<RewriteRule> {
        self.rules
            .iter()
            .map(|(h, t)| RewriteRule::new(h.clone(), t.clone()))
            .collect()
    }

    /// Rule polynomials `x^α - b_α` in increasing head order.
    pub fn rule_polynomials(&self) -> Vec<LaurentPoly> {
        self.rules
            .iter()
            .map(|(h, t)| {
                let mut p = t.neg();
                p.add_term(h.clone(), &self.field.one());
                p
            })
            .collect()
    }

    pub fn in_b(&self, m: &Monomial) -> bool {
        self.region.contains(m)
    }

    /// `m ∈ ∂B`: outside `B` with a neighbour inside.
    pub fn is_border(&self, m: &Monomial) -> bool {
        !self.region.contains(m) && var_indices(self.nvars).any(|i| self.region.contains(&m.step(i)))
    }

    /// Whether `m` lies in `⟨B^×⟩_{≤d}` with a known image.
    pub fn in_domain(&self, m: &Monomial) -> bool {
        m.degree() <= self.degree && (self.region.contains(m) || self.rules.contains_key(m))
    }

    /// `π(p)`: one simultaneous substitution of every border monomial.
    pub fn project(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.nvars);
        for (m, c) in p.terms() {
            if m.degree() > self.degree {
                return Err(Error::OutsideDomain(m.clone()));
            }
            if self.region.contains(m) {
                out.add_term(m.clone(), c);
            } else if let Some(tail) = self.rules.get(m) {
                out.add_scaled(c, tail);
            } else {
                return Err(Error::OutsideDomain(m.clone()));
            }
        }
        Ok(out)
    }

    /// `X_i(b) = π(x_i b)` for `b ∈ ⟨B⟩_{≤d-1}`.
    pub fn mult_operator(&self, i: VarIndex, b: &LaurentPoly) -> Result<LaurentPoly> {
        if let Some(k) = b.degree() {
            if k + 1 > self.degree {
                return Err(Error::DegreeBound {
                    degree: k,
                    bound: self.degree.saturating_sub(1),
                });
            }
        }
        if let Some(m) = b.support().find(|m| !self.region.contains(m)) {
            return Err(Error::NotInB(m.clone()));
        }
        self.project(&b.mul_var(i))
    }

    /// `σ(p) = p(X)(1)` along canonical factorizations.
    pub fn sigma(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        NormalFormCache::new(self).sigma(p)
    }

    /// The same extension with a raised degree bound and extra rules.
    pub fn extend(&self, new_rules: impl IntoIterator<Item = RewriteRule>, degree: u32) -> Result<Projection> {
        let mut out = self.clone();
        out.degree = degree.max(self.degree);
        for r in new_rules {
            out.insert_rule(r)?;
        }
        Ok(out)
    }

    pub fn with_degree(&self, degree: u32) -> Projection {
        let mut out = self.clone();
        out.degree = degree;
        out
    }

    /// JSON records of the rules.
    pub fn records(&self) -> Vec<RuleRecord> {
        self.rules
            .iter()
            .map(|(h, t)| RuleRecord {
                head: h.clone(),
                tail: t.terms().rev().map(|(m, c)| (m.clone(), c.to_string())).collect(),
            })
            .collect()
    }

    /// `B_{≤d}` for the projection's own degree bound.
    pub fn b_truncation(&self) -> BTreeSet<Monomial> {
        self.region.truncate(self.degree)
    }

    /// Compares `dim ⟨Ball(d)⟩` with `|B_{≤d}| + rank{m·f : f ∈ F, δ(m·f) ≤ d}`.
    pub fn direct_sum_check(&self, d: u32) -> DirectSum {
        let ball_d = ball(self.nvars, d);
        let b_count = self.region.truncate(d).len();
        let mut multiples = Vec::new();
        for f in self.rule_polynomials() {
            let fd = f.degree().unwrap_or(0);
            for m in ball(self.nvars, d + fd) {
                if f.support().all(|t| t.mul(&m).degree() <= d) {
                    multiples.push(f.mul_monomial(&m));
                }
            }
        }
        let rank = linalg::rank_of(self.nvars, &multiples);
        DirectSum {
            ball_dim: ball_d.len(),
            b_count,
            ideal_rank: rank,
        }
    }
}

/// Outcome of the direct-sum dimension check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSum {
    pub ball_dim: usize,
    pub b_count: usize,
    pub ideal_rank: usize,
}

impl DirectSum {
    pub fn holds(&self) -> bool {
        self.ball_dim == self.b_count + self.ideal_rank
    }
}

/// The order in which a monomial is factored when evaluating `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    /// `X_{i₁} ∘ … ∘ X_{i_k}(1)` with `|i₁| ≤ … ≤ |i_k|`: outermost operator has the smallest index.
    Canonical,
    /// The reversed composition, used to detect order dependence.
    Reversed,
}

/// Memoized evaluation of `σ` for one projection.
pub struct NormalFormCache<'a> {
    proj: &'a Projection,
    order: FactorOrder,
    memo: HashMap<Monomial, LaurentPoly>,
}

impl<'a> NormalFormCache<'a> {
    pub fn new(proj: &'a Projection) -> Self {
        Self::with_order(proj, FactorOrder::Canonical)
    }

    pub fn with_order(proj: &'a Projection, order: FactorOrder) -> Self {
        NormalFormCache {
            proj,
            order,
            memo: HashMap::new(),
        }
    }

    pub fn sigma(&mut self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let d = self.proj.degree;
        if let Some(k) = p.degree() {
            if k > d {
                return Err(Error::DegreeBound { degree: k, bound: d });
            }
        }
        let mut out = LaurentPoly::zero(self.proj.nvars);
        for (m, c) in p.terms() {
            let s = self.sigma_monomial(m)?;
            out.add_scaled(c, &s);
        }
        Ok(out)
    }

    pub fn sigma_monomial(&mut self, m: &Monomial) -> Result<LaurentPoly> {
        if let Some(v) = self.memo.get(m) {
            return Ok(v.clone());
        }
        let v = if m.is_one() {
            LaurentPoly::constant(self.proj.nvars, self.proj.field.one())
        } else {
            let seq = m.canonical_factorization();
            let i = match self.order {
                FactorOrder::Canonical => seq[0],
                FactorOrder::Reversed => *seq.last().expect("nonempty"),
            };
            let rest = m.step(-i);
            let inner = self.sigma_monomial(&rest)?;
            self.proj.mult_operator(i, &inner)?
        };
        self.memo.insert(m.clone(), v.clone());
        Ok(v)
    }
}

/// Monomials of `Ball(d)` on which the two factorization orders of `σ` disagree.
pub fn sigma_discrepancies(proj: &Projection, d: u32) -> Result<Vec<Monomial>> {
    let mut a = NormalFormCache::with_order(proj, FactorOrder::Canonical);
    let mut b = NormalFormCache::with_order(proj, FactorOrder::Reversed);
    let mut out = Vec::new();
    for m in ball(proj.nvars, d.min(proj.degree)) {
        if a.sigma_monomial(&m)? != b.sigma_monomial(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, 1, Q).unwrap()
    }

    fn m1(e: i32) -> Monomial {
        Monomial::new(&[e])
    }

    /// n = 1, B = {1}, rules x1 ↦ 2 and x1^-1 ↦ 1/2.
    fn point_projection(d: u32) -> Projection {
        let region = MonomialRegion::full(1)
            .remove_cone(&m1(1))
            .unwrap()
            .remove_cone(&m1(-1))
            .unwrap();
        Projection::try_new(
            Q,
            region,
            d,
            [
                RewriteRule::new(m1(1), p("2")),
                RewriteRule::new(m1(-1), p("1/2")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn project_examples() {
        let pi = point_projection(3);
        assert_eq!(pi.project(&p("7")).unwrap(), p("7"));
        for f in pi.rule_polynomials() {
            assert!(pi.project(&f).unwrap().is_zero());
        }
        assert_eq!(pi.project(&p("3*x1 + x1^-1")).unwrap(), p("13/2"));
        assert_eq!(pi.project(&p("x1^2")), Err(Error::OutsideDomain(m1(2))));
    }

    #[test]
    fn mult_operator_examples() {
        let pi = point_projection(3);
        assert_eq!(pi.mult_operator(1, &p("1")).unwrap(), p("2"));
        let x = pi.mult_operator(1, &p("1")).unwrap();
        assert_eq!(pi.mult_operator(-1, &x).unwrap(), p("1"));
        let full = Projection::new(Q, MonomialRegion::full(1), 3, []);
        assert_eq!(full.mult_operator(1, &p("1")).unwrap(), p("x1"));
        assert!(matches!(
            point_projection(1).mult_operator(1, &p("1")),
            Ok(_)
        ));
        assert!(matches!(
            full.mult_operator(1, &p("x1^3")),
            Err(Error::DegreeBound { .. })
        ));
    }

    #[test]
    fn sigma_examples() {
        let pi = point_projection(3);
        assert_eq!(pi.sigma(&p("x1^3")).unwrap(), p("8"));
        assert_eq!(pi.sigma(&p("x1^-2 + 1")).unwrap(), p("5/4"));
        assert_eq!(pi.sigma(&p("5")).unwrap(), p("5"));
        for f in pi.rule_polynomials() {
            assert!(pi.sigma(&f).unwrap().is_zero());
        }
        assert!(matches!(pi.sigma(&p("x1^4")), Err(Error::DegreeBound { .. })));
        assert!(sigma_discrepancies(&pi, 3).unwrap().is_empty());
    }

    #[test]
    fn rule_validation() {
        let region = MonomialRegion::full(1).remove_cone(&m1(1)).unwrap();
        let bad_tail = Projection::try_new(Q, region.clone(), 2, [RewriteRule::new(m1(1), p("x1^2"))]);
        assert!(bad_tail.is_err());
        let not_border = Projection::try_new(Q, region.clone(), 3, [RewriteRule::new(m1(2), p("1"))]);
        assert_eq!(not_border.unwrap_err(), Error::OutsideDomain(m1(2)));
        let ok = Projection::try_new(Q, region, 2, [RewriteRule::new(m1(1), p("2"))]).unwrap();
        assert_eq!(
            ok.extend([RewriteRule::new(m1(1), p("3"))], 3).unwrap_err(),
            Error::DuplicateHead(m1(1))
        );
    }

    #[test]
    fn extension_keeps_tails_and_raises_bound() {
        let region = MonomialRegion::full(1).remove_cone(&m1(1)).unwrap();
        let pi = Projection::try_new(Q, region, 1, [RewriteRule::new(m1(1), p("2"))]).unwrap();
        let same = pi.extend([], 2).unwrap();
        assert_eq!(same.degree(), 2);
        assert_eq!(same.tail(&m1(1)), Some(&p("2")));
    }

    #[test]
    fn direct_sum_for_point() {
        let pi = point_projection(4);
        for d in 1..=4 {
            assert!(pi.direct_sum_check(d).holds(), "d = {d}");
        }
    }
}
