//! Prolongation and commutation polynomials, and the two equivalent
//! border basis checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{var_indices, Monomial, VarIndex};
use crate::poly::LaurentPoly;
use crate::projection::Projection;

/// Where a candidate polynomial came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Origin {
    /// `x_i f` for the rule with the given head.
    Prolongation { i: VarIndex, head: Monomial },
    /// `x_i f - x_j f'`.
    Commutation {
        i: VarIndex,
        head: Monomial,
        j: VarIndex,
        other: Monomial,
    },
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub origin: Origin,
    pub poly: LaurentPoly,
}

/// A failing polynomial or operator identity together with its residue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub what: String,
    pub residue: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub condition1_ok: Option<bool>,
    pub condition3_ok: Option<bool>,
    pub witnesses: Vec<Witness>,
}

impl CriterionReport {
    /// True when every evaluated condition holds.
    pub fn ok(&self) -> bool {
        self.condition1_ok.unwrap_or(true) && self.condition3_ok.unwrap_or(true)
    }

    pub fn merge(mut self, other: CriterionReport) -> CriterionReport {
        self.condition1_ok = self.condition1_ok.or(other.condition1_ok);
        self.condition3_ok = self.condition3_ok.or(other.condition3_ok);
        self.witnesses.extend(other.witnesses);
        self
    }
}

fn in_prolongation(proj: &Projection, p: &LaurentPoly) -> bool {
    p.support().all(|m| proj.in_b(m) || proj.is_border(m))
}

/// All `x_i f` with `f ∈ F_{≤d-1}` supported in `⟨B^×⟩`.
pub fn prolongation_polys(proj: &Projection, d: u32) -> Vec<Candidate> {
    let mut out = Vec::new();
    for f in proj.rewriting_family() {
        if f.degree() + 1 > d {
            continue;
        }
        let poly = f.polynomial();
        for i in var_indices(proj.nvars()) {
            let q = poly.mul_var(i);
            if in_prolongation(proj, &q) {
                out.push(Candidate {
                    origin: Origin::Prolongation {
                        i,
                        head: f.head.clone(),
                    },
                    poly: q,
                });
            }
        }
    }
    out.sort_by(|a, b| a.origin.cmp(&b.origin));
    out
}

/// `x_i f - x_j f'` for rules of `F_{≤d-1}` whose heads overlap,
/// `x_i·head(f) = x_j·head(f')`, over all `i ≠ j`.
pub fn commutation_polys(proj: &Projection, d: u32) -> Vec<Candidate> {
    let family = proj.rewriting_family();
    let mut out = Vec::new();
    for f in &family {
        if f.degree() + 1 > d {
            continue;
        }
        for i in var_indices(proj.nvars()) {
            let target = f.head.step(i);
            for j in var_indices(proj.nvars()) {
                if j == i {
                    continue;
                }
                let other = target.step(-j);
                // each unordered pair once
                if (j, &other) < (i, &f.head) {
                    continue;
                }
                let Some(g) = proj.rule(&other) else { continue };
                if g.degree() + 1 > d {
                    continue;
                }
                let q = f.polynomial().mul_var(i).sub(&g.polynomial().mul_var(j));
                if in_prolongation(proj, &q) {
                    out.push(Candidate {
                        origin: Origin::Commutation {
                            i,
                            head: f.head.clone(),
                            j,
                            other,
                        },
                        poly: q,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.origin.cmp(&b.origin));
    out
}

fn describe(origin: &Origin) -> String {
    match origin {
        Origin::Prolongation { i, head } => format!("x{i} * ({head} - tail)"),
        Origin::Commutation { i, head, j, other } => {
            format!("x{i} * ({head} - tail) - x{j} * ({other} - tail)")
        }
    }
}

/// Every element of `C¹ ∪ C²` of `F_{≤d-1}` must project to zero.
pub fn check_condition3(proj: &Projection, d: u32) -> CriterionReport {
    let pi = proj.with_degree(d.max(proj.degree()));
    let mut witnesses = Vec::new();
    let candidates = prolongation_polys(proj, d)
        .into_iter()
        .chain(commutation_polys(proj, d));
    for c in candidates {
        let residue = match pi.project(&c.poly) {
            Ok(r) if r.is_zero() => continue,
            Ok(r) => r.to_string(),
            Err(e) => e.to_string(),
        };
        witnesses.push(Witness {
            what: format!("{} = {}", describe(&c.origin), c.poly),
            residue,
        });
    }
    CriterionReport {
        condition1_ok: None,
        condition3_ok: Some(witnesses.is_empty()),
        witnesses,
    }
}

/// `X_i∘X_{-i} = Id` and `X_i∘X_j = X_j∘X_i` for `i ≠ ±j` on `⟨B⟩_{≤d-2}`.
pub fn check_condition1(proj: &Projection, d: u32) -> Result<CriterionReport> {
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let pi = proj.with_degree(d);
    let n = proj.nvars() as VarIndex;
    let mut witnesses = Vec::new();
    let apply = |ops: &[VarIndex], m: &Monomial| -> Result<LaurentPoly> {
        let mut v = LaurentPoly::term(m.clone(), proj.field().one());
        for &i in ops.iter().rev() {
            v = pi.mult_operator(i, &v)?;
        }
        Ok(v)
    };
    let mut record = |lhs: &[VarIndex], rhs: &[VarIndex], m: &Monomial| {
        let a = apply(lhs, m);
        let b = apply(rhs, m);
        let residue = match (a, b) {
            (Ok(a), Ok(b)) => {
                let r = a.sub(&b);
                if r.is_zero() {
                    return;
                }
                r.to_string()
            }
            (Err(e), _) | (_, Err(e)) => e.to_string(),
        };
        let name = |ops: &[VarIndex]| {
            if ops.is_empty() {
                "Id".to_string()
            } else {
                ops.iter().map(|i| format!("X{i}")).collect::<Vec<_>>().join("∘")
            }
        };
        witnesses.push(Witness {
            what: format!("{} vs {} at {m}", name(lhs), name(rhs)),
            residue,
        });
    };
    // Commutation is checked for every pair of signs: at a fixed degree the
    // positive pairs alone do not imply the mixed ones.
    for m in proj.region().truncate(d - 2) {
        for i in 1..=n {
            record(&[i, -i], &[], &m);
            record(&[-i, i], &[], &m);
        }
        for i in var_indices(n as usize) {
            for j in var_indices(n as usize).filter(|j| j.abs() > i.abs()) {
                record(&[i, j], &[j, i], &m);
            }
        }
    }
    Ok(CriterionReport {
        condition1_ok: Some(witnesses.is_empty()),
        condition3_ok: None,
        witnesses,
    })
}

/// Both conditions at degree `d`.
pub fn certify(proj: &Projection, d: u32) -> Result<CriterionReport> {
    Ok(check_condition1(proj, d)?.merge(check_condition3(proj, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::parse::parse_poly;
    use crate::projection::RewriteRule;
    use crate::region::MonomialRegion;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn point(n: usize, tails: &[(&[i32], &str)], d: u32) -> Projection {
        let mut region = MonomialRegion::full(n);
        for (h, _) in tails {
            region = region.remove_cone(&Monomial::new(h)).unwrap();
        }
        Projection::try_new(
            Q,
            region,
            d,
            tails
                .iter()
                .map(|(h, t)| RewriteRule::new(Monomial::new(h), parse_poly(t, n, Q).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn empty_family() {
        let pi = Projection::new(Q, MonomialRegion::full(2), 3, []);
        assert!(prolongation_polys(&pi, 3).is_empty());
        assert!(commutation_polys(&pi, 3).is_empty());
        assert_eq!(check_condition3(&pi, 3).condition3_ok, Some(true));
        assert_eq!(check_condition1(&pi, 3).unwrap().condition1_ok, Some(true));
    }

    #[test]
    fn univariate_point() {
        let pi = point(1, &[(&[1], "2"), (&[-1], "1/2")], 3);
        let c1 = prolongation_polys(&pi, 3);
        let expect = parse_poly("1 - 2*x1^-1", 1, Q).unwrap();
        assert!(c1.iter().any(|c| c.poly == expect));
        assert!(certify(&pi, 3).unwrap().ok());
        assert_eq!(check_condition1(&pi, 1).unwrap_err(), Error::DegreeTooSmall(1));
    }

    #[test]
    fn perturbed_tail_fails_both() {
        let pi = point(1, &[(&[1], "2"), (&[-1], "1")], 3);
        let c3 = check_condition3(&pi, 3);
        assert_eq!(c3.condition3_ok, Some(false));
        assert!(!c3.witnesses.is_empty());
        let c1 = check_condition1(&pi, 3).unwrap();
        assert_eq!(c1.condition1_ok, Some(false));
        assert!(c1.witnesses[0].what.ends_with("at 1"));
    }

    #[test]
    fn bivariate_point() {
        let pi = point(
            2,
            &[(&[1, 0], "3"), (&[-1, 0], "1/3"), (&[0, 1], "-2"), (&[0, -1], "-1/2")],
            4,
        );
        assert!(certify(&pi, 4).unwrap().ok());
        assert!(!commutation_polys(&pi, 4).is_empty());
        let bad = point(
            2,
            &[(&[1, 0], "3"), (&[-1, 0], "1/3"), (&[0, 1], "-2"), (&[0, -1], "1/2")],
            4,
        );
        let r = certify(&bad, 4).unwrap();
        assert_eq!(r.condition1_ok, Some(false));
        assert_eq!(r.condition3_ok, Some(false));
    }

    #[test]
    fn report_serializes() {
        let pi = point(1, &[(&[1], "2"), (&[-1], "1")], 3);
        let json = serde_json::to_string(&check_condition3(&pi, 3)).unwrap();
        assert!(json.contains("residue"));
    }
}
