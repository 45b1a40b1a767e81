//! The quotient algebra `⟨B⟩` of a finished border basis and its
//! multiplication matrices.

use crate::error::{Error, Result};
use crate::monomial::{var_indices, Monomial, VarIndex};
use crate::poly::LaurentPoly;
use crate::projection::Projection;
use crate::scalar::{Field, Scalar};

/// Dense square matrix over one field, row-major.
pub type Matrix = Vec<Vec<Scalar>>;

/// Matrix of `X_i` in the basis `B`: column `c` holds the coordinates of
/// `X_i(basis[c])`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationMatrix {
    pub var: VarIndex,
    pub entries: Matrix,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    field: Field,
    basis: Vec<Monomial>,
    matrices: Vec<MultiplicationMatrix>,
}

impl Quotient {
    /// Fails with `InfiniteQuotient` unless `B` is finite and every `x_i b`
    /// stays inside the projection's degree.
    pub fn from_projection(proj: &Projection) -> Result<Quotient> {
        let d = proj.degree();
        let region = proj.region();
        let top = region.max_degree(d).ok_or(Error::InfiniteQuotient)?;
        if top + 1 > d || region.truncate(top + 1).len() != region.truncate(top).len() {
            return Err(Error::InfiniteQuotient);
        }
        let mut basis: Vec<Monomial> = region.truncate(top).into_iter().collect();
        basis.sort();
        let index = |m: &Monomial| basis.binary_search(m).map_err(|_| Error::NotInB(m.clone()));
        let field = proj.field();
        let n = basis.len();
        let mut matrices = Vec::new();
        for i in var_indices(proj.nvars()) {
            let mut entries = vec![vec![field.zero(); n]; n];
            for (c, b) in basis.iter().enumerate() {
                let image = proj.project(&LaurentPoly::term(b.step(i), field.one()))?;
                for (m, v) in image.terms() {
                    entries[index(m)?][c] = v.clone();
                }
            }
            matrices.push(MultiplicationMatrix { var: i, entries });
        }
        Ok(Quotient { field, basis, matrices })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// All `2n` matrices in the order `x1, x1^-1, x2, …`.
    pub fn matrices(&self) -> &[MultiplicationMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: VarIndex) -> Option<&Matrix> {
        self.matrices.iter().find(|m| m.var == i).map(|m| &m.entries)
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix, field: Field) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![field.zero(); m]; n];
    for (r, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[r][c] += &(x.clone() * y);
                }
            }
        }
    }
    out
}

pub fn is_identity(a: &Matrix) -> bool {
    a.iter().enumerate().all(|(r, row)| {
        row.len() == a.len() && row.iter().enumerate().all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() })
    })
}

/// Characteristic polynomial `det(t·I − A)`, coefficients from the constant
/// term up. Reduces to Hessenberg form first so it works over any field.
pub fn char_poly(a: &Matrix, field: Field) -> Vec<Scalar> {
    let n = a.len();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&r| !h[r][j].is_zero()) else {
            continue;
        };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let piv = h[j + 1][j].inv().expect("nonzero pivot");
        for r in j + 2..n {
            if h[r][j].is_zero() {
                continue;
            }
            let u = h[r][j].clone() * &piv;
            for c in 0..n {
                let t = u.clone() * &h[j + 1][c];
                h[r][c] -= &t;
            }
            for row in h.iter_mut() {
                let t = u.clone() * &row[r];
                row[j + 1] += &t;
            }
        }
    }
    // p[m] is the characteristic polynomial of the leading m×m block
    let mut p: Vec<Vec<Scalar>> = vec![vec![field.one()]];
    for m in 1..=n {
        let mut next = vec![field.zero(); m + 1];
        for (k, c) in p[m - 1].iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &(c.clone() * &h[m - 1][m - 1]);
        }
        let mut prod = field.one();
        for i in 1..m {
            prod = prod * &h[m - i][m - i - 1];
            let f = prod.clone() * &h[m - i - 1][m - 1];
            for (k, c) in p[m - i - 1].iter().enumerate() {
                next[k] -= &(f.clone() * c);
            }
        }
        p.push(next);
    }
    p.pop().expect("at least the empty block")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system;
    use crate::solver::{run, Outcome, SolverConfig};

    fn quotient_of(text: &str, field: Field) -> Quotient {
        let sys = parse_system(text, field).unwrap();
        let r = run(&sys.polys, &SolverConfig::default()).unwrap();
        assert!(matches!(r.outcome, Outcome::BorderBasis { .. }));
        Quotient::from_projection(r.projection.as_ref().unwrap()).unwrap()
    }

    fn ints(field: Field, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect()
    }

    #[test]
    fn point_gives_scalar_matrices() {
        let q = quotient_of("x1 - 2", Field::Rational);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.matrix(1).unwrap()[0][0].to_string(), "2");
        assert_eq!(q.matrix(-1).unwrap()[0][0].to_string(), "1/2");
    }

    #[test]
    fn two_roots_char_poly() {
        let f = Field::Rational;
        let q = quotient_of("x1^2 - 3*x1 + 2", f);
        assert_eq!(q.dim(), 2);
        let cp = char_poly(q.matrix(1).unwrap(), f);
        assert_eq!(cp, vec![f.from_i64(2), f.from_i64(-3), f.one()]);
        let prod = mat_mul(q.matrix(1).unwrap(), q.matrix(-1).unwrap(), f);
        assert!(is_identity(&prod));
    }

    #[test]
    fn char_poly_of_known_matrices() {
        let f = Field::Rational;
        assert_eq!(char_poly(&ints(f, &[&[0, -2], &[1, 3]]), f), vec![f.from_i64(2), f.from_i64(-3), f.one()]);
        // needs a row swap during the reduction
        let a = ints(f, &[&[1, 2, 3], &[0, 4, 5], &[6, 0, 7]]);
        // det(tI - A) = t^3 - 12t^2 + 21t - 16, by cofactors
        let want = [-16, 21, -12, 1].iter().map(|&v| f.from_i64(v)).collect::<Vec<_>>();
        let a2 = ints(f, &[&[1, 2, 3], &[0, 0, 5], &[6, 4, 7]]);
        assert_eq!(char_poly(&a, f), want);
        assert_eq!(char_poly(&a2, f)[3], f.one());
        assert_eq!(char_poly(&vec![], f), vec![f.one()]);
    }

    #[test]
    fn operators_commute_and_invert() {
        let f = Field::GF32003;
        let q = quotient_of("x1 + x2 - 3\nx1*x2^-1 - 2 + x2^-1", f);
        for i in [1, 2] {
            assert!(is_identity(&mat_mul(q.matrix(i).unwrap(), q.matrix(-i).unwrap(), f)));
        }
        let a = mat_mul(q.matrix(1).unwrap(), q.matrix(2).unwrap(), f);
        let b = mat_mul(q.matrix(2).unwrap(), q.matrix(1).unwrap(), f);
        assert_eq!(a, b);
    }

    #[test]
    fn infinite_region_is_rejected() {
        use crate::projection::RewriteRule;
        use crate::region::MonomialRegion;
        // B = {1, x1^-1, x1^-2, ...}
        let f = Field::Rational;
        let region = MonomialRegion::full(1).remove_cone(&Monomial::new(&[1])).unwrap();
        let rule = RewriteRule::new(Monomial::new(&[1]), LaurentPoly::constant(1, f.one()));
        let proj = Projection::new(f, region, 8, [rule]);
        assert_eq!(Quotient::from_projection(&proj).unwrap_err(), Error::InfiniteQuotient);
    }
}
