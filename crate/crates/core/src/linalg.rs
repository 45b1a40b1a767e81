//! Exact sparse elimination over the session field.
//!
//! Columns carry a priority order (index 0 is most preferred); a row's pivot
//! is its first nonzero column. Over GF(p) rows are kept monic; over ℚ the
//! elimination is fraction-free on primitive integer rows and only the final
//! echelon rows are normalized back to rationals.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::LaurentPoly;
use crate::scalar::{Field, Scalar};

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Where a matrix row came from: `multiplier · source polynomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: usize,
    pub multiplier: Monomial,
}

/// The coefficient matrix of a list of polynomials over a fixed column list.
#[derive(Clone, Debug)]
pub struct CoeffMatrix {
    nvars: usize,
    columns: Vec<Monomial>,
    rows: Vec<SparseRow>,
    provenance: Vec<Provenance>,
}

impl CoeffMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn row_poly(&self, r: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.nvars,
            self.rows[r].iter().map(|(c, v)| (self.columns[*c].clone(), v.clone())),
        )
    }

    /// MatrixMarket-style coordinate dump; values are printed exactly.
    pub fn to_matrix_market(&self) -> String {
        let nnz: usize = self.rows.iter().map(Vec::len).sum();
        let mut s = String::from("%%MatrixMarket matrix coordinate exact general\n");
        for (j, m) in self.columns.iter().enumerate() {
            let _ = writeln!(s, "% column {} {:?}", j + 1, m);
        }
        let _ = writeln!(s, "{} {} {}", self.nrows(), self.ncols(), nnz);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let _ = writeln!(s, "{} {} {}", i + 1, j + 1, v);
            }
        }
        s
    }
}

/// Builds the coefficient matrix of `polys` over `columns`.
pub fn build_matrix(nvars: usize, polys: &[LaurentPoly], columns: Vec<Monomial>) -> Result<CoeffMatrix> {
    let provenance = (0..polys.len())
        .map(|source| Provenance {
            source,
            multiplier: Monomial::one(nvars),
        })
        .collect();
    build_matrix_with_provenance(nvars, polys, columns, provenance)
}

pub fn build_matrix_with_provenance(
    nvars: usize,
    polys: &[LaurentPoly],
    columns: Vec<Monomial>,
    provenance: Vec<Provenance>,
) -> Result<CoeffMatrix> {
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(polys.len());
    for p in polys {
        let mut row = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let col = *index.get(m).ok_or_else(|| Error::UnknownMonomial(m.clone()))?;
            row.push((col, c.clone()));
        }
        row.sort_by_key(|e| e.0);
        rows.push(row);
    }
    Ok(CoeffMatrix {
        nvars,
        columns,
        rows,
        provenance,
    })
}

/// Reduced row echelon form of a coefficient matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rank: usize,
    /// Pivot column indices, increasing.
    pub pivot_cols: Vec<usize>,
    /// Pivot monomials, aligned with `pivot_cols`.
    pub pivots: Vec<Monomial>,
    /// Fully reduced rows, monic at their pivot, aligned with `pivots`.
    pub rows: Vec<LaurentPoly>,
    /// Largest coefficient bit size seen during rational elimination.
    pub max_bits: u64,
}

impl Echelon {
    /// Rows whose support lies in `Ball(d)`. With a degree-graded column
    /// order these span exactly the degree-`≤ d` part of the row space.
    pub fn low_degree_members(&self, d: u32) -> Vec<LaurentPoly> {
        low_degree_members(&self.rows, d)
    }
}

pub fn low_degree_members(rows: &[LaurentPoly], d: u32) -> Vec<LaurentPoly> {
    rows.iter()
        .filter(|r| r.degree().is_some_and(|k| k <= d))
        .cloned()
        .collect()
}

pub fn echelon(m: &CoeffMatrix) -> Echelon {
    let field = m.rows.iter().flat_map(|r| r.first()).map(|e| e.1.field()).next();
    let (pivot_cols, rows, max_bits) = match field {
        None => (Vec::new(), Vec::new(), 0),
        Some(Field::Prime(p)) => {
            let (cols, rows) = rref_mod(&m.rows, p);
            (cols, rows, 0)
        }
        Some(Field::Rational) => rref_rational(&m.rows),
    };
    let pivots = pivot_cols.iter().map(|&c| m.columns[c].clone()).collect();
    let rows = rows
        .into_iter()
        .map(|r| LaurentPoly::from_terms(m.nvars, r.into_iter().map(|(c, v)| (m.columns[c].clone(), v))))
        .collect();
    Echelon {
        rank: pivot_cols.len(),
        pivot_cols,
        pivots,
        rows,
        max_bits,
    }
}

/// Reduced row echelon form of raw sparse rows; returns pivot columns and
/// rows aligned with them.
pub fn rref(rows: &[SparseRow]) -> (Vec<usize>, Vec<SparseRow>) {
    match rows.iter().flat_map(|r| r.first()).map(|e| e.1.field()).next() {
        None => (Vec::new(), Vec::new()),
        Some(Field::Prime(p)) => rref_mod(rows, p),
        Some(Field::Rational) => {
            let (c, r, _) = rref_rational(rows);
            (c, r)
        }
    }
}

/// A basis of `{a : Σ a_k rows[k] = 0}`, each vector indexed by row number.
pub fn left_kernel(rows: &[SparseRow], ncols: usize, field: Field) -> Vec<SparseRow> {
    let augmented: Vec<SparseRow> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let mut a = r.clone();
            a.push((ncols + k, field.one()));
            a
        })
        .collect();
    let (pivots, reduced) = rref(&augmented);
    pivots
        .into_iter()
        .zip(reduced)
        .filter(|(c, _)| *c >= ncols)
        .map(|(_, r)| r.into_iter().map(|(c, v)| (c - ncols, v)).collect())
        .collect()
}

/// Rank of a list of polynomials (columns = union of supports).
pub fn rank_of(nvars: usize, polys: &[LaurentPoly]) -> usize {
    let mut cols: Vec<Monomial> = polys.iter().flat_map(|p| p.support().cloned()).collect();
    cols.sort();
    cols.dedup();
    cols.reverse();
    let m = build_matrix(nvars, polys, cols).expect("columns cover supports");
    echelon(&m).rank
}

// ---- GF(p) backend -------------------------------------------------------

type ModRow = Vec<(usize, u64)>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `target - factor · basis` over GF(p).
fn axpy_mod(target: &ModRow, factor: u64, basis: &ModRow, p: u64) -> ModRow {
    let mut out = Vec::with_capacity(target.len() + basis.len());
    let (mut i, mut j) = (0, 0);
    let neg = (p - factor) % p;
    while i < target.len() || j < basis.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = basis.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, mul_mod(neg, basis[j].1, p)));
            j += 1;
        } else {
            let v = (target[i].1 + mul_mod(neg, basis[j].1, p)) % p;
            if v != 0 {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rref_mod(rows: &[SparseRow], p: u64) -> (Vec<usize>, Vec<SparseRow>) {
    let mut basis: HashMap<usize, ModRow> = HashMap::new();
    for row in rows {
        let mut r: ModRow = row
            .iter()
            .map(|(c, v)| match v {
                Scalar::Fp { value, .. } => (*c, *value),
                Scalar::Q(_) => panic!("rational entry in a GF({p}) matrix"),
            })
            .collect();
        // reduce every entry that hits an existing pivot, left to right
        let mut k = 0;
        while k < r.len() {
            let (c, v) = r[k];
            if let Some(b) = basis.get(&c) {
                r = axpy_mod(&r, v, b, p);
            } else {
                k += 1;
            }
        }
        if let Some(&(lead, lv)) = r.first() {
            let inv = inv_mod(lv, p);
            let r: ModRow = r.into_iter().map(|(c, v)| (c, mul_mod(v, inv, p))).collect();
            // keep existing rows reduced against the new pivot
            for b in basis.values_mut() {
                if let Ok(pos) = b.binary_search_by_key(&lead, |e| e.0) {
                    let f = b[pos].1;
                    *b = axpy_mod(b, f, &r, p);
                }
            }
            basis.insert(lead, r);
        }
    }
    let mut cols: Vec<usize> = basis.keys().copied().collect();
    cols.sort_unstable();
    let rows = cols
        .iter()
        .map(|c| {
            basis[c]
                .iter()
                .map(|&(col, v)| (col, Scalar::Fp { value: v, prime: p }))
                .collect()
        })
        .collect();
    (cols, rows)
}

// ---- ℚ backend (fraction-free) --------------------------------------------

type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut r: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &r {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if let Some((_, lead)) = r.first() {
        if lead.is_negative() {
            g = -g;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for e in &mut r {
            e.1 = &e.1 / &g;
        }
    }
    r
}

/// `a · target - b · basis`, then primitive part.
fn combine_int(target: &IntRow, a: &BigInt, basis: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(target.len() + basis.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < basis.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = basis.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, a * &target[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &basis[j].1)));
            j += 1;
        } else {
            let v = a * &target[i].1 - b * &basis[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    primitive(out)
}

fn row_bits(r: &IntRow) -> u64 {
    r.iter().map(|e| e.1.bits()).max().unwrap_or(0)
}

/// Eliminates the entry of `target` at `col` using `basis` (pivot at `col`).
fn eliminate_int(target: &IntRow, col: usize, basis: &IntRow) -> IntRow {
    let t = &target[target.binary_search_by_key(&col, |e| e.0).expect("entry present")].1;
    let b = &basis[0].1;
    let g = t.gcd(b);
    combine_int(target, &(b / &g), basis, &(t / &g))
}

fn rref_rational(rows: &[SparseRow]) -> (Vec<usize>, Vec<SparseRow>, u64) {
    let mut basis: HashMap<usize, IntRow> = HashMap::new();
    let mut max_bits = 0;
    for row in rows {
        let mut den = BigInt::one();
        for (_, v) in row {
            let q = v.as_rational().expect("rational matrix entry");
            den = den.lcm(q.denom());
        }
        let r: IntRow = row
            .iter()
            .map(|(c, v)| {
                let q = v.as_rational().expect("rational matrix entry");
                (*c, q.numer() * (&den / q.denom()))
            })
            .collect();
        let mut r = primitive(r);
        let mut k = 0;
        while k < r.len() {
            let c = r[k].0;
            if let Some(b) = basis.get(&c) {
                r = eliminate_int(&r, c, b);
                max_bits = max_bits.max(row_bits(&r));
            } else {
                k += 1;
            }
        }
        if let Some(&(lead, _)) = r.first() {
            for b in basis.values_mut() {
                if b.binary_search_by_key(&lead, |e| e.0).is_ok() {
                    *b = eliminate_int(b, lead, &r);
                    max_bits = max_bits.max(row_bits(b));
                }
            }
            basis.insert(lead, r);
        }
    }
    let mut cols: Vec<usize> = basis.keys().copied().collect();
    cols.sort_unstable();
    let rows = cols
        .iter()
        .map(|c| {
            let r = &basis[c];
            let lead = r[0].1.clone();
            r.iter()
                .map(|(col, v)| (*col, Scalar::Q(BigRational::new(v.clone(), lead.clone()))))
                .collect()
        })
        .collect();
    (cols, rows, max_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str, field: Field) -> LaurentPoly {
        parse_poly(s, 2, field).unwrap()
    }

    fn cols(v: &[&[i32]]) -> Vec<Monomial> {
        v.iter().map(|e| Monomial::new(e)).collect()
    }

    #[test]
    fn left_kernel_finds_dependency() {
        for field in [Field::Rational, Field::GF32003] {
            let s = |v: i64| field.from_i64(v);
            let rows = vec![
                vec![(0, s(1)), (1, s(2))],
                vec![(1, s(1))],
                vec![(0, s(2)), (1, s(3))],
            ];
            let k = left_kernel(&rows, 2, field);
            assert_eq!(k.len(), 1);
            let mut acc = vec![field.zero(), field.zero()];
            for (r, a) in &k[0] {
                for (c, v) in &rows[*r] {
                    acc[*c] += &(a * v);
                }
            }
            assert!(acc.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn empty_matrix() {
        let m = build_matrix(2, &[], cols(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (0, 2));
        assert_eq!(echelon(&m).rank, 0);
    }

    #[test]
    fn missing_column_is_an_error() {
        let err = build_matrix(2, &[p("x1 + x2", Field::Rational)], cols(&[&[1, 0]])).unwrap_err();
        assert_eq!(err, Error::UnknownMonomial(Monomial::new(&[0, 1])));
    }

    #[test]
    fn identity_pattern_and_duplicates() {
        for field in [Field::Rational, Field::GF32003] {
            let polys = vec![p("2*x1", field), p("3*x2", field), p("-x2^-1", field), p("3*x2", field)];
            let m = build_matrix(2, &polys, cols(&[&[1, 0], &[0, 1], &[0, -1]])).unwrap();
            let e = echelon(&m);
            assert_eq!(e.rank, 3);
            assert_eq!(e.pivot_cols, vec![0, 1, 2]);
            assert!(e.rows.iter().zip(&e.pivots).all(|(r, m)| r.coeff(m).unwrap().is_one()));
        }
    }

    #[test]
    fn rational_rows_are_fully_reduced() {
        let polys = vec![p("x1 + x2 + 1", Field::Rational), p("x1 - x2 + 3", Field::Rational)];
        let m = build_matrix(2, &polys, cols(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap();
        let e = echelon(&m);
        assert_eq!(e.rows[0], p("x1 + 2", Field::Rational));
        assert_eq!(e.rows[1], p("x2 - 1", Field::Rational));
    }

    #[test]
    fn low_degree_member_is_revealed() {
        for field in [Field::Rational, Field::GF32003] {
            let a = p("x1^2 + x2", field);
            let q = p("3*x2 - x1^-1", field);
            let mut cols: Vec<Monomial> = a.support().chain(q.support()).cloned().collect();
            cols.sort();
            cols.dedup();
            cols.reverse();
            let m = build_matrix(2, &[a.clone(), a.add(&q)], cols).unwrap();
            let low = echelon(&m).low_degree_members(1);
            assert_eq!(low.len(), 1);
            assert_eq!(low[0], q.monic_at(&Monomial::new(&[0, 1])).unwrap());
        }
        let m = build_matrix(2, &[], vec![]).unwrap();
        assert!(echelon(&m).low_degree_members(3).is_empty());
    }
}
