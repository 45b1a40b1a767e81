//! Laurent monomials: exponent vectors in ℤⁿ graded by the L1 degree.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// A signed variable index in `[-n, n] \ {0}`: `i` stands for `x_i`, `-i` for `x_i^-1`.
pub type VarIndex = i32;

/// All variable indices for `n` variables, in tie-break order `1, -1, 2, -2, ...`.
pub fn var_indices(n: usize) -> impl Iterator<Item = VarIndex> + Clone {
    (1..=n as i32).flat_map(|i| [i, -i])
}

/// A Laurent monomial `x^α`, stored as a dense exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn new(exponents: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    /// The variable `x_i` (or its inverse for negative `i`).
    pub fn var(n: usize, i: VarIndex) -> Self {
        let mut m = Self::one(n);
        m.0[i.unsigned_abs() as usize - 1] = i.signum();
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// The degree `|α₁| + … + |αₙ|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// `max_i |α_i|`.
    pub fn max_partial_degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    /// Multiplication by the single variable `x_i`.
    pub fn step(&self, i: VarIndex) -> Monomial {
        let mut m = self.clone();
        m.0[i.unsigned_abs() as usize - 1] += i.signum();
        m
    }

    /// Whether multiplying by `x_i` raises the degree.
    pub fn is_outward(&self, i: VarIndex) -> bool {
        let e = self.0[i.unsigned_abs() as usize - 1];
        e == 0 || e.signum() == i.signum()
    }

    /// Membership in the cone `((apex))`: same quadrant, componentwise dominance.
    pub fn in_cone(&self, apex: &Monomial) -> bool {
        self.0.iter().zip(&apex.0).all(|(&m, &a)| {
            if a > 0 {
                m >= a
            } else if a < 0 {
                m <= a
            } else {
                true
            }
        })
    }

    /// Whether the cones of `self` and `other` share a monomial.
    pub fn cones_meet(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| !((a > 0 && b < 0) || (a < 0 && b > 0)))
    }

    /// The canonical index sequence: `|i₁| ≤ … ≤ |i_k|` with `k = δ(m)`.
    pub fn canonical_factorization(&self) -> Vec<VarIndex> {
        let mut seq = Vec::with_capacity(self.degree() as usize);
        for (pos, &e) in self.0.iter().enumerate() {
            let idx = (pos as i32 + 1) * e.signum();
            seq.extend(std::iter::repeat(idx).take(e.unsigned_abs() as usize));
        }
        seq
    }

    /// Lexicographic on the signed exponent vector, so that
    /// `x₁ > x₂ > … > xₙ⁻¹ > … > x₁⁻¹` among the variables.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.as_slice().cmp(other.0.as_slice())
    }

    /// Graded by degree, then by the lexicographic tie-break (skips partial degree).
    pub fn cmp_degree_lex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

/// The total order: degree, then max partial degree, then lexicographic on
/// the exponent vector. Larger is more preferred as a leading monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.max_partial_degree().cmp(&other.max_partial_degree()))
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (pos, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", pos + 1)?;
            } else {
                write!(f, "x{}^{}", pos + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        Ok(Monomial::new(&v))
    }
}

/// All monomials of degree at most `k` in `n` variables, sorted by the total order.
pub fn ball(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(pos: usize, budget: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial::new(cur));
            return;
        }
        for e in -budget..=budget {
            cur[pos] = e;
            rec(pos + 1, budget - e.abs(), cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, k as i32, &mut cur, &mut out);
    out.sort();
    out
}

/// Closed-form `|Ball(k)|` in `n` variables: `Σ_j 2^j C(n,j) C(k,j)`.
pub fn ball_size(n: usize, k: u32) -> u64 {
    fn binom(a: u64, b: u64) -> u64 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
    }
    (0..=n as u64)
        .map(|j| (1u64 << j) * binom(n as u64, j) * binom(k as u64, j))
        .sum()
}
