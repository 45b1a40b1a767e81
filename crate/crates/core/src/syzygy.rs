//! The free module `S₁` on the symbols `Y_i[m]`, its boundary map, the
//! generators `φ` and `ρ`, and reduction of elements modulo them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{var_indices, Monomial, VarIndex};
use crate::poly::LaurentPoly;
use crate::projection::Projection;
use crate::scalar::Scalar;

/// The symbol `multiplier · Y_slot[base]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SyzTerm {
    pub multiplier: Monomial,
    pub slot: VarIndex,
    pub base: Monomial,
}

impl SyzTerm {
    pub fn degree(&self) -> u32 {
        self.multiplier.degree()
    }

    /// `multiplier · x_slot · base`, the leading monomial of the boundary.
    pub fn monomial(&self) -> Monomial {
        self.multiplier.mul(&self.base).step(self.slot)
    }
}

/// A finite combination of `Y` symbols. Symbols with `x_i·m ∈ B` are zero
/// and never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyElement {
    nvars: usize,
    terms: BTreeMap<SyzTerm, Scalar>,
}

#[derive(Serialize)]
struct TermRecord<'a> {
    coeff: String,
    multiplier: &'a Monomial,
    slot: VarIndex,
    base: &'a Monomial,
}

impl Serialize for SyzygyElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(t, c)| TermRecord {
            coeff: c.to_string(),
            multiplier: &t.multiplier,
            slot: t.slot,
            base: &t.base,
        }))
    }
}

impl SyzygyElement {
    pub fn zero(nvars: usize) -> Self {
        SyzygyElement {
            nvars,
            terms: BTreeMap::new(),
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&SyzTerm, &Scalar)> {
        self.terms.iter()
    }

    /// `δ` of the element: the largest multiplier degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(SyzTerm::degree).max()
    }

    fn add_raw(&mut self, t: SyzTerm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    /// Adds `c · m₁ Y_i[m₂]`, applying the zero convention.
    pub fn add_term(&mut self, proj: &Projection, c: &Scalar, m1: &Monomial, i: VarIndex, m2: &Monomial) -> Result<()> {
        if !proj.in_b(m2) {
            return Err(Error::NotInB(m2.clone()));
        }
        if proj.in_b(&m2.step(i)) {
            return Ok(());
        }
        self.add_raw(
            SyzTerm {
                multiplier: m1.clone(),
                slot: i,
                base: m2.clone(),
            },
            c,
        );
        Ok(())
    }

    /// Adds `c · m₁ Y_i[b]` for `b ∈ ⟨B⟩`, extended linearly.
    pub fn add_y(&mut self, proj: &Projection, c: &Scalar, m1: &Monomial, i: VarIndex, b: &LaurentPoly) -> Result<()> {
        for (m, v) in b.terms() {
            self.add_term(proj, &(c * v), m1, i, m)?;
        }
        Ok(())
    }

    /// `self += c · shift · other`.
    pub fn add_scaled_shifted(&mut self, c: &Scalar, shift: &Monomial, other: &SyzygyElement) {
        for (t, v) in &other.terms {
            let moved = SyzTerm {
                multiplier: t.multiplier.mul(shift),
                slot: t.slot,
                base: t.base.clone(),
            };
            self.add_raw(moved, &(c * v));
        }
    }

    pub fn sub(&self, other: &SyzygyElement) -> SyzygyElement {
        let mut out = self.clone();
        if let Some((_, c)) = other.terms.iter().next() {
            let minus_one = -c.field().one();
            out.add_scaled_shifted(&minus_one, &Monomial::one(self.nvars), other);
        }
        out
    }

    pub fn coeff(&self, t: &SyzTerm) -> Option<&Scalar> {
        self.terms.get(t)
    }
}

/// `ψ_i(m) = x_i m - π(x_i m)`.
pub fn psi(proj: &Projection, i: VarIndex, m: &Monomial) -> Result<LaurentPoly> {
    if !proj.in_b(m) {
        return Err(Error::NotInB(m.clone()));
    }
    let xm = m.step(i);
    if proj.in_b(&xm) {
        return Ok(LaurentPoly::zero(proj.nvars()));
    }
    let one = LaurentPoly::term(xm, proj.field().one());
    Ok(one.sub(&proj.project(&one)?))
}

/// `∂₁(s) = Σ λ m₁ ψ_i(m₂)`.
pub fn boundary(proj: &Projection, s: &SyzygyElement) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(proj.nvars());
    let mut cache: HashMap<(VarIndex, &Monomial), LaurentPoly> = HashMap::new();
    for (t, c) in &s.terms {
        if !cache.contains_key(&(t.slot, &t.base)) {
            cache.insert((t.slot, &t.base), psi(proj, t.slot, &t.base)?);
        }
        out.add_scaled_shifted(c, &t.multiplier, &cache[&(t.slot, &t.base)]);
    }
    Ok(out)
}

/// `φ_{i,j}(b) = x_i Y_j[b] - x_j Y_i[b] - Y_j[X_i b] + Y_i[X_j b]` for `b ∈ ⟨B⟩`.
pub fn make_phi_poly(proj: &Projection, i: VarIndex, j: VarIndex, b: &LaurentPoly) -> Result<SyzygyElement> {
    if i == j {
        return Err(Error::BadIndices(i, j));
    }
    let n = proj.nvars();
    let one = proj.field().one();
    let minus = -one.clone();
    let mut s = SyzygyElement::zero(n);
    s.add_y(proj, &one, &Monomial::var(n, i), j, b)?;
    s.add_y(proj, &minus, &Monomial::var(n, j), i, b)?;
    s.add_y(proj, &minus, &Monomial::one(n), j, &proj.mult_operator(i, b)?)?;
    s.add_y(proj, &one, &Monomial::one(n), i, &proj.mult_operator(j, b)?)?;
    Ok(s)
}

pub fn make_phi(proj: &Projection, i: VarIndex, j: VarIndex, m: &Monomial) -> Result<SyzygyElement> {
    make_phi_poly(proj, i, j, &LaurentPoly::term(m.clone(), proj.field().one()))
}

/// `ρ_i(b) = x_i Y_{-i}[b] + Y_i[X_{-i} b]`.
pub fn make_rho_poly(proj: &Projection, i: VarIndex, b: &LaurentPoly) -> Result<SyzygyElement> {
    let n = proj.nvars();
    let one = proj.field().one();
    let mut s = SyzygyElement::zero(n);
    s.add_y(proj, &one, &Monomial::var(n, i), -i, b)?;
    s.add_y(proj, &one, &Monomial::one(n), i, &proj.mult_operator(-i, b)?)?;
    Ok(s)
}

pub fn make_rho(proj: &Projection, i: VarIndex, m: &Monomial) -> Result<SyzygyElement> {
    make_rho_poly(proj, i, &LaurentPoly::term(m.clone(), proj.field().one()))
}

/// `X_{s₀} ∘ … ∘ X_{s_k}(1)`.
fn compose(proj: &Projection, seq: &[VarIndex]) -> Result<LaurentPoly> {
    let mut v = LaurentPoly::constant(proj.nvars(), proj.field().one());
    for &i in seq.iter().rev() {
        v = proj.mult_operator(i, &v)?;
    }
    Ok(v)
}

fn prefix(n: usize, seq: &[VarIndex]) -> Monomial {
    seq.iter().fold(Monomial::one(n), |m, &i| m.step(i))
}

/// `Ψ_{i₁…i_k} = Σ_l x_{i₁}⋯x_{i_{l-1}} Y_{i_l}[X_{i_{l+1}} ∘ ⋯ ∘ X_{i_k}(1)]`.
pub fn make_psi(proj: &Projection, seq: &[VarIndex]) -> Result<SyzygyElement> {
    let n = proj.nvars();
    let one = proj.field().one();
    let mut s = SyzygyElement::zero(n);
    let mut w = LaurentPoly::constant(n, one.clone());
    for l in (0..seq.len()).rev() {
        s.add_y(proj, &one, &prefix(n, &seq[..l]), seq[l], &w)?;
        if l > 0 {
            w = proj.mult_operator(seq[l], &w)?;
        }
    }
    Ok(s)
}

/// Which generator of `K₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    Phi { i: VarIndex, j: VarIndex },
    Rho { i: VarIndex },
}

/// `coeff · multiplier · g(base)`, with `g` extended linearly over `⟨B⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorUse {
    pub coeff: Scalar,
    pub multiplier: Monomial,
    pub generator: Generator,
    pub base: LaurentPoly,
}

impl GeneratorUse {
    pub fn expand(&self, proj: &Projection) -> Result<SyzygyElement> {
        let g = match self.generator {
            Generator::Phi { i, j } => make_phi_poly(proj, i, j, &self.base)?,
            Generator::Rho { i } => make_rho_poly(proj, i, &self.base)?,
        };
        let mut out = SyzygyElement::zero(proj.nvars());
        out.add_scaled_shifted(&self.coeff, &self.multiplier, &g);
        Ok(out)
    }
}

impl Serialize for GeneratorUse {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GeneratorUse", 4)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("multiplier", &self.multiplier)?;
        st.serialize_field("generator", &self.generator)?;
        st.serialize_field("base", &self.base.to_string())?;
        st.end()
    }
}

/// Sum of a generator trail.
pub fn trail_sum(proj: &Projection, trail: &[GeneratorUse]) -> Result<SyzygyElement> {
    let mut out = SyzygyElement::zero(proj.nvars());
    for u in trail {
        out.add_scaled_shifted(&proj.field().one(), &Monomial::one(proj.nvars()), &u.expand(proj)?);
    }
    Ok(out)
}

/// Moves turning `seq` into the canonical factorization of its product.
/// The returned uses sum to `Ψ_seq - Ψ_canonical`.
pub fn sequence_moves(proj: &Projection, seq: &[VarIndex], coeff: &Scalar) -> Result<Vec<GeneratorUse>> {
    let n = proj.nvars();
    let mut cur = seq.to_vec();
    let mut out = Vec::new();
    loop {
        let contract = cur.windows(2).position(|w| w[0] == -w[1]);
        let swap = cur.windows(2).position(|w| w[0].abs() > w[1].abs());
        let Some(l) = contract.or(swap) else { break };
        let w = compose(proj, &cur[l + 2..])?;
        let multiplier = prefix(n, &cur[..l]);
        let (a, b) = (cur[l], cur[l + 1]);
        if contract.is_some() {
            out.push(GeneratorUse {
                coeff: coeff.clone(),
                multiplier,
                generator: Generator::Rho { i: a },
                base: w,
            });
            cur.drain(l..l + 2);
        } else {
            out.push(GeneratorUse {
                coeff: coeff.clone(),
                multiplier,
                generator: Generator::Phi { i: a, j: b },
                base: w,
            });
            cur.swap(l, l + 1);
        }
    }
    Ok(out)
}

/// Result of [`reduce_to_canonical`]: `s = canonical + Σ trail`.
#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub canonical: SyzygyElement,
    pub trail: Vec<GeneratorUse>,
    pub steps: usize,
}

/// Caches the geometry of `B` used when locating canonical decompositions.
struct CanonicalFinder<'a> {
    proj: &'a Projection,
    b: BTreeSet<Monomial>,
    memo: HashMap<Monomial, Option<(VarIndex, Monomial)>>,
}

fn l1(a: &Monomial, b: &Monomial) -> u32 {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .map(|(x, y)| (x - y).unsigned_abs())
        .sum()
}

impl<'a> CanonicalFinder<'a> {
    fn new(proj: &'a Projection) -> Self {
        CanonicalFinder {
            proj,
            b: proj.b_truncation(),
            memo: HashMap::new(),
        }
    }

    /// `(i', m₁')` of the canonical decomposition of `m`, or `None` when `m ∈ B`.
    fn canonical(&mut self, m: &Monomial) -> Option<(VarIndex, Monomial)> {
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let dist = self.b.iter().map(|b| l1(m, b)).min().unwrap_or(0);
        let mut best: Option<(VarIndex, Monomial)> = None;
        if dist > 0 {
            for m2 in self.b.iter().filter(|b| l1(m, b) == dist) {
                for i in var_indices(self.proj.nvars()) {
                    let border = m2.step(i);
                    if self.proj.in_b(&border) || l1(m, &border) + 1 != dist {
                        continue;
                    }
                    let cand = (i, m.div(&border));
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        self.memo.insert(m.clone(), best.clone());
        best
    }

    /// A factorization `x_{j₁}⋯x_{j_k}` of `m ∈ B` with every suffix in `B`.
    fn path(&self, m: &Monomial) -> Result<Vec<VarIndex>> {
        let mut seq = Vec::new();
        let mut cur = m.clone();
        while !cur.is_one() {
            let j = var_indices(self.proj.nvars())
                .find(|&j| {
                    let prev = cur.step(-j);
                    prev.degree() < cur.degree() && self.proj.in_b(&prev)
                })
                .ok_or_else(|| Error::NotInB(cur.clone()))?;
            seq.push(j);
            cur = cur.step(-j);
        }
        Ok(seq)
    }

    /// The sequence whose `Ψ` expands to the canonical term of `m` plus lower terms.
    fn target_sequence(&mut self, m: &Monomial) -> Result<Vec<VarIndex>> {
        match self.canonical(m) {
            None => self.path(m),
            Some((i, m1)) => {
                let m2 = m.div(&m1).step(-i);
                let mut seq = m1.canonical_factorization();
                seq.push(i);
                seq.extend(self.path(&m2)?);
                Ok(seq)
            }
        }
    }

    fn is_canonical(&mut self, t: &SyzTerm) -> bool {
        self.canonical(&t.monomial())
            .is_some_and(|(i, m1)| i == t.slot && m1 == t.multiplier)
    }
}

/// Rewrites `s` modulo the `φ`/`ρ` module until every term is the canonical
/// decomposition of its monomial. A syzygy of a border basis reduces to zero.
pub fn reduce_to_canonical(proj: &Projection, s: &SyzygyElement) -> Result<Reduction> {
    let mut finder = CanonicalFinder::new(proj);
    let max_deg = s.degree().unwrap_or(0) as usize;
    let slots = 2 * proj.nvars() * finder.b.len().max(1);
    let bound = s.len().max(1) * (max_deg + 1) * (max_deg + 1) * slots;
    let mut cur = s.clone();
    let mut trail = Vec::new();
    let mut steps = 0;
    loop {
        let pick = cur
            .terms
            .iter()
            .filter(|(t, _)| !finder.is_canonical(t))
            .max_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)))
            .map(|(t, c)| (t.clone(), c.clone()));
        let Some((t, lambda)) = pick else { break };
        steps += 1;
        if steps > bound {
            return Err(Error::ReductionBound(bound));
        }
        let m = t.monomial();
        let mut seq = t.multiplier.canonical_factorization();
        seq.push(t.slot);
        seq.extend(finder.path(&t.base)?);
        let target = finder.target_sequence(&m)?;
        // Ψ_seq - Ψ_target = (Ψ_seq - Ψ_C) - (Ψ_target - Ψ_C)
        let mut uses = sequence_moves(proj, &seq, &lambda)?;
        uses.extend(sequence_moves(proj, &target, &-lambda.clone())?);
        let diff = trail_sum(proj, &uses)?;
        cur = cur.sub(&diff);
        trail.extend(uses);
        if cur.coeff(&t) == Some(&lambda) {
            // the operators do not commute on this degree range
            return Err(Error::ReductionBound(steps));
        }
    }
    Ok(Reduction {
        canonical: cur,
        trail,
        steps,
    })
}

/// Checks `s = canonical + Σ trail` exactly.
pub fn verify_reduction(proj: &Projection, s: &SyzygyElement, r: &Reduction) -> Result<bool> {
    let rebuilt = trail_sum(proj, &r.trail)?;
    Ok(s.sub(&r.canonical) == rebuilt)
}

/// All symbols `m₁ Y_i[m₂]` with `δ(m₁) ≤ e` and `m₂ ∈ B_{≤b}`.
pub fn term_space(proj: &Projection, e: u32, b: u32) -> Vec<SyzTerm> {
    let n = proj.nvars();
    let mut out = Vec::new();
    for m2 in proj.region().truncate(b) {
        for i in var_indices(n) {
            if proj.in_b(&m2.step(i)) {
                continue;
            }
            for m1 in crate::monomial::ball(n, e) {
                out.push(SyzTerm {
                    multiplier: m1,
                    slot: i,
                    base: m2.clone(),
                });
            }
        }
    }
    out
}

/// A basis of `ker ∂₁` restricted to the span of `terms`.
pub fn kernel_basis(proj: &Projection, terms: &[SyzTerm]) -> Result<Vec<SyzygyElement>> {
    let images = terms
        .iter()
        .map(|t| {
            let p = psi(proj, t.slot, &t.base)?;
            Ok(p.mul_monomial(&t.multiplier))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cols: Vec<Monomial> = images.iter().flat_map(|p| p.support().cloned()).collect();
    cols.sort();
    cols.dedup();
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let rows: Vec<_> = images
        .iter()
        .map(|p| {
            let mut r: Vec<_> = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    let kernel = crate::linalg::left_kernel(&rows, cols.len(), proj.field());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut s = SyzygyElement::zero(proj.nvars());
            for (k, c) in v {
                s.add_raw(terms[k].clone(), &c);
            }
            s
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::projection::RewriteRule;
    use crate::region::MonomialRegion;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn build(n: usize, cones: &[&[i32]], rules: &[(&[i32], &str)], d: u32) -> Projection {
        let mut region = MonomialRegion::full(n);
        for c in cones {
            region = region.remove_cone(&Monomial::new(c)).unwrap();
        }
        Projection::try_new(
            Q,
            region,
            d,
            rules
                .iter()
                .map(|(h, t)| RewriteRule::new(Monomial::new(h), parse_poly(t, n, Q).unwrap())),
        )
        .unwrap()
    }

    fn x1_minus_2() -> Projection {
        build(1, &[&[1], &[-1]], &[(&[1], "2"), (&[-1], "1/2")], 12)
    }

    /// `x1^2 - 3x1 + 2` with `B = {1, x1}`.
    fn two_roots() -> Projection {
        build(
            1,
            &[&[2], &[-1]],
            &[(&[2], "3*x1 - 2"), (&[-1], "3/2 - 1/2*x1")],
            12,
        )
    }

    fn point2() -> Projection {
        build(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[(&[1, 0], "3"), (&[-1, 0], "1/3"), (&[0, 1], "-2"), (&[0, -1], "-1/2")],
            12,
        )
    }

    fn one(n: usize) -> Monomial {
        Monomial::one(n)
    }

    #[test]
    fn psi_examples() {
        let pi = x1_minus_2();
        assert_eq!(psi(&pi, 1, &one(1)).unwrap(), parse_poly("x1 - 2", 1, Q).unwrap());
        let pi = two_roots();
        assert!(psi(&pi, 1, &one(1)).unwrap().is_zero());
        assert_eq!(psi(&pi, 1, &Monomial::new(&[3])).unwrap_err(), Error::NotInB(Monomial::new(&[3])));
        let heads: BTreeSet<_> = pi.rules().map(|(h, _)| h.clone()).collect();
        let mut found = BTreeSet::new();
        for m in pi.b_truncation() {
            for i in var_indices(1) {
                let p = psi(&pi, i, &m).unwrap();
                if !p.is_zero() {
                    found.insert(m.step(i));
                }
            }
        }
        assert_eq!(found, heads);
    }

    #[test]
    fn rho_example_by_hand() {
        let pi = x1_minus_2();
        let r = make_rho(&pi, 1, &one(1)).unwrap();
        let half = Q.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(
            r.coeff(&SyzTerm {
                multiplier: one(1),
                slot: 1,
                base: one(1)
            }),
            Some(&half)
        );
        assert_eq!(r.len(), 2);
        assert!(boundary(&pi, &r).unwrap().is_zero());
    }

    #[test]
    fn generators_are_syzygies() {
        for pi in [x1_minus_2(), two_roots(), point2()] {
            let n = pi.nvars();
            for m in pi.b_truncation() {
                for i in var_indices(n) {
                    assert!(boundary(&pi, &make_rho(&pi, i, &m).unwrap()).unwrap().is_zero());
                    for j in var_indices(n).filter(|&j| j != i) {
                        let phi = make_phi(&pi, i, j, &m).unwrap();
                        assert!(boundary(&pi, &phi).unwrap().is_zero());
                    }
                }
            }
        }
        assert_eq!(make_phi(&point2(), 1, 1, &one(2)).unwrap_err(), Error::BadIndices(1, 1));
    }

    #[test]
    fn psi_lemma_identity() {
        for pi in [two_roots(), point2()] {
            let n = pi.nvars();
            for m in crate::monomial::ball(n, 5) {
                let seq = m.canonical_factorization();
                let lhs = LaurentPoly::term(m.clone(), Q.one());
                let rhs = pi.sigma(&lhs).unwrap().add(&boundary(&pi, &make_psi(&pi, &seq).unwrap()).unwrap());
                assert_eq!(lhs, rhs, "m = {m}");
            }
        }
        let pi = x1_minus_2();
        let psi1 = make_psi(&pi, &[1]).unwrap();
        assert_eq!(psi1.len(), 1);
    }

    #[test]
    fn two_factorizations_reduce_to_zero() {
        let pi = point2();
        let a = make_psi(&pi, &[1, 2, -1, 2]).unwrap();
        let b = make_psi(&pi, &[2, 2]).unwrap();
        let s = a.sub(&b);
        assert!(boundary(&pi, &s).unwrap().is_zero());
        let r = reduce_to_canonical(&pi, &s).unwrap();
        assert!(r.canonical.is_zero());
        assert!(verify_reduction(&pi, &s, &r).unwrap());
        let moves = sequence_moves(&pi, &[1, 2, -1, 2], &Q.one()).unwrap();
        let direct = a.sub(&make_psi(&pi, &[2, 2]).unwrap());
        assert_eq!(trail_sum(&pi, &moves).unwrap(), direct);
    }

    #[test]
    fn canonical_term_is_unchanged() {
        let pi = two_roots();
        let mut s = SyzygyElement::zero(1);
        s.add_term(&pi, &Q.one(), &one(1), 1, &Monomial::new(&[1])).unwrap();
        let r = reduce_to_canonical(&pi, &s).unwrap();
        assert_eq!(r.canonical, s);
        assert!(r.trail.is_empty());
    }

    #[test]
    fn kernel_vectors_reduce_to_zero() {
        for pi in [two_roots(), point2()] {
            let terms = term_space(&pi, 2, 1);
            let kernel = kernel_basis(&pi, &terms).unwrap();
            assert!(!kernel.is_empty());
            for s in kernel {
                assert!(boundary(&pi, &s).unwrap().is_zero());
                let r = reduce_to_canonical(&pi, &s).unwrap();
                assert!(r.canonical.is_zero(), "{:?}", r.canonical);
                assert!(verify_reduction(&pi, &s, &r).unwrap());
            }
        }
    }

    #[test]
    fn paths_step_inward_through_b() {
        // the diamond contains x1^-1*x2, where an outward first step would bounce forever
        let sys = crate::generate::generic_system(2, 2, Field::GF32003, 0);
        let r = crate::solver::run(&sys, &crate::solver::SolverConfig::default()).unwrap();
        let pi = r.projection.unwrap();
        let finder = CanonicalFinder::new(&pi);
        assert!(finder.b.contains(&Monomial::new(&[-1, 1])));
        for m in &finder.b {
            let seq = finder.path(m).unwrap();
            assert_eq!(seq.len() as u32, m.degree());
            let mut cur = m.clone();
            for j in seq {
                cur = cur.step(-j);
                assert!(pi.in_b(&cur));
            }
            assert!(cur.is_one());
        }
    }

    #[test]
    fn element_json() {
        let pi = x1_minus_2();
        let v = serde_json::to_value(make_rho(&pi, 1, &one(1)).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert!(v[0].get("slot").is_some());
    }
}
