//! The completion loop: prolongate the rules of the current degree, solve
//! for the new border rules, reduce the remaining prolongations and pending
//! inputs, and carve or drop until nothing changes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::choice::ChoiceFunction;
use crate::criteria::{self, CriterionReport};
use crate::error::{Error, Result};
use crate::linalg::{self, CoeffMatrix};
use crate::monomial::{var_indices, Monomial};
use crate::poly::LaurentPoly;
use crate::projection::{NormalFormCache, Projection, RewriteRule};
use crate::region::MonomialRegion;
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Loop degree at which the run is abandoned. `None` derives it from the input.
    pub max_degree: Option<u32>,
    pub choice: ChoiceFunction,
    /// Keep every coefficient matrix that was reduced.
    pub keep_matrices: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_degree: None,
            choice: ChoiceFunction::Macaulay,
            keep_matrices: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceEvent {
    Init,
    Step,
    Drop,
    Recheck,
}

/// One loop turn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub event: TraceEvent,
    pub k: u32,
    #[serde(rename = "C1")]
    pub c1: usize,
    /// Rows and columns of the system solved for the new border rules.
    pub matrix_shape: [usize; 2],
    pub rank: usize,
    pub added_to_b: Vec<Monomial>,
    pub removed_cones: Vec<Monomial>,
    /// Nonzero remainders after projecting the other prolongations and pending inputs.
    #[serde(rename = "C2")]
    pub c2: usize,
}

impl TraceRecord {
    fn new(event: TraceEvent, k: u32) -> Self {
        TraceRecord {
            event,
            k,
            c1: 0,
            matrix_shape: [0, 0],
            rank: 0,
            added_to_b: Vec::new(),
            removed_cones: Vec::new(),
            c2: 0,
        }
    }

    /// Row count of the largest system in this turn.
    pub fn max_rows(&self) -> usize {
        self.matrix_shape[0].max(self.c2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbortReason {
    DegreeCeiling { ceiling: u32 },
    CertificateFailure,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    BorderBasis {
        /// `B`, sorted increasingly.
        b: Vec<Monomial>,
        rules: Vec<RewriteRule>,
        degree: u32,
    },
    UnitIdeal,
    Aborted(AbortReason),
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    pub outcome: Outcome,
    pub certificate: Option<CriterionReport>,
    pub trace: Vec<TraceRecord>,
    /// The final projection, for border basis outcomes.
    pub projection: Option<Projection>,
    pub matrices: Vec<CoeffMatrix>,
    pub ceiling: u32,
}

impl SolverResult {
    pub fn is_border_basis(&self) -> bool {
        matches!(self.outcome, Outcome::BorderBasis { .. })
    }

    /// `|B|` and `|F|` of a border basis outcome.
    pub fn sizes(&self) -> Option<(usize, usize)> {
        match &self.outcome {
            Outcome::BorderBasis { b, rules, .. } => Some((b.len(), rules.len())),
            _ => None,
        }
    }

    /// Rows of the border rule systems, one entry per turn that solved one.
    pub fn row_counts(&self) -> Vec<usize> {
        self.trace
            .iter()
            .filter(|t| t.matrix_shape[0] > 0)
            .map(|t| t.matrix_shape[0])
            .collect()
    }

    /// Number of border rules by head degree, lowest degree first.
    pub fn rules_per_degree(&self) -> Vec<usize> {
        let Outcome::BorderBasis { rules, .. } = &self.outcome else {
            return Vec::new();
        };
        let mut by: BTreeMap<u32, usize> = BTreeMap::new();
        for r in rules {
            *by.entry(r.head.degree()).or_default() += 1;
        }
        by.into_values().collect()
    }

    pub fn trace_json_lines(&self) -> String {
        self.trace
            .iter()
            .map(|t| serde_json::to_string(t).expect("trace serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `4 · Π (max - min)` over the per-variable exponent ranges of the input.
pub fn default_ceiling(polys: &[LaurentPoly]) -> u32 {
    let n = polys.first().map_or(0, LaurentPoly::nvars);
    let mut prod: u64 = 1;
    for v in 0..n {
        let exps = polys.iter().flat_map(|p| p.support().map(move |m| m.exponents()[v]));
        let (lo, hi) = exps.fold((i32::MAX, i32::MIN), |(lo, hi), e| (lo.min(e), hi.max(e)));
        prod = prod.saturating_mul(((hi - lo).max(1)) as u64);
    }
    let top = polys.iter().filter_map(LaurentPoly::degree).max().unwrap_or(0) as u64;
    (4 * prod).max(top + 2).min(u32::MAX as u64) as u32
}

enum Status {
    Running,
    Unit,
    Done(u32),
}

/// The evolving `(k, B, F)` of the completion loop.
pub struct SolverState {
    pub k: u32,
    pub region: MonomialRegion,
    /// Rule heads and tails; every head has degree at most `k`.
    pub rules: BTreeMap<Monomial, LaurentPoly>,
    /// Inputs and every relation found along the way.
    pub generators: Vec<LaurentPoly>,
    /// Generators of degree above `k`, absorbed when the loop reaches them.
    pub pending: Vec<LaurentPoly>,
    pub trace: Vec<TraceRecord>,
    nvars: usize,
    field: Field,
    choice: ChoiceFunction,
    status: Status,
    keep_matrices: bool,
    matrices: Vec<CoeffMatrix>,
}

/// Echelon rows as `(pivot, monic row)` with graded, γ-preferred columns.
fn echelonize(
    nvars: usize,
    choice: ChoiceFunction,
    polys: &[LaurentPoly],
    keep: Option<&mut Vec<CoeffMatrix>>,
) -> Vec<(Monomial, LaurentPoly)> {
    let mut cols: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.support().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    choice.sort_preferred(&mut cols);
    let m = linalg::build_matrix(nvars, polys, cols).expect("columns cover supports");
    let e = linalg::echelon(&m);
    if let Some(store) = keep {
        store.push(m);
    }
    e.pivots.into_iter().zip(e.rows).collect()
}

fn tail_of(pivot: &Monomial, row: &LaurentPoly) -> LaurentPoly {
    let mut t = row.neg();
    t.remove_term(pivot);
    t
}

impl SolverState {
    /// Inter-reduces the minimal-degree inputs and carves one cone per pivot.
    pub fn initialize(inputs: &[LaurentPoly], choice: ChoiceFunction) -> Result<SolverState> {
        let first = inputs.iter().find(|p| !p.is_zero()).ok_or(Error::NoInput)?;
        let nvars = first.nvars();
        let field = first.field().expect("nonzero polynomial has a field");
        let generators: Vec<LaurentPoly> = inputs.iter().filter(|p| !p.is_zero()).cloned().collect();
        let mut state = SolverState {
            k: 0,
            region: MonomialRegion::full(nvars),
            rules: BTreeMap::new(),
            generators: generators.clone(),
            pending: Vec::new(),
            trace: Vec::new(),
            nvars,
            field,
            choice,
            status: Status::Running,
            keep_matrices: false,
            matrices: Vec::new(),
        };
        let mut slice_deg = generators.iter().filter_map(LaurentPoly::degree).min().unwrap_or(0);
        let mut slice: Vec<LaurentPoly> = generators
            .iter()
            .filter(|p| p.degree() == Some(slice_deg))
            .cloned()
            .collect();
        let mut record = TraceRecord::new(TraceEvent::Init, slice_deg);
        loop {
            let rows = echelonize(nvars, choice, &slice, None);
            record.matrix_shape = [slice.len(), rows.len()];
            record.rank = rows.len();
            let low = rows.iter().map(|(p, _)| p.degree()).min().unwrap_or(slice_deg);
            if low < slice_deg {
                // a combination lost degree: restart one level lower
                for (_, r) in &rows {
                    state.remember(r.clone());
                }
                slice_deg = low;
                slice = rows
                    .into_iter()
                    .filter(|(p, _)| p.degree() == low)
                    .map(|(_, r)| r)
                    .collect();
                continue;
            }
            state.k = slice_deg;
            record.k = slice_deg;
            if slice_deg == 0 {
                state.status = Status::Unit;
                state.trace.push(record);
                return Ok(state);
            }
            for (p, r) in &rows {
                state.region = state.region.remove_cone(p)?;
                state.rules.insert(p.clone(), tail_of(p, r));
                record.removed_cones.push(p.clone());
            }
            break;
        }
        state.pending = state
            .generators
            .iter()
            .filter(|g| g.degree().is_some_and(|d| d > state.k))
            .cloned()
            .collect();
        state.trace.push(record);
        Ok(state)
    }

    fn remember(&mut self, p: LaurentPoly) {
        if !self.generators.contains(&p) {
            self.generators.push(p);
        }
    }

    pub fn is_terminal(&self) -> bool {
        !matches!(self.status, Status::Running)
    }

    fn projection(&self, degree: u32) -> Projection {
        Projection::new(
            self.field,
            self.region.clone(),
            degree,
            self.rules.iter().map(|(h, t)| RewriteRule::new(h.clone(), t.clone())),
        )
    }

    fn rule_poly(&self, head: &Monomial) -> LaurentPoly {
        let mut p = self.rules[head].neg();
        p.add_term(head.clone(), &self.field.one());
        p
    }

    /// Substitutes every ruled monomial once; tails lie in `B`, so one pass suffices.
    fn reduce_known(&self, p: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (m, c) in p.terms() {
            match self.rules.get(m) {
                Some(t) => out.add_scaled(c, t),
                None => out.add_term(m.clone(), c),
            }
        }
        out
    }

    /// Adds rules for the pivots of `rows` (all of degree `k`), carving their cones.
    fn carve(&mut self, rows: &[(Monomial, LaurentPoly)], record: &mut TraceRecord) -> Result<()> {
        for (p, _) in rows {
            if p.is_one() {
                self.status = Status::Unit;
                return Ok(());
            }
            self.region = match self.region.remove_cone(p) {
                Ok(r) => r,
                Err(Error::WouldEmptyRegion) => {
                    self.status = Status::Unit;
                    return Ok(());
                }
                Err(e) => return Err(e),
            };
            record.removed_cones.push(p.clone());
        }
        let fresh: BTreeMap<Monomial, LaurentPoly> = rows.iter().map(|(p, r)| (p.clone(), tail_of(p, r))).collect();
        for tail in self.rules.values_mut() {
            if fresh.keys().any(|p| tail.contains(p)) {
                let mut out = LaurentPoly::zero(self.nvars);
                for (m, c) in tail.terms() {
                    match fresh.get(m) {
                        Some(t) => out.add_scaled(c, t),
                        None => out.add_term(m.clone(), c),
                    }
                }
                *tail = out;
            }
        }
        self.rules.extend(fresh);
        Ok(())
    }

    /// Restart at degree `l`: forget everything above it, then carve the degree-`l` relations.
    fn drop_to(&mut self, l: u32, rows: Vec<(Monomial, LaurentPoly)>, record: &mut TraceRecord) -> Result<()> {
        record.event = TraceEvent::Drop;
        for (_, r) in &rows {
            self.remember(r.clone());
        }
        if l == 0 {
            self.status = Status::Unit;
            return Ok(());
        }
        self.rules.retain(|h, _| h.degree() <= l);
        self.region = self.region.forget_above(l);
        self.k = l;
        self.pending = self
            .generators
            .iter()
            .filter(|g| g.degree().is_some_and(|d| d > l))
            .cloned()
            .collect();
        let low: Vec<_> = rows.into_iter().filter(|(p, _)| p.degree() == l).collect();
        self.carve(&low, record)
    }

    /// Echelonizes the relations found in this turn and carves or drops.
    fn settle(&mut self, relations: Vec<LaurentPoly>, record: &mut TraceRecord) -> Result<bool> {
        let relations: Vec<_> = relations.into_iter().filter(|p| !p.is_zero()).collect();
        record.c2 = relations.len();
        if relations.is_empty() {
            return Ok(false);
        }
        let keep = self.keep_matrices.then_some(&mut self.matrices);
        let rows = echelonize(self.nvars, self.choice, &relations, keep);
        let l = rows.iter().map(|(p, _)| p.degree()).min().expect("nonzero relations");
        if l < self.k + 1 {
            self.drop_to(l, rows, record)?;
        } else {
            for (_, r) in &rows {
                self.remember(r.clone());
            }
            self.carve(&rows, record)?;
            self.k += 1;
        }
        Ok(true)
    }

    /// One turn from degree `k` to `k + 1`.
    pub fn core_loop_step(&mut self) -> Result<()> {
        if self.is_terminal() {
            return Ok(());
        }
        let k = self.k;
        let mut record = TraceRecord::new(TraceEvent::Step, k);
        let fk: Vec<Monomial> = self.rules.keys().filter(|h| h.degree() == k).cloned().collect();

        // unruled border monomials of degree k + 1
        let b_k: Vec<Monomial> = self.region.truncate(k).into_iter().filter(|m| m.degree() == k).collect();
        let mut heads: Vec<Monomial> = b_k
            .iter()
            .flat_map(|b| {
                var_indices(self.nvars)
                    .filter(move |&j| b.is_outward(j))
                    .map(move |j| b.step(j))
            })
            .filter(|h| !self.region.contains(h) && !self.rules.contains_key(h))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        self.choice.sort_preferred(&mut heads);

        // one prolongation per new head; the rest are checked after the extension
        let head_set: BTreeSet<Monomial> = heads.iter().cloned().collect();
        let mut chosen: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        let mut others: Vec<(Monomial, i32)> = Vec::new();
        for h in &fk {
            for j in var_indices(self.nvars) {
                let t = h.step(j);
                let new_head = head_set.contains(&t);
                if new_head && !chosen.contains_key(&t) {
                    chosen.insert(t, self.reduce_known(&self.rule_poly(h).mul_var(j)));
                } else if new_head || self.region.contains(&t) || self.rules.contains_key(&t) {
                    others.push((h.clone(), j));
                }
            }
        }
        record.c1 = chosen.len() + others.len();

        let mut relations = Vec::new();
        if !heads.is_empty() {
            let rows: Vec<LaurentPoly> = chosen.into_values().collect();
            let mut tail_cols: Vec<Monomial> = rows
                .iter()
                .flat_map(|p| p.support().cloned())
                .filter(|m| !head_set.contains(m))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            self.choice.sort_preferred(&mut tail_cols);
            let mut cols = heads.clone();
            cols.extend(tail_cols);
            let m = linalg::build_matrix(self.nvars, &rows, cols).expect("columns cover supports");
            let e = linalg::echelon(&m);
            record.matrix_shape = [m.nrows(), m.ncols()];
            record.rank = e.rank;
            if self.keep_matrices {
                self.matrices.push(m);
            }
            let mut ruled = BTreeSet::new();
            for (c, (p, r)) in e.pivot_cols.iter().zip(e.pivots.into_iter().zip(e.rows)) {
                if *c < heads.len() {
                    ruled.insert(p.clone());
                    self.rules.insert(p.clone(), tail_of(&p, &r));
                } else {
                    relations.push(r);
                }
            }
            for h in heads.iter().filter(|h| !ruled.contains(h)) {
                self.region = self.region.add_monomial(h);
                record.added_to_b.push(h.clone());
            }
        }

        let proj = self.projection(k + 1);
        for (h, j) in others {
            let p = self.rule_poly(&h).mul_var(j);
            relations.push(proj.project(&p)?);
        }
        let (now, later): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pending)
            .into_iter()
            .partition(|g| g.degree().is_some_and(|d| d <= k + 1));
        self.pending = later;
        if !now.is_empty() {
            let mut nf = NormalFormCache::new(&proj);
            for g in now {
                relations.push(nf.sigma(&g)?);
            }
        }

        let changed = !record.added_to_b.is_empty() || !relations.iter().all(LaurentPoly::is_zero);
        if !self.settle(relations, &mut record)? {
            self.k += 1;
        }
        let finished = !changed && b_k.is_empty() && self.pending.is_empty();
        self.trace.push(record);
        if finished && !self.is_terminal() {
            self.final_check()?;
        }
        Ok(())
    }

    /// Full prolongation/commutation check once `B` has closed; residues
    /// re-enter the loop as relations.
    fn final_check(&mut self) -> Result<()> {
        let d = self.region.max_degree(self.k + 1).unwrap_or(0) + 2;
        let proj = self.projection(d);
        let mut residues = Vec::new();
        for c in criteria::prolongation_polys(&proj, d)
            .into_iter()
            .chain(criteria::commutation_polys(&proj, d))
        {
            let r = proj.project(&c.poly)?;
            if !r.is_zero() {
                residues.push(r);
            }
        }
        if residues.is_empty() {
            self.status = Status::Done(d);
            return Ok(());
        }
        let mut record = TraceRecord::new(TraceEvent::Recheck, self.k);
        self.settle(residues, &mut record)?;
        self.trace.push(record);
        Ok(())
    }
}

/// Runs the loop to a terminal state and certifies the result.
pub fn run(inputs: &[LaurentPoly], config: &SolverConfig) -> Result<SolverResult> {
    let ceiling = config.max_degree.unwrap_or_else(|| default_ceiling(inputs));
    let mut state = SolverState::initialize(inputs, config.choice)?;
    state.keep_matrices = config.keep_matrices;
    while !state.is_terminal() {
        if state.k >= ceiling {
            return Ok(SolverResult {
                outcome: Outcome::Aborted(AbortReason::DegreeCeiling { ceiling }),
                certificate: None,
                trace: state.trace,
                projection: None,
                matrices: state.matrices,
                ceiling,
            });
        }
        state.core_loop_step()?;
    }
    let d = match state.status {
        Status::Unit => {
            return Ok(SolverResult {
                outcome: Outcome::UnitIdeal,
                certificate: None,
                trace: state.trace,
                projection: None,
                matrices: state.matrices,
                ceiling,
            })
        }
        Status::Done(d) => d,
        Status::Running => unreachable!("loop exits on terminal states"),
    };
    let proj = state.projection(d);
    let certificate = criteria::certify(&proj, d)?;
    let outcome = if certificate.ok() {
        Outcome::BorderBasis {
            b: proj.b_truncation().into_iter().collect(),
            rules: proj.rewriting_family(),
            degree: d,
        }
    } else {
        Outcome::Aborted(AbortReason::CertificateFailure)
    };
    Ok(SolverResult {
        outcome,
        certificate: Some(certificate),
        trace: state.trace,
        projection: Some(proj),
        matrices: state.matrices,
        ceiling,
    })
}
