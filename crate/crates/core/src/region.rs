//! Monomial regions: finite unions of cone differences, and the finite set
//! operations (prolongation, border, connectivity) on their truncations.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{var_indices, Monomial};

/// One component `((apex)) \ ((c₁)) \ … \ ((c_k))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub apex: Monomial,
    pub carved: Vec<Monomial>,
}

impl Component {
    pub fn contains(&self, m: &Monomial) -> bool {
        m.in_cone(&self.apex) && !self.carved.iter().any(|c| m.in_cone(c))
    }

    /// Whether the component denotes the single monomial `apex`.
    pub fn is_point(&self) -> bool {
        var_indices(self.apex.nvars())
            .filter(|&i| self.apex.is_outward(i))
            .all(|i| {
                let next = self.apex.step(i);
                self.carved.iter().any(|c| next.in_cone(c))
            })
    }
}

/// A possibly infinite monomial set `B`, represented as a union of cone differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonomialRegion {
    components: Vec<Component>,
}

impl MonomialRegion {
    /// `((1))`, i.e. every monomial.
    pub fn full(n: usize) -> Self {
        MonomialRegion {
            components: vec![Component {
                apex: Monomial::one(n),
                carved: Vec::new(),
            }],
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.components.iter().any(|c| c.contains(m))
    }

    /// `B \ ((m))`. Components entirely inside `((m))` disappear; others that
    /// meet the cone get it as one more carved cone.
    pub fn remove_cone(&self, m: &Monomial) -> Result<MonomialRegion> {
        if m.is_one() {
            return Err(Error::WouldEmptyRegion);
        }
        let mut out = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            if comp.apex.in_cone(m) {
                continue;
            }
            let mut comp = comp.clone();
            let redundant = comp.carved.iter().any(|c| m.in_cone(c));
            if comp.apex.cones_meet(m) && !redundant {
                comp.carved.retain(|c| !c.in_cone(m));
                comp.carved.push(m.clone());
            }
            out.push(comp);
        }
        Ok(MonomialRegion { components: out })
    }

    /// `B ∪ {m}`, stored as the degenerate component `((m))` minus all of its
    /// outward neighbours.
    pub fn add_monomial(&self, m: &Monomial) -> MonomialRegion {
        if self.contains(m) {
            return self.clone();
        }
        let carved = var_indices(m.nvars())
            .filter(|&i| m.is_outward(i))
            .map(|i| m.step(i))
            .collect();
        let mut out = self.clone();
        out.components.push(Component {
            apex: m.clone(),
            carved,
        });
        out
    }

    /// Drops carved cones with apex degree above `d` and point components
    /// whose apex lies above `d`. The truncation to degree `d` is unchanged.
    pub fn forget_above(&self, d: u32) -> MonomialRegion {
        let components = self
            .components
            .iter()
            .filter(|c| c.apex.degree() <= d)
            .map(|c| {
                if c.is_point() {
                    return c.clone();
                }
                Component {
                    apex: c.apex.clone(),
                    carved: c.carved.iter().filter(|m| m.degree() <= d).cloned().collect(),
                }
            })
            .collect();
        MonomialRegion { components }
    }

    /// `{ m ∈ B : δ(m) ≤ d }`, by outward breadth-first search from each apex.
    pub fn truncate(&self, d: u32) -> BTreeSet<Monomial> {
        let mut out = BTreeSet::new();
        for comp in &self.components {
            if comp.apex.degree() > d || !comp.contains(&comp.apex) {
                continue;
            }
            let mut queue = VecDeque::from([comp.apex.clone()]);
            let mut seen = BTreeSet::from([comp.apex.clone()]);
            while let Some(m) = queue.pop_front() {
                if m.degree() < d {
                    for i in var_indices(m.nvars()) {
                        if !m.is_outward(i) {
                            continue;
                        }
                        let next = m.step(i);
                        if next.in_cone(&comp.apex) && comp.contains(&next) && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
                out.insert(m);
            }
        }
        out
    }

    /// The top degree of `B` when `B` is finite and lies below `ceiling`.
    pub fn max_degree(&self, ceiling: u32) -> Option<u32> {
        let t = self.truncate(ceiling);
        let top = t.iter().map(Monomial::degree).max()?;
        (top < ceiling).then_some(top)
    }
}

/// `S^× = S ∪ x₁S ∪ … ∪ xₙ⁻¹S`.
pub fn prolong(s: &BTreeSet<Monomial>) -> BTreeSet<Monomial> {
    let mut out = s.clone();
    for m in s {
        for i in var_indices(m.nvars()) {
            out.insert(m.step(i));
        }
    }
    out
}

/// `∂S = S^× \ S`.
pub fn border(s: &BTreeSet<Monomial>) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for m in s {
        for i in var_indices(m.nvars()) {
            let b = m.step(i);
            if !s.contains(&b) {
                out.insert(b);
            }
        }
    }
    out
}

/// Connected to 1: `1 ∈ S` and each other member is `x_i m'` with `m' ∈ S`
/// of strictly smaller degree.
pub fn is_connected_to_one(s: &BTreeSet<Monomial>) -> bool {
    let Some(first) = s.iter().next() else {
        return false;
    };
    if !s.contains(&Monomial::one(first.nvars())) {
        return false;
    }
    s.iter().all(|m| {
        m.is_one()
            || var_indices(m.nvars()).any(|i| {
                let prev = m.step(i);
                prev.degree() < m.degree() && s.contains(&prev)
            })
    })
}

/// `δ_S(m)`: the least `k` with `m ∈ S^[k]`. Since each prolongation moves one
/// unit step, this is the L1 distance from `m` to `S`.
pub fn delta_b(s: &BTreeSet<Monomial>, m: &Monomial, bound: u32) -> Result<u32> {
    let dist = s.iter().map(|b| m.div(b).degree()).min();
    match dist {
        Some(k) if k <= bound => Ok(k),
        _ => Err(Error::IterationBoundExceeded(m.clone(), bound)),
    }
}
