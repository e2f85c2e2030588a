//! Best-out and lexicographic pre-orders over interpretations and the
//! revision operator they induce, with the strict rules as integrity
//! constraints.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::defaults::{build_distribution, KnowledgeBase};
use crate::error::{Error, Result};
use crate::logic::{Formula, Interpretation, ModelSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderMethod {
    BestOut,
    Lex,
}

impl OrderMethod {
    pub const ALL: [OrderMethod; 2] = [OrderMethod::BestOut, OrderMethod::Lex];

    pub fn short_name(self) -> &'static str {
        match self {
            OrderMethod::BestOut => "bo",
            OrderMethod::Lex => "lex",
        }
    }
}

impl fmt::Display for OrderMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for OrderMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bo" | "best-out" | "bestout" => Ok(OrderMethod::BestOut),
            "lex" | "lexicographic" => Ok(OrderMethod::Lex),
            other => Err(Error::InvalidInput(format!(
                "unknown ordering `{other}` (expected `bo` or `lex`)"
            ))),
        }
    }
}

/// Violation counts per stratum, strict stratum first, then default strata
/// from highest to lowest priority. Smaller is more plausible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexLabel(pub Vec<u32>);

impl fmt::Display for LexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

const EXCLUDED: u32 = u32::MAX;

/// Total pre-order on `Mod(P)`. Each model of `P` carries a class number
/// (0 = most plausible); counter-models of `P` are excluded altogether.
#[derive(Debug, Clone)]
pub struct PlausibilityOrder {
    method: OrderMethod,
    atom_count: usize,
    class: Vec<u32>,
    class_count: u32,
    labels: Vec<LexLabel>,
}

pub fn build_order(kb: &KnowledgeBase, method: OrderMethod) -> Result<PlausibilityOrder> {
    match method {
        OrderMethod::BestOut => best_out_order(kb),
        OrderMethod::Lex => lex_order(kb),
    }
}

fn best_out_order(kb: &KnowledgeBase) -> Result<PlausibilityOrder> {
    let dist = build_distribution(kb)?;
    let top = dist.top_level();
    let mut class = vec![EXCLUDED; kb.universe().interpretation_count()];
    for w in kb.strict_models().iter() {
        class[w.index()] = (top - dist.level(w)) as u32;
    }
    Ok(PlausibilityOrder::compact(
        OrderMethod::BestOut,
        kb.atom_count(),
        class,
        Vec::new(),
    ))
}

fn lex_order(kb: &KnowledgeBase) -> Result<PlausibilityOrder> {
    let strict_violations = kb
        .strict()
        .iter()
        .map(|r| kb.models(&r.formula.clone().not()))
        .collect::<Result<Vec<_>>>()?;
    let default_violations = kb
        .defaults()
        .iter()
        .map(|d| kb.models(&d.violation()))
        .collect::<Result<Vec<_>>>()?;
    let strata: Vec<&[usize]> = kb.stratification().by_priority().map(|(_, s)| s).collect();

    let label_of = |w: Interpretation| -> LexLabel {
        let mut counts = Vec::with_capacity(strata.len() + 1);
        counts.push(strict_violations.iter().filter(|v| v.contains(w)).count() as u32);
        for stratum in &strata {
            counts.push(
                stratum
                    .iter()
                    .filter(|&&i| default_violations[i].contains(w))
                    .count() as u32,
            );
        }
        LexLabel(counts)
    };

    // Two passes keep memory at one u32 per interpretation.
    let mut distinct: BTreeMap<LexLabel, u32> = BTreeMap::new();
    for w in kb.strict_models().iter() {
        distinct.entry(label_of(w)).or_insert(0);
    }
    for (i, slot) in distinct.values_mut().enumerate() {
        *slot = i as u32;
    }
    let mut class = vec![EXCLUDED; kb.universe().interpretation_count()];
    for w in kb.strict_models().iter() {
        class[w.index()] = distinct[&label_of(w)];
    }
    let labels = distinct.into_keys().collect();
    Ok(PlausibilityOrder::compact(
        OrderMethod::Lex,
        kb.atom_count(),
        class,
        labels,
    ))
}

impl PlausibilityOrder {
    /// Renumber classes densely from 0, preserving order.
    fn compact(
        method: OrderMethod,
        atom_count: usize,
        mut class: Vec<u32>,
        labels: Vec<LexLabel>,
    ) -> Self {
        let mut used: Vec<u32> = class.iter().copied().filter(|&c| c != EXCLUDED).collect();
        used.sort_unstable();
        used.dedup();
        let remap: BTreeMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        for c in class.iter_mut().filter(|c| **c != EXCLUDED) {
            *c = remap[c];
        }
        let labels = if labels.is_empty() {
            labels
        } else {
            used.iter().map(|&c| labels[c as usize].clone()).collect()
        };
        PlausibilityOrder {
            method,
            atom_count,
            class,
            class_count: used.len() as u32,
            labels,
        }
    }

    pub fn method(&self) -> OrderMethod {
        self.method
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    /// Plausibility class of `w` (0 = best), or `None` for counter-models of P.
    pub fn class_of(&self, w: Interpretation) -> Option<u32> {
        match self.class[w.index()] {
            EXCLUDED => None,
            c => Some(c),
        }
    }

    pub fn is_excluded(&self, w: Interpretation) -> bool {
        self.class_of(w).is_none()
    }

    /// `w ≺ v`: both are models of P and `w` is strictly more plausible.
    pub fn strictly_prefers(&self, w: Interpretation, v: Interpretation) -> bool {
        matches!((self.class_of(w), self.class_of(v)), (Some(a), Some(b)) if a < b)
    }

    pub fn class_count(&self) -> usize {
        self.class_count as usize
    }

    /// Equivalence classes from most to least plausible.
    pub fn classes(&self) -> Vec<ModelSet> {
        let mut out = vec![ModelSet::empty(self.atom_count); self.class_count as usize];
        for (i, &c) in self.class.iter().enumerate() {
            if c != EXCLUDED {
                out[c as usize].insert(Interpretation(i as u32));
            }
        }
        out
    }

    /// Lexicographic label of each class (empty for best-out orders).
    pub fn labels(&self) -> &[LexLabel] {
        &self.labels
    }

    /// Interpretations that are not excluded, i.e. `Mod(P)`.
    pub fn admissible(&self) -> ModelSet {
        ModelSet::from_interpretations(
            self.atom_count,
            self.class
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != EXCLUDED)
                .map(|(i, _)| Interpretation(i as u32)),
        )
    }

    /// The ⪯-minimal members of `candidates ∩ Mod(P)`.
    pub fn min_of(&self, candidates: &ModelSet) -> ModelSet {
        let best = candidates.iter().filter_map(|w| self.class_of(w)).min();
        let mut out = ModelSet::empty(self.atom_count);
        if let Some(best) = best {
            for w in candidates.iter() {
                if self.class[w.index()] == best {
                    out.insert(w);
                }
            }
        }
        out
    }
}

/// `min(Mod(P ∪ {phi}), ⪯)`; empty exactly when `P ∪ {phi}` is unsatisfiable.
pub fn min_models(
    order: &PlausibilityOrder,
    kb: &KnowledgeBase,
    phi: &Formula,
) -> Result<ModelSet> {
    Ok(order.min_of(&kb.models(phi)?))
}

/// A knowledge base paired with one of its plausibility orders: the listener
/// `(K, ∘)`.
#[derive(Debug, Clone)]
pub struct Reviser<'kb> {
    kb: &'kb KnowledgeBase,
    order: PlausibilityOrder,
}

impl<'kb> Reviser<'kb> {
    pub fn new(kb: &'kb KnowledgeBase, method: OrderMethod) -> Result<Self> {
        Ok(Reviser {
            kb,
            order: build_order(kb, method)?,
        })
    }

    pub fn kb(&self) -> &'kb KnowledgeBase {
        self.kb
    }

    pub fn order(&self) -> &PlausibilityOrder {
        &self.order
    }

    pub fn min_models(&self, phi: &Formula) -> Result<ModelSet> {
        min_models(&self.order, self.kb, phi)
    }

    /// `Mod(K ∘ phi)`; fails with [`Error::EmptyRevision`] when `phi`
    /// contradicts the strict rules.
    pub fn revise(&self, phi: &Formula) -> Result<ModelSet> {
        let result = self.min_models(phi)?;
        if result.is_empty() {
            return Err(Error::EmptyRevision);
        }
        Ok(result)
    }

    /// `phi |~ psi`: `P ∪ {phi}` is consistent and every preferred model of
    /// `phi` satisfies `psi`.
    pub fn entails(&self, phi: &Formula, psi: &Formula) -> Result<bool> {
        let preferred = self.min_models(phi)?;
        Ok(!preferred.is_empty() && preferred.is_subset(&self.kb.models(psi)?))
    }
}

pub fn revise(kb: &KnowledgeBase, phi: &Formula, method: OrderMethod) -> Result<ModelSet> {
    Reviser::new(kb, method)?.revise(phi)
}

pub fn nm_entails(
    kb: &KnowledgeBase,
    phi: &Formula,
    psi: &Formula,
    method: OrderMethod,
) -> Result<bool> {
    Reviser::new(kb, method)?.entails(phi, psi)
}
