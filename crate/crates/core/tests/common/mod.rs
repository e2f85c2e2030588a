#![allow(dead_code)]

use std::cmp::Ordering;
use std::path::PathBuf;

use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quip_core::defaults::{DefaultRule, Degree, KnowledgeBase, StrictRule};
use quip_core::kbio::{parse_kb, KbDocument};
use quip_core::logic::{AtomUniverse, Formula, Interpretation, ModelSet};
use quip_core::orders::OrderMethod;

pub fn kb_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../kbs")
        .join(format!("{name}.kb"))
}

pub fn load(name: &str) -> KbDocument {
    let text = std::fs::read_to_string(kb_path(name)).unwrap();
    parse_kb(&text).unwrap()
}

/// Numbered interpretations over `(k, t, c, r)`: `j - 1` written in binary
/// with `k` as the most significant digit, where digit 0 means true.
pub fn omega(j: u32) -> Interpretation {
    assert!((1..=16).contains(&j));
    let digits = j - 1;
    let mut index = 0;
    for pos in 0..4 {
        let digit = (digits >> (3 - pos)) & 1;
        if digit == 0 {
            index |= 1 << pos;
        }
    }
    Interpretation(index)
}

pub fn omegas(js: &[u32]) -> ModelSet {
    ModelSet::from_interpretations(4, js.iter().map(|&j| omega(j)))
}

pub fn indices(set: &ModelSet) -> Vec<u32> {
    set.iter().map(|w| w.0).collect()
}

pub fn rendered(doc: &KbDocument, set: &ModelSet) -> Vec<String> {
    set.render(doc.kb.universe())
}

/// Brute-force reference semantics. Only `Formula::eval` and the raw rules
/// of the kb are used.
pub struct Oracle {
    pub n: usize,
    pub strict: Vec<Formula>,
    pub defaults: Vec<(Formula, Formula)>,
    pub ranks: Option<Vec<usize>>,
}

impl Oracle {
    pub fn new(kb: &KnowledgeBase) -> Self {
        Self::from_rules(
            kb.atom_count(),
            kb.strict().iter().map(|r| r.formula.clone()).collect(),
            kb.defaults()
                .iter()
                .map(|d| (d.antecedent.clone(), d.consequent.clone()))
                .collect(),
        )
    }

    pub fn from_rules(n: usize, strict: Vec<Formula>, defaults: Vec<(Formula, Formula)>) -> Self {
        let mut oracle = Oracle {
            n,
            strict,
            defaults,
            ranks: None,
        };
        oracle.ranks = oracle.z_ranks();
        oracle
    }

    pub fn worlds(&self) -> impl Iterator<Item = Interpretation> {
        (0..1u32 << self.n).map(Interpretation)
    }

    pub fn satisfies_strict(&self, w: Interpretation) -> bool {
        self.strict.iter().all(|f| f.eval(w))
    }

    pub fn violates(&self, i: usize, w: Interpretation) -> bool {
        let (a, c) = &self.defaults[i];
        a.eval(w) && !c.eval(w)
    }

    /// Some model of the strict rules verifies default `i` and violates none of `among`.
    pub fn tolerated(&self, i: usize, among: &[usize]) -> bool {
        let (a, c) = &self.defaults[i];
        self.worlds().any(|w| {
            self.satisfies_strict(w)
                && a.eval(w)
                && c.eval(w)
                && among.iter().all(|&j| !self.violates(j, w))
        })
    }

    pub fn z_ranks(&self) -> Option<Vec<usize>> {
        let mut ranks = vec![usize::MAX; self.defaults.len()];
        let mut rest: Vec<usize> = (0..self.defaults.len()).collect();
        let mut rank = 0;
        while !rest.is_empty() {
            let now: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&i| self.tolerated(i, &rest))
                .collect();
            if now.is_empty() {
                return None;
            }
            for &i in &now {
                ranks[i] = rank;
            }
            rest.retain(|i| !now.contains(i));
            rank += 1;
        }
        Some(ranks)
    }

    pub fn stratum_count(&self) -> usize {
        self.ranks
            .as_ref()
            .unwrap()
            .iter()
            .map(|r| r + 1)
            .max()
            .unwrap_or(0)
    }

    /// One minus the largest weight among the violated formulas, with
    /// strict rules weighing 1 and stratum `r` weighing `(r + 1) / L`.
    pub fn pi(&self, w: Interpretation) -> Degree {
        let scale = self.stratum_count() as u64 + 1;
        let one = Ratio::from_integer(1);
        let mut worst = Ratio::from_integer(0);
        if !self.satisfies_strict(w) {
            worst = one;
        }
        let ranks = self.ranks.as_ref().unwrap();
        for (i, &rank) in ranks.iter().enumerate() {
            if self.violates(i, w) {
                worst = worst.max(Ratio::new(rank as u64 + 1, scale));
            }
        }
        one - worst
    }

    pub fn possibility(&self, phi: &Formula) -> Degree {
        self.worlds()
            .filter(|&w| phi.eval(w))
            .map(|w| self.pi(w))
            .max()
            .unwrap_or(Ratio::from_integer(0))
    }

    pub fn necessity(&self, phi: &Formula) -> Degree {
        Ratio::from_integer(1) - self.possibility(&phi.clone().not())
    }

    /// Violation counts per default stratum, highest priority first.
    pub fn lex_vector(&self, w: Interpretation) -> Vec<u32> {
        let ranks = self.ranks.as_ref().unwrap();
        let strata = self.stratum_count();
        let mut counts = vec![0; strata];
        for i in 0..self.defaults.len() {
            if self.violates(i, w) {
                counts[strata - 1 - ranks[i]] += 1;
            }
        }
        counts
    }

    /// Strict preference between two models of the strict rules.
    pub fn better(&self, method: OrderMethod, w: Interpretation, v: Interpretation) -> bool {
        match method {
            OrderMethod::BestOut => self.pi(w) > self.pi(v),
            OrderMethod::Lex => self.lex_vector(w).cmp(&self.lex_vector(v)) == Ordering::Less,
        }
    }

    pub fn strict_models_of(&self, phi: &Formula) -> Vec<Interpretation> {
        self.worlds()
            .filter(|&w| self.satisfies_strict(w) && phi.eval(w))
            .collect()
    }

    /// Undominated models of `phi` among the models of the strict rules.
    pub fn minimal(&self, method: OrderMethod, phi: &Formula) -> Vec<u32> {
        let candidates = self.strict_models_of(phi);
        candidates
            .iter()
            .filter(|&&w| !candidates.iter().any(|&v| self.better(method, v, w)))
            .map(|w| w.0)
            .collect()
    }

    pub fn nm_entails(&self, method: OrderMethod, phi: &Formula, psi: &Formula) -> bool {
        let min = self.minimal(method, phi);
        !min.is_empty() && min.iter().all(|&w| psi.eval(Interpretation(w)))
    }

    /// `N(α | β)` with min-based conditioning on `β`.
    pub fn revealing_level(&self, alpha: &Formula, beta: &Formula) -> Option<Degree> {
        let best = self.possibility(beta);
        if best == Ratio::from_integer(0) {
            return None;
        }
        let conditioned = |w: Interpretation| -> Degree {
            if !beta.eval(w) {
                Ratio::from_integer(0)
            } else if self.pi(w) == best {
                Ratio::from_integer(1)
            } else {
                self.pi(w)
            }
        };
        let worst = self
            .worlds()
            .filter(|&w| !alpha.eval(w))
            .map(conditioned)
            .max()
            .unwrap_or(Ratio::from_integer(0));
        Some(Ratio::from_integer(1) - worst)
    }

    pub fn surprise_level(&self, alpha: &Formula, beta: &Formula) -> Degree {
        let whole = alpha.clone().and(beta.clone());
        if self.necessity(alpha) == self.necessity(&whole) {
            Ratio::from_integer(0)
        } else {
            Ratio::from_integer(1) - self.possibility(&whole)
        }
    }
}

pub fn atom_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn random_formula(rng: &mut ChaCha8Rng, n: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let atom = rng.gen_range(0..n);
        return Formula::literal(atom, rng.gen_bool(0.6));
    }
    let a = random_formula(rng, n, depth - 1);
    match rng.gen_range(0..4) {
        0 => a.not(),
        1 => a.and(random_formula(rng, n, depth - 1)),
        2 => a.or(random_formula(rng, n, depth - 1)),
        _ => a.implies(random_formula(rng, n, depth - 1)),
    }
}

/// A valid kb with 2 to `max_atoms` atoms, up to `max_defaults` defaults and
/// up to `max_strict` strict rules. Invalid draws are discarded.
pub fn random_kb(
    rng: &mut ChaCha8Rng,
    max_atoms: usize,
    max_defaults: usize,
    max_strict: usize,
) -> KnowledgeBase {
    loop {
        let n = rng.gen_range(2..=max_atoms);
        let universe = AtomUniverse::from_names(atom_names(n)).unwrap();
        let strict: Vec<StrictRule> = (0..rng.gen_range(0..=max_strict))
            .map(|_| StrictRule::new(random_formula(rng, n, 2)))
            .collect();
        let defaults: Vec<DefaultRule> = (0..rng.gen_range(0..=max_defaults))
            .map(|_| DefaultRule::new(random_formula(rng, n, 1), random_formula(rng, n, 1)))
            .collect();
        if let Ok(kb) = KnowledgeBase::new(universe, strict, defaults) {
            return kb;
        }
    }
}

pub fn formula_strategy(n: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (0..n).prop_map(Formula::atom),
        Just(Formula::True),
        Just(Formula::False),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.iff(b)),
        ]
    })
}
