//! Randomised conformance check of the induced revision operator against the
//! six Katsuno–Mendelzon postulates.
//!
//! Each trial draws two random subsets of `Mod(P)` and realises them as
//! canonical DNF formulas `phi` and `psi`; every revision is then computed
//! from the formulas, never from the sampled sets directly. `K` is the
//! conjunction of the material counterparts of the defaults, read inside
//! `Mod(P)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::defaults::KnowledgeBase;
use crate::error::{Error, Result};
use crate::logic::{Formula, ModelSet};
use crate::orders::{OrderMethod, Reviser};

/// Largest universe the checker accepts.
pub const MAX_KM_ATOMS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Postulate {
    Km1,
    Km2,
    Km3,
    Km4,
    Km5,
    Km6,
}

impl Postulate {
    pub const ALL: [Postulate; 6] = [
        Postulate::Km1,
        Postulate::Km2,
        Postulate::Km3,
        Postulate::Km4,
        Postulate::Km5,
        Postulate::Km6,
    ];
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as usize + 1;
        write!(f, "KM{n}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmViolation {
    pub postulate: Postulate,
    pub trial: usize,
    pub phi: String,
    pub psi: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmReport {
    pub method: OrderMethod,
    pub trials: usize,
    pub seed: u64,
    /// How many trials actually exercised each postulate (its premise held).
    pub exercised: [usize; 6],
    pub violations: Vec<KmViolation>,
}

impl KmReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, postulate: Postulate) -> usize {
        self.violations
            .iter()
            .filter(|v| v.postulate == postulate)
            .count()
    }
}

/// Canonical DNF: one full conjunction of literals per member.
pub fn dnf_of(models: &ModelSet, atom_count: usize) -> Formula {
    Formula::disjunction(models.iter().map(|w| Formula::describing(w, atom_count)))
}

/// A syntactically different formula with the same models: terms in reverse
/// order, literals in reverse order, under a double negation.
fn scrambled_dnf(models: &ModelSet, atom_count: usize) -> Formula {
    let terms: Vec<Formula> = models
        .to_vec()
        .into_iter()
        .rev()
        .map(|w| {
            Formula::conjunction(
                (0..atom_count)
                    .rev()
                    .map(|k| Formula::literal(k, w.holds(k))),
            )
        })
        .collect();
    Formula::disjunction(terms).not().not()
}

fn random_subset(rng: &mut ChaCha8Rng, base: &ModelSet, atom_count: usize) -> ModelSet {
    ModelSet::from_interpretations(atom_count, base.iter().filter(|_| rng.gen_bool(0.5)))
}

fn render_set(kb: &KnowledgeBase, set: &ModelSet) -> String {
    format!("{{{}}}", set.render(kb.universe()).join(", "))
}

pub fn check_km_postulates(
    kb: &KnowledgeBase,
    method: OrderMethod,
    trials: usize,
    seed: u64,
) -> Result<KmReport> {
    let n = kb.atom_count();
    if n > MAX_KM_ATOMS {
        return Err(Error::UniverseTooLarge(n));
    }
    let reviser = Reviser::new(kb, method)?;
    let materials = Formula::conjunction(kb.defaults().iter().map(|d| d.material()));
    let k_models = kb.constrained_models(&materials)?;
    let strict = kb.strict_models();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = KmReport {
        method,
        trials,
        seed,
        exercised: [0; 6],
        violations: Vec::new(),
    };

    for trial in 0..trials {
        let phi_set = random_subset(&mut rng, strict, n);
        let psi_set = random_subset(&mut rng, strict, n);
        let phi = dnf_of(&phi_set, n);
        let psi = dnf_of(&psi_set, n);
        let phi_models = kb.models(&phi)?;
        let psi_models = kb.models(&psi)?;
        let revised = reviser.min_models(&phi)?;
        let revised_conj = reviser.min_models(&phi.clone().and(psi.clone()))?;
        let revised_and_psi = revised.intersection(&psi_models);

        let mut fail = |postulate: Postulate, detail: String| {
            report.violations.push(KmViolation {
                postulate,
                trial,
                phi: phi.render(kb.universe()),
                psi: psi.render(kb.universe()),
                detail,
            });
        };

        // KM1: K∘φ ⊨ φ
        report.exercised[0] += 1;
        if !revised.is_subset(&phi_models) {
            fail(
                Postulate::Km1,
                format!("K∘φ = {}", render_set(kb, &revised)),
            );
        }

        // KM2: K∧φ satisfiable ⇒ K∘φ ≡ K∧φ
        let expansion = k_models.intersection(&phi_models);
        if !expansion.is_empty() {
            report.exercised[1] += 1;
            if revised != expansion {
                fail(
                    Postulate::Km2,
                    format!(
                        "K∘φ = {} but K∧φ = {}",
                        render_set(kb, &revised),
                        render_set(kb, &expansion)
                    ),
                );
            }
        }

        // KM3: φ satisfiable (under P) ⇒ K∘φ satisfiable
        if !phi_models.intersection(strict).is_empty() {
            report.exercised[2] += 1;
            if revised.is_empty() {
                fail(Postulate::Km3, "K∘φ is empty".into());
            }
        }

        // KM4: syntax independence
        report.exercised[3] += 1;
        let revised_alt = reviser.min_models(&scrambled_dnf(&phi_set, n))?;
        if revised_alt != revised {
            fail(
                Postulate::Km4,
                format!(
                    "equivalent rewriting revises to {} instead of {}",
                    render_set(kb, &revised_alt),
                    render_set(kb, &revised)
                ),
            );
        }

        // KM5: (K∘φ)∧ψ ⊨ K∘(φ∧ψ)
        report.exercised[4] += 1;
        if !revised_and_psi.is_subset(&revised_conj) {
            fail(
                Postulate::Km5,
                format!(
                    "(K∘φ)∧ψ = {} ⊄ K∘(φ∧ψ) = {}",
                    render_set(kb, &revised_and_psi),
                    render_set(kb, &revised_conj)
                ),
            );
        }

        // KM6: (K∘φ)∧ψ satisfiable ⇒ K∘(φ∧ψ) ⊨ (K∘φ)∧ψ
        if !revised_and_psi.is_empty() {
            report.exercised[5] += 1;
            if !revised_conj.is_subset(&revised_and_psi) {
                fail(
                    Postulate::Km6,
                    format!(
                        "K∘(φ∧ψ) = {} ⊄ (K∘φ)∧ψ = {}",
                        render_set(kb, &revised_conj),
                        render_set(kb, &revised_and_psi)
                    ),
                );
            }
        }
    }
    Ok(report)
}
