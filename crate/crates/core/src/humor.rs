//! Surprising, revealing and incongruous statements.
//!
//! A statement `(α, β)` is told to a listener whose knowledge is a
//! [`KnowledgeBase`] and whose revision operator comes from one of the
//! plausibility orders. The context `α` sets up expectations `K∘α`; the
//! punchline `β` surprises when `K∘(α∧β)` shares no model with them and
//! reveals when `β |~ α`.

use std::fmt;

use crate::defaults::{build_distribution, Degree, KnowledgeBase, RankedDistribution};
use crate::error::{Error, Result};
use crate::logic::{entails, equivalent, Formula, ModelSet};
use crate::orders::{OrderMethod, Reviser};

/// `(context, punchline)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub context: Formula,
    pub punchline: Formula,
}

impl Statement {
    pub fn new(context: Formula, punchline: Formula) -> Self {
        Statement { context, punchline }
    }

    /// `α ∧ β`.
    pub fn whole(&self) -> Formula {
        self.context.clone().and(self.punchline.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormKind {
    Strict,
    Default,
}

impl NormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::Strict => "strict",
            NormKind::Default => "default",
        }
    }
}

/// Position of a norm-marked rule in `P` or `Δ` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormRef {
    pub kind: NormKind,
    pub index: usize,
}

impl NormRef {
    pub fn strict(index: usize) -> Self {
        NormRef {
            kind: NormKind::Strict,
            index,
        }
    }

    pub fn default_rule(index: usize) -> Self {
        NormRef {
            kind: NormKind::Default,
            index,
        }
    }
}

impl fmt::Display for NormRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.kind.as_str(), self.index)
    }
}

/// Every norm-marked rule of `kb`, strict rules first.
pub fn norms(kb: &KnowledgeBase) -> Vec<NormRef> {
    let strict = kb
        .strict()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_norm)
        .map(|(i, _)| NormRef::strict(i));
    let defaults = kb
        .defaults()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_norm)
        .map(|(i, _)| NormRef::default_rule(i));
    strict.chain(defaults).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurpriseVerdict {
    /// False when `P ∪ {α}` is inconsistent: no expectation can be formed.
    pub applicable: bool,
    pub surprising: bool,
    /// `Mod(K∘α)`.
    pub context_models: ModelSet,
    /// `Mod(K∘(α∧β))`, possibly empty for nonsensical punchlines.
    pub joint_models: ModelSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealVerdict {
    pub revealing: bool,
    /// `Mod(K∘β)`.
    pub punchline_models: ModelSet,
}

fn surprise_with(reviser: &Reviser<'_>, st: &Statement) -> Result<SurpriseVerdict> {
    let context_models = reviser.min_models(&st.context)?;
    let joint_models = reviser.min_models(&st.whole())?;
    let applicable = !context_models.is_empty();
    Ok(SurpriseVerdict {
        applicable,
        surprising: applicable && context_models.is_disjoint(&joint_models),
        context_models,
        joint_models,
    })
}

fn reveal_with(reviser: &Reviser<'_>, st: &Statement) -> Result<RevealVerdict> {
    let punchline_models = reviser.min_models(&st.punchline)?;
    let revealing = !punchline_models.is_empty()
        && punchline_models.is_subset(&reviser.kb().models(&st.context)?);
    Ok(RevealVerdict {
        revealing,
        punchline_models,
    })
}

/// `K∘α` is consistent and shares no model with `K∘(α∧β)`.
pub fn is_surprising(
    kb: &KnowledgeBase,
    st: &Statement,
    method: OrderMethod,
) -> Result<SurpriseVerdict> {
    surprise_with(&Reviser::new(kb, method)?, st)
}

/// `β |~ α`.
pub fn is_revealing(
    kb: &KnowledgeBase,
    st: &Statement,
    method: OrderMethod,
) -> Result<RevealVerdict> {
    reveal_with(&Reviser::new(kb, method)?, st)
}

pub fn is_potentially_funny(
    kb: &KnowledgeBase,
    st: &Statement,
    method: OrderMethod,
) -> Result<bool> {
    let reviser = Reviser::new(kb, method)?;
    Ok(surprise_with(&reviser, st)?.surprising && reveal_with(&reviser, st)?.revealing)
}

/// `(α, β)` is more efficient than `(α, β′)` when `K∘β ⊨ β′`. The context
/// plays no part in the test but must be a formula over the kb's universe.
pub fn more_efficient(
    kb: &KnowledgeBase,
    context: &Formula,
    punchline: &Formula,
    other_punchline: &Formula,
    method: OrderMethod,
) -> Result<bool> {
    kb.models(context)?;
    if equivalent(punchline, other_punchline, kb.universe())? {
        return Err(Error::EquivalentPunchlines);
    }
    Reviser::new(kb, method)?.entails(punchline, other_punchline)
}

/// 0 when `N(α) = N(α∧β)`, otherwise `1 − Π(α∧β)`, on the `π_Σ` scale.
pub fn surprise_level(kb: &KnowledgeBase, st: &Statement) -> Result<Degree> {
    surprise_level_with(&build_distribution(kb)?, kb, st)
}

fn surprise_level_with(
    dist: &RankedDistribution,
    kb: &KnowledgeBase,
    st: &Statement,
) -> Result<Degree> {
    let context = kb.models(&st.context)?;
    let whole = kb.models(&st.whole())?;
    if dist.necessity_of_models(&context) == dist.necessity_of_models(&whole) {
        Ok(Degree::from_integer(0))
    } else {
        Ok(Degree::from_integer(1) - dist.possibility_of_models(&whole))
    }
}

/// How `π_Σ` is conditioned on the punchline when computing the revealing
/// level `N(α | K∘β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Conditioning {
    /// Min-based conditioning on `β`: the best `β`-models are raised to 1,
    /// other `β`-models keep their degree, the rest drop to 0.
    #[default]
    MinBased,
    /// `π(ω|β) = π(ω)` on `β`-models, 0 elsewhere.
    Unnormalized,
    /// Min-based conditioning on the formula whose models are exactly the
    /// preferred models of `β`; the level is then 0 or 1.
    PreferredModels,
}

/// `N(α | β)` under the chosen conditioning. Undefined when `Π(β) = 0`.
pub fn revealing_level(
    kb: &KnowledgeBase,
    st: &Statement,
    conditioning: Conditioning,
) -> Result<Degree> {
    revealing_level_with(&build_distribution(kb)?, kb, st, conditioning)
}

fn revealing_level_with(
    dist: &RankedDistribution,
    kb: &KnowledgeBase,
    st: &Statement,
    conditioning: Conditioning,
) -> Result<Degree> {
    let beta = kb.models(&st.punchline)?;
    let counter = kb.models(&st.context)?.complement();
    let best = beta.iter().map(|w| dist.level(w)).max().unwrap_or(0);
    if best == 0 {
        return Err(Error::UndefinedLevel);
    }
    let top = dist.top_level() as u64;
    let one = Degree::from_integer(1);
    let conditioned = |level: u16| -> Degree {
        match conditioning {
            Conditioning::MinBased if level == best => one,
            Conditioning::MinBased | Conditioning::Unnormalized => Degree::new(level as u64, top),
            Conditioning::PreferredModels if level == best => one,
            Conditioning::PreferredModels => Degree::from_integer(0),
        }
    };
    let worst_counter = beta
        .intersection(&counter)
        .iter()
        .map(|w| conditioned(dist.level(w)))
        .max()
        .unwrap_or(Degree::from_integer(0));
    Ok(one - worst_counter)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradualLevels {
    pub surprise_level: Degree,
    /// `None` when the punchline is impossible under `π_Σ`.
    pub revealing_level: Option<Degree>,
}

/// Outcome of the incongruity test for one norm `ρ`, computed in `Σ \ {ρ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormFinding {
    pub norm: NormRef,
    /// `α∧β |~ Not ρ`.
    pub violated: bool,
    /// `β |~ α`.
    pub revealed: bool,
    /// Preferred models of `α∧β` in `Σ \ {ρ}`.
    pub violation_models: ModelSet,
    /// Preferred models of `β` in `Σ \ {ρ}`.
    pub revelation_models: ModelSet,
}

impl NormFinding {
    pub fn incongruous(&self) -> bool {
        self.violated && self.revealed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncongruityReport {
    pub findings: Vec<NormFinding>,
    pub incongruous: Vec<NormRef>,
    /// Strict norms entailed by the remaining strict rules; never tested.
    pub non_violable: Vec<NormRef>,
    /// Norms whose reduced knowledge base could not be built.
    pub errors: Vec<(NormRef, Error)>,
}

/// Test each norm `ρ`: the whole story must make the listener conclude that
/// `ρ` is broken once `ρ` is set aside, and the punchline must still reveal
/// the context without it.
pub fn incongruity(
    kb: &KnowledgeBase,
    st: &Statement,
    method: OrderMethod,
) -> Result<IncongruityReport> {
    kb.models(&st.whole())?;
    let mut report = IncongruityReport::default();
    let strict = kb.strict_formulas();
    for norm in norms(kb) {
        let (reduced, not_rho) = match norm.kind {
            NormKind::Strict => {
                let rho = &strict[norm.index];
                let others: Vec<Formula> = strict
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != norm.index)
                    .map(|(_, f)| f.clone())
                    .collect();
                if entails(&others, rho, kb.universe())? {
                    report.non_violable.push(norm);
                    continue;
                }
                (kb.without_strict(norm.index), rho.clone().not())
            }
            NormKind::Default => (
                kb.without_default(norm.index),
                kb.defaults()[norm.index].violation(),
            ),
        };
        let reduced = match reduced {
            Ok(reduced) => reduced,
            Err(e) => {
                report.errors.push((norm, e));
                continue;
            }
        };
        let reviser = Reviser::new(&reduced, method)?;
        let violation_models = reviser.min_models(&st.whole())?;
        let revelation_models = reviser.min_models(&st.punchline)?;
        let violated =
            !violation_models.is_empty() && violation_models.is_subset(&reduced.models(&not_rho)?);
        let revealed = !revelation_models.is_empty()
            && revelation_models.is_subset(&reduced.models(&st.context)?);
        let finding = NormFinding {
            norm,
            violated,
            revealed,
            violation_models,
            revelation_models,
        };
        if finding.incongruous() {
            report.incongruous.push(norm);
        }
        report.findings.push(finding);
    }
    Ok(report)
}

/// Rendered model sets backing the verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witnesses {
    /// `K∘α`
    pub context: Vec<String>,
    /// `K∘(α∧β)`
    pub context_and_punchline: Vec<String>,
    /// `K∘β`
    pub punchline: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedFinding {
    pub norm: NormRef,
    pub rule: String,
    pub violated: bool,
    pub revealed: bool,
    pub violation_models: Vec<String>,
    pub revelation_models: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JokeAnalysis {
    pub method: OrderMethod,
    pub surprise_applicable: bool,
    pub surprising: bool,
    pub revealing: bool,
    pub potentially_funny: bool,
    pub incongruous_norms: Vec<NormRef>,
    pub non_violable_norms: Vec<NormRef>,
    pub levels: GradualLevels,
    pub witnesses: Witnesses,
    pub findings: Vec<RenderedFinding>,
    /// Problems met along the way that did not stop the analysis.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisOptions {
    pub conditioning: Conditioning,
}

pub fn analyze(kb: &KnowledgeBase, st: &Statement, method: OrderMethod) -> Result<JokeAnalysis> {
    analyze_with(kb, st, method, AnalysisOptions::default())
}

pub fn analyze_with(
    kb: &KnowledgeBase,
    st: &Statement,
    method: OrderMethod,
    options: AnalysisOptions,
) -> Result<JokeAnalysis> {
    let universe = kb.universe();
    let reviser = Reviser::new(kb, method)?;
    let dist = build_distribution(kb)?;
    let surprise = surprise_with(&reviser, st)?;
    let reveal = reveal_with(&reviser, st)?;
    let incongruity = incongruity(kb, st, method)?;

    let mut notes = Vec::new();
    if !surprise.applicable {
        notes.push("context contradicts the strict rules; surprise does not apply".to_string());
    }
    let revealing_level = match revealing_level_with(&dist, kb, st, options.conditioning) {
        Ok(level) => Some(level),
        Err(Error::UndefinedLevel) => {
            notes.push("punchline has possibility 0; revealing level undefined".to_string());
            None
        }
        Err(e) => return Err(e),
    };
    for (norm, e) in &incongruity.errors {
        notes.push(format!("norm {norm} skipped: {e}"));
    }

    let findings = incongruity
        .findings
        .iter()
        .map(|f| RenderedFinding {
            norm: f.norm,
            rule: render_rule(kb, f.norm),
            violated: f.violated,
            revealed: f.revealed,
            violation_models: f.violation_models.render(universe),
            revelation_models: f.revelation_models.render(universe),
        })
        .collect();

    Ok(JokeAnalysis {
        method,
        surprise_applicable: surprise.applicable,
        surprising: surprise.surprising,
        revealing: reveal.revealing,
        potentially_funny: surprise.surprising && reveal.revealing,
        incongruous_norms: incongruity.incongruous,
        non_violable_norms: incongruity.non_violable,
        levels: GradualLevels {
            surprise_level: surprise_level_with(&dist, kb, st)?,
            revealing_level,
        },
        witnesses: Witnesses {
            context: surprise.context_models.render(universe),
            context_and_punchline: surprise.joint_models.render(universe),
            punchline: reveal.punchline_models.render(universe),
        },
        findings,
        notes,
    })
}

fn render_rule(kb: &KnowledgeBase, norm: NormRef) -> String {
    match norm.kind {
        NormKind::Strict => kb.strict()[norm.index].formula.render(kb.universe()),
        NormKind::Default => kb.defaults()[norm.index].render(kb.universe()),
    }
}

/// Step `k` analyses `(φ1 ∧ … ∧ φk, φk+1)`.
pub fn analyze_cascade(
    kb: &KnowledgeBase,
    parts: &[Formula],
    method: OrderMethod,
) -> Result<Vec<JokeAnalysis>> {
    if parts.len() < 2 {
        return Err(Error::InvalidInput(
            "a cascade needs at least two parts".to_string(),
        ));
    }
    let mut context = parts[0].clone();
    let mut steps = Vec::with_capacity(parts.len() - 1);
    for part in &parts[1..] {
        let st = Statement::new(context.clone(), part.clone());
        steps.push(analyze(kb, &st, method)?);
        context = context.and(part.clone());
    }
    Ok(steps)
}
