//! Knowledge bases of strict and default rules, System Z stratification and
//! the least specific possibility distribution they induce.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::logic::{models_of, models_of_all, AtomUniverse, Formula, Interpretation, ModelSet};

/// Exact possibility / necessity degree on the `level / L` scale.
pub type Degree = Ratio<u64>;

/// `antecedent ~> consequent`: when the antecedent holds, the consequent is
/// strictly more plausible than its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultRule {
    pub antecedent: Formula,
    pub consequent: Formula,
    pub is_norm: bool,
}

impl DefaultRule {
    pub fn new(antecedent: Formula, consequent: Formula) -> Self {
        DefaultRule {
            antecedent,
            consequent,
            is_norm: false,
        }
    }

    pub fn norm(antecedent: Formula, consequent: Formula) -> Self {
        DefaultRule {
            is_norm: true,
            ..Self::new(antecedent, consequent)
        }
    }

    /// Material counterpart `!a | c`.
    pub fn material(&self) -> Formula {
        self.antecedent.clone().not().or(self.consequent.clone())
    }

    /// `a & c`: the situations that verify the rule.
    pub fn verification(&self) -> Formula {
        self.antecedent.clone().and(self.consequent.clone())
    }

    /// `a & !c`: the situations that falsify the rule.
    pub fn violation(&self) -> Formula {
        self.antecedent.clone().and(self.consequent.clone().not())
    }

    pub fn render(&self, universe: &AtomUniverse) -> String {
        format!(
            "{} ~> {}",
            self.antecedent.render(universe),
            self.consequent.render(universe)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictRule {
    pub formula: Formula,
    pub is_norm: bool,
}

impl StrictRule {
    pub fn new(formula: Formula) -> Self {
        StrictRule {
            formula,
            is_norm: false,
        }
    }

    pub fn norm(formula: Formula) -> Self {
        StrictRule {
            formula,
            is_norm: true,
        }
    }
}

fn strict_formulas(strict: &[StrictRule]) -> impl Iterator<Item = &Formula> {
    strict.iter().map(|r| &r.formula)
}

/// Does `delta` tolerate `d` under the strict rules, i.e. is
/// `P & a_d & c_d & materials(delta)` satisfiable?
pub fn tolerates(
    delta: &[DefaultRule],
    d: &DefaultRule,
    strict: &[StrictRule],
    universe: &AtomUniverse,
) -> Result<bool> {
    let materials: Vec<Formula> = delta.iter().map(DefaultRule::material).collect();
    let verification = d.verification();
    let premises = strict_formulas(strict)
        .chain(std::iter::once(&verification))
        .chain(materials.iter());
    Ok(!models_of_all(premises, universe)?.is_empty())
}

/// Partition of the defaults by Z-rank. Rank 0 holds the most general rules;
/// higher ranks are more specific and take priority. The strict rules sit
/// above every default stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    ranks: Vec<usize>,
    strata: Vec<Vec<usize>>,
}

impl Stratification {
    /// Z-rank of default `index`.
    pub fn rank(&self, index: usize) -> usize {
        self.ranks[index]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Default indices grouped by Z-rank, rank 0 first.
    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    pub fn default_stratum_count(&self) -> usize {
        self.strata.len()
    }

    /// Default strata from highest to lowest priority (the strict stratum,
    /// which outranks all of them, is implicit).
    pub fn by_priority(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.strata
            .iter()
            .enumerate()
            .rev()
            .map(|(rank, s)| (rank, s.as_slice()))
    }
}

/// System Z: repeatedly rank every default tolerated by the not-yet-ranked
/// ones (with the strict rules as background), until none remain.
pub fn z_stratify(
    universe: &AtomUniverse,
    strict: &[StrictRule],
    defaults: &[DefaultRule],
) -> Result<Stratification> {
    let strict_models = models_of_all(strict_formulas(strict), universe)?;
    if strict_models.is_empty() {
        return Err(Error::InconsistentStrict);
    }
    let materials = defaults
        .iter()
        .map(|d| models_of(&d.material(), universe))
        .collect::<Result<Vec<_>>>()?;
    let verifications = defaults
        .iter()
        .map(|d| models_of(&d.verification(), universe))
        .collect::<Result<Vec<_>>>()?;

    let mut ranks = vec![usize::MAX; defaults.len()];
    let mut remaining: Vec<usize> = (0..defaults.len()).collect();
    let mut strata = Vec::new();
    while !remaining.is_empty() {
        let compatible = remaining.iter().fold(strict_models.clone(), |acc, &i| {
            acc.intersection(&materials[i])
        });
        let (tolerated, rest): (Vec<usize>, Vec<usize>) = remaining
            .iter()
            .partition(|&&i| !compatible.is_disjoint(&verifications[i]));
        if tolerated.is_empty() {
            return Err(Error::InconsistentDefaults { unranked: rest });
        }
        for &i in &tolerated {
            ranks[i] = strata.len();
        }
        strata.push(tolerated);
        remaining = rest;
    }
    Ok(Stratification { ranks, strata })
}

/// `Σ = (P, Δ)` over a fixed atom universe. Construction checks that `P` is
/// consistent and that `Δ` can be stratified.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    universe: AtomUniverse,
    strict: Vec<StrictRule>,
    defaults: Vec<DefaultRule>,
    stratification: Stratification,
    strict_models: ModelSet,
}

impl KnowledgeBase {
    pub fn new(
        universe: AtomUniverse,
        strict: Vec<StrictRule>,
        defaults: Vec<DefaultRule>,
    ) -> Result<Self> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let strict_models = models_of_all(strict_formulas(&strict), &universe)?;
        if strict_models.is_empty() {
            return Err(Error::InconsistentStrict);
        }
        for d in &defaults {
            // surfaces out-of-universe atoms before stratification
            models_of(&d.material(), &universe)?;
        }
        let stratification = z_stratify(&universe, &strict, &defaults)?;
        Ok(KnowledgeBase {
            universe,
            strict,
            defaults,
            stratification,
            strict_models,
        })
    }

    pub fn universe(&self) -> &AtomUniverse {
        &self.universe
    }

    pub fn strict(&self) -> &[StrictRule] {
        &self.strict
    }

    pub fn defaults(&self) -> &[DefaultRule] {
        &self.defaults
    }

    pub fn strict_formulas(&self) -> Vec<Formula> {
        self.strict.iter().map(|r| r.formula.clone()).collect()
    }

    pub fn stratification(&self) -> &Stratification {
        &self.stratification
    }

    /// `Mod(P)`.
    pub fn strict_models(&self) -> &ModelSet {
        &self.strict_models
    }

    pub fn atom_count(&self) -> usize {
        self.universe.len()
    }

    pub fn models(&self, phi: &Formula) -> Result<ModelSet> {
        models_of(phi, &self.universe)
    }

    /// `Mod(P ∪ {phi})`.
    pub fn constrained_models(&self, phi: &Formula) -> Result<ModelSet> {
        Ok(self.models(phi)?.intersection(&self.strict_models))
    }

    /// `(P \ {strict[index]}, Δ)`.
    pub fn without_strict(&self, index: usize) -> Result<KnowledgeBase> {
        let mut strict = self.strict.clone();
        strict.remove(index);
        KnowledgeBase::new(self.universe.clone(), strict, self.defaults.clone())
    }

    /// `(P, Δ \ {defaults[index]})`, re-stratified.
    pub fn without_default(&self, index: usize) -> Result<KnowledgeBase> {
        let mut defaults = self.defaults.clone();
        defaults.remove(index);
        KnowledgeBase::new(self.universe.clone(), self.strict.clone(), defaults)
    }

    pub fn with_default(&self, rule: DefaultRule) -> Result<KnowledgeBase> {
        let mut defaults = self.defaults.clone();
        defaults.push(rule);
        KnowledgeBase::new(self.universe.clone(), self.strict.clone(), defaults)
    }
}

/// Possibility distribution `π_Σ` as integer levels: `L` is fully possible,
/// `0` impossible, and `π(ω) = level(ω) / L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedDistribution {
    atom_count: usize,
    levels: Vec<u16>,
    top: u16,
}

/// Best-out layering: a model of `P` sits below the top by one plus the Z-rank
/// of the highest-ranked default it falsifies.
pub fn build_distribution(kb: &KnowledgeBase) -> Result<RankedDistribution> {
    let strat = kb.stratification();
    let top = u16::try_from(strat.default_stratum_count() + 1)
        .map_err(|_| Error::InvalidInput("too many default strata".into()))?;
    let violations = kb
        .defaults()
        .iter()
        .map(|d| kb.models(&d.violation()))
        .collect::<Result<Vec<_>>>()?;

    let mut levels = vec![0u16; kb.universe().interpretation_count()];
    for w in kb.strict_models().iter() {
        let worst = violations
            .iter()
            .enumerate()
            .filter(|(_, v)| v.contains(w))
            .map(|(i, _)| strat.rank(i))
            .max();
        levels[w.index()] = match worst {
            None => top,
            Some(rank) => top - 1 - rank as u16,
        };
    }
    Ok(RankedDistribution {
        atom_count: kb.atom_count(),
        levels,
        top,
    })
}

impl RankedDistribution {
    pub fn level(&self, w: Interpretation) -> u16 {
        self.levels[w.index()]
    }

    /// `L`, the number of positive plausibility layers.
    pub fn top_level(&self) -> u16 {
        self.top
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn pi(&self, w: Interpretation) -> Degree {
        Degree::new(self.level(w) as u64, self.top as u64)
    }

    /// All interpretations at `level`.
    pub fn layer(&self, level: u16) -> ModelSet {
        ModelSet::from_interpretations(
            self.atom_count,
            self.levels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == level)
                .map(|(i, _)| Interpretation(i as u32)),
        )
    }

    /// Layers from `L` down to `0`.
    pub fn layers(&self) -> Vec<(u16, ModelSet)> {
        (0..=self.top).rev().map(|l| (l, self.layer(l))).collect()
    }

    fn max_level_in(&self, models: &ModelSet) -> u16 {
        models.iter().map(|w| self.level(w)).max().unwrap_or(0)
    }

    /// `Π(phi) = max { π(ω) : ω ⊨ phi }`.
    pub fn possibility_of_models(&self, models: &ModelSet) -> Degree {
        Degree::new(self.max_level_in(models) as u64, self.top as u64)
    }

    /// `N(phi) = 1 - Π(¬phi)`.
    pub fn necessity_of_models(&self, models: &ModelSet) -> Degree {
        Degree::from_integer(1) - self.possibility_of_models(&models.complement())
    }
}

pub fn possibility(
    dist: &RankedDistribution,
    phi: &Formula,
    universe: &AtomUniverse,
) -> Result<Degree> {
    Ok(dist.possibility_of_models(&models_of(phi, universe)?))
}

pub fn necessity(
    dist: &RankedDistribution,
    phi: &Formula,
    universe: &AtomUniverse,
) -> Result<Degree> {
    Ok(dist.necessity_of_models(&models_of(phi, universe)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula_infer;

    fn default(u: &mut AtomUniverse, a: &str, c: &str) -> DefaultRule {
        DefaultRule::new(
            parse_formula_infer(a, u).unwrap(),
            parse_formula_infer(c, u).unwrap(),
        )
    }

    fn tweety() -> (AtomUniverse, Vec<StrictRule>, Vec<DefaultRule>) {
        let mut u = AtomUniverse::from_names(["p", "b", "f", "a"]).unwrap();
        let strict = vec![StrictRule::new(
            parse_formula_infer("p -> b", &mut u).unwrap(),
        )];
        let defaults = vec![
            default(&mut u, "b", "f"),
            default(&mut u, "p", "!f"),
            default(&mut u, "b & a", "p"),
        ];
        (u, strict, defaults)
    }

    #[test]
    fn tolerance_on_empty_delta() {
        let mut u = AtomUniverse::new();
        let d = default(&mut u, "b", "f");
        assert!(tolerates(&[], &d, &[], &u).unwrap());
    }

    #[test]
    fn tweety_tolerance() {
        let (u, strict, delta) = tweety();
        assert!(!tolerates(&delta, &delta[1], &strict, &u).unwrap());
        assert!(tolerates(&delta, &delta[0], &strict, &u).unwrap());
        assert!(!tolerates(&delta, &delta[2], &strict, &u).unwrap());
    }

    #[test]
    fn tweety_strata() {
        let (u, strict, delta) = tweety();
        let s = z_stratify(&u, &strict, &delta).unwrap();
        assert_eq!(s.strata(), &[vec![0], vec![1, 2]]);
        let by_priority: Vec<_> = s.by_priority().map(|(r, _)| r).collect();
        assert_eq!(by_priority, vec![1, 0]);
    }

    #[test]
    fn empty_delta_has_no_default_strata() {
        let u = AtomUniverse::from_names(["a"]).unwrap();
        let kb = KnowledgeBase::new(u, vec![], vec![]).unwrap();
        assert_eq!(kb.stratification().default_stratum_count(), 0);
        let dist = build_distribution(&kb).unwrap();
        assert_eq!(dist.top_level(), 1);
        assert_eq!(dist.layer(1).len(), 2);
    }

    #[test]
    fn inconsistent_defaults_are_reported() {
        let mut u = AtomUniverse::new();
        let delta = vec![default(&mut u, "a", "b"), default(&mut u, "a", "!b")];
        let err = KnowledgeBase::new(u, vec![], delta).unwrap_err();
        assert_eq!(
            err,
            Error::InconsistentDefaults {
                unranked: vec![0, 1]
            }
        );
    }

    #[test]
    fn inconsistent_strict_rules_are_rejected() {
        let mut u = AtomUniverse::new();
        let a = parse_formula_infer("a", &mut u).unwrap();
        let strict = vec![StrictRule::new(a.clone()), StrictRule::new(a.not())];
        assert_eq!(
            KnowledgeBase::new(u, strict, vec![]).unwrap_err(),
            Error::InconsistentStrict
        );
    }

    #[test]
    fn empty_universe_is_rejected() {
        assert_eq!(
            KnowledgeBase::new(AtomUniverse::new(), vec![], vec![]).unwrap_err(),
            Error::EmptyUniverse
        );
    }

    #[test]
    fn strict_rule_can_block_tolerance() {
        // Without P, a ~> b is tolerated; with P = {!b} it never is.
        let mut u = AtomUniverse::new();
        let d = default(&mut u, "a", "b");
        let strict = vec![StrictRule::new(parse_formula_infer("!b", &mut u).unwrap())];
        assert!(tolerates(&[], &d, &[], &u).unwrap());
        assert!(!tolerates(&[], &d, &strict, &u).unwrap());
    }

    #[test]
    fn degrees_are_exact() {
        let (u, strict, delta) = tweety();
        let kb = KnowledgeBase::new(u, strict, delta).unwrap();
        let dist = build_distribution(&kb).unwrap();
        assert_eq!(dist.top_level(), 3);
        let penguin = parse_formula_infer("p", &mut kb.universe().clone()).unwrap();
        assert_eq!(
            possibility(&dist, &penguin, kb.universe()).unwrap(),
            Degree::new(2, 3)
        );
        assert_eq!(
            necessity(&dist, &Formula::True, kb.universe()).unwrap(),
            Degree::from_integer(1)
        );
        assert_eq!(
            possibility(&dist, &Formula::False, kb.universe()).unwrap(),
            Degree::from_integer(0)
        );
    }
}
