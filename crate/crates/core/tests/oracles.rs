//! The engine against brute-force reference semantics on random kbs.

mod common;

use common::{atom_names, load, random_formula, random_kb, Oracle};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quip_core::defaults::{
    build_distribution, necessity, possibility, tolerates, DefaultRule, KnowledgeBase, StrictRule,
};
use quip_core::humor::{revealing_level, surprise_level, Conditioning, Statement};
use quip_core::logic::{AtomUniverse, Formula, Interpretation};
use quip_core::orders::{OrderMethod, Reviser};
use quip_core::Error;

const KBS: usize = 120;

fn kbs(seed: u64) -> Vec<KnowledgeBase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..KBS).map(|_| random_kb(&mut rng, 4, 4, 2)).collect()
}

#[test]
fn tolerance_matches_reference() {
    let tweety = load("tweety").kb;
    let oracle = Oracle::new(&tweety);
    let all: Vec<usize> = (0..3).collect();
    assert!(!oracle.tolerated(1, &all));
    assert!(oracle.tolerated(0, &all));
    let d = &tweety.defaults();
    assert!(!tolerates(d, &d[1], tweety.strict(), tweety.universe()).unwrap());
    assert!(tolerates(d, &d[0], tweety.strict(), tweety.universe()).unwrap());

    for kb in kbs(11) {
        let oracle = Oracle::new(&kb);
        let all: Vec<usize> = (0..kb.defaults().len()).collect();
        for i in 0..kb.defaults().len() {
            assert_eq!(
                tolerates(kb.defaults(), &kb.defaults()[i], kb.strict(), kb.universe()).unwrap(),
                oracle.tolerated(i, &all)
            );
        }
    }
}

#[test]
fn ranks_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut rejected = 0;
    for _ in 0..300 {
        let n = rng.gen_range(2..=4);
        let universe = AtomUniverse::from_names(atom_names(n)).unwrap();
        let strict: Vec<StrictRule> = (0..rng.gen_range(0..=1))
            .map(|_| StrictRule::new(random_formula(&mut rng, n, 2)))
            .collect();
        let defaults: Vec<DefaultRule> = (0..rng.gen_range(0..=5))
            .map(|_| {
                DefaultRule::new(
                    random_formula(&mut rng, n, 1),
                    random_formula(&mut rng, n, 1),
                )
            })
            .collect();
        let oracle = Oracle::from_rules(
            n,
            strict.iter().map(|r| r.formula.clone()).collect(),
            defaults
                .iter()
                .map(|d| (d.antecedent.clone(), d.consequent.clone()))
                .collect(),
        );
        let strict_ok = oracle.worlds().any(|w| oracle.satisfies_strict(w));
        match KnowledgeBase::new(universe, strict, defaults) {
            Ok(kb) => assert_eq!(Some(kb.stratification().ranks().to_vec()), oracle.ranks),
            Err(Error::InconsistentStrict) => {
                assert!(!strict_ok);
                rejected += 1;
            }
            Err(Error::InconsistentDefaults { .. }) => {
                assert!(strict_ok && oracle.ranks.is_none());
                rejected += 1;
            }
            Err(e) => panic!("unexpected {e}"),
        }
    }
    assert!(rejected > 0);
}

#[test]
fn distribution_matches_reference() {
    for kb in kbs(13) {
        let oracle = Oracle::new(&kb);
        let dist = build_distribution(&kb).unwrap();
        for w in oracle.worlds() {
            assert_eq!(dist.pi(w), oracle.pi(w));
        }
    }
}

#[test]
fn measures_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for kb in kbs(14) {
        let oracle = Oracle::new(&kb);
        let dist = build_distribution(&kb).unwrap();
        for _ in 0..5 {
            let phi = random_formula(&mut rng, kb.atom_count(), 3);
            assert_eq!(
                possibility(&dist, &phi, kb.universe()).unwrap(),
                oracle.possibility(&phi)
            );
            assert_eq!(
                necessity(&dist, &phi, kb.universe()).unwrap(),
                oracle.necessity(&phi)
            );
        }
    }
}

#[test]
fn preferred_models_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for kb in kbs(15) {
        let oracle = Oracle::new(&kb);
        for method in OrderMethod::ALL {
            let reviser = Reviser::new(&kb, method).unwrap();
            for _ in 0..5 {
                let phi = random_formula(&mut rng, kb.atom_count(), 3);
                let psi = random_formula(&mut rng, kb.atom_count(), 2);
                let got: Vec<u32> = reviser
                    .min_models(&phi)
                    .unwrap()
                    .iter()
                    .map(|w| w.0)
                    .collect();
                assert_eq!(got, oracle.minimal(method, &phi));
                assert_eq!(
                    reviser.entails(&phi, &psi).unwrap(),
                    oracle.nm_entails(method, &phi, &psi)
                );
            }
        }
    }
}

#[test]
fn gradual_levels_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for kb in kbs(16) {
        let oracle = Oracle::new(&kb);
        for _ in 0..5 {
            let alpha = random_formula(&mut rng, kb.atom_count(), 2);
            let beta = random_formula(&mut rng, kb.atom_count(), 2);
            let st = Statement::new(alpha.clone(), beta.clone());
            assert_eq!(
                surprise_level(&kb, &st).unwrap(),
                oracle.surprise_level(&alpha, &beta)
            );
            let got = match revealing_level(&kb, &st, Conditioning::MinBased) {
                Ok(level) => Some(level),
                Err(Error::UndefinedLevel) => None,
                Err(e) => panic!("unexpected {e}"),
            };
            assert_eq!(got, oracle.revealing_level(&alpha, &beta));
        }
    }
}

#[test]
fn partial_revelation() {
    // a ~> b; the best punchline model satisfies the context, a worse one does not
    let u = AtomUniverse::from_names(["a", "b", "c"]).unwrap();
    let d = DefaultRule::new(Formula::atom(0), Formula::atom(1));
    let kb = KnowledgeBase::new(u, vec![], vec![d]).unwrap();
    let st = Statement::new(Formula::atom(1), Formula::atom(0));
    let oracle = Oracle::new(&kb);
    let level = revealing_level(&kb, &st, Conditioning::MinBased).unwrap();
    assert_eq!(
        Some(level),
        oracle.revealing_level(&Formula::atom(1), &Formula::atom(0))
    );
    assert_eq!(level, Ratio::new(1, 2));
    assert_eq!(
        revealing_level(&kb, &st, Conditioning::Unnormalized).unwrap(),
        Ratio::new(1, 2)
    );
    assert_eq!(
        revealing_level(&kb, &st, Conditioning::PreferredModels).unwrap(),
        Ratio::from_integer(1)
    );
}

/// Levels as integers, for trying out alternative distributions.
fn satisfies_constraints(oracle: &Oracle, levels: &[u32]) -> bool {
    let poss = |phi: &Formula| -> u32 {
        oracle
            .worlds()
            .filter(|&w| phi.eval(w))
            .map(|w| levels[w.index()])
            .max()
            .unwrap_or(0)
    };
    let strict_ok = oracle
        .worlds()
        .all(|w| oracle.satisfies_strict(w) || levels[w.index()] == 0);
    strict_ok
        && oracle
            .defaults
            .iter()
            .all(|(a, c)| poss(&a.clone().and(c.clone())) > poss(&a.clone().and(c.clone().not())))
}

#[test]
fn distribution_is_least_restrictive() {
    for kb in kbs(17) {
        let oracle = Oracle::new(&kb);
        let dist = build_distribution(&kb).unwrap();
        let levels: Vec<u32> = oracle.worlds().map(|w| dist.level(w) as u32).collect();
        assert!(satisfies_constraints(&oracle, &levels));
        for w in oracle.worlds() {
            if levels[w.index()] == dist.top_level() as u32 {
                continue;
            }
            let mut raised = levels.clone();
            raised[w.index()] += 1;
            assert!(!satisfies_constraints(&oracle, &raised), "{kb:?} {w:?}");
        }
    }
}

#[test]
fn top_layer_is_the_unviolated_models() {
    for kb in kbs(18) {
        let oracle = Oracle::new(&kb);
        let dist = build_distribution(&kb).unwrap();
        for w in oracle.worlds() {
            let clean = oracle.satisfies_strict(w)
                && (0..kb.defaults().len()).all(|i| !oracle.violates(i, w));
            assert_eq!(dist.level(w) == dist.top_level(), clean);
        }
        assert!(oracle
            .worlds()
            .any(|w: Interpretation| dist.level(w) == dist.top_level()));
    }
}
