use std::fmt;

use fixedbitset::FixedBitSet;

use super::formula::Formula;
use super::universe::{AtomUniverse, Interpretation, MAX_ATOMS};
use crate::error::{Error, Result};

/// A set of interpretations over a universe of `n` atoms, stored as a
/// `2^n`-bit table. Iteration is in canonical index order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    bits: FixedBitSet,
}

impl ModelSet {
    pub fn empty(atom_count: usize) -> Self {
        ModelSet {
            bits: FixedBitSet::with_capacity(1 << atom_count),
        }
    }

    pub fn full(atom_count: usize) -> Self {
        let mut set = Self::empty(atom_count);
        set.bits.insert_range(..);
        set
    }

    pub fn from_interpretations<I>(atom_count: usize, members: I) -> Self
    where
        I: IntoIterator<Item = Interpretation>,
    {
        let mut set = Self::empty(atom_count);
        for w in members {
            set.insert(w);
        }
        set
    }

    /// Number of interpretations in the carrier, `2^n`.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, w: Interpretation) {
        self.bits.insert(w.index());
    }

    pub fn contains(&self, w: Interpretation) -> bool {
        self.bits.contains(w.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Interpretation> + '_ {
        self.bits.ones().map(|i| Interpretation(i as u32))
    }

    pub fn to_vec(&self) -> Vec<Interpretation> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ModelSet { bits }
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ModelSet { bits }
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ModelSet { bits }
    }

    pub fn complement(&self) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ModelSet { bits }
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ModelSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn render(&self, universe: &AtomUniverse) -> Vec<String> {
        self.iter().map(|w| universe.render(w)).collect()
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

fn check_universe(universe: &AtomUniverse) -> Result<()> {
    if universe.len() > MAX_ATOMS {
        return Err(Error::UniverseTooLarge(universe.len()));
    }
    Ok(())
}

fn check_formula(phi: &Formula, universe: &AtomUniverse) -> Result<()> {
    if phi.atom_bound() > universe.len() {
        return Err(Error::InvalidInput(format!(
            "formula mentions atom #{} outside a universe of {} atoms",
            phi.atom_bound() - 1,
            universe.len()
        )));
    }
    Ok(())
}

/// Truth table of `phi`, built connective by connective over whole tables.
fn table(phi: &Formula, n: usize) -> FixedBitSet {
    let size = 1usize << n;
    match phi {
        Formula::True => {
            let mut t = FixedBitSet::with_capacity(size);
            t.insert_range(..);
            t
        }
        Formula::False => FixedBitSet::with_capacity(size),
        Formula::Atom(k) => {
            let mut t = FixedBitSet::with_capacity(size);
            let run = 1usize << k;
            let mut start = run;
            while start < size {
                t.insert_range(start..start + run);
                start += 2 * run;
            }
            t
        }
        Formula::Not(a) => {
            let mut t = table(a, n);
            t.toggle_range(..);
            t
        }
        Formula::And(a, b) => {
            let mut t = table(a, n);
            t.intersect_with(&table(b, n));
            t
        }
        Formula::Or(a, b) => {
            let mut t = table(a, n);
            t.union_with(&table(b, n));
            t
        }
        Formula::Implies(a, b) => {
            let mut t = table(a, n);
            t.toggle_range(..);
            t.union_with(&table(b, n));
            t
        }
        Formula::Iff(a, b) => {
            let mut t = table(a, n);
            t.symmetric_difference_with(&table(b, n));
            t.toggle_range(..);
            t
        }
    }
}

/// `Mod(phi)`: every interpretation of `universe` satisfying `phi`.
pub fn models_of(phi: &Formula, universe: &AtomUniverse) -> Result<ModelSet> {
    check_universe(universe)?;
    check_formula(phi, universe)?;
    Ok(ModelSet {
        bits: table(phi, universe.len()),
    })
}

/// `Mod(A)` for a set of formulas read conjunctively.
pub fn models_of_all<'a, I>(premises: I, universe: &AtomUniverse) -> Result<ModelSet>
where
    I: IntoIterator<Item = &'a Formula>,
{
    check_universe(universe)?;
    let mut models = ModelSet::full(universe.len());
    for phi in premises {
        check_formula(phi, universe)?;
        models.bits.intersect_with(&table(phi, universe.len()));
    }
    Ok(models)
}

/// Classical consequence: every model of the premises satisfies `phi`.
pub fn entails(premises: &[Formula], phi: &Formula, universe: &AtomUniverse) -> Result<bool> {
    let lhs = models_of_all(premises, universe)?;
    Ok(lhs.is_subset(&models_of(phi, universe)?))
}

pub fn is_consistent(premises: &[Formula], universe: &AtomUniverse) -> Result<bool> {
    Ok(!models_of_all(premises, universe)?.is_empty())
}

/// Classical equivalence over `universe`.
pub fn equivalent(a: &Formula, b: &Formula, universe: &AtomUniverse) -> Result<bool> {
    Ok(models_of(a, universe)? == models_of(b, universe)?)
}
