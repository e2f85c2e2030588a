use std::fmt;

use super::universe::{AtomUniverse, Interpretation};

/// Propositional formula. Atoms are referenced by their index in the ambient
/// [`AtomUniverse`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(index: usize) -> Self {
        Formula::Atom(index)
    }

    pub fn literal(index: usize, positive: bool) -> Self {
        if positive {
            Formula::Atom(index)
        } else {
            Formula::Atom(index).not()
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Conjunction of literals describing exactly one interpretation.
    pub fn describing(w: Interpretation, atom_count: usize) -> Self {
        Formula::conjunction((0..atom_count).map(|k| Formula::literal(k, w.holds(k))))
    }

    pub fn eval(&self, w: Interpretation) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(k) => w.holds(*k),
            Formula::Not(a) => !a.eval(w),
            Formula::And(a, b) => a.eval(w) && b.eval(w),
            Formula::Or(a, b) => a.eval(w) || b.eval(w),
            Formula::Implies(a, b) => !a.eval(w) || b.eval(w),
            Formula::Iff(a, b) => a.eval(w) == b.eval(w),
        }
    }

    /// One past the largest atom index mentioned, or 0 for a constant formula.
    pub fn atom_bound(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Atom(k) => k + 1,
            Formula::Not(a) => a.atom_bound(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.atom_bound().max(b.atom_bound()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::True | Formula::False | Formula::Atom(_) => 6,
        }
    }

    /// Render with the concrete syntax accepted by the parser, using the
    /// fewest parentheses that reparse to the same tree.
    pub fn display<'a>(&'a self, universe: &'a AtomUniverse) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            universe,
        }
    }

    pub fn render(&self, universe: &AtomUniverse) -> String {
        self.display(universe).to_string()
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    universe: &'a AtomUniverse,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, phi: &Formula, min_prec: u8) -> fmt::Result {
        let parens = phi.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        let prec = phi.precedence();
        match phi {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Atom(k) => match self.universe.atoms().get(*k) {
                Some(atom) => f.write_str(atom.name())?,
                None => write!(f, "#{k}")?,
            },
            Formula::Not(a) => {
                f.write_str("!")?;
                self.write(f, a, prec)?;
            }
            // Left-associative: the right operand needs strictly tighter binding.
            Formula::And(a, b) => self.binary(f, a, " & ", b, prec, prec + 1)?,
            Formula::Or(a, b) => self.binary(f, a, " | ", b, prec, prec + 1)?,
            // Right-associative.
            Formula::Implies(a, b) => self.binary(f, a, " -> ", b, prec + 1, prec)?,
            // Non-associative.
            Formula::Iff(a, b) => self.binary(f, a, " <-> ", b, prec + 1, prec + 1)?,
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }

    fn binary(
        &self,
        f: &mut fmt::Formatter<'_>,
        a: &Formula,
        op: &str,
        b: &Formula,
        left: u8,
        right: u8,
    ) -> fmt::Result {
        self.write(f, a, left)?;
        f.write_str(op)?;
        self.write(f, b, right)
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 0)
    }
}
