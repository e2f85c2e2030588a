use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of atoms: model enumeration is exhaustive over `2^n`
/// interpretations.
pub const MAX_ATOMS: usize = 24;

/// A propositional variable name: `[A-Za-z_][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Atom(name))
        } else {
            Err(Error::InvalidInput(format!(
                "`{name}` is not a valid atom name"
            )))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered, duplicate-free set of atoms. Declaration order fixes the bit
/// position of each atom in an [`Interpretation`] index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AtomUniverse {
    atoms: Vec<Atom>,
}

impl AtomUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut universe = Self::new();
        for name in names {
            let atom = Atom::new(name)?;
            if universe.index_of(atom.name()).is_some() {
                return Err(Error::DuplicateAtom(atom.0));
            }
            universe.push(atom)?;
        }
        Ok(universe)
    }

    fn push(&mut self, atom: Atom) -> Result<usize> {
        if self.atoms.len() == MAX_ATOMS {
            return Err(Error::UniverseTooLarge(MAX_ATOMS + 1));
        }
        self.atoms.push(atom);
        Ok(self.atoms.len() - 1)
    }

    /// Index of `name`, appending it when unseen.
    pub fn intern(&mut self, name: &str) -> Result<usize> {
        match self.index_of(name) {
            Some(i) => Ok(i),
            None => self.push(Atom::new(name)?),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.name() == name)
    }

    pub fn atom(&self, index: usize) -> &Atom {
        &self.atoms[index]
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Number of interpretations, `2^n`.
    pub fn interpretation_count(&self) -> usize {
        1usize << self.atoms.len()
    }

    pub fn interpretations(&self) -> impl Iterator<Item = Interpretation> {
        (0..self.interpretation_count() as u32).map(Interpretation)
    }

    /// Literal-list rendering in declaration order, e.g. `k t ¬c r`.
    pub fn render(&self, w: Interpretation) -> String {
        let mut out = String::new();
        for (k, atom) in self.atoms.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            if !w.holds(k) {
                out.push('¬');
            }
            out.push_str(atom.name());
        }
        out
    }

    /// Inverse of [`AtomUniverse::render`]. Accepts `¬`, `!` or `-` as the
    /// negation marker; every atom must appear exactly once.
    pub fn parse_interpretation(&self, text: &str) -> Result<Interpretation> {
        let mut index = 0u32;
        let mut seen = vec![false; self.len()];
        for literal in text.split_whitespace() {
            let (positive, name) = match literal
                .strip_prefix('¬')
                .or_else(|| literal.strip_prefix('!'))
                .or_else(|| literal.strip_prefix('-'))
            {
                Some(rest) => (false, rest),
                None => (true, literal),
            };
            let k = self.index_of(name).ok_or_else(|| Error::UnknownAtom {
                name: name.to_string(),
                line: 0,
                column: 0,
            })?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidInput(format!("atom `{name}` listed twice")));
            }
            if positive {
                index |= 1 << k;
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidInput(format!(
                "interpretation does not mention `{}`",
                self.atoms[k]
            )));
        }
        Ok(Interpretation(index))
    }
}

/// A total truth assignment, encoded canonically: bit `k` of the index is the
/// value of the `k`-th declared atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(pub u32);

impl Interpretation {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn holds(self, atom: usize) -> bool {
        (self.0 >> atom) & 1 == 1
    }
}
