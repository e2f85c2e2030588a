//! Propositional syntax, parsing and exhaustive model enumeration.

mod formula;
mod models;
mod parser;
mod universe;

pub use formula::{Formula, FormulaDisplay};
pub use models::{entails, equivalent, is_consistent, models_of, models_of_all, ModelSet};
pub use parser::{parse_formula, parse_formula_infer, parse_formula_with_aliases, parse_with};
pub use universe::{Atom, AtomUniverse, Interpretation, MAX_ATOMS};

pub(crate) use universe::is_identifier;
