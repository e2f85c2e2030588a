//! Line-oriented knowledge-base format.
//!
//! ```text
//! # comment
//! atoms: k t c r              optional; fixes atom order and rejects others
//! strict: !k -> !c
//! default: t ~> c
//! norm default: !k ~> !t      `norm` marks a rule as a norm
//! norm strict: e -> h
//! let phi3 = t & !k           query alias, usable in later lines
//! ```
//!
//! Without an `atoms:` line, atoms are numbered in order of first mention.

use std::collections::BTreeMap;

use crate::defaults::{DefaultRule, KnowledgeBase, StrictRule};
use crate::error::{Error, Result};
use crate::logic::{is_identifier, parse_with, AtomUniverse, Formula};

#[derive(Debug, Clone)]
pub struct KbDocument {
    pub kb: KnowledgeBase,
    pub aliases: BTreeMap<String, Formula>,
}

impl KbDocument {
    /// Parse a query formula against this document: aliases first, then atoms.
    pub fn formula(&self, text: &str) -> Result<Formula> {
        crate::logic::parse_formula_with_aliases(text, self.kb.universe(), &self.aliases)
    }
}

enum Entry<'a> {
    Atoms(Vec<(&'a str, usize)>),
    Strict {
        text: &'a str,
        column: usize,
        norm: bool,
    },
    Default {
        antecedent: (&'a str, usize),
        consequent: (&'a str, usize),
        norm: bool,
    },
    Let {
        name: &'a str,
        text: &'a str,
        column: usize,
    },
}

struct Line<'a> {
    number: usize,
    entry: Entry<'a>,
}

fn column_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

fn line_error(number: usize, column: usize, expected: &[&str], found: &str) -> Error {
    Error::Syntax {
        line: number,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.to_string(),
    }
}

fn strip_keyword<'a>(s: &'a str, keyword: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(keyword)?;
    if rest.is_empty() || rest.starts_with(char::is_whitespace) || keyword.ends_with(':') {
        Some(rest)
    } else {
        None
    }
}

fn classify(number: usize, raw: &str) -> Result<Option<Line<'_>>> {
    let content = match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    };
    let body = content.trim();
    if body.is_empty() {
        return Ok(None);
    }
    let col = |part: &str| column_of(raw, part);

    if let Some(rest) = strip_keyword(body, "atoms:") {
        let names = rest.split_whitespace().map(|n| (n, col(n))).collect();
        return Ok(Some(Line {
            number,
            entry: Entry::Atoms(names),
        }));
    }
    if let Some(rest) = strip_keyword(body, "let") {
        let rest = rest.trim_start();
        let Some(eq) = rest.find('=') else {
            return Err(line_error(
                number,
                col(rest) + rest.chars().count(),
                &["`=`"],
                "end of line",
            ));
        };
        let name = rest[..eq].trim();
        if !is_identifier(name) {
            return Err(line_error(
                number,
                col(rest),
                &["alias name"],
                &format!("`{name}`"),
            ));
        }
        let text = &rest[eq + 1..];
        return Ok(Some(Line {
            number,
            entry: Entry::Let {
                name,
                text,
                column: col(text),
            },
        }));
    }

    let (norm, rule) = match strip_keyword(body, "norm") {
        Some(rest) => (true, rest.trim_start()),
        None => (false, body),
    };
    if let Some(text) = strip_keyword(rule, "strict:") {
        return Ok(Some(Line {
            number,
            entry: Entry::Strict {
                text,
                column: col(text),
                norm,
            },
        }));
    }
    if let Some(text) = strip_keyword(rule, "default:") {
        let Some(split) = text.find("~>") else {
            let end = col(text) + text.chars().count();
            return Err(line_error(number, end, &["`~>`"], "end of line"));
        };
        let (lhs, rhs) = (&text[..split], &text[split + 2..]);
        if let Some(extra) = rhs.find("~>") {
            return Err(line_error(number, col(&rhs[extra..]), &["formula"], "`~>`"));
        }
        return Ok(Some(Line {
            number,
            entry: Entry::Default {
                antecedent: (lhs, col(lhs)),
                consequent: (rhs, col(rhs)),
                norm,
            },
        }));
    }
    let expected: &[&str] = if norm {
        &["`strict:`", "`default:`"]
    } else {
        &["`atoms:`", "`strict:`", "`default:`", "`norm`", "`let`"]
    };
    let word = rule.split_whitespace().next().unwrap_or(rule);
    Err(line_error(
        number,
        col(rule),
        expected,
        &format!("`{word}`"),
    ))
}

pub fn parse_kb(text: &str) -> Result<KbDocument> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(line) = classify(i + 1, raw)? {
            lines.push(line);
        }
    }

    let mut universe = AtomUniverse::new();
    let mut fixed = false;
    for line in &lines {
        if let Entry::Atoms(names) = &line.entry {
            if fixed {
                return Err(line_error(
                    line.number,
                    1,
                    &["at most one `atoms:` line"],
                    "`atoms:`",
                ));
            }
            fixed = true;
            for &(name, column) in names {
                if !is_identifier(name) {
                    return Err(line_error(
                        line.number,
                        column,
                        &["atom"],
                        &format!("`{name}`"),
                    ));
                }
                if universe.index_of(name).is_some() {
                    return Err(Error::DuplicateAtom(name.to_string()));
                }
                universe.intern(name)?;
            }
        }
    }

    let mut aliases: BTreeMap<String, Formula> = BTreeMap::new();
    let mut strict = Vec::new();
    let mut defaults = Vec::new();
    for line in &lines {
        let number = line.number;
        let parse = |universe: &mut AtomUniverse,
                     text: &str,
                     column: usize,
                     aliases: &BTreeMap<String, Formula>| {
            parse_rule_formula(text, universe, fixed, aliases)
                .map_err(|e| e.located(number, column - 1))
        };
        match &line.entry {
            Entry::Atoms(_) => {}
            Entry::Strict { text, column, norm } => {
                let formula = parse(&mut universe, text, *column, &aliases)?;
                strict.push(StrictRule {
                    formula,
                    is_norm: *norm,
                });
            }
            Entry::Default {
                antecedent,
                consequent,
                norm,
            } => {
                let a = parse(&mut universe, antecedent.0, antecedent.1, &aliases)?;
                let c = parse(&mut universe, consequent.0, consequent.1, &aliases)?;
                defaults.push(DefaultRule {
                    antecedent: a,
                    consequent: c,
                    is_norm: *norm,
                });
            }
            Entry::Let { name, text, column } => {
                let phi = parse(&mut universe, text, *column, &aliases)?;
                if universe.index_of(name).is_some() {
                    return Err(Error::InvalidInput(format!(
                        "line {number}: alias `{name}` shadows an atom"
                    )));
                }
                if aliases.insert(name.to_string(), phi).is_some() {
                    return Err(Error::InvalidInput(format!(
                        "line {number}: alias `{name}` defined twice"
                    )));
                }
            }
        }
    }

    let kb = KnowledgeBase::new(universe, strict, defaults)?;
    Ok(KbDocument { kb, aliases })
}

fn parse_rule_formula(
    text: &str,
    universe: &mut AtomUniverse,
    fixed: bool,
    aliases: &BTreeMap<String, Formula>,
) -> Result<Formula> {
    parse_with(text, &mut |name, column| {
        if let Some(phi) = aliases.get(name) {
            return Ok(phi.clone());
        }
        if fixed {
            universe
                .index_of(name)
                .map(Formula::Atom)
                .ok_or_else(|| Error::UnknownAtom {
                    name: name.to_string(),
                    line: 0,
                    column,
                })
        } else {
            universe.intern(name).map(Formula::Atom)
        }
    })
}

/// Inverse of [`parse_kb`] up to whitespace, comments and alias nesting.
pub fn render_kb(doc: &KbDocument) -> String {
    let kb = &doc.kb;
    let u = kb.universe();
    let mut out = String::new();
    let names: Vec<&str> = u.atoms().iter().map(|a| a.name()).collect();
    out.push_str(&format!("atoms: {}\n", names.join(" ")));
    for (name, phi) in &doc.aliases {
        out.push_str(&format!("let {name} = {}\n", phi.render(u)));
    }
    for rule in kb.strict() {
        let prefix = if rule.is_norm { "norm " } else { "" };
        out.push_str(&format!("{prefix}strict: {}\n", rule.formula.render(u)));
    }
    for rule in kb.defaults() {
        let prefix = if rule.is_norm { "norm " } else { "" };
        out.push_str(&format!("{prefix}default: {}\n", rule.render(u)));
    }
    out
}
