//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! iff     := implies ( "<->" implies )?        non-associative
//! implies := or ( "->" implies )?              right-associative
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | primary
//! primary := IDENT | "true" | "false" | "(" iff ")"
//! ```

use std::collections::BTreeMap;

use super::formula::Formula;
use super::universe::AtomUniverse;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(column: usize, expected: &[&str], found: String) -> Error {
    Error::Syntax {
        line: 0,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, width) = match c {
            '!' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                (Tok::DoubleArrow, 3)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_')
                {
                    end += 1;
                }
                let word: String = chars[start..end].iter().collect();
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                (tok, end - start)
            }
            other => {
                return Err(syntax(
                    column,
                    &["atom", "`true`", "`false`", "`!`", "`(`", "operator"],
                    format!("character `{other}`"),
                ))
            }
        };
        out.push((tok, column));
        i += width;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'r> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    resolve: &'r mut dyn FnMut(&str, usize) -> Result<Formula>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(syntax(self.column(), expected, self.peek().describe()))
    }

    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.implies()?;
        if *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.implies()?;
            if *self.peek() == Tok::DoubleArrow {
                // `a <-> b <-> c` is ambiguous; parentheses are mandatory.
                return self.fail(&["`)`", "end of input"]);
            }
            return Ok(lhs.iff(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(self.unary()?.not());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                let column = self.column();
                self.bump();
                (self.resolve)(&name, column)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(&["`)`", "operator"]);
                }
                self.bump();
                Ok(inner)
            }
            _ => self.fail(&["atom", "`true`", "`false`", "`!`", "`(`"]),
        }
    }
}

/// Parse with a caller-supplied identifier resolver. The resolver receives the
/// identifier and its 1-based column.
pub fn parse_with(
    text: &str,
    resolve: &mut dyn FnMut(&str, usize) -> Result<Formula>,
) -> Result<Formula> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        resolve,
    };
    let phi = parser.iff()?;
    if *parser.peek() != Tok::End {
        return parser.fail(&["operator", "end of input"]);
    }
    Ok(phi)
}

/// Parse against a fixed universe; unknown identifiers are rejected.
pub fn parse_formula(text: &str, universe: &AtomUniverse) -> Result<Formula> {
    parse_with(text, &mut |name, column| {
        universe
            .index_of(name)
            .map(Formula::Atom)
            .ok_or_else(|| Error::UnknownAtom {
                name: name.to_string(),
                line: 0,
                column,
            })
    })
}

/// Parse, appending unseen identifiers to `universe` in order of appearance.
pub fn parse_formula_infer(text: &str, universe: &mut AtomUniverse) -> Result<Formula> {
    parse_with(text, &mut |name, _| {
        universe.intern(name).map(Formula::Atom)
    })
}

/// Parse against a fixed universe, expanding identifiers bound in `aliases`
/// before atom lookup.
pub fn parse_formula_with_aliases(
    text: &str,
    universe: &AtomUniverse,
    aliases: &BTreeMap<String, Formula>,
) -> Result<Formula> {
    parse_with(text, &mut |name, column| {
        if let Some(phi) = aliases.get(name) {
            return Ok(phi.clone());
        }
        universe
            .index_of(name)
            .map(Formula::Atom)
            .ok_or_else(|| Error::UnknownAtom {
                name: name.to_string(),
                line: 0,
                column,
            })
    })
}
