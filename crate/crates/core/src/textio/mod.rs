//! Text formats: `.lpa` graph documents, algebra expressions, Chen module
//! elements and infinite-path specs. Every parser has a printer, and
//! parsing what was printed gives back the same value.
//!
//! Identifiers are matched against the names of the loaded graph, so a run
//! of letters such as `ef` reads as the product `e f` when the graph has
//! edges `e` and `f` but no name `ef`.

mod expr;
mod graph_doc;
mod spec;

pub use expr::{format_chen, format_element, parse_chen, parse_expr, parse_expr_raw, ExprParse};
pub use graph_doc::{format_graph, parse_graph};
pub use spec::{format_path, format_spec, parse_path, parse_spec};

use crate::error::{Error, Result};
use crate::graph::{Graph, Name};

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Whether `name` can be written in the text formats.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A single-line scanner with 1-based character columns.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
}

impl Cursor {
    fn new(src: &str) -> Cursor {
        Cursor::at(src, 1, 0)
    }

    /// A cursor whose columns are shifted by `offset` characters.
    fn at(src: &str, line: usize, offset: usize) -> Cursor {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            offset,
        }
    }

    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.column(), message)
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> Error {
        parse_error(self.line, column, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    /// A maximal run of identifier characters, with its starting column.
    fn word(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        if !self.peek().is_some_and(is_ident_start) {
            return None;
        }
        let column = self.column();
        let start = self.pos;
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        Some((self.chars[start..self.pos].iter().collect(), column))
    }

    /// An unsigned rational `p` or `p/q`.
    fn rational(&mut self) -> Result<Option<crate::Scalar>> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let column = self.column();
        let numer = self.digits();
        let denom = if self.peek() == Some('/') {
            self.pos += 1;
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("expected a denominator"));
            }
            self.digits()
        } else {
            "1".to_string()
        };
        let numer: num_bigint::BigInt = numer.parse().expect("digits");
        let denom: num_bigint::BigInt = denom.parse().expect("digits");
        if num_traits::Zero::is_zero(&denom) {
            return Err(self.error_at(column, "zero denominator"));
        }
        Ok(Some(crate::Scalar::new(numer, denom)))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

/// Splits a run of identifier characters into graph names, preferring
/// longer names first and backtracking when a split dead-ends.
fn segment(g: &Graph, word: &str) -> Option<Vec<(Name, usize)>> {
    fn go(g: &Graph, chars: &[char], at: usize, out: &mut Vec<(Name, usize)>) -> bool {
        if at == chars.len() {
            return true;
        }
        for end in (at + 1..=chars.len()).rev() {
            let candidate: String = chars[at..end].iter().collect();
            if let Some(name) = g.lookup(&candidate) {
                out.push((name, at));
                if go(g, chars, end, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::new();
    go(g, &chars, 0, &mut out).then_some(out)
}
