//! Algebra expressions and Chen module elements.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := rational? factor+ | rational
//! factor := name '*'?
//! ```
//!
//! Factors are multiplied left to right; a bare rational is a multiple of
//! the identity. A star applies to the one name before it, so `(ef)*` is
//! written `f* e*`.

use num_traits::{One, Signed, Zero};

use super::spec::{format_spec, spec_at};
use super::{segment, Cursor};
use crate::algebra::{normalize, AlgebraElement, Monomial, RawElement};
use crate::chen::ChenElement;
use crate::error::Result;
use crate::graph::{FinPath, Graph, Name};
use crate::Scalar;

/// A parsed and normalized expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprParse {
    pub element: AlgebraElement,
    /// One message per term whose factors do not compose; those terms
    /// contribute zero.
    pub warnings: Vec<String>,
}

pub fn parse_expr(g: &Graph, src: &str) -> Result<ExprParse> {
    let (raw, warnings) = parse_expr_raw(g, src)?;
    Ok(ExprParse {
        element: normalize(g, raw),
        warnings,
    })
}

/// Parses without normalizing: each term becomes one monomial in the free
/// path calculus.
pub fn parse_expr_raw(g: &Graph, src: &str) -> Result<(RawElement, Vec<String>)> {
    let mut cur = Cursor::new(src);
    let mut raw = RawElement::new(g);
    let mut warnings = Vec::new();
    let mut sign = leading_sign(&mut cur);
    loop {
        let column = {
            cur.skip_ws();
            cur.column()
        };
        let coeff = cur.rational()?;
        let factors = factors(g, &mut cur)?;
        let coeff = match coeff {
            Some(c) => c,
            None if factors.is_empty() => return Err(cur.error("expected a term")),
            None => Scalar::one(),
        };
        let coeff = if sign { -coeff } else { coeff };
        if factors.is_empty() {
            for v in g.vertices() {
                raw.push(coeff.clone(), Monomial::vertex(v));
            }
        } else {
            let composes = factors.windows(2).all(|w| w[0].range() == w[1].source());
            if !composes {
                warnings.push(format!(
                    "column {column}: factors do not compose; the term is zero"
                ));
            } else {
                let mut iter = factors.into_iter();
                let first = iter.next().expect("nonempty");
                if let Some(m) = iter.try_fold(first, |acc, m| acc.times(&m)) {
                    raw.push(coeff, m);
                }
            }
        }
        if cur.eat('+') {
            sign = false;
        } else if cur.eat('-') {
            sign = true;
        } else if cur.at_end() {
            break;
        } else {
            return Err(cur.error("expected `+`, `-` or the end of the expression"));
        }
    }
    Ok((raw, warnings))
}

/// Consumes an optional leading sign; true for minus.
fn leading_sign(cur: &mut Cursor) -> bool {
    if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    }
}

fn factors(g: &Graph, cur: &mut Cursor) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    while let Some((word, column)) = cur.word() {
        let parts = segment(g, &word)
            .ok_or_else(|| cur.error_at(column, format!("unknown identifier `{word}`")))?;
        let starred = cur.eat('*');
        let last = parts.len() - 1;
        for (i, (name, _)) in parts.into_iter().enumerate() {
            out.push(match name {
                Name::Vertex(v) => Monomial::vertex(v),
                Name::Edge(e) if starred && i == last => Monomial::ghost(FinPath::edge(g, e)),
                Name::Edge(e) => Monomial::path(FinPath::edge(g, e)),
            });
        }
    }
    Ok(out)
}

/// Parses `coef [spec] ± coef [spec] ...`. Every spec must lie in one
/// tail-equivalence class.
pub fn parse_chen(g: &Graph, src: &str) -> Result<ChenElement> {
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    let mut sign = leading_sign(&mut cur);
    loop {
        let coeff = cur.rational()?.unwrap_or_else(Scalar::one);
        cur.expect('[')?;
        let spec = spec_at(g, &mut cur)?;
        cur.expect(']')?;
        terms.push((if sign { -coeff } else { coeff }, spec));
        if cur.eat('+') {
            sign = false;
        } else if cur.eat('-') {
            sign = true;
        } else if cur.at_end() {
            break;
        } else {
            return Err(cur.error("expected `+`, `-` or the end of the element"));
        }
    }
    let class = terms[0].1.clone();
    ChenElement::from_terms(g, &class, terms)
}

fn format_monomial(g: &Graph, m: &Monomial) -> String {
    let mut factors: Vec<String> = m
        .alpha()
        .edges()
        .iter()
        .map(|&e| g.edge_name(e).to_string())
        .collect();
    factors.extend(
        m.beta()
            .edges()
            .iter()
            .rev()
            .map(|&e| format!("{}*", g.edge_name(e))),
    );
    if factors.is_empty() {
        g.vertex_name(m.source()).to_string()
    } else {
        factors.join(" ")
    }
}

/// Writes `Σ cᵢ xᵢ` with signs pulled out; the first term carries a bare
/// `-` when negative.
fn format_sum<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        if c.is_zero() {
            continue;
        }
        let sep = match (out.is_empty(), c.is_negative()) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        out.push_str(sep);
        let magnitude = c.abs();
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude} "));
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_element(g: &Graph, a: &AlgebraElement) -> String {
    format_sum(a.terms().map(|(m, c)| (c, format_monomial(g, m))))
}

pub fn format_chen(g: &Graph, t: &ChenElement) -> String {
    if t.is_zero() {
        return format!("0 [{}]", format_spec(g, t.class()));
    }
    format_sum(t.terms().map(|(p, c)| (c, format!("[{}]", format_spec(g, p)))))
}
