//! The `.lpa` graph document:
//!
//! ```text
//! lpa-graph v1
//! # one loop at v, an edge into the sink w
//! v w
//! d: v -> v
//! e: v -> w
//! ```
//!
//! Statements are separated by newlines or `;`, and `#` starts a comment.
//! The first statement is the header. A statement `name: src -> dst`
//! declares an edge; any other statement declares the vertices it lists.

use std::collections::HashSet;

use super::{is_valid_name, parse_error, Cursor};
use crate::error::Result;
use crate::graph::Graph;

const HEADER: &str = "lpa-graph v1";

struct Statement<'a> {
    text: &'a str,
    line: usize,
    /// Character offset of `text` within its line.
    offset: usize,
}

fn statements(src: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (i, raw_line) in src.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for part in line.split(';') {
            let lead = part.chars().take_while(|c| c.is_whitespace()).count();
            let text = part.trim();
            if !text.is_empty() {
                out.push(Statement {
                    text,
                    line: i + 1,
                    offset: offset + lead,
                });
            }
            offset += part.chars().count() + 1;
        }
    }
    out
}

/// Parses an `.lpa` document. Errors carry the line and column of the
/// offending token.
pub fn parse_graph(src: &str) -> Result<Graph> {
    let stmts = statements(src);
    let Some(first) = stmts.first() else {
        return Err(parse_error(1, 1, format!("empty document; expected `{HEADER}`")));
    };
    if !first.text.split_whitespace().eq(HEADER.split(' ')) {
        return Err(parse_error(
            first.line,
            first.offset + 1,
            format!("expected the header `{HEADER}`"),
        ));
    }

    let mut seen: HashSet<String> = HashSet::new();
    let mut vertices: HashSet<String> = HashSet::new();
    let mut builder = Graph::builder();
    let mut edges = Vec::new();
    for stmt in &stmts[1..] {
        let mut cur = Cursor::at(stmt.text, stmt.line, stmt.offset);
        if stmt.text.contains(':') {
            let (name, col) = cur.word().ok_or_else(|| cur.error("expected an edge name"))?;
            check_name(&name, stmt.line, col, &mut seen)?;
            cur.expect(':')?;
            let src = cur.word().ok_or_else(|| cur.error("expected a source vertex"))?;
            if !cur.eat_str("->") {
                return Err(cur.error("expected `->`"));
            }
            let dst = cur.word().ok_or_else(|| cur.error("expected a range vertex"))?;
            if !cur.at_end() {
                return Err(cur.error("unexpected text after the edge declaration"));
            }
            edges.push((name, src, dst, stmt.line));
        } else {
            while let Some((name, col)) = cur.word() {
                check_name(&name, stmt.line, col, &mut seen)?;
                vertices.insert(name.clone());
                builder = builder.vertex(name);
            }
            if !cur.at_end() {
                return Err(cur.error("expected a vertex name"));
            }
        }
    }
    for (name, (src, src_col), (dst, dst_col), line) in edges {
        for (v, col) in [(&src, src_col), (&dst, dst_col)] {
            if !vertices.contains(v) {
                return Err(parse_error(line, col, format!("undeclared vertex `{v}`")));
            }
        }
        builder = builder.edge(name, src, dst);
    }
    builder.build()
}

fn check_name(name: &str, line: usize, column: usize, seen: &mut HashSet<String>) -> Result<()> {
    if !is_valid_name(name) {
        return Err(parse_error(line, column, format!("`{name}` is not a valid name")));
    }
    if !seen.insert(name.to_string()) {
        return Err(parse_error(line, column, format!("duplicate identifier `{name}`")));
    }
    Ok(())
}

/// Prints a graph in the `.lpa` format, vertices first.
pub fn format_graph(g: &Graph) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for v in g.vertices() {
        out.push_str(g.vertex_name(v));
        out.push('\n');
    }
    for e in g.edges() {
        out.push_str(&format!(
            "{}: {} -> {}\n",
            g.edge_name(e),
            g.vertex_name(g.src(e)),
            g.vertex_name(g.rng(e))
        ));
    }
    out
}
