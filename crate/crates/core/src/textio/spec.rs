//! Infinite-path specs:
//!
//! ```text
//! sink: <path>? -> <vertex>
//! rat:  <path>? (<path>)^inf
//! irr:  <path>? | {<edge>, <edge>, ...}
//! ```
//!
//! A path is a run of edge names, or a single vertex name for the empty
//! path there. An `irr:` spec with no prefix starts at the walk's hub.

use std::collections::BTreeSet;

use super::{segment, Cursor};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FinPath, Graph, Name};
use crate::omega::{Concretizer, OmegaPathSpec};

/// Parses one spec. Shapes are checked but nothing is canonicalized.
pub fn parse_spec(g: &Graph, src: &str) -> Result<OmegaPathSpec> {
    let mut cur = Cursor::new(src);
    let spec = spec_at(g, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected text after the spec"));
    }
    Ok(spec)
}

/// Parses a finite path: edge names, or one vertex name.
pub fn parse_path(g: &Graph, src: &str) -> Result<FinPath> {
    let mut cur = Cursor::new(src);
    let column = {
        cur.skip_ws();
        cur.column()
    };
    let path = path_at(g, &mut cur)?.ok_or_else(|| cur.error_at(column, "expected a path"))?;
    if !cur.at_end() {
        return Err(cur.error("unexpected text after the path"));
    }
    Ok(path)
}

pub(super) fn spec_at(g: &Graph, cur: &mut Cursor) -> Result<OmegaPathSpec> {
    let (kind, column) = cur.word().ok_or_else(|| cur.error("expected `sink:`, `rat:` or `irr:`"))?;
    cur.expect(':')?;
    match kind.as_str() {
        "sink" => {
            let prefix = path_at(g, cur)?;
            if !cur.eat_str("->") {
                return Err(cur.error("expected `->`"));
            }
            let w = vertex_at(g, cur)?;
            let prefix = match prefix {
                Some(p) if p.rng() != w => {
                    return Err(Error::MalformedSpec(format!(
                        "the prefix ends at `{}`, not `{}`",
                        g.vertex_name(p.rng()),
                        g.vertex_name(w)
                    )))
                }
                Some(p) => p,
                None => FinPath::vertex(w),
            };
            OmegaPathSpec::sink(g, prefix)
        }
        "rat" => {
            let prefix = path_at(g, cur)?;
            cur.expect('(')?;
            let column = cur.column();
            let cycle = path_at(g, cur)?.ok_or_else(|| cur.error_at(column, "expected a cycle"))?;
            cur.expect(')')?;
            if !cur.eat_str("^inf") {
                return Err(cur.error("expected `^inf`"));
            }
            let prefix = prefix.unwrap_or_else(|| FinPath::vertex(cycle.src()));
            OmegaPathSpec::lasso(g, prefix, cycle)
        }
        "irr" => {
            let prefix = path_at(g, cur)?;
            cur.expect('|')?;
            cur.expect('{')?;
            let mut recurrent = BTreeSet::new();
            loop {
                recurrent.insert(edge_at(g, cur)?);
                if !cur.eat(',') {
                    break;
                }
            }
            cur.expect('}')?;
            let prefix = match prefix {
                Some(p) => p,
                None => FinPath::vertex(Concretizer::new(g, &recurrent)?.hub()),
            };
            OmegaPathSpec::irrational(g, prefix, recurrent)
        }
        other => Err(cur.error_at(column, format!("unknown spec kind `{other}`"))),
    }
}

/// A possibly absent path; stops at the first character that cannot start
/// a name.
fn path_at(g: &Graph, cur: &mut Cursor) -> Result<Option<FinPath>> {
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut vertex = None;
    while let Some((word, column)) = cur.word() {
        let parts = segment(g, &word)
            .ok_or_else(|| cur.error_at(column, format!("unknown identifier `{word}`")))?;
        for (name, offset) in parts {
            match name {
                Name::Edge(e) if vertex.is_none() => edges.push(e),
                Name::Vertex(v) if vertex.is_none() && edges.is_empty() => vertex = Some(v),
                _ => {
                    return Err(cur.error_at(
                        column + offset,
                        "a path is either edge names or a single vertex name",
                    ))
                }
            }
        }
    }
    match vertex {
        Some(v) => Ok(Some(FinPath::vertex(v))),
        None if edges.is_empty() => Ok(None),
        None => FinPath::from_edge_seq(g, edges).map(Some),
    }
}

fn vertex_at(g: &Graph, cur: &mut Cursor) -> Result<crate::graph::VertexId> {
    let (word, column) = cur.word().ok_or_else(|| cur.error("expected a vertex name"))?;
    match g.lookup(&word) {
        Some(Name::Vertex(v)) => Ok(v),
        _ => Err(cur.error_at(column, format!("`{word}` is not a vertex"))),
    }
}

fn edge_at(g: &Graph, cur: &mut Cursor) -> Result<EdgeId> {
    let (word, column) = cur.word().ok_or_else(|| cur.error("expected an edge name"))?;
    match g.lookup(&word) {
        Some(Name::Edge(e)) => Ok(e),
        _ => Err(cur.error_at(column, format!("`{word}` is not an edge"))),
    }
}

/// Edge names separated by spaces, or the vertex name of an empty path.
pub fn format_path(g: &Graph, p: &FinPath) -> String {
    if p.is_empty() {
        return g.vertex_name(p.src()).to_string();
    }
    edge_names(g, p)
}

fn edge_names(g: &Graph, p: &FinPath) -> String {
    p.edges()
        .iter()
        .map(|&e| g.edge_name(e))
        .collect::<Vec<_>>()
        .join(" ")
}

fn prefix_part(g: &Graph, p: &FinPath) -> String {
    if p.is_empty() {
        String::new()
    } else {
        format!("{} ", edge_names(g, p))
    }
}

pub fn format_spec(g: &Graph, p: &OmegaPathSpec) -> String {
    match p {
        OmegaPathSpec::Sink { prefix } => {
            format!("sink: {}-> {}", prefix_part(g, prefix), g.vertex_name(prefix.rng()))
        }
        OmegaPathSpec::Lasso { prefix, cycle } => {
            format!("rat: {}({})^inf", prefix_part(g, prefix), edge_names(g, cycle))
        }
        OmegaPathSpec::Irrational { prefix, recurrent } => {
            let hub = Concretizer::new(g, recurrent).map(|c| c.hub()).ok();
            let lead = if prefix.is_empty() && hub != Some(prefix.src()) {
                format!("{} ", g.vertex_name(prefix.src()))
            } else {
                prefix_part(g, prefix)
            };
            let set: Vec<&str> = recurrent.iter().map(|&e| g.edge_name(e)).collect();
            format!("irr: {lead}| {{{}}}", set.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_graph;

    fn round_trip(g: &Graph, src: &str) -> OmegaPathSpec {
        let p = parse_spec(g, src).unwrap();
        let printed = format_spec(g, &p);
        assert_eq!(parse_spec(g, &printed).unwrap(), p, "{printed}");
        p
    }

    #[test]
    fn shapes() {
        let g = parse_graph("lpa-graph v1; u v w; a: u -> v; d: v -> v; b: v -> w").unwrap();
        let p = round_trip(&g, "sink: a b -> w");
        assert_eq!(format_spec(&g, &p), "sink: a b -> w");
        let p = round_trip(&g, "sink: -> w");
        assert_eq!(p.prefix().len(), 0);
        let p = round_trip(&g, "rat: a (d)^inf");
        assert_eq!(format_spec(&g, &p), "rat: a (d)^inf");
        round_trip(&g, "rat:(d)^inf");
    }

    #[test]
    fn irrational_prefixes() {
        let g = parse_graph("lpa-graph v1; x v; y: x -> v; e: v -> v; f: v -> v").unwrap();
        let p = round_trip(&g, "irr: | {e,f}");
        assert_eq!(format_spec(&g, &p), "irr: | {e, f}");
        let p = round_trip(&g, "irr: y | {e, f}");
        assert_eq!(p.prefix().len(), 1);
    }

    #[test]
    fn juxtaposed_edges_are_segmented() {
        let g = parse_graph("lpa-graph v1; v; e: v -> v; f: v -> v").unwrap();
        let p = parse_spec(&g, "rat: (ef)^inf").unwrap();
        assert_eq!(format_spec(&g, &p), "rat: (e f)^inf");
    }

    #[test]
    fn errors() {
        let g = parse_graph("lpa-graph v1; v w; d: v -> v; b: v -> w").unwrap();
        assert!(matches!(parse_spec(&g, "rat: (q)^inf"), Err(Error::Parse { column: 7, .. })));
        assert!(matches!(parse_spec(&g, "loop: (d)^inf"), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_spec(&g, "rat: (b)^inf"), Err(Error::NotClosed)));
        assert!(matches!(parse_spec(&g, "sink: -> v"), Err(Error::MalformedSpec(_))));
        assert_eq!(format_path(&g, &parse_path(&g, "v").unwrap()), "v");
        assert_eq!(format_path(&g, &parse_path(&g, "d d b").unwrap()), "d d b");
    }
}
