//! Finite directed multigraphs and the path primitives the rest of the crate
//! is built on.
//!
//! Vertices and edges are identified by dense indices handed out in
//! declaration order, so every iteration over a [`Graph`] is deterministic.
//! Parallel edges and loops are allowed; an edge is identified by its id,
//! never by its endpoints.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::Serialize;

use crate::error::{Error, Result};

static NEXT_GRAPH_TAG: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Identity token of a built graph. Clones share the tag; two separately
/// built graphs never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphTag(u64);

#[derive(Debug, Clone)]
struct EdgeData {
    name: String,
    src: VertexId,
    rng: VertexId,
}

/// A finite directed multigraph `(E⁰, E¹, s, r)`.
#[derive(Debug, Clone)]
pub struct Graph {
    tag: GraphTag,
    vertex_names: Vec<String>,
    edges: Vec<EdgeData>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    names: HashMap<String, Name>,
}

/// What an identifier in a graph refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Name {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertex_names: Vec<String>,
    edges: Vec<(String, String, String)>,
}

impl GraphBuilder {
    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertex_names.push(name.into());
        self
    }

    pub fn vertices<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertex_names.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        dst: impl Into<String>,
    ) -> Self {
        self.edges.push((name.into(), src.into(), dst.into()));
        self
    }

    pub fn build(self) -> Result<Graph> {
        let mut names = HashMap::new();
        for (i, v) in self.vertex_names.iter().enumerate() {
            if names.insert(v.clone(), Name::Vertex(VertexId(i as u32))).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let nv = self.vertex_names.len();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (i, (name, src, dst)) in self.edges.into_iter().enumerate() {
            let id = EdgeId(i as u32);
            let lookup = |n: &str| match names.get(n) {
                Some(Name::Vertex(v)) => Ok(*v),
                _ => Err(Error::UnknownVertex(n.to_string())),
            };
            let src = lookup(&src)?;
            let rng = lookup(&dst)?;
            if names.insert(name.clone(), Name::Edge(id)).is_some() {
                return Err(Error::DuplicateId(name));
            }
            out_edges[src.index()].push(id);
            in_edges[rng.index()].push(id);
            edges.push(EdgeData { name, src, rng });
        }
        Ok(Graph {
            tag: GraphTag(NEXT_GRAPH_TAG.fetch_add(1, AtomicOrdering::Relaxed)),
            vertex_names: self.vertex_names,
            edges,
            out_edges,
            in_edges,
            names,
        })
    }
}

/// Out-degree classification of a vertex. Finite graphs have no infinite
/// emitters, so every non-sink is regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Sink,
    Regular(usize),
}

/// Why a vertex fails to be a line point. Either witness may be present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePointCertificate {
    LinePoint,
    NotLinePoint {
        cycle: Option<FinPath>,
        branching: Option<VertexId>,
    },
}

impl LinePointCertificate {
    pub fn is_line_point(&self) -> bool {
        matches!(self, LinePointCertificate::LinePoint)
    }
}

/// A closed path reported by [`Graph::simple_closed_paths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPath {
    pub path: FinPath,
    /// Set on the rotation with the lexicographically least edge-id sequence.
    pub canonical: bool,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn lookup(&self, name: &str) -> Option<Name> {
        self.names.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        match self.names.get(name) {
            Some(Name::Vertex(v)) => Ok(*v),
            _ => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        match self.names.get(name) {
            Some(Name::Edge(e)) => Ok(*e),
            _ => Err(Error::UnknownEdge(name.to_string())),
        }
    }

    /// All identifiers, vertices first, each group in declaration order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vertex_names
            .iter()
            .map(String::as_str)
            .chain(self.edges.iter().map(|e| e.name.as_str()))
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].src
    }

    pub fn rng(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].rng
    }

    /// `s⁻¹(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    pub fn sinks(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.is_sink(v))
    }

    /// The out-edge with least id at a regular vertex; it is the edge that
    /// the normal form eliminates from `ee*` terms.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edges[v.index()].first().copied()
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    pub fn classify_vertex(&self, v: VertexId) -> Result<VertexKind> {
        self.check_vertex(v)?;
        Ok(match self.out_edges[v.index()].len() {
            0 => VertexKind::Sink,
            n => VertexKind::Regular(n),
        })
    }

    /// The exits `Xᵢ(β)`: edges leaving `s(e_{i+1})` other than `e_{i+1}`.
    pub fn exits(&self, beta: &FinPath, i: usize) -> Result<Vec<EdgeId>> {
        let Some(&next) = beta.edges().get(i) else {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: beta.len(),
            });
        };
        Ok(self
            .out_edges(self.src(next))
            .iter()
            .copied()
            .filter(|&f| f != next)
            .collect())
    }

    /// Vertices reachable from `from` by a path of length ≥ 0.
    pub fn reachable_from(&self, from: VertexId) -> BTreeSet<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([from]);
        seen[from.index()] = true;
        while let Some(x) = queue.pop_front() {
            for &e in self.out_edges(x) {
                let y = self.rng(e);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        self.vertices().filter(|v| seen[v.index()]).collect()
    }

    /// Vertices from which some vertex of `targets` is reachable.
    pub fn reaching(&self, targets: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<VertexId> = targets.iter().copied().collect();
        for t in targets {
            seen[t.index()] = true;
        }
        while let Some(y) = queue.pop_front() {
            for &e in self.in_edges(y) {
                let x = self.src(e);
                if !seen[x.index()] {
                    seen[x.index()] = true;
                    queue.push_back(x);
                }
            }
        }
        self.vertices().filter(|v| seen[v.index()]).collect()
    }

    pub fn reaches(&self, from: VertexId, targets: &BTreeSet<VertexId>) -> Result<bool> {
        self.check_vertex(from)?;
        for &t in targets {
            self.check_vertex(t)?;
        }
        let reach = self.reachable_from(from);
        Ok(targets.iter().any(|t| reach.contains(t)))
    }

    /// Decides whether `u` is a line point: the subgraph reachable from `u`
    /// has no cycle and no vertex emitting two or more edges.
    pub fn is_line_point(&self, u: VertexId) -> Result<LinePointCertificate> {
        self.check_vertex(u)?;
        let reach = self.reachable_from(u);
        let branching = reach
            .iter()
            .copied()
            .find(|&x| self.out_edges(x).len() >= 2);
        let cycle = self.find_cycle_within(&reach);
        if cycle.is_none() && branching.is_none() {
            Ok(LinePointCertificate::LinePoint)
        } else {
            Ok(LinePointCertificate::NotLinePoint { cycle, branching })
        }
    }

    /// A closed path all of whose vertices lie in `within`, found by
    /// iterative DFS with white/grey/black colouring.
    fn find_cycle_within(&self, within: &BTreeSet<VertexId>) -> Option<FinPath> {
        #[derive(Clone, Copy, PartialEq)]
        enum Colour {
            White,
            Grey,
            Black,
        }
        let mut colour = vec![Colour::White; self.vertex_count()];
        for &root in within {
            if colour[root.index()] != Colour::White {
                continue;
            }
            // stack of (vertex, next out-edge position); `via` holds the
            // edge used to enter each grey vertex.
            let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
            let mut via: Vec<EdgeId> = Vec::new();
            colour[root.index()] = Colour::Grey;
            while let Some(&mut (x, ref mut pos)) = stack.last_mut() {
                let outs = self.out_edges(x);
                if *pos < outs.len() {
                    let e = outs[*pos];
                    *pos += 1;
                    let y = self.rng(e);
                    if !within.contains(&y) {
                        continue;
                    }
                    match colour[y.index()] {
                        Colour::White => {
                            colour[y.index()] = Colour::Grey;
                            via.push(e);
                            stack.push((y, 0));
                        }
                        Colour::Grey => {
                            let start = stack.iter().position(|&(z, _)| z == y).unwrap();
                            let mut edges: Vec<EdgeId> = via[start..].to_vec();
                            edges.push(e);
                            return Some(FinPath::from_edges(self, y, edges).unwrap());
                        }
                        Colour::Black => {}
                    }
                } else {
                    colour[x.index()] = Colour::Black;
                    stack.pop();
                    via.pop();
                }
            }
        }
        None
    }

    /// Every closed path of length `1..=max_len` that is not a proper power
    /// of a shorter closed path. Rotations based at different positions are
    /// reported separately; the least rotation of each is flagged.
    pub fn simple_closed_paths(&self, max_len: usize) -> Vec<ClosedPath> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let mut edges = Vec::new();
            self.closed_walks(v, v, max_len, &mut edges, &mut out);
        }
        out
    }

    fn closed_walks(
        &self,
        base: VertexId,
        at: VertexId,
        max_len: usize,
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<ClosedPath>,
    ) {
        if edges.len() == max_len {
            return;
        }
        for &e in self.out_edges(at) {
            edges.push(e);
            let y = self.rng(e);
            if y == base && is_primitive(edges) {
                out.push(ClosedPath {
                    path: FinPath {
                        start: base,
                        end: base,
                        edges: edges.clone(),
                    },
                    canonical: is_least_rotation(edges),
                });
            }
            self.closed_walks(base, y, max_len, edges, out);
            edges.pop();
        }
    }
}

/// True when `word` is not `u^m` for any shorter word `u` and `m ≥ 2`.
pub fn is_primitive<T: PartialEq>(word: &[T]) -> bool {
    primitive_root_len(word) == word.len()
}

/// Length of the shortest `u` with `word = u^m`.
pub fn primitive_root_len<T: PartialEq>(word: &[T]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .unwrap_or(n)
}

pub(crate) fn is_least_rotation<T: Ord>(word: &[T]) -> bool {
    let n = word.len();
    (1..n).all(|k| {
        let rotated = word[k..].iter().chain(&word[..k]);
        word.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

/// A finite path: a composable edge sequence, or a single vertex when empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPath {
    start: VertexId,
    end: VertexId,
    edges: Vec<EdgeId>,
}

impl FinPath {
    pub fn vertex(v: VertexId) -> FinPath {
        FinPath {
            start: v,
            end: v,
            edges: Vec::new(),
        }
    }

    /// Builds a path from `start` along `edges`, checking composability.
    pub fn from_edges(g: &Graph, start: VertexId, edges: Vec<EdgeId>) -> Result<FinPath> {
        g.check_vertex(start)?;
        let mut at = start;
        for (i, &e) in edges.iter().enumerate() {
            if e.index() >= g.edge_count() {
                return Err(Error::UnknownEdge(format!("#{}", e.0)));
            }
            if g.src(e) != at {
                return Err(Error::NotComposable { position: i });
            }
            at = g.rng(e);
        }
        Ok(FinPath {
            start,
            end: at,
            edges,
        })
    }

    /// Assembles a path whose composability the caller has already checked.
    pub(crate) fn from_raw(start: VertexId, end: VertexId, edges: Vec<EdgeId>) -> FinPath {
        FinPath { start, end, edges }
    }

    /// A nonempty path from its edges; the start is `s(e₁)`.
    pub fn from_edge_seq(g: &Graph, edges: Vec<EdgeId>) -> Result<FinPath> {
        let Some(&first) = edges.first() else {
            return Err(Error::EmptyPath);
        };
        if first.index() >= g.edge_count() {
            return Err(Error::UnknownEdge(format!("#{}", first.0)));
        }
        FinPath::from_edges(g, g.src(first), edges)
    }

    pub fn edge(g: &Graph, e: EdgeId) -> FinPath {
        FinPath {
            start: g.src(e),
            end: g.rng(e),
            edges: vec![e],
        }
    }

    pub fn src(&self) -> VertexId {
        self.start
    }

    pub fn rng(&self) -> VertexId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// Concatenation `self · other`; `None` unless `r(self) = s(other)`.
    pub fn concat(&self, other: &FinPath) -> Option<FinPath> {
        if self.end != other.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(FinPath {
            start: self.start,
            end: other.end,
            edges,
        })
    }

    pub fn push(&mut self, g: &Graph, e: EdgeId) -> Result<()> {
        if g.src(e) != self.end {
            return Err(Error::NotComposable {
                position: self.edges.len(),
            });
        }
        self.edges.push(e);
        self.end = g.rng(e);
        Ok(())
    }

    /// `τ≤n`: the first `n` edges.
    pub fn prefix(&self, g: &Graph, n: usize) -> FinPath {
        let n = n.min(self.len());
        let end = if n == 0 {
            self.start
        } else {
            g.rng(self.edges[n - 1])
        };
        FinPath {
            start: self.start,
            end,
            edges: self.edges[..n].to_vec(),
        }
    }

    /// The path after the first `n` edges.
    pub fn suffix(&self, g: &Graph, n: usize) -> FinPath {
        let n = n.min(self.len());
        let start = if n == 0 {
            self.start
        } else {
            g.rng(self.edges[n - 1])
        };
        FinPath {
            start,
            end: self.end,
            edges: self.edges[n..].to_vec(),
        }
    }

    /// `other = self · rest` for some `rest`; vertex paths must share their base.
    pub fn is_prefix_of(&self, other: &FinPath) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// `self^k` for a closed path.
    pub fn power(&self, k: usize) -> FinPath {
        debug_assert!(self.is_closed());
        if k == 0 {
            return FinPath::vertex(self.start);
        }
        let mut edges = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            edges.extend_from_slice(&self.edges);
        }
        FinPath {
            start: self.start,
            end: self.end,
            edges,
        }
    }

    /// Rotation of a closed path that starts at edge position `k`.
    pub fn rotate(&self, g: &Graph, k: usize) -> FinPath {
        debug_assert!(self.is_closed());
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut edges = self.edges[k..].to_vec();
        edges.extend_from_slice(&self.edges[..k]);
        let start = g.src(edges[0]);
        FinPath {
            start,
            end: start,
            edges,
        }
    }

    /// Vertices visited, `s(e₁), r(e₁), …, r(eₙ)`.
    pub fn visited(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = vec![self.start];
        out.extend(self.edges.iter().map(|&e| g.rng(e)));
        out
    }
}

impl Ord for FinPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for FinPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "v{}", self.start.0)
        } else {
            let parts: Vec<String> = self.edges.iter().map(|e| format!("e{}", e.0)).collect();
            write!(f, "{}", parts.join("·"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1() -> Graph {
        Graph::builder().vertex("v").edge("d", "v", "v").build().unwrap()
    }

    fn r2() -> Graph {
        Graph::builder()
            .vertex("v")
            .edge("e", "v", "v")
            .edge("f", "v", "v")
            .build()
            .unwrap()
    }

    fn e_n(n: usize) -> Graph {
        let mut b = Graph::builder().vertices(["v", "w"]).edge("d", "v", "v");
        for i in 1..=n {
            b = b.edge(format!("e{i}"), "v", "w");
        }
        b.edge("f", "w", "w").build().unwrap()
    }

    fn path(g: &Graph, names: &[&str]) -> FinPath {
        let edges = names.iter().map(|n| g.edge(n).unwrap()).collect();
        FinPath::from_edge_seq(g, edges).unwrap()
    }

    #[test]
    fn classify() {
        let g = r2();
        assert_eq!(g.classify_vertex(g.vertex("v").unwrap()).unwrap(), VertexKind::Regular(2));
        let g = e_n(3);
        assert_eq!(g.classify_vertex(g.vertex("w").unwrap()).unwrap(), VertexKind::Regular(1));
        let g = Graph::builder().vertices(["u", "x"]).edge("a", "x", "x").build().unwrap();
        assert_eq!(g.classify_vertex(g.vertex("u").unwrap()).unwrap(), VertexKind::Sink);
        assert!(matches!(
            g.classify_vertex(VertexId(9)),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn duplicate_and_dangling() {
        let err = Graph::builder().vertex("v").vertex("v").build().unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
        let err = Graph::builder().vertex("v").edge("e", "v", "w").build().unwrap_err();
        assert!(matches!(err, Error::UnknownVertex(_)));
        let err = Graph::builder().vertex("v").edge("v", "v", "v").build().unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
    }

    #[test]
    fn exits_examples() {
        let g = r2();
        let ef = path(&g, &["e", "f"]);
        assert_eq!(g.exits(&ef, 0).unwrap(), vec![g.edge("f").unwrap()]);
        let g1 = r1();
        assert!(g1.exits(&path(&g1, &["d"]), 0).unwrap().is_empty());
        let g = e_n(3);
        let names: Vec<&str> = g
            .exits(&path(&g, &["e1"]), 0)
            .unwrap()
            .into_iter()
            .map(|e| g.edge_name(e))
            .collect();
        assert_eq!(names, ["d", "e2", "e3"]);
        assert!(matches!(g.exits(&path(&g, &["e1"]), 1), Err(Error::IndexOutOfRange { .. })));
    }

    fn closed_names(g: &Graph, max_len: usize) -> Vec<String> {
        g.simple_closed_paths(max_len)
            .into_iter()
            .map(|c| {
                c.path
                    .edges()
                    .iter()
                    .map(|&e| g.edge_name(e))
                    .collect::<String>()
            })
            .collect()
    }

    #[test]
    fn simple_closed_path_examples() {
        assert_eq!(closed_names(&r1(), 3), ["d"]);
        assert_eq!(closed_names(&r2(), 2), ["e", "ef", "f", "fe"]);
        assert_eq!(closed_names(&e_n(2), 2), ["d", "f"]);
        let flags: Vec<bool> = r2().simple_closed_paths(2).iter().map(|c| c.canonical).collect();
        assert_eq!(flags, [true, true, true, false]);
    }

    #[test]
    fn line_points() {
        let g = Graph::builder().vertices(["u", "w"]).edge("a", "u", "w").build().unwrap();
        assert!(g.is_line_point(g.vertex("u").unwrap()).unwrap().is_line_point());
        let g = r2();
        let v = g.vertex("v").unwrap();
        match g.is_line_point(v).unwrap() {
            LinePointCertificate::NotLinePoint { branching, .. } => assert_eq!(branching, Some(v)),
            other => panic!("{other:?}"),
        }
        let g = e_n(2);
        match g.is_line_point(g.vertex("v").unwrap()).unwrap() {
            LinePointCertificate::NotLinePoint { cycle, .. } => {
                assert_eq!(cycle.unwrap().edges(), &[g.edge("d").unwrap()])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reachability() {
        let g = e_n(2);
        let v = g.vertex("v").unwrap();
        let w = g.vertex("w").unwrap();
        assert!(g.reaches(v, &BTreeSet::from([v])).unwrap());
        assert!(!g.reaches(w, &BTreeSet::from([v])).unwrap());
        assert!(g.reaches(v, &BTreeSet::from([w])).unwrap());
    }

    #[test]
    fn primitive_words() {
        assert!(is_primitive(&[1, 2]));
        assert!(!is_primitive(&[1, 2, 1, 2]));
        assert!(!is_primitive(&[3, 3, 3]));
        assert_eq!(primitive_root_len(&[1, 2, 1, 2, 1, 2]), 2);
    }
}
