//! Finite descriptions of infinite paths.
//!
//! An [`OmegaPathSpec`] is one of
//!
//! * a sink anchor `αw^∞`: a finite path `α` ending at a sink `w`, read as
//!   the infinite path that stays at `w`;
//! * a lasso `αc^∞` with `c` a closed path, the rational paths;
//! * an irrational spec: a prefix `α` and a recurrent edge set `R`, standing
//!   for a fixed non-eventually-periodic walk that starts with `α` and then
//!   uses only (and every) edge of `R` infinitely often.
//!
//! Canonical specs are in bijection with the infinite paths they denote, so
//! equality of canonical specs is equality of paths.
//!
//! The walk behind an irrational spec is produced by a [`Concretizer`]. It
//! picks a hub `b` (the least vertex of `R` emitting two edges of `R`), the
//! first-return loops `A` and `B` at `b` starting with the first two
//! `R`-edges leaving `b`, and a closed walk `T` at `b` covering the rest of
//! `R`. From `b` the walk is `Z = T A B · T A B² · T A B³ ⋯`, which is not
//! eventually periodic because the runs of `B` grow; from another vertex it
//! first follows a fixed shortest-path tree to `b`. On the rose with two
//! petals `e, f` this gives `e f e f f e f f f ⋯`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{is_primitive, primitive_root_len, EdgeId, FinPath, Graph, VertexId};

/// The three shapes of infinite path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Sink,
    Rational,
    Irrational,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaPathSpec {
    /// `prefix · w^∞` with `w = r(prefix)` a sink.
    Sink { prefix: FinPath },
    /// `prefix · cycle^∞` with `r(prefix) = s(cycle)`.
    Lasso { prefix: FinPath, cycle: FinPath },
    /// `prefix` followed by the concretized walk inside `recurrent`.
    Irrational {
        prefix: FinPath,
        recurrent: BTreeSet<EdgeId>,
    },
}

impl OmegaPathSpec {
    pub fn sink(g: &Graph, prefix: FinPath) -> Result<OmegaPathSpec> {
        g.check_vertex(prefix.rng())?;
        if !g.is_sink(prefix.rng()) {
            return Err(Error::MalformedSpec(format!(
                "`{}` is not a sink",
                g.vertex_name(prefix.rng())
            )));
        }
        Ok(OmegaPathSpec::Sink { prefix })
    }

    /// `w^∞` for a sink `w`.
    pub fn sink_at(g: &Graph, w: VertexId) -> Result<OmegaPathSpec> {
        OmegaPathSpec::sink(g, FinPath::vertex(w))
    }

    /// `prefix · cycle^∞`, checked for shape but not canonicalized.
    pub fn lasso(g: &Graph, prefix: FinPath, cycle: FinPath) -> Result<OmegaPathSpec> {
        g.check_vertex(prefix.src())?;
        if cycle.is_empty() || !cycle.is_closed() {
            return Err(Error::NotClosed);
        }
        if prefix.rng() != cycle.src() {
            return Err(Error::MalformedSpec(
                "the prefix must end where the cycle starts".into(),
            ));
        }
        Ok(OmegaPathSpec::Lasso { prefix, cycle })
    }

    /// The canonical form of `c^∞`.
    pub fn cyclic(g: &Graph, cycle: &FinPath) -> Result<OmegaPathSpec> {
        OmegaPathSpec::lasso(g, FinPath::vertex(cycle.src()), cycle.clone())?.canonicalize(g)
    }

    /// An irrational spec; the recurrent set is validated.
    pub fn irrational(
        g: &Graph,
        prefix: FinPath,
        recurrent: BTreeSet<EdgeId>,
    ) -> Result<OmegaPathSpec> {
        validate_irrational(g, &prefix, &recurrent)?;
        Ok(OmegaPathSpec::Irrational { prefix, recurrent })
    }

    pub fn kind(&self) -> PathKind {
        match self {
            OmegaPathSpec::Sink { .. } => PathKind::Sink,
            OmegaPathSpec::Lasso { .. } => PathKind::Rational,
            OmegaPathSpec::Irrational { .. } => PathKind::Irrational,
        }
    }

    pub fn prefix(&self) -> &FinPath {
        match self {
            OmegaPathSpec::Sink { prefix }
            | OmegaPathSpec::Lasso { prefix, .. }
            | OmegaPathSpec::Irrational { prefix, .. } => prefix,
        }
    }

    /// `s(p)`.
    pub fn src(&self) -> VertexId {
        self.prefix().src()
    }

    /// Number of leading edges fixed by the description itself; `None` when
    /// every edge is. Only irrational specs are partially determined.
    pub fn determined_len(&self) -> Option<usize> {
        match self {
            OmegaPathSpec::Irrational { prefix, .. } => Some(prefix.len()),
            _ => None,
        }
    }

    /// The unique canonical description of the same infinite path.
    pub fn canonicalize(&self, g: &Graph) -> Result<OmegaPathSpec> {
        match self {
            OmegaPathSpec::Sink { prefix } => OmegaPathSpec::sink(g, prefix.clone()),
            OmegaPathSpec::Lasso { prefix, cycle } => {
                OmegaPathSpec::lasso(g, prefix.clone(), cycle.clone())?;
                let (prefix, cycle) = canonical_lasso(g, prefix, cycle);
                Ok(OmegaPathSpec::Lasso { prefix, cycle })
            }
            OmegaPathSpec::Irrational { prefix, recurrent } => {
                validate_irrational(g, prefix, recurrent)?;
                let conc = Concretizer::new(g, recurrent)?;
                Ok(OmegaPathSpec::Irrational {
                    prefix: conc.strip(g, prefix),
                    recurrent: recurrent.clone(),
                })
            }
        }
    }

    /// Tail equivalence of canonical specs.
    pub fn tail_equivalent(&self, g: &Graph, other: &OmegaPathSpec) -> bool {
        match (self, other) {
            (OmegaPathSpec::Sink { prefix: a }, OmegaPathSpec::Sink { prefix: b }) => {
                a.rng() == b.rng()
            }
            (OmegaPathSpec::Lasso { cycle: a, .. }, OmegaPathSpec::Lasso { cycle: b, .. }) => {
                let a = primitive_cycle(g, a);
                let b = primitive_cycle(g, b);
                a.len() == b.len() && (0..a.len()).any(|k| a.rotate(g, k).edges() == b.edges())
            }
            (
                OmegaPathSpec::Irrational { recurrent: a, .. },
                OmegaPathSpec::Irrational { recurrent: b, .. },
            ) => a == b,
            _ => false,
        }
    }

    /// The first `n` edges of the path, or all of them when a sink anchor
    /// has fewer.
    pub fn leading_edges(&self, g: &Graph, n: usize) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.prefix().edges().iter().copied().take(n).collect();
        if out.len() == n {
            return out;
        }
        match self {
            OmegaPathSpec::Sink { .. } => {}
            OmegaPathSpec::Lasso { cycle, .. } => {
                let c = cycle.edges();
                let mut k = 0;
                while out.len() < n {
                    out.push(c[k % c.len()]);
                    k += 1;
                }
            }
            OmegaPathSpec::Irrational { prefix, recurrent } => {
                let conc = Concretizer::new(g, recurrent).expect("validated recurrent set");
                let need = n - out.len();
                out.extend(conc.walk(g, prefix.rng(), need));
            }
        }
        out
    }

    /// Whether `p = dp'`.
    pub fn divisible_by(&self, g: &Graph, d: &FinPath) -> bool {
        if d.is_empty() || self.src() != d.src() {
            return false;
        }
        self.leading_edges(g, d.len()) == d.edges()
    }

    /// `(τ≤n(p), τ>n(p))`, the second canonicalized. Irrational specs can
    /// only be cut inside their prefix.
    pub fn truncate(&self, g: &Graph, n: usize) -> Result<(FinPath, OmegaPathSpec)> {
        match self {
            OmegaPathSpec::Sink { prefix } => {
                let head = prefix.prefix(g, n);
                let tail = prefix.suffix(g, n);
                Ok((head, OmegaPathSpec::Sink { prefix: tail }))
            }
            OmegaPathSpec::Lasso { prefix, cycle } => {
                let head = FinPath::from_edges(g, prefix.src(), self.leading_edges(g, n))?;
                let tail = if n <= prefix.len() {
                    OmegaPathSpec::Lasso {
                        prefix: prefix.suffix(g, n),
                        cycle: cycle.clone(),
                    }
                } else {
                    let rotated = cycle.rotate(g, (n - prefix.len()) % cycle.len());
                    OmegaPathSpec::Lasso {
                        prefix: FinPath::vertex(rotated.src()),
                        cycle: rotated,
                    }
                };
                Ok((head, tail.canonicalize(g)?))
            }
            OmegaPathSpec::Irrational { prefix, recurrent } => {
                if n > prefix.len() {
                    return Err(Error::Undetermined {
                        determined: prefix.len(),
                        requested: n,
                    });
                }
                let tail = OmegaPathSpec::Irrational {
                    prefix: prefix.suffix(g, n),
                    recurrent: recurrent.clone(),
                };
                Ok((prefix.prefix(g, n), tail.canonicalize(g)?))
            }
        }
    }

    /// `ep` for an edge with `r(e) = s(p)`, canonicalized; `None` otherwise.
    pub fn prepend(&self, g: &Graph, e: EdgeId) -> Option<OmegaPathSpec> {
        if g.rng(e) != self.src() {
            return None;
        }
        let prefix = FinPath::edge(g, e).concat(self.prefix())?;
        let spec = match self {
            OmegaPathSpec::Sink { .. } => OmegaPathSpec::Sink { prefix },
            OmegaPathSpec::Lasso { cycle, .. } => OmegaPathSpec::Lasso {
                prefix,
                cycle: cycle.clone(),
            },
            OmegaPathSpec::Irrational { recurrent, .. } => OmegaPathSpec::Irrational {
                prefix,
                recurrent: recurrent.clone(),
            },
        };
        Some(spec.canonicalize(g).expect("prepending keeps a spec well formed"))
    }

    /// `αp` for `r(α) = s(p)`.
    pub fn prepend_path(&self, g: &Graph, alpha: &FinPath) -> Option<OmegaPathSpec> {
        if alpha.rng() != self.src() {
            return None;
        }
        let mut out = self.clone();
        for &e in alpha.edges().iter().rev() {
            out = out.prepend(g, e)?;
        }
        Some(out)
    }

    /// Vertices visited infinitely often, the data that fixes the class.
    pub fn recurrent_vertices(&self, g: &Graph) -> BTreeSet<VertexId> {
        match self {
            OmegaPathSpec::Sink { prefix } => BTreeSet::from([prefix.rng()]),
            OmegaPathSpec::Lasso { cycle, .. } => cycle.visited(g).into_iter().collect(),
            OmegaPathSpec::Irrational { recurrent, .. } => recurrent
                .iter()
                .flat_map(|&e| [g.src(e), g.rng(e)])
                .collect(),
        }
    }

    /// `U(T) = {v : vT ≠ 0}`: the vertices with a path into the recurrent
    /// part of `T`.
    pub fn u_set(&self, g: &Graph) -> BTreeSet<VertexId> {
        g.reaching(&self.recurrent_vertices(g))
    }

    /// The class representative `w^∞`, `c^∞` with `c` the least rotation
    /// of the cycle, or the prefix-free irrational spec starting at the hub.
    /// Tail-equivalent specs share it.
    pub fn class_root(&self, g: &Graph) -> OmegaPathSpec {
        match self {
            OmegaPathSpec::Sink { prefix } => OmegaPathSpec::Sink {
                prefix: FinPath::vertex(prefix.rng()),
            },
            OmegaPathSpec::Lasso { cycle, .. } => {
                let cycle = primitive_cycle(g, cycle);
                let cycle = (0..cycle.len())
                    .map(|k| cycle.rotate(g, k))
                    .min_by(|a, b| a.edges().cmp(b.edges()))
                    .expect("cycles are nonempty");
                OmegaPathSpec::Lasso {
                    prefix: FinPath::vertex(cycle.src()),
                    cycle,
                }
            }
            OmegaPathSpec::Irrational { recurrent, .. } => {
                let conc = Concretizer::new(g, recurrent).expect("validated recurrent set");
                OmegaPathSpec::Irrational {
                    prefix: FinPath::vertex(conc.hub()),
                    recurrent: recurrent.clone(),
                }
            }
        }
    }
}

fn primitive_cycle(g: &Graph, cycle: &FinPath) -> FinPath {
    let root = primitive_root_len(cycle.edges());
    cycle.prefix(g, root)
}

/// Shortest prefix and primitive cycle for `prefix · cycle^∞`.
fn canonical_lasso(g: &Graph, prefix: &FinPath, cycle: &FinPath) -> (FinPath, FinPath) {
    let mut cycle = primitive_cycle(g, cycle);
    let mut prefix = prefix.clone();
    while let (Some(p), Some(c)) = (prefix.last_edge(), cycle.last_edge()) {
        if p != c {
            break;
        }
        prefix = prefix.prefix(g, prefix.len() - 1);
        cycle = cycle.rotate(g, cycle.len() - 1);
    }
    debug_assert!(is_primitive(cycle.edges()));
    (prefix, cycle)
}

/// Checks that `recurrent` can carry an irrational tail after `prefix`:
/// it is nonempty, strongly connected, has a vertex emitting two of its
/// edges, and contains `r(prefix)`.
pub fn validate_irrational(
    g: &Graph,
    prefix: &FinPath,
    recurrent: &BTreeSet<EdgeId>,
) -> Result<()> {
    g.check_vertex(prefix.src())?;
    if recurrent.is_empty() {
        return Err(Error::InvalidRecurrentSet("the recurrent set is empty".into()));
    }
    if let Some(e) = recurrent.iter().find(|e| e.index() >= g.edge_count()) {
        return Err(Error::UnknownEdge(format!("#{}", e.0)));
    }
    let vertices: BTreeSet<VertexId> = recurrent
        .iter()
        .flat_map(|&e| [g.src(e), g.rng(e)])
        .collect();
    let root = *vertices.iter().next().expect("nonempty");
    let forward = restricted_reach(g, recurrent, root, false);
    let backward = restricted_reach(g, recurrent, root, true);
    if let Some(&v) = vertices
        .iter()
        .find(|v| !forward.contains(v) || !backward.contains(v))
    {
        return Err(Error::InvalidRecurrentSet(format!(
            "not strongly connected: `{}` and `{}` are not mutually reachable",
            g.vertex_name(root),
            g.vertex_name(v)
        )));
    }
    let branching = vertices.iter().any(|&v| {
        g.out_edges(v)
            .iter()
            .filter(|e| recurrent.contains(e))
            .count()
            >= 2
    });
    if !branching {
        return Err(Error::InvalidRecurrentSet(
            "no vertex emits two recurrent edges, so every such walk is periodic".into(),
        ));
    }
    if !vertices.contains(&prefix.rng()) {
        return Err(Error::InvalidRecurrentSet(format!(
            "the prefix ends at `{}`, outside the recurrent set",
            g.vertex_name(prefix.rng())
        )));
    }
    Ok(())
}

fn restricted_reach(
    g: &Graph,
    edges: &BTreeSet<EdgeId>,
    root: VertexId,
    reverse: bool,
) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let incident = if reverse { g.in_edges(x) } else { g.out_edges(x) };
        for &e in incident.iter().filter(|e| edges.contains(e)) {
            let y = if reverse { g.src(e) } else { g.rng(e) };
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The fixed walk behind irrational specs with a given recurrent set.
#[derive(Debug, Clone)]
pub struct Concretizer {
    hub: VertexId,
    /// Next edge on the shortest-path tree towards the hub.
    next_hop: HashMap<VertexId, EdgeId>,
    cover: Vec<EdgeId>,
    loop_a: Vec<EdgeId>,
    loop_b: Vec<EdgeId>,
}

impl Concretizer {
    pub fn new(g: &Graph, recurrent: &BTreeSet<EdgeId>) -> Result<Concretizer> {
        let vertices: BTreeSet<VertexId> = recurrent
            .iter()
            .flat_map(|&e| [g.src(e), g.rng(e)])
            .collect();
        let out_r = |x: VertexId| -> Vec<EdgeId> {
            g.out_edges(x)
                .iter()
                .copied()
                .filter(|e| recurrent.contains(e))
                .collect()
        };
        let hub = vertices
            .iter()
            .copied()
            .find(|&x| out_r(x).len() >= 2)
            .ok_or_else(|| Error::InvalidRecurrentSet("no branching vertex".into()))?;

        let mut next_hop = HashMap::new();
        let mut seen = BTreeSet::from([hub]);
        let mut queue = VecDeque::from([hub]);
        while let Some(y) = queue.pop_front() {
            for &e in g.in_edges(y).iter().filter(|e| recurrent.contains(e)) {
                let x = g.src(e);
                if seen.insert(x) {
                    next_hop.insert(x, e);
                    queue.push_back(x);
                }
            }
        }
        let mut parent = HashMap::new();
        let mut seen = BTreeSet::from([hub]);
        let mut queue = VecDeque::from([hub]);
        while let Some(x) = queue.pop_front() {
            for e in out_r(x) {
                let y = g.rng(e);
                if seen.insert(y) {
                    parent.insert(y, e);
                    queue.push_back(y);
                }
            }
        }
        if vertices.iter().any(|v| *v != hub && !next_hop.contains_key(v))
            || vertices.iter().any(|v| *v != hub && !parent.contains_key(v))
        {
            return Err(Error::InvalidRecurrentSet("not strongly connected".into()));
        }

        let mut conc = Concretizer {
            hub,
            next_hop,
            cover: Vec::new(),
            loop_a: Vec::new(),
            loop_b: Vec::new(),
        };
        let first_return = |conc: &Concretizer, a: EdgeId| {
            let mut walk = vec![a];
            walk.extend(conc.to_hub(g, g.rng(a)));
            walk
        };
        let hub_out = out_r(hub);
        conc.loop_a = first_return(&conc, hub_out[0]);
        conc.loop_b = first_return(&conc, hub_out[1]);
        let mut covered: BTreeSet<EdgeId> =
            conc.loop_a.iter().chain(&conc.loop_b).copied().collect();
        let mut cover = Vec::new();
        for &e in recurrent {
            if covered.contains(&e) {
                continue;
            }
            let mut from_hub = Vec::new();
            let mut at = g.src(e);
            while at != hub {
                let p = parent[&at];
                from_hub.push(p);
                at = g.src(p);
            }
            from_hub.reverse();
            let mut detour = from_hub;
            detour.push(e);
            detour.extend(conc.to_hub(g, g.rng(e)));
            covered.extend(detour.iter().copied());
            cover.extend(detour);
        }
        conc.cover = cover;
        Ok(conc)
    }

    pub fn hub(&self) -> VertexId {
        self.hub
    }

    /// The tree path from `x` to the hub.
    pub fn to_hub(&self, g: &Graph, x: VertexId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut at = x;
        while at != self.hub {
            let e = self.next_hop[&at];
            out.push(e);
            at = g.rng(e);
        }
        out
    }

    /// The first `n` edges of the walk from `x`.
    pub fn walk(&self, g: &Graph, x: VertexId, n: usize) -> Vec<EdgeId> {
        let mut out = self.to_hub(g, x);
        let mut k = 1;
        while out.len() < n {
            out.extend_from_slice(&self.cover);
            out.extend_from_slice(&self.loop_a);
            for _ in 0..k {
                out.extend_from_slice(&self.loop_b);
            }
            k += 1;
        }
        out.truncate(n);
        out
    }

    /// Removes trailing prefix edges that the walk would take anyway.
    fn strip(&self, g: &Graph, prefix: &FinPath) -> FinPath {
        let mut prefix = prefix.clone();
        while let Some(e) = prefix.last_edge() {
            let s = g.src(e);
            if s == self.hub || self.next_hop.get(&s) != Some(&e) {
                break;
            }
            prefix = prefix.prefix(g, prefix.len() - 1);
        }
        prefix
    }
}
