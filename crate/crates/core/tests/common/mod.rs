//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! The oracles work on raw edge words and never call the library's
//! canonicalization, automaton or solver code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use leavitt::algebra::{AlgebraElement, Monomial, RawElement};
use leavitt::chen::ChenElement;
use leavitt::graph::{EdgeId, FinPath, Graph, VertexId};
use leavitt::omega::OmegaPathSpec;
use leavitt::textio::parse_graph;
use leavitt::Scalar;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn graph_file(name: &str) -> Graph {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "graphs", name]
        .iter()
        .collect();
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    parse_graph(&src).unwrap()
}

pub fn graph_path(name: &str) -> String {
    format!("{}/../../graphs/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn r1() -> Graph {
    Graph::builder().vertex("v").edge("d", "v", "v").build().unwrap()
}

pub fn r2() -> Graph {
    Graph::builder()
        .vertex("v")
        .edge("e", "v", "v")
        .edge("f", "v", "v")
        .build()
        .unwrap()
}

/// A loop `d` at `v`, edges `e1..en` from `v` to `w`, and a loop `f` at
/// `w` when `loop_at_w` holds.
pub fn e_n_variant(n: usize, loop_at_w: bool) -> Graph {
    let mut b = Graph::builder().vertices(["v", "w"]).edge("d", "v", "v");
    for i in 1..=n {
        b = b.edge(format!("e{i}"), "v", "w");
    }
    if loop_at_w {
        b = b.edge("f", "w", "w");
    }
    b.build().unwrap()
}

pub fn e_n(n: usize) -> Graph {
    e_n_variant(n, true)
}

/// A line `v1 -> ... -> v(n+1) -> v` into a rose `{e, f}` at `v`, with an
/// edge `xi` from each `vi` to a rose `{g, h}` at `w`.
pub fn big(n: usize) -> Graph {
    let m = n + 1;
    let mut b = Graph::builder();
    for i in 1..=m {
        b = b.vertex(format!("v{i}"));
    }
    b = b.vertices(["v", "w"]);
    for i in 1..=n {
        b = b.edge(format!("e{i}"), format!("v{i}"), format!("v{}", i + 1));
    }
    b = b.edge(format!("e{m}"), format!("v{m}"), "v");
    b = b.edge("e", "v", "v").edge("f", "v", "v");
    for i in 1..=m {
        b = b.edge(format!("x{i}"), format!("v{i}"), "w");
    }
    b.edge("g", "w", "w").edge("h", "w", "w").build().unwrap()
}

pub fn path(g: &Graph, names: &[&str]) -> FinPath {
    FinPath::from_edge_seq(g, names.iter().map(|n| g.edge(n).unwrap()).collect()).unwrap()
}

pub fn edge_set(g: &Graph, names: &[&str]) -> BTreeSet<EdgeId> {
    names.iter().map(|n| g.edge(n).unwrap()).collect()
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

/// A random multigraph with `1..=max_vertices` vertices and
/// `0..=max_edges` edges.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let mut b = Graph::builder().vertices((0..n).map(|i| format!("v{i}")));
    for j in 0..m {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        b = b.edge(format!("a{j}"), format!("v{s}"), format!("v{t}"));
    }
    b.build().unwrap()
}

/// A random graph that has at least one closed path.
pub fn random_graph_with_cycle(
    rng: &mut StdRng,
    max_vertices: usize,
    max_edges: usize,
) -> (Graph, Vec<FinPath>) {
    loop {
        let g = random_graph(rng, max_vertices, max_edges);
        let cycles = canonical_cycles(&g, g.vertex_count().max(2));
        if !cycles.is_empty() {
            return (g, cycles);
        }
    }
}

pub fn canonical_cycles(g: &Graph, max_len: usize) -> Vec<FinPath> {
    g.simple_closed_paths(max_len)
        .into_iter()
        .filter(|c| c.canonical)
        .map(|c| c.path)
        .collect()
}

/// A random path of length at most `max_len` ending at `end`, built
/// backwards along in-edges.
pub fn random_path_into(g: &Graph, rng: &mut StdRng, end: VertexId, max_len: usize) -> FinPath {
    let len = rng.gen_range(0..=max_len);
    let mut edges = Vec::new();
    let mut at = end;
    for _ in 0..len {
        let Some(&e) = g.in_edges(at).choose(rng) else { break };
        edges.push(e);
        at = g.src(e);
    }
    edges.reverse();
    if edges.is_empty() {
        FinPath::vertex(end)
    } else {
        FinPath::from_edge_seq(g, edges).unwrap()
    }
}

/// All paths of length at most `max_len` starting anywhere and ending in
/// `ends`.
pub fn paths_into(g: &Graph, ends: &BTreeSet<VertexId>, max_len: usize) -> Vec<FinPath> {
    let mut out: Vec<FinPath> = ends.iter().map(|&v| FinPath::vertex(v)).collect();
    let mut frontier: Vec<Vec<EdgeId>> = ends
        .iter()
        .flat_map(|&v| g.in_edges(v).iter().map(|&e| vec![e]))
        .collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for rev in frontier {
            let edges: Vec<EdgeId> = rev.iter().rev().copied().collect();
            out.push(FinPath::from_edge_seq(g, edges).unwrap());
            let head = g.src(*rev.last().unwrap());
            for &e in g.in_edges(head) {
                let mut longer = rev.clone();
                longer.push(e);
                next.push(longer);
            }
        }
        frontier = next;
    }
    out
}

/// The first `n` edges of a sink or lasso spec, read off its fields.
pub fn word(p: &OmegaPathSpec, n: usize) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = p.prefix().edges().iter().copied().take(n).collect();
    if let OmegaPathSpec::Lasso { cycle, .. } = p {
        let c = cycle.edges();
        let mut k = 0;
        while out.len() < n {
            out.push(c[k % c.len()]);
            k += 1;
        }
    }
    out
}

/// Every infinite path `μ·tail` with `|μ| ≤ max_prefix` in the class of
/// the sink or cycle `class`, as a word of `key_len` edges. Two members
/// with prefixes of length at most `max_prefix` are equal exactly when
/// these words agree, provided `key_len ≥ max_prefix + |cycle|`.
pub fn class_members(
    g: &Graph,
    class: &ClassTail,
    max_prefix: usize,
    key_len: usize,
) -> BTreeSet<Vec<EdgeId>> {
    let mut out = BTreeSet::new();
    for entry in class.entries(g) {
        for mu in paths_into(g, &BTreeSet::from([class.entry_vertex(g, entry)]), max_prefix) {
            out.insert(class.extend(g, &mu, entry, key_len));
        }
    }
    out
}

/// The recurrent tail of a rational or sink class.
#[derive(Clone, Debug)]
pub enum ClassTail {
    Sink(VertexId),
    Cycle(FinPath),
}

impl ClassTail {
    pub fn of(p: &OmegaPathSpec) -> ClassTail {
        match p {
            OmegaPathSpec::Sink { prefix } => ClassTail::Sink(prefix.rng()),
            OmegaPathSpec::Lasso { cycle, .. } => ClassTail::Cycle(cycle.clone()),
            OmegaPathSpec::Irrational { .. } => panic!("oracle covers sink and lasso classes"),
        }
    }

    /// Ways to enter the tail: cycle positions, or the sink itself.
    pub fn entries(&self, _g: &Graph) -> std::ops::Range<usize> {
        match self {
            ClassTail::Sink(_) => 0..1,
            ClassTail::Cycle(c) => 0..c.len(),
        }
    }

    pub fn entry_vertex(&self, g: &Graph, entry: usize) -> VertexId {
        match self {
            ClassTail::Sink(w) => *w,
            ClassTail::Cycle(c) => g.src(c.edges()[entry]),
        }
    }

    pub fn vertices(&self, g: &Graph) -> BTreeSet<VertexId> {
        self.entries(g).map(|k| self.entry_vertex(g, k)).collect()
    }

    pub fn cycle_len(&self) -> usize {
        match self {
            ClassTail::Sink(_) => 0,
            ClassTail::Cycle(c) => c.len(),
        }
    }

    /// `μ` followed by the tail entered at `entry`, cut to `n` edges.
    pub fn extend(&self, g: &Graph, mu: &FinPath, entry: usize, n: usize) -> Vec<EdgeId> {
        assert_eq!(mu.rng(), self.entry_vertex(g, entry));
        let mut w: Vec<EdgeId> = mu.edges().to_vec();
        if let ClassTail::Cycle(c) = self {
            let c = c.edges();
            let mut k = entry;
            while w.len() < n {
                w.push(c[k % c.len()]);
                k += 1;
            }
        }
        w.truncate(n);
        w
    }
}

/// Line points by definition: nothing reachable branches or lies on a
/// closed path.
pub fn brute_line_point(g: &Graph, u: VertexId) -> bool {
    let reach = |from: VertexId| -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &e in g.out_edges(x) {
                if seen.insert(g.rng(e)) {
                    stack.push(g.rng(e));
                }
            }
        }
        seen
    };
    reach(u).into_iter().all(|x| {
        let out = g.out_edges(x);
        let on_cycle = out.iter().any(|&e| reach(g.rng(e)).contains(&x));
        out.len() <= 1 && !on_cycle
    })
}

/// Members of `L(d, t)` whose words come from prefixes of length at most
/// `horizon`, counted up to `cap` (a result above `cap` means "at least").
pub fn brute_l_count(g: &Graph, d: &FinPath, tail: &ClassTail, horizon: usize, cap: usize) -> usize {
    let key_len = horizon + tail.cycle_len().max(d.len()) + d.len();
    let targets = tail.vertices(g);
    let useful: BTreeSet<VertexId> = g
        .vertices()
        .filter(|&x| {
            let mut seen = BTreeSet::from([x]);
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &e in g.out_edges(y) {
                    if seen.insert(g.rng(e)) {
                        stack.push(g.rng(e));
                    }
                }
            }
            !seen.is_disjoint(&targets)
        })
        .collect();
    let mut found: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    let mut stack: Vec<Vec<EdgeId>> = vec![Vec::new()];
    while let Some(mu) = stack.pop() {
        if found.len() > cap {
            break;
        }
        let end = mu.last().map_or(d.src(), |&e| g.rng(e));
        if targets.contains(&end) {
            let path = if mu.is_empty() {
                FinPath::vertex(end)
            } else {
                FinPath::from_edge_seq(g, mu.clone()).unwrap()
            };
            for entry in tail.entries(g).filter(|&k| tail.entry_vertex(g, k) == end) {
                let w = tail.extend(g, &path, entry, key_len);
                if w.len() < d.len() || w[..d.len()] != *d.edges() {
                    found.insert(w);
                }
            }
        }
        if mu.len() < horizon {
            for &e in g.out_edges(end) {
                let mut longer = mu.clone();
                longer.push(e);
                let divisible = longer.len() >= d.len() && longer[..d.len()] == *d.edges();
                if !divisible && useful.contains(&g.rng(e)) {
                    stack.push(longer);
                }
            }
        }
    }
    found.len()
}

/// Exact rank of a matrix over the rationals.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = Scalar::one() / rows[r][c].clone();
        for j in c..cols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `(d − 1)X = t` has a solution `X` supported on paths whose
/// prefixes have length at most `max_prefix`, by linear algebra on words.
pub fn shift_solvable(g: &Graph, d: &FinPath, t: &ChenElement, max_prefix: usize) -> bool {
    let tail = ClassTail::of(t.class());
    let key_len = max_prefix + d.len() + tail.cycle_len();
    let candidates: Vec<Vec<EdgeId>> =
        class_members(g, &tail, max_prefix, key_len).into_iter().collect();
    let mut row_of: BTreeMap<Vec<EdgeId>, usize> = BTreeMap::new();
    let mut columns: Vec<HashMap<usize, Scalar>> = Vec::new();
    let mut row = |w: Vec<EdgeId>| {
        let n = row_of.len();
        *row_of.entry(w).or_insert(n)
    };
    let start = |w: &[EdgeId], fallback: VertexId| w.first().map_or(fallback, |&e| g.src(e));
    for b in &candidates {
        let mut col: HashMap<usize, Scalar> = HashMap::new();
        *col.entry(row(b.clone())).or_insert_with(Scalar::zero) -= Scalar::one();
        let b_start = match &tail {
            ClassTail::Sink(w) => start(b, *w),
            ClassTail::Cycle(_) => g.src(b[0]),
        };
        if b_start == d.src() {
            let mut db: Vec<EdgeId> = d.edges().to_vec();
            db.extend(b.iter().copied());
            db.truncate(key_len);
            *col.entry(row(db)).or_insert_with(Scalar::zero) += Scalar::one();
        }
        columns.push(col);
    }
    let mut rhs: HashMap<usize, Scalar> = HashMap::new();
    for (p, c) in t.terms() {
        assert!(p.prefix().len() <= max_prefix, "support bound too small");
        *rhs.entry(row(word(p, key_len))).or_insert_with(Scalar::zero) += c.clone();
    }
    // Unknowns outside the block of equations that meets `t` can be zero.
    let n_rows = row_of.len();
    let mut cols_of_row: Vec<Vec<usize>> = vec![Vec::new(); n_rows];
    for (j, col) in columns.iter().enumerate() {
        for &i in col.keys() {
            cols_of_row[i].push(j);
        }
    }
    let mut rows: BTreeSet<usize> = rhs.keys().copied().collect();
    let mut cols: BTreeSet<usize> = BTreeSet::new();
    let mut queue: Vec<usize> = rows.iter().copied().collect();
    while let Some(i) = queue.pop() {
        for &j in &cols_of_row[i] {
            if cols.insert(j) {
                for &k in columns[j].keys() {
                    if rows.insert(k) {
                        queue.push(k);
                    }
                }
            }
        }
    }
    let matrix = |with_rhs: bool| -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|i| {
                let mut r: Vec<Scalar> = cols
                    .iter()
                    .map(|&j| columns[j].get(i).cloned().unwrap_or_else(Scalar::zero))
                    .collect();
                if with_rhs {
                    r.push(rhs.get(i).cloned().unwrap_or_else(Scalar::zero));
                }
                r
            })
            .collect()
    };
    rank(matrix(false)) == rank(matrix(true))
}

/// A random element with up to `terms` monomials of degree at most
/// `max_deg` on each side, with small rational coefficients.
pub fn random_element(g: &Graph, rng: &mut StdRng, terms: usize, max_deg: usize) -> AlgebraElement {
    let mut raw = RawElement::new(g);
    for _ in 0..rng.gen_range(1..=terms) {
        let v = VertexId(rng.gen_range(0..g.vertex_count()) as u32);
        let alpha = random_path_into(g, rng, v, max_deg);
        let beta = random_path_into(g, rng, v, max_deg);
        let c = q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        raw.push(c, Monomial::new(alpha, beta).unwrap());
    }
    leavitt::algebra::normalize(g, raw)
}

/// A random lasso or sink spec, usually not canonical.
pub fn random_spec(g: &Graph, cycles: &[FinPath], rng: &mut StdRng) -> OmegaPathSpec {
    let sinks: Vec<VertexId> = g.sinks().collect();
    if !sinks.is_empty() && (cycles.is_empty() || rng.gen_bool(0.3)) {
        let w = *sinks.choose(rng).unwrap();
        return OmegaPathSpec::sink(g, random_path_into(g, rng, w, 4)).unwrap();
    }
    let c = cycles.choose(rng).unwrap();
    let rot = c.rotate(g, rng.gen_range(0..c.len()));
    let cycle = rot.power(rng.gen_range(1..=3));
    let mu = random_path_into(g, rng, rot.src(), 4);
    OmegaPathSpec::lasso(g, mu, cycle).unwrap()
}

/// `Σ kᵢ μᵢ·root` for a few random paths `μᵢ` into the class root.
pub fn random_chen(g: &Graph, root: &OmegaPathSpec, rng: &mut StdRng, terms: usize) -> ChenElement {
    let root = root.canonicalize(g).unwrap().class_root(g);
    let items: Vec<(Scalar, OmegaPathSpec)> = (0..terms)
        .map(|_| {
            let mu = random_path_into(g, rng, root.src(), 4);
            (q(rng.gen_range(-4..=4), rng.gen_range(1..=3)), root.prepend_path(g, &mu).unwrap())
        })
        .collect();
    ChenElement::from_terms(g, &root, items).unwrap()
}
