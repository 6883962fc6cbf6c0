//! The sets `L₍d,q₎` of infinite paths `p` with `s(p) = s(d)`, `p ~ q` and
//! `p` not divisible by `d`.
//!
//! For a rational or sink class every member has a unique canonical form
//! `α·r^∞` (`r` a rotation of the class cycle with `α` not ending in the
//! last edge of `r`) or `α·w^∞`. Counting members is therefore counting
//! walks `α` from `s(d)` in a finite automaton whose states remember the
//! last edge taken and how much of `d` has been matched so far, weighted by
//! the number of admissible tails at the end. The count is infinite exactly
//! when a useful state lies on a cycle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::chen::check_simple_closed;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FinPath, Graph, VertexId};
use crate::omega::OmegaPathSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinality {
    Empty,
    Finite(u64),
    CountablyInfinite,
}

impl Cardinality {
    pub fn is_empty(self) -> bool {
        self == Cardinality::Empty
    }
}

/// A count together with the longest canonical prefix of a member, when
/// the set is finite and nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSetAnalysis {
    pub cardinality: Cardinality,
    pub horizon: Option<usize>,
}

/// How far into `d` the walk still agrees with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Progress {
    Prefix(usize),
    Diverged,
}

type State = (Option<EdgeId>, Progress);

/// The tails a member may end in: rotations of the class cycle, or a sink.
enum Tails {
    Rotations(Vec<FinPath>),
    Sink(VertexId),
}

fn tails(g: &Graph, t: &OmegaPathSpec) -> Result<Tails> {
    match t.canonicalize(g)? {
        OmegaPathSpec::Sink { prefix } => Ok(Tails::Sink(prefix.rng())),
        OmegaPathSpec::Lasso { cycle, .. } => {
            Ok(Tails::Rotations((0..cycle.len()).map(|k| cycle.rotate(g, k)).collect()))
        }
        OmegaPathSpec::Irrational { .. } => Err(Error::IrrationalUnsupported(
            "L-set enumeration needs a rational or sink class",
        )),
    }
}

/// Whether `d[j..]` is a prefix of `r^∞`.
fn continues_into(d: &FinPath, j: usize, r: &FinPath) -> bool {
    let rest = &d.edges()[j..];
    let c = r.edges();
    rest.iter().enumerate().all(|(k, &e)| e == c[k % c.len()])
}

fn accepting(g: &Graph, d: &FinPath, tails: &Tails, state: State) -> u64 {
    let (last, progress) = state;
    let at = last.map_or(d.src(), |e| g.rng(e));
    match tails {
        Tails::Sink(w) => u64::from(at == *w),
        Tails::Rotations(rs) => rs
            .iter()
            .filter(|r| r.src() == at)
            .filter(|r| last != r.last_edge())
            .filter(|r| match progress {
                Progress::Diverged => true,
                Progress::Prefix(j) => !continues_into(d, j, r),
            })
            .count() as u64,
    }
}

fn step(g: &Graph, d: &FinPath, state: State) -> Vec<State> {
    let (last, progress) = state;
    let at = last.map_or(d.src(), |e| g.rng(e));
    g.out_edges(at)
        .iter()
        .filter_map(|&e| {
            let next = match progress {
                Progress::Diverged => Progress::Diverged,
                Progress::Prefix(j) if d.edges()[j] == e => {
                    if j + 1 == d.len() {
                        return None;
                    }
                    Progress::Prefix(j + 1)
                }
                Progress::Prefix(_) => Progress::Diverged,
            };
            Some((Some(e), next))
        })
        .collect()
}

/// Counts `L₍d,t₎` for a rational or sink class `t`; irrational classes are
/// decided directly (nonempty exactly when `s(d) ∈ U(t)`, and then
/// infinite).
pub fn l_analysis(g: &Graph, d: &FinPath, t: &OmegaPathSpec) -> Result<LSetAnalysis> {
    check_simple_closed(d)?;
    if let OmegaPathSpec::Irrational { .. } = t {
        let t = t.canonicalize(g)?;
        let cardinality = if t.u_set(g).contains(&d.src()) {
            Cardinality::CountablyInfinite
        } else {
            Cardinality::Empty
        };
        return Ok(LSetAnalysis {
            cardinality,
            horizon: None,
        });
    }
    let tails = tails(g, t)?;

    let start: State = (None, Progress::Prefix(0));
    let mut reachable: BTreeSet<State> = BTreeSet::from([start]);
    let mut succ: BTreeMap<State, Vec<State>> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let next = step(g, d, s);
        for &n in &next {
            if reachable.insert(n) {
                queue.push_back(n);
            }
        }
        succ.insert(s, next);
    }

    let weight: BTreeMap<State, u64> = reachable
        .iter()
        .map(|&s| (s, accepting(g, d, &tails, s)))
        .collect();
    let mut pred: BTreeMap<State, Vec<State>> = BTreeMap::new();
    for (&s, next) in &succ {
        for &n in next {
            pred.entry(n).or_default().push(s);
        }
    }
    let mut useful: BTreeSet<State> = weight
        .iter()
        .filter(|(_, &w)| w > 0)
        .map(|(&s, _)| s)
        .collect();
    let mut queue: VecDeque<State> = useful.iter().copied().collect();
    while let Some(s) = queue.pop_front() {
        for &p in pred.get(&s).into_iter().flatten() {
            if useful.insert(p) {
                queue.push_back(p);
            }
        }
    }
    if useful.is_empty() {
        return Ok(LSetAnalysis {
            cardinality: Cardinality::Empty,
            horizon: None,
        });
    }

    // Kahn's algorithm on the useful part; leftovers mean a cycle.
    let mut indegree: BTreeMap<State, usize> = useful.iter().map(|&s| (s, 0)).collect();
    for s in &useful {
        for n in &succ[s] {
            if let Some(k) = indegree.get_mut(n) {
                *k += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(useful.len());
    let mut ready: VecDeque<State> = indegree
        .iter()
        .filter(|(_, &k)| k == 0)
        .map(|(&s, _)| s)
        .collect();
    while let Some(s) = ready.pop_front() {
        order.push(s);
        for n in &succ[&s] {
            if let Some(k) = indegree.get_mut(n) {
                *k -= 1;
                if *k == 0 {
                    ready.push_back(*n);
                }
            }
        }
    }
    if order.len() < useful.len() {
        return Ok(LSetAnalysis {
            cardinality: Cardinality::CountablyInfinite,
            horizon: None,
        });
    }

    let mut walks: BTreeMap<State, u64> = BTreeMap::from([(start, 1)]);
    let mut depth: BTreeMap<State, usize> = BTreeMap::from([(start, 0)]);
    let mut total: u64 = 0;
    let mut horizon = 0;
    for s in &order {
        let Some(&n) = walks.get(s) else { continue };
        let len = depth[s];
        let w = weight[s];
        if w > 0 {
            total = n
                .checked_mul(w)
                .and_then(|x| total.checked_add(x))
                .ok_or(Error::CountOverflow)?;
            horizon = horizon.max(len);
        }
        for next in &succ[s] {
            if !useful.contains(next) {
                continue;
            }
            let slot = walks.entry(*next).or_insert(0);
            *slot = slot.checked_add(n).ok_or(Error::CountOverflow)?;
            let dslot = depth.entry(*next).or_insert(0);
            *dslot = (*dslot).max(len + 1);
        }
    }
    Ok(LSetAnalysis {
        cardinality: if total == 0 {
            Cardinality::Empty
        } else {
            Cardinality::Finite(total)
        },
        horizon: (total > 0).then_some(horizon),
    })
}

/// `|L₍d,t₎|`.
pub fn l_cardinality(g: &Graph, d: &FinPath, t: &OmegaPathSpec) -> Result<Cardinality> {
    Ok(l_analysis(g, d, t)?.cardinality)
}

/// Members of `L₍d,t₎` whose canonical prefix has length at most
/// `max_len`, in increasing order.
pub fn l_set_enumerate(
    g: &Graph,
    d: &FinPath,
    t: &OmegaPathSpec,
    max_len: usize,
) -> Result<Vec<OmegaPathSpec>> {
    check_simple_closed(d)?;
    let tails = tails(g, t)?;
    let targets: BTreeSet<VertexId> = match &tails {
        Tails::Sink(w) => BTreeSet::from([*w]),
        Tails::Rotations(rs) => rs.iter().map(FinPath::src).collect(),
    };
    let alive = g.reaching(&targets);
    let mut found = BTreeSet::new();
    let mut alpha = FinPath::vertex(d.src());
    enumerate_from(g, d, &tails, &alive, max_len, &mut alpha, &mut found);
    Ok(found.into_iter().collect())
}

fn enumerate_from(
    g: &Graph,
    d: &FinPath,
    tails: &Tails,
    alive: &BTreeSet<VertexId>,
    max_len: usize,
    alpha: &mut FinPath,
    found: &mut BTreeSet<OmegaPathSpec>,
) {
    if !alive.contains(&alpha.rng()) || d.is_prefix_of(alpha) {
        return;
    }
    let candidates: Vec<OmegaPathSpec> = match tails {
        Tails::Sink(w) if alpha.rng() == *w => vec![OmegaPathSpec::Sink {
            prefix: alpha.clone(),
        }],
        Tails::Sink(_) => Vec::new(),
        Tails::Rotations(rs) => rs
            .iter()
            .filter(|r| r.src() == alpha.rng())
            .map(|r| OmegaPathSpec::Lasso {
                prefix: alpha.clone(),
                cycle: r.clone(),
            })
            .collect(),
    };
    for c in candidates {
        let c = c.canonicalize(g).expect("well-formed candidate");
        if !c.divisible_by(g, d) {
            found.insert(c);
        }
    }
    if alpha.len() == max_len {
        return;
    }
    for &e in g.out_edges(alpha.rng()) {
        alpha.push(g, e).expect("out-edge composes");
        enumerate_from(g, d, tails, alive, max_len, alpha, found);
        *alpha = alpha.prefix(g, alpha.len() - 1);
    }
}
