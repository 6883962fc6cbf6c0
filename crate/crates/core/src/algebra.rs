//! Exact arithmetic in the Leavitt path algebra `L_K(E)` over `K = ℚ`.
//!
//! Elements are finite combinations of standard-form monomials `αβ*`. An
//! [`AlgebraElement`] always holds its terms in the normal-form basis: no
//! monomial has both `α` and `β` ending in the special edge `γ(u)` of their
//! common penultimate vertex `u`. Rewriting such a monomial by
//!
//! ```text
//! α'γ(β'γ)*  ->  α'β'* - Σ_{e ∈ s⁻¹(u), e ≠ γ} (α'e)(β'e)*
//! ```
//!
//! terminates (the first summand is shorter, the others are irreducible) and
//! the result does not depend on the order of rewrites, so equality of
//! elements is equality of their term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FinPath, Graph, GraphTag, VertexId};
use crate::Scalar;

/// A standard-form monomial `αβ*` with `r(α) = r(β)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: FinPath,
    beta: FinPath,
}

impl Monomial {
    pub fn new(alpha: FinPath, beta: FinPath) -> Result<Monomial> {
        if alpha.rng() != beta.rng() {
            return Err(Error::Precondition(
                "a standard-form monomial αβ* needs r(α) = r(β)".into(),
            ));
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            alpha: FinPath::vertex(v),
            beta: FinPath::vertex(v),
        }
    }

    /// The real path `α`.
    pub fn path(alpha: FinPath) -> Monomial {
        let beta = FinPath::vertex(alpha.rng());
        Monomial { alpha, beta }
    }

    /// The ghost path `β*`.
    pub fn ghost(beta: FinPath) -> Monomial {
        let alpha = FinPath::vertex(beta.rng());
        Monomial { alpha, beta }
    }

    pub fn alpha(&self) -> &FinPath {
        &self.alpha
    }

    pub fn beta(&self) -> &FinPath {
        &self.beta
    }

    /// `s(α)`: the vertex `u` with `uμ = μ`.
    pub fn source(&self) -> VertexId {
        self.alpha.src()
    }

    /// `r(μ) := s(β)`: the vertex `u` with `μu = μ`.
    pub fn range(&self) -> VertexId {
        self.beta.src()
    }

    pub fn degree(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    /// `(αβ*)* = βα*`.
    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        !self.is_reducible(g)
    }

    fn is_reducible(&self, g: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(a), Some(b)) => a == b && g.special_edge(g.src(a)) == Some(a),
            _ => false,
        }
    }

    /// Product of two monomials in the free path calculus with (CK1):
    /// `(αβ*)(γδ*)` is `(αγ')δ*` when `γ = βγ'`, `α(δβ')*` when `β = γβ'`,
    /// and zero otherwise.
    pub fn times(&self, other: &Monomial) -> Option<Monomial> {
        let beta = &self.beta;
        let gamma = &other.alpha;
        if beta.src() != gamma.src() {
            return None;
        }
        if gamma.edges().starts_with(beta.edges()) {
            let rest = &gamma.edges()[beta.len()..];
            let mut alpha = self.alpha.clone();
            extend_unchecked(&mut alpha, rest, gamma.rng());
            Some(Monomial {
                alpha,
                beta: other.beta.clone(),
            })
        } else if beta.edges().starts_with(gamma.edges()) {
            let rest = &beta.edges()[gamma.len()..];
            let mut new_beta = other.beta.clone();
            extend_unchecked(&mut new_beta, rest, beta.rng());
            Some(Monomial {
                alpha: self.alpha.clone(),
                beta: new_beta,
            })
        } else {
            None
        }
    }
}

fn extend_unchecked(path: &mut FinPath, rest: &[EdgeId], end: VertexId) {
    if rest.is_empty() {
        return;
    }
    let mut edges = path.edges().to_vec();
    edges.extend_from_slice(rest);
    *path = FinPath::from_raw(path.src(), end, edges);
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.edges().cmp(other.alpha.edges()))
            .then_with(|| self.beta.edges().cmp(other.beta.edges()))
            .then_with(|| self.alpha.src().cmp(&other.alpha.src()))
            .then_with(|| self.beta.src().cmp(&other.beta.src()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})*", self.alpha, self.beta)
    }
}

/// A finite combination of monomials with no normal-form guarantee; the
/// input type of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawElement {
    tag: GraphTag,
    terms: Vec<(Scalar, Monomial)>,
}

impl RawElement {
    pub fn new(g: &Graph) -> RawElement {
        RawElement {
            tag: g.tag(),
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coeff: Scalar, m: Monomial) {
        self.terms.push((coeff, m));
    }

    pub fn with(mut self, coeff: Scalar, m: Monomial) -> RawElement {
        self.push(coeff, m);
        self
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }
}

impl From<&AlgebraElement> for RawElement {
    fn from(a: &AlgebraElement) -> RawElement {
        RawElement {
            tag: a.tag,
            terms: a.terms.iter().map(|(m, c)| (c.clone(), m.clone())).collect(),
        }
    }
}

impl From<AlgebraElement> for RawElement {
    fn from(a: AlgebraElement) -> RawElement {
        RawElement::from(&a)
    }
}

/// An element of `L_K(E)` in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    tag: GraphTag,
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero(g: &Graph) -> AlgebraElement {
        AlgebraElement {
            tag: g.tag(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `Σ_v v`.
    pub fn one(g: &Graph) -> AlgebraElement {
        let mut out = AlgebraElement::zero(g);
        for v in g.vertices() {
            out.terms.insert(Monomial::vertex(v), Scalar::one());
        }
        out
    }

    pub fn monomial(g: &Graph, m: Monomial) -> AlgebraElement {
        normalize(g, RawElement::new(g).with(Scalar::one(), m))
    }

    pub fn vertex(g: &Graph, v: VertexId) -> AlgebraElement {
        AlgebraElement::monomial(g, Monomial::vertex(v))
    }

    pub fn path(g: &Graph, p: &FinPath) -> AlgebraElement {
        AlgebraElement::monomial(g, Monomial::path(p.clone()))
    }

    pub fn ghost(g: &Graph, p: &FinPath) -> AlgebraElement {
        AlgebraElement::monomial(g, Monomial::ghost(p.clone()))
    }

    pub fn edge(g: &Graph, e: EdgeId) -> AlgebraElement {
        AlgebraElement::path(g, &FinPath::edge(g, e))
    }

    pub fn edge_star(g: &Graph, e: EdgeId) -> AlgebraElement {
        AlgebraElement::ghost(g, &FinPath::edge(g, e))
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, k: &Scalar) -> AlgebraElement {
        if k.is_zero() {
            return AlgebraElement {
                tag: self.tag,
                terms: BTreeMap::new(),
            };
        }
        AlgebraElement {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    /// The involution `Σ kᵢ αᵢβᵢ* ↦ Σ kᵢ βᵢαᵢ*`.
    pub fn star(&self, g: &Graph) -> AlgebraElement {
        let mut raw = RawElement::new(g);
        for (m, c) in &self.terms {
            raw.push(c.clone(), m.star());
        }
        normalize(g, raw)
    }

    /// Largest ghost length among the terms.
    pub fn ghost_depth(&self) -> usize {
        self.terms.keys().map(|m| m.beta.len()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        add_to(&mut self.terms, m, c);
    }
}

fn add_to(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.tag, rhs.tag, "adding elements of different graphs");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.tag, rhs.tag, "subtracting elements of different graphs");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }
}

impl Mul<&AlgebraElement> for &Scalar {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        rhs.scale(self)
    }
}

impl<'a> std::iter::Sum<&'a AlgebraElement> for Option<AlgebraElement> {
    fn sum<I: Iterator<Item = &'a AlgebraElement>>(iter: I) -> Self {
        iter.fold(None, |acc, x| match acc {
            None => Some(x.clone()),
            Some(a) => Some(&a + x),
        })
    }
}

/// Sum of elements of `g`; the empty sum is zero.
pub fn sum<'a>(g: &Graph, items: impl IntoIterator<Item = &'a AlgebraElement>) -> AlgebraElement {
    items
        .into_iter()
        .fold(AlgebraElement::zero(g), |acc, x| &acc + x)
}

/// Adds `coeff · nf(m)` into `out`, reducing the monomial along its chain
/// of shared special-edge suffixes.
fn push_normal_form(g: &Graph, m: Monomial, coeff: &Scalar, out: &mut BTreeMap<Monomial, Scalar>) {
    let mut current = m;
    while current.is_reducible(g) {
        let (shorter, siblings) = rewrite_once(g, &current);
        for s in siblings {
            add_to(out, s, -coeff.clone());
        }
        current = shorter;
    }
    add_to(out, current, coeff.clone());
}

/// One (CK2) rewrite of a reducible monomial: the shortened monomial and
/// the sibling monomials that enter with coefficient −1.
fn rewrite_once(g: &Graph, m: &Monomial) -> (Monomial, Vec<Monomial>) {
    let gamma = m.alpha.last_edge().expect("reducible monomial");
    let u = g.src(gamma);
    let alpha = m.alpha.prefix(g, m.alpha.len() - 1);
    let beta = m.beta.prefix(g, m.beta.len() - 1);
    let siblings = g
        .out_edges(u)
        .iter()
        .filter(|&&e| e != gamma)
        .map(|&e| {
            let mut a = alpha.clone();
            let mut b = beta.clone();
            a.push(g, e).expect("sibling edge leaves u");
            b.push(g, e).expect("sibling edge leaves u");
            Monomial { alpha: a, beta: b }
        })
        .collect();
    (Monomial { alpha, beta }, siblings)
}

/// Rewrites a combination into the normal-form basis.
pub fn normalize(g: &Graph, raw: impl Into<RawElement>) -> AlgebraElement {
    let raw = raw.into();
    assert_eq!(raw.tag, g.tag(), "element does not belong to this graph");
    let mut terms = BTreeMap::new();
    for (c, m) in raw.terms {
        push_normal_form(g, m, &c, &mut terms);
    }
    AlgebraElement { tag: raw.tag, terms }
}

/// Normalizes by single rewrite steps, letting `pick` choose which of the
/// currently reducible monomials to rewrite next (it receives them in
/// basis order and returns an index). Any strategy yields the same result
/// as [`normalize`].
pub fn normalize_with_order(
    g: &Graph,
    raw: impl Into<RawElement>,
    mut pick: impl FnMut(&[Monomial]) -> usize,
) -> AlgebraElement {
    let raw = raw.into();
    assert_eq!(raw.tag, g.tag(), "element does not belong to this graph");
    let mut terms = BTreeMap::new();
    for (c, m) in raw.terms {
        add_to(&mut terms, m, c);
    }
    loop {
        let reducible: Vec<Monomial> = terms.keys().filter(|m| m.is_reducible(g)).cloned().collect();
        if reducible.is_empty() {
            break;
        }
        let chosen = reducible[pick(&reducible) % reducible.len()].clone();
        let coeff = terms.remove(&chosen).expect("chosen term present");
        let (shorter, siblings) = rewrite_once(g, &chosen);
        add_to(&mut terms, shorter, coeff.clone());
        for s in siblings {
            add_to(&mut terms, s, -coeff.clone());
        }
    }
    AlgebraElement { tag: raw.tag, terms }
}

/// The product `ab` in `L_K(E)`, in normal form.
pub fn multiply(g: &Graph, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    if a.tag != g.tag() || b.tag != g.tag() {
        return Err(Error::GraphMismatch);
    }
    let mut terms = BTreeMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some(m) = ma.times(mb) {
                push_normal_form(g, m, &(ca * cb), &mut terms);
            }
        }
    }
    Ok(AlgebraElement { tag: g.tag(), terms })
}

/// Left-to-right product of several factors.
pub fn product<'a>(
    g: &Graph,
    factors: impl IntoIterator<Item = &'a AlgebraElement>,
) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::one(g);
    for f in factors {
        acc = multiply(g, &acc, f)?;
    }
    Ok(acc)
}

/// `Fᵢ(β) = Σ_{f ∈ Xᵢ(β)} ff*`.
pub fn f_sum(g: &Graph, beta: &FinPath, i: usize) -> Result<AlgebraElement> {
    let exits = g.exits(beta, i)?;
    let mut raw = RawElement::new(g);
    for f in exits {
        let p = FinPath::edge(g, f);
        raw.push(Scalar::one(), Monomial::new(p.clone(), p).expect("ff* is standard"));
    }
    Ok(normalize(g, raw))
}

/// Expresses `q` through `qα = x`:
/// `[xα*, qα_{n-1}F_{n-1}(α)α_{n-1}*, …, qα₁F₁(α)α₁*, qF₀(α)]`, whose sum is `q`.
pub fn solve_for_q_expansion(
    g: &Graph,
    q: &AlgebraElement,
    alpha: &FinPath,
    x: &AlgebraElement,
) -> Result<Vec<AlgebraElement>> {
    if alpha.is_empty() {
        return Err(Error::Precondition("α must have positive length".into()));
    }
    let q_alpha = multiply(g, q, &AlgebraElement::path(g, alpha))?;
    if &q_alpha != x {
        return Err(Error::Precondition("qα ≠ x".into()));
    }
    let n = alpha.len();
    let mut parts = vec![multiply(g, x, &AlgebraElement::ghost(g, alpha))?];
    for i in (0..n).rev() {
        let prefix = alpha.prefix(g, i);
        let term = product(
            g,
            [
                q,
                &AlgebraElement::path(g, &prefix),
                &f_sum(g, alpha, i)?,
                &AlgebraElement::ghost(g, &prefix),
            ],
        )?;
        parts.push(term);
    }
    Ok(parts)
}

/// For `x = x·s(β)` with `xβ = 0`, the components
/// `tᵢ = Σ_{f ∈ Xᵢ(β)} (xβᵢf) f*βᵢ*`, each in `Jᵢ(β)`, summing to `x`.
pub fn annihilator_decomposition(
    g: &Graph,
    x: &AlgebraElement,
    beta: &FinPath,
) -> Result<Vec<AlgebraElement>> {
    let base = AlgebraElement::vertex(g, beta.src());
    if &multiply(g, x, &base)? != x {
        return Err(Error::Precondition("x·s(β) ≠ x".into()));
    }
    if !multiply(g, x, &AlgebraElement::path(g, beta))?.is_zero() {
        return Err(Error::Precondition("xβ ≠ 0".into()));
    }
    let mut parts = Vec::with_capacity(beta.len());
    for i in 0..beta.len() {
        let prefix = beta.prefix(g, i);
        let mut t = AlgebraElement::zero(g);
        for f in g.exits(beta, i)? {
            let mut pf = prefix.clone();
            pf.push(g, f)?;
            let left = multiply(g, x, &AlgebraElement::path(g, &pf))?;
            t = &t + &multiply(g, &left, &AlgebraElement::ghost(g, &pf))?;
        }
        parts.push(t);
    }
    Ok(parts)
}

/// Where a resolution is anchored: a simple closed path or a sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anchor {
    Cycle(FinPath),
    Sink(VertexId),
}

impl Anchor {
    pub fn base(&self) -> VertexId {
        match self {
            Anchor::Cycle(c) => c.src(),
            Anchor::Sink(w) => *w,
        }
    }

    /// The anchor as an algebra element: `c`, or `w` for a sink.
    pub fn element(&self, g: &Graph) -> AlgebraElement {
        match self {
            Anchor::Cycle(c) => AlgebraElement::path(g, c),
            Anchor::Sink(w) => AlgebraElement::vertex(g, *w),
        }
    }
}

/// Membership of a monomial in `S₁(c)` (killed by some `c^N`) or `S₂(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialClass {
    S1,
    /// `μ = α cᵢ* (c*)ⁿ`.
    S2 { alpha: FinPath, i: usize, n: usize },
}

pub fn classify_monomial(g: &Graph, mu: &Monomial, anchor: &Anchor) -> Result<MonomialClass> {
    match anchor {
        Anchor::Sink(w) => {
            if !g.is_sink(*w) {
                return Err(Error::Precondition("anchor vertex is not a sink".into()));
            }
            if mu.range() != *w {
                return Ok(MonomialClass::S1);
            }
            Ok(MonomialClass::S2 {
                alpha: mu.alpha.clone(),
                i: 0,
                n: 0,
            })
        }
        Anchor::Cycle(c) => {
            if c.is_empty() || !c.is_closed() {
                return Err(Error::NotClosed);
            }
            if mu.range() != c.src() {
                return Ok(MonomialClass::S1);
            }
            let t = c.len();
            let along_cycle = mu
                .beta
                .edges()
                .iter()
                .enumerate()
                .all(|(k, &e)| e == c.edges()[k % t]);
            if !along_cycle {
                return Ok(MonomialClass::S1);
            }
            Ok(MonomialClass::S2 {
                alpha: mu.alpha.clone(),
                i: mu.beta.len() % t,
                n: mu.beta.len() / t,
            })
        }
    }
}

/// `cᶻ` for a closed path, with `c⁰ = s(c)` and `c⁻ⁿ = (c*)ⁿ`.
pub fn cycle_power(g: &Graph, c: &FinPath, z: i64) -> AlgebraElement {
    let k = z.unsigned_abs() as usize;
    let p = c.power(k);
    if z >= 0 {
        AlgebraElement::path(g, &p)
    } else {
        AlgebraElement::ghost(g, &p)
    }
}

/// The factor `r` with `cᶻ − v = r·(c − v)`, `v = s(c)`: the telescoping sum
/// `c^{z-1} + … + v` for `z > 0`, and `−cᶻ(c^{-z-1} + … + v)` for `z < 0`.
pub fn telescoping_factor(g: &Graph, c: &FinPath, z: i64) -> AlgebraElement {
    if z == 0 {
        return AlgebraElement::zero(g);
    }
    let k = z.unsigned_abs() as i64;
    let partial = sum(g, &(0..k).map(|j| cycle_power(g, c, j)).collect::<Vec<_>>());
    if z > 0 {
        partial
    } else {
        let lead = cycle_power(g, c, z);
        -&multiply(g, &lead, &partial).expect("same graph")
    }
}
