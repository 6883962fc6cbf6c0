//! Chen simple modules `V_[p]`.
//!
//! `V_[p]` has the infinite paths tail-equivalent to `p` as a basis, with
//! `v·q = q` when `s(q) = v`, `e·q = eq` when `r(e) = s(q)`, and
//! `e*·q = τ>1(q)` when `q` starts with `e`; every other product is zero.
//! A [`ChenElement`] is a finite combination of canonical basis paths.
//!
//! Irrational basis paths are only known up to their prefix, so a ghost
//! path that would read past it is refused with
//! [`Error::Undetermined`](crate::Error::Undetermined) instead of being
//! guessed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::graph::{is_primitive, FinPath, Graph, GraphTag, VertexId};
use crate::omega::OmegaPathSpec;
use crate::Scalar;

/// An element of a Chen simple module.
#[derive(Clone, PartialEq, Eq)]
pub struct ChenElement {
    tag: GraphTag,
    class: OmegaPathSpec,
    terms: BTreeMap<OmegaPathSpec, Scalar>,
}

impl ChenElement {
    /// Zero in the module of the class of `class`.
    pub fn zero(g: &Graph, class: &OmegaPathSpec) -> Result<ChenElement> {
        let class = class.canonicalize(g)?.class_root(g);
        Ok(ChenElement {
            tag: g.tag(),
            class,
            terms: BTreeMap::new(),
        })
    }

    /// The basis vector `p`.
    pub fn basis(g: &Graph, p: &OmegaPathSpec) -> Result<ChenElement> {
        let mut out = ChenElement::zero(g, p)?;
        out.terms.insert(p.canonicalize(g)?, Scalar::one());
        Ok(out)
    }

    /// `Σ kᵢ pᵢ` over paths of one class.
    pub fn from_terms(
        g: &Graph,
        class: &OmegaPathSpec,
        terms: impl IntoIterator<Item = (Scalar, OmegaPathSpec)>,
    ) -> Result<ChenElement> {
        let mut out = ChenElement::zero(g, class)?;
        for (c, p) in terms {
            let p = p.canonicalize(g)?;
            if !p.tail_equivalent(g, &out.class) {
                return Err(Error::Precondition(
                    "every path of a Chen element must be tail-equivalent to its class".into(),
                ));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    /// Canonical representative of the class: `c^∞`, `w^∞`, or the
    /// prefix-free irrational spec.
    pub fn class(&self) -> &OmegaPathSpec {
        &self.class
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

    pub fn terms(&self) -> impl Iterator<Item = (&OmegaPathSpec, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &OmegaPathSpec) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, k: &Scalar) -> ChenElement {
        let mut out = self.empty_like();
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect();
        }
        out
    }

    pub fn plus(&self, other: &ChenElement) -> Result<ChenElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &ChenElement) -> Result<ChenElement> {
        self.plus(&other.scale(&-Scalar::one()))
    }

    /// The part supported on paths starting at `v`, i.e. `v·t`.
    pub fn restrict(&self, v: VertexId) -> ChenElement {
        let mut out = self.empty_like();
        out.terms = self
            .terms
            .iter()
            .filter(|(p, _)| p.src() == v)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        out
    }

    pub(crate) fn empty_like(&self) -> ChenElement {
        ChenElement {
            tag: self.tag,
            class: self.class.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add_term(&mut self, p: OmegaPathSpec, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
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

    fn check_same(&self, other: &ChenElement) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::GraphMismatch);
        }
        if self.class != other.class {
            return Err(Error::Precondition(
                "elements belong to different Chen modules".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for ChenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `αβ*·q`, or `None` when it vanishes.
pub fn act_monomial(g: &Graph, m: &Monomial, q: &OmegaPathSpec) -> Result<Option<OmegaPathSpec>> {
    let beta = m.beta();
    if q.src() != beta.src() {
        return Ok(None);
    }
    let n = beta.len();
    if let Some(k) = q.determined_len() {
        if n > k {
            if q.prefix().edges() != &beta.edges()[..k] {
                return Ok(None);
            }
            return Err(Error::Undetermined {
                determined: k,
                requested: n,
            });
        }
    }
    if q.leading_edges(g, n) != beta.edges() {
        return Ok(None);
    }
    let (_, tail) = q.truncate(g, n)?;
    Ok(tail.prepend_path(g, m.alpha()))
}

/// The module action `a·t`.
pub fn act(g: &Graph, a: &AlgebraElement, t: &ChenElement) -> Result<ChenElement> {
    if a.tag() != g.tag() || t.tag != g.tag() {
        return Err(Error::GraphMismatch);
    }
    let mut out = t.empty_like();
    for (m, ca) in a.terms() {
        for (q, cq) in &t.terms {
            if let Some(p) = act_monomial(g, m, q)? {
                out.add_term(p, ca * cq);
            }
        }
    }
    Ok(out)
}

/// Checks that `d` is a simple closed path.
pub fn check_simple_closed(d: &FinPath) -> Result<()> {
    if d.is_empty() || !d.is_closed() {
        return Err(Error::NotClosed);
    }
    if !is_primitive(d.edges()) {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// `t = k·d^∞ + t₀ + d·t₁ + ⋯ + d^s·t_s` with every `tᵢ` supported on
/// paths from `s(d)` not divisible by `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDegreeDecomposition {
    pub k_dinf: Scalar,
    pub layers: Vec<ChenElement>,
    pub degree: usize,
}

impl DDegreeDecomposition {
    /// `k·d^∞ + Σ dⁱtᵢ`.
    pub fn reassemble(&self, g: &Graph, d: &FinPath, class: &ChenElement) -> Result<ChenElement> {
        let mut out = class.empty_like();
        if !self.k_dinf.is_zero() {
            out.add_term(OmegaPathSpec::cyclic(g, d)?, self.k_dinf.clone());
        }
        for (i, layer) in self.layers.iter().enumerate() {
            let di = d.power(i);
            for (p, c) in layer.terms() {
                let shifted = p.prepend_path(g, &di).expect("layer paths start at s(d)");
                out.add_term(shifted, c.clone());
            }
        }
        Ok(out)
    }
}

/// Splits an `s(d)`-supported element by its `d`-degree.
pub fn d_decompose(g: &Graph, t: &ChenElement, d: &FinPath) -> Result<DDegreeDecomposition> {
    check_simple_closed(d)?;
    if t.tag != g.tag() {
        return Err(Error::GraphMismatch);
    }
    let v = d.src();
    if t.terms.keys().any(|p| p.src() != v) {
        return Err(Error::Precondition(
            "the d-degree is defined only for elements with s(d)·t = t".into(),
        ));
    }
    let d_inf = OmegaPathSpec::cyclic(g, d)?;
    let mut k_dinf = Scalar::zero();
    let mut layers: Vec<ChenElement> = Vec::new();
    for (q, c) in &t.terms {
        let mut current = q.clone();
        let mut depth = 0;
        loop {
            if current == d_inf {
                k_dinf += c;
                break;
            }
            if !current.divisible_by(g, d) {
                while layers.len() <= depth {
                    layers.push(t.empty_like());
                }
                layers[depth].add_term(current, c.clone());
                break;
            }
            current = current.truncate(g, d.len())?.1;
            depth += 1;
        }
    }
    while layers.last().is_some_and(ChenElement::is_zero) {
        layers.pop();
    }
    let degree = layers.len().saturating_sub(1);
    Ok(DDegreeDecomposition {
        k_dinf,
        layers,
        degree,
    })
}

/// Why `(d − 1)X = t` has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `t` has a nonzero `d^∞` component.
    DInfinity { coefficient: Scalar },
    /// The layer coefficients of `u ∈ L₍d,q₎` do not sum to zero.
    LayerSum { path: OmegaPathSpec, sum: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftSolution {
    Solution { x: ChenElement },
    NoSolution { obstruction: Obstruction },
}

/// Solves `(d − 1)X = t` in the Chen module of `t`.
///
/// The part of `t` off `s(d)` is killed by `d`, so it is matched by its
/// negative. On the `s(d)` part, write `t = k·d^∞ + Σᵢ Σ_u c_{i,u} dⁱu`;
/// a solution exists exactly when `k = 0` and `Σᵢ c_{i,u} = 0` for every
/// `u`, and then `X = Σ_u Σᵢ c_{i,u} Σ_{j<i} dʲu`.
pub fn solve_shift_equation(g: &Graph, d: &FinPath, t: &ChenElement) -> Result<ShiftSolution> {
    check_simple_closed(d)?;
    let v = d.src();
    let t_v = t.restrict(v);
    let t_o = t.minus(&t_v)?;
    let decomposition = d_decompose(g, &t_v, d)?;
    if !decomposition.k_dinf.is_zero() {
        return Ok(ShiftSolution::NoSolution {
            obstruction: Obstruction::DInfinity {
                coefficient: decomposition.k_dinf,
            },
        });
    }
    let mut sums: BTreeMap<OmegaPathSpec, Scalar> = BTreeMap::new();
    for layer in &decomposition.layers {
        for (u, c) in layer.terms() {
            *sums.entry(u.clone()).or_insert_with(Scalar::zero) += c;
        }
    }
    if let Some((u, s)) = sums.into_iter().find(|(_, s)| !s.is_zero()) {
        return Ok(ShiftSolution::NoSolution {
            obstruction: Obstruction::LayerSum { path: u, sum: s },
        });
    }
    let mut x = t_o.scale(&-Scalar::one());
    for (i, layer) in decomposition.layers.iter().enumerate() {
        for (u, c) in layer.terms() {
            for j in 0..i {
                let shifted = u.prepend_path(g, &d.power(j)).expect("u starts at s(d)");
                x.add_term(shifted, c.clone());
            }
        }
    }
    Ok(ShiftSolution::Solution { x })
}

/// `(d − 1)·X` with `1` the unit of `L_K(E)`.
pub fn shift_image(g: &Graph, d: &FinPath, x: &ChenElement) -> Result<ChenElement> {
    let dx = act(g, &AlgebraElement::path(g, d), x)?;
    dx.minus(x)
}
