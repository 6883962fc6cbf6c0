//! Projective resolutions of Chen simple modules and `Ext¹` between them.
//!
//! Every Chen simple module is a quotient `L_K(E)u → V_[p]`, `x ↦ x·p`:
//!
//! * `V_[w^∞]` for a sink `w` is isomorphic to `L_K(E)w`, hence projective;
//! * for `c^∞` with `v = s(c)` the kernel is `L_K(E)(c − v)`, and through a
//!   generator `αc^∞` with `u = s(α)` it is `L_K(E)(αcα* − u)`;
//! * for irrational `p` the kernel is `⊕ᵢ Jᵢ(p)` with
//!   `Jᵢ(p) = Σ_{f ∈ Xᵢ(p)} L_K(E) f*pᵢ*`, nonzero infinitely often on a
//!   finite graph, so `V_[p]` is not finitely presented and has projective
//!   dimension one.
//!
//! Since `L_K(E)` is hereditary, `Ext¹` is the only nonzero higher `Ext`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{
    classify_monomial, f_sum, multiply, product, telescoping_factor, AlgebraElement, Anchor,
    MonomialClass,
};
use crate::chen::{act, ChenElement};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FinPath, Graph, VertexId};
use crate::lset::{l_analysis, l_set_enumerate, Cardinality};
use crate::omega::{Concretizer, OmegaPathSpec, PathKind};
use crate::Scalar;

/// One block `Jᵢ(p)`, listed by its generators `f*pᵢ*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JBlock {
    pub index: usize,
    pub generators: Vec<(EdgeId, AlgebraElement)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelGenerators {
    /// The presentation is an isomorphism.
    Trivial,
    /// A principal left ideal `L_K(E)·g`.
    Single(AlgebraElement),
    /// `⊕ᵢ Jᵢ(p)` listed for `i < horizon`; `infinite` records that blocks
    /// keep appearing past it.
    Family {
        blocks: Vec<JBlock>,
        horizon: usize,
        infinite: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub module_type: PathKind,
    /// The vertex `u` of the presentation `L_K(E)u → V`.
    pub presentation_vertex: VertexId,
    /// The infinite path that `u` is sent to.
    pub generator_path: OmegaPathSpec,
    pub kernel: KernelGenerators,
    pub finitely_presented: bool,
    pub projective: bool,
    pub projective_dimension: u8,
    /// For irrational modules, a recurrent vertex with an exit, visited
    /// infinitely often.
    pub branching_witness: Option<VertexId>,
}

/// Closed path (or sink) and generator `α` of a rational or sink module.
struct Anchored {
    anchor: Anchor,
    alpha: FinPath,
}

impl Anchored {
    fn new(g: &Graph, s: &OmegaPathSpec, generator: Option<&FinPath>) -> Result<Anchored> {
        let anchor = match &s.canonicalize(g)? {
            OmegaPathSpec::Sink { prefix } => Anchor::Sink(prefix.rng()),
            OmegaPathSpec::Lasso { cycle, .. } => Anchor::Cycle(cycle.clone()),
            OmegaPathSpec::Irrational { .. } => {
                return Err(Error::IrrationalUnsupported(
                    "irrational modules have no single kernel generator",
                ))
            }
        };
        let alpha = match generator {
            None => FinPath::vertex(anchor.base()),
            Some(a) if a.rng() == anchor.base() => a.clone(),
            Some(a) => {
                return Err(Error::Precondition(format!(
                    "the generator must end at the base vertex #{} of the module, not #{}",
                    anchor.base().0,
                    a.rng().0
                )))
            }
        };
        Ok(Anchored { anchor, alpha })
    }

    fn u(&self) -> VertexId {
        self.alpha.src()
    }

    /// `αc^∞` or `αw^∞`.
    fn generator_path(&self, g: &Graph) -> OmegaPathSpec {
        let spec = match &self.anchor {
            Anchor::Sink(_) => OmegaPathSpec::Sink {
                prefix: self.alpha.clone(),
            },
            Anchor::Cycle(c) => OmegaPathSpec::Lasso {
                prefix: self.alpha.clone(),
                cycle: c.clone(),
            },
        };
        spec.canonicalize(g).expect("anchored generator is well formed")
    }

    /// `αcα* − u`, with `c = w` for a sink; zero for a sink without `α`.
    fn kernel_generator(&self, g: &Graph) -> AlgebraElement {
        let c = self.anchor.element(g);
        let alpha = AlgebraElement::path(g, &self.alpha);
        let alpha_star = AlgebraElement::ghost(g, &self.alpha);
        let acas = product(g, [&alpha, &c, &alpha_star]).expect("same graph");
        &acas - &AlgebraElement::vertex(g, self.u())
    }
}

/// A projective presentation of `V_[s]`, optionally through `α` with
/// `r(α)` the base of the class cycle or sink.
pub fn resolution(
    g: &Graph,
    s: &OmegaPathSpec,
    generator: Option<&FinPath>,
) -> Result<ResolutionReport> {
    let s = s.canonicalize(g)?;
    if let OmegaPathSpec::Irrational { prefix, recurrent } = &s {
        if generator.is_some() {
            return Err(Error::Precondition(
                "an irrational module is presented through its own path; pass it as the spec"
                    .into(),
            ));
        }
        let horizon = prefix.len() + 2 * recurrent.len();
        let blocks = j_blocks(g, &s, horizon)?;
        let hub = Concretizer::new(g, recurrent)?.hub();
        return Ok(ResolutionReport {
            module_type: PathKind::Irrational,
            presentation_vertex: s.src(),
            generator_path: s.clone(),
            kernel: KernelGenerators::Family {
                blocks,
                horizon,
                infinite: true,
            },
            finitely_presented: false,
            projective: false,
            projective_dimension: 1,
            branching_witness: Some(hub),
        });
    }
    let anchored = Anchored::new(g, &s, generator)?;
    let kernel_generator = anchored.kernel_generator(g);
    let (kernel, projective) = match (&anchored.anchor, kernel_generator.is_zero()) {
        (Anchor::Sink(_), true) => (KernelGenerators::Trivial, true),
        (Anchor::Sink(_), false) => (KernelGenerators::Single(kernel_generator), true),
        (Anchor::Cycle(_), _) => (KernelGenerators::Single(kernel_generator), false),
    };
    Ok(ResolutionReport {
        module_type: s.kind(),
        presentation_vertex: anchored.u(),
        generator_path: anchored.generator_path(g),
        kernel,
        finitely_presented: true,
        projective,
        projective_dimension: u8::from(!projective),
        branching_witness: None,
    })
}

/// `Jᵢ(p)` for `i < horizon`, skipping empty blocks. The edges of `p` past
/// its prefix come from the concretized walk.
pub fn j_blocks(g: &Graph, p: &OmegaPathSpec, horizon: usize) -> Result<Vec<JBlock>> {
    let edges = p.leading_edges(g, horizon + 1);
    let path = FinPath::from_edges(g, p.src(), edges)?;
    let mut blocks = Vec::new();
    for i in 0..horizon.min(path.len()) {
        let p_i = path.prefix(g, i);
        let generators: Vec<(EdgeId, AlgebraElement)> = g
            .exits(&path, i)?
            .into_iter()
            .map(|f| {
                let mut beta = p_i.clone();
                beta.push(g, f).expect("exit leaves r(pᵢ)");
                (f, AlgebraElement::ghost(g, &beta))
            })
            .collect();
        if !generators.is_empty() {
            blocks.push(JBlock {
                index: i,
                generators,
            });
        }
    }
    Ok(blocks)
}

/// Whether `λ` lies in the kernel, with a factorization when it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub member: bool,
    pub certificate: Option<Certificate>,
}

/// `λ = factor · generator`, checked by multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub factor: AlgebraElement,
    pub generator: AlgebraElement,
}

/// Decides `λ·P = 0` for the generator path `P` of the presentation, and
/// for rational and sink modules writes `λ` as a left multiple of the
/// kernel generator.
pub fn kernel_membership(
    g: &Graph,
    lam: &AlgebraElement,
    s: &OmegaPathSpec,
    generator: Option<&FinPath>,
) -> Result<MembershipReport> {
    let s = s.canonicalize(g)?;
    if s.kind() == PathKind::Irrational {
        if generator.is_some() {
            return Err(Error::Precondition(
                "an irrational module is presented through its own path".into(),
            ));
        }
        let image = act(g, lam, &ChenElement::basis(g, &s)?)?;
        return Ok(MembershipReport {
            member: image.is_zero(),
            certificate: None,
        });
    }
    let anchored = Anchored::new(g, &s, generator)?;
    let image = act(g, lam, &ChenElement::basis(g, &anchored.generator_path(g))?)?;
    if !image.is_zero() {
        return Ok(MembershipReport {
            member: false,
            certificate: None,
        });
    }
    let certificate = certify(g, lam, &anchored)?;
    Ok(MembershipReport {
        member: true,
        certificate: Some(certificate),
    })
}

fn certify(g: &Graph, lam: &AlgebraElement, anchored: &Anchored) -> Result<Certificate> {
    let u = AlgebraElement::vertex(g, anchored.u());
    let kernel_generator = anchored.kernel_generator(g);
    let q = multiply(g, lam, &u)?;
    let alpha = &anchored.alpha;

    // λu = R·(αcα* − u): first x = λuα = r·(c − v), then expand through α.
    let x = multiply(g, &q, &AlgebraElement::path(g, alpha))?;
    let r = match &anchored.anchor {
        Anchor::Sink(_) => AlgebraElement::zero(g),
        Anchor::Cycle(c) => cycle_factor(g, &x, c)?,
    };
    let mut big_r = multiply(g, &r, &AlgebraElement::ghost(g, alpha))?;
    for i in 0..alpha.len() {
        let a_i = alpha.prefix(g, i);
        let term = product(
            g,
            [
                &q,
                &AlgebraElement::path(g, &a_i),
                &f_sum(g, alpha, i)?,
                &AlgebraElement::ghost(g, &a_i),
            ],
        )?;
        big_r = &big_r - &term;
    }

    let (factor, generator) = if q == *lam {
        (big_r, kernel_generator)
    } else {
        // λ(1 − u) is killed as well; use αcα* − 1 = (αcα* − u) − (1 − u).
        let one_minus_u = &AlgebraElement::one(g) - &u;
        let factor = &multiply(g, &big_r, &u)? - &multiply(g, lam, &one_minus_u)?;
        (factor, &kernel_generator - &one_minus_u)
    };
    if multiply(g, &factor, &generator)? != *lam {
        return Err(Error::Precondition(
            "element acts as zero but the factorization did not close".into(),
        ));
    }
    Ok(Certificate { factor, generator })
}

/// For `x ∈ L_K(E)v` with `x·c^∞ = 0`, an `r` with `x = r(c − v)`.
///
/// Monomials killed by a power of `c` are absorbed by a telescoping sum.
/// A monomial `μ = αcᵢ*(c*)ⁿ` equals `αc'ᵢ − μ·Σ_{j≤n} cʲ·(c − v)` where
/// `c = cᵢc'ᵢ`; the leftover real paths `αc'ᵢ` act as zero in total, so
/// after grouping those with equal action (`y` and `y·c^N`) each group
/// telescopes too.
pub fn cycle_factor(g: &Graph, x: &AlgebraElement, c: &FinPath) -> Result<AlgebraElement> {
    let v = c.src();
    let anchor = Anchor::Cycle(c.clone());
    let mut r = AlgebraElement::zero(g);
    let mut residual: BTreeMap<(FinPath, usize), Scalar> = BTreeMap::new();
    for (mu, k) in x.terms() {
        if mu.range() != v {
            return Err(Error::Precondition("x·s(c) ≠ x".into()));
        }
        let mono = AlgebraElement::monomial(g, mu.clone());
        match classify_monomial(g, mu, &anchor)? {
            MonomialClass::S1 => {
                let mut n = 1;
                while !multiply(g, &mono, &AlgebraElement::path(g, &c.power(n)))?.is_zero() {
                    n += 1;
                }
                let t = telescoping_factor(g, c, n as i64);
                r = &r - &multiply(g, &mono, &t)?.scale(k);
            }
            MonomialClass::S2 { alpha, i, n } => {
                let t = telescoping_factor(g, c, n as i64 + 1);
                r = &r - &multiply(g, &mono, &t)?.scale(k);
                let rest = c.suffix(g, i);
                let y = alpha.concat(&rest).expect("α ends where cᵢ ends");
                let (root, power) = strip_cycle_powers(g, &y, c);
                *residual.entry((root, power)).or_insert_with(Scalar::zero) += k;
            }
        }
    }
    let mut by_root: BTreeMap<FinPath, Vec<(usize, Scalar)>> = BTreeMap::new();
    for ((root, power), k) in residual {
        by_root.entry(root).or_default().push((power, k));
    }
    for (root, group) in by_root {
        let total: Scalar = group.iter().map(|(_, k)| k.clone()).sum();
        if !total.is_zero() {
            return Err(Error::Precondition("x·c^∞ ≠ 0".into()));
        }
        let y = AlgebraElement::path(g, &root);
        for (power, k) in group {
            let t = telescoping_factor(g, c, power as i64);
            r = &r + &multiply(g, &y, &t)?.scale(&k);
        }
    }
    Ok(r)
}

/// Writes `y = y₀·c^N` with `y₀` not ending in `c`.
fn strip_cycle_powers(g: &Graph, y: &FinPath, c: &FinPath) -> (FinPath, usize) {
    let mut y = y.clone();
    let mut n = 0;
    while y.len() >= c.len() && y.edges().ends_with(c.edges()) {
        y = y.prefix(g, y.len() - c.len());
        n += 1;
    }
    (y, n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    pub finitely_presented: bool,
    pub kernel_generator: Option<AlgebraElement>,
    /// A recurrent vertex with an exit, for irrational modules.
    pub branching_witness: Option<VertexId>,
}

pub fn is_finitely_presented(g: &Graph, s: &OmegaPathSpec) -> Result<FinitePresentation> {
    let report = resolution(g, s, None)?;
    Ok(FinitePresentation {
        finitely_presented: report.finitely_presented,
        kernel_generator: match report.kernel {
            KernelGenerators::Single(k) => Some(k),
            _ => None,
        },
        branching_witness: report.branching_witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtDim {
    Zero,
    Finite(u64),
    CountablyInfinite,
}

/// Which branch of the classification decided the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtRule {
    /// `S` comes from a sink, so `S` is projective.
    SinkProjective,
    /// `s(d) ∉ U(T)`.
    RationalOutsideSupport,
    /// `T ≅ S`: `|L₍d,d^∞₎| + 1`.
    RationalSelfLsetPlusOne,
    /// `T ≇ S`: `|L₍d,q₎|`.
    RationalLsetCount,
    /// Some recurrent exit of `S` enters `U(T)`.
    IrrationalExitsReachSupport,
    /// No recurrent exit of `S` enters `U(T)`.
    IrrationalExitsMissSupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtReport {
    pub dim: ExtDim,
    pub rule: ExtRule,
    /// For a finite dimension, one path per basis vector `π(ρ̂_p)`.
    pub witnesses: Vec<OmegaPathSpec>,
    /// For a nonzero irrational case, a recurrent edge and an exit at its
    /// source ending in `U(T)`.
    pub exit_witness: Option<(EdgeId, EdgeId)>,
}

/// `dim_K Ext¹(S, T)` for Chen simple modules `S = V_[s]`, `T = V_[t]`.
pub fn ext_dim(g: &Graph, s: &OmegaPathSpec, t: &OmegaPathSpec) -> Result<ExtReport> {
    let s = s.canonicalize(g)?;
    let t = t.canonicalize(g)?;
    let report = |dim, rule| ExtReport {
        dim,
        rule,
        witnesses: Vec::new(),
        exit_witness: None,
    };
    match &s {
        OmegaPathSpec::Sink { .. } => Ok(report(ExtDim::Zero, ExtRule::SinkProjective)),
        OmegaPathSpec::Lasso { cycle: d, .. } => {
            let u_t = t.u_set(g);
            if !u_t.contains(&d.src()) {
                return Ok(report(ExtDim::Zero, ExtRule::RationalOutsideSupport));
            }
            let d_inf = OmegaPathSpec::cyclic(g, d)?;
            let analysis = l_analysis(g, d, &t)?;
            if t.tail_equivalent(g, &s) {
                return Ok(match analysis.cardinality {
                    Cardinality::Empty => ExtReport {
                        witnesses: vec![d_inf],
                        ..report(ExtDim::Finite(1), ExtRule::RationalSelfLsetPlusOne)
                    },
                    Cardinality::Finite(n) => {
                        let mut witnesses = vec![d_inf];
                        witnesses.extend(l_set_enumerate(g, d, &t, analysis.horizon.unwrap_or(0))?);
                        ExtReport {
                            witnesses,
                            ..report(ExtDim::Finite(n + 1), ExtRule::RationalSelfLsetPlusOne)
                        }
                    }
                    Cardinality::CountablyInfinite => {
                        report(ExtDim::CountablyInfinite, ExtRule::RationalSelfLsetPlusOne)
                    }
                });
            }
            Ok(match analysis.cardinality {
                Cardinality::Empty => report(ExtDim::Zero, ExtRule::RationalLsetCount),
                Cardinality::Finite(n) => ExtReport {
                    witnesses: l_set_enumerate(g, d, &t, analysis.horizon.unwrap_or(0))?,
                    ..report(ExtDim::Finite(n), ExtRule::RationalLsetCount)
                },
                Cardinality::CountablyInfinite => {
                    report(ExtDim::CountablyInfinite, ExtRule::RationalLsetCount)
                }
            })
        }
        OmegaPathSpec::Irrational { recurrent, .. } => {
            let u_t = t.u_set(g);
            let witness = recurrent.iter().find_map(|&e| {
                g.out_edges(g.src(e))
                    .iter()
                    .find(|&&f| f != e && u_t.contains(&g.rng(f)))
                    .map(|&f| (e, f))
            });
            Ok(match witness {
                Some(w) => ExtReport {
                    exit_witness: Some(w),
                    ..report(ExtDim::CountablyInfinite, ExtRule::IrrationalExitsReachSupport)
                },
                None => report(ExtDim::Zero, ExtRule::IrrationalExitsMissSupport),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniserialReport {
    pub exists: bool,
    pub length: usize,
    pub self_ext: ExtDim,
}

/// Whether a uniserial module of the given length with every composition
/// factor `V_[s]` follows from `Ext¹(V_[s], V_[s]) ≠ 0`.
pub fn uniserial_report(g: &Graph, s: &OmegaPathSpec, length: usize) -> Result<UniserialReport> {
    let ext = ext_dim(g, s, s)?;
    Ok(UniserialReport {
        exists: ext.dim != ExtDim::Zero,
        length,
        self_ext: ext.dim,
    })
}
