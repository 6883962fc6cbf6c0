//! Exact computation in Leavitt path algebras of finite graphs.
//!
//! The crate works over the rationals with arbitrary precision. It covers
//! the algebra `L_K(E)` of a finite graph `E` and the Chen simple modules
//! built from infinite paths of `E`:
//!
//! * [`graph`]: graphs, finite paths, exits, line points, closed paths.
//! * [`algebra`]: monomials `αβ*`, normal forms and products.
//! * [`omega`]: sink, rational and irrational infinite paths.
//! * [`chen`]: the module action and the shift equation `(d − 1)X = t`.
//! * [`lset`]: the path sets `L₍d,t₎` and their cardinality.
//! * [`homology`]: presentations, kernel membership and `Ext¹`.
//! * [`textio`]: the `.lpa` graph format and the text grammars.
//! * [`cli`]: the `lpa` command.
//!
//! ```
//! use leavitt::graph::Graph;
//! use leavitt::homology::{ext_dim, ExtDim};
//! use leavitt::textio::parse_spec;
//!
//! let g = Graph::builder()
//!     .vertices(["v", "w"])
//!     .edge("d", "v", "v")
//!     .edge("e1", "v", "w")
//!     .edge("e2", "v", "w")
//!     .edge("f", "w", "w")
//!     .build()?;
//! let s = parse_spec(&g, "rat: (d)^inf")?;
//! let t = parse_spec(&g, "rat: (f)^inf")?;
//! assert_eq!(ext_dim(&g, &s, &t)?.dim, ExtDim::Finite(2));
//! # Ok::<(), leavitt::Error>(())
//! ```

pub mod algebra;
pub mod chen;
pub mod cli;
pub mod error;
pub mod graph;
pub mod homology;
pub mod lset;
pub mod omega;
pub mod textio;

pub use error::{Error, Result};

/// Exact rational scalars.
pub type Scalar = num_rational::BigRational;

/// The guide's chapters, compiled so that their snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/infinite-paths.md")]
    mod infinite_paths {}
    #[doc = include_str!("../../../book/src/chen-modules.md")]
    mod chen_modules {}
    #[doc = include_str!("../../../book/src/lsets.md")]
    mod lsets {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
