//! Chordal elimination for sparse systems of polynomial equations.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: exact coefficient fields (rationals and prime fields).
//! * [`poly`]: sparse multivariate polynomials, monomial orders, division
//!   and the structural predicates used by the certificates.
//! * [`groebner`]: a Buchberger engine plus elimination ideals, ideal
//!   intersection and zero-dimensionality tests.
//! * [`chordal`]: graphs of polynomial systems, maximum cardinality search,
//!   chordal completions and elimination trees.
//! * [`elim`]: chordal elimination with its inner/outer bounds and success
//!   certificates.
//! * [`cliques`]: clique elimination ideals, variety enumeration over prime
//!   fields and solution merging along the elimination tree.
//! * [`system`], [`gen`] and [`pipeline`]: file formats, problem generators
//!   and the report assembly used by the command-line front end.
//!
//! With the default `parallel` feature, batch work (variety enumeration,
//! sibling cliques, S-pair checks) runs on the rayon thread pool; without it
//! the same code paths run sequentially.

pub mod arith;
pub mod chordal;
pub mod cliques;
pub mod elim;
pub mod exec;
pub mod gen;
pub mod groebner;
pub mod pipeline;
pub mod poly;
pub mod system;

pub use arith::{ArithError, FieldElement, FieldSpec};
pub use chordal::{ChordalContext, Graph, GraphError};
pub use cliques::{CliqueError, CliqueIdeals};
pub use elim::{Certificate, ElimError, EliminationOptions, EliminationTrace};
pub use groebner::{GeneratorSet, GroebnerBasis};
pub use poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};
pub use system::SystemFile;
