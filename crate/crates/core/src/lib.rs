//! Exact computer algebra for edge ideals of vertex-weighted digraphs.
//!
//! The crate builds monomial ideals from weighted digraphs, computes their
//! exact graded Betti numbers (and the derived regularity, projective
//! dimension and depth) through Taylor-complex homology over a finite field
//! or the rationals, and checks closed-form predictions for powers of the
//! ideals against that homology oracle.
//!
//! Everything is deterministic: values are exact integers, generator order
//! is canonical, and randomized sweeps are driven by explicit seeds.

pub mod betti;
pub mod digraph;
pub mod export;
pub mod formulas;
pub mod ideal;
pub mod monomial;
pub mod splitting;
pub mod verify;

pub use betti::{BettiEngine, BettiError, BettiTable, EngineKind, FieldSpec};
pub use digraph::{Family, FamilyTag, GraphError, WeightedDigraph};
pub use ideal::{IdealError, MonomialIdeal, ParseError};
pub use monomial::{Monomial, VariableContext};
