//! Canonical Kähler representations of states over finite-dimensional
//! Jordan-Lie-Banach algebras.
//!
//! The crate builds, from a matrix algebra and a state on it, the quotient
//! manifold of element pairs with its metric, symplectic form, and complex
//! structure, represents algebra elements as quadratic functions on that
//! manifold, runs exact linear Hamiltonian flows, and constructs the linear
//! isomorphism between any two such structures over the same state. Every
//! defining axiom and derived identity is backed by an executable check
//! with explicit tolerances.

pub mod algebra;
pub mod correspondence;
pub mod dynamics;
pub mod error;
pub mod kahler;
pub mod linalg;
pub mod representation;
pub mod states;
pub mod uniqueness;

pub use algebra::{
    check_appendix_identity, check_jlb_axioms, sample_cstar, sample_hermitian, AppendixIdentity,
    AxiomReport, CstarElement, JlbElement, MatrixAlgebra,
};
pub use error::{Error, Result};
pub use kahler::{build_kahler, KahlerPoint, KahlerStructure, PairVector};
pub use states::StateFunctional;
