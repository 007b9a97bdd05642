//! Exact computer algebra for geometric affine Kac-Moody algebras.
//!
//! The crate builds `L̂(g,σ) = L(g,σ) ⊕ Fc ⊕ Fd` from a finite reductive Lie
//! algebra `g` with a twist `σ` of order one or two, using finite Laurent
//! expansions and Gaussian-rational scalars throughout. On top of that it
//! models involutions, real forms, Cartan decompositions and the orthogonal
//! symmetric pairs built from them, including the full catalog for `a₁⁽¹⁾`.

pub mod cartan;
pub mod error;
pub mod findim;
pub mod involution;
pub mod io;
pub mod kmext;
pub mod linalg;
pub mod loops;
pub mod osaka;
pub mod random;
pub mod scalar;
