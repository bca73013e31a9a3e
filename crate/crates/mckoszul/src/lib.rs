//! Exact computational homological algebra over the universal Novikov field.
//!
//! The crate models filtered A∞-algebras over the semisimple base ring
//! 𝕜_Λ = ⊕ᵢ Λπᵢ with exact rational coefficients and exponents, and computes
//! the constructions built on top of them:
//!
//! * [`scalar`] — Novikov-field arithmetic, valuations, truncation windows;
//! * [`ainf`] — structure tables {m_k}, axiom verification, augmentations,
//!   the exact-generator rescaling, and the algebra-definition file grammar;
//! * [`barcobar`] — the reduced bar construction, its continuous dual dga
//!   (BV)^∨, the cobar construction of the dual coalgebra, and the pairing
//!   between the two;
//! * [`mcalg`] — Maurer-Cartan relation extraction, bounded noncommutative
//!   rewriting with confluence certification, exponential changes of
//!   variables;
//! * [`koszul`] — dual pairs (G, L): augmentations, the Koszul map κ,
//!   homomorphism verification, 𝔪-adic quotients, valuation charts;
//! * [`datasets`] — programmatic builders for the worked geometric examples
//!   (torus fibers, T*S¹, the nodal I₁ fiber, the pair of pants, the
//!   deformed conifold) with their closed-form answers;
//! * [`cli`] — the batch front-end exposed by the `mckoszul` binary.
//!
//! Every operation is deterministic: maps are ordered, reports are sorted
//! canonically, and output bytes do not depend on thread count. See the
//! `examples/` directory for a runnable tour of each capability.

pub mod scalar;
pub mod ainf;
pub mod barcobar;
pub mod mcalg;
pub mod koszul;
pub mod datasets;
pub mod cli;

pub use scalar::{BaseScalar, Coeff, EnergyCutoff, NovikovScalar, Val};
