//! Exact-arithmetic computational algebra for Laurent polynomial identities.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalars`] — exact coefficient arithmetic over ℚ, ℤ and prime fields GF(p).
//! * [`words`] — free-group words, noncommutative Laurent polynomials and their
//!   evaluation on algebra units.
//! * [`groups`] — finite groups as multiplication tables, with the structural
//!   predicates the group-algebra analysis needs.
//! * [`algebras`] — concrete finite-dimensional algebras: Mₙ(K), Tₙ(K) and K[G].
//! * [`engine`] — quantified identity checking (LPI / PI / group identities /
//!   GPI / standard polynomials) in exhaustive and seeded-random modes.
//! * [`construction`] — the derivation pipeline that turns an admissible LPI
//!   into the univariate polynomials f₀, f₂, f with their degree bounds, plus
//!   the Vandermonde nilpotency extraction.
//! * [`hartley`] — the group-algebra analysis pipeline (semiprimeness,
//!   idempotent centrality, S₄) and the inadmissible-LPI counterexample demo.

pub mod algebras;
pub mod construction;
pub mod engine;
pub mod groups;
pub mod hartley;
pub(crate) mod linalg;
pub mod scalars;
pub mod words;
