//! Exact-arithmetic laboratory for polynomial identities of finite-dimensional
//! associative algebras carrying group, Hopf, or generalized Hopf actions.
//!
//! Everything is computed over the rationals with no floating point anywhere:
//! Jacobson radicals via the regular trace form, equivariant Wedderburn–Malcev
//! decompositions, polynomial-identity exponents from radical-linked chains of
//! simple components, codimension sequences of labelled multilinear
//! polynomials, cocharacter multiplicities, and the alternating-polynomial
//! constructions that certify lower bounds. The `scenario` module reads and
//! writes the JSON exchange format consumed by the `pilab` command-line tool.

pub mod actions;
pub mod exactalg;
pub mod gallery;
pub mod identities;
pub mod rat;
pub mod symfun;
pub mod report;
pub mod scenario;
pub mod linalg;
