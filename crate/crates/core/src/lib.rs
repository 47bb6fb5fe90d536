//! Finite, effective Morita theory.
//!
//! Everything here is finite and checked exhaustively: finite categories with
//! explicit composition tables, Karoubi envelopes and Morita-equivalence
//! decision procedures, truncated simplicial sets and nerves, finite coloured
//! symmetric operads, the operad-to-algebraic-theory functor, free operads on
//! rooted trees with their dendroidal nerves, and two-sided bar constructions
//! computing homotopy left Kan extensions at truncated level.
//!
//! Each construction with a second algebraic route is cross-checked against an
//! independent brute-force oracle; [`verify`] bundles all of these checks into
//! a seeded randomized suite.

pub mod bar;
pub mod corpus;
pub mod fincat;
pub mod json;
pub mod limits;
pub mod operad;
pub mod simpset;
pub mod theory;
pub mod verify;
