//! Exact affine Hecke algebras `H(r, z)` of `GL_r`, the isomorphism
//! `H(2, z) ≅ H(2, 1)`, and descriptor-level Bernstein-block bookkeeping
//! for `GL_N` over a division algebra.
//!
//! All arithmetic is exact: coefficients are rationals ([`coeff::Rat`]) in
//! numeric mode or rational functions in `v` ([`coeff::RatFunc`]) in
//! symbolic mode.

pub mod bernstein;
pub mod cli;
pub mod coeff;
pub mod hecke;
pub mod iso;
pub mod parser;
pub mod tadic;
pub mod weyl;
