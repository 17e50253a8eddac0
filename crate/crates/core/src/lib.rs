//! Exact-arithmetic toolkit for Leonard pairs and Leonard systems.
//!
//! A Leonard pair is an ordered pair of linear transformations, each
//! multiplicity-free, each acting in irreducible tridiagonal fashion on an
//! eigenbasis of the other. This crate constructs such pairs from parameter
//! arrays, validates parameter arrays, recognizes Leonard pairs given as
//! matrices, walks the relative (D4) orbit, checks the associated cubic
//! operator relations, and produces the attached orthogonal-polynomial data,
//! all over exact fields: the rationals or a prime field GF(p).

pub mod exactfield;
pub mod io;
pub mod params;
pub mod polys;
pub mod relations;
pub mod system;
