//! Exact computation of the rank 1, 2 and 3 hairy graph homology quotients
//! `H_r(H)` and `Ω_r(H)` for `H = Sym(V)` and `H = T(V)`, with their
//! GL-irreducible decompositions.

pub mod combinatorics;
pub mod decompose;
pub mod exactla;
pub mod hopf;
pub mod linear;
pub mod presentations;
pub mod tensorspace;
pub mod report;
