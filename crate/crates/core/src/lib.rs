//! Exact computations for verifying generator exponents, rigidity and ramification of
//! specializations of Galois covers of the projective line.

pub mod perm;
pub mod arith;
pub mod genexp;
pub mod rigidity;
pub mod beckmann;
