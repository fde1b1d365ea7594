//! Core algorithms for the arithmetic statistics of CM fields.
//!
//! Everything in this crate is pure computation over `alloc` collections:
//! permutation and signed-permutation groups, Dirichlet L-values and
//! Dedekind zeta residues, totally real field records, residue series
//! partial sums, quartic CM enumeration, and exact exponent arithmetic.
//! IO, file formats, and the CLI live in the companion `cmstat` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exponents;
pub mod perm;
pub mod polyarith;
pub mod zeta;
pub mod fields;
