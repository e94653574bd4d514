//! Construction, counting, and enumeration of 1-generator quasi-abelian
//! codes over finite fields.
//!
//! A quasi-abelian code is a module over the group algebra F_q[H] sitting
//! inside F_q[G] for a subgroup H of a finite abelian group G. This crate
//! provides:
//!
//! - finite field towers with traces, bases, and deterministic primitive
//!   elements ([`field`]);
//! - finite abelian groups, subgroup/coset contexts, and q-cyclotomic
//!   classes ([`abgroup`]);
//! - group-algebra arithmetic with a character-transform (spectral) view
//!   that diagonalizes the semisimple decomposition ([`groupalg`]);
//! - primitive idempotents and their refinement over the degree-l
//!   extension ([`idempotent`]);
//! - counting, canonical representatives, and full enumeration of
//!   1-generator quasi-abelian codes, plus the two-block `C_{(a,b)}`
//!   construction ([`qac`]);
//! - generic linear-code machinery over small fields: reduced row echelon
//!   forms, exact minimum distance by Gray-coded exhaustive scan or by the
//!   information-set (Brouwer-Zimmermann) method, weight enumerators,
//!   puncturing and shortening ([`lincode`]);
//! - the bundled reference codes with parameters [36,14,15]_5 and
//!   [36,11,18]_5 ([`catalog`]).
//!
//! The scan kernels in [`lincode`] are data-parallel via rayon when the
//! `parallel` feature (on by default) is enabled; disabling it yields a
//! dependency-free sequential build with identical results.

pub mod abgroup;
pub mod arith;
pub mod catalog;
pub mod error;
pub mod field;
pub mod groupalg;
pub mod idempotent;
pub mod lincode;
pub mod qac;

pub use error::{Error, Result};
