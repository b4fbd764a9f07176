//! Exact, desk-scale computations for unramified `GL_n` over local fields.
//!
//! Everything here runs in exact arithmetic over finite fields, Galois rings
//! `(Z/p^n)[x]/(F)`, the integers, and cyclotomic extensions of `Q`. There is
//! no floating point anywhere in the crate. Infinite objects (local fields,
//! compact open subgroups) are handled through finite truncations with
//! explicit precision bookkeeping; every enumeration is exhaustive below a
//! configured [`Limits`] cap.
//!
//! Modules:
//!
//! - [`exact_algebra`]: Galois rings with Frobenius lifts, matrices, formal
//!   half powers of `q`, symbolic cyclotomic polynomials.
//! - [`root_system`]: roots of `GL_n`, Cartan matrices, DS factorization,
//!   root-system axioms, Weyl groups.
//! - [`galois_lang`]: Frobenius actions on matrix groups, the Lang map,
//!   non-abelian `H^1`, the twisted-class correspondence.
//! - [`building`]: stabilizers of the fundamental chamber simplices, Iwasawa
//!   decomposition, audits of residue-level factorization claims.
//! - [`hecke_satake`]: the spherical Hecke algebra and its Satake transform.
//! - [`lfactor`]: Satake parameters, dual representations, local L-factors,
//!   Galois norms and Euler products.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod building;
mod error;
pub mod exact_algebra;
pub mod galois_lang;
pub mod hecke_satake;
pub mod lfactor;
pub mod root_system;

pub use error::{Error, Result};

/// Hard caps on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest residue field `p^d` accepted.
    pub field_order: u64,
    /// Largest group (or candidate set) scanned element by element.
    pub group_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            field_order: 1 << 16,
            group_order: 1_000_000,
        }
    }
}
