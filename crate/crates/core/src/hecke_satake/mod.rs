//! The spherical Hecke algebra `C_c(GL_n(Q_p), GL_n(Z_p))` for `n = 1, 2`
//! (and `n = 3` with the `rank3` feature), its Satake transform, the
//! evaluation characters `chi_t`, and the twisted Hecke algebra of `Q_p^*`.
//!
//! Haar measures are normalized by `vol(GL_n(Z_p)) = 1` and
//! `vol(N(Z_p)) = 1` for the upper unipotent radical `N`. The residue field
//! is `F_p`, so `q = p`, and `v` denotes a formal square root of `q`.
//!
//! Coset representatives have integer entries, so coset enumeration and
//! convolution are exact over `Z`; only the unipotent integrals need a
//! cutoff, which is certified by re-running one step further out.

mod convolution;
mod cosets;
mod gl1;
mod satake;

pub use convolution::{basis_product, convolve, structure_constant, HeckeElement};
pub use cosets::{coset_decompose, PMatrix};
pub use gl1::{gl1_twisted_convolve, Gl1Element, UnitCharacter};
pub use satake::{chi_t, modulus_delta, modulus_delta_closed_form, satake_transform, SatakeImage};
