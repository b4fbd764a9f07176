use super::group::GaloisModule;
use crate::exact_algebra::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    /// `c = sigma^-1(g)^-1 g`, a cocycle with values in `U`.
    pub cocycle: Matrix,
    /// `u` in `U` with `sigma^-1(u) u^-1 = c`; the identity when it works,
    /// otherwise the lex-least solution.
    pub u: Matrix,
    /// `g u`, fixed by `sigma`, with `g1 U g1^-1 = g U g^-1`.
    pub g1: Matrix,
}

/// Replaces `g` by a `sigma`-fixed `g u` with the same conjugate of `U`.
///
/// Needs `sigma^-1(g)^-1 g` in `U` (otherwise `NotACocycle`), and a
/// trivialization `u` of that cocycle, found by exhaustive search in `U`
/// (otherwise `NoTrivialization`).
pub fn descend_conjugator(g: &Matrix, u_module: &GaloisModule) -> Result<Descent> {
    let ring = u_module.ring();
    let group = u_module.group();
    let sg = u_module.sigma(g, -1);
    let c = sg.inverse(ring)?.mul(g, ring);
    if !group.contains(&c) {
        return Err(Error::NotACocycle);
    }
    let id = group.identity();
    let u = core::iter::once(&id)
        .chain(group.elements())
        .find(|u| u_module.sigma(u, -1).mul(&group.inv(u), ring) == c)
        .cloned()
        .ok_or(Error::NoTrivialization)?;
    let g1 = g.mul(&u, ring);
    debug_assert_eq!(u_module.sigma(&g1, 1), g1);
    Ok(Descent { cocycle: c, u, g1 })
}
