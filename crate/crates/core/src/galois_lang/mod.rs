//! Frobenius actions on finite matrix groups: the Lang map, twisted
//! classes, cyclic non-abelian `H^1`, the correspondence between conjugacy
//! classes of `GL_s(F_q)` and twisted classes of `GL_s(F_{q^n})`, and the
//! descent of conjugators along a `sigma`-stable subgroup.
//!
//! Everything is exhaustive over explicit element lists; the cap in
//! [`Limits`](crate::Limits) bounds every enumeration.

mod cohomology;
mod descent;
mod digne_michel;
mod group;
mod lang;
mod semidirect;

pub use cohomology::{h1_cyclic, h1_level_tower, CohomologyReport, KernelEntry, LevelEntry, ReductionEntry, TowerReport};
pub use descent::{descend_conjugator, Descent};
pub use digne_michel::{dm_bijection_check, DmPair, DmReport};
pub use group::{GaloisModule, GroupKind, MatrixGroup};
pub use lang::{lang_image, lang_map, lang_preimage, twisted_classes, twisted_norm, LangPreimage, TwistedClass};
pub use semidirect::{check_semidirect_laws, SemidirectElement};
