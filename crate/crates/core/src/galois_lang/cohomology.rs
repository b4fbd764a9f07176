use alloc::vec::Vec;

use super::group::{GaloisModule, MatrixGroup};
use super::lang::{lang_image, partition, twisted_norm, TwistedClass};
use crate::exact_algebra::{GaloisRing, Matrix};
use crate::{Limits, Result};

/// Cocycles of the cyclic action and their classes under
/// `c -> a^-1 c sigma(a)`.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub group_order: usize,
    pub action_order: u32,
    /// Indices of `c` with `c sigma(c) ... sigma^(m-1)(c) = 1`.
    pub cocycles: Vec<usize>,
    pub classes: Vec<TwistedClass>,
    /// Position in `classes` of the class of the identity.
    pub distinguished: usize,
    pub fixed_subgroup_order: usize,
    pub lang_image_size: usize,
    /// Class number of each group element that is a cocycle.
    pub(crate) labels: Vec<Option<u32>>,
}

impl CohomologyReport {
    /// `|H^1|`.
    pub fn h1(&self) -> usize {
        self.classes.len()
    }

    /// `|image of Lang| * |G^sigma| = |G|`.
    pub fn lang_counting_holds(&self) -> bool {
        self.lang_image_size * self.fixed_subgroup_order == self.group_order
    }

    pub fn class_of(&self, index: usize) -> Option<usize> {
        self.labels[index].map(|x| x as usize)
    }
}

/// Exhaustive `H^1` of the cyclic group generated by `sigma` acting on `G`.
pub fn h1_cyclic(module: &GaloisModule) -> CohomologyReport {
    let g = module.group();
    let id = g.identity();
    let m = module.order();
    let cocycles: Vec<usize> = (0..g.order()).filter(|&i| twisted_norm(g.element(i), module, m) == id).collect();
    // a^-1 c sigma(a) with V = a^-1 is V c sigma(V)^-1
    let all: Vec<usize> = (0..g.order()).collect();
    let (classes, labels) = partition(module, &cocycles, &all);
    let id_index = g.index_of(&id).expect("identity in group");
    let distinguished = labels[id_index].expect("identity is a cocycle") as usize;
    CohomologyReport {
        group_order: g.order(),
        action_order: m,
        cocycles,
        classes,
        distinguished,
        fixed_subgroup_order: module.fixed_indices().len(),
        lang_image_size: lang_image(module).len(),
        labels,
    }
}

/// `H^1` at one level of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEntry {
    pub level: u32,
    pub group_order: usize,
    pub cocycles: usize,
    pub h1: usize,
}

/// `H^1` of the congruence kernel `1 + p^k M_s` at level `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelEntry {
    pub k: u32,
    pub level: u32,
    pub group_order: usize,
    pub cocycles: usize,
    pub h1: usize,
}

/// Behaviour of reduction from level `from` to `from - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionEntry {
    pub from: u32,
    pub surjective: bool,
    /// Every class at the upper level lands inside a single class below.
    pub classes_compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub s: usize,
    pub p: u64,
    pub d: usize,
    pub levels: Vec<LevelEntry>,
    pub kernels: Vec<KernelEntry>,
    pub reductions: Vec<ReductionEntry>,
}

impl TowerReport {
    pub fn all_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.h1 == 1) && self.kernels.iter().all(|k| k.h1 == 1)
    }

    pub fn reductions_ok(&self) -> bool {
        self.reductions.iter().all(|r| r.surjective && r.classes_compatible)
    }
}

/// `H^1(Gal, GL_s(O/p^n))` for `n = 1..=max_level` with `O` unramified of
/// residue degree `d` and `sigma` the `p`-power Frobenius, plus the
/// congruence kernels `1 + M_s p^k / p^max_level` and the reduction maps.
pub fn h1_level_tower(s: usize, p: u64, d: usize, max_level: u32, limits: &Limits) -> Result<TowerReport> {
    let mut levels = Vec::new();
    let mut reductions = Vec::new();
    let mut prev: Option<(GaloisRing, GaloisModule, CohomologyReport)> = None;
    for n in 1..=max_level {
        let ring = GaloisRing::new(p, n, d, limits)?;
        let module = GaloisModule::new(MatrixGroup::general_linear(&ring, s, limits)?, 1)?;
        let rep = h1_cyclic(&module);
        levels.push(LevelEntry { level: n, group_order: rep.group_order, cocycles: rep.cocycles.len(), h1: rep.h1() });
        if let Some((lower_ring, lower_module, lower_rep)) = &prev {
            reductions.push(reduction_entry(n, &ring, &module, &rep, lower_ring, lower_module, lower_rep));
        }
        prev = Some((ring, module, rep));
    }
    let mut kernels = Vec::new();
    if let Some((ring, _, _)) = &prev {
        for k in 1..max_level {
            let module = GaloisModule::new(MatrixGroup::congruence_kernel(ring, s, k, limits)?, 1)?;
            let rep = h1_cyclic(&module);
            kernels.push(KernelEntry {
                k,
                level: max_level,
                group_order: rep.group_order,
                cocycles: rep.cocycles.len(),
                h1: rep.h1(),
            });
        }
    }
    Ok(TowerReport { s, p, d, levels, kernels, reductions })
}

fn reduction_entry(
    from: u32,
    ring: &GaloisRing,
    module: &GaloisModule,
    rep: &CohomologyReport,
    lower_ring: &GaloisRing,
    lower_module: &GaloisModule,
    lower_rep: &CohomologyReport,
) -> ReductionEntry {
    let g = module.group();
    let lower = lower_module.group();
    let reduce = |m: &Matrix| lower.index_of(&m.reduce(ring, lower_ring)).expect("reduction of a unit is a unit");
    let mut hit = alloc::vec![false; lower.order()];
    for m in g.elements() {
        hit[reduce(m)] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    // class id below for each class above, taken from any member
    let mut image_class: Vec<Option<Option<usize>>> = alloc::vec![None; rep.h1()];
    let mut classes_compatible = true;
    for &c in &rep.cocycles {
        let above = rep.class_of(c).expect("cocycle has a class");
        let below = lower_rep.class_of(reduce(g.element(c)));
        if below.is_none() {
            classes_compatible = false;
        }
        match image_class[above] {
            None => image_class[above] = Some(below),
            Some(prev) if prev != below => classes_compatible = false,
            Some(_) => {}
        }
    }
    ReductionEntry { from, surjective, classes_compatible }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn gl_field_module(p: u64, d: usize, s: usize) -> GaloisModule {
        let r = GaloisRing::field(p, d, &lim()).unwrap();
        GaloisModule::new(MatrixGroup::general_linear(&r, s, &lim()).unwrap(), 1).unwrap()
    }

    #[test]
    fn trivial_group() {
        let r = GaloisRing::field(2, 2, &lim()).unwrap();
        let m = GaloisModule::new(MatrixGroup::trivial(&r, 2), 1).unwrap();
        assert_eq!(h1_cyclic(&m).h1(), 1);
    }

    #[test]
    fn hilbert_90_small_fields() {
        let r = h1_cyclic(&gl_field_module(2, 2, 1));
        assert_eq!(r.cocycles.len(), 3);
        assert_eq!(r.h1(), 1);
        assert!(r.lang_counting_holds());
        let r = h1_cyclic(&gl_field_module(3, 2, 1));
        assert_eq!(r.cocycles.len(), 4);
        assert_eq!(r.h1(), 1);
        assert!(r.lang_counting_holds());
    }

    #[test]
    fn gl1_tower_levels_one_and_two() {
        let t = h1_level_tower(1, 2, 2, 2, &lim()).unwrap();
        assert_eq!(t.levels.iter().map(|l| l.h1).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(t.levels[1].group_order, 12);
        assert_eq!(t.kernels.len(), 1);
        assert_eq!(t.kernels[0].group_order, 4);
        assert_eq!(t.kernels[0].h1, 1);
        assert!(t.reductions_ok());
    }
}
