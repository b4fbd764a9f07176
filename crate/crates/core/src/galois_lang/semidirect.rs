use super::group::GaloisModule;
use crate::exact_algebra::Matrix;

/// `(sigma^a, g)` in `<sigma> x| G`, with
/// `(sigma^a, g)(sigma^b, h) = (sigma^(a+b), g sigma^a(h))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SemidirectElement {
    pub power: u32,
    pub matrix: Matrix,
}

impl SemidirectElement {
    pub fn new(power: u32, matrix: Matrix, module: &GaloisModule) -> Self {
        SemidirectElement { power: power % module.order(), matrix }
    }

    pub fn identity(module: &GaloisModule) -> Self {
        SemidirectElement { power: 0, matrix: module.group().identity() }
    }

    pub fn mul(&self, rhs: &Self, module: &GaloisModule) -> Self {
        let ring = module.ring();
        let twisted = module.sigma(&rhs.matrix, self.power as i64);
        SemidirectElement {
            power: (self.power + rhs.power) % module.order(),
            matrix: self.matrix.mul(&twisted, ring),
        }
    }

    /// `(sigma^-a, sigma^-a(g^-1))`.
    pub fn inverse(&self, module: &GaloisModule) -> Self {
        let m = module.order();
        let ginv = module.group().inv(&self.matrix);
        SemidirectElement {
            power: (m - self.power % m) % m,
            matrix: module.sigma(&ginv, -(self.power as i64)),
        }
    }

    pub fn pow(&self, k: u32, module: &GaloisModule) -> Self {
        (0..k).fold(Self::identity(module), |acc, _| acc.mul(self, module))
    }
}

/// Exhaustive associativity and inverse check over `<sigma> x| G`.
pub fn check_semidirect_laws(module: &GaloisModule) -> bool {
    let elems: alloc::vec::Vec<SemidirectElement> = (0..module.order())
        .flat_map(|a| module.group().elements().iter().map(move |g| (a, g.clone())))
        .map(|(a, g)| SemidirectElement::new(a, g, module))
        .collect();
    let id = SemidirectElement::identity(module);
    for x in &elems {
        let xi = x.inverse(module);
        if x.mul(&xi, module) != id || xi.mul(x, module) != id {
            return false;
        }
        for y in &elems {
            let xy = x.mul(y, module);
            for z in &elems {
                if xy.mul(z, module) != x.mul(&y.mul(z, module), module) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::GaloisRing;
    use crate::galois_lang::{lang_map, twisted_norm, MatrixGroup};
    use crate::Limits;

    fn module(p: u64, d: usize, s: usize) -> GaloisModule {
        let r = GaloisRing::field(p, d, &Limits::default()).unwrap();
        GaloisModule::new(MatrixGroup::general_linear(&r, s, &Limits::default()).unwrap(), 1).unwrap()
    }

    #[test]
    fn laws_on_small_groups() {
        assert!(check_semidirect_laws(&module(2, 2, 1)));
        assert!(check_semidirect_laws(&module(3, 2, 1)));
        assert!(check_semidirect_laws(&module(2, 1, 2)));
    }

    #[test]
    fn power_is_twisted_norm() {
        let m = module(2, 2, 2);
        for a in m.group().elements().iter().step_by(11) {
            let e = SemidirectElement::new(1, a.clone(), &m);
            assert_eq!(e.pow(2, &m).matrix, twisted_norm(a, &m, 2));
        }
    }

    #[test]
    fn conjugating_frobenius_gives_lang() {
        // (1, X)^-1 (sigma, 1) (1, X) = (sigma, X^-1 sigma(X))
        let m = module(2, 2, 2);
        let frob = SemidirectElement::new(1, m.group().identity(), &m);
        for x in m.group().elements().iter().step_by(13) {
            let cx = SemidirectElement::new(0, x.clone(), &m);
            let lhs = cx.inverse(&m).mul(&frob, &m).mul(&cx, &m);
            assert_eq!(lhs, SemidirectElement::new(1, lang_map(x, &m).unwrap(), &m));
        }
    }
}
