//! R-linear endomorphisms of an incidence algebra, stored by their images of
//! the segment basis.

use std::ops::{Add, Neg, Sub};

use crate::algebra::{Accumulator, AlgElement, IncidenceAlgebra};
use crate::error::{Error, Result};
use crate::ring::RingElem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    alg: IncidenceAlgebra,
    images: Vec<AlgElement>,
}

impl LinMap {
    pub fn identity(alg: &IncidenceAlgebra) -> Self {
        Self::from_fn(alg, |s| alg.basis(s))
    }

    pub fn zero(alg: &IncidenceAlgebra) -> Self {
        Self::from_fn(alg, |_| alg.zero())
    }

    /// The map sending `e_s` to `image(s)` for every segment index `s`.
    pub fn from_fn(alg: &IncidenceAlgebra, image: impl FnMut(usize) -> AlgElement) -> Self {
        let images = (0..alg.poset().segment_count()).map(image).collect();
        LinMap { alg: alg.clone(), images }
    }

    /// Builds a map from one image per segment, in canonical segment order.
    pub fn from_images(alg: &IncidenceAlgebra, images: Vec<AlgElement>) -> Result<Self> {
        if images.len() != alg.poset().segment_count() {
            return Err(Error::LengthMismatch { expected: alg.poset().segment_count(), found: images.len() });
        }
        for image in &images {
            alg.ensure_same(image.algebra())?;
        }
        Ok(LinMap { alg: alg.clone(), images })
    }

    pub fn algebra(&self) -> &IncidenceAlgebra {
        &self.alg
    }

    pub fn image(&self, segment: usize) -> &AlgElement {
        &self.images[segment]
    }

    pub fn images(&self) -> &[AlgElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(AlgElement::is_zero)
    }

    /// Returns a copy with one basis image replaced.
    pub fn with_image(&self, segment: usize, image: AlgElement) -> LinMap {
        let mut out = self.clone();
        out.images[segment] = image;
        out
    }

    pub fn apply(&self, x: &AlgElement) -> Result<AlgElement> {
        self.alg.ensure_same(x.algebra())?;
        let mut acc = Accumulator::default();
        for (s, c) in x.terms() {
            for (t, v) in self.images[s].terms() {
                acc.add(t, &(c * v));
            }
        }
        Ok(acc.finish(&self.alg))
    }

    pub fn checked_add(&self, other: &LinMap) -> Result<LinMap> {
        self.alg.ensure_same(&other.alg)?;
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect();
        Ok(LinMap { alg: self.alg.clone(), images })
    }

    pub fn checked_sub(&self, other: &LinMap) -> Result<LinMap> {
        self.checked_add(&other.negated())
    }

    pub fn negated(&self) -> LinMap {
        LinMap { alg: self.alg.clone(), images: self.images.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, c: &RingElem) -> Result<LinMap> {
        let images = self.images.iter().map(|x| x.scale(c)).collect::<Result<_>>()?;
        Ok(LinMap { alg: self.alg.clone(), images })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        self.alg.ensure_same(&other.alg)?;
        let images = other
            .images
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<_>>()?;
        Ok(LinMap { alg: self.alg.clone(), images })
    }

    /// The inner derivation `ad_r: α ↦ rα − αr`.
    pub fn ad(r: &AlgElement) -> LinMap {
        let alg = r.algebra();
        LinMap::from_fn(alg, |s| {
            let e = alg.basis(s);
            &(r * &e) - &(&e * r)
        })
    }

    /// Basis pairs `(a, b)` on which `self(e_a e_b) ≠ self(e_a) e_b + e_a self(e_b)`.
    /// An empty result means the map is a derivation.
    pub fn derivation_violations(&self) -> Vec<(usize, usize)> {
        let alg = &self.alg;
        let poset = alg.poset();
        let n = poset.segment_count();
        let mut out = Vec::new();
        for a in 0..n {
            let ea = alg.basis(a);
            for b in 0..n {
                let eb = alg.basis(b);
                let lhs = product_image(self, a, b);
                let rhs = &(&self.images[a] * &eb) + &(&ea * &self.images[b]);
                if lhs != rhs {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// `f(e_a e_b)`, using `e_a e_b = e_{a.lo, b.hi}` when `a.hi = b.lo` and zero otherwise.
pub(crate) fn product_image(f: &LinMap, a: usize, b: usize) -> AlgElement {
    let poset = f.alg.poset();
    let (sa, sb) = (poset.segment(a), poset.segment(b));
    if sa.hi == sb.lo {
        let joined = poset.segment_of(sa.lo, sb.hi).expect("order is transitive");
        f.images[joined].clone()
    } else {
        f.alg.zero()
    }
}

macro_rules! map_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LinMap> for &LinMap {
            type Output = LinMap;

            fn $method(self, rhs: &LinMap) -> LinMap {
                self.$checked(rhs).expect("incidence algebra mismatch")
            }
        }
    };
}

map_binop!(Add, add, checked_add);
map_binop!(Sub, sub, checked_sub);

impl Neg for &LinMap {
    type Output = LinMap;

    fn neg(self) -> LinMap {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::ring::RingSpec;

    fn c2() -> IncidenceAlgebra {
        IncidenceAlgebra::new(Poset::chain(2), RingSpec::Integers)
    }

    #[test]
    fn identity_and_zero() {
        let a = c2();
        let id = LinMap::identity(&a);
        assert_eq!(id.images().len(), 3);
        let x = &a.e("1", "2").unwrap() + &a.delta();
        assert_eq!(id.apply(&x).unwrap(), x);
        assert_ne!(id, LinMap::zero(&a));
        assert!((&id + &(-&id)).is_zero());
        assert_eq!(id.compose(&LinMap::ad(&x)).unwrap(), LinMap::ad(&x));
        assert!(LinMap::ad(&x).apply(&a.zero()).unwrap().is_zero());
    }

    #[test]
    fn ad_on_chain_of_two() {
        let a = c2();
        let r = a.e("1", "2").unwrap();
        let ad = LinMap::ad(&r);
        // e12·e1 − e1·e12 = 0 − e12
        assert_eq!(ad.apply(&a.e_x("1").unwrap()).unwrap(), -&r);
        // e12·e2 − e2·e12 = e12 − 0
        assert_eq!(ad.apply(&a.e_x("2").unwrap()).unwrap(), r);
        assert!(LinMap::ad(&a.delta()).is_zero());
        assert!(ad.derivation_violations().is_empty());
    }

    #[test]
    fn non_derivation_detected() {
        let a = c2();
        let f = LinMap::identity(&a);
        assert!(!f.derivation_violations().is_empty());
    }

    #[test]
    fn from_images_checks_length() {
        let a = c2();
        assert!(matches!(LinMap::from_images(&a, vec![a.zero()]), Err(Error::LengthMismatch { .. })));
    }
}
