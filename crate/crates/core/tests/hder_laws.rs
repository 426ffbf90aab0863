mod common;

use common::{arb_algebra, generator};
use hder::{HigherDerivation, IncidenceAlgebra, LinMap};
use proptest::prelude::*;

fn arb_case() -> impl Strategy<Value = (IncidenceAlgebra, u64, usize)> {
    (arb_algebra(), any::<u64>(), 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_laws((alg, seed, order) in arb_case()) {
        let mut g = generator(&alg, seed, order);
        let (a, b, c) = (g.hd(&alg).unwrap(), g.hd(&alg).unwrap(), g.hd(&alg).unwrap());
        let eps = HigherDerivation::identity(&alg, order);
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&a.inverse()).unwrap(), eps.clone());
        prop_assert_eq!(a.inverse().mul(&a).unwrap(), eps.clone());
        prop_assert_eq!(eps.mul(&a).unwrap(), a.clone());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.component(1), &(a.component(1) + b.component(1)));
        prop_assert!(ab.is_valid());
        prop_assert!(a.inverse().is_valid());
        prop_assert!(a.component(1).derivation_violations().is_empty());
    }

    #[test]
    fn truncation_commutes_with_product((alg, seed, order) in arb_case()) {
        let mut g = generator(&alg, seed, order);
        let (a, b) = (g.hd(&alg).unwrap(), g.hd(&alg).unwrap());
        for m in 0..=order {
            prop_assert_eq!(
                a.mul(&b).unwrap().truncate(m).unwrap(),
                a.truncate(m).unwrap().mul(&b.truncate(m).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn inner_components_stabilise((alg, seed, order) in arb_case()) {
        let data = generator(&alg, seed, order).inner(&alg).unwrap();
        let delta = HigherDerivation::inner(&data).unwrap();
        prop_assert!(delta.is_valid());
        prop_assert_eq!(delta.component(1), &LinMap::ad(data.get(1)));
        for k in 1..=order {
            for n in k..=order {
                let product = data.bracket_product(n, order).unwrap();
                prop_assert_eq!(delta.component(k), product.component(k));
            }
        }
    }

    #[test]
    fn residual_reconstructs((alg, seed, order) in arb_case()) {
        let mut g = generator(&alg, seed, order);
        let d = g.hd(&alg).unwrap();
        let r = g.inner(&alg).unwrap();
        let residual = d.residual(&r).unwrap();
        prop_assert!(residual.is_valid());
        prop_assert_eq!(HigherDerivation::inner(&r).unwrap().mul(&residual).unwrap(), d.clone());
        let full = d.residual_partial(&r, order).unwrap();
        prop_assert_eq!(HigherDerivation::inner(&r).unwrap().mul(&full).unwrap(), d.clone());
        for k in 1..=order {
            let partial = d.residual_partial(&r, k).unwrap();
            for l in 1..=k {
                prop_assert_eq!(partial.component(l), residual.component(l));
            }
        }
    }
}

#[test]
fn residual_with_zero_data_is_input() {
    let alg = common::algebra(4, 0);
    let d = generator(&alg, 3, 3).hd(&alg).unwrap();
    let zero = hder::InnerData::zero(&alg, 3);
    assert_eq!(d.residual(&zero).unwrap(), d);
    for k in 0..=3 {
        assert_eq!(d.residual_partial(&zero, k).unwrap(), d);
    }
    assert!(d.residual_partial(&zero, 4).is_err());
}
