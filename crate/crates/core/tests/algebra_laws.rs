mod common;

use common::{algebra, arb_algebra, generator};
use hder::{AlgElement, IncidenceAlgebra, LinMap, RingElem};
use proptest::prelude::*;

fn arb_case() -> impl Strategy<Value = (IncidenceAlgebra, u64)> {
    (arb_algebra(), any::<u64>())
}

fn three(alg: &IncidenceAlgebra, seed: u64) -> (AlgElement, AlgElement, AlgElement) {
    let mut g = generator(alg, seed, 1);
    (g.element(alg).unwrap(), g.element(alg).unwrap(), g.element(alg).unwrap())
}

/// Dense `|P| × |P|` integer matrices with zeros off the order relation.
fn dense(x: &AlgElement) -> Vec<Vec<i64>> {
    let p = x.algebra().poset();
    let n = p.len();
    let mut m = vec![vec![0i64; n]; n];
    for (s, c) in x.terms() {
        let seg = p.segment(s);
        m[seg.lo][seg.hi] = c.to_string().parse().unwrap();
    }
    m
}

fn dense_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_matches_matrix_product(p in 0usize..7, seed in any::<u64>()) {
        let alg = algebra(p, 0);
        let (a, b, _) = three(&alg, seed);
        prop_assert_eq!(dense(&(&a * &b)), dense_mul(&dense(&a), &dense(&b)));
    }

    #[test]
    fn ring_laws((alg, seed) in arb_case()) {
        let (a, b, c) = three(&alg, seed);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&alg.delta() * &a, a.clone());
        prop_assert_eq!(&a * &alg.delta(), a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        let k = RingElem::from_i64(alg.ring(), 3);
        prop_assert_eq!(a.scale(&k).unwrap().convolve(&b).unwrap(), (&a * &b).scale(&k).unwrap());
        prop_assert_eq!(a.convolve(&b.scale(&k).unwrap()).unwrap(), (&a * &b).scale(&k).unwrap());
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn idempotent_calculus((alg, seed) in arb_case()) {
        let p = alg.poset();
        let n = p.len();
        let mut g = generator(&alg, seed, 1);
        let a = g.element(&alg).unwrap();
        let subset_x: Vec<usize> = (0..n).filter(|i| (seed >> i) & 1 == 1).collect();
        let subset_y: Vec<usize> = (0..n).filter(|i| (seed >> (i + 16)) & 1 == 1).collect();
        let both: Vec<usize> = subset_x.iter().copied().filter(|i| subset_y.contains(i)).collect();
        prop_assert_eq!(&alg.e_subset_idx(&subset_x) * &alg.e_subset_idx(&subset_y), alg.e_subset_idx(&both));
        for x in 0..n {
            let ex = alg.e_subset_idx(&[x]);
            let in_x = subset_x.contains(&x);
            let prod = &ex * &alg.e_subset_idx(&subset_x);
            prop_assert_eq!(prod, if in_x { ex.clone() } else { alg.zero() });
            for y in 0..n {
                let ey = alg.e_subset_idx(&[y]);
                let e_prod = &ex * &ey;
                prop_assert_eq!(e_prod, if x == y { ex.clone() } else { alg.zero() });
                let sandwich = &(&ex * &a) * &ey;
                let expected = match p.segment_of(x, y) {
                    Some(s) => alg.basis(s).scale(&a.coeff_at(s)).unwrap(),
                    None => alg.zero(),
                };
                prop_assert_eq!(sandwich, expected);
            }
        }
    }

    #[test]
    fn maps_are_determined_by_the_basis((alg, seed) in arb_case()) {
        let (r, a, b) = three(&alg, seed);
        let f = LinMap::ad(&r);
        let k = RingElem::from_i64(alg.ring(), -2);
        prop_assert_eq!(f.apply(&a.scale(&k).unwrap()).unwrap(), f.apply(&a).unwrap().scale(&k).unwrap());
        prop_assert_eq!(f.apply(&(&a + &b)).unwrap(), &f.apply(&a).unwrap() + &f.apply(&b).unwrap());
        prop_assert_eq!(f.apply(&a).unwrap(), &(&r * &a) - &(&a * &r));
        prop_assert!(f.apply(&alg.zero()).unwrap().is_zero());
    }

    #[test]
    fn ad_is_a_derivation_and_brackets_compose((alg, seed) in arb_case()) {
        let (r, s, a) = three(&alg, seed);
        let b = generator(&alg, seed ^ 0xABCD, 1).element(&alg).unwrap();
        let (adr, ads) = (LinMap::ad(&r), LinMap::ad(&s));
        let lhs = adr.apply(&(&a * &b)).unwrap();
        let rhs = &(&adr.apply(&a).unwrap() * &b) + &(&a * &adr.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        let commutator = &adr.compose(&ads).unwrap() - &ads.compose(&adr).unwrap();
        prop_assert_eq!(commutator, LinMap::ad(&(&(&r * &s) - &(&s * &r))));
        let c = RingElem::from_i64(alg.ring(), 5);
        prop_assert_eq!(LinMap::ad(&(&r + &alg.delta().scale(&c).unwrap())), adr.clone());
        prop_assert!(adr.derivation_violations().is_empty());
    }

    #[test]
    fn composition_laws((alg, seed) in arb_case()) {
        let (r, s, t) = three(&alg, seed);
        let (f, g, h) = (LinMap::ad(&r), LinMap::ad(&s), LinMap::ad(&t));
        let id = LinMap::identity(&alg);
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f.clone());
        prop_assert!((&f + &(-&f)).is_zero());
        let x = &r + &s;
        prop_assert_eq!(f.compose(&g).unwrap().apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
    }
}

#[test]
fn identity_differs_from_zero() {
    let alg = algebra(0, 1);
    assert_ne!(LinMap::identity(&alg), LinMap::zero(&alg));
}
