//! Splitting an R-linear higher derivation `d` as `Δ_ρ ∗ σ̃`.
//!
//! `ρ` is read off stage by stage: with `d^{(ρ,0)} = d` and
//! `d^{(ρ,n)} = [ρ_n,n]^{-1} ∗ d^{(ρ,n−1)}`, the coefficients of `ρ_n` are
//! `(ρ_n)_xy = d^{(ρ,n−1)}_n(e_y)_xy`. The residual `d^{(ρ)}` then kills every
//! idempotent `e_x`, so it is induced by a transitive map `σ`.

use crate::algebra::{AlgElement, IncidenceAlgebra};
use crate::error::{Error, Result};
use crate::hder::{HigherDerivation, InnerData};
use crate::transitive::TransitiveMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub rho: InnerData,
    pub sigma: TransitiveMap,
}

impl Decomposition {
    pub fn order(&self) -> usize {
        self.rho.order()
    }

    /// `Δ_ρ ∗ σ̃`.
    pub fn recompose(&self) -> Result<HigherDerivation> {
        HigherDerivation::inner(&self.rho)?.mul(&self.sigma.tilde_unchecked())
    }
}

/// First `(n, segment)` where two higher derivations differ on a basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discrepancy {
    pub order: usize,
    pub segment: usize,
}

/// The `ρ` sequence together with the partial residuals `d^{(ρ,k)}` for
/// `k = 0, …, N−1` that produced it.
#[derive(Debug, Clone)]
pub struct RhoTrace {
    pub rho: InnerData,
    pub stages: Vec<HigherDerivation>,
}

/// Computes `ρ`; fails if `d` is not a higher derivation.
pub fn compute_rho(d: &HigherDerivation) -> Result<InnerData> {
    Ok(compute_rho_traced(d)?.rho)
}

pub fn compute_rho_traced(d: &HigherDerivation) -> Result<RhoTrace> {
    d.ensure_valid()?;
    let alg = d.algebra();
    let poset = alg.poset();
    let order = d.order();
    let mut stage = d.clone();
    let mut stages = Vec::with_capacity(order);
    let mut rho = Vec::with_capacity(order);
    for n in 1..=order {
        let dn = stage.component(n);
        let entries = poset.segments().iter().enumerate().map(|(s, seg)| {
            let diag = poset.segment_of(seg.hi, seg.hi).expect("diagonal segment");
            (s, dn.image(diag).coeff_at(s))
        });
        let rho_n = alg.element(entries)?;
        if let Some(x) = (0..poset.len()).find(|&x| !rho_n.coeff_idx(x, x).is_zero()) {
            return Err(Error::Internal(format!(
                "rho_{n} has a non-zero diagonal entry at {}",
                poset.label(x)
            )));
        }
        let next = HigherDerivation::bracket(&rho_n, n, order)?.inverse().mul(&stage)?;
        stages.push(std::mem::replace(&mut stage, next));
        rho.push(rho_n);
    }
    let rho = InnerData::new(alg, rho)?;
    let residual = d.residual(&rho)?;
    if let Some((n, x)) = residual.first_nonannihilated() {
        return Err(Error::Internal(format!(
            "residual component {n} does not annihilate e_{}",
            poset.label(x)
        )));
    }
    Ok(RhoTrace { rho, stages })
}

/// Writes `d = Δ_ρ ∗ σ̃` and checks the reconstruction exactly.
pub fn decompose(d: &HigherDerivation) -> Result<Decomposition> {
    let rho = compute_rho(d)?;
    let residual = d.residual(&rho)?;
    if let Some((n, x)) = residual.first_nonannihilated() {
        let label = d.algebra().poset().label(x);
        return Err(Error::Internal(format!("residual component {n} does not annihilate e_{label}")));
    }
    let sigma = TransitiveMap::extract(&residual).map_err(|e| Error::Internal(e.to_string()))?;
    if let Some(v) = sigma.check().first() {
        return Err(Error::Internal(format!("extracted map is not transitive: {}", v.describe(d.algebra()))));
    }
    if let Some(bad) = verify(d, &rho, &sigma)? {
        return Err(Error::Internal(format!(
            "reconstruction differs at order {} on e_({})",
            bad.order,
            d.algebra().poset().segment_key(bad.segment)
        )));
    }
    Ok(Decomposition { rho, sigma })
}

/// Compares `d` with `Δ_ρ ∗ σ̃`; `None` means equal. The table `σ` is used
/// as given, valid or not.
pub fn verify(d: &HigherDerivation, rho: &InnerData, sigma: &TransitiveMap) -> Result<Option<Discrepancy>> {
    let alg = d.algebra();
    alg.ensure_same(rho.algebra())?;
    alg.ensure_same(sigma.algebra())?;
    for other in [rho.order(), sigma.order()] {
        if other != d.order() {
            return Err(Error::OrderMismatch { left: d.order(), right: other });
        }
    }
    let rebuilt = HigherDerivation::inner(rho)?.mul(&sigma.tilde_unchecked())?;
    for n in 1..=d.order() {
        for s in 0..alg.poset().segment_count() {
            if d.component(n).image(s) != rebuilt.component(n).image(s) {
                return Ok(Some(Discrepancy { order: n, segment: s }));
            }
        }
    }
    Ok(None)
}

/// A failed identity found by [`lemma2_probe`] (element indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeFailure {
    /// `d_N(e_x) ≠ e_x d_N(e_X) + d_N(e_x) e_X`.
    Identity { x: usize },
    /// `d_N(e_X)_xy ≠ d_N(e_x)_xy` for `x ∈ X`, `y ∉ X`.
    Boundary { x: usize, y: usize },
    /// `d_N(e_X)_xy ≠ 0` for `x, y ∈ X`.
    Inside { x: usize, y: usize },
    /// `d_N(e_x)_xy ≠ −d_N(e_y)_xy`.
    Antisymmetry { x: usize, y: usize },
}

/// Checks the identities satisfied by component `level` of a higher
/// derivation whose lower components kill every `e_x`, for the subset `X`.
/// Returns the failures found; the precondition is reported as an error.
pub fn lemma2_probe(d: &HigherDerivation, subset: &[usize], level: usize) -> Result<Vec<ProbeFailure>> {
    if level == 0 || level > d.order() {
        return Err(Error::IndexOutOfRange { index: level, order: d.order() });
    }
    let alg = d.algebra();
    let poset = alg.poset();
    if let Some((n, x)) = d.truncate(level - 1)?.first_nonannihilated() {
        return Err(Error::NotAnnihilating { order: n, x: poset.label(x).to_string() });
    }
    if let Some(&x) = subset.iter().find(|&&x| x >= poset.len()) {
        return Err(Error::IndexOutOfRange { index: x, order: poset.len() });
    }
    let dn = d.component(level);
    let image_of_idempotent = |x: usize| -> AlgElement {
        dn.image(poset.segment_of(x, x).expect("diagonal segment")).clone()
    };
    let e_big = alg.e_subset_idx(subset);
    let d_big = dn.apply(&e_big)?;
    let in_subset = |x: usize| subset.contains(&x);
    let mut failures = Vec::new();

    for &x in subset {
        let ex = alg.basis(poset.segment_of(x, x).expect("diagonal segment"));
        let dx = image_of_idempotent(x);
        if dx != &(&ex * &d_big) + &(&dx * &e_big) {
            failures.push(ProbeFailure::Identity { x });
        }
    }
    for seg in poset.segments().iter().filter(|s| !s.is_diagonal()) {
        let (x, y) = (seg.lo, seg.hi);
        let big = d_big.coeff_idx(x, y);
        match (in_subset(x), in_subset(y)) {
            (true, false) if big != image_of_idempotent(x).coeff_idx(x, y) => {
                failures.push(ProbeFailure::Boundary { x, y })
            }
            (true, true) if !big.is_zero() => failures.push(ProbeFailure::Inside { x, y }),
            _ => {}
        }
        if image_of_idempotent(x).coeff_idx(x, y) != -image_of_idempotent(y).coeff_idx(x, y) {
            failures.push(ProbeFailure::Antisymmetry { x, y });
        }
    }
    Ok(failures)
}

/// All subsets of the poset's elements, as index lists. Only sensible for
/// small posets.
pub fn all_subsets(alg: &IncidenceAlgebra) -> Vec<Vec<usize>> {
    let n = alg.poset().len();
    (0u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linmap::LinMap;
    use crate::poset::Poset;
    use crate::ring::{RingElem, RingSpec};

    fn int(n: i64) -> RingElem {
        RingElem::from_i64(RingSpec::Integers, n)
    }

    /// C2 over Z at order 1: d_1 = ad_{2e12} + σ̃_1 with σ_1(1,2) = 5.
    fn worked_instance() -> (IncidenceAlgebra, HigherDerivation) {
        let a = IncidenceAlgebra::new(Poset::chain(2), RingSpec::Integers);
        let seg = a.poset().segment_by_label("1", "2").unwrap();
        let sigma = TransitiveMap::zero(&a, 1).with_value(1, seg, int(5));
        let r = a.e("1", "2").unwrap().scale(&int(2)).unwrap();
        let d1 = &LinMap::ad(&r) + sigma.tilde().unwrap().component(1);
        (a.clone(), HigherDerivation::from_components(&a, vec![d1]).unwrap())
    }

    #[test]
    fn worked_example() {
        let (a, d) = worked_instance();
        assert!(d.is_valid());
        // d_1(e_2) = 2e12·e2 − e2·2e12 = 2e12
        let e2 = a.e_x("2").unwrap();
        assert_eq!(d.component(1).apply(&e2).unwrap(), a.e("1", "2").unwrap().scale(&int(2)).unwrap());

        let dec = decompose(&d).unwrap();
        assert_eq!(dec.rho.get(1), &a.e("1", "2").unwrap().scale(&int(2)).unwrap());
        assert_eq!(dec.sigma.get(1, "1", "2").unwrap(), int(5));
        assert_eq!(verify(&d, &dec.rho, &dec.sigma).unwrap(), None);
    }

    #[test]
    fn identity_decomposes_trivially() {
        let a = IncidenceAlgebra::new(Poset::diamond(), RingSpec::Rationals);
        let eps = HigherDerivation::identity(&a, 3);
        let dec = decompose(&eps).unwrap();
        assert_eq!(dec.rho, InnerData::zero(&a, 3));
        assert_eq!(dec.sigma, TransitiveMap::zero(&a, 3));
    }

    #[test]
    fn verify_reports_perturbations() {
        let (a, d) = worked_instance();
        let dec = decompose(&d).unwrap();
        let seg = a.poset().segment_by_label("1", "2").unwrap();
        let bumped = dec.sigma.with_value(1, seg, &dec.sigma.value_at(1, seg) + &int(1));
        assert_eq!(verify(&d, &dec.rho, &bumped).unwrap(), Some(Discrepancy { order: 1, segment: seg }));

        let r = dec.rho.get(1);
        let bumped_rho = dec.rho.with_element(1, r.with_coeff(seg, &r.coeff_at(seg) + &int(1)));
        let found = verify(&d, &bumped_rho, &dec.sigma).unwrap().unwrap();
        assert_eq!(found.order, 1);
    }

    #[test]
    fn invalid_input_rejected() {
        let (a, d) = worked_instance();
        let bad = d.with_component(1, LinMap::identity(&a));
        assert!(matches!(decompose(&bad), Err(Error::LeibnizViolated { .. })));
    }

    #[test]
    fn probe_on_first_stage() {
        let (a, d) = worked_instance();
        for subset in all_subsets(&a) {
            assert_eq!(lemma2_probe(&d, &subset, 1).unwrap(), vec![], "{subset:?}");
        }
        assert!(lemma2_probe(&d, &[], 1).unwrap().is_empty());
        // d_1(e_1) ≠ 0, so the probe at level 2 has no precondition
        let d2 = HigherDerivation::bracket(&a.e("1", "2").unwrap(), 1, 2).unwrap();
        assert!(matches!(lemma2_probe(&d2, &[0], 2), Err(Error::NotAnnihilating { .. })));
    }

    #[test]
    fn probe_with_full_subset_sees_zero_diagonal() {
        let (a, d) = worked_instance();
        let all: Vec<usize> = (0..a.poset().len()).collect();
        assert!(lemma2_probe(&d, &all, 1).unwrap().is_empty());
        let d_delta = d.component(1).apply(&a.delta()).unwrap();
        for x in 0..a.poset().len() {
            assert!(d_delta.coeff_idx(x, x).is_zero());
        }
    }
}
