//! Higher derivations of order `N` and the group operation `∗` on them.
//!
//! A higher derivation is a sequence `d_0 = id, d_1, …, d_N` of linear maps
//! with `d_n(ab) = Σ_{i+j=n} d_i(a) d_j(b)`. Sequences are combined with
//! `(d'∗d'')_n = Σ_{i+j=n} d'_i ∘ d''_j`; every sequence starting with the
//! identity has a two-sided inverse under this product.

use std::fmt;

use crate::algebra::{AlgElement, IncidenceAlgebra};
use crate::error::{Error, Result};
use crate::linmap::{product_image, LinMap};
use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherDerivation {
    alg: IncidenceAlgebra,
    // maps[0] is always the identity
    maps: Vec<LinMap>,
}

/// A failure of the Leibniz rule at order `order` on the basis pair
/// `e_left · e_right` (segment indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub order: usize,
    pub left: usize,
    pub right: usize,
}

impl LeibnizViolation {
    pub fn describe(&self, alg: &IncidenceAlgebra) -> String {
        let p = alg.poset();
        format!("order {} on e_({}) * e_({})", self.order, p.segment_key(self.left), p.segment_key(self.right))
    }
}

/// The coefficient sequence `r_1, …, r_N` of an inner higher derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerData {
    alg: IncidenceAlgebra,
    rho: Vec<AlgElement>,
}

impl InnerData {
    pub fn new(alg: &IncidenceAlgebra, rho: Vec<AlgElement>) -> Result<Self> {
        for r in &rho {
            alg.ensure_same(r.algebra())?;
        }
        Ok(InnerData { alg: alg.clone(), rho })
    }

    pub fn zero(alg: &IncidenceAlgebra, order: usize) -> Self {
        InnerData { alg: alg.clone(), rho: vec![alg.zero(); order] }
    }

    pub fn algebra(&self) -> &IncidenceAlgebra {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.rho.len()
    }

    /// `r_n` for `1 <= n <= order`.
    pub fn get(&self, n: usize) -> &AlgElement {
        &self.rho[n - 1]
    }

    pub fn elements(&self) -> &[AlgElement] {
        &self.rho
    }

    pub fn with_element(&self, n: usize, r: AlgElement) -> InnerData {
        let mut out = self.clone();
        out.rho[n - 1] = r;
        out
    }

    /// `[r_1,1] ∗ ⋯ ∗ [r_k,k]`, truncated at `order`.
    pub fn bracket_product(&self, k: usize, order: usize) -> Result<HigherDerivation> {
        if k > self.order() {
            return Err(Error::IndexOutOfRange { index: k, order: self.order() });
        }
        let mut acc = HigherDerivation::identity(&self.alg, order);
        for n in 1..=k {
            acc = acc.mul(&HigherDerivation::bracket(self.get(n), n, order)?)?;
        }
        Ok(acc)
    }
}

impl HigherDerivation {
    /// The identity `ε`: `ε_0 = id`, `ε_n = 0`.
    pub fn identity(alg: &IncidenceAlgebra, order: usize) -> Self {
        let mut maps = vec![LinMap::identity(alg)];
        maps.extend(std::iter::repeat_n(LinMap::zero(alg), order));
        HigherDerivation { alg: alg.clone(), maps }
    }

    /// Wraps `d_1, …, d_N`; `d_0` is the identity. No Leibniz check is made,
    /// see [`check`](Self::check).
    pub fn from_components(alg: &IncidenceAlgebra, components: Vec<LinMap>) -> Result<Self> {
        let mut maps = Vec::with_capacity(components.len() + 1);
        maps.push(LinMap::identity(alg));
        for m in components {
            alg.ensure_same(m.algebra())?;
            maps.push(m);
        }
        Ok(HigherDerivation { alg: alg.clone(), maps })
    }

    pub fn algebra(&self) -> &IncidenceAlgebra {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.maps.len() - 1
    }

    /// `d_n` for `0 <= n <= order`.
    pub fn component(&self, n: usize) -> &LinMap {
        &self.maps[n]
    }

    /// `d_0, …, d_N`.
    pub fn maps(&self) -> &[LinMap] {
        &self.maps
    }

    pub fn with_component(&self, n: usize, map: LinMap) -> HigherDerivation {
        assert!(n >= 1, "component 0 is fixed to the identity");
        let mut out = self.clone();
        out.maps[n] = map;
        out
    }

    pub fn truncate(&self, order: usize) -> Result<HigherDerivation> {
        if order > self.order() {
            return Err(Error::IndexOutOfRange { index: order, order: self.order() });
        }
        Ok(HigherDerivation { alg: self.alg.clone(), maps: self.maps[..=order].to_vec() })
    }

    fn compatible(&self, other: &HigherDerivation) -> Result<()> {
        self.alg.ensure_same(&other.alg)?;
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    /// Every basis pair at every order where the Leibniz rule fails. Checking
    /// basis pairs suffices since both sides are bilinear.
    pub fn check(&self) -> Vec<LeibnizViolation> {
        let poset = self.alg.poset();
        let count = poset.segment_count();
        let mut out = Vec::new();
        for n in 1..=self.order() {
            for a in 0..count {
                for b in 0..count {
                    let lhs = product_image(&self.maps[n], a, b);
                    let mut rhs = self.alg.zero();
                    for i in 0..=n {
                        let (da, db) = (self.maps[i].image(a), self.maps[n - i].image(b));
                        if !da.is_zero() && !db.is_zero() {
                            rhs = &rhs + &(da * db);
                        }
                    }
                    if lhs != rhs {
                        out.push(LeibnizViolation { order: n, left: a, right: b });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    /// `Ok(())` when the Leibniz rule holds, otherwise an error naming the
    /// first violation.
    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.check();
        match violations.first() {
            None => Ok(()),
            Some(v) => {
                let p = self.alg.poset();
                Err(Error::LeibnizViolated {
                    count: violations.len(),
                    order: v.order,
                    a: p.segment_key(v.left),
                    b: p.segment_key(v.right),
                })
            }
        }
    }

    /// `(self ∗ other)_n` alone.
    pub fn product_component(&self, other: &HigherDerivation, n: usize) -> Result<LinMap> {
        self.compatible(other)?;
        if n > self.order() {
            return Err(Error::IndexOutOfRange { index: n, order: self.order() });
        }
        Ok(product_component(&self.maps, &other.maps, n))
    }

    pub fn mul(&self, other: &HigherDerivation) -> Result<HigherDerivation> {
        self.compatible(other)?;
        let maps = (0..=self.order())
            .map(|n| product_component(&self.maps, &other.maps, n))
            .collect();
        Ok(HigherDerivation { alg: self.alg.clone(), maps })
    }

    /// Group inverse: `inv_0 = id`, `inv_n = −Σ_{i=1}^{n} d_i ∘ inv_{n−i}`.
    pub fn inverse(&self) -> HigherDerivation {
        let mut inv: Vec<LinMap> = vec![LinMap::identity(&self.alg)];
        for n in 1..=self.order() {
            let mut acc = LinMap::zero(&self.alg);
            for i in 1..=n {
                if self.maps[i].is_zero() || inv[n - i].is_zero() {
                    continue;
                }
                let term = if n == i {
                    self.maps[i].clone()
                } else {
                    self.maps[i].compose(&inv[n - i]).expect("same algebra")
                };
                acc = &acc + &term;
            }
            inv.push(acc.negated());
        }
        HigherDerivation { alg: self.alg.clone(), maps: inv }
    }

    /// The generator `[r,k]`: `[r,k]_n = 0` unless `k | n`, and
    /// `[r,k]_{kl}(x) = r^l x − r^{l−1} x r`.
    pub fn bracket(r: &AlgElement, k: usize, order: usize) -> Result<HigherDerivation> {
        if k == 0 {
            return Err(Error::ZeroBracketIndex);
        }
        let alg = r.algebra();
        let mut maps = vec![LinMap::identity(alg)];
        for n in 1..=order {
            if n % k != 0 {
                maps.push(LinMap::zero(alg));
                continue;
            }
            let l = n / k;
            let (upper, lower) = (r.pow(l), r.pow(l - 1));
            maps.push(LinMap::from_fn(alg, |s| {
                let e = alg.basis(s);
                &(&upper * &e) - &(&(&lower * &e) * r)
            }));
        }
        Ok(HigherDerivation { alg: alg.clone(), maps })
    }

    /// The inner higher derivation `Δ_r`, whose `n`-th component is the
    /// `n`-th component of `[r_1,1] ∗ ⋯ ∗ [r_n,n]`.
    pub fn inner(data: &InnerData) -> Result<HigherDerivation> {
        let order = data.order();
        let alg = data.algebra();
        let mut prefix = HigherDerivation::identity(alg, order);
        let mut maps = vec![LinMap::identity(alg)];
        for n in 1..=order {
            prefix = prefix.mul(&HigherDerivation::bracket(data.get(n), n, order)?)?;
            maps.push(prefix.maps[n].clone());
        }
        Ok(HigherDerivation { alg: alg.clone(), maps })
    }

    /// `d^{(r,k)} = ([r_1,1] ∗ ⋯ ∗ [r_k,k])^{-1} ∗ d`.
    pub fn residual_partial(&self, data: &InnerData, k: usize) -> Result<HigherDerivation> {
        self.alg.ensure_same(data.algebra())?;
        if k > self.order() {
            return Err(Error::IndexOutOfRange { index: k, order: self.order() });
        }
        data.bracket_product(k, self.order())?.inverse().mul(self)
    }

    /// `d^{(r)}` with `d^{(r)}_n = d^{(r,n)}_n`; satisfies `d = Δ_r ∗ d^{(r)}`.
    pub fn residual(&self, data: &InnerData) -> Result<HigherDerivation> {
        self.alg.ensure_same(data.algebra())?;
        let order = self.order();
        if data.order() < order {
            return Err(Error::OrderMismatch { left: order, right: data.order() });
        }
        // prefix_inv = ([r_1,1] ∗ ⋯ ∗ [r_n,n])^{-1} = [r_n,n]^{-1} ∗ prefix_inv_{n-1}
        let mut prefix_inv = HigherDerivation::identity(&self.alg, order);
        let mut maps = vec![LinMap::identity(&self.alg)];
        for n in 1..=order {
            let bracket_inv = HigherDerivation::bracket(data.get(n), n, order)?.inverse();
            prefix_inv = bracket_inv.mul(&prefix_inv)?;
            maps.push(product_component(&prefix_inv.maps, &self.maps, n));
        }
        Ok(HigherDerivation { alg: self.alg.clone(), maps })
    }

    /// `{d^n / n!}` for an ordinary derivation `d` over the rationals.
    pub fn exp_derivation(d1: &LinMap, order: usize) -> Result<HigherDerivation> {
        let alg = d1.algebra();
        if alg.ring() != RingSpec::Rationals {
            return Err(Error::NotRational(alg.ring().to_string()));
        }
        if let Some(&(a, b)) = d1.derivation_violations().first() {
            let p = alg.poset();
            return Err(Error::NotADerivation { a: p.segment_key(a), b: p.segment_key(b) });
        }
        let mut maps = vec![LinMap::identity(alg)];
        let mut power = LinMap::identity(alg);
        let mut factorial = alg.ring().one();
        for n in 1..=order {
            power = d1.compose(&power)?;
            factorial = factorial.div_int(n as u64)?;
            maps.push(power.scale(&factorial)?);
        }
        Ok(HigherDerivation { alg: alg.clone(), maps })
    }

    /// The first `(n, x)` with `d_n(e_x) ≠ 0`, scanning `n` upward.
    pub fn first_nonannihilated(&self) -> Option<(usize, usize)> {
        let poset = self.alg.poset();
        for n in 1..=self.order() {
            for x in poset.topo_order().iter().copied() {
                let diag = poset.segment_of(x, x).expect("diagonal segment");
                if !self.maps[n].image(diag).is_zero() {
                    return Some((n, x));
                }
            }
        }
        None
    }

    /// Whether `d_n(e_x) = 0` for all `1 <= n <= N` and `x ∈ P`.
    pub fn annihilates_idempotents(&self) -> bool {
        self.first_nonannihilated().is_none()
    }
}

fn product_component(left: &[LinMap], right: &[LinMap], n: usize) -> LinMap {
    let alg = left[0].algebra();
    let mut acc = LinMap::zero(alg);
    for i in 0..=n {
        let (f, g) = (&left[i], &right[n - i]);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let term = if i == 0 {
            g.clone()
        } else if i == n {
            f.clone()
        } else {
            f.compose(g).expect("same algebra")
        };
        acc = &acc + &term;
    }
    acc
}

impl fmt::Display for HigherDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.alg.poset();
        for n in 1..=self.order() {
            writeln!(f, "d_{n}:")?;
            for (s, image) in self.maps[n].images().iter().enumerate() {
                if !image.is_zero() {
                    writeln!(f, "  e({}) -> {image}", p.segment_key(s))?;
                }
            }
        }
        Ok(())
    }
}
