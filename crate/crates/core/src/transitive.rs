//! Higher transitive maps on the segments of a poset and the diagonal higher
//! derivations they induce.

use crate::algebra::IncidenceAlgebra;
use crate::error::{Error, Result};
use crate::hder::HigherDerivation;
use crate::linmap::LinMap;
use crate::ring::RingElem;
use crate::series;

/// Values `σ_n(x, y)` for `1 <= n <= N`; `σ_0 ≡ 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveMap {
    alg: IncidenceAlgebra,
    // values[n - 1][segment]
    values: Vec<Vec<RingElem>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveViolation {
    /// `σ_n(x,y) ≠ Σ_{i+j=n} σ_i(x,z) σ_j(z,y)` (element indices).
    Chain { order: usize, x: usize, z: usize, y: usize },
    /// `σ_n(x,x) ≠ 0`.
    Diagonal { order: usize, x: usize },
}

impl TransitiveViolation {
    pub fn describe(&self, alg: &IncidenceAlgebra) -> String {
        let p = alg.poset();
        match *self {
            TransitiveViolation::Chain { order, x, z, y } => format!(
                "order {order}: chain {} <= {} <= {}",
                p.label(x),
                p.label(z),
                p.label(y)
            ),
            TransitiveViolation::Diagonal { order, x } => {
                format!("order {order}: non-zero diagonal at {}", p.label(x))
            }
        }
    }
}

impl TransitiveMap {
    /// `σ_n ≡ 0` for all `n >= 1`.
    pub fn zero(alg: &IncidenceAlgebra, order: usize) -> Self {
        let row = vec![alg.ring().zero(); alg.poset().segment_count()];
        TransitiveMap { alg: alg.clone(), values: vec![row; order] }
    }

    /// Wraps a table `values[n-1][segment]`. No validity check is made,
    /// see [`check`](Self::check).
    pub fn from_table(alg: &IncidenceAlgebra, values: Vec<Vec<RingElem>>) -> Result<Self> {
        let count = alg.poset().segment_count();
        for row in &values {
            if row.len() != count {
                return Err(Error::LengthMismatch { expected: count, found: row.len() });
            }
            if let Some(c) = row.iter().find(|c| c.spec() != alg.ring()) {
                return Err(Error::RingMismatch { left: alg.ring().to_string(), right: c.spec().to_string() });
            }
        }
        Ok(TransitiveMap { alg: alg.clone(), values })
    }

    /// `σ_n(x,y) = [t^n] g(x)^{-1} g(y)` for unit series `g`, one per element
    /// in poset index order. Always transitive.
    pub fn from_grading(alg: &IncidenceAlgebra, order: usize, grading: &[Vec<RingElem>]) -> Result<Self> {
        let poset = alg.poset();
        if grading.len() != poset.len() {
            return Err(Error::LengthMismatch { expected: poset.len(), found: grading.len() });
        }
        let ring = alg.ring();
        let inverses = grading
            .iter()
            .enumerate()
            .map(|(x, g)| {
                series::inverse_unit(ring, g, order)
                    .map_err(|_| Error::ConstantTermNotOne(poset.label(x).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut values = vec![Vec::with_capacity(poset.segment_count()); order];
        for seg in poset.segments() {
            let ratio = series::mul_truncated(ring, &inverses[seg.lo], &grading[seg.hi], order);
            for n in 1..=order {
                values[n - 1].push(ratio[n].clone());
            }
        }
        Ok(TransitiveMap { alg: alg.clone(), values })
    }

    pub fn algebra(&self) -> &IncidenceAlgebra {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `σ_n` at a segment index; `σ_0` is one everywhere.
    pub fn value_at(&self, n: usize, segment: usize) -> RingElem {
        if n == 0 {
            self.alg.ring().one()
        } else {
            self.values[n - 1][segment].clone()
        }
    }

    pub fn get(&self, n: usize, x: &str, y: &str) -> Result<RingElem> {
        if n > self.order() {
            return Err(Error::IndexOutOfRange { index: n, order: self.order() });
        }
        Ok(self.value_at(n, self.alg.poset().segment_by_label(x, y)?))
    }

    /// Returns a copy with `σ_n` at `segment` replaced (`n >= 1`).
    pub fn with_value(&self, n: usize, segment: usize, value: RingElem) -> TransitiveMap {
        let mut out = self.clone();
        out.values[n - 1][segment] = value;
        out
    }

    fn value_idx(&self, n: usize, x: usize, y: usize) -> RingElem {
        let seg = self.alg.poset().segment_of(x, y).expect("x <= y");
        self.value_at(n, seg)
    }

    /// All violations of the chain condition and of diagonal vanishing.
    pub fn check(&self) -> Vec<TransitiveViolation> {
        let poset = self.alg.poset();
        let ring = self.alg.ring();
        let mut out = Vec::new();
        for n in 1..=self.order() {
            for seg in poset.segments() {
                let (x, y) = (seg.lo, seg.hi);
                if x == y && !self.value_idx(n, x, x).is_zero() {
                    out.push(TransitiveViolation::Diagonal { order: n, x });
                }
                let lhs = self.value_idx(n, x, y);
                for z in poset.interval_idx(x, y) {
                    let mut rhs = ring.zero();
                    for i in 0..=n {
                        rhs = &rhs + &(&self.value_idx(i, x, z) * &self.value_idx(n - i, z, y));
                    }
                    if lhs != rhs {
                        out.push(TransitiveViolation::Chain { order: n, x, z, y });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    /// `σ̃`, acting by `σ̃_n(e_xy) = σ_n(x,y) e_xy`.
    pub fn tilde(&self) -> Result<HigherDerivation> {
        if let Some(v) = self.check().first() {
            return Err(Error::InvalidTransitiveMap(v.describe(&self.alg)));
        }
        Ok(self.tilde_unchecked())
    }

    /// `σ̃` built from the table without validating it.
    pub fn tilde_unchecked(&self) -> HigherDerivation {
        let alg = &self.alg;
        let components = self
            .values
            .iter()
            .map(|row| LinMap::from_fn(alg, |s| alg.basis(s).scale(&row[s]).expect("same ring")))
            .collect();
        HigherDerivation::from_components(alg, components).expect("same algebra")
    }

    /// Recovers `σ_n(x,y) = d_n(e_xy)_xy` from a higher derivation that kills
    /// every idempotent `e_x`, and confirms `σ̃ = d`.
    pub fn extract(d: &HigherDerivation) -> Result<TransitiveMap> {
        let alg = d.algebra();
        let poset = alg.poset();
        if let Some((order, x)) = d.first_nonannihilated() {
            return Err(Error::NotAnnihilating { order, x: poset.label(x).to_string() });
        }
        let values: Vec<Vec<RingElem>> = (1..=d.order())
            .map(|n| {
                (0..poset.segment_count())
                    .map(|s| d.component(n).image(s).coeff_at(s))
                    .collect()
            })
            .collect();
        let sigma = TransitiveMap { alg: alg.clone(), values };
        let rebuilt = sigma.tilde_unchecked();
        for n in 1..=d.order() {
            for s in 0..poset.segment_count() {
                if rebuilt.component(n).image(s) != d.component(n).image(s) {
                    return Err(Error::NotDiagonal { order: n, segment: poset.segment_key(s) });
                }
            }
        }
        Ok(sigma)
    }
}
