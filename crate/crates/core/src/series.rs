//! Truncated power series `a_0 + a_1 t + … + a_N t^N` with exact coefficients.

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// Product truncated to degree `order`. Missing coefficients count as zero.
pub fn mul_truncated(ring: RingSpec, a: &[RingElem], b: &[RingElem], order: usize) -> Vec<RingElem> {
    (0..=order)
        .map(|n| {
            let mut acc = ring.zero();
            for i in 0..=n {
                if let (Some(x), Some(y)) = (a.get(i), b.get(n - i)) {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Inverse of a series with constant term 1, truncated to degree `order`:
/// `b_0 = 1`, `b_n = −Σ_{k=1}^{n} a_k b_{n−k}`.
pub fn inverse_unit(ring: RingSpec, a: &[RingElem], order: usize) -> Result<Vec<RingElem>> {
    match a.first() {
        Some(c) if c.is_one() => {}
        _ => return Err(Error::ConstantTermNotOne(format!("{a:?}"))),
    }
    let mut b = vec![ring.one()];
    for n in 1..=order {
        let mut acc = ring.zero();
        for k in 1..=n {
            if let Some(ak) = a.get(k) {
                acc = &acc + &(ak * &b[n - k]);
            }
        }
        b.push(-acc);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<RingElem> {
        v.iter().map(|&n| RingElem::from_i64(RingSpec::Integers, n)).collect()
    }

    #[test]
    fn inverse_of_linear_series() {
        // 1/(1+2t) = 1 − 2t + 4t² − 8t³
        let inv = inverse_unit(RingSpec::Integers, &ints(&[1, 2]), 3).unwrap();
        assert_eq!(inv, ints(&[1, -2, 4, -8]));
        let prod = mul_truncated(RingSpec::Integers, &inv, &ints(&[1, 2]), 3);
        assert_eq!(prod, ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn rejects_non_unit_constant() {
        assert!(inverse_unit(RingSpec::Integers, &ints(&[2, 1]), 2).is_err());
        assert!(inverse_unit(RingSpec::Integers, &[], 2).is_err());
    }
}
