//! Adams operations on integer polynomials with constant term 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::bareiss::determinant;
use crate::algebra::IntPoly;
use crate::error::{Error, Result};

/// P_m = Σ α^m for H = ∏(1 − α s), m = 1..count.
pub fn reciprocal_power_sums(h: &IntPoly, count: usize) -> Vec<BigInt> {
    let c = |i: usize| h.coeff(i);
    let mut ps: Vec<BigInt> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut v = -BigInt::from(k) * c(k);
        for i in 1..k {
            v -= c(i) * &ps[k - i - 1];
        }
        ps.push(v);
    }
    ps
}

/// Inverse of `reciprocal_power_sums`: k·h_k = −Σ_{i=1}^k P_i h_{k−i}.
pub fn from_reciprocal_power_sums(ps: &[BigInt]) -> Result<IntPoly> {
    let mut h = vec![BigInt::one()];
    for k in 1..=ps.len() {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc -= &ps[i - 1] * &h[k - i];
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Consistency(format!("power sums are not integral at k = {k}")));
        }
        h.push(q);
    }
    Ok(IntPoly::new(h))
}

/// Φ^e(H): the reciprocal roots raised to the e-th power.
pub fn adams(h: &IntPoly, e: u64) -> Result<IntPoly> {
    if !h.coeff(0).is_one() {
        return Err(Error::Input("Adams operation needs H(0) = 1".into()));
    }
    if e == 0 {
        return Err(Error::Input("Adams operation needs e >= 1".into()));
    }
    let d = h.degree();
    let ps = reciprocal_power_sums(h, d * e as usize);
    let sub: Vec<BigInt> = (1..=d).map(|m| ps[m * e as usize - 1].clone()).collect();
    from_reciprocal_power_sums(&sub)
}

/// ∏_{η^e = 1} H(η), the determinant of multiplication by H on Z[s]/(s^e − 1).
pub fn root_of_unity_product(h: &IntPoly, e: u64) -> BigInt {
    let e = e as usize;
    let mut reduced = vec![BigInt::zero(); e];
    for (i, c) in h.coeffs.iter().enumerate() {
        reduced[i % e] += c;
    }
    // circulant: entry (i, j) is the coefficient of s^i in H·s^j
    let m: Vec<Vec<BigInt>> = (0..e).map(|i| (0..e).map(|j| reduced[(i + e - j) % e].clone()).collect()).collect();
    determinant(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let h = IntPoly::from_i64(&[1, 0, 2]);
        assert_eq!(adams(&h, 1).unwrap(), h);
        assert_eq!(adams(&h, 2).unwrap(), IntPoly::from_i64(&[1, 4, 4]));
        let h = IntPoly::from_i64(&[1, -3]);
        let a = adams(&h, 2).unwrap();
        assert_eq!(a, IntPoly::from_i64(&[1, -9]));
        assert_eq!(a.eval(&BigInt::one()), BigInt::from(-8));
        assert_eq!(root_of_unity_product(&h, 2), BigInt::from(-8));
        assert_eq!(root_of_unity_product(&IntPoly::from_i64(&[1, -3]), 3), BigInt::from(-26));
        assert_eq!(root_of_unity_product(&IntPoly::from_i64(&[1, 0, 2]), 2), BigInt::from(9));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(adams(&IntPoly::from_i64(&[2, 1]), 2).is_err());
        assert!(adams(&IntPoly::from_i64(&[1, 1]), 0).is_err());
    }
}
