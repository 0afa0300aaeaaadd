//! Distribution statistics of slope multisets.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeStats {
    pub count: usize,
    /// Counts over [i/bins, (i+1)/bins), the last bin closed.
    pub histogram: Vec<usize>,
    /// sup_x |F(x) − x|, exact.
    pub ks: String,
    pub ks_f64: f64,
    /// Total variation distance to the reflected multiset, exact.
    pub symmetry_defect: String,
    pub symmetry_defect_f64: f64,
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn slope_statistics(slopes: &[(Rational64, usize)], bins: usize) -> Result<SlopeStats> {
    let total: usize = slopes.iter().map(|s| s.1).sum();
    if total == 0 {
        return Err(Error::Input("empty slope multiset".into()));
    }
    if bins == 0 {
        return Err(Error::Input("histogram needs at least one bin".into()));
    }
    let mut sorted: Vec<(Rational64, usize)> = slopes.iter().filter(|s| s.1 > 0).copied().collect();
    sorted.sort();
    let mut merged: Vec<(Rational64, usize)> = Vec::new();
    for (s, m) in sorted {
        if s < Rational64::zero() || s > Rational64::from_integer(1) {
            return Err(Error::Input(format!("slope {s} outside [0, 1]")));
        }
        match merged.last_mut() {
            Some((t, k)) if *t == s => *k += m,
            _ => merged.push((s, m)),
        }
    }
    let mut histogram = vec![0usize; bins];
    for &(s, m) in &merged {
        let idx = ((s * Rational64::from_integer(bins as i64)).floor().to_integer() as usize).min(bins - 1);
        histogram[idx] += m;
    }
    let n = BigRational::from_integer(BigInt::from(total));
    let mut ks = BigRational::zero();
    let mut below = 0usize;
    for &(s, m) in &merged {
        let x = big(s);
        let before = BigRational::from_integer(BigInt::from(below)) / &n;
        below += m;
        let after = BigRational::from_integer(BigInt::from(below)) / &n;
        for f in [before, after] {
            let dev = if f > x { &f - &x } else { &x - &f };
            if dev > ks {
                ks = dev;
            }
        }
    }
    let mass = |s: Rational64| merged.iter().find(|t| t.0 == s).map_or(0, |t| t.1) as i64;
    let mut tv = 0i64;
    for &(s, m) in &merged {
        tv += (m as i64 - mass(Rational64::from_integer(1) - s)).abs();
    }
    let defect = BigRational::new(BigInt::from(tv), BigInt::from(2 * total));
    Ok(SlopeStats {
        count: total,
        histogram,
        ks_f64: ks.to_f64().unwrap_or(f64::NAN),
        ks: ks.to_string(),
        symmetry_defect_f64: defect.to_f64().unwrap_or(f64::NAN),
        symmetry_defect: defect.to_string(),
    })
}
