//! The universal T-adic L-function of a tower, truncated mod (p^N', T^M)
//! and s^{s_max + 1}.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{cyclo::phi, CycloInt};
use crate::error::{Error, Result};
use crate::lfunction::{l_polynomial, ExponentData};
use crate::tower::{CharacterIndex, TowerSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TadicPrecision {
    /// N': p-adic digits kept.
    pub digits: u32,
    /// M: total T-degree bound (exclusive).
    pub t_degree: u32,
    pub s_max: u32,
}

impl Default for TadicPrecision {
    fn default() -> Self {
        TadicPrecision { digits: 4, t_degree: 8, s_max: 16 }
    }
}

fn ilog_ceil(p: u64, x: u64) -> u32 {
    let mut k = 0;
    let mut v = 1u64;
    while v < x {
        v *= p;
        k += 1;
    }
    k
}

fn ilog_floor(p: u64, x: u64) -> u32 {
    let mut k = 0;
    let mut v = p;
    while v <= x {
        v *= p;
        k += 1;
    }
    k
}

impl TadicPrecision {
    /// Witt length N for the trace exponents: N' + ⌈log_p M⌉ + ⌊log_p s_max⌋.
    pub fn exponent_digits(&self, p: u32) -> u32 {
        self.digits + ilog_ceil(p as u64, self.t_degree as u64) + ilog_floor(p as u64, self.s_max.max(1) as u64)
    }

    /// Lower s_max until every needed field has at most `max_points` elements.
    pub fn clamped(&self, spec: &TowerSpec, max_points: u64) -> Self {
        let q = spec.q();
        let feasible = (1..=self.s_max).take_while(|&m| q.checked_pow(m).is_some_and(|x| x <= max_points)).last();
        TadicPrecision { s_max: feasible.unwrap_or(0), ..*self }
    }
}

/// Exponent vectors of total degree < M in d variables, graded then lexicographic.
pub fn monomials(d: usize, m: u32) -> Vec<Vec<u32>> {
    fn rec(d: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == d {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(d, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..m {
        rec(d, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// Multiplication of truncated polynomials in T over a fixed monomial basis.
struct TBasis {
    mons: Vec<Vec<u32>>,
    /// product table: (i, j) -> index of mons[i] + mons[j], if below M
    table: Vec<Vec<Option<usize>>>,
}

impl TBasis {
    fn new(d: usize, m: u32) -> Self {
        let mons = monomials(d, m);
        let table = mons
            .iter()
            .map(|a| {
                mons.iter()
                    .map(|b| {
                        let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        mons.iter().position(|c| *c == s)
                    })
                    .collect()
            })
            .collect();
        TBasis { mons, table }
    }

    fn mul<T: Clone + Zero>(&self, a: &[T], b: &[T]) -> Vec<T>
    where
        for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
    {
        let mut out = vec![T::zero(); self.mons.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if let Some(k) = self.table[i][j] {
                    if !y.is_zero() {
                        out[k] = out[k].clone() + x * y;
                    }
                }
            }
        }
        out
    }
}

fn binomials(c: u64, m: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for r in 1..m as u64 {
        let prev = out.last().unwrap().clone();
        out.push(prev * BigInt::from(c as i128 - r as i128 + 1) / BigInt::from(r));
    }
    out
}

/// Σ over points of U(F_{q^m}) of ∏_i (1 + T_i)^{c_i}, exactly.
fn power_sum_exact(basis: &TBasis, data: &ExponentData, t_degree: u32) -> Vec<BigInt> {
    let d = basis.mons.first().map_or(0, Vec::len);
    let term = |key: &[u64]| -> Vec<BigInt> {
        let per: Vec<Vec<BigInt>> = key.iter().map(|&c| binomials(c, t_degree)).collect();
        basis
            .mons
            .iter()
            .map(|mon| (0..d).fold(BigInt::one(), |acc, i| acc * &per[i][mon[i] as usize]))
            .collect()
    };
    let mut acc = data
        .classes
        .par_iter()
        .map(|(key, count)| term(key).into_iter().map(|x| x * BigInt::from(*count)).collect::<Vec<_>>())
        .reduce(
            || vec![BigInt::zero(); basis.mons.len()],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
        );
    for (_, key) in &data.specials {
        // places of P − U carry a pole of some coordinate
        if let Some(k) = key.iter().copied().collect::<Option<Vec<u64>>>() {
            for (a, t) in acc.iter_mut().zip(term(&k)) {
                *a += t;
            }
        }
    }
    acc
}

/// Coefficients of s^0..s^{s_max}, each a vector over `monomials`, mod p^{N'}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub schema_version: u32,
    pub p: u32,
    pub d: usize,
    pub precision: TadicPrecision,
    pub exponent_digits: u32,
    pub monomials: Vec<Vec<u32>>,
    pub coefficients: Vec<Vec<u64>>,
    /// Exact T = 0 coefficients.
    pub constant_terms: Vec<String>,
}

impl TruncatedSeries {
    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.precision.digits)
    }
}

/// S_m(T) mod p^{N'} for one m.
pub fn tadic_power_sum(spec: &TowerSpec, m: u32, prec: &TadicPrecision) -> Result<Vec<u64>> {
    let basis = TBasis::new(spec.d, prec.t_degree);
    let data = ExponentData::build(spec, m, prec.exponent_digits(spec.p))?;
    let modulus = BigInt::from((spec.p as u64).pow(prec.digits));
    Ok(power_sum_exact(&basis, &data, prec.t_degree)
        .iter()
        .map(|x| x.mod_floor(&modulus).to_u64().unwrap())
        .collect())
}

pub fn tadic_l_series(spec: &TowerSpec, prec: &TadicPrecision) -> Result<TruncatedSeries> {
    tadic_l_series_at(spec, prec, prec.exponent_digits(spec.p))
}

/// As `tadic_l_series` with an explicit exponent precision.
pub fn tadic_l_series_at(spec: &TowerSpec, prec: &TadicPrecision, exponent_digits: u32) -> Result<TruncatedSeries> {
    if prec.digits == 0 || prec.t_degree == 0 {
        return Err(Error::Infeasible("T-adic precision must be positive".into()));
    }
    let basis = TBasis::new(spec.d, prec.t_degree);
    let sums: Vec<Vec<BigRational>> = (1..=prec.s_max)
        .map(|m| {
            let data = ExponentData::build(spec, m, exponent_digits)?;
            Ok(power_sum_exact(&basis, &data, prec.t_degree).into_iter().map(BigRational::from_integer).collect())
        })
        .collect::<Result<_>>()?;
    let nm = basis.mons.len();
    let mut one = vec![BigRational::zero(); nm];
    one[0] = BigRational::one();
    let mut coeffs: Vec<Vec<BigRational>> = vec![one];
    for k in 1..=prec.s_max as usize {
        let mut acc = vec![BigRational::zero(); nm];
        for i in 1..=k {
            for (a, b) in acc.iter_mut().zip(basis.mul(&sums[i - 1], &coeffs[k - i])) {
                *a += b;
            }
        }
        let kk = BigRational::from_integer(BigInt::from(k));
        coeffs.push(acc.into_iter().map(|x| x / &kk).collect());
    }
    let p = BigInt::from(spec.p);
    let modulus = p.pow(prec.digits);
    let reduce = |x: &BigRational| -> Result<u64> {
        let den = x.denom();
        if den.mod_floor(&p).is_zero() {
            return Err(Error::Infeasible(format!(
                "exponent precision {exponent_digits} too small: coefficient {x} is not p-integral"
            )));
        }
        let inv = den.modpow(&(&modulus - modulus.clone() / &p - 1), &modulus);
        Ok((x.numer() * inv).mod_floor(&modulus).to_u64().unwrap())
    };
    let coefficients = coeffs.iter().map(|c| c.iter().map(reduce).collect()).collect::<Result<Vec<Vec<u64>>>>()?;
    let constant_terms = coeffs
        .iter()
        .map(|c| {
            c[0].is_integer()
                .then(|| c[0].to_integer().to_string())
                .ok_or_else(|| Error::Consistency("T = 0 coefficient is not an integer".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries {
        schema_version: SCHEMA_VERSION,
        p: spec.p,
        d: spec.d,
        precision: *prec,
        exponent_digits,
        monomials: basis.mons,
        coefficients,
        constant_terms,
    })
}

/// Z(U, s) = ∏_{x ∈ P−U}(1 − s^{deg x}) / ((1 − s)(1 − q s)) up to s^count.
pub fn zeta_of_u(spec: &TowerSpec, count: usize) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); count + 1];
    num[0] = BigInt::one();
    for place in spec.ramified_places() {
        let dg = place.degree() as usize;
        for i in (dg..=count).rev() {
            let t = num[i - dg].clone();
            num[i] -= t;
        }
    }
    // divide by 1 − s, then by 1 − q s
    for i in 1..=count {
        let t = num[i - 1].clone();
        num[i] += t;
    }
    let q = BigInt::from(spec.q());
    for i in 1..=count {
        let t = &num[i - 1] * &q;
        num[i] += t;
    }
    num
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub passed: bool,
    pub first_mismatch: Option<usize>,
}

/// L_ρ(0, s) against the zeta function of U, exactly.
pub fn mod_t_congruence_check(series: &TruncatedSeries, spec: &TowerSpec) -> CongruenceReport {
    let expect = zeta_of_u(spec, series.precision.s_max as usize);
    let first_mismatch = series
        .constant_terms
        .iter()
        .zip(&expect)
        .position(|(got, want)| got.parse::<BigInt>().ok().as_ref() != Some(want));
    CongruenceReport { passed: first_mismatch.is_none(), first_mismatch }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub character: Vec<u64>,
    pub level: u32,
    /// min(N', M / φ(p^j)) p-adic digits.
    pub retained_digits: Rational64,
    /// Smallest v_p of a coefficient difference, `None` if all vanish.
    pub worst_valuation: Option<Rational64>,
    pub passed: bool,
}

/// Target series at a classical point: L(χ, s) with the Euler factors of
/// P − U removed, or the zeta function of U for the trivial character.
fn classical_target(spec: &TowerSpec, chi: &CharacterIndex, count: usize) -> Result<Vec<CycloInt>> {
    let (p, j) = (spec.p, chi.order_exp);
    if chi.is_trivial() {
        return Ok(zeta_of_u(spec, count).into_iter().map(|x| CycloInt::from_int(p, 0, x)).collect());
    }
    let l = l_polynomial(spec, chi)?;
    let mut target: Vec<CycloInt> = (0..=count)
        .map(|i| l.coeffs.get(i).cloned().unwrap_or_else(|| CycloInt::zero(p, j)))
        .collect();
    let data = ExponentData::build(spec, 1, chi.level)?;
    let modn = (p as u64).pow(chi.level);
    let shift = (p as u64).pow(chi.level - j);
    for (place, key) in &data.specials {
        if chi.locus.contains(place) || !spec.ramified_places().contains(place) {
            continue;
        }
        let e = chi
            .exponents
            .iter()
            .zip(key)
            .filter(|(e, _)| **e != 0)
            .map(|(e, c)| e * c.expect("regular outside the locus") % modn)
            .sum::<u64>()
            % modn;
        let frob = CycloInt::zeta_pow(p, j, e / shift);
        let dg = place.degree() as usize;
        for i in (dg..=count).rev() {
            let t = target[i - dg].mul(&frob);
            target[i] = target[i].sub(&t);
        }
    }
    Ok(target)
}

/// Substitute T_i = ζ^{e_i} − 1 and compare with the classical L-function.
pub fn specialize_check(series: &TruncatedSeries, spec: &TowerSpec, chi: &CharacterIndex) -> Result<SpecializationReport> {
    let (p, j) = (spec.p, chi.order_exp);
    let retained = Rational64::new(series.precision.digits as i64, 1)
        .min(Rational64::new(series.precision.t_degree as i64, phi(p, j) as i64));
    if !chi.is_trivial() && retained < Rational64::one() {
        return Err(Error::Infeasible(format!("retained precision {retained} is below one digit")));
    }
    let count = series.precision.s_max as usize;
    let target = classical_target(spec, chi, count)?;
    let ts: Vec<CycloInt> = chi
        .reduced_exponents(p)
        .iter()
        .map(|&e| CycloInt::zeta_pow(p, j, e).sub(&CycloInt::one(p, j)))
        .collect();
    let mon_vals: Vec<CycloInt> = series
        .monomials
        .iter()
        .map(|mon| {
            mon.iter().zip(&ts).fold(CycloInt::one(p, j), |acc, (&e, t)| (0..e).fold(acc, |a, _| a.mul(t)))
        })
        .collect();
    let mut worst: Option<Rational64> = None;
    for (m, coeffs) in series.coefficients.iter().enumerate() {
        let mut v = CycloInt::zero(p, j);
        for (c, t) in coeffs.iter().zip(&mon_vals) {
            if *c != 0 {
                v = v.add(&t.scale(&BigInt::from(*c)));
            }
        }
        let diff = v.sub(&target[m]);
        if let Some(val) = diff.valuation() {
            worst = Some(worst.map_or(val, |w: Rational64| w.min(val)));
        }
    }
    let passed = worst.map_or(true, |w| w >= retained);
    Ok(SpecializationReport { character: chi.exponents.clone(), level: chi.level, retained_digits: retained, worst_valuation: worst, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> TowerSpec {
        TowerSpec::from_json(json).unwrap()
    }

    #[test]
    fn precision_rule() {
        let d = TadicPrecision::default();
        assert_eq!(d.exponent_digits(2), 11);
        assert_eq!(d.exponent_digits(3), 8);
        assert_eq!(monomials(2, 3).len(), 6);
    }

    #[test]
    fn first_power_sum() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3"]]}"#);
        let prec = TadicPrecision { digits: 2, t_degree: 2, s_max: 1 };
        assert_eq!(tadic_power_sum(&t, 1, &prec).unwrap(), vec![2, 1]);
        let s = tadic_l_series(&t, &prec).unwrap();
        assert_eq!(s.coefficients[1], vec![2, 1]);
        let s0 = tadic_l_series(&t, &TadicPrecision { s_max: 0, ..prec }).unwrap();
        assert_eq!(s0.coefficients.len(), 1);
        assert!(mod_t_congruence_check(&s0, &t).passed);
    }

    #[test]
    fn congruence_and_specialization() {
        let t = spec(r#"{"p":2,"d":1,"n_max":2,"coords":[["x^3"]]}"#);
        let prec = TadicPrecision { digits: 4, t_degree: 8, s_max: 8 };
        let s = tadic_l_series(&t, &prec).unwrap();
        let r = mod_t_congruence_check(&s, &t);
        assert!(r.passed);
        let expect: Vec<String> = (0..=8).map(|m| (1u64 << m).to_string()).collect();
        assert_eq!(s.constant_terms, expect);
        for (e, n) in [(1u64, 1u32), (1, 2), (3, 2), (0, 1)] {
            let rep = specialize_check(&s, &t, &CharacterIndex::new(&t, vec![e], n)).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn two_ramified_places() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3+1/x"]]}"#);
        let z = zeta_of_u(&t, 4);
        // (1 − s)^2 / ((1 − s)(1 − 2s)) = (1 − s)/(1 − 2s)
        assert_eq!(z, vec![1, 1, 2, 4, 8].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
