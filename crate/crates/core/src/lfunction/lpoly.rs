//! L-polynomials of finite characters.

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::algebra::int_poly::vp_int;
use crate::algebra::{newton_polygon, CycloInt, IntPoly, NewtonPolygon};
use crate::error::{Error, Result};
use crate::tower::{l_degree, CharacterIndex, Orbit, TowerSpec};

use super::kernel::PowerSumCache;

/// Limits on direct character sums.
#[derive(Clone, Copy, Debug)]
pub struct LOptions {
    /// Power sums with q^m up to this bound are computed to verify a polynomial.
    pub verify_points: u64,
    /// Hard bound on q^m for any power sum.
    pub max_points: u64,
}

impl Default for LOptions {
    fn default() -> Self {
        LOptions { verify_points: 1 << 16, max_points: 1 << 24 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub exponents: Vec<u64>,
    pub level: u32,
    pub order_exp: u32,
    pub p: u32,
    pub k: u32,
    /// c_0 = 1, …, c_D at cyclotomic level `order_exp`.
    pub coeffs: Vec<CycloInt>,
}

impl LPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn at_one(&self) -> CycloInt {
        self.coeffs.iter().fold(CycloInt::zero(self.p, self.order_exp), |acc, c| acc.add(c))
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        let vals: Vec<_> = self.coeffs.iter().enumerate().map(|(i, c)| (i, c.valuation())).collect();
        newton_polygon(&vals, Rational64::from_integer(self.k as i64)).expect("c_0 = 1 and c_D != 0")
    }

    pub fn slopes(&self) -> Vec<Rational64> {
        self.newton_polygon().slopes()
    }

    /// σ_u applied coefficientwise, which is L(χ^u, s).
    pub fn galois(&self, u: u64) -> LPolynomial {
        let m = (self.p as u64).pow(self.level);
        LPolynomial {
            exponents: self.exponents.iter().map(|&e| (e as u128 * u as u128 % m as u128) as u64).collect(),
            coeffs: self.coeffs.iter().map(|c| c.galois(u)).collect(),
            ..self.clone()
        }
    }

    /// ∏_σ σ(L) over Gal(Q(ζ_{p^j})/Q), an integer polynomial.
    pub fn orbit_product(&self) -> Result<IntPoly> {
        let mut acc: Vec<CycloInt> = vec![CycloInt::one(self.p, self.order_exp)];
        for u in CycloInt::galois_units(self.p, self.order_exp) {
            let f: Vec<CycloInt> = self.coeffs.iter().map(|c| c.galois(u)).collect();
            let mut out = vec![CycloInt::zero(self.p, self.order_exp); acc.len() + f.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in f.iter().enumerate() {
                    if !b.is_zero() {
                        out[i + j] = out[i + j].add(&a.mul(b));
                    }
                }
            }
            acc = out;
        }
        let ints = acc
            .iter()
            .map(|c| c.as_integer())
            .collect::<Option<Vec<BigInt>>>()
            .ok_or_else(|| Error::Consistency(format!("orbit product of {:?} is not rational", self.exponents)))?;
        Ok(IntPoly::new(ints))
    }

    /// Power sums S_1..S_count of the polynomial itself.
    pub fn power_sums(&self, count: usize) -> Vec<CycloInt> {
        let zero = CycloInt::zero(self.p, self.order_exp);
        let c = |i: usize| self.coeffs.get(i).cloned().unwrap_or_else(|| zero.clone());
        let mut s: Vec<CycloInt> = Vec::with_capacity(count);
        for k in 1..=count {
            let mut v = c(k).scale(&BigInt::from(k));
            for i in 1..k {
                v = v.sub(&s[i - 1].mul(&c(k - i)));
            }
            s.push(v);
        }
        s
    }
}

/// c_0..c_h from S_1..S_h by k·c_k = Σ S_i c_{k−i}, dividing exactly.
pub fn newton_coefficients(sums: &[CycloInt], p: u32, level: u32) -> Result<Vec<CycloInt>> {
    let mut c = vec![CycloInt::one(p, level)];
    for k in 1..=sums.len() {
        let mut acc = CycloInt::zero(p, level);
        for i in 1..=k {
            acc = acc.add(&sums[i - 1].mul(&c[k - i]));
        }
        let ck = acc.div_exact_int(&BigInt::from(k)).ok_or_else(|| {
            Error::Consistency(format!("Newton identity: {k}·c_{k} = {acc} is not divisible by {k}"))
        })?;
        c.push(ck);
    }
    Ok(c)
}

fn q_pow(q: u64, m: u32) -> Option<u64> {
    q.checked_pow(m)
}

/// L(χ, s) from direct power sums up to about half the degree, completed by
/// the functional equation c_{D−k} = c_D·σ_{−1}(c_k)/q^k and checked against
/// every further power sum within `opts.verify_points`.
pub fn l_polynomial_with(cache: &PowerSumCache, chi: &CharacterIndex, opts: &LOptions) -> Result<LPolynomial> {
    let spec = cache.spec();
    let (p, j) = (spec.p, chi.order_exp);
    let degree = l_degree(spec, chi)?;
    let q = spec.q();
    let base = LPolynomial {
        exponents: chi.exponents.clone(),
        level: chi.level,
        order_exp: j,
        p,
        k: spec.k,
        coeffs: vec![CycloInt::one(p, j)],
    };
    let m_verify = (1..=degree as u32 + 1).take_while(|&m| q_pow(q, m).is_some_and(|x| x <= opts.verify_points)).last();
    let mut sums: Vec<CycloInt> = Vec::new();
    let fetch = |upto: usize, sums: &mut Vec<CycloInt>| -> Result<()> {
        while sums.len() < upto {
            let m = sums.len() as u32 + 1;
            if q_pow(q, m).map_or(true, |x| x > opts.max_points) {
                return Err(Error::Infeasible(format!("power sum over F_{q}^{m} exceeds the point bound")));
            }
            sums.push(cache.power_sum(chi, m)?);
        }
        Ok(())
    };
    let l = if degree == 0 {
        base
    } else {
        let conj = (p as u64).pow(j) - 1;
        let mut h = degree.div_ceil(2);
        let coeffs = loop {
            fetch(h, &mut sums)?;
            let c = newton_coefficients(&sums[..h], p, j)?;
            if h >= degree {
                break c;
            }
            let Some(k) = (degree - h..=h).find(|&k| !c[k].is_zero()) else {
                h += 1;
                continue;
            };
            let qk = BigInt::from(q).pow(k as u32);
            let lead = c[degree - k].scale(&qk).div_exact(&c[k].galois(conj)).ok_or_else(|| {
                Error::Consistency(format!("functional equation: c_{} does not divide q^{k}·c_{}", k, degree - k))
            })?;
            let mut full = vec![CycloInt::zero(p, j); degree + 1];
            full[..=h].clone_from_slice(&c);
            for k in 0..=h {
                let qk = BigInt::from(q).pow(k as u32);
                let v = lead.mul(&c[k].galois(conj)).div_exact_int(&qk).ok_or_else(|| {
                    Error::Consistency(format!("functional equation: c_D·conj(c_{k}) not divisible by q^{k}"))
                })?;
                if degree - k <= h {
                    if v != c[degree - k] {
                        return Err(Error::Consistency(format!(
                            "functional equation mismatch at c_{} for {:?}",
                            degree - k,
                            chi.exponents
                        )));
                    }
                } else {
                    full[degree - k] = v;
                }
            }
            break full;
        };
        if coeffs[degree].is_zero() {
            return Err(Error::Consistency(format!("leading coefficient of L({:?}) vanishes", chi.exponents)));
        }
        let lead = &coeffs[degree];
        let qd = CycloInt::from_int(p, j, BigInt::from(q).pow(degree as u32));
        if lead.mul(&lead.galois(conj)) != qd {
            return Err(Error::Consistency(format!("|c_D|^2 != q^D for {:?}", chi.exponents)));
        }
        LPolynomial { coeffs, ..base }
    };
    if let Some(mv) = m_verify {
        let mv = mv as usize;
        fetch(mv, &mut sums)?;
        let own = l.power_sums(mv);
        if let Some(m) = (0..mv).find(|&m| own[m] != sums[m]) {
            return Err(Error::Consistency(format!(
                "L({:?}) predicts S_{} = {}, direct sum gives {}",
                chi.exponents,
                m + 1,
                own[m],
                sums[m]
            )));
        }
    }
    Ok(l)
}

/// L(χ, s) computed from scratch.
pub fn l_polynomial(spec: &TowerSpec, chi: &CharacterIndex) -> Result<LPolynomial> {
    let cache = PowerSumCache::new(spec, chi.level.max(1));
    l_polynomial_with(&cache, chi, &LOptions::default())
}

/// v_p(Norm(L(χ_0, 1))) for an orbit representative: the p-adic valuation
/// of the product of L(χ, 1) over the orbit.
pub fn l_value_valuation(l: &LPolynomial) -> Result<u64> {
    let v = l.at_one();
    if v.is_zero() {
        return Err(Error::Consistency(format!("L({:?}, 1) = 0", l.exponents)));
    }
    Ok(vp_int(&v.norm(), l.p).expect("nonzero norm"))
}

/// Same, starting from the orbit.
pub fn orbit_l_value_valuation(spec: &TowerSpec, orbit: &Orbit) -> Result<u64> {
    l_value_valuation(&l_polynomial(spec, &orbit.rep)?)
}

/// Number of p-adic unit reciprocal roots.
pub fn unit_root_count(l: &LPolynomial) -> usize {
    if l.degree() == 0 {
        return 0;
    }
    l.newton_polygon().unit_roots()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> TowerSpec {
        TowerSpec::from_json(json).unwrap()
    }

    fn ints(l: &LPolynomial) -> Vec<BigInt> {
        l.coeffs.iter().map(|c| c.as_integer().unwrap()).collect()
    }

    #[test]
    fn examples() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3"]]}"#);
        let l = l_polynomial(&t, &CharacterIndex::new(&t, vec![1], 1)).unwrap();
        assert_eq!(ints(&l), vec![1.into(), 0.into(), 2.into()]);
        assert_eq!(unit_root_count(&l), 0);
        assert_eq!(l_value_valuation(&l).unwrap(), 0);

        let t = spec(r#"{"p":2,"d":1,"coords":[["x"]]}"#);
        let l = l_polynomial(&t, &CharacterIndex::new(&t, vec![1], 1)).unwrap();
        assert_eq!(l.degree(), 0);
        assert_eq!(unit_root_count(&l), 0);

        let t = spec(r#"{"p":3,"d":1,"coords":[["x^2"]]}"#);
        let l = l_polynomial(&t, &CharacterIndex::new(&t, vec![1], 1)).unwrap();
        let c1 = CycloInt::one(3, 1).add(&CycloInt::zeta_pow(3, 1, 1).scale(&2.into()));
        assert_eq!(l.coeffs, vec![CycloInt::one(3, 1), c1]);
        assert_eq!(unit_root_count(&l), 0);
        assert_eq!(l_value_valuation(&l).unwrap(), 0);
        assert_eq!(l.orbit_product().unwrap(), IntPoly::from_i64(&[1, 0, 3]));
    }

    #[test]
    fn higher_levels_complete_by_functional_equation() {
        let t = spec(r#"{"p":2,"d":1,"n_max":4,"coords":[["x^3"]]}"#);
        let cache = PowerSumCache::new(&t, 4);
        let opts = LOptions { verify_points: 1 << 12, ..Default::default() };
        for e in [1u64, 2, 4, 8] {
            let chi = CharacterIndex::new(&t, vec![e], 4);
            let l = l_polynomial_with(&cache, &chi, &opts).unwrap();
            assert_eq!(l.degree(), l_degree(&t, &chi).unwrap());
            assert_eq!(unit_root_count(&l), 0);
        }
    }

    #[test]
    fn conjugates_are_galois_twists() {
        let t = spec(r#"{"p":2,"d":1,"n_max":3,"coords":[["x^3+1/x"]]}"#);
        let cache = PowerSumCache::new(&t, 3);
        let l1 = l_polynomial_with(&cache, &CharacterIndex::new(&t, vec![1], 3), &LOptions::default()).unwrap();
        for u in [3u64, 5, 7] {
            let lu = l_polynomial_with(&cache, &CharacterIndex::new(&t, vec![u], 3), &LOptions::default()).unwrap();
            assert_eq!(lu, l1.galois(u));
        }
        assert_eq!(unit_root_count(&l1), 1);
    }
}
