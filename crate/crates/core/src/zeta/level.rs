//! Assembly of P(K_n, s) and the invariants read off from it.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::int_poly::vp_int;
use crate::algebra::{newton_polygon, IntPoly};
use crate::error::{Error, Result};
use crate::lfunction::{l_polynomial_with, l_value_valuation, unit_root_count, LOptions, LPolynomial, PowerSumCache};
use crate::tower::{characters, galois_orbits, genus, CharacterIndex, Orbit, TowerSpec};

use super::adams::{adams, root_of_unity_product};

#[derive(Clone, Copy, Debug)]
pub struct ZetaOptions {
    /// P(K_n, s) is expanded only up to this degree.
    pub degree_cap: usize,
    pub l: LOptions,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        ZetaOptions { degree_cap: 2000, l: LOptions::default() }
    }
}

/// One Galois orbit of ramified characters and its L-data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub rep: Vec<u64>,
    pub size: usize,
    pub order_exp: u32,
    pub locus: Vec<String>,
    pub interior: bool,
    /// Coefficients of L(rep, s) printed in the cyclotomic basis.
    pub l_coeffs: Vec<String>,
    pub orbit_product: IntPoly,
    pub vp_l_at_one: u64,
    pub unit_roots: usize,
    pub slopes: Vec<Rational64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaLevel {
    pub n: u32,
    pub genus: u64,
    /// Orbits of characters trivial on the constant coordinate.
    pub orbits: Vec<OrbitRecord>,
    /// P(K_n, s) over the constant field of K_n, when within the degree cap.
    pub poly: Option<IntPoly>,
    pub class_number: Option<BigInt>,
    pub vp_class_number: u64,
    pub p_rank: u64,
    /// (slope, multiplicity), ascending.
    pub slopes: Vec<(Rational64, usize)>,
}

fn multiset(mut v: Vec<Rational64>) -> Vec<(Rational64, usize)> {
    v.sort();
    let mut out: Vec<(Rational64, usize)> = Vec::new();
    for s in v {
        match out.last_mut() {
            Some((t, m)) if *t == s => *m += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn orbit_record(spec: &TowerSpec, orbit: &Orbit, l: &LPolynomial) -> Result<OrbitRecord> {
    let slopes = if l.degree() == 0 { Vec::new() } else { l.slopes() };
    Ok(OrbitRecord {
        rep: orbit.rep.exponents.clone(),
        size: orbit.size(),
        order_exp: orbit.rep.order_exp,
        locus: orbit.rep.locus.iter().map(|p| p.to_string()).collect(),
        interior: orbit.rep.locus == spec.ramified_places(),
        l_coeffs: l.coeffs.iter().map(|c| c.to_string()).collect(),
        orbit_product: l.orbit_product()?,
        vp_l_at_one: l_value_valuation(l)?,
        unit_roots: unit_root_count(l),
        slopes,
    })
}

/// Orbits of ramified characters at level n; with `geometric_only`, those
/// trivial on the constant coordinate.
pub fn ramified_orbits(spec: &TowerSpec, n: u32, geometric_only: bool) -> Result<Vec<Orbit>> {
    let part = characters(spec, n)?;
    let mut out = Vec::new();
    for (locus, block) in &part.blocks {
        if locus.is_empty() {
            continue;
        }
        let block: Vec<CharacterIndex> = block
            .iter()
            .filter(|c| !geometric_only || c.constant_exponent(spec) == 0)
            .cloned()
            .collect();
        out.extend(galois_orbits(&block, spec.p, n)?);
    }
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(out)
}

/// L-data for a list of orbits, computed in parallel, returned in input order.
pub fn orbit_records(spec: &TowerSpec, orbits: &[Orbit], cache: &PowerSumCache, opts: &LOptions) -> Result<Vec<OrbitRecord>> {
    orbits
        .par_iter()
        .map(|o| {
            let l = l_polynomial_with(cache, &o.rep, opts)?;
            orbit_record(spec, o, &l)
        })
        .collect()
}

fn product(polys: impl Iterator<Item = IntPoly>) -> IntPoly {
    polys.fold(IntPoly::one(), |acc, f| acc.mul(&f))
}

fn check_weil_bound(h: &BigInt, q: u64, g: u64) -> Result<()> {
    let Some(hf) = h.to_f64().filter(|x| x.is_finite()) else {
        return Ok(());
    };
    let sq = (q as f64).sqrt();
    let (lo, hi) = (2.0 * g as f64 * (sq - 1.0).ln(), 2.0 * g as f64 * (sq + 1.0).ln());
    let lh = hf.ln();
    if lh < lo - 1e-9 || lh > hi + 1e-9 {
        return Err(Error::Consistency(format!("h = {h} violates the Weil bounds for g = {g}, q = {q}")));
    }
    Ok(())
}

/// Everything known about level n.
pub fn zeta_level_with(spec: &TowerSpec, n: u32, cache: &PowerSumCache, opts: &ZetaOptions) -> Result<ZetaLevel> {
    spec.check_level(n)?;
    if n == 0 {
        return Ok(ZetaLevel {
            n,
            genus: 0,
            orbits: Vec::new(),
            poly: Some(IntPoly::one()),
            class_number: Some(BigInt::one()),
            vp_class_number: 0,
            p_rank: 0,
            slopes: Vec::new(),
        });
    }
    let g = genus(spec, n)?;
    let geo = ramified_orbits(spec, n, true)?;
    let records = orbit_records(spec, &geo, cache, &opts.l)?;
    let total_degree: usize = records.iter().map(|r| r.orbit_product.degree()).sum();
    if total_degree as u64 != 2 * g {
        return Err(Error::Consistency(format!("level {n}: deg P = {total_degree} but 2g = {}", 2 * g)));
    }
    let vp_h: u64;
    let p_rank: u64 = records.iter().map(|r| (r.size * r.unit_roots) as u64).sum();
    let slopes = multiset(records.iter().flat_map(|r| (0..r.size).flat_map(|_| r.slopes.clone())).collect());
    let geometric_poly = (total_degree <= opts.degree_cap).then(|| product(records.iter().map(|r| r.orbit_product.clone())));
    let poly = if spec.constant_coord.is_none() {
        vp_h = records.iter().map(|r| r.vp_l_at_one).sum();
        geometric_poly
    } else {
        let e = (spec.p as u64).pow(n);
        let via_resultants: u64 = records
            .iter()
            .map(|r| {
                let prod = root_of_unity_product(&r.orbit_product, e);
                vp_int(&prod, spec.p).ok_or_else(|| Error::Consistency("L vanishes at a root of unity".into()))
            })
            .sum::<Result<u64>>()?;
        let all = ramified_orbits(spec, n, false)?;
        let direct: u64 = orbit_records(spec, &all, cache, &opts.l)?.iter().map(|r| r.vp_l_at_one).sum();
        if direct != via_resultants {
            return Err(Error::Consistency(format!(
                "level {n}: direct L-values give v_p(h) = {direct}, resultants give {via_resultants}"
            )));
        }
        vp_h = direct;
        match geometric_poly {
            Some(pg) => {
                let a = adams(&pg, e)?;
                let at_one = a.eval(&BigInt::one());
                if at_one != root_of_unity_product(&pg, e) {
                    return Err(Error::Consistency("Adams evaluation disagrees with the resultant".into()));
                }
                Some(a)
            }
            None => None,
        }
    };
    let mut class_number = None;
    if let Some(pol) = &poly {
        let h = pol.eval(&BigInt::one());
        if !h.is_positive() {
            return Err(Error::Consistency(format!("level {n}: P(1) = {h} is not positive")));
        }
        if vp_int(&h, spec.p) != Some(vp_h) {
            return Err(Error::Consistency(format!("level {n}: v_p(P(1)) disagrees with the orbit sum {vp_h}")));
        }
        let qn = if spec.constant_coord.is_some() { spec.q().pow((spec.p as u32).pow(n)) } else { spec.q() };
        check_weil_bound(&h, qn, g)?;
        if pol.degree() > 0 {
            let normalizer = if spec.constant_coord.is_some() { spec.k as i64 * (spec.p as i64).pow(n) } else { spec.k as i64 };
            let vals: Vec<_> = pol
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i, vp_int(c, spec.p).map(|v| Rational64::from_integer(v as i64))))
                .collect();
            let np = newton_polygon(&vals, Rational64::from_integer(normalizer))?;
            if np.unit_roots() as u64 != p_rank {
                return Err(Error::Consistency(format!(
                    "level {n}: per-character p-rank {p_rank} but P has {} unit roots",
                    np.unit_roots()
                )));
            }
            if multiset(np.slopes()) != slopes {
                return Err(Error::Consistency(format!("level {n}: slopes of P differ from the character slopes")));
            }
        }
        class_number = Some(h);
    }
    let one_half = Rational64::new(1, 2);
    let reflected = multiset(slopes.iter().flat_map(|&(s, m)| std::iter::repeat(Rational64::one() - s).take(m)).collect());
    if reflected != slopes || slopes.iter().any(|(s, _)| *s < Rational64::zero() || *s > one_half * 2) {
        return Err(Error::Consistency(format!("level {n}: slopes are not symmetric in [0, 1]")));
    }
    Ok(ZetaLevel { n, genus: g, orbits: records, poly, class_number, vp_class_number: vp_h, p_rank, slopes })
}

pub fn zeta_level(spec: &TowerSpec, n: u32) -> Result<ZetaLevel> {
    let cache = PowerSumCache::new(spec, n.max(1));
    zeta_level_with(spec, n, &cache, &ZetaOptions::default())
}

pub fn class_number_valuation(spec: &TowerSpec, n: u32) -> Result<u64> {
    Ok(zeta_level(spec, n)?.vp_class_number)
}

pub fn p_rank(spec: &TowerSpec, n: u32) -> Result<u64> {
    Ok(zeta_level(spec, n)?.p_rank)
}

/// Σ over geometric orbits of v_p(∏_{η^{p^n}=1} L_orbit(η)).
pub fn constant_tower_valuation(spec: &TowerSpec, n: u32) -> Result<u64> {
    if spec.constant_coord.is_none() {
        return Err(Error::Input("tower has no constant coordinate".into()));
    }
    let cache = PowerSumCache::new(spec, n.max(1));
    let geo = ramified_orbits(spec, n, true)?;
    let e = (spec.p as u64).pow(n);
    orbit_records(spec, &geo, &cache, &LOptions::default())?
        .iter()
        .map(|r| {
            vp_int(&root_of_unity_product(&r.orbit_product, e), spec.p)
                .ok_or_else(|| Error::Consistency("L vanishes at a root of unity".into()))
        })
        .sum()
}
