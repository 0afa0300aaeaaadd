//! Swan conductors of combined characters and the genus of each layer.

use crate::algebra::{FpPoly, Place, RatFunc, RatFuncRing};
use crate::error::{Error, Result};
use crate::witt::{raw_pole_orders, WittRing, WittVec};

use super::characters::{characters, galois_orbits, CharacterIndex};
use super::spec::TowerSpec;

const MAX_REDUCTION_STEPS: usize = 256;

/// ⊞_i [e_i]·coords_i at the character's own level j.
pub fn combined_vector(spec: &TowerSpec, chi: &CharacterIndex) -> Result<WittVec<RatFunc>> {
    let j = chi.order_exp as usize;
    if j == 0 {
        return Ok(WittVec::new(Vec::new()));
    }
    let ring = RatFuncRing { p: spec.p };
    let w = WittRing::new(&ring, j)?;
    let mut acc = w.zero();
    for (e, coord) in chi.reduced_exponents(spec.p).iter().zip(&spec.coords) {
        if *e == 0 {
            continue;
        }
        let truncated = WittVec::new(coord.comps[..j].to_vec());
        acc = w.add(&acc, &w.scalar(*e, &truncated)?)?;
    }
    Ok(acc)
}

/// c·u^{-m} for the local parameter u at a rational place.
fn principal_part(place: &Place, c: u32, m: u64, p: u32) -> Result<RatFunc> {
    match place {
        Place::Infinity => {
            let mut coeffs = vec![0; m as usize + 1];
            coeffs[m as usize] = c;
            Ok(RatFunc::poly(FpPoly::new(coeffs)))
        }
        Place::Finite(f) if f.degree() == 1 => Ok(RatFunc::new(FpPoly::constant(c, p), f.pow(m, p), p)),
        Place::Finite(_) => Err(Error::InvalidSpec(format!("cannot reduce at the non-rational place {place}"))),
    }
}

/// Replace w by an Artin–Schreier–Witt equivalent vector whose pole orders
/// at `place` are coprime to p, using w ↦ w − V^i[g^p] + V^i[g].
pub fn asw_reduce_at(w: &WittVec<RatFunc>, place: &Place, p: u32) -> Result<WittVec<RatFunc>> {
    if w.is_empty() {
        return Ok(w.clone());
    }
    let ring = RatFuncRing { p };
    let wr = WittRing::new(&ring, w.len())?;
    let mut cur = w.clone();
    for _ in 0..MAX_REDUCTION_STEPS {
        let orders = raw_pole_orders(&cur, place, p);
        let Some(i) = orders.iter().position(|&d| d > 0 && d % p as u64 == 0) else {
            return Ok(cur);
        };
        let c = cur.comps[i]
            .leading_coeff(place, p)
            .ok_or_else(|| Error::Consistency("pole without leading coefficient".into()))?;
        // c is its own p-th root in F_p
        let g = principal_part(place, c, orders[i] / p as u64, p)?;
        let gp = principal_part(place, c, orders[i], p)?;
        let shifted = |f: RatFunc| {
            let mut comps = vec![RatFunc::zero(); cur.len()];
            comps[i] = f;
            WittVec::new(comps)
        };
        cur = wr.add(&wr.sub(&cur, &shifted(gp))?, &shifted(g))?;
    }
    Err(Error::Consistency(format!("ASW reduction at {place} did not terminate")))
}

/// Swan conductor of χ at a place; 0 outside the locus.
pub fn swan_conductor(spec: &TowerSpec, chi: &CharacterIndex, place: &Place) -> Result<u64> {
    if !chi.locus.contains(place) {
        return Ok(0);
    }
    let w = asw_reduce_at(&combined_vector(spec, chi)?, place, spec.p)?;
    let j = w.len() as u32;
    let p = spec.p as u64;
    let swan = raw_pole_orders(&w, place, spec.p)
        .iter()
        .enumerate()
        .map(|(i, d)| d * p.pow(j - 1 - i as u32))
        .max()
        .unwrap_or(0);
    if swan == 0 {
        return Err(Error::InvalidSpec(format!(
            "character {:?} is unramified at {place}, outside the split-inertia regime",
            chi.exponents
        )));
    }
    Ok(swan)
}

/// Σ_{x ∈ locus} deg(x)·(1 + Swan_x(χ)).
pub fn conductor_degree(spec: &TowerSpec, chi: &CharacterIndex) -> Result<u64> {
    let mut total = 0;
    for place in &chi.locus {
        total += place.degree() as u64 * (1 + swan_conductor(spec, chi, place)?);
    }
    Ok(total)
}

/// Degree of L(χ, s) for a ramified character over the rational base.
pub fn l_degree(spec: &TowerSpec, chi: &CharacterIndex) -> Result<usize> {
    if chi.locus.is_empty() {
        return Err(Error::Input(format!("character {:?} is unramified", chi.exponents)));
    }
    Ok((conductor_degree(spec, chi)? - 2) as usize)
}

/// Genus of the geometric layer at level n (constant-field characters excluded).
pub fn genus(spec: &TowerSpec, n: u32) -> Result<u64> {
    if n == 0 {
        return Ok(0);
    }
    let part = characters(spec, n)?;
    let d_geo = spec.geometric_coords().len() as u32;
    let mut rhs: i128 = -2 * (spec.p as i128).pow(d_geo * n);
    for (locus, block) in &part.blocks {
        if locus.is_empty() {
            continue;
        }
        let block: Vec<CharacterIndex> =
            block.iter().filter(|c| c.constant_exponent(spec) == 0).cloned().collect();
        for orbit in galois_orbits(&block, spec.p, n)? {
            rhs += orbit.size() as i128 * conductor_degree(spec, &orbit.rep)? as i128;
        }
    }
    if rhs < -2 || rhs % 2 != 0 {
        return Err(Error::Consistency(format!("conductor sum gives 2g - 2 = {rhs} at level {n}")));
    }
    Ok(((rhs + 2) / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> TowerSpec {
        TowerSpec::from_json(json).unwrap()
    }

    #[test]
    fn swan_examples() {
        let t = spec(r#"{"p":2,"d":1,"n_max":4,"coords":[["x^3"]]}"#);
        let inf = Place::Infinity;
        assert_eq!(swan_conductor(&t, &CharacterIndex::new(&t, vec![1], 1), &inf).unwrap(), 3);
        assert_eq!(swan_conductor(&t, &CharacterIndex::new(&t, vec![1], 2), &inf).unwrap(), 6);
        assert_eq!(swan_conductor(&t, &CharacterIndex::new(&t, vec![3], 2), &inf).unwrap(), 6);
        assert_eq!(swan_conductor(&t, &CharacterIndex::new(&t, vec![2], 2), &inf).unwrap(), 3);
        let zero = Place::Finite(FpPoly::x());
        assert_eq!(swan_conductor(&t, &CharacterIndex::new(&t, vec![1], 2), &zero).unwrap(), 0);
    }

    #[test]
    fn genus_examples() {
        let t = spec(r#"{"p":2,"d":1,"n_max":4,"coords":[["x^3"]]}"#);
        let g: Vec<u64> = (0..=4).map(|n| genus(&t, n).unwrap()).collect();
        assert_eq!(g, vec![0, 1, 6, 28, 120]);
        let t = spec(r#"{"p":2,"d":1,"coords":[["x"]]}"#);
        assert_eq!(genus(&t, 1).unwrap(), 0);
    }

    #[test]
    fn reduction_is_needed_for_multiples() {
        let t = spec(r#"{"p":2,"d":1,"n_max":2,"coords":[["x^3"]]}"#);
        let w = combined_vector(&t, &CharacterIndex::new(&t, vec![3], 2)).unwrap();
        assert_eq!(raw_pole_orders(&w, &Place::Infinity, 2), vec![3, 6]);
        let r = asw_reduce_at(&w, &Place::Infinity, 2).unwrap();
        assert_eq!(raw_pole_orders(&r, &Place::Infinity, 2), vec![3, 3]);
    }

    #[test]
    fn d2_swans() {
        let t = spec(r#"{"p":2,"d":2,"coords":[["x^3"],["1/x"]]}"#);
        let chi = CharacterIndex::new(&t, vec![1, 1], 1);
        assert_eq!(swan_conductor(&t, &chi, &Place::Infinity).unwrap(), 3);
        assert_eq!(swan_conductor(&t, &chi, &Place::Finite(FpPoly::x())).unwrap(), 1);
        assert_eq!(l_degree(&t, &chi).unwrap(), 4);
    }
}
