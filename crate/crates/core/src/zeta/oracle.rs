//! Level-1 point counts of y^p − y = f(x) by direct enumeration.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Gf, IntPoly};
use crate::error::{Error, Result};
use crate::tower::{genus, TowerSpec};

fn check_oracle_spec(spec: &TowerSpec) -> Result<()> {
    if spec.d != 1 || spec.constant_coord.is_some() {
        return Err(Error::Input("the point-count oracle handles d = 1 geometric towers only".into()));
    }
    Ok(())
}

/// #C(F_{q^m}) for the smooth projective model of y^p − y = f_0(x).
pub fn point_count_oracle(spec: &TowerSpec, m: u32) -> Result<u64> {
    check_oracle_spec(spec)?;
    let field = Gf::get(spec.p, spec.k * m)?;
    let f = &spec.coords[0].comps[0];
    // how many y solve y^p − y = b, for every b
    let mut fibres: HashMap<u32, u64> = HashMap::new();
    for y in 0..field.size() {
        *fibres.entry(field.sub(field.pow(y, spec.p as u64), y)).or_insert(0) += 1;
    }
    let affine: u64 = (0..field.size()).filter_map(|a| f.eval(&field, a)).map(|b| fibres.get(&b).copied().unwrap_or(0)).sum();
    let at_poles: u64 = spec.ram_loci[0].iter().map(|pl| pl.degree() as u64).sum();
    let regular_infinity = if spec.ram_loci[0].contains(&crate::algebra::Place::Infinity) {
        0
    } else {
        // ∞ is unramified: its fibre is counted like an affine point
        let b = f.value_at(&crate::algebra::Place::Infinity, spec.p).expect("regular at infinity");
        fibres.get(&b).copied().unwrap_or(0)
    };
    Ok(affine + at_poles + regular_infinity)
}

/// P(K_1, s) rebuilt from N_1..N_{2g} via exp(Σ (N_m − q^m − 1) s^m / m).
pub fn oracle_zeta(spec: &TowerSpec) -> Result<IntPoly> {
    check_oracle_spec(spec)?;
    let g = genus(spec, 1)? as usize;
    let q = BigInt::from(spec.q());
    let a: Vec<BigInt> = (1..=2 * g as u32)
        .map(|m| Ok(BigInt::from(point_count_oracle(spec, m)?) - q.pow(m) - 1))
        .collect::<Result<_>>()?;
    let mut c = vec![BigInt::one()];
    for k in 1..=2 * g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &a[i - 1] * &c[k - i];
        }
        let (quot, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Consistency(format!("point counts give a non-integral coefficient at s^{k}")));
        }
        c.push(quot);
    }
    Ok(IntPoly::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> TowerSpec {
        TowerSpec::from_json(json).unwrap()
    }

    #[test]
    fn counts() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3"]]}"#);
        assert_eq!(point_count_oracle(&t, 1).unwrap(), 3);
        assert_eq!(point_count_oracle(&t, 2).unwrap(), 9);
        assert_eq!(oracle_zeta(&t).unwrap(), IntPoly::from_i64(&[1, 0, 2]));
        let t = spec(r#"{"p":2,"d":1,"coords":[["x"]]}"#);
        assert_eq!(point_count_oracle(&t, 1).unwrap(), 3);
        assert_eq!(oracle_zeta(&t).unwrap(), IntPoly::one());
        let t = spec(r#"{"p":3,"d":1,"coords":[["x^2"]]}"#);
        assert_eq!(oracle_zeta(&t).unwrap(), IntPoly::from_i64(&[1, 0, 3]));
    }
}
