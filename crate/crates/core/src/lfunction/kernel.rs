//! Character-sum kernel: trace exponents of every coordinate at every point
//! of P^1(F_{q^m}), grouped so that each character sum is a short fold.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::algebra::{CycloInt, Gf, Place};
use crate::error::{Error, Result};
use crate::tower::{CharacterIndex, TowerSpec};
use crate::witt::TraceTable;

const CHUNK: usize = 1 << 12;

/// Exponent tuples (c_1, …, c_d) mod p^precision over F_{q^m}.
#[derive(Clone, Debug)]
pub struct ExponentData {
    pub m: u32,
    pub precision: u32,
    /// Elements regular for every coordinate, grouped by exponent tuple, sorted.
    pub classes: Vec<(Vec<u64>, u64)>,
    /// Rational poles and ∞, with `None` where a coordinate has a pole.
    pub specials: Vec<(Place, Vec<Option<u64>>)>,
}

fn pole_elements(spec: &TowerSpec) -> Vec<(Place, u32)> {
    spec.ramified_places()
        .into_iter()
        .filter_map(|pl| pl.rational_root(spec.p).map(|r| (pl, r)))
        .collect()
}

impl ExponentData {
    pub fn build(spec: &TowerSpec, m: u32, precision: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Input("extension degree m must be positive".into()));
        }
        let degree = spec
            .k
            .checked_mul(m)
            .ok_or_else(|| Error::Infeasible(format!("F_q^{m} is too large")))?;
        let field = Gf::get(spec.p, degree)?;
        let table = TraceTable::get(&field, precision)?;
        let poles = pole_elements(spec);
        let is_pole = |a: u32| poles.iter().any(|&(_, r)| r == a);
        let comps: Vec<&[crate::algebra::RatFunc]> =
            spec.coords.iter().map(|w| &w.comps[..w.len().min(precision as usize)]).collect();
        let size = field.size() as usize;
        let merged = (0..size.div_ceil(CHUNK))
            .into_par_iter()
            .map(|ci| {
                let mut local: HashMap<Vec<u64>, u64> = HashMap::new();
                let mut vals = Vec::new();
                for a in (ci * CHUNK) as u32..((ci + 1) * CHUNK).min(size) as u32 {
                    if is_pole(a) {
                        continue;
                    }
                    let key: Vec<u64> = comps
                        .iter()
                        .map(|cs| {
                            vals.clear();
                            vals.extend(cs.iter().map(|f| if f.is_zero() { 0 } else { f.eval(&field, a).unwrap() }));
                            table.witt(&field, &vals)
                        })
                        .collect();
                    *local.entry(key).or_insert(0) += 1;
                }
                local.into_iter().collect::<BTreeMap<_, _>>()
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        let mut specials = Vec::new();
        let places = std::iter::once(Place::Infinity).chain(poles.into_iter().map(|(pl, _)| pl));
        for place in places {
            let key = spec
                .coords
                .iter()
                .map(|w| {
                    let vals: Option<Vec<u32>> = w.comps.iter().map(|f| f.value_at(&place, spec.p)).collect();
                    vals.map(|v| table.witt(&field, &v[..v.len().min(precision as usize)]))
                })
                .collect();
            specials.push((place, key));
        }
        Ok(ExponentData { m, precision, classes: merged.into_iter().collect(), specials })
    }

    /// Number of points of P^1(F_{q^m}) outside the locus of χ.
    pub fn point_count(&self, chi: &CharacterIndex) -> u64 {
        let bulk: u64 = self.classes.iter().map(|(_, c)| c).sum();
        bulk + self.specials.iter().filter(|(_, key)| included(chi, key)).count() as u64
    }

    /// S_m(χ) at the cyclotomic level of χ's order.
    pub fn power_sum(&self, p: u32, chi: &CharacterIndex) -> Result<CycloInt> {
        if chi.level > self.precision {
            return Err(Error::Input(format!(
                "level {} character needs exponent precision {}, have {}",
                chi.level, chi.level, self.precision
            )));
        }
        let pp = p as u64;
        let modn = pp.pow(chi.level);
        let shift = pp.pow(chi.level - chi.order_exp);
        let mut counts = vec![0i64; pp.pow(chi.order_exp) as usize];
        let exponent = |key: &mut dyn Iterator<Item = u64>| -> u64 {
            let mut acc: u128 = 0;
            for (e, c) in chi.exponents.iter().zip(key) {
                acc += *e as u128 * (c % modn) as u128;
            }
            (acc % modn as u128) as u64
        };
        for (key, count) in &self.classes {
            let e = exponent(&mut key.iter().copied());
            counts[(e / shift) as usize] += *count as i64;
        }
        for (_, key) in &self.specials {
            if included(chi, key) {
                let e = exponent(&mut key.iter().map(|c| c.unwrap_or(0)));
                counts[(e / shift) as usize] += 1;
            }
        }
        Ok(CycloInt::from_exponent_counts(p, chi.order_exp, &counts))
    }
}

fn included(chi: &CharacterIndex, key: &[Option<u64>]) -> bool {
    chi.exponents.iter().zip(key).all(|(&e, c)| e == 0 || c.is_some())
}

/// Lazily built exponent data for m = 1, 2, … at one precision.
pub struct PowerSumCache {
    spec: TowerSpec,
    precision: u32,
    cells: Mutex<BTreeMap<u32, Arc<OnceLock<Arc<ExponentData>>>>>,
}

impl PowerSumCache {
    pub fn new(spec: &TowerSpec, precision: u32) -> Self {
        PowerSumCache { spec: spec.clone(), precision, cells: Mutex::new(BTreeMap::new()) }
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn data(&self, m: u32) -> Result<Arc<ExponentData>> {
        let cell = self.cells.lock().unwrap().entry(m).or_default().clone();
        if let Some(d) = cell.get() {
            return Ok(d.clone());
        }
        let built = Arc::new(ExponentData::build(&self.spec, m, self.precision)?);
        Ok(cell.get_or_init(|| built).clone())
    }

    pub fn power_sum(&self, chi: &CharacterIndex, m: u32) -> Result<CycloInt> {
        self.data(m)?.power_sum(self.spec.p, chi)
    }
}

/// S_m(χ) computed from scratch.
pub fn power_sum(spec: &TowerSpec, chi: &CharacterIndex, m: u32) -> Result<CycloInt> {
    ExponentData::build(spec, m, chi.level.max(1))?.power_sum(spec.p, chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> TowerSpec {
        TowerSpec::from_json(json).unwrap()
    }

    #[test]
    fn examples() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3"]]}"#);
        let chi = CharacterIndex::new(&t, vec![1], 1);
        assert_eq!(power_sum(&t, &chi, 1).unwrap(), CycloInt::from_int(2, 1, 0));
        assert_eq!(power_sum(&t, &chi, 2).unwrap(), CycloInt::from_int(2, 1, 4));
        let triv = CharacterIndex::new(&t, vec![0], 1);
        assert_eq!(power_sum(&t, &triv, 3).unwrap(), CycloInt::from_int(2, 0, 9));

        let t = spec(r#"{"p":3,"d":1,"coords":[["x^2"]]}"#);
        let chi = CharacterIndex::new(&t, vec![1], 1);
        let s1 = power_sum(&t, &chi, 1).unwrap();
        let expect = CycloInt::one(3, 1).add(&CycloInt::zeta_pow(3, 1, 1).scale(&2.into()));
        assert_eq!(s1, expect);
    }

    #[test]
    fn excluded_poles() {
        let t = spec(r#"{"p":2,"d":2,"coords":[["x^3"],["1/x"]]}"#);
        let data = ExponentData::build(&t, 1, 1).unwrap();
        // (1,0) sees only the pole at ∞; (0,1) only the pole at 0
        assert_eq!(data.point_count(&CharacterIndex::new(&t, vec![1, 0], 1)), 2);
        assert_eq!(data.point_count(&CharacterIndex::new(&t, vec![0, 1], 1)), 2);
        assert_eq!(data.point_count(&CharacterIndex::new(&t, vec![1, 1], 1)), 1);
        assert_eq!(data.point_count(&CharacterIndex::new(&t, vec![0, 0], 1)), 3);
    }
}
