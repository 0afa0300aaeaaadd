//! Characters of (Z/p^n)^d, their ramification loci and Galois orbits.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::Place;
use crate::error::{Error, Result};

use super::spec::TowerSpec;

/// Largest character group enumerated explicitly.
pub const MAX_CHARACTERS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterIndex {
    pub exponents: Vec<u64>,
    pub level: u32,
    /// j with order p^j.
    pub order_exp: u32,
    pub locus: Vec<Place>,
}

fn vp_u64(mut e: u64, p: u64) -> u32 {
    let mut v = 0;
    while e % p == 0 {
        e /= p;
        v += 1;
    }
    v
}

impl CharacterIndex {
    pub fn new(spec: &TowerSpec, exponents: Vec<u64>, level: u32) -> Self {
        let p = spec.p as u64;
        let order_exp = exponents
            .iter()
            .filter(|&&e| e != 0)
            .map(|&e| level - vp_u64(e, p).min(level))
            .max()
            .unwrap_or(0);
        let locus: BTreeSet<Place> = exponents
            .iter()
            .zip(&spec.ram_loci)
            .filter(|(&e, _)| e != 0)
            .flat_map(|(_, l)| l.iter().cloned())
            .collect();
        CharacterIndex { exponents, level, order_exp, locus: locus.into_iter().collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn order(&self, p: u32) -> u64 {
        (p as u64).pow(self.order_exp)
    }

    /// Exponents viewed at the character's own level j (divided by p^{n-j}).
    pub fn reduced_exponents(&self, p: u32) -> Vec<u64> {
        let s = (p as u64).pow(self.level - self.order_exp);
        self.exponents.iter().map(|e| e / s).collect()
    }

    /// The Galois conjugate χ^u.
    pub fn twist(&self, u: u64, p: u32) -> Self {
        let m = (p as u64).pow(self.level);
        CharacterIndex {
            exponents: self.exponents.iter().map(|&e| (e as u128 * u as u128 % m as u128) as u64).collect(),
            ..self.clone()
        }
    }

    /// True when the only nonzero exponent sits on the constant coordinate.
    pub fn is_purely_constant(&self, spec: &TowerSpec) -> bool {
        !self.is_trivial()
            && self.exponents.iter().enumerate().all(|(i, &e)| e == 0 || Some(i) == spec.constant_coord)
    }

    /// Exponent on the constant coordinate, 0 when there is none.
    pub fn constant_exponent(&self, spec: &TowerSpec) -> u64 {
        spec.constant_coord.map_or(0, |c| self.exponents[c])
    }
}

/// Characters of level n grouped by exact ramification locus.
#[derive(Clone, Debug)]
pub struct InteriorPartition {
    pub level: u32,
    pub blocks: BTreeMap<Vec<Place>, Vec<CharacterIndex>>,
}

impl InteriorPartition {
    pub fn total(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    /// Characters whose locus is the full ramified set.
    pub fn interior(&self, spec: &TowerSpec) -> &[CharacterIndex] {
        self.blocks.get(&spec.ramified_places()).map_or(&[], |v| v.as_slice())
    }

    pub fn all(&self) -> impl Iterator<Item = &CharacterIndex> {
        self.blocks.values().flatten()
    }
}

/// Every character of (Z/p^n)^d, partitioned by locus.
pub fn characters(spec: &TowerSpec, n: u32) -> Result<InteriorPartition> {
    spec.check_level(n)?;
    let p = spec.p as u64;
    let m = p.pow(n);
    let count = m
        .checked_pow(spec.d as u32)
        .filter(|&c| c <= MAX_CHARACTERS)
        .ok_or_else(|| Error::Infeasible(format!("(Z/{m})^{} has too many characters", spec.d)))?;
    let mut blocks: BTreeMap<Vec<Place>, Vec<CharacterIndex>> = BTreeMap::new();
    for idx in 0..count {
        let mut r = idx;
        let mut e = vec![0u64; spec.d];
        for slot in e.iter_mut().rev() {
            *slot = r % m;
            r /= m;
        }
        let chi = CharacterIndex::new(spec, e, n);
        blocks.entry(chi.locus.clone()).or_default().push(chi);
    }
    Ok(InteriorPartition { level: n, blocks })
}

/// One Galois orbit; `rep` is its smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: CharacterIndex,
    pub members: Vec<CharacterIndex>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub fn units(p: u32, n: u32) -> Vec<u64> {
    let m = (p as u64).pow(n);
    (1..m.max(2)).filter(|u| u % p as u64 != 0).collect()
}

/// Partition a block into orbits under e ↦ u·e, u ∈ (Z/p^n)^*.
pub fn galois_orbits(block: &[CharacterIndex], p: u32, n: u32) -> Result<Vec<Orbit>> {
    let all: BTreeSet<&Vec<u64>> = block.iter().map(|c| &c.exponents).collect();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut out = Vec::new();
    let us = units(p, n);
    let mut sorted: Vec<&CharacterIndex> = block.iter().collect();
    sorted.sort();
    for chi in sorted {
        if seen.contains(&chi.exponents) {
            continue;
        }
        let mut members: BTreeMap<Vec<u64>, CharacterIndex> = BTreeMap::new();
        for &u in &us {
            let t = chi.twist(u, p);
            if !all.contains(&t.exponents) {
                return Err(Error::Input(format!(
                    "block is not Galois-stable: {:?} twisted by {u} leaves it",
                    chi.exponents
                )));
            }
            members.entry(t.exponents.clone()).or_insert(t);
        }
        seen.extend(members.keys().cloned());
        let members: Vec<CharacterIndex> = members.into_values().collect();
        out.push(Orbit { rep: members[0].clone(), members });
    }
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> TowerSpec {
        TowerSpec::from_json(json).unwrap()
    }

    fn sizes(part: &InteriorPartition) -> Vec<usize> {
        part.blocks.values().map(Vec::len).collect()
    }

    #[test]
    fn partition_examples() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3"]]}"#);
        let part = characters(&t, 2).unwrap();
        assert_eq!(sizes(&part), vec![1, 3]);
        assert_eq!(part.interior(&t).len(), 3);

        let t = spec(r#"{"p":2,"d":2,"coords":[["x^3"],["1/x"]]}"#);
        let part = characters(&t, 1).unwrap();
        assert_eq!(part.total(), 4);
        assert_eq!(sizes(&part), vec![1, 1, 1, 1]);

        let t = spec(r#"{"p":3,"d":1,"coords":[["x^2"]]}"#);
        assert_eq!(characters(&t, 1).unwrap().interior(&t).len(), 2);
        assert!(characters(&t, 4).is_err());
    }

    #[test]
    fn orbit_examples() {
        let t = spec(r#"{"p":2,"d":1,"coords":[["x^3"]]}"#);
        let block: Vec<_> = (1..4).map(|e| CharacterIndex::new(&t, vec![e], 2)).collect();
        let orbits = galois_orbits(&block, 2, 2).unwrap();
        let reps: Vec<Vec<u64>> = orbits.iter().map(|o| o.members.iter().map(|c| c.exponents[0]).collect()).collect();
        assert_eq!(reps, vec![vec![1, 3], vec![2]]);
        assert!(galois_orbits(&block[..1], 2, 2).is_err());

        let block: Vec<_> = (1..2).map(|e| CharacterIndex::new(&t, vec![e], 1)).collect();
        assert_eq!(galois_orbits(&block, 2, 1).unwrap().len(), 1);

        let t = spec(r#"{"p":3,"d":1,"coords":[["x^2"]]}"#);
        let block: Vec<_> = (1..3).map(|e| CharacterIndex::new(&t, vec![e], 1)).collect();
        let orbits = galois_orbits(&block, 3, 1).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size(), 2);
    }

    #[test]
    fn orders() {
        let t = spec(r#"{"p":2,"d":2,"coords":[["x^3"],["1/x"]]}"#);
        let c = CharacterIndex::new(&t, vec![4, 2], 3);
        assert_eq!(c.order_exp, 2);
        assert_eq!(c.reduced_exponents(2), vec![2, 1]);
        assert_eq!(c.locus.len(), 2);
    }
}
