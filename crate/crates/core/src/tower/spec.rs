//! Tower description files and their validation.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::fp_poly::is_prime;
use crate::algebra::{Place, RatFunc};
use crate::error::{Error, Result};
use crate::witt::{raw_pole_orders, WittVec, DEFAULT_MAX_LENGTH};

use super::parse::parse_ratfunc;

fn default_n_max() -> u32 {
    3
}

fn default_precision() -> u32 {
    4
}

/// The on-disk JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpecFile {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    pub d: usize,
    pub coords: Vec<Vec<String>>,
    #[serde(default)]
    pub constant_coord: Option<usize>,
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default = "default_precision")]
    pub precision_digits: u32,
}

fn one() -> u32 {
    1
}

/// A validated tower.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    pub file: TowerSpecFile,
    pub p: u32,
    pub k: u32,
    pub d: usize,
    /// Witt vectors of length `n_max`, zero padded.
    pub coords: Vec<WittVec<RatFunc>>,
    /// Places where coordinate i ramifies; empty for the constant coordinate.
    pub ram_loci: Vec<Vec<Place>>,
    pub constant_coord: Option<usize>,
    pub n_max: u32,
    pub precision_digits: u32,
}

impl TowerSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("spec JSON: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl TowerSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Coordinates that are not the constant one.
    pub fn geometric_coords(&self) -> Vec<usize> {
        (0..self.d).filter(|&i| Some(i) != self.constant_coord).collect()
    }

    /// Union of all ramification loci, sorted.
    pub fn ramified_places(&self) -> Vec<Place> {
        let set: BTreeSet<Place> = self.ram_loci.iter().flatten().cloned().collect();
        set.into_iter().collect()
    }

    /// Digest of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        let canon = serde_json::to_string(&self.file).expect("spec serializes");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        tower_validate(TowerSpecFile::load(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        tower_validate(TowerSpecFile::from_json(text)?)
    }

    pub fn check_level(&self, n: u32) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Infeasible(format!("level {n} exceeds n_max = {}", self.n_max)));
        }
        Ok(())
    }
}

/// Parse and check a tower description.
pub fn tower_validate(file: TowerSpecFile) -> Result<TowerSpec> {
    let bad = |m: String| Err(Error::InvalidSpec(m));
    let p = file.p;
    if !is_prime(p as u64) {
        return bad(format!("p = {p} is not prime"));
    }
    if file.k == 0 || (p as u64).checked_pow(file.k).map_or(true, |q| q > 1 << 24) {
        return bad(format!("k = {} out of range", file.k));
    }
    if file.d == 0 {
        return bad("d must be at least 1".into());
    }
    if file.coords.len() != file.d {
        return bad(format!("{} coordinates given for d = {}", file.coords.len(), file.d));
    }
    if file.n_max == 0 || file.n_max as usize > DEFAULT_MAX_LENGTH {
        return bad(format!("n_max = {} must lie in 1..={DEFAULT_MAX_LENGTH}", file.n_max));
    }
    if file.precision_digits == 0 {
        return bad("precision_digits must be positive".into());
    }
    if let Some(c) = file.constant_coord {
        if c >= file.d {
            return bad(format!("constant_coord {c} out of range"));
        }
    }
    let len = file.n_max as usize;
    let mut coords = Vec::with_capacity(file.d);
    let mut ram_loci = Vec::with_capacity(file.d);
    for (i, comps) in file.coords.iter().enumerate() {
        if comps.is_empty() {
            return bad(format!("coordinate {i} has no components"));
        }
        let mut fs = comps.iter().map(|s| parse_ratfunc(s, p)).collect::<Result<Vec<_>>>()?;
        // components beyond n_max never influence the computed levels
        fs.resize(len, RatFunc::zero());
        let w = WittVec::new(fs);
        let mut places = BTreeSet::new();
        for f in &w.comps {
            match f.poles(p) {
                Ok(ps) => places.extend(ps),
                Err(factor) => {
                    return bad(format!(
                        "coordinate {i} has a pole at a non-rational place (factor {:?})",
                        factor.coeffs
                    ))
                }
            }
        }
        if Some(i) == file.constant_coord {
            if !places.is_empty() {
                return bad(format!("constant coordinate {i} must be a constant"));
            }
            // Frobenius must map to a generator of Z_p: Tr_{F_q/F_p}(c) = k·c ≠ 0
            if w.comps[0].is_zero() || file.k % p == 0 {
                return bad(format!("constant coordinate {i} does not generate the constant Z_p-extension"));
            }
            coords.push(w);
            ram_loci.push(Vec::new());
            continue;
        }
        if places.is_empty() {
            return bad(format!("coordinate {i} is unramified everywhere and not flagged constant"));
        }
        for place in &places {
            let orders = raw_pole_orders(&w, place, p);
            if let Some((j, d)) = orders.iter().enumerate().find(|(_, &d)| d > 0 && d % p as u64 == 0) {
                return bad(format!(
                    "coordinate {i}, component {j}: pole order {d} at {place} is divisible by p = {p}"
                ));
            }
            if orders[0] == 0 {
                return bad(format!(
                    "coordinate {i} is not totally ramified at {place}: component 0 is regular there"
                ));
            }
        }
        coords.push(w);
        ram_loci.push(places.into_iter().collect());
    }
    if ram_loci.iter().all(|l| l.is_empty()) {
        return bad("tower has no ramified coordinate".into());
    }
    Ok(TowerSpec {
        p,
        k: file.k,
        d: file.d,
        coords,
        ram_loci,
        constant_coord: file.constant_coord,
        n_max: file.n_max,
        precision_digits: file.precision_digits,
        file,
    })
}
