//! Universal Witt polynomials for addition, multiplication and negation.
//!
//! The polynomials are obtained by inverting the ghost map. Only their
//! reductions mod p are kept: for A ≡ B (mod p) one has
//! A^{p^t} ≡ B^{p^t} (mod p^{t+1}), so each recursion step can run with
//! integer coefficients mod p^{i+1} using nothing but earlier reductions.
//! Integrality is checked at every step (the ghost residue must be divisible
//! by p^i).

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::CoeffRing;
use crate::error::{Error, Result};

/// Longest Witt vectors the arithmetic layer will build tables for.
pub const DEFAULT_MAX_LENGTH: usize = 5;

const CACHE_MAGIC: &str = "aswtower-witt-polys 1";

/// Polynomial with coefficients in F_p, terms sorted by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u16>, u32)>,
}

impl MPoly {
    pub fn eval<R: CoeffRing>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        let mut powers: HashMap<(usize, u16), R::Elem> = HashMap::new();
        let mut acc = ring.zero();
        for (exps, c) in &self.terms {
            let mut term = ring.from_u64(*c as u64);
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if ring.is_zero(&vals[v]) {
                    term = ring.zero();
                    break;
                }
                let pw = powers.entry((v, e)).or_insert_with(|| ring.pow(&vals[v], e as u64));
                term = ring.mul(&term, pw);
            }
            if !ring.is_zero(&term) {
                acc = ring.add(&acc, &term);
            }
        }
        acc
    }
}

/// Integer polynomial with coefficients reduced mod `modulus`.
#[derive(Clone, Debug)]
struct ZPoly {
    terms: HashMap<Vec<u16>, u64>,
    modulus: u64,
}

impl ZPoly {
    fn new(modulus: u64) -> Self {
        ZPoly { terms: HashMap::new(), modulus }
    }

    fn monomial(nvars: usize, var: usize, exp: u16, coeff: u64, modulus: u64) -> Self {
        let mut e = vec![0u16; nvars];
        e[var] = exp;
        let mut z = ZPoly::new(modulus);
        z.add_term(e, coeff);
        z
    }

    fn one(nvars: usize, modulus: u64) -> Self {
        let mut z = ZPoly::new(modulus);
        z.add_term(vec![0; nvars], 1);
        z
    }

    fn add_term(&mut self, e: Vec<u16>, c: u64) {
        let m = self.modulus;
        let entry = self.terms.entry(e).or_insert(0);
        *entry = (*entry + c % m) % m;
    }

    fn add(&mut self, o: &ZPoly, scale: u64) {
        for (e, &c) in &o.terms {
            let v = ((c as u128 * scale as u128) % self.modulus as u128) as u64;
            self.add_term(e.clone(), v);
        }
        self.terms.retain(|_, c| *c != 0);
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        let m = self.modulus;
        let mut out = ZPoly::new(m);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &o.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ((ca as u128 * cb as u128) % m as u128) as u64);
            }
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    fn pow(&self, mut e: u64, nvars: usize) -> ZPoly {
        let mut r = ZPoly::one(nvars, self.modulus);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    fn from_mpoly(f: &MPoly, modulus: u64) -> ZPoly {
        let mut z = ZPoly::new(modulus);
        for (e, c) in &f.terms {
            z.add_term(e.clone(), *c as u64);
        }
        z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Sum,
    Prod,
    Neg,
}

/// Reduced universal polynomials S_i, P_i, N_i for one (p, length).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPolys {
    pub p: u32,
    pub length: usize,
    /// S_i(x_0..x_{n-1}, y_0..y_{n-1}); variable j < n is x_j, n + j is y_j.
    pub sum: Vec<MPoly>,
    pub prod: Vec<MPoly>,
    /// N_i(x_0..x_{n-1}) with ghost(N) = -ghost(x).
    pub neg: Vec<MPoly>,
}

fn ghost(n: usize, nvars: usize, offset: usize, i: usize, p: u64, modulus: u64) -> ZPoly {
    let mut g = ZPoly::new(modulus);
    for j in 0..=i {
        let e = p.pow((i - j) as u32) as u16;
        g.add(&ZPoly::monomial(nvars, offset + j, e, 1, modulus), p.pow(j as u32));
    }
    let _ = n;
    g
}

fn build_op(p: u32, n: usize, op: Op) -> Result<Vec<MPoly>> {
    let nvars = if op == Op::Neg { n } else { 2 * n };
    let pp = p as u64;
    let mut out: Vec<MPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let modulus = pp.pow(i as u32 + 1);
        let mut num = match op {
            Op::Sum => {
                let mut g = ghost(n, nvars, 0, i, pp, modulus);
                g.add(&ghost(n, nvars, n, i, pp, modulus), 1);
                g
            }
            Op::Prod => ghost(n, nvars, 0, i, pp, modulus).mul(&ghost(n, nvars, n, i, pp, modulus)),
            Op::Neg => {
                let mut g = ZPoly::new(modulus);
                g.add(&ghost(n, nvars, 0, i, pp, modulus), modulus - 1);
                g
            }
        };
        for (j, prev) in out.iter().enumerate() {
            let t = (i - j) as u32;
            let mt = pp.pow(t + 1);
            let mut pw = ZPoly::from_mpoly(prev, mt);
            for _ in 0..t {
                pw = pw.pow(pp, nvars);
            }
            let mut lifted = ZPoly::new(modulus);
            lifted.add(&pw, 1);
            num.add(&lifted, modulus - pp.pow(j as u32));
        }
        let pi = pp.pow(i as u32);
        let mut terms = Vec::new();
        for (e, c) in num.terms {
            if c % pi != 0 {
                return Err(Error::Consistency(format!(
                    "universal Witt polynomial {op:?}_{i} is not integral (p = {p})"
                )));
            }
            let r = ((c / pi) % pp) as u32;
            if r != 0 {
                terms.push((e, r));
            }
        }
        terms.sort();
        out.push(MPoly { nvars, terms });
    }
    Ok(out)
}

impl WittPolys {
    pub fn build(p: u32, length: usize) -> Result<Self> {
        Ok(WittPolys {
            p,
            length,
            sum: build_op(p, length, Op::Sum)?,
            prod: build_op(p, length, Op::Prod)?,
            neg: build_op(p, length, Op::Neg)?,
        })
    }

    /// Shared tables for (p, length), built at most once per process and
    /// persisted to the disk cache when one is configured.
    pub fn get(p: u32, length: usize) -> Result<Arc<WittPolys>> {
        if length == 0 {
            return Err(Error::Input("Witt length must be at least 1".into()));
        }
        if length > DEFAULT_MAX_LENGTH {
            return Err(Error::Infeasible(format!(
                "Witt length {length} exceeds the cap {DEFAULT_MAX_LENGTH}"
            )));
        }
        let mut mem = memory().lock().unwrap();
        if let Some(t) = mem.get(&(p, length)) {
            return Ok(t.clone());
        }
        let dir = disk_dir().lock().unwrap().clone();
        let polys = match dir.as_deref().and_then(|d| WittPolys::load(&cache_path(d, p, length), p, length)) {
            Some(t) => t,
            None => {
                let t = WittPolys::build(p, length)?;
                if let Some(d) = dir.as_deref() {
                    // a failed cache write only costs a rebuild next time
                    let _ = t.store(&cache_path(d, p, length));
                }
                t
            }
        };
        let polys = Arc::new(polys);
        mem.insert((p, length), polys.clone());
        Ok(polys)
    }

    fn serialize(&self) -> String {
        let mut s = format!("{CACHE_MAGIC}\np {} length {}\n", self.p, self.length);
        for (name, ops) in [("sum", &self.sum), ("prod", &self.prod), ("neg", &self.neg)] {
            for (i, f) in ops.iter().enumerate() {
                s.push_str(&format!("{name} {i} {} {}\n", f.nvars, f.terms.len()));
                for (e, c) in &f.terms {
                    s.push_str(&c.to_string());
                    for x in e {
                        s.push(' ');
                        s.push_str(&x.to_string());
                    }
                    s.push('\n');
                }
            }
        }
        s
    }

    fn parse(text: &str, p: u32, length: usize) -> Option<WittPolys> {
        let mut lines = text.lines();
        if lines.next()? != CACHE_MAGIC {
            return None;
        }
        if lines.next()? != format!("p {p} length {length}") {
            return None;
        }
        let mut tables: [Vec<MPoly>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (slot, name) in ["sum", "prod", "neg"].iter().enumerate() {
            for i in 0..length {
                let head: Vec<&str> = lines.next()?.split(' ').collect();
                if head.len() != 4 || head[0] != *name || head[1].parse::<usize>().ok()? != i {
                    return None;
                }
                let nvars: usize = head[2].parse().ok()?;
                let nterms: usize = head[3].parse().ok()?;
                let mut terms = Vec::with_capacity(nterms);
                for _ in 0..nterms {
                    let nums: Vec<u64> = lines.next()?.split(' ').map(|x| x.parse().ok()).collect::<Option<_>>()?;
                    if nums.len() != nvars + 1 {
                        return None;
                    }
                    terms.push((nums[1..].iter().map(|&x| x as u16).collect(), nums[0] as u32));
                }
                tables[slot].push(MPoly { nvars, terms });
            }
        }
        let [sum, prod, neg] = tables;
        Some(WittPolys { p, length, sum, prod, neg })
    }

    fn load(path: &Path, p: u32, length: usize) -> Option<WittPolys> {
        WittPolys::parse(&fs::read_to_string(path).ok()?, p, length)
    }

    fn store(&self, path: &Path) -> std::io::Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::File::create(&tmp)?.write_all(self.serialize().as_bytes())?;
        fs::rename(tmp, path)
    }
}

fn memory() -> &'static Mutex<HashMap<(u32, usize), Arc<WittPolys>>> {
    static M: OnceLock<Mutex<HashMap<(u32, usize), Arc<WittPolys>>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn disk_dir() -> &'static Mutex<Option<PathBuf>> {
    static D: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    D.get_or_init(|| Mutex::new(None))
}

/// Directory for the on-disk polynomial cache; `None` keeps tables in memory only.
pub fn set_disk_cache(dir: Option<PathBuf>) {
    *disk_dir().lock().unwrap() = dir;
}

pub fn cache_path(dir: &Path, p: u32, length: usize) -> PathBuf {
    dir.join(format!("witt_p{p}_len{length}.txt"))
}
