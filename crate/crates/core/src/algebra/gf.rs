//! Finite fields GF(p^e) in a fixed, reproducible representation.
//!
//! An element is its coefficient vector in the power basis of the canonical
//! modulus, packed as a base-p integer (`u32`). That integer is also the
//! canonical element order. Multiplication goes through discrete log tables
//! built once per field and shared process-wide.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::fp_poly::{canonical_irreducible, is_prime, prime_factors, FpPoly};
use crate::error::{Error, Result};

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// Description of the working field F_{q^m} with q = p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDesc {
    pub p: u32,
    pub k: u32,
    pub m: u32,
    pub modulus: FpPoly,
}

impl FieldDesc {
    pub fn new(p: u32, k: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if k == 0 || m == 0 {
            return Err(Error::Input("field degrees must be positive".into()));
        }
        Ok(FieldDesc { p, k, m, modulus: canonical_irreducible(p, (k * m) as usize) })
    }

    pub fn degree(&self) -> u32 {
        self.k * self.m
    }
}

pub struct Gf {
    p: u32,
    degree: u32,
    size: u32,
    modulus: FpPoly,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl std::fmt::Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Arc<Gf>>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Arc<Gf>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Gf {
    /// Shared instance of GF(p^degree), built on first use.
    pub fn get(p: u32, degree: u32) -> Result<Arc<Gf>> {
        if !is_prime(p as u64) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::Input("field degree must be positive".into()));
        }
        let size = (p as u64).checked_pow(degree).filter(|&s| s <= MAX_FIELD_SIZE).ok_or_else(|| {
            Error::Infeasible(format!("GF({p}^{degree}) exceeds the field size bound {MAX_FIELD_SIZE}"))
        })?;
        // Holding the lock while building means each table is constructed once.
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&(p, degree)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Gf::build(p, degree, size as u32));
        reg.insert((p, degree), f.clone());
        Ok(f)
    }

    /// The field F_{q^m} described by `desc`.
    pub fn from_desc(desc: &FieldDesc) -> Result<Arc<Gf>> {
        Gf::get(desc.p, desc.degree())
    }

    fn build(p: u32, degree: u32, size: u32) -> Gf {
        let modulus = canonical_irreducible(p, degree as usize);
        let mut f = Gf { p, degree, size, modulus, generator: 0, exp: Vec::new(), log: Vec::new() };
        let order = (size - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..size)
            .find(|&g| factors.iter().all(|&r| f.pow_slow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        f.generator = generator;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; size as usize];
        let mut cur = 1u32;
        for t in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = t;
            cur = f.mul_slow(cur, generator);
        }
        f.exp = exp;
        f.log = log;
        f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// g^t for the canonical generator g.
    pub fn exp(&self, t: u64) -> u32 {
        self.exp[(t % (self.size as u64 - 1)) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = a;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn to_poly(&self, a: u32) -> FpPoly {
        FpPoly::new(self.digits(a))
    }

    pub fn from_poly(&self, f: &FpPoly) -> u32 {
        let r = f.rem(&self.modulus, self.p);
        self.from_digits(&r.coeffs)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y, mut out, mut place) = (a, b, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a, 0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size as u64 - 1;
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.size - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.size as u64 - 1;
        self.exp[((self.log[a as usize] as u64 % n) * (e % n) % n) as usize]
    }

    /// Absolute Frobenius a -> a^p.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Multiplication without tables, by polynomial arithmetic.
    pub fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            let mut prod: u64 = 0;
            for i in 0..self.degree {
                if (b >> i) & 1 == 1 {
                    prod ^= (a as u64) << i;
                }
            }
            let m: u64 = self.modulus.coeffs.iter().enumerate().map(|(i, &c)| (c as u64) << i).sum();
            for i in (self.degree as usize..64).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= m << (i - self.degree as usize);
                }
            }
            return prod as u32;
        }
        let f = self.to_poly(a).mul(&self.to_poly(b), self.p);
        self.from_poly(&f)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut r, mut b) = (1u32, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    /// Evaluate a polynomial with prime-field coefficients at `a`.
    pub fn eval_fp_poly(&self, f: &FpPoly, a: u32) -> u32 {
        let mut acc = 0;
        for &c in f.coeffs.iter().rev() {
            acc = self.add(self.mul(acc, a), c);
        }
        acc
    }

    /// Evaluate a polynomial with coefficients in this field at `a`.
    pub fn eval_poly(&self, coeffs: &[u32], a: u32) -> u32 {
        let mut acc = 0;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, a), c);
        }
        acc
    }

    /// Elements of the prime field are exactly the indices below p.
    pub fn is_prime_field_element(&self, a: u32) -> bool {
        a < self.p
    }
}

/// Embedding GF(p^k) -> GF(p^(km)), sending the base generator to the
/// smallest root of the base modulus in the extension.
#[derive(Clone, Debug)]
pub struct Embedding {
    images: Vec<u32>,
    p: u32,
}

impl Embedding {
    pub fn new(base: &Gf, ext: &Gf) -> Result<Self> {
        if base.p() != ext.p() || ext.degree() % base.degree() != 0 {
            return Err(Error::Input(format!("no embedding of {base:?} into {ext:?}")));
        }
        let root = (0..ext.size())
            .find(|&r| ext.eval_fp_poly(base.modulus(), r) == 0)
            .expect("base modulus splits in the extension");
        let mut images = Vec::with_capacity(base.degree() as usize);
        let mut cur = 1u32;
        for _ in 0..base.degree() {
            images.push(cur);
            cur = ext.mul(cur, root);
        }
        Ok(Embedding { images, p: base.p() })
    }

    pub fn apply(&self, ext: &Gf, a: u32) -> u32 {
        let mut v = a;
        let mut out = 0;
        for &img in &self.images {
            let c = v % self.p;
            v /= self.p;
            for _ in 0..c {
                out = ext.add(out, img);
            }
        }
        out
    }
}
