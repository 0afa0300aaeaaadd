//! Cyclotomic integers Z[ζ] for ζ a primitive p^n-th root of unity.
//!
//! Elements are residues modulo the cyclotomic polynomial Φ_{p^n}, stored as
//! φ(p^n) integer coefficients in the basis 1, ζ, …, ζ^{φ-1}. Level 0 is Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::bareiss::determinant;
use super::int_poly::vp_int;

pub fn phi(p: u32, level: u32) -> usize {
    if level == 0 {
        1
    } else {
        ((p - 1) * p.pow(level - 1)) as usize
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloInt {
    p: u32,
    level: u32,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first || c.is_negative() {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "z")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycloInt {
    pub fn zero(p: u32, level: u32) -> Self {
        CycloInt { p, level, coeffs: vec![BigInt::zero(); phi(p, level)] }
    }

    pub fn from_int(p: u32, level: u32, r: impl Into<BigInt>) -> Self {
        let mut z = CycloInt::zero(p, level);
        z.coeffs[0] = r.into();
        z
    }

    pub fn one(p: u32, level: u32) -> Self {
        CycloInt::from_int(p, level, 1)
    }

    /// ζ^r.
    pub fn zeta_pow(p: u32, level: u32, r: u64) -> Self {
        let n = p.pow(level) as usize;
        let mut v = vec![BigInt::zero(); n];
        v[(r % n as u64) as usize] = BigInt::one();
        CycloInt::from_cyclic(p, level, v)
    }

    /// Build from coefficients given in the basis 1, ζ, …, ζ^{φ-1}.
    pub fn from_coeffs(p: u32, level: u32, mut coeffs: Vec<BigInt>) -> Self {
        let ph = phi(p, level);
        if coeffs.len() > ph {
            return CycloInt::from_cyclic(p, level, coeffs);
        }
        coeffs.resize(ph, BigInt::zero());
        CycloInt { p, level, coeffs }
    }

    /// Reduce an arbitrary coefficient vector of a polynomial in ζ.
    pub fn from_cyclic(p: u32, level: u32, v: Vec<BigInt>) -> Self {
        let n = p.pow(level) as usize;
        let mut folded = vec![BigInt::zero(); n];
        for (i, c) in v.into_iter().enumerate() {
            folded[i % n] += c;
        }
        if level == 0 {
            return CycloInt { p, level, coeffs: folded };
        }
        // ζ^{(p-1)p^{l-1}+s} = -Σ_{t<p-1} ζ^{t p^{l-1}+s}
        let ph = phi(p, level);
        let step = p.pow(level - 1) as usize;
        for r in ph..n {
            let c = std::mem::take(&mut folded[r]);
            if c.is_zero() {
                continue;
            }
            let s = r - ph;
            for t in 0..(p as usize - 1) {
                folded[t * step + s] -= &c;
            }
        }
        folded.truncate(ph);
        CycloInt { p, level, coeffs: folded }
    }

    /// Σ counts[r] ζ^r over r in Z/p^level.
    pub fn from_exponent_counts(p: u32, level: u32, counts: &[i64]) -> Self {
        CycloInt::from_cyclic(p, level, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        assert!(self.p == o.p && self.level == o.level, "cyclotomic level mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        CycloInt {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        CycloInt {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloInt { p: self.p, level: self.level, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        CycloInt { p: self.p, level: self.level, coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coeffs.len();
        let mut v = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CycloInt::from_cyclic(self.p, self.level, v)
    }

    /// Divide every coefficient by `d`, failing unless all divisions are exact.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(CycloInt { p: self.p, level: self.level, coeffs: out })
    }

    /// Galois action σ_u: ζ -> ζ^u, u a unit mod p.
    pub fn galois(&self, u: u64) -> Self {
        let n = self.p.pow(self.level) as u64;
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[((i as u64 * u) % n) as usize] += c;
        }
        CycloInt::from_cyclic(self.p, self.level, v)
    }

    /// Units of Z/p^level in ascending order (the Galois group).
    pub fn galois_units(p: u32, level: u32) -> Vec<u64> {
        let n = p.pow(level) as u64;
        if level == 0 {
            return vec![1];
        }
        (1..n).filter(|u| u % p as u64 != 0).collect()
    }

    /// Re-express at a higher level via ζ_{p^l} = ζ_{p^{l'}}^{p^{l'-l}}.
    pub fn lift_to(&self, level: u32) -> Self {
        assert!(level >= self.level);
        let stride = self.p.pow(level - self.level) as usize;
        let mut v = vec![BigInt::zero(); self.p.pow(level) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * stride] += c;
        }
        CycloInt::from_cyclic(self.p, level, v)
    }

    /// Matrix of multiplication by self in the power basis (column j = self·ζ^j).
    fn mult_matrix(&self) -> Vec<Vec<BigInt>> {
        let ph = self.coeffs.len();
        let mut cols = Vec::with_capacity(ph);
        for j in 0..ph {
            let mut v = vec![BigInt::zero(); ph + j];
            for (i, c) in self.coeffs.iter().enumerate() {
                v[i + j] = c.clone();
            }
            cols.push(CycloInt::from_cyclic(self.p, self.level, v).coeffs);
        }
        (0..ph).map(|i| (0..ph).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Norm to Q: the determinant of multiplication by self, which equals the
    /// resultant with Φ_{p^n} and satisfies Norm(r) = r^φ for integers r.
    pub fn norm(&self) -> BigInt {
        if self.level == 0 {
            return self.coeffs[0].clone();
        }
        determinant(self.mult_matrix())
    }

    /// v_p(Norm(a)) / φ(p^n), with `None` standing for +∞ (a = 0).
    pub fn valuation(&self) -> Option<Rational64> {
        if self.is_zero() {
            return None;
        }
        let v = vp_int(&self.norm(), self.p)? as i64;
        Some(Rational64::new(v, phi(self.p, self.level) as i64))
    }

    /// Product of σ_u(self) over all non-identity units u: Norm(a) = a · adj(a).
    pub fn adjugate(&self) -> Self {
        CycloInt::galois_units(self.p, self.level)
            .into_iter()
            .skip(1)
            .fold(CycloInt::one(self.p, self.level), |acc, u| acc.mul(&self.galois(u)))
    }

    /// Exact quotient self / d in Z[ζ], if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        self.mul(&d.adjugate()).div_exact_int(&n)
    }
}
