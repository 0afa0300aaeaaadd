//! Dense univariate polynomials over the prime field F_p.
//!
//! Coefficients are stored low-to-high and kept trimmed, so the zero
//! polynomial is the empty vector.

/// Polynomial over F_p, coefficients low-to-high in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub coeffs: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: u32, p: u32) -> Self {
        FpPoly::new(vec![c % p])
    }

    pub fn x() -> Self {
        FpPoly { coeffs: vec![0, 1] }
    }

    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    /// Monic polynomial whose low coefficients are the base-p digits of `code`.
    pub fn monic_from_code(code: u64, degree: usize, p: u32) -> Self {
        let mut c = Vec::with_capacity(degree + 1);
        let mut v = code;
        for _ in 0..degree {
            c.push((v % p as u64) as u32);
            v /= p as u64;
        }
        c.push(1);
        FpPoly { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self, p: u32) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0)) % p
            })
            .collect();
        FpPoly::new(c)
    }

    pub fn neg(&self, p: u32) -> Self {
        FpPoly::new(self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, o: &Self, p: u32) -> Self {
        self.add(&o.neg(p), p)
    }

    pub fn scale(&self, s: u32, p: u32) -> Self {
        FpPoly::new(self.coeffs.iter().map(|&c| ((c as u64 * s as u64) % p as u64) as u32).collect())
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero();
        }
        let mut acc = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        FpPoly::new(acc.into_iter().map(|v| v as u32).collect())
    }

    pub fn pow(&self, mut e: u64, p: u32) -> Self {
        let mut r = FpPoly::constant(1, p);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, p);
            }
            b = b.mul(&b, p);
            e >>= 1;
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self, p: u32) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let inv = inv_mod(d.lead(), p) as u64;
        if r.len() <= dd {
            return (FpPoly::zero(), FpPoly::new(r));
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = (r[i] as u64 * inv % p as u64) as u32;
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = ((r[idx] as u64 + (p as u64 - c as u64) * b as u64) % p as u64) as u32;
            }
        }
        r.truncate(dd);
        (FpPoly::new(q), FpPoly::new(r))
    }

    pub fn rem(&self, d: &Self, p: u32) -> Self {
        self.divrem(d, p).1
    }

    pub fn monic(&self, p: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), p), p)
    }

    pub fn gcd(&self, o: &Self, p: u32) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn eval(&self, x: u32, p: u32) -> u32 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x as u64 + c as u64) % p as u64;
        }
        acc as u32
    }

    pub fn derivative(&self, p: u32) -> Self {
        FpPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ((i as u64 % p as u64) * c as u64 % p as u64) as u32)
                .collect(),
        )
    }

    fn powmod(&self, mut e: u64, m: &Self, p: u32) -> Self {
        let mut r = FpPoly::constant(1, p).rem(m, p);
        let mut b = self.rem(m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, p).rem(m, p);
            }
            b = b.mul(&b, p).rem(m, p);
            e >>= 1;
        }
        r
    }

    /// x^(p^k) mod m by repeated p-th powering.
    fn x_pow_p_iter(k: u64, m: &Self, p: u32) -> Self {
        let mut r = FpPoly::x().rem(m, p);
        for _ in 0..k {
            r = r.powmod(p as u64, m, p);
        }
        r
    }

    /// Rabin's irreducibility test over F_p.
    pub fn is_irreducible(&self, p: u32) -> bool {
        let n = self.degree();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let n = n as u64;
        let f = self.monic(p);
        if FpPoly::x_pow_p_iter(n, &f, p) != FpPoly::x().rem(&f, p) {
            return false;
        }
        for r in prime_factors(n) {
            let h = FpPoly::x_pow_p_iter(n / r, &f, p).sub(&FpPoly::x(), p);
            if f.gcd(&h, p).degree() != 0 {
                return false;
            }
        }
        true
    }

    /// Multiplicity of the irreducible `f` in `self` (self nonzero).
    pub fn valuation_at(&self, f: &Self, p: u32) -> u32 {
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(f, p);
            if !r.is_zero() || cur.is_zero() {
                return v;
            }
            cur = q;
            v += 1;
        }
    }

    /// Roots in F_p, ascending, without multiplicity.
    pub fn roots_in_prime_field(&self, p: u32) -> Vec<u32> {
        (0..p).filter(|&a| self.eval(a, p) == 0).collect()
    }
}

/// Lexicographically smallest monic irreducible of the given degree over F_p,
/// where the low coefficients are read as base-p digits.
pub fn canonical_irreducible(p: u32, degree: usize) -> FpPoly {
    let mut code = 0u64;
    loop {
        let f = FpPoly::monic_from_code(code, degree, p);
        if f.is_irreducible(p) {
            return f;
        }
        code += 1;
    }
}
