//! Traces of Teichmüller lifts via the Galois ring GR(p^N, e).
//!
//! W_N(F_{p^e}) is identified with (Z/p^N)[X]/(F) where F lifts the field
//! modulus digit by digit. The trace of the Witt vector (b_0, b_1, ...) is
//! Σ p^i Tr(τ(b_i)), so one table of Teichmüller traces serves every length.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::algebra::Gf;
use crate::error::{Error, Result};

const CHUNK: usize = 1 << 12;

pub struct TraceTable {
    p: u32,
    precision: u32,
    modulus: u64,
    /// Tr(τ(g^t)) for the field generator g, indexed by t.
    by_log: Vec<u32>,
}

struct GaloisRing {
    e: usize,
    modulus: u64,
    /// Low coefficients of the monic lift F.
    f_low: Vec<u64>,
}

impl GaloisRing {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let e = self.e;
        let m = self.modulus as u128;
        let mut r = vec![0u128; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u128 * y as u128) % m;
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            // X^e = -Σ f_i X^i
            for i in 0..e {
                let sub = c * self.f_low[i] as u128 % m;
                r[k - e + i] = (r[k - e + i] + m - sub) % m;
            }
        }
        r.truncate(e);
        r.into_iter().map(|x| x as u64).collect()
    }

    fn pow(&self, a: &[u64], mut k: u128) -> Vec<u64> {
        let mut r = vec![0u64; self.e];
        r[0] = 1 % self.modulus;
        let mut b = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    fn trace(&self, a: &[u64], tr: &[u64]) -> u64 {
        let acc: u128 = a.iter().zip(tr).map(|(&x, &t)| x as u128 * t as u128).sum();
        (acc % self.modulus as u128) as u64
    }

    /// Column j holds a·X^j.
    fn mult_matrix(&self, a: &[u64]) -> Vec<Vec<u64>> {
        let e = self.e;
        let mut cols = Vec::with_capacity(e);
        let mut xj = vec![0u64; e];
        xj[0] = 1 % self.modulus;
        for j in 0..e {
            cols.push(self.mul(a, &xj));
            if j + 1 < e {
                let mut x = vec![0u64; e];
                x[1] = 1;
                xj = self.mul(&xj, &x);
            }
        }
        (0..e).map(|i| (0..e).map(|j| cols[j][i]).collect()).collect()
    }

    /// Tr(X^l) for l < e from Newton's identities on F.
    fn basis_traces(&self) -> Vec<u64> {
        let e = self.e;
        let m = self.modulus as i128;
        // c_i is the coefficient of X^{e-i}
        let c = |i: usize| self.f_low[e - i] as i128;
        let mut ps = vec![e as i128 % m];
        for k in 1..e {
            let mut v = -(k as i128) * c(k);
            for i in 1..k {
                v -= c(i) * ps[k - i];
            }
            ps.push(v.rem_euclid(m));
        }
        ps.into_iter().map(|x| x as u64).collect()
    }
}

/// Coefficients of det(xI − M) over Z/m, leading coefficient first, by the
/// division-free Berkowitz recursion.
fn berkowitz(mat: &[Vec<u64>], m: u64) -> Vec<u64> {
    let n = mat.len();
    if n == 0 {
        return vec![1 % m];
    }
    let mm = m as u128;
    let neg = |x: u64| ((mm - x as u128 % mm) % mm) as u64;
    if n == 1 {
        return vec![1 % m, neg(mat[0][0])];
    }
    let a = mat[0][0];
    let r: Vec<u64> = mat[0][1..].to_vec();
    let sub: Vec<Vec<u64>> = mat[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut col: Vec<u64> = mat[1..].iter().map(|row| row[0]).collect();
    // diag[0] = 1, diag[1] = -a, diag[k+2] = -R A^k C
    let mut diag = vec![1 % m, neg(a)];
    for _ in 0..n - 1 {
        let rc: u128 = r.iter().zip(&col).map(|(&x, &y)| x as u128 * y as u128 % mm).sum();
        diag.push(neg((rc % mm) as u64));
        col = sub
            .iter()
            .map(|row| (row.iter().zip(&col).map(|(&x, &y)| x as u128 * y as u128 % mm).sum::<u128>() % mm) as u64)
            .collect();
    }
    let inner = berkowitz(&sub, m);
    (0..=n)
        .map(|i| {
            let mut acc: u128 = 0;
            for (j, c) in inner.iter().enumerate() {
                if i >= j {
                    acc += diag[i - j] as u128 * *c as u128 % mm;
                }
            }
            (acc % mm) as u64
        })
        .collect()
}

impl TraceTable {
    pub fn build(field: &Gf, precision: u32) -> Result<Self> {
        let p = field.p();
        let modulus = (p as u64)
            .checked_pow(precision)
            .filter(|&m| m <= u32::MAX as u64)
            .ok_or_else(|| Error::Infeasible(format!("trace precision p^{precision} exceeds 32 bits")))?;
        let e = field.degree() as usize;
        let f = field.modulus();
        let gr = GaloisRing { e, modulus, f_low: f.coeffs[..e].iter().map(|&c| c as u64 % modulus).collect() };
        let tr = gr.basis_traces();
        let mut g: Vec<u64> = field.digits(field.generator()).iter().map(|&d| d as u64).collect();
        g.resize(e, 0);
        let q = (p as u128).pow(e as u32);
        let mut teich = g;
        for _ in 1..precision {
            teich = gr.pow(&teich, q);
        }
        let size = field.size() as usize;
        // a_t = Tr(G^t) satisfies the recurrence given by the characteristic
        // polynomial of multiplication by G
        let charpoly = berkowitz(&gr.mult_matrix(&teich), modulus);
        let mut by_log = vec![0u32; size - 1];
        by_log.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, chunk)| {
            let mut cur = gr.pow(&teich, (ci * CHUNK) as u128);
            let mut window = Vec::with_capacity(e);
            for _ in 0..e.min(chunk.len()) {
                window.push(gr.trace(&cur, &tr));
                cur = gr.mul(&cur, &teich);
            }
            for (t, slot) in chunk.iter_mut().enumerate() {
                if t < window.len() {
                    *slot = window[t] as u32;
                    continue;
                }
                let mut acc: u128 = 0;
                for i in 1..=e {
                    acc += charpoly[i] as u128 * window[(t - i) % e] as u128;
                }
                let next = ((modulus as u128 - acc % modulus as u128) % modulus as u128) as u64;
                window[t % e] = next;
                *slot = next as u32;
            }
        });
        Ok(TraceTable { p, precision, modulus, by_log })
    }

    /// Shared table for (field, precision), built once per process.
    pub fn get(field: &Gf, precision: u32) -> Result<Arc<TraceTable>> {
        type Cell = Arc<OnceLock<Arc<TraceTable>>>;
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Cell>>> = OnceLock::new();
        let key = (field.p(), field.degree(), precision);
        let cell = CACHE.get_or_init(Default::default).lock().unwrap().entry(key).or_default().clone();
        if let Some(t) = cell.get() {
            return Ok(t.clone());
        }
        let table = Arc::new(TraceTable::build(field, precision)?);
        Ok(cell.get_or_init(|| table).clone())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Tr(τ(a)) mod p^N.
    pub fn teichmuller(&self, field: &Gf, a: u32) -> u64 {
        if a == 0 {
            0
        } else {
            self.by_log[field.log(a) as usize] as u64
        }
    }

    /// Trace of the Witt vector with components `comps`, mod p^N.
    pub fn witt(&self, field: &Gf, comps: &[u32]) -> u64 {
        let m = self.modulus as u128;
        let mut acc: u128 = 0;
        let mut pw: u128 = 1;
        for &b in comps.iter().take(self.precision as usize) {
            acc = (acc + pw * self.teichmuller(field, b) as u128) % m;
            pw *= self.p as u128;
        }
        acc as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::{witt_frobenius_trace, WittVec};

    #[test]
    fn matches_iterated_witt_addition() {
        for (p, e, n) in [(2u32, 1u32, 4usize), (2, 3, 3), (2, 4, 4), (3, 2, 3), (5, 2, 2)] {
            let f = Gf::get(p, e).unwrap();
            let t = TraceTable::build(&f, n as u32).unwrap();
            let size = f.size();
            for s in 0..200u32 {
                let comps: Vec<u32> = (0..n as u32).map(|i| (s * 7 + i * 13 + s * s * (i + 1)) % size).collect();
                let direct = witt_frobenius_trace(&f, &WittVec::new(comps.clone())).unwrap().value;
                assert_eq!(t.witt(&f, &comps), direct, "p={p} e={e} comps={comps:?}");
            }
        }
    }

    #[test]
    fn recurrence_matches_direct_powers() {
        for (p, e, n) in [(2u32, 5u32, 11u32), (3, 4, 5), (2, 9, 4)] {
            let f = Gf::get(p, e).unwrap();
            let t = TraceTable::build(&f, n).unwrap();
            let modulus = (p as u64).pow(n);
            let gr = GaloisRing {
                e: e as usize,
                modulus,
                f_low: f.modulus().coeffs[..e as usize].iter().map(|&c| c as u64).collect(),
            };
            let tr = gr.basis_traces();
            let mut g: Vec<u64> = f.digits(f.generator()).iter().map(|&d| d as u64).collect();
            g.resize(e as usize, 0);
            let mut teich = g;
            for _ in 1..n {
                teich = gr.pow(&teich, (p as u128).pow(e));
            }
            let mut cur = gr.pow(&teich, 0);
            for s in 0..f.size() - 1 {
                assert_eq!(t.teichmuller(&f, f.exp(s as u64)), gr.trace(&cur, &tr), "p={p} e={e} t={s}");
                cur = gr.mul(&cur, &teich);
            }
        }
    }

    #[test]
    fn berkowitz_small() {
        // [[1,2],[3,4]] has characteristic polynomial x^2 - 5x - 2
        let m = 1000;
        assert_eq!(berkowitz(&[vec![1, 2], vec![3, 4]], m), vec![1, 995, 998]);
        let id3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(berkowitz(&id3, m), vec![1, 997, 3, 999]);
    }

    #[test]
    fn prime_field_teichmuller() {
        // τ(2) in Z_5 is 2^{5^k} -> 57 mod 125
        let f = Gf::get(5, 1).unwrap();
        let t = TraceTable::build(&f, 3).unwrap();
        assert_eq!(t.teichmuller(&f, 2), 57);
        assert_eq!(t.teichmuller(&f, 1), 1);
        assert_eq!(t.teichmuller(&f, 0), 0);
    }
}
