//! Monic irreducible polynomials over GF(p^k): the finite closed points of
//! the affine line.

use super::fp_poly::{is_prime, prime_factors};
use super::gf::Gf;
use crate::error::{Error, Result};

/// Polynomial over a `Gf`, coefficients low-to-high.
type GfPoly = Vec<u32>;

fn trim(mut a: GfPoly) -> GfPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mul(f: &Gf, a: &[u32], b: &[u32]) -> GfPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn rem(f: &Gf, a: &[u32], m: &[u32]) -> GfPoly {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv = f.inv(*m.last().unwrap()).unwrap();
    while r.len() > dm {
        let c = f.mul(*r.last().unwrap(), inv);
        let shift = r.len() - 1 - dm;
        for (j, &b) in m.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, b));
        }
        r = trim(r);
    }
    trim(r)
}

fn gcd(f: &Gf, a: &[u32], b: &[u32]) -> GfPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn powmod(f: &Gf, base: &[u32], mut e: u64, m: &[u32]) -> GfPoly {
    let mut r = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(f, &mul(f, &r, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    r
}

fn x_pow_q_iter(f: &Gf, q: u64, times: u64, m: &[u32]) -> GfPoly {
    let mut r = rem(f, &[0, 1], m);
    for _ in 0..times {
        r = powmod(f, &r, q, m);
    }
    r
}

fn is_irreducible(f: &Gf, poly: &[u32]) -> bool {
    let d = poly.len() as u64 - 1;
    if d == 1 {
        return true;
    }
    let q = f.size() as u64;
    let x = rem(f, &[0, 1], poly);
    if x_pow_q_iter(f, q, d, poly) != x {
        return false;
    }
    prime_factors(d).into_iter().all(|r| {
        let mut h = x_pow_q_iter(f, q, d / r, poly);
        h.resize(h.len().max(2), 0);
        h[1] = f.sub(h[1], 1);
        gcd(f, &trim(h), poly).len() == 1
    })
}

/// All monic irreducibles of degree `1..=max_deg` over GF(p^k), ordered by
/// degree, then by the base-q integer formed from the low coefficients.
pub fn irreducible_enumerate(p: u32, k: u32, max_deg: u32) -> Result<Vec<Vec<u32>>> {
    if !is_prime(p as u64) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if max_deg == 0 {
        return Err(Error::Input("max_deg must be at least 1".into()));
    }
    let f = Gf::get(p, k)?;
    let q = f.size() as u64;
    let mut out = Vec::new();
    for d in 1..=max_deg {
        let count = q.checked_pow(d).ok_or_else(|| Error::Infeasible("too many candidates".into()))?;
        for code in 0..count {
            let mut poly = Vec::with_capacity(d as usize + 1);
            let mut v = code;
            for _ in 0..d {
                poly.push((v % q) as u32);
                v /= q;
            }
            poly.push(1);
            if is_irreducible(&f, &poly) {
                out.push(poly);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: u64) -> i64 {
        let mut m = n;
        let mut res = 1;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                m /= d;
                if m % d == 0 {
                    return 0;
                }
                res = -res;
            }
            d += 1;
        }
        if m > 1 {
            res = -res;
        }
        res
    }

    fn necklace(q: u64, n: u64) -> u64 {
        let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * q.pow((n / d) as u32) as i64).sum();
        (s / n as i64) as u64
    }

    #[test]
    fn small_lists() {
        assert_eq!(irreducible_enumerate(2, 1, 2).unwrap(), vec![vec![0, 1], vec![1, 1], vec![1, 1, 1]]);
        assert_eq!(irreducible_enumerate(3, 1, 1).unwrap(), vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
        let deg3 = irreducible_enumerate(2, 1, 3).unwrap().into_iter().filter(|f| f.len() == 4).count();
        assert_eq!(deg3, 2);
    }

    #[test]
    fn counts_match_necklace_formula() {
        for &(p, k, max) in &[(2u32, 1u32, 8u32), (3, 1, 5), (2, 2, 4), (5, 1, 3), (3, 2, 2)] {
            let list = irreducible_enumerate(p, k, max).unwrap();
            let q = (p as u64).pow(k);
            for n in 1..=max {
                let c = list.iter().filter(|f| f.len() as u32 == n + 1).count() as u64;
                assert_eq!(c, necklace(q, n as u64), "p={p} k={k} n={n}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(irreducible_enumerate(4, 1, 2).is_err());
        assert!(irreducible_enumerate(2, 1, 0).is_err());
    }
}
