//! Truncated Witt vectors over a coefficient ring of characteristic p.

use std::sync::Arc;

use crate::algebra::{CoeffRing, Gf, Place, RatFunc};
use crate::error::{Error, Result};

use super::universal::WittPolys;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVec<E> {
    pub comps: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn new(comps: Vec<E>) -> Self {
        WittVec { comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

/// Image of W_n(F_p) in Z/p^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueInt {
    pub value: u64,
    pub modulus_exponent: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Mul,
}

/// W_n(R) for a fixed length n.
#[derive(Clone)]
pub struct WittRing<'a, R: CoeffRing> {
    ring: &'a R,
    polys: Arc<WittPolys>,
}

impl<'a, R: CoeffRing> WittRing<'a, R>
where
    R::Elem: Clone,
{
    pub fn new(ring: &'a R, length: usize) -> Result<Self> {
        let polys = WittPolys::get(ring.characteristic(), length)?;
        Ok(WittRing { ring, polys })
    }

    pub fn length(&self) -> usize {
        self.polys.length
    }

    pub fn ring(&self) -> &R {
        self.ring
    }

    fn check(&self, w: &WittVec<R::Elem>) -> Result<()> {
        if w.len() != self.length() {
            return Err(Error::Input(format!(
                "Witt vector of length {} used in W_{}",
                w.len(),
                self.length()
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> WittVec<R::Elem> {
        WittVec::new(vec![self.ring.zero(); self.length()])
    }

    pub fn one(&self) -> WittVec<R::Elem> {
        self.teichmuller(self.ring.one())
    }

    pub fn teichmuller(&self, a: R::Elem) -> WittVec<R::Elem> {
        let mut comps = vec![self.ring.zero(); self.length()];
        comps[0] = a;
        WittVec::new(comps)
    }

    fn binary(&self, table: &[super::universal::MPoly], u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.check(u)?;
        self.check(v)?;
        let vars: Vec<R::Elem> = u.comps.iter().chain(v.comps.iter()).cloned().collect();
        Ok(WittVec::new(table.iter().map(|f| f.eval(self.ring, &vars)).collect()))
    }

    pub fn add(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if u.comps.iter().all(|c| self.ring.is_zero(c)) {
            self.check(v)?;
            return Ok(v.clone());
        }
        if v.comps.iter().all(|c| self.ring.is_zero(c)) {
            self.check(u)?;
            return Ok(u.clone());
        }
        self.binary(&self.polys.sum, u, v)
    }

    pub fn mul(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.binary(&self.polys.prod, u, v)
    }

    pub fn neg(&self, u: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.check(u)?;
        Ok(WittVec::new(self.polys.neg.iter().map(|f| f.eval(self.ring, &u.comps)).collect()))
    }

    pub fn sub(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.add(u, &self.neg(v)?)
    }

    pub fn arith(&self, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>, which: WittOp) -> Result<WittVec<R::Elem>> {
        match which {
            WittOp::Add => self.add(u, v),
            WittOp::Mul => self.mul(u, v),
        }
    }

    /// e · w by double-and-add.
    pub fn scalar(&self, mut e: u64, w: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.check(w)?;
        let mut acc = self.zero();
        let mut base = w.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Componentwise p-th power.
    pub fn frobenius(&self, w: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let p = self.ring.characteristic() as u64;
        WittVec::new(w.comps.iter().map(|c| self.ring.pow(c, p)).collect())
    }

    /// Verschiebung shifted i places and truncated to the ring length.
    pub fn shift(&self, w: &WittVec<R::Elem>, i: usize) -> WittVec<R::Elem> {
        let mut comps = vec![self.ring.zero(); self.length()];
        for (j, c) in w.comps.iter().enumerate() {
            if i + j < comps.len() {
                comps[i + j] = c.clone();
            }
        }
        WittVec::new(comps)
    }
}

/// Free-function form of the ring operations.
pub fn witt_arith<R: CoeffRing>(ring: &R, u: &WittVec<R::Elem>, v: &WittVec<R::Elem>, which: WittOp) -> Result<WittVec<R::Elem>>
where
    R::Elem: Clone,
{
    if u.len() != v.len() {
        return Err(Error::Input(format!("Witt length mismatch: {} vs {}", u.len(), v.len())));
    }
    WittRing::new(ring, u.len())?.arith(u, v, which)
}

/// The isomorphism W_n(F_p) → Z/p^n, computed from the ghost component on
/// integer lifts.
pub fn witt_residue(w: &[u32], p: u32) -> Result<ResidueInt> {
    let n = w.len() as u32;
    if let Some(c) = w.iter().find(|&&c| c >= p) {
        return Err(Error::Input(format!("Witt component {c} is not in F_{p}")));
    }
    let m = (p as u128).pow(n);
    let mut acc: u128 = 0;
    for (i, &c) in w.iter().enumerate() {
        let e = n - 1 - i as u32;
        let mut pw: u128 = 1;
        for _ in 0..(p as u128).pow(e) {
            pw = pw * c as u128 % m;
            if pw == 0 {
                break;
            }
        }
        acc = (acc + pw * (p as u128).pow(i as u32)) % m;
    }
    Ok(ResidueInt { value: acc as u64, modulus_exponent: n })
}

/// Trace W_n(F_{p^e}) → W_n(F_p) ≅ Z/p^n as the Witt sum of all Frobenius
/// twists, e being the absolute degree of `field`.
pub fn witt_frobenius_trace(field: &Gf, w: &WittVec<u32>) -> Result<ResidueInt> {
    let ring = WittRing::new(field, w.len())?;
    let mut acc = ring.zero();
    let mut tw = w.clone();
    for j in 0..field.degree() {
        if j > 0 {
            tw = ring.frobenius(&tw);
        }
        acc = ring.add(&acc, &tw)?;
    }
    if acc.comps.iter().any(|&c| !field.is_prime_field_element(c)) {
        return Err(Error::Consistency("trace left the prime field".into()));
    }
    witt_residue(&acc.comps, field.p())
}

/// Pole order of every component at `place`. Positive pole orders divisible
/// by p are rejected since the conductor formula needs reduced input.
pub fn witt_pole_order(w: &WittVec<RatFunc>, place: &Place, p: u32) -> Result<Vec<u64>> {
    let orders: Vec<u64> = w.comps.iter().map(|f| f.pole_order(place, p)).collect();
    if let Some((i, d)) = orders.iter().enumerate().find(|(_, &d)| d > 0 && d % p as u64 == 0) {
        return Err(Error::InvalidSpec(format!(
            "component {i} has pole order {d} at {place}, divisible by p = {p}"
        )));
    }
    Ok(orders)
}

/// Pole orders without the reducedness check.
pub fn raw_pole_orders(w: &WittVec<RatFunc>, place: &Place, p: u32) -> Vec<u64> {
    w.comps.iter().map(|f| f.pole_order(place, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FpPoly, RatFuncRing};

    #[test]
    fn small_sums_and_products() {
        let f2 = Gf::get(2, 1).unwrap();
        let w = WittRing::new(&*f2, 2).unwrap();
        let a = WittVec::new(vec![1, 0]);
        let b = WittVec::new(vec![0, 1]);
        assert_eq!(w.add(&a, &b).unwrap().comps, vec![1, 1]);
        assert_eq!(w.mul(&a, &a).unwrap().comps, vec![1, 0]);
        assert_eq!(w.add(&a, &w.zero()).unwrap(), a);
        // 1 + 1 = 2 = (0, 1)
        assert_eq!(w.add(&a, &a).unwrap().comps, vec![0, 1]);
        assert!(witt_arith(&*f2, &a, &WittVec::new(vec![1]), WittOp::Add).is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(witt_residue(&[0, 1], 2).unwrap().value, 2);
        assert_eq!(witt_residue(&[1, 1], 2).unwrap().value, 3);
        assert_eq!(witt_residue(&[0, 0, 0], 3).unwrap().value, 0);
        assert!(witt_residue(&[2], 2).is_err());
    }

    #[test]
    fn negation_and_scalars() {
        let f3 = Gf::get(3, 1).unwrap();
        let w = WittRing::new(&*f3, 3).unwrap();
        for v in 0..27u32 {
            let x = WittVec::new(vec![v % 3, (v / 3) % 3, v / 9]);
            let r = witt_residue(&x.comps, 3).unwrap().value;
            let n = witt_residue(&w.neg(&x).unwrap().comps, 3).unwrap().value;
            assert_eq!((r + n) % 27, 0);
            let s = witt_residue(&w.scalar(5, &x).unwrap().comps, 3).unwrap().value;
            assert_eq!(s, 5 * r % 27);
        }
    }

    #[test]
    fn traces() {
        let f4 = Gf::get(2, 2).unwrap();
        let omega = f4.generator();
        assert_eq!(witt_frobenius_trace(&f4, &WittVec::new(vec![omega, 0])).unwrap().value, 3);
        let f2 = Gf::get(2, 1).unwrap();
        assert_eq!(witt_frobenius_trace(&f2, &WittVec::new(vec![1, 0])).unwrap().value, 1);
        assert_eq!(witt_frobenius_trace(&f4, &WittVec::new(vec![0, 0])).unwrap().value, 0);
    }

    #[test]
    fn pole_orders() {
        let p = 2;
        let x3 = RatFunc::poly(FpPoly::new(vec![0, 0, 0, 1]));
        let inv_x = RatFunc::new(FpPoly::constant(1, p), FpPoly::x(), p);
        let w = WittVec::new(vec![x3.clone()]);
        assert_eq!(witt_pole_order(&w, &Place::Infinity, p).unwrap(), vec![3]);
        let w = WittVec::new(vec![x3.add(&inv_x, p)]);
        assert_eq!(witt_pole_order(&w, &Place::Finite(FpPoly::x()), p).unwrap(), vec![1]);
        let w = WittVec::new(vec![x3.clone(), RatFunc::zero()]);
        assert_eq!(witt_pole_order(&w, &Place::Infinity, p).unwrap(), vec![3, 0]);
        let x2 = RatFunc::poly(FpPoly::new(vec![0, 0, 1]));
        assert!(witt_pole_order(&WittVec::new(vec![x2]), &Place::Infinity, p).is_err());
    }

    #[test]
    fn rational_function_coefficients() {
        // 3·(x³, 0) over F_2(x) is not reduced: its second component has a pole of order 6
        let ring = RatFuncRing { p: 2 };
        let w = WittRing::new(&ring, 2).unwrap();
        let x3 = RatFunc::poly(FpPoly::new(vec![0, 0, 0, 1]));
        let t = w.scalar(3, &WittVec::new(vec![x3, RatFunc::zero()])).unwrap();
        assert_eq!(raw_pole_orders(&t, &Place::Infinity, 2), vec![3, 6]);
    }
}
