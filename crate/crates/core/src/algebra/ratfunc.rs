//! Rational functions over F_p and places of the rational function field.

use std::fmt;

use super::fp_poly::{inv_mod, FpPoly};
use super::gf::Gf;
use super::CoeffRing;

/// A place of F_q(x): infinity or a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(FpPoly),
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Infinity => 1,
            Place::Finite(f) => f.degree() as u32,
        }
    }

    /// The root of a degree-one finite place.
    pub fn rational_root(&self, p: u32) -> Option<u32> {
        match self {
            Place::Finite(f) if f.degree() == 1 => Some((p - f.coeffs[0]) % p),
            _ => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(poly) if poly.degree() == 1 => {
                // x - a, printed as the point a
                let c = poly.coeffs[0];
                if c == 0 {
                    write!(f, "0")
                } else {
                    write!(f, "root({:?})", poly.coeffs)
                }
            }
            Place::Finite(poly) => write!(f, "irr({:?})", poly.coeffs),
        }
    }
}

/// num/den in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub num: FpPoly,
    pub den: FpPoly,
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly, p: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den, p);
        let (mut n, mut d) = (num.divrem(&g, p).0, den.divrem(&g, p).0);
        let lc = inv_mod(d.lead(), p);
        n = n.scale(lc, p);
        d = d.scale(lc, p);
        RatFunc { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFunc { num: FpPoly::zero(), den: FpPoly::new(vec![1]) }
    }

    pub fn constant(c: u32, p: u32) -> Self {
        RatFunc { num: FpPoly::constant(c, p), den: FpPoly::new(vec![1]) }
    }

    pub fn poly(f: FpPoly) -> Self {
        RatFunc { num: f, den: FpPoly::new(vec![1]) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self, p: u32) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num, p), self.den.clone(), p);
        }
        RatFunc::new(
            self.num.mul(&o.den, p).add(&o.num.mul(&self.den, p), p),
            self.den.mul(&o.den, p),
            p,
        )
    }

    pub fn neg(&self, p: u32) -> Self {
        RatFunc { num: self.num.neg(p), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self, p: u32) -> Self {
        self.add(&o.neg(p), p)
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num.mul(&o.num, p), self.den.mul(&o.den, p), p)
    }

    pub fn inv(&self, p: u32) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone(), p))
    }

    /// Order of vanishing at the place (negative for a pole); `None` for zero.
    pub fn valuation(&self, place: &Place, p: u32) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match place {
            Place::Infinity => self.den.degree() - self.num.degree(),
            Place::Finite(f) => self.num.valuation_at(f, p) as i64 - self.den.valuation_at(f, p) as i64,
        })
    }

    /// Pole order at the place, 0 when regular there.
    pub fn pole_order(&self, place: &Place, p: u32) -> u64 {
        self.valuation(place, p).map_or(0, |v| (-v).max(0) as u64)
    }

    /// Leading Laurent coefficient at a rational place, in F_p.
    pub fn leading_coeff(&self, place: &Place, p: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match place {
            Place::Infinity => Some((self.num.lead() as u64 * inv_mod(self.den.lead(), p) as u64 % p as u64) as u32),
            Place::Finite(f) => {
                let a = place.rational_root(p)?;
                let strip = |g: &FpPoly| {
                    let v = g.valuation_at(f, p);
                    g.divrem(&f.pow(v as u64, p), p).0
                };
                let (n, d) = (strip(&self.num), strip(&self.den));
                Some((n.eval(a, p) as u64 * inv_mod(d.eval(a, p), p) as u64 % p as u64) as u32)
            }
        }
    }

    /// Value at a rational place where the function is regular.
    pub fn value_at(&self, place: &Place, p: u32) -> Option<u32> {
        let v = match self.valuation(place, p) {
            None => return Some(0),
            Some(v) => v,
        };
        if v < 0 {
            return None;
        }
        if v > 0 {
            return Some(0);
        }
        self.leading_coeff(place, p)
    }

    /// Evaluate at a field element; `None` at a pole.
    pub fn eval(&self, f: &Gf, a: u32) -> Option<u32> {
        let d = f.eval_fp_poly(&self.den, a);
        let inv = f.inv(d)?;
        Some(f.mul(f.eval_fp_poly(&self.num, a), inv))
    }

    /// Places where the function has a pole, or `Err` with the offending
    /// factor when a pole is not at a rational place.
    pub fn poles(&self, p: u32) -> Result<Vec<Place>, FpPoly> {
        let mut out = Vec::new();
        if self.num.degree() > self.den.degree() {
            out.push(Place::Infinity);
        }
        let mut rest = self.den.clone();
        for a in rest.roots_in_prime_field(p) {
            let lin = FpPoly::new(vec![(p - a) % p, 1]);
            while rest.rem(&lin, p).is_zero() {
                rest = rest.divrem(&lin, p).0;
            }
            out.push(Place::Finite(lin));
        }
        if rest.degree() > 0 {
            return Err(rest);
        }
        Ok(out)
    }
}

/// The field F_p(x) viewed as a coefficient ring for Witt vectors.
#[derive(Clone, Copy, Debug)]
pub struct RatFuncRing {
    pub p: u32,
}

impl CoeffRing for RatFuncRing {
    type Elem = RatFunc;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::constant(1, self.p)
    }
    fn from_u64(&self, c: u64) -> RatFunc {
        RatFunc::constant((c % self.p as u64) as u32, self.p)
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b, self.p)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b, self.p)
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_pow(k: usize) -> FpPoly {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        FpPoly::new(c)
    }

    #[test]
    fn pole_orders() {
        let p = 2;
        let f = RatFunc::poly(x_pow(3));
        assert_eq!(f.pole_order(&Place::Infinity, p), 3);
        // x^3 + 1/x = (x^4 + 1)/x
        let g = RatFunc::new(x_pow(4).add(&FpPoly::constant(1, p), p), x_pow(1), p);
        let zero = Place::Finite(FpPoly::x());
        assert_eq!(g.pole_order(&zero, p), 1);
        assert_eq!(g.pole_order(&Place::Infinity, p), 3);
        assert_eq!(g.poles(p).unwrap(), vec![Place::Infinity, zero]);
    }

    #[test]
    fn values_and_leading_terms() {
        let p = 3;
        // (2x^2 + 1)/(x^2 + x): value 2 at infinity, pole at 0 and at x = 2
        let f = RatFunc::new(FpPoly::new(vec![1, 0, 2]), FpPoly::new(vec![0, 1, 1]), p);
        assert_eq!(f.value_at(&Place::Infinity, p), Some(2));
        let zero = Place::Finite(FpPoly::x());
        assert_eq!(f.pole_order(&zero, p), 1);
        assert_eq!(f.leading_coeff(&zero, p), Some(1));
        assert!(RatFunc::poly(FpPoly::new(vec![1, 0, 1])).poles(p).is_ok());
        assert!(RatFunc::new(FpPoly::new(vec![1]), FpPoly::new(vec![1, 0, 1]), p).poles(p).is_err());
    }
}
