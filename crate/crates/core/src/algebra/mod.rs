//! Exact arithmetic foundation: prime and extension fields, polynomials,
//! cyclotomic integers, norms, valuations and Newton polygons.

pub mod bareiss;
pub mod cyclo;
pub mod fp_poly;
pub mod gf;
pub mod int_poly;
pub mod irreducible;
pub mod newton;
pub mod ratfunc;

pub use cyclo::CycloInt;
pub use fp_poly::FpPoly;
pub use gf::{FieldDesc, Gf};
pub use int_poly::IntPoly;
pub use irreducible::irreducible_enumerate;
pub use newton::{newton_polygon, NewtonPolygon, Valuation};
pub use ratfunc::{Place, RatFunc, RatFuncRing};

/// Norm of a cyclotomic integer down to Q.
pub fn cyclo_norm(a: &CycloInt) -> num_bigint::BigInt {
    a.norm()
}

/// p-adic valuation of a cyclotomic integer, normalised by v_p(p) = 1.
pub fn padic_valuation_cyclo(a: &CycloInt) -> Valuation {
    a.valuation()
}

/// A commutative ring of characteristic p, used as Witt vector coefficients.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, c: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
}

impl CoeffRing for Gf {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_u64(&self, c: u64) -> u32 {
        (c % self.p() as u64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        Gf::add(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        Gf::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        Gf::pow(self, *a, e)
    }
}
