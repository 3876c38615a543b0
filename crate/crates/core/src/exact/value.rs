//! A common scalar interface over the number types used by the certificates.
//!
//! Coefficient and threshold formulas are written once, generically, and then
//! instantiated with exact rationals, quadratic surds, rational intervals or
//! plain floats depending on what a given verdict needs.

use super::interval::RatInterval;
use super::quad::QuadExt;
use super::rational::{to_f64, Rational};
use num_traits::{Signed, Zero};

pub trait Scalar: Clone {
    fn from_rat(r: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rational::from_integer(n.into()))
    }
    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rat(r))
    }
    /// x² convenience.
    fn square(&self) -> Self {
        self.mul(self)
    }
}

impl Scalar for Rational {
    fn from_rat(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "rational division by zero");
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for RatInterval {
    fn from_rat(r: &Rational) -> Self {
        RatInterval::point(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self.div(o).expect("interval division across zero")
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for f64 {
    fn from_rat(r: &Rational) -> Self {
        to_f64(r)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Exact scalar living in either ℚ or a fixed ℚ(√d); rationals promote into
/// the quadratic field on contact.
#[derive(Clone, Debug, PartialEq)]
pub enum Exact {
    Rat(Rational),
    Quad(QuadExt),
}

impl Exact {
    pub fn quad(q: QuadExt) -> Self {
        if q.b.is_zero() {
            Exact::Rat(q.a)
        } else {
            Exact::Quad(q)
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            Exact::Rat(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Exact::Quad(q) => q.sign(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    pub fn enclosure(&self, precision: u32) -> RatInterval {
        match self {
            Exact::Rat(r) => RatInterval::point(r.clone()),
            Exact::Quad(q) => q.enclosure(precision),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exact::Rat(r) => to_f64(r),
            Exact::Quad(q) => to_f64(&q.a) + to_f64(&q.b) * to_f64(&q.d).sqrt(),
        }
    }

    /// As an exact rational, if the surd part vanished.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Exact::Rat(r) => Some(r),
            Exact::Quad(_) => None,
        }
    }

    fn promote_pair(&self, o: &Exact) -> (QuadExt, QuadExt) {
        match (self, o) {
            (Exact::Quad(a), Exact::Quad(b)) => (a.clone(), b.clone()),
            (Exact::Quad(a), Exact::Rat(b)) => (
                a.clone(),
                QuadExt::from_rational(b.clone(), a.d.clone()),
            ),
            (Exact::Rat(a), Exact::Quad(b)) => (
                QuadExt::from_rational(a.clone(), b.d.clone()),
                b.clone(),
            ),
            (Exact::Rat(_), Exact::Rat(_)) => unreachable!(),
        }
    }
}

impl Scalar for Exact {
    fn from_rat(r: &Rational) -> Self {
        Exact::Rat(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(a + b),
            _ => {
                let (a, b) = self.promote_pair(o);
                Exact::quad(&a + &b)
            }
        }
    }
    fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(a - b),
            _ => {
                let (a, b) = self.promote_pair(o);
                Exact::quad(&a - &b)
            }
        }
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(a * b),
            _ => {
                let (a, b) = self.promote_pair(o);
                Exact::quad(&a * &b)
            }
        }
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "exact division by zero");
        match (self, o) {
            (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(a / b),
            _ => {
                let (a, b) = self.promote_pair(o);
                Exact::quad(&a / &b)
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            Exact::Rat(r) => Exact::Rat(-r),
            Exact::Quad(q) => Exact::Quad(-q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn mixed_promotion() {
        let s = Exact::quad(QuadExt::sqrt_d(int(40))); // √40
        let r = Exact::Rat(int(6));
        let diff = s.sub(&r); // √40 − 6 > 0
        assert_eq!(diff.sign(), 1);
        let prod = diff.mul(&s.add(&r)); // (√40−6)(√40+6) = 4
        assert_eq!(prod, Exact::Rat(int(4)));
    }

    #[test]
    fn generic_formula_agrees_across_scalars() {
        fn f<S: Scalar>(x: &S) -> S {
            // x² − x/3 + 2
            x.square().sub(&x.scale(&rat(1, 3))).add(&S::from_int(2))
        }
        let exact = f(&Exact::Rat(rat(7, 5)));
        let float = f(&1.4_f64);
        let iv = f(&RatInterval::point(rat(7, 5)));
        let want = rat(7, 5) * rat(7, 5) - rat(7, 15) + int(2);
        assert_eq!(exact, Exact::Rat(want.clone()));
        assert!(iv.contains(&want));
        assert!((float - crate::exact::rational::to_f64(&want)).abs() < 1e-12);
    }
}
