//! Exact arithmetic in a real quadratic extension ℚ(√d).
//!
//! Elements are `a + b√d` with rational `a`, `b` and a fixed positive
//! non-square radicand `d`. Signs are decided exactly by case analysis on
//! the signs of `a`, `b` and a comparison of `a²` against `b²d`; no floating
//! point is involved anywhere.

use super::interval::RatInterval;
use super::rational::Rational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, self.d)
    }
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        QuadExt { a, b, d }
    }

    pub fn from_rational(a: Rational, d: Rational) -> Self {
        QuadExt::new(a, Rational::zero(), d)
    }

    /// The element √d itself.
    pub fn sqrt_d(d: Rational) -> Self {
        QuadExt::new(Rational::zero(), Rational::from_integer(1.into()), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// Field norm `a² − b²d` (rational).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in ℚ(√d)");
        let n = self.norm();
        QuadExt::new(&self.a / &n, -&self.b / &n, self.d.clone())
    }

    /// Exact sign in {−1, 0, +1}.
    pub fn sign(&self) -> i32 {
        quad_sign(self)
    }

    /// An interval enclosure, with √d enclosed to `precision` bits.
    pub fn enclosure(&self, precision: u32) -> RatInterval {
        let sq = RatInterval::point(self.d.clone())
            .sqrt(precision)
            .expect("positive radicand");
        RatInterval::point(self.a.clone()) + RatInterval::point(self.b.clone()) * sq
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed radicands in ℚ(√d) arithmetic");
    }
}

/// Exact sign of `a + b√d` without floating point.
pub fn quad_sign(x: &QuadExt) -> i32 {
    let sa = rational_sign(&x.a);
    let sb = rational_sign(&x.b);
    match (sa, sb) {
        (0, 0) => 0,
        (s, 0) => s,
        (0, s) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        // Opposite signs: compare a² with b²d; the larger magnitude wins.
        (sa, _) => {
            let a2 = &x.a * &x.a;
            let b2d = &x.b * &x.b * &x.d;
            match a2.cmp(&b2d) {
                Ordering::Greater => sa,
                Ordering::Less => -sa,
                Ordering::Equal => 0,
            }
        }
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.check_same_field(rhs);
        QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone())
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.check_same_field(rhs);
        QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone())
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.check_same_field(rhs);
        QuadExt::new(
            &self.a * &rhs.a + &self.b * &rhs.b * &self.d,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.d.clone(),
        )
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.recip()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }
}

macro_rules! forward_owned {
    ($($op:ident :: $m:ident),*) => {$(
        impl $op for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> QuadExt {
        QuadExt::new(rat(a.0, a.1), rat(b.0, b.1), int(d))
    }

    #[test]
    fn sign_by_squaring() {
        // -6 + √40 > 0 since 40 > 36
        assert_eq!(q((-6, 1), (1, 1), 40).sign(), 1);
        assert_eq!(q((0, 1), (0, 1), 40).sign(), 0);
        assert_eq!(q((-7, 1), (1, 1), 40).sign(), -1);
        // 22 + 2√40 at n=7 (a₁ numerator): both terms positive
        assert_eq!(q((22, 1), (2, 1), 40).sign(), 1);
        assert_eq!(q((6, 1), (-1, 1), 36).sign(), 0);
    }

    #[test]
    fn field_ops() {
        let x = q((3, 2), (-1, 3), 10);
        let y = q((-2, 1), (5, 7), 10);
        let z = q((1, 5), (1, 2), 10);
        // associativity
        let lhs = (&(&x * &y) * &z).clone();
        let rhs = (&x * &(&y * &z)).clone();
        assert_eq!(lhs, rhs);
        // multiplicative inverse
        let one = &x * &x.recip();
        assert_eq!(one, q((1, 1), (0, 1), 10));
        // distributivity
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn enclosure_contains_value() {
        let x = q((-6, 1), (1, 1), 40); // √40 − 6 ≈ 0.3246
        let enc = x.enclosure(64);
        assert!(enc.lo > rat(324, 1000) && enc.hi < rat(325, 1000));
    }
}
