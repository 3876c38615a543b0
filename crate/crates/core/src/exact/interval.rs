//! Rational interval arithmetic with outward rounding.
//!
//! Ring operations on rational endpoints are exact, so enclosures only widen
//! where genuine irrationality enters: `sqrt` uses integer square roots with
//! directed rounding, `ln`/`exp` use truncated series with explicit remainder
//! bounds, and `pow` with a fractional exponent composes the two. Every
//! operation returns an interval guaranteed to contain the true value.

use super::rational::{pow_i, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.10e}, {:.10e}]",
            super::rational::to_f64(&self.lo),
            super::rational::to_f64(&self.hi)
        )
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("operand interval contains zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval endpoints");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn hull(a: &Self, b: &Self) -> Self {
        RatInterval::new(a.lo.clone().min(b.lo.clone()), a.hi.clone().max(b.hi.clone()))
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Strictly below `x`: a certified `< x` verdict.
    pub fn certainly_lt(&self, x: &Rational) -> bool {
        &self.hi < x
    }

    pub fn certainly_gt(&self, x: &Rational) -> bool {
        &self.lo > x
    }

    /// Strictly below the other interval (enclosure separation).
    pub fn certainly_below(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn recip(&self) -> Result<Self, IntervalError> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(IntervalError::DivisionByZero);
        }
        Ok(RatInterval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, IntervalError> {
        Ok(self * &other.recip()?)
    }

    /// Integer power; exact on the endpoints.
    pub fn powi(&self, e: i64) -> Result<Self, IntervalError> {
        if e == 0 {
            return Ok(RatInterval::point(Rational::one()));
        }
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        if e % 2 == 1 || !self.lo.is_negative() {
            Ok(RatInterval::new(pow_i(&self.lo, e), pow_i(&self.hi, e)))
        } else if self.hi.is_negative() {
            Ok(RatInterval::new(pow_i(&self.hi, e), pow_i(&self.lo, e)))
        } else {
            // even power of a sign-spanning interval
            let m = pow_i(&self.lo, e).max(pow_i(&self.hi, e));
            Ok(RatInterval::new(Rational::zero(), m))
        }
    }

    /// Outward rounding to dyadic endpoints with `bits` fractional bits.
    /// Caps coefficient growth in long computations; the result always
    /// contains `self`.
    pub fn round_out(&self, bits: u32) -> Self {
        RatInterval::new(dyadic_floor(&self.lo, bits), dyadic_ceil(&self.hi, bits))
    }

    /// Square root enclosure; requires a nonnegative lower endpoint.
    pub fn sqrt(&self, precision: u32) -> Result<Self, IntervalError> {
        if self.lo.is_negative() {
            return Err(IntervalError::Domain("sqrt of a negative interval"));
        }
        Ok(RatInterval::new(
            sqrt_down(&self.lo, precision),
            sqrt_up(&self.hi, precision),
        ))
    }

    /// Natural logarithm enclosure; requires a positive lower endpoint.
    pub fn ln(&self, precision: u32) -> Result<Self, IntervalError> {
        if !self.lo.is_positive() {
            return Err(IntervalError::Domain("ln of a non-positive interval"));
        }
        let lo = ln_point(&self.lo, precision);
        let hi = ln_point(&self.hi, precision);
        Ok(RatInterval::new(lo.lo, hi.hi))
    }

    /// Exponential enclosure.
    pub fn exp(&self, precision: u32) -> Self {
        let lo = exp_point(&self.lo, precision);
        let hi = exp_point(&self.hi, precision);
        RatInterval::new(lo.lo, hi.hi)
    }

    /// `self ^ exponent` for an arbitrary rational exponent.
    ///
    /// Integer exponents are exact; otherwise requires a strictly positive
    /// base and returns `exp(exponent · ln(base))` with all rounding outward.
    pub fn pow(&self, exponent: &Rational, precision: u32) -> Result<Self, IntervalError> {
        if exponent.is_integer() {
            let e = exponent
                .to_integer()
                .to_i64()
                .ok_or(IntervalError::Domain("exponent too large"))?;
            return self.powi(e);
        }
        if !self.lo.is_positive() {
            return Err(IntervalError::Domain(
                "fractional power of a non-positive base",
            ));
        }
        if *exponent == Rational::new(BigInt::one(), BigInt::from(2)) {
            return self.sqrt(precision);
        }
        let ln = self.ln(precision + 16)?;
        let scaled = &RatInterval::point(exponent.clone()) * &ln;
        Ok(scaled.round_out(precision + 16).exp(precision).round_out(precision))
    }
}

/// Main entry point: enclosure of `base^exponent` for positive bases.
pub fn interval_pow(
    base: &RatInterval,
    exponent: &Rational,
    precision: u32,
) -> Result<RatInterval, IntervalError> {
    if !base.lo.is_positive() {
        return Err(IntervalError::Domain("interval_pow requires base > 0"));
    }
    base.pow(exponent, precision)
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        RatInterval::new(lo, hi)
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }
}

macro_rules! forward_owned {
    ($($op:ident :: $m:ident),*) => {$(
        impl $op for RatInterval {
            type Output = RatInterval;
            fn $m(self, rhs: RatInterval) -> RatInterval { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        -&self
    }
}

fn dyadic_floor(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

fn dyadic_ceil(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Largest dyadic `s/2^p` with `s² ≤ x` at the working scale.
fn sqrt_down(x: &Rational, precision: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    // √(n/d) = √(n·d)/d, with the integer root taken at scale 4^p.
    let n = x.numer();
    let d = x.denom();
    let scaled: BigInt = n * d << (2 * precision as usize);
    let root = scaled.sqrt(); // floor of the exact square root
    Rational::new(root, d << precision as usize)
}

fn sqrt_up(x: &Rational, precision: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let n = x.numer();
    let d = x.denom();
    let scaled: BigInt = n * d << (2 * precision as usize);
    let root = scaled.sqrt();
    let root = if &root * &root == scaled { root } else { root + 1 };
    Rational::new(root, d << precision as usize)
}

/// Enclosure of ln 2 via 2·atanh(1/3).
fn ln2(precision: u32) -> RatInterval {
    atanh_small(&Rational::new(BigInt::one(), BigInt::from(3)), precision)
        * RatInterval::point(Rational::from_integer(2.into()))
}

/// Enclosure of atanh(z) for |z| ≤ 1/4 + margin, by the odd power series.
fn atanh_small(z: &Rational, precision: u32) -> RatInterval {
    debug_assert!(z.abs() < Rational::new(BigInt::from(2), BigInt::from(5)));
    let z2 = z * z;
    let mut term = z.clone();
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    // stop when the geometric tail bound drops below 2^-(precision+2)
    let tol = Rational::new(BigInt::one(), BigInt::one() << (precision as usize + 2));
    loop {
        sum += &term / Rational::from_integer((2 * k + 1).into());
        term *= &z2;
        k += 1;
        let tail = &term / (Rational::one() - &z2) / Rational::from_integer((2 * k + 1).into());
        if tail.abs() < tol {
            let t = tail.abs();
            return RatInterval::new(&sum - &t, &sum + &t).round_out(precision + 8);
        }
    }
}

/// Enclosure of ln(x) for an exact positive rational x.
fn ln_point(x: &Rational, precision: u32) -> RatInterval {
    debug_assert!(x.is_positive());
    // Scale by powers of two until m ∈ [3/4, 3/2).
    let mut m = x.clone();
    let mut j: i64 = 0;
    let lo_bound = Rational::new(BigInt::from(3), BigInt::from(4));
    let hi_bound = Rational::new(BigInt::from(3), BigInt::from(2));
    let two = Rational::from_integer(2.into());
    while m >= hi_bound {
        m /= &two;
        j += 1;
    }
    while m < lo_bound {
        m *= &two;
        j -= 1;
    }
    // ln m = 2·atanh((m−1)/(m+1)), with |z| ≤ 1/5.
    let z = (&m - Rational::one()) / (&m + Rational::one());
    // round z outward first so the series works on short dyadics
    let z_iv = RatInterval::point(z).round_out(precision + 16);
    let lo = atanh_small(&z_iv.lo, precision + 8);
    let hi = atanh_small(&z_iv.hi, precision + 8);
    let atanh = RatInterval::new(lo.lo, hi.hi);
    let ln_m = atanh * RatInterval::point(two);
    if j == 0 {
        return ln_m;
    }
    let l2 = ln2(precision + 8);
    ln_m + l2 * RatInterval::point(Rational::from_integer(j.into()))
}

/// Enclosure of exp(y) for an exact rational y.
fn exp_point(y: &Rational, precision: u32) -> RatInterval {
    if y.is_zero() {
        return RatInterval::point(Rational::one());
    }
    // y = k·ln2 + r with |r| ≤ 0.36; k chosen from a float estimate.
    let approx = super::rational::to_f64(y);
    let k = (approx / std::f64::consts::LN_2).round();
    assert!(k.is_finite(), "exp argument out of range");
    let k = k as i64;
    let l2 = ln2(precision + 16);
    let r = RatInterval::point(y.clone())
        - l2 * RatInterval::point(Rational::from_integer(k.into()));
    let r = r.round_out(precision + 16);
    debug_assert!(
        r.lo > Rational::new(BigInt::from(-2), BigInt::from(5))
            && r.hi < Rational::new(BigInt::from(2), BigInt::from(5))
    );
    let series = exp_series(&r, precision + 8);
    let scale = pow_i(&Rational::from_integer(2.into()), k);
    series * RatInterval::point(scale)
}

/// Taylor series for exp on a small interval, with remainder bound.
fn exp_series(r: &RatInterval, precision: u32) -> RatInterval {
    let tol = Rational::new(BigInt::one(), BigInt::one() << (precision as usize + 2));
    let mut sum = RatInterval::point(Rational::one());
    let mut term = RatInterval::point(Rational::one());
    let mag = r.lo.abs().max(r.hi.abs());
    let mut j: i64 = 1;
    loop {
        term = (&term * r).round_out(precision + 16);
        term = &term * &RatInterval::point(Rational::new(BigInt::one(), BigInt::from(j)));
        sum = &sum + &term;
        // remainder ≤ |r|^{j+1}/(j+1)! · 1/(1−|r|/(j+2))
        let mut bound = pow_i(&mag, j + 1);
        let mut fact = Rational::one();
        for i in 2..=(j + 1) {
            fact *= Rational::from_integer(i.into());
        }
        bound /= fact;
        bound /= Rational::one() - &mag / Rational::from_integer((j + 2).into());
        if bound < tol {
            return RatInterval::new(&sum.lo - &bound, &sum.hi + &bound).round_out(precision + 8);
        }
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> RatInterval {
        RatInterval::new(rat(lo.0, lo.1), rat(hi.0, hi.1))
    }

    #[test]
    fn ring_ops_enclose() {
        let a = iv((1, 3), (1, 2));
        let b = iv((-2, 1), (3, 1));
        let s = &a + &b;
        assert!(s.contains(&(rat(1, 3) + rat(-2, 1))));
        assert!(s.contains(&(rat(1, 2) + rat(3, 1))));
        let p = &a * &b;
        assert!(p.contains(&(rat(1, 2) * rat(-2, 1))));
        assert!(p.contains(&(rat(1, 3) * rat(3, 1))));
    }

    #[test]
    fn sqrt_of_forty() {
        let enc = RatInterval::point(int(40)).sqrt(64).unwrap();
        // √40 ≈ 6.32455532
        assert!(enc.lo > rat(63245, 10000));
        assert!(enc.hi < rat(63246, 10000));
        assert!(enc.width() < rat(1, 1 << 30));
    }

    #[test]
    fn pow_identity_base_one() {
        let one = RatInterval::point(int(1));
        let r = interval_pow(&one, &rat(9, 14), 96).unwrap();
        assert_eq!(r, one);
    }

    #[test]
    fn pow_seven_ninths_to_nine_fourteenths() {
        // (7/9)^(9/14) ≈ 0.85081706...
        let base = RatInterval::point(rat(7, 9));
        let r = interval_pow(&base, &rat(9, 14), 96).unwrap();
        assert!(r.contains(&rat(850817, 1000000)) || (r.lo > rat(850816, 1000000) && r.hi < rat(850818, 1000000)));
        assert!(r.lo > rat(8508, 10000) && r.hi < rat(8509, 10000));
        assert!(r.width() < rat(1, 1 << 40));
    }

    #[test]
    fn pow_sqrt_path() {
        let base = RatInterval::point(int(40));
        let r = interval_pow(&base, &rat(1, 2), 80).unwrap();
        assert!(r.lo > rat(63245, 10000) && r.hi < rat(63246, 10000));
    }

    #[test]
    fn pow_rejects_nonpositive_base() {
        let base = iv((-1, 1), (2, 1));
        assert!(interval_pow(&base, &rat(1, 2), 32).is_err());
    }

    #[test]
    fn exp_ln_roundtrip_encloses() {
        let x = RatInterval::point(rat(23, 7));
        let ln = x.ln(96).unwrap();
        let back = ln.exp(96);
        assert!(back.contains(&rat(23, 7)));
        assert!(back.width() < rat(1, 1i64 << 40));
    }

    #[test]
    fn negative_exponent() {
        // (1/4)^(-1/2) = 2
        let r = interval_pow(&RatInterval::point(rat(1, 4)), &rat(-1, 2), 80).unwrap();
        assert!(r.contains(&int(2)));
        assert!(r.width() < rat(1, 1 << 30));
    }
}
