//! Exponent bookkeeping for the cut-off/Young-inequality step.
//!
//! After integrating the pointwise inequality against a cut-off η^δ, the
//! boundary term ∫ v^α|∇v|^{γ+2} η^{δ−2}|∇η|² is split as a product
//! v^{α−A}|∇v|^{γ+2−B} · v^A|∇v|^B and absorbed by Young's inequality with
//! exponents (p₁, q₁, σ₁), 1/p₁ + 1/q₁ + 1/σ₁ = 1. The matching conditions
//!
//! ```text
//! (α + 2p)/A = γ/B = p₁,   (α − 2)/(α − A) = (γ + 4)/(γ + 2 − B) = q₁,
//! 1 − 2/n < 1/p₁ + 1/q₁ < 1,
//! ```
//!
//! pin A, B and leave a residual window for σ₁; the cut-off power δ must
//! satisfy δ > 2σ₁ and the leftover boundary integral decays like
//! R^{n − 2σ₁}, so σ₁ > n/2 is also required. All arithmetic is exact.

use crate::exact::rational::{ceil_i, int, rat, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum YoungError {
    #[error("splitting weight A = {0} is not positive")]
    WeightANotPositive(Rational),
    #[error("splitting weight B = {0} out of range [0, γ + 2)")]
    WeightBOutOfRange(Rational),
    #[error("exponent p₁ = {0} is not positive")]
    P1NotPositive(Rational),
    #[error("exponent q₁ = {0} is not positive")]
    Q1NotPositive(Rational),
    #[error("1/p₁ + 1/q₁ = {0} is not below 1")]
    SumNotBelowOne(Rational),
    #[error("1/p₁ + 1/q₁ = {sum} does not exceed 1 − 2/n = {floor}")]
    SumNotAboveFloor { sum: Rational, floor: Rational },
    #[error("γ = {0} must be 0 or ≥ 3")]
    InadmissibleGamma(Rational),
    #[error("α + γ + 2 = {0} is not positive")]
    HomogeneityNotPositive(Rational),
}

/// A feasible exponent assignment for the Young absorption step.
#[derive(Debug, Clone, PartialEq)]
pub struct YoungExponents {
    pub a: Rational,
    pub b: Rational,
    pub p1: Rational,
    pub q1: Rational,
    /// 1/p₁ + 1/q₁, which must lie in (1 − 2/n, 1).
    pub g: Rational,
    pub sigma1: Rational,
    /// Smallest admissible integer cut-off power (> 2σ₁).
    pub delta: i64,
}

/// Solves the matching conditions for (A, B, p₁, q₁, σ₁, δ) or reports the
/// first violated constraint.
pub fn young_exponents(
    n: i64,
    gamma: &Rational,
    alpha: &Rational,
    p: &Rational,
) -> Result<YoungExponents, YoungError> {
    if !gamma.is_zero() && gamma < &int(3) {
        return Err(YoungError::InadmissibleGamma(gamma.clone()));
    }
    let hom = alpha + gamma + int(2);
    if !hom.is_positive() {
        return Err(YoungError::HomogeneityNotPositive(hom));
    }

    let (a, b, p1, q1) = if gamma.is_zero() {
        // q₁ = (α − 2)/(α − A) = 2 forces A = (α + 2)/2, and B = 0.
        let a = (alpha + int(2)) / int(2);
        let q1 = int(2);
        if !a.is_positive() {
            return Err(YoungError::WeightANotPositive(a));
        }
        let p1 = (alpha + int(2) * p) / &a;
        (a, Rational::zero(), p1, q1)
    } else {
        // B from eliminating p₁ and q₁ between the two matching conditions.
        let den = (gamma + int(4)) * p + int(2) * alpha + gamma;
        let b = gamma * &hom / &den;
        if b.is_negative() || b >= gamma + int(2) {
            return Err(YoungError::WeightBOutOfRange(b));
        }
        let p1 = gamma / &b;
        let q1 = (gamma + int(4)) / (gamma + int(2) - &b);
        // A is pinned by A·p₁ = α + 2p; its sign is unconstrained since
        // v^{α+2p}|∇v|^γ appears on the absorbing side regardless.
        let a = (alpha + int(2) * p) / &p1;
        (a, b, p1, q1)
    };

    if !p1.is_positive() {
        return Err(YoungError::P1NotPositive(p1));
    }
    if !q1.is_positive() {
        return Err(YoungError::Q1NotPositive(q1));
    }
    let g = p1.recip() + q1.recip();
    if g >= Rational::one() {
        return Err(YoungError::SumNotBelowOne(g));
    }
    let floor = Rational::one() - rat(2, n);
    if g <= floor {
        return Err(YoungError::SumNotAboveFloor { sum: g, floor });
    }
    let sigma1 = (Rational::one() - &g).recip();
    let delta = ceil_i(&(int(2) * &sigma1))
        .to_i64()
        .expect("cut-off power fits i64")
        + 1;
    Ok(YoungExponents {
        a,
        b,
        p1,
        q1,
        g,
        sigma1,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_free_frame_feasible() {
        // γ = 0, α = −2p/(n+2): feasible for 1 < p ≤ (n+2)/(n−2).
        for n in 3..=50 {
            let p = rat(n + 2, n - 2); // critical
            // α = −2(p − P)/(n + 2) with the small positive shift P that the
            // frame always carries; P = 0 at critical p degenerates (A = 0).
            let shift = rat(1, 100);
            let alpha = -rat(2, n + 2) * (&p - &shift);
            let y = young_exponents(n, &Rational::zero(), &alpha, &p).unwrap();
            assert_eq!(y.q1, int(2));
            assert_eq!(y.a, (&alpha + int(2)) / int(2));
            // reconstruct the matching conditions
            assert_eq!((&alpha + int(2) * &p) / &y.a, y.p1);
            assert!(y.g < Rational::one() && y.g > Rational::one() - rat(2, n));
            assert!(int(2) * &y.sigma1 < int(y.delta));
            assert!(y.sigma1 > rat(n, 2));
        }
    }

    #[test]
    fn high_dim_frame_feasible() {
        // γ = n−4, α = −(n−2)²/n: feasible for n ≥ 7 across the p-range.
        for n in 7..=50 {
            let gamma = int(n - 4);
            let alpha = -rat((n - 2) * (n - 2), n);
            for p in [rat(11, 10), rat(n + 2, n - 2)] {
                let y = young_exponents(n, &gamma, &alpha, &p).unwrap();
                // matching conditions hold exactly
                assert_eq!((&alpha + int(2) * &p) / &y.a, &gamma / &y.b);
                assert_eq!(
                    (&alpha - int(2)) / (&alpha - &y.a),
                    (&gamma + int(4)) / (&gamma + int(2) - &y.b)
                );
                assert!(y.g < Rational::one());
                assert!(y.g > Rational::one() - rat(2, n), "n = {n}, p = {p}");
                assert!(y.b < &gamma / int(2) + Rational::one());
            }
        }
    }

    #[test]
    fn infeasibility_is_named() {
        // homogeneity violated: α too negative
        let err = young_exponents(7, &int(3), &-int(10), &rat(9, 5)).unwrap_err();
        assert!(matches!(err, YoungError::HomogeneityNotPositive(_)));
        // γ between 0 and 3 rejected
        let err = young_exponents(7, &int(1), &-int(1), &rat(9, 5)).unwrap_err();
        assert!(matches!(err, YoungError::InadmissibleGamma(_)));
    }

    #[test]
    fn g_is_decreasing_in_p_and_below_one() {
        // G(p) = ((γ+2)p + 2α + γ + 2)/((γ+4)p + 2α + γ) decreases in p and
        // G(1) = 1, so feasibility on p > 1 hinges only on the lower bound.
        let n = 9;
        let gamma = int(n - 4);
        let alpha = -rat((n - 2) * (n - 2), n);
        let g_at = |p: &Rational| {
            young_exponents(n, &gamma, &alpha, p).unwrap().g
        };
        let g1 = g_at(&rat(101, 100));
        let g2 = g_at(&rat(3, 2));
        let g3 = g_at(&rat(n + 2, n - 2));
        assert!(g1 > g2 && g2 > g3);
        assert!(g1 < Rational::one());
    }
}
