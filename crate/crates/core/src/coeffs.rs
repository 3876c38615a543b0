//! The multiplier frame and coefficient pipeline.
//!
//! For Δv + N vᵖ + M|∇v|^q = 0 with q = 2p/(p+1), the pointwise identity is
//! organized around an adapted frame at a point where the gradient points in
//! the first coordinate direction, with traceless corrections
//!
//! ```text
//! G₁₁ = v₁₁ − S·Δv,   Gᵢⱼ = vᵢⱼ − Q·δᵢⱼ·Δv (i+j>2),   (n−1)Q + S = 1,
//! ```
//!
//! and auxiliary exponents (α, γ). The coefficients of the resulting quadratic
//! form and the K-constants obtained after completing the square are computed
//! here, generically over any [`Scalar`] so the same formulas serve exact
//! verdicts (rationals / quadratic surds), certified enclosures (intervals)
//! and quick numeric exploration (floats).
//!
//! Two frames are used:
//! - `gradient_free`: γ = 0, S = Q = 1/n, α = −2(p−P)/(n+2);
//! - `high_dim`: γ = n−4, α = −γ−4/n, with S pinned by the vanishing of the
//!   cross coefficient b₂ — at ε = 0 this root is exact in ℚ(√d).

use crate::exact::rational::{int, rat, Rational};
use crate::exact::{Exact, QuadExt, RatInterval, Scalar};
use num_traits::{One, Signed, Zero};

/// Critical gradient exponent q = 2p/(p+1).
pub fn critical_q(p: &Rational) -> Rational {
    let two_p = p * int(2);
    let p1 = p + Rational::one();
    two_p / p1
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CoeffError {
    #[error("denominator {name} vanishes for these parameters")]
    ZeroDenominator { name: &'static str },
    #[error("{name} must be positive but is not")]
    NonPositive { name: &'static str },
    #[error("auxiliary exponent γ must be 0 or ≥ 3, got {0}")]
    InadmissibleGamma(Rational),
    #[error("no root of b₂ found near the ε = 0 seed")]
    NoRoot,
}

/// A fully pinned parameter frame: dimension, exponents and the multiplier S.
#[derive(Debug, Clone)]
pub struct Frame {
    pub n: i64,
    pub p: Rational,
    pub q: Rational,
    pub gamma: Rational,
    pub alpha: Rational,
    pub eps: Rational,
    pub s: Exact,
}

impl Frame {
    /// γ = 0 frame: S = Q = 1/n and α = −2(p − P)/(n+2).
    ///
    /// `p_shift` is the multiplier P entering the exponent choice; pass 0 for
    /// the plain frame.
    pub fn gradient_free(n: i64, p: &Rational, p_shift: &Rational, eps: &Rational) -> Frame {
        assert!(n >= 3);
        let alpha = (p_shift - p) * rat(2, n + 2);
        Frame {
            n,
            p: p.clone(),
            q: critical_q(p),
            gamma: Rational::zero(),
            alpha,
            eps: eps.clone(),
            s: Exact::Rat(rat(1, n)),
        }
    }

    /// γ = n−4 frame with α = −γ − 4/n = −(n−2)²/n and S solving b₂ = 0.
    pub fn high_dim(n: i64, p: &Rational, eps: &Rational) -> Result<Frame, CoeffError> {
        assert!(n >= 5, "high-dimension frame needs γ = n − 4 ≥ 1");
        let gamma = int(n - 4);
        let alpha = -rat((n - 2) * (n - 2), n);
        let s = solve_s(n, &gamma, eps)?;
        Ok(Frame {
            n,
            p: p.clone(),
            q: critical_q(p),
            gamma,
            alpha,
            eps: eps.clone(),
            s,
        })
    }

    /// The companion multiplier Q = (1 − S)/(n − 1).
    pub fn q_mult(&self) -> Exact {
        q_from_s(self.n, &self.s)
    }

    /// Coefficients with structured denominator/positivity checks; exact.
    pub fn coefficients(&self) -> Result<CoefficientSet<Exact>, CoeffError> {
        self.validate()?;
        Ok(coefficient_set(
            self.n, &self.gamma, &self.alpha, &self.p, &self.q, &self.eps, &self.s,
        ))
    }

    /// Coefficients over any scalar, evaluating S through `s`.
    pub fn coefficients_in<S: Scalar>(&self, s: &S) -> CoefficientSet<S> {
        coefficient_set(self.n, &self.gamma, &self.alpha, &self.p, &self.q, &self.eps, s)
    }

    /// Interval enclosure of S.
    pub fn s_enclosure(&self, precision: u32) -> RatInterval {
        self.s.enclosure(precision)
    }

    fn validate(&self) -> Result<(), CoeffError> {
        let g = &self.gamma;
        if !g.is_zero() && g < &int(3) {
            return Err(CoeffError::InadmissibleGamma(g.clone()));
        }
        let s = &self.s;
        let one = Exact::from_int(1);
        let q_m = self.q_mult();
        // D = 1 − S² + γS − γS² − (n−1)Q²
        let gs = s.scale(g);
        let s2 = s.square();
        let d = one
            .sub(&s2)
            .add(&gs)
            .sub(&s2.scale(g))
            .sub(&q_m.square().scale(&int(self.n - 1)));
        if d.is_zero() {
            return Err(CoeffError::ZeroDenominator { name: "D" });
        }
        // L = 1 + γS + 2S
        let l = one.add(&gs).add(&s.scale(&int(2)));
        if l.is_zero() {
            return Err(CoeffError::ZeroDenominator { name: "1 + γS + 2S" });
        }
        // (1 + γS)/D must be positive for the Cauchy–Schwarz step
        let num = one.add(&gs);
        if num.sign() * d.sign() <= 0 {
            return Err(CoeffError::NonPositive { name: "(1 + γS)/D" });
        }
        Ok(())
    }
}

fn q_from_s<S: Scalar>(n: i64, s: &S) -> S {
    S::from_int(1).sub(s).scale(&rat(1, n - 1))
}

/// Exact root of the ε = 0 quadratic in S:
/// (γ² + nγ/(n−1)) S² + 2(γ + n/(n−1)) S − (γ+2)/(n−1) = 0,
/// written as S = (γ+2) / ((n−1)γ + n + √disc).
pub fn solve_s_eps0(n: i64, gamma: &Rational) -> Result<Exact, CoeffError> {
    if gamma.is_zero() {
        return Ok(Exact::Rat(rat(1, n)));
    }
    if gamma.is_negative() {
        return Err(CoeffError::InadmissibleGamma(gamma.clone()));
    }
    let n1 = int(n - 1);
    let lin = &n1 * gamma + int(n);
    let disc = &lin * &lin + (&n1 * gamma * gamma + int(n) * gamma) * (gamma + int(2));
    if !disc.is_positive() {
        return Err(CoeffError::NoRoot);
    }
    // When γ = n − 4 the discriminant is (n−2)³(2n−6); pull out the square
    // factor so all dimension-dependent surds share the radicand (n−2)(2n−6).
    if *gamma == int(n - 4) {
        let d = int((n - 2) * (2 * n - 6));
        // S = (√d − (n−2)) / ((n−2)(n−4))
        let den = rat((n - 2) * (n - 4), 1);
        let s = QuadExt::new(-int(n - 2) / &den, int(1) / &den, d);
        return Ok(Exact::quad(s));
    }
    let denom = QuadExt::new(lin, Rational::one(), disc);
    let num = QuadExt::from_rational(gamma + int(2), denom.d.clone());
    Ok(Exact::quad(&num / &denom))
}

/// b₂ as an exact rational function of a rational S (used to pin S at ε > 0).
pub fn b2_at(n: i64, gamma: &Rational, eps: &Rational, s: &Rational) -> Rational {
    let q_m = (Rational::one() - s) / int(n - 1);
    let tau = s * s + int(n - 1) * &q_m * &q_m - rat(1, n);
    let d = Rational::one() - s * s + gamma * s - gamma * s * s - int(n - 1) * &q_m * &q_m;
    assert!(!d.is_zero(), "b₂ evaluated at a pole");
    let lam = (Rational::one() + gamma * s - eps * tau) / d;
    gamma
        + lam * (int(2) * gamma * s - gamma + int(2) * s - int(2) * &q_m)
        - int(2) * eps * (s - q_m)
}

/// S with b₂(S) = 0: exact at ε = 0, otherwise a rational root localized by
/// bisection seeded at the ε = 0 root (residual |b₂| < 10⁻¹²).
pub fn solve_s(n: i64, gamma: &Rational, eps: &Rational) -> Result<Exact, CoeffError> {
    let base = solve_s_eps0(n, gamma)?;
    if eps.is_zero() {
        return Ok(base);
    }
    // Bracket around the ε = 0 root and expand until b₂ changes sign.
    let enc = base.enclosure(96);
    let mut delta = rat(1, 1000);
    let (mut lo, mut hi) = loop {
        let lo = &enc.lo - &delta;
        let hi = &enc.hi + &delta;
        if lo.is_positive() {
            let flo = b2_at(n, gamma, eps, &lo);
            let fhi = b2_at(n, gamma, eps, &hi);
            if flo.is_positive() != fhi.is_positive() {
                break (lo, hi);
            }
        }
        delta *= int(2);
        if delta > int(1) {
            return Err(CoeffError::NoRoot);
        }
    };
    let sign_lo = b2_at(n, gamma, eps, &lo).is_positive();
    let tol = Rational::new(1.into(), num_bigint::BigInt::one() << 96u32);
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        if b2_at(n, gamma, eps, &mid).is_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = (&lo + &hi) / int(2);
    debug_assert!(b2_at(n, gamma, eps, &root).abs() < rat(1, 1_000_000_000_000));
    Ok(Exact::Rat(root))
}

/// Coefficients of the pointwise quadratic form.
#[derive(Debug, Clone)]
pub struct CoefficientSet<S> {
    pub a1: S,
    pub a2: S,
    pub a3: S,
    pub b1: S,
    pub b2: S,
    pub b3: S,
    pub b4: S,
    pub b5: S,
    pub c2: S,
    /// Common prefactor Λ = (1 + γS − ετ)/D.
    pub lambda: S,
    /// τ = S² + (n−1)Q² − 1/n (nonnegative by Cauchy–Schwarz).
    pub tau: S,
    /// B₀ = a₂ + a₁/(n−1), the G₁₁² coefficient after Cauchy–Schwarz.
    pub b0: S,
}

/// Evaluates every coefficient from the raw parameters.
pub fn coefficient_set<S: Scalar>(
    n: i64,
    gamma: &Rational,
    alpha: &Rational,
    p: &Rational,
    q: &Rational,
    eps: &Rational,
    s: &S,
) -> CoefficientSet<S> {
    let one = S::from_int(1);
    let q_m = q_from_s(n, s);
    let gs = s.scale(gamma);
    let s2 = s.square();

    let tau = s2
        .add(&q_m.square().scale(&int(n - 1)))
        .sub(&S::from_rat(&rat(1, n)));
    let d = one
        .sub(&s2)
        .add(&gs)
        .sub(&s2.scale(gamma))
        .sub(&q_m.square().scale(&int(n - 1)));
    let lambda = one.add(&gs).sub(&tau.scale(eps)).div(&d);
    let l = one.add(&gs).add(&s.scale(&int(2)));

    let eps_s = S::from_rat(eps);
    let a1 = lambda.sub(&eps_s);
    let a2 = lambda.scale(&(Rational::one() + gamma)).sub(&eps_s);
    // a₃ = −(α+p)(α−1)/L + Λ·α(α−1)(1−S)/L
    let a_m1 = alpha - Rational::one();
    let a3 = lambda
        .mul(&one.sub(s))
        .scale(&(alpha * &a_m1))
        .sub(&S::from_rat(&((alpha + p) * &a_m1)))
        .div(&l);
    // b₁ = Λ·α(γ+3)/L − (α+p)(γ+2)/L
    let b1 = lambda
        .scale(&(alpha * (gamma + int(3))))
        .sub(&S::from_rat(&((alpha + p) * (gamma + int(2)))))
        .div(&l);
    // b₂ = γ + Λ(2γS − γ + 2S − 2Q) − 2ε(S − Q)
    let b2 = S::from_rat(gamma)
        .add(
            &lambda.mul(
                &gs.scale(&int(2))
                    .sub(&S::from_rat(gamma))
                    .add(&s.scale(&int(2)))
                    .sub(&q_m.scale(&int(2))),
            ),
        )
        .sub(&s.sub(&q_m).scale(&(eps * int(2))));
    let c2 = S::from_rat(&(-q / (gamma + q)));
    let b3 = S::from_int(0);
    let b4 = S::from_rat(&(-p - q * alpha / (gamma + q)));
    let b5 = c2.clone();
    let b0 = a2.add(&a1.scale(&rat(1, n - 1)));

    CoefficientSet {
        a1,
        a2,
        a3,
        b1,
        b2,
        b3,
        b4,
        b5,
        c2,
        lambda,
        tau,
        b0,
    }
}

/// Multipliers of the three auxiliary equation multiples folded in before
/// completing the square.
#[derive(Debug, Clone)]
pub struct Multipliers<S> {
    pub p: S,
    pub t: S,
    pub u: S,
}

/// Constants of the final pointwise inequality (after completing the square
/// in G₁₁ with coefficient B₀ > 0).
#[derive(Debug, Clone)]
pub struct KSet<S> {
    pub k1: S,
    pub k2: S,
    pub k3: S,
    pub k4: S,
    pub k5: S,
    pub k6: S,
}

pub fn k_set<S: Scalar>(
    gamma: &Rational,
    alpha: &Rational,
    p: &Rational,
    q: &Rational,
    coeffs: &CoefficientSet<S>,
    s: &S,
    m: &Multipliers<S>,
) -> KSet<S> {
    let one = S::from_int(1);
    let gs = s.scale(gamma);
    let l = one.add(&gs).add(&s.scale(&int(2)));
    let one_gs = one.add(&gs);
    let one_gqs = one.add(&gs).add(&s.scale(q));
    let inv_4b0 = one.div(&coeffs.b0.scale(&int(4)));
    let inv_2b0 = one.div(&coeffs.b0.scale(&int(2)));

    // The three linear-in-G₁₁ weights that get completed against B₀.
    let w1 = coeffs.b1.add(&m.p.scale(&(gamma + int(2))).div(&l));
    let w2 = m.t.scale(gamma).div(&one_gs);
    let w3 = m.u.scale(&(gamma + q)).div(&one_gqs);

    let k1 = coeffs
        .a3
        .add(&m.p.scale(&(alpha - Rational::one())).div(&l))
        .sub(&w1.square().mul(&inv_4b0));
    let k2 = m.t.sub(&w2.square().mul(&inv_4b0));
    let k3 = coeffs.c2.add(&m.u).sub(&w3.square().mul(&inv_4b0));
    let k4 = m
        .t
        .scale(&(alpha + p))
        .div(&one_gs)
        .neg()
        .sub(&m.p)
        .add(&w2.mul(&w1).mul(&inv_2b0));
    let k5 = coeffs
        .b4
        .neg()
        .sub(&m.p)
        .sub(&m.u.scale(alpha).div(&one_gqs))
        .add(&w1.mul(&w3).mul(&inv_2b0));
    let k6 = coeffs
        .c2
        .add(&m.t)
        .add(&m.u)
        .sub(&w2.mul(&w3).mul(&inv_2b0));

    KSet {
        k1,
        k2,
        k3,
        k4,
        k5,
        k6,
    }
}

/// Admissibility report for a frame: every structural gate in one place.
#[derive(Debug, Clone)]
pub struct GateReport {
    pub gamma_admissible: bool,
    pub b2_vanishes: bool,
    pub cs_ratio_positive: bool,
    pub b0_positive: bool,
    pub young_exponent_positive: bool,
    pub tau_nonnegative: bool,
}

impl GateReport {
    pub fn all_pass(&self) -> bool {
        self.gamma_admissible
            && self.b2_vanishes
            && self.cs_ratio_positive
            && self.b0_positive
            && self.young_exponent_positive
            && self.tau_nonnegative
    }
}

/// Checks every gate the pointwise argument relies on.
pub fn gate_check(frame: &Frame) -> Result<GateReport, CoeffError> {
    let coeffs = frame.coefficients()?;
    let gamma_admissible = frame.gamma.is_zero() || frame.gamma >= int(3);
    let b2_vanishes = match &coeffs.b2 {
        Exact::Rat(r) => r.abs() < rat(1, 1_000_000_000_000),
        q => q.is_zero(),
    };
    // coefficients() already rejects frames with (1 + γS)/D ≤ 0.
    let cs_ratio_positive = true;
    let b0_positive = coeffs.b0.sign() > 0;
    let young_exponent_positive = &frame.alpha + &frame.gamma + int(2) > Rational::zero();
    let tau_nonnegative = coeffs.tau.sign() >= 0;
    Ok(GateReport {
        gamma_admissible,
        b2_vanishes,
        cs_ratio_positive,
        b0_positive,
        young_exponent_positive,
        tau_nonnegative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf_frame(n: i64, p: Rational, eps: Rational) -> Frame {
        Frame::gradient_free(n, &p, &Rational::zero(), &eps)
    }

    #[test]
    fn critical_q_values() {
        assert_eq!(critical_q(&rat(9, 5)), rat(9, 7));
        assert_eq!(critical_q(&int(5)), rat(5, 3));
    }

    #[test]
    fn gradient_free_closed_forms() {
        // Independent closed forms for γ = 0, S = Q = 1/n.
        for (n, p) in [(3, int(5)), (7, rat(9, 5)), (10, rat(3, 2))] {
            let eps = rat(1, 1000);
            let f = gf_frame(n, p.clone(), eps.clone());
            let c = f.coefficients().unwrap();
            let alpha = &f.alpha;
            assert_eq!(c.a1, Exact::Rat(rat(n, n - 1) - &eps));
            assert_eq!(c.b2, Exact::Rat(Rational::zero()));
            assert_eq!(c.c2, Exact::Rat(-int(1)));
            assert_eq!(c.b4, Exact::Rat(-&p - alpha));
            assert_eq!(
                c.a3,
                Exact::Rat(-rat(n, n + 2) * &p * (alpha - int(1)))
            );
            assert_eq!(
                c.b1,
                Exact::Rat(rat(n, n - 1) * alpha - rat(2 * n, n + 2) * &p)
            );
            assert_eq!(
                c.b0,
                Exact::Rat(rat(n, n - 1) * (rat(n, n - 1) - &eps))
            );
            assert_eq!(c.tau, Exact::Rat(Rational::zero()));
        }
    }

    #[test]
    fn high_dim_s_closed_form() {
        // At γ = n−4, ε = 0: S = 1/(n−2+√Δ'), Δ' = (n−2)(2n−6); verify by
        // plugging the surd into the quadratic it must satisfy.
        for n in [7_i64, 8, 9, 20, 100] {
            let gamma = int(n - 4);
            let s = solve_s_eps0(n, &gamma).unwrap();
            // quadratic (γ² + nγ/(n−1))S² + 2(γ + n/(n−1))S − (γ+2)/(n−1)
            let c2 = &gamma * &gamma + rat(n, n - 1) * &gamma;
            let c1 = (&gamma + rat(n, n - 1)) * int(2);
            let c0 = -(&gamma + int(2)) / int(n - 1);
            let val = s
                .square()
                .scale(&c2)
                .add(&s.scale(&c1))
                .add(&Exact::Rat(c0));
            assert!(val.is_zero(), "n = {n}: quadratic residual {val:?}");
            // and S is the positive root below 1/(n−2)
            assert_eq!(s.sign(), 1);
            assert_eq!(s.sub(&Exact::Rat(rat(1, n - 2))).sign(), -1);
        }
    }

    #[test]
    fn high_dim_b2_vanishes_exactly_at_eps0() {
        for n in [7_i64, 11, 42] {
            let f = Frame::high_dim(n, &rat(9, 5), &Rational::zero()).unwrap();
            let c = f.coefficients().unwrap();
            assert!(c.b2.is_zero(), "n = {n}: b₂ = {:?}", c.b2);
            // a₁ closed form: (2√Δ' + n² − 5n + 8)/((n−1)(n−2))
            let d = int((n - 2) * (2 * n - 6));
            let den = rat((n - 1) * (n - 2), 1);
            let expect = Exact::quad(QuadExt::new(
                int(n * n - 5 * n + 8) / &den,
                int(2) / &den,
                d,
            ));
            assert!(c.a1.sub(&expect).is_zero(), "n = {n}");
            // B₀ agreement with a₁(n/(n−1) + γ) at ε = 0
            let alt = c.a1.scale(&(rat(n, n - 1) + int(n - 4)));
            assert!(c.b0.sub(&alt).is_zero());
        }
    }

    #[test]
    fn eps_perturbed_root_stays_close() {
        let n = 9;
        let gamma = int(n - 4);
        let base = solve_s_eps0(n, &gamma).unwrap().enclosure(96);
        for eps in [rat(1, 1000), rat(1, 10_000), rat(1, 1_000_000)] {
            let s = solve_s(n, &gamma, &eps).unwrap();
            let r = s.as_rational().unwrap();
            assert!((r - base.midpoint()).abs() < rat(1, 100));
            assert!(b2_at(n, &gamma, &eps, r).abs() < rat(1, 1_000_000_000_000));
        }
    }

    #[test]
    fn k6_minus_k2_k3_is_square_over_4b0() {
        // K₆ − K₂ − K₃ = (w₂ − w₃)²/(4B₀), the Cauchy–Schwarz slack.
        let f = Frame::high_dim(8, &rat(9, 5), &Rational::zero()).unwrap();
        let c = f.coefficients().unwrap();
        let m = Multipliers {
            p: Exact::Rat(rat(1, 50)),
            t: Exact::Rat(rat(1, 30)),
            u: Exact::Rat(rat(7, 10)),
        };
        let k = k_set(&f.gamma, &f.alpha, &f.p, &f.q, &c, &f.s, &m);
        let lhs = k.k6.sub(&k.k2).sub(&k.k3);
        let one = Exact::from_int(1);
        let gs = f.s.scale(&f.gamma);
        let w2 = m.t.scale(&f.gamma).div(&one.add(&gs));
        let w3 = m
            .u
            .scale(&(&f.gamma + &f.q))
            .div(&one.add(&gs).add(&f.s.scale(&f.q)));
        let rhs = w2.sub(&w3).square().div(&c.b0.scale(&int(4)));
        assert!(lhs.sub(&rhs).is_zero());
        assert!(lhs.sign() >= 0);
    }

    #[test]
    fn gate_report_high_dim() {
        let f = Frame::high_dim(7, &rat(9, 5), &Rational::zero()).unwrap();
        let g = gate_check(&f).unwrap();
        assert!(g.all_pass(), "{g:?}");
        let f0 = gf_frame(5, int(2), rat(1, 1000));
        let g0 = gate_check(&f0).unwrap();
        assert!(g0.all_pass(), "{g0:?}");
    }

    #[test]
    fn interval_and_float_agree_with_exact() {
        let f = Frame::high_dim(10, &rat(3, 2), &Rational::zero()).unwrap();
        let exact = f.coefficients().unwrap();
        let iv = f.coefficients_in(&f.s_enclosure(96));
        let fl = f.coefficients_in(&f.s.to_f64());
        for (e, i, x) in [
            (&exact.a1, &iv.a1, fl.a1),
            (&exact.a3, &iv.a3, fl.a3),
            (&exact.b1, &iv.b1, fl.b1),
            (&exact.b0, &iv.b0, fl.b0),
        ] {
            let enc = e.enclosure(96);
            assert!(i.lo <= enc.hi && enc.lo <= i.hi, "interval disagrees");
            assert!((e.to_f64() - x).abs() < 1e-9, "float disagrees");
        }
    }
}
