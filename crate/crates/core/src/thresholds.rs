//! Gradient-coefficient thresholds.
//!
//! For Δv + vᵖ + M|∇v|^q = 0 (critical q), the pointwise argument produces
//! two thresholds:
//! - `m1`: solutions are trivial for 0 < M < M₁ (M₁ = ∞ when 3 ≤ n ≤ 6);
//! - `m2`: solutions are trivial for M > M₂, with M₂ = 0 unless p sits in the
//!   narrow window [(n+2)/(n−2) − 1/n², (n+2)/(n−2)].
//!
//! Together with M₂ < M₁ they cover every M > 0. This module computes both
//! thresholds as certified interval enclosures, the discriminant and U₀
//! quantities behind M₂, the small-dimension direct verification, and the
//! exact ℚ(√Δ') certificate for the K₁ > 0 lemma.

use crate::coeffs::{
    coefficient_set, critical_q, k_set, CoeffError, Frame, KSet, Multipliers,
};
use crate::exact::rational::{int, rat, Rational};
use crate::exact::{
    interval_pow, positive_on_ray, Exact, IntervalError, QuadExt, RatInterval, Scalar,
    SignCertificate, UniPoly,
};
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ThresholdError {
    #[error("parameters out of range: {0}")]
    OutOfRange(&'static str),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("interval evaluation failed: {0}")]
    Interval(#[from] IntervalError),
    #[error("K₅ enclosure is not positive; cannot place the Young weight J")]
    K5NotPositive,
}

/// Critical exponent (n+2)/(n−2).
pub fn critical_p(n: i64) -> Rational {
    rat(n + 2, n - 2)
}

/// Left edge of the window where M₂ > 0: (n+2)/(n−2) − 1/n².
pub fn window_edge(n: i64) -> Rational {
    critical_p(n) - rat(1, n * n)
}

/// The classical upper threshold
/// M_C = ((p−1)/(p+1))^{(p−1)/(p+1)} · (n(p+1)²/(4p))^{p/(p+1)}.
pub fn classical_bound(
    n: i64,
    p: &Rational,
    precision: u32,
) -> Result<RatInterval, ThresholdError> {
    if *p <= Rational::one() {
        return Err(ThresholdError::OutOfRange("requires p > 1"));
    }
    let p1 = p + Rational::one();
    let e1 = (p - Rational::one()) / &p1;
    let f1 = interval_pow(&RatInterval::point(e1.clone()), &e1, precision)?;
    let base2 = int(n) * &p1 * &p1 / (int(4) * p);
    let f2 = interval_pow(&RatInterval::point(base2), &(p / &p1), precision)?;
    Ok(&f1 * &f2)
}

#[derive(Debug, Clone, PartialEq)]
pub enum M1 {
    /// No upper restriction: every M > 0 is covered (3 ≤ n ≤ 6).
    Infinite,
    Finite(RatInterval),
}

/// Upper threshold M₁ = (p+1)·[(n−1)²q/(4n) − 1]⁻¹·[n/q − n(n−1)/(n+2)]^{q/2}
/// for n ≥ 7. For 3 ≤ n ≤ 6 the direct multiplier check (`small_n_verify`)
/// closes the argument for every M, so M₁ = ∞ there.
pub fn m1(n: i64, p: &Rational, precision: u32) -> Result<M1, ThresholdError> {
    let q = critical_q(p);
    check_m1_range(n, p, &q)?;
    if n <= 6 {
        return Ok(M1::Infinite);
    }
    let gate = rat((n - 1) * (n - 1), 4 * n) * &q - Rational::one();
    // (n−1)²/(4n) ≥ 9/7 for n ≥ 7 and q > 1, so the bracket is positive.
    assert!(gate.is_positive());
    let base = rat(n, 1) / &q - rat(n * (n - 1), n + 2);
    let pow = interval_pow(&RatInterval::point(base), &(&q / int(2)), precision)?;
    let scale = RatInterval::point((p + Rational::one()) / gate);
    Ok(M1::Finite(&scale * &pow))
}

/// M₁ in the unreduced form that falls straight out of the derivation:
/// (q/n)^{1/(p+1)}·(p+1)·p^{−p/(p+1)}·[(n−1)²q²/(4n²) − q/n]⁻¹·
/// [p − (n−1)pq/(n+2)]^{p/(p+1)}. Serves as an independent route for `m1`.
pub fn m1_unreduced(n: i64, p: &Rational, precision: u32) -> Result<M1, ThresholdError> {
    let q = critical_q(p);
    check_m1_range(n, p, &q)?;
    if n <= 6 {
        return Ok(M1::Infinite);
    }
    let gate = rat((n - 1) * (n - 1), 4 * n * n) * &q * &q - &q / int(n);
    assert!(gate.is_positive());
    let p1 = p + Rational::one();
    let f1 = interval_pow(
        &RatInterval::point(&q / int(n)),
        &p1.recip(),
        precision,
    )?;
    let f2 = interval_pow(&RatInterval::point(p.clone()), &(-p / &p1), precision)?;
    let base = p - rat(n - 1, n + 2) * p * &q;
    let f3 = interval_pow(&RatInterval::point(base), &(p / &p1), precision)?;
    let scale = RatInterval::point(&p1 / gate);
    Ok(M1::Finite(&(&(&f1 * &f2) * &f3) * &scale))
}

fn check_m1_range(n: i64, p: &Rational, q: &Rational) -> Result<(), ThresholdError> {
    if n < 3 {
        return Err(ThresholdError::OutOfRange("requires n ≥ 3"));
    }
    if *p <= Rational::one() || *p > critical_p(n) {
        return Err(ThresholdError::OutOfRange("requires 1 < p ≤ (n+2)/(n−2)"));
    }
    // base n/q − n(n−1)/(n+2) > 0 ⟺ q < (n+2)/(n−1), automatic here
    debug_assert!(q < &rat(n + 2, n - 1));
    Ok(())
}

/// Discriminant of K₃ as a quadratic in U, exact in ℚ(√Δ'):
/// Δ = 1 − q(γ+q)/(B₀(1+γS+qS)²), in the γ = n−4, ε = 0 frame.
pub fn discriminant_delta(n: i64, p: &Rational) -> Result<Exact, ThresholdError> {
    let frame = Frame::high_dim(n, p, &Rational::zero())?;
    let coeffs = frame.coefficients()?;
    let one = Exact::from_int(1);
    let one_gqs = one
        .add(&frame.s.scale(&frame.gamma))
        .add(&frame.s.scale(&frame.q));
    let ratio = Exact::from_rat(&(&frame.q * (&frame.gamma + &frame.q)))
        .div(&coeffs.b0.mul(&one_gqs.square()));
    Ok(one.sub(&ratio))
}

/// U₀ := 2B₀(1+γS+qS)²/(γ+q)² · [1 − (1−2/n)/√2], as an enclosure (the two
/// radicands √Δ' and √2 live in different quadratic fields).
pub fn u0(n: i64, p: &Rational, precision: u32) -> Result<RatInterval, ThresholdError> {
    let frame = Frame::high_dim(n, p, &Rational::zero())?;
    let coeffs = frame.coefficients_in(&frame.s_enclosure(precision));
    let s = frame.s_enclosure(precision);
    let one = RatInterval::point(Rational::one());
    let one_gqs = one.add(&s.scale(&frame.gamma)).add(&s.scale(&frame.q));
    let sqrt2 = RatInterval::point(int(2)).sqrt(precision)?;
    let bracket = one.sub(
        &RatInterval::point(Rational::one() - rat(2, n))
            .div(&sqrt2)
            .map_err(ThresholdError::Interval)?,
    );
    let scale = int(2) / ((&frame.gamma + &frame.q) * (&frame.gamma + &frame.q));
    Ok(coeffs
        .b0
        .mul(&one_gqs.square())
        .scale(&scale)
        .mul(&bracket)
        .round_out(precision))
}

/// Everything the M₂ construction needs to know about U₀ in one report.
#[derive(Debug, Clone)]
pub struct U0Report {
    pub u0: RatInterval,
    /// K₃ evaluated at U = U₀ (positive ⟺ U₁ < U₀ < U₂ by concavity in U).
    pub k3_at_u0: RatInterval,
    pub delta: Exact,
    pub delta_positive: bool,
    pub between_roots: bool,
}

pub fn u0_report(n: i64, p: &Rational, precision: u32) -> Result<U0Report, ThresholdError> {
    let frame = Frame::high_dim(n, p, &Rational::zero())?;
    let delta = discriminant_delta(n, p)?;
    let u = u0(n, p, precision)?;
    let k = k_interval(&frame, &RatInterval::point(Rational::zero()), &u, precision);
    let k3 = k.k3.clone();
    // K₃(U) is concave in U with K₃(0) = c₂ < 0, so two positive roots exist
    // exactly when Δ > 0, and positivity at U₀ certifies U₁ < U₀ < U₂.
    let delta_positive = delta.sign() > 0;
    let between_roots = delta_positive && k3.is_positive();
    Ok(U0Report {
        u0: u,
        k3_at_u0: k3,
        delta,
        delta_positive,
        between_roots,
    })
}

/// K-set over intervals in the γ = n−4 frame at multipliers (P, T=t, U=u).
fn k_interval(
    frame: &Frame,
    p_mult: &RatInterval,
    u: &RatInterval,
    precision: u32,
) -> KSet<RatInterval> {
    let s = frame.s_enclosure(precision);
    let coeffs = frame.coefficients_in(&s);
    let m = Multipliers {
        p: p_mult.clone(),
        t: RatInterval::point(Rational::zero()),
        u: u.clone(),
    };
    k_set(&frame.gamma, &frame.alpha, &frame.p, &frame.q, &coeffs, &s, &m)
}

#[derive(Debug, Clone, PartialEq)]
pub enum M2 {
    /// p below the window: the P < 0 choice already closes the argument.
    Zero,
    Finite(RatInterval),
}

/// Lower threshold M₂ for n ≥ 7. Zero below the p-window; otherwise
/// M₂ = P^{q/2}(q/2)^{q/2}(J·2/(2−q))^{−(2−q)/2}(−q/(γ+q) + U₀)^{−q/2},
/// where the Young weight J is placed just below the K₅ budget:
/// PJ = (1 − 10⁻⁶)·K₅.
pub fn m2(n: i64, p: &Rational, precision: u32) -> Result<M2, ThresholdError> {
    if n < 7 {
        return Err(ThresholdError::OutOfRange("M₂ threshold applies for n ≥ 7"));
    }
    if *p <= Rational::one() || *p > critical_p(n) {
        return Err(ThresholdError::OutOfRange("requires 1 < p ≤ (n+2)/(n−2)"));
    }
    let p_shift = p - window_edge(n);
    if !p_shift.is_positive() {
        return Ok(M2::Zero);
    }
    let frame = Frame::high_dim(n, p, &Rational::zero())?;
    let q = &frame.q;
    let report = u0_report(n, p, precision)?;
    if !report.between_roots {
        return Err(ThresholdError::OutOfRange("U₀ does not separate the K₃ roots"));
    }
    let k = k_interval(
        &frame,
        &RatInterval::point(p_shift.clone()),
        &report.u0,
        precision,
    );
    if !k.k5.is_positive() {
        return Err(ThresholdError::K5NotPositive);
    }
    // PJ = (1 − 10⁻⁶)·K₅ keeps K₅ − PJ > 0 with the entire budget spent.
    // With the product PJ fixed, M₂ = P^{q/2}(q/2)^{q/2}(J·2/(2−q))^{−(2−q)/2}·
    // tail^{−q/2} rewrites as P·(q/2)^{q/2}(PJ·2/(2−q))^{−(2−q)/2}·tail^{−q/2}.
    let pj = k.k5.scale(&(Rational::one() - rat(1, 1_000_000)));
    let half_q = q / int(2);
    let f1 = RatInterval::point(p_shift);
    let f2 = interval_pow(&RatInterval::point(half_q.clone()), &half_q, precision)?;
    let two_minus_q = int(2) - q;
    let f3 = interval_pow(
        &pj.scale(&(int(2) / &two_minus_q)),
        &(-&two_minus_q / int(2)),
        precision,
    )?;
    let tail = RatInterval::point(-q / (&frame.gamma + q)).add(&report.u0);
    if !tail.is_positive() {
        return Err(ThresholdError::OutOfRange("U₀ − q/(γ+q) is not positive"));
    }
    let f4 = interval_pow(&tail, &(-half_q), precision)?;
    Ok(M2::Finite(
        (&(&f1 * &f2) * &(&f3 * &f4)).round_out(precision),
    ))
}

/// Outcome of the direct small-dimension check (γ = 0 frame).
#[derive(Debug, Clone)]
pub struct SmallNReport {
    pub n: i64,
    pub u: Rational,
    pub k3: Rational,
    pub k5: Rational,
    /// K₃ ≥ ε₀ (exact).
    pub k3_ok: bool,
    /// K₅ ≥ √ε₀, decided exactly as K₅ > 0 ∧ K₅² ≥ ε₀.
    pub k5_ok: bool,
}

impl SmallNReport {
    pub fn both_hold(&self) -> bool {
        self.k3_ok && self.k5_ok
    }
}

/// The canonical multiplier choice U = 1 + q/n (n ≤ 4) or 1 + 2q/n (n ≥ 5).
pub fn small_n_default_u(n: i64, q: &Rational) -> Rational {
    if n <= 4 {
        Rational::one() + q / int(n)
    } else {
        Rational::one() + int(2) * q / int(n)
    }
}

/// Checks K₃ ≥ ε₀ and K₅ ≥ √ε₀ in the γ = 0 frame with multiplier `u`;
/// everything is rational, so the verdicts are exact. These two conditions
/// hold for 3 ≤ n ≤ 6 (making the upper threshold infinite) and fail for
/// n ≥ 7.
pub fn small_n_verify(n: i64, p: &Rational, eps0: &Rational, u: &Rational) -> SmallNReport {
    assert!(eps0.is_positive());
    let frame = Frame::gradient_free(n, p, eps0, &Rational::zero());
    let coeffs = coefficient_set(
        n,
        &frame.gamma,
        &frame.alpha,
        p,
        &frame.q,
        &Rational::zero(),
        &rat(1, n),
    );
    let t = int(9) * eps0 / (&frame.alpha + p);
    let m = Multipliers {
        p: eps0.clone(),
        t,
        u: u.clone(),
    };
    let k = k_set(
        &frame.gamma,
        &frame.alpha,
        p,
        &frame.q,
        &coeffs,
        &rat(1, n),
        &m,
    );
    let k3_ok = &k.k3 >= eps0;
    let k5_ok = k.k5.is_positive() && &k.k5 * &k.k5 >= *eps0;
    SmallNReport {
        n,
        u: u.clone(),
        k3: k.k3,
        k5: k.k5,
        k3_ok,
        k5_ok,
    }
}

/// H(p) = 4B₀L²·K₁ in the γ = n−4, ε = 0, P = 0 frame — positive iff K₁ is.
/// Exact in ℚ(√Δ').
pub fn h_value(n: i64, p: &Rational) -> Result<Exact, ThresholdError> {
    let frame = Frame::high_dim(n, p, &Rational::zero())?;
    let coeffs = frame.coefficients()?;
    let zero = Exact::from_int(0);
    let m = Multipliers {
        p: zero.clone(),
        t: zero.clone(),
        u: zero,
    };
    let k = k_set(
        &frame.gamma,
        &frame.alpha,
        p,
        &frame.q,
        &coeffs,
        &frame.s,
        &m,
    );
    let one = Exact::from_int(1);
    let l = one
        .add(&frame.s.scale(&frame.gamma))
        .add(&frame.s.scale(&int(2)));
    Ok(k.k1.mul(&coeffs.b0.scale(&int(4))).mul(&l.square()))
}

/// Closed-form certificate for H at p = (n+2)/(n−2) − 1/n²:
/// (n−1)n⁴·H = −88n⁴ + 327n³ − 251n² + 24n + 4 + √Δ'·8n(8n²−9n+2).
pub fn h_certificate(n: i64) -> Exact {
    let d = int((n - 2) * (2 * n - 6));
    Exact::quad(QuadExt::new(
        int(-88 * n * n * n * n + 327 * n * n * n - 251 * n * n + 24 * n + 4),
        int(8 * n * (8 * n * n - 9 * n + 2)),
        d,
    ))
    .scale(&rat(1, (n - 1) * n * n * n * n))
}

/// M₂ < M₁ on a p-grid through the window where M₂ > 0, by separating the
/// two enclosures. Returns the worst (smallest) gap lower bound found.
pub fn m2_lt_m1(
    n: i64,
    grid_points: usize,
    precision: u32,
) -> Result<Rational, ThresholdError> {
    assert!(grid_points >= 2);
    let lo = window_edge(n);
    let hi = critical_p(n);
    let step = (&hi - &lo) / int(grid_points as i64 - 1);
    let mut worst: Option<Rational> = None;
    for i in 0..grid_points {
        let p = &lo + &step * int(i as i64);
        let m1v = match m1(n, &p, precision)? {
            M1::Infinite => continue,
            M1::Finite(v) => v,
        };
        let m2v = match m2(n, &p, precision)? {
            M2::Zero => RatInterval::point(Rational::zero()),
            M2::Finite(v) => v,
        };
        if !m2v.certainly_below(&m1v) {
            return Err(ThresholdError::OutOfRange(
                "M₂ and M₁ enclosures failed to separate",
            ));
        }
        let gap = &m1v.lo - &m2v.hi;
        worst = Some(match worst {
            Some(w) => w.min(gap),
            None => gap,
        });
    }
    Ok(worst.expect("grid is nonempty"))
}

/// Root-isolation certificate for the cubic 0.6n³ + 4n² + 3n − 2 > 0 that
/// closes the M₂ < M₁ comparison in the supercritical window (certified on
/// the whole ray [8, ∞) where the comparison is invoked).
pub fn closing_polynomial_positive() -> bool {
    let cubic = UniPoly::new(vec![int(-2), int(3), int(4), rat(6, 10)]);
    matches!(
        positive_on_ray(&cubic, &int(8)),
        SignCertificate::Positive
    )
}
