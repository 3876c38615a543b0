//! Radial shooting for Δv + N vᵖ + M|∇v|^q = 0.
//!
//! For radial profiles the equation reduces to
//! v″ = −(n−1)v′/r − N vᵖ − M|v′|^q with v′(0) = 0 and v″(0) = −N vᵖ(0)/n.
//! Integrating from a regularized origin classifies each initial height as
//! crossing zero at a finite radius, decaying, or inconclusive — numerical
//! corroboration of the nonexistence theorems, never a proof. The scaling
//! v ↦ k^{2/(p−1)} v(kx) is an exact symmetry of the equation at the critical
//! gradient exponent q = 2p/(p+1) and is tested as such.

/// One shot: dimension, exponents, coefficients and integration policy.
/// The source coefficient N is fixed to 1 (it can be scaled into the height).
#[derive(Debug, Clone)]
pub struct ShotConfig {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub m: f64,
    /// Initial height a = v(0) > 0.
    pub a: f64,
    pub r_max: f64,
    /// Local relative error target per step.
    pub tol: f64,
}

impl ShotConfig {
    /// Critical-q configuration: q = 2p/(p+1).
    pub fn critical(n: usize, p: f64, m: f64, a: f64) -> Self {
        assert!(n >= 3 && p > 1.0 && a > 0.0);
        ShotConfig {
            n,
            p,
            q: 2.0 * p / (p + 1.0),
            m,
            a,
            r_max: 50.0,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// v changes sign; radius polished to 10⁻¹⁰.
    Crossed { r0: f64 },
    /// v > 0, |v′| < 10⁻⁸ and v < 10⁻⁶ at r_max.
    Decayed { v_end: f64 },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    /// (r, v, v′) at every accepted step, strictly increasing in r.
    pub samples: Vec<(f64, f64, f64)>,
    pub classification: Classification,
    pub steps: usize,
}

impl Trajectory {
    /// v is non-increasing while positive (v″(0) < 0 and the drift keeps
    /// v′ ≤ 0 until the sign change).
    pub fn monotone_while_positive(&self) -> bool {
        self.samples
            .windows(2)
            .all(|w| w[0].1 <= 0.0 || w[1].1 <= w[0].1 + 1e-12)
    }
}

fn rhs(cfg: &ShotConfig, r: f64, v: f64, w: f64) -> (f64, f64) {
    let source = v.max(0.0).powf(cfg.p);
    (
        w,
        -(cfg.n as f64 - 1.0) * w / r - source - cfg.m * w.abs().powf(cfg.q),
    )
}

/// One classical RK4 step (used for the short polishing sub-steps).
fn rk4_step(cfg: &ShotConfig, r: f64, v: f64, w: f64, h: f64) -> (f64, f64) {
    let (k1v, k1w) = rhs(cfg, r, v, w);
    let (k2v, k2w) = rhs(cfg, r + h / 2.0, v + h / 2.0 * k1v, w + h / 2.0 * k1w);
    let (k3v, k3w) = rhs(cfg, r + h / 2.0, v + h / 2.0 * k2v, w + h / 2.0 * k2w);
    let (k4v, k4w) = rhs(cfg, r + h, v + h * k3v, w + h * k3w);
    (
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
    )
}

/// Embedded Cash–Karp 4(5) step: returns (v, w, error estimate).
fn ck45_step(cfg: &ShotConfig, r: f64, v: f64, w: f64, h: f64) -> (f64, f64, f64) {
    const A: [f64; 5] = [1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0];
    const B: [[f64; 5]; 5] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
        [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const C5: [f64; 6] = [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ];
    const C4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ];
    let mut kv = [0.0f64; 6];
    let mut kw = [0.0f64; 6];
    let (v0, w0) = rhs(cfg, r, v, w);
    kv[0] = v0;
    kw[0] = w0;
    for i in 1..6 {
        let mut dv = 0.0;
        let mut dw = 0.0;
        for j in 0..i {
            dv += B[i - 1][j] * kv[j];
            dw += B[i - 1][j] * kw[j];
        }
        let (fv, fw) = rhs(cfg, r + A[i - 1] * h, v + h * dv, w + h * dw);
        kv[i] = fv;
        kw[i] = fw;
    }
    let sum = |c: &[f64; 6], k: &[f64; 6]| -> f64 { (0..6).map(|i| c[i] * k[i]).sum() };
    let v5 = v + h * sum(&C5, &kv);
    let w5 = w + h * sum(&C5, &kw);
    let v4 = v + h * sum(&C4, &kv);
    let w4 = w + h * sum(&C4, &kw);
    let scale = 1.0 + v.abs().max(w.abs());
    let err = ((v5 - v4).abs().max((w5 - w4).abs())) / scale;
    (v5, w5, err)
}

/// Integrates a single trajectory from the Taylor start at r₀ = 10⁻⁶.
pub fn shoot(cfg: &ShotConfig) -> Trajectory {
    assert!(cfg.a > 0.0 && cfg.r_max > 0.0);
    let n = cfg.n as f64;
    let r0 = 1e-6;
    // v ≈ a − (aᵖ/2n) r², v′ ≈ −(aᵖ/n) r near the (regular) origin.
    let mut r = r0;
    let mut v = cfg.a - cfg.a.powf(cfg.p) / (2.0 * n) * r0 * r0;
    let mut w = -cfg.a.powf(cfg.p) / n * r0;
    let mut h = 1e-4f64;
    let mut samples = vec![(r, v, w)];
    let mut steps = 0usize;

    while r < cfg.r_max {
        h = h.min(cfg.r_max - r);
        let (v1, w1, err) = ck45_step(cfg, r, v, w, h);
        steps += 1;
        if steps > 2_000_000 {
            return Trajectory {
                samples,
                classification: Classification::Inconclusive {
                    reason: "step budget exhausted".into(),
                },
                steps,
            };
        }
        if err > cfg.tol {
            let shrink = 0.9 * (cfg.tol / err).powf(0.25);
            h *= shrink.max(0.2);
            if h < 1e-13 * (1.0 + r) {
                return Trajectory {
                    samples,
                    classification: Classification::Inconclusive {
                        reason: "step-size underflow".into(),
                    },
                    steps,
                };
            }
            continue;
        }
        if v > 0.0 && v1 <= 0.0 {
            // Bracketed sign change: polish the crossing radius by bisecting
            // the sub-step length (one RK4 step is ample at this scale).
            let (mut lo, mut hi) = (0.0f64, h);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let (vm, _) = rk4_step(cfg, r, v, w, mid);
                if vm > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-10 {
                    break;
                }
            }
            let r_cross = r + 0.5 * (lo + hi);
            samples.push((r_cross, 0.0, w));
            return Trajectory {
                samples,
                classification: Classification::Crossed { r0: r_cross },
                steps,
            };
        }
        r += h;
        v = v1;
        w = w1;
        samples.push((r, v, w));
        if err > 0.0 {
            let grow = 0.9 * (cfg.tol / err).powf(0.2);
            h *= grow.clamp(0.2, 5.0);
        } else {
            h *= 5.0;
        }
    }

    let classification = if v > 0.0 && w.abs() < 1e-8 && v < 1e-6 {
        Classification::Decayed { v_end: v }
    } else {
        Classification::Inconclusive {
            reason: format!("reached r_max with v = {v:.3e}, v' = {w:.3e}"),
        }
    };
    Trajectory {
        samples,
        classification,
        steps,
    }
}

/// Integrates once and returns (v, v′) at each requested radius (sorted,
/// all below the first crossing).
pub fn eval_at(cfg: &ShotConfig, radii: &[f64]) -> Vec<(f64, f64)> {
    let n = cfg.n as f64;
    let mut r = 1e-6;
    let mut v = cfg.a - cfg.a.powf(cfg.p) / (2.0 * n) * r * r;
    let mut w = -cfg.a.powf(cfg.p) / n * r;
    let mut h = 1e-4f64;
    let mut out = Vec::with_capacity(radii.len());
    for &target in radii {
        assert!(target > r, "radii must be increasing and beyond the start");
        while r < target {
            h = h.min(target - r);
            let (v1, w1, err) = ck45_step(cfg, r, v, w, h);
            if err > cfg.tol {
                h *= (0.9 * (cfg.tol / err).powf(0.25)).max(0.2);
                continue;
            }
            r += h;
            v = v1;
            w = w1;
            if err > 0.0 {
                h *= (0.9 * (cfg.tol / err).powf(0.2)).clamp(0.2, 5.0);
            } else {
                h *= 5.0;
            }
        }
        out.push((v, w));
    }
    out
}

/// Sup-norm relative mismatch between the shot at height k^{2/(p−1)}·a and
/// the pointwise-rescaled original trajectory, compared on a grid where both
/// profiles stay positive. Zero (to integration accuracy) exactly when
/// q = 2p/(p+1).
pub fn scaling_check(cfg: &ShotConfig, k: f64) -> f64 {
    assert!(k > 0.0);
    let mexp = 2.0 / (cfg.p - 1.0);
    let mut scaled_cfg = cfg.clone();
    scaled_cfg.a = k.powf(mexp) * cfg.a;

    // stay below the first crossing of both profiles
    let base = shoot(cfg);
    let r_safe_base = match base.classification {
        Classification::Crossed { r0 } => 0.8 * r0,
        _ => cfg.r_max,
    };
    let scaled_shot = shoot(&scaled_cfg);
    let r_safe_scaled = match scaled_shot.classification {
        Classification::Crossed { r0 } => 0.8 * r0,
        _ => scaled_cfg.r_max,
    };
    let r_hi = (r_safe_base / k).min(r_safe_scaled).min(cfg.r_max / k);
    let grid: Vec<f64> = (1..=32).map(|i| 1e-3 + (r_hi - 1e-3) * i as f64 / 32.0).collect();
    let grid_k: Vec<f64> = grid.iter().map(|r| k * r).collect();

    let original = eval_at(cfg, &grid_k);
    let scaled = eval_at(&scaled_cfg, &grid);
    original
        .iter()
        .zip(&scaled)
        .map(|((v1, _), (v2, _))| {
            let expect = k.powf(mexp) * v1;
            (v2 - expect).abs() / (1.0 + expect.abs() + v2.abs())
        })
        .fold(0.0, f64::max)
}

/// Classification table over initial heights. At the critical q the scaling
/// symmetry forces one class for every height; `uniform` records whether the
/// runs agree.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<(f64, Classification)>,
    pub uniform: bool,
}

pub fn sweep(n: usize, p: f64, m: f64, heights: &[f64], r_max: f64) -> SweepResult {
    assert!(heights.iter().all(|a| *a > 0.0 && a.is_finite()));
    let rows: Vec<(f64, Classification)> = heights
        .iter()
        .map(|&a| {
            let mut cfg = ShotConfig::critical(n, p, m, a);
            cfg.r_max = r_max;
            (a, shoot(&cfg).classification)
        })
        .collect();
    let label = |c: &Classification| match c {
        Classification::Crossed { .. } => 0u8,
        Classification::Decayed { .. } => 1,
        Classification::Inconclusive { .. } => 2,
    };
    let uniform = rows
        .windows(2)
        .all(|w| label(&w[0].1) == label(&w[1].1));
    SweepResult { rows, uniform }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_explicit_critical_solution() {
        // n = 3, p = 5, M = 0: u(r) = 3^{1/4}(1 + r²)^{−1/2} solves
        // Δu + u⁵ = 0 with u(0) = 3^{1/4}.
        let a = 3.0f64.powf(0.25);
        let mut cfg = ShotConfig::critical(3, 5.0, 0.0, a);
        cfg.r_max = 10.0;
        let traj = shoot(&cfg);
        let mut sup = 0.0f64;
        for &(r, v, _) in &traj.samples {
            let exact = a / (1.0 + r * r).sqrt();
            sup = sup.max((v - exact).abs());
        }
        assert!(sup < 1e-6, "sup-norm error {sup:.3e}");
        assert!(traj.monotone_while_positive());
    }

    #[test]
    fn gradient_term_forces_crossing() {
        let traj = shoot(&ShotConfig::critical(5, 2.0, 1.0, 1.0));
        assert!(
            matches!(traj.classification, Classification::Crossed { r0 } if r0.is_finite()),
            "{:?}",
            traj.classification
        );
        assert!(traj.monotone_while_positive());
    }

    #[test]
    fn lane_emden_subcritical_crosses() {
        let traj = shoot(&ShotConfig::critical(3, 2.0, 0.0, 1.0));
        assert!(matches!(traj.classification, Classification::Crossed { .. }));
    }

    #[test]
    fn crossing_radius_converges_under_refinement() {
        let mut cfg = ShotConfig::critical(5, 2.0, 1.0, 1.0);
        let r_a = match shoot(&cfg).classification {
            Classification::Crossed { r0 } => r0,
            other => panic!("{other:?}"),
        };
        cfg.tol /= 2.0;
        let r_b = match shoot(&cfg).classification {
            Classification::Crossed { r0 } => r0,
            other => panic!("{other:?}"),
        };
        assert!((r_a - r_b).abs() < 10.0 * 1e-10 + 1e-8, "{r_a} vs {r_b}");
    }

    #[test]
    fn scaling_symmetry_at_critical_q() {
        let cfg = ShotConfig::critical(5, 2.0, 1.0, 1.0);
        assert!(scaling_check(&cfg, 1.0) < 1e-12);
        let res = scaling_check(&cfg, 2.0);
        assert!(res < 1e-6, "critical-q residual {res:.3e}");
        // negative control: perturb q
        let mut broken = cfg.clone();
        broken.q += 0.05;
        let res_broken = scaling_check(&broken, 2.0);
        assert!(res_broken > 1e-3, "expected broken invariance, got {res_broken:.3e}");
    }

    #[test]
    fn sweeps_are_height_uniform() {
        let heights: Vec<f64> = (0..10).map(|i| 0.1 * 10.0f64.powf(i as f64 / 4.5)).collect();
        for (n, p, m) in [(5, 2.0, 1.0), (7, 1.8, 4.0), (7, 1.8, 0.5)] {
            let result = sweep(n, p, m, &heights, 200.0);
            assert!(result.uniform, "({n},{p},{m}): {:?}", result.rows);
            assert!(
                result
                    .rows
                    .iter()
                    .all(|(_, c)| matches!(c, Classification::Crossed { .. })),
                "({n},{p},{m}): {:?}",
                result.rows
            );
        }
    }
}
