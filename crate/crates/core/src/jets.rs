//! Pointwise verification of the differential identities behind the master
//! inequality.
//!
//! Every identity used downstream is an algebraic statement about the value,
//! gradient, Hessian and third derivatives of a positive function at a single
//! point, written in an adapted frame where the gradient points along the
//! first axis. This module samples random third-order jets (optionally
//! constrained to satisfy the PDE and its first derivative at the point),
//! expands all divergence terms by the chain rule, and checks each identity
//! to numerical zero. An independent oracle re-derives every divergence value
//! by central differences on an explicit cubic test function.

use crate::coeffs::{coefficient_set, CoefficientSet, Frame};
use crate::exact::{rat, to_f64, Rational};
use num_traits::Zero;

/// Splitmix64: the per-trial seed stream. Standard constants; state advances
/// by the golden-ratio increment and each output is finalized independently,
/// so per-trial seeds may be consumed in any order.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [−1, 1].
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }
}

/// Third-order jet of a positive function at a point, in the adapted frame:
/// gradient = (g, 0, …, 0) with g = |∇v| > 0.
#[derive(Debug, Clone)]
pub struct Jet3 {
    pub n: usize,
    pub v: f64,
    pub g: f64,
    hess: Vec<f64>,
    third: Vec<f64>,
}

impl Jet3 {
    fn empty(n: usize) -> Self {
        Jet3 {
            n,
            v: 1.0,
            g: 1.0,
            hess: vec![0.0; n * n],
            third: vec![0.0; n * n * n],
        }
    }

    pub fn grad(&self, i: usize) -> f64 {
        if i == 0 {
            self.g
        } else {
            0.0
        }
    }

    pub fn h(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.n + j]
    }

    fn set_h(&mut self, i: usize, j: usize, x: f64) {
        self.hess[i * self.n + j] = x;
        self.hess[j * self.n + i] = x;
    }

    pub fn t(&self, i: usize, j: usize, k: usize) -> f64 {
        self.third[(i * self.n + j) * self.n + k]
    }

    fn set_t(&mut self, i: usize, j: usize, k: usize, x: f64) {
        let n = self.n;
        let mut idx = [i, j, k];
        idx.sort_unstable();
        let [a, b, c] = idx;
        for (p, q, r) in [
            (a, b, c),
            (a, c, b),
            (b, a, c),
            (b, c, a),
            (c, a, b),
            (c, b, a),
        ] {
            self.third[(p * n + q) * n + r] = x;
        }
    }

    pub fn laplacian(&self) -> f64 {
        (0..self.n).map(|i| self.h(i, i)).sum()
    }

    /// Σ_k v_kkj, the trace of the third derivative in direction j.
    pub fn third_trace(&self, j: usize) -> f64 {
        (0..self.n).map(|k| self.t(k, k, j)).sum()
    }

    pub fn g11(&self, s: f64) -> f64 {
        self.h(0, 0) - s * self.laplacian()
    }

    /// G_ij for i + j > 2 in 1-based labels, i.e. any entry except (0,0).
    pub fn g_off(&self, i: usize, j: usize, q_diag: f64) -> f64 {
        assert!(i + j > 0);
        if i == j {
            self.h(i, i) - q_diag * self.laplacian()
        } else {
            self.h(i, j)
        }
    }

    pub fn e(&self, i: usize, j: usize) -> f64 {
        let kron = if i == j { self.laplacian() / self.n as f64 } else { 0.0 };
        self.h(i, j) - kron
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetMode {
    Free,
    PdeConstrained,
}

/// Problem and frame data needed to evaluate the identities numerically.
#[derive(Debug, Clone)]
pub struct LabConfig {
    pub frame: Frame,
    /// N, the source coefficient.
    pub n_coef: f64,
    /// M, the gradient-term coefficient.
    pub m_coef: f64,
}

impl LabConfig {
    pub fn new(frame: Frame, n_coef: f64, m_coef: f64) -> Self {
        LabConfig {
            frame,
            n_coef,
            m_coef,
        }
    }

    pub fn alpha(&self) -> f64 {
        to_f64(&self.frame.alpha)
    }

    pub fn gamma(&self) -> f64 {
        to_f64(&self.frame.gamma)
    }

    pub fn p(&self) -> f64 {
        to_f64(&self.frame.p)
    }

    pub fn q(&self) -> f64 {
        to_f64(&self.frame.q)
    }

    pub fn eps(&self) -> f64 {
        to_f64(&self.frame.eps)
    }

    pub fn s(&self) -> f64 {
        self.frame.s.to_f64()
    }

    pub fn q_diag(&self) -> f64 {
        (1.0 - self.s()) / (self.frame.n - 1) as f64
    }

    /// L = 1 + γS + 2S.
    pub fn l(&self) -> f64 {
        1.0 + self.gamma() * self.s() + 2.0 * self.s()
    }

    /// D = 1 − S² + γS − γS² − (n−1)Q².
    pub fn d(&self) -> f64 {
        let s = self.s();
        let q = self.q_diag();
        1.0 - s * s + self.gamma() * s - self.gamma() * s * s
            - (self.frame.n - 1) as f64 * q * q
    }

    pub fn coefficients_f64(&self) -> CoefficientSet<f64> {
        coefficient_set(
            self.frame.n,
            &self.frame.gamma,
            &self.frame.alpha,
            &self.frame.p,
            &self.frame.q,
            &self.frame.eps,
            &self.s(),
        )
    }
}

/// Samples a jet. Entries are uniform in [−1, 1]; v and |∇v| live in
/// [0.5, 1.5]. In PDE-constrained mode the entry v₁₁ is solved from
/// Δv = −N vᵖ − M gᵠ and the third-order traces Σ_k v_kkj from the
/// differentiated equation Σ_k v_kkj = −pN v^{p−1} v_j − qM g^{q−2} Σ_k v_k v_kj.
pub fn sample_jet(seed: u64, n: usize, mode: JetMode, cfg: &LabConfig) -> Jet3 {
    assert!(n >= 3);
    let mut rng = SplitMix64::new(seed);
    let mut jet = Jet3::empty(n);
    jet.v = 0.5 + rng.unit();
    jet.g = 0.5 + rng.unit();
    for i in 0..n {
        for j in i..n {
            let x = rng.symmetric();
            jet.set_h(i, j, x);
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let x = rng.symmetric();
                jet.set_t(i, j, k, x);
            }
        }
    }
    if mode == JetMode::PdeConstrained {
        let (p, q) = (cfg.p(), cfg.q());
        let (nn, m) = (cfg.n_coef, cfg.m_coef);
        // Trace constraint: v₁₁ = −N vᵖ − M gᵠ − Σ_{i>1} v_ii.
        let rest: f64 = (1..n).map(|i| jet.h(i, i)).sum();
        jet.set_h(0, 0, -nn * jet.v.powf(p) - m * jet.g.powf(q) - rest);
        // Differentiated equation, adapted frame: v_j = g δ_{1j} and
        // Σ_k v_k v_kj = g v_1j, so the j-th trace target is
        // −pN v^{p−1} g δ_{1j} − qM g^{q−1} v_1j. Solve the (1,1,j) entry for
        // j = n..2 first (each appears in exactly one trace), then (1,1,1).
        let target = |jet: &Jet3, j: usize| -> f64 {
            let drive = if j == 0 {
                -p * nn * jet.v.powf(p - 1.0) * jet.g
            } else {
                0.0
            };
            drive - q * m * jet.g.powf(q - 1.0) * jet.h(0, j)
        };
        for j in (1..n).rev() {
            let rest: f64 = (1..n).map(|k| jet.t(k, k, j)).sum();
            jet.set_t(0, 0, j, target(&jet, j) - rest);
        }
        let rest: f64 = (1..n).map(|k| jet.t(k, k, 0)).sum();
        jet.set_t(0, 0, 0, target(&jet, 0) - rest);
    }
    jet
}

/// The chain-rule expansions of every divergence term, evaluated at the point.
#[derive(Debug, Clone)]
pub struct DivergenceBundle {
    /// A = (v^α |∇v|^γ Δv v_i)_i.
    pub a_term: f64,
    /// (v^α |∇v|^γ E_ij v_j)_i.
    pub e_flux: f64,
    /// (v^{α−1} |∇v|^{γ+2} v_i)_i.
    pub grad_flux: f64,
    /// (v^α |∇v|^{γ+q} v_i)_i.
    pub mixed_flux: f64,
    /// (v^{α+p} |∇v|^γ v_i)_i.
    pub source_flux: f64,
    /// W, the aggregate divergence of the master identity.
    pub w: f64,
}

pub fn divergence_bundle(jet: &Jet3, cfg: &LabConfig) -> DivergenceBundle {
    let (v, g, n) = (jet.v, jet.g, jet.n as f64);
    let (al, ga, p, q) = (cfg.alpha(), cfg.gamma(), cfg.p(), cfg.q());
    let lap = jet.laplacian();
    let v11 = jet.h(0, 0);
    let t1 = jet.third_trace(0);

    let a_term = al * v.powf(al - 1.0) * g.powf(ga + 2.0) * lap
        + ga * v.powf(al) * g.powf(ga) * v11 * lap
        + v.powf(al) * g.powf(ga) * lap * lap
        + v.powf(al) * g.powf(ga + 1.0) * t1;

    // (E_ij)_i v_j = g(1 − 1/n)·Σ_k v_kk1 by full symmetry of the thirds.
    let sum_1i_ei1: f64 = (0..jet.n).map(|i| jet.h(0, i) * jet.e(i, 0)).sum();
    let sum_eij_vij: f64 = (0..jet.n)
        .flat_map(|i| (0..jet.n).map(move |j| (i, j)))
        .map(|(i, j)| jet.e(i, j) * jet.h(i, j))
        .sum();
    let e_flux = al * v.powf(al - 1.0) * g.powf(ga + 2.0) * jet.e(0, 0)
        + ga * v.powf(al) * g.powf(ga) * sum_1i_ei1
        + v.powf(al) * g.powf(ga + 1.0) * (1.0 - 1.0 / n) * t1
        + v.powf(al) * g.powf(ga) * sum_eij_vij;

    let grad_flux = (al - 1.0) * v.powf(al - 2.0) * g.powf(ga + 4.0)
        + (ga + 2.0) * v.powf(al - 1.0) * g.powf(ga + 2.0) * v11
        + v.powf(al - 1.0) * g.powf(ga + 2.0) * lap;

    let mixed_flux = al * v.powf(al - 1.0) * g.powf(ga + q + 2.0)
        + (ga + q) * v.powf(al) * g.powf(ga + q) * v11
        + v.powf(al) * g.powf(ga + q) * lap;

    let source_flux = (al + p) * v.powf(al + p - 1.0) * g.powf(ga + 2.0)
        + ga * v.powf(al + p) * g.powf(ga) * v11
        + v.powf(al + p) * g.powf(ga) * lap;

    let coeffs = cfg.coefficients_f64();
    let l = cfg.l();
    let s = cfg.s();
    let w = -a_term + (al + p) / l * grad_flux
        - q * cfg.m_coef / (ga + q) * mixed_flux
        + coeffs.lambda
            * ((1.0 - 1.0 / n) * a_term - e_flux + (al * s - al) / l * grad_flux);

    DivergenceBundle {
        a_term,
        e_flux,
        grad_flux,
        mixed_flux,
        source_flux,
        w,
    }
}

/// The identities checked pointwise. The first three are pure chain-rule
/// statements valid on free jets; the last three substitute the equation and
/// need PDE-constrained jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityId {
    /// Expansion of v^{α−1}|∇v|^{γ+2}Δv through its divergence form.
    DeltaExpansion,
    /// The D·v^α|∇v|^γ(Δv)² contraction identity (frame constraint only).
    HessianContraction,
    /// ΣE_ij² = ΣG_ij² + 2(S−Q)G₁₁Δv + τ(Δv)².
    TraceFreeSquare,
    /// The −(1+γS)(Δv)² identity after substituting the equation.
    LaplacianSquare,
    /// The master identity (everything combined; equals zero).
    Master,
    /// The three multiplied-equation identities (max residual of the three).
    MultipliedPde,
}

pub const ALL_IDENTITIES: [IdentityId; 6] = [
    IdentityId::DeltaExpansion,
    IdentityId::HessianContraction,
    IdentityId::TraceFreeSquare,
    IdentityId::LaplacianSquare,
    IdentityId::Master,
    IdentityId::MultipliedPde,
];

impl IdentityId {
    pub fn needs_pde(&self) -> bool {
        matches!(
            self,
            IdentityId::LaplacianSquare | IdentityId::Master | IdentityId::MultipliedPde
        )
    }

    pub fn index(&self) -> usize {
        ALL_IDENTITIES.iter().position(|x| x == self).unwrap()
    }
}

/// Which power of v multiplies the G₁₁² entry of the master identity. The
/// source text prints v^γ in one display and v^α in the surrounding ones;
/// the two readings differ whenever α ≠ γ and exactly one closes the
/// identity (see `disambiguate_g11_base`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G11Base {
    Alpha,
    Gamma,
}

fn rel(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs())
}

/// Relative residual |LHS − RHS| / (1 + |LHS| + |RHS|) of one identity on one
/// jet. Panics if v ≤ 0 or g ≤ 0 (fractional powers undefined).
pub fn residual(id: IdentityId, jet: &Jet3, cfg: &LabConfig) -> f64 {
    residual_with_base(id, jet, cfg, G11Base::Alpha)
}

pub fn residual_with_base(id: IdentityId, jet: &Jet3, cfg: &LabConfig, base: G11Base) -> f64 {
    assert!(jet.v > 0.0 && jet.g > 0.0, "jet outside the domain of fractional powers");
    let (v, g) = (jet.v, jet.g);
    let (al, ga, p, q) = (cfg.alpha(), cfg.gamma(), cfg.p(), cfg.q());
    let (nn, m) = (cfg.n_coef, cfg.m_coef);
    let n = jet.n;
    let nf = n as f64;
    let (s, qd, l) = (cfg.s(), cfg.q_diag(), cfg.l());
    let lap = jet.laplacian();
    let g11 = jet.g11(s);
    let b = divergence_bundle(jet, cfg);

    match id {
        IdentityId::DeltaExpansion => {
            let lhs = v.powf(al - 1.0) * g.powf(ga + 2.0) * lap;
            let rhs = b.grad_flux / l
                - (al - 1.0) / l * v.powf(al - 2.0) * g.powf(ga + 4.0)
                - (ga + 2.0) / l * v.powf(al - 1.0) * g.powf(ga + 2.0) * g11;
            rel(lhs, rhs)
        }
        IdentityId::HessianContraction => {
            let lhs = cfg.d() * v.powf(al) * g.powf(ga) * lap * lap;
            let sum_g_off: f64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i + j > 0)
                .map(|(i, j)| jet.g_off(i, j, qd).powi(2))
                .sum();
            let sum_g1i: f64 = (1..n).map(|i| jet.h(0, i).powi(2)).sum();
            let rhs = (1.0 - 1.0 / nf) * b.a_term - b.e_flux
                + (al * s - al) / l * b.grad_flux
                + v.powf(al) * g.powf(ga) * sum_g_off
                + al * (al - 1.0) * (1.0 - s) / l * v.powf(al - 2.0) * g.powf(ga + 4.0)
                + al * (ga + 3.0) / l * v.powf(al - 1.0) * g.powf(ga + 2.0) * g11
                + (2.0 * ga * s - ga + 2.0 * s - 2.0 * qd) * v.powf(al) * g.powf(ga) * g11 * lap
                + (1.0 + ga) * v.powf(al) * g.powf(ga) * g11 * g11
                + ga * v.powf(al) * g.powf(ga) * sum_g1i;
            rel(lhs, rhs)
        }
        IdentityId::TraceFreeSquare => {
            let lhs: f64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| jet.e(i, j).powi(2))
                .sum();
            let sum_g_all: f64 = g11 * g11
                + (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| i + j > 0)
                    .map(|(i, j)| jet.g_off(i, j, qd).powi(2))
                    .sum::<f64>();
            let tau = s * s + (nf - 1.0) * qd * qd - 1.0 / nf;
            let rhs = sum_g_all + 2.0 * (s - qd) * g11 * lap + tau * lap * lap;
            rel(lhs, rhs)
        }
        IdentityId::LaplacianSquare => {
            let lhs = -(1.0 + ga * s) * v.powf(al) * g.powf(ga) * lap * lap;
            let rhs = -b.a_term + (al + p) / l * b.grad_flux
                - q * m / (ga + q) * b.mixed_flux
                + ga * v.powf(al) * g.powf(ga) * g11 * lap
                - (al + p) * (ga + 2.0) / l * v.powf(al - 1.0) * g.powf(ga + 2.0) * g11
                - (al + p) * (al - 1.0) / l * v.powf(al - 2.0) * g.powf(ga + 4.0)
                - q / (ga + q) * m * m * v.powf(al) * g.powf(ga + 2.0 * q)
                + (p + q * al / (ga + q)) * m * v.powf(al - 1.0) * g.powf(ga + q + 2.0)
                - q / (ga + q) * m * nn * v.powf(al + p) * g.powf(ga + q);
            rel(lhs, rhs)
        }
        IdentityId::Master => {
            let terms = master_terms(jet, cfg, base);
            let total: f64 = terms.iter().sum();
            let scale: f64 = 1.0 + terms.iter().map(|t| t.abs()).sum::<f64>();
            total.abs() / scale
        }
        IdentityId::MultipliedPde => {
            let sgs = 1.0 + ga * s;
            let sqs = 1.0 + ga * s + q * s;
            // (a) ×N v^{α+p}|∇v|^γ
            let lhs_a = nn * nn * v.powf(al + 2.0 * p) * g.powf(ga)
                + m * nn * v.powf(al + p) * g.powf(ga + q);
            let rhs_a = -nn / sgs * b.source_flux
                + (al + p) / sgs * nn * v.powf(al + p - 1.0) * g.powf(ga + 2.0)
                + ga / sgs * nn * v.powf(al + p) * g.powf(ga) * g11;
            // (b) ×M v^α|∇v|^{γ+q}
            let lhs_b = m * nn * v.powf(al + p) * g.powf(ga + q)
                + m * m * v.powf(al) * g.powf(ga + 2.0 * q);
            let rhs_b = -m / sqs * b.mixed_flux
                + al / sqs * m * v.powf(al - 1.0) * g.powf(ga + q + 2.0)
                + (ga + q) / sqs * m * v.powf(al) * g.powf(ga + q) * g11;
            // (c) ×v^{α−1}|∇v|^{γ+2}
            let lhs_c = -m * v.powf(al - 1.0) * g.powf(ga + q + 2.0);
            let rhs_c = b.grad_flux / l
                - (al - 1.0) / l * v.powf(al - 2.0) * g.powf(ga + 4.0)
                - (ga + 2.0) / l * v.powf(al - 1.0) * g.powf(ga + 2.0) * g11
                + nn * v.powf(al + p - 1.0) * g.powf(ga + 2.0);
            rel(lhs_a, rhs_a).max(rel(lhs_b, rhs_b)).max(rel(lhs_c, rhs_c))
        }
    }
}

/// Every term of the master identity (they must sum to zero on a
/// PDE-constrained jet). The G-square block is kept per entry: a₂ on G₁₁²,
/// a₁ + a₂ on each unordered off-diagonal v_1i² (i > 1), and a₁ on every
/// ordered entry with both indices past the first.
pub fn master_terms(jet: &Jet3, cfg: &LabConfig, base: G11Base) -> Vec<f64> {
    let (v, g) = (jet.v, jet.g);
    let (al, ga, p, q) = (cfg.alpha(), cfg.gamma(), cfg.p(), cfg.q());
    let (nn, m) = (cfg.n_coef, cfg.m_coef);
    let n = jet.n;
    let (s, qd) = (cfg.s(), cfg.q_diag());
    let lap = jet.laplacian();
    let g11 = jet.g11(s);
    let b = divergence_bundle(jet, cfg);
    let k = cfg.coefficients_f64();
    let eps = cfg.eps();

    let sum_e2: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| jet.e(i, j).powi(2))
        .sum();
    let sum_g1i: f64 = (1..n).map(|i| jet.h(0, i).powi(2)).sum();
    let sum_g_inner: f64 = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .map(|(i, j)| jet.g_off(i, j, qd).powi(2))
        .sum();
    let g11_weight = match base {
        G11Base::Alpha => v.powf(al),
        G11Base::Gamma => v.powf(ga),
    };

    vec![
        b.w,
        eps * v.powf(al) * g.powf(ga) * sum_e2,
        k.a2 * g11_weight * g.powf(ga) * g11 * g11,
        (k.a1 + k.a2) * v.powf(al) * g.powf(ga) * sum_g1i,
        k.a1 * v.powf(al) * g.powf(ga) * sum_g_inner,
        k.a3 * v.powf(al - 2.0) * g.powf(ga + 4.0),
        k.b1 * v.powf(al - 1.0) * g.powf(ga + 2.0) * g11,
        k.b2 * v.powf(al) * g.powf(ga) * g11 * lap,
        k.c2 * m * m * v.powf(al) * g.powf(ga + 2.0 * q),
        -k.b3 * nn * v.powf(al + p - 1.0) * g.powf(ga + 2.0),
        -k.b4 * m * v.powf(al - 1.0) * g.powf(ga + q + 2.0),
        k.b5 * m * nn * v.powf(al + p) * g.powf(ga + q),
    ]
}

/// The Cauchy–Schwarz step is an inequality, not an identity:
/// (n−1)Σ_{i>1}G_ii² ≥ (Σ_{i>1}G_ii)² = G₁₁² under the frame constraint.
pub fn cauchy_schwarz_holds(jet: &Jet3, cfg: &LabConfig) -> bool {
    let qd = cfg.q_diag();
    let sum_sq: f64 = (1..jet.n).map(|i| jet.g_off(i, i, qd).powi(2)).sum();
    let g11 = jet.g11(cfg.s());
    (jet.n as f64 - 1.0) * sum_sq >= g11 * g11 - 1e-12 * (1.0 + g11 * g11)
}

/// Exact-on-every-jet structural invariants of the frame decomposition.
pub fn frame_invariants_hold(jet: &Jet3, cfg: &LabConfig) -> bool {
    let qd = cfg.q_diag();
    let trace_g = jet.g11(cfg.s()) + (1..jet.n).map(|i| jet.g_off(i, i, qd)).sum::<f64>();
    let trace_e: f64 = (0..jet.n).map(|i| jet.e(i, i)).sum();
    let lap = jet.laplacian();
    let scale = 1.0 + lap.abs();
    trace_g.abs() / scale < 1e-12 && trace_e.abs() / scale < 1e-12
}

/// Runs the disambiguation experiment for the G₁₁² base: returns the max
/// master residual over `trials` jets under each reading (α first, γ second).
pub fn disambiguate_g11_base(seed: u64, trials: u64, cfg: &LabConfig) -> (f64, f64) {
    let mut seeds = SplitMix64::new(seed);
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let jet = sample_jet(seeds.next_u64(), cfg.frame.n as usize, JetMode::PdeConstrained, cfg);
        worst.0 = worst.0.max(residual_with_base(IdentityId::Master, &jet, cfg, G11Base::Alpha));
        worst.1 = worst.1.max(residual_with_base(IdentityId::Master, &jet, cfg, G11Base::Gamma));
    }
    worst
}

/// Scales the jet as the PDE scaling T_k does: v ↦ k^{2/(p−1)} v(kx), so each
/// derivative order gains one power of k.
pub fn scale_jet(jet: &Jet3, k: f64, p: f64) -> Jet3 {
    let m = 2.0 / (p - 1.0);
    let mut out = jet.clone();
    out.v = k.powf(m) * jet.v;
    out.g = k.powf(m + 1.0) * jet.g;
    for x in &mut out.hess {
        *x *= k.powf(m + 2.0);
    }
    for x in &mut out.third {
        *x *= k.powf(m + 3.0);
    }
    out
}

/// At the critical gradient exponent q = 2p/(p+1), scaling the jet multiplies
/// every master-identity term by one common positive factor, so the sign
/// pattern is invariant.
pub fn scaling_signs_invariant(jet: &Jet3, cfg: &LabConfig, k: f64) -> bool {
    let before = master_terms(jet, cfg, G11Base::Alpha);
    let scaled = scale_jet(jet, k, cfg.p());
    let after = master_terms(&scaled, cfg, G11Base::Alpha);
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let (nb, na) = (norm(&before), norm(&after));
    before.iter().zip(&after).all(|(x, y)| {
        let (x, y) = (x / nb, y / na);
        (x - y).abs() < 1e-9 || (x.abs() < 1e-12 && y.abs() < 1e-12)
    })
}

/// Central-difference oracle: reconstructs each divergence value by
/// numerically differentiating the composite flux of the cubic test function
/// whose jet at the origin is exactly the sampled one. Richardson-extrapolated
/// central differences with base step 10⁻⁵.
pub fn divergence_oracle(jet: &Jet3, cfg: &LabConfig) -> DivergenceBundle {
    let n = jet.n;
    let (al, ga, p, q) = (cfg.alpha(), cfg.gamma(), cfg.p(), cfg.q());

    // derivatives of the cubic test function at x
    let value = |x: &[f64]| -> f64 {
        let mut out = jet.v + jet.g * x[0];
        for i in 0..n {
            for j in 0..n {
                out += 0.5 * jet.h(i, j) * x[i] * x[j];
                for k in 0..n {
                    out += jet.t(i, j, k) * x[i] * x[j] * x[k] / 6.0;
                }
            }
        }
        out
    };
    let deriv = |x: &[f64], i: usize| -> f64 {
        let mut out = if i == 0 { jet.g } else { 0.0 };
        for j in 0..n {
            out += jet.h(i, j) * x[j];
            for k in 0..n {
                out += 0.5 * jet.t(i, j, k) * x[j] * x[k];
            }
        }
        out
    };
    let second = |x: &[f64], i: usize, j: usize| -> f64 {
        jet.h(i, j) + (0..n).map(|k| jet.t(i, j, k) * x[k]).sum::<f64>()
    };
    let lap_at = |x: &[f64]| -> f64 { (0..n).map(|i| second(x, i, i)).sum() };
    let grad_norm = |x: &[f64]| -> f64 {
        (0..n).map(|i| deriv(x, i).powi(2)).sum::<f64>().sqrt()
    };

    let divergence = |flux: &dyn Fn(&[f64], usize) -> f64| -> f64 {
        let d_at = |h: f64| -> f64 {
            let mut total = 0.0;
            let mut x = vec![0.0; n];
            for i in 0..n {
                x[i] = h;
                let plus = flux(&x, i);
                x[i] = -h;
                let minus = flux(&x, i);
                x[i] = 0.0;
                total += (plus - minus) / (2.0 * h);
            }
            total
        };
        let h = 1e-5;
        (4.0 * d_at(h / 2.0) - d_at(h)) / 3.0
    };

    let a_term = divergence(&|x: &[f64], i: usize| {
        value(x).powf(al) * grad_norm(x).powf(ga) * lap_at(x) * deriv(x, i)
    });
    let e_flux = divergence(&|x: &[f64], i: usize| {
        let e_ij = |i: usize, j: usize| {
            second(x, i, j) - if i == j { lap_at(x) / n as f64 } else { 0.0 }
        };
        value(x).powf(al)
            * grad_norm(x).powf(ga)
            * (0..n).map(|j| e_ij(i, j) * deriv(x, j)).sum::<f64>()
    });
    let grad_flux = divergence(&|x: &[f64], i: usize| {
        value(x).powf(al - 1.0) * grad_norm(x).powf(ga + 2.0) * deriv(x, i)
    });
    let mixed_flux = divergence(&|x: &[f64], i: usize| {
        value(x).powf(al) * grad_norm(x).powf(ga + q) * deriv(x, i)
    });
    let source_flux = divergence(&|x: &[f64], i: usize| {
        value(x).powf(al + p) * grad_norm(x).powf(ga) * deriv(x, i)
    });

    let coeffs = cfg.coefficients_f64();
    let (l, s) = (cfg.l(), cfg.s());
    let w = -a_term + (al + p) / l * grad_flux
        - q * cfg.m_coef / (ga + q) * mixed_flux
        + coeffs.lambda
            * ((1.0 - 1.0 / n as f64) * a_term - e_flux + (al * s - al) / l * grad_flux);

    DivergenceBundle {
        a_term,
        e_flux,
        grad_flux,
        mixed_flux,
        source_flux,
        w,
    }
}

/// Summary of a randomized identity sweep.
#[derive(Debug, Clone)]
pub struct SuiteSummary {
    /// Max relative residual per identity, in `ALL_IDENTITIES` order.
    pub max_residuals: [f64; 6],
    pub inequality_ok: bool,
    pub invariants_ok: bool,
    pub trials_per_config: u64,
    pub configs: usize,
    pub tolerance: f64,
}

impl SuiteSummary {
    pub fn pass(&self) -> bool {
        self.inequality_ok
            && self.invariants_ok
            && self.max_residuals.iter().all(|r| *r < self.tolerance)
    }
}

/// Builds the standard lab configuration for a dimension: the γ = n−4 frame
/// when n ≥ 7, the gradient-free γ = 0 frame below.
pub fn standard_config(n: i64, n_coef: f64, m_coef: f64) -> LabConfig {
    let p = rat(n + 2, n - 2);
    let eps = rat(1, 1000);
    let frame = if n >= 7 {
        Frame::high_dim(n, &p, &eps).expect("frame solvable for n ≥ 7")
    } else {
        Frame::gradient_free(n, &p, &Rational::zero(), &eps)
    };
    LabConfig::new(frame, n_coef, m_coef)
}

/// Runs `trials` jets per dimension, both free and PDE-constrained where
/// admissible, and reports the worst residual per identity.
pub fn run_suite(trials: u64, master_seed: u64, dims: &[i64], tolerance: f64) -> SuiteSummary {
    assert!(trials >= 1);
    let mut max_residuals = [0.0f64; 6];
    let mut inequality_ok = true;
    let mut invariants_ok = true;
    let mut configs = 0usize;
    for &n in dims {
        let cfg = standard_config(n, 1.0, 1.25);
        configs += 1;
        let mut seeds = SplitMix64::new(master_seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15));
        for _ in 0..trials {
            let seed = seeds.next_u64();
            let free = sample_jet(seed, n as usize, JetMode::Free, &cfg);
            let pde = sample_jet(seed, n as usize, JetMode::PdeConstrained, &cfg);
            for id in ALL_IDENTITIES {
                let jet = if id.needs_pde() { &pde } else { &free };
                let r = residual(id, jet, &cfg);
                let slot = &mut max_residuals[id.index()];
                *slot = slot.max(r);
            }
            inequality_ok &= cauchy_schwarz_holds(&free, &cfg) && cauchy_schwarz_holds(&pde, &cfg);
            invariants_ok &= frame_invariants_hold(&free, &cfg) && frame_invariants_hold(&pde, &cfg);
        }
    }
    SuiteSummary {
        max_residuals,
        inequality_ok,
        invariants_ok,
        trials_per_config: trials,
        configs,
        tolerance,
    }
}
