//! Expansion kernels E, K₀, K₁ of the de Sitter Klein-Gordon representation
//! formulas, their radial derivatives, and their large-time limits.
//!
//! With d = e^{−t}, d₀ = e^{−t₀} and the curved-mass parameter M the kernel
//! foundation is
//!
//! ```text
//! E(z,t;0,t₀;M) = 4^{−M} e^{M(t₀+t)} P^{M−1/2} F(½−M, ½−M; 1; ζ),
//! P = (d+d₀)² − z²,  Q = (d₀−d)² − z²,  ζ = Q/P,
//! K₁(z,t;M) = E(z,t;0,0;M),  K₀(z,t;M) = −[∂_b E(z,t;0,b;M)]_{b=0}.
//! ```
//!
//! Small physical mass (m ≤ n/2) keeps M = √(n²/4 − m²) real; large mass
//! continues analytically to M = −i√(m² − n²/4), for which all assembled
//! kernel values stay real up to rounding (checked, not assumed, by tests).
//!
//! The textbook form of K₀ divides by Q, which vanishes on the cone z = d₀−d.
//! The division is removable: the bracket equals −Q/2 + A(F₁−1) + (½+M)B(F₂−1)
//! exactly, so K₀ is evaluated here in the cancellation-free form
//!
//! ```text
//! K₀ = 4^{−M} e^{Mt} P^{M−1/2} · [ −1/2 + (A·f₁(ζ) + (½+M)·B·f₂(ζ)) / P ],
//! f_i(ζ) = (F_i(ζ) − 1)/ζ,
//! A = d−1+M(d²−1−z²),  B = 1−d²+z².
//! ```
//!
//! This reproduces the knot-point closed forms exactly and stays finite
//! through the cone boundary.

use num_complex::Complex64;
use serde::Serialize;

use crate::special::{
    self, gamma, hyp2f1, hyp2f1_c, hyp2f1_m1_over_z, hyp2f1_m1_over_z_c,
    hyp2f1_m1_over_z_deriv, hyp2f1_m1_over_z_deriv_c, HypParams,
};
use crate::{Error, Result};

/// Width used to snap the curved-mass parameter onto a knot value.
const KNOT_TOL: f64 = 1e-12;
/// Non-knot evaluations of K₀-type kernels refuse points closer than this
/// to the cone boundary.
pub const CONE_GUARD: f64 = 1e-9;

/// Which side of m = n/2 the physical mass sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MassRegime {
    /// m ≤ n/2: real curved-mass parameter.
    Small,
    /// m ≥ n/2: imaginary-branch parameter.
    Large,
}

/// Spatial dimension, physical mass and derived kernel parameter.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MassParams {
    /// Spatial dimension n ≥ 1.
    pub n: u32,
    /// Physical mass m ≥ 0.
    pub m: f64,
    pub regime: MassRegime,
    /// √|n²/4 − m²|, snapped onto k+½ when within 1e−12 of a knot.
    pub mu: f64,
}

impl MassParams {
    pub fn new(n: u32, m: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("spatial dimension must be >= 1".into()));
        }
        if m.is_nan() || m < 0.0 || !m.is_finite() {
            return Err(Error::Config(format!("physical mass {m} must be finite and >= 0")));
        }
        let half_n = n as f64 / 2.0;
        let regime = if m <= half_n { MassRegime::Small } else { MassRegime::Large };
        let mut mu = (half_n * half_n - m * m).abs().sqrt();
        if regime == MassRegime::Small {
            // snap onto a knot so the hypergeometric series terminate exactly
            let k_max = (n - 1) / 2;
            for k in 0..=k_max {
                let knot = k as f64 + 0.5;
                if (mu - knot).abs() < KNOT_TOL {
                    mu = knot;
                }
            }
            if mu.abs() < KNOT_TOL {
                mu = 0.0;
            }
        }
        Ok(Self { n, m, regime, mu })
    }

    /// Mass value m = √(n²/4 − (k+½)²) for knot index k.
    pub fn knot_mass(n: u32, k: u32) -> f64 {
        let half_n = n as f64 / 2.0;
        let knot = k as f64 + 0.5;
        (half_n * half_n - knot * knot).max(0.0).sqrt()
    }

    /// True when μ = k + ½ for some k ∈ {0, …, ⌊(n−1)/2⌋}.
    pub fn is_knot(&self) -> bool {
        self.knot_index().is_some()
    }

    /// Index k with μ = k + ½, if any.
    pub fn knot_index(&self) -> Option<u32> {
        if self.regime != MassRegime::Small {
            return None;
        }
        let k_max = (self.n - 1) / 2;
        (0..=k_max).find(|&k| (self.mu - (k as f64 + 0.5)).abs() < KNOT_TOL)
    }

    /// Largest knot mass √(n²−1)/2 of this dimension.
    pub fn top_knot_mass(n: u32) -> f64 {
        ((n as f64 * n as f64 - 1.0) / 4.0).max(0.0).sqrt()
    }
}

/// Complex-valued kernel sample; the imaginary part is identically zero in
/// the small-mass regime and a rounding residual in the large one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub re: f64,
    pub im: f64,
}

impl KernelValue {
    fn from_c(v: Complex64) -> Self {
        Self { re: v.re, im: v.im }
    }

    fn from_re(v: f64) -> Self {
        Self { re: v, im: 0.0 }
    }
}

impl From<KernelValue> for Complex64 {
    fn from(v: KernelValue) -> Complex64 {
        Complex64::new(v.re, v.im)
    }
}

/// Spacetime arguments of a kernel evaluation relative to the foot point
/// (0, t₀); `z` is the spatial separation.
#[derive(Debug, Clone, Copy)]
pub struct KernelArgs {
    pub z: f64,
    pub t: f64,
    pub t0: f64,
}

impl KernelArgs {
    /// Cone algebra (Q, P, ζ); errors outside the closed cone |z| ≤ |d₀−d|.
    pub fn geometry(&self) -> Result<ConeGeometry> {
        ConeGeometry::new(self.z, (-self.t0).exp(), (-self.t).exp()).ok_or(Error::KernelDomain {
            z: self.z,
            t: self.t,
            t0: self.t0,
        })
    }
}

/// P, Q and ζ = Q/P for one kernel evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ConeGeometry {
    pub d0: f64,
    pub d: f64,
    pub q: f64,
    pub p: f64,
    pub zeta: f64,
}

impl ConeGeometry {
    fn new(z: f64, d0: f64, d: f64) -> Option<Self> {
        let delta = (d0 - d).abs();
        if z < 0.0 || z > delta {
            return None;
        }
        // Q as a product of its factors: no cancellation near the cone.
        let q = (delta - z) * (delta + z);
        let p = q + 4.0 * d * d0;
        Some(Self { d0, d, q, p, zeta: q / p })
    }
}

// ---------------------------------------------------------------------------
// real-parameter (small-mass) kernel core
// ---------------------------------------------------------------------------

fn e_small(mu: f64, z: f64, t: f64, t0: f64) -> Result<f64> {
    let geo = KernelArgs { z, t, t0 }.geometry()?;
    let f = hyp2f1(HypParams::new(0.5 - mu, 0.5 - mu, 1.0, geo.zeta))?.value;
    Ok(4f64.powf(-mu) * (mu * (t0 + t)).exp() * geo.p.powf(mu - 0.5) * f)
}

fn k0_small(mu: f64, z: f64, t: f64) -> Result<f64> {
    let geo = KernelArgs { z, t, t0: 0.0 }.geometry()?;
    let d = geo.d;
    let a1 = 0.5 - mu;
    let a2 = -0.5 - mu;
    let f1 = hyp2f1_m1_over_z(a1, a1, 1.0, geo.zeta)?;
    let f2 = hyp2f1_m1_over_z(a2, a1, 1.0, geo.zeta)?;
    let big_a = d - 1.0 + mu * (d * d - 1.0 - z * z);
    let big_b = 1.0 - d * d + z * z;
    let w = -0.5 + (big_a * f1 + (0.5 + mu) * big_b * f2) / geo.p;
    Ok(4f64.powf(-mu) * (mu * t).exp() * geo.p.powf(mu - 0.5) * w)
}

fn de_dz_small(mu: f64, z: f64, t: f64, t0: f64) -> Result<f64> {
    let geo = KernelArgs { z, t, t0 }.geometry()?;
    let a = 0.5 - mu;
    let f1 = hyp2f1(HypParams::new(a, a, 1.0, geo.zeta))?.value;
    let f2 = hyp2f1(HypParams::new(a + 1.0, a + 1.0, 2.0, geo.zeta))?.value;
    let pref = 4f64.powf(-mu) * (mu * (t0 + t)).exp();
    Ok(pref
        * z
        * (2.0 * a * geo.p.powf(mu - 1.5) * f1
            - 8.0 * geo.d * geo.d0 * a * a * geo.p.powf(mu - 2.5) * f2))
}

fn dk0_dz_small(mu: f64, z: f64, t: f64) -> Result<f64> {
    let geo = KernelArgs { z, t, t0: 0.0 }.geometry()?;
    let d = geo.d;
    let p = geo.p;
    let zeta = geo.zeta;
    let a1 = 0.5 - mu;
    let a2 = -0.5 - mu;
    let f1 = hyp2f1_m1_over_z(a1, a1, 1.0, zeta)?;
    let f2 = hyp2f1_m1_over_z(a2, a1, 1.0, zeta)?;
    let df1 = hyp2f1_m1_over_z_deriv(a1, a1, 1.0, zeta)?;
    let df2 = hyp2f1_m1_over_z_deriv(a2, a1, 1.0, zeta)?;
    let big_a = d - 1.0 + mu * (d * d - 1.0 - z * z);
    let big_b = 1.0 - d * d + z * z;
    let da = -2.0 * mu * z;
    let db = 2.0 * z;
    let dzeta = -8.0 * z * d / (p * p);
    let u = big_a * f1 + (0.5 + mu) * big_b * f2;
    let du = da * f1 + big_a * df1 * dzeta + (0.5 + mu) * (db * f2 + big_b * df2 * dzeta);
    let w = -0.5 + u / p;
    let dw = (du + 2.0 * z * u / p) / p;
    let pref = 4f64.powf(-mu) * (mu * t).exp();
    Ok(pref * ((mu - 0.5) * p.powf(mu - 1.5) * (-2.0 * z) * w + p.powf(mu - 0.5) * dw))
}

// ---------------------------------------------------------------------------
// complex-parameter (large-mass) kernel core; M = -i·mu
// ---------------------------------------------------------------------------

fn pow_real(base: f64, e: Complex64) -> Complex64 {
    // base > 0 throughout the cone interior
    (e * base.ln()).exp()
}

fn e_large(mu: f64, z: f64, t: f64, t0: f64) -> Result<Complex64> {
    let geo = KernelArgs { z, t, t0 }.geometry()?;
    let m = Complex64::new(0.0, -mu);
    let a = Complex64::new(0.5, 0.0) - m;
    let f = hyp2f1_c(a, a, 1.0, geo.zeta)?;
    let pref = pow_real(4.0, -m) * (m * (t0 + t)).exp() * pow_real(geo.p, m - 0.5);
    Ok(pref * f)
}

fn k0_large(mu: f64, z: f64, t: f64) -> Result<Complex64> {
    let geo = KernelArgs { z, t, t0: 0.0 }.geometry()?;
    let d = geo.d;
    let m = Complex64::new(0.0, -mu);
    let a1 = Complex64::new(0.5, 0.0) - m;
    let a2 = Complex64::new(-0.5, 0.0) - m;
    let f1 = hyp2f1_m1_over_z_c(a1, a1, 1.0, geo.zeta)?;
    let f2 = hyp2f1_m1_over_z_c(a2, a1, 1.0, geo.zeta)?;
    let big_a = (d - 1.0) + m * (d * d - 1.0 - z * z);
    let big_b = 1.0 - d * d + z * z;
    let w = (big_a * f1 + (m + 0.5) * big_b * f2) / geo.p - 0.5;
    Ok(pow_real(4.0, -m) * (m * t).exp() * pow_real(geo.p, m - 0.5) * w)
}

fn de_dz_large(mu: f64, z: f64, t: f64, t0: f64) -> Result<Complex64> {
    let geo = KernelArgs { z, t, t0 }.geometry()?;
    let m = Complex64::new(0.0, -mu);
    let a = Complex64::new(0.5, 0.0) - m;
    let f1 = hyp2f1_c(a, a, 1.0, geo.zeta)?;
    let f2 = hyp2f1_c(a + 1.0, a + 1.0, 2.0, geo.zeta)?;
    let pref = pow_real(4.0, -m) * (m * (t0 + t)).exp();
    Ok(pref
        * z
        * (2.0 * a * pow_real(geo.p, m - 1.5) * f1
            - 8.0 * geo.d * geo.d0 * a * a * pow_real(geo.p, m - 2.5) * f2))
}

fn dk0_dz_large(mu: f64, z: f64, t: f64) -> Result<Complex64> {
    let geo = KernelArgs { z, t, t0: 0.0 }.geometry()?;
    let d = geo.d;
    let p = geo.p;
    let zeta = geo.zeta;
    let m = Complex64::new(0.0, -mu);
    let a1 = Complex64::new(0.5, 0.0) - m;
    let a2 = Complex64::new(-0.5, 0.0) - m;
    let f1 = hyp2f1_m1_over_z_c(a1, a1, 1.0, zeta)?;
    let f2 = hyp2f1_m1_over_z_c(a2, a1, 1.0, zeta)?;
    let df1 = hyp2f1_m1_over_z_deriv_c(a1, a1, 1.0, zeta)?;
    let df2 = hyp2f1_m1_over_z_deriv_c(a2, a1, 1.0, zeta)?;
    let big_a = (d - 1.0) + m * (d * d - 1.0 - z * z);
    let big_b = 1.0 - d * d + z * z;
    let da = -2.0 * m * z;
    let db = 2.0 * z;
    let dzeta = -8.0 * z * d / (p * p);
    let u = big_a * f1 + (m + 0.5) * big_b * f2;
    let du = da * f1 + big_a * df1 * dzeta + (m + 0.5) * (db * f2 + big_b * df2 * dzeta);
    let w = u / p - 0.5;
    let dw = (du + 2.0 * z * u / p) / p;
    let pref = pow_real(4.0, -m) * (m * t).exp();
    Ok(pref * ((m - 0.5) * pow_real(p, m - 1.5) * (-2.0 * z) * w + pow_real(p, m - 0.5) * dw))
}

// ---------------------------------------------------------------------------
// public kernel surface
// ---------------------------------------------------------------------------

/// E(x,t;x₀,t₀) for spatial separation |x−x₀|; requires the observation
/// point inside the closed light cone of (x₀, t₀).
pub fn eval_e(mp: &MassParams, x_minus_x0_norm: f64, t: f64, t0: f64) -> Result<KernelValue> {
    match mp.regime {
        MassRegime::Small => Ok(KernelValue::from_re(e_small(mp.mu, x_minus_x0_norm, t, t0)?)),
        MassRegime::Large => Ok(KernelValue::from_c(e_large(mp.mu, x_minus_x0_norm, t, t0)?)),
    }
}

/// K₁(z,t) = E(z,t;0,0); domain 0 ≤ z ≤ 1−e^{−t}.
pub fn eval_k1(mp: &MassParams, z: f64, t: f64) -> Result<KernelValue> {
    eval_e(mp, z, t, 0.0)
}

/// K₀(z,t) = −∂_b E(z,t;0,b)|_{b=0}; domain 0 ≤ z < 1−e^{−t}.
///
/// Non-knot parameters refuse evaluation within [`CONE_GUARD`] of the cone
/// (the representation-formula solver integrates the derivative form and
/// takes the boundary value from [`k0_at_cone`] instead).
pub fn eval_k0(mp: &MassParams, z: f64, t: f64) -> Result<KernelValue> {
    let dist = 1.0 - (-t).exp() - z;
    if !mp.is_knot() && dist < CONE_GUARD {
        return Err(Error::KernelSingularity { dist });
    }
    eval_k0_raw(mp, z, t)
}

pub(crate) fn eval_k0_raw(mp: &MassParams, z: f64, t: f64) -> Result<KernelValue> {
    match mp.regime {
        MassRegime::Small => Ok(KernelValue::from_re(k0_small(mp.mu, z, t)?)),
        MassRegime::Large => Ok(KernelValue::from_c(k0_large(mp.mu, z, t)?)),
    }
}

/// ∂K₁/∂s at (s,t); same cone guard as [`eval_k0`].
pub fn dk1_ds(mp: &MassParams, s: f64, t: f64) -> Result<KernelValue> {
    let dist = 1.0 - (-t).exp() - s;
    if !mp.is_knot() && dist < CONE_GUARD {
        return Err(Error::KernelSingularity { dist });
    }
    dk1_ds_raw(mp, s, t)
}

pub(crate) fn dk1_ds_raw(mp: &MassParams, s: f64, t: f64) -> Result<KernelValue> {
    match mp.regime {
        MassRegime::Small => Ok(KernelValue::from_re(de_dz_small(mp.mu, s, t, 0.0)?)),
        MassRegime::Large => Ok(KernelValue::from_c(de_dz_large(mp.mu, s, t, 0.0)?)),
    }
}

/// ∂K₀/∂s at (s,t); same cone guard as [`eval_k0`].
pub fn dk0_ds(mp: &MassParams, s: f64, t: f64) -> Result<KernelValue> {
    let dist = 1.0 - (-t).exp() - s;
    if !mp.is_knot() && dist < CONE_GUARD {
        return Err(Error::KernelSingularity { dist });
    }
    dk0_ds_raw(mp, s, t)
}

pub(crate) fn dk0_ds_raw(mp: &MassParams, s: f64, t: f64) -> Result<KernelValue> {
    match mp.regime {
        MassRegime::Small => Ok(KernelValue::from_re(dk0_dz_small(mp.mu, s, t)?)),
        MassRegime::Large => Ok(KernelValue::from_c(dk0_dz_large(mp.mu, s, t)?)),
    }
}

/// ∂E/∂r at (r,t;0,t₀), the integrand of the by-parts source formula.
pub(crate) fn de_dr_raw(mp: &MassParams, r: f64, t: f64, t0: f64) -> Result<KernelValue> {
    match mp.regime {
        MassRegime::Small => Ok(KernelValue::from_re(de_dz_small(mp.mu, r, t, t0)?)),
        MassRegime::Large => Ok(KernelValue::from_c(de_dz_large(mp.mu, r, t, t0)?)),
    }
}

/// K₁ on the cone z = 1−e^{−t}: equals e^{t/2}/2 for every mass parameter.
pub fn k1_at_cone(t: f64) -> f64 {
    0.5 * (0.5 * t).exp()
}

/// E on its cone r = e^{−t₀}−e^{−t}: equals e^{(t₀+t)/2}/2 for every mass.
pub fn e_at_cone(t: f64, t0: f64) -> f64 {
    0.5 * (0.5 * (t + t0)).exp()
}

/// K₀ at the cone boundary (finite for every mass parameter).
pub fn k0_at_cone(mp: &MassParams, t: f64) -> Result<KernelValue> {
    let z = 1.0 - (-t).exp();
    eval_k0_raw(mp, z, t)
}

/// Closed-form large-time limit of 4^μ e^{−μt} ∂K₁/∂s:
/// −2(μ−½)·Γ(2μ)/Γ(½+μ)²·s(1−s²)^{μ−3/2} on s ∈ (0,1).
pub fn asymptotic_dk1_limit(mp: &MassParams, s: f64) -> Result<f64> {
    if mp.regime != MassRegime::Small || mp.mu <= 0.0 {
        return Err(Error::MassDomain(
            "large-time kernel limit requires small regime with mu > 0".into(),
        ));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Config(format!("s={s} outside (0,1)")));
    }
    let mu = mp.mu;
    let g = gamma(2.0 * mu)? / gamma(0.5 + mu)?.powi(2);
    Ok(-2.0 * (mu - 0.5) * g * s * (1.0 - s * s).powf(mu - 1.5))
}

/// Closed-form large-time limit of 2^{1+2μ} e^{−μt} ∂/∂s (2K₀ + nK₁):
/// −8(1−s²)^{μ−5/2}·s·(μ−½)(s²(μ−n/2)+μ+n/2−3)·F(½−μ,½−μ;1;1).
///
/// Vanishes identically in s exactly when μ = ½, or μ = n/2 with n = 3.
pub fn asymptotic_combo_limit(mp: &MassParams, s: f64) -> Result<f64> {
    if mp.regime != MassRegime::Small || mp.mu <= 0.0 {
        return Err(Error::MassDomain(
            "large-time kernel limit requires small regime with mu > 0".into(),
        ));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Config(format!("s={s} outside (0,1)")));
    }
    let mu = mp.mu;
    let n = mp.n as f64;
    let f_at_one = special::hyp2f1_at_one(0.5 - mu, 0.5 - mu, 1.0)?;
    Ok(-8.0
        * (1.0 - s * s).powf(mu - 2.5)
        * s
        * (mu - 0.5)
        * (s * s * (mu - n / 2.0) + mu + n / 2.0 - 3.0)
        * f_at_one)
}
