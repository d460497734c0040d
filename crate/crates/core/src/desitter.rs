//! Representation-formula solver for the Cauchy problem
//!
//! ```text
//! Φ_tt + n Φ_t − e^{−2t} ΔΦ + m² Φ = f,  Φ(·,0) = φ₀,  Φ_t(·,0) = φ₁.
//! ```
//!
//! With φ(t) = 1 − e^{−t} the homogeneous solution is assembled from the
//! flat-wave responses v/V and the kernels K₀, K₁:
//!
//! ```text
//! Φ = e^{−(n−1)t/2} v_{φ₀}(x, φ(t))
//!   + e^{−nt/2} ∫₀^{φ(t)} v_{φ₀}(x, z) (2K₀ + nK₁)(z,t) dz
//!   + 2e^{−nt/2} ∫₀^{φ(t)} v_{φ₁}(x, z) K₁(z,t) dz.
//! ```
//!
//! Both kernel integrals are integrated by parts onto V before quadrature, so
//! the integrands are V(x,z) against smooth kernel derivatives and the cone
//! boundary values reduce to closed forms (K₁ = e^{t/2}/2 on the cone for
//! every mass). At the knot parameter μ = ½ everything collapses to
//!
//! ```text
//! Φ = e^{−(n−1)t/2} [ v_{φ₀} + (n−1)/2 · V_{φ₀} + V_{φ₁} ](x, φ(t)),
//! ```
//!
//! the no-quadrature fast path, and for n = 3, m = 0 to the massless closed
//! form with a single elementary integral.

use serde::Serialize;

use crate::kernels::{self, MassParams, MassRegime};
use crate::quad;
use crate::wave::{self, RadialProfile};
use crate::{Error, Result};

/// Tolerance handed to the kernel quadratures.
const QUAD_TOL: f64 = 1e-11;
/// Imaginary residue bound for assembled large-mass values.
const IM_TOL: f64 = 1e-8;

/// Time dependence of a separable forcing term.
#[derive(Debug, Clone)]
pub enum TimeProfile {
    Const(f64),
    /// amplitude · e^{rate · b}
    Exp { amplitude: f64, rate: f64 },
    /// amplitude · cos(omega · b)
    Cosine { amplitude: f64, omega: f64 },
}

impl TimeProfile {
    pub fn eval(&self, b: f64) -> f64 {
        match *self {
            TimeProfile::Const(c) => c,
            TimeProfile::Exp { amplitude, rate } => amplitude * (rate * b).exp(),
            TimeProfile::Cosine { amplitude, omega } => amplitude * (omega * b).cos(),
        }
    }
}

/// Separable forcing f(x, b) = g(|x|) · h(b) with analytic radial factor.
#[derive(Debug, Clone)]
pub struct Forcing {
    pub spatial: RadialProfile,
    pub temporal: TimeProfile,
}

impl Forcing {
    pub fn eval(&self, r: f64, b: f64) -> f64 {
        self.spatial.eval(r) * self.temporal.eval(b)
    }
}

/// A Cauchy problem: mass parameters, initial data, optional forcing.
///
/// Initial data must be supported strictly inside the unit horizon so that
/// tail measurements have an exit time.
#[derive(Debug, Clone)]
pub struct CauchyProblem {
    pub mp: MassParams,
    pub phi0: Option<RadialProfile>,
    pub phi1: Option<RadialProfile>,
    pub forcing: Option<Forcing>,
}

impl CauchyProblem {
    pub fn new(
        mp: MassParams,
        phi0: Option<RadialProfile>,
        phi1: Option<RadialProfile>,
    ) -> Result<Self> {
        for phi in [&phi0, &phi1].into_iter().flatten() {
            if phi.support_radius() >= 1.0 {
                return Err(Error::SupportTooLarge(phi.support_radius()));
            }
        }
        Ok(Self { mp, phi0, phi1, forcing: None })
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    /// Largest support radius among the initial data (0 when none).
    pub fn data_support(&self) -> f64 {
        [&self.phi0, &self.phi1]
            .into_iter()
            .flatten()
            .map(|p| p.support_radius())
            .fold(0.0, f64::max)
    }

    /// Sup-norm scale of the initial data, floored at machine level.
    pub fn data_norm(&self) -> f64 {
        [&self.phi0, &self.phi1]
            .into_iter()
            .flatten()
            .map(|p| p.sup_norm())
            .fold(f64::MIN_POSITIVE, f64::max)
    }
}

/// Which evaluation route produced a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Representation,
    KnotClosedForm,
    FiniteDifference,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Representation => "representation",
            Method::KnotClosedForm => "knot_closed_form",
            Method::FiniteDifference => "fd",
        };
        f.write_str(s)
    }
}

/// One solved sample at radius r, time t.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Sample {
    pub r: f64,
    pub t: f64,
    pub phi: f64,
}

/// Sampled solution plus which method produced it.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionField {
    pub samples: Vec<Sample>,
    pub method: Method,
    pub quadrature_nodes: usize,
    pub mass: MassParams,
}

fn phi_of_t(t: f64) -> f64 {
    -(-t).exp_m1()
}

/// v/V responses of one optional datum.
fn pair(phi: &Option<RadialProfile>, n: u32, r: f64, rho: f64) -> Result<(f64, f64)> {
    match phi {
        Some(p) => wave::v_pair(p, n, r, rho),
        None => Ok((0.0, 0.0)),
    }
}

fn big_v(phi: &Option<RadialProfile>, n: u32, r: f64, rho: f64) -> Result<f64> {
    Ok(pair(phi, n, r, rho)?.1)
}

/// Upper integration bound after the support cut: in dimensions with strong
/// flat-space Huygens decay (odd n) the V response vanishes beyond
/// r + supp, so the integrand is exactly zero there.
fn cut_upper(phi: &Option<RadialProfile>, n: u32, r: f64, full: f64) -> f64 {
    match phi {
        Some(p) if n % 2 == 1 && n >= 3 => full.min(r + p.support_radius()),
        _ => full,
    }
}

/// Generic small-mass representation value at center distance r.
pub(crate) fn solve_small_at_radius(pb: &CauchyProblem, r: f64, t: f64) -> Result<(f64, usize)> {
    let mp = &pb.mp;
    if mp.regime != MassRegime::Small {
        return Err(Error::MassDomain("small-mass solver requires m <= n/2".into()));
    }
    let n = mp.n;
    let nf = n as f64;
    let pt = phi_of_t(t);
    let decay_half = (-0.5 * (nf - 1.0) * t).exp();
    let decay_full = (-0.5 * nf * t).exp();
    let mut nodes = 0usize;

    let (v0, big_v0) = pair(&pb.phi0, n, r, pt)?;
    let big_v1 = big_v(&pb.phi1, n, r, pt)?;

    let mut value = decay_half * v0 + decay_half * big_v1;

    // cone boundary term of the by-parts phi0 kernel integral
    if pb.phi0.is_some() {
        let s_cone = 2.0 * kernels::k0_at_cone(mp, t)?.re + nf * kernels::k1_at_cone(t);
        value += decay_full * big_v0 * s_cone;
        let upper = cut_upper(&pb.phi0, n, r, pt);
        let mut f = |z: f64| -> Result<f64> {
            let vv = big_v(&pb.phi0, n, r, z)?;
            if vv == 0.0 {
                return Ok(0.0);
            }
            let ds = 2.0 * kernels::dk0_ds_raw(mp, z, t)?.re + nf * kernels::dk1_ds_raw(mp, z, t)?.re;
            Ok(vv * ds)
        };
        let (integral, used) = quad::integrate_clustered(&mut f, 0.0, upper, QUAD_TOL)?;
        nodes = nodes.max(used);
        value -= decay_full * integral;
    }

    if pb.phi1.is_some() {
        let upper = cut_upper(&pb.phi1, n, r, pt);
        let mut f = |z: f64| -> Result<f64> {
            let vv = big_v(&pb.phi1, n, r, z)?;
            if vv == 0.0 {
                return Ok(0.0);
            }
            Ok(vv * kernels::dk1_ds_raw(mp, z, t)?.re)
        };
        let (integral, used) = quad::integrate_clustered(&mut f, 0.0, upper, QUAD_TOL)?;
        nodes = nodes.max(used);
        value -= 2.0 * decay_full * integral;
    }

    Ok((value, nodes))
}

/// Generic large-mass representation value at center distance r.
///
/// Kernels are complex; the assembled field must be real, so an imaginary
/// residue above the tolerance is reported as a kernel bug rather than
/// silently dropped.
pub(crate) fn solve_large_at_radius(pb: &CauchyProblem, r: f64, t: f64) -> Result<(f64, usize)> {
    let mp = &pb.mp;
    if mp.regime != MassRegime::Large {
        return Err(Error::MassDomain("large-mass solver requires m >= n/2".into()));
    }
    let n = mp.n;
    let nf = n as f64;
    let pt = phi_of_t(t);
    let decay_half = (-0.5 * (nf - 1.0) * t).exp();
    let decay_full = (-0.5 * nf * t).exp();
    let mut nodes = 0usize;

    let (v0, big_v0) = pair(&pb.phi0, n, r, pt)?;
    let big_v1 = big_v(&pb.phi1, n, r, pt)?;

    let mut re = decay_half * v0 + decay_half * big_v1;
    let mut im = 0.0;

    if pb.phi0.is_some() {
        let k0c = kernels::k0_at_cone(mp, t)?;
        let s_cone_re = 2.0 * k0c.re + nf * kernels::k1_at_cone(t);
        re += decay_full * big_v0 * s_cone_re;
        im += decay_full * big_v0 * 2.0 * k0c.im;

        let upper = cut_upper(&pb.phi0, n, r, pt);
        let f = |z: f64| -> Result<(f64, f64)> {
            let vv = big_v(&pb.phi0, n, r, z)?;
            if vv == 0.0 {
                return Ok((0.0, 0.0));
            }
            let d0 = kernels::dk0_ds_raw(mp, z, t)?;
            let d1 = kernels::dk1_ds_raw(mp, z, t)?;
            Ok((vv * (2.0 * d0.re + nf * d1.re), vv * (2.0 * d0.im + nf * d1.im)))
        };
        let (int_re, int_im, used) = integrate_complex(&f, 0.0, upper)?;
        nodes = nodes.max(used);
        re -= decay_full * int_re;
        im -= decay_full * int_im;
    }

    if pb.phi1.is_some() {
        let upper = cut_upper(&pb.phi1, n, r, pt);
        let f = |z: f64| -> Result<(f64, f64)> {
            let vv = big_v(&pb.phi1, n, r, z)?;
            if vv == 0.0 {
                return Ok((0.0, 0.0));
            }
            let d1 = kernels::dk1_ds_raw(mp, z, t)?;
            Ok((vv * d1.re, vv * d1.im))
        };
        let (int_re, int_im, used) = integrate_complex(&f, 0.0, upper)?;
        nodes = nodes.max(used);
        re -= 2.0 * decay_full * int_re;
        im -= 2.0 * decay_full * int_im;
    }

    if im.abs() > IM_TOL * re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue { re, im });
    }
    Ok((re, nodes))
}

/// Clustered quadrature of a complex-valued integrand given as (re, im).
fn integrate_complex<F: Fn(f64) -> Result<(f64, f64)>>(
    f: &F,
    a: f64,
    b: f64,
) -> Result<(f64, f64, usize)> {
    let mut re_f = |z: f64| Ok(f(z)?.0);
    let (re, n_re) = quad::integrate_clustered(&mut re_f, a, b, QUAD_TOL)?;
    let mut im_f = |z: f64| Ok(f(z)?.1);
    let (im, n_im) = quad::integrate_clustered(&mut im_f, a, b, QUAD_TOL)?;
    Ok((re, im, n_re.max(n_im)))
}

/// Small-mass representation solution (m ≤ n/2).
pub fn solve_small_mass(pb: &CauchyProblem, x: &[f64], t: f64) -> Result<f64> {
    check_point(pb, x)?;
    Ok(solve_small_at_radius(pb, norm(x), t)?.0)
}

/// Large-mass representation solution (m ≥ n/2); returns the real part after
/// checking the imaginary residue.
pub fn solve_large_mass(pb: &CauchyProblem, x: &[f64], t: f64) -> Result<f64> {
    check_point(pb, x)?;
    Ok(solve_large_at_radius(pb, norm(x), t)?.0)
}

/// Massless string-type solution on the line:
/// Φ = ½(φ₀(x−φ(t)) + φ₀(x+φ(t))) + ½∫₀^{φ(t)} (φ₁(x−s) + φ₁(x+s)) ds.
pub fn solve_knot_n1_massless(pb: &CauchyProblem, x: f64, t: f64) -> Result<f64> {
    if pb.mp.n != 1 || pb.mp.m != 0.0 {
        return Err(Error::MassDomain("n=1 massless formula requires n=1, m=0".into()));
    }
    let pt = phi_of_t(t);
    let mut value = 0.0;
    if let Some(p0) = &pb.phi0 {
        value += 0.5 * (p0.eval(x - pt) + p0.eval(x + pt));
    }
    if let Some(p1) = &pb.phi1 {
        value += 0.5 * (p1.psi_at(x + pt) - p1.psi_at(x - pt));
    }
    Ok(value)
}

fn knot_closed_at_radius(pb: &CauchyProblem, r: f64, t: f64) -> Result<(f64, usize)> {
    let mp = &pb.mp;
    let n = mp.n;
    let nf = n as f64;
    let pt = phi_of_t(t);
    if mp.mu == 0.5 {
        let (v0, big_v0) = pair(&pb.phi0, n, r, pt)?;
        let big_v1 = big_v(&pb.phi1, n, r, pt)?;
        let value = (-0.5 * (nf - 1.0) * t).exp() * (v0 + 0.5 * (nf - 1.0) * big_v0 + big_v1);
        return Ok((value, 0));
    }
    // n = 3 massless: Φ = e^{−t} v_{φ₀} + V_{φ₀} + e^{−t} V_{φ₁} + ∫₀^{φ(t)} V_{φ₁}(x,s) s ds
    debug_assert!(n == 3 && mp.mu == 1.5);
    let (v0, big_v0) = pair(&pb.phi0, n, r, pt)?;
    let big_v1 = big_v(&pb.phi1, n, r, pt)?;
    let decay = (-t).exp();
    let mut value = decay * v0 + big_v0 + decay * big_v1;
    let mut nodes = 0;
    if pb.phi1.is_some() {
        let upper = cut_upper(&pb.phi1, n, r, pt);
        let mut f = |s: f64| -> Result<f64> { Ok(big_v(&pb.phi1, n, r, s)? * s) };
        let (integral, used) = quad::integrate_refining(&mut f, 0.0, upper, QUAD_TOL)?;
        nodes = used;
        value += integral;
    }
    Ok((value, nodes))
}

/// Forced solution with zero initial data:
/// Φ = 2e^{−nt/2} ∫₀ᵗ db ∫₀^{e^{−b}−e^{−t}} dr e^{nb/2} v_f(x,r;b) E(r,t;0,b),
/// evaluated in the by-parts form over V_f.
pub fn solve_source(pb: &CauchyProblem, x: &[f64], t: f64) -> Result<f64> {
    check_point(pb, x)?;
    Ok(solve_source_at_radius(pb, norm(x), t)?.0)
}

pub(crate) fn solve_source_at_radius(pb: &CauchyProblem, r: f64, t: f64) -> Result<(f64, usize)> {
    let mp = &pb.mp;
    let n = mp.n;
    let nf = n as f64;
    let Some(forcing) = &pb.forcing else {
        return Ok((0.0, 0));
    };
    if t == 0.0 {
        return Ok((0.0, 0));
    }
    let g = &forcing.spatial;
    let mut nodes = 0usize;
    let is_half_knot = mp.regime == MassRegime::Small && mp.mu == 0.5;

    let mut outer = |b: f64| -> Result<f64> {
        let h = forcing.temporal.eval(b);
        if h == 0.0 {
            return Ok(0.0);
        }
        let r_star = (-b).exp() - (-t).exp();
        let boundary = wave::v_pair(g, n, r, r_star)?.1 * kernels::e_at_cone(t, b);
        let mut inner_val = 0.0;
        if !is_half_knot {
            let upper = match n % 2 {
                1 if n >= 3 => r_star.min(r + g.support_radius()),
                _ => r_star,
            };
            let mut f = |rho: f64| -> Result<f64> {
                let vv = wave::v_pair(g, n, r, rho)?.1;
                if vv == 0.0 {
                    return Ok(0.0);
                }
                let de = kernels::de_dr_raw(mp, rho, t, b)?;
                if de.im.abs() > IM_TOL * de.re.abs().max(1.0) {
                    return Err(Error::ImaginaryResidue { re: de.re, im: de.im });
                }
                Ok(vv * de.re)
            };
            let (integral, used) = quad::integrate_clustered(&mut f, 0.0, upper, QUAD_TOL)?;
            nodes = nodes.max(used);
            inner_val = integral;
        }
        Ok((0.5 * nf * b).exp() * h * (boundary - inner_val))
    };
    let (outer_val, used) = quad::integrate_refining(&mut outer, 0.0, t, QUAD_TOL)?;
    nodes = nodes.max(used);
    Ok((2.0 * (-0.5 * nf * t).exp() * outer_val, nodes))
}

/// Route a problem to its evaluation path and record which one ran.
pub fn solve(pb: &CauchyProblem, x: &[f64], t: f64) -> Result<(f64, Method)> {
    check_point(pb, x)?;
    let (value, method, _) = solve_at_radius(pb, norm(x), t)?;
    Ok((value, method))
}

/// Radial dispatcher: returns (value, method, quadrature nodes).
pub fn solve_at_radius(pb: &CauchyProblem, r: f64, t: f64) -> Result<(f64, Method, usize)> {
    if t < 0.0 {
        return Err(Error::Config(format!("t={t} must be >= 0")));
    }
    let mp = &pb.mp;
    let has_closed_form =
        (mp.n == 1 && mp.m == 0.0) || (mp.is_knot() && (mp.mu == 0.5 || (mp.n == 3 && mp.mu == 1.5)));
    // the representation is stated for t > 0; the data extend it continuously
    if t == 0.0 {
        let value = pb.phi0.as_ref().map_or(0.0, |p| p.eval(r));
        let method =
            if has_closed_form { Method::KnotClosedForm } else { Method::Representation };
        return Ok((value, method, 0));
    }

    let (mut value, method, mut nodes) = if mp.n == 1 && mp.m == 0.0 {
        (solve_knot_n1_massless(pb, r, t)?, Method::KnotClosedForm, 0)
    } else if has_closed_form {
        let (v, used) = knot_closed_at_radius(pb, r, t)?;
        (v, Method::KnotClosedForm, used)
    } else if mp.regime == MassRegime::Small {
        let (v, used) = solve_small_at_radius(pb, r, t)?;
        (v, Method::Representation, used)
    } else {
        let (v, used) = solve_large_at_radius(pb, r, t)?;
        (v, Method::Representation, used)
    };

    if pb.forcing.is_some() {
        let (src, used) = solve_source_at_radius(pb, r, t)?;
        value += src;
        nodes = nodes.max(used);
    }
    Ok((value, method, nodes))
}

/// Sample Φ over a cartesian product grid of radii and times.
pub fn sample_grid(pb: &CauchyProblem, rs: &[f64], ts: &[f64]) -> Result<SolutionField> {
    let mut samples = Vec::with_capacity(rs.len() * ts.len());
    let mut method = Method::Representation;
    let mut nodes = 0;
    for &t in ts {
        for &r in rs {
            let (phi, m, used) = solve_at_radius(pb, r, t)?;
            method = m;
            nodes = nodes.max(used);
            samples.push(Sample { r, t, phi });
        }
    }
    Ok(SolutionField { samples, method, quadrature_nodes: nodes, mass: pb.mp })
}

fn check_point(pb: &CauchyProblem, x: &[f64]) -> Result<()> {
    if x.len() != pb.mp.n as usize {
        return Err(Error::Config(format!(
            "point has {} coordinates but n={}",
            x.len(),
            pb.mp.n
        )));
    }
    Ok(())
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|&c| c * c).sum::<f64>().sqrt()
}
