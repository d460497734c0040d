//! Large-time expansion of the solution at the distinguished mass
//! m = √(n²−1)/2 (curved-mass parameter μ = ½).
//!
//! There the solution is Φ = e^{−(n−1)t/2}[v_{φ₀} + (n−1)/2·V_{φ₀} + V_{φ₁}]
//! evaluated at radius φ(t) = 1 − e^{−t}, and expanding the wave responses
//! around radius 1 in powers of z = e^{−t} gives, with
//! V^{(k)}(x) = ((−1)^k/k!)·[∂_t^k V(x,t)]_{t=1},
//!
//! ```text
//! Φ_N(x,z) = z^{(n−1)/2} Σ_{k<N} [ (n−1)/2·V_{φ₀}^{(k)} − (k+1)V_{φ₀}^{(k+1)}
//!                                  + V_{φ₁}^{(k)} ] z^k,
//! |Φ − Φ_N| = O(e^{−Nt−(n−1)t/2}).
//! ```

use crate::desitter::{self, CauchyProblem};
use crate::wave::{self, RadialProfile};
use crate::{Error, Result};

/// Taylor coefficients of the wave responses at radius 1.
#[derive(Debug, Clone)]
pub struct ExpansionCoeffs {
    /// Truncation order N ≥ 1.
    pub order: usize,
    /// Center distance |x| of the sample point.
    pub x_radius: f64,
    /// V_{φ₀}^{(k)}, k = 0..=N.
    pub vk0: Vec<f64>,
    /// v_{φ₀}^{(k)}, k = 0..N, computed directly from derivatives of v.
    pub vk0_small: Vec<f64>,
    /// V_{φ₁}^{(k)}, k = 0..N.
    pub vk1: Vec<f64>,
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |a, b| a * b as f64)
}

/// k-th Taylor coefficient ((−1)^k/k!)·∂_t^k V(x,t)|_{t=1} of one datum.
fn coeff(phi: Option<&RadialProfile>, n: u32, r: f64, k: usize) -> Result<f64> {
    let Some(phi) = phi else { return Ok(0.0) };
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let d = match n {
        2 => fd_dt_k(&|rho| wave::v_pair(phi, 2, r, rho).map(|p| p.1), 1.0, k)?,
        _ => wave::big_v_dt_k(phi, n, r, 1.0, k)?,
    };
    Ok(sign / factorial(k) * d)
}

/// Same for the first-datum response v = ∂_t V.
fn coeff_v(phi: Option<&RadialProfile>, n: u32, r: f64, k: usize) -> Result<f64> {
    let Some(phi) = phi else { return Ok(0.0) };
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let d = match n {
        2 => fd_dt_k(&|rho| wave::v_pair(phi, 2, r, rho).map(|p| p.0), 1.0, k)?,
        _ => wave::big_v_dt_k(phi, n, r, 1.0, k + 1)?,
    };
    Ok(sign / factorial(k) * d)
}

/// Expansion coefficients of both data at |x| = r, truncation order N.
pub fn expansion_coeffs(
    phi0: Option<&RadialProfile>,
    phi1: Option<&RadialProfile>,
    n: u32,
    r: f64,
    order: usize,
) -> Result<ExpansionCoeffs> {
    if order == 0 {
        return Err(Error::Config("expansion order must be >= 1".into()));
    }
    let mut vk0 = Vec::with_capacity(order + 1);
    for k in 0..=order {
        vk0.push(coeff(phi0, n, r, k)?);
    }
    let mut vk0_small = Vec::with_capacity(order);
    for k in 0..order {
        vk0_small.push(coeff_v(phi0, n, r, k)?);
    }
    let mut vk1 = Vec::with_capacity(order);
    for k in 0..order {
        vk1.push(coeff(phi1, n, r, k)?);
    }
    Ok(ExpansionCoeffs { order, x_radius: r, vk0, vk0_small, vk1 })
}

/// Consolidated form: z^{(n−1)/2} Σ [ (n−1)/2·V₀^{(k)} − (k+1)V₀^{(k+1)} + V₁^{(k)} ] z^k.
pub fn asympt_eval(coeffs: &ExpansionCoeffs, n: u32, t: f64) -> f64 {
    let z = (-t).exp();
    let nf = n as f64;
    let mut acc = 0.0;
    let mut zk = 1.0;
    for k in 0..coeffs.order {
        let c = 0.5 * (nf - 1.0) * coeffs.vk0[k] - (k as f64 + 1.0) * coeffs.vk0[k + 1]
            + coeffs.vk1[k];
        acc += c * zk;
        zk *= z;
    }
    z.powf(0.5 * (nf - 1.0)) * acc
}

/// Original form written with the directly computed v-coefficients.
pub fn asympt_eval_direct(coeffs: &ExpansionCoeffs, n: u32, t: f64) -> f64 {
    let z = (-t).exp();
    let nf = n as f64;
    let mut acc = 0.0;
    let mut zk = 1.0;
    for k in 0..coeffs.order {
        acc += (coeffs.vk0_small[k] + 0.5 * (nf - 1.0) * coeffs.vk0[k] + coeffs.vk1[k]) * zk;
        zk *= z;
    }
    z.powf(0.5 * (nf - 1.0)) * acc
}

/// Residual diagnostics of a decay fit.
#[derive(Debug, Clone)]
pub struct DecayFit {
    /// Fitted slope of log|Φ − Φ_N| against t; expected ≈ −(N + (n−1)/2).
    pub rate: f64,
    /// Fitted amplitude, residual ≈ c·e^{rate·t}.
    pub c: f64,
    /// (t, Φ, Φ_N, residual) rows, including floor-excluded ones.
    pub rows: Vec<(f64, f64, f64, f64)>,
    /// How many rows were under the precision floor and left out of the fit.
    pub excluded: usize,
}

/// Fit the residual decay rate of the order-N expansion at radius r.
///
/// The problem must sit at the knot μ = ½ (the expansion is stated there);
/// residuals below the double-precision floor are excluded from the fit but
/// kept in the rows.
pub fn decay_fit(pb: &CauchyProblem, r: f64, order: usize, t_list: &[f64]) -> Result<DecayFit> {
    if !(pb.mp.mu == 0.5 && pb.mp.is_knot()) {
        return Err(Error::MassDomain(
            "decay fit requires the knot mass m = sqrt(n^2-1)/2".into(),
        ));
    }
    if t_list.len() < 3 {
        return Err(Error::Config("need at least 3 fit times".into()));
    }
    let coeffs =
        expansion_coeffs(pb.phi0.as_ref(), pb.phi1.as_ref(), pb.mp.n, r, order)?;
    let mut rows = Vec::with_capacity(t_list.len());
    let mut pts = Vec::new();
    let floor = 1e-14 * pb.data_norm().max(1e-30);
    let mut excluded = 0;
    for &t in t_list {
        let (phi, _, _) = desitter::solve_at_radius(pb, r, t)?;
        let approx = asympt_eval(&coeffs, pb.mp.n, t);
        let resid = phi - approx;
        rows.push((t, phi, approx, resid));
        if resid.abs() > floor {
            pts.push((t, resid.abs().ln()));
        } else {
            excluded += 1;
        }
    }
    let (rate, intercept) = linear_fit(&pts)
        .ok_or_else(|| Error::Config("too few residuals above the precision floor".into()))?;
    Ok(DecayFit { rate, c: intercept.exp(), rows, excluded })
}

/// Least-squares line through (x, y) points; returns (slope, intercept).
pub fn linear_fit(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    Some((slope, intercept))
}

/// Decay-fit rows as CSV (t, phi, phi_asympt, residual).
pub fn fit_to_csv(fit: &DecayFit) -> String {
    let mut out = String::from("t,phi,phi_asympt,residual\n");
    for &(t, phi, approx, resid) in &fit.rows {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", t, phi, approx, resid));
    }
    out
}

/// k-th derivative by central differences with Richardson extrapolation on
/// step halving; used only where analytic derivatives are unavailable (n=2).
fn fd_dt_k(f: &dyn Fn(f64) -> Result<f64>, x: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return f(x);
    }
    let stencil = |h: f64| -> Result<f64> {
        // central binomial stencil for the k-th derivative
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=k {
            let offset = (k as f64 / 2.0 - i as f64) * h;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(x + offset)?;
            binom *= (k - i) as f64 / (i as f64 + 1.0);
        }
        Ok(acc / h.powi(k as i32))
    };
    let mut h = 0.05;
    let mut prev = stencil(h)?;
    for _ in 0..8 {
        h *= 0.5;
        let cur = stencil(h)?;
        // one Richardson level, O(h²) leading error
        let extrap = (4.0 * cur - prev) / 3.0;
        if (extrap - cur).abs() <= 1e-8 * extrap.abs().max(1.0) {
            return Ok(extrap);
        }
        prev = cur;
    }
    Ok(prev)
}
