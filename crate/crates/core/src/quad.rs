//! Gauss–Legendre quadrature with refinement-until-stable drivers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::{Error, Result};

/// Quadrature nodes paired with their weights.
pub type Rule = (Vec<f64>, Vec<f64>);

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; results are cached per n.
pub fn gauss_legendre(n: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&n) {
        return rule.clone();
    }
    let rule = compute_gauss_legendre(n);
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn compute_gauss_legendre(n: usize) -> Rule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// n-point Gauss–Legendre estimate of ∫_a^b f.
pub fn integrate_gl<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64, n: usize) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        acc += w * f(mid + half * x)?;
    }
    Ok(acc * half)
}

/// Integrate ∫_a^b f, doubling the rule order until two consecutive
/// estimates agree to `tol` (absolute, measured against max(1,|I|)·tol).
///
/// Returns the value and the number of nodes of the final rule.
pub fn integrate_refining<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, usize)> {
    if a == b {
        return Ok((0.0, 0));
    }
    let mut prev = integrate_gl(f, a, b, 16)?;
    let mut n = 32;
    loop {
        let cur = integrate_gl(f, a, b, n)?;
        if (cur - prev).abs() <= tol * cur.abs().max(1.0) {
            return Ok((cur, n));
        }
        if n >= 4096 {
            return Err(Error::QuadratureNonConvergence(format!(
                "interval [{a}, {b}], last delta {:.3e}",
                (cur - prev).abs()
            )));
        }
        prev = cur;
        n *= 2;
    }
}

/// Like [`integrate_refining`] but with nodes clustered toward both ends of
/// [a, b] through the substitution x = a + (b−a)·sin²(πu/2).
///
/// Suited to integrands with a boundary layer or a weak endpoint singularity;
/// the Jacobian (π/2)(b−a)·sin(πu/2)cos(πu/2) damps the endpoint values by
/// one extra power.
pub fn integrate_clustered<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, usize)> {
    if a == b {
        return Ok((0.0, 0));
    }
    let len = b - a;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut g = |u: f64| -> Result<f64> {
        let s = (half_pi * u).sin();
        let c = (half_pi * u).cos();
        let x = a + len * s * s;
        Ok(f(x)? * len * std::f64::consts::PI * s * c)
    };
    integrate_refining(&mut g, 0.0, 1.0, tol)
}
