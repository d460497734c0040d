//! Independent reference evaluators used by the test suites.
//!
//! Everything here is deliberately method-independent of the library code:
//! direct series in double-double arithmetic, Stirling's series for Γ, raw
//! (untransformed) kernel formulas, and tiny derivative stencils whose
//! truncation error is pushed below 1e-15 by the dd precision.

use super::dd::{Dd, Ddc};

/// Γ(x) by argument shift and the Stirling/Bernoulli series, ~1e-25 accurate
/// for x in (0, 40].
pub fn gamma_dd(x: f64) -> Dd {
    assert!(x > 0.0);
    let mut shift = Dd::ONE;
    let mut x_dd = Dd::from(x);
    while x_dd.hi < 40.0 {
        shift = shift.mul(x_dd);
        x_dd = x_dd.addf(1.0);
    }
    // ln Γ(x) = (x-1/2)ln x − x + ln(2π)/2 + Σ c_k x^{1−2k}
    const COEFS: [(f64, f64); 8] = [
        (1.0, 12.0),
        (-1.0, 360.0),
        (1.0, 1260.0),
        (-1.0, 1680.0),
        (1.0, 1188.0),
        (-691.0, 360360.0),
        (1.0, 156.0),
        (-3617.0, 122400.0),
    ];
    let ln_x = x_dd.ln();
    let mut ln_gamma = x_dd.subf(0.5).mul(ln_x).sub(x_dd);
    // ln(2π)/2 with 2π in dd (π correction term is the standard f64 residual)
    let two_pi = Dd { hi: 2.0 * std::f64::consts::PI, lo: 2.0 * 1.2246467991473532e-16 };
    ln_gamma = ln_gamma.add(two_pi.ln().mulf(0.5));
    let inv = Dd::ONE.div(x_dd);
    let inv2 = inv.mul(inv);
    let mut pow = inv;
    for (num, den) in COEFS {
        ln_gamma = ln_gamma.add(pow.mulf(num).divf(den));
        pow = pow.mul(inv2);
    }
    ln_gamma.exp().div(shift)
}

/// Direct Gauss series in dd; usable for z up to ~0.995 (slow but exact).
pub fn hyp2f1_dd(a: f64, b: f64, c: f64, z: f64) -> Dd {
    let z_dd = Dd::from(z);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..200_000u32 {
        let kf = k as f64;
        term = term
            .mulf(a + kf)
            .mulf(b + kf)
            .div(Dd::from(c + kf).mulf(kf + 1.0))
            .mul(z_dd);
        sum = sum.add(term);
        if term.hi.abs() < 1e-38 * sum.hi.abs().max(1e-300) {
            return sum;
        }
    }
    panic!("dd series did not converge at z={z}");
}

/// Truncated dd series with a fixed term count.
pub fn hyp2f1_dd_terms(a: f64, b: f64, c: f64, z: f64, terms: usize) -> Dd {
    let z_dd = Dd::from(z);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..terms {
        let kf = k as f64;
        term = term
            .mulf(a + kf)
            .mulf(b + kf)
            .div(Dd::from(c + kf).mulf(kf + 1.0))
            .mul(z_dd);
        sum = sum.add(term);
    }
    sum
}

/// Complex-parameter dd series (a, b complex, c real, z real).
pub fn hyp2f1_ddc(a: Ddc, b: Ddc, c: f64, z: f64) -> Ddc {
    let mut term = Ddc::ONE;
    let mut sum = Ddc::ONE;
    for k in 0..200_000u32 {
        let kf = k as f64;
        let num = a.add(Ddc::new(kf, 0.0)).mul(b.add(Ddc::new(kf, 0.0)));
        term = term.mul(num).div(Ddc::new((c + kf) * (kf + 1.0), 0.0)).mul_dd(Dd::from(z));
        sum = sum.add(term);
        if term.norm_hi() < 1e-36 * sum.norm_hi().max(1e-300) {
            return sum;
        }
    }
    panic!("ddc series did not converge at z={z}");
}

/// Cone algebra in dd.
fn geometry_dd(z: f64, t: f64, t0: f64) -> (Dd, Dd, Dd) {
    let d = Dd::from(-t).exp();
    let d0 = Dd::from(-t0).exp();
    let delta = d0.sub(d).abs();
    let q = delta.subf(z).mul(delta.addf(z));
    let p = q.add(d.mul(d0).mulf(4.0));
    (q, p, q.div(p))
}

/// Small-regime E(z,t;0,t₀;μ) straight from the defining formula, all in dd.
pub fn e_kernel_dd(mu: f64, z: f64, t: f64, t0: f64) -> Dd {
    let (_q, p, zeta) = geometry_dd(z, t, t0);
    let f = hyp2f1_dd(0.5 - mu, 0.5 - mu, 1.0, zeta.to_f64());
    let pref = Dd::from(4.0)
        .powf(-mu)
        .mul(Dd::from(mu * (t0 + t)).exp())
        .mul(p.powf(mu - 0.5));
    pref.mul(f)
}

/// Small-regime K₀ from the raw displayed formula (bracket over Q); the dd
/// precision absorbs the cancellation that the library's rewritten form
/// avoids analytically.
pub fn k0_kernel_dd(mu: f64, z: f64, t: f64) -> Dd {
    let (q, p, zeta) = geometry_dd(z, t, 0.0);
    let d = Dd::from(-t).exp();
    let zf = zeta.to_f64();
    let f1 = hyp2f1_dd(0.5 - mu, 0.5 - mu, 1.0, zf);
    let f2 = hyp2f1_dd(-0.5 - mu, 0.5 - mu, 1.0, zf);
    let z2 = Dd::from(z).mul(Dd::from(z));
    let big_a = d.subf(1.0).add(d.mul(d).subf(1.0).sub(z2).mulf(mu));
    let big_b = Dd::ONE.sub(d.mul(d)).add(z2);
    let bracket = big_a.mul(f1).add(big_b.mulf(0.5 + mu).mul(f2));
    let pref = Dd::from(4.0)
        .powf(-mu)
        .mul(Dd::from(mu * t).exp())
        .mul(p.powf(mu))
        .div(q.mul(p.sqrt()));
    pref.mul(bracket)
}

/// Large-regime E via complex dd series; prefactor in complex f64 (its
/// rounding is ~1e-15, far below what the tests assert).
pub fn e_kernel_large(mu: f64, z: f64, t: f64, t0: f64) -> (f64, f64) {
    use num_complex::Complex64;
    let (_q, p, zeta) = geometry_dd(z, t, t0);
    let a = Ddc::new(0.5, mu);
    let f = hyp2f1_ddc(a, a, 1.0, zeta.to_f64());
    let m = Complex64::new(0.0, -mu);
    let pref = (m * (-4f64.ln() + (t0 + t))).exp() * ((m - 0.5) * p.to_f64().ln()).exp();
    let fc = Complex64::new(f.re.to_f64(), f.im.to_f64());
    let val = pref * fc;
    (val.re, val.im)
}

/// dd central difference; with h = 1e-6 the truncation error is ~1e-13·|f'''|
/// while dd rounding is negligible.
pub fn dd_central<F: Fn(f64) -> Dd>(f: F, x: f64, h: f64) -> f64 {
    f(x + h).sub(f(x - h)).divf(2.0 * h).to_f64()
}

/// Five-point dd stencil: truncation ~h⁴·|f⁽⁵⁾|/30.
pub fn dd_deriv5<F: Fn(f64) -> Dd>(f: F, x: f64, h: f64) -> f64 {
    let num = f(x - 2.0 * h)
        .sub(f(x + 2.0 * h))
        .add(f(x + h).sub(f(x - h)).mulf(8.0));
    num.divf(12.0 * h).to_f64()
}

/// Closed-form solution of Φ_tt + nΦ_t + m²Φ = 0, Φ(0)=c, Φ'(0)=0
/// (the spatially constant reduction; roots −n/2 ± μ).
pub fn ode_constant_data(n: u32, m: f64, c: f64, t: f64) -> f64 {
    let nf = n as f64;
    let disc = nf * nf / 4.0 - m * m;
    let decay = (-0.5 * nf * t).exp();
    if disc > 1e-14 {
        let mu = disc.sqrt();
        c * decay * ((mu * t).cosh() + nf / (2.0 * mu) * (mu * t).sinh())
    } else if disc < -1e-14 {
        let mu = (-disc).sqrt();
        c * decay * ((mu * t).cos() + nf / (2.0 * mu) * (mu * t).sin())
    } else {
        c * decay * (1.0 + 0.5 * nf * t)
    }
}
