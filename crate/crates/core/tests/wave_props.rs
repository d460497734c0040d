//! Wave-propagator tests: closed-form anchors, oracle agreement, and the
//! structural invariants (v = ∂_t V, strong Huygens, domain of dependence).

mod common;

use approx::assert_relative_eq;
use common::flatwave;
use dskg::wave::{
    dalembert, descent2d_v_pair, kirchhoff_v_pair, radial_origin_v_pair, spherical_mean,
    RadialProfile,
};

fn bump(radius: f64, power: u32) -> RadialProfile {
    RadialProfile::bump(radius, power).unwrap()
}

#[test]
fn profile_construction_and_derivatives() {
    let p = bump(0.5, 8);
    assert_eq!(p.sup_norm(), 1.0);
    assert_eq!(p.eval(0.0), 1.0);
    assert_eq!(p.eval(0.5), 0.0);
    assert_eq!(p.eval(0.7), 0.0);
    assert_eq!(p.truncation_level(), 0.0);
    // even extension: odd derivatives flip sign
    let d1 = p.deriv(0.3, 1).unwrap();
    assert_relative_eq!(p.deriv(-0.3, 1).unwrap(), -d1, max_relative = 1e-15);
    assert_relative_eq!(p.deriv(-0.3, 2).unwrap(), p.deriv(0.3, 2).unwrap(), max_relative = 1e-15);
    // high orders vanish beyond the polynomial degree
    assert_eq!(p.deriv(0.2, 17).unwrap(), 0.0);

    let g = RadialProfile::truncated_gaussian(1.2, 6.0).unwrap();
    assert!(g.truncation_level() > 0.0 && g.truncation_level() < 2e-4);
    let h = 1e-6;
    let fd = (g.eval(0.4 + h) - g.eval(0.4 - h)) / (2.0 * h);
    assert_relative_eq!(fd, g.deriv(0.4, 1).unwrap(), max_relative = 1e-8);

    assert!(RadialProfile::bump(0.5, 0).is_err());
    assert!(RadialProfile::bump(-1.0, 4).is_err());
}

#[test]
fn dalembert_constants_and_mass_capture() {
    // constant datum in a wide plateau: static solution
    let c = RadialProfile::plateau(5.0, 2.5).unwrap();
    let zero = bump(0.1, 2).scaled(0.0);
    let s = dalembert(&c, &zero, 0.3, 1.0);
    assert_relative_eq!(s.v, 2.5, max_relative = 1e-15);
    // unit-total-mass second datum: V saturates at 1/2
    let raw = bump(0.4, 6);
    let total = 2.0 * raw.psi_at(0.4);
    let unit = raw.scaled(1.0 / total);
    let s = dalembert(&zero, &unit, 0.0, 3.0);
    assert_relative_eq!(s.big_v, 0.5, max_relative = 1e-14);
}

#[test]
fn dalembert_matches_line_oracle() {
    let p0 = bump(0.5, 8);
    let p1 = bump(0.4, 6);
    let s = dalembert(&p0, &p1, 0.0, 0.3);
    let ev0 = |x: f64| p0.eval(x);
    let ev1 = |x: f64| p1.eval(x);
    let v_fd = flatwave::wave1d(&ev0, &|_| 0.0, 0.0, 0.3, 2.0, 1e-3);
    let big_v_fd = flatwave::wave1d(&|_| 0.0, &ev1, 0.0, 0.3, 2.0, 1e-3);
    assert!((s.v - v_fd).abs() < 1e-4 * s.v.abs().max(1.0), "{} vs {v_fd}", s.v);
    assert!((s.big_v - big_v_fd).abs() < 1e-4, "{} vs {big_v_fd}", s.big_v);
}

#[test]
fn spherical_mean_shortcuts_and_quadrature() {
    let p = bump(0.5, 8);
    // radial datum at the origin: mean is the profile itself
    assert_eq!(spherical_mean(&p, &[0.0, 0.0, 0.0], 0.37).unwrap(), p.eval(0.37));
    // constant datum: mean of a constant
    let c = RadialProfile::plateau(3.0, 1.0).unwrap();
    assert_relative_eq!(
        spherical_mean(&c, &[0.2, 0.0, 0.0], 0.4).unwrap(),
        1.0,
        max_relative = 1e-12
    );
    // off-origin mean against the primitive identity
    // mean(r, ρ) = [H(r+ρ) − H(r−ρ)] / (2 r ρ) with H(τ) = ∫₀^τ sφ ds
    let (r, rho) = (0.3, 0.4);
    let quad = spherical_mean(&p, &[r, 0.0, 0.0], rho).unwrap();
    let h = |tau: f64| {
        // bump H in closed form
        let rr: f64 = 0.5 * 0.5;
        let x = tau.abs().min(0.5);
        let amp = 1.0 / 0.5f64.powi(16);
        amp / 18.0 * (rr.powi(9) - (rr - x * x).powi(9))
    };
    let exact = (h(r + rho) - h(r - rho)) / (2.0 * r * rho);
    assert_relative_eq!(quad, exact, max_relative = 1e-10);
}

#[test]
fn kirchhoff_origin_and_strong_huygens() {
    let p = bump(0.5, 8);
    // V(0,t) = t φ(t)
    let s = kirchhoff_v_pair(&p, &p, &[0.0, 0.0, 0.0], 0.3).unwrap();
    assert_relative_eq!(s.big_v, 0.3 * p.eval(0.3), max_relative = 1e-13);
    // beyond the support the response is exactly zero (no tail in flat 3d)
    let far = kirchhoff_v_pair(&p, &p, &[0.0, 0.0, 0.0], 1.7).unwrap();
    assert!(far.v.abs() <= 1e-14 && far.big_v.abs() <= 1e-14);
    let off = kirchhoff_v_pair(&p, &p, &[2.0, 0.0, 0.0], 0.9).unwrap();
    assert!(off.v.abs() <= 1e-14 && off.big_v.abs() <= 1e-14);
}

#[test]
fn kirchhoff_matches_radial_oracle() {
    let p = bump(0.5, 8);
    let ev = |r: f64| p.eval(r);
    let zero = |_: f64| 0.0;
    for (r, t) in [(0.2, 0.5), (0.0, 0.35), (0.45, 0.8)] {
        let s = kirchhoff_v_pair(&p, &p, &[r, 0.0, 0.0], t).unwrap();
        let v_fd = flatwave::wave_radial(3, &ev, &zero, r, t, 2.5, 1e-3);
        let big_v_fd = flatwave::wave_radial(3, &zero, &ev, r, t, 2.5, 1e-3);
        assert!((s.v - v_fd).abs() < 2e-4 * s.v.abs().max(1.0), "v {} vs {v_fd} at ({r},{t})", s.v);
        assert!(
            (s.big_v - big_v_fd).abs() < 2e-4 * s.big_v.abs().max(1.0),
            "V {} vs {big_v_fd} at ({r},{t})",
            s.big_v
        );
    }
}

#[test]
fn radial_origin_operator_expansion() {
    let p = bump(0.6, 9);
    let t = 0.4;
    // n = 3: V = t φ(t)
    let s3 = radial_origin_v_pair(3, &p, t).unwrap();
    assert_relative_eq!(s3.big_v, t * p.eval(t), max_relative = 1e-14);
    // n = 5: V = (1/3)(t^{-1}∂_t)(t³φ) = t φ + t²φ′/3
    let s5 = radial_origin_v_pair(5, &p, t).unwrap();
    let expect5 = t * p.eval(t) + t * t * p.deriv(t, 1).unwrap() / 3.0;
    assert_relative_eq!(s5.big_v, expect5, max_relative = 1e-13);
    // n = 7 against nested numeric differentiation of t⁵φ(t)/15
    let s7 = radial_origin_v_pair(7, &p, t).unwrap();
    let g = |x: f64| x.powi(5) * p.eval(x) / 15.0;
    let inv_t_dt = |f: &dyn Fn(f64) -> f64, x: f64| {
        let h = 1e-4;
        (f(x + h) - f(x - h)) / (2.0 * h * x)
    };
    let once = |x: f64| inv_t_dt(&g, x);
    let twice = inv_t_dt(&once, t);
    assert_relative_eq!(s7.big_v, twice, max_relative = 1e-5);
    // v = ∂_t V falls out of the same machinery
    let h = 1e-5;
    let vp = radial_origin_v_pair(5, &p, t + h).unwrap().big_v;
    let vm = radial_origin_v_pair(5, &p, t - h).unwrap().big_v;
    assert_relative_eq!(s5.v, (vp - vm) / (2.0 * h), max_relative = 1e-8);

    assert!(radial_origin_v_pair(4, &p, t).is_err());
}

#[test]
fn descent2d_constant_and_tail() {
    let c = RadialProfile::plateau(3.0, 1.4).unwrap();
    let zero = bump(0.1, 2).scaled(0.0);
    // constant second datum: V = c·t while the edge is out of reach
    let s = descent2d_v_pair(&zero, &c, &[0.0, 0.0], 0.6).unwrap();
    assert_relative_eq!(s.big_v, 1.4 * 0.6, max_relative = 1e-9);
    // no strong Huygens in 2d: the tail persists past the support
    let p = bump(0.5, 8);
    let tail = descent2d_v_pair(&zero, &p, &[0.0, 0.0], 1.5).unwrap();
    assert!(tail.big_v.abs() > 1e-3);
}

#[test]
fn descent2d_matches_radial_oracle() {
    let p = bump(0.5, 8);
    let ev = |r: f64| p.eval(r);
    let zero = |_: f64| 0.0;
    let (r, t) = (0.0, 0.6);
    let s = descent2d_v_pair(&p, &p, &[r, 0.0], t).unwrap();
    let v_fd = flatwave::wave_radial(2, &ev, &zero, r, t, 2.5, 1e-3);
    let big_v_fd = flatwave::wave_radial(2, &zero, &ev, r, t, 2.5, 1e-3);
    assert!((s.v - v_fd).abs() < 2e-4, "v {} vs {v_fd}", s.v);
    assert!((s.big_v - big_v_fd).abs() < 2e-4, "V {} vs {big_v_fd}", s.big_v);
}

#[test]
fn v_is_time_derivative_of_big_v() {
    let p = bump(0.5, 8);
    let h = 1e-5;
    // n = 1
    let sm = dalembert(&p, &p, 0.2, 0.25 - h);
    let sp = dalembert(&p, &p, 0.2, 0.25 + h);
    let mid = dalembert(&p, &p, 0.2, 0.25);
    assert_relative_eq!(
        (sp.big_v - sm.big_v) / (2.0 * h),
        mid.v,
        max_relative = 1e-6,
        epsilon = 1e-10
    );
    // n = 3 off-origin
    let x = [0.25, 0.0, 0.0];
    let sm = kirchhoff_v_pair(&p, &p, &x, 0.7 - h).unwrap();
    let sp = kirchhoff_v_pair(&p, &p, &x, 0.7 + h).unwrap();
    let mid = kirchhoff_v_pair(&p, &p, &x, 0.7).unwrap();
    assert_relative_eq!((sp.big_v - sm.big_v) / (2.0 * h), mid.v, max_relative = 1e-6);
    // n = 2
    let x2 = [0.15, 0.0];
    let sm = descent2d_v_pair(&p, &p, &x2, 0.5 - h).unwrap();
    let sp = descent2d_v_pair(&p, &p, &x2, 0.5 + h).unwrap();
    let mid = descent2d_v_pair(&p, &p, &x2, 0.5).unwrap();
    assert_relative_eq!((sp.big_v - sm.big_v) / (2.0 * h), mid.v, max_relative = 1e-5);
    // n = 5 at the origin
    let sm = radial_origin_v_pair(5, &p, 0.7 - h).unwrap();
    let sp = radial_origin_v_pair(5, &p, 0.7 + h).unwrap();
    let mid = radial_origin_v_pair(5, &p, 0.7).unwrap();
    assert_relative_eq!((sp.big_v - sm.big_v) / (2.0 * h), mid.v, max_relative = 1e-6);
}

#[test]
fn domain_of_dependence() {
    // two data that coincide inside r < 0.5 and differ only beyond it
    let near = RadialProfile::truncated_gaussian(0.5, 7.0).unwrap();
    let far = RadialProfile::truncated_gaussian(0.9, 7.0).unwrap();
    let zero = bump(0.1, 2).scaled(0.0);
    // evaluation cone |y - x| <= t stays inside the shared region
    for (x, t) in [(0.1, 0.3), (0.0, 0.45)] {
        let a = kirchhoff_v_pair(&near, &zero, &[x, 0.0, 0.0], t).unwrap();
        let b = kirchhoff_v_pair(&far, &zero, &[x, 0.0, 0.0], t).unwrap();
        assert!((a.v - b.v).abs() <= 1e-12, "{} vs {}", a.v, b.v);
        let a = dalembert(&near, &zero, x, t);
        let b = dalembert(&far, &zero, x, t);
        assert!((a.v - b.v).abs() <= 1e-12);
    }
}
