//! Finite-difference scheme tests: the spatially-constant ODE reduction,
//! self-convergence order, causality of the numerical support, and the
//! binary dump round-trip.

mod common;

use common::oracle;
use dskg::fdref::{fd_probe, fd_solve, self_convergence_order, FdConfig, FdField};
use dskg::wave::RadialProfile;

fn bump_fn(radius: f64, power: u32) -> impl Fn(f64) -> f64 {
    let p = RadialProfile::bump(radius, power).unwrap();
    move |r: f64| p.eval(r)
}

#[test]
fn zero_data_stays_zero() {
    let cfg = FdConfig { n: 3, m: 1.0, r_max: 2.0, dr: 0.01, dt: 0.008, t_max: 0.5 };
    let field = fd_solve(&cfg, &|_| 0.0, &|_| 0.0, None).unwrap();
    assert!(field.values.iter().all(|&v| v == 0.0));
}

#[test]
fn cfl_violation_rejected() {
    let cfg = FdConfig { n: 3, m: 1.0, r_max: 2.0, dr: 0.01, dt: 0.0091, t_max: 0.5 };
    assert!(matches!(
        fd_solve(&cfg, &|_| 0.0, &|_| 0.0, None),
        Err(dskg::Error::CflViolation { .. })
    ));
}

#[test]
fn constant_data_follows_the_damped_ode() {
    // spatially constant data reduce the equation to Φ_tt + nΦ_t + m²Φ = 0
    for (n, m) in [(3u32, 1.0f64), (3, 2.5), (1, 0.3)] {
        let cfg = FdConfig { n, m, r_max: 3.0, dr: 0.01, dt: 1e-4, t_max: 1.0 };
        let field = fd_solve(&cfg, &|_| 0.7, &|_| 0.0, None).unwrap();
        for t in [0.25, 0.5, 1.0] {
            let got = field.probe(0.5, t).unwrap();
            let want = oracle::ode_constant_data(n, m, 0.7, t);
            assert!(
                (got - want).abs() <= 1e-6 * want.abs().max(1.0),
                "n={n} m={m} t={t}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn self_convergence_is_second_order() {
    let cfg = FdConfig { n: 3, m: 2f64.sqrt(), r_max: 1.8, dr: 0.02, dt: 0.016, t_max: 1.0 };
    let phi = bump_fn(0.5, 8);
    // probes aligned with all three grids so bilinear interpolation is exact
    let order = self_convergence_order(&cfg, &phi, &phi, &[(0.3, 0.8), (0.6, 0.64), (0.0, 0.96)])
        .unwrap();
    assert!(
        (1.9..=2.1).contains(&order),
        "observed convergence order {order}"
    );
}

#[test]
fn numerical_support_respects_the_horizon() {
    // support must not outrun radius supp + ∫e^{-s}ds + O(dr)
    let cfg = FdConfig { n: 3, m: 1.0, r_max: 2.5, dr: 0.005, dt: 0.004, t_max: 1.5 };
    let phi = bump_fn(0.4, 8);
    let field = fd_solve(&cfg, &phi, &|_| 0.0, None).unwrap();
    let t: f64 = 1.5;
    let physical_edge = 0.4 + (1.0 - (-t).exp());
    let pad = 12.0 * cfg.dr;
    let mut r = physical_edge + pad;
    while r < 2.4 {
        let v = field.probe(r, t).unwrap();
        assert!(v.abs() < 1e-10, "leak {v:.3e} at r={r}");
        r += 0.05;
    }
}

#[test]
fn probe_is_bilinear() {
    let cfg = FdConfig { n: 3, m: 0.5, r_max: 1.0, dr: 0.1, dt: 0.05, t_max: 0.3 };
    let phi = bump_fn(0.5, 4);
    let field = fd_solve(&cfg, &phi, &phi, None).unwrap();
    // identity on nodes (up to the float division in the index math)
    let node = field.at(3, 2);
    assert!((field.probe(0.3, 0.1).unwrap() - node).abs() <= 1e-14 * node.abs());
    // midpoint of a bilinear patch is the average of its corners
    let avg = 0.25
        * (field.at(3, 2) + field.at(4, 2) + field.at(3, 3) + field.at(4, 3));
    let got = field.probe(0.35, 0.125).unwrap();
    assert!((got - avg).abs() < 1e-14);
    // out of grid errors
    assert!(field.probe(1.2, 0.1).is_err());
    assert!(field.probe(0.1, 0.4).is_err());
}

#[test]
fn forcing_enters_the_scheme() {
    // zero data with forcing: at early times Φ ≈ t²/2·f
    let cfg = FdConfig { n: 3, m: 2f64.sqrt(), r_max: 2.0, dr: 0.005, dt: 1e-4, t_max: 0.1 };
    let f = |_r: f64, _t: f64| 1.0;
    let field = fd_solve(&cfg, &|_| 0.0, &|_| 0.0, Some(&f)).unwrap();
    let got = field.probe(0.3, 0.1).unwrap();
    // the constant-forcing closed form at the knot mass is φ(t)²/2
    let pt: f64 = 1.0 - (-0.1f64).exp();
    assert!((got - pt * pt / 2.0).abs() < 1e-6, "{got}");
}

#[test]
fn dump_round_trip() {
    let cfg = FdConfig { n: 3, m: 1.25, r_max: 1.0, dr: 0.05, dt: 0.04, t_max: 0.2 };
    let phi = bump_fn(0.5, 4);
    let field = fd_solve(&cfg, &phi, &phi, None).unwrap();
    let mut buf = Vec::new();
    field.write_dump(&mut buf).unwrap();
    let back = FdField::read_dump(&mut buf.as_slice()).unwrap();
    assert_eq!(back.nr, field.nr);
    assert_eq!(back.nt, field.nt);
    assert_eq!(back.values, field.values);
    assert_eq!(back.config.n, 3);
    assert_eq!(back.config.m, 1.25);
    assert_eq!(fd_probe(&back, 0.325, 0.11).unwrap(), fd_probe(&field, 0.325, 0.11).unwrap());
}
