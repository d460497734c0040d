//! Plain finite-difference solvers for the flat wave equation, used as
//! oracles for the analytic propagators. Independent of the library: simple
//! leapfrog, no shared code.

/// Solve v_tt = v_xx on the line with v(x,0)=phi0, v_t(x,0)=phi1 and probe
/// at (x, t). Domain [-L, L], Dirichlet far ends.
pub fn wave1d(
    phi0: &dyn Fn(f64) -> f64,
    phi1: &dyn Fn(f64) -> f64,
    x: f64,
    t: f64,
    l: f64,
    dx: f64,
) -> f64 {
    let dt = 0.5 * dx;
    let nx = (2.0 * l / dx).round() as usize + 1;
    let nt = (t / dt).ceil() as usize + 1;
    let grid = |i: usize| (i as f64) * dx - l;
    let c2 = (dt / dx) * (dt / dx);
    let mut prev: Vec<f64> = (0..nx).map(|i| phi0(grid(i))).collect();
    let mut cur: Vec<f64> = (0..nx)
        .map(|i| {
            let lap = if i == 0 || i == nx - 1 {
                0.0
            } else {
                prev[i + 1] - 2.0 * prev[i] + prev[i - 1]
            };
            prev[i] + dt * phi1(grid(i)) + 0.5 * c2 * lap
        })
        .collect();
    for _ in 1..nt {
        let mut next = vec![0.0; nx];
        for i in 1..nx - 1 {
            next[i] = 2.0 * cur[i] - prev[i] + c2 * (cur[i + 1] - 2.0 * cur[i] + cur[i - 1]);
        }
        prev = cur;
        cur = next;
    }
    // linear interpolation in x at the final (overshot) time step, then in t
    let probe_row = |row: &[f64]| -> f64 {
        let fi = (x + l) / dx;
        let i = (fi.floor() as usize).min(nx - 2);
        let w = fi - i as f64;
        row[i] * (1.0 - w) + row[i + 1] * w
    };
    // time interpolation between the last two rows
    let t_end = nt as f64 * dt;
    let w = 1.0 - (t_end - t) / dt;
    probe_row(&prev) * (1.0 - w) + probe_row(&cur) * w
}

/// Radial flat wave in dimension n (2 or 3) via leapfrog on
/// Φ_tt = Φ_rr + (n−1)/r·Φ_r, even at the axis; probe at (r, t).
pub fn wave_radial(
    n: u32,
    phi0: &dyn Fn(f64) -> f64,
    phi1: &dyn Fn(f64) -> f64,
    r: f64,
    t: f64,
    r_max: f64,
    dr: f64,
) -> f64 {
    let nf = n as f64;
    let dt = 0.5 * dr;
    let nr = (r_max / dr).round() as usize + 1;
    let nt = (t / dt).ceil() as usize + 1;
    let c2 = (dt / dr) * (dt / dr);
    let lap = |row: &[f64], i: usize| -> f64 {
        if i == 0 {
            2.0 * nf * (row[1] - row[0])
        } else if i == nr - 1 {
            0.0
        } else {
            row[i + 1] - 2.0 * row[i] + row[i - 1]
                + (nf - 1.0) / (i as f64) * 0.5 * (row[i + 1] - row[i - 1])
        }
    };
    let mut prev: Vec<f64> = (0..nr).map(|i| phi0(i as f64 * dr)).collect();
    let mut cur: Vec<f64> = (0..nr)
        .map(|i| prev[i] + dt * phi1(i as f64 * dr) + 0.5 * c2 * lap(&prev, i))
        .collect();
    for _ in 1..nt {
        let mut next = vec![0.0; nr];
        for i in 0..nr - 1 {
            next[i] = 2.0 * cur[i] - prev[i] + c2 * lap(&cur, i);
        }
        prev = cur;
        cur = next;
    }
    let probe_row = |row: &[f64]| -> f64 {
        let fi = r / dr;
        let i = (fi.floor() as usize).min(nr - 2);
        let w = fi - i as f64;
        row[i] * (1.0 - w) + row[i + 1] * w
    };
    let t_end = nt as f64 * dt;
    let w = 1.0 - (t_end - t) / dt;
    probe_row(&prev) * (1.0 - w) + probe_row(&cur) * w
}
