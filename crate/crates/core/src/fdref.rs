//! Independent finite-difference oracle.
//!
//! Solves Φ_tt + nΦ_t − e^{−2t}ΔΦ + m²Φ = f on the radial grid with a
//! second-order explicit leapfrog scheme, centered damping term and the
//! l'Hôpital stencil Δ ≈ n·∂_rr on the axis. Deliberately shares nothing
//! with the representation solver: no kernels, no wave propagators.
//!
//! Wave speed is e^{−t} ≤ 1, so dt ≤ 0.9·dr is enforced as the CFL bound and
//! the outer boundary only needs r_max > supp + 1 for the horizon never to
//! reach it.

use std::io::{Read, Write};

use crate::{Error, Result};

/// Grid and scheme configuration.
#[derive(Debug, Clone)]
pub struct FdConfig {
    pub n: u32,
    pub m: f64,
    pub r_max: f64,
    pub dr: f64,
    pub dt: f64,
    pub t_max: f64,
}

impl FdConfig {
    pub fn validate(&self) -> Result<()> {
        let limit = 0.9 * self.dr;
        if self.dt > limit {
            return Err(Error::CflViolation { dt: self.dt, limit });
        }
        if self.r_max <= 0.0 || self.dr <= 0.0 || self.t_max < 0.0 {
            return Err(Error::Config("grid extents must be positive".into()));
        }
        Ok(())
    }
}

/// Solved field on the (r, t) lattice, row-major in time.
#[derive(Debug, Clone)]
pub struct FdField {
    pub config: FdConfig,
    pub nr: usize,
    pub nt: usize,
    /// values[j * nr + i] = Φ(r_i, t_j)
    pub values: Vec<f64>,
}

impl FdField {
    pub fn r_of(&self, i: usize) -> f64 {
        i as f64 * self.config.dr
    }

    pub fn t_of(&self, j: usize) -> f64 {
        j as f64 * self.config.dt
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nr + i]
    }

    /// Bilinear interpolation at (r, t).
    pub fn probe(&self, r: f64, t: f64) -> Result<f64> {
        let FdConfig { dr, dt, .. } = self.config;
        if r < 0.0 || t < 0.0 {
            return Err(Error::OutOfGrid { r, t });
        }
        let fi = r / dr;
        let fj = t / dt;
        let i = (fi.floor() as usize).min(self.nr.saturating_sub(2));
        let j = (fj.floor() as usize).min(self.nt.saturating_sub(2));
        if fi > (self.nr - 1) as f64 + 1e-9 || fj > (self.nt - 1) as f64 + 1e-9 {
            return Err(Error::OutOfGrid { r, t });
        }
        let wx = (fi - i as f64).clamp(0.0, 1.0);
        let wy = (fj - j as f64).clamp(0.0, 1.0);
        Ok(self.at(i, j) * (1.0 - wx) * (1.0 - wy)
            + self.at(i + 1, j) * wx * (1.0 - wy)
            + self.at(i, j + 1) * (1.0 - wx) * wy
            + self.at(i + 1, j + 1) * wx * wy)
    }

    /// Binary dump. Little-endian layout: magic `KGFD`, u32 n, f64 m,
    /// f64 dr, f64 dt, u64 nr, u64 nt, then nr·nt f64 values row-major in
    /// time (row j holds Φ(·, t_j)).
    pub fn write_dump<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(b"KGFD")?;
        w.write_all(&self.config.n.to_le_bytes())?;
        w.write_all(&self.config.m.to_le_bytes())?;
        w.write_all(&self.config.dr.to_le_bytes())?;
        w.write_all(&self.config.dt.to_le_bytes())?;
        w.write_all(&(self.nr as u64).to_le_bytes())?;
        w.write_all(&(self.nt as u64).to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_dump<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != b"KGFD" {
            return Err(Error::Config("bad field dump magic".into()));
        }
        let mut b4 = [0u8; 4];
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b4)?;
        let n = u32::from_le_bytes(b4);
        r.read_exact(&mut b8)?;
        let m = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let dr = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let dt = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let nr = u64::from_le_bytes(b8) as usize;
        r.read_exact(&mut b8)?;
        let nt = u64::from_le_bytes(b8) as usize;
        let mut values = vec![0.0; nr * nt];
        for v in values.iter_mut() {
            r.read_exact(&mut b8)?;
            *v = f64::from_le_bytes(b8);
        }
        let r_max = (nr.saturating_sub(1)) as f64 * dr;
        let t_max = (nt.saturating_sub(1)) as f64 * dt;
        Ok(FdField {
            config: FdConfig { n, m, r_max, dr, dt, t_max },
            nr,
            nt,
            values,
        })
    }
}

/// Explicit leapfrog solve.
///
/// `phi0`, `phi1` sample the initial data at radius r; `forcing` (if any)
/// samples f(r, t). The first step is seeded second-order from
/// Φ_tt(·,0) = −nφ₁ + Δφ₀ − m²φ₀ + f(·,0).
pub fn fd_solve(
    cfg: &FdConfig,
    phi0: &dyn Fn(f64) -> f64,
    phi1: &dyn Fn(f64) -> f64,
    forcing: Option<&dyn Fn(f64, f64) -> f64>,
) -> Result<FdField> {
    cfg.validate()?;
    let nr = (cfg.r_max / cfg.dr).round() as usize + 1;
    let nt = (cfg.t_max / cfg.dt).round() as usize + 1;
    let nf = cfg.n as f64;
    let m2 = cfg.m * cfg.m;
    let dr = cfg.dr;
    let dt = cfg.dt;
    let inv_dr2 = 1.0 / (dr * dr);

    let mut values = vec![0.0f64; nr * nt];
    let lap = |row: &[f64], i: usize| -> f64 {
        if i == 0 {
            // axis: Δ ≈ n ∂_rr with the even ghost Φ[-1] = Φ[1]
            2.0 * nf * (row[1] - row[0]) * inv_dr2
        } else if i == nr - 1 {
            0.0 // Dirichlet boundary, never reached by the horizon
        } else {
            let second = (row[i + 1] - 2.0 * row[i] + row[i - 1]) * inv_dr2;
            let first = (row[i + 1] - row[i - 1]) / (2.0 * dr) * (nf - 1.0) / (i as f64 * dr);
            second + first
        }
    };

    // t = 0 row
    for (i, v) in values[..nr].iter_mut().enumerate() {
        *v = phi0(i as f64 * dr);
    }
    if nt == 1 {
        return Ok(FdField { config: cfg.clone(), nr, nt, values });
    }
    // t = dt row: Taylor seed
    {
        let (row0, rest) = values.split_at_mut(nr);
        let row1 = &mut rest[..nr];
        for i in 0..nr - 1 {
            let r = i as f64 * dr;
            let p1 = phi1(r);
            let acc = -nf * p1 + lap(row0, i) - m2 * row0[i]
                + forcing.map_or(0.0, |f| f(r, 0.0));
            row1[i] = row0[i] + dt * p1 + 0.5 * dt * dt * acc;
        }
        row1[nr - 1] = 0.0;
    }

    // leapfrog with centered damping: solve for Φ^{j+1} in
    // (Φ^{j+1} − 2Φ^j + Φ^{j−1})/dt² + n(Φ^{j+1} − Φ^{j−1})/(2dt)
    //   − e^{−2t_j} ΔΦ^j + m²Φ^j = f^j
    let a_plus = 1.0 / (dt * dt) + nf / (2.0 * dt);
    let a_minus = 1.0 / (dt * dt) - nf / (2.0 * dt);
    for j in 1..nt - 1 {
        let t_j = j as f64 * dt;
        let speed2 = (-2.0 * t_j).exp();
        let (past, future) = values.split_at_mut((j + 1) * nr);
        let row_prev = &past[(j - 1) * nr..j * nr];
        let row_cur = &past[j * nr..];
        let row_next = &mut future[..nr];
        for i in 0..nr - 1 {
            let r = i as f64 * dr;
            let rhs = 2.0 / (dt * dt) * row_cur[i] - a_minus * row_prev[i]
                + speed2 * lap(row_cur, i)
                - m2 * row_cur[i]
                + forcing.map_or(0.0, |f| f(r, t_j));
            row_next[i] = rhs / a_plus;
        }
        row_next[nr - 1] = 0.0;
        let mag = row_next.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if mag > 1e6 {
            return Err(Error::BlowUp { t: t_j + dt, mag });
        }
    }
    Ok(FdField { config: cfg.clone(), nr, nt, values })
}

/// Convenience probe (bilinear interpolation) mirroring [`FdField::probe`].
pub fn fd_probe(field: &FdField, r: f64, t: f64) -> Result<f64> {
    field.probe(r, t)
}

/// Richardson estimate of the scheme's self-convergence order from three
/// dyadically refined runs probed at (r, t).
pub fn self_convergence_order(
    base: &FdConfig,
    phi0: &dyn Fn(f64) -> f64,
    phi1: &dyn Fn(f64) -> f64,
    probes: &[(f64, f64)],
) -> Result<f64> {
    let run = |scale: f64| -> Result<FdField> {
        let cfg = FdConfig {
            dr: base.dr * scale,
            dt: base.dt * scale,
            ..base.clone()
        };
        fd_solve(&cfg, phi0, phi1, None)
    };
    let coarse = run(1.0)?;
    let medium = run(0.5)?;
    let fine = run(0.25)?;
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for &(r, t) in probes {
        let c = coarse.probe(r, t)?;
        let m = medium.probe(r, t)?;
        let f = fine.probe(r, t)?;
        num = num.max((c - m).abs());
        den = den.max((m - f).abs());
    }
    if den == 0.0 {
        return Err(Error::Config("refinement differences vanished".into()));
    }
    Ok((num / den).log2())
}
