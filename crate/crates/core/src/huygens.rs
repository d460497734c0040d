//! Tail measurements: does the field vanish once the observation point can
//! no longer be reached from the data support along null geodesics?
//!
//! A signal from radius ρ reaches the origin at time t only if
//! ρ ≤ φ(t) = 1 − e^{−t}, so the origin leaves the influence region of data
//! supported in radius `supp` at t* = −ln(1 − supp − margin). Everything
//! measured past t* is tail.

use serde::Serialize;

use crate::asymptotics::linear_fit;
use crate::desitter::{self, CauchyProblem};
use crate::kernels::MassParams;
use crate::wave::RadialProfile;
use crate::{Error, Result};

/// Tail suprema below this (relative to the data norm) count as tail-free.
pub const TAIL_FREE_THRESHOLD: f64 = 1e-6;
/// Tail suprema above this count as genuinely tailed.
pub const TAILED_THRESHOLD: f64 = 1e-3;
/// Default cone-exit margin.
pub const DEFAULT_MARGIN: f64 = 0.1;

/// Which initial data take part in the experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DatumMode {
    Full,
    FirstDatumOnly,
    SecondDatumOnly,
}

/// Experiment outcome. `Indeterminate` is an explicit result, never an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Huygens,
    IncompleteHuygens,
    Tailed,
    Indeterminate,
}

/// Tail magnitudes past the cone-exit time plus the classification.
#[derive(Debug, Clone, Serialize)]
pub struct HuygensReport {
    pub mp: MassParams,
    pub datum_mode: DatumMode,
    pub exit_time: f64,
    /// (t, |Φ(0,t)|) for every grid time past the exit time.
    pub tail_samples: Vec<(f64, f64)>,
    /// sup |Φ(0,t)| / ‖data‖ over the tail samples.
    pub tail_sup: f64,
    /// Sup-norm of the initial data used for normalisation.
    pub data_norm: f64,
    pub verdict: Verdict,
    /// Fitted slope of log|Φ(0,t)| over the tail, when enough samples carry
    /// signal above the noise floor.
    pub decay_rate: Option<f64>,
}

/// Evaluate the tail of Φ(0,·) past the cone-exit time.
pub fn measure_tail(pb: &CauchyProblem, t_grid: &[f64], margin: f64) -> Result<HuygensReport> {
    let supp = pb.data_support();
    if supp + margin >= 1.0 {
        return Err(Error::SupportTooLarge(supp + margin));
    }
    let exit_time = -(1.0 - supp - margin).ln();
    let norm = pb.data_norm();
    let mut tail_samples = Vec::new();
    let mut tail_sup = 0.0f64;
    for &t in t_grid {
        if t <= exit_time {
            continue;
        }
        let (phi, _, _) = desitter::solve_at_radius(pb, 0.0, t)?;
        tail_samples.push((t, phi.abs()));
        tail_sup = tail_sup.max(phi.abs() / norm);
    }
    if tail_samples.is_empty() {
        return Err(Error::Config(format!(
            "no grid times past the exit time {exit_time:.3}"
        )));
    }
    let datum_mode = match (&pb.phi0, &pb.phi1) {
        (Some(_), None) => DatumMode::FirstDatumOnly,
        (None, Some(_)) => DatumMode::SecondDatumOnly,
        _ => DatumMode::Full,
    };
    let verdict = if tail_sup <= TAIL_FREE_THRESHOLD {
        if datum_mode == DatumMode::Full {
            Verdict::Huygens
        } else {
            Verdict::IncompleteHuygens
        }
    } else if tail_sup >= TAILED_THRESHOLD {
        Verdict::Tailed
    } else {
        Verdict::Indeterminate
    };
    // signal-bearing samples only: the flat noise floor would bias the slope
    let floor = 1e-14 * norm;
    let pts: Vec<(f64, f64)> = tail_samples
        .iter()
        .filter(|&&(_, a)| a > floor)
        .map(|&(t, a)| (t, a.ln()))
        .collect();
    let decay_rate = if pts.len() >= 3 { linear_fit(&pts).map(|(s, _)| s) } else { None };
    Ok(HuygensReport {
        mp: pb.mp,
        datum_mode,
        exit_time,
        tail_samples,
        tail_sup,
        data_norm: norm,
        verdict,
        decay_rate,
    })
}

/// Run [`measure_tail`] across a list of masses with a shared datum shape.
pub fn mass_sweep(
    n: u32,
    masses: &[f64],
    radius: f64,
    power: u32,
    mode: DatumMode,
    t_grid: &[f64],
    margin: f64,
) -> Result<Vec<HuygensReport>> {
    let bump = RadialProfile::bump(radius, power)?;
    masses
        .iter()
        .map(|&m| {
            let mp = MassParams::new(n, m)?;
            let (phi0, phi1) = match mode {
                DatumMode::Full => (Some(bump.clone()), Some(bump.clone())),
                DatumMode::FirstDatumOnly => (Some(bump.clone()), None),
                DatumMode::SecondDatumOnly => (None, Some(bump.clone())),
            };
            let pb = CauchyProblem::new(mp, phi0, phi1)?;
            measure_tail(&pb, t_grid, margin)
        })
        .collect()
}

/// Report list as pretty JSON.
pub fn reports_to_json(reports: &[HuygensReport]) -> Result<String> {
    serde_json::to_string_pretty(reports)
        .map_err(|e| Error::Config(format!("json encoding failed: {e}")))
}

/// Tail samples of one report as CSV (t, tail_abs, tail_rel), the relative
/// column normalised by the data sup-norm.
pub fn report_to_csv(report: &HuygensReport) -> String {
    let mut out = String::from("t,tail_abs,tail_rel\n");
    for &(t, a) in &report.tail_samples {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", t, a, a / report.data_norm));
    }
    out
}
