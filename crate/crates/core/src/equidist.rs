//! Spectra of centers accumulating at a Misiurewicz parameter, and a
//! trend test for their equidistribution on the circle `|λ| = 1/|μ|`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dd::{cabs, cdd, to_c64, Dd};
use crate::dynamics::{cpowi, CenterConfig, CenterRecord};
use crate::error::{Error, Result};
use crate::spectrum::{spectrum, SpectrumConfig, SpectrumResult};
use crate::{CDd, C64};

/// Default number of Fourier modes.
pub const DEFAULT_MODES: usize = 10;

/// A parameter whose critical orbit lands on a repelling fixed point.
#[derive(Clone, Debug)]
pub struct AnchorSpec {
    pub degree: u32,
    pub c0: CDd,
    /// The fixed point `β₀ = f^{k₀}(0)`.
    pub beta0: C64,
    /// `μ = f'(β₀)`.
    pub multiplier: C64,
    /// Preperiod `k₀`.
    pub preperiod: usize,
}

impl AnchorSpec {
    /// Follows the critical orbit of `c0` until it reaches a fixed point.
    pub fn new(degree: u32, c0: C64) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidInput(format!("degree must be at least 2, got {degree}")));
        }
        let c = cdd(c0);
        let tol = 1e-12;
        let mut orbit: Vec<CDd> = vec![CDd::zero()];
        for _ in 0..64 {
            let z = cpowi(*orbit.last().unwrap(), degree) + c;
            if !(cabs(z).to_f64() <= 1e6) {
                return Err(Error::UnsupportedAnchor(format!("critical orbit of {c0} escapes")));
            }
            if let Some(j) = orbit.iter().position(|&w| cabs(w - z).to_f64() <= tol) {
                let period = orbit.len() - j;
                if j == 0 {
                    return Err(Error::UnsupportedAnchor(format!(
                        "{c0} is a center of period {period}, not a Misiurewicz parameter"
                    )));
                }
                if period != 1 {
                    return Err(Error::UnsupportedAnchor(format!(
                        "critical orbit of {c0} lands on a cycle of period {period}; only fixed-point anchors are supported"
                    )));
                }
                let beta = to_c64(z);
                let mu = beta.powu(degree - 1) * degree as f64;
                if mu.norm() <= 1.0 {
                    return Err(Error::UnsupportedAnchor(format!("fixed point {beta} is not repelling")));
                }
                return Ok(AnchorSpec { degree, c0: c, beta0: beta, multiplier: mu, preperiod: j });
            }
            orbit.push(z);
        }
        Err(Error::UnsupportedAnchor(format!("critical orbit of {c0} not preperiodic within 64 steps")))
    }
}

/// Centers of the requested periods closest to the anchor, one per period.
///
/// Newton starts at `c₀` and at `c₀ + s·t·e^{iθ}` for a few multiples `t`
/// of the expected distance `s = |μ|^{−(m−k₀)}`; the validated center
/// nearest `c₀` wins.
pub fn generate_center_sequence(
    anchor: &AnchorSpec,
    periods: &[usize],
    cfg: &CenterConfig,
) -> Result<Vec<CenterRecord>> {
    periods.par_iter().map(|&m| nearest_center(anchor, m, cfg)).collect()
}

fn nearest_center(anchor: &AnchorSpec, m: usize, cfg: &CenterConfig) -> Result<CenterRecord> {
    if m <= anchor.preperiod {
        return Err(Error::NoNearbyCenter(m));
    }
    let s = anchor.multiplier.norm().powi(-((m - anchor.preperiod) as i32));
    let mut starts = vec![anchor.c0];
    for t in [1.0, 0.5, 2.0, 0.25, 4.0, 8.0] {
        for k in 0..8 {
            let off = C64::from_polar(s * t, std::f64::consts::PI * k as f64 / 4.0);
            starts.push(anchor.c0 + cdd(off));
        }
    }
    let mut best: Option<(Dd, CenterRecord)> = None;
    for st in starts {
        if let Some(rec) = crate::dynamics::center_from_start(anchor.degree, m, st, cfg) {
            let d = cabs(rec.c - anchor.c0);
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, rec));
            }
        }
    }
    best.map(|(_, r)| r).ok_or(Error::NoNearbyCenter(m))
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalMeasure {
    /// `ν = μλ` over all eigenvalues.
    pub samples: Vec<C64>,
    /// `(k, m_k)` for `−K ≤ k ≤ K`, with `m_k` the mean of `ν^k`.
    pub moments: Vec<(i32, C64)>,
    pub mean_radius: f64,
    /// Root-mean-square of `|ν| − 1`.
    pub radial_deviation: f64,
}

impl EmpiricalMeasure {
    /// `max_{1 ≤ |k| ≤ K} |m_k|`.
    pub fn max_moment(&self) -> f64 {
        self.moments
            .iter()
            .filter(|(k, _)| *k != 0)
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn moment(&self, k: i32) -> Option<C64> {
        self.moments.iter().find(|(j, _)| *j == k).map(|(_, v)| *v)
    }
}

/// Scales eigenvalues by `μ` and computes moments and radial statistics.
pub fn empirical_measure(eigenvalues: &[C64], mu: C64, modes: usize) -> Result<EmpiricalMeasure> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidInput("empirical measure needs at least one sample".into()));
    }
    let samples: Vec<C64> = eigenvalues.iter().map(|&l| l * mu).collect();
    let n = samples.len() as f64;
    let k = modes as i32;
    let moments = (-k..=k)
        .map(|j| {
            let s = samples.iter().fold(C64::zero(), |acc, z| acc + z.powi(j));
            (j, s / n)
        })
        .collect();
    let mean_radius = samples.iter().map(|z| z.norm()).sum::<f64>() / n;
    let radial_deviation = (samples.iter().map(|z| (z.norm() - 1.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(EmpiricalMeasure { samples, moments, mean_radius, radial_deviation })
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodRow {
    pub period: usize,
    pub samples: usize,
    pub max_moment: f64,
    pub radial_deviation: f64,
    pub mean_radius: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquidistReport {
    pub rows: Vec<PeriodRow>,
    pub moment_slope: f64,
    pub radial_slope: f64,
    pub pass: bool,
}

/// Least-squares slope of `y` against `x`; zero for fewer than two points.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    if x.len() < 2 {
        return 0.0;
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Passes iff the maximal moment and the radial deviation both trend down.
pub fn equidistribution_test(measures: &[(usize, EmpiricalMeasure)]) -> EquidistReport {
    let rows: Vec<PeriodRow> = measures
        .iter()
        .map(|(m, e)| PeriodRow {
            period: *m,
            samples: e.samples.len(),
            max_moment: e.max_moment(),
            radial_deviation: e.radial_deviation,
            mean_radius: e.mean_radius,
        })
        .collect();
    let x: Vec<f64> = rows.iter().map(|r| r.period as f64).collect();
    let mom: Vec<f64> = rows.iter().map(|r| r.max_moment).collect();
    let rad: Vec<f64> = rows.iter().map(|r| r.radial_deviation).collect();
    let moment_slope = ls_slope(&x, &mom);
    let radial_slope = ls_slope(&x, &rad);
    EquidistReport { rows, moment_slope, radial_slope, pass: moment_slope < 0.0 && radial_slope < 0.0 }
}

/// Everything produced by one equidistribution experiment.
#[derive(Clone, Debug)]
pub struct EquidistRun {
    pub anchor: AnchorSpec,
    pub centers: Vec<CenterRecord>,
    pub spectra: Vec<SpectrumResult>,
    pub measures: Vec<(usize, EmpiricalMeasure)>,
    pub report: EquidistReport,
}

pub fn run_equidistribution(
    anchor: &AnchorSpec,
    periods: &[usize],
    center_cfg: &CenterConfig,
    spec_cfg: &SpectrumConfig,
    modes: usize,
) -> Result<EquidistRun> {
    let centers = generate_center_sequence(anchor, periods, center_cfg)?;
    let spectra = centers
        .par_iter()
        .map(|c| spectrum(c, spec_cfg))
        .collect::<Result<Vec<_>>>()?;
    let measures = spectra
        .iter()
        .map(|s| Ok((s.center.period, empirical_measure(&s.values(), anchor.multiplier, modes)?)))
        .collect::<Result<Vec<_>>>()?;
    let report = equidistribution_test(&measures);
    Ok(EquidistRun { anchor: anchor.clone(), centers, spectra, measures, report })
}
