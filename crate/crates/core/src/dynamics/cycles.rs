use std::f64::consts::PI;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{cpowi, escape_radius, iterate_ratio, van_der_corput, PointSet, Target};
use crate::arith::{periodic_point_count, proper_divisors};
use crate::dd::{cabs, cdd, to_c64, Dd};
use crate::error::{Error, Result};
use crate::roots::cmp_c64;
use crate::{CDd, C64};

#[derive(Clone, Debug)]
pub struct CycleConfig {
    /// Required bound on `|f^n(z) − z|` after polishing.
    pub tol_residual: f64,
    pub dedup_tol: f64,
    /// `|f^d(z) − z|` must exceed this for every proper divisor `d` of `n`.
    pub period_reject: f64,
    /// Distance under which a cycle point is taken to lie on the critical orbit.
    pub postcritical_tol: f64,
    /// Rounds after the initial two-circle grid, each on an enclosing circle.
    pub max_rounds: usize,
}

impl Default for CycleConfig {
    fn default() -> Self {
        CycleConfig {
            tol_residual: 1e-12,
            dedup_tol: 1e-9,
            period_reject: 1e-6,
            postcritical_tol: 1e-8,
            max_rounds: 4,
        }
    }
}

/// A cycle `z_1 → … → z_n → z_1` of `z^D + c`.
#[derive(Clone, Debug)]
pub struct CycleRecord {
    pub degree: u32,
    pub c: C64,
    pub period: usize,
    /// Starting at the point smallest in `(re, im)` order.
    pub points: Vec<C64>,
    /// `D^n (z_1 ⋯ z_n)^(D−1)`.
    pub multiplier: C64,
    /// The `n` values with `λ^n = 1/μ`; empty for postcritical cycles.
    pub eigenvalues: Vec<C64>,
    /// The cycle meets the critical orbit.
    pub postcritical: bool,
}

fn cycle_eval(degree: u32, n: usize, c: CDd, z: CDd) -> (CDd, CDd) {
    let dcoef = Dd::from_f64(degree as f64);
    let mut g = z;
    let mut dg = CDd::one();
    for _ in 0..n {
        let gd1 = cpowi(g, degree - 1);
        dg = (gd1 * dg).scale(dcoef);
        g = gd1 * g + c;
    }
    (g - z, dg - CDd::one())
}

fn iterate(degree: u32, k: usize, c: CDd, z: CDd) -> CDd {
    (0..k).fold(z, |w, _| cpowi(w, degree) + c)
}

fn polish_point(degree: u32, n: usize, c: CDd, z0: CDd) -> Option<(CDd, f64)> {
    let mut z = z0;
    for _ in 0..10 {
        let (f, df) = cycle_eval(degree, n, c, z);
        let step = f / df;
        z = z - step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if cabs(step).to_f64() <= 1e-30 * cabs(z).to_f64().max(1.0) {
            break;
        }
    }
    let (f, _) = cycle_eval(degree, n, c, z);
    Some((z, cabs(f).to_f64()))
}

fn newton_f64(degree: u32, n: usize, c: C64, start: C64, cap: usize) -> Option<C64> {
    let mut z = start;
    for _ in 0..cap {
        let r = iterate_ratio(degree, n, Target::Cycle(c), z)?;
        z -= r;
        if !(z.norm() < 8.0) {
            return None;
        }
        if r.norm() <= 1e-11 * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

/// Values λ with `λ^n = 1/μ`, sorted by `(re, im)`.
pub fn inverse_roots(mu: C64, n: usize) -> Vec<C64> {
    let r = mu.norm().powf(-1.0 / n as f64);
    let t = -mu.arg();
    let mut v: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(r, (t + 2.0 * PI * k as f64) / n as f64))
        .collect();
    v.sort_by(|a, b| cmp_c64(*a, *b));
    v
}

/// All cycles of exact period `n ≤ n_max` of `z^D + c`.
///
/// Newton on `f^n(z) − z` runs first from `4·D^n` starts split between the
/// circles `|z| = 0.5` and `|z| = 1.9`, then from circles enclosing the
/// filled Julia set. Each hit contributes its whole orbit. The number of
/// exact-period points must match the Möbius count.
pub fn find_cycles(degree: u32, c: CDd, n_max: usize, cfg: &CycleConfig) -> Result<Vec<CycleRecord>> {
    if degree < 2 {
        return Err(Error::InvalidInput(format!("degree must be at least 2, got {degree}")));
    }
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let c64 = to_c64(c);
    let crit: Vec<C64> = (0..=2 * n_max + 8).map(|k| to_c64(iterate(degree, k, c, CDd::zero()))).collect();
    let mut out = Vec::new();
    for n in 1..=n_max {
        let expected = periodic_point_count(degree, n);
        let grid = 4 * (degree as usize).pow(n as u32);
        let cap = 4 * expected + 2000;
        let outer = 1.1 * escape_radius(degree).max(c64.norm().powf(1.0 / degree as f64) + 1.0);
        let start = |i: usize| -> C64 {
            if i < grid {
                let r = if i.is_multiple_of(2) { 0.5 } else { 1.9 };
                C64::from_polar(r, 2.0 * PI * van_der_corput((i / 2) as u64))
            } else {
                C64::from_polar(outer, 2.0 * PI * van_der_corput((i - grid) as u64))
            }
        };
        let mut seen = PointSet::new(cfg.dedup_tol);
        let mut cycles: Vec<CycleRecord> = Vec::new();
        let mut next = 0;
        let mut round_end = 0;
        const BATCH: usize = 256;
        'rounds: for round in 0..=cfg.max_rounds {
            round_end += grid << round;
            while next < round_end {
                let batch_end = (next + BATCH).min(round_end);
                let hits: Vec<Option<C64>> = (next..batch_end)
                    .into_par_iter()
                    .map(|i| newton_f64(degree, n, c64, start(i), cap))
                    .collect();
                next = batch_end;
                for hit in hits.into_iter().flatten() {
                    if seen.contains(hit) {
                        continue;
                    }
                    if let Some(cyc) = orbit_of(degree, n, c, hit, &crit, cfg) {
                        if cyc.points.iter().any(|&p| seen.contains(p)) {
                            continue;
                        }
                        for &p in &cyc.points {
                            seen.insert(p);
                        }
                        cycles.push(cyc);
                    }
                    if seen.len() >= expected {
                        break 'rounds;
                    }
                }
            }
        }
        let found = cycles.len() * n;
        if found != expected {
            return Err(Error::IncompleteEnumeration { found, expected });
        }
        cycles.sort_by(|a, b| cmp_c64(a.points[0], b.points[0]));
        out.extend(cycles);
    }
    Ok(out)
}

fn orbit_of(
    degree: u32,
    n: usize,
    c: CDd,
    hit: C64,
    crit: &[C64],
    cfg: &CycleConfig,
) -> Option<CycleRecord> {
    let (z0, res) = polish_point(degree, n, c, cdd(hit))?;
    if res > cfg.tol_residual {
        return None;
    }
    for d in proper_divisors(n) {
        if to_c64(iterate(degree, d, c, z0) - z0).norm() <= cfg.period_reject {
            return None;
        }
    }
    let mut pts = Vec::with_capacity(n);
    let mut z = z0;
    for k in 0..n {
        if k > 0 {
            z = polish_point(degree, n, c, cpowi(z, degree) + c)?.0;
        }
        pts.push(z);
    }
    let dcoef = Dd::from_f64(degree as f64);
    let mu = pts
        .iter()
        .fold(CDd::one(), |acc, &p| acc * cpowi(p, degree - 1).scale(dcoef));
    let mut points: Vec<C64> = pts.iter().map(|&p| to_c64(p)).collect();
    let first = (0..n)
        .min_by(|&a, &b| cmp_c64(points[a], points[b]))
        .unwrap_or(0);
    points.rotate_left(first);
    let postcritical = points
        .iter()
        .any(|p| crit.iter().any(|q| (p - q).norm() <= cfg.postcritical_tol));
    let multiplier = to_c64(mu);
    let eigenvalues = if postcritical { Vec::new() } else { inverse_roots(multiplier, n) };
    Some(CycleRecord {
        degree,
        c: to_c64(c),
        period: n,
        points,
        multiplier,
        eigenvalues,
        postcritical,
    })
}
