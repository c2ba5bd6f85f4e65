use std::f64::consts::PI;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{cpowi, escape_radius, eval_gm, iterate_ratio, van_der_corput, PointSet, Target};
use crate::arith::{center_count, proper_divisors};
use crate::dd::{cabs, cdd, to_c64, Dd};
use crate::error::{Error, Result};
use crate::roots::cmp_c64;
use crate::{CDd, C64};

#[derive(Clone, Debug)]
pub struct CenterConfig {
    /// Required bound on `|G_m(c)|` after polishing.
    pub tol_residual: f64,
    /// Centers closer than this are the same center.
    pub dedup_tol: f64,
    /// `|G_d(c)|` must exceed this for every proper divisor `d` of `m`.
    pub period_reject: f64,
    /// Slack on `|z|^(D−1) ≤ 2`.
    pub tol_bound: f64,
    /// Newton starts per expected center in the first round.
    pub start_density: usize,
    /// Each round doubles the number of starts.
    pub max_rounds: usize,
    /// Start circle radius as a multiple of `2^(1/(D−1))`.
    pub start_radius: f64,
}

impl Default for CenterConfig {
    fn default() -> Self {
        CenterConfig {
            tol_residual: 1e-13,
            dedup_tol: 1e-9,
            period_reject: 1e-6,
            tol_bound: 1e-9,
            start_density: 8,
            max_rounds: 4,
            start_radius: 1.6,
        }
    }
}

/// A center `c` of exact period `m` with its critical orbit data.
#[derive(Clone, Debug)]
pub struct CenterRecord {
    pub degree: u32,
    pub period: usize,
    pub c: CDd,
    /// `|G_m(c)|` at the stored `c`.
    pub newton_residual: f64,
    /// `ζ_0, …, ζ_{m−1}` with `ζ_0 = 0`.
    pub orbit: Vec<CDd>,
    /// `δ_1, …, δ_{m−1}`; `deltas[j−1] = δ_j`.
    pub deltas: Vec<CDd>,
    /// `Δ_1, …, Δ_{m−1}`.
    pub forward: Vec<CDd>,
    /// `Δ_{−1}, …, Δ_{−(m−1)}`.
    pub backward: Vec<CDd>,
}

impl CenterRecord {
    /// Orbit data for an arbitrary parameter; no validation.
    pub fn from_parameter(degree: u32, period: usize, c: CDd) -> Self {
        assert!(period >= 1, "period must be positive");
        let dcoef = Dd::from_f64(degree as f64);
        let mut orbit = vec![CDd::zero()];
        let mut z = CDd::zero();
        for _ in 1..period {
            z = cpowi(z, degree) + c;
            orbit.push(z);
        }
        let newton_residual = cabs(cpowi(z, degree) + c).to_f64();
        let deltas: Vec<CDd> = orbit[1..]
            .iter()
            .map(|&z| cpowi(z, degree - 1).scale(dcoef))
            .collect();
        let mut forward = Vec::with_capacity(period - 1);
        let mut acc = CDd::one();
        for &d in &deltas {
            acc = acc * d;
            forward.push(acc);
        }
        let mut backward = Vec::with_capacity(period - 1);
        let mut acc = CDd::one();
        for &d in deltas.iter().rev() {
            acc = acc * d;
            backward.push(acc);
        }
        CenterRecord { degree, period, c, newton_residual, orbit, deltas, forward, backward }
    }

    pub fn c64(&self) -> C64 {
        to_c64(self.c)
    }

    /// `Δ_k` for `0 ≤ k ≤ m−1`, with `Δ_0 = 1`.
    pub fn big_delta(&self, k: usize) -> CDd {
        if k == 0 {
            CDd::one()
        } else {
            self.forward[k - 1]
        }
    }

    /// `Δ_{−k}` for `0 ≤ k ≤ m−1`, with `Δ_{−0} = 1`.
    pub fn big_delta_back(&self, k: usize) -> CDd {
        if k == 0 {
            CDd::one()
        } else {
            self.backward[k - 1]
        }
    }

    /// Largest relative violation of `δ_j = D ζ_j^(D−1)` and
    /// `Δ_j · Δ_{−(m−1−j)} = Δ_{m−1}`.
    pub fn identity_error(&self) -> f64 {
        let m = self.period;
        let mut worst: f64 = 0.0;
        for (j, d) in self.deltas.iter().enumerate() {
            let expect = to_c64(cpowi(self.orbit[j + 1], self.degree - 1)) * self.degree as f64;
            let got = to_c64(*d);
            worst = worst.max((got - expect).norm() / expect.norm().max(f64::MIN_POSITIVE));
        }
        if m >= 2 {
            let total = to_c64(self.big_delta(m - 1));
            for j in 0..m {
                let prod = to_c64(self.big_delta(j) * self.big_delta_back(m - 1 - j));
                worst = worst.max((prod - total).norm() / total.norm().max(f64::MIN_POSITIVE));
            }
        }
        worst
    }

    /// Smallest `|G_d(c)|` over proper divisors `d` of the period.
    pub fn period_separation(&self) -> f64 {
        proper_divisors(self.period)
            .into_iter()
            .map(|d| to_c64(self.orbit[d]).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_valid(&self, cfg: &CenterConfig) -> bool {
        self.newton_residual <= cfg.tol_residual
            && self.period_separation() > cfg.period_reject
            && escape_bound_check(self, cfg.tol_bound)
    }
}

/// `|c|^(D−1) ≤ 2 + tol` and `|ζ_j|^(D−1) ≤ 2 + tol` along the orbit.
pub fn escape_bound_check(record: &CenterRecord, tol: f64) -> bool {
    let e = record.degree as i32 - 1;
    let ok = |z: CDd| to_c64(z).norm().powi(e) <= 2.0 + tol;
    ok(record.c) && record.orbit.iter().all(|&z| ok(z))
}

/// Baseline Newton from a start outside the locus. Returns the converged
/// point, or `None` if it wanders off or runs out of steps.
fn newton_f64(degree: u32, m: usize, start: C64, cap: usize) -> Option<C64> {
    let mut c = start;
    for _ in 0..cap {
        let r = iterate_ratio(degree, m, Target::Center, c)?;
        c -= r;
        if !(c.norm() < 8.0) {
            return None;
        }
        if r.norm() <= 1e-11 * c.norm().max(1.0) {
            return Some(c);
        }
    }
    None
}

/// Extended-precision Newton on `G_m`.
pub(crate) fn polish_center(degree: u32, m: usize, c0: CDd, steps: usize) -> Option<CDd> {
    let mut c = c0;
    for _ in 0..steps {
        let (g, dg) = eval_gm(degree, m, c).ok()?;
        let step = g / dg;
        c = c - step;
        if !(c.re.is_finite() && c.im.is_finite()) {
            return None;
        }
        if cabs(step).to_f64() <= 1e-30 * cabs(c).to_f64().max(1.0) {
            break;
        }
    }
    // Real centers come back with an imaginary part at roundoff level.
    if c.im != Dd::zero() && c.im.abs().to_f64() <= 1e-28 * cabs(c).to_f64().max(1.0) {
        c.im = Dd::zero();
        for _ in 0..2 {
            let (g, dg) = eval_gm(degree, m, c).ok()?;
            c = c - g / dg;
        }
    }
    Some(c)
}

/// The centers `c ↦ ω^j c` and `c ↦ ω^j c̄`, `ω = e^(2πi/(D−1))`.
fn symmetric_images(degree: u32, c: C64) -> Vec<C64> {
    let k = degree as usize - 1;
    (0..k)
        .flat_map(|j| {
            let w = C64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
            [w * c, w * c.conj()]
        })
        .collect()
}

/// All centers of exact period `m`, sorted by `(re, im)`.
///
/// Newton runs from a low-discrepancy sequence of starts on a circle
/// enclosing the connectedness locus, restricted to a fundamental sector of
/// the `c ↦ ωc`, `c ↦ c̄` symmetry. Runs stop as soon as the Möbius count of
/// distinct validated centers is reached.
pub fn find_centers(degree: u32, m: usize, cfg: &CenterConfig) -> Result<Vec<CenterRecord>> {
    if degree < 2 {
        return Err(Error::InvalidInput(format!("degree must be at least 2, got {degree}")));
    }
    if m < 1 {
        return Err(Error::InvalidInput("period must be at least 1".into()));
    }
    let expected = center_count(degree, m);
    let sector = PI / (degree as f64 - 1.0);
    let radius = cfg.start_radius * escape_radius(degree);
    let cap = 4 * expected + 2000;
    let first_round = (cfg.start_density * expected).div_ceil(2 * (degree as usize - 1)).max(16);
    const BATCH: usize = 512;

    let mut seen = PointSet::new(cfg.dedup_tol);
    let mut records: Vec<CenterRecord> = Vec::with_capacity(expected);
    let mut next = 0usize;
    let mut round_end = 0usize;
    'rounds: for round in 0..cfg.max_rounds {
        round_end += first_round << round;
        while next < round_end {
            let batch_end = (next + BATCH).min(round_end);
            let hits: Vec<Option<C64>> = (next..batch_end)
                .into_par_iter()
                .map(|i| {
                    let t = sector * van_der_corput(i as u64);
                    newton_f64(degree, m, C64::from_polar(radius, t), cap)
                })
                .collect();
            next = batch_end;
            for hit in hits.into_iter().flatten() {
                if seen.contains(hit) {
                    continue;
                }
                let Some(base) = polish_center(degree, m, cdd(hit), 8) else {
                    continue;
                };
                let rec = CenterRecord::from_parameter(degree, m, base);
                if !rec.is_valid(cfg) {
                    continue;
                }
                for img in symmetric_images(degree, rec.c64()) {
                    if seen.contains(img) {
                        continue;
                    }
                    let Some(c) = polish_center(degree, m, cdd(img), 8) else {
                        continue;
                    };
                    let rec = CenterRecord::from_parameter(degree, m, c);
                    if rec.is_valid(cfg) && seen.insert(rec.c64()) {
                        records.push(rec);
                    }
                }
                if records.len() >= expected {
                    break 'rounds;
                }
            }
        }
    }
    if records.len() != expected {
        return Err(Error::IncompleteEnumeration { found: records.len(), expected });
    }
    records.sort_by(|a, b| cmp_c64(a.c64(), b.c64()));
    Ok(records)
}

/// Extended-precision center nearest to a start point, if Newton converges
/// to a validated center of exact period `m`.
pub(crate) fn center_from_start(
    degree: u32,
    m: usize,
    start: CDd,
    cfg: &CenterConfig,
) -> Option<CenterRecord> {
    let c = polish_center(degree, m, start, 200)?;
    let rec = CenterRecord::from_parameter(degree, m, c);
    rec.is_valid(cfg).then_some(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H3_ROOTS: [(f64, f64); 3] = [
        (-1.754_877_666_246_692_7, 0.0),
        (-0.122_561_166_876_653_62, -0.744_861_766_619_744_2),
        (-0.122_561_166_876_653_62, 0.744_861_766_619_744_2),
    ];

    #[test]
    fn period_three_quadratic() {
        let cs = find_centers(2, 3, &CenterConfig::default()).unwrap();
        assert_eq!(cs.len(), 3);
        for (rec, &(re, im)) in cs.iter().zip(&H3_ROOTS) {
            assert!((rec.c64() - C64::new(re, im)).norm() < 1e-14);
            assert!(rec.newton_residual <= 1e-13);
        }
    }

    #[test]
    fn small_periods() {
        let cfg = CenterConfig::default();
        let one = find_centers(2, 1, &cfg).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].c64().norm() < 1e-20);
        assert_eq!(find_centers(2, 4, &cfg).unwrap().len(), 6);
        assert_eq!(find_centers(3, 2, &cfg).unwrap().len(), 2);
        assert!(find_centers(1, 3, &cfg).is_err());
    }

    #[test]
    fn record_identities() {
        let c = cdd(C64::new(H3_ROOTS[0].0, 0.0));
        let c = polish_center(2, 3, c, 8).unwrap();
        let rec = CenterRecord::from_parameter(2, 3, c);
        assert_eq!(rec.orbit.len(), 3);
        assert_eq!(rec.deltas.len(), 2);
        assert!(rec.identity_error() < 1e-14);
        assert!(escape_bound_check(&rec, 1e-9));
        let z2 = rec.orbit[2].re.to_f64();
        assert!((z2 - 1.324_717_957_244_746).abs() < 1e-12);
    }

    #[test]
    fn escape_check_examples() {
        let bad = CenterRecord::from_parameter(2, 3, cdd(C64::new(3.0, 0.0)));
        assert!(!escape_bound_check(&bad, 1e-9));
        let zero = CenterRecord::from_parameter(2, 1, CDd::zero());
        assert!(escape_bound_check(&zero, 1e-9));
    }

    #[test]
    fn symmetric_images_cover_group() {
        let imgs = symmetric_images(3, C64::new(0.3, 0.4));
        assert_eq!(imgs.len(), 4);
        assert!(imgs.iter().any(|z| (z - C64::new(-0.3, 0.4)).norm() < 1e-15));
    }
}
