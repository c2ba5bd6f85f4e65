//! Characteristic polynomials and eigenvalues of the pushforward operator
//! for periodic `z^D + c`.

use std::f64::consts::PI;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::dd::{cdd, to_c64, Dd, Real};
use crate::dynamics::{eval_gm, CenterRecord};
use crate::error::{Error, Result};
use crate::roots::{aberth, cmp_c64, eval_poly, matching_distance, newton_polish, AberthConfig};
use crate::{CDd, C64};

#[derive(Clone, Debug)]
pub struct SpectrumConfig {
    /// Eigenvalues must satisfy `1/(4D) + margin < |λ| < 1 − margin`.
    pub gap_margin: f64,
    /// 53 or 106. `None` picks 106 for periods above 14.
    pub precision_bits: Option<u32>,
    pub aberth: AberthConfig,
    /// Contour radius as a fraction of the smallest distance between poles.
    pub contour_factor: f64,
    pub contour_nodes: usize,
    /// Smallest contour radius tried before giving up.
    pub contour_floor: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            gap_margin: 1e-10,
            precision_bits: None,
            aberth: AberthConfig::default(),
            contour_factor: 1e-2,
            contour_nodes: 256,
            contour_floor: 1e-14,
        }
    }
}

impl SpectrumConfig {
    pub fn bits_for(&self, m: usize) -> u32 {
        self.precision_bits.unwrap_or(if m > 14 { 106 } else { 53 })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Eigenvalue {
    pub value: C64,
    /// Newton correction `|χ(λ)/χ'(λ)|` at `value`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub center: CenterRecord,
    /// Monic `χ²`, constant term first, degree `m − 1`.
    pub chi2: Vec<CDd>,
    /// Monic `χ = χ² / (λ − 1/D)`, degree `m − 2`.
    pub chi: Vec<CDd>,
    /// Remainder of the division by `λ − 1/D`.
    pub remainder: f64,
    /// `1, Δ_{−1}, …, Δ_{−(m−1)}`, the coefficients of `χ²(λ)/χ²(0)`.
    pub normalized: Vec<CDd>,
    /// Roots of `χ`, sorted by `(re, im)`.
    pub eigenvalues: Vec<Eigenvalue>,
    pub gap_ok: bool,
    /// Smallest distance between two eigenvalues; infinite below two.
    pub min_separation: f64,
}

impl SpectrumResult {
    pub fn values(&self) -> Vec<C64> {
        self.eigenvalues.iter().map(|e| e.value).collect()
    }
}

/// `χ²` and `χ` from the orbit products; no root finding.
pub fn chi2_from_orbit(record: &CenterRecord) -> Result<SpectrumResult> {
    let m = record.period;
    if m < 2 {
        return Err(Error::DimensionTooSmall { m });
    }
    let normalized: Vec<CDd> = (0..m).map(|k| record.big_delta_back(k)).collect();
    let top = normalized[m - 1];
    let chi2: Vec<CDd> = normalized.iter().map(|&a| a / top).collect();
    let r = CDd::new(Dd::one() / Dd::from_f64(record.degree as f64), Dd::zero());
    let mut chi = vec![CDd::zero(); m - 1];
    let mut carry = CDd::zero();
    for k in (1..m).rev() {
        carry = chi2[k] + r * carry;
        chi[k - 1] = carry;
    }
    let remainder = to_c64(chi2[0] + r * carry).norm();
    Ok(SpectrumResult {
        center: record.clone(),
        chi2,
        chi,
        remainder,
        normalized,
        eigenvalues: Vec::new(),
        gap_ok: true,
        min_separation: f64::INFINITY,
    })
}

/// Roots of `χ` with per-root residuals.
pub fn eigenvalues(result: &SpectrumResult, cfg: &SpectrumConfig) -> Result<Vec<Eigenvalue>> {
    let m = result.center.period;
    if m < 3 {
        return Err(Error::DimensionTooSmall { m });
    }
    let coarse: Vec<C64> = result.chi.iter().map(|&z| to_c64(z)).collect();
    let roots = aberth(&coarse, &cfg.aberth)?;
    let mut out: Vec<Eigenvalue> = if cfg.bits_for(m) > 53 {
        roots
            .iter()
            .map(|r| {
                let p = newton_polish::<Dd>(&result.chi, cdd(r.z), 4);
                Eigenvalue { value: to_c64(p.z), residual: p.residual }
            })
            .collect()
    } else {
        roots.iter().map(|r| Eigenvalue { value: r.z, residual: r.residual }).collect()
    };
    out.sort_by(|a, b| cmp_c64(a.value, b.value));
    Ok(out)
}

/// Strict spectral-gap annulus test.
pub fn gap_check(eigs: &[Eigenvalue], degree: u32, margin: f64) -> bool {
    let inner = 1.0 / (4.0 * degree as f64);
    eigs.iter().all(|e| {
        let r = e.value.norm();
        r > inner + margin && r < 1.0 - margin
    })
}

fn min_separation(eigs: &[Eigenvalue]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in eigs.iter().enumerate() {
        for b in &eigs[i + 1..] {
            best = best.min((a.value - b.value).norm());
        }
    }
    best
}

/// Full spectrum of one center.
pub fn spectrum(record: &CenterRecord, cfg: &SpectrumConfig) -> Result<SpectrumResult> {
    let mut res = chi2_from_orbit(record)?;
    if record.period >= 3 {
        res.eigenvalues = eigenvalues(&res, cfg)?;
        res.gap_ok = gap_check(&res.eigenvalues, record.degree, cfg.gap_margin);
        res.min_separation = min_separation(&res.eigenvalues);
    }
    Ok(res)
}

/// Spectra of many centers, in input order.
pub fn survey(records: &[CenterRecord], cfg: &SpectrumConfig) -> Result<Vec<SpectrumResult>> {
    records.par_iter().map(|r| spectrum(r, cfg)).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct DerivativeIdentity {
    /// `G'_m(c)`.
    pub lhs: C64,
    /// `(1 − D) χ(1)/χ(0)`.
    pub rhs: C64,
    /// `|G'_m χ(0) − (1 − D) χ(1)| / |G'_m χ(0)|`.
    pub relative: f64,
    pub pass: bool,
}

pub fn derivative_identity_check(record: &CenterRecord, result: &SpectrumResult) -> Result<DerivativeIdentity> {
    let (_, dg) = eval_gm(record.degree, record.period, record.c)?;
    let one = CDd::one();
    let chi1 = eval_poly(&result.chi, one);
    let chi0 = result.chi[0];
    let k = CDd::new(Dd::from_f64(1.0 - record.degree as f64), Dd::zero());
    let lhs = dg * chi0;
    let relative = to_c64(lhs - k * chi1).norm() / to_c64(lhs).norm();
    Ok(DerivativeIdentity {
        lhs: to_c64(dg),
        rhs: to_c64(k * chi1 / chi0),
        relative,
        pass: relative <= 1e-8,
    })
}

/// Matrix of the pushforward on the basis `dz²/(z − x)`, `x` in the
/// finite postcritical set. `entries[row][col]`, rows and columns labelled
/// by `labels`.
#[derive(Clone, Debug)]
pub struct PushforwardMatrix {
    pub labels: Vec<C64>,
    pub entries: Vec<Vec<C64>>,
}

impl PushforwardMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Largest entrywise difference.
    pub fn max_diff(&self, other: &PushforwardMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    /// `det(λI − A)`, constant term first.
    pub fn charpoly(&self) -> Vec<CDd> {
        let a: Vec<Vec<CDd>> = self.entries.iter().map(|r| r.iter().map(|&z| cdd(z)).collect()).collect();
        berkowitz(&a)
    }
}

/// Matrix read off the orbit: column 0 vanishes and column `n` carries
/// `−1/δ_n` in row 1 and `1/δ_n` in row `n + 1 mod m`.
pub fn build_matrix_explicit(record: &CenterRecord) -> PushforwardMatrix {
    let m = record.period;
    let mut entries = vec![vec![C64::zero(); m]; m];
    for n in 1..m {
        let a = to_c64(CDd::one() / record.deltas[n - 1]);
        entries[1 % m][n] -= a;
        entries[(n + 1) % m][n] += a;
    }
    PushforwardMatrix { labels: record.orbit.iter().map(|&z| to_c64(z)).collect(), entries }
}

/// `(1/2πi) ∮ g` over the circle of radius `rho` about `w`, trapezoid rule.
fn contour_residue(g: impl Fn(C64) -> C64, w: C64, rho: f64, nodes: usize) -> C64 {
    let mut acc = C64::zero();
    for k in 0..nodes {
        let e = C64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
        acc += g(w + e * rho) * e;
    }
    acc * (rho / nodes as f64)
}

/// Matrix from residues of `dz/((z − x) f'(z))` at the points of
/// `f^{-1}(y) ∩ ({0} ∪ {x})`, integrated numerically.
pub fn build_matrix_residues(
    degree: u32,
    c: C64,
    postcritical: &[C64],
    cfg: &SpectrumConfig,
) -> Result<PushforwardMatrix> {
    let n = postcritical.len();
    let dfl = degree as f64;
    let mut dmin = f64::INFINITY;
    for (i, a) in postcritical.iter().enumerate() {
        for b in &postcritical[i + 1..] {
            dmin = dmin.min((a - b).norm());
        }
    }
    if !dmin.is_finite() {
        dmin = 1.0;
    }
    let scale = postcritical.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let same = |a: C64, b: C64| (a - b).norm() <= 1e-9 * scale;
    let mut entries = vec![vec![C64::zero(); n]; n];
    for (col, &x) in postcritical.iter().enumerate() {
        let g = |z: C64| C64::new(1.0, 0.0) / ((z - x) * z.powu(degree - 1) * dfl);
        let poles = [C64::zero(), x];
        for (row, &y) in postcritical.iter().enumerate() {
            let mut centers: Vec<C64> = Vec::new();
            for w in preimages(degree, y - c) {
                for &p in &poles {
                    if same(w, p) && !centers.iter().any(|&q| same(q, p)) {
                        centers.push(p);
                    }
                }
            }
            for w in centers {
                let mut rho = cfg.contour_factor * dmin;
                loop {
                    let clash = poles.iter().any(|&p| !same(p, w) && (p - w).norm() < 4.0 * rho);
                    if !clash {
                        break;
                    }
                    rho /= 2.0;
                    if rho < cfg.contour_floor {
                        return Err(Error::ContourTooClose { radius: rho });
                    }
                }
                entries[row][col] += contour_residue(g, w, rho, cfg.contour_nodes);
            }
        }
    }
    Ok(PushforwardMatrix { labels: postcritical.to_vec(), entries })
}

/// The `D` solutions of `z^D = v`.
fn preimages(degree: u32, v: C64) -> Vec<C64> {
    let r = v.norm().powf(1.0 / degree as f64);
    let t = v.arg();
    (0..degree)
        .map(|k| C64::from_polar(r, (t + 2.0 * PI * k as f64) / degree as f64))
        .collect()
}

/// Division-free characteristic polynomial `det(λI − A)`, constant first.
pub fn berkowitz<T: Real>(a: &[Vec<Complex<T>>]) -> Vec<Complex<T>> {
    let n = a.len();
    // Coefficients highest degree first during the recursion.
    let mut poly: Vec<Complex<T>> = vec![Complex::one()];
    for k in 0..n {
        // Leading principal submatrix of size k plus row/column k.
        let r: Vec<Complex<T>> = (0..k).map(|j| a[k][j]).collect();
        let col: Vec<Complex<T>> = (0..k).map(|i| a[i][k]).collect();
        let akk = a[k][k];
        // Toeplitz column: 1, −a_kk, −R·C, −R·A·C, …
        let mut t = vec![Complex::one(), -akk];
        let mut v = col.clone();
        for _ in 0..k {
            let s = r.iter().zip(&v).fold(Complex::zero(), |acc, (x, y)| acc + *x * *y);
            t.push(-s);
            v = (0..k)
                .map(|i| (0..k).fold(Complex::zero(), |acc, j| acc + a[i][j] * v[j]))
                .collect();
        }
        let mut next = vec![Complex::zero(); k + 2];
        for i in 0..k + 2 {
            for j in 0..=i.min(k) {
                if i - j < t.len() {
                    next[i] = next[i] + t[i - j] * poly[j];
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

/// Inner radius of the annulus filled by the closure of all spectra.
pub fn r_constant(degree: u32) -> f64 {
    let d = degree as f64;
    if degree.is_multiple_of(2) {
        1.0 / (2.0 * d)
    } else {
        1.0 / (2.0 * d * (PI / (2.0 * d)).cos())
    }
}

/// Distance between the roots of `det(λI − A)` and `{0, 1/D} ∪ spectrum`.
pub fn charpoly_root_distance(matrix: &PushforwardMatrix, degree: u32, spectrum: &[C64]) -> Result<f64> {
    let cp: Vec<C64> = matrix.charpoly().into_iter().map(to_c64).collect();
    let roots: Vec<C64> = aberth(&cp, &AberthConfig { accept_tol: 1e-8, ..Default::default() })?
        .into_iter()
        .map(|r| r.z)
        .collect();
    let mut expect = vec![C64::zero(), C64::new(1.0 / degree as f64, 0.0)];
    expect.extend_from_slice(spectrum);
    matching_distance(&roots, &expect)
}
