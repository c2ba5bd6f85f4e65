//! Exact certificates that `Dλ` is an algebraic unit: the resultant
//! `S_m(ν) = Res_c(H_m, R(c, ν))`, its unit end coefficients and its
//! factorization `S_m = (1 − ν)^{deg H_m} · Υ_m^{D−1}`.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::center_count;
use crate::dd::{cdd, to_c64, Dd};
use crate::error::{Error, Result};
use crate::gleason::GleasonTower;
use crate::poly::{exact_div, gcd, power_series_root, resultant_bivar, BivarPoly, IntPoly};
use crate::roots::{aberth, aberth_from, matching_distance, AberthConfig};
use crate::spectrum::SpectrumResult;
use crate::{CDd, C64};

/// Largest `deg_ν S_m` certified without `force`.
pub const EXACT_CEILING: usize = 400;

/// `deg_ν S_m = (m − 1) · deg H_m`.
pub fn s_degree(degree: u32, m: usize) -> usize {
    (m - 1) * center_count(degree, m)
}

/// `R(c, ν) = Σ_{n<m} Γ_n(c) ν^n` with `Γ_n = ∏_{k=1}^{n} G_{m−k}^{D−1}`.
pub fn build_r(tower: &GleasonTower, m: usize) -> Result<BivarPoly> {
    if m < 1 || m > tower.max_period {
        return Err(Error::InvalidInput(format!(
            "period {m} outside the tower range 1..={}",
            tower.max_period
        )));
    }
    let mut gamma = IntPoly::one();
    let mut coeffs = vec![gamma.clone()];
    for n in 1..m {
        gamma = &gamma * &tower.g(m - n).pow(tower.degree - 1);
        coeffs.push(gamma.clone());
    }
    Ok(BivarPoly::new(coeffs))
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitCertificate {
    pub degree: u32,
    pub period: usize,
    pub deg_h: usize,
    pub s: IntPoly,
    #[serde(serialize_with = "ser_big")]
    pub constant_coeff: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub leading_coeff: BigInt,
    pub upsilon: IntPoly,
    /// `S_m(0) = 1`.
    pub constant_ok: bool,
    /// `|lead S_m| = 1`.
    pub leading_ok: bool,
    /// `deg S_m = (m − 1) deg H_m`.
    pub degree_ok: bool,
    /// `(1 − ν)^{deg H_m} Υ_m^{D−1}` re-expands to `S_m`.
    pub factorization_ok: bool,
    /// `gcd(Υ_m, Υ_m') = 1`.
    pub squarefree: bool,
}

impl UnitCertificate {
    pub fn pass(&self) -> bool {
        self.constant_ok && self.leading_ok && self.degree_ok && self.factorization_ok
    }
}

/// Rough cost of a certificate, for the `--force` notice.
pub fn cost_estimate(degree: u32, m: usize) -> String {
    format!(
        "{} exact resultants of a degree-{} polynomial against specializations of c-degree {}",
        s_degree(degree, m) + 1,
        center_count(degree, m),
        (degree as usize).pow(m as u32 - 1) - 1
    )
}

pub fn certify(tower: &GleasonTower, m: usize, force: bool) -> Result<UnitCertificate> {
    if m < 3 {
        return Err(Error::InvalidInput(format!("unit certificates need m >= 3, got {m}")));
    }
    let deg_s = s_degree(tower.degree, m);
    if deg_s > EXACT_CEILING && !force {
        return Err(Error::ExceedsExactCeiling { degree: tower.degree, period: m, deg_s });
    }
    let h = tower.h(m);
    let deg_h = h.deg();
    let r = build_r(tower, m)?;
    let s = resultant_bivar(h, &r)?;
    let constant_coeff = s.coeff(0);
    let leading_coeff = s.leading().cloned().unwrap_or_default();
    let one_minus = IntPoly::from_i64(&[1, -1]).pow(deg_h as u32);
    let quotient = exact_div(&s, &one_minus)?;
    let k = tower.degree - 1;
    let mut upsilon = power_series_root(&quotient, k)?;
    if upsilon.coeff(0).is_negative() {
        if k % 2 == 1 {
            return Err(Error::NotAPower { k });
        }
        upsilon = -upsilon;
    }
    let factorization_ok = &one_minus * &upsilon.pow(k) == s;
    let squarefree = gcd(&upsilon, &upsilon.derivative()).deg() == 0;
    Ok(UnitCertificate {
        degree: tower.degree,
        period: m,
        deg_h,
        constant_ok: constant_coeff.is_one(),
        leading_ok: leading_coeff.abs().is_one(),
        degree_ok: s.degree() == Some(deg_s),
        factorization_ok,
        squarefree,
        s,
        constant_coeff,
        leading_coeff,
        upsilon,
    })
}

/// `(ν + 1)^{D+1} − ν^D`.
pub fn upsilon3_closed_form(degree: u32) -> IntPoly {
    &IntPoly::from_i64(&[1, 1]).pow(degree + 1) - &IntPoly::monomial(BigInt::one(), degree as usize)
}

/// Nearest double-double to a big integer.
pub fn bigint_to_dd(x: &BigInt) -> Dd {
    let hi = x.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rest = x - BigInt::from_f64(hi).expect("finite");
    Dd::new(hi, 0.0) + Dd::from_f64(rest.to_f64().unwrap_or(0.0))
}

/// Mantissa and exponent with `x = mant · 2^exp`.
fn decode(x: f64) -> (BigInt, i64) {
    if x == 0.0 || !x.is_finite() {
        return (BigInt::zero(), i64::MAX);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    (BigInt::from(if x < 0.0 { -mant } else { mant }), e)
}

/// `z = (re + i·im) / 2^k` exactly, `k ≥ 0`.
fn dyadic(z: CDd) -> (BigInt, BigInt, u64) {
    let parts = [decode(z.re.hi), decode(z.re.lo), decode(z.im.hi), decode(z.im.lo)];
    let e = parts.iter().map(|p| p.1).min().unwrap_or(0).min(0);
    let lift = |(m, ex): &(BigInt, i64)| if m.is_zero() { BigInt::zero() } else { m << (ex - e) as u64 };
    (lift(&parts[0]) + lift(&parts[1]), lift(&parts[2]) + lift(&parts[3]), (-e) as u64)
}

/// `2^{k·deg p} p(z)` for `z = (re + i·im)/2^k`, in Gaussian integers.
fn eval_dyadic(p: &IntPoly, re: &BigInt, im: &BigInt, k: u64) -> (BigInt, BigInt) {
    let d = p.deg();
    let (mut ar, mut ai) = (p.coeff(d), BigInt::zero());
    for j in (0..d).rev() {
        let nr = &ar * re - &ai * im;
        let ni = &ar * im + &ai * re;
        ar = nr + (p.coeff(j) << (k * (d - j) as u64));
        ai = ni;
    }
    (ar, ai)
}

/// Nearest double-double to `num / (den · 2^k)`, `den > 0`.
fn quotient_to_dd(num: &BigInt, den: &BigInt, k: u64) -> Dd {
    if num.is_zero() {
        return Dd::zero();
    }
    let s = 120 + den.bits() as i64 - num.bits() as i64;
    let q = if s >= 0 { (num << s as u64) / den } else { num / (den << (-s) as u64) };
    bigint_to_dd(&q).ldexp(-(s + k as i64) as i32)
}

/// `p(z)/p'(z)` computed exactly at the double-double point `z` and
/// rounded once.
pub fn exact_newton_ratio(p: &IntPoly, dp: &IntPoly, z: CDd) -> CDd {
    let (re, im, k) = dyadic(z);
    let (pr, pi) = eval_dyadic(p, &re, &im, k);
    let (qr, qi) = eval_dyadic(dp, &re, &im, k);
    let den = &qr * &qr + &qi * &qi;
    if den.is_zero() {
        return CDd::new(Dd::from_f64(f64::INFINITY), Dd::zero());
    }
    let nr = &pr * &qr + &pi * &qi;
    let ni = &pi * &qr - &pr * &qi;
    CDd::new(quotient_to_dd(&nr, &den, k), quotient_to_dd(&ni, &den, k))
}

/// Roots of an integer polynomial. A double-double Aberth pass supplies
/// starting points; the final iteration uses exactly evaluated Newton
/// ratios.
pub fn exact_poly_roots(p: &IntPoly) -> Result<Vec<C64>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let coeffs: Vec<CDd> = p.coeffs()[zeros..].iter().map(|c| CDd::new(bigint_to_dd(c), Dd::zero())).collect();
    let rough = AberthConfig { max_iter: 200, accept_tol: 1e-20 };
    let starts: Vec<CDd> = match aberth::<Dd>(&coeffs, &rough) {
        Ok(r) => r.into_iter().map(|r| r.z).collect(),
        Err(Error::NonConvergence { roots, .. }) => roots.into_iter().map(cdd).collect(),
        Err(e) => return Err(e),
    };
    let dp = p.derivative();
    let cfg = AberthConfig { max_iter: 500, accept_tol: 1e-28 };
    Ok(aberth_from::<Dd>(starts, zeros, |z| exact_newton_ratio(p, &dp, z), &cfg)?
        .into_iter()
        .map(|r| to_c64(r.z))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosscheck {
    /// Largest matched distance between `{Dλ}` and the roots of `Υ_m`,
    /// each root counted `D − 1` times.
    pub distance: f64,
    /// Centers fixed by a nontrivial rotation `c ↦ ωc`.
    pub rotation_collisions: usize,
    pub pass: bool,
}

/// Matches `Dλ` over every center of the period against the roots of the
/// exact `Υ_m`. Every eigenvalue occurs for the `D − 1` rotated centers, so
/// each root of `Υ_m` is repeated `D − 1` times.
pub fn crosscheck_numeric(cert: &UnitCertificate, spectra: &[SpectrumResult]) -> Result<Crosscheck> {
    if spectra.len() != cert.deg_h {
        return Err(Error::IncompleteSurvey { found: spectra.len(), expected: cert.deg_h });
    }
    let d = cert.degree as f64;
    let numeric: Vec<C64> = spectra
        .iter()
        .flat_map(|s| s.eigenvalues.iter().map(move |e| e.value * d))
        .collect();
    let roots = exact_poly_roots(&cert.upsilon)?;
    let exact: Vec<C64> = roots
        .iter()
        .flat_map(|&r| std::iter::repeat_n(r, cert.degree as usize - 1))
        .collect();
    let rotation_collisions = if cert.degree > 2 {
        spectra.iter().filter(|s| s.center.c64().norm() < 1e-12).count()
    } else {
        0
    };
    let distance = matching_distance(&numeric, &exact)?;
    Ok(Crosscheck { distance, rotation_collisions, pass: distance <= 1e-6 })
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
