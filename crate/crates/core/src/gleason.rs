//! Gleason polynomials `G_n` and their exact-period factors `H_m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{center_count, divisors, proper_divisors};
use crate::error::{Error, Result};
use crate::poly::{exact_div, resultant, IntPoly};

#[derive(Clone, Debug, Serialize)]
pub struct GleasonTower {
    pub degree: u32,
    pub max_period: usize,
    /// `g[n] = G_n` for `0 ≤ n ≤ M`.
    g: Vec<IntPoly>,
    /// `h[m] = H_m` for `1 ≤ m ≤ M`; `h[0]` is an unused placeholder.
    h: Vec<IntPoly>,
}

impl GleasonTower {
    pub fn g(&self, n: usize) -> &IntPoly {
        &self.g[n]
    }

    pub fn h(&self, m: usize) -> &IntPoly {
        assert!(m >= 1, "H_0 is undefined");
        &self.h[m]
    }
}

pub fn build_tower(degree: u32, max_period: usize) -> Result<GleasonTower> {
    if degree < 2 {
        return Err(Error::InvalidInput(format!("degree must be at least 2, got {degree}")));
    }
    if max_period < 1 {
        return Err(Error::InvalidInput("max period must be at least 1".into()));
    }
    let c = IntPoly::x();
    let mut g = vec![IntPoly::zero()];
    for n in 1..=max_period {
        let next = &g[n - 1].pow(degree) + &c;
        g.push(next);
    }
    let mut h = vec![IntPoly::one()];
    for (m, gm) in g.iter().enumerate().skip(1) {
        let lower = proper_divisors(m).into_iter().fold(IntPoly::one(), |acc, d| &acc * &h[d]);
        h.push(exact_div(gm, &lower)?);
    }
    Ok(GleasonTower { degree, max_period, g, h })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleRootCertificate {
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub resultant: BigInt,
    /// `resultant mod D`, taken in `0..D`.
    pub resultant_mod_d: u32,
    /// `G'_n ≡ 1 (mod D)` coefficientwise.
    pub derivative_is_one_mod_d: bool,
    pub pass: bool,
}

pub fn certify_simple_roots(tower: &GleasonTower, n: usize) -> Result<SimpleRootCertificate> {
    check_period(tower, n)?;
    let d = BigInt::from(tower.degree);
    let gn = tower.g(n);
    let dg = gn.derivative();
    let derivative_is_one_mod_d = dg
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| c.mod_floor(&d) == if k == 0 { BigInt::one() } else { BigInt::zero() });
    let res = resultant(gn, &dg)?;
    let modd = res.mod_floor(&d);
    let resultant_mod_d = u32::try_from(modd).expect("residue below D");
    Ok(SimpleRootCertificate {
        n,
        pass: derivative_is_one_mod_d && resultant_mod_d == 1 % tower.degree,
        resultant: res,
        resultant_mod_d,
        derivative_is_one_mod_d,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoonenCertificate {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub resultant: BigInt,
    pub pass: bool,
}

pub fn certify_poonen(tower: &GleasonTower, m: usize, n: usize) -> Result<PoonenCertificate> {
    check_period(tower, n)?;
    if m < 1 || m >= n {
        return Err(Error::InvalidInput(format!("need 1 <= m < n, got ({m}, {n})")));
    }
    let res = resultant(tower.h(m), tower.h(n))?;
    Ok(PoonenCertificate { m, n, pass: res.abs().is_one(), resultant: res })
}

/// Every pair `1 ≤ m < n ≤ M`, in lexicographic order.
pub fn certify_poonen_all(tower: &GleasonTower) -> Result<Vec<PoonenCertificate>> {
    let pairs: Vec<(usize, usize)> = (1..=tower.max_period)
        .flat_map(|n| (1..n).map(move |m| (m, n)))
        .collect();
    let mut out = pairs
        .par_iter()
        .map(|&(m, n)| certify_poonen(tower, m, n))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|c| (c.m, c.n));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub m: usize,
    pub degree: usize,
    pub expected: usize,
}

/// Checks `deg H_m` against the Möbius count for every `m ≤ M`.
pub fn degree_check(tower: &GleasonTower) -> Result<Vec<DegreeRow>> {
    let rows: Vec<DegreeRow> = (1..=tower.max_period)
        .map(|m| DegreeRow {
            m,
            degree: tower.h(m).deg(),
            expected: center_count(tower.degree, m),
        })
        .collect();
    if let Some(bad) = rows.iter().find(|r| r.degree != r.expected) {
        return Err(Error::InvariantViolation(format!(
            "deg H_{} = {} but the Möbius count is {}",
            bad.m, bad.degree, bad.expected
        )));
    }
    Ok(rows)
}

/// `∏_{m | n} H_m = G_n` for every `n ≤ M`.
pub fn reassembly_check(tower: &GleasonTower) -> bool {
    (1..=tower.max_period).all(|n| {
        let prod = divisors(n)
            .into_iter()
            .fold(IntPoly::one(), |acc, m| &acc * tower.h(m));
        &prod == tower.g(n)
    })
}

fn check_period(tower: &GleasonTower, n: usize) -> Result<()> {
    if n < 1 || n > tower.max_period {
        return Err(Error::InvalidInput(format!(
            "period {n} outside the tower range 1..={}",
            tower.max_period
        )));
    }
    Ok(())
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn quadratic_tower() {
        let t = build_tower(2, 4).unwrap();
        assert_eq!(t.g(0), &IntPoly::zero());
        assert_eq!(t.g(1), &p(&[0, 1]));
        assert_eq!(t.g(2), &p(&[0, 1, 1]));
        assert_eq!(t.g(3), &p(&[0, 1, 1, 2, 1]));
        assert_eq!(t.h(3), &p(&[1, 1, 2, 1]));
        assert_eq!(t.h(4), &p(&[1, 0, 2, 3, 3, 3, 1]));
        assert!(reassembly_check(&t));
    }

    #[test]
    fn invalid_inputs() {
        assert!(build_tower(1, 3).is_err());
        assert!(build_tower(2, 0).is_err());
        let t = build_tower(2, 3).unwrap();
        assert!(certify_poonen(&t, 2, 2).is_err());
        assert!(certify_simple_roots(&t, 4).is_err());
    }

    #[test]
    fn degrees() {
        let t = build_tower(2, 6).unwrap();
        let d: Vec<_> = degree_check(&t).unwrap().iter().map(|r| r.degree).collect();
        assert_eq!(d, vec![1, 1, 3, 6, 15, 27]);
        let t3 = build_tower(3, 2).unwrap();
        let d: Vec<_> = degree_check(&t3).unwrap().iter().map(|r| r.degree).collect();
        assert_eq!(d, vec![1, 2]);
        for deg in 2..6 {
            assert_eq!(build_tower(deg, 1).unwrap().h(1).deg(), 1);
        }
    }

    #[test]
    fn simple_roots() {
        let t = build_tower(2, 3).unwrap();
        let c2 = certify_simple_roots(&t, 2).unwrap();
        assert!(c2.derivative_is_one_mod_d && c2.pass);
        assert_eq!(c2.resultant, BigInt::from(-1));
        let c3 = certify_simple_roots(&t, 3).unwrap();
        assert!(c3.pass && c3.resultant.is_odd());
        let t3 = build_tower(3, 2).unwrap();
        assert_eq!(t3.g(2), &p(&[0, 1, 0, 1]));
        assert!(certify_simple_roots(&t3, 2).unwrap().pass);
    }

    #[test]
    fn poonen_small() {
        let t = build_tower(2, 4).unwrap();
        let c = certify_poonen(&t, 1, 2).unwrap();
        assert_eq!(c.resultant, BigInt::one());
        assert!(certify_poonen(&t, 3, 4).unwrap().pass);
        let t3 = build_tower(3, 3).unwrap();
        assert!(certify_poonen(&t3, 2, 3).unwrap().pass);
        assert_eq!(certify_poonen_all(&t).unwrap().len(), 6);
    }
}
