use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use super::{BivarPoly, IntPoly};
use crate::error::{Error, Result};

/// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a mod b`.
pub fn prem(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    let lb = b.leading().ok_or(Error::ZeroInput)?.clone();
    let db = b.deg();
    let Some(da) = a.degree() else {
        return Ok(IntPoly::zero());
    };
    if da < db {
        return Ok(a.clone());
    }
    let mut e = (da - db + 1) as u32;
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = -r.leading().expect("nonzero").clone();
        r = r.scale(&lb);
        r.add_assign_shifted(b, &lr, dr - db);
        e -= 1;
    }
    if e > 0 {
        r = r.scale(&Pow::pow(&lb, e));
    }
    Ok(r)
}

/// Resultant over ℤ by the subresultant pseudo-remainder sequence.
///
/// Convention: `Res(a, b) = lc(a)^deg b · ∏ b(α)` over the roots α of `a`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroInput);
    };
    if db == 0 {
        return Ok(Pow::pow(b.leading().unwrap(), da as u32));
    }
    if da == 0 {
        return Ok(Pow::pow(a.leading().unwrap(), db as u32));
    }
    let mut sign = false;
    let (mut a, mut b) = if da < db {
        sign = (da * db) % 2 == 1;
        (b.clone(), a.clone())
    } else {
        (a.clone(), b.clone())
    };
    let ca = a.content();
    let cb = b.content();
    a = a.primitive_part();
    b = b.primitive_part();
    let t = Pow::pow(&ca, b.deg() as u32) * Pow::pow(&cb, a.deg() as u32);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b)?;
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        b = r.div_scalar(&(&g * Pow::pow(&h, delta)))?;
        g = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact_scalar_div(Pow::pow(&g, delta), &Pow::pow(&h, delta - 1))?,
        };
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let h = exact_scalar_div(Pow::pow(b.leading().unwrap(), da), &Pow::pow(&h, da - 1))?;
    let res = t * h;
    Ok(if sign { -res } else { res })
}

fn exact_scalar_div(n: BigInt, d: &BigInt) -> Result<BigInt> {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonDivisible)
    }
}

/// Interpolation nodes 0, 1, −1, 2, −2, …
fn node(i: usize) -> i64 {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        k
    } else {
        -k
    }
}

/// Eliminates c: returns `S(ν) = Res_c(p, r(·, ν))`.
///
/// Evaluates at `deg p · deg_ν r + 1` integer nodes where the c-degree of
/// `r(·, ν₀)` is generic, then interpolates exactly.
pub fn resultant_bivar(p: &IntPoly, r: &BivarPoly) -> Result<IntPoly> {
    let dp = p.degree().ok_or(Error::ZeroInput)?;
    let dnu = r.degree_nu().ok_or(Error::ZeroInput)?;
    let dc = r.degree_c().ok_or(Error::ZeroInput)?;
    let npts = dp * dnu + 1;

    let mut nodes = Vec::with_capacity(npts);
    let mut skipped = 0;
    let mut i = 0;
    while nodes.len() < npts {
        let x = BigInt::from(node(i));
        i += 1;
        let spec = r.eval_nu(&x);
        if spec.degree() == Some(dc) {
            nodes.push((x, spec));
        } else {
            skipped += 1;
            if skipped > dnu {
                return Err(Error::DegreeDrop { skipped });
            }
        }
    }

    let values = nodes
        .par_iter()
        .map(|(_, spec)| resultant(p, spec))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<BigInt> = nodes.into_iter().map(|(x, _)| x).collect();
    interpolate(&xs, values)
}

/// Exact Newton interpolation over ℤ. Every divided difference of an integer
/// polynomial at integer nodes is an integer, so a nonzero remainder means
/// the data did not come from such a polynomial.
fn interpolate(xs: &[BigInt], mut dd: Vec<BigInt>) -> Result<IntPoly> {
    let n = xs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            let (q, rem) = num.div_rem(&den);
            if !rem.is_zero() {
                return Err(Error::NonIntegral);
            }
            dd[i] = q;
        }
    }
    let mut acc = IntPoly::zero();
    for k in (0..n).rev() {
        // acc ← acc·(x − x_k) + dd[k]
        let mut next = vec![BigInt::zero(); acc.coeffs().len() + 1];
        for (i, c) in acc.coeffs().iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &dd[k];
        acc = IntPoly::new(next);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn nodes_alternate() {
        let v: Vec<i64> = (0..6).map(node).collect();
        assert_eq!(v, vec![0, 1, -1, 2, -2, 3]);
    }

    #[test]
    fn prem_small() {
        // x^2 + 1 mod 2x + 1: 4(x^2+1) = (2x+1)(2x−1) + 5
        assert_eq!(prem(&p(&[1, 0, 1]), &p(&[1, 2])).unwrap(), p(&[5]));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[0, 1]), &p(&[1, 1])).unwrap(), BigInt::one());
        let r = resultant(&p(&[0, 1, 1]), &p(&[1, 2])).unwrap();
        assert_eq!(r, BigInt::from(-1));
        assert!(r.is_odd());
        assert!(matches!(resultant(&IntPoly::zero(), &p(&[1])), Err(Error::ZeroInput)));
    }

    #[test]
    fn resultant_constants() {
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[3])).unwrap(), BigInt::from(9));
        assert_eq!(resultant(&p(&[-2]), &p(&[1, 1, 1])).unwrap(), BigInt::from(4));
        assert_eq!(resultant(&p(&[5]), &p(&[7])).unwrap(), BigInt::one());
    }

    #[test]
    fn resultant_nonmonic_and_swap() {
        // Res(2x − 1, x^2 − 2) = 2^2 · ((1/2)^2 − 2) = −7
        let a = p(&[-1, 2]);
        let b = p(&[-2, 0, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), BigInt::from(-7));
        assert_eq!(resultant(&b, &a).unwrap(), BigInt::from(-7));
        // Res(x^2 − 2, x^3 + x + 1) = (1 + 3√2)(1 − 3√2)
        let c = p(&[1, 1, 0, 1]);
        let expect = 1 - 18;
        assert_eq!(resultant(&b, &c).unwrap(), BigInt::from(expect));
    }

    #[test]
    fn common_factor_gives_zero() {
        let f = p(&[1, 1]);
        let a = &f * &p(&[3, 0, 1]);
        let b = &f * &p(&[-5, 2]);
        assert!(resultant(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn bivar_independent_of_c() {
        let hp = p(&[1, 1, 2, 1]);
        let r = BivarPoly::new(vec![p(&[3]), p(&[1])]);
        // c-degree is 0, so S(ν) = (3 + ν)^3
        let s = resultant_bivar(&hp, &r).unwrap();
        assert_eq!(s, p(&[3, 1]).pow(3));
        let r0 = BivarPoly::new(vec![p(&[5])]);
        assert_eq!(resultant_bivar(&hp, &r0).unwrap(), p(&[125]));
    }

    #[test]
    fn bivar_skips_degree_drop_nodes() {
        // r = ν·c + 1 drops degree at ν = 0.
        let r = BivarPoly::new(vec![p(&[1]), p(&[0, 1])]);
        let hp = p(&[-2, 0, 1]);
        let s = resultant_bivar(&hp, &r).unwrap();
        // Res(c^2 − 2, νc + 1) = (1 + ν√2)(1 − ν√2) = 1 − 2ν^2
        assert_eq!(s, p(&[1, 0, -2]));
    }

    #[test]
    fn interpolation_detects_nonintegral() {
        let xs: Vec<BigInt> = [0, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        let ys: Vec<BigInt> = [0, 1, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(matches!(interpolate(&xs, ys), Err(Error::NonIntegral)));
    }
}
