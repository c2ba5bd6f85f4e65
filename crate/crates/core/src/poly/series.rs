use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Exact k-th root `u` of `p` with `u(0) = p(0)` when `p(0) = ±1`.
///
/// Coefficients come from the power-series recurrence for `p^(1/k)` and the
/// answer is checked by re-expanding `u^k`.
pub fn power_series_root(p: &IntPoly, k: u32) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::InvalidInput("root index must be positive".into()));
    }
    if k == 1 || p.is_zero() {
        return Ok(p.clone());
    }
    let not_power = Error::NotAPower { k };
    let c0 = p.coeff(0);
    let (q, negate) = if c0.is_one() {
        (p.clone(), false)
    } else if c0 == -BigInt::one() && k % 2 == 1 {
        (-p, true)
    } else {
        return Err(not_power);
    };
    let dq = q.deg();
    if dq % k as usize != 0 {
        return Err(not_power);
    }
    let n_out = dq / k as usize;
    let kk = BigInt::from(k);
    let mut u: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=n_out {
        let mut acc = BigInt::zero();
        for (j, uj) in u.iter().enumerate() {
            let qc = q.coeff(n - j);
            if qc.is_zero() || uj.is_zero() {
                continue;
            }
            let w = BigInt::from(n - j) - &kk * BigInt::from(j);
            acc += w * uj * qc;
        }
        let (val, rem) = acc.div_rem(&(&kk * BigInt::from(n)));
        if !rem.is_zero() {
            return Err(not_power);
        }
        u.push(val);
    }
    let u = IntPoly::new(u);
    if u.pow(k) != q {
        return Err(not_power);
    }
    Ok(if negate { -u } else { u })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn examples() {
        assert_eq!(power_series_root(&p(&[1, 2, 1]), 2).unwrap(), p(&[1, 1]));
        let q = p(&[1, 5, -3]);
        assert_eq!(power_series_root(&q, 1).unwrap(), q);
        let ups = p(&[1, 3, 2, 1]);
        assert_eq!(power_series_root(&ups.pow(2), 2).unwrap(), ups);
    }

    #[test]
    fn negative_constant_odd_root() {
        let u = p(&[-1, 2, 0, 1]);
        assert_eq!(power_series_root(&u.pow(3), 3).unwrap(), u);
        assert!(matches!(power_series_root(&u.pow(3), 2), Err(Error::NotAPower { k: 2 })));
    }

    #[test]
    fn failures() {
        assert!(matches!(power_series_root(&p(&[1, 1]), 2), Err(Error::NotAPower { .. })));
        assert!(matches!(power_series_root(&p(&[1, 3, 1]), 2), Err(Error::NotAPower { .. })));
        assert!(matches!(power_series_root(&p(&[2, 0, 1]), 2), Err(Error::NotAPower { .. })));
        assert!(matches!(power_series_root(&p(&[1]), 0), Err(Error::InvalidInput(_))));
    }
}
